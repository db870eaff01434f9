"""Puts the repository root on sys.path so the tests import loopagree
without an editable install."""
