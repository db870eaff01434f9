"""Exception hierarchy.

Everything derives from `LoopAgreeError`, itself a `ValueError`: all failures
here are rejections of malformed or inconsistent input.
"""


class LoopAgreeError(ValueError):
    """Base class for every library error."""


# -- complexes ---------------------------------------------------------------

class EmptyInput(LoopAgreeError):
    pass


class DuplicateVertex(LoopAgreeError):
    pass


class EmptyComplex(LoopAgreeError):
    pass


class NotSubcomplex(LoopAgreeError):
    pass


class PartialAssignment(LoopAgreeError):
    pass


class NotSimplicial(LoopAgreeError):
    pass


# -- loops -------------------------------------------------------------------

class EndpointMismatch(LoopAgreeError):
    pass


class InvalidPath(LoopAgreeError):
    pass


class InvalidLoop(LoopAgreeError):
    pass


# -- tasks -------------------------------------------------------------------

class InvalidTask(LoopAgreeError):
    """A task invariant failed. `invariant` names which one."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class SourceMismatch(LoopAgreeError):
    pass


class SubdivisionMismatch(LoopAgreeError):
    pass


class NotAComposition(LoopAgreeError):
    pass


class UnknownTask(LoopAgreeError):
    pass


# -- groups and morphisms ----------------------------------------------------

class NotConnected(LoopAgreeError):
    pass


class UnknownBasepoint(LoopAgreeError):
    pass


class TargetSourceMismatch(LoopAgreeError):
    pass


class NotAMorphism(LoopAgreeError):
    pass


# -- I/O ---------------------------------------------------------------------

class ParseError(LoopAgreeError):
    pass


class UsageError(LoopAgreeError):
    """Bad command line."""
