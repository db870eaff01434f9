"""Loop agreement tasks: composition, algebraic signatures and decision maps."""

__version__ = "0.1.0"
