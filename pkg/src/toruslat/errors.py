"""Exception hierarchy shared by the library and the command line."""


class ToruslatError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InputError(ToruslatError, ValueError):
    """Malformed or mathematically inconsistent input."""

    exit_code = 2


class CapacityError(ToruslatError):
    """A configured size bound (group order, rank, depth) was exceeded."""

    exit_code = 3


class UndecidedError(ToruslatError):
    """A semi-decision procedure exhausted its search space."""

    exit_code = 4
