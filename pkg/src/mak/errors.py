"""Exception hierarchy shared by the library and the CLI."""


class MakError(Exception):
    """Base class for every error raised by this package."""


class InputError(MakError, ValueError):
    """Malformed user input: bad vertex labels, facet files, expressions."""


class ParseError(InputError):
    pass


class UnsupportedRewrite(MakError):
    """The rewrite engine met a term it has no sound rule for."""


class NotASphereWedge(MakError, ValueError):
    pass


class ResourceLimitError(MakError, RuntimeError):
    """A computation was refused because it would exceed a configured bound."""


class RewriteBudgetExceeded(MakError, RuntimeError):
    pass
