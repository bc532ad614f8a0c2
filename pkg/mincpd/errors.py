"""
Exception hierarchy shared by the library and the command line.

Every class also derives from the closest builtin so plain ``except ValueError``
callers keep working. ``exit_code`` is what ``python -m mincpd`` returns.
"""


class MinCpdError(Exception):
    kind = "error"
    exit_code = 1


class InvalidArgumentError(MinCpdError, ValueError):
    kind = "argument"


class ShapeError(MinCpdError, ValueError):
    kind = "shape"


class BoundsError(MinCpdError, IndexError):
    kind = "bounds"


class FileFormatError(MinCpdError, ValueError):
    kind = "format"


class UnsupportedInitError(MinCpdError, ValueError):
    kind = "unsupported-init"


class EncodingOverflowError(MinCpdError, ArithmeticError):
    kind = "overflow"
    exit_code = 2


class SingularSystemError(MinCpdError, ArithmeticError):
    kind = "singular"
    exit_code = 2


class CapExceededError(MinCpdError, ValueError):
    kind = "cap-exceeded"
    exit_code = 3


class UsageError(MinCpdError):
    kind = "usage"
