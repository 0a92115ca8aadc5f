"""
Exception hierarchy for the MDSI library
"""
from typing import Optional, Tuple


class MDSIError(Exception):
    """Base class for every error raised by the package"""


class ImageIOError(MDSIError, OSError):
    """Image file missing or unreadable"""


class DecodeError(MDSIError):
    """Image file could not be decoded"""


class DimensionError(MDSIError, ValueError):
    """Invalid image or plane dimensions"""


class ShapeMismatch(MDSIError, ValueError):
    """Two inputs that must share dimensions do not"""

    def __init__(self, ref_dims: Tuple[int, ...], dist_dims: Tuple[int, ...]):
        self.ref_dims = tuple(ref_dims)
        self.dist_dims = tuple(dist_dims)
        super().__init__(
            f"shape mismatch: reference {_fmt_dims(self.ref_dims)} "
            f"vs distorted {_fmt_dims(self.dist_dims)}"
        )


class EmptyInput(MDSIError, ValueError):
    """Reduction over an empty map"""


class LengthMismatch(MDSIError, ValueError):
    """Paired vectors of different lengths"""


class DegenerateInput(MDSIError, ValueError):
    """Input for which a statistic is undefined (constant vector, zero variance)"""


class FitDiverged(MDSIError):
    """Logistic regression produced no finite solution"""


class ConfigError(MDSIError, ValueError):
    """Invalid metric configuration or config file"""


class ManifestError(MDSIError):
    """Base class for dataset manifest problems"""


class ParseError(ManifestError):
    """Malformed manifest row"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class MissingColumn(ManifestError):
    """Required manifest column absent from the header"""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"missing required column '{column}'")


class MissingLabel(ManifestError):
    """Entry without a distortion label where one is required"""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"entry {index} has no distortion label")


class BatchAbort(MDSIError):
    """Too many entries of a batch failed"""

    def __init__(self, failed: int, total: int):
        self.failed = failed
        self.total = total
        super().__init__(f"{failed} of {total} entries failed, aborting")


def _fmt_dims(dims: Tuple[int, ...]) -> str:
    return "x".join(str(d) for d in dims)
