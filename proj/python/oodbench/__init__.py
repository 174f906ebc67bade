"""Seeded face-image corruptions, byte-identical to the oodbench command line tool.

    >>> import numpy as np, oodbench
    >>> img = np.zeros((112, 112, 3), dtype=np.uint8)
    >>> oodbench.corrupt(img, "gaussian_noise", 3, seed=7).shape
    (112, 112, 3)
"""

from pathlib import Path

from ._oodbench import OodbenchError, frost_directory, list_kinds, set_frost_directory, severity_params
from ._oodbench import corrupt as _corrupt

__all__ = ["OodbenchError", "corrupt", "list_kinds", "severity_params", "set_frost_directory", "frost_directory"]

_bundled_frost = Path(__file__).resolve().parent / "frost"
if _bundled_frost.is_dir():
    set_frost_directory(str(_bundled_frost))


def corrupt(image, kind, level, seed=0):
    """Apply one corruption to an H x W x 3 uint8 array or buffer.

    The input is never modified. A numpy array comes back for numpy input;
    any other buffer exporter gets a memoryview shaped (H, W, 3).
    """
    data, height, width = _corrupt(image, kind, level, seed)
    try:
        import numpy as np
    except ImportError:
        np = None
    if np is not None and isinstance(image, np.ndarray):
        return np.frombuffer(bytearray(data), dtype=np.uint8).reshape(height, width, 3)
    return memoryview(bytearray(data)).cast("B", (height, width, 3))
