"""Select the arithmetic kernel backend at import time.

The compiled extension is preferred; the numpy fallback is used when the
extension is absent or FIBERLRC_BACKEND=python is set.  Both expose the
same functions and produce identical results.
"""

import os

from . import _kernels_py

if os.environ.get("FIBERLRC_BACKEND", "").lower() == "python":
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]

        kernels = _kernels
        BACKEND = "compiled"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by name (for tests and benchmarks)."""
    out: dict[str, object] = {"python": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]

        out["compiled"] = _kernels
    except ImportError:
        pass
    return out
