"""Backend selection for the propagation kernel.

Prefers the compiled extension, falls back to the pure-Python twin when
it is missing.  Set PTDD_FORCE_PY_KERNEL=1 to force the fallback; the
benchmark and parts of the test suite use this to compare backends.
"""

from __future__ import annotations

import os

if os.environ.get("PTDD_FORCE_PY_KERNEL") == "1":
    from . import _kernel_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _kernel_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

expm2 = _impl.expm2
propagate_flat = _impl.propagate_flat
