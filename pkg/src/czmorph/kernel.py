"""Kernel selection: compiled extension when available, pure Python otherwise.

Set CZMORPH_PURE=1 to force the pure implementation; czmorph.kernel.BACKEND
reports which one is active.
"""

import os

if os.environ.get("CZMORPH_PURE") == "1":
    from . import _kernel_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _impl

        BACKEND = "pure"

accepts = _impl.accepts
search = _impl.search
