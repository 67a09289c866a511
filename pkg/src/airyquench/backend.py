"""Select the compiled kernel core when available, else the numpy fallback.

Set AIRYQUENCH_BACKEND=python or =cython to force a choice (the latter raises
if the extension was not built).
"""
import os

_forced = os.environ.get("AIRYQUENCH_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as impl
    BACKEND = "python"
elif _forced == "cython":
    from . import _kernels_cy as impl  # noqa: F401
    BACKEND = "cython"
else:
    try:
        from . import _kernels_cy as impl  # type: ignore
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as impl
        BACKEND = "python"

airy_ai_arr = impl.airy_ai_arr
faddeeva_upper = impl.faddeeva_upper
direct_sum = impl.direct_sum
contour_sum = impl.contour_sum
