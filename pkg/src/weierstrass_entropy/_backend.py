"""Pick the compiled kernels when importable, else the numpy fallback.

Set ``WEIERSTRASS_ENTROPY_BACKEND`` to ``python`` to force the fallback, or to
``compiled`` to make a missing extension an import error.
"""

import os

_choice = os.environ.get("WEIERSTRASS_ENTROPY_BACKEND", "").strip().lower()

if _choice == "python":
    from . import _fallback as impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as impl

        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        from . import _fallback as impl

        BACKEND = "python"

phase_table = impl.phase_table
cos_series = impl.cos_series
cospi = impl.cospi
sinpi = impl.sinpi
pairwise_chebyshev = impl.pairwise_chebyshev

__all__ = ["BACKEND", "phase_table", "cos_series", "cospi", "sinpi", "pairwise_chebyshev"]
