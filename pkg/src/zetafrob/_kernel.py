"""Kernel selection: compiled arithmetic when available, pure Python otherwise.

The compiled kernels do modular products in unsigned 128-bit words and so
require the working modulus p^m to stay below 2^62; deeper precisions fall
back to the pure kernels, which use Python integers and have no size limit.
Set ZETAFROB_PURE=1 to force the pure implementation everywhere.
"""

import os

from . import _pure

use_speedups = os.environ.get("ZETAFROB_PURE") != "1"
if use_speedups:
    try:
        from . import _speedups
    except ImportError:
        use_speedups = False

PM_LIMIT = 1 << 62


def get_kernels(pm):
    """Return (poly_mul, poly_divmod, elt_mul) suitable for modulus pm."""
    if use_speedups and pm < PM_LIMIT:
        return _speedups.poly_mul, _speedups.poly_divmod, _speedups.elt_mul
    return _pure.poly_mul, _pure.poly_divmod, _pure.elt_mul


def backend_name(pm):
    if use_speedups and pm < PM_LIMIT:
        return "compiled"
    return "pure"
