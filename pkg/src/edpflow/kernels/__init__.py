"""Backend selection for the hot lattice kernels.

The environment variable EDPFLOW_BACKEND picks the implementation:

    EDPFLOW_BACKEND=numba   jitted kernels (default when numba imports)
    EDPFLOW_BACKEND=numpy   pure-numpy fallback

Both backends expose the same four functions and agree to rounding.
``benchmarks/bench_kernels.py`` times one against the other.
"""

import os

_requested = os.environ.get("EDPFLOW_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(f"EDPFLOW_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

HAS_NUMBA = False
if _requested != "numpy":
    try:
        from . import _numba as _impl  # noqa: F401

        HAS_NUMBA = True
        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
if _requested == "numpy" or not HAS_NUMBA:
    from . import _numpy as _impl  # noqa: F811

    BACKEND = "numpy"

diffusive_flux = _impl.diffusive_flux
reactive_flux = _impl.reactive_flux
ce_adjoint_core = _impl.ce_adjoint_core
rhs = _impl.rhs
