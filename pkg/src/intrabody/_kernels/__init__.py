"""Sweep kernels with selectable backend.

Two implementations of the grid-sweep hot paths are shipped: a numba
@njit backend and a pure-numpy fallback.  Selection happens once at import
time from the INTRABODY_KERNELS environment variable:

  unset / "auto"  use numba when importable, otherwise numpy
  "numba"         require the numba backend (ImportError if unavailable)
  "numpy"         force the fallback

Both backends evaluate the same arithmetic in the same order; agreement
is ulp-level (the runtimes' complex primitives differ slightly), and
`benchmarks/bench_kernels.py` compares their speed.
"""
import os

_ENV_VAR = "INTRABODY_KERNELS"


def _select():
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto"
    if choice == "auto":
        try:
            from . import numba_backend as impl
        except ImportError:
            from . import numpy_backend as impl
        return impl
    if choice == "numba":
        from . import numba_backend as impl
        return impl
    if choice == "numpy":
        from . import numpy_backend as impl
        return impl
    raise RuntimeError(
        f"{_ENV_VAR} must be 'auto', 'numba' or 'numpy', got {choice!r}"
    )


_impl = _select()

BACKEND = _impl.BACKEND
debye_grid = _impl.debye_grid
fresnel_sweep = _impl.fresnel_sweep
stack_sweep = _impl.stack_sweep
