"""Kernel selection: the compiled extension when built, else pure Python.

`active` is the module used by the library; `pure` is always importable so
tests and benchmarks can compare the two implementations.
"""

from . import _kernels_py as pure

try:
    from . import _kernels as compiled  # type: ignore[attr-defined]
except ImportError:
    compiled = None

HAVE_COMPILED = compiled is not None
active = compiled if HAVE_COMPILED else pure

hom_count_orientable = active.hom_count_orientable
hom_count_nonorientable = active.hom_count_nonorientable
