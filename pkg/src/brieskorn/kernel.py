"""Select the row-kernel backend: compiled extension or pure Python.

The compiled lane (``_speedups``, built from Cython) is preferred; set
``BRIESKORN_PURE=1`` to force the pure-Python lane.  Both lanes implement the
same contract and are cross-checked in the test suite.
"""

import os

from . import _kernel_py

if os.environ.get("BRIESKORN_PURE") == "1":
    combine = _kernel_py.combine
    make_primitive = _kernel_py.make_primitive
    BACKEND = "python"
else:
    try:
        from . import _speedups

        combine = _speedups.combine
        make_primitive = _speedups.make_primitive
        BACKEND = "compiled"
    except ImportError:
        combine = _kernel_py.combine
        make_primitive = _kernel_py.make_primitive
        BACKEND = "python"
