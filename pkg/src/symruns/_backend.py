"""Pick the depth kernels at import time.

The compiled module is used when it was built; setting
``SYMRUNS_PURE_PYTHON=1`` forces the numpy fallback.
"""

import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

if os.environ.get("SYMRUNS_PURE_PYTHON", "") == "1":
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        log.debug("compiled kernels unavailable, using numpy fallback")
        kernels = _pykernels

BACKEND = kernels.NAME
