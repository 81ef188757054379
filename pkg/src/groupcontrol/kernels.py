"""Backend selection for the hot kernels.

The compiled extension is used when it was built and the profile fits in 63
bits; otherwise the pure-Python twin runs. Set ``GROUPCONTROL_PURE=1`` to
force the pure-Python backend for the whole process.
"""

import os

from . import _kernels_py as pure

CONSENT = pure.CONSENT
CSR = pure.CSR
LSR = pure.LSR

compiled = None
if os.environ.get("GROUPCONTROL_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

BACKEND = compiled.BACKEND if compiled is not None else pure.BACKEND


def for_size(n):
    """Return the kernel module to use for a profile with ``n`` individuals."""
    if compiled is not None and n <= compiled.MAX_N:
        return compiled
    return pure
