"""Hot loops of the engine: row reduction and polynomial products over
log-coded finite fields.

The compiled extension is used when it imports; otherwise the pure-Python
implementation is selected.  Setting ``FTHRESHOLD_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _pykernels

_impl = _pykernels
if os.environ.get("FTHRESHOLD_PURE_PYTHON", "").lower() not in ("1", "true", "yes"):
    try:
        from . import _ckernels

        _impl = _ckernels
    except ImportError:
        pass

BACKEND = _impl.NAME


def available_backends():
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out


def _module(backend):
    if backend is None:
        return _impl
    return available_backends()[backend]


def rref(F, rows, ncols, backend=None):
    """Row-reduce ``rows`` (lists of codes) over a table field."""
    m = _module(backend)
    return m.rref_rows(rows, ncols, F.order, m.zech_table(F), F.half)


def polymul(f, g, Q=None, zech=None, F=None, backend=None):
    m = _module(backend)
    if F is not None:
        Q, zech = F.order, m.zech_table(F)
    elif m is _pykernels and not isinstance(zech, list):
        zech = list(zech)
    return m.polymul(f, g, Q, zech)
