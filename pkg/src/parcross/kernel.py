"""Backend selection for the assignment-enumeration kernel.

The compiled extension ``parcross._kernel`` is used when it imports; otherwise
the pure-Python twin in ``parcross._kernel_py`` is used. Set
``PARCROSS_KERNEL=python`` to force the fallback, or ``PARCROSS_KERNEL=compiled``
to fail loudly when the extension is missing.

Problems the compiled kernel cannot represent exactly (more than 63 local
variables, or coefficients large enough to overflow int64) are always routed
to the Python kernel, which uses arbitrary-precision integers.
"""
from __future__ import annotations

import os

from . import _kernel_py

_choice = os.environ.get("PARCROSS_KERNEL", "auto").lower()
_compiled = None
if _choice != "python":
    try:
        from . import _kernel as _compiled  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "compiled":
            raise
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

_MAX_VARS = 63
_SCAN_LIMIT = 1 << 62
_ABS2_LIMIT = 1 << 30


def _fits(re, im, nvars, limit):
    if _compiled is None or nvars > _MAX_VARS:
        return False
    return sum(abs(x) for x in re) < limit and sum(abs(x) for x in im) < limit


def scan(masks, re, im, parent, fixed_one, free, want_zero, backend=None):
    """See :func:`parcross._kernel_py.scan`; ``and_mask`` is clipped to ``free|fixed_one``."""
    nvars = len(parent)
    impl = _pick(backend, re, im, nvars, _SCAN_LIMIT)
    n_cons, n_sat, and_m, or_m, first = impl.scan(masks, re, im, parent, fixed_one, free, want_zero)
    full = (1 << nvars) - 1
    if n_sat == 0:
        and_m = 0
    return n_cons, n_sat, and_m & full, or_m & full, first


def max_abs2(masks, re, im, parent, fixed_one, free, backend=None):
    impl = _pick(backend, re, im, len(parent), _ABS2_LIMIT)
    return impl.max_abs2(masks, re, im, parent, fixed_one, free)


def _pick(backend, re, im, nvars, limit):
    if backend == "python":
        return _kernel_py
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        return _compiled
    return _compiled if _fits(re, im, nvars, limit) else _kernel_py


def available_backends():
    return ["python"] + (["compiled"] if _compiled is not None else [])


def count_consistent(parent, fixed_one, free) -> int:
    """Upper bound on the number of consistent completions of the ``free`` variables."""
    kids = {}
    for v, p in enumerate(parent):
        if free >> v & 1 and p >= 0 and free >> p & 1:
            kids[p] = kids.get(p, 0) + 1
    total = 1
    for v, p in enumerate(parent):
        if not free >> v & 1:
            continue
        if p >= 0 and free >> p & 1:
            continue  # counted with its parent
        if p >= 0 and not fixed_one >> p & 1:
            continue  # parent fixed to 0 forces this variable to 0
        total *= 1 + (1 << kids[v]) if v in kids else 2
    return total
