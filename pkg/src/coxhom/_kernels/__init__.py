"""Kernel backend selection.

The compiled extension is used when available; COXHOM_KERNEL=py forces the
numpy fallback, COXHOM_KERNEL=c insists on the compiled core.
"""

import os

_choice = os.environ.get("COXHOM_KERNEL", "auto")

if _choice == "py":
    from . import _pyfallback as _impl
elif _choice == "c":
    from . import _core as _impl  # type: ignore[attr-defined]
elif _choice == "auto":
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pyfallback as _impl
else:
    raise RuntimeError(
        f"COXHOM_KERNEL must be py, c, or auto, got {_choice!r}"
    )

BACKEND = _impl.BACKEND
RowSet = _impl.RowSet
braid_mask = _impl.braid_mask
braid_matrix = _impl.braid_matrix
commute_mask = _impl.commute_mask
commute_matrix = _impl.commute_matrix
compose_many_one = _impl.compose_many_one
compose_one_many = _impl.compose_one_many
compose_rows = _impl.compose_rows
conjugate_by = _impl.conjugate_by
invert_rows = _impl.invert_rows
