"""Input validation helpers shared by the estimator layer and the CLI."""
from __future__ import annotations

import numpy as np

from .exceptions import InvalidState, ParamOutOfRange, WrongDimension
from .measures import check_alpha  # noqa: F401  (re-exported)
from .states import STATE_TOL, validate


def check_states(X, tol: float = STATE_TOL, dim: int | None = None) -> np.ndarray:
    """Coerce a single density matrix or a batch to shape ``(n, d, d)`` and validate each.

    Raises InvalidState naming the first bad index.
    """
    a = np.asarray(X, dtype=complex)
    if a.ndim == 2:
        a = a[None]
    if a.ndim != 3 or a.shape[1] != a.shape[2] or a.shape[1] < 1:
        raise WrongDimension(f"expected density matrices of shape (n, d, d), got {np.shape(X)}")
    if dim is not None and a.shape[1] != dim:
        raise WrongDimension(f"expected d={dim}, got d={a.shape[1]}")
    for k, rho in enumerate(a):
        problems = validate(rho, tol)
        if problems:
            raise InvalidState(f"state {k} is not a density matrix: " + ", ".join(map(str, problems)), problems)
    return a


def check_probability(p, name: str = "p") -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"{name} must lie in [0, 1], got {p!r}")
    return p
