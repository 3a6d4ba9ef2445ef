"""Coherence quantifiers in a fixed reference basis.

Five measures are provided: the l1 norm, the relative entropy of coherence
(in bits), the Tsallis relative alpha-entropy, its alpha = 2 entrywise form,
and the squared l2 norm. Closed forms for Bloch qubits, spectral pure states
and X states are alongside the generic matrix path so that each can be
checked against the other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import AlphaOutOfRange, IncompleteKraus, NotIncoherentChannel, SupportMismatch
from .linalg import CLAMP_TOL, matrix_power, psd_eigenvalues
from .states import BlochVector, XStateParams, check_spectrum

VALUE_TOL = 1e-12
DIAGONAL_TOL = 1e-10


def check_alpha(alpha: float) -> float:
    """Accept alpha in (0, 1) U (1, 2]."""
    a = float(alpha)
    if not (0.0 < a < 1.0 or 1.0 < a <= 2.0):
        raise AlphaOutOfRange(f"alpha must lie in (0,1) U (1,2], got {alpha!r}")
    return a


def _clamp(value: float) -> float:
    # roundoff below zero is reported as exactly zero
    return 0.0 if -VALUE_TOL <= value <= 0.0 else float(value)


def _diagonal(a: np.ndarray) -> bool:
    # faithfulness: states within DIAGONAL_TOL of diagonal score exactly zero
    off = np.abs(a - np.diag(np.diag(a)))
    return bool(off.max(initial=0.0) <= DIAGONAL_TOL)


def shannon(p, base: float = 2.0) -> float:
    """Shannon entropy with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)) / np.log(base))


def binary_entropy(x: float) -> float:
    """``h(x) = -x log2 x - (1-x) log2 (1-x)``."""
    return shannon([x, 1.0 - x])


# ------------------------------------------------------------ generic path


def c_l1(rho) -> float:
    a = np.asarray(rho, dtype=complex)
    if _diagonal(a):
        return 0.0
    return _clamp(float(np.sum(np.abs(a)) - np.sum(np.abs(np.diag(a)))))


def c_l2sq(rho) -> float:
    a = np.asarray(rho, dtype=complex)
    if _diagonal(a):
        return 0.0
    return _clamp(float(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2)))


def von_neumann(rho) -> float:
    """Von Neumann entropy in bits."""
    return shannon(psd_eigenvalues(rho).eigenvalues)


def c_r(rho) -> float:
    """``S(diag rho) - S(rho)`` in bits."""
    a = np.asarray(rho, dtype=complex)
    if _diagonal(a):
        return 0.0
    diag = np.clip(np.real(np.diag(a)), 0.0, None)
    return _clamp(shannon(diag) - von_neumann(a))


def _tsallis_weights(rho, alpha: float) -> np.ndarray:
    # <i|rho^alpha|i>^(1/alpha)
    diag = np.clip(np.real(np.diag(matrix_power(rho, alpha))), 0.0, None)
    return diag ** (1.0 / alpha)


def c_tsallis(rho, alpha: float) -> float:
    """Tsallis relative alpha-entropy of coherence, ``(r^alpha - 1)/(alpha - 1)``.

    ``r = sum_i <i|rho^alpha|i>^(1/alpha)``. Defined for alpha in (0,1) U (1,2].
    """
    alpha = check_alpha(alpha)
    if _diagonal(np.asarray(rho, dtype=complex)):
        return 0.0
    r = float(np.sum(_tsallis_weights(rho, alpha)))
    return _clamp((r ** alpha - 1.0) / (alpha - 1.0))


def c_alpha2(rho) -> float:
    """alpha = 2 case: ``(sum_j ||column j||_2)^2 - 1``."""
    a = np.asarray(rho, dtype=complex)
    if _diagonal(a):
        return 0.0
    cols = np.sqrt(np.sum(np.abs(a) ** 2, axis=0))
    return _clamp(float(np.sum(cols) ** 2 - 1.0))


def nearest_incoherent_tsallis(rho, alpha: float) -> np.ndarray:
    """The diagonal state attaining the Tsallis minimum: weights normalized by r."""
    alpha = check_alpha(alpha)
    w = _tsallis_weights(rho, alpha)
    return np.diag(w / w.sum()).astype(complex)


def tsallis_divergence(rho, delta, alpha: float) -> float:
    """``(Tr(rho^alpha delta^(1-alpha)) - 1)/(alpha - 1)`` for alpha in (0,1) U (1, inf).

    For alpha > 1 the negative power of ``delta`` lives on its support; if
    ``rho`` has weight outside that support the divergence is infinite and
    SupportMismatch is raised.
    """
    alpha = float(alpha)
    if not alpha > 0 or alpha == 1.0:
        raise AlphaOutOfRange(f"alpha must lie in (0,1) U (1,inf), got {alpha!r}")
    rho = np.asarray(rho, dtype=complex)
    eig = psd_eigenvalues(delta)
    lam, v = eig.eigenvalues, eig.eigenvectors
    support = lam > CLAMP_TOL
    if alpha > 1.0:
        kernel = v[:, ~support]
        leak = float(np.real(np.trace(kernel.conj().T @ rho @ kernel))) if kernel.size else 0.0
        if leak > CLAMP_TOL:
            raise SupportMismatch(f"rho has weight {leak:.3e} outside the support of delta")
    powered = np.zeros_like(lam)
    powered[support] = lam[support] ** (1.0 - alpha)
    delta_pow = (v * powered) @ v.conj().T
    value = float(np.real(np.trace(matrix_power(rho, alpha) @ delta_pow)))
    return _clamp((value - 1.0) / (alpha - 1.0))


# ------------------------------------------------------------ closed forms


class MeasureTriple(NamedTuple):
    l1: float
    rel_ent: float
    tsallis: float


def _qubit_tsallis_r(t: float, n_z: float, alpha: float) -> float:
    lp, lm = ((1 + t) / 2) ** alpha, ((1 - t) / 2) ** alpha
    up, dn = (1 + n_z) / 2, (1 - n_z) / 2
    return (lp * up + lm * dn) ** (1 / alpha) + (lp * dn + lm * up) ** (1 / alpha)


def qubit_closed_forms(b: BlochVector, alpha: float) -> MeasureTriple:
    """(C_l1, C_r, C_alpha) of a Bloch qubit from ``t`` and ``n_z`` alone."""
    alpha = check_alpha(alpha)
    t, n_z = b.t, b.n_z
    l1 = t * np.sqrt(max(1.0 - n_z * n_z, 0.0))
    rel = binary_entropy((1 + t * n_z) / 2) - binary_entropy((1 + t) / 2)
    r = _qubit_tsallis_r(t, n_z, alpha)
    return MeasureTriple(_clamp(l1), _clamp(rel), _clamp((r ** alpha - 1) / (alpha - 1)))


def pure_closed_forms(lambdas, alpha: float) -> MeasureTriple:
    """(C_l1, C_r, C_alpha) of ``sum_i sqrt(lambda_i)|i>`` from its spectrum."""
    alpha = check_alpha(alpha)
    lam = check_spectrum(lambdas)
    l1 = np.sum(np.sqrt(lam)) ** 2 - 1.0
    r = np.sum(lam ** (1.0 / alpha))
    return MeasureTriple(_clamp(float(l1)), _clamp(shannon(lam)), _clamp(float((r ** alpha - 1) / (alpha - 1))))


def xstate_closed_forms(xp: XStateParams, alpha: float) -> MeasureTriple:
    """(C_l1, C_r, C_alpha) of an n-qubit X state.

    The GHZ corner block has eigenvalues ``p + c`` (vector ``(a, b)``) and
    ``c = (1-p)/d`` (vector ``(b, -a)``); every other eigenvalue is ``c``.
    """
    alpha = check_alpha(alpha)
    d, p, a, b = xp.dim, xp.p, xp.a, xp.b
    c = (1 - p) / d
    top = p + c
    l1 = 2 * p * a * b
    diag = [p * a * a + c, p * b * b + c] + [c] * (d - 2)
    spectrum = [top] + [c] * (d - 1)
    rel = shannon(diag) - shannon(spectrum)
    r = (
        (top ** alpha * a * a + c ** alpha * b * b) ** (1 / alpha)
        + (top ** alpha * b * b + c ** alpha * a * a) ** (1 / alpha)
        + (d - 2) * c
    )
    return MeasureTriple(_clamp(l1), _clamp(rel), _clamp((r ** alpha - 1) / (alpha - 1)))


# ------------------------------------------------------- measure selector


_KINDS = {
    "l1": "l1",
    "rel": "rel_ent",
    "relent": "rel_ent",
    "rel_ent": "rel_ent",
    "r": "rel_ent",
    "tsallis": "tsallis",
    "alpha": "tsallis",
    "alpha2": "alpha2",
    "c2": "alpha2",
    "l2sq": "l2sq",
    "l2": "l2sq",
}


@dataclass(frozen=True)
class CoherenceMeasure:
    """Selector for one of the five coherence measures.

    ``CoherenceMeasure.parse("tsallis:0.5")`` and ``CoherenceMeasure.tsallis(0.5)``
    are equivalent.
    """

    kind: str
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in ("l1", "rel_ent", "tsallis", "alpha2", "l2sq"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "tsallis":
            object.__setattr__(self, "alpha", check_alpha(self.alpha if self.alpha is not None else float("nan")))
        elif self.alpha is not None:
            raise ValueError(f"measure {self.kind!r} takes no alpha")

    @classmethod
    def l1(cls):
        return cls("l1")

    @classmethod
    def rel_ent(cls):
        return cls("rel_ent")

    @classmethod
    def tsallis(cls, alpha):
        return cls("tsallis", alpha)

    @classmethod
    def alpha2(cls):
        return cls("alpha2")

    @classmethod
    def l2sq(cls):
        return cls("l2sq")

    @classmethod
    def parse(cls, text: str) -> "CoherenceMeasure":
        name, _, arg = str(text).strip().lower().partition(":")
        kind = _KINDS.get(name)
        if kind is None:
            raise ValueError(f"unknown measure {text!r}; expected one of l1, rel, tsallis:<alpha>, alpha2, l2sq")
        if kind == "tsallis":
            if not arg:
                raise ValueError(f"measure {text!r} needs an alpha, e.g. tsallis:0.5")
            return cls(kind, float(arg))
        if arg:
            raise ValueError(f"measure {name!r} takes no argument")
        return cls(kind)

    @property
    def label(self) -> str:
        if self.kind == "tsallis":
            return f"C_alpha={self.alpha:g}"
        return {"l1": "C_l1", "rel_ent": "C_r", "alpha2": "C_2", "l2sq": "C_l2sq"}[self.kind]

    def __str__(self):
        return self.label

    def __call__(self, rho) -> float:
        if self.kind == "l1":
            return c_l1(rho)
        if self.kind == "rel_ent":
            return c_r(rho)
        if self.kind == "tsallis":
            return c_tsallis(rho, self.alpha)
        if self.kind == "alpha2":
            return c_alpha2(rho)
        return c_l2sq(rho)


def as_measure(m) -> CoherenceMeasure:
    return m if isinstance(m, CoherenceMeasure) else CoherenceMeasure.parse(m)


# ----------------------------------------------- generalized monotonicity


class MonotonicityCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def _as_operators(kraus) -> list[np.ndarray]:
    ops = getattr(kraus, "operators", kraus)
    return [np.asarray(k, dtype=complex) for k in ops]


def is_incoherent_operator(k, tol: float = DIAGONAL_TOL) -> bool:
    """True when ``k |j><j| k^H`` is diagonal for every basis state ``|j>``."""
    k = np.asarray(k, dtype=complex)
    # each column may have at most one non-negligible entry
    return bool(np.all(np.sum(np.abs(k) > tol, axis=0) <= 1))


def check_generalized_monotonicity(rho, kraus, alpha: float, tol: float = 1e-9) -> MonotonicityCheck:
    """Average-coherence bound ``sum_i p_i^alpha q_i^(1-alpha) C_alpha(rho_i) <= C_alpha(rho)``.

    ``p_i = Tr(K_i rho K_i^H)``, ``q_i = Tr(K_i delta K_i^H)`` with ``delta`` the
    nearest incoherent state of ``rho``; outcomes with ``p_i < 1e-12`` are skipped.
    """
    alpha = check_alpha(alpha)
    ops = _as_operators(kraus)
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if not all(is_incoherent_operator(k) for k in ops):
        raise NotIncoherentChannel("every Kraus operator must map incoherent states to incoherent states")
    completeness = sum(k.conj().T @ k for k in ops)
    if np.max(np.abs(completeness - np.eye(d))) > 1e-10:
        raise IncompleteKraus("Kraus operators do not satisfy sum K^H K = I")
    delta = nearest_incoherent_tsallis(rho, alpha)
    lhs = 0.0
    for k in ops:
        out = k @ rho @ k.conj().T
        p = float(np.real(np.trace(out)))
        if p < 1e-12:
            continue
        q = float(np.real(np.trace(k @ delta @ k.conj().T)))
        if q <= 0.0:
            # alpha > 1 with no incoherent weight on this branch diverges
            lhs = float("inf") if alpha > 1 else lhs
            continue
        lhs += p ** alpha * q ** (1 - alpha) * c_tsallis(out / p, alpha)
    rhs = c_tsallis(rho, alpha)
    return MonotonicityCheck(lhs, rhs, lhs <= rhs + tol)


def evaluate(rho, measures: Sequence) -> np.ndarray:
    """Values of several measures on one state."""
    return np.array([as_measure(m)(rho) for m in measures])
