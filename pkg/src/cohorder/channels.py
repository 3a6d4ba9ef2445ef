"""Kraus-operator channels, the qubit amplitude/phase damping channels and their
closed-form Bloch transforms, and ordering-dynamics experiments."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import DimensionMismatch, IncompleteKraus, ParamOutOfRange
from .measures import c_l1
from .states import BlochVector, from_bloch

COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class KrausChannel:
    """CPTP map ``rho -> sum_i K_i rho K_i^H``; ``p`` is the damping strength if any."""

    name: str
    operators: tuple
    p: float | None = None

    def __post_init__(self):
        ops = tuple(np.array(k, dtype=complex) for k in self.operators)
        if not ops:
            raise IncompleteKraus("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.shape != (d, d):
                raise DimensionMismatch(f"Kraus operators must all be {d}x{d}, got {k.shape}")
            k.setflags(write=False)
        defect = float(np.max(np.abs(sum(k.conj().T @ k for k in ops) - np.eye(d))))
        if defect > COMPLETENESS_TOL:
            raise IncompleteKraus(f"sum K^H K deviates from I by {defect:.3e}")
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    @property
    def q(self) -> float | None:
        return None if self.p is None else 1.0 - self.p

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)


def apply(ch: KrausChannel, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.dim, ch.dim):
        raise DimensionMismatch(f"channel acts on d={ch.dim}, state has shape {rho.shape}")
    out = sum(k @ rho @ k.conj().T for k in ch.operators)
    return 0.5 * (out + out.conj().T)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"channel parameter p must lie in [0, 1], got {p!r}")
    return p


def identity_channel(d: int = 2) -> KrausChannel:
    return KrausChannel("identity", (np.eye(d),), 0.0)


def adc(p: float) -> KrausChannel:
    """Amplitude damping: ``K0 = |0><0| + sqrt(q)|1><1|``, ``K1 = sqrt(p)|0><1|``."""
    p = _check_p(p)
    q = 1.0 - p
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(q)]])
    k1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]])
    return KrausChannel("adc", (k0, k1), p)


def pdc(p: float) -> KrausChannel:
    """Phase damping: ``K0 = sqrt(q) I``, ``K1 = sqrt(p)|0><0|``, ``K2 = sqrt(p)|1><1|``."""
    p = _check_p(p)
    q = 1.0 - p
    return KrausChannel(
        "pdc",
        (np.sqrt(q) * np.eye(2), np.sqrt(p) * np.diag([1.0, 0.0]), np.sqrt(p) * np.diag([0.0, 1.0])),
        p,
    )


def make_channel(name: str, p: float) -> KrausChannel:
    name = name.lower()
    if name == "adc":
        return adc(p)
    if name == "pdc":
        return pdc(p)
    if name in ("identity", "id"):
        return identity_channel(2)
    raise ValueError(f"unknown channel {name!r}; expected adc, pdc or identity")


def random_incoherent_kraus(d: int, n_ops: int, rng: np.random.Generator, kind: str = "diagonal") -> KrausChannel:
    """Random incoherent Kraus set.

    ``kind="diagonal"`` gives phase-damping-like diagonal operators;
    ``kind="permutation"`` gives diagonal operators composed with random
    permutations, so each column still has a single nonzero entry.
    """
    w = rng.uniform(size=(n_ops, d)) + 1e-3
    w = np.sqrt(w / w.sum(axis=0))
    ops = []
    for i in range(n_ops):
        diag = np.diag(w[i] * np.exp(1j * rng.uniform(0, 2 * np.pi, size=d)))
        if kind == "permutation":
            diag = np.eye(d)[rng.permutation(d)] @ diag
        elif kind != "diagonal":
            raise ValueError(f"unknown incoherent channel kind {kind!r}")
        ops.append(diag)
    return KrausChannel(f"incoherent-{kind}", tuple(ops))


# ---------------------------------------------------- closed-form transforms


def _bloch_from_k(kx: float, ky: float, kz: float) -> BlochVector:
    t = float(np.sqrt(kx * kx + ky * ky + kz * kz))
    if t < 1e-15:
        return BlochVector(0.0, (0.0, 0.0, 1.0))
    return BlochVector(min(t, 1.0), (kx / t, ky / t, kz / t))


def adc_bloch_transform(b: BlochVector, p: float) -> BlochVector:
    """Bloch parameters after amplitude damping.

    ``t' = sqrt(q t^2 (1 - n_z^2) + (p + q n_z t)^2)``, ``n'_z = (p + q n_z t)/t'``,
    ``n'_{x,y} = sqrt(q) n_{x,y} t / t'``.
    """
    p = _check_p(p)
    q = 1.0 - p
    nx, ny, nz = b.n
    t = b.t
    return _bloch_from_k(np.sqrt(q) * nx * t, np.sqrt(q) * ny * t, p + q * nz * t)


def pdc_bloch_transform(b: BlochVector, p: float) -> BlochVector:
    """Bloch parameters after phase damping: ``t' = t sqrt(q^2 + (1 - q^2) n_z^2)``."""
    p = _check_p(p)
    q = 1.0 - p
    nx, ny, nz = b.n
    t = b.t
    return _bloch_from_k(q * nx * t, q * ny * t, nz * t)


class L1Scaling(NamedTuple):
    lhs: float
    rhs: float
    holds: bool
    q_scaled_rhs: float


def l1_scaling_check(b: BlochVector, p: float, channel: str, tol: float = 1e-10) -> L1Scaling:
    """Compare ``C_l1`` after the channel with a scaled ``C_l1`` before it.

    PDC scales the off-diagonal by ``q``. For ADC the evolved matrix carries
    ``sqrt(q)``; ``q_scaled_rhs`` holds the plain-``q`` candidate for comparison.
    """
    p = _check_p(p)
    q = 1.0 - p
    ch = make_channel(channel, p)
    rho = from_bloch(b)
    lhs = c_l1(apply(ch, rho))
    before = c_l1(rho)
    if ch.name == "adc":
        rhs = np.sqrt(q) * before
    elif ch.name == "pdc":
        rhs = q * before
    else:
        rhs = before
    return L1Scaling(lhs, float(rhs), abs(lhs - rhs) <= tol, q * before)


# ------------------------------------------------------- ordering dynamics


@dataclass
class MeasureDynamics:
    """Per-measure comparison of pair orderings before and after a channel."""

    measure: str
    pairs: int = 0
    preserved: int = 0
    flipped: int = 0
    tie_changes: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def preserved_fraction(self) -> float:
        return self.preserved / self.pairs if self.pairs else 1.0

    def to_dict(self) -> dict:
        return {
            "measure": self.measure,
            "pairs": self.pairs,
            "preserved": self.preserved,
            "flipped": self.flipped,
            "tie_changes": self.tie_changes,
            "preserved_fraction": self.preserved_fraction,
            "witnesses": self.witnesses,
        }


@dataclass
class DynamicsResult:
    before: "OrderingReport"
    after: "OrderingReport"
    per_measure: list

    @property
    def all_preserved(self) -> bool:
        return all(m.preserved == m.pairs for m in self.per_measure)

    def to_dict(self) -> dict:
        return {
            "before": self.before.to_dict(),
            "after": self.after.to_dict(),
            "per_measure": [m.to_dict() for m in self.per_measure],
        }


def ordering_dynamics(family, channel: KrausChannel, measures: Sequence, tie_tolerance: float = 1e-9,
                      max_witnesses: int = 20) -> DynamicsResult:
    """Check, for every state pair and measure, whether the comparison sign survives the channel.

    A flip is a strict reversal; ``tie_changes`` counts pairs that move between
    a tie and a strict comparison. Both count as not preserved.
    """
    from .ordering import StateFamily, comparison_signs, ordering_report

    if family.dim != channel.dim:
        raise DimensionMismatch(f"family has d={family.dim}, channel acts on d={channel.dim}")
    evolved = StateFamily(f"{family.label} -> {channel.name}", [apply(channel, s) for s in family.states],
                          family.params)
    before = ordering_report(family, measures, tie_tolerance)
    after = ordering_report(evolved, measures, tie_tolerance)
    iu, ju = np.triu_indices(len(family.states), k=1)
    per = []
    for col, label in enumerate(before.measures):
        s0 = comparison_signs(before.values[:, col], iu, ju, tie_tolerance)
        s1 = comparison_signs(after.values[:, col], iu, ju, tie_tolerance)
        flips = np.flatnonzero(s0 * s1 < 0)
        ties = np.flatnonzero((s0 != s1) & (s0 * s1 == 0))
        stats = MeasureDynamics(label, pairs=len(iu), preserved=int(np.sum(s0 == s1)),
                                flipped=len(flips), tie_changes=len(ties))
        for k in flips[:max_witnesses]:
            i, j = int(iu[k]), int(ju[k])
            stats.witnesses.append({
                "i": i,
                "j": j,
                "before": [float(before.values[i, col]), float(before.values[j, col])],
                "after": [float(after.values[i, col]), float(after.values[j, col])],
                "params": [family.params[i], family.params[j]] if family.params else None,
            })
        per.append(stats)
    return DynamicsResult(before, after, per)
