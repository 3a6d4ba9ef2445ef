"""Majorization, Schur-concavity spot checks, ordering-agreement reports and
monotonicity scans."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .exceptions import DimensionMismatch, SumMismatch
from .measures import as_measure
from .states import BlochVector, XStateParams, from_bloch, pure_from_spectrum, random_direction, x_state

TIE_TOL = 1e-9

# ---------------------------------------------------------------- majorization


def _check_pair(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatch(f"vectors must be 1-D with equal length, got {x.shape} and {y.shape}")
    if np.any(x < 0) or np.any(y < 0):
        raise ValueError("majorization is defined here for non-negative vectors")
    if abs(x.sum() - y.sum()) > 1e-10:
        raise SumMismatch(f"sums differ: {x.sum()!r} vs {y.sum()!r}")
    return x, y


def majorizes(x, y, tol: float = 1e-12) -> bool:
    """True iff ``x`` is majorized by ``y``: every descending prefix sum of x <= that of y."""
    x, y = _check_pair(x, y)
    px = np.cumsum(np.sort(x)[::-1])
    py = np.cumsum(np.sort(y)[::-1])
    return bool(np.all(px <= py + tol))


def majorization_comparable(x, y, tol: float = 1e-12) -> bool:
    return majorizes(x, y, tol) or majorizes(y, x, tol)


def robin_hood_chain(start, length: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Successively more uniform spectra, each majorized by its predecessor.

    Each step moves mass from a richer to a poorer coordinate by at most half
    of the gap between them, which never reverses their order (a Dalton
    transfer), so every element is majorized by all earlier ones.
    """
    x = np.sort(np.asarray(start, dtype=float))[::-1]
    chain = [x.copy()]
    d = x.size
    for _ in range(length - 1):
        i, j = sorted(rng.choice(d, size=2, replace=False))
        if x[i] - x[j] <= 0:
            chain.append(x.copy())
            continue
        eps = rng.uniform(0.05, 0.5) * (x[i] - x[j])
        x[i] -= eps
        x[j] += eps
        x = np.sort(x)[::-1]
        chain.append(x.copy())
    return chain


# -------------------------------------------------------------- Schur checks


@dataclass
class SchurReport:
    max_criterion: float
    worst_point: np.ndarray
    worst_pair: tuple
    samples: int
    concave: bool
    tol: float = 1e-6

    @property
    def passed(self) -> bool:
        return self.concave


def schur_concavity_spotcheck(f: Callable, dim: int, samples: int = 200, rng=None, step: float = 1e-6,
                              tol: float = 1e-6) -> SchurReport:
    """Sample ``max (x_i - x_j)(dF/dx_i - dF/dx_j)`` over interior simplex points.

    The derivative difference is the central difference of ``f`` along
    ``e_i - e_j``, which keeps the point on the simplex. Schur-concave
    functions keep the criterion <= 0; pass means the maximum is <= tol.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    worst, worst_x, worst_pair = -np.inf, None, None
    for _ in range(samples):
        x = 0.9 * rng.dirichlet(np.ones(dim)) + 0.1 / dim
        x /= x.sum()
        for i, j in combinations(range(dim), 2):
            e = np.zeros(dim)
            e[i], e[j] = 1.0, -1.0
            grad = (f(x + step * e) - f(x - step * e)) / (2 * step)
            crit = (x[i] - x[j]) * grad
            if crit > worst:
                worst, worst_x, worst_pair = crit, x.copy(), (i, j)
    return SchurReport(float(worst), worst_x, worst_pair, samples, bool(worst <= tol), tol)


# ---------------------------------------------------------------- families


@dataclass
class StateFamily:
    """A labelled set of density matrices sharing one dimension.

    ``params`` optionally records the generator parameters of each state so
    that violation witnesses stay interpretable.
    """

    label: str
    states: list
    params: list | None = None

    def __post_init__(self):
        self.states = [np.asarray(s, dtype=complex) for s in self.states]
        dims = {s.shape for s in self.states}
        if len(dims) > 1:
            raise DimensionMismatch(f"family {self.label!r} mixes shapes {sorted(dims)}")
        if self.params is not None and len(self.params) != len(self.states):
            raise ValueError("params must align with states")

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]

    def __len__(self):
        return len(self.states)

    @classmethod
    def fixed_mixedness(cls, t: float, count: int, rng: np.random.Generator) -> "StateFamily":
        """Qubits of Bloch length ``t`` with directions uniform on the sphere."""
        blochs = [BlochVector(t, random_direction(rng)) for _ in range(count)]
        return cls(f"fixed-t:{t:g}", [from_bloch(b) for b in blochs],
                   [{"t": b.t, "n": list(b.n)} for b in blochs])

    @classmethod
    def fixed_nz(cls, n_z: float, count: int, rng: np.random.Generator) -> "StateFamily":
        """Qubits with fixed z-component of the direction, uniform ``t`` and azimuth."""
        blochs = [BlochVector.from_nz(rng.uniform(0.0, 1.0), n_z, rng.uniform(0.0, 2 * np.pi))
                  for _ in range(count)]
        return cls(f"fixed-nz:{n_z:g}", [from_bloch(b) for b in blochs],
                   [{"t": b.t, "n": list(b.n)} for b in blochs])

    @classmethod
    def bloch_grid(cls, ts: Sequence[float], n_zs: Sequence[float], label: str = "bloch-grid") -> "StateFamily":
        blochs = [BlochVector.from_nz(t, nz) for t in ts for nz in n_zs]
        return cls(label, [from_bloch(b) for b in blochs], [{"t": b.t, "n": list(b.n)} for b in blochs])

    @classmethod
    def pure_spectra(cls, spectra, label: str = "pure-spectra") -> "StateFamily":
        spectra = [np.asarray(s, dtype=float) for s in spectra]
        return cls(label, [pure_from_spectrum(s) for s in spectra], [{"spectrum": s.tolist()} for s in spectra])

    @classmethod
    def majorization_chain(cls, d: int, length: int, rng: np.random.Generator) -> "StateFamily":
        start = np.sort(rng.dirichlet(np.full(d, 0.3)))[::-1]
        return cls.pure_spectra(robin_hood_chain(start, length, rng), f"majorization-chain:{d}")

    @classmethod
    def random_pure(cls, d: int, count: int, rng: np.random.Generator) -> "StateFamily":
        return cls.pure_spectra([rng.dirichlet(np.ones(d)) for _ in range(count)], f"random-pure:{d}")

    @classmethod
    def x_family(cls, n_qubits: int, p: float, a_grid: Sequence[float]) -> "StateFamily":
        xps = [XStateParams(n_qubits, p, float(a)) for a in a_grid]
        return cls(f"x-state:{n_qubits}:{p:g}", [x_state(xp) for xp in xps],
                   [{"n_qubits": n_qubits, "p": p, "a": xp.a} for xp in xps])


# ----------------------------------------------------------------- reports


def comparison_signs(values: np.ndarray, iu, ju, tol: float) -> np.ndarray:
    """sign(v_i - v_j) for the index pairs, with |difference| <= tol mapped to 0."""
    diff = values[iu] - values[ju]
    s = np.sign(diff)
    s[np.abs(diff) <= tol] = 0
    return s.astype(int)


@dataclass
class OrderingReport:
    """Pairwise agreement of comparison signs across every pair of measures.

    ``values[k, m]`` is measure ``m`` on state ``k``. A violation is a state
    pair on which two measures give strictly opposite comparison signs.
    """

    label: str
    measures: list
    values: np.ndarray
    pair_count: int
    agreements: int
    violations: list = field(default_factory=list)
    tie_tolerance: float = TIE_TOL

    @property
    def measure_pairs(self) -> int:
        m = len(self.measures)
        return m * (m - 1) // 2

    @property
    def violation_count(self) -> int:
        return self.pair_count * self.measure_pairs - self.agreements

    @property
    def consistent(self) -> bool:
        return self.violation_count == 0

    def recheck(self) -> bool:
        """Re-derive every stored violation from its recorded values."""
        for v in self.violations:
            ai, aj, bi, bj = v["values"]
            da, db = ai - aj, bi - bj
            if abs(da) <= self.tie_tolerance or abs(db) <= self.tie_tolerance or da * db >= 0:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "measures": list(self.measures),
            "pair_count": self.pair_count,
            "measure_pairs": self.measure_pairs,
            "agreements": self.agreements,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "tie_tolerance": self.tie_tolerance,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def ordering_report(family: StateFamily, measures: Sequence, tie_tolerance: float = TIE_TOL,
                    max_witnesses: int | None = 100) -> OrderingReport:
    """Compare comparison signs of every state pair under every pair of measures.

    Ties (difference within ``tie_tolerance``) never count as violations.
    Only the first ``max_witnesses`` violations keep full witness records;
    counts always cover all of them.
    """
    measures = [as_measure(m) for m in measures]
    if len(family.states) < 2:
        raise ValueError("an ordering report needs at least two states")
    if len(measures) < 2:
        raise ValueError("an ordering report needs at least two measures")
    values = np.array([[m(rho) for m in measures] for rho in family.states])
    iu, ju = np.triu_indices(len(family.states), k=1)
    signs = [comparison_signs(values[:, k], iu, ju, tie_tolerance) for k in range(len(measures))]
    agreements = 0
    violations = []
    labels = [m.label for m in measures]
    for a, b in combinations(range(len(measures)), 2):
        bad = np.flatnonzero(signs[a] * signs[b] < 0)
        agreements += len(iu) - len(bad)
        for k in bad:
            if max_witnesses is not None and len(violations) >= max_witnesses:
                break
            i, j = int(iu[k]), int(ju[k])
            violations.append({
                "i": i,
                "j": j,
                "measure_a": labels[a],
                "measure_b": labels[b],
                "values": [float(values[i, a]), float(values[j, a]), float(values[i, b]), float(values[j, b])],
            })
    return OrderingReport(family.label, labels, values, len(iu), agreements, violations, tie_tolerance)


# ------------------------------------------------------------ monotonicity


@dataclass(frozen=True)
class Monotonicity:
    """Classification of a sampled curve.

    ``kind`` is one of "increasing", "decreasing", "constant" (all steps
    within tolerance) or "non-monotonic"; the latter carries the first
    sign-flip triple as ``witness``: ``((x0, x1, x2), (y0, y1, y2))``.
    Increasing and decreasing are non-strict at the tolerance.
    """

    kind: str
    witness: tuple | None = None

    @property
    def non_decreasing(self) -> bool:
        return self.kind in ("increasing", "constant")

    @property
    def non_increasing(self) -> bool:
        return self.kind in ("decreasing", "constant")


def classify_sequence(grid, values, tol: float = 1e-10) -> Monotonicity:
    x = np.asarray(grid, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.size < 3 or x.size != y.size:
        raise ValueError("a monotonicity scan needs at least 3 aligned grid points")
    steps = np.diff(y)
    s = np.where(steps > tol, 1, np.where(steps < -tol, -1, 0))
    nz = np.flatnonzero(s)
    if nz.size == 0:
        return Monotonicity("constant")
    flips = np.flatnonzero(s[nz][1:] != s[nz][0])
    if flips.size == 0:
        return Monotonicity("increasing" if s[nz[0]] > 0 else "decreasing")
    k = nz[flips[0] + 1]  # step k reverses the earlier direction
    lo = nz[flips[0]]
    idx = (lo, k, k + 1)
    return Monotonicity("non-monotonic", (tuple(float(x[i]) for i in idx), tuple(float(y[i]) for i in idx)))


def monotonicity_scan(curve: Callable, measure=None, grid=None, tol: float = 1e-10) -> Monotonicity:
    """Classify ``measure(curve(x))`` (or ``curve(x)`` itself when measure is None) over ``grid``."""
    grid = np.asarray(grid, dtype=float)
    f = curve if measure is None else (lambda x, m=as_measure(measure): m(curve(x)))
    return classify_sequence(grid, [f(x) for x in grid], tol)
