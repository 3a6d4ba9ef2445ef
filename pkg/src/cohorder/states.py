"""State families: generic density matrices, Bloch qubits, spectral pure states, X states."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidState, ParamOutOfRange, WrongDimension
from .linalg import as_square, hermitian_eig, hermiticity_defect

STATE_TOL = 1e-10
UNIT_TOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class Diagnostic:
    """One failed density-matrix condition and its magnitude."""

    kind: str
    magnitude: float

    def __str__(self):
        return f"{self.kind}({self.magnitude:.6g})"


def validate(rho, tol: float = STATE_TOL) -> list[Diagnostic]:
    """Return an empty list for a valid density matrix, otherwise the violations.

    Magnitudes are the max Hermiticity defect, ``trace - 1`` and the most
    negative eigenvalue respectively. Positivity is only checked for
    Hermitian input.
    """
    a = np.asarray(rho, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        return [Diagnostic("WrongDimension", float(a.ndim))]
    out = []
    defect = hermiticity_defect(a)
    if defect > tol:
        out.append(Diagnostic("NotHermitian", defect))
    tr = complex(np.trace(a))
    if abs(tr - 1) > tol:
        out.append(Diagnostic("TraceViolation", float(tr.real - 1) if abs(tr.imag) <= tol else abs(tr - 1)))
    if defect <= tol:
        lam_min = float(hermitian_eig(a).eigenvalues[-1])
        if lam_min < -tol:
            out.append(Diagnostic("NotPSD", lam_min))
    return out


def check_density_matrix(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Validate and return ``rho`` as a complex array, raising InvalidState on failure."""
    a = np.asarray(rho, dtype=complex)
    problems = validate(a, tol)
    if problems:
        raise InvalidState("not a density matrix: " + ", ".join(map(str, problems)), problems)
    return a


def is_incoherent(rho, tol: float = STATE_TOL) -> bool:
    """True when every off-diagonal entry has modulus <= tol."""
    a = as_square(rho)
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return off.size == 0 or float(np.max(np.abs(off))) <= tol


def mixedness(rho) -> float:
    """Normalized linear entropy ``d/(d-1) * (1 - Tr rho^2)``."""
    a = as_square(rho)
    d = a.shape[0]
    if d == 1:
        raise WrongDimension("mixedness is undefined for d = 1")
    purity = float(np.real(np.sum(a * a.T)))
    return d / (d - 1) * (1.0 - purity)


# --------------------------------------------------------------------- qubits


@dataclass(frozen=True)
class BlochVector:
    """Qubit ``(I + t n.sigma) / 2`` with length ``t`` in [0, 1] and unit direction ``n``."""

    t: float
    n: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self):
        n = tuple(float(c) for c in self.n)
        if len(n) != 3:
            raise ParamOutOfRange(f"n must have three components, got {len(n)}")
        norm = float(np.linalg.norm(n))
        if abs(norm - 1.0) > UNIT_TOL:
            raise ParamOutOfRange(f"|n| must be 1, got {float(norm):.12g}")
        t = float(self.t)
        if not -UNIT_TOL <= t <= 1.0 + UNIT_TOL:
            raise ParamOutOfRange(f"t must lie in [0, 1], got {t!r}")
        object.__setattr__(self, "t", min(max(t, 0.0), 1.0))
        object.__setattr__(self, "n", n)

    @classmethod
    def from_nz(cls, t: float, n_z: float, phi: float = 0.0) -> "BlochVector":
        """Direction with z-component ``n_z`` and azimuth ``phi``."""
        if not -1.0 <= n_z <= 1.0:
            raise ParamOutOfRange(f"n_z must lie in [-1, 1], got {n_z!r}")
        rxy = np.sqrt(max(1.0 - n_z * n_z, 0.0))
        n = np.array([rxy * np.cos(phi), rxy * np.sin(phi), n_z])
        return cls(t, tuple(n / np.linalg.norm(n)))

    @property
    def n_z(self) -> float:
        return self.n[2]

    @property
    def k(self) -> np.ndarray:
        """Unnormalized Bloch vector ``t * n``."""
        return self.t * np.asarray(self.n)


def from_bloch(b: BlochVector) -> np.ndarray:
    t = b.t
    nx, ny, nz = b.n
    return np.array(
        [[(1 + t * nz) / 2, t * (nx - 1j * ny) / 2], [t * (nx + 1j * ny) / 2, (1 - t * nz) / 2]],
        dtype=complex,
    )


def to_bloch(rho) -> BlochVector:
    a = as_square(rho)
    if a.shape != (2, 2):
        raise WrongDimension(f"to_bloch needs a 2x2 matrix, got {a.shape}")
    k = np.array([2 * a[0, 1].real, -2 * a[0, 1].imag, (a[0, 0] - a[1, 1]).real])
    t = float(np.linalg.norm(k))
    if t < UNIT_TOL:
        return BlochVector(0.0, (0.0, 0.0, 1.0))
    return BlochVector(min(t, 1.0), tuple(k / t))


# ---------------------------------------------------------------- pure states


def check_spectrum(lambdas, tol: float = UNIT_TOL) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size < 1:
        raise WrongDimension("spectrum must be a non-empty 1-D sequence")
    if np.any(lam < -tol):
        raise ParamOutOfRange(f"spectrum entries must be non-negative, got min {float(lam.min()):.12g}")
    if abs(lam.sum() - 1.0) > tol:
        raise ParamOutOfRange(f"spectrum must sum to 1, got {float(lam.sum()):.12g}")
    return np.clip(lam, 0.0, None)


def pure_from_spectrum(lambdas) -> np.ndarray:
    """``|psi><psi|`` for ``|psi> = sum_i sqrt(lambda_i) |i>`` (real non-negative amplitudes)."""
    amp = np.sqrt(check_spectrum(lambdas))
    return np.outer(amp, amp).astype(complex)


def pure_state(psi) -> np.ndarray:
    """Projector onto an arbitrary (complex, normalized) state vector."""
    v = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > STATE_TOL:
        raise ParamOutOfRange(f"state vector must be normalized, got norm {float(norm):.12g}")
    return np.outer(v, v.conj())


# -------------------------------------------------------------------- X states


@dataclass(frozen=True)
class XStateParams:
    """``p |gGHZ><gGHZ| + (1 - p) I/d`` with ``|gGHZ> = a|0..0> + b|1..1>``, ``b = sqrt(1 - a^2)``."""

    n_qubits: int
    p: float
    a: float

    def __post_init__(self):
        if int(self.n_qubits) != self.n_qubits or self.n_qubits < 1:
            raise ParamOutOfRange(f"n_qubits must be a positive integer, got {self.n_qubits!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ParamOutOfRange(f"p must lie in [0, 1], got {self.p!r}")
        if not 0.0 <= self.a <= 1.0:
            raise ParamOutOfRange(f"a must lie in [0, 1], got {self.a!r}")

    @property
    def b(self) -> float:
        return float(np.sqrt(max(1.0 - self.a * self.a, 0.0)))

    @property
    def dim(self) -> int:
        return 2 ** int(self.n_qubits)


def x_state(xp: XStateParams) -> np.ndarray:
    d = xp.dim
    rho = np.eye(d, dtype=complex) * (1 - xp.p) / d
    a, b = xp.a, xp.b
    rho[0, 0] += xp.p * a * a
    rho[-1, -1] += xp.p * b * b
    rho[0, -1] += xp.p * a * b
    rho[-1, 0] += xp.p * a * b
    return rho


# ----------------------------------------------------------- random sampling


def random_direction(rng: np.random.Generator) -> tuple[float, float, float]:
    """Uniform point on the unit sphere (Marsaglia 1972)."""
    while True:
        u, v = rng.uniform(-1.0, 1.0, size=2)
        s = u * u + v * v
        if 0.0 < s < 1.0:
            break
    r = 2.0 * np.sqrt(1.0 - s)
    n = np.array([u * r, v * r, 1.0 - 2.0 * s])
    return tuple(n / np.linalg.norm(n))


def random_bloch(rng: np.random.Generator, t: float | None = None) -> BlochVector:
    if t is None:
        t = rng.uniform(0.0, 1.0)
    return BlochVector(t, random_direction(rng))


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Hilbert-Schmidt random state (normalized Ginibre ``G G^H``)."""
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def random_spectrum(d: int, rng: np.random.Generator) -> np.ndarray:
    lam = rng.dirichlet(np.ones(d))
    return lam / lam.sum()
