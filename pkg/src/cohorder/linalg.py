"""Dense complex-Hermitian linear algebra.

The eigensolver is a cyclic Jacobi method with complex 2x2 unitary rotations.
Matrices here are small (d <= 16 in practice), where Jacobi is accurate to
working precision and needs no external LAPACK call.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import NegativeEigenvalue, NotHermitian, NoConvergence, WrongDimension

HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending; ``eigenvectors[:, k]`` pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise WrongDimension(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(m) -> float:
    """max |m_ij - conj(m_ji)|."""
    a = as_square(m)
    return float(np.max(np.abs(a - a.conj().T)))


def _phase_fix(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    # make the first non-negligible component of each column real positive
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = np.flatnonzero(np.abs(col) > tol)
        if idx.size:
            z = col[idx[0]]
            v[:, k] = col * (abs(z) / z)
    return v


def hermitian_eig(m, tol: float = HERMITIAN_TOL, max_rotations: int | None = None) -> EigenDecomposition:
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi sweeps.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies a real Givens rotation that annihilates it. Sweeps run until the
    off-diagonal Frobenius norm is negligible relative to the full norm.

    Raises NotHermitian if ``max |m - m^H| > tol`` and NoConvergence when the
    rotation budget (``100 * d**2`` by default) is exhausted.
    """
    a = as_square(m)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitian(f"matrix is not Hermitian (max |m - m^H| = {defect:.3e})")
    d = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(d, dtype=complex)
    budget = 100 * d * d if max_rotations is None else max_rotations

    scale = np.linalg.norm(a)
    thresh = d * np.finfo(float).eps * max(scale, np.finfo(float).tiny)
    offdiag = ~np.eye(d, dtype=bool)
    rotations = 0
    while True:
        off = np.linalg.norm(a[offdiag])
        if off <= thresh:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= thresh / d:
                    a[p, q] = a[q, p] = 0.0
                    continue
                if rotations >= budget:
                    raise NoConvergence(f"Jacobi exceeded {budget} rotations (off-norm {off:.3e})")
                rotations += 1
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]];  a <- J^H a J,  v <- v J
                sc = s * phase.conjugate()
                cc = c * phase.conjugate()
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - sc * aq
                a[:, q] = s * ap + cc * aq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - sc.conjugate() * rq
                a[q, :] = s * rp + cc.conjugate() * rq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - sc * vq
                v[:, q] = s * vp + cc * vq

    w = np.real(np.diag(a)).copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(eigenvalues=w[order], eigenvectors=_phase_fix(v[:, order]))


def psd_eigenvalues(m) -> EigenDecomposition:
    """Eigendecomposition of a PSD matrix with roundoff-level eigenvalues set to zero.

    Eigenvalues in [-1e-12, 0) are clamped. Positive eigenvalues at the
    solver's noise floor (``64 d eps lambda_max``) are zeroed as well: for
    alpha < 1 they would otherwise leak ``noise**alpha`` into ``m**alpha``.
    """
    eig = hermitian_eig(m)
    lam = eig.eigenvalues
    if lam.size and lam[-1] < -CLAMP_TOL:
        raise NegativeEigenvalue(f"matrix has eigenvalue {lam[-1]:.3e} < 0")
    floor = 64 * lam.size * np.finfo(float).eps * max(lam[0], 0.0)
    lam = np.where(lam <= floor, 0.0, lam)
    return EigenDecomposition(lam, eig.eigenvectors)


def matrix_power(m, alpha: float) -> np.ndarray:
    """``V diag(lambda**alpha) V^H`` for a Hermitian PSD matrix."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    eig = psd_eigenvalues(m)
    out = (eig.eigenvectors * eig.eigenvalues ** alpha) @ eig.eigenvectors.conj().T
    return 0.5 * (out + out.conj().T)


def trace(m) -> complex:
    return complex(np.trace(as_square(m)))
