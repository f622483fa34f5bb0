"""Test-problem generators and reference spectra.

Two families: an analytically constructed matrix whose eigenphases sit
exactly on the j/2^n grid (built from a triangular eigenvector basis, so the
matrix is deliberately NOT unitary), and seeded Haar-random unitaries with a
trusted dense eigensolver providing reference phases.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .core import DenseOperator

MAX_N_MAT = 12


class Provenance(Enum):
    ANALYTIC = "analytic"
    RANDOM = "random"
    EXTERNAL = "external"


class EigensolverError(Exception):
    """Dense eigendecomposition failed to converge."""


@dataclass
class SpectralProblem:
    """A target matrix with its eigenvectors and optional reference phases."""

    n_mat: int
    matrix: DenseOperator
    eigenvectors: np.ndarray  # shape (2^n_mat, n_vectors), columns unit-norm
    reference_phases: np.ndarray | None = None
    provenance: Provenance = Provenance.EXTERNAL
    seed: int | None = None

    def __post_init__(self):
        self.eigenvectors = np.ascontiguousarray(self.eigenvectors, dtype=np.complex128)
        if self.eigenvectors.ndim != 2 or self.eigenvectors.shape[0] != self.dim:
            raise ValueError(
                f"eigenvector array shape {self.eigenvectors.shape} does not match "
                f"dimension {self.dim}"
            )
        if self.reference_phases is not None:
            self.reference_phases = np.asarray(self.reference_phases, dtype=np.float64)

    @property
    def dim(self) -> int:
        return 1 << self.n_mat

    @property
    def n_eigenvectors(self) -> int:
        return self.eigenvectors.shape[1]

    def eigenvector(self, j: int) -> np.ndarray:
        if not 0 <= j < self.n_eigenvectors:
            raise ValueError(f"eigenvector index {j} out of range")
        return self.eigenvectors[:, j]


@dataclass
class ReferenceSpectrum:
    """Phases in [0, 1) with unit-norm eigenvectors, sorted by phase."""

    phases: np.ndarray
    eigenvectors: np.ndarray
    pairing: np.ndarray  # problem eigenvector j <-> phases[pairing[j]]


def _check_n_mat(n_mat: int) -> None:
    if not 1 <= n_mat <= MAX_N_MAT:
        raise ValueError(f"n_mat must be in 1..{MAX_N_MAT}, got {n_mat}")


def gen_analytic(n_mat: int) -> SpectralProblem:
    """Matrix with eigenphases j/2^n_mat and triangular-ones eigenvectors.

    Eigenvector j has ones in entries 0..j scaled by 1/sqrt(j+1).  The matrix
    is assembled as P Lambda P^-1 with P^-1 in closed form (inverse of the
    scaled upper-triangular ones matrix is bidiagonal), so no numerical
    inversion error enters the construction.
    """
    _check_n_mat(n_mat)
    d = 1 << n_mat
    j = np.arange(d)
    phases = j / d
    scale = 1.0 / np.sqrt(j + 1.0)
    p = np.triu(np.ones((d, d))) * scale  # column j: ones in rows 0..j
    p_inv = np.diag(np.sqrt(j + 1.0)).astype(np.complex128)
    rows = np.arange(d - 1)
    p_inv[rows, rows + 1] = -np.sqrt(rows + 1.0)
    lam = np.exp(2j * np.pi * phases)
    u = (p * lam) @ p_inv
    return SpectralProblem(
        n_mat=n_mat,
        matrix=DenseOperator(u),
        eigenvectors=p.astype(np.complex128),
        reference_phases=phases,
        provenance=Provenance.ANALYTIC,
    )


def haar_random_unitary(dim: int, seed: int) -> DenseOperator:
    """Haar-distributed unitary via QR of a seeded complex Gaussian matrix.

    Uses numpy's PCG64 generator; the R diagonal is phase-normalized
    (Q <- Q diag(r_ii/|r_ii|)) to make the distribution exactly Haar.
    Deterministic for a fixed seed.
    """
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))
    return DenseOperator(q)


def gen_random_unitary(n_mat: int, seed: int) -> SpectralProblem:
    """Seeded Haar-random unitary with eigenpairs from the reference solver."""
    _check_n_mat(n_mat)
    op = haar_random_unitary(1 << n_mat, seed)
    spectrum = reference_spectrum(op)
    return SpectralProblem(
        n_mat=n_mat,
        matrix=op,
        eigenvectors=spectrum.eigenvectors,
        reference_phases=spectrum.phases,
        provenance=Provenance.RANDOM,
        seed=seed,
    )


def reference_spectrum(op: DenseOperator) -> ReferenceSpectrum:
    """Eigenphases in [0, 1) from a trusted dense eigensolver.

    Eigenvectors are unit-normalized; pairs are sorted by phase ascending
    with ties broken by the argument of the leading eigenvector component.
    """
    try:
        values, vectors = scipy.linalg.eig(op.entries)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise EigensolverError(str(exc)) from exc
    phases = np.mod(np.angle(values) / (2.0 * np.pi), 1.0)
    phases[phases >= 1.0] = 0.0  # guard against angle rounding at 2*pi
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    order = np.lexsort((np.angle(vectors[0, :]), phases))
    return ReferenceSpectrum(
        phases=phases[order],
        eigenvectors=vectors[:, order],
        pairing=np.arange(len(values)),
    )


def eigen_residual(problem: SpectralProblem) -> float:
    """max_j || U x_j - exp(2 pi i phi_j) x_j || over the stored eigenpairs."""
    if problem.reference_phases is None:
        raise ValueError("problem carries no reference phases")
    lam = np.exp(2j * np.pi * problem.reference_phases)
    resid = problem.matrix.entries @ problem.eigenvectors - problem.eigenvectors * lam
    return float(np.linalg.norm(resid, axis=0).max())
