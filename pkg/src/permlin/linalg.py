"""Dense symmetric-matrix numerics and the constrained basis family Q.

Everything here is sized for desk-scale problems (n up to a few hundred
at most).  The eigensolver is a cyclic Jacobi iteration: simple, accurate
for symmetric matrices, and with an explicit convergence contract.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericalError, ParameterError

# Default tolerances; all relative to the Frobenius norm unless noted.
SYM_TOL = 1e-10          # accepted construction asymmetry, relative
ORTHO_TOL = 1e-10        # Q^T Q - I, absolute per entry
JACOBI_SWEEP_CAP = 100
JACOBI_OFF_TOL = 1e-12   # off-diagonal Frobenius mass, relative
PD_PIVOT_TOL = 1e-12     # Cholesky pivot floor, relative to max diagonal


def _as_square_array(entries) -> np.ndarray:
    a = np.asarray(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ParameterError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParameterError("matrix entries must be finite")
    return a


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Symmetric n x n real matrix, symmetrized on construction.

    Asymmetry up to SYM_TOL (relative Frobenius) is averaged away;
    anything larger is rejected rather than silently symmetrized.
    """

    entries: np.ndarray
    sym_tol: float = field(default=SYM_TOL, repr=False, compare=False)

    def __post_init__(self):
        a = _as_square_array(self.entries)
        scale = np.linalg.norm(a) + 1.0
        if np.abs(a - a.T).max() > self.sym_tol * scale:
            raise ParameterError("matrix is asymmetric beyond tolerance")
        a = 0.5 * (a + a.T)
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))


class CovarianceMatrix(SymMatrix):
    """SymMatrix that is verified positive definite on construction."""

    def __post_init__(self):
        super().__post_init__()
        if not is_positive_definite(self):
            raise DomainError("covariance matrix must be positive definite")


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """Orthonormal columns; `in_q_family` additionally pins the last column
    to (1/sqrt(n)) * ones, the symmetry axis of the hypothesis cones."""

    columns: np.ndarray

    def __post_init__(self):
        q = _as_square_array(self.columns)
        gram = q.T @ q
        if np.abs(gram - np.eye(q.shape[0])).max() > ORTHO_TOL:
            raise ParameterError("columns are not orthonormal within tolerance")
        q = q.copy()
        q.flags.writeable = False
        object.__setattr__(self, "columns", q)

    @property
    def n(self) -> int:
        return self.columns.shape[0]

    def in_q_family(self, tol: float = ORTHO_TOL) -> bool:
        last = self.columns[:, -1]
        target = np.full(self.n, 1.0 / np.sqrt(self.n))
        return bool(np.abs(last - target).max() <= tol)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted descending, paired with orthonormal eigenvectors
    (column i of `eigenvectors` belongs to `eigenvalues[i]`)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=float)
        v = _as_square_array(self.eigenvectors)
        if w.ndim != 1 or w.size != v.shape[0]:
            raise ParameterError("eigenvalue/eigenvector shapes do not match")
        if np.any(np.diff(w) > 1e-12 * (1.0 + np.abs(w).max())):
            raise ParameterError("eigenvalues must be sorted descending")
        if np.abs(v.T @ v - np.eye(v.shape[0])).max() > 1e-8:
            raise ParameterError("eigenvectors are not orthonormal within tolerance")
        w = w.copy()
        w.flags.writeable = False
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    @property
    def n(self) -> int:
        return self.eigenvalues.size


def _offdiag_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part, summed directly so an
    exactly diagonal matrix reports exactly zero."""
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def sym_eigen(m: SymMatrix, sweep_cap: int = JACOBI_SWEEP_CAP,
              off_tol: float = JACOBI_OFF_TOL) -> Spectrum:
    """Eigendecomposition by cyclic Jacobi rotations.

    Stops when the off-diagonal Frobenius mass drops below
    off_tol * ||M||_F; raises NumericalError if `sweep_cap` sweeps do
    not get there.
    """
    a = np.array(m.entries, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    fro = np.linalg.norm(a)
    threshold = off_tol * fro
    if n > 1:
        converged = False
        for _ in range(sweep_cap):
            off = _offdiag_norm(a)
            if off <= threshold:
                converged = True
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = np.sign(theta) if theta != 0 else 1.0
                    t = t / (abs(theta) + np.hypot(theta, 1.0))
                    c = 1.0 / np.sqrt(t * t + 1.0)
                    s = t * c
                    # A <- J^T A J with the Givens rotation in the (p, q) plane
                    gp, gq = a[:, p].copy(), a[:, q].copy()
                    a[:, p] = c * gp - s * gq
                    a[:, q] = s * gp + c * gq
                    gp, gq = a[p, :].copy(), a[q, :].copy()
                    a[p, :] = c * gp - s * gq
                    a[q, :] = s * gp + c * gq
                    a[p, q] = a[q, p] = 0.0
                    gp, gq = v[:, p].copy(), v[:, q].copy()
                    v[:, p] = c * gp - s * gq
                    v[:, q] = s * gp + c * gq
        if not converged:
            off = _offdiag_norm(a)
            if off > threshold:
                raise NumericalError(
                    f"Jacobi iteration did not converge in {sweep_cap} sweeps "
                    f"(off-diagonal mass {off:.3e} > {threshold:.3e})")
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return Spectrum(eigenvalues=w[order], eigenvectors=v[:, order])


def is_positive_definite(m: SymMatrix) -> bool:
    """Pivoted Cholesky test: every pivot must exceed
    PD_PIVOT_TOL * (largest diagonal entry)."""
    a = np.array(m.entries, dtype=float)
    n = a.shape[0]
    max_diag = float(np.diag(a).max())
    if max_diag <= 0.0:
        return False
    floor = PD_PIVOT_TOL * max_diag
    for k in range(n):
        j = k + int(np.argmax(np.diag(a)[k:]))
        if j != k:
            a[[k, j], :] = a[[j, k], :]
            a[:, [k, j]] = a[:, [j, k]]
        pivot = a[k, k]
        if not np.isfinite(pivot) or pivot <= floor:
            return False
        if k + 1 < n:
            col = a[k + 1:, k]
            a[k + 1:, k + 1:] -= np.outer(col, col) / pivot
    return True


def sym_inverse(m: SymMatrix) -> SymMatrix:
    """Inverse of a positive definite symmetric matrix."""
    if not is_positive_definite(m):
        raise DomainError("sym_inverse requires a positive definite matrix")
    inv = np.linalg.solve(m.entries, np.eye(m.n))
    return SymMatrix(0.5 * (inv + inv.T))


def sym_sqrt(m: SymMatrix) -> SymMatrix:
    """Symmetric PSD square root via eigen-reconstruction.

    Eigenvalues in [-1e-10 * ||m||_F, 0) are clamped to zero; anything
    more negative is a genuine domain violation.
    """
    spec = sym_eigen(m)
    w = spec.eigenvalues.copy()
    if w.size and w.min() < -1e-10 * (m.frobenius() + 1.0):
        raise DomainError(
            f"matrix has negative eigenvalue {w.min():.3e}; no real PSD square root")
    w = np.sqrt(np.clip(w, 0.0, None))
    v = spec.eigenvectors
    root = (v * w) @ v.T
    return SymMatrix(0.5 * (root + root.T))


def helmert_q(n: int) -> OrthonormalBasis:
    """The explicit member of the Q family.

    Column j < n has (j^2 + j)^(-1/2) in rows 1..j and -(1 + 1/j)^(-1/2)
    in row j+1 (1-based); the last column is (1/sqrt(n)) * ones.
    """
    if n < 1:
        raise ParameterError(f"dimension must be >= 1, got {n}")
    q = np.zeros((n, n))
    for j in range(1, n):  # 0-based column j holds the 1-based column j+1 <= n-1 rule
        q[:j, j - 1] = 1.0 / np.sqrt(j * (j + 1.0))
        q[j, j - 1] = -np.sqrt(j / (j + 1.0))
    q[:, n - 1] = 1.0 / np.sqrt(n)
    return OrthonormalBasis(q)


def random_q(n: int, rng: np.random.Generator) -> OrthonormalBasis:
    """Random member of the Q family: Gram-Schmidt of Gaussian vectors
    against (1/sqrt(n)) * ones, which is placed last."""
    if n < 1:
        raise ParameterError(f"dimension must be >= 1, got {n}")
    cols = [np.full(n, 1.0 / np.sqrt(n))]
    while len(cols) < n:
        g = rng.standard_normal(n)
        for c in cols:
            g -= (c @ g) * c
        norm = np.linalg.norm(g)
        if norm > 1e-8:
            cols.append(g / norm)
    q = np.column_stack(cols[1:] + cols[:1])
    return OrthonormalBasis(q)
