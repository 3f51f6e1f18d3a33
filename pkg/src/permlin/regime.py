"""Linear-regime characterization of noise covariances.

A covariance K is "linear" when the posterior covariance
M = (K^-1 + I)^-1 takes the block form Q * blockdiag(g*I_{n-2}, S) * Q^T
with S = [[g, v], [v, a]] and Q in the constrained basis family (last
column aligned with the all-ones direction).  Equivalently, the ellipsoid
M^(1/2) * B^n projects onto the zero-sum hyperplane W as a ball.  Inside
the regime the optimal permutation decoder is linear-then-sort.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .linalg import (
    CovarianceMatrix,
    OrthonormalBasis,
    Spectrum,
    SymMatrix,
    helmert_q,
    is_positive_definite,
    sym_inverse,
)

REGIME_TOL = 1e-9  # default isotropy tolerance, relative to max |B| entry


@dataclass(frozen=True, eq=False)
class LinearRegimeParams:
    """The triple (gamma, a, v) plus basis Q parameterizing the block form.

    Constraint v^2 < min(a*gamma, (1-a)*(1-gamma)) is exactly what keeps
    both M and the reconstructed K positive definite.
    """

    gamma: float
    a: float
    v: float
    q: OrthonormalBasis

    def __post_init__(self):
        g, a, v = float(self.gamma), float(self.a), float(self.v)
        if not (0.0 < g < 1.0):
            raise ParameterError(f"gamma must lie in (0, 1), got {g}")
        if not (0.0 < a < 1.0):
            raise ParameterError(f"a must lie in (0, 1), got {a}")
        bound = min(a * g, (1.0 - a) * (1.0 - g))
        if not (v * v < bound):
            raise ParameterError(
                f"constraint v^2 < min(a*gamma, (1-a)*(1-gamma)) violated: "
                f"v^2 = {v * v:.6g} >= {bound:.6g}")
        if self.q.n < 2:
            raise ParameterError("params require dimension n >= 2")
        if not self.q.in_q_family():
            raise ParameterError("q is not in the constrained basis family")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return self.q.n

    def s_block(self) -> np.ndarray:
        return np.array([[self.gamma, self.v], [self.v, self.a]])

    def conditional_matrix(self) -> SymMatrix:
        """M = Q * blockdiag(gamma*I_{n-2}, S) * Q^T."""
        n = self.n
        block = self.gamma * np.eye(n)
        block[n - 2:, n - 2:] = self.s_block()
        q = self.q.columns
        m = q @ block @ q.T
        return SymMatrix(0.5 * (m + m.T))


@dataclass(frozen=True, eq=False)
class RegimeCheckResult:
    """Outcome of testing a covariance for linear-regime membership.

    `residual` is the max entrywise deviation of the projection matrix
    from isotropy and is reported whether or not the test passed."""

    is_linear: bool
    params: LinearRegimeParams | None
    residual: float


def conditional_covariance(k: SymMatrix) -> SymMatrix:
    """Posterior covariance M = (K^-1 + I)^-1, computed as I - (I + K)^-1
    so K itself is never inverted.  All eigenvalues of M lie in (0, 1)."""
    if not is_positive_definite(k):
        raise DomainError("conditional covariance requires a positive definite input")
    m = np.eye(k.n) - sym_inverse(SymMatrix(np.eye(k.n) + k.entries)).entries
    return SymMatrix(0.5 * (m + m.T))


def construct_covariance(p: LinearRegimeParams) -> CovarianceMatrix:
    """Noise covariance whose posterior covariance equals the block form of `p`.

    Works through K = Q * blockdiag(g/(1-g)*I_{n-2}, S*(I-S)^-1) * Q^T,
    the exact inverse image of the conditional-covariance map."""
    n = p.n
    s = p.s_block()
    i2_minus_s = np.eye(2) - s
    det = i2_minus_s[0, 0] * i2_minus_s[1, 1] - i2_minus_s[0, 1] * i2_minus_s[1, 0]
    inv = np.array([[i2_minus_s[1, 1], -i2_minus_s[0, 1]],
                    [-i2_minus_s[1, 0], i2_minus_s[0, 0]]]) / det
    block = (p.gamma / (1.0 - p.gamma)) * np.eye(n)
    block[n - 2:, n - 2:] = s @ inv
    q = p.q.columns
    kn = q @ block @ q.T
    return CovarianceMatrix(0.5 * (kn + kn.T))


def projection_matrix(k: SymMatrix, q: OrthonormalBasis) -> SymMatrix:
    """(n-1) x (n-1) matrix B = C^T M C describing the shadow of the
    posterior ellipsoid on the zero-sum hyperplane W, where C holds the
    first n-1 columns of `q` (an orthonormal basis of W)."""
    if k.n < 2:
        raise ParameterError("projection requires dimension n >= 2")
    if q.n != k.n:
        raise ParameterError("basis dimension does not match the matrix")
    if not q.in_q_family():
        raise ParameterError("q is not in the constrained basis family")
    m = conditional_covariance(k).entries
    c = q.columns[:, :-1]
    b = c.T @ m @ c
    return SymMatrix(0.5 * (b + b.T))


def isotropy_residual(b: SymMatrix) -> tuple[float, float]:
    """Mean diagonal gamma and max deviation of `b` from gamma * I."""
    g = float(np.trace(b.entries) / b.n)
    residual = float(np.abs(b.entries - g * np.eye(b.n)).max())
    return g, residual


def block_form_check(k: SymMatrix, q: OrthonormalBasis,
                     tol: float = REGIME_TOL) -> tuple[bool, float]:
    """Direct verification of the block form: the leading (n-1) x (n-1)
    block of Q^T M Q must be gamma * I (the trailing column is the free
    v-vector).  Any basis in the family gives the same verdict."""
    if not is_positive_definite(k):
        raise DomainError("regime check requires a positive definite input")
    b = projection_matrix(k, q)
    _, residual = isotropy_residual(b)
    scale = 1.0 + float(np.abs(b.entries).max())
    return residual <= tol * scale, residual


def check_linear_regime(k: SymMatrix, tol: float = REGIME_TOL) -> RegimeCheckResult:
    """Test a covariance for linear-regime membership and, on success,
    recover (gamma, a, v, Q).

    The canonical basis is the explicit family member; the verdict is
    basis-independent.  The recovered Q is rotated inside W so the
    coupling collapses to the single scalar v >= 0 in the last block.
    """
    if k.n < 2:
        raise ParameterError("regime check requires dimension n >= 2")
    if not is_positive_definite(k):
        raise DomainError("regime check requires a positive definite input")
    q = helmert_q(k.n)
    b = projection_matrix(k, q)
    gamma, residual = isotropy_residual(b)
    scale = 1.0 + float(np.abs(b.entries).max())
    if residual > tol * scale:
        return RegimeCheckResult(is_linear=False, params=None, residual=residual)

    m = conditional_covariance(k).entries
    cols = q.columns
    c, q_n = cols[:, :-1], cols[:, -1]
    a = float(q_n @ m @ q_n)
    w = c.T @ m @ q_n
    v = float(np.linalg.norm(w))
    if v < 1e-150:
        aligned = q
        v = 0.0
    else:
        u = c @ (w / v)
        aligned = OrthonormalBasis(np.column_stack(
            _complete_hyperplane_basis(u, c) + [u, q_n]))
    params = LinearRegimeParams(gamma=gamma, a=a, v=v, q=aligned)
    return RegimeCheckResult(is_linear=True, params=params, residual=residual)


def _complete_hyperplane_basis(u: np.ndarray, c: np.ndarray) -> list[np.ndarray]:
    """n-2 orthonormal vectors spanning W minus the direction `u`,
    built by Gram-Schmidt over the columns of `c` (two projection passes
    for numerical orthogonality)."""
    n = c.shape[0]
    cols: list[np.ndarray] = [u]
    for i in range(c.shape[1]):
        g = c[:, i].copy()
        for _ in range(2):
            for col in cols:
                g -= (col @ g) * col
        norm = np.linalg.norm(g)
        if norm > 1e-8:
            cols.append(g / norm)
        if len(cols) == n - 1:
            break
    if len(cols) != n - 1:
        raise ParameterError("failed to complete an orthonormal basis of W")
    return cols[1:]


def spectrum_closed_form(p: LinearRegimeParams) -> Spectrum:
    """Eigenvalues and eigenvectors of the constructed covariance, in
    closed form.

    The repeated eigenvalue g/(1-g) has multiplicity n-2 with the first
    n-2 basis columns as eigenvectors; the remaining two come from the
    2 x 2 block S, mapped through t -> t/(1-t) and expressed in the
    (q_{n-1}, q_n) plane.
    """
    n = p.n
    g, a, v = p.gamma, p.a, p.v
    q = p.q.columns
    disc = np.sqrt((a - g) ** 2 + 4.0 * v * v)
    s_eigs = [(a + g + disc) / 2.0, (a + g - disc) / 2.0]
    if v == 0.0:
        plane_pairs = [(max(a, g), np.array([0.0, 1.0]) if a >= g else np.array([1.0, 0.0])),
                       (min(a, g), np.array([1.0, 0.0]) if a >= g else np.array([0.0, 1.0]))]
    else:
        plane_pairs = []
        for t in s_eigs:
            w = np.array([v, t - g])
            plane_pairs.append((t, w / np.linalg.norm(w)))
    values = [g / (1.0 - g)] * (n - 2)
    vectors = [q[:, i] for i in range(n - 2)]
    for t, w in plane_pairs:
        values.append(t / (1.0 - t))
        vectors.append(w[0] * q[:, n - 2] + w[1] * q[:, n - 1])
    values_arr = np.array(values)
    order = np.argsort(-values_arr, kind="stable")
    return Spectrum(eigenvalues=values_arr[order],
                    eigenvectors=np.column_stack(vectors)[:, order])


def n2_params(k: SymMatrix) -> LinearRegimeParams:
    """Exact parameter recovery for n = 2, where every positive definite
    covariance lies in the linear regime.

    With M = [[w, q], [q, z]]: a = (w+z+2q)/2, gamma = (w+z-2q)/2,
    v = (z-w)/2 under the basis [(-1,1), (1,1)]/sqrt(2); the first basis
    column is flipped if needed to report v >= 0.
    """
    if k.n != 2:
        raise ParameterError(f"n2_params requires a 2x2 matrix, got n = {k.n}")
    if not is_positive_definite(k):
        raise DomainError("n2_params requires a positive definite input")
    m = conditional_covariance(k).entries
    w, qq, z = m[0, 0], m[0, 1], m[1, 1]
    a = (w + z + 2.0 * qq) / 2.0
    gamma = (w + z - 2.0 * qq) / 2.0
    v = (z - w) / 2.0
    first = np.array([-1.0, 1.0]) / np.sqrt(2.0)
    if v < 0.0:
        v, first = -v, -first
    q = OrthonormalBasis(np.column_stack([first, np.full(2, 1.0 / np.sqrt(2.0))]))
    return LinearRegimeParams(gamma=gamma, a=a, v=v, q=q)
