"""Monte Carlo machinery: error-probability estimators, origin-uniformity
measurement, and point-cloud emitters for the 3D figures.

Two independent routes to the error probability are provided: direct
simulation of the channel, and the geometric cone-volume formula valid in
the linear regime.  They must agree within combined standard errors; the
test suite enforces that cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .decoder import (
    MAX_FACTORIAL_N,
    Permutation,
    PosteriorTable,
    _classified_counts,
    _table_from_counts,
    check_factorial_guard,
    posterior_table,
)
from .errors import DomainError, NotLinearRegimeError, ParameterError
from .linalg import SymMatrix, is_positive_definite, sym_sqrt
from .regime import (
    REGIME_TOL,
    LinearRegimeParams,
    check_linear_regime,
    conditional_covariance,
)
from .rng import child_rng, split_trials, worker_rngs


@dataclass(frozen=True, eq=False)
class Estimate:
    """Scalar Monte Carlo estimate with its binomial standard error."""

    value: float
    stderr: float
    trials: int
    seed: int
    method: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"value": self.value, "stderr": self.stderr, "trials": self.trials,
                "seed": self.seed, "method": self.method, "params": dict(self.params)}


@dataclass(frozen=True, eq=False)
class RegionSample:
    """Decoder-labeled point cloud over a sampling box (figure data)."""

    points: np.ndarray
    labels: list[Permutation]
    box: list[tuple[float, float]]
    decoder: str
    samples_per_point: int


@dataclass(frozen=True, eq=False)
class EllipsoidData:
    """Posterior-ellipsoid surface samples and their orthogonal
    projections onto the zero-sum hyperplane."""

    surface: np.ndarray
    projection: np.ndarray


def _check_pd(k: SymMatrix) -> None:
    if not is_positive_definite(k):
        raise DomainError("estimator requires a positive definite covariance")


def sample_gaussian(cov: SymMatrix, count: int, seed: int, *, workers: int = 1) -> np.ndarray:
    """`count` i.i.d. draws from N(0, cov), via the symmetric square root."""
    _check_pd(cov)
    if count < 0:
        raise ParameterError(f"count must be >= 0, got {count}")
    root = sym_sqrt(cov).entries
    parts = [rng.standard_normal((m, cov.n)) @ root
             for rng, m in zip(worker_rngs(seed, workers), split_trials(count, workers))]
    return np.vstack(parts) if parts else np.empty((0, cov.n))


def _ball_draws(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform draws in the closed unit ball: Gaussian direction scaled
    by U^(1/dim)."""
    g = rng.standard_normal((count, dim))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    radii = rng.random((count, 1)) ** (1.0 / dim)
    pts = g * (radii / norms)
    # guard the closed-ball invariant against rounding at the boundary
    out = np.linalg.norm(pts, axis=1)
    over = out > 1.0
    if np.any(over):
        pts[over] /= out[over, None]
    return pts


def sample_uniform_ball(dim: int, count: int, seed: int, *, workers: int = 1) -> np.ndarray:
    """`count` points uniform in the unit ball of dimension `dim`."""
    if dim < 1:
        raise ParameterError(f"dimension must be >= 1, got {dim}")
    if count < 0:
        raise ParameterError(f"count must be >= 0, got {count}")
    parts = [_ball_draws(rng, m, dim)
             for rng, m in zip(worker_rngs(seed, workers), split_trials(count, workers))]
    return np.vstack(parts) if parts else np.empty((0, dim))


def _binomial_estimate(hits: int, trials: int, seed: int, method: str,
                       params: dict, scale: float = 1.0,
                       complement: bool = False) -> Estimate:
    p = hits / trials
    stderr = scale * math.sqrt(p * (1.0 - p) / trials)
    value = scale * p
    if complement:
        value = 1.0 - value
    return Estimate(value=float(min(max(value, 0.0), 1.0)), stderr=float(stderr),
                    trials=trials, seed=seed, method=method, params=params)


def _ascending_rows(x: np.ndarray) -> np.ndarray:
    return np.all(x[:, 1:] >= x[:, :-1], axis=1)


def perr_simulation(k: SymMatrix, decoder: str = "linear", trials: int = 100_000,
                    seed: int = 0, *, map_samples: int = 20_000, workers: int = 1,
                    max_factorial_n: int = MAX_FACTORIAL_N) -> Estimate:
    """Direct channel simulation: draw clean X and noise N, decode
    Y = X + N, and count mismatches against the permutation of X."""
    _check_pd(k)
    if decoder not in ("linear", "map"):
        raise ParameterError(f"decoder must be 'linear' or 'map', got {decoder!r}")
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    n = k.n
    if decoder == "map":
        check_factorial_guard(n, max_factorial_n)
        root_m = sym_sqrt(conditional_covariance(k)).entries
    root_k = sym_sqrt(k).entries
    eye_plus_k = np.eye(n) + k.entries
    errors = 0
    for rng, m in zip(worker_rngs(seed, workers), split_trials(trials, workers)):
        if m == 0:
            continue
        x = rng.standard_normal((m, n))
        y = x + rng.standard_normal((m, n)) @ root_k
        true_orders = np.argsort(x, axis=1, kind="stable")
        y_tilde = np.linalg.solve(eye_plus_k, y.T).T
        if decoder == "linear":
            dec_orders = np.argsort(y_tilde, axis=1, kind="stable")
            errors += int(np.count_nonzero(np.any(true_orders != dec_orders, axis=1)))
        else:
            for i in range(m):
                counts = _classified_counts([rng], [map_samples], y_tilde[i], root_m, False)
                table = _table_from_counts(counts, n, map_samples)
                if table.argmax().order != tuple(true_orders[i] + 1):
                    errors += 1
    params = {"decoder": decoder, "workers": workers}
    if decoder == "map":
        params["map_samples"] = map_samples
    return _binomial_estimate(errors, trials, seed, f"simulation-{decoder}", params)


def perr_geometric(k: SymMatrix, samples: int, seed: int, *, workers: int = 1,
                   tol: float = REGIME_TOL) -> Estimate:
    """Error probability from the cone-volume identity: the success
    probability is n! times the fraction of the unit 2n-ball (pushed
    through the block map [[I, 0], [I, K^(1/2)]]) landing in the product
    cone {x ascending} x {(I+K)^-1 y ascending}.

    Refuses covariances outside the linear regime, where the identity's
    premise fails.
    """
    _check_pd(k)
    if samples < 1:
        raise ParameterError(f"samples must be >= 1, got {samples}")
    n = k.n
    if n == 1:
        return Estimate(value=0.0, stderr=0.0, trials=samples, seed=seed,
                        method="geometric", params={"workers": workers})
    result = check_linear_regime(k, tol)
    if not result.is_linear:
        raise NotLinearRegimeError(
            "geometric error-probability estimation assumes a linear-regime "
            f"covariance; this one is not (isotropy residual {result.residual:.3e})")
    root_k = sym_sqrt(k).entries
    eye_plus_k = np.eye(n) + k.entries
    hits = 0
    for rng, m in zip(worker_rngs(seed, workers), split_trials(samples, workers)):
        if m == 0:
            continue
        w = _ball_draws(rng, m, 2 * n)
        first, second = w[:, :n], w[:, n:]
        y = first + second @ root_k
        y_tilde = np.linalg.solve(eye_plus_k, y.T).T
        hits += int(np.count_nonzero(_ascending_rows(first) & _ascending_rows(y_tilde)))
    return _binomial_estimate(hits, samples, seed, "geometric",
                              {"workers": workers}, scale=float(math.factorial(n)),
                              complement=True)


def origin_uniformity(k: SymMatrix, samples: int, seed: int, *, workers: int = 1,
                      max_factorial_n: int = MAX_FACTORIAL_N) -> PosteriorTable:
    """Posterior cone probabilities at the all-regions boundary point y = 0.

    Uniform entries (1/n! each) characterize the linear regime; any
    spread beyond noise certifies the covariance is outside it.
    """
    return posterior_table(k, np.zeros(k.n), samples, seed, workers=workers,
                           max_factorial_n=max_factorial_n)


def region_sample(k: SymMatrix, box=None, count: int = 2000, decoder: str = "linear",
                  map_samples: int = 20_000, seed: int = 0, *,
                  max_factorial_n: int = MAX_FACTORIAL_N) -> RegionSample:
    """Uniform box samples labeled by the chosen decoder (figure data).

    Points come from the stream (seed, spawn_key=(0,)); the MAP posterior
    for point i uses (seed, spawn_key=(1, i)).
    """
    _check_pd(k)
    n = k.n
    if box is None:
        box = [(-3.0, 3.0)] * n
    box = [(float(lo), float(hi)) for lo, hi in box]
    if len(box) != n or any(hi <= lo for lo, hi in box):
        raise ParameterError("box must give one (lo, hi) pair with lo < hi per axis")
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    if decoder not in ("linear", "map"):
        raise ParameterError(f"decoder must be 'linear' or 'map', got {decoder!r}")
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    points = child_rng(seed, 0).uniform(lo, hi, size=(count, n))
    eye_plus_k = np.eye(n) + k.entries
    y_tilde = np.linalg.solve(eye_plus_k, points.T).T
    if decoder == "linear":
        orders = np.argsort(y_tilde, axis=1, kind="stable") + 1
        labels = [Permutation(tuple(int(i) for i in row)) for row in orders]
        samples_per_point = 0
    else:
        check_factorial_guard(n, max_factorial_n)
        root_m = sym_sqrt(conditional_covariance(k)).entries
        labels = []
        for i in range(count):
            counts = _classified_counts([child_rng(seed, 1, i)], [map_samples],
                                        y_tilde[i], root_m, False)
            labels.append(_table_from_counts(counts, n, map_samples).argmax())
        samples_per_point = map_samples
    return RegionSample(points=points, labels=labels, box=box, decoder=decoder,
                        samples_per_point=samples_per_point)


def ellipsoid_projection_data(p: LinearRegimeParams, surface_count: int,
                              seed: int) -> EllipsoidData:
    """Surface samples of the posterior ellipsoid M^(1/2) * S^2 and their
    orthogonal projections onto the zero-sum hyperplane (3D figure data)."""
    if p.n != 3:
        raise ParameterError(f"ellipsoid figure data requires n = 3, got n = {p.n}")
    if surface_count < 1:
        raise ParameterError(f"surface count must be >= 1, got {surface_count}")
    root = sym_sqrt(p.conditional_matrix()).entries
    g = child_rng(seed, 0).standard_normal((surface_count, 3))
    sphere = g / np.linalg.norm(g, axis=1, keepdims=True)
    surface = sphere @ root
    projection = surface - surface.sum(axis=1, keepdims=True) / 3.0
    return EllipsoidData(surface=surface, projection=projection)
