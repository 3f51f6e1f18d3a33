"""Hypothesis cones and the two permutation decoders.

The linear decoder applies the posterior-mean map (I + K)^-1 and sorts;
it is the optimal rule exactly when K lies in the linear regime.  The
Monte Carlo MAP decoder is valid for any positive definite K: it samples
the posterior of the clean vector given y and picks the cone holding the
most mass.  Both are deterministic given (seed, worker-count).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FactorialGuardError, ParameterError
from .linalg import SymMatrix, is_positive_definite, sym_sqrt
from .regime import check_linear_regime, conditional_covariance
from .rng import split_trials, worker_rngs

MAX_FACTORIAL_N = 8  # default n! enumeration guard (8! = 40320)


@dataclass(frozen=True)
class Permutation:
    """Ordering pi of [1:n]: membership in its cone means
    x[pi_1] <= x[pi_2] <= ... <= x[pi_n] (1-based indices, closed)."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(i) for i in self.order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise ParameterError(f"not a permutation of 1..{len(order)}: {order}")
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return len(self.order)

    def reversed(self) -> "Permutation":
        return Permutation(self.order[::-1])

    def to_text(self) -> str:
        return ",".join(str(i) for i in self.order)

    @staticmethod
    def from_text(text: str) -> "Permutation":
        return Permutation(tuple(int(t) for t in text.split(",")))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))


def sort_permutation(x) -> Permutation:
    """The permutation along which `x` is ascending; ties broken by
    ascending original index (stable sort)."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ParameterError(f"expected a nonempty vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("vector entries must be finite")
    return Permutation(tuple(np.argsort(arr, kind="stable") + 1))


def contains(p: Permutation, x) -> bool:
    """True iff x lies in the closed cone of p."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.size != p.n:
        raise ParameterError(f"vector length {arr.size} does not match permutation size {p.n}")
    chain = arr[np.array(p.order) - 1]
    return bool(np.all(chain[1:] >= chain[:-1]))


@dataclass(frozen=True, eq=False)
class PosteriorTable:
    """Empirical posterior mass per hypothesis cone, over all n! cones."""

    entries: dict[Permutation, float]
    samples: int

    def __post_init__(self):
        probs = np.array(list(self.entries.values()))
        if np.any(probs < 0.0) or np.any(probs > 1.0):
            raise ParameterError("posterior probabilities must lie in [0, 1]")
        if abs(probs.sum() - 1.0) > 3.0 / np.sqrt(max(self.samples, 1)):
            raise ParameterError("posterior probabilities do not sum to 1")

    def argmax(self) -> Permutation:
        """Highest-mass permutation; ties go to the lexicographically
        smallest (entries iterate in lexicographic order)."""
        best, best_p = None, -1.0
        for perm, p in self.entries.items():
            if p > best_p:
                best, best_p = perm, p
        return best


def check_factorial_guard(n: int, max_factorial_n: int = MAX_FACTORIAL_N) -> None:
    if n > max_factorial_n:
        raise FactorialGuardError(
            f"refusing to enumerate {n}! hypotheses (n = {n} > {max_factorial_n}); "
            f"raise max_factorial_n (CLI: --max-factorial-n) to override")


def _check_vector(y, n: int) -> np.ndarray:
    arr = np.asarray(y, dtype=float)
    if arr.ndim != 1 or arr.size != n:
        raise ParameterError(f"observation length {arr.size} does not match dimension {n}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("observation entries must be finite")
    return arr


def posterior_mean(k: SymMatrix, y) -> np.ndarray:
    """Optimal mean-square estimate of the clean vector: (I + K)^-1 y."""
    if not is_positive_definite(k):
        raise DomainError("decoding requires a positive definite covariance")
    arr = _check_vector(y, k.n)
    return np.linalg.solve(np.eye(k.n) + k.entries, arr)


def linear_decode(k: SymMatrix, y) -> Permutation:
    """Sort the posterior mean.  Equals the MAP decision whenever `k`
    is in the linear regime."""
    return sort_permutation(posterior_mean(k, y))


def _classified_counts(rngs, trial_counts, y_tilde: np.ndarray, root: np.ndarray,
                       negate_samples: bool) -> dict[tuple[int, ...], int]:
    """Draw y_tilde + root @ Z per stream and count cone memberships.

    Rows are tallied through a base-n integer code when the n^n code
    space is small enough for a bincount; otherwise through unique-row
    counting (identical results, just slower)."""
    n = y_tilde.size
    use_codes = n ** n <= 2_000_000
    weights = n ** np.arange(n, dtype=np.int64) if use_codes else None
    binc = np.zeros(n ** n, dtype=np.int64) if use_codes else None
    counts: dict[tuple[int, ...], int] = {}
    for rng, m in zip(rngs, trial_counts):
        if m == 0:
            continue
        z = rng.standard_normal((m, n))
        if negate_samples:
            np.negative(z, out=z)
        draws = y_tilde + z @ root
        orders = np.argsort(draws, axis=1, kind="stable")
        if use_codes:
            binc += np.bincount(orders @ weights, minlength=n ** n)
        else:
            uniq, cnt = np.unique(orders + 1, axis=0, return_counts=True)
            for row, c in zip(uniq, cnt):
                key = tuple(int(i) for i in row)
                counts[key] = counts.get(key, 0) + int(c)
    if use_codes:
        for code in np.nonzero(binc)[0]:
            digits, x = [], int(code)
            for _ in range(n):
                digits.append(x % n + 1)
                x //= n
            counts[tuple(digits)] = int(binc[code])
    return counts


def _table_from_counts(counts: dict[tuple[int, ...], int], n: int,
                       samples: int) -> PosteriorTable:
    entries = {Permutation(p): counts.get(p, 0) / samples
               for p in itertools.permutations(range(1, n + 1))}
    return PosteriorTable(entries=entries, samples=samples)


def posterior_table(k: SymMatrix, y, samples: int, seed: int, *,
                    workers: int = 1, max_factorial_n: int = MAX_FACTORIAL_N,
                    negate_samples: bool = False) -> PosteriorTable:
    """Monte Carlo estimate of the posterior cone probabilities given y.

    Draws `samples` vectors from the Gaussian posterior of the clean
    vector (mean (I+K)^-1 y, covariance (K^-1+I)^-1) and classifies each
    by sorting.  `negate_samples` flips every draw around the posterior
    mean; it exists so point-symmetry checks can couple the y and -y runs
    through common random numbers.
    """
    check_factorial_guard(k.n, max_factorial_n)
    if samples < 1:
        raise ParameterError(f"samples must be >= 1, got {samples}")
    y_tilde = posterior_mean(k, y)
    root = sym_sqrt(conditional_covariance(k)).entries
    counts = _classified_counts(worker_rngs(seed, workers), split_trials(samples, workers),
                                y_tilde, root, negate_samples)
    return _table_from_counts(counts, k.n, samples)


def map_decode(k: SymMatrix, y, samples: int, seed: int, *,
               workers: int = 1, max_factorial_n: int = MAX_FACTORIAL_N,
               negate_samples: bool = False) -> Permutation:
    """Monte Carlo MAP decision: argmax of the posterior table, ties to
    the lexicographically smallest permutation.

    Observations whose posterior mean is constant are an exact n!-way
    tie when the covariance is in the linear regime (they sit on the
    intersection of every decision region); the tie rule is applied
    directly there instead of letting sampling noise pick a winner.
    """
    check_factorial_guard(k.n, max_factorial_n)
    if k.n == 1:
        _check_vector(y, 1)
        return Permutation((1,))
    y_tilde = posterior_mean(k, y)
    spread = float(y_tilde.max() - y_tilde.min())
    if spread <= 1e-12 * (1.0 + float(np.abs(y_tilde).max())):
        if check_linear_regime(k).is_linear:
            return Permutation.identity(k.n)
    table = posterior_table(k, y, samples, seed, workers=workers,
                            max_factorial_n=max_factorial_n,
                            negate_samples=negate_samples)
    return table.argmax()
