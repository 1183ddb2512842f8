"""Independent-coalition product measure and the weighted inner product.

A probability profile p in (0,1)^n fixes the distribution of a random
coalition C in which each player joins independently: w(T) = prod_{i in T} p_i
* prod_{i not in T} (1 - p_i).  On top of that measure this module provides
the weighted Euclidean inner product, the orthonormal basis

    v_{T,p}(x) = prod_{i in T} (x_i - p_i) / sqrt(p_i (1 - p_i)),

expectations and covariances of games under C.
"""

from __future__ import annotations

import math

import numpy as np

from .core import Coalition, PseudoBooleanFunction, check_mask, mobius, eval_multilinear_extension
from .errors import DimensionError, ValidationError

# Profiles must stay strictly interior: the basis divides by sqrt(p(1-p)).
INTERIOR_EPS = 1e-9


class ProbabilityProfile:
    """Per-player inclusion probabilities p_i = Pr(C contains player i+1).

    Entries outside [INTERIOR_EPS, 1 - INTERIOR_EPS] are rejected rather than
    clamped.  The 2**n coalition weights are materialized lazily and cached.
    """

    __slots__ = ("n", "p", "_weights")

    def __init__(self, p):
        arr = np.asarray(p, dtype=np.float64).copy()
        if arr.ndim != 1 or arr.size < 1:
            raise ValidationError(f"profile must be a 1-d vector, got shape {arr.shape}")
        if arr.size > 24:
            raise ValidationError(f"profile for {arr.size} players exceeds the 24-player cap")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("profile contains non-finite entries")
        if np.any(arr < INTERIOR_EPS) or np.any(arr > 1.0 - INTERIOR_EPS):
            raise ValidationError(
                f"profile entries must lie in [{INTERIOR_EPS}, {1 - INTERIOR_EPS}]"
            )
        arr.setflags(write=False)
        self.n = int(arr.size)
        self.p = arr
        self._weights: np.ndarray | None = None

    @classmethod
    def uniform(cls, n: int) -> "ProbabilityProfile":
        """The unweighted case p = (1/2, ..., 1/2)."""
        return cls(np.full(n, 0.5))

    @classmethod
    def constant(cls, n: int, value: float) -> "ProbabilityProfile":
        """A scalar probability replicated to all n players."""
        return cls(np.full(n, float(value)))

    def weights(self) -> np.ndarray:
        """All 2**n coalition weights w(T), in mask order (lazily cached)."""
        if self._weights is None:
            w = np.ones(1)
            for pi in self.p:
                w = np.concatenate([w * (1.0 - pi), w * pi])
            w.setflags(write=False)
            self._weights = w
        return self._weights

    def __repr__(self) -> str:
        return f"ProbabilityProfile({self.p.tolist()!r})"


def _check_same_n(profile: ProbabilityProfile, *fs: PseudoBooleanFunction) -> None:
    for f in fs:
        if f.n != profile.n:
            raise DimensionError(f"game has n={f.n} but profile has n={profile.n}")


def _fsum(terms: np.ndarray) -> float:
    # math.fsum returns the correctly rounded sum, independent of order
    return math.fsum(terms.tolist())


def coalition_weight(profile: ProbabilityProfile, T: Coalition) -> float:
    """w(T) = prod_{i in T} p_i * prod_{i not in T} (1 - p_i)."""
    check_mask(T, profile.n)
    w = 1.0
    for i, pi in enumerate(profile.p):
        w *= pi if T >> i & 1 else 1.0 - pi
    return w


def inner_product(
    profile: ProbabilityProfile, f: PseudoBooleanFunction, g: PseudoBooleanFunction
) -> float:
    """Weighted Euclidean inner product sum_x w(x) f(x) g(x)."""
    _check_same_n(profile, f, g)
    return _fsum(profile.weights() * f.values * g.values)


def basis_function(profile: ProbabilityProfile, T: Coalition) -> PseudoBooleanFunction:
    """The orthonormal basis element v_{T,p} as a dense table."""
    check_mask(T, profile.n)
    vals = np.ones(1)
    for i, pi in enumerate(profile.p):
        if T >> i & 1:
            s = math.sqrt(pi * (1.0 - pi))
            vals = np.concatenate([vals * (-pi / s), vals * ((1.0 - pi) / s)])
        else:
            vals = np.concatenate([vals, vals])
    return PseudoBooleanFunction(profile.n, vals)


def expectation(profile: ProbabilityProfile, f: PseudoBooleanFunction) -> float:
    """E[f(C)] = sum_x w(x) f(x); equals the multilinear extension at p."""
    _check_same_n(profile, f)
    return _fsum(profile.weights() * f.values)


def covariance(
    profile: ProbabilityProfile, f: PseudoBooleanFunction, g: PseudoBooleanFunction
) -> float:
    """cov(f, g) = <f, g> - E[f] E[g] under the random coalition C."""
    return inner_product(profile, f, g) - expectation(profile, f) * expectation(profile, g)


def variance(profile: ProbabilityProfile, f: PseudoBooleanFunction) -> float:
    """var(f) = cov(f, f), floored at zero against rounding."""
    return max(covariance(profile, f, f), 0.0)


def multilinear_expectation(profile: ProbabilityProfile, f: PseudoBooleanFunction) -> float:
    """E[f(C)] computed the other way round, via the multilinear extension."""
    _check_same_n(profile, f)
    return eval_multilinear_extension(mobius(f), profile.p)
