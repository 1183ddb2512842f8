"""Independent verifiers: brute-force least squares, sampling, quadrature.

Everything here deliberately avoids the fast routes used elsewhere in the
package, so agreement between an oracle and its production counterpart is
meaningful evidence:

* :func:`lsq_normal_equations` solves the weighted projection by assembling
  the Gram system in the unanimity basis, never touching the orthonormal
  basis.
* Monte Carlo estimators draw random coalitions (seeded PCG64 streams) and
  report a standard error with every mean.
* :func:`diagonal_quadrature` and :func:`cube_average` integrate the
  influence index over probability space numerically and in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import Approximation
from .core import (
    Coalition,
    MobiusRepresentation,
    PseudoBooleanFunction,
    check_mask,
    mobius,
    s_difference,
    sigma_s,
    subset_products,
    subsets_of,
    zeta,
)
from .errors import SingularSystem, ValidationError
from .indices import banzhaf_influence
from .measure import ProbabilityProfile, _check_same_n, _fsum, basis_function, inner_product


@dataclass(frozen=True)
class SampleEstimate:
    """A Monte Carlo mean with its standard error and provenance."""

    mean: float
    std_error: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.samples < 2:
            raise ValidationError("a sample estimate needs at least 2 samples")


# ---------------------------------------------------------------------------
# direct least squares
# ---------------------------------------------------------------------------

def lsq_normal_equations(
    f: PseudoBooleanFunction, S: Coalition, profile: ProbabilityProfile
) -> Approximation:
    """Best S-approximation by solving the Gram system in the unanimity basis.

    The Gram matrix has entries <u_T, u_R> = prod_{i in T u R} p_i and the
    right-hand side <f, u_T> = sum_{x superseteq T} w(x) f(x).  Solved with
    LU partial pivoting; strictly interior profiles make the system positive
    definite, so :class:`SingularSystem` is a defensive guard only.
    """
    _check_same_n(profile, f)
    check_mask(S, f.n)
    if S.bit_count() > 16:
        raise ValidationError(f"normal-equations system for |S|={S.bit_count()} is too large")
    basis = np.fromiter(subsets_of(S), dtype=np.int64, count=1 << S.bit_count())

    prods = subset_products(profile.p)
    gram = prods[basis[:, None] | basis[None, :]]

    weighted = profile.weights() * f.values
    for i in range(f.n):  # superset sums of w*f over the whole lattice
        pairs = weighted.reshape(-1, 2, 1 << i)
        pairs[:, 0, :] += pairs[:, 1, :]
    rhs = weighted[basis]

    try:
        solution = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"Gram system for S={S:#b} is singular: {exc}") from exc

    coeffs = np.zeros(1 << f.n)
    coeffs[basis] = solution
    multilinear = MobiusRepresentation(f.n, coeffs)
    table = zeta(multilinear)
    fourier = {
        int(T): inner_product(profile, table, basis_function(profile, int(T))) for T in basis
    }
    return Approximation(
        n=f.n, profile=profile, fourier=fourier, multilinear=multilinear, subset=S
    )


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def sample_coalition(profile: ProbabilityProfile, rng: np.random.Generator) -> Coalition:
    """Draw one random coalition: player i joins independently with prob p_i."""
    u = rng.random(profile.n)
    mask = 0
    for i in range(profile.n):
        if u[i] < profile.p[i]:
            mask |= 1 << i
    return mask


def sample_coalitions(
    profile: ProbabilityProfile, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Vectorized batch of :func:`sample_coalition` draws."""
    u = rng.random((size, profile.n))
    powers = 1 << np.arange(profile.n, dtype=np.int64)
    return (u < profile.p) @ powers


def _make_estimate(draws: np.ndarray, samples: int, seed: int) -> SampleEstimate:
    lo, hi = draws.min(), draws.max()
    if lo == hi:  # identical observations: the mean is exact and the spread is zero
        return SampleEstimate(float(lo), 0.0, samples, seed)
    return SampleEstimate(
        mean=float(draws.mean()),
        std_error=float(draws.std(ddof=1) / math.sqrt(samples)),
        samples=samples,
        seed=seed,
    )


TRANSFORMS = ("identity", "sigma", "delta")


def mc_expectation(
    f: PseudoBooleanFunction,
    transform: str,
    S: Coalition,
    profile: ProbabilityProfile,
    samples: int,
    seed: int,
) -> SampleEstimate:
    """Monte Carlo estimate of E[(T f)(C)] for T in {identity, sigma_S, Delta_S}.

    The true values are, respectively, the mean worth, the influence index and
    the interaction index at the profile.
    """
    _check_same_n(profile, f)
    check_mask(S, f.n)
    if samples < 100:
        raise ValidationError(f"need at least 100 samples, got {samples}")
    if transform == "identity":
        g = f
    elif transform == "sigma":
        g = sigma_s(f, S)
    elif transform == "delta":
        g = s_difference(f, S)
    else:
        raise ValidationError(f"unknown transform {transform!r}, expected one of {TRANSFORMS}")
    rng = np.random.default_rng(seed)
    draws = g.values[sample_coalitions(profile, rng, samples)]
    return _make_estimate(draws, samples, seed)


# ---------------------------------------------------------------------------
# integral checks
# ---------------------------------------------------------------------------

def diagonal_quadrature(
    f: PseudoBooleanFunction, S: Coalition, nodes: int | None = None
) -> float:
    """Gauss-Legendre value of the integral over p of Phi_{B,(p,...,p)}(f,S).

    The integrand is a polynomial of degree at most n, so any node count of
    at least ceil((n+1)/2) is exact up to rounding; the default n+2 keeps a
    comfortable margin.  Matches the Shapley generalized value.
    """
    check_mask(S, f.n)
    if nodes is None:
        nodes = f.n + 2
    if nodes < f.n + 1:
        raise ValidationError(f"need at least n+1 = {f.n + 1} nodes, got {nodes}")
    x, w = np.polynomial.legendre.leggauss(nodes)
    terms = [
        0.5 * wj * banzhaf_influence(f, S, ProbabilityProfile.constant(f.n, 0.5 * (xj + 1.0)))
        for xj, wj in zip(x, w)
    ]
    return math.fsum(terms)


def cube_average(f: PseudoBooleanFunction, S: Coalition) -> float:
    """Exact average of Phi_{B,p}(f,S) over p uniform on the cube (0,1)^n.

    Integrating prod_{i in T-S} p_i coordinate-wise turns each product into
    (1/2)^|T-S|, so the average collapses to the influence index at the
    uniform profile.
    """
    check_mask(S, f.n)
    a = mobius(f)
    masks = np.arange(1 << f.n)
    sel = (masks & S) != 0
    outside = np.bitwise_count((masks & ~S)[sel].astype(np.uint32))
    return _fsum(a.coeffs[sel] * 0.5 ** outside.astype(np.float64))


def _eval_extension_batch(a: MobiusRepresentation, points: np.ndarray) -> np.ndarray:
    """Multilinear extension at many points, chunked to bound memory."""
    total = points.shape[0]
    chunk = max(1, (1 << 22) // (1 << max(a.n - 1, 0)))
    out = np.empty(total)
    for start in range(0, total, chunk):
        x = points[start : start + chunk]
        work = None
        for i in reversed(range(a.n)):
            half = 1 << i
            if work is None:
                work = a.coeffs[:half, None] + np.outer(a.coeffs[half:], x[:, i])
            else:
                work = work[:half] + work[half:] * x[:, i][None, :]
        out[start : start + chunk] = work[0]
    return out


CDF_FAMILIES = ("beta", "point")


def cdf_integral_check(
    f: PseudoBooleanFunction,
    S: Coalition,
    profile: ProbabilityProfile,
    samples: int,
    seed: int,
    family: str = "beta",
) -> SampleEstimate:
    """Sample the integral of (sigma_S fbar)(x) under per-player CDFs with mean p_i.

    Any product of distributions on [0,1] whose means match the profile
    integrates to the influence index.  ``beta`` draws x_i from
    Beta(2 p_i, 2 (1-p_i)); ``point`` is the degenerate point mass at p_i,
    for which every draw hits the same value and the standard error is 0.
    """
    _check_same_n(profile, f)
    check_mask(S, f.n)
    if samples < 1000:
        raise ValidationError(f"need at least 1000 samples, got {samples}")
    rng = np.random.default_rng(seed)
    if family == "beta":
        points = rng.beta(2.0 * profile.p, 2.0 * (1.0 - profile.p), size=(samples, profile.n))
    elif family == "point":
        points = np.broadcast_to(profile.p, (samples, profile.n)).copy()
    else:
        raise ValidationError(f"unknown family {family!r}, expected one of {CDF_FAMILIES}")
    draws = _eval_extension_batch(mobius(sigma_s(f, S)), points)
    return _make_estimate(draws, samples, seed)
