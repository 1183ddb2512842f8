"""Best approximations of a game by orthogonal projection.

The best S-approximation of f under the product measure w is the function in
V_S = span{u_T : T subseteq S} minimizing sum_T w(T) (f(T) - g(T))^2.  Because
the v_{T,p} are orthonormal for <.,.>_w, the minimizer is simply

    f_{S,p} = sum_{T subseteq S} <f, v_{T,p}> v_{T,p},

and the best degree-k approximation replaces the index set by {|T| <= k}.
Projections are always computed coefficient by coefficient in this basis;
the independent normal-equations route lives in :mod:`pbindex.oracle`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from .core import (
    Coalition,
    MobiusRepresentation,
    PseudoBooleanFunction,
    check_mask,
    subset_products,
    subsets_of,
    zeta,
)
from .errors import DimensionError, ValidationError
from .measure import ProbabilityProfile, basis_function, inner_product, _check_same_n, _fsum


@dataclass(frozen=True, eq=False)
class Approximation:
    """A projection of a game onto V_S or onto degree <= k.

    ``fourier`` maps each included subset T to <f, v_{T,p}>; ``multilinear``
    is the same approximant expanded in the unanimity basis.  Exactly one of
    ``subset`` and ``degree`` is set.
    """

    n: int
    profile: ProbabilityProfile
    fourier: Dict[Coalition, float]
    multilinear: MobiusRepresentation
    subset: Optional[Coalition] = None
    degree: Optional[int] = None

    def table(self) -> PseudoBooleanFunction:
        """The approximant evaluated on all vertices."""
        return zeta(self.multilinear)


def _expand_fourier(
    fourier: Dict[Coalition, float], profile: ProbabilityProfile
) -> MobiusRepresentation:
    """Distribute sum_T c_T prod_{i in T}(x_i - p_i)/s_i over the unanimity basis.

    Each product expands as sum_{R subseteq T} prod_{i in T minus R}(-p_i) u_R,
    a subset convolution; coefficients of subsets never touched stay exactly 0.
    """
    n = profile.n
    scale = np.sqrt(profile.p * (1.0 - profile.p))
    negprods = subset_products(-profile.p)
    coeffs = np.zeros(1 << n)
    for T, c in fourier.items():
        norm = c / math.prod(scale[i] for i in range(n) if T >> i & 1)
        for R in subsets_of(T):
            coeffs[R] += norm * negprods[T & ~R]
    return MobiusRepresentation(n, coeffs)


def best_s_approximation(
    f: PseudoBooleanFunction, S: Coalition, profile: ProbabilityProfile
) -> Approximation:
    """Orthogonal projection of f onto V_S under the product measure."""
    _check_same_n(profile, f)
    check_mask(S, f.n)
    fourier = {T: inner_product(profile, f, basis_function(profile, T)) for T in subsets_of(S)}
    return Approximation(
        n=f.n,
        profile=profile,
        fourier=fourier,
        multilinear=_expand_fourier(fourier, profile),
        subset=S,
    )


def best_k_approximation(
    f: PseudoBooleanFunction, k: int, profile: ProbabilityProfile
) -> Approximation:
    """Projection of f onto the multilinear polynomials of degree at most k."""
    _check_same_n(profile, f)
    if not 0 <= k <= f.n:
        raise ValidationError(f"degree must lie in 0..{f.n}, got {k}")
    fourier = {
        T: inner_product(profile, f, basis_function(profile, T))
        for T in range(1 << f.n)
        if T.bit_count() <= k
    }
    return Approximation(
        n=f.n,
        profile=profile,
        fourier=fourier,
        multilinear=_expand_fourier(fourier, profile),
        degree=k,
    )


def to_multilinear(approx: Approximation) -> MobiusRepresentation:
    """Unanimity-basis coefficients of the approximant.

    For an S-approximation the coefficient of u_S is the weighted Banzhaf
    interaction index of the original game.
    """
    return _expand_fourier(approx.fourier, approx.profile)


def residual_norm(
    f: PseudoBooleanFunction, approx: Approximation, profile: ProbabilityProfile
) -> float:
    """Squared weighted distance sum_T w(T) (f(T) - g(T))^2 to the approximant."""
    _check_same_n(profile, f)
    if approx.n != f.n:
        raise DimensionError(f"approximation has n={approx.n} but game has n={f.n}")
    diff = f.values - approx.table().values
    return _fsum(profile.weights() * diff * diff)
