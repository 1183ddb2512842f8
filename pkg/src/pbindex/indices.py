"""Banzhaf-type power, interaction and influence indexes.

For a game f, a coalition S and a profile p, the two central quantities are

    interaction   I_{B,p}(f,S)   = sum_{T superseteq S} a(T) prod_{i in T-S} p_i
    influence     Phi_{B,p}(f,S) = sum_{T : T meets S} a(T) prod_{i in T-S} p_i

where a is the Mobius transform of f.  The influence index equals the endpoint
gap f_{S,p}(S) - f_{S,p}(0) of the best S-approximation, the expectation of the
switch operator E[(sigma_S f)(C)], the inner product <f, g_{S,p}>, and a
generalized value sum_{T subseteq N-S} p_T^S (f(T u S) - f(T)); all four routes
are implemented and kept as first-class methods because their agreement is the
whole point of the construction.

Also here: the Shapley generalized value, the Ben-Or-Linial influence, the
conversions between the two coefficient forms of a generalized value, the
normalized (correlation) influence index, and reconstruction of a game from
its full interaction table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from .approx import best_s_approximation
from .core import (
    Coalition,
    PseudoBooleanFunction,
    check_mask,
    full_mask,
    mobius,
    subset_products,
    subsets_of,
)
from .errors import (
    DegenerateFunction,
    EmptySubset,
    IncompleteTable,
    InvalidCoefficients,
    PbindexError,
    ValidationError,
)
from .measure import (
    ProbabilityProfile,
    _check_same_n,
    _fsum,
    covariance,
    inner_product,
    variance,
)

INFLUENCE_METHODS = ("mobius", "projection", "average", "inner-product")

# sigma(f) at or below this is treated as a constant function
DEGENERACY_EPS = 1e-12


def _comp_masks(S: Coalition, n: int) -> np.ndarray:
    """Submasks of the complement of S, ascending (packed order)."""
    comp = full_mask(n) & ~S
    return np.fromiter(subsets_of(comp), dtype=np.int64, count=1 << (n - S.bit_count()))


def banzhaf_interaction(
    f: PseudoBooleanFunction, S: Coalition, profile: ProbabilityProfile
) -> float:
    """Weighted Banzhaf interaction index, via the Mobius transform of f.

    Equals E[(Delta_S f)(C)] and the leading (u_S) coefficient of the best
    S-approximation.  For S = 0 it degenerates to E[f(C)].
    """
    _check_same_n(profile, f)
    check_mask(S, f.n)
    a = mobius(f)
    subs = _comp_masks(S, f.n)
    prods = subset_products([profile.p[i] for i in range(f.n) if not S >> i & 1])
    return _fsum(a.coeffs[subs | S] * prods)


def g_function(S: Coalition, profile: ProbabilityProfile) -> PseudoBooleanFunction:
    """The contrast function g_{S,p}(x) = prod_{i in S} x_i/p_i - prod_{i in S} (1-x_i)/(1-p_i).

    Representer of the influence index: Phi_{B,p}(f,S) = <f, g_{S,p}>.  Its
    expectation under C is 0, and g_{S,p} vanishes identically for S = 0.
    """
    check_mask(S, profile.n)
    bits = [i for i in range(profile.n) if S >> i & 1]
    inv_p = math.prod(1.0 / profile.p[i] for i in bits)
    inv_q = math.prod(1.0 / (1.0 - profile.p[i]) for i in bits)
    masks = np.arange(1 << profile.n)
    vals = ((masks & S) == S) * inv_p - ((masks & S) == 0) * inv_q
    return PseudoBooleanFunction(profile.n, vals)


def _influence_mobius(f, S, profile):
    # sum over T meeting S of a(T) prod_{i in T-S} p_i
    a = mobius(f)
    factors = [1.0 if S >> i & 1 else profile.p[i] for i in range(f.n)]
    prods = subset_products(factors)
    masks = np.arange(1 << f.n)
    sel = (masks & S) != 0
    return _fsum(a.coeffs[sel] * prods[sel])


def _influence_projection(f, S, profile):
    tab = best_s_approximation(f, S, profile).table().values
    return float(tab[S] - tab[0])


def _influence_average(f, S, profile):
    subs = _comp_masks(S, f.n)
    coeff = np.ones(1)
    for i in range(f.n):
        if not S >> i & 1:
            coeff = np.concatenate([coeff * (1.0 - profile.p[i]), coeff * profile.p[i]])
    return _fsum(coeff * (f.values[subs | S] - f.values[subs]))


def _influence_inner_product(f, S, profile):
    return inner_product(profile, f, g_function(S, profile))


_INFLUENCE_DISPATCH = {
    "mobius": _influence_mobius,
    "projection": _influence_projection,
    "average": _influence_average,
    "inner-product": _influence_inner_product,
}


def banzhaf_influence(
    f: PseudoBooleanFunction,
    S: Coalition,
    profile: ProbabilityProfile,
    method: str = "mobius",
) -> float:
    """Weighted Banzhaf influence index Phi_{B,p}(f,S).

    The four methods are mathematically equivalent and agree to rounding:

    * ``mobius``         sum over T meeting S of a(T) prod_{i in T-S} p_i
    * ``projection``     f_{S,p}(S) - f_{S,p}(0) from the best S-approximation
    * ``average``        weighted average of marginal contributions f(T u S)-f(T)
    * ``inner-product``  <f, g_{S,p}>

    ``mobius`` is the default (cheapest); the others stay public because the
    equivalence is load-bearing and exercised by the verification suite.
    """
    _check_same_n(profile, f)
    check_mask(S, f.n)
    try:
        route = _INFLUENCE_DISPATCH[method]
    except KeyError:
        raise ValidationError(
            f"unknown method {method!r}, expected one of {INFLUENCE_METHODS}"
        ) from None
    return route(f, S, profile)


def influence_interaction_expansion(
    f: PseudoBooleanFunction, S: Coalition, profile: ProbabilityProfile
) -> float:
    """Influence written as a combination of interaction indexes over T inside S.

    Phi_{B,p}(f,S) = sum_{T subseteq S} I_{B,p}(f,T)
                     * (prod_{i in T}(1-p_i) - (-1)^{|T|} prod_{i in T} p_i).

    At the uniform profile every even-|T| weight vanishes and the odd ones
    become (1/2)^(|T|-1).
    """
    _check_same_n(profile, f)
    check_mask(S, f.n)
    terms = []
    for T in subsets_of(S):
        bits = [i for i in range(f.n) if T >> i & 1]
        w = math.prod(1.0 - profile.p[i] for i in bits)
        w -= (-1.0) ** len(bits) * math.prod(profile.p[i] for i in bits)
        terms.append(banzhaf_interaction(f, T, profile) * w)
    return math.fsum(terms)


def shapley_generalized_value(f: PseudoBooleanFunction, S: Coalition) -> float:
    """Shapley generalized value sum_{T meets S} a(T) / (|T - S| + 1).

    Also the average over p in (0,1) of the influence index at the constant
    profile (p, ..., p).
    """
    check_mask(S, f.n)
    a = mobius(f)
    masks = np.arange(1 << f.n)
    sel = (masks & S) != 0
    outside = np.bitwise_count((masks & ~S)[sel].astype(np.uint32)).astype(np.float64)
    return _fsum(a.coeffs[sel] / (outside + 1.0))


def ben_or_linial_influence(f: PseudoBooleanFunction, S: Coalition) -> float:
    """Expected max-minus-min spread of f over assignments to S.

    (1/2^(n-|S|)) sum_{T subseteq N-S} (max_{R subseteq S} f(T u R)
                                        - min_{R subseteq S} f(T u R)).
    For games nondecreasing in every variable this equals the influence index
    at the uniform profile.
    """
    check_mask(S, f.n)
    outer = _comp_masks(S, f.n)
    inner = np.fromiter(subsets_of(S), dtype=np.int64, count=1 << S.bit_count())
    grid = f.values[outer[:, None] | inner[None, :]]
    spread = grid.max(axis=1) - grid.min(axis=1)
    return _fsum(spread) / float(len(outer))


# ---------------------------------------------------------------------------
# generalized-value coefficient tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralizedValueCoefficients:
    """Coefficients of a generalized value G(f,S), in one of two forms.

    ``kind="p"``: table over T subseteq N-S, with
        G(f,S) = sum_T p_T^S (f(T u S) - f(T)).
    ``kind="q"``: table over R meeting S, with
        G(f,S) = sum_R q_R^S a(R).
    A q-form comes from a p-form iff its values depend only on R - S.
    """

    n: int
    subset: Coalition
    kind: str
    table: Dict[Coalition, float]

    def __post_init__(self):
        check_mask(self.subset, self.n)
        if self.kind not in ("p", "q"):
            raise ValidationError(f"kind must be 'p' or 'q', got {self.kind!r}")
        comp = full_mask(self.n) & ~self.subset
        if self.kind == "p":
            expected = set(subsets_of(comp))
        else:
            expected = {m for m in range(1 << self.n) if m & self.subset}
        if set(self.table) != expected:
            raise ValidationError(
                f"{self.kind}-form table for S={self.subset:#b} has wrong key set"
            )


def influence_value_coefficients(
    S: Coalition, profile: ProbabilityProfile
) -> GeneralizedValueCoefficients:
    """The p-form coefficients realizing the influence index as a generalized value.

    p_T^S = prod_{i in T} p_i * prod_{i in N-(S u T)} (1-p_i)
          = Pr(T subseteq C subseteq S u T).

    Nonnegative and summing to 1 over T subseteq N-S.
    """
    check_mask(S, profile.n)
    subs = _comp_masks(S, profile.n)
    coeff = np.ones(1)
    for i in range(profile.n):
        if not S >> i & 1:
            coeff = np.concatenate([coeff * (1.0 - profile.p[i]), coeff * profile.p[i]])
    table = {int(T): float(c) for T, c in zip(subs, coeff)}
    return GeneralizedValueCoefficients(profile.n, S, "p", table)


def gv_p_to_q(coeffs: GeneralizedValueCoefficients) -> GeneralizedValueCoefficients:
    """Convert p-form to q-form: q_R^S = sum_{T : R-S subseteq T subseteq N-S} p_T^S."""
    if coeffs.kind != "p":
        raise ValidationError("gv_p_to_q expects a p-form table")
    if coeffs.subset == 0:
        raise EmptySubset("generalized-value conversion needs a nonempty S")
    n, S = coeffs.n, coeffs.subset
    subs = _comp_masks(S, n)
    packed = np.array([coeffs.table[int(T)] for T in subs])
    c = n - S.bit_count()
    for j in range(c):  # superset sums over the complement lattice
        pairs = packed.reshape(-1, 2, 1 << j)
        pairs[:, 0, :] += pairs[:, 1, :]
    by_outside = dict(zip(subs.tolist(), packed.tolist()))
    table = {}
    for D in subs.tolist():
        for E in subsets_of(S):
            if E:
                table[D | E] = by_outside[D]
    return GeneralizedValueCoefficients(n, S, "q", table)


def gv_q_to_p(
    coeffs: GeneralizedValueCoefficients, tol: float = 1e-12
) -> GeneralizedValueCoefficients:
    """Convert q-form back: p_T^S = sum_{R : T subseteq R subseteq N-S} (-1)^(|R|-|T|) q_{R u S}^S.

    The q-form must depend only on R - S; a spread above ``tol`` within any
    class raises :class:`InvalidCoefficients`.
    """
    if coeffs.kind != "q":
        raise ValidationError("gv_q_to_p expects a q-form table")
    if coeffs.subset == 0:
        raise EmptySubset("generalized-value conversion needs a nonempty S")
    n, S = coeffs.n, coeffs.subset
    subs = _comp_masks(S, n)
    rep = np.empty(len(subs))
    for k, D in enumerate(subs.tolist()):
        vals = [coeffs.table[D | E] for E in subsets_of(S) if E]
        if max(vals) - min(vals) > tol:
            raise InvalidCoefficients(
                f"q values for R-S={D:#b} spread by {max(vals) - min(vals):.3e} > {tol}"
            )
        rep[k] = coeffs.table[D | S]
    c = n - S.bit_count()
    for j in range(c):  # superset Mobius inversion over the complement lattice
        pairs = rep.reshape(-1, 2, 1 << j)
        pairs[:, 0, :] -= pairs[:, 1, :]
    table = dict(zip((int(T) for T in subs), rep.tolist()))
    return GeneralizedValueCoefficients(n, S, "p", table)


# ---------------------------------------------------------------------------
# normalized index and reconstruction
# ---------------------------------------------------------------------------

def g_std(S: Coalition, profile: ProbabilityProfile) -> float:
    """Closed-form standard deviation of g_{S,p} for nonempty S.

    sigma(g_{S,p}) = sqrt(prod_{i in S} 1/p_i + prod_{i in S} 1/(1-p_i)).
    """
    check_mask(S, profile.n)
    if S == 0:
        raise EmptySubset("g_{S,p} is identically zero for S = 0")
    bits = [i for i in range(profile.n) if S >> i & 1]
    inv_p = math.prod(1.0 / profile.p[i] for i in bits)
    inv_q = math.prod(1.0 / (1.0 - profile.p[i]) for i in bits)
    return math.sqrt(inv_p + inv_q)


def normalized_influence(
    f: PseudoBooleanFunction, S: Coalition, profile: ProbabilityProfile
) -> float:
    """Pearson correlation r(f,S) = cov(f, g_{S,p}) / (sigma(f) sigma(g_{S,p})).

    Scale- and shift-invariant in f, bounded by 1 in absolute value, with
    |r| = 1 exactly for f = a g_{S,p} + b.  Raises for S = 0 and for
    (numerically) constant f.
    """
    _check_same_n(profile, f)
    check_mask(S, f.n)
    if S == 0:
        raise EmptySubset("the normalized influence index needs a nonempty S")
    sigma_f = math.sqrt(variance(profile, f))
    if sigma_f <= DEGENERACY_EPS:
        raise DegenerateFunction(f"sigma(f) = {sigma_f:.3e} is numerically zero")
    r = covariance(profile, f, g_function(S, profile)) / (sigma_f * g_std(S, profile))
    if abs(r) > 1.0 + 1e-12:
        raise PbindexError(f"correlation bound violated: |r| = {abs(r)!r} > 1 + 1e-12")
    return min(1.0, max(-1.0, r))


def taylor_reconstruct(
    interactions: Union[Mapping[Coalition, float], Sequence[float]],
    profile: ProbabilityProfile,
) -> PseudoBooleanFunction:
    """Rebuild a game from its complete interaction table at profile p.

    f(x) = sum_S I_{B,p}(f,S) prod_{i in S} (x_i - p_i), evaluated on all 0/1
    vertices.  The table must cover every one of the 2**n subsets.
    """
    n = profile.n
    size = 1 << n
    if isinstance(interactions, Mapping):
        missing = [m for m in range(size) if m not in interactions]
        if missing:
            raise IncompleteTable(
                f"interaction table missing {len(missing)} subsets, first {missing[0]:#b}"
            )
        work = np.array([float(interactions[m]) for m in range(size)])
    else:
        work = np.asarray(interactions, dtype=np.float64).copy()
        if work.shape != (size,):
            raise IncompleteTable(
                f"interaction table needs {size} entries, got shape {work.shape}"
            )
    for i in range(n):  # evaluate the shifted-product polynomial on vertices
        pairs = work.reshape(-1, 2, 1 << i)
        without = pairs[:, 0, :].copy()
        with_i = pairs[:, 1, :].copy()
        pairs[:, 0, :] = without + with_i * (0.0 - profile.p[i])
        pairs[:, 1, :] = without + with_i * (1.0 - profile.p[i])
    return PseudoBooleanFunction(n, work)


def interaction_table(
    f: PseudoBooleanFunction, profile: ProbabilityProfile
) -> Dict[Coalition, float]:
    """All 2**n interaction indexes of f at profile p, keyed by subset mask."""
    _check_same_n(profile, f)
    return {S: banzhaf_interaction(f, S, profile) for S in range(1 << f.n)}


# ---------------------------------------------------------------------------
# batch reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndexRecord:
    """All indexes of one subset: interaction, influence, Shapley, correlation."""

    subset: Coalition
    interaction: float
    influence: float
    shapley: float
    correlation: Optional[float]  # None when S = 0 or f is constant


@dataclass(frozen=True)
class IndexReport:
    """Per-subset index values for one game under one profile."""

    game_id: str
    profile: ProbabilityProfile
    records: List[IndexRecord]


def index_report(
    f: PseudoBooleanFunction,
    profile: ProbabilityProfile,
    subsets: Sequence[Coalition],
    game_id: str = "game",
) -> IndexReport:
    """Compute interaction, influence, Shapley value and correlation per subset."""
    _check_same_n(profile, f)
    degenerate = math.sqrt(variance(profile, f)) <= DEGENERACY_EPS
    records = []
    for S in subsets:
        check_mask(S, f.n)
        r = None
        if S != 0 and not degenerate:
            r = normalized_influence(f, S, profile)
        records.append(
            IndexRecord(
                subset=S,
                interaction=banzhaf_interaction(f, S, profile),
                influence=banzhaf_influence(f, S, profile),
                shapley=shapley_generalized_value(f, S),
                correlation=r,
            )
        )
    return IndexReport(game_id=game_id, profile=profile, records=records)
