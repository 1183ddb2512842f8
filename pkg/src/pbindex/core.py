"""Dense pseudo-Boolean functions and exact transforms on the subset lattice.

A pseudo-Boolean function assigns a real worth f(T) to every coalition T of
the player set N = {1, ..., n}.  Coalitions are bitmasks: bit i set means
player i+1 belongs to T, so the whole function is a table of 2**n float64
values indexed by mask.  This module holds the combinatorial workhorses the
rest of the package builds on: the Mobius and zeta (subset-sum) transforms,
discrete S-derivatives, the switch operator sigma_S, unanimity games, and
evaluation of the multilinear extension.

All objects are immutable after construction and every function is pure, so
the module is safe for concurrent reads without locking.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DomainError, ValidationError

# Dense 2**n float64 tables stay under ~135 MB at this cap.
MAX_PLAYERS = 24

# A coalition is a plain int bitmask; bit i <=> player i+1.
Coalition = int


# ---------------------------------------------------------------------------
# bitmask helpers
# ---------------------------------------------------------------------------

def full_mask(n: int) -> Coalition:
    """Mask of the grand coalition N."""
    return (1 << n) - 1


def check_players(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_PLAYERS:
        raise ValidationError(
            f"player count must be an integer in [1, {MAX_PLAYERS}], got {n!r}"
        )


def check_mask(mask: Coalition, n: int) -> None:
    if not isinstance(mask, (int, np.integer)) or not 0 <= mask < (1 << n):
        raise ValidationError(f"coalition mask {mask!r} is not a subset of N for n={n}")


def mask_from_players(players: Iterable[int], n: int) -> Coalition:
    """Bitmask for a coalition given as 1-based player labels."""
    mask = 0
    for i in players:
        if not 1 <= int(i) <= n:
            raise ValidationError(f"player {i!r} outside 1..{n}")
        mask |= 1 << (int(i) - 1)
    return mask


def players_from_mask(mask: Coalition) -> list[int]:
    """Sorted 1-based player labels of a coalition mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def subsets_of(mask: Coalition) -> Iterator[Coalition]:
    """All submasks of ``mask`` in increasing numeric order."""
    s = 0
    while True:
        yield s
        if s == mask:
            return
        s = (s - mask) & mask


def subset_products(x: Sequence[float]) -> np.ndarray:
    """Table of prod_{i in T} x_i for every mask T, built by doubling.

    Entry T multiplies the factors in increasing bit order, so two calls with
    factor vectors that agree except for exact-1.0 entries on disjoint bits
    produce bitwise-identical products.
    """
    prods = np.ones(1)
    for xi in x:
        prods = np.concatenate([prods, prods * xi])
    return prods


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

def _as_table(values, n: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).copy()
    if arr.shape != (1 << n,):
        raise ValidationError(
            f"{what} needs exactly 2**{n} = {1 << n} entries, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} contains non-finite entries")
    arr.setflags(write=False)
    return arr


class PseudoBooleanFunction:
    """Worth table of a game: ``values[mask]`` is f(T) for the coalition T.

    The table is copied and frozen at construction; the Mobius transform is
    computed once on first request and cached on the instance.
    """

    __slots__ = ("n", "values", "_mobius_cache")

    def __init__(self, n: int, values):
        check_players(n)
        self.n = n
        self.values = _as_table(values, n, "game table")
        self._mobius_cache: MobiusRepresentation | None = None

    def __repr__(self) -> str:
        return f"PseudoBooleanFunction(n={self.n}, values={self.values.tolist()!r})"


class MobiusRepresentation:
    """Mobius coefficients a(T): the game equals sum_T a(T) * u_T."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        check_players(n)
        self.n = n
        self.coeffs = _as_table(coeffs, n, "Mobius table")

    def __repr__(self) -> str:
        return f"MobiusRepresentation(n={self.n}, coeffs={self.coeffs.tolist()!r})"


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def _zeta_inplace(v: np.ndarray, n: int) -> None:
    # butterfly schedule: axis i pairs masks differing in bit i
    for i in range(n):
        pairs = v.reshape(-1, 2, 1 << i)
        pairs[:, 1, :] += pairs[:, 0, :]


def _mobius_inplace(v: np.ndarray, n: int) -> None:
    for i in range(n):
        pairs = v.reshape(-1, 2, 1 << i)
        pairs[:, 1, :] -= pairs[:, 0, :]


def mobius(f: PseudoBooleanFunction) -> MobiusRepresentation:
    """Mobius transform a(S) = sum_{T subseteq S} (-1)^(|S|-|T|) f(T).

    Runs the in-place subset-sum butterfly in O(n 2**n).  The result is
    cached on ``f``, so repeated index queries share one transform.
    """
    if f._mobius_cache is None:
        work = f.values.copy()
        _mobius_inplace(work, f.n)
        f._mobius_cache = MobiusRepresentation(f.n, work)
    return f._mobius_cache


def zeta(a: MobiusRepresentation) -> PseudoBooleanFunction:
    """Inverse of :func:`mobius`: f(S) = sum_{T subseteq S} a(T)."""
    work = a.coeffs.copy()
    _zeta_inplace(work, a.n)
    return PseudoBooleanFunction(a.n, work)


def eval_multilinear_extension(a: MobiusRepresentation, x) -> float:
    """Value of the multilinear extension sum_S a(S) prod_{i in S} x_i.

    The point ``x`` must lie in the unit cube [0, 1]^n; interior points are
    the expectation of the game under independent coalition formation.
    """
    pt = np.asarray(x, dtype=np.float64)
    if pt.shape != (a.n,):
        raise DomainError(f"point must have {a.n} coordinates, got shape {pt.shape}")
    if np.any(pt < 0.0) or np.any(pt > 1.0):
        raise DomainError(f"point {pt.tolist()} outside the unit cube")
    prods = subset_products(pt)
    return math.fsum((a.coeffs * prods).tolist())


# ---------------------------------------------------------------------------
# difference and switch operators
# ---------------------------------------------------------------------------

def s_difference(f: PseudoBooleanFunction, S: Coalition) -> PseudoBooleanFunction:
    """Discrete S-derivative Delta_S f by iterated single-variable differences.

    The result no longer depends on the coordinates in S; it is stored as a
    full table with those coordinates zeroed, i.e. g(T) = g(T minus S).
    """
    check_mask(S, f.n)
    work = f.values.copy()
    for i in range(f.n):
        if S >> i & 1:
            pairs = work.reshape(-1, 2, 1 << i)
            diff = pairs[:, 1, :] - pairs[:, 0, :]
            pairs[:, 0, :] = diff
            pairs[:, 1, :] = diff
    return PseudoBooleanFunction(f.n, work)


def sigma_s(f: PseudoBooleanFunction, S: Coalition) -> PseudoBooleanFunction:
    """Switch operator: (sigma_S f)(x) = f(x | x_i=1 on S) - f(x | x_i=0 on S).

    Constant in the S-coordinates; stored with the same zeroed convention as
    :func:`s_difference`.
    """
    check_mask(S, f.n)
    base = np.arange(1 << f.n) & ~S
    work = f.values[base | S] - f.values[base]
    return PseudoBooleanFunction(f.n, work)


def unanimity_game(n: int, T: Coalition) -> PseudoBooleanFunction:
    """u_T: worth 1 exactly on supersets of T (u_emptyset is the constant 1)."""
    check_players(n)
    check_mask(T, n)
    masks = np.arange(1 << n)
    return PseudoBooleanFunction(n, ((masks & T) == T).astype(np.float64))


def weighted_voting_game(quota: float, weights: Sequence[float]) -> PseudoBooleanFunction:
    """Simple game [quota; w_1, ..., w_n]: a coalition wins iff its weight meets the quota."""
    wvec = np.asarray(weights, dtype=np.float64)
    check_players(wvec.size)
    if not np.all(np.isfinite(wvec)) or not np.isfinite(quota):
        raise ValidationError("quota and weights must be finite")
    n = int(wvec.size)
    member = (np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1
    return PseudoBooleanFunction(n, (member @ wvec >= quota).astype(np.float64))
