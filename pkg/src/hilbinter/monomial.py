"""Monomial ideal combinatorics: lex segments, Borel tests and the product decomposition."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import HilbertTable
from .ring import (
    LEX,
    OPLEX,
    REVLEX,
    AlgebraError,
    Ideal,
    Monomial,
    Ring,
    TermOrder,
    divides,
    enumerate_degree,
    format_monomial,
    mono_degree,
    mono_lcm,
    monomials,
    num_monomials,
    unit,
)


class InvalidHilbertFunctionError(AlgebraError):
    """The table violates Macaulay's growth bound, so no ideal has it."""


class BorelPreconditionError(AlgebraError):
    pass


class MonomialIdeal:
    """Monomial ideal stored by its minimal generators (an antichain under divisibility)."""

    __slots__ = ("n", "gens", "_sets")

    def __init__(self, n: int, gens: Iterable[Sequence[int]] = (), *, minimal: bool = False):
        gens = {tuple(u) for u in gens}
        for u in gens:
            if len(u) != n or any(a < 0 for a in u):
                raise AlgebraError(f"bad exponent vector {u} for {n} variables")
        if not minimal:
            gens = _antichain(gens)
        self.n = n
        self.gens: tuple[Monomial, ...] = tuple(sorted(gens, key=lambda u: (sum(u), tuple(-a for a in u))))
        self._sets: dict[int, frozenset] = {}

    @classmethod
    def from_ideal(cls, I: Ideal) -> "MonomialIdeal":
        return cls(I.n, I.monomial_gens())

    def to_ideal(self, ring: Ring) -> Ideal:
        if ring.n != self.n:
            raise AlgebraError(f"{self.n} variables vs {ring}")
        return Ideal(ring, [ring.monomial(u) for u in self.gens])

    def __contains__(self, u: Monomial) -> bool:
        return any(divides(g, u) for g in self.gens)

    def degree_set(self, d: int) -> frozenset:
        """Degree-d monomials of the ideal."""
        hit = self._sets.get(d)
        if hit is None:
            hit = frozenset(m for m in monomials(self.n, d) if m in self) if d >= 0 else frozenset()
            self._sets[d] = hit
        return hit

    def max_degree(self) -> int:
        return max((sum(u) for u in self.gens), default=0)

    def is_zero(self) -> bool:
        return not self.gens

    def opposite(self) -> "MonomialIdeal":
        """Image under x_i -> x_{n+1-i}."""
        return MonomialIdeal(self.n, (u[::-1] for u in self.gens), minimal=True)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.n == other.n and set(self.gens) == set(other.gens)

    def __hash__(self):
        return hash((self.n, frozenset(self.gens)))

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __str__(self):
        return "(" + ", ".join(format_monomial(u) for u in self.gens) + ")"

    def __repr__(self):
        return f"MonomialIdeal{self}"


def _antichain(gens: set) -> set:
    ordered = sorted(gens, key=sum)
    kept: list[Monomial] = []
    for u in ordered:
        if not any(divides(g, u) for g in kept):
            kept.append(u)
    return set(kept)


def minimalize(gens: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
    gens = [tuple(u) for u in gens]
    if n is None:
        if not gens:
            raise AlgebraError("cannot infer the number of variables from an empty set")
        n = len(gens[0])
    return MonomialIdeal(n, gens)


def as_monomial_ideal(I) -> MonomialIdeal:
    if isinstance(I, MonomialIdeal):
        return I
    return MonomialIdeal.from_ideal(I)


# ---------------------------------------------------------------------------
# Hilbert functions

def hf_monomial(I: MonomialIdeal, d: int) -> int:
    """Number of degree-d monomials in I (explicit enumeration)."""
    if d < 0:
        return 0
    return len(I.degree_set(d))


def hilbert_table(I: MonomialIdeal, D: int) -> HilbertTable:
    return HilbertTable(tuple(hf_monomial(I, d) for d in range(D + 1)))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _numerator(gens: tuple[Monomial, ...]) -> list[int]:
    """K-polynomial numerator N(t) with HS(S/I) = N(t) / (1 - t)^n."""
    gens = tuple(sorted(_antichain(set(gens))))
    return _numerator_cached(gens)


@lru_cache(maxsize=4096)
def _numerator_cached(gens: tuple[Monomial, ...]) -> list[int]:
    if not gens:
        return [1]
    if any(sum(u) == 0 for u in gens):
        return [0]
    n = len(gens[0])
    counts = [sum(1 for u in gens if u[i]) for i in range(n)]
    if max(counts) <= 1:
        out = [1]
        for u in gens:
            f = [0] * (sum(u) + 1)
            f[0], f[-1] = 1, -1
            out = _poly_mul(out, f)
        return out
    # pivot on the variable shared by most generators:
    # N(I) = N(I + (x)) + t * N(I : x)
    i = counts.index(max(counts))
    x = unit(n, i)
    plus = tuple(sorted(_antichain(set(gens) | {x})))
    colon = tuple(sorted(_antichain({tuple(a - (k == i and a > 0) for k, a in enumerate(u)) for u in gens})))
    return _poly_add(_numerator_cached(plus), [0] + _numerator_cached(colon))


def hf_monomial_recursive(I: MonomialIdeal, d: int) -> int:
    """H(I, d) from the Hilbert series numerator (pivot-variable recursion)."""
    if d < 0:
        return 0
    n = I.n
    N = _numerator(I.gens)
    quotient = sum(c * num_monomials(n, d - k) for k, c in enumerate(N) if k <= d)
    return num_monomials(n, d) - quotient


def hf_checked(I: MonomialIdeal, d: int) -> int:
    a, b = hf_monomial(I, d), hf_monomial_recursive(I, d)
    if a != b:
        raise AssertionError(f"Hilbert function self-check failed for {I} at d={d}: {a} != {b}")
    return a


# ---------------------------------------------------------------------------
# lex segments

def _flavor_order(flavor) -> TermOrder:
    if isinstance(flavor, TermOrder):
        return flavor
    if flavor in ("lex", "Lex"):
        return LEX
    if flavor in ("oplex", "OppositeLex", "rlex"):
        return OPLEX
    raise ValueError(f"unknown lex flavor {flavor!r}")


def segment(n: int, d: int, k: int, flavor="lex") -> list[Monomial]:
    """The k largest degree-d monomials in the flavor's order."""
    return enumerate_degree(n, d, _flavor_order(flavor))[:k]


def lexify(table: Sequence[int], n: int, flavor="lex", D: int | None = None) -> MonomialIdeal:
    """Macaulay's lex (or opposite lex) ideal with Hilbert function ``table`` up to degree D.

    ``table[d]`` is H(I, d).  Raises :class:`InvalidHilbertFunctionError` when
    the segment in degree d+1 misses a multiple of the segment in degree d.
    """
    values = list(table)
    if D is None:
        D = len(values) - 1
    if D >= len(values):
        raise AlgebraError(f"table stops at degree {len(values) - 1}, need {D}")
    order = _flavor_order(flavor)
    gens = []
    prev: set = set()
    for d in range(D + 1):
        h = values[d]
        total = num_monomials(n, d)
        if not 0 <= h <= total:
            raise InvalidHilbertFunctionError(f"H({d}) = {h} outside [0, {total}]")
        seg = set(enumerate_degree(n, d, order)[:h])
        shadow = {tuple(a + (k == i) for k, a in enumerate(u)) for u in prev for i in range(n)}
        if not shadow <= seg:
            raise InvalidHilbertFunctionError(
                f"Macaulay growth violated from degree {d - 1} to {d}: "
                f"{len(shadow)} forced monomials but H({d}) = {h}"
            )
        gens.extend(seg - shadow)
        prev = seg
    return MonomialIdeal(n, gens, minimal=True)


def is_segment(mons: Iterable[Monomial], n: int, d: int, flavor="lex") -> bool:
    mons = set(mons)
    return mons == set(segment(n, d, len(mons), flavor))


def is_lex_ideal(I: MonomialIdeal, D: int, flavor="lex") -> bool:
    """Whether every degree component up to D is an initial segment."""
    return all(is_segment(I.degree_set(d), I.n, d, flavor) for d in range(D + 1))


# ---------------------------------------------------------------------------
# Borel

def _exchange(u: Monomial, j: int, i: int) -> Monomial:
    v = list(u)
    v[j] -= 1
    v[i] += 1
    return tuple(v)


def is_zero_borel(I: MonomialIdeal) -> bool:
    """Strongly stable: u*x_j in I implies u*x_i in I for every i < j."""
    return all(
        _exchange(u, j, i) in I for u in I.gens for j in range(I.n) if u[j] for i in range(j)
    )


def is_opposite_zero_borel(I: MonomialIdeal) -> bool:
    """Mirror condition: u*x_j in I implies u*x_i in I for every i > j."""
    return all(
        _exchange(u, j, i) in I for u in I.gens for j in range(I.n) if u[j] for i in range(j + 1, I.n)
    )


def borel_closure(gens: Iterable[Sequence[int]], n: int, *, opposite: bool = False) -> MonomialIdeal:
    """Smallest 0-Borel (or opposite 0-Borel) ideal containing the given monomials."""
    todo = [tuple(u) for u in gens]
    seen = set(todo)
    while todo:
        u = todo.pop()
        for j in range(n):
            if not u[j]:
                continue
            targets = range(j + 1, n) if opposite else range(j)
            for i in targets:
                v = _exchange(u, j, i)
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return MonomialIdeal(n, seen)


def maxvar(u: Monomial) -> int:
    """Largest 1-based index of a variable dividing u; 1 for u = 1."""
    for i in range(len(u) - 1, -1, -1):
        if u[i]:
            return i + 1
    return 1


def minvar(u: Monomial) -> int:
    """Smallest 1-based index of a variable dividing u; n for u = 1."""
    for i, a in enumerate(u):
        if a:
            return i + 1
    return len(u)


def restrict_maxvar_dim(I: MonomialIdeal, k: int, d: int) -> int:
    """dim of (I_{(<= k)})_d: degree-d monomials of I supported on x_1..x_k."""
    n = I.n
    if not 1 <= k <= n:
        raise AlgebraError(f"k = {k} outside 1..{n}")
    if d < 0:
        return 0
    pad = (0,) * (n - k)
    return sum(1 for m in monomials(k, d) if m + pad in I)


def borel_product_dim(I: MonomialIdeal, P: MonomialIdeal, d: int) -> int:
    """dim (IP)_d through the direct-sum decomposition over minimal generators of P."""
    if not is_zero_borel(I):
        raise BorelPreconditionError(f"{I} is not 0-Borel")
    if not is_opposite_zero_borel(P):
        raise BorelPreconditionError(f"{P} is not opposite 0-Borel")
    return sum(restrict_maxvar_dim(I, minvar(u), d - sum(u)) for u in P.gens if sum(u) <= d)


def rev_dominates(V: Iterable[Monomial], W: Iterable[Monomial]) -> bool:
    """Whether the i-th largest of V is >=_rev the i-th largest of W for every i."""
    V, W = list(V), list(W)
    if len(V) != len(W):
        raise AlgebraError("sets of different cardinality")
    if len({mono_degree(u) for u in V + W}) > 1:
        raise AlgebraError("sets in different degrees")
    key = REVLEX.key
    V.sort(key=key, reverse=True)
    W.sort(key=key, reverse=True)
    return all(key(v) >= key(w) for v, w in zip(V, W))


# ---------------------------------------------------------------------------
# ideal operations on monomial ideals

def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.n, (mono_lcm(u, v) for u in I.gens for v in J.gens))


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.n, (tuple(a + b for a, b in zip(u, v)) for u in I.gens for v in J.gens))


def add(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.n, list(I.gens) + list(J.gens))


def truncate(I: MonomialIdeal, D: int) -> MonomialIdeal:
    """Drop generators above degree D (the ideals agree in degrees <= D)."""
    return MonomialIdeal(I.n, (u for u in I.gens if sum(u) <= D), minimal=True)


def from_degree_sets(n: int, sets: dict[int, Iterable[Monomial]]) -> MonomialIdeal:
    gens: list[Monomial] = []
    for d in sorted(sets):
        gens.extend(sets[d])
    return MonomialIdeal(n, gens)
