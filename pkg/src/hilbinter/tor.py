"""Graded Tor dimensions dim_K Tor_i(S/I, S/J)_d from a free resolution of S/I.

For a resolution F of S/I and an ideal J,

    H(Tor_i, d) = H(F_i, d) - H(phi_i(F_i) + J F_{i-1}, d)
                  + H(J F_{i-1}, d) - H(phi_{i+1}(F_{i+1}) + J F_i, d),

each term being the dimension of an explicit span inside a degree-d slice of
a free module.  When J is monomial, J F_k is spanned by coordinate vectors,
which are eliminated by deleting their columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .groebner import Element, FreeResolution, TruncationError, free_resolution
from .linalg import (
    dim_intersection,
    dim_product,
    dim_sum,
    _monomial_set,
    hilbert_value,
    piece_basis,
    sparse_rank,
)
from .monomial import MonomialIdeal
from .ring import AlgebraError, Ideal, mono_lcm, mono_mul, monomials, num_monomials


class ResolutionSizeError(AlgebraError):
    pass


TAYLOR_SUBSET_LIMIT = 200_000


def taylor_resolution(I, length: int, D: int) -> FreeResolution:
    """Taylor complex of a monomial ideal, truncated at lcm degree D and homological degree ``length``."""
    if isinstance(I, Ideal):
        ring = I.ring
        gens = sorted(set(I.monomial_gens()))
    else:
        raise TypeError("taylor_resolution needs an Ideal with monomial generators")
    M = MonomialIdeal(ring.n, gens)
    gens = list(M.gens)
    s = len(gens)
    top = min(length, s)
    if sum(comb(s, k) for k in range(top + 1)) > TAYLOR_SUBSET_LIMIT:
        raise ResolutionSizeError(
            f"Taylor complex on {s} generators is too large; use the Schreyer resolution"
        )
    one = (0,) * ring.n
    levels: list[list[tuple[tuple[int, ...], tuple]]] = [[((), one)]]
    for k in range(1, length + 1):
        level = []
        if k <= s:
            for sigma in combinations(range(s), k):
                L = one
                for i in sigma:
                    L = mono_lcm(L, gens[i])
                if sum(L) <= D:
                    level.append((sigma, L))
        levels.append(level)
    shifts = [[sum(L) for _, L in lv] for lv in levels]
    maps: list[list[Element]] = [[]]
    for k in range(1, length + 1):
        index = {sigma: pos for pos, (sigma, _) in enumerate(levels[k - 1])}
        cols = []
        for sigma, L in levels[k]:
            col: Element = {}
            for j in range(k):
                face = sigma[:j] + sigma[j + 1:]
                pos = index[face]
                Lf = levels[k - 1][pos][1]
                coef = 1 if j % 2 == 0 else -1
                col[(pos, tuple(a - b for a, b in zip(L, Lf)))] = coef % ring.field.p if ring.field.p else coef
            cols.append(col)
        maps.append(cols)
    return FreeResolution(ring, shifts, maps, D, "taylor")


def resolve(I: Ideal, length: int, D: int, method: str = "auto") -> FreeResolution:
    if method == "auto":
        method = "taylor" if I.is_monomial() and len(I.gens) <= 12 else "schreyer"
    if method == "taylor":
        return taylor_resolution(I, length, D)
    if method == "schreyer":
        return free_resolution(I, length, D)
    raise ValueError(f"unknown resolution method {method!r}")


# ---------------------------------------------------------------------------
# formula evaluation

def _slice_columns(n: int, shifts: list[int], d: int, units=frozenset()) -> list:
    return [(pos, m) for pos, s in enumerate(shifts) for m in monomials(n, d - s) if m not in units]


def _image_plus_J(res: FreeResolution, J: Ideal, k: int, d: int) -> int:
    """dim of (phi_k(F_k) + J F_{k-1})_d inside (F_{k-1})_d."""
    if k - 1 < 0 or k - 1 > res.length:
        return 0
    n = res.ring.n
    target = res.shifts[k - 1]
    maps = res.maps[k] if k <= res.length else []
    src_shifts = res.shifts[k] if k <= res.length else []
    if J.is_monomial():
        units = {s: _monomial_part(J, d - s) for s in set(target)}
        n_units = sum(len(units[s]) for s in target)
        cols = [(pos, m) for pos, s in enumerate(target) for m in monomials(n, d - s) if m not in units[s]]
        if not cols:
            return n_units
        rows = []
        for c, sc in enumerate(src_shifts):
            if sc > d:
                continue
            col = maps[c]
            skip = _monomial_part(J, d - sc)
            for m in monomials(n, d - sc):
                if m in skip:
                    continue
                rows.append({(pos, mono_mul(u, m)): a for (pos, u), a in col.items()})
        return n_units + sparse_rank(rows, cols, res.ring.field)
    cols = _slice_columns(n, target, d)
    rows = []
    for pos, s in enumerate(target):
        for b in piece_basis(J, d - s):
            rows.append({(pos, m): c for m, c in b.items()})
    for c, sc in enumerate(src_shifts):
        if sc > d:
            continue
        col = maps[c]
        for m in monomials(n, d - sc):
            rows.append({(pos, mono_mul(u, m)): a for (pos, u), a in col.items()})
    return sparse_rank(rows, cols, res.ring.field)


def _monomial_part(J: Ideal, e: int) -> frozenset:
    return _monomial_set(J, e) if e >= 0 else frozenset()


def tor_from_resolution(res: FreeResolution, J: Ideal, i: int, d: int) -> int:
    """dim_K Tor_i(S/I, S/J)_d where ``res`` resolves S/I."""
    if i < 0:
        raise AlgebraError("homological degree must be >= 0")
    if d > res.D:
        raise TruncationError(f"resolution truncated at degree {res.D}, asked for {d}")
    if i + 1 > res.length:
        raise TruncationError(f"resolution has length {res.length}, Tor_{i} needs F_{i + 1}")
    n = res.ring.n
    a = sum(num_monomials(n, d - s) for s in res.shifts[i])
    if a == 0:
        return 0
    b = _image_plus_J(res, J, i, d) if i >= 1 else 0
    c = sum(hilbert_value(J, d - s) for s in res.shifts[i - 1]) if i >= 1 else 0
    e = _image_plus_J(res, J, i + 1, d)
    return a - b + c - e


@dataclass(frozen=True)
class TorTable:
    """values[i][d] = dim_K Tor_i(S/I, S/J)_d for i <= i_max, d <= D."""

    values: tuple[tuple[int, ...], ...]
    provenance: str

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.values[i]

    @property
    def i_max(self) -> int:
        return len(self.values) - 1

    @property
    def D(self) -> int:
        return len(self.values[0]) - 1


def _orient(I: Ideal, J: Ideal) -> tuple[Ideal, Ideal, bool]:
    """Pick the side to resolve: tensor with the monomial ideal when there is one."""
    if J.is_monomial():
        return I, J, False
    if I.is_monomial():
        return J, I, True
    return I, J, False


def tor_table_from(res: FreeResolution, other: Ideal, i_max: int, D: int) -> list[list[int]]:
    return [[tor_from_resolution(res, other, i, d) for d in range(D + 1)] for i in range(i_max + 1)]


def check_row_identities(I: Ideal, J: Ideal, values) -> None:
    """Tor_0 = S/(I+J) and Tor_1 = (I ∩ J)/IJ, degree by degree."""
    n = I.n
    for d, v in enumerate(values[0]):
        want = num_monomials(n, d) - dim_sum(I, J, d)
        if v != want:
            raise AssertionError(f"Tor_0 in degree {d}: {v} != H(S/(I+J)) = {want}")
    if len(values) > 1:
        for d, v in enumerate(values[1]):
            want = dim_intersection(I, J, d) - dim_product(I, J, d)
            if v != want:
                raise AssertionError(f"Tor_1 in degree {d}: {v} != H(I∩J) - H(IJ) = {want}")


def tor_table(I: Ideal, J: Ideal, i_max: int, D: int, method: str = "auto", *, verify: bool = True) -> TorTable:
    """Tabulate dim Tor_i(S/I, S/J)_d; rows 0 and 1 are cross-checked against graded linear algebra."""
    if I.ring != J.ring:
        raise AlgebraError("ideals live in different rings")
    A, B, swapped = _orient(I, J)
    res = resolve(A, i_max + 1, D, method)
    values = tor_table_from(res, B, i_max, D)
    if verify:
        check_row_identities(I, J, values)
    side = "J" if swapped else "I"
    return TorTable(tuple(tuple(r) for r in values), f"{res.kind}({side})")


def tor_hilbert(I: Ideal, J: Ideal, i: int, d: int, method: str = "auto") -> int:
    A, B, _ = _orient(I, J)
    res = resolve(A, i + 1, d, method)
    return tor_from_resolution(res, B, i, d)


def ideal_module_tor(quotient_table, module_hf) -> list[list[int]]:
    """Tor_i(M, J) from Tor_i(M, S/J): shift by one for i >= 1; Tor_0 via the long exact sequence.

    ``quotient_table[i][j]`` is dim Tor_i(M, S/J)_j and ``module_hf[j]`` is dim M_j.
    Returns rows 0..len(quotient_table) - 2.
    """
    rows = []
    D = len(quotient_table[0]) - 1
    rows.append([quotient_table[1][j] + module_hf[j] - quotient_table[0][j] for j in range(D + 1)])
    for i in range(1, len(quotient_table) - 1):
        rows.append(list(quotient_table[i + 1]))
    return rows


# ---------------------------------------------------------------------------
# eventual vanishing

def heuristic_window(I: Ideal, J: Ideal, i: int, width: int = 4) -> tuple[int, int]:
    """Degrees past sum(generator degrees) + i, where Tor_i should have died out."""
    d0 = sum(I.degrees()) + sum(J.degrees()) + i
    return d0, d0 + width - 1


def vanishing_window_check(I: Ideal, J: Ideal, i: int, window: tuple[int, int] | None = None, method: str = "auto") -> bool:
    """True iff dim Tor_i(S/I, S/J)_d = 0 for every d in the window."""
    if i < 1:
        raise AlgebraError("the vanishing check is for i >= 1")
    if window is None:
        window = heuristic_window(I, J, i)
    d0, d1 = window
    if d1 < d0:
        raise AlgebraError("empty window")
    A, B, _ = _orient(I, J)
    res = resolve(A, i + 1, d1, method)
    return all(tor_from_resolution(res, B, i, d) == 0 for d in range(d0, d1 + 1))


# ---------------------------------------------------------------------------
# general coordinate changes

def general_tor(
    I: Ideal,
    J: Ideal,
    i_max: int,
    D: int,
    protocol=None,
    *,
    derive=None,
    method: str = "auto",
):
    """General value (entrywise minimum over sampled g) of dim Tor_i(S/I, S/g(J))_d, flattened row-major.

    One resolution is computed and reused.  When J is monomial, I is resolved
    and moved by g^{-1}, since Tor(S/g^{-1}(I), S/J) and Tor(S/I, S/g(J)) agree;
    so every sample is the same g that the intersection and product suites see.
    ``derive`` post-processes each sampled table (a list of rows) before folding.
    """
    from .generic import DEFAULT_PROTOCOL, Direction, coords_statistic

    protocol = protocol or DEFAULT_PROTOCOL
    length = i_max + 1
    if J.is_monomial():
        base = resolve(I, length, D, method)

        def table(g):
            return tor_table_from(base.transform(g.inverse()), J, i_max, D)
    elif I.is_monomial():
        base = resolve(J, length, D, method)

        def table(g):
            return tor_table_from(base.transform(g), I, i_max, D)
    else:
        base = resolve(I, length, D, method)

        def table(g):
            return tor_table_from(base, J.transform(g), i_max, D)

    def stat(g):
        rows = table(g)
        if derive is not None:
            rows = derive(rows)
        return [v for row in rows for v in row]

    return coords_statistic(stat, I.n, I.field, protocol, Direction.TakeMin)
