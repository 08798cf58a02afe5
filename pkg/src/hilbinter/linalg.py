"""Exact ranks and echelon forms, and the per-degree vector-space view of ideals.

Two interchangeable backends compute ranks and pivots:

* ``python``: fraction-free (Bareiss) elimination on integer matrices over the
  rationals, plain elimination over ``F_p``;
* ``flint``: the same computations through python-flint, used automatically
  when it is importable.

Set ``HILBINTER_LINALG=python`` to force the pure-Python path.  The test
suite checks that both agree.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Sequence

from .ring import (
    AlgebraError,
    Field,
    Ideal,
    Monomial,
    Ring,
    divides,
    mono_mul,
    monomials,
    num_monomials,
)

try:  # pragma: no cover - depends on the environment
    import flint as _flint
except ImportError:  # pragma: no cover
    _flint = None

_BACKEND = "flint" if _flint is not None and os.environ.get("HILBINTER_LINALG") != "python" else "python"


def backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    if name not in ("python", "flint"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "flint" and _flint is None:
        raise RuntimeError("python-flint is not installed")
    _BACKEND = name


# ---------------------------------------------------------------------------
# dense kernels

def integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in r])
        else:
            out.append([int(x * den) for x in r])
    return out


def bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the nonzero echelon rows and their pivot columns.  Every division
    is exact (each entry is a minor of the input).
    """
    a = [list(r) for r in rows if any(r)]
    m = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        top = a[r]
        p = top[c]
        for i in range(r + 1, m):
            row = a[i]
            q = row[c]
            if q:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - q * top[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    row[j] = p * row[j] // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def modp_echelon(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p; returns rows and pivot columns."""
    a = [[x % p for x in r] for r in rows]
    a = [r for r in a if any(r)]
    m = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        top = [x * inv % p for x in a[r]]
        a[r] = top
        for i in range(m):
            if i != r and a[i][c]:
                q = a[i][c]
                a[i] = [(x - q * y) % p for x, y in zip(a[i], top)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rational_rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    a = [[Fraction(x) for x in r] for r in rows]
    a = [r for r in a if any(r)]
    m = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        top = [x * inv for x in a[r]]
        a[r] = top
        for i in range(m):
            if i != r and a[i][c]:
                q = a[i][c]
                a[i] = [x - q * y for x, y in zip(a[i], top)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _flint_integer(rows, ncols):
    return _flint.fmpz_mat(len(rows), ncols, [x for r in rows for x in r])


def rank(rows: Sequence[Sequence], ncols: int, field: Field) -> int:
    """Exact rank of a dense matrix over ``field``."""
    rows = [r for r in rows if any(r)]
    if not rows or not ncols:
        return 0
    if _BACKEND == "flint":
        if field.p:
            return _flint.nmod_mat(len(rows), ncols, [int(x) for r in rows for x in r], field.p).rank()
        return _flint_integer(integer_rows(rows), ncols).rank()
    if field.p:
        return len(modp_echelon(rows, ncols, field.p)[1])
    return len(bareiss_echelon(integer_rows(rows), ncols)[1])


def pivot_columns(rows: Sequence[Sequence], ncols: int, field: Field) -> list[int]:
    """Pivot columns of the row echelon form (the leading positions of the row space)."""
    return echelon(rows, ncols, field, reduced=False)[1]


def echelon(
    rows: Sequence[Sequence], ncols: int, field: Field, *, reduced: bool = True
) -> tuple[list[list], list[int]]:
    """Echelon basis of the row space and its pivot columns.

    With ``reduced`` the rows are the reduced echelon form (pivots equal to 1,
    exact rationals); otherwise they are primitive integer rows (rationals) or
    rows mod p spanning the same space.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows or not ncols:
        return [], []
    p = field.p
    if _BACKEND == "flint":
        if p:
            mat, rk = _flint.nmod_mat(len(rows), ncols, [int(x) for r in rows for x in r], p).rref()
            flat = [int(x) for x in mat.entries()]
            out = [flat[i * ncols:(i + 1) * ncols] for i in range(rk)]
        else:
            mat, den, rk = _flint_integer(integer_rows(rows), ncols).rref()
            out = [[int(x) for x in r] for r in mat.tolist()[:rk]]
            if reduced:
                out = [[field.convert(Fraction(x, int(den))) for x in r] for r in out]
            else:
                out = [_primitive(r) for r in out]
        pivots = [next(j for j, x in enumerate(r) if x) for r in out]
        return out, pivots
    if p:
        return modp_echelon(rows, ncols, p)
    if reduced:
        out, pivots = _rational_rref(rows, ncols)
        return [[field.convert(x) for x in r] for r in out], pivots
    out, pivots = bareiss_echelon(integer_rows(rows), ncols)
    return [_primitive(r) for r in out], pivots


def _primitive(r: list[int]) -> list[int]:
    g = 0
    for x in r:
        if x:
            g = gcd(g, x)
            if g == 1:
                return r
    return [x // g for x in r] if g > 1 else r


def sparse_rank(rows: Iterable[dict], columns: Sequence[Hashable], field: Field) -> int:
    """Rank of rows given as {column key: scalar}; keys outside ``columns`` are ignored."""
    index = {c: k for k, c in enumerate(columns)}
    width = len(columns)
    dense = []
    for r in rows:
        v = [0] * width
        hit = False
        for key, c in r.items():
            k = index.get(key)
            if k is not None and c:
                v[k] = c
                hit = True
        if hit:
            dense.append(v)
    return rank(dense, width, field)


# ---------------------------------------------------------------------------
# graded pieces of ideals

@dataclass(frozen=True)
class GradedPiece:
    """Degree-d component of an ideal as a reduced echelon basis over the lex monomial basis."""

    degree: int
    basis: tuple[Monomial, ...]
    rows: tuple[tuple, ...]
    field: Field = Field(0)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self) -> "GradedPiece":
        rows, _ = echelon(self.rows, len(self.basis), self.field)
        return GradedPiece(self.degree, self.basis, tuple(tuple(r) for r in rows), self.field)

    def polynomials(self, ring: Ring):
        from .ring import Polynomial

        return [Polynomial(ring, {m: c for m, c in zip(self.basis, r) if c}) for r in self.rows]


@dataclass(frozen=True)
class HilbertTable:
    """Values H(0..D) of a numerical function truncated at degree D."""

    values: tuple[int, ...]

    def __post_init__(self):
        if any(v < 0 for v in self.values):
            raise AlgebraError("Hilbert function values are dimensions, hence >= 0")

    @property
    def D(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, d: int) -> int:
        return self.values[d]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _monomial_set(I: Ideal, d: int) -> frozenset:
    key = ("mono", d)
    hit = I._cache.get(key)
    if hit is None:
        gens = I.monomial_gens()
        hit = frozenset(m for m in monomials(I.n, d) if any(divides(g, m) for g in gens))
        I._cache[key] = hit
    return hit


def spanning_terms(I: Ideal, d: int) -> list[dict]:
    """Monomial multiples m*f of the generators landing in degree d."""
    out = []
    n = I.n
    for f in I.gens:
        e = d - f.degree
        if e < 0:
            continue
        for m in monomials(n, e):
            out.append({mono_mul(u, m): c for u, c in f.terms.items()})
    return out


def piece_basis(I: Ideal, d: int) -> list[dict]:
    """A basis of I_d as term dicts (memoized on the ideal)."""
    key = ("basis", d)
    hit = I._cache.get(key)
    if hit is not None:
        return hit
    if I.is_monomial():
        hit = [{m: 1} for m in sorted(_monomial_set(I, d), reverse=True)]
    else:
        cols = monomials(I.n, d)
        index = {m: k for k, m in enumerate(cols)}
        dense = []
        for t in spanning_terms(I, d):
            v = [0] * len(cols)
            for m, c in t.items():
                v[index[m]] = c
            dense.append(v)
        rows, _ = echelon(dense, len(cols), I.field, reduced=False)
        hit = [{cols[k]: c for k, c in enumerate(r) if c} for r in rows]
    I._cache[key] = hit
    return hit


def ideal_piece(I: Ideal, d: int) -> GradedPiece:
    """Reduced echelon basis of I_d; its dimension is H(I, d)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    cols = monomials(I.n, d)
    index = {m: k for k, m in enumerate(cols)}
    dense = []
    for t in spanning_terms(I, d):
        v = [0] * len(cols)
        for m, c in t.items():
            v[index[m]] = c
        dense.append(v)
    rows, _ = echelon(dense, len(cols), I.field, reduced=True)
    return GradedPiece(d, cols, tuple(tuple(r) for r in rows), I.field)


def hilbert_value(I: Ideal, d: int) -> int:
    """H(I, d) = dim_K I_d."""
    if d < 0:
        return 0
    if I.is_monomial():
        return len(_monomial_set(I, d))
    return len(piece_basis(I, d))


def hilbert_function(I: Ideal, D: int) -> HilbertTable:
    return HilbertTable(tuple(hilbert_value(I, d) for d in range(D + 1)))


def quotient_hilbert_function(I: Ideal, D: int) -> HilbertTable:
    """H(S/I, d) for d = 0..D."""
    return HilbertTable(tuple(num_monomials(I.n, d) - hilbert_value(I, d) for d in range(D + 1)))


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise AlgebraError(f"ideals live in different rings: {I.ring} vs {J.ring}")


def dim_sum(I: Ideal, J: Ideal, d: int) -> int:
    """dim_K (I + J)_d."""
    _same_ring(I, J)
    if d < 0:
        return 0
    if J.is_monomial() and not I.is_monomial():
        I, J = J, I
    if I.is_monomial():
        units = _monomial_set(I, d)
        if J.is_monomial():
            return len(units | _monomial_set(J, d))
        cols = [m for m in monomials(I.n, d) if m not in units]
        return len(units) + sparse_rank(piece_basis(J, d), cols, I.field)
    return sparse_rank(piece_basis(I, d) + piece_basis(J, d), monomials(I.n, d), I.field)


def dim_intersection(I: Ideal, J: Ideal, d: int) -> int:
    """dim_K (I ∩ J)_d by inclusion-exclusion."""
    if d < 0:
        return 0
    return hilbert_value(I, d) + hilbert_value(J, d) - dim_sum(I, J, d)


def dim_product(I: Ideal, J: Ideal, d: int) -> int:
    """dim_K (IJ)_d, spanned by f * (basis of J_{d - deg f}) over generators f of I."""
    _same_ring(I, J)
    if d < 0:
        return 0
    if I.is_monomial() and J.is_monomial():
        gi, gj = I.monomial_gens(), J.monomial_gens()
        prods = {mono_mul(u, v) for u in gi for v in gj}
        return sum(1 for m in monomials(I.n, d) if any(divides(g, m) for g in prods))
    if len(J.gens) > len(I.gens):
        I, J = J, I
    rows = []
    p = I.field.p
    for f in J.gens:
        for b in piece_basis(I, d - f.degree):
            out: dict = {}
            for u, c in f.terms.items():
                for m, e in b.items():
                    k = mono_mul(u, m)
                    out[k] = out.get(k, 0) + c * e
            rows.append({m: (c % p if p else c) for m, c in out.items()})
    return sparse_rank(rows, monomials(I.n, d), I.field)


def product_ideal(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])


def sum_ideal(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, list(I.gens) + list(J.gens))
