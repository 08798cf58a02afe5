"""Exact scalars, monomials, polynomials, term orders and linear coordinate changes.

Monomials are plain tuples of exponents.  Coefficients over the rationals are
``int`` or :class:`fractions.Fraction`; over a prime field they are ``int`` in
``[0, p)``.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class AlgebraError(ValueError):
    """Base class for the package's input/contract errors."""


class DimensionError(AlgebraError):
    pass


class InvalidTransformError(AlgebraError):
    pass


class NotHomogeneousError(AlgebraError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


# ---------------------------------------------------------------------------
# fields

@dataclass(frozen=True)
class Field:
    """Exact coefficient field: the rationals (``p == 0``) or ``F_p``."""

    p: int = 0

    def __post_init__(self):
        if self.p and not is_prime(self.p):
            raise AlgebraError(f"field modulus {self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "QQ" if self.p == 0 else f"Fp {self.p}"

    def convert(self, c):
        """Coerce an int, Fraction or ``"a/b"`` string into a normalized scalar."""
        if isinstance(c, str):
            c = Fraction(c)
        if self.p:
            if isinstance(c, Fraction):
                if c.denominator % self.p == 0:
                    raise ZeroDivisionError(f"denominator of {c} vanishes mod {self.p}")
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        if isinstance(c, Fraction):
            return c.numerator if c.denominator == 1 else c
        if isinstance(c, int):
            return c
        raise TypeError(f"cannot convert {c!r} to an exact scalar")

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(c, -1, self.p)
        return self.convert(Fraction(1) / c)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def mul(self, a, b):
        c = a * b
        return c % self.p if self.p else c

    def add(self, a, b):
        c = a + b
        return c % self.p if self.p else c

    def neg(self, a):
        return (-a) % self.p if self.p else -a


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# monomials

def mono_mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def mono_div(u: Monomial, v: Monomial) -> Monomial:
    """u / v; caller guarantees v divides u."""
    return tuple(a - b for a, b in zip(u, v))


def divides(v: Monomial, u: Monomial) -> bool:
    return all(b <= a for a, b in zip(u, v))


def mono_lcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(u, v))


def mono_degree(u: Monomial) -> int:
    return sum(u)


def unit(n: int, i: int) -> Monomial:
    """Exponent vector of the variable x_{i+1} (0-based ``i``)."""
    return tuple(1 if k == i else 0 for k in range(n))


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[Monomial, ...]:
    """All degree-d monomials in n variables, descending in lex (x1 > ... > xn)."""
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(n - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


def num_monomials(n: int, d: int) -> int:
    if d < 0:
        return 0
    return comb(n + d - 1, d)


def format_monomial(u: Monomial) -> str:
    parts = []
    for i, a in enumerate(u):
        if a == 1:
            parts.append(f"x{i + 1}")
        elif a > 1:
            parts.append(f"x{i + 1}^{a}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# term orders

_KINDS = ("lex", "oplex", "revlex", "weight")


@dataclass(frozen=True)
class TermOrder:
    """A monomial order; ``key(u) > key(v)`` iff ``u > v``.

    ``lex`` is lex with x1 > ... > xn, ``oplex`` is lex with xn > ... > x1,
    ``revlex`` is degree reverse lex with x1 > ... > xn, and ``weight`` compares
    degree, then the weight pairing, then the tiebreak order.
    """

    kind: str
    weights: tuple[int, ...] = ()
    tiebreak: "TermOrder | None" = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "weight":
            if self.tiebreak is None or any(w < 0 for w in self.weights):
                raise ValueError("weight order needs non-negative weights and a tiebreak")

    @cached_property
    def key(self) -> Callable[[Monomial], tuple]:
        if self.kind == "lex":
            return lambda u: u
        if self.kind == "oplex":
            return lambda u: u[::-1]
        if self.kind == "revlex":
            return lambda u: (sum(u), tuple(-a for a in reversed(u)))
        w = self.weights
        tb = self.tiebreak.key
        return lambda u: (sum(u), sum(a * b for a, b in zip(u, w)), tb(u))

    def weight(self, u: Monomial) -> int:
        return sum(a * b for a, b in zip(u, self.weights))

    def __str__(self):
        if self.kind == "weight":
            return f"weight{self.weights}/{self.tiebreak}"
        return self.kind


LEX = TermOrder("lex")
OPLEX = TermOrder("oplex")
REVLEX = TermOrder("revlex")


def weight_order(w: Sequence[int], tiebreak: TermOrder = LEX) -> TermOrder:
    return TermOrder("weight", tuple(int(x) for x in w), tiebreak)


def monomial_cmp(u: Monomial, v: Monomial, order: TermOrder) -> int:
    """-1, 0 or 1 as u is less than, equal to or greater than v."""
    if len(u) != len(v):
        raise DimensionError(f"monomials in {len(u)} and {len(v)} variables")
    ku, kv = order.key(u), order.key(v)
    return (ku > kv) - (ku < kv)


def enumerate_degree(n: int, d: int, order: TermOrder = LEX) -> list[Monomial]:
    """Degree-d monomials in n variables, strictly descending in ``order``."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return sorted(monomials(n, d), key=order.key, reverse=True)


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class Ring:
    n: int
    field: Field = QQ

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("a polynomial ring needs at least one variable")

    def __str__(self):
        return f"{self.field}[x1..x{self.n}]"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: 1})

    def var(self, i: int) -> "Polynomial":
        """The variable x_i, 1-based."""
        if not 1 <= i <= self.n:
            raise DimensionError(f"variable x{i} outside 1..{self.n}")
        return Polynomial(self, {unit(self.n, i - 1): 1})

    def monomial(self, u: Sequence[int], coeff=1) -> "Polynomial":
        u = tuple(u)
        if len(u) != self.n:
            raise DimensionError(f"exponent vector of length {len(u)} in {self}")
        return Polynomial(self, {u: coeff})

    def __call__(self, terms: Mapping[Monomial, object]) -> "Polynomial":
        return Polynomial(self, terms)


def _clean(terms: dict, p: int) -> dict:
    if p:
        out = {}
        for m, c in terms.items():
            c %= p
            if c:
                out[m] = c
        return out
    return {m: c for m, c in terms.items() if c}


def mul_terms(f: Mapping, g: Mapping, p: int = 0) -> dict:
    out: dict = {}
    get = out.get
    for a, c in f.items():
        for b, e in g.items():
            m = tuple(x + y for x, y in zip(a, b))
            out[m] = get(m, 0) + c * e
    return _clean(out, p)


class Polynomial:
    """Immutable sparse polynomial: a dict from exponent tuple to nonzero scalar."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, object] = (), *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            n, conv = ring.n, ring.field.convert
            clean = {}
            for m, c in dict(terms).items():
                m = tuple(m)
                if len(m) != n or any(a < 0 for a in m):
                    raise DimensionError(f"bad exponent vector {m} for {ring}")
                c = conv(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            self.terms = _clean(clean, ring.field.p)
        self._hash = None

    # construction helpers -------------------------------------------------
    def _new(self, terms) -> "Polynomial":
        return Polynomial(self.ring, terms, _trusted=True)

    # basic queries -------------------------------------------------------
    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, u: Monomial):
        return self.terms.get(tuple(u), 0)

    def leading_term(self, order: TermOrder) -> tuple[Monomial, object]:
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: TermOrder) -> Monomial:
        return max(self.terms, key=order.key)

    # arithmetic ------------------------------------------------------------
    def _check(self, other):
        if other.ring != self.ring:
            raise DimensionError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.one() * other
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._new(_clean(out, self.ring.field.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return self._new({m: (-c) % p if p else -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.one() * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self.ring.field.p
        if isinstance(other, Polynomial):
            self._check(other)
            return self._new(mul_terms(self.terms, other.terms, p))
        c = self.ring.field.convert(other)
        return self._new(_clean({m: a * c for m, a in self.terms.items()}, p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, u: Monomial, c=1) -> "Polynomial":
        p = self.ring.field.p
        return self._new(_clean({mono_mul(m, u): a * c for m, a in self.terms.items()}, p))

    # identity --------------------------------------------------------------
    def canonical(self) -> tuple:
        return tuple((m, self.terms[m]) for m in sorted(self.terms, reverse=True))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if not self.terms:
            return other == 0
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.canonical()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.canonical():
            neg = (not self.ring.field.p) and c < 0
            a = -c if neg else c
            mono = format_monomial(m)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def homogeneous_degree(f: Polynomial) -> int:
    if not f.is_homogeneous():
        raise NotHomogeneousError(f"{f} is not homogeneous")
    return f.degree


# ---------------------------------------------------------------------------
# changes of coordinates

def _det(rows: list[list], p: int):
    """Determinant by exact Gaussian elimination (small matrices only)."""
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pv = a[c][c]
        det = det * pv
        inv = pow(pv, -1, p) if p else Fraction(1) / pv
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
                if p:
                    a[i] = [x % p for x in a[i]]
    return det % p if p else det


class ChangeOfCoordinates:
    """Invertible n x n matrix acting by x_i -> sum_j a[j][i] * x_j.

    Column i is the image of x_i, so composing maps multiplies matrices:
    ``(b @ h)(f) == b(h(f))``.
    """

    __slots__ = ("entries", "field", "_cache", "_columns")

    def __init__(self, entries: Sequence[Sequence], field: Field = QQ, *, check: bool = True):
        rows = tuple(tuple(field.convert(x) for x in r) for r in entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidTransformError("change of coordinates must be a square matrix")
        self.entries = rows
        self.field = field
        if check and not _det([list(r) for r in rows], field.p):
            raise InvalidTransformError("singular change of coordinates")
        self._columns = tuple(
            {unit(n, j): rows[j][i] for j in range(n) if rows[j][i]} for i in range(n)
        )
        self._cache: dict[Monomial, dict] = {(0,) * n: {(0,) * n: 1}}

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ChangeOfCoordinates":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, check=False)

    def det(self):
        return _det([list(r) for r in self.entries], self.field.p)

    def is_identity(self) -> bool:
        n = self.n
        return all(self.entries[i][j] == (i == j) for i in range(n) for j in range(n))

    def __eq__(self, other):
        return isinstance(other, ChangeOfCoordinates) and (
            self.entries == other.entries and self.field == other.field
        )

    def __hash__(self):
        return hash((self.entries, self.field))

    def __repr__(self):
        return f"ChangeOfCoordinates({[list(r) for r in self.entries]}, {self.field})"

    def __matmul__(self, other: "ChangeOfCoordinates") -> "ChangeOfCoordinates":
        n, p = self.n, self.field.p
        a, b = self.entries, other.entries
        prod = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        if p:
            prod = [[x % p for x in r] for r in prod]
        return ChangeOfCoordinates(prod, self.field, check=False)

    def inverse(self) -> "ChangeOfCoordinates":
        n, p = self.n, self.field.p
        a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.entries)]
        for c in range(n):
            piv = next(i for i in range(c, n) if a[i][c])
            a[c], a[piv] = a[piv], a[c]
            inv = self.field.inv(a[c][c])
            a[c] = [self.field.mul(x, inv) for x in a[c]]
            for i in range(n):
                if i != c and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
                    if p:
                        a[i] = [x % p for x in a[i]]
        return ChangeOfCoordinates([r[n:] for r in a], self.field, check=False)

    def image_of_variable(self, i: int) -> dict:
        """Terms of the image of x_{i+1} (0-based)."""
        return self._columns[i]

    def image_terms(self, u: Monomial) -> dict:
        """Terms of the image of the monomial ``u``; memoized per transform."""
        hit = self._cache.get(u)
        if hit is not None:
            return hit
        k = next(i for i, a in enumerate(u) if a)
        rest = u[:k] + (u[k] - 1,) + u[k + 1:]
        out = mul_terms(self.image_terms(rest), self._columns[k], self.field.p)
        self._cache[u] = out
        return out

    def apply_terms(self, terms: Mapping[Monomial, object]) -> dict:
        out: dict = {}
        get = out.get
        for u, c in terms.items():
            for m, e in self.image_terms(u).items():
                out[m] = get(m, 0) + c * e
        return _clean(out, self.field.p)

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_coords(f, self)


def apply_coords(f: Polynomial, g: ChangeOfCoordinates) -> Polynomial:
    """Image of f under the ring automorphism defined by g."""
    if g.n != f.ring.n:
        raise DimensionError(f"{g.n}x{g.n} transform applied in {f.ring}")
    if g.field != f.ring.field:
        raise InvalidTransformError("transform and polynomial live over different fields")
    return Polynomial(f.ring, g.apply_terms(f.terms), _trusted=True)


def diagonal_coords(lam, w: Sequence[int], field: Field = QQ) -> ChangeOfCoordinates:
    """The degeneration map x_i -> lam^(-w_i) x_i."""
    lam = field.convert(lam)
    if not lam:
        raise InvalidTransformError("lambda must be nonzero")
    if any(int(x) < 0 for x in w):
        raise InvalidTransformError("weights must be non-negative")
    inv = field.inv(lam)
    n = len(w)
    diag = [field.convert(inv ** int(x)) if not field.p else pow(inv, int(x), field.p) for x in w]
    return ChangeOfCoordinates(
        [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)], field, check=False
    )


def opposite_coords(n: int, field: Field = QQ) -> ChangeOfCoordinates:
    """The involution x_i -> x_{n+1-i}."""
    return ChangeOfCoordinates(
        [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)], field, check=False
    )


def reverse_monomial(u: Monomial) -> Monomial:
    return u[::-1]


class Ideal:
    """A homogeneous ideal given by generators (zero generators are dropped)."""

    __slots__ = ("ring", "gens", "_cache")

    def __init__(self, ring: Ring, gens: Iterable[Polynomial] = ()):
        kept = []
        for f in gens:
            if not isinstance(f, Polynomial):
                f = ring.one() * f
            if f.ring != ring:
                raise DimensionError(f"generator {f} does not live in {ring}")
            if f.is_zero():
                continue
            homogeneous_degree(f)
            kept.append(f)
        self.ring = ring
        self.gens = tuple(kept)
        self._cache: dict = {}

    @classmethod
    def from_monomials(cls, ring: Ring, exps: Iterable[Sequence[int]]) -> "Ideal":
        return cls(ring, [ring.monomial(u) for u in exps])

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.gens

    def is_monomial(self) -> bool:
        return all(f.is_monomial() for f in self.gens)

    def monomial_gens(self) -> list[Monomial]:
        if not self.is_monomial():
            raise AlgebraError("ideal is not monomial")
        return [next(iter(f.terms)) for f in self.gens]

    def degrees(self) -> list[int]:
        return [f.degree for f in self.gens]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def transform(self, g: ChangeOfCoordinates) -> "Ideal":
        return Ideal(self.ring, [apply_coords(f, g) for f in self.gens])

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.gens == other.gens

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"
