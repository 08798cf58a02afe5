"""Sampling "general" coordinate changes and forms, generic initial ideals, general values of statistics."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .groebner import initial_degree_set
from .linalg import HilbertTable, hilbert_value
from .monomial import MonomialIdeal, from_degree_sets, is_opposite_zero_borel, is_zero_borel
from .ring import (
    LEX,
    OPLEX,
    QQ,
    AlgebraError,
    ChangeOfCoordinates,
    Field,
    Ideal,
    Polynomial,
    Ring,
    TermOrder,
    monomials,
)


class SamplingError(AlgebraError):
    pass


class Direction(enum.Enum):
    TakeMin = "min"
    TakeMax = "max"


@dataclass(frozen=True)
class GenericityProtocol:
    """How many independent samples to draw, from which seed, with what coefficient height."""

    trials: int = 3
    seed: int = 0
    height: int = 10**4

    def __post_init__(self):
        if self.trials < 2:
            raise AlgebraError("at least two trials are needed to judge stability")
        if self.height < 1:
            raise AlgebraError("height must be positive")

    def rng(self, trial: int, stream: str = "") -> random.Random:
        """Independent generator for one trial; string seeds hash deterministically."""
        return random.Random(f"{self.seed}/{stream}/{trial}")


DEFAULT_PROTOCOL = GenericityProtocol()
RETRY_CAP = 64


def random_scalar(rng: random.Random, fld: Field, height: int, *, nonzero: bool = False):
    if fld.p:
        return rng.randrange(1, fld.p) if nonzero else rng.randrange(fld.p)
    while True:
        c = rng.randint(-height, height)
        if c or not nonzero:
            return c


def _rng(protocol: GenericityProtocol | None, trial: int, rng: random.Random | None, stream: str):
    protocol = protocol or DEFAULT_PROTOCOL
    return protocol, (rng if rng is not None else protocol.rng(trial, stream))


def random_coords(
    n: int,
    protocol: GenericityProtocol | None = None,
    fld: Field = QQ,
    *,
    trial: int = 0,
    rng: random.Random | None = None,
) -> ChangeOfCoordinates:
    """Random invertible n x n matrix; entries are i.i.d. integers in [-height, height] (or all of F_p)."""
    protocol, rng = _rng(protocol, trial, rng, "coords")
    for _ in range(RETRY_CAP):
        entries = [[random_scalar(rng, fld, protocol.height) for _ in range(n)] for _ in range(n)]
        g = ChangeOfCoordinates(entries, fld, check=False)
        if g.det():
            return g
    raise SamplingError(f"{RETRY_CAP} singular samples in a row")


def random_triangular(
    n: int,
    protocol: GenericityProtocol | None = None,
    kind: str = "upper",
    fld: Field = QQ,
    *,
    unit_diagonal: bool = False,
    trial: int = 0,
    rng: random.Random | None = None,
) -> ChangeOfCoordinates:
    """Random triangular matrix with nonzero diagonal; ``kind`` is "upper" or "lower"."""
    kind = kind.lower()
    if kind not in ("upper", "lower"):
        raise ValueError(f"kind must be upper or lower, not {kind!r}")
    protocol, rng = _rng(protocol, trial, rng, "tri-" + kind)
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                entries[i][j] = 1 if unit_diagonal else random_scalar(rng, fld, protocol.height, nonzero=True)
            elif (i < j) == (kind == "upper"):
                entries[i][j] = random_scalar(rng, fld, protocol.height)
    return ChangeOfCoordinates(entries, fld, check=False)


def random_lu(n: int, protocol: GenericityProtocol | None = None, fld: Field = QQ, *, trial: int = 0) -> ChangeOfCoordinates:
    """Upper times lower triangular sample, an alternative general coordinate change."""
    protocol = protocol or DEFAULT_PROTOCOL
    rng = protocol.rng(trial, "lu")
    b = random_triangular(n, protocol, "upper", fld, rng=rng)
    h = random_triangular(n, protocol, "lower", fld, rng=rng)
    return b @ h


def random_form(ring: Ring, degree: int, rng: random.Random, height: int = 10**4) -> Polynomial:
    """Random nonzero homogeneous polynomial with all monomials of the given degree in its support pool."""
    if degree < 0:
        raise AlgebraError("degree must be >= 0")
    for _ in range(RETRY_CAP):
        f = Polynomial(ring, {m: random_scalar(rng, ring.field, height) for m in monomials(ring.n, degree)})
        if not f.is_zero():
            return f
    raise SamplingError("only zero forms sampled")


def random_linear_form(ring: Ring, rng: random.Random, height: int = 10**4) -> Polynomial:
    return random_form(ring, 1, rng, height)


# ---------------------------------------------------------------------------
# generic initial ideals

class UnstableGinError(AlgebraError):
    def __init__(self, certificate: "GinCertificate"):
        super().__init__(
            f"initial ideals disagree across {certificate.trials_used} trials; raise trials or height"
        )
        self.certificate = certificate


@dataclass(frozen=True)
class GinCertificate:
    """Sampled generic initial ideal (truncated at degree D) with the evidence gathered for it."""

    result: MonomialIdeal
    samples_agreed: bool
    borel_check: bool
    trials_used: int
    order: TermOrder
    D: int
    characteristic: int = 0

    @property
    def valid(self) -> bool:
        return self.samples_agreed and (self.characteristic != 0 or self.borel_check)


def _borel_for(order: TermOrder) -> Callable[[MonomialIdeal], bool]:
    return is_opposite_zero_borel if order == OPLEX else is_zero_borel


def _larger_set(a: list, b: list, order: TermOrder) -> list:
    """Of two equal-size sets of leading monomials, the one larger in the order (compared sorted descending)."""
    key = order.key
    ka = sorted((key(m) for m in a), reverse=True)
    kb = sorted((key(m) for m in b), reverse=True)
    return a if ka >= kb else b


def gin(
    I: Ideal,
    order: TermOrder = LEX,
    protocol: GenericityProtocol | None = None,
    D: int | None = None,
    *,
    strict: bool = True,
) -> GinCertificate:
    """Initial ideal of g(I) for sampled g, degree by degree up to D.

    Per degree the largest sampled set is kept; it is the generic one once any
    trial hits the open set.  ``strict`` raises :class:`UnstableGinError` when
    trials disagree.
    """
    protocol = protocol or DEFAULT_PROTOCOL
    if D is None:
        D = I.max_degree()
    if I.is_zero():
        return GinCertificate(MonomialIdeal(I.n), True, True, protocol.trials, order, D, I.field.p)
    best: dict[int, list] = {}
    agreed = True
    for t in range(protocol.trials):
        gI = I.transform(random_coords(I.n, protocol, I.field, trial=t))
        for d in range(D + 1):
            lead = initial_degree_set(gI, order, d)
            if d not in best:
                best[d] = lead
            elif set(lead) != set(best[d]):
                agreed = False
                best[d] = _larger_set(best[d], lead, order)
    result = from_degree_sets(I.n, best)
    cert = GinCertificate(result, agreed, _borel_for(order)(result), protocol.trials, order, D, I.field.p)
    if strict and not agreed:
        raise UnstableGinError(cert)
    return cert


def gin_hilbert_consistent(I: Ideal, cert: GinCertificate) -> bool:
    """HF(gin, d) = HF(I, d) for every d <= D."""
    return all(len(cert.result.degree_set(d)) == hilbert_value(I, d) for d in range(cert.D + 1))


# ---------------------------------------------------------------------------
# general values of statistics

@dataclass(frozen=True)
class GeneralValue:
    """Per-entry extremum over trials with a stability flag per entry."""

    values: tuple[int, ...]
    stable: tuple[bool, ...]
    samples: tuple[tuple[int, ...], ...] = field(repr=False)
    direction: Direction

    @property
    def table(self) -> HilbertTable:
        return HilbertTable(self.values)

    @property
    def all_stable(self) -> bool:
        return all(self.stable)


def general_statistic(
    f: Callable[[random.Random, int], Sequence[int]],
    protocol: GenericityProtocol | None = None,
    direction: Direction = Direction.TakeMin,
    stream: str = "stat",
) -> GeneralValue:
    """Fold ``f(rng_t, t)`` over the trials, keeping the min or max entrywise.

    An entry is stable when the last two trials both attain the reported value.
    """
    protocol = protocol or DEFAULT_PROTOCOL
    samples = [tuple(f(protocol.rng(t, stream), t)) for t in range(protocol.trials)]
    width = {len(s) for s in samples}
    if len(width) != 1:
        raise AlgebraError("statistic returned sequences of different lengths")
    pick = min if direction is Direction.TakeMin else max
    values = tuple(pick(col) for col in zip(*samples))
    stable = tuple(samples[-1][k] == v and samples[-2][k] == v for k, v in enumerate(values))
    return GeneralValue(values, stable, tuple(samples), direction)


def coords_statistic(
    stat: Callable[[ChangeOfCoordinates], Sequence[int]],
    n: int,
    fld: Field,
    protocol: GenericityProtocol | None = None,
    direction: Direction = Direction.TakeMin,
) -> GeneralValue:
    """General value of a statistic of a coordinate change."""
    protocol = protocol or DEFAULT_PROTOCOL

    def sample(rng, t):
        return stat(random_coords(n, protocol, fld, rng=rng))

    return general_statistic(sample, protocol, direction, "coords")
