"""Buchberger Gröbner bases for ideals and graded submodules of free modules.

Module elements are dicts ``{(position, monomial): coeff}``.  An ideal is the
rank-one case with every position equal to 0.  A *module order* is a key
function on ``(position, monomial)``; larger key means larger term.

Free resolutions are built with Schreyer's construction: the syzygies coming
from S-pairs of a Gröbner basis form a Gröbner basis of the syzygy module for
the induced order, so the next step needs no new completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .monomial import MonomialIdeal
from .ring import (
    AlgebraError,
    Field,
    Ideal,
    Monomial,
    Polynomial,
    Ring,
    TermOrder,
    divides,
    mono_div,
    mono_lcm,
    mono_mul,
    weight_order,
)

Term = tuple[int, Monomial]
Element = dict  # {(pos, mono): coeff}
Key = Callable[[int, Monomial], tuple]


class TruncationError(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# element arithmetic

def _lead(f: Element, key: Key) -> Term:
    return max(f, key=lambda t: key(t[0], t[1]))


def _axpy(f: Element, c, g: Element, shift: Monomial, p: int) -> None:
    """In place: f += c * shift * g."""
    get = f.get
    for (pos, m), a in g.items():
        t = (pos, mono_mul(m, shift))
        v = get(t, 0) + c * a
        if p:
            v %= p
        if v:
            f[t] = v
        else:
            f.pop(t, None)


def _scale(f: Element, c, field: Field) -> Element:
    p = field.p
    return {t: (a * c % p if p else a * c) for t, a in f.items()}


def _monic(f: Element, key: Key, field: Field) -> Element:
    return _scale(f, field.inv(f[_lead(f, key)]), field)


def element_degree(f: Element, shifts: Sequence[int] | None = None) -> int:
    (pos, m) = next(iter(f))
    return sum(m) + (shifts[pos] if shifts else 0)


class _Basis:
    """Leads of a list of elements, indexed by position for divisor lookup."""

    def __init__(self, elems: list[Element], key: Key):
        self.elems = elems
        self.key = key
        self.leads: list[Term] = [_lead(g, key) for g in elems]
        self.by_pos: dict[int, list[int]] = {}
        for k, (pos, _) in enumerate(self.leads):
            self.by_pos.setdefault(pos, []).append(k)

    def add(self, g: Element) -> int:
        k = len(self.elems)
        self.elems.append(g)
        lt = _lead(g, self.key)
        self.leads.append(lt)
        self.by_pos.setdefault(lt[0], []).append(k)
        return k

    def divisor(self, t: Term, active=None) -> int | None:
        pos, m = t
        for k in self.by_pos.get(pos, ()):
            if active is not None and k not in active:
                continue
            if divides(self.leads[k][1], m):
                return k
        return None


def _reduce(
    f: Element,
    basis: _Basis,
    field: Field,
    *,
    full: bool = True,
    quotients: dict | None = None,
    active=None,
) -> Element:
    """Remainder of f on division by the basis.

    With ``full`` every term is reduced, otherwise only leading terms.  When
    ``quotients`` is given it accumulates ``{index: {mono: coeff}}`` with
    f = sum q_k * g_k + remainder.
    """
    key = basis.key
    p = field.p
    f = dict(f)
    rem: Element = {}
    while f:
        t = _lead(f, key)
        c = f[t]
        k = basis.divisor(t, active)
        if k is None:
            if not full:
                rem.update(f)
                return rem
            rem[t] = c
            del f[t]
            continue
        lpos, lm = basis.leads[k]
        g = basis.elems[k]
        q = c * field.inv(g[(lpos, lm)])
        if p:
            q %= p
        shift = mono_div(t[1], lm)
        _axpy(f, -q, g, shift, p)
        if quotients is not None:
            qk = quotients.setdefault(k, {})
            v = qk.get(shift, 0) + q
            if p:
                v %= p
            if v:
                qk[shift] = v
            else:
                qk.pop(shift, None)
    return rem


def _spair(f: Element, g: Element, tf: Term, tg: Term, field: Field) -> tuple[Element, Monomial, Monomial, object, object]:
    L = mono_lcm(tf[1], tg[1])
    mf, mg = mono_div(L, tf[1]), mono_div(L, tg[1])
    cf, cg = field.inv(f[tf]), field.inv(g[tg])
    s: Element = {}
    _axpy(s, cf, f, mf, field.p)
    _axpy(s, field.neg(cg), g, mg, field.p)
    return s, mf, mg, cf, cg


# ---------------------------------------------------------------------------
# Buchberger

def _gm_update(pairs: dict, basis: _Basis, active: set, h: int, ideal_mode: bool) -> None:
    """Gebauer-Möller installation of the new basis element h.

    ``pairs`` maps (i, j) -> lcm of the leading monomials for pending pairs.
    """
    ph, mh = basis.leads[h]
    cand = []
    for i in active:
        pi, mi = basis.leads[i]
        if pi != ph:
            continue
        L = mono_lcm(mi, mh)
        coprime = L == mono_mul(mi, mh)
        cand.append((i, L, coprime))
    # M: drop (i,h) when some (j,h) has an lcm properly dividing it
    kept = []
    for i, L, cp in cand:
        if any(L2 != L and divides(L2, L) for _, L2, _ in cand):
            continue
        kept.append((i, L, cp))
    # F: one pair per lcm; for ideals a coprime pair makes the whole class redundant
    by_lcm: dict = {}
    for i, L, cp in kept:
        by_lcm.setdefault(L, []).append((i, cp))
    new = []
    for L, group in by_lcm.items():
        if ideal_mode and any(cp for _, cp in group):
            continue
        new.append((group[0][0], L))
    # B: old pairs whose lcm is strictly divisible by lead(h) in the chain sense
    for (i, j) in list(pairs):
        L = pairs[(i, j)]
        pi = basis.leads[i][0]
        if pi != ph or not divides(mh, L):
            continue
        Li = mono_lcm(basis.leads[i][1], mh)
        Lj = mono_lcm(basis.leads[j][1], mh)
        if Li != L and Lj != L:
            del pairs[(i, j)]
    for i, L in new:
        pairs[(min(i, h), max(i, h))] = L
    active.add(h)


def module_groebner(
    gens: Iterable[Element],
    key: Key,
    field: Field,
    shifts: Sequence[int] | None = None,
    D: int | None = None,
    *,
    ideal_mode: bool = False,
    track: bool = False,
):
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    Pairs are processed by increasing degree; with ``D`` the computation is
    truncated and the result is a Gröbner basis in degrees <= D.  With
    ``track`` returns ``(basis, reps)`` where ``reps[k]`` expresses basis
    element k in the input generators as ``{index: {mono: coeff}}``.
    """
    p = field.p

    def deg_of_term(t: Term) -> int:
        return sum(t[1]) + (shifts[t[0]] if shifts else 0)

    gens = [dict(g) for g in gens]
    basis = _Basis([], key)
    reps: list[dict] = []
    active: set = set()
    pairs: dict = {}
    todo = sorted(
        ((deg_of_term(next(iter(g))), k, g) for k, g in enumerate(gens) if g),
        key=lambda x: (x[0], x[1]),
    )
    todo_idx = 0

    def insert(h: Element, rep: dict):
        h_key_lead = _lead(h, key)
        inv = field.inv(h[h_key_lead])
        h = _scale(h, inv, field)
        if track:
            rep = {i: {m: (c * inv % p if p else c * inv) for m, c in r.items()} for i, r in rep.items()}
        k = basis.add(h)
        reps.append(rep)
        _gm_update(pairs, basis, active, k, ideal_mode)

    def reduce_tracked(f: Element, rep: dict) -> tuple[Element, dict]:
        if not track:
            return _reduce(f, basis, field, full=False), rep
        quot: dict = {}
        r = _reduce(f, basis, field, full=False, quotients=quot)
        rep = {i: dict(v) for i, v in rep.items()}
        for k, q in quot.items():
            for i, rk in reps[k].items():
                tgt = rep.setdefault(i, {})
                for m1, c1 in q.items():
                    for m2, c2 in rk.items():
                        mm = mono_mul(m1, m2)
                        v = tgt.get(mm, 0) - c1 * c2
                        if p:
                            v %= p
                        if v:
                            tgt[mm] = v
                        else:
                            tgt.pop(mm, None)
        return r, rep

    while True:
        pair_deg = None
        if pairs:
            pair_deg = min(
                sum(L) + (shifts[basis.leads[i][0]] if shifts else 0) for (i, j), L in pairs.items()
            )
        gen_deg = todo[todo_idx][0] if todo_idx < len(todo) else None
        if pair_deg is None and gen_deg is None:
            break
        d = min(x for x in (pair_deg, gen_deg) if x is not None)
        if D is not None and d > D:
            break
        batch = []
        for (i, j), L in sorted(pairs.items()):
            if sum(L) + (shifts[basis.leads[i][0]] if shifts else 0) == d:
                batch.append((i, j))
        for ij in batch:
            del pairs[ij]
        for i, j in batch:
            s, mf, mg, cf, cg = _spair(basis.elems[i], basis.elems[j], basis.leads[i], basis.leads[j], field)
            rep: dict = {}
            if track:
                for src, mult, c in ((i, mf, cf), (j, mg, field.neg(cg))):
                    for gi, r in reps[src].items():
                        tgt = rep.setdefault(gi, {})
                        for m, a in r.items():
                            mm = mono_mul(m, mult)
                            v = tgt.get(mm, 0) + c * a
                            if p:
                                v %= p
                            if v:
                                tgt[mm] = v
                            else:
                                tgt.pop(mm, None)
            r, rep = reduce_tracked(s, rep)
            if r:
                insert(r, rep)
        while todo_idx < len(todo) and todo[todo_idx][0] == d:
            _, k, g = todo[todo_idx]
            todo_idx += 1
            r, rep = reduce_tracked(g, {k: {(0,) * len(next(iter(g))[1]): 1}})
            if r:
                insert(r, rep)

    # minimalize, then tail-reduce
    keep = []
    for k in range(len(basis.elems)):
        pk, mk = basis.leads[k]
        dominated = False
        for j in range(len(basis.elems)):
            if j == k:
                continue
            pj, mj = basis.leads[j]
            if pj == pk and divides(mj, mk) and (mj != mk or j < k):
                dominated = True
                break
        if not dominated:
            keep.append(k)
    minimal = _Basis([basis.elems[k] for k in keep], key)
    out, out_reps = [], []
    for idx, k in enumerate(keep):
        f = basis.elems[k]
        others = set(range(len(keep))) - {idx}
        lt = basis.leads[k]
        head = {lt: f[lt]}
        tail = {t: c for t, c in f.items() if t != lt}
        if track:
            quot: dict = {}
            red = _reduce(tail, minimal, field, full=True, quotients=quot, active=others)
            rep = {i: dict(v) for i, v in reps[k].items()}
            for kk, q in quot.items():
                for i, rk in reps[keep[kk]].items():
                    tgt = rep.setdefault(i, {})
                    for m1, c1 in q.items():
                        for m2, c2 in rk.items():
                            mm = mono_mul(m1, m2)
                            v = tgt.get(mm, 0) - c1 * c2
                            if p:
                                v %= p
                            if v:
                                tgt[mm] = v
                            else:
                                tgt.pop(mm, None)
            out_reps.append(rep)
        else:
            red = _reduce(tail, minimal, field, full=True, active=others)
        red.update(head)
        out.append(red)
    # tail reduction against the *original* minimal elements keeps leads, so
    # the result is reduced after one pass
    order = sorted(range(len(out)), key=lambda k: key(*_lead(out[k], key)), reverse=True)
    out = [out[k] for k in order]
    if track:
        return out, [out_reps[k] for k in order]
    return out


# ---------------------------------------------------------------------------
# ideal-level API

def _ideal_key(order: TermOrder) -> Key:
    k = order.key
    return lambda pos, m: k(m)


def _to_element(f: Polynomial) -> Element:
    return {(0, m): c for m, c in f.terms.items()}


def _to_poly(ring: Ring, f: Element) -> Polynomial:
    return Polynomial(ring, {m: c for (_, m), c in f.items()}, _trusted=True)


def _as_ideal(I, ring: Ring | None = None) -> Ideal:
    if isinstance(I, Ideal):
        return I
    gens = list(I)
    if ring is None:
        if not gens:
            raise AlgebraError("empty generator list needs an explicit ring")
        ring = gens[0].ring
    return Ideal(ring, gens)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis; ``D`` is set when the computation was truncated."""

    ring: Ring
    order: TermOrder
    elements: tuple[Polynomial, ...]
    gens: tuple[Polynomial, ...]
    D: int | None = None

    def leading_monomials(self) -> list[Monomial]:
        return [f.leading_monomial(self.order) for f in self.elements]

    def initial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.ring.n, self.leading_monomials())

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def __contains__(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def buchberger(I, order: TermOrder, D: int | None = None, ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of a homogeneous ideal (truncated at degree D if given)."""
    I = _as_ideal(I, ring)
    key = _ideal_key(order)
    elems = module_groebner((_to_element(f) for f in I.gens), key, I.field, D=D, ideal_mode=True)
    polys = tuple(_to_poly(I.ring, e) for e in elems)
    return GroebnerBasis(I.ring, order, polys, I.gens, D)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of f modulo the basis; zero iff f lies in the ideal."""
    if gb.D is not None and f.degree > gb.D:
        raise TruncationError(f"basis truncated at degree {gb.D}, element has degree {f.degree}")
    basis = _Basis([_to_element(g) for g in gb.elements], _ideal_key(gb.order))
    return _to_poly(gb.ring, _reduce(_to_element(f), basis, gb.ring.field, full=True))


def initial_ideal(I, order: TermOrder, D: int | None = None, *, method: str = "buchberger", ring: Ring | None = None) -> MonomialIdeal:
    """Initial ideal under ``order``.

    ``method="linalg"`` reads in(I)_d off the pivots of an echelon form of I_d
    with columns sorted by the order (requires D); ``"buchberger"`` takes the
    leading terms of the reduced Gröbner basis.
    """
    I = _as_ideal(I, ring)
    if method == "buchberger":
        return buchberger(I, order, D).initial_ideal()
    if method == "linalg":
        if D is None:
            raise AlgebraError("the linear-algebra initial ideal needs a degree bound")
        return initial_ideal_linalg(I, order, D)
    raise ValueError(f"unknown method {method!r}")


def initial_degree_set(I: Ideal, order: TermOrder, d: int) -> list[Monomial]:
    """Leading monomials of I_d: pivots of the echelon form with columns descending in ``order``."""
    from .linalg import piece_basis, echelon
    from .ring import enumerate_degree

    cols = enumerate_degree(I.n, d, order)
    basis = piece_basis(I, d)
    if not basis:
        return []
    index = {m: k for k, m in enumerate(cols)}
    dense = []
    for t in basis:
        v = [0] * len(cols)
        for m, c in t.items():
            v[index[m]] = c
        dense.append(v)
    _, piv = echelon(dense, len(cols), I.field, reduced=False)
    return [cols[k] for k in piv]


def initial_ideal_linalg(I: Ideal, order: TermOrder, D: int) -> MonomialIdeal:
    gens = []
    for d in range(D + 1):
        gens.extend(initial_degree_set(I, order, d))
    return MonomialIdeal(I.n, gens)


def initial_weight(I, w: Sequence[int], tiebreak: TermOrder, D: int | None = None, ring: Ring | None = None) -> tuple[MonomialIdeal, bool]:
    """Initial ideal for the weight order refined by ``tiebreak``, plus the tie flag.

    The flag is set when some reduced basis element has several monomials of
    maximal weight, i.e. the unrefined w-initial ideal is not monomial.
    """
    I = _as_ideal(I, ring)
    order = weight_order(w, tiebreak)
    gb = buchberger(I, order, D)
    return gb.initial_ideal(), _has_ties(gb, order)


def _has_ties(gb: GroebnerBasis, order: TermOrder) -> bool:
    for f in gb.elements:
        top = max(order.weight(m) for m in f.terms)
        if sum(1 for m in f.terms if order.weight(m) == top) > 1:
            return True
    return False


def weight_initial_forms(I, w: Sequence[int], tiebreak: TermOrder, D: int | None = None, ring: Ring | None = None) -> Ideal:
    """The w-initial ideal in_w(I), generated by the w-initial forms of a refined Gröbner basis."""
    I = _as_ideal(I, ring)
    order = weight_order(w, tiebreak)
    gb = buchberger(I, order, D)
    out = []
    for f in gb.elements:
        top = max(order.weight(m) for m in f.terms)
        out.append(Polynomial(I.ring, {m: c for m, c in f.terms.items() if order.weight(m) == top}, _trusted=True))
    return Ideal(I.ring, out)


# ---------------------------------------------------------------------------
# syzygies

def _as_vectors(gens, ring: Ring | None) -> tuple[Ring, list[list[Polynomial]]]:
    gens = list(gens)
    vecs = []
    for g in gens:
        if isinstance(g, Polynomial):
            vecs.append([g])
        else:
            vecs.append(list(g))
    if ring is None:
        if not vecs:
            raise AlgebraError("empty generator list needs an explicit ring")
        ring = vecs[0][0].ring
    rank = max((len(v) for v in vecs), default=1)
    if any(len(v) != rank for v in vecs):
        raise AlgebraError("module generators of different lengths")
    return ring, vecs


def _vec_to_element(v: Sequence[Polynomial]) -> Element:
    return {(pos, m): c for pos, f in enumerate(v) for m, c in f.terms.items()}


def syzygies(gens, order: TermOrder, shifts: Sequence[int] | None = None, ring: Ring | None = None) -> list[tuple[Polynomial, ...]]:
    """Generators of the syzygy module of ``gens`` (polynomials or vectors of polynomials).

    Runs a tracked module Buchberger (position over term), takes Schreyer
    syzygies among the basis elements and pulls them back to the input
    generators, together with the relations expressing each input generator
    through the basis.
    """
    ring, vecs = _as_vectors(gens, ring)
    p = ring.field.p
    k_ord = order.key
    key: Key = lambda pos, m: (-pos, k_ord(m))
    elems = [_vec_to_element(v) for v in vecs]
    s = len(elems)
    live = [k for k, e in enumerate(elems) if e]
    if not live:
        return [tuple(ring.one() if j == k else ring.zero() for j in range(s)) for k in range(s)]
    gb, reps = module_groebner([elems[k] for k in live], key, ring.field, shifts, track=True)
    reps = [{live[i]: r for i, r in rep.items()} for rep in reps]
    basis = _Basis(list(gb), key)
    zero = (0,) * ring.n

    def pull(coeffs: dict) -> dict:
        # coeffs: {basis index: {mono: c}} -> {input index: {mono: c}}
        out: dict = {}
        for k, q in coeffs.items():
            for i, r in reps[k].items():
                tgt = out.setdefault(i, {})
                for m1, c1 in q.items():
                    for m2, c2 in r.items():
                        mm = mono_mul(m1, m2)
                        v = tgt.get(mm, 0) + c1 * c2
                        if p:
                            v %= p
                        if v:
                            tgt[mm] = v
                        else:
                            tgt.pop(mm, None)
        return out

    result = []
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            if basis.leads[i][0] != basis.leads[j][0]:
                continue
            spoly, mf, mg, cf, cg = _spair(gb[i], gb[j], basis.leads[i], basis.leads[j], ring.field)
            quot: dict = {}
            rem = _reduce(spoly, basis, ring.field, full=False, quotients=quot)
            assert not rem, "S-pair of a Gröbner basis failed to reduce"
            coeffs: dict = {i: {mf: cf}, j: {mg: ring.field.neg(cg)}}
            for k, q in quot.items():
                tgt = coeffs.setdefault(k, {})
                for m, c in q.items():
                    v = tgt.get(m, 0) - c
                    if p:
                        v %= p
                    if v:
                        tgt[m] = v
                    else:
                        tgt.pop(m, None)
            result.append(pull(coeffs))
    for k in range(s):
        quot = {}
        rem = _reduce(elems[k], basis, ring.field, full=True, quotients=quot)
        assert not rem
        rel = pull(quot)
        tgt = rel.setdefault(k, {})
        v = tgt.get(zero, 0) - 1
        if p:
            v %= p
        if v:
            tgt[zero] = v
        else:
            tgt.pop(zero, None)
        result.append(rel)
    out = []
    seen = set()
    for rel in result:
        vec = tuple(Polynomial(ring, rel.get(k, {}), _trusted=True) for k in range(s))
        if all(f.is_zero() for f in vec):
            continue
        if vec in seen:
            continue
        seen.add(vec)
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# free resolutions

@dataclass
class FreeResolution:
    """Graded free resolution F_0 <- F_1 <- ... <- F_p of S/I, truncated at degree D.

    ``shifts[i]`` lists the generator degrees of F_i; ``maps[i]`` (i >= 1) lists
    the columns of phi_i, each an element ``{(pos, mono): coeff}`` of F_{i-1}.
    ``maps[0]`` is empty.  Generators of degree > D are dropped, so the complex
    is exact only in internal degrees <= D.
    """

    ring: Ring
    shifts: list[list[int]]
    maps: list[list[Element]]
    D: int
    kind: str = "schreyer"

    @property
    def length(self) -> int:
        return len(self.shifts) - 1

    def rank(self, i: int) -> int:
        return len(self.shifts[i]) if 0 <= i <= self.length else 0

    def ranks(self) -> list[int]:
        return [len(s) for s in self.shifts]

    def transform(self, g) -> "FreeResolution":
        """Image under a change of coordinates (a resolution of S/g(I))."""
        maps = [[]]
        for cols in self.maps[1:]:
            new_cols = []
            for col in cols:
                by_pos: dict = {}
                for (pos, m), c in col.items():
                    by_pos.setdefault(pos, {})[m] = c
                out = {}
                for pos, terms in by_pos.items():
                    for m, c in g.apply_terms(terms).items():
                        out[(pos, m)] = c
                new_cols.append(out)
            maps.append(new_cols)
        return FreeResolution(self.ring, [list(s) for s in self.shifts], maps, self.D, self.kind)

    def column_polys(self, i: int, k: int) -> list[Polynomial]:
        """Column k of phi_i as a vector of polynomials."""
        vec: list[dict] = [{} for _ in range(self.rank(i - 1))]
        for (pos, m), c in self.maps[i][k].items():
            vec[pos][m] = c
        return [Polynomial(self.ring, v, _trusted=True) for v in vec]


def _compose_is_zero(res: FreeResolution, i: int) -> bool:
    """phi_i o phi_{i+1} == 0."""
    p = res.ring.field.p
    for col in res.maps[i + 1]:
        acc: dict = {}
        for (pos, m), c in col.items():
            _axpy(acc, c, res.maps[i][pos], m, p)
        if acc:
            return False
    return True


def free_resolution(I, length: int, D: int, order: TermOrder | None = None, ring: Ring | None = None) -> FreeResolution:
    """Schreyer resolution of S/I up to F_length, correct in internal degrees <= D."""
    from .ring import REVLEX

    I = _as_ideal(I, ring)
    ring = I.ring
    field = ring.field
    order = order or REVLEX
    if length < 1:
        raise AlgebraError("resolution length must be >= 1")
    okey = order.key
    n = ring.n
    one = (0,) * n
    gb = buchberger(I, order, D)
    level = [_to_element(f) for f in gb.elements]
    # frame data for the induced order: total monomial and tie tail per basis element
    prev_T = [one]
    prev_tail: list[tuple] = [()]
    shifts = [[0], [f.degree for f in gb.elements]]
    maps: list[list[Element]] = [[], level]
    for _ in range(2, length + 1):
        key_prev: Key = lambda pos, m, T=prev_T, tl=prev_tail: (okey(mono_mul(m, T[pos])), tl[pos])
        basis = _Basis(list(level), key_prev)
        # frame for the current level
        cur_T = [mono_mul(basis.leads[k][1], prev_T[basis.leads[k][0]]) for k in range(len(level))]
        cur_tail = [prev_tail[basis.leads[k][0]] + (-k,) for k in range(len(level))]
        new_level = []
        new_shifts = []
        for pos, idxs in basis.by_pos.items():
            for a in range(len(idxs)):
                i = idxs[a]
                for b in range(a + 1, len(idxs)):
                    j = idxs[b]
                    lo, hi = min(i, j), max(i, j)
                    L = mono_lcm(basis.leads[lo][1], basis.leads[hi][1])
                    deg = sum(L) + shifts[-2][pos]
                    if deg > D:
                        continue
                    s, mf, mg, cf, cg = _spair(level[lo], level[hi], basis.leads[lo], basis.leads[hi], field)
                    quot: dict = {}
                    rem = _reduce(s, basis, field, full=False, quotients=quot)
                    if rem:
                        raise AssertionError("Schreyer S-pair did not reduce to zero")
                    syz: Element = {(lo, mf): cf}
                    t = (hi, mg)
                    syz[t] = syz.get(t, 0) + field.neg(cg)
                    for k, q in quot.items():
                        for m, c in q.items():
                            t = (k, m)
                            v = syz.get(t, 0) - c
                            if field.p:
                                v %= field.p
                            if v:
                                syz[t] = v
                            else:
                                syz.pop(t, None)
                    new_level.append(syz)
                    new_shifts.append(deg)
        prev_T, prev_tail = cur_T, cur_tail
        maps.append(new_level)
        shifts.append(new_shifts)
        level = new_level
        if not level:
            break
    while len(shifts) < length + 1:
        shifts.append([])
        maps.append([])
    return FreeResolution(ring, shifts, maps, D, "schreyer")
