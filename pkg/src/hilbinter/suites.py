"""Verification suites: sampled "general" sides against lex/gin bounds, degree by degree.

Verdicts per entry:

- ``pass``: the inequality holds for the sampled value.  Sampled values of a
  TakeMin statistic are >= the general value (TakeMax: <=), so a pass is
  conclusive even when the samples disagree.
- ``violation``: the inequality fails and every sample that matters agreed.
- ``inconclusive``: the inequality fails but the samples were unstable, or
  the hypothesis could not be decided because the gin samples disagreed.
- ``hypothesis-not-met``: fails on an instance outside the hypothesis
  (positive characteristic, or Gin_lex(J) not lex), an expected reversal.
- ``expected-violation``: fails in a known positive-characteristic exception.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .generic import (
    DEFAULT_PROTOCOL,
    Direction,
    GeneralValue,
    GenericityProtocol,
    GinCertificate,
    coords_statistic,
    general_statistic,
    gin,
    random_form,
    random_scalar,
)
from .groebner import weight_initial_forms
from .linalg import dim_intersection, dim_product, hilbert_function, hilbert_value
from .monomial import MonomialIdeal, is_lex_ideal, lexify
from .ring import (
    LEX,
    OPLEX,
    QQ,
    AlgebraError,
    Field,
    Ideal,
    Ring,
    diagonal_coords,
    num_monomials,
)
from .tor import general_tor, heuristic_window, ideal_module_tor, tor_table

SUITES = ("green", "hpg", "intersection", "product", "ginbounds", "tor", "semicontinuity", "degeneration")
PAIR_SUITES = SUITES[2:]
TSV_HEADER = "instance\tsuite\ti\td\tlhs\trhs\tverdict\tstable"


@dataclass(frozen=True)
class ExperimentConfig:
    field: Field = QQ
    n: int = 3
    D: int = 8
    i_max: int = 3
    protocol: GenericityProtocol = DEFAULT_PROTOCOL
    suite: str = "all"
    hpg_degrees: tuple[int, ...] = (1, 2, 3)
    weight: tuple[int, ...] | None = None
    window_width: int = 4

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise AlgebraError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)} or all")
        if self.D < 0 or self.i_max < 0:
            raise AlgebraError("degree bounds must be >= 0")

    def check(self, *ideals: Ideal) -> None:
        """D must reach every generator degree; rings must match the configuration."""
        for I in ideals:
            if I.n != self.n or I.field != self.field:
                raise AlgebraError(f"ideal lives in {I.ring}, configuration says {self.n} variables over {self.field}")
            if I.max_degree() > self.D:
                raise AlgebraError(f"max degree {self.D} is below a generator degree {I.max_degree()}")

    def wants(self, suite: str) -> bool:
        return self.suite in ("all", suite)

    @property
    def ring(self) -> Ring:
        return Ring(self.n, self.field)


@dataclass(frozen=True)
class Record:
    instance: str
    suite: str
    i: int | None
    d: int
    lhs: int
    rhs: int
    verdict: str
    stable: bool

    def tsv(self) -> str:
        i = "-" if self.i is None else str(self.i)
        return f"{self.instance}\t{self.suite}\t{i}\t{self.d}\t{self.lhs}\t{self.rhs}\t{self.verdict}\t{int(self.stable)}"


@dataclass
class VerificationReport:
    records: list[Record] = field(default_factory=list)
    notes: dict[tuple[str, str], list[str]] = field(default_factory=dict)
    hypothesis: dict[tuple[str, str], bool | None] = field(default_factory=dict)
    seeds: tuple[int, int, int] = (DEFAULT_PROTOCOL.seed, DEFAULT_PROTOCOL.trials, DEFAULT_PROTOCOL.height)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.records.extend(other.records)
        self.notes.update(other.notes)
        self.hypothesis.update(other.hypothesis)
        return self

    def note(self, instance: str, suite: str, text: str) -> None:
        self.notes.setdefault((instance, suite), []).append(text)

    def counts(self) -> Counter:
        return Counter(r.verdict for r in self.records)

    def by_verdict(self, verdict: str) -> list[Record]:
        return [r for r in self.records if r.verdict == verdict]

    def select(self, suite: str | None = None, instance: str | None = None) -> list[Record]:
        return [
            r for r in self.records
            if (suite is None or r.suite == suite) and (instance is None or r.instance == instance)
        ]

    def instances(self) -> list[str]:
        return list(dict.fromkeys(r.instance for r in self.records))

    def exit_code(self) -> int:
        c = self.counts()
        if c["violation"]:
            return 1
        if c["inconclusive"]:
            return 3
        return 0

    def to_tsv(self, header: bool = True) -> str:
        lines = [TSV_HEADER] if header else []
        lines.extend(r.tsv() for r in self.records)
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        seed, trials, height = self.seeds
        out = [f"protocol: seed={seed} trials={trials} height={height}"]
        keys = list(dict.fromkeys((r.instance, r.suite) for r in self.records))
        for key in keys:
            recs = [r for r in self.records if (r.instance, r.suite) == key]
            verdicts = Counter(r.verdict for r in recs)
            summary = ", ".join(f"{v}={k}" for v, k in sorted(verdicts.items()))
            hyp = self.hypothesis.get(key)
            hyp_s = "" if hyp is None and key not in self.hypothesis else f"  hypothesis={'met' if hyp else ('unknown' if hyp is None else 'not met')}"
            out.append(f"[{key[0]} / {key[1]}] {summary}{hyp_s}")
            for text in self.notes.get(key, []):
                out.append(f"    note: {text}")
            for r in recs:
                if r.verdict != "pass":
                    i = "" if r.i is None else f"i={r.i} "
                    out.append(f"    {i}d={r.d}: lhs={r.lhs} rhs={r.rhs} {r.verdict}{'' if r.stable else ' (unstable)'}")
        total = ", ".join(f"{v}={k}" for v, k in sorted(self.counts().items()))
        out.append(f"total: {total or 'no records'}")
        return "\n".join(out) + "\n"


def _new_report(config: ExperimentConfig) -> VerificationReport:
    p = config.protocol
    return VerificationReport(seeds=(p.seed, p.trials, p.height))


def verdict(lhs: int, rhs: int, relation: str, stable: bool, expected: str | None = None) -> str:
    ok = lhs <= rhs if relation == "le" else lhs >= rhs
    if ok:
        return "pass"
    if expected:
        return expected
    return "violation" if stable else "inconclusive"


def _compare(
    report: VerificationReport,
    instance: str,
    suite: str,
    lhs: Sequence[int],
    lhs_stable: Sequence[bool],
    rhs: Sequence[int],
    relation: str,
    *,
    i: int | None = None,
    rhs_stable: bool = True,
    expected: str | None = None,
    degrees: Sequence[int] | None = None,
) -> None:
    degrees = range(len(lhs)) if degrees is None else degrees
    for d, a, b, s in zip(degrees, lhs, rhs, lhs_stable):
        st = bool(s and rhs_stable)
        report.records.append(Record(instance, suite, i, d, a, b, verdict(a, b, relation, st, expected), st))


# ---------------------------------------------------------------------------
# shared quantities

def lex_pair(I: Ideal, J: Ideal, D: int) -> tuple[MonomialIdeal, MonomialIdeal]:
    """I^lex and J^oplex, both truncated at degree D."""
    hI = hilbert_function(I, D)
    hJ = hilbert_function(J, D)
    return lexify(hI.values, I.n, "lex", D), lexify(hJ.values, J.n, "oplex", D)


def _h_monomial(A: MonomialIdeal, d: int) -> int:
    return len(A.degree_set(d))


def _h_cap(A: MonomialIdeal, B: MonomialIdeal, d: int) -> int:
    return len(A.degree_set(d) & B.degree_set(d))


def _h_prod(A: MonomialIdeal, B: MonomialIdeal, d: int) -> int:
    from .monomial import product

    return _h_monomial(product(A, B), d)


def intersection_statistic(I: Ideal, J: Ideal, config: ExperimentConfig) -> GeneralValue:
    D = config.D
    return coords_statistic(
        lambda g: [dim_intersection(I, J.transform(g), d) for d in range(D + 1)],
        I.n, I.field, config.protocol, Direction.TakeMin,
    )


def product_statistic(I: Ideal, J: Ideal, config: ExperimentConfig) -> GeneralValue:
    D = config.D
    return coords_statistic(
        lambda g: [dim_product(I, J.transform(g), d) for d in range(D + 1)],
        I.n, I.field, config.protocol, Direction.TakeMax,
    )


def _gin_note(name: str, cert: GinCertificate) -> str:
    return (
        f"{name}: {cert.result} (agreed={cert.samples_agreed}, borel={cert.borel_check}, "
        f"trials={cert.trials_used}, truncated at {cert.D})"
    )


def hypothesis_gin_lex(J: Ideal, config: ExperimentConfig) -> tuple[bool | None, GinCertificate]:
    """Whether Gin_lex(J) is lex in degrees <= D; None when the gin samples disagree."""
    cert = gin(J, LEX, config.protocol, config.D, strict=False)
    if not cert.samples_agreed:
        return None, cert
    return is_lex_ideal(cert.result, config.D, "lex"), cert


def _expected(hyp: bool | None) -> str | None:
    """Verdict for a failed entry: unmet hypothesis is expected, an undecided one is inconclusive."""
    if hyp is False:
        return "hypothesis-not-met"
    if hyp is None:
        return "inconclusive"
    return None


def _lex_hypothesis(J: Ideal, config: ExperimentConfig, report: VerificationReport, name: str, suite: str) -> bool | None:
    """Characteristic zero and Gin_lex(J) lex, recorded on the report."""
    hyp, cert = hypothesis_gin_lex(J, config)
    report.note(name, suite, _gin_note("Gin_lex(J)", cert))
    if config.field.p:
        report.note(name, suite, f"characteristic {config.field.p}: the bound is only claimed in characteristic 0")
        hyp = False
    report.hypothesis[(name, suite)] = hyp
    return hyp


# ---------------------------------------------------------------------------
# hyperplane and hypersurface sections

def verify_hpg(I: Ideal, a: int, config: ExperimentConfig, name: str = "I", *, forms: str = "general") -> VerificationReport:
    """H(I ∩ (h), d) for general h of degree a against H(I^lex ∩ (x_n^a), d).

    ``forms="frobenius"`` samples h = l^p for a random linear form l (char p,
    a = p): the intersection counterexample seen through a principal ideal.
    """
    if a < 1:
        raise AlgebraError("degree a must be >= 1")
    config.check(I)
    ring, D, n = I.ring, config.D, I.n
    p = ring.field.p
    if forms == "frobenius" and (p == 0 or a % p):
        raise AlgebraError("Frobenius forms need positive characteristic p dividing a")
    suite = "green" if a == 1 and forms == "general" else f"hpg{a}" if forms == "general" else f"hpg{a}-frobenius"
    report = _new_report(config)

    def sample(rng, t):
        if forms == "general":
            h = random_form(ring, a, rng, config.protocol.height)
        else:
            h = random_form(ring, 1, rng, config.protocol.height) ** a
        H = Ideal(ring, [h])
        return [dim_intersection(I, H, d) for d in range(D + 1)]

    lhs = general_statistic(sample, config.protocol, Direction.TakeMin, f"form{a}-{forms}")
    Ilex = lexify(hilbert_function(I, D).values, n, "lex", D)
    xa = MonomialIdeal(n, [tuple(a if k == n - 1 else 0 for k in range(n))])
    rhs = [_h_cap(Ilex, xa, d) for d in range(D + 1)]
    expected = "expected-violation" if forms == "frobenius" else None
    if forms == "frobenius":
        report.note(name, suite, f"characteristic {p}: l^{a} is a p-th power, general forms of degree {a} are not")
    _compare(report, name, suite, lhs.values, lhs.stable, rhs, "le", expected=expected)
    return report


def verify_green(I: Ideal, config: ExperimentConfig, name: str = "I") -> VerificationReport:
    return verify_hpg(I, 1, config, name)


# ---------------------------------------------------------------------------
# pairs

def verify_intersection(I: Ideal, J: Ideal, config: ExperimentConfig, name: str = "I,J") -> VerificationReport:
    """H(I ∩ g(J), d) <= H(I^lex ∩ J^oplex, d) when Gin_lex(J) is lex."""
    config.check(I, J)
    report = _new_report(config)
    D = config.D
    hyp = _lex_hypothesis(J, config, report, name, "intersection")
    Ilex, Jop = lex_pair(I, J, D)
    lhs = intersection_statistic(I, J, config)
    rhs = [_h_cap(Ilex, Jop, d) for d in range(D + 1)]
    _compare(report, name, "intersection", lhs.values, lhs.stable, rhs, "le", expected=_expected(hyp))
    return report


def verify_product(I: Ideal, J: Ideal, config: ExperimentConfig, name: str = "I,J") -> VerificationReport:
    """H(I g(J), d) >= H(I^lex J^oplex, d)."""
    config.check(I, J)
    report = _new_report(config)
    D = config.D
    hyp = not config.field.p
    report.hypothesis[(name, "product")] = hyp
    if not hyp:
        report.note(name, "product", f"characteristic {config.field.p}: the bound is only claimed in characteristic 0")
    Ilex, Jop = lex_pair(I, J, D)
    lhs = product_statistic(I, J, config)
    rhs = [_h_prod(Ilex, Jop, d) for d in range(D + 1)]
    _compare(report, name, "product", lhs.values, lhs.stable, rhs, "ge", expected=_expected(hyp))
    return report


def gin_pair(I: Ideal, J: Ideal, config: ExperimentConfig) -> tuple[GinCertificate, GinCertificate]:
    gi = gin(I, LEX, config.protocol, config.D, strict=False)
    gj = gin(J, OPLEX, config.protocol, config.D, strict=False)
    return gi, gj


def verify_gin_bounds(I: Ideal, J: Ideal, config: ExperimentConfig, name: str = "I,J") -> VerificationReport:
    """H(I ∩ g(J)) <= H(Gin_lex(I) ∩ Gin_oplex(J)) and H(I g(J)) >= H(Gin_lex(I) Gin_oplex(J))."""
    config.check(I, J)
    report = _new_report(config)
    D = config.D
    gi, gj = gin_pair(I, J, config)
    ok = gi.valid and gj.valid
    for suite in ("ginbounds-cap", "ginbounds-prod"):
        report.note(name, suite, _gin_note("Gin_lex(I)", gi))
        report.note(name, suite, _gin_note("Gin_oplex(J)", gj))
    cap = intersection_statistic(I, J, config)
    prod = product_statistic(I, J, config)
    _compare(report, name, "ginbounds-cap", cap.values, cap.stable,
             [_h_cap(gi.result, gj.result, d) for d in range(D + 1)], "le", rhs_stable=ok)
    _compare(report, name, "ginbounds-prod", prod.values, prod.stable,
             [_h_prod(gi.result, gj.result, d) for d in range(D + 1)], "ge", rhs_stable=ok)
    return report


def _rows(flat: Sequence, width: int) -> list[list]:
    return [list(flat[k:k + width]) for k in range(0, len(flat), width)]


def _compare_table(report, name, suite, lhs: GeneralValue, rhs_rows, relation, *, rhs_stable=True, expected=None, first_i=0):
    width = len(rhs_rows[0])
    for i, (vals, stab, rhs) in enumerate(zip(_rows(lhs.values, width), _rows(lhs.stable, width), rhs_rows)):
        _compare(report, name, suite, vals, stab, rhs, relation, i=i + first_i, rhs_stable=rhs_stable, expected=expected)


def _mono_ideal(A: MonomialIdeal, ring: Ring) -> Ideal:
    return A.to_ideal(ring)


def verify_tor(
    I: Ideal,
    J: Ideal,
    config: ExperimentConfig,
    name: str = "I,J",
    *,
    parts: Iterable[str] = ("theorem", "conjecture", "vanishing"),
) -> VerificationReport:
    """Tor of a general translate against the gin bound, the lex/oplex conjecture, and eventual vanishing."""
    if config.i_max < 1:
        raise AlgebraError("the Tor suite needs i_max >= 1")
    config.check(I, J)
    parts = set(parts)
    report = _new_report(config)
    ring, D, i_max = I.ring, config.D, config.i_max
    lhs = None
    k = (D + 1) * (i_max + 1)
    if "theorem" in parts:
        # one pass: Tor_i(S/I, S/g(J)) rows, then Tor_i(I, S/g(J)) rows
        hJ = [num_monomials(I.n, d) - hilbert_value(J, d) for d in range(D + 1)]
        both = general_tor(I, J, i_max + 1, D, config.protocol,
                           derive=lambda rows: rows[: i_max + 1] + ideal_module_tor(rows, hJ))
        lhs = GeneralValue(both.values[:k], both.stable[:k], (), both.direction)
        lhs_ideal = GeneralValue(both.values[k:], both.stable[k:], (), both.direction)
        gi, gj = gin_pair(I, J, config)
        report.note(name, "tor-gin", _gin_note("Gin_lex(I)", gi))
        report.note(name, "tor-gin", _gin_note("Gin_oplex(J)", gj))
        GI, GJ = _mono_ideal(gi.result, ring), _mono_ideal(gj.result, ring)
        rows = [list(r) for r in tor_table(GI, GJ, i_max + 1, D).values]
        hGJ = [num_monomials(I.n, d) - hilbert_value(GJ, d) for d in range(D + 1)]
        certified = gi.valid and gj.valid
        _compare_table(report, name, "tor-gin", lhs, rows[: i_max + 1], "le", rhs_stable=certified)
        _compare_table(report, name, "tor-gin-ideal", lhs_ideal, ideal_module_tor(rows, hGJ), "le", rhs_stable=certified)
    elif "conjecture" in parts:
        lhs = general_tor(I, J, i_max, D, config.protocol)
    if "conjecture" in parts:
        hyp = _lex_hypothesis(J, config, report, name, "tor-conj")
        Ilex, Jop = lex_pair(I, J, D)
        rhs = tor_table(_mono_ideal(Ilex, ring), _mono_ideal(Jop, ring), i_max, D)
        _compare_table(report, name, "tor-conj", lhs, rhs.values, "le", expected=_expected(hyp))
    if "vanishing" in parts:
        for i in range(1, i_max + 1):
            d0, d1 = heuristic_window(I, J, i, config.window_width)
            value = general_tor(I, J, i, d1, config.protocol)
            width = d1 + 1
            row = list(value.values[i * width + d0:i * width + d1 + 1])
            stab = list(value.stable[i * width + d0:i * width + d1 + 1])
            report.note(name, "tor-vanish", f"i={i}: window [{d0}, {d1}]")
            _compare(report, name, "tor-vanish", row, stab, [0] * len(row), "le", i=i, degrees=range(d0, d1 + 1))
    return report


def verify_semicontinuity(I: Ideal, J: Ideal, config: ExperimentConfig, name: str = "I,J") -> VerificationReport:
    """Tor_i(S/I, S/g(J))_d <= Tor_i(S/I, S/J)_d, and the same with the ideal I in the first slot."""
    config.check(I, J)
    report = _new_report(config)
    D, i_max = config.D, config.i_max
    plain = tor_table(I, J, i_max + 1, D)
    lhs = general_tor(I, J, i_max + 1, D, config.protocol)
    width = D + 1
    _compare_table(report, name, "semicont", _truncate_rows(lhs, width, i_max + 1), plain.values[: i_max + 1], "le")
    hJ = [num_monomials(I.n, d) - hilbert_value(J, d) for d in range(D + 1)]
    # Tor_i(I, S/J) through Tor_{i+1}(S/I, S/J); the fixed module in the long exact sequence is S/J
    lhs_ideal = general_tor(I, J, i_max + 1, D, config.protocol, derive=lambda rows: ideal_module_tor(rows, hJ))
    rhs_ideal = ideal_module_tor([list(r) for r in plain.values], hJ)
    _compare_table(report, name, "semicont-ideal", lhs_ideal, rhs_ideal, "le")
    return report


def _truncate_rows(value: GeneralValue, width: int, rows: int) -> GeneralValue:
    k = width * rows
    return GeneralValue(value.values[:k], value.stable[:k], tuple(s[:k] for s in value.samples), value.direction)


def default_weight(n: int) -> tuple[int, ...]:
    """A weight with ties, so that in_w is usually not monomial."""
    return tuple(max(0, 2 - k) for k in range(n)) if n > 1 else (1,)


def verify_degeneration(I: Ideal, J: Ideal, config: ExperimentConfig, name: str = "I,J") -> VerificationReport:
    """Tor(M, S/in_w(J)) >= Tor(M, S/D_{λ,w}(J)) for general λ, with M = S/I; and the ideal version Tor(M, in_w(J))."""
    config.check(I, J)
    report = _new_report(config)
    ring, D, i_max = I.ring, config.D, config.i_max
    w = config.weight or default_weight(I.n)
    if len(w) != I.n:
        raise AlgebraError("weight vector has the wrong length")
    inw = weight_initial_forms(J, w, LEX)
    report.note(name, "degen", f"w={list(w)}; in_w(J) = {inw}")
    hM = [num_monomials(I.n, d) - hilbert_value(I, d) for d in range(D + 1)]
    bound = tor_table(I, inw, i_max + 1, D)

    def sample(rng, t):
        lam = random_scalar(rng, ring.field, config.protocol.height, nonzero=True)
        DJ = J.transform(diagonal_coords(lam, w, ring.field))
        rows = [list(r) for r in tor_table(I, DJ, i_max + 1, D, verify=False).values]
        flat = [v for r in rows[: i_max + 1] for v in r]
        flat += [v for r in ideal_module_tor(rows, hM) for v in r]
        return flat

    lhs = general_statistic(sample, config.protocol, Direction.TakeMin, "lambda")
    width = D + 1
    k = width * (i_max + 1)
    quot = GeneralValue(lhs.values[:k], lhs.stable[:k], (), lhs.direction)
    ideal = GeneralValue(lhs.values[k:], lhs.stable[k:], (), lhs.direction)
    rows = [list(r) for r in bound.values]
    _compare_table(report, name, "degen", quot, rows[: i_max + 1], "le")
    _compare_table(report, name, "degen-ideal", ideal, ideal_module_tor(rows, hM), "le")
    return report


# ---------------------------------------------------------------------------
# dispatch

def run_suites(ideals: dict[str, Ideal], config: ExperimentConfig, instance: str = "input") -> VerificationReport:
    """Run the configured suites on a file's ideals: single-ideal suites on I, pair suites on (I, J)."""
    names = list(ideals)
    if not names:
        raise AlgebraError("no ideals to verify")
    I = ideals.get("I", ideals[names[0]])
    J = ideals.get("J", ideals[names[1]] if len(names) > 1 else None)
    report = _new_report(config)
    if config.wants("green"):
        report.extend(verify_green(I, config, instance))
    if config.wants("hpg"):
        for a in config.hpg_degrees:
            if a > 1:
                report.extend(verify_hpg(I, a, config, instance))
        p = config.field.p
        if p and p <= config.D:
            report.extend(verify_hpg(I, p, config, instance, forms="frobenius"))
    if J is None:
        if config.suite in PAIR_SUITES:
            raise AlgebraError("pair suites need two ideals (I and J)")
        return report
    runners: dict[str, Callable] = {
        "intersection": verify_intersection,
        "product": verify_product,
        "ginbounds": verify_gin_bounds,
        "tor": verify_tor,
        "semicontinuity": verify_semicontinuity,
        "degeneration": verify_degeneration,
    }
    for suite, run in runners.items():
        if config.wants(suite):
            if suite == "tor" and config.i_max < 1:
                continue
            report.extend(run(I, J, config, instance))
    return report


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0
