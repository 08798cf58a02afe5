"""Seeded random instances and the fuzzing loop."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Sequence

from .generic import random_form, random_scalar
from .io import dump_ideal_file
from .linalg import hilbert_function
from .monomial import lexify
from .ring import Ideal, Ring, monomials
from .suites import ExperimentConfig, VerificationReport, run_suites

KINDS = ("monomial", "lex", "oplex", "dense", "binomial", "principal")


@dataclass(frozen=True)
class Instance:
    name: str
    kind: str
    ideals: dict[str, Ideal]

    @property
    def I(self) -> Ideal:
        return self.ideals["I"]

    @property
    def J(self) -> Ideal:
        return self.ideals["J"]


def random_monomial_ideal(ring: Ring, rng: random.Random, gens: tuple[int, int] = (1, 4), degrees: tuple[int, int] = (1, 4)) -> Ideal:
    k = rng.randint(*gens)
    chosen = set()
    for _ in range(k):
        d = rng.randint(*degrees)
        chosen.add(rng.choice(monomials(ring.n, d)))
    return Ideal.from_monomials(ring, sorted(chosen))


def random_lex_ideal(ring: Ring, rng: random.Random, D: int, flavor: str = "lex", **kw) -> Ideal:
    """Lex (or opposite lex) ideal sharing the Hilbert function of a random monomial ideal, up to degree D."""
    M = random_monomial_ideal(ring, rng, **kw)
    L = lexify(hilbert_function(M, D).values, ring.n, flavor, D)
    return L.to_ideal(ring)


def random_dense_ideal(ring: Ring, rng: random.Random, gens: tuple[int, int] = (1, 2), degrees: tuple[int, int] = (1, 3), height: int = 5) -> Ideal:
    k = rng.randint(*gens)
    return Ideal(ring, [random_form(ring, rng.randint(*degrees), rng, height) for _ in range(k)])


def random_binomial_ideal(ring: Ring, rng: random.Random, gens: tuple[int, int] = (1, 3), degrees: tuple[int, int] = (2, 3)) -> Ideal:
    out = []
    for _ in range(rng.randint(*gens)):
        d = rng.randint(*degrees)
        u, v = rng.sample(list(monomials(ring.n, d)), 2) if len(monomials(ring.n, d)) > 1 else (monomials(ring.n, d)[0],) * 2
        c = random_scalar(rng, ring.field, 5, nonzero=True)
        out.append(ring.monomial(u) - ring.monomial(v, c))
    return Ideal(ring, out)


def random_principal(ring: Ring, rng: random.Random, degrees: tuple[int, int] = (1, 3), height: int = 10**4) -> Ideal:
    return Ideal(ring, [random_form(ring, rng.randint(*degrees), rng, height)])


def make_ideal(kind: str, ring: Ring, rng: random.Random, D: int) -> Ideal:
    if kind == "monomial":
        return random_monomial_ideal(ring, rng)
    if kind == "lex":
        return random_lex_ideal(ring, rng, D, "lex", degrees=(1, 3))
    if kind == "oplex":
        return random_lex_ideal(ring, rng, D, "oplex", degrees=(1, 3))
    if kind == "dense":
        return random_dense_ideal(ring, rng)
    if kind == "binomial":
        return random_binomial_ideal(ring, rng)
    if kind == "principal":
        return random_principal(ring, rng)
    raise ValueError(f"unknown instance kind {kind!r}")


def corpus(
    config: ExperimentConfig,
    count: int,
    kinds: Sequence[str] = KINDS,
    seed: int | None = None,
    j_kinds: Sequence[str] | None = None,
) -> Iterator[Instance]:
    """Deterministic instance stream; I and J are drawn independently from the listed kinds."""
    seed = config.protocol.seed if seed is None else seed
    ring = config.ring
    j_kinds = kinds if j_kinds is None else j_kinds
    for k in range(count):
        rng = random.Random(f"fuzz/{seed}/{k}")
        ki, kj = rng.choice(list(kinds)), rng.choice(list(j_kinds))
        I = make_ideal(ki, ring, rng, config.D)
        J = make_ideal(kj, ring, rng, config.D)
        yield Instance(f"fz{seed}-{k:04d}-{ki}-{kj}", f"{ki}/{kj}", {"I": I, "J": J})


def dump_instance(inst: Instance, directory, config: ExperimentConfig, reason: str = "") -> Path:
    path = Path(directory) / f"{inst.name}.ideal"
    p = config.protocol
    comments = [
        f"instance {inst.name} ({inst.kind})",
        f"replay: verify --input {path.name} --max-degree {config.D} --imax {config.i_max} "
        f"--trials {p.trials} --seed {p.seed} --height {p.height} --suite {config.suite}",
    ]
    if reason:
        comments.append(reason)
    dump_ideal_file(path, config.field, config.n, inst.ideals, comments)
    return path


def fuzz(
    config: ExperimentConfig,
    count: int,
    kinds: Sequence[str] = KINDS,
    dump_dir=None,
    *,
    j_kinds: Sequence[str] | None = None,
    keep: Callable[[Instance], bool] | None = None,
) -> Iterator[tuple[Instance, VerificationReport]]:
    """Run the configured suites over the corpus; stable violations are dumped for replay."""
    for inst in corpus(config, count, kinds, j_kinds=j_kinds):
        if keep is not None and not keep(inst):
            continue
        report = run_suites(inst.ideals, config, inst.name)
        if dump_dir is not None and report.by_verdict("violation"):
            Path(dump_dir).mkdir(parents=True, exist_ok=True)
            dump_instance(inst, dump_dir, config, "stable violation found")
        yield inst, report
