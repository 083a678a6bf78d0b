"""Named oracle-equivalence suites behind the CLI `verify` subcommand.

Each suite replays one family of ring identities over a bounded range
and reports case/failure counts plus the first counterexample, so a
failure pinpoints which piece of machinery (multiplication rules,
lattice fixture, closed-form coefficients, fixed-point recurrence)
has drifted.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Callable, Iterator

from .burnside import (
    IDENTITY,
    O2,
    SO2,
    BurnsideElement,
    D,
    Generator,
    KeySet,
    basic_degree,
    key_coeff,
    key_coeff_bruteforce,
    key_element,
)
from .degree import basic_degree_recurrence, fixed_point_dims, o2_lattice, recurrence_mul

__all__ = [
    "SuiteResult",
    "verify_table",
    "verify_recurrence",
    "verify_involution",
    "verify_prop_coeff",
    "verify_basic_degree",
    "SUITES",
    "run_suite",
]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    failures: int
    first_failure: str | None
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        state = "PASS" if self.ok else "FAIL"
        line = f"{self.name:<12} {state}  cases={self.cases} failures={self.failures} ({self.elapsed:.2f}s)"
        if self.first_failure:
            line += f"\n    first counterexample: {self.first_failure}"
        return line


def _run(name: str, cases: Iterator[tuple[bool, Callable[[], str]]]) -> SuiteResult:
    start = time.perf_counter()
    total = 0
    failures = 0
    first: str | None = None
    for ok, describe in cases:
        total += 1
        if not ok:
            failures += 1
            if first is None:
                first = describe()
    return SuiteResult(
        name=name,
        cases=total,
        failures=failures,
        first_failure=first,
        elapsed=time.perf_counter() - start,
    )


def _generators(max_index: int) -> list[Generator]:
    return [D(k) for k in range(1, max_index + 1)] + [SO2, O2]


def _expected_product(g: Generator, h: Generator) -> BurnsideElement:
    # Literal multiplication-table entry for a pair of basis classes.
    if g == O2:
        return BurnsideElement({h: 1})
    if h == O2:
        return BurnsideElement({g: 1})
    if g == SO2 and h == SO2:
        return BurnsideElement({SO2: 2})
    if g == SO2 or h == SO2:
        return BurnsideElement({})
    return BurnsideElement({D(gcd(g.index, h.index)): 2})


def verify_table(max_index: int = 24) -> SuiteResult:
    """Ring product against the literal table entry, all basis pairs."""

    def cases() -> Iterator[tuple[bool, Callable[[], str]]]:
        gens = _generators(max_index)
        for g in gens:
            for h in gens:
                got = BurnsideElement({g: 1}) * BurnsideElement({h: 1})
                want = _expected_product(g, h)
                yield got == want, (
                    lambda g=g, h=h, got=got, want=want: f"{g.label}*{h.label}: got {got}, want {want}"
                )

    return _run("table", cases())


def verify_recurrence(max_index: int = 24) -> SuiteResult:
    """Lattice-recurrence product against the direct product."""

    def cases() -> Iterator[tuple[bool, Callable[[], str]]]:
        lattice = o2_lattice(max_index)
        gens = _generators(max_index)
        for g in gens:
            for h in gens:
                direct = BurnsideElement({g: 1}) * BurnsideElement({h: 1})
                recur = recurrence_mul(g, h, lattice)
                yield direct == recur, (
                    lambda g=g, h=h, direct=direct, recur=recur: (
                        f"{g.label}*{h.label}: direct {direct}, recurrence {recur}"
                    )
                )

    return _run("recurrence", cases())


def _random_key_set(rng: random.Random, max_size: int, max_index: int) -> KeySet:
    size = rng.randint(1, max_size)
    return KeySet(rng.sample(range(1, max_index + 1), size))


def verify_involution(
    exhaustive_index: int = 12,
    exhaustive_size: int = 3,
    trials: int = 1000,
    trial_size: int = 8,
    trial_index: int = 100,
    seed: int = 0,
) -> SuiteResult:
    """key * key == identity, exhaustively small plus random large."""

    def cases() -> Iterator[tuple[bool, Callable[[], str]]]:
        for size in range(1, exhaustive_size + 1):
            for combo in combinations(range(1, exhaustive_index + 1), size):
                k = key_element(combo)
                yield k * k == IDENTITY, (
                    lambda combo=combo: f"S={set(combo)}: square is not the identity"
                )
        rng = random.Random(seed)
        for _ in range(trials):
            s = _random_key_set(rng, trial_size, trial_index)
            k = key_element(s)
            yield k * k == IDENTITY, (lambda s=s: f"S={s}: square is not the identity")

    return _run("involution", cases())


def verify_prop_coeff(
    trials: int = 500, max_size: int = 8, max_index: int = 60, seed: int = 0
) -> SuiteResult:
    """Closed-form coefficient == brute-force expansion == element lookup."""

    def cases() -> Iterator[tuple[bool, Callable[[], str]]]:
        rng = random.Random(seed)
        for trial in range(trials):
            s = _random_key_set(rng, max_size, max_index)
            # Alternate arbitrary indices with members of S so the odd
            # (membership) branch is exercised as often as the even one.
            if trial % 2:
                s0 = rng.choice(s.indices)
            else:
                s0 = rng.randint(1, max_index)
            closed = key_coeff(s, s0)
            brute = key_coeff_bruteforce(s, s0)
            element = key_element(s).coeff(D(s0))
            yield closed == brute == element, (
                lambda s=s, s0=s0, closed=closed, brute=brute, element=element: (
                    f"S={s}, s0={s0}: closed {closed}, brute {brute}, element {element}"
                )
            )

    return _run("prop-coeff", cases())


def verify_basic_degree(max_irrep: int = 50) -> SuiteResult:
    """Fixed-point recurrence against the closed basic degree, m <= bound.

    Checks full equality and, separately, that the recurrence leaves no
    residue at proper divisors of m.
    """

    def cases() -> Iterator[tuple[bool, Callable[[], str]]]:
        lattice = o2_lattice(max_irrep)
        dims = fixed_point_dims(max_irrep, max_irrep)
        for m in range(0, max_irrep + 1):
            got = basic_degree_recurrence(m, lattice, dims)
            want = basic_degree(m)
            yield got == want, (
                lambda m=m, got=got, want=want: f"m={m}: recurrence {got}, direct {want}"
            )
            for k in range(1, m):
                if m % k == 0:
                    coeff = got.coeff(D(k))
                    yield coeff == 0, (
                        lambda m=m, k=k, coeff=coeff: (
                            f"m={m}: nonzero coefficient {coeff} at proper divisor D{k}"
                        )
                    )

    return _run("rf1", cases())


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "table": verify_table,
    "recurrence": verify_recurrence,
    "involution": verify_involution,
    "prop-coeff": verify_prop_coeff,
    "rf1": verify_basic_degree,
}


def run_suite(name: str, **options) -> list[SuiteResult]:
    """Run one named suite, or every suite for name == 'all'."""
    if name == "all":
        return [run_suite(single, **options)[0] for single in SUITES]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    suite = SUITES[name]
    kwargs = {}
    if name in ("table", "recurrence") and options.get("max_index"):
        kwargs["max_index"] = options["max_index"]
    if name == "involution":
        if options.get("trials"):
            kwargs["trials"] = options["trials"]
        kwargs["seed"] = options.get("seed", 0)
    if name == "prop-coeff":
        if options.get("trials"):
            kwargs["trials"] = options["trials"]
        kwargs["seed"] = options.get("seed", 0)
    if name == "rf1" and options.get("max_irrep"):
        kwargs["max_irrep"] = options["max_irrep"]
    return [suite(**kwargs)]
