"""Cryptanalysis toolkit for the cipher.

Everything an adversary can observe lives in a finite window
W_L = span{D(1), ..., D(L)}: the key acts there as an integer L x L
matrix.  This module recovers that matrix from known plaintexts,
builds prime-scaled key sets that are indistinguishable on any such
window (so passive data never identifies the key set), and runs the
one-query chosen-plaintext experiment that distinguishes any two
candidate key sets with certainty.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .burnside import (
    IDENTITY,
    BurnsideElement,
    D,
    KeySet,
    as_key_set,
    key_coeff_fold,
    key_element,
)
from .cipher import encrypt, ring_decode, ring_encode

__all__ = [
    "OperatorMatrix",
    "operator_matrix",
    "ambiguous_key",
    "ambiguous_family",
    "choose_probe",
    "CpaExperiment",
    "CpaResult",
    "cpa_distinguish",
    "run_cpa_experiment",
    "identity_query_leak",
    "OracleMismatchError",
    "InconsistentPairsError",
    "KpaResult",
    "known_plaintext_solver",
    "AmbiguityResult",
    "run_ambiguity_demo",
    "KpaDemoResult",
    "run_kpa_demo",
    "format_cpa_report",
    "format_ambiguity_report",
    "format_kpa_report",
]


class OracleMismatchError(RuntimeError):
    """Oracle reply matches neither candidate key (protocol violation)."""


class InconsistentPairsError(ValueError):
    """No single integer operator maps the given plaintexts to ciphertexts."""


@dataclass(frozen=True)
class OperatorMatrix:
    """Integer matrix of p -> p*k on the window basis D(1)..D(window).

    rows[j][i] is the coefficient of D(j+1) in the image of D(i+1);
    column i is the ciphertext of the probe D(i+1).
    """

    window: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if len(self.rows) != self.window or any(len(r) != self.window for r in self.rows):
            raise ValueError("matrix shape does not match window")

    def column(self, i: int) -> tuple[int, ...]:
        """Image of the probe D(i) as a coefficient vector (1-based i)."""
        return tuple(row[i - 1] for row in self.rows)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.window))

    def render(self) -> str:
        width = max(len(str(e)) for row in self.rows for e in row)
        return "\n".join(" ".join(f"{e:>{width}}" for e in row) for row in self.rows)


def operator_matrix(key: BurnsideElement, window: int) -> OperatorMatrix:
    """Matrix of multiplication by `key` restricted to the window."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    columns = []
    for i in range(1, window + 1):
        image = BurnsideElement({D(i): 1}) * key
        columns.append(ring_decode(image, window))
    rows = tuple(tuple(columns[i][j] for i in range(window)) for j in range(window))
    return OperatorMatrix(window=window, rows=rows)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def ambiguous_key(s: KeySet | Iterable[int], window: int, q: int) -> KeySet:
    """Scale every index by a prime q > window.

    gcd(i, q*n) = gcd(i, n) for every i <= window, so the scaled key
    acts identically on W_window while being a different key set.
    """
    s = as_key_set(s)
    if not _is_prime(q):
        raise ValueError(f"scale factor {q} is not prime")
    if q <= window:
        raise ValueError(f"scale prime {q} must exceed the window {window}")
    return KeySet(q * i for i in s)


def ambiguous_family(s: KeySet | Iterable[int], window: int, count: int) -> list[KeySet]:
    """The first `count` prime-scaled twins of `s` above the window."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    s = as_key_set(s)
    twins = []
    q = window + 1
    while len(twins) < count:
        if _is_prime(q):
            twins.append(KeySet(q * i for i in s))
        q += 1
    return twins


def choose_probe(s0: KeySet | Iterable[int], s1: KeySet | Iterable[int]) -> int:
    """Largest index on which the candidate key sets disagree.

    At that index the folded key coefficients of the two candidates
    have different parity, so one encrypted probe separates them.
    """
    s0, s1 = as_key_set(s0), as_key_set(s1)
    diff = set(s0.indices) ^ set(s1.indices)
    if not diff:
        raise ValueError("candidate key sets are identical")
    return max(diff)


@dataclass
class CpaExperiment:
    """Key-distinguishing game: candidates, a hidden bit, a probe oracle.

    The oracle answers only dihedral probes (queries of the identity
    class would hand over the key element wholesale; see
    identity_query_leak for that demonstration).
    """

    s0: KeySet
    s1: KeySet
    hidden_bit: int
    query_log: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.s0 = as_key_set(self.s0)
        self.s1 = as_key_set(self.s1)
        if self.s0 == self.s1:
            raise ValueError("candidate key sets are identical")
        if self.hidden_bit not in (0, 1):
            raise ValueError(f"hidden bit must be 0 or 1, got {self.hidden_bit}")

    @property
    def hidden_set(self) -> KeySet:
        return self.s1 if self.hidden_bit else self.s0

    def query_probe(self, x: int) -> BurnsideElement:
        """Encrypt the probe D(x) under the hidden key."""
        if x < 1:
            raise ValueError(f"probe index must be >= 1, got {x}")
        self.query_log.append(x)
        return BurnsideElement({D(x): 1}) * key_element(self.hidden_set)

    @property
    def queries(self) -> int:
        return len(self.query_log)


@dataclass(frozen=True)
class CpaResult:
    """Outcome of the one-probe distinguisher."""

    probe: int
    response: BurnsideElement
    observed: int
    expected0: int
    expected1: int
    guess: int


def cpa_distinguish(
    s0: KeySet | Iterable[int],
    s1: KeySet | Iterable[int],
    oracle: Callable[[int], BurnsideElement],
) -> CpaResult:
    """Identify the hidden key with a single chosen-plaintext query.

    Probes at the largest index where the candidates disagree; the
    probe's own coefficient in the reply equals 1 + 2*fold for the
    hidden candidate, and the two folds differ in parity.
    """
    s0, s1 = as_key_set(s0), as_key_set(s1)
    probe = choose_probe(s0, s1)
    response = oracle(probe)
    observed = response.coeff(D(probe))
    expected0 = 1 + 2 * key_coeff_fold(s0, probe)
    expected1 = 1 + 2 * key_coeff_fold(s1, probe)
    if observed == expected0:
        guess = 0
    elif observed == expected1:
        guess = 1
    else:
        raise OracleMismatchError(
            f"probe D{probe} reply coefficient {observed} matches neither "
            f"candidate ({expected0} / {expected1})"
        )
    return CpaResult(
        probe=probe,
        response=response,
        observed=observed,
        expected0=expected0,
        expected1=expected1,
        guess=guess,
    )


def run_cpa_experiment(
    s0: KeySet | Iterable[int], s1: KeySet | Iterable[int], hidden_bit: int
) -> tuple[CpaResult, CpaExperiment]:
    """Play one full game in-process and return result plus query log."""
    experiment = CpaExperiment(s0=as_key_set(s0), s1=as_key_set(s1), hidden_bit=hidden_bit)
    result = cpa_distinguish(experiment.s0, experiment.s1, experiment.query_probe)
    return result, experiment


def identity_query_leak(
    s0: KeySet | Iterable[int], s1: KeySet | Iterable[int], hidden_bit: int
) -> tuple[int, BurnsideElement]:
    """Trivial distinguisher when identity-class queries are admissible.

    Encrypting the identity element returns the key element itself, so
    one unrestricted query reveals the hidden bit.  Kept separate from
    the headline attack, which works under the dihedral restriction.
    """
    s0, s1 = as_key_set(s0), as_key_set(s1)
    if s0 == s1:
        raise ValueError("candidate key sets are identical")
    if hidden_bit not in (0, 1):
        raise ValueError(f"hidden bit must be 0 or 1, got {hidden_bit}")
    # The single query is the identity class itself; the oracle reply is
    # IDENTITY * k = k, the hidden key element in the clear.
    response = IDENTITY * key_element(s1 if hidden_bit else s0)
    if response == key_element(s0):
        return 0, response
    if response == key_element(s1):
        return 1, response
    raise OracleMismatchError("identity-query reply matches neither candidate key")


@dataclass(frozen=True)
class KpaResult:
    """Outcome of the known-plaintext operator solve."""

    window: int
    pairs_used: int
    rank: int
    matrix: OperatorMatrix | None

    @property
    def determined(self) -> bool:
        return self.matrix is not None


def known_plaintext_solver(
    pairs: Sequence[tuple[BurnsideElement, BurnsideElement]], window: int
) -> KpaResult:
    """Solve for the window operator from plaintext/ciphertext pairs.

    Exact rational elimination with an integrality check on the result.
    Returns an undetermined result (matrix None) when the plaintexts do
    not span the window; raises InconsistentPairsError when no single
    integer operator explains the pairs.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if not pairs:
        raise ValueError("at least one plaintext/ciphertext pair is required")
    # Augmented system [P | C]: row j is (plaintext_j, ciphertext_j).
    matrix: list[list[Fraction]] = []
    for p, c in pairs:
        p_vec = ring_decode(p, window)
        c_vec = ring_decode(c, window)
        matrix.append([Fraction(v) for v in p_vec + c_vec])

    n_rows = len(matrix)
    pivot_cols: list[int] = []
    row = 0
    for col in range(window):
        pivot = next((r for r in range(row, n_rows) if matrix[r][col]), None)
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        lead = matrix[row][col]
        matrix[row] = [v / lead for v in matrix[row]]
        for r in range(n_rows):
            if r != row and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[row])]
        pivot_cols.append(col)
        row += 1
        if row == n_rows:
            break

    # A zeroed plaintext part with surviving ciphertext part has no solution.
    for r in range(row, n_rows):
        if not any(matrix[r][:window]) and any(matrix[r][window:]):
            raise InconsistentPairsError(
                "pairs are not generated by any single linear operator"
            )

    rank = len(pivot_cols)
    if rank < window:
        return KpaResult(window=window, pairs_used=n_rows, rank=rank, matrix=None)

    # Full rank: the reduced system reads off M row by row.  Row r of the
    # eliminated matrix solves P*x = C[:, t] componentwise: x[col] for
    # pivot column col is the entry in rhs column t.
    entries: list[list[int]] = [[0] * window for _ in range(window)]
    for r, col in enumerate(pivot_cols):
        for t in range(window):
            value = matrix[r][window + t]
            if value.denominator != 1:
                raise InconsistentPairsError(
                    "recovered operator is not integral; pairs are not "
                    "generated by an integer operator"
                )
            # value is entry (t, col) of M: output coordinate t, input col.
            entries[t][col] = int(value)
    rows = tuple(tuple(r) for r in entries)
    return KpaResult(
        window=window,
        pairs_used=n_rows,
        rank=rank,
        matrix=OperatorMatrix(window=window, rows=rows),
    )


@dataclass(frozen=True)
class AmbiguityResult:
    """Prime-scaled twins and their window-operator comparison."""

    base: KeySet
    window: int
    base_matrix: OperatorMatrix
    twins: tuple[tuple[int, KeySet], ...]
    matrices_equal: tuple[bool, ...]
    elements_differ: tuple[bool, ...]

    @property
    def all_matrices_equal(self) -> bool:
        return all(self.matrices_equal)

    @property
    def all_elements_differ(self) -> bool:
        return all(self.elements_differ)


def run_ambiguity_demo(
    s: KeySet | Iterable[int], window: int, count: int
) -> AmbiguityResult:
    """Exhibit `count` distinct key sets acting identically on the window."""
    s = as_key_set(s)
    base_key = key_element(s)
    base_matrix = operator_matrix(base_key, window)
    twins: list[tuple[int, KeySet]] = []
    matrices_equal: list[bool] = []
    elements_differ: list[bool] = []
    for twin in ambiguous_family(s, window, count):
        q = twin.indices[0] // s.indices[0]
        twin_key = key_element(twin)
        twins.append((q, twin))
        matrices_equal.append(operator_matrix(twin_key, window) == base_matrix)
        elements_differ.append(twin_key != base_key)
    return AmbiguityResult(
        base=s,
        window=window,
        base_matrix=base_matrix,
        twins=tuple(twins),
        matrices_equal=tuple(matrices_equal),
        elements_differ=tuple(elements_differ),
    )


@dataclass(frozen=True)
class KpaDemoResult:
    """Seeded known-plaintext run against a hidden key."""

    key_set: KeySet
    window: int
    seed: int
    solver: KpaResult
    matches_true_operator: bool | None
    twins: tuple[KeySet, ...]
    twins_match: tuple[bool, ...]


def run_kpa_demo(
    key_set: KeySet | Iterable[int],
    window: int,
    n_pairs: int,
    seed: int = 0,
    twin_count: int = 3,
) -> KpaDemoResult:
    """Generate seeded random pairs, solve, and show key non-identifiability.

    Even when the operator is fully recovered, the prime-scaled twins
    produce the very same matrix, so the key set remains open.
    """
    key_set = as_key_set(key_set)
    if n_pairs < 1:
        raise ValueError(f"need at least one pair, got {n_pairs}")
    rng = random.Random(seed)
    key = key_element(key_set)
    pairs = []
    for _ in range(n_pairs):
        values = [rng.randint(0, 127) for _ in range(window)]
        plain = ring_encode(values) if any(values) else BurnsideElement({D(1): 1})
        pairs.append((plain, encrypt(plain, window, key).element))
    solver = known_plaintext_solver(pairs, window)
    true_matrix = operator_matrix(key, window)
    matches = solver.matrix == true_matrix if solver.determined else None
    twins = tuple(ambiguous_family(key_set, window, twin_count))
    twins_match = tuple(
        operator_matrix(key_element(t), window) == true_matrix for t in twins
    )
    return KpaDemoResult(
        key_set=key_set,
        window=window,
        seed=seed,
        solver=solver,
        matches_true_operator=matches,
        twins=twins,
        twins_match=twins_match,
    )


def _indent(text: str, pad: str = "    ") -> str:
    return "\n".join(pad + line for line in text.splitlines())


def format_cpa_report(result: CpaResult, experiment: CpaExperiment) -> str:
    """Structured text report of one distinguishing game."""
    success = result.guess == experiment.hidden_bit
    lines = [
        "CPA key-distinguishing attack",
        f"candidates     : S0 = {experiment.s0}, S1 = {experiment.s1}",
        f"chosen probe   : D{result.probe}",
        "oracle response:",
        _indent(result.response.render()),
        f"probe coefficient observed {result.observed}; "
        f"expected {result.expected0} for S0, {result.expected1} for S1",
        f"decision       : {result.guess}",
        f"queries        : {experiment.queries}",
        f"hidden bit     : {experiment.hidden_bit}",
        f"outcome        : {'SUCCESS' if success else 'FAILURE'}",
    ]
    return "\n".join(lines)


def format_ambiguity_report(result: AmbiguityResult) -> str:
    lines = [
        f"Key ambiguity on the window W_{result.window}",
        f"base key set   : {result.base}",
    ]
    for (q, twin), m_eq, e_diff in zip(
        result.twins, result.matrices_equal, result.elements_differ
    ):
        lines.append(
            f"twin q={q:<6}: {twin}  matrix equal: {'yes' if m_eq else 'NO'}  "
            f"key element differs: {'yes' if e_diff else 'NO'}"
        )
    lines.append("operator matrix on the window:")
    lines.append(_indent(result.base_matrix.render()))
    verdict = (
        "matrices identical; key set not identifiable from this window"
        if result.all_matrices_equal and result.all_elements_differ
        else "demonstration FAILED"
    )
    lines.append(f"conclusion     : {verdict}")
    return "\n".join(lines)


def format_kpa_report(result: KpaDemoResult) -> str:
    lines = [
        f"Known-plaintext attack on the window W_{result.window}",
        f"hidden key set : {result.key_set}",
        f"seed           : {result.seed}",
        f"pairs used     : {result.solver.pairs_used}",
        f"system rank    : {result.solver.rank} / {result.window}",
    ]
    if result.solver.determined:
        lines.append("operator fully determined: yes")
        lines.append(
            f"matches hidden key's operator: "
            f"{'yes' if result.matches_true_operator else 'NO'}"
        )
        assert result.solver.matrix is not None
        lines.append("recovered matrix:")
        lines.append(_indent(result.solver.matrix.render()))
    else:
        lines.append("operator fully determined: no (underdetermined system)")
    twin_bits = ", ".join(
        f"{t} ({'same' if ok else 'DIFFERENT'} matrix)"
        for t, ok in zip(result.twins, result.twins_match)
    )
    lines.append(f"scaled twins   : {twin_bits}")
    lines.append(
        "conclusion     : recovering the operator does not identify the key set"
    )
    return "\n".join(lines)
