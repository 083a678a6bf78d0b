import pytest
from hypothesis import given
import hypothesis.strategies as st

from brc.attacks import (
    CpaExperiment,
    InconsistentPairsError,
    OperatorMatrix,
    OracleMismatchError,
    ambiguous_family,
    ambiguous_key,
    choose_probe,
    cpa_distinguish,
    format_ambiguity_report,
    format_cpa_report,
    format_kpa_report,
    identity_query_leak,
    known_plaintext_solver,
    operator_matrix,
    run_ambiguity_demo,
    run_cpa_experiment,
    run_kpa_demo,
)
from brc.burnside import (
    IDENTITY,
    ZERO,
    BurnsideElement,
    D,
    KeySet,
    key_coeff,
    key_coeff_fold,
    key_element,
)
from brc.cipher import SupportWindowError
from strategies import key_sets

from math import gcd


# ------------------------------------------------------------ operator matrix


def test_operator_matrix_single_index_key():
    m = operator_matrix(key_element([2]), 2)
    assert m.rows == ((-1, 0), (0, -1))


def test_operator_matrix_identity_key():
    m = operator_matrix(IDENTITY, 4)
    assert m.rows == tuple(
        tuple(1 if i == j else 0 for i in range(4)) for j in range(4)
    )


def test_operator_matrix_composite_key():
    # columns are D(i) * (O2 + 2*D1 - D2 - D3), expanded term by term
    m = operator_matrix(key_element([2, 3]), 3)
    assert m.column(1) == (1, 0, 0)
    assert m.column(2) == (2, -1, 0)
    assert m.column(3) == (2, 0, -1)
    assert m.rows[0][2] == 2
    assert m.rows[2][2] == -1


def test_operator_matrix_diagonal_reads_folded_coeffs():
    s = KeySet([2, 3, 5])
    m = operator_matrix(key_element(s), 12)
    for i, entry in enumerate(m.diagonal(), start=1):
        assert entry == 1 + 2 * key_coeff_fold(s, i)


def test_operator_matrix_rejects_bad_window():
    with pytest.raises(ValueError):
        operator_matrix(IDENTITY, 0)


def test_operator_matrix_shape_validated():
    with pytest.raises(ValueError):
        OperatorMatrix(window=2, rows=((1,),))


# ------------------------------------------------------------- ambiguous keys


def test_ambiguous_key_scales_indices():
    assert ambiguous_key(KeySet([2]), 3, 5) == KeySet([10])
    assert ambiguous_key(KeySet([2, 3]), 5, 7) == KeySet([14, 21])


def test_ambiguous_key_matrices_match():
    base = operator_matrix(key_element([2]), 3)
    twin = operator_matrix(key_element(ambiguous_key(KeySet([2]), 3, 5)), 3)
    assert base == twin


def test_ambiguous_key_rejects_small_prime():
    with pytest.raises(ValueError):
        ambiguous_key(KeySet([2]), 3, 3)


def test_ambiguous_key_rejects_composite():
    with pytest.raises(ValueError):
        ambiguous_key(KeySet([2]), 3, 9)


def test_ambiguous_family_first_primes():
    assert ambiguous_family(KeySet([2]), 3, 2) == [KeySet([10]), KeySet([14])]
    assert ambiguous_family(KeySet([3]), 2, 1) == [KeySet([9])]


def test_ambiguous_family_rejects_zero_count():
    with pytest.raises(ValueError):
        ambiguous_family(KeySet([2]), 3, 0)


def test_ambiguous_family_distinct_and_operator_equal():
    s = KeySet([2, 5])
    window = 6
    family = ambiguous_family(s, window, 4)
    assert len(set(family)) == 4
    base_matrix = operator_matrix(key_element(s), window)
    base_key = key_element(s)
    for twin in family:
        assert twin != s
        assert key_element(twin) != base_key  # full elements differ
        assert operator_matrix(key_element(twin), window) == base_matrix


# ------------------------------------------------------------------ CPA game


def test_choose_probe_examples():
    assert choose_probe(KeySet([2]), KeySet([3])) == 3
    assert choose_probe(KeySet([2, 3]), KeySet([2, 5])) == 5


def test_choose_probe_rejects_equal_sets():
    with pytest.raises(ValueError):
        choose_probe(KeySet([2]), KeySet([2]))


def test_cpa_distinguish_hidden_zero():
    result, experiment = run_cpa_experiment(KeySet([2]), KeySet([3]), hidden_bit=0)
    assert result.probe == 3
    assert result.response == BurnsideElement({D(3): 1, D(1): -2})
    assert result.observed == 1
    assert result.guess == 0
    assert experiment.query_log == [3]


def test_cpa_distinguish_hidden_one():
    result, experiment = run_cpa_experiment(KeySet([2]), KeySet([3]), hidden_bit=1)
    assert result.probe == 3
    assert result.response == BurnsideElement({D(3): -1})
    assert result.observed == -1 == 1 + 2 * key_coeff_fold(KeySet([3]), 3)
    assert result.guess == 1
    assert experiment.queries == 1


def test_cpa_distinguish_overlapping_sets():
    result, _ = run_cpa_experiment(KeySet([2, 3]), KeySet([2]), hidden_bit=0)
    assert result.probe == 3
    assert result.observed == -1 == 1 + 2 * key_coeff_fold(KeySet([2, 3]), 3)
    assert result.guess == 0


def test_cpa_oracle_mismatch_detected():
    with pytest.raises(OracleMismatchError):
        cpa_distinguish(KeySet([2]), KeySet([3]), lambda x: ZERO)


def test_cpa_experiment_validates_inputs():
    with pytest.raises(ValueError):
        CpaExperiment(s0=KeySet([2]), s1=KeySet([2]), hidden_bit=0)
    with pytest.raises(ValueError):
        CpaExperiment(s0=KeySet([2]), s1=KeySet([3]), hidden_bit=2)


def test_cpa_experiment_rejects_bad_probe():
    experiment = CpaExperiment(s0=KeySet([2]), s1=KeySet([3]), hidden_bit=0)
    with pytest.raises(ValueError):
        experiment.query_probe(0)


@given(key_sets(max_size=5, max_index=20), key_sets(max_size=5, max_index=20))
def test_probe_parity_separates_candidates(s0, s1):
    if s0 == s1:
        return
    probe = choose_probe(s0, s1)
    assert (key_coeff_fold(s0, probe) - key_coeff_fold(s1, probe)) % 2 == 1


@given(key_sets(max_size=5, max_index=20), st.integers(1, 20))
def test_oracle_response_identity(s, x):
    response = BurnsideElement({D(x): 1}) * key_element(s)
    expected = BurnsideElement({D(x): 1})
    for n in range(1, s.max_index + 1):
        a = key_coeff(s, n)
        if a:
            expected = expected + BurnsideElement({D(gcd(x, n)): 2 * a})
    assert response == expected
    assert response.coeff(D(x)) == 1 + 2 * key_coeff_fold(s, x)


def test_identity_query_leak():
    guess, response = identity_query_leak(KeySet([2]), KeySet([3]), hidden_bit=1)
    assert guess == 1
    assert response == key_element([3])


# --------------------------------------------------------- known plaintexts


def _probe_pairs(key, window):
    pairs = []
    for i in range(1, window + 1):
        p = BurnsideElement({D(i): 1})
        pairs.append((p, p * key))
    return pairs


def test_solver_recovers_operator_from_probes():
    key = key_element([2, 3])
    result = known_plaintext_solver(_probe_pairs(key, 4), 4)
    assert result.determined
    assert result.rank == 4
    assert result.matrix == operator_matrix(key, 4)


def test_solver_reports_underdetermined():
    key = key_element([2])
    p = BurnsideElement({D(1): 1})
    result = known_plaintext_solver([(p, p * key)], 2)
    assert not result.determined
    assert result.matrix is None
    assert result.rank == 1


def test_solver_detects_inconsistent_pairs():
    key = key_element([2])
    p1 = BurnsideElement({D(1): 1})
    p2 = BurnsideElement({D(2): 1})
    # third pair is linearly dependent but its ciphertext is corrupted
    p3 = p1 + p2
    c3 = (p3 * key) + BurnsideElement({D(1): 1})
    pairs = [(p1, p1 * key), (p2, p2 * key), (p3, c3)]
    with pytest.raises(InconsistentPairsError):
        known_plaintext_solver(pairs, 2)


def test_solver_detects_non_integral_operator():
    # 2*D1 -> D1 forces the matrix entry 1/2
    pairs = [
        (BurnsideElement({D(1): 2}), BurnsideElement({D(1): 1})),
        (BurnsideElement({D(2): 1}), BurnsideElement({D(2): 1})),
    ]
    with pytest.raises(InconsistentPairsError):
        known_plaintext_solver(pairs, 2)


def test_solver_handles_mixed_support_pairs():
    key = key_element([2, 5])
    window = 5
    pairs = []
    vectors = [
        [1, 0, 2, 0, 0],
        [0, 1, 0, 3, 0],
        [0, 0, 1, 0, 4],
        [1, 1, 1, 1, 1],
        [2, 0, 0, 1, 0],
    ]
    for vec in vectors:
        p = BurnsideElement({D(i): v for i, v in enumerate(vec, start=1) if v})
        pairs.append((p, p * key))
    result = known_plaintext_solver(pairs, window)
    assert result.determined
    assert result.matrix == operator_matrix(key, window)


def test_solver_rejects_support_outside_window():
    with pytest.raises(SupportWindowError):
        known_plaintext_solver([(BurnsideElement({D(3): 1}), ZERO)], 2)


# -------------------------------------------------------------- demo drivers


def test_run_ambiguity_demo_succeeds():
    result = run_ambiguity_demo(KeySet([2, 3]), window=5, count=3)
    assert result.all_matrices_equal
    assert result.all_elements_differ
    assert [q for q, _ in result.twins] == [7, 11, 13]
    report = format_ambiguity_report(result)
    assert "{14, 21}" in report and "matrices identical" in report


def test_run_kpa_demo_determined():
    result = run_kpa_demo(KeySet([2, 3]), window=4, n_pairs=6, seed=1)
    assert result.solver.determined
    assert result.matches_true_operator
    assert all(result.twins_match)
    report = format_kpa_report(result)
    assert "rank" in report and "4 / 4" in report


def test_run_kpa_demo_underdetermined():
    result = run_kpa_demo(KeySet([2]), window=8, n_pairs=2, seed=1)
    assert not result.solver.determined
    assert "underdetermined" in format_kpa_report(result)


def test_format_cpa_report_mentions_probe_and_queries():
    result, experiment = run_cpa_experiment(KeySet([2]), KeySet([3]), hidden_bit=1)
    report = format_cpa_report(result, experiment)
    assert "D3" in report
    assert "queries        : 1" in report
    assert "SUCCESS" in report
