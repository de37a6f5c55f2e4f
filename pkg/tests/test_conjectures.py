"""Conjecture checkers: verdicts, diagnosis, preconditions, cross-checks."""

import json

import pytest

from mtbsd.conjectures import (
    PreconditionError, SumZeroError, check_conj4_general, check_conj4mul,
    check_conj5mul, check_conj6_general, check_conj_1_1, check_conj_3_1,
    diagnose, mazur_tate_element, qtilde_in_GM,
)
from mtbsd.curves import SPLIT, local_data
from mtbsd.harness.batch import pair_report
from mtbsd.harness.dataset import parse_dataset
from mtbsd.modsym.symbol import plus_symbol
from mtbsd.padic import tate_parameter

ROWS = {
    "11.a2": {"ainvs": [0, -1, 1, -10, -20], "conductor": 11, "rank": 0,
              "sha": 1, "tamagawa": {"11": 5}, "torsion": 5},
    "130.a2": {"ainvs": [1, 0, 1, -33, 68], "conductor": 130, "rank": 1,
               "tamagawa": {"13": 1, "2": 2, "5": 3}, "torsion": 6},
    "142.b1": {"ainvs": [1, -1, 0, -41, -91], "conductor": 142, "rank": 0,
               "sha": 1, "tamagawa": {"2": 1, "71": 2}, "torsion": 2},
}


@pytest.fixture(scope="module")
def curves(tmp_path_factory):
    path = tmp_path_factory.mktemp("ds") / "fixture.jsonl"
    with open(path, "w") as fh:
        for label, row in ROWS.items():
            fh.write(json.dumps(dict(row, label=label)) + "\n")
    out = {}
    for entry in parse_dataset(str(path)):
        record = entry.record()
        out[entry.label] = (record, plus_symbol(record))
    return out


def _pair(curves, label, p):
    record, sym = curves[label]
    qt = qtilde_in_GM(record.model, p, p)
    C_p = local_data(record.model, p).tamagawa_cp
    return record, sym, qt, C_p


# ---------------------------------------------------------------------------
# C1_1 / C3_1

def test_c11_vacuous_when_ring_inverts_group_order(curves):
    # 11.a2, p=11: exponent lambda(0,1)/(2 C_p) = 1/25 puts 1/5 in R, and
    # G_11 has order 5, so S is empty
    record, sym, qt, C_p = _pair(curves, "11.a2", 11)
    v = check_conj_1_1(sym, 11, qt, C_p, record.rank, record.torsion_order)
    assert v.status == "vacuous"
    assert v.S == frozenset()


def test_c11_passes_142b1_at_71(curves):
    record, sym, qt, C_p = _pair(curves, "142.b1", 71)
    v = check_conj_1_1(sym, 71, qt, C_p, record.rank, record.torsion_order)
    assert v.status == "pass"
    assert v.failing_primes == frozenset()
    assert v.S  # genuinely checked, not vacuous


def test_c11_fails_130a2_at_5(curves):
    # a paper-listed counterexample to Conjecture 1
    record, sym, qt, C_p = _pair(curves, "130.a2", 5)
    v = check_conj_1_1(sym, 5, qt, C_p, record.rank, record.torsion_order)
    assert v.status == "fail"
    assert v.failing_primes == frozenset({2})


def test_c31_heals_130a2_at_5(curves):
    # inverting the torsion order 6 removes ell = 2 from S
    record, sym, qt, C_p = _pair(curves, "130.a2", 5)
    v = check_conj_3_1(sym, 5, qt, C_p, record.rank, record.torsion_order)
    assert v.status in ("pass", "vacuous")
    assert not v.failing_primes


# ---------------------------------------------------------------------------
# C4mul / C5mul

def test_c4mul_requires_positive_rank(curves):
    record, sym, qt, C_p = _pair(curves, "11.a2", 11)
    with pytest.raises(PreconditionError):
        check_conj4mul(sym, 11, record.rank)


def test_c4mul_fails_130a2_at_5(curves):
    record, sym, qt, C_p = _pair(curves, "130.a2", 5)
    v = check_conj4mul(sym, 5, record.rank)
    assert v.status == "fail"
    assert v.failing_primes == frozenset({2})


def test_c5mul_requires_rank_zero(curves):
    record, sym, qt, C_p = _pair(curves, "130.a2", 5)
    with pytest.raises(PreconditionError):
        check_conj5mul(sym, 5, qt, record.rank, record.torsion_order,
                       record.tamagawa, 1)


def test_c5mul_passes_142b1_at_71(curves):
    record, sym, qt, C_p = _pair(curves, "142.b1", 71)
    v = check_conj5mul(sym, 71, qt, record.rank, record.torsion_order,
                       record.tamagawa, record.sha_order)
    assert v.status == "pass"


def test_c5mul_skipped_without_sha(curves):
    record, sym, qt, C_p = _pair(curves, "142.b1", 71)
    v = check_conj5mul(sym, 71, qt, record.rank, record.torsion_order,
                       record.tamagawa, None)
    assert v.status == "skipped"


# ---------------------------------------------------------------------------
# general-layer checkers and the prime-layer equivalence

@pytest.mark.parametrize("label,p", [("11.a2", 11), ("142.b1", 71),
                                     ("130.a2", 5), ("130.a2", 13)])
def test_c11_equals_c6gen_at_prime_layer(curves, label, p):
    record, sym, qt, C_p = _pair(curves, label, p)
    v1 = check_conj_1_1(sym, p, qt, C_p, record.rank, record.torsion_order)
    v6 = check_conj6_general(record, sym, p)
    assert v1.status == v6.status
    assert v1.failing_primes == v6.failing_primes


def test_c4gen_nonsplit_prime_rejected(curves):
    record, sym, _, _ = _pair(curves, "11.a2", 11)
    with pytest.raises(PreconditionError):
        check_conj4_general(record, sym, 7)


def test_c4gen_torsion_inverted_never_fails_fixture(curves):
    for label, p in (("11.a2", 11), ("142.b1", 71), ("130.a2", 5)):
        record, sym, _, _ = _pair(curves, label, p)
        v = check_conj4_general(record, sym, p, variant="torsion_inverted")
        assert not v.failing_primes


# ---------------------------------------------------------------------------
# theorem guard, Lemma 2.9, diagnosis

class _BadSym:
    curve_label = "bogus"

    def evaluate(self, a, b):
        return 1  # constant 1: group sum cannot vanish


def test_nonzero_group_sum_is_a_bug_not_a_finding():
    with pytest.raises(SumZeroError):
        check_conj4mul(_BadSym(), 5, rank=1)


def test_tamagawa_equals_tate_valuation(curves):
    for label, (record, _) in curves.items():
        for p in record.tamagawa:
            if local_data(record.model, p).reduction != SPLIT:
                continue
            q = tate_parameter(record.model, p)
            assert q.valuation == record.tamagawa[p]


def test_diagnose_annotates_torsion_divisibility(curves):
    record, sym, qt, C_p = _pair(curves, "130.a2", 5)
    v = diagnose(check_conj_1_1(sym, 5, qt, C_p, record.rank,
                                record.torsion_order), record)
    assert any("divides torsion 6" in n for n in v.notes)


def test_pair_report_verdict_shape(curves):
    record, sym, _, _ = _pair(curves, "142.b1", 71)
    report, line = pair_report(record, 71, sym)
    assert line["label"] == "142.b1" and line["layer"] == 71
    for v in line["verdicts"]:
        assert set(v) >= {"conjecture", "status", "S", "failing", "notes"}
    assert line["inputs"]["C_p"] == 2
    assert line["inputs"]["ord_p_qp"] == 2


def test_mazur_tate_element_symmetry(curves):
    record, sym, _, _ = _pair(curves, "142.b1", 71)
    mt = mazur_tate_element(sym, 71, record.label)
    assert set(mt.theta) == set(range(1, 36))
    # split prime: the group sum vanishes (folded sum is half the full sum)
    assert sum(mt.theta.values()) == 0
