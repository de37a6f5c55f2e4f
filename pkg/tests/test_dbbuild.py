"""Database build pipeline: newform search, recovery, labels, generation."""

import json

import pytest

from mtbsd.curves import compute_invariants
from mtbsd.dbbuild import generate as genmod
from mtbsd.dbbuild.build import (
    build_level, class_letter, oldform_systems,
)
from mtbsd.dbbuild.newforms import ap_batch, rational_newforms, table_ap
from mtbsd.dbbuild.recover import (
    _bad_ap, _c6_candidates, _prime_tuple, _smooth_sorted,
)
from mtbsd.modsym.space import build_space


@pytest.fixture(scope="module")
def spaces():
    return {N: build_space(N, plus=True) for N in (11, 37, 57)}


# ---------------------------------------------------------------------------
# newform search

def test_newform_counts(spaces):
    assert len(rational_newforms(spaces[11])) == 1
    assert len(rational_newforms(spaces[37])) == 2
    assert len(rational_newforms(spaces[57])) == 3


def test_ap_batch_agrees_with_table_ap(spaces):
    space = spaces[57]
    for t in rational_newforms(space):
        ells = [ell for ell in (2, 5, 7, 11, 13, 17, 23, 29, 31, 37, 41)
                if 57 % ell]
        batch = ap_batch(space, t, ells)
        for ell in ells:
            assert batch[ell] == table_ap(space, t, ell)


def test_bad_prime_eigenvalue_is_sign(spaces):
    space = spaces[11]
    t = rational_newforms(space)[0]
    assert _bad_ap(space, t, 11) in (-1, 1)


def test_oldform_pruning_is_transparent(spaces):
    # level 33 = 3 * 11: pruning the level-11 oldform changes nothing
    a = [r.to_dict() for r in build_level(33)]
    olds = oldform_systems(33, {11: [compute_invariants(0, -1, 1, -10, -20)]})
    b = [r.to_dict() for r in build_level(33, oldforms=olds)]
    assert a == b and len(a) > 0


# ---------------------------------------------------------------------------
# exact c6 reconstruction

def test_smooth_sorted_is_complete_and_sorted():
    vals = _smooth_sorted((2, 3), 6)  # <= 64
    assert vals == sorted(vals)
    expect = sorted(2 ** a * 3 ** b for a in range(7) for b in range(5)
                    if 2 ** a * 3 ** b <= 64)
    assert vals == expect


def test_prime_tuple():
    assert _prime_tuple(1890) == (2, 3, 5, 7)
    assert _prime_tuple(11) == (11,)


def test_c6_candidates_recover_exact_c6_despite_float_error():
    # a large-c6 minimal model of conductor 1890; perturb the float by a few
    # hundred (well past naive rounding) and the smooth-discriminant scan
    # must still produce the true integer
    model = compute_invariants(1, -1, 1, -217838, 39212317)
    c4, c6 = model.c4, model.c6
    for err in (0.0, 137.0, -481.0):
        cands = _c6_candidates(c4, float(c6) + err, (2, 3, 5, 7))
        assert c6 in cands


def test_c6_candidates_reject_oversize_float():
    assert _c6_candidates(12, 1e15, (2, 3)) == []


# ---------------------------------------------------------------------------
# per-level assembly

def test_class_letters():
    assert [class_letter(i) for i in (0, 1, 25, 26, 27)] == \
        ["a", "b", "z", "ba", "bb"]


def test_build_level_11_full_records():
    recs = [r.to_dict() for r in build_level(11)]
    assert [r["label"] for r in recs] == ["11.a1", "11.a2", "11.a3"]
    by_label = {r["label"]: r for r in recs}
    assert by_label["11.a2"]["ainvs"] == [0, -1, 1, -10, -20]
    assert by_label["11.a2"]["torsion"] == 5
    assert by_label["11.a2"]["tamagawa"] == {"11": 5}
    assert all(r["rank"] == 0 and r["sha"] == 1 for r in recs)


def test_build_level_37_ranks():
    recs = build_level(37)
    assert [r.label for r in recs] == ["37.a1", "37.b1", "37.b2", "37.b3"]
    assert recs[0].rank == 1 and recs[0].sha_order is None
    assert all(r.rank == 0 and r.sha_order == 1 for r in recs[1:])


def test_oldform_multiplicity_is_divisor_count():
    reps = {11: [compute_invariants(0, -1, 1, -10, -20)]}
    (aps, mult), = oldform_systems(66, reps)  # 66/11 = 6 has 4 divisors
    assert mult == 4
    assert aps[7] == -2  # a_7 of the level-11 newform
    assert all(66 % ell for ell in aps)


# ---------------------------------------------------------------------------
# generation driver

def test_generate_appends_and_resumes(tmp_path):
    out = str(tmp_path / "db.jsonl")
    progress = genmod.generate([11, 12, 14], out)
    assert progress["done"] == [11, 12, 14] and not progress["failed"]
    first = open(out).read()
    assert len(first.splitlines()) == 9  # 3 curves at 11, 0 at 12, 6 at 14
    # resume is a no-op and appends nothing
    progress = genmod.generate([11, 12, 14], out)
    assert open(out).read() == first


def test_generate_records_failures_and_continues(tmp_path, monkeypatch):
    orig = genmod.build_level

    def flaky(N, **kw):
        if N == 12:
            raise RuntimeError("boom")
        return orig(N, **kw)

    monkeypatch.setattr(genmod, "build_level", flaky)
    out = str(tmp_path / "db.jsonl")
    progress = genmod.generate([11, 12], out)
    assert progress["done"] == [11]
    assert "12" in progress["failed"]
    # after the failure is fixed, a rerun completes the missing level
    monkeypatch.setattr(genmod, "build_level", orig)
    progress = genmod.generate([11, 12], out)
    assert progress["done"] == [11, 12] and not progress["failed"]


def test_load_class_reps_takes_first_of_each_class(tmp_path):
    out = tmp_path / "db.jsonl"
    rows = [
        {"label": "11.a1", "conductor": 11, "ainvs": [0, -1, 1, -7820, -263580]},
        {"label": "11.a2", "conductor": 11, "ainvs": [0, -1, 1, -10, -20]},
        {"label": "26.b1", "conductor": 26, "ainvs": [1, -1, 1, -3, 3]},
    ]
    out.write_text("".join(json.dumps(r) + "\n" for r in rows))
    reps = genmod._load_class_reps(str(out))
    assert sorted(reps) == [11, 26]
    assert len(reps[11]) == 1 and reps[11][0].ainvs == (0, -1, 1, -7820, -263580)
