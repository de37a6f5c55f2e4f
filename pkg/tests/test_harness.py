"""Dataset parsing, batch reports, resume, and CLI plumbing."""

import json
import os

import pytest

from mtbsd.harness import (
    DatasetError, RunConfig, dataset_digest, enumerate_pairs, parse_dataset,
    read_report, run_batch, select_entries, split_primes, summarize,
    validate_entry, write_report,
)
from mtbsd.harness.cli import main as cli_main

GOOD_LINE = ('{"label": "11.a2", "ainvs": [0, -1, 1, -10, -20], '
             '"conductor": 11, "rank": 0, "torsion": 5, "sha": 1, '
             '"tamagawa": {"11": 5}}')


def _write(tmp_path, text, name="data.jsonl"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# ---------------------------------------------------------------------------
# parsing

def test_parse_good_line(tmp_path):
    entries = parse_dataset(_write(tmp_path, GOOD_LINE + "\n"))
    assert len(entries) == 1
    e = entries[0]
    assert e.label == "11.a2"
    assert e.conductor == 11 and e.torsion_order == 5 and e.sha_order == 1
    validate_entry(e)


def test_parse_skips_comments_and_blanks(tmp_path):
    text = "# header\n\n" + GOOD_LINE + "\n\n"
    assert len(parse_dataset(_write(tmp_path, text))) == 1


def test_parse_reports_line_numbers(tmp_path):
    path = _write(tmp_path, GOOD_LINE + "\nnot json\n")
    with pytest.raises(DatasetError) as err:
        parse_dataset(path)
    assert ":2" in str(err.value)


def test_parse_missing_field(tmp_path):
    bad = json.dumps({"label": "x.a1", "ainvs": [0, 0, 0, 0, 1]})
    with pytest.raises(DatasetError):
        parse_dataset(_write(tmp_path, bad + "\n"))


def test_parse_duplicate_label(tmp_path):
    with pytest.raises(DatasetError) as err:
        parse_dataset(_write(tmp_path, GOOD_LINE + "\n" + GOOD_LINE + "\n"))
    assert "duplicate" in str(err.value)


def test_validate_entry_wrong_conductor(tmp_path):
    line = GOOD_LINE.replace('"conductor": 11', '"conductor": 15')
    entry = parse_dataset(_write(tmp_path, line + "\n"))[0]
    with pytest.raises(DatasetError):
        validate_entry(entry)


def test_split_primes_and_pairs(tmp_path):
    entry = parse_dataset(_write(tmp_path, GOOD_LINE + "\n"))[0]
    assert split_primes(entry) == [11]
    assert [p for _, p in enumerate_pairs(entry)] == [11]


# ---------------------------------------------------------------------------
# batch

@pytest.fixture(scope="module")
def small_entries(tmp_path_factory):
    path = tmp_path_factory.mktemp("ds") / "small.jsonl"
    path.write_text(GOOD_LINE + "\n")
    return parse_dataset(str(path))


def test_run_batch_deterministic(small_entries):
    config = RunConfig(max_conductor=20)
    lines1, summary1 = run_batch(config, small_entries)
    lines2, summary2 = run_batch(config, small_entries)
    assert lines1 == lines2
    assert summary1 == summary2
    assert summary1["errors"] == 0
    assert summary1["pairs"] == 1


def test_run_batch_resume_skips_done(small_entries):
    config = RunConfig(max_conductor=20)
    lines, _ = run_batch(config, small_entries)
    done = {(l["label"], l["layer"]) for l in lines}
    rest, _ = run_batch(config, small_entries, done=done)
    assert rest == []


def test_select_entries_include_labels(small_entries):
    config = RunConfig(max_conductor=5, include_labels=("11.a2",))
    assert [e.label for e in select_entries(small_entries, config)] == ["11.a2"]
    config = RunConfig(max_conductor=5)
    assert select_entries(small_entries, config) == []


def test_digest_changes_with_config(small_entries):
    d1 = dataset_digest(small_entries, RunConfig(max_conductor=20))
    d2 = dataset_digest(small_entries, RunConfig(max_conductor=30))
    assert d1 != d2


def test_report_roundtrip(tmp_path, small_entries):
    config = RunConfig(max_conductor=20)
    lines, summary = run_batch(config, small_entries)
    path = str(tmp_path / "report.jsonl")
    write_report(lines, path, summary=summary, token="tok123")
    meta, lines2, summary2 = read_report(path)
    assert meta == {"resume_token": "tok123"}
    assert lines2 == json.loads(json.dumps(lines))
    assert summary2 == summary


def test_summarize_counts_errors():
    lines = [{"label": "x", "layer": 2, "conductor": 5, "error": "boom"}]
    s = summarize(lines)
    assert s == {"pairs": 1, "errors": 1, "conjectures": {}}


# ---------------------------------------------------------------------------
# CLI

def test_cli_verify_and_exit_codes(tmp_path, capsys):
    ds = _write(tmp_path, GOOD_LINE + "\n")
    rc = cli_main(["--dataset", ds, "verify", "--curve", "11.a2",
                   "--prime", "11", "--conjecture", "c11"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["conjecture"] == "C1_1"
    assert out["status"] in ("pass", "fail", "vacuous")


def test_cli_unknown_label_is_operational_error(tmp_path, capsys):
    ds = _write(tmp_path, GOOD_LINE + "\n")
    rc = cli_main(["--dataset", ds, "verify", "--curve", "999.z9",
                   "--prime", "7", "--conjecture", "c11"])
    assert rc == 2


def test_cli_nonsplit_prime_is_operational_error(tmp_path):
    ds = _write(tmp_path, GOOD_LINE + "\n")
    rc = cli_main(["--dataset", ds, "verify", "--curve", "11.a2",
                   "--prime", "7", "--conjecture", "c11"])
    assert rc == 2


def test_cli_modsym_table(tmp_path, capsys):
    ds = _write(tmp_path, GOOD_LINE + "\n")
    rc = cli_main(["--dataset", ds, "modsym", "--curve", "11.a2",
                   "--layer", "11"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lambda"]["2"] == "2"
    total = sum(2 * eval_frac(v) for v in out["lambda"].values())
    assert total == 0  # split prime: group sum vanishes


def eval_frac(s):
    from fractions import Fraction
    return Fraction(s)


def test_cli_tate_q(tmp_path, capsys):
    ds = _write(tmp_path, GOOD_LINE + "\n")
    rc = cli_main(["--dataset", ds, "tate-q", "--curve", "11.a2",
                   "--prime", "11", "--digits", "4"])
    assert rc == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("10*11^5")
    assert out.endswith("O(11^9)")


def test_cli_sweep_writes_report(tmp_path, capsys):
    ds = _write(tmp_path, GOOD_LINE + "\n")
    out_path = str(tmp_path / "rep.jsonl")
    rc = cli_main(["--dataset", ds, "sweep", "--max-conductor", "20",
                   "--out", out_path])
    assert rc == 0
    meta, lines, summary = read_report(out_path)
    assert meta is not None and "resume_token" in meta
    assert summary["pairs"] == 1 and summary["errors"] == 0
