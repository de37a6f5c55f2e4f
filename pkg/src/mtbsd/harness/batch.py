"""Batch execution over (curve, prime) pairs with deterministic reports.

One report line per pair, ordered by (conductor, label, p); a failure on one
pair is captured into its own line and never aborts the batch.
"""

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from ..conjectures import (
    PairReport, check_conj4_general, check_conj4mul, check_conj5mul,
    check_conj6_general, check_conj_1_1, check_conj_3_1, diagnose,
    qtilde_in_GM,
)
from ..curves import local_data
from ..modsym.symbol import plus_symbol
from ..padic import tate_parameter
from .dataset import enumerate_pairs

CACHE_ENV = "MTBSD_CACHE_DIR"

ALL_CONJECTURES = ("C1_1", "C3_1mod", "C4mul", "C5mul", "C4gen", "C6gen")


@dataclass(frozen=True)
class RunConfig:
    max_conductor: int = 1000
    include_labels: tuple = ()
    conjectures: tuple = ALL_CONJECTURES
    n_max: int = 8
    level_cap: int = 10_000
    jobs: int = 1
    resume_token: str = None


# ---------------------------------------------------------------------------
# symbol cache

def cache_dir():
    return os.environ.get(CACHE_ENV)


def curve_symbol(record, level_cap=10_000):
    """The normalized plus modular symbol, cached on disk when MTBSD_CACHE_DIR
    is set (isolation at large levels is the expensive step)."""
    cdir = cache_dir()
    path = None
    if cdir:
        os.makedirs(cdir, exist_ok=True)
        path = os.path.join(cdir, "symbol-%s.json" % record.label.replace("/", "_"))
        if os.path.exists(path):
            with open(path) as fh:
                d = json.load(fh)
            if d.get("ainvs") == list(record.ainvs):
                from ..modsym.space import build_space
                from ..modsym.symbol import PlusModularSymbol
                space = build_space(record.conductor, plus=True,
                                    level_cap=level_cap)
                return PlusModularSymbol(
                    record.conductor, record.label, tuple(d["table"]),
                    Fraction(d["scale"]), space)
    sym = plus_symbol(record, level_cap=level_cap)
    if path:
        with open(path, "w") as fh:
            json.dump({"ainvs": list(record.ainvs),
                       "table": list(sym.table),
                       "scale": str(sym.scale)}, fh)
    return sym


# ---------------------------------------------------------------------------
# per-pair evaluation

def pair_report(record, p, sym, conjectures=ALL_CONJECTURES, n_max=8):
    """All requested verdicts for one (curve, prime) pair."""
    ld = local_data(record.model, p)
    C_p = ld.tamagawa_cp
    q = tate_parameter(record.model, p)
    # Lemma 2.9 cross-check: Tamagawa number equals ord_p(q_p)
    assert q.valuation == C_p, \
        "C_p = %d != ord_p(q_p) = %d for %s" % (C_p, q.valuation, record.label)
    qt = qtilde_in_GM(record.model, p, p)
    rank, torsion = record.rank, record.torsion_order

    verdicts = []

    def add(v, variant=None):
        v = diagnose(v, record)
        d = v.to_dict()
        if variant:
            d["variant"] = variant
        verdicts.append((v, d))

    if "C1_1" in conjectures:
        add(check_conj_1_1(sym, p, qt, C_p, rank, torsion))
    if "C3_1mod" in conjectures:
        add(check_conj_3_1(sym, p, qt, C_p, rank, torsion))
    if "C4mul" in conjectures and rank > 0:
        add(check_conj4mul(sym, p, rank))
    if "C5mul" in conjectures and rank == 0:
        add(check_conj5mul(sym, p, qt, rank, torsion, record.tamagawa,
                           record.sha_order))
    if "C4gen" in conjectures:
        add(check_conj4_general(record, sym, p, variant="plain",
                                n_max=n_max), "plain")
        add(check_conj4_general(record, sym, p, variant="torsion_inverted",
                                n_max=n_max), "torsion_inverted")
    if "C6gen" in conjectures:
        add(check_conj6_general(record, sym, p, variant="plain"), "plain")
        add(check_conj6_general(record, sym, p, variant="torsion_inverted"),
            "torsion_inverted")

    group_elems = sorted({min(a % p, (-a) % p) for a in range(1, p)}) if p > 2 \
        else [1]
    digest = {
        "lambda": {str(a): str(sym.evaluate(a, p)) for a in group_elems},
        "lambda01": str(sym.evaluate(0, 1)),
        "qp": str(q),
        "qtilde_class": qt,
        "C_p": C_p,
        "ord_p_qp": q.valuation,
        "rank": rank,
        "torsion": torsion,
        "sha": record.sha_order,
    }
    report = PairReport(record.label, p, tuple(v for v, _ in verdicts), digest)
    line = report.to_dict()
    line["verdicts"] = [d for _, d in verdicts]
    line["conductor"] = record.conductor
    return report, line


# ---------------------------------------------------------------------------
# batch

def dataset_digest(entries, config):
    h = hashlib.sha256()
    for e in entries:
        h.update(repr((e.label, e.a_invariants, e.conductor, e.rank,
                       e.torsion_order, e.sha_order, e.tamagawa)).encode())
    h.update(repr((config.max_conductor, tuple(config.include_labels),
                   tuple(config.conjectures), config.n_max)).encode())
    return h.hexdigest()[:16]


def select_entries(entries, config):
    chosen = [e for e in entries
              if e.conductor <= config.max_conductor
              or e.label in set(config.include_labels)]
    return sorted(chosen, key=lambda e: (e.conductor, e.label))


def _curve_lines(entry, config):
    lines = []
    pairs = enumerate_pairs(entry)
    if not pairs:
        return lines
    record = entry.record()
    try:
        sym = curve_symbol(record, level_cap=config.level_cap)
    except Exception as exc:  # capture per-curve failures into each pair line
        for _, p in pairs:
            lines.append({"label": entry.label, "layer": p,
                          "conductor": entry.conductor,
                          "error": "%s: %s" % (type(exc).__name__, exc)})
        return lines
    for _, p in pairs:
        try:
            _, line = pair_report(record, p, sym,
                                  conjectures=config.conjectures,
                                  n_max=config.n_max)
        except Exception as exc:
            line = {"label": entry.label, "layer": p,
                    "conductor": entry.conductor,
                    "error": "%s: %s" % (type(exc).__name__, exc)}
        lines.append(line)
    return lines


def run_batch(config, entries, sink=None, done=None):
    """Report lines for every pair, ordered by (conductor, label, p).

    `sink(line)` is called as lines are produced (single serialization
    point); `done` is a set of (label, layer) pairs to skip (resume).
    """
    chosen = select_entries(entries, config)
    done = done or set()
    lines = []

    def emit(line):
        lines.append(line)
        if sink:
            sink(line)

    if config.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        todo = [e for e in chosen
                if any((e.label, p) not in done for _, p in enumerate_pairs(e))]
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for batch in pool.map(_curve_lines, todo,
                                  [config] * len(todo), chunksize=1):
                for line in batch:
                    if (line["label"], line["layer"]) not in done:
                        emit(line)
    else:
        for entry in chosen:
            if all((entry.label, p) in done
                   for _, p in enumerate_pairs(entry)) and enumerate_pairs(entry):
                continue
            for line in _curve_lines(entry, config):
                if (line["label"], line["layer"]) not in done:
                    emit(line)
    return lines, summarize(lines)


def summarize(lines):
    counts = {}
    errors = 0
    for line in lines:
        if "error" in line:
            errors += 1
            continue
        for v in line["verdicts"]:
            key = v["conjecture"]
            if v.get("variant"):
                key += ":" + v["variant"]
            bucket = counts.setdefault(
                key, {"pass": 0, "fail": 0, "vacuous": 0, "skipped": 0})
            bucket[v["status"]] += 1
    return {"pairs": len(lines), "errors": errors, "conjectures": counts}


# ---------------------------------------------------------------------------
# persistence

def write_report(lines, path, summary=None, token=None):
    with open(path, "w") as fh:
        if token is not None:
            fh.write(json.dumps({"meta": {"resume_token": token}},
                                sort_keys=True) + "\n")
        for line in lines:
            fh.write(json.dumps(line, sort_keys=True) + "\n")
        if summary is not None:
            fh.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")


def read_report(path):
    """(meta, lines, summary) from a report file."""
    meta, lines, summary = None, [], None
    with open(path) as fh:
        for raw in fh:
            raw = raw.strip()
            if not raw:
                continue
            d = json.loads(raw)
            if "meta" in d:
                meta = d["meta"]
            elif "summary" in d:
                summary = d["summary"]
            else:
                lines.append(d)
    return meta, lines, summary
