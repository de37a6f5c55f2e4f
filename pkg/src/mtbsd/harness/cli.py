"""Command-line interface: verify, sweep, modsym, tate-q."""

import argparse
import json
import os
import sys

from ..conjectures import (
    PreconditionError, check_conj4_general, check_conj4mul, check_conj5mul,
    check_conj6_general, check_conj_1_1, check_conj_3_1, diagnose,
    qtilde_in_GM,
)
from ..curves import local_data
from ..group_ring import build_group
from ..modsym.space import SpaceCapError
from ..padic import PrecisionError, ReductionTypeError, tate_parameter
from .batch import (
    RunConfig, curve_symbol, dataset_digest, read_report, run_batch,
    select_entries, summarize, write_report,
)
from .dataset import DatasetError, parse_dataset

DATASET_ENV = "MTBSD_DATASET"
DEFAULT_DATASET = "data/curves.jsonl"

CONJ_KEYS = {"c11": "C1_1", "c31": "C3_1mod", "c4mul": "C4mul",
             "c5mul": "C5mul", "c4": "C4gen", "c6": "C6gen"}


class CliError(Exception):
    pass


def _default_dataset():
    return os.environ.get(DATASET_ENV, DEFAULT_DATASET)


def _load_record(path, label):
    try:
        entries = parse_dataset(path)
    except OSError as exc:
        raise CliError("cannot read dataset %s: %s" % (path, exc))
    for e in entries:
        if e.label == label:
            return e.record()
    raise CliError("label %r not found in %s" % (label, path))


def cmd_verify(args):
    record = _load_record(args.dataset, args.curve)
    p = args.prime
    invert = tuple(int(x) for x in args.invert_primes.split(",")) \
        if args.invert_primes else ()
    sym = curve_symbol(record)
    conj = CONJ_KEYS[args.conjecture]
    if conj in ("C1_1", "C3_1mod", "C4mul", "C5mul"):
        ld = local_data(record.model, p)
        C_p = ld.tamagawa_cp
        qt = qtilde_in_GM(record.model, p, p)
        if conj == "C1_1" and args.torsion_inverted:
            conj = "C3_1mod"
        if conj == "C1_1":
            v = check_conj_1_1(sym, p, qt, C_p, record.rank,
                               record.torsion_order, invert_primes=invert)
        elif conj == "C3_1mod":
            v = check_conj_3_1(sym, p, qt, C_p, record.rank,
                               record.torsion_order, invert_primes=invert)
        elif conj == "C4mul":
            v = check_conj4mul(sym, p, record.rank, invert_primes=invert)
        else:
            v = check_conj5mul(sym, p, qt, record.rank, record.torsion_order,
                               record.tamagawa, record.sha_order,
                               invert_primes=invert)
    else:
        variant = "torsion_inverted" if args.torsion_inverted else "plain"
        if conj == "C4gen":
            v = check_conj4_general(record, sym, p, variant=variant,
                                    invert_primes=invert)
        else:
            v = check_conj6_general(record, sym, p, variant=variant,
                                    invert_primes=invert)
    v = diagnose(v, record)
    print(json.dumps(v.to_dict(), sort_keys=True))
    return 0


def cmd_sweep(args):
    entries = parse_dataset(args.dataset)
    include = tuple(args.include_label or ())
    config = RunConfig(max_conductor=args.max_conductor,
                       include_labels=include, jobs=args.jobs,
                       level_cap=args.level_cap)
    token = dataset_digest(entries, config)
    done = set()
    prior = []
    if args.resume:
        if args.resume != token:
            raise CliError("resume token %s does not match dataset digest %s"
                           % (args.resume, token))
        if os.path.exists(args.out):
            meta, prior, _ = read_report(args.out)
            if meta and meta.get("resume_token") == token:
                done = {(l["label"], l["layer"]) for l in prior}
            else:
                prior = []
    lines, _ = run_batch(config, entries, done=done)
    all_lines = sorted(prior + lines,
                       key=lambda l: (l["conductor"], l["label"], l["layer"]))
    summary = summarize(all_lines)
    write_report(all_lines, args.out, summary=summary, token=token)
    sys.stderr.write("resume token: %s\n" % token)
    print(json.dumps({"summary": summary}, sort_keys=True))
    return 0


def cmd_modsym(args):
    record = _load_record(args.dataset, args.curve)
    sym = curve_symbol(record)
    M = args.layer
    group = build_group(M)
    out = {"label": record.label, "layer": M,
           "lambda": {str(a): str(sym.evaluate(a, M) if M > 1
                               else sym.evaluate(0, 1))
                      for a in group.elements}}
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_tate_q(args):
    record = _load_record(args.dataset, args.curve)
    p = args.prime
    v = local_data(record.model, p).ord_p_disc \
        if record.conductor % p == 0 else 0
    q = tate_parameter(record.model, p, precision=v + args.digits)
    print(str(q))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="mtbsd",
        description="Verifier for refined BSD-type congruences")
    ap.add_argument("--dataset", default=_default_dataset(),
                    help="curve database (JSON lines)")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check one conjecture on one pair")
    v.add_argument("--curve", required=True)
    v.add_argument("--prime", type=int, required=True)
    v.add_argument("--conjecture", required=True, choices=sorted(CONJ_KEYS))
    v.add_argument("--torsion-inverted", action="store_true")
    v.add_argument("--invert-primes", default="",
                   help="comma-separated primes to invert in R")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="batch run over the dataset")
    s.add_argument("--max-conductor", type=int, default=1000)
    s.add_argument("--out", required=True)
    s.add_argument("--resume", default=None, help="resume token")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--include-label", action="append",
                   help="extra labels beyond the conductor bound")
    s.add_argument("--level-cap", type=int, default=10_000)
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("modsym", help="tabulate lambda(a, M)")
    m.add_argument("--curve", required=True)
    m.add_argument("--layer", type=int, required=True)
    m.set_defaults(func=cmd_modsym)

    t = sub.add_parser("tate-q", help="print the Tate parameter expansion")
    t.add_argument("--curve", required=True)
    t.add_argument("--prime", type=int, required=True)
    t.add_argument("--digits", type=int, default=9)
    t.set_defaults(func=cmd_tate_q)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, DatasetError, PreconditionError, ReductionTypeError,
            PrecisionError, SpaceCapError, FileNotFoundError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
