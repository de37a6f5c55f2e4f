"""Incremental driver for generating the curve database.

Appends one JSON line per curve, level by level, and records completed
levels in a sidecar progress file so an interrupted run restarts where it
stopped.  Usage:

    python3 -m mtbsd.dbbuild.generate --min 11 --max 2000 \
        --extra 4123 --extra 7826 --out data/curves.jsonl
"""

import argparse
import json
import os
import sys
import time

from ..curves import compute_invariants
from .build import build_level, oldform_systems


def _load_progress(path):
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return {"done": [], "failed": {}}


def _save_progress(path, progress):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(progress, fh, sort_keys=True)
    os.replace(tmp, path)


def _load_class_reps(out_path):
    """Level -> [one model per isogeny class] from an existing output file.

    The class representative is the curve labeled ...1 in each class; it
    feeds oldform pruning for the higher levels still to be built."""
    reps = {}
    if not os.path.exists(out_path):
        return reps
    with open(out_path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            num = rec["label"].rsplit(".", 1)[1]
            if num.lstrip("abcdefghijklmnopqrstuvwxyz") != "1":
                continue
            reps.setdefault(rec["conductor"], []).append(
                compute_invariants(*rec["ainvs"]))
    return reps


def generate(levels, out_path, progress_path=None, log=None):
    if progress_path is None:
        progress_path = out_path + ".progress"
    progress = _load_progress(progress_path)
    done = set(progress["done"])
    log = log or (lambda msg: None)
    class_reps = _load_class_reps(out_path)
    for N in levels:
        if N in done:
            continue
        t0 = time.time()
        try:
            olds = oldform_systems(
                N, {M: r for M, r in class_reps.items() if N % M == 0})
            records = build_level(N, oldforms=olds)
        except Exception as exc:
            progress["failed"][str(N)] = "%s: %s" % (type(exc).__name__, exc)
            _save_progress(progress_path, progress)
            log("level %d FAILED (%.1fs): %s" % (N, time.time() - t0, exc))
            continue
        with open(out_path, "a") as fh:
            for r in records:
                fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
        if records:
            class_reps[N] = [
                r.model for r in records
                if r.label.rsplit(".", 1)[1]
                    .lstrip("abcdefghijklmnopqrstuvwxyz") == "1"]
        progress["done"].append(N)
        progress["failed"].pop(str(N), None)
        _save_progress(progress_path, progress)
        log("level %d: %d curves (%.1fs)"
            % (N, len(records), time.time() - t0))
    return progress


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min", type=int, default=11)
    ap.add_argument("--max", type=int, default=2000)
    ap.add_argument("--extra", type=int, action="append", default=[])
    ap.add_argument("--out", required=True)
    args = ap.parse_args(argv)
    levels = list(range(args.min, args.max + 1)) + sorted(args.extra)

    def log(msg):
        sys.stderr.write(msg + "\n")
        sys.stderr.flush()

    progress = generate(levels, args.out, log=log)
    if progress["failed"]:
        log("failed levels: %s" % sorted(progress["failed"]))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
