"""A miniature sweep: every split pair up to conductor 200.

Runs the full battery of checkers over all (curve, split prime) pairs in
the dataset with conductor <= 200, writes a deterministic JSONL report,
and prints the per-conjecture tallies.  The same run is reproducible
byte-for-byte, and interruptions can be resumed with the printed token.

Equivalent CLI:
  mtbsd --dataset data/curves.jsonl sweep --max-conductor 200 --out /tmp/sweep200.jsonl
"""

import json
import sys

from mtbsd.harness import (
    RunConfig, dataset_digest, parse_dataset, run_batch, write_report,
)

dataset = sys.argv[1] if len(sys.argv) > 1 else "data/curves.jsonl"
out = sys.argv[2] if len(sys.argv) > 2 else "/tmp/sweep200.jsonl"

entries = parse_dataset(dataset)
config = RunConfig(max_conductor=200)
token = dataset_digest(entries, config)
print("dataset: %s (%d curves), resume token %s" % (dataset, len(entries), token))

lines, summary = run_batch(config, entries)
write_report(lines, out, summary=summary, token=token)
print("report: %s (%d pairs, %d errors)" % (out, summary["pairs"],
                                            summary["errors"]))
print(json.dumps(summary["conjectures"], indent=2, sort_keys=True))

fails = [(l["label"], l["layer"], v["conjecture"], v["failing"])
         for l in lines if "verdicts" in l
         for v in l["verdicts"] if v["status"] == "fail"]
print("\nfailures (these are findings, not errors):")
for label, layer, cid, failing in fails:
    print("  %s p=%d %s at ell in %s" % (label, layer, cid, failing))
