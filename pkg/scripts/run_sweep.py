"""Run the classification-table sweep and write a JSONL report plus the summary table.

    python3 scripts/run_sweep.py                      # acceptance bounds
    python3 scripts/run_sweep.py --extended           # adds muA5 up to q = 72 (slow)
    python3 scripts/run_sweep.py --out results/sweep  # -> sweep.jsonl, table.txt
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

from quotsing.catalog import SweepConfig, render_table, report_json, summarize, sweep

ACCEPTANCE = SweepConfig(
    max_q=12,
    max_m=8,
    max_order=4000,
    q_limits={"A4-D2": 16, "muA4": 16, "muS4": 24, "S4-A4": 24, "muA5": 24},
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/sweep")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--extended", action="store_true", help="also sweep muA5 for q <= 72 at order <= 10000")
    args = ap.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    configs = [ACCEPTANCE]
    if args.extended:
        configs.append(SweepConfig(max_q=72, families=("muA5",), max_order=10000))

    reports, seen = [], set()
    t0 = time.perf_counter()
    with open(out / "sweep.jsonl", "w") as fh:
        for cfg in configs:
            cfg.jobs = args.jobs

            def keep(r):
                if r.spec in seen:
                    return
                seen.add(r.spec)
                reports.append(r)
                fh.write(report_json(r) + "\n")
                fh.flush()

            sweep(cfg, on_report=keep)
    summary = summarize(reports)
    table = render_table(reports)
    (out / "table.txt").write_text(table + "\n")
    (out / "summary.json").write_text(json.dumps(asdict(summary) | {"seconds": round(time.perf_counter() - t0, 1)}, indent=2))
    print(table)
    print(f"\n{summary.total} reports, {summary.matched} matched, {summary.mismatched} mismatched, "
          f"{summary.skipped} skipped, {summary.column_failures} column failures")
    return 0 if summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
