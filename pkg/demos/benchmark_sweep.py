"""A small seeded benchmark: random markets per family, solver versus
brute force versus the naive baseline, summarized from the CSV the
command-line workbench writes.
"""

import csv
import statistics
import tempfile
from pathlib import Path

from interviewplan.cli import main as cli_main


def run_family(family, out_dir, **flags):
    out = out_dir / f"{family}.csv"
    argv = ["bench", "--family", family, "--trials", "40", "--seed", "7",
            "--out", str(out), "--omit-runtime"]
    for key, value in flags.items():
        argv += [f"--{key}", str(value)]
    code = cli_main(argv)
    assert code == 0, f"bench failed for {family}"
    with out.open() as handle:
        rows = list(csv.DictReader(handle))
    return rows


def summarize(family, rows):
    solver = [int(r["solver_cost"]) for r in rows if r["solver_cost"] != ""]
    naive = [int(r["naive_cost"]) for r in rows if r["naive_cost"] != ""]
    agree = all(r["oracle_cost"] == "" or r["oracle_cost"] == r["solver_cost"]
                for r in rows)
    saved = [1 - s / n for s, n in zip(solver, naive) if n]
    print(f"{family:>16}: {len(rows)} markets, "
          f"mean cost {statistics.mean(solver):.2f} vs naive "
          f"{statistics.mean(naive):.2f} "
          f"(mean saving {100 * statistics.mean(saved):.0f}%), "
          f"oracle {'agrees' if agree else 'DISAGREES'}")


def main():
    with tempfile.TemporaryDirectory() as tmp:
        out_dir = Path(tmp)
        for family, flags in (
            ("random-smti", {"n": 4, "tie-cap": 3, "density": 0.9}),
            ("one-side-strict", {"n": 4, "tie-cap": 3}),
            ("master-ties", {"n": 4, "tie-cap": 4}),
            ("tiered", {"n": 6, "tiers": "2,2,2"}),
        ):
            rows = run_family(family, out_dir, **flags)
            summarize(family, rows)
        rows = run_family("vc3-smti", out_dir, **{"max-n": 4})
        summarize("vc3-smti", rows)
    print("\nColumns in the CSV: instance_id, family, n_men, n_women, "
          "pbp_count, pbp1_count, pbp2_count, m_prime_size, vc_size, "
          "solver_cost, oracle_cost, naive_cost, structure_used, "
          "runtime_ms, error")


if __name__ == "__main__":
    main()
