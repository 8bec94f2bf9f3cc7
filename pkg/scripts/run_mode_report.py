#!/usr/bin/env python3
"""Run the detection-mode discrimination study on a planted corpus.

For every planted pattern x detection mode x tau threshold, print theta,
the event-width bound, and the keyword verdict, then any flags where a
mode selects the uniformly distributed word.  --freeze rewrites the
golden file from the current run; do that only after auditing the table.
"""

import argparse
import json
from pathlib import Path

from archipelago.bench import json_safe, mode_report, spec_from_mapping

REPO = Path(__file__).resolve().parent.parent
DEFAULT_SPEC = REPO / "tests" / "data" / "golden" / "planted_spec.json"
DEFAULT_GOLDEN = REPO / "tests" / "data" / "golden" / "mode_report.json"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--spec", type=Path, default=DEFAULT_SPEC,
                    help="planted-corpus spec JSON")
    ap.add_argument("--taus", default="10",
                    help="comma-separated tau thresholds")
    ap.add_argument("--json", action="store_true",
                    help="emit the raw report as JSON")
    ap.add_argument("--freeze", nargs="?", const=DEFAULT_GOLDEN, default=None,
                    type=Path, metavar="PATH",
                    help="write the canonical JSON golden file")
    args = ap.parse_args()

    spec = spec_from_mapping(json.loads(args.spec.read_text(encoding="utf-8")))
    taus = tuple(int(t) for t in args.taus.split(",") if t)
    report = mode_report(spec, taus=taus)
    canonical = json.dumps(json_safe(report), sort_keys=True, indent=2) + "\n"

    if args.json:
        print(canonical, end="")
    else:
        print(f"planted corpus: n={report['n']}  taus={report['taus']}")
        header = f"{'word':10s} {'pattern':18s} {'mode':9s} {'tau':>4s} " \
                 f"{'theta':>10s} {'bound':>6s}  keyword"
        print(header)
        print("-" * len(header))
        for row in report["rows"]:
            bound = "-" if row["delta_t_max_bound"] is None \
                else str(row["delta_t_max_bound"])
            print(f"{row['word']:10s} {row['pattern']:18s} {row['mode']:9s} "
                  f"{row['tau']:4d} {row['theta']:10.6f} {bound:>6s}  "
                  f"{'yes' if row['is_keyword'] else 'no'}")
        if report["flags"]:
            print("\nflags:")
            for flag in report["flags"]:
                print(f"  - {flag}")

    if args.freeze is not None:
        args.freeze.write_text(canonical, encoding="utf-8")
        print(f"\nfroze {args.freeze}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
