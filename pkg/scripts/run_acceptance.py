"""Run every exit criterion and print one line each; exit 1 if any fails."""
import argparse
import sys

from maxchain.acceptance import run_all

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--skip-slow", action="store_true", help="leave out the PSL2(17) criterion")
args = ap.parse_args()

results = run_all(slow=not args.skip_slow, report=lambda r: print(r.line(), flush=True))
print(f"\n{sum(r.passed for r in results)}/{len(results)} criteria pass")
sys.exit(0 if all(r.passed for r in results) else 1)
