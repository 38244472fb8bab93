"""Run every verification suite and print one status line each.

    python3 scripts/run_suites.py [--p 3] [--threads 4] [--json out.json]
"""

import argparse
import json
import time

from cyclohom.config import thread_count
from cyclohom.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--threads", type=int)
    ap.add_argument("--json")
    args = ap.parse_args()
    reports = {}
    for name in SUITES:
        t0 = time.perf_counter()
        res = run_suite(name, p=args.p, threads=thread_count(args.threads))
        dt = time.perf_counter() - t0
        reports[name] = res.as_dict()
        print(f"{name:<11} {res.status:<9} {len(res.checks):>3} checks  {dt:6.1f}s")
        for c in res.as_dict()["checks"]:
            if c["status"] != "pass":
                print(f"    {c['status']}: {c['check']}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=2, default=str)


if __name__ == "__main__":
    main()
