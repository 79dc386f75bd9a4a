#!/usr/bin/env python3
"""Run every numerical verification suite and print a margin summary.

Exits nonzero if any instance fails its margin tolerance.  The JSON-lines
report of a single suite is available through `relay-bounds verify`.
"""

import argparse
import sys
import time

from relay_bounds import rhc_verify as rv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=12345)
    parser.add_argument("--scale", type=float, default=1.0,
                        help="multiplier on the default instance counts")
    args = parser.parse_args()

    runs = [
        ("mossel", lambda n: rv.mossel_suite(n, args.seed), 10_000),
        ("mossel-q0", lambda n: rv.mossel_q0_suite(n, args.seed), 2_000),
        ("borell-exp", lambda n: rv.borell_suite(n, args.seed), 2_000),
        ("ou-q0", lambda n: rv.ou_q0_suite(n, args.seed), 100),
        ("lemma4", lambda n: rv.relay_oracle_suite(n, args.seed), 500),
        ("quantizer", lambda n: rv.quantizer_oracle_suite(n, args.seed), 100),
        ("semigroup", lambda n: rv.semigroup_suite(n, args.seed), 1_000),
    ]

    failures = 0
    for name, run, default_n in runs:
        n = max(int(default_n * args.scale), 1)
        start = time.perf_counter()
        records = run(n)
        elapsed = time.perf_counter() - start
        failed = [r for r in records if not r.passed]
        failures += len(failed)
        min_margin = min(r.margin for r in records)
        status = "PASS" if not failed else f"FAIL ({len(failed)} instances)"
        print(f"{name:12s} {status:8s} n={len(records):6d} "
              f"min margin={min_margin: .3e}  {elapsed:6.2f}s")
        for rec in failed[:3]:
            print(f"    failing instance {rec.index}: {rec.instance}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
