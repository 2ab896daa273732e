"""Run the randomized verification suites from the command line.

Examples:
    python3 scripts/run_suites.py
    python3 scripts/run_suites.py --trials 500 --seed 11
    python3 scripts/run_suites.py --suite relations --suite decompose

Exits 1 if any suite reports a failure, 0 otherwise. Failed trials
print their reproduction seed and the input/expected/achieved digests.
"""

import argparse
import sys

from elemcalc.suites import SUITE_NAMES, run_suite


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=100,
                        help="trials per suite (default 100)")
    parser.add_argument("--seed", type=int, default=0,
                        help="base seed; trial k uses (seed << 20) ^ k")
    parser.add_argument("--suite", action="append", choices=SUITE_NAMES,
                        help="run only this suite (repeatable)")
    args = parser.parse_args(argv)

    names = tuple(args.suite) if args.suite else SUITE_NAMES
    bad = 0
    for name in names:
        rep = run_suite(name, args.trials, args.seed)
        print(rep.summary())
        for trial_seed, inp, expected, achieved in rep.failures:
            print("    seed %d  in %s  want %s  got %s"
                  % (trial_seed, inp, expected, achieved))
        bad += len(rep.failures)
    if bad:
        print("%d failing trial(s)" % bad)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
