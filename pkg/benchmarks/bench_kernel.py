"""Benchmark the compiled kernel against the pure Python fallback.

The kernel is chosen at import time, so the comparison runs each backend in
its own subprocess: once with the default selection and once with
CZMORPH_PURE=1.  The workload realizes every form of the bundled lexicon
through the bundled rules, which exercises both the acceptance check and the
surface search.

Usage:
    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys


def run_workload(repeat):
    import time

    from czmorph import kernel
    from czmorph.czech import builtin_lexicon_text, ruleset
    from czmorph.lexicon import parse_lexicon

    rules = ruleset()
    lexicon = parse_lexicon(builtin_lexicon_text())
    strings = [form.lexical for _, form in lexicon.expand_all()]

    # Warm up caches and verify the workload before timing.
    produced = 0
    for s in strings:
        produced += len(rules.generate_from_text(s))
    if produced < len(strings):
        raise SystemExit("workload produced fewer surfaces than forms")

    start = time.perf_counter()
    for _ in range(repeat):
        for s in strings:
            rules.generate_from_text(s)
    elapsed = time.perf_counter() - start

    forms = repeat * len(strings)
    return kernel.BACKEND, forms, elapsed


def time_backend(pure, repeat):
    env = dict(os.environ)
    if pure:
        env["CZMORPH_PURE"] = "1"
    else:
        env.pop("CZMORPH_PURE", None)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker", str(repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    backend, forms, elapsed = out.stdout.split()
    return backend, int(forms), float(elapsed)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5,
                        help="passes over the full lexicon (default 5)")
    parser.add_argument("--worker", type=int, metavar="N",
                        help=argparse.SUPPRESS)
    args = parser.parse_args(argv)

    if args.worker is not None:
        backend, forms, elapsed = run_workload(args.worker)
        print(backend, forms, elapsed)
        return 0

    results = {}
    for pure in (False, True):
        backend, forms, elapsed = time_backend(pure, args.repeat)
        results[backend] = (forms, elapsed)
        rate = forms / elapsed if elapsed else float("inf")
        print(f"{backend:>8}: {forms} forms in {elapsed:.3f}s "
              f"({rate:,.0f} forms/s)")

    if results.keys() == {"pure", "compiled"}:
        speedup = results["pure"][1] / results["compiled"][1]
        print(f"speedup: compiled is {speedup:.1f}x faster")
    else:
        print("note: compiled extension not available, "
              "both runs used the pure kernel")
    return 0


if __name__ == "__main__":
    sys.exit(main())
