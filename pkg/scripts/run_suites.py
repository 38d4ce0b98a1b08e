#!/usr/bin/env python3
"""Run every verification suite with its default parameters.

Writes one JSON report per suite into reports/ and prints a summary.
Exit status is nonzero if any suite fails.
"""

import pathlib
import sys
import time

from autfilt import suites

# acceptance-scale parameters; every suite finishes comfortably on a laptop
RUNS = [
    ("iaab", {"n_values": (3, 4, 5)}),
    ("tau-identities", {"n": 5, "k_values": (2, 3), "trials": 50, "seed": 7}),
    ("kernel-claim", {"n": 4, "k": 2}),
    ("kernel-claim", {"n": 5, "k": 2}),
    ("kernel-claim", {"n": 5, "k": 3}),
    ("sp-orbit", {"g_values": (3, 4)}),
    ("sl-reduction", {"n": 5, "k_values": (2, 3), "trials": 20, "seed": 7}),
    ("paths", {"n": 5, "m": 2, "trials": 100, "seed": 7, "max_len": 8}),
    ("certificates", {"n": 5, "m": 2}),
    ("depth-table", {"n": 5, "k_values": (2, 3)}),
]


def main():
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "reports"
    out_dir.mkdir(exist_ok=True)
    failed = False
    for idx, (name, params) in enumerate(RUNS):
        tag = "-".join(
            [name] + [f"{k}{v}" for k, v in sorted(params.items()) if k in ("n", "k")]
        )
        path = out_dir / f"{idx:02d}-{tag}.json"
        t0 = time.perf_counter()
        report = suites.run(name, params, out_path=path)
        elapsed = time.perf_counter() - t0
        print(f"{report.status:4s} {name:15s} {elapsed:7.1f}s -> {path.name}")
        failed = failed or report.status == "FAIL"
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
