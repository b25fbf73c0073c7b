"""Compare the numba and numpy integer kernels.

The backend is fixed at import time by ``CYCLOSYNTOMIC_KERNELS``, so every
measurement runs in a fresh interpreter.  Two kinds of timing are reported:

* ``kernel``: repeated ``mulmod`` on random matrices of the shapes that occur
  in the component rings (q-degree 2..8, x-degree 4 or 6), after a warm-up
  call so JIT compilation is excluded;
* ``suite``: wall time of ``python -m cyclosyntomic verify-all`` for a few
  suites, which includes interpreter start-up and (for numba) loading the
  on-disk compilation cache.

The object path (unbounded Python integers) is timed as a baseline.  Results
are checked to agree across backends before any timing is printed.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--suites dwork,main-theorem]
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import subprocess
import sys
import time

KERNEL_PROBE = r"""
import json, sys, time
import numpy as np
from cyclosyntomic import _kernels as K
from cyclosyntomic.exactalg import cyclotomic_coeffs

rng = np.random.default_rng(0)
cases = []
for xdeg_order, qe in [(5, 2), (5, 4), (5, 6), (7, 3), (7, 12)]:
    xmod = cyclotomic_coeffs(xdeg_order)
    qmod = cyclotomic_coeffs(qe, 2)
    xr = K.reducer(xmod, 2 * (len(xmod) - 1))
    qr = K.reducer(qmod, 2 * (len(qmod) - 1))
    a = rng.integers(-50, 50, size=(qr.n, xr.n)).astype(object)
    b = rng.integers(-50, 50, size=(qr.n, xr.n)).astype(object)
    cases.append((f"zeta_{xdeg_order}/Phi_{qe}^2", a, b, xr, qr))

mode = sys.argv[1]
iters = int(sys.argv[2])
out = {"backend": K.BACKEND if mode == "int64" else "object", "cases": {}}
for name, a, b, xr, qr in cases:
    if mode == "int64":
        fn = lambda: K.mulmod(a, b, xr, qr)
    else:
        fn = lambda: K._reduce_np(K._conv2d_np(a, b), xr.rows, xr.n, qr.rows, qr.n)
    first = fn()
    start = time.perf_counter()
    for _ in range(iters):
        fn()
    per_call = (time.perf_counter() - start) / iters
    out["cases"][name] = {"us": per_call * 1e6, "result": [[int(v) for v in row] for row in first]}
print(json.dumps(out))
"""


def _env(backend: str) -> dict:
    env = dict(os.environ)
    env["CYCLOSYNTOMIC_KERNELS"] = backend
    return env


def kernel_timings(backend: str, mode: str, iters: int) -> dict:
    proc = subprocess.run(
        [sys.executable, "-c", KERNEL_PROBE, mode, str(iters)],
        env=_env(backend), capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def suite_timing(backend: str, suite: str, repeat: int) -> tuple[float, list[str]]:
    times, outputs = [], []
    for _ in range(repeat):
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "cyclosyntomic", "verify-all", "--suite", suite],
            env=_env(backend), capture_output=True, text=True,
        )
        times.append(time.perf_counter() - start)
        outputs.append(proc.stdout)
    return statistics.median(times), outputs


def _status_only(text: str) -> list[tuple[str, str]]:
    return [(r["suite"], r["status"]) for r in map(json.loads, text.splitlines())]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--iters", type=int, default=2000)
    ap.add_argument("--suites", default="dwork,main-theorem,key-identity")
    ap.add_argument("--json", dest="json_path")
    args = ap.parse_args(argv)

    kernels = {
        "numba": kernel_timings("numba", "int64", args.iters),
        "numpy": kernel_timings("numpy", "int64", args.iters),
        "object": kernel_timings("numpy", "object", max(args.iters // 10, 1)),
    }
    reference = kernels["object"]["cases"]
    for label, data in kernels.items():
        for name, case in data["cases"].items():
            if case["result"] != reference[name]["result"]:
                print(f"mismatch: {label} differs from the object path on {name}", file=sys.stderr)
                return 1

    print("mulmod, mean microseconds per call (JIT warm)")
    print(f"{'case':<22}{'numba':>10}{'numpy':>10}{'object':>10}{'numpy/numba':>14}")
    for name in reference:
        nb, np_, obj = (kernels[k]["cases"][name]["us"] for k in ("numba", "numpy", "object"))
        print(f"{name:<22}{nb:>10.1f}{np_:>10.1f}{obj:>10.1f}{np_ / nb:>14.2f}")

    suites = {}
    print(f"\nverify-all wall time, seconds (median of {args.repeat})")
    print(f"{'suite':<16}{'numba':>10}{'numpy':>10}")
    for suite in args.suites.split(","):
        nb, nb_out = suite_timing("numba", suite, args.repeat)
        np_, np_out = suite_timing("numpy", suite, args.repeat)
        if _status_only(nb_out[0]) != _status_only(np_out[0]):
            print(f"mismatch: backends disagree on suite {suite}", file=sys.stderr)
            return 1
        suites[suite] = {"numba": nb, "numpy": np_}
        print(f"{suite:<16}{nb:>10.2f}{np_:>10.2f}")

    if args.json_path:
        summary = {
            "kernel_us": {k: {n: c["us"] for n, c in v["cases"].items()} for k, v in kernels.items()},
            "suite_s": suites,
        }
        with open(args.json_path, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
