"""Acceptance criteria 1-11.

Each criterion prints one line ``criterion N: PASS|FAIL ...`` (also when run
under pytest with output capture) and fails the test if any of its suites
fails.  Run directly with ``python3 tests/test_acceptance.py`` for the bare
summary.
"""

from __future__ import annotations

import sys
import time
from contextlib import nullcontext

import pytest

from cyclosyntomic.config import RunConfig
from cyclosyntomic.exactalg import cyclotomic_integers
from cyclosyntomic.suites import run_suite

DEFAULT = RunConfig()
THEOREM_GRID = RunConfig(levels=(2, 3, 4, 6, 12), divisors=(2, 3, 4, 6))
THEOREM_GRID_7 = RunConfig(ring=cyclotomic_integers(7), roots=((7, 1),), levels=(2, 3, 4, 6, 12), divisors=(2, 3, 4, 6))

# criterion -> (title, [(suite, config)], budget in seconds)
CRITERIA = {
    1: ("Dwork equivalence", [("dwork", DEFAULT)], 5),
    2: ("F/V relations", [("fv", DEFAULT)], 5),
    3: ("norm laws", [("norms", DEFAULT)], 10),
    4: ("ideal membership", [("ideal", DEFAULT)], 1),
    5: ("square-zero exp/log", [("explog", DEFAULT)], 10),
    6: ("s_d homotopy identity", [("homotopy", DEFAULT)], 30),
    7: ("key identity", [("key-identity", DEFAULT)], 30),
    8: ("main theorem", [("main-theorem", THEOREM_GRID), ("main-theorem", THEOREM_GRID_7)], 60),
    9: ("cross-level coherence", [("cross-level", THEOREM_GRID)], 60),
    10: ("Lambda-ring comparison", [("lambda", DEFAULT)], 5),
    11: ("polylog symmetry and vanishing", [("li1-symmetry", THEOREM_GRID), ("root-vanishing", THEOREM_GRID)], 10),
}

# Reported alongside criterion 11, not part of its verdict.
SUPPLEMENTARY = {11: ("symmetry up to coboundary", [("li1-symmetry-class", THEOREM_GRID)])}


def evaluate(criterion: int):
    title, runs, budget = CRITERIA[criterion]
    start = time.perf_counter()
    reports = [run_suite(name, config) for name, config in runs]
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in reports)
    parts = [f"{r.suite}[{r.params['ring']}]={r.status}" for r in reports]
    timing = f"{elapsed:.1f}s/{budget}s"
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {title} ({', '.join(parts)}; {timing})"
    extra = []
    for name, config in SUPPLEMENTARY.get(criterion, ("", ()))[1]:
        rep = run_suite(name, config)
        extra.append(f"criterion {criterion} supplementary: {rep.status.upper()} {SUPPLEMENTARY[criterion][0]} ({name})")
    return ok, line, extra, reports


def _emit(capsys, lines):
    with capsys.disabled() if capsys is not None else nullcontext():
        for line in lines:
            print(line)


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion, capsys):
    ok, line, extra, reports = evaluate(criterion)
    _emit(capsys, ["", line, *extra])
    failing = [r for r in reports if not r.passed]
    assert ok, f"{line}; first witness: {failing[0].witness if failing else None}"


if __name__ == "__main__":
    status = 0
    for c in sorted(CRITERIA):
        ok, line, extra, _ = evaluate(c)
        _emit(None, [line, *extra])
        status |= not ok
    sys.exit(status)
