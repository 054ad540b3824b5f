"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measured time, even
under output capture, so ``pytest -v`` logs double as the acceptance report.
Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import io
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from linrel import GF, QQ
from linrel.cli import main
from linrel.theorems import (check_classification, check_cospan_dict, check_decomposition,
                             check_imt, check_laws, check_pair, check_poset, check_subspaces,
                             enumerate_relations, exhaustive_cospans, exhaustive_relations,
                             oracle_suite, random_law_cases, random_pairs, random_relations,
                             random_squares)

from golden_cases import CASES

F2, F5, F7 = GF(2), GF(5), GF(7)
SEED = 20240
FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, seconds, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} ({seconds:.2f}s) {detail}"
        with capsys.disabled():
            print("\n" + line.rstrip())
        return line

    return emit


def tally(verdicts):
    total, bad = 0, []
    for v in verdicts:
        total += 1
        if not v.ok:
            bad.append(v)
    return total, bad


def describe(total, bad):
    head = f"{total - len(bad)}/{total}"
    if bad:
        head += f"; first failure {bad[0].theorem}: {bad[0].failures}"
    return head


@pytest.fixture(scope="module")
def relation_pool():
    exhaustive = exhaustive_relations(F2, 4)
    return exhaustive + random_relations(F5, 1000, SEED) + random_relations(QQ, 1000, SEED + 1)


@pytest.fixture(scope="module")
def pair_pool():
    return random_pairs(F5, 500, SEED + 2) + random_pairs(QQ, 500, SEED + 3)


def test_criterion_01_oracle(report):
    assert len(list(enumerate_relations(F2, 2, 2))) == 67
    t0 = time.perf_counter()
    total, bad = tally(oracle_suite(F2, 4))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5.0
    report(1, "exhaustive GF(2) oracle, m+n <= 4, < 5 s", ok, dt, describe(total, bad))
    assert not bad
    assert dt < 5.0


def test_criterion_02_cospan_decomposition(report, relation_pool):
    rng = random.Random(SEED)
    t0 = time.perf_counter()
    total, bad = tally(check_decomposition(r, rng) for r in relation_pool)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30.0 and total == 419 + 2000
    report(2, "cospan decomposition round trip, < 30 s", ok, dt, describe(total, bad))
    assert ok


def test_criterion_03_vanishing_wires(report, relation_pool):
    t0 = time.perf_counter()
    total, bad = tally(check_classification(r) for r in relation_pool)
    dt = time.perf_counter() - t0
    report(3, "classification by wire shape", not bad, dt, describe(total, bad))
    assert not bad


def test_criterion_04_implications(report, relation_pool):
    t0 = time.perf_counter()
    total, bad = tally(check_poset(r) for r in relation_pool)
    dt = time.perf_counter() - t0
    report(4, "six implications between properties", not bad, dt, describe(total, bad))
    assert not bad


def test_criterion_05_property_dictionary(report):
    t0 = time.perf_counter()
    cases = list(exhaustive_cospans(F2, 2)) + random_pairs(F5, 1000, SEED + 4)
    total, bad = tally(check_cospan_dict(a, b) for a, b in cases)
    dt = time.perf_counter() - t0
    report(5, "property dictionary rows agree, witnesses exact", not bad, dt,
           describe(total, bad))
    assert not bad


def test_criterion_06_pair_decomposition(report, pair_pool):
    t0 = time.perf_counter()
    total, bad = tally(check_pair(a, b, random.Random(i)) for i, (a, b) in enumerate(pair_pool))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30.0
    report(6, "pair decomposition, < 30 s", ok, dt, describe(total, bad))
    assert ok


def test_criterion_07_subspaces(report, pair_pool):
    t0 = time.perf_counter()
    total, bad = tally(check_subspaces(a, b) for a, b in pair_pool)
    dt = time.perf_counter() - t0
    report(7, "subspaces against Zassenhaus", not bad, dt, describe(total, bad))
    assert not bad


def test_criterion_08_invertible_matrix_theorem(report):
    t0 = time.perf_counter()
    squares = random_squares(F7, 500, SEED + 5) + random_squares(QQ, 500, SEED + 6)
    total, bad = tally(check_imt(a) for a in squares)
    dt = time.perf_counter() - t0
    report(8, "one-sided inverses and square matrices", not bad, dt, describe(total, bad))
    assert not bad


def test_criterion_09_laws(report):
    t0 = time.perf_counter()
    cases = random_law_cases(F5, 500, SEED + 7) + random_law_cases(QQ, 500, SEED + 8)
    total, bad = tally(check_laws(*c) for c in cases)
    dt = time.perf_counter() - t0
    report(9, "associativity, interchange, contravariance, monotonicity", not bad, dt,
           describe(total, bad))
    assert not bad and total == 1000


def test_criterion_10_cli(report, tmp_path):
    t0 = time.perf_counter()
    mismatched = []
    for case, argv in sorted(CASES.items()):
        argv = [str(FIXTURES / argv[1]) if i == 1 else a for i, a in enumerate(argv)]
        out = io.StringIO()
        code = main(argv + ["--json"], out, io.StringIO())
        if code != 0 or out.getvalue() != (FIXTURES / "golden" / f"{case}.json").read_text():
            mismatched.append(case)
    s0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "linrel", "selftest", "--repro-dir",
                           str(tmp_path)], capture_output=True, text=True)
    selftest_dt = time.perf_counter() - s0
    dt = time.perf_counter() - t0
    ok = not mismatched and proc.returncode == 0 and selftest_dt < 60.0
    detail = (f"golden {len(CASES) - len(mismatched)}/{len(CASES)}; "
              f"selftest exit {proc.returncode} in {selftest_dt:.1f}s")
    report(10, "CLI golden output and default selftest, < 60 s", ok, dt, detail)
    assert not mismatched
    assert proc.returncode == 0, proc.stdout[-2000:]
    assert selftest_dt < 60.0
