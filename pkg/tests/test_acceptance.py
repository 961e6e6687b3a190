"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for just the summary lines.
"""

import sys
import time

import pytest

from topfukaya import suites as S

CFG = S.RunConfig()

CRITERIA = [
    (1, "universal-triangle relations", [S.check_universal_triangle]),
    (2, "distinguished triangles n <= 5", [S.check_distinguished_triangles]),
    (3, "Coxeter periodicity", [S.check_coxeter_random, S.check_coxeter_rotation, S.check_coxeter_orbits]),
    (4, "A_n root-category oracle n <= 5", [S.check_oracle]),
    (5, "SNF vs truncation agreement", [S.check_distinguished_triangles, S.check_oracle, S.check_path_model]),
    (6, "coSegal chain colimits 2 <= n <= 8", [S.check_cosegal, S.check_cosegal_path_counts]),
    (7, "surface reconstruction and moves", [S.check_surfaces, S.check_random_moves]),
    (8, "example presentations", [S.check_presentations]),
    (9, "annulus Hom tables vs k[x]", [S.check_annulus]),
    (10, "flip invariance", [S.check_square_flip, S.check_theta_symmetry]),
    (11, "Waldhausen squares n <= 5", [S.check_waldhausen]),
    (12, "cyclic nerve 2-Segal", [S.check_nerve_2segal]),
]

_cache: dict = {}


def _run(check):
    if check not in _cache:
        t0 = time.perf_counter()
        try:
            ok, detail = check(CFG)
        except Exception as exc:  # a crash is a failure, reported with its message
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        _cache[check] = (bool(ok), detail, time.perf_counter() - t0)
    return _cache[check]


def evaluate(number):
    _, title, checks = next(c for c in CRITERIA if c[0] == number)
    results = [_run(c) for c in checks]
    ok = all(r[0] for r in results)
    secs = sum(r[2] for r in results)
    details = "; ".join(r[1] for r in results)
    return ok, f"criterion {number:2d} {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {title}: {details}"


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    lines = [evaluate(c[0]) for c in CRITERIA]
    for _, line in lines:
        print(line)
    sys.exit(0 if all(ok for ok, _ in lines) else 1)
