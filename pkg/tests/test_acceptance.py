"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Every criterion also carries a wall-clock budget in seconds.
"""
import subprocess
import sys
import time

import pytest

from hyppoisson import verify as V


def report(capsys, number, title, ok, residual, tol, seconds, budget, extra=""):
    line = (f"criterion {number:2d} [{title}]: {'PASS' if ok else 'FAIL'} "
            f"residual={residual:.3e} tol={tol:.0e} time={seconds:.1f}s/{budget}s {extra}").rstrip()
    with capsys.disabled():
        print("\n" + line)


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def check_and_report(capsys, number, title, fn, budget, extra=lambda res: ""):
    res, secs = timed(fn)
    ok = res.passed and secs < budget
    report(capsys, number, title, ok, res.residual, res.tolerance, secs, budget, extra(res))
    assert res.passed, res.details
    assert secs < budget
    return res


def test_criterion_01_takahashi(capsys):
    check_and_report(capsys, 1, "takahashi integral", lambda: V.check_takahashi(1e-8), 10)


def test_criterion_02_bateman(capsys):
    check_and_report(capsys, 2, "bateman integral", lambda: V.check_bateman(1e-8), 10)


def test_criterion_03_contiguous(capsys):
    res = check_and_report(capsys, 3, "contiguous relation", lambda: V.check_contiguous(1e-10), 5,
                           lambda r: f"sign={r.details['sign']}")
    assert res.details["sign"] == "(a-b)"


def test_criterion_04_kernel_invariance(capsys):
    check_and_report(capsys, 4, "kernel K-invariance", lambda: V.check_kernel_invariance(2, 1e-11), 5)


def test_criterion_05_elementary(capsys):
    res = check_and_report(capsys, 5, "elementary spherical", lambda: V.check_elementary((2, 3), 1e-6), 60,
                           lambda r: f"c_n={r.details['c_n']}")
    assert all(abs(c - 1.0) < 1e-10 for c in res.details["c_n"].values())


def test_criterion_06_scalarity(capsys):
    res = check_and_report(capsys, 6, "scalarity", lambda: V.check_scalarity(2, 1e-5), 300,
                           lambda r: (f"exponent={r.details['radial_exponent']} "
                                      f"spread_q={r.details['spread_q']:.1e} spread_p={r.details['spread_p']:.1e}"))
    assert res.details["radial_exponent"] == "q"
    assert res.details["spread_p"] > 1e-2


def test_criterion_07_limit(capsys):
    check_and_report(capsys, 7, "limit law", lambda: V.check_limit(2, 1e-3), 60,
                     lambda r: (f"constant_err={r.details['constant_error']:.1e} "
                                f"ktype_spread={r.details['ktype_spread']:.1e}"))


def test_criterion_08_remark54(capsys):
    res = check_and_report(capsys, 8, "(0,0) proportionality", lambda: V.check_remark54(2, 1e-8), 10,
                           lambda r: f"collapse_err={r.details['collapse_error']:.1e}")
    assert res.details["collapse_error"] < 1e-9


def test_criterion_09_sandwich(capsys):
    res = check_and_report(capsys, 9, "norm sandwich", lambda: V.check_sandwich(2, 1e-3), 120,
                           lambda r: f"homogeneity_err={r.details['homogeneity_error']:.1e}")
    assert res.details["homogeneity_error"] < 1e-12


def test_criterion_10_inversion(capsys):
    res = check_and_report(capsys, 10, "inversion", lambda: V.check_inversion(2, 1e-2), 30,
                           lambda r: "errors=" + ",".join(f"{e:.2e}" for e in r.details["errors"]))
    assert res.details["decreasing"]


def test_criterion_11_determinism(capsys, tmp_path):
    def run_twice():
        blobs = []
        for name in ("first.json", "second.json"):
            path = tmp_path / name
            proc = subprocess.run([sys.executable, "-m", "hyppoisson", "verify", "--n", "2", "--output", str(path)],
                                  capture_output=True, check=False)
            assert proc.returncode == 0, proc.stderr
            blobs.append(path.read_bytes())
        return blobs

    blobs, secs = timed(run_twice)
    same = blobs[0] == blobs[1]
    report(capsys, 11, "determinism", same, 0.0 if same else 1.0, 0, secs, 120, f"bytes={len(blobs[0])}")
    assert same
