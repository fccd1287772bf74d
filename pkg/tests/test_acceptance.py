"""Acceptance criteria, one test per criterion, each at its stated tolerance.

Every criterion prints a single ``ACCEPTANCE <n> PASS|FAIL ...`` line (also
collected into the pytest terminal summary).  Run standalone with
``python tests/test_acceptance.py``.
"""

import math
import time

import mpmath as mp
import pytest

from mzvtools.compositions import compositions_of, compositions_up_to, depth, hoffman_dual, mzv_dual_index, plus_first, reverse, weight
from mzvtools.formulas import (
    a_transform_terms,
    cor34_check,
    cor34_sides,
    expand_eta,
    expand_psi,
    expand_thm21_rhs,
    expand_thm23_rhs,
    expand_xi,
    sym_residual,
)
from mzvtools.quadrature import IntegrandSpec, eta_value_by_integral, integrate, psi_value_by_integral, xi_value_by_integral
from mzvtools.series import eval_t, eval_zeta, eval_zeta_star

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # standalone run
    ACCEPTANCE_LINES = []

mp.mp.dps = 30
ZETA2 = float(mp.zeta(2))
ZETA3 = float(mp.zeta(3))
PI = float(mp.pi)
KS = [(1,), (2,), (1, 1), (2, 1), (1, 2), (2, 2)]
QUAD_TOL = 1e-9


def _integral_vs_expansion(family, k, k_log, alpha, variant=None):
    quad = integrate(IntegrandSpec(family, k, k_log, alpha), QUAD_TOL)
    if family == "thm23_eta":
        rhs, _ = expand_thm23_rhs(k, k_log, alpha).evaluate(1e-12)
    else:
        rhs, _ = expand_thm21_rhs(k, k_log, variant, alpha).evaluate(1e-12)
    return abs(quad.value - rhs)


def criterion_1():
    start = time.perf_counter()
    lhs = integrate(IntegrandSpec("thm21_zeta", (2, 2), 1, 0.0), QUAD_TOL).value
    rhs = -2 * eval_zeta((3, 2, 1)).value - 2 * eval_zeta((2, 3, 1)).value - eval_zeta((2, 2, 2)).value
    elapsed = time.perf_counter() - start
    res = abs(lhs - rhs)
    return res <= 1e-5 and elapsed <= 60, f"residual={res:.2e} (<=1e-5) runtime={elapsed:.2f}s (<=60s)"


def criterion_2():
    start = time.perf_counter()
    worst, bad = 0.0, []
    for family, variant in (("thm21_zeta", "zeta"), ("thm21_t", "tvalue")):
        for k in KS:
            for k_log in (0, 1, 2):
                for alpha in (0.0, -0.5):
                    r = _integral_vs_expansion(family, k, k_log, alpha, variant)
                    worst = max(worst, r)
                    if r > 1e-5:
                        bad.append((variant, k, k_log, alpha))
    elapsed = time.perf_counter() - start
    return not bad and elapsed <= 900, f"72 cases, max residual={worst:.2e} (<=1e-5), failures={bad}, sweep={elapsed:.2f}s (<=900s)"


def criterion_3():
    worst = 0.0
    for k in [(1,), (2,), (1, 1), (2, 1), (1, 2)]:
        for alpha in (0.0, -0.5):
            worst = max(worst, _integral_vs_expansion("thm23_eta", k, 0, alpha))
    return worst <= 1e-5, f"10 cases, max residual={worst:.2e} (<=1e-5)"


def criterion_4():
    checks = [
        ("xi(1;1)=zeta(2)", xi_value_by_integral, expand_xi, 0, ZETA2),
        ("xi(2;1)=2zeta(3)", xi_value_by_integral, expand_xi, 1, 2 * ZETA3),
        ("psi(1;1)=pi^2/4", psi_value_by_integral, expand_psi, 0, PI**2 / 4),
        ("psi(2;1)=7zeta(3)/2", psi_value_by_integral, expand_psi, 1, 3.5 * ZETA3),
    ]
    ok, parts = True, []
    for name, integral, expansion, k_log, const in checks:
        a = integral((1,), k_log, QUAD_TOL).value
        b = expansion((1,), k_log).evaluate(1e-12)[0]
        dev = max(abs(a - b), abs(a - const), abs(b - const))
        ok &= dev <= 1e-6
        parts.append(f"{name}: {dev:.1e}")
    return ok, "; ".join(parts) + " (<=1e-6)"


def criterion_5():
    checks = [("eta(1;1)=pi^2/6", (1,), PI**2 / 6), ("eta(1;1,1)=-2zeta(3)", (1, 1), -2 * ZETA3)]
    ok, parts = True, []
    for name, k, const in checks:
        a = eta_value_by_integral(k, 0, QUAD_TOL).value
        b = expand_eta(k, 0).evaluate(1e-12)[0]
        dev = max(abs(a - b), abs(a - const), abs(b - const))
        ok &= dev <= 1e-6
        parts.append(f"{name}: integral={a:.12f} expansion={b:.12f} deviation={dev:.1e}")
    return ok, "; ".join(parts) + " (<=1e-6)"


def criterion_6():
    worst = 0.0
    for variant in ("zeta", "tvalue"):
        for p in (2, 3):
            for q in (1, 2, 3):
                for m in (2, 3):
                    worst = max(worst, sym_residual(p, q, m, variant, 1e-12).residual)
    square = abs(2 * eval_t((2, 2)).value + 4 * eval_t((3, 1)).value - PI**4 / 16)
    return worst <= 1e-6 and square <= 1e-6, f"24 cases, max residual={worst:.2e}; 2T(2,2)+4T(3,1)-pi^4/16={square:.1e} (<=1e-6)"


def criterion_7():
    ok, worst, empty = True, 0.0, 0
    for variant in ("zeta", "tvalue"):
        for p in (2, 3):
            for q in (1, 2, 3, 4):
                if q % 2 == 0:
                    lhs, rhs = cor34_sides(p, q, variant)
                    ok &= lhs.terms == () and rhs.terms == ()
                    empty += 1
                else:
                    r = cor34_check(p, q, variant, 1e-12).residual
                    worst = max(worst, r)
                    ok &= r <= 1e-5
    return ok, f"{empty} even-q cases with empty merged lists; odd-q max residual={worst:.2e} (<=1e-5)"


def criterion_8():
    worst = 0.0
    for p in (2, 3):
        for q in (1, 2):
            for t in (0.3, 0.5, 0.7):
                worst = max(worst, a_transform_terms(p, q, t, 1e-12).residual)
    return worst <= 1e-5, f"12 cases, max residual={worst:.2e} (<=1e-5)"


def criterion_9():
    start = time.perf_counter()
    failures = n = 0
    for w in range(1, 13):
        for k in compositions_of(w):
            n += 1
            d = hoffman_dual(k)
            if hoffman_dual(d) != k or weight(d) != w or depth(d) != w + 1 - depth(k) or hoffman_dual(reverse(k)) != reverse(d):
                failures += 1
    elapsed = time.perf_counter() - start
    return failures == 0 and n == 2**12 - 1 and elapsed <= 10, f"{n} compositions, {failures} failures, {elapsed:.2f}s (<=10s)"


def criterion_10():
    devs = {
        "zeta(2,1)=zeta(3)": abs(eval_zeta((2, 1)).value - ZETA3),
        "zeta*(2,1)=2zeta(3)": abs(eval_zeta_star((2, 1)).value - 2 * ZETA3),
    }
    devs["T(k), k=2..6"] = max(abs(eval_t((k,)).value - 2 * (1 - 2.0**-k) * float(mp.zeta(k))) for k in range(2, 7))
    devs["duality, weight<=5"] = max(
        abs(eval_zeta(plus_first(m)).value - eval_zeta(mzv_dual_index(m)).value) for m in compositions_up_to(4)
    )
    worst = max(devs.values())
    return worst <= 1e-7, "; ".join(f"{k}: {v:.1e}" for k, v in devs.items()) + " (<=1e-7)"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


def _run(n):
    ok, detail = CRITERIA[n]()
    line = f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok, detail


@pytest.mark.parametrize("n", list(CRITERIA))
def test_criterion(n):
    ok, detail = _run(n)
    assert ok, detail


if __name__ == "__main__":
    results = [_run(n)[0] for n in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
