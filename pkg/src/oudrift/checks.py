"""Fast property suites behind the `check` CLI subcommand.

Each check returns (name, passed, detail). Suites keep sample sizes small
enough to finish in seconds; the test suite runs the full-size versions.
"""

from __future__ import annotations

import math

import numpy as np

from . import cgf, concentration, montecarlo, process, rates


def _check(name, passed, detail=""):
    return {"name": name, "passed": bool(passed), "detail": detail}


def check_cgf():
    checks = []
    worst = 0.0
    for b in (-5.0, -1.0, -0.1):
        for T in (0.5, 1.0, 5.0):
            got = cgf.finite_cgf(0.0, T, 0.0, b).value
            want = -math.log(math.cosh(math.sqrt(-2.0 * b) * T)) / (2.0 * T)
            worst = max(worst, abs(got - want))
    checks.append(_check("cameron-martin", worst < 1e-10, f"max gap {worst:.2e}"))

    ok = True
    for theta in (-1.0, 0.0, 1.0):
        a, b = 0.3, -0.4
        lim = cgf.limiting_cgf(theta, a, b)
        diffs = [abs(cgf.finite_cgf(theta, T, a, b).value - lim) for T in (5.0, 20.0, 80.0)]
        ok = ok and diffs[0] > diffs[1] > diffs[2] and diffs[2] < 0.01
    checks.append(_check("limit-convergence", ok, "gap shrinks along T ladder"))

    ok = True
    rng = np.random.default_rng(0)
    for theta in (-1.0, 0.0, 1.0):
        bound = theta * theta / 2.0 if theta <= 0 else 0.0
        for _ in range(40):
            a1, a2 = rng.uniform(-2, 2, 2)
            b1, b2 = bound - rng.uniform(0.05, 2.0, 2)
            mid = cgf.limiting_cgf(theta, (a1 + a2) / 2, (b1 + b2) / 2)
            avg = (cgf.limiting_cgf(theta, a1, b1) + cgf.limiting_cgf(theta, a2, b2)) / 2
            ok = ok and mid <= avg + 1e-9
    checks.append(_check("limit-convexity", ok, "midpoint convexity on random pairs"))

    ok = True
    for theta in (0.0, 0.5):
        for b in (-0.5, -0.1):
            v = cgf.finite_cgf_W(theta, 1.0, 0.0, b).value
            w = cgf.finite_cgf(theta, 1.0, 0.0, b).value
            ok = ok and abs(v - w) < 1e-12
    checks.append(_check("squared-variant-at-a0", ok, "matches couple CGF at a=0"))
    return checks


def check_rates():
    checks = []
    ok = all(rates.mle_rate(t, t).value == 0.0 for t in (-2.0, -1.0, 0.0, 1.0, 2.0))
    checks.append(_check("zero-at-truth", ok))

    ok = True
    for theta in (-2.0, -1.0):
        v = rates.mle_rate(theta, theta / 3.0).value
        ok = ok and abs(v + theta / 3.0) < 1e-12
    checks.append(_check("stable-branch-continuity", ok, "value -theta/3 at z=theta/3"))

    worst = 0.0
    for theta, zs in ((-1.0, np.linspace(-4, 3, 29)), (0.0, np.linspace(-4, 3, 29)),
                      (1.0, np.concatenate([np.linspace(-4, -1, 14), np.linspace(1.05, 4, 15)]))):
        for z in zs:
            gap = abs(rates.contraction_infimum(theta, float(z)).value
                      - rates.mle_rate(theta, float(z)).value)
            worst = max(worst, gap)
    checks.append(_check("contraction-identity", worst < 1e-8, f"max gap {worst:.2e}"))

    ok = True
    for x in (-2.0, 0.0, 1.5):
        for mult in (1.0, 2.0, 5.0):
            y = mult * (1.0 + x * x) / 2.0  # multiples of the plateau edge at theta=1
            ok = ok and rates.joint_rate(1.0, x, y).value == 1.0
    checks.append(_check("explosive-plateau-constant", ok, "rate equals theta off the exposed set"))

    worst = 0.0
    for theta in (-1.0, 0.0, 1.0):
        for x in (-1.0, 0.0, 2.0):
            for y in (0.3, 1.0, 2.5):
                got = rates.numeric_legendre(theta, x, y, tol=1e-6)
                want = rates.joint_rate(theta, x, y)
                worst = max(worst, abs(got.value - want.value))
    checks.append(_check("legendre-duality", worst < 1e-4, f"max gap {worst:.2e}"))
    return checks


def check_concentration():
    checks = []
    ok = True
    detail = ""
    for theta in (-1.0, 0.0, 1.0):
        for T in (1.0, 10.0):
            for x in (0.5, 1.0, 2.0):
                num = concentration.ci_bound(theta, T, x)
                cor = concentration.corollary_bound(theta, T, x)
                if not (num.bound <= cor.bound * (1 + 1e-9) and cor.bound <= 1.0):
                    ok = False
                    detail = f"violated at theta={theta}, T={T}, x={x}"
    checks.append(_check("bound-dominance", ok, detail))

    ok = True
    for theta in (-1.0, 0.0, 1.0):
        for T in (1.0, 5.0):
            for b in (-2.0, -0.5, -0.1):
                exact = T * cgf.finite_cgf(theta, T, 0.0, b).value
                ok = ok and exact <= concentration.log_laplace_upper_bound(theta, T, b) + 1e-12
    checks.append(_check("laplace-dominance", ok))

    ok = True
    for theta, T, x in ((-1.0, 10.0, 1.0), (0.0, 10.0, 1.0), (1.0, 5.0, 1.0)):
        y = concentration.optimal_y(theta, T, x)
        h = 1e-5 * y
        deriv = (concentration.h_T(theta, T, x, y + h)
                 - concentration.h_T(theta, T, x, y - h)) / (2 * h)
        ok = ok and abs(deriv) < 1e-6
    checks.append(_check("argmax-stationarity", ok))
    return checks


def check_mc(n=20000, seed=0):
    checks = []
    est = montecarlo.supermartingale_check(-1.0, 1.0, 0.5, n, seed=seed)
    ok = est.p_hat <= 1.0 + 3.0 * est.se
    checks.append(_check("supermartingale", ok, f"mean {est.p_hat:.4f} (se {est.se:.4f})"))

    est = montecarlo.mean_weight_check(1.0, 0.0, 1.0, n, seed=seed)
    ok = abs(est.p_hat - 1.0) <= 4.0 * est.se
    checks.append(_check("weight-unbiasedness", ok, f"mean {est.p_hat:.4f} (se {est.se:.4f})"))

    model = process.OuModel(0.0, 4.0)
    event = montecarlo.EventSpec("mle_ge", 0.0)
    est = montecarlo.estimate_tail(model, process.GridSpec(16), event, n, seed=seed)
    want = math.erfc(1.0 / math.sqrt(2.0))
    ok = abs(est.p_hat - want) <= 4.0 * est.se
    checks.append(_check("gaussian-tail", ok, f"{est.p_hat:.4f} vs {want:.4f}"))
    return checks


SUITES = {
    "cgf": check_cgf,
    "rates": check_rates,
    "concentration": check_concentration,
    "mc": check_mc,
}


def run_suite(name: str):
    if name == "all":
        results = []
        for suite in SUITES.values():
            results.extend(suite())
        return results
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name]()
