"""Randomized property suites shared by the unit tests and the acceptance script.

Each suite draws its own pairs from a seeded generator and returns a
``Suite`` with the number of trials, how many of them actually exercised the
implication (premise true), and the violations found.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from distorted_sd import (
    GP,
    ConvexityOrder,
    Identity,
    PhiM,
    Power,
    check_fsd,
    check_hdsd,
    check_icx,
    check_risk_loving_hdsd,
    check_ssd,
    check_t3_shortcut,
    compare_convexity,
    constant,
    detect_single_crossing,
    discrete,
    distorted_expectation,
    dual,
    expectation,
    isotonicity_check,
    logistic,
    normal,
    order_statistic_extreme,
    partial_distorted_mean,
    uniform,
)
from distorted_sd.dominance import _gap_verdict, _merged_panels
from distorted_sd.integrals import power_normalized_partial_mean


@dataclass
class Suite:
    name: str
    trials: int = 0
    exercised: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return f"{self.name}: {self.trials} trials, {self.exercised} exercised, {len(self.violations)} violations"


# -- generators ---------------------------------------------------------------

def random_discrete(rng, n_max=5, lo=0, hi=10, integer=True):
    n = int(rng.integers(1, n_max + 1))
    if integer:
        values = rng.integers(lo, hi, n).astype(float)
    else:
        values = rng.uniform(lo, hi, n)
    probs = rng.dirichlet(np.ones(n)) if rng.random() < 0.5 else np.full(n, 1.0 / n)
    return discrete(values, probs)


def random_pair(rng, **kw):
    return random_discrete(rng, **kw), random_discrete(rng, **kw)


def fsd_pair(rng):
    """``(X, Y)`` with ``Q_X >= Q_Y`` by construction."""
    y = random_discrete(rng)
    bump = rng.integers(0, 3, y.values.size).astype(float)
    x_vals = np.maximum.accumulate(y.values + bump)
    return discrete(x_vals, y.probs), y


def builtin_distortions(rng):
    k = float(rng.choice([0.3, 0.5, 1.0, 1.5, 2.0, 3.0])) * float(rng.uniform(0.8, 1.25))
    m = float(rng.uniform(1.2, 4.0))
    return [
        Identity(),
        Power(k),
        PhiM(m),
        GP(float(rng.uniform(0.1, 1.0))),
        dual(Power(k)),
        dual(PhiM(m)),
    ]


def invertible_distortions(rng):
    return [h for h in builtin_distortions(rng) if h.invertible]


# -- dominance suites -----------------------------------------------------------

def fsd_implies_hdsd(trials=200, seed=1) -> Suite:
    s = Suite("FSD implies H-DSD")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = fsd_pair(rng)
        s.trials += 1
        if not check_fsd(x, y).holds:
            s.violations.append(("fsd construction", x, y))
            continue
        s.exercised += 1
        for h in builtin_distortions(rng):
            if not check_hdsd(x, y, h).holds:
                s.violations.append((str(h), x, y))
    return s


def convexity_implication(trials=500, seed=2) -> Suite:
    """More convex ``H`` dominating implies every less convex ``G`` dominates."""
    s = Suite("more convex implies weaker")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = random_pair(rng)
        hs = invertible_distortions(rng)
        i, j = rng.choice(len(hs), 2, replace=False)
        h, g = hs[i], hs[j]
        if compare_convexity(h, g) is not ConvexityOrder.MORE_CONVEX:
            h, g = g, h
        s.trials += 1
        if compare_convexity(h, g) is not ConvexityOrder.MORE_CONVEX:
            continue
        if not check_hdsd(x, y, h).holds:
            continue
        s.exercised += 1
        if not check_hdsd(x, y, g).holds:
            s.violations.append((str(h), str(g), x, y))
        if check_risk_loving_hdsd(x, y, h).holds and not check_risk_loving_hdsd(x, y, g).holds:
            s.violations.append(("loving", str(h), str(g), x, y))
    return s


PROBE_KS = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)


def downward_closure(trials=200, seed=3) -> Suite:
    s = Suite("downward closure")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = random_pair(rng)
        s.trials += 1
        holds = [check_hdsd(x, y, Power(k)).holds for k in PROBE_KS]
        if any(holds) and not all(holds):
            s.exercised += 1
        # once false, stays false
        first_false = holds.index(False) if False in holds else len(holds)
        if any(holds[first_false:]):
            s.violations.append((holds, x, y))
    return s


def antisymmetry(trials=200, seed=4) -> Suite:
    s = Suite("antisymmetry")
    rng = np.random.default_rng(seed)
    for i in range(trials):
        if i % 2:
            x = random_discrete(rng)
            # same law written differently: split an atom in two
            v, p = np.append(x.values, x.values[0]), np.append(x.probs, 0.0)
            p[0] *= 0.5
            p[-1] = p[0]
            x, y = x, discrete(v, p)
        else:
            x, y = random_pair(rng, n_max=3, hi=4)
        s.trials += 1
        for k in (0.5, 1.0, 3.0):
            if check_hdsd(x, y, Power(k)).holds and check_hdsd(y, x, Power(k)).holds:
                s.exercised += 1
                _, delta = _merged_panels(x, y)
                if np.max(np.abs(delta)) > 1e-9:
                    s.violations.append((k, x, y))
    return s


def order_statistic_equivalence(trials=150, seed=5) -> Suite:
    """Power(k) dominance vs SSD of maxima, and the loving side vs ICX of minima."""
    s = Suite("order-statistic equivalences")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = random_pair(rng)
        s.trials += 1
        for k in (2, 3):
            a = check_hdsd(x, y, Power(k)).holds
            b = check_ssd(order_statistic_extreme(x, k, "max"), order_statistic_extreme(y, k, "max")).holds
            c = check_risk_loving_hdsd(x, y, Power(k)).holds
            d = check_icx(order_statistic_extreme(x, k, "min"), order_statistic_extreme(y, k, "min")).holds
            s.exercised += int(a) + int(c)
            if a != b:
                s.violations.append(("max", k, x, y))
            if c != d:
                s.violations.append(("min", k, x, y))
    return s


def _single_crossing_pair(rng):
    kind = int(rng.integers(0, 4))
    if kind == 0:
        c = float(rng.uniform(0.05, 0.95))
        return constant(c), uniform(0.0, 1.0)
    mu_y = float(rng.uniform(-1, 1))
    mu_x = mu_y + float(rng.uniform(0.0, 0.5))
    s_x = float(rng.uniform(0.5, 1.5))
    s_y = s_x + float(rng.uniform(0.05, 0.6))
    if kind == 1:
        return logistic(mu_x, s_x), logistic(mu_y, s_y)
    if kind == 2:
        return normal(mu_x, s_x), normal(mu_y, s_y)
    # uniform [mu, mu + sigma]: crossing inside needs (mu_x - mu_y) < (s_y - s_x)
    return uniform(mu_y + 0.5 * (s_y - s_x) * rng.random(), mu_y + 0.5 * (s_y - s_x) + s_y), uniform(mu_y, mu_y + s_y)


def shortcut_agreement(trials=200, seed=6, band=1e-7) -> Suite:
    s = Suite("single-crossing shortcut vs full check")
    rng = np.random.default_rng(seed)
    while s.trials < trials:
        x, y = _single_crossing_pair(rng)
        if not detect_single_crossing(x, y).single_crossing_from_below:
            continue
        h = Power(float(np.exp(rng.uniform(np.log(0.2), np.log(6.0)))))
        s.trials += 1
        fast = check_t3_shortcut(x, y, h)
        full = _gap_verdict(x, y, h)
        if abs(fast.min_average_gap) <= band or abs(full.min_average_gap) <= band:
            continue
        s.exercised += 1
        if fast.holds != full.holds:
            s.violations.append((str(h), x, y, fast, full))
    return s


def convergence_ladder(trials=150, seed=7) -> Suite:
    """``u^-k int_0^u Q dt^k`` approaches ``Q(u)`` as ``k`` grows."""
    s = Suite("convergence ladder")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = random_discrete(rng, integer=False)
        u = float(rng.uniform(0.01, 1.0))
        if np.min(np.abs(x.cum - u)) < 1e-6:
            continue
        s.trials += 1
        q = float(x.quantile(min(u, 1 - 1e-15)))
        errs = [abs(power_normalized_partial_mean(x, u, k) - q) for k in (10, 100, 1000)]
        if errs[0] > 0:
            s.exercised += 1
        if not (errs[1] <= errs[0] + 1e-12 and errs[2] <= errs[1] + 1e-12):
            s.violations.append((u, errs, x))
    return s


# -- risk measure suites ------------------------------------------------------

def random_increasing_distortions(rng, n=20):
    out = []
    for _ in range(n):
        pick = int(rng.integers(0, 5))
        if pick == 0:
            out.append(Power(float(np.exp(rng.uniform(-2, 2)))))
        elif pick == 1:
            out.append(PhiM(float(rng.uniform(0.3, 5))))
        elif pick == 2:
            out.append(GP(float(rng.uniform(0.05, 1.0))))
        elif pick == 3:
            out.append(dual(Power(float(np.exp(rng.uniform(-2, 2))))))
        else:
            out.append(dual(PhiM(float(rng.uniform(0.3, 5)))))
    return out


def isotonicity_fsd(trials=100, seed=8) -> Suite:
    s = Suite("FSD isotonicity")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = fsd_pair(rng)
        s.trials += 1
        s.exercised += 1
        for phi in random_increasing_distortions(rng):
            if distorted_expectation(x, phi) < distorted_expectation(y, phi) - 1e-10:
                s.violations.append((str(phi), x, y))
    return s


def isotonicity_ssd(trials=150, seed=9) -> Suite:
    """SSD orders every convex phi, GP(p) included."""
    s = Suite("SSD isotonicity")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = random_pair(rng)
        s.trials += 1
        if not check_ssd(x, y).holds:
            continue
        s.exercised += 1
        phis = [Power(float(rng.uniform(1, 5))), GP(float(rng.uniform(0.05, 1.0))), Identity()]
        for phi in phis:
            if distorted_expectation(x, phi) < distorted_expectation(y, phi) - 1e-10:
                s.violations.append((str(phi), x, y))
    return s


def _icx_pair(rng):
    """``X`` is ``Y`` with one interior mass spread to its neighbours, plus a shift."""
    y = discrete(np.arange(5.0), rng.dirichlet(np.ones(5)))
    p = y.probs.copy()
    i = int(rng.integers(1, 4))
    take = p[i] * rng.uniform(0, 1)
    p[i] -= take
    p[i - 1] += take / 2
    p[i + 1] += take / 2
    shift = float(rng.choice([0.0, rng.uniform(0, 0.5)]))
    return discrete(np.arange(5.0) + shift, p), y


def isotonicity_icx(trials=150, seed=10) -> Suite:
    s = Suite("ICX isotonicity")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = _icx_pair(rng)
        s.trials += 1
        if not check_icx(x, y).holds:
            s.violations.append(("construction", x, y))
            continue
        s.exercised += 1
        for k in rng.uniform(0.05, 1.0, 4):
            phi = Power(float(k))
            if distorted_expectation(x, phi) < distorted_expectation(y, phi) - 1e-10:
                s.violations.append((str(phi), x, y))
    return s


def hdsd_preservation(trials=150, seed=11) -> Suite:
    s = Suite("H-DSD preservation")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = random_pair(rng)
        s.trials += 1
        k = float(rng.uniform(0.3, 4.0))
        j = float(rng.uniform(0.2, 4.0))
        m = float(rng.uniform(1.1, 4.0))
        h = Power(k)
        for phi in (Power(j), PhiM(m)):
            for side in ("averse", "loving", "mixed"):
                rep = isotonicity_check(x, y, h, phi, side, h2=h if side == "mixed" else None)
                if rep.dominance_holds and rep.preserving:
                    s.exercised += 1
                if not rep.consistent:
                    s.violations.append((side, str(h), str(phi), x, y, rep))
    return s


def min_expectation_chain(trials=150, seed=12) -> Suite:
    s = Suite("min-expectation chain")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x, y = random_pair(rng)
        m = int(rng.integers(1, 4))
        s.trials += 1
        if not check_hdsd(x, y, Power(m)).holds:
            continue
        s.exercised += 1
        for n in range(m, m + 4):
            ex = expectation(order_statistic_extreme(x, n, "min"))
            ey = expectation(order_statistic_extreme(y, n, "min"))
            if ex < ey - 1e-10:
                s.violations.append((m, n, x, y))
    return s


def gp_oracle(n_random=50, seed=13):
    """Largest ``|rho_GP(p)(X) - int_0^p Q_X|`` over p in {0.05, ..., 0.95}."""
    rng = np.random.default_rng(seed)
    ps = np.round(np.arange(0.05, 0.951, 0.05), 10)
    dists = [random_discrete(rng, n_max=8, lo=-5, hi=5, integer=False) for _ in range(n_random)]
    dists.append(uniform(0.0, 1.0))
    worst = 0.0
    for d in dists:
        for p in ps:
            ref = float(partial_distorted_mean(d, p, Identity()))
            if d == uniform(0.0, 1.0):
                ref = p * p / 2.0  # closed form, independent of the library
            worst = max(worst, abs(distorted_expectation(d, GP(float(p))) - ref))
    return worst, len(dists)


ALL_SUITES = (
    fsd_implies_hdsd,
    convexity_implication,
    downward_closure,
    antisymmetry,
    order_statistic_equivalence,
    shortcut_agreement,
    convergence_ladder,
    isotonicity_fsd,
    isotonicity_ssd,
    isotonicity_icx,
    hdsd_preservation,
    min_expectation_chain,
)
