"""Named verification suites with machine-readable reports.

Each suite runs one module's invariant set and returns CheckResult records;
the CLI maps suites to the `verify` subcommand and derives its exit code from
them.  A `corrupt` mapping can offset selected internal constants (fault
injection), which must surface as named check failures rather than crashes.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics as asym
from . import pde
from .errors import DomainError
from .exponents import (
    delta_minus,
    delta_plus,
    eigenvalue,
    gap,
    jacobi_params,
    kpz,
    kpz_leg_identity_residual,
    leg_weight,
    weight_floor,
)
from .green import OneIntervalGreen, TwoIntervalGreen
from .heat_kernel import HeatKernel, bound_ratio_scan
from .jacobi import JacobiBasis, gauss_jacobi_rule, log_beta

THREAD_ENV = "NULLSTATE_THREADS"

KAPPA_GRID = (0.5, 2.0, 10.0 / 3.0, 4.0, 16.0 / 3.0, 6.0, 20.0 / 3.0, 7.9)
SUPPORTED_CORRUPTIONS = ("lambda0", "alpha", "beta")


def worker_count() -> int:
    """Thread-count override for grid sweeps, from the environment."""
    raw = os.environ.get(THREAD_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map(fn, items):
    n = worker_count()
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class Report:
    command: str
    params: dict
    checks: list
    wall_time: float = 0.0
    seed: int | None = None
    schema: int = 1

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "passed": self.passed,
            "wall_time": self.wall_time,
            "checks": [c.to_dict() for c in self.checks],
        }


def _leq(name: str, value: float, tol: float, detail: str = "") -> CheckResult:
    return CheckResult(name=name, value=float(value), tolerance=float(tol),
                       passed=bool(value <= tol), detail=detail)


def _is(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, value=0.0 if ok else 1.0, tolerance=0.0,
                       passed=bool(ok), detail=detail)


def _check_corrupt(corrupt: dict | None) -> dict:
    corrupt = dict(corrupt or {})
    unknown = set(corrupt) - set(SUPPORTED_CORRUPTIONS)
    if unknown:
        raise DomainError(f"unknown corruption keys {sorted(unknown)!r}; "
                          f"supported: {SUPPORTED_CORRUPTIONS}")
    return corrupt


# -- exponents -----------------------------------------------------------------


def suite_exponents(kappas=KAPPA_GRID, s_max: int = 10, h_legs: int = 5) -> list:
    checks = []
    worst_leg = 0.0
    worst_closed = 0.0
    worst_vieta_sum = 0.0
    worst_vieta_prod = 0.0
    worst_lam0 = 0.0
    worst_gap = 0.0
    monotone = True
    params_positive = True
    for kappa in kappas:
        th1 = leg_weight(1, kappa)
        for s in range(1, s_max + 1):
            rp, rm = kpz_leg_identity_residual(s, kappa)
            worst_leg = max(worst_leg, abs(rp), abs(rm))
            pair = kpz(leg_weight(s, kappa), kappa)
            worst_closed = max(
                worst_closed,
                abs(pair.delta_plus - 2.0 * s / kappa),
                abs(pair.delta_minus - (1.0 - (2.0 * s + 4.0) / kappa)),
            )
        floor = weight_floor(kappa)
        ds = [leg_weight(s, kappa) for s in range(0, s_max + 1)]
        ds += [floor + 0.1, 0.7, 5.0, 25.0]
        for d in ds:
            pair = kpz(d, kappa)
            worst_vieta_sum = max(worst_vieta_sum, abs(pair.vieta_sum - (kappa - 4.0) / kappa))
            worst_vieta_prod = max(worst_vieta_prod, abs(pair.vieta_product + 4.0 * d / kappa))
            worst_gap = max(worst_gap, -pair.gap)
        for s in range(1, h_legs + 1):
            h = leg_weight(s, kappa)
            lam0 = eigenvalue(0, h, kappa)
            target = 2.0 * delta_plus(h, kappa) + delta_plus(th1, kappa)
            worst_lam0 = max(worst_lam0, abs(lam0 - target))
            p = jacobi_params(h, kappa)
            params_positive &= p.alpha > 0.0 and p.beta > 0.0
            lams = [eigenvalue(n, h, kappa) for n in range(21)]
            monotone &= all(b > a for a, b in zip(lams, lams[1:]))
    checks.append(_leq("kpz_leg_identity_residual", worst_leg, 1e-12))
    checks.append(_leq("kpz_closed_form_residual", worst_closed, 1e-12))
    checks.append(_leq("vieta_sum_residual", worst_vieta_sum, 1e-12))
    checks.append(_leq("vieta_product_residual", worst_vieta_prod, 1e-12))
    checks.append(_leq("lambda0_identity_residual", worst_lam0, 1e-12))
    checks.append(_leq("gap_nonnegative", worst_gap, 0.0))
    checks.append(_is("jacobi_params_positive", params_positive))
    checks.append(_is("eigenvalue_monotone", monotone))
    return checks


# -- jacobi ----------------------------------------------------------------------


def suite_jacobi(
    alpha: float,
    beta: float,
    n_operator: int = 20,
    n_ortho: int = 15,
    n_sum: int = 8,
    seed: int = 0,
) -> list:
    basis = JacobiBasis(alpha, beta)
    flipped = JacobiBasis(beta, alpha)
    rng = np.random.default_rng(seed)
    checks = []

    ys = rng.uniform(-1.0, 1.0, size=50)
    worst = 0.0
    for n in range(n_sum + 1):
        ref = max(basis.endpoint_max(n), 1.0)
        diff = np.max(np.abs(basis.eval(n, ys) - basis.eval_explicit_sum(n, ys)))
        worst = max(worst, diff / ref)
    checks.append(_leq("recurrence_vs_gamma_sum", worst, 1e-10))

    rule = gauss_jacobi_rule(2 * n_ortho + 10, basis)
    table = basis.eval_table(n_ortho, rule.nodes)
    grams = (table * rule.weights) @ table.T
    worst_off = 0.0
    worst_norm = 0.0
    for n in range(n_ortho + 1):
        hn = basis.norm_sq(n)
        worst_norm = max(worst_norm, abs(grams[n, n] - hn) / hn)
        for m in range(n):
            worst_off = max(worst_off, abs(grams[m, n]) / math.sqrt(basis.norm_sq(m) * hn))
    checks.append(_leq("orthogonality", worst_off, 1e-10))
    checks.append(_leq("norm_vs_closed_form", worst_norm, 1e-10))

    unit = gauss_jacobi_rule(2 * n_ortho + 10, basis, domain="unit")
    worst_shift = 0.0
    for n in range(n_ortho + 1):
        f = lambda s: basis.eval(n, 2.0 * s - 1.0) ** 2
        q = unit.integrate(f)
        ref = basis.shifted_norm_sq(n)
        worst_shift = max(worst_shift, abs(q - ref) / ref)
    checks.append(_leq("shifted_norm_relation", worst_shift, 1e-10))

    worst_sym = 0.0
    for n in range(n_ortho + 1):
        ref = max(basis.endpoint_max(n), 1.0)
        diff = np.max(np.abs(basis.eval(n, -ys) - (-1.0) ** n * flipped.eval(n, ys)))
        worst_sym = max(worst_sym, diff / ref)
    checks.append(_leq("parameter_symmetry", worst_sym, 1e-12))

    grid = np.linspace(-0.95, 0.95, 41)
    worst_op = 0.0
    for n in range(n_operator + 1):
        res = basis.operator_residual(n, grid)
        worst_op = max(worst_op, res / basis.endpoint_max(n))
    checks.append(_leq("operator_eigen_residual", worst_op, 1e-9))

    beta_exact = math.exp(log_beta(beta + 1.0, alpha + 1.0))
    q = unit.integrate(lambda s: np.ones_like(s))
    checks.append(_leq("unit_weight_mass_vs_beta_function",
                       abs(q - beta_exact) / beta_exact, 1e-12))
    return checks


# -- heat kernel -------------------------------------------------------------------


def suite_kernel(
    alpha: float,
    beta: float,
    t_list=(1e-3, 1e-2, 0.1, 1.0, 10.0),
    quad_points: int = 120,
    corrupt: dict | None = None,
    seed: int = 0,
) -> list:
    corrupt = _check_corrupt(corrupt)
    kernel = HeatKernel(alpha + corrupt.get("alpha", 0.0), beta + corrupt.get("beta", 0.0))
    true_basis = JacobiBasis(alpha, beta)
    rule = gauss_jacobi_rule(quad_points, true_basis, domain="unit")
    rng = np.random.default_rng(seed)
    checks = []

    worst_mass = 0.0
    for t in t_list:
        kvals = kernel.grid(np.array([0.37]), rule.nodes, t)[0]
        worst_mass = max(worst_mass, abs(float(np.dot(rule.weights, kvals)) - 1.0))
    checks.append(_leq("mass_conservation", worst_mass, 1e-9))

    pts = rng.uniform(0.05, 0.95, size=(6, 2))
    worst_sym = 0.0
    for rho, sigma in pts:
        for t in (1e-2, 0.5):
            n_terms, _ = kernel.truncation_index(t)
            a = kernel.value(rho, sigma, t, n_terms=n_terms).value
            b = kernel.value(sigma, rho, t, n_terms=n_terms).value
            worst_sym = max(worst_sym, abs(a - b) / max(abs(a), 1.0))
    checks.append(_leq("symmetry", worst_sym, 1e-8))

    worst_semi = 0.0
    srule = gauss_jacobi_rule(80, true_basis, domain="unit")
    for t1, t2 in ((0.05, 0.05), (0.1, 0.3)):
        rhos = np.array([0.2, 0.55, 0.9])
        sigmas = np.array([0.3, 0.7])
        left = kernel.grid(rhos, srule.nodes, t1)
        right = kernel.grid(srule.nodes, sigmas, t2)
        composed = (left * srule.weights) @ right
        direct = kernel.grid(rhos, sigmas, t1 + t2)
        scale = max(1.0, float(np.max(np.abs(direct))))
        worst_semi = max(worst_semi, float(np.max(np.abs(composed - direct))) / scale)
    checks.append(_leq("semigroup", worst_semi, 1e-8))

    grid = np.linspace(0.0, 1.0, 21)
    t_grid = np.geomspace(0.1, 10.0, 8)
    kmin = math.inf
    for t in t_grid:
        kmin = min(kmin, float(kernel.grid(grid, grid, t).min()))
    checks.append(_is("positivity_grid", kmin > 0.0, detail=f"min K = {kmin!r}"))

    worst_mode = 0.0
    for n in (0, 1, 3, 6):
        for rho, t in ((0.25, 0.05), (0.7, 0.5)):
            got = kernel.mode_coefficient(rho, t, n, rule)
            want = math.exp(-t * kernel.decay_rate(n)) * true_basis.eval(n, 2.0 * rho - 1.0)
            worst_mode = max(worst_mode, abs(got - want))
    checks.append(_leq("single_mode_decay", worst_mode, 1e-9))

    f = lambda s: s * (1.0 - s)
    errs = [abs(kernel.reproducing_integral(0.5, t, f, rule) - f(0.5))
            for t in (1e-1, 1e-2, 1e-3)]
    checks.append(_is("reproducing_error_monotone", errs[0] > errs[1] > errs[2],
                      detail=f"errors {errs!r}"))
    checks.append(_leq("reproducing_error_small_t", errs[-1], 2e-2))

    big_t = kernel.value(0.3, 0.8, 50.0)
    limit = 1.0 / math.exp(log_beta(beta + 1.0, alpha + 1.0))
    checks.append(_leq("long_time_limit", abs(big_t.value - limit) / max(1.0, limit), 1e-9))

    scan = bound_ratio_scan(kernel, T=1.0, n_angle=9, n_time=5)
    lo = min(float(v) for v in scan.min_ratio.values())
    hi = max(float(v) for v in scan.max_ratio.values())
    checks.append(_is("bound_two_sided_on_grid", scan.two_sided_on_grid,
                      detail=f"ratios in [{lo:.3e}, {hi:.3e}], "
                             f"{scan.n_unresolved}/{scan.n_points} unresolved"))
    return checks


# -- green -------------------------------------------------------------------------


def suite_green(
    kappa: float,
    h: float | None = None,
    corrupt: dict | None = None,
) -> list:
    corrupt = _check_corrupt(corrupt)
    if h is None:
        h = leg_weight(2, kappa)
    th1 = leg_weight(1, kappa)
    checks = []

    worst_coincide = 0.0
    worst_slope = 0.0
    worst_ann = 0.0
    worst_ann_fd = 0.0
    weights_to_try = [th1, h] if gap(th1, kappa) > 0.0 else [h]
    for d in weights_to_try:
        g1 = OneIntervalGreen(weight=d, kappa=kappa)
        worst_coincide = max(worst_coincide, abs(g1.value(1.0, 1.0)), abs(g1.value(2.0, 1.5)))
        for eta in (0.7, 1.0):
            worst_slope = max(
                worst_slope, abs(g1.coincidence_slope_fd(eta) - (-4.0 / kappa))
            )
            deltas = np.linspace(0.05, 0.95, 10) * eta
            worst_ann = max(worst_ann, g1.annihilation_residual(eta, deltas))
            worst_ann_fd = max(worst_ann_fd, g1.annihilation_residual(eta, deltas, method="fd"))
    checks.append(_leq("j_zero_at_coincidence", worst_coincide, 0.0))
    checks.append(_leq("j_coincidence_slope", worst_slope, 1e-8))
    checks.append(_leq("j_euler_annihilation", worst_ann, 1e-9))
    checks.append(_leq("j_euler_annihilation_fd", worst_ann_fd, 1e-9))

    lambda0 = eigenvalue(0, h, kappa) + corrupt.get("lambda0", 0.0)
    g = TwoIntervalGreen(h=h, kappa=kappa, lambda0=lambda0)

    causal = all(
        g.value(rho, 1.0, sigma, eta) == 0.0
        for rho, sigma in ((0.3, 0.6), (0.5, 0.5))
        for eta in (0.5, 1.0)
    )
    checks.append(_is("g_causality", causal))

    worst_agree = 0.0
    for rho, eps, sigma, eta in (
        (0.3, 0.5, 0.6, 1.0),
        (0.5, 0.2, 0.5, 0.5),
        (0.8, 1.0, 0.25, 3.0),
    ):
        a = g.value(rho, eps, sigma, eta)
        b = g.value_series(rho, eps, sigma, eta)
        worst_agree = max(worst_agree, abs(a - b) / max(abs(a), 1e-300))
    checks.append(_leq("greenfunc_vs_greenfuncalt", worst_agree, 1e-10))

    worst_adjoint = 0.0
    for sigma in np.linspace(0.2, 0.8, 5):
        for ratio in (1.5, 2.5, 4.0):
            rep = g.adjoint_residual(rho=0.4, epsilon=0.5, sigma=float(sigma), eta=0.5 * ratio)
            worst_adjoint = max(worst_adjoint, rep.relative)
    checks.append(_leq("adjoint_residual_homogeneous", worst_adjoint, 1e-4))

    worst_eig = 0.0
    sig_grid = np.linspace(0.1, 0.9, 9)
    for n in (0, 1, 5):
        worst_eig = max(worst_eig, g.eigenfunction(n).equation_residual(sig_grid))
    checks.append(_leq("sigma_eigenfunction_residual", worst_eig, 1e-6))

    left = g.boundary_exponent_fit("left", rho=0.4, epsilon=0.5, eta=1.0)
    right = g.boundary_exponent_fit("right", rho=0.4, epsilon=0.5, eta=1.0)
    checks.append(_leq("sigma_decay_exponent_left", abs(left - g.exp_left), 1e-2))
    checks.append(_leq("sigma_decay_exponent_right", abs(right - g.exp_right), 1e-2))

    dp1, dph = g.dp_1, g.dp_h
    f_exact = lambda s: s**dp1 * (1.0 - s) ** dph
    eps = 0.5
    etas = eps * np.exp(4.0 * np.array([1e-1, 1e-2, 1e-3]) / kappa)
    rec = g.reproducing_limit(0.5, eps, f_exact, etas)
    # the approach rate is f(rho) (1 - (eps/eta)^lambda0) for this f; allow 2x
    rate = rec.target * (1.0 - (eps / etas[-1]) ** g.lambda0)
    checks.append(_leq("reproducing_limit_error", rec.errors[-1],
                       max(1e-3, 2.0 * rate)))
    factor_err = max(
        abs(val - (eps / eta) ** g.lambda0 * rec.target)
        for val, eta in zip(rec.values, rec.etas)
    )
    checks.append(_leq("reproducing_mass_identity", factor_err, 1e-9))
    return checks


# -- pde ---------------------------------------------------------------------------


def _random_config(rng, M: int) -> pde.PointConfig:
    start = rng.uniform(-5.0, 5.0)
    gaps = rng.uniform(0.3, 1.5, size=M - 1)
    return pde.PointConfig(tuple(start + np.concatenate([[0.0], np.cumsum(gaps)])))


def suite_pde(
    kappa: float,
    candidate: str = "n1",
    n_configs: int = 100,
    seed: int = 0,
) -> list:
    rng = np.random.default_rng(seed)
    checks = []
    F = pde.resolve_candidate(candidate, kappa, M=2)
    M = F.arity or 2
    weights = pde.WeightAssignment.one_leg(kappa, M)

    def sweep_one(config):
        reports = pde.system_residuals(F, config, weights)
        return max(r.relative for r in reports)

    configs = [_random_config(rng, M) for _ in range(n_configs)]
    worst = max(_map(sweep_one, configs))
    checks.append(_leq("system_residuals_sweep", worst, 1e-6,
                       detail=f"{candidate} over {n_configs} configurations"))

    # translated coordinates round differently, so the comparison floor is the
    # stencil noise of the base run rather than a fixed constant
    config = configs[0]
    base = max(r.relative for r in pde.system_residuals(F, config, weights))
    moved = max(r.relative for r in pde.system_residuals(F, config.translated(11.0), weights))
    checks.append(_leq("translation_invariance", moved, max(1e-8, 10.0 * base)))

    probe = pde.builtin_power_product({(1, 2): 0.6, (1, 3): -0.4, (2, 3): 1.3}, 3)
    cfg3 = pde.PointConfig.of(-0.7, 0.4, 1.9)
    step = 1e-3 * cfg3.min_gap
    worst_stencil = 0.0
    for k in (1, 2, 3):
        fd1 = pde.partial1(probe, cfg3.array, k, step)
        fd2 = pde.partial2(probe, cfg3.array, k, step)
        ex1 = probe.grad(cfg3.array, k)
        ex2 = probe.second(cfg3.array, k)
        worst_stencil = max(
            worst_stencil,
            abs(fd1 - ex1) / max(abs(ex1), 1.0),
            abs(fd2 - ex2) / max(abs(ex2), 1.0),
        )
    checks.append(_leq("stencil_vs_analytic", worst_stencil, 1e-8))

    th1 = leg_weight(1, kappa)
    ok_diag, _ = pde.two_point_ward_solvable(th1, th1)
    ok_five, _ = pde.two_point_ward_solvable(5.0, 5.0)
    bad, witness = pde.two_point_ward_solvable(th1, leg_weight(3, kappa))
    checks.append(_is("two_point_solvable_diagonal", ok_diag and ok_five))
    checks.append(_is("two_point_unsolvable_off_diagonal", not bad,
                      detail=f"witness {witness!r}"))

    if candidate == "n1":
        s = config.x(2) - config.x(1)
        norm = s ** (2.0 * th1) * F(config.array)
        checks.append(_leq("n1_collapse_normalization", abs(norm - 1.0), 1e-12))
    return checks


# -- asymptotics ----------------------------------------------------------------------


def suite_asymptotics(kappa: float, h: float | None = None, seed: int = 0) -> list:
    if h is None:
        h = leg_weight(2, kappa)
    th1 = leg_weight(1, kappa)
    checks = []

    checks.append(_leq("minus_two_theta1_is_delta_minus",
                       abs(-2.0 * th1 - delta_minus(th1, kappa)), 1e-12))

    config = pde.PointConfig.of(0.0, 1.0)
    weights = pde.WeightAssignment.one_leg(kappa, 2)
    spec = asym.CollapseSpec(i=2, weights=weights)
    est = asym.collapse_exponent(pde.builtin_n1(kappa), config, spec)
    checks.append(_leq("n1_collapse_exponent", abs(est.p_hat - (-2.0 * th1)), 1e-3))

    cfg3 = pde.PointConfig.of(0.0, 1.0, 2.3)
    w3 = pde.WeightAssignment.one_leg(kappa, 3)
    spec3 = asym.CollapseSpec(i=2, weights=w3)
    hit = asym.two_leg_test(asym.manufactured_two_leg(kappa, 3, 2, +0.05), cfg3, spec3)
    miss = asym.two_leg_test(asym.manufactured_two_leg(kappa, 3, 2, -0.05), cfg3, spec3)
    checks.append(_is("two_leg_margin_plus", hit.is_two_leg and not hit.indeterminate))
    checks.append(_is("two_leg_margin_minus", (not miss.is_two_leg) and not miss.indeterminate))

    # synthetic two-channel field; the fit needs a moderate exponent gap, so
    # fall back to the weight with gap exactly 1 when theta_1's is outside it
    d_used = th1 if 0.05 < gap(th1, kappa) <= 2.0 and th1 > 0.0 else (kappa - 2.0) / (2.0 * kappa)
    synthetic = asym.manufactured_two_term(kappa, 3, 2, d_used, 2.0, 3.0)
    spec_syn = asym.CollapseSpec(
        i=2, weights=pde.WeightAssignment(kappa=kappa, iota=2, h=d_used)
    )
    fit = asym.one_interval_decomposition_fit(synthetic, cfg3, spec_syn)
    checks.append(_leq("decomposition_fit",
                       max(abs(fit.A - 2.0), abs(fit.B - 3.0)), 1e-6))

    cfg5 = pde.PointConfig.of(0.0, 1.0, 2.0, 3.0, 4.0)
    w5 = pde.WeightAssignment(kappa=kappa, iota=5, h=h)
    bounded = asym.far_pair_bound_scan(
        asym.manufactured_far_pair(kappa, h, 5, j=2, iota=5), cfg5, w5, j=2
    )
    checks.append(_is("far_pair_bounded", not bounded.divergent and
                      math.isfinite(bounded.sup_ratio)))
    violating = asym.far_pair_bound_scan(
        asym.manufactured_far_pair(kappa, h, 5, j=2, iota=5, violating=True), cfg5, w5, j=2
    )
    checks.append(_is("far_pair_violation_flagged", violating.divergent))

    w5a = pde.WeightAssignment(kappa=kappa, iota=4, h=h)
    normalized = asym.adjacent_pair_bound_scan(
        asym.manufactured_adjacent(kappa, h, 5, iota=4), cfg5, w5a
    )
    ratios = np.array([row[3] for row in normalized.rows])
    checks.append(_leq("adjacent_normalized_ratio_constant",
                       float(np.max(np.abs(ratios - 1.0))), 1e-10))
    dph = delta_plus(h, kappa)
    checks.append(_leq("adjacent_eps_exponent",
                       abs((normalized.eps_exponent or math.inf) - dph), 1e-6))
    weak = asym.adjacent_pair_bound_scan(
        asym.manufactured_adjacent(kappa, h, 5, iota=4, shape="weak-eps"), cfg5, w5a
    )
    checks.append(_is("adjacent_violation_flagged", weak.divergent))
    return checks


# -- dispatch ---------------------------------------------------------------------------


SUITES = ("exponents", "jacobi", "kernel", "green", "pde", "asymptotics", "all")


def run_suite(
    name: str,
    kappa: float,
    h: float | None = None,
    alpha: float | None = None,
    beta: float | None = None,
    candidate: str = "n1",
    n_configs: int = 100,
    seed: int = 0,
    corrupt: dict | None = None,
    t_list=(1e-3, 1e-2, 0.1, 1.0, 10.0),
) -> list:
    """Run one named suite (or all of them) and return its checks."""
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; expected one of {SUITES}")
    if h is None:
        h = leg_weight(2, kappa)
    if alpha is None or beta is None:
        params = jacobi_params(h, kappa)
        alpha = params.alpha if alpha is None else alpha
        beta = params.beta if beta is None else beta
    if name == "exponents":
        return suite_exponents(kappas=(kappa,))
    if name == "jacobi":
        return suite_jacobi(alpha, beta, seed=seed)
    if name == "kernel":
        return suite_kernel(alpha, beta, t_list=t_list, corrupt=corrupt, seed=seed)
    if name == "green":
        return suite_green(kappa, h=h, corrupt=corrupt)
    if name == "pde":
        return suite_pde(kappa, candidate=candidate, n_configs=n_configs, seed=seed)
    if name == "asymptotics":
        return suite_asymptotics(kappa, h=h, seed=seed)
    checks = []
    for sub in ("exponents", "jacobi", "kernel", "green", "pde", "asymptotics"):
        sub_checks = run_suite(
            sub, kappa, h=h, alpha=alpha, beta=beta, candidate=candidate,
            n_configs=n_configs, seed=seed, corrupt=corrupt, t_list=t_list,
        )
        for c in sub_checks:
            c.name = f"{sub}.{c.name}"
        checks.extend(sub_checks)
    return checks


def build_report(command: str, params: dict, checks: list, started: float,
                 seed: int | None = None) -> Report:
    return Report(
        command=command,
        params=params,
        checks=checks,
        wall_time=time.perf_counter() - started,
        seed=seed,
    )
