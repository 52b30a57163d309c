"""Causal Green functions for interval collapse.

Two evaluators live here.  The two-variable kernel J(delta, eta) inverts the
Euler operator of a single collapsing interval.  The four-variable kernel
G(rho, epsilon; sigma, eta) inverts the separated operator of two adjacent
collapsing intervals; its essential factor is the Jacobi heat kernel, and its
series and factored forms are kept as independent evaluation routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import findiff
from .errors import DomainError, PreconditionError
from .exponents import delta_plus, eigenvalue, jacobi_params, kpz, leg_weight
from .heat_kernel import HeatKernel, TruncationPolicy, collapse_time
from .jacobi import QuadratureRule, gauss_jacobi_rule


@dataclass(frozen=True)
class OneIntervalGreen:
    """J(delta, eta) for a collapsing pair of effective weight d."""

    weight: float
    kappa: float

    def __post_init__(self):
        if self.pair.gap <= 0.0:
            raise DomainError(
                f"one-interval kernel needs a positive exponent gap; "
                f"weight {self.weight!r} is at or below the floor for kappa={self.kappa!r}"
            )

    @property
    def pair(self):
        return kpz(self.weight, self.kappa)

    @property
    def gap(self) -> float:
        return self.pair.gap

    def value(self, delta: float, eta: float) -> float:
        """(4/kappa)/gap * eta * [1 - (delta/eta)^gap] for delta < eta, else 0.

        The bracket is evaluated as -expm1(gap log(delta/eta)), which keeps full
        relative precision as delta approaches eta.
        """
        if delta <= 0.0 or eta <= 0.0:
            raise DomainError("interval lengths must be positive")
        if delta >= eta:
            return 0.0
        g = self.gap
        return -(4.0 / self.kappa) / g * eta * math.expm1(g * math.log(delta / eta))

    def slope(self, delta: float, eta: float) -> float:
        """Analytic d/d delta of the kernel; -> -4/kappa at coincidence."""
        if delta >= eta:
            return 0.0
        return -(4.0 / self.kappa) * (delta / eta) ** (self.gap - 1.0)

    def coincidence_slope_fd(self, eta: float, h: float = 1e-6) -> float:
        """One-sided finite-difference slope at delta = eta (from below), Richardson refined."""

        def one_sided(step):
            return (self.value(eta, eta) - self.value(eta - step, eta)) / step

        return findiff.richardson(one_sided(h * eta), one_sided(h * eta / 2.0), order=1)

    def euler_apply(self, u1: float, u2: float, delta: float) -> float:
        """The transformed Euler operator kappa/4 u'' + (kappa dm/2 + 1) u'/delta.

        This is the operator left after peeling the delta^dm prefactor off the
        original Euler operator; it annihilates 1 and delta^gap, hence J(., eta).
        """
        dm = self.pair.delta_minus
        return self.kappa / 4.0 * u2 + (self.kappa * dm / 2.0 + 1.0) * u1 / delta

    def annihilation_residual(self, eta: float, deltas, method: str = "analytic") -> float:
        """max over the grid of the relative Euler-operator residual on J(., eta).

        The normalization scale includes the Euler magnitude of J itself,
        (kappa/4)|J|/delta^2, so the measure stays meaningful where the two
        operator terms vanish individually (gap = 1 makes the first-derivative
        coefficient exactly zero) or where J is flat to double precision
        (large gap at small delta).
        """
        deltas = np.asarray(deltas, dtype=float)
        if np.any(deltas <= 0.0) or np.any(deltas >= eta):
            raise PreconditionError("delta grid must lie strictly inside (0, eta)")
        g = self.gap
        worst = 0.0
        for delta in deltas:
            if method == "analytic":
                u1 = self.slope(delta, eta)
                u2 = -(4.0 / self.kappa) * (g - 1.0) * delta ** (g - 2.0) * eta ** (1.0 - g)
            elif method == "fd":
                # step balances stencil truncation against 1/h^2 roundoff growth
                h = min(5e-3 * delta, (eta - delta) / 8.0)
                u1 = findiff.d1_extrapolated(lambda s: self.value(s, eta), delta, h)
                u2 = findiff.d2_extrapolated(lambda s: self.value(s, eta), delta, h)
            else:
                raise DomainError(f"unknown method {method!r}")
            res = self.euler_apply(u1, u2, delta)
            dm = self.pair.delta_minus
            scale = max(
                abs(self.kappa / 4.0 * u2),
                abs((self.kappa * dm / 2.0 + 1.0) * u1 / delta),
                self.kappa / 4.0 * abs(self.value(delta, eta)) / delta**2,
                1e-300,
            )
            worst = max(worst, abs(res) / scale)
        return worst


@dataclass(frozen=True)
class SigmaEigenfunction:
    """Separable sigma-mode f(sigma) P_n(2 sigma - 1) of the adjoint operator."""

    n: int
    green: "TwoIntervalGreen"

    def prefactor(self, sigma: float) -> float:
        g = self.green
        return sigma**g.exp_left * (1.0 - sigma) ** g.exp_right

    def value(self, sigma: float) -> float:
        return self.prefactor(sigma) * self.green.kernel.basis.eval(self.n, 2.0 * sigma - 1.0)

    def derivatives(self, sigma: float) -> tuple[float, float, float]:
        """(value, d/dsigma, d^2/dsigma^2), all in closed form."""
        g = self.green
        basis = g.kernel.basis
        y = 2.0 * sigma - 1.0
        p0 = basis.eval(self.n, y)
        p1 = 2.0 * basis.deriv(self.n, y, 1)
        p2 = 4.0 * basis.deriv(self.n, y, 2)
        f = self.prefactor(sigma)
        lg1 = g.exp_left / sigma - g.exp_right / (1.0 - sigma)
        lg2 = -g.exp_left / sigma**2 - g.exp_right / (1.0 - sigma) ** 2
        f1 = f * lg1
        f2 = f * (lg1 * lg1 + lg2)
        return f * p0, f1 * p0 + f * p1, f2 * p0 + 2.0 * f1 * p1 + f * p2

    def equation_residual(self, sigmas) -> float:
        """max relative residual of [Q* + (lambda_n - 1)/(sigma(1-sigma))] on the mode."""
        g = self.green
        lam = eigenvalue(self.n, g.h, g.kappa)
        worst = 0.0
        for sigma in np.asarray(sigmas, dtype=float):
            v, d1v, d2v = self.derivatives(sigma)
            terms = g.sigma_operator_terms(v, d1v, d2v, sigma)
            total = sum(terms) + (lam - 1.0) / (sigma * (1.0 - sigma)) * v
            scale = max(max(abs(x) for x in terms), 1e-300)
            worst = max(worst, abs(total) / scale)
        return worst


@dataclass
class AdjointResidual:
    residual: float
    scale: float
    relative: float
    sigma_step: float
    eta_step: float
    reliable: bool = True


@dataclass
class ReproducingRecord:
    etas: np.ndarray
    values: np.ndarray
    target: float

    @property
    def errors(self) -> np.ndarray:
        return np.abs(self.values - self.target)


class TwoIntervalGreen:
    """G(rho, epsilon; sigma, eta) for adjacent collapsing intervals.

    lambda0 may be overridden for fault injection; by default it is the n = 0
    eigenvalue, which makes the factored and series forms agree identically.
    """

    def __init__(
        self,
        h: float,
        kappa: float,
        policy: TruncationPolicy | None = None,
        lambda0: float | None = None,
    ):
        self.h = float(h)
        self.kappa = float(kappa)
        self.theta1 = leg_weight(1, kappa)
        params = jacobi_params(h, kappa)
        self.alpha, self.beta = params.alpha, params.beta
        self.dp_h = delta_plus(h, kappa)
        self.dp_1 = delta_plus(self.theta1, kappa)
        self.lambda0 = eigenvalue(0, h, kappa) if lambda0 is None else float(lambda0)
        self.kernel = HeatKernel(self.alpha, self.beta, policy)
        # boundary decay exponents at sigma -> 0 and sigma -> 1
        self.exp_left = self.dp_1 + 4.0 / kappa
        self.exp_right = self.dp_h + 4.0 / kappa

    def time(self, epsilon: float, eta: float) -> float:
        return collapse_time(epsilon, eta, self.kappa)

    def eigenfunction(self, n: int) -> SigmaEigenfunction:
        return SigmaEigenfunction(n=n, green=self)

    # -- evaluation ----------------------------------------------------------

    def _prefactor(self, rho: float, sigma: float) -> float:
        return (
            sigma ** (self.beta + 1.0)
            * (1.0 - sigma) ** (self.alpha + 1.0)
            * (rho / sigma) ** self.dp_1
            * ((1.0 - rho) / (1.0 - sigma)) ** self.dp_h
        )

    def value(
        self, rho: float, epsilon: float, sigma: float, eta: float, n_terms: int | None = None
    ) -> float:
        """Factored form: prefactor * eta * (eps/eta)^lambda0 * K(rho, sigma, t)."""
        self._check_point(rho, sigma, epsilon, eta)
        if eta <= epsilon:
            return 0.0
        t = self.time(epsilon, eta)
        k = self.kernel.value(rho, sigma, t, n_terms=n_terms).value
        return -self._prefactor(rho, sigma) * eta * (epsilon / eta) ** self.lambda0 * k

    def value_series(
        self, rho: float, epsilon: float, sigma: float, eta: float, n_terms: int | None = None
    ) -> float:
        """Direct eigenvalue series with per-mode powers (eps/eta)^lambda_n."""
        self._check_point(rho, sigma, epsilon, eta)
        if eta <= epsilon:
            return 0.0
        if n_terms is None:
            n_terms, _ = self.kernel.truncation_index(self.time(epsilon, eta))
        basis = self.kernel.basis
        ratio = epsilon / eta
        total = 0.0
        for n in range(n_terms):
            lam = eigenvalue(n, self.h, self.kappa)
            total += (
                ratio**lam
                * basis.eval(n, 2.0 * rho - 1.0)
                * basis.eval(n, 2.0 * sigma - 1.0)
                / basis.shifted_norm_sq(n)
            )
        return -self._prefactor(rho, sigma) * eta * total

    @staticmethod
    def _check_point(rho, sigma, epsilon, eta):
        if not (0.0 < rho < 1.0 and 0.0 < sigma < 1.0):
            raise DomainError("rho and sigma must lie in (0, 1)")
        if epsilon <= 0.0 or eta <= 0.0:
            raise DomainError("epsilon and eta must be positive")

    # -- adjoint equation ------------------------------------------------------

    def sigma_operator_terms(self, g0: float, g1: float, g2: float, sigma: float) -> list[float]:
        """Summands of Q* applied to a function with values/derivatives (g0, g1, g2)."""
        return [
            self.kappa / 4.0 * g2,
            -(1.0 - 2.0 * sigma) / (sigma * (1.0 - sigma)) * g1,
            (1.0 - self.theta1) / sigma**2 * g0,
            (1.0 - self.h) / (1.0 - sigma) ** 2 * g0,
            g0 / sigma,
            g0 / (1.0 - sigma),
        ]

    def adjoint_residual(
        self,
        rho: float,
        epsilon: float,
        sigma: float,
        eta: float,
        sigma_step: float | None = None,
        eta_step: float | None = None,
    ) -> AdjointResidual:
        """Finite-difference residual of P*[G] away from the source (eta > epsilon).

        The sigma step shrinks with the distance to the endpoints because the
        operator coefficients blow up there.  All stencil evaluations share one
        truncation index so the sampled function is a fixed finite sum.
        """
        if eta <= epsilon:
            raise PreconditionError("adjoint residual needs eta > epsilon (homogeneous region)")
        dist = min(sigma, 1.0 - sigma)
        if sigma_step is None:
            sigma_step = min(1e-3, dist / 10.0)
        if eta_step is None:
            eta_step = 1e-3 * eta
        eta_lo = eta - 2.0 * eta_step
        if eta_lo <= epsilon:
            raise PreconditionError("eta stencil would cross the source at eta = epsilon")
        n_terms, _ = self.kernel.truncation_index(self.time(epsilon, eta_lo))
        reliable = dist > 1e-4 and sigma - 2.0 * sigma_step > 0.0 and sigma + 2.0 * sigma_step < 1.0

        def g_of_sigma(s):
            return self.value(rho, epsilon, s, eta, n_terms=n_terms)

        def g_of_eta(e):
            return self.value(rho, epsilon, sigma, e, n_terms=n_terms)

        g0 = g_of_sigma(sigma)
        g1 = findiff.d1_extrapolated(g_of_sigma, sigma, sigma_step)
        g2 = findiff.d2_extrapolated(g_of_sigma, sigma, sigma_step)
        deta = findiff.d1_extrapolated(g_of_eta, eta, eta_step)
        terms = self.sigma_operator_terms(g0, g1, g2, sigma)
        terms.append(-eta * deta / (sigma * (1.0 - sigma)))
        residual = sum(terms) / eta**2
        scale = max(max(abs(x) for x in terms), 1e-300) / eta**2
        return AdjointResidual(
            residual=residual,
            scale=scale,
            relative=abs(residual) / scale,
            sigma_step=sigma_step,
            eta_step=eta_step,
            reliable=reliable,
        )

    # -- reproducing limit -----------------------------------------------------

    def _transformed(self, f, sigma: float) -> float:
        return f(sigma) * sigma ** (-self.dp_1) * (1.0 - sigma) ** (-self.dp_h)

    def check_admissible(self, f, slope_tol: float = 0.01) -> None:
        """Reject f whose endpoint-normalized ratio blows up toward 0 or 1.

        The transformed integrand must extend continuously to the endpoints, so
        its log-log slope toward each endpoint cannot be negative.
        """
        s = np.geomspace(1e-6, 1e-3, 4)
        for edge in (0.0, 1.0):
            sigmas = s if edge == 0.0 else 1.0 - s
            vals = np.array([abs(self._transformed(f, sig)) for sig in sigmas])
            if np.all(vals == 0.0):
                continue
            if np.any(vals == 0.0):
                raise PreconditionError("transformed integrand changes support near an endpoint")
            slope, _ = np.polyfit(np.log(s), np.log(vals), 1)
            if slope < -slope_tol:
                raise PreconditionError(
                    "f(sigma) sigma^{-dp(theta1)} (1-sigma)^{-dp(h)} does not extend "
                    f"continuously to the endpoint at {edge} (divergence exponent {slope:.3g})"
                )

    def reproducing_limit(
        self,
        rho: float,
        epsilon: float,
        f,
        etas,
        rule: QuadratureRule | None = None,
    ) -> ReproducingRecord:
        """Evaluate -int G(rho,eps;sigma,eta) f(sigma) / (eta sigma(1-sigma)) dsigma.

        As eta decreases to epsilon the value converges to f(rho); the integrand
        reduces to the kernel's reproducing integral applied to the transformed f.
        """
        self.check_admissible(f)
        if rule is None:
            rule = gauss_jacobi_rule(120, self.kernel.basis, domain="unit")
        etas = np.asarray(etas, dtype=float)
        if np.any(etas <= epsilon):
            raise PreconditionError("every eta must exceed epsilon")
        values = np.empty_like(etas)
        amp = rho**self.dp_1 * (1.0 - rho) ** self.dp_h
        for i, eta in enumerate(etas):
            t = self.time(epsilon, float(eta))
            integral = self.kernel.reproducing_integral(
                rho, t, lambda s: self._transformed(f, s), rule
            )
            values[i] = (epsilon / eta) ** self.lambda0 * amp * integral
        return ReproducingRecord(etas=etas, values=values, target=f(rho))

    # -- boundary exponents ------------------------------------------------------

    def boundary_exponent_fit(
        self, side: str, rho: float, epsilon: float, eta: float, n_points: int = 7
    ) -> float:
        """Log-log slope of |G| as sigma approaches an endpoint.

        side="left" fits sigma -> 0 (expected dp(theta1) + 4/kappa);
        side="right" fits sigma -> 1 (expected dp(h) + 4/kappa).
        """
        if side not in ("left", "right"):
            raise DomainError(f"side must be 'left' or 'right', got {side!r}")
        s = np.geomspace(1e-6, 1e-3, n_points)
        sigmas = s if side == "left" else 1.0 - s
        vals = np.array([abs(self.value(rho, epsilon, sig, eta)) for sig in sigmas])
        if np.any(vals == 0.0):
            raise DomainError("kernel vanished on the fit grid")
        slope, _ = np.polyfit(np.log(s), np.log(vals), 1)
        return float(slope)
