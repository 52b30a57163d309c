"""Jacobi polynomials on [-1, 1] and shifted to [0, 1], with quadrature.

Evaluation goes through the stable three-term recurrence; the explicit
gamma-function sum is kept only as a cross-check oracle (it alternates and
loses digits past degree ~10).  Quadrature nodes come from the symmetric
tridiagonal (Golub-Welsch) eigenproblem, so weights are positive by
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError


@lru_cache(maxsize=4096)
def _recurrence(n: int, alpha: float, beta: float) -> tuple[float, float, float, float]:
    """Coefficients (a, b0, b1, c) with a P_n = (b0 + b1 y) P_{n-1} - c P_{n-2}, n >= 2."""
    apb = alpha + beta
    a = 2.0 * n * (n + apb) * (2.0 * n + apb - 2.0)
    b0 = (2.0 * n + apb - 1.0) * (alpha * alpha - beta * beta)
    b1 = (2.0 * n + apb - 1.0) * (2.0 * n + apb) * (2.0 * n + apb - 2.0)
    c = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + apb)
    return a, b0, b1, c


def log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


@dataclass(frozen=True)
class JacobiBasis:
    """Parameter pair (alpha, beta) with alpha, beta > -1."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha <= -1.0 or self.beta <= -1.0:
            raise DomainError(
                f"jacobi parameters must exceed -1, got ({self.alpha!r}, {self.beta!r})"
            )

    # -- evaluation ---------------------------------------------------------

    def eval(self, n: int, y):
        """P_n^(alpha,beta)(y) by three-term recurrence; y may be an ndarray."""
        y = np.asarray(y, dtype=float)
        if n == 0:
            out = np.ones_like(y)
            return out if out.ndim else float(out)
        pm1 = np.ones_like(y)
        p = (self.alpha + 1.0) + (self.alpha + self.beta + 2.0) * (y - 1.0) / 2.0
        for k in range(2, n + 1):
            a, b0, b1, c = _recurrence(k, self.alpha, self.beta)
            p, pm1 = ((b0 + b1 * y) * p - c * pm1) / a, p
        return p if p.ndim else float(p)

    def eval_table(self, n_max: int, y) -> np.ndarray:
        """All degrees 0..n_max at once; result has shape (n_max+1,) + y.shape."""
        y = np.atleast_1d(np.asarray(y, dtype=float))
        table = np.empty((n_max + 1,) + y.shape)
        table[0] = 1.0
        if n_max >= 1:
            table[1] = (self.alpha + 1.0) + (self.alpha + self.beta + 2.0) * (y - 1.0) / 2.0
        for k in range(2, n_max + 1):
            a, b0, b1, c = _recurrence(k, self.alpha, self.beta)
            table[k] = ((b0 + b1 * y) * table[k - 1] - c * table[k - 2]) / a
        return table

    def eval_explicit_sum(self, n: int, y):
        """The explicit gamma-function sum; cross-check oracle for n <= ~10.

        The gamma ratios telescope into finite products, so each summand is
        exact to round-off (no lgamma cancellation for large arguments).
        """
        y = np.asarray(y, dtype=float)
        apb = self.alpha + self.beta
        acc = np.zeros_like(y)
        half = (y - 1.0) / 2.0
        for m in range(n + 1):
            coeff = math.comb(n, m) / math.factorial(n)
            for j in range(m, n):  # Gamma(alpha+n+1) / Gamma(alpha+m+1)
                coeff *= self.alpha + 1.0 + j
            for j in range(m):  # Gamma(apb+n+m+1) / Gamma(apb+n+1)
                coeff *= apb + n + 1.0 + j
            acc = acc + coeff * half**m
        return acc if acc.ndim else float(acc)

    def deriv(self, n: int, y, order: int = 1):
        """Exact derivative via the shifted-parameter identity.

        d/dy P_n^(a,b) = (n+a+b+1)/2 * P_{n-1}^(a+1,b+1).
        """
        if order == 0:
            return self.eval(n, y)
        if n < order:
            y = np.asarray(y, dtype=float)
            out = np.zeros_like(y)
            return out if out.ndim else float(out)
        factor = 1.0
        for j in range(order):
            factor *= (n + self.alpha + self.beta + 1.0 + j) / 2.0
        shifted = JacobiBasis(self.alpha + order, self.beta + order)
        return factor * shifted.eval(n - order, y)

    # -- scalars ------------------------------------------------------------

    def value_at_one(self, n: int) -> float:
        """P_n(1) = Gamma(n+alpha+1)/(n! Gamma(alpha+1)) > 0."""
        return math.exp(
            math.lgamma(n + self.alpha + 1.0)
            - math.lgamma(n + 1.0)
            - math.lgamma(self.alpha + 1.0)
        )

    def value_at_minus_one(self, n: int) -> float:
        """P_n(-1) = (-1)^n Gamma(n+beta+1)/(n! Gamma(beta+1))."""
        mag = math.exp(
            math.lgamma(n + self.beta + 1.0)
            - math.lgamma(n + 1.0)
            - math.lgamma(self.beta + 1.0)
        )
        return -mag if n % 2 else mag

    def endpoint_max(self, n: int) -> float:
        """max(|P_n(1)|, |P_n(-1)|); equals max over [-1,1] for alpha,beta >= -1/2."""
        return max(self.value_at_one(n), abs(self.value_at_minus_one(n)))

    def norm_sq(self, n: int) -> float:
        """h_n, the squared L^2 norm against (1-y)^alpha (1+y)^beta on [-1, 1]."""
        apb = self.alpha + self.beta
        return math.exp(
            (apb + 1.0) * math.log(2.0)
            + math.lgamma(n + self.alpha + 1.0)
            + math.lgamma(n + self.beta + 1.0)
            - math.log(2.0 * n + apb + 1.0)
            - math.lgamma(n + 1.0)
            - math.lgamma(n + apb + 1.0)
        )

    def shifted_norm_sq(self, n: int) -> float:
        """Squared norm of P_n(2s-1) against s^beta (1-s)^alpha on [0, 1]."""
        return 2.0 ** (-self.alpha - self.beta - 1.0) * self.norm_sq(n)

    # -- weights and the differential operator ------------------------------

    def weight(self, y):
        """rho(y) = (1-y)^alpha (1+y)^beta on (-1, 1)."""
        y = np.asarray(y, dtype=float)
        return (1.0 - y) ** self.alpha * (1.0 + y) ** self.beta

    def shifted_weight(self, s):
        """w(s) = s^beta (1-s)^alpha on (0, 1); equals 2^(-alpha-beta) rho(2s-1)."""
        s = np.asarray(s, dtype=float)
        return s**self.beta * (1.0 - s) ** self.alpha

    def operator_apply(self, n: int, y):
        """The Jacobi operator (1-y^2) d^2 + [beta-alpha-(alpha+beta+2)y] d on P_n."""
        y = np.asarray(y, dtype=float)
        d1 = self.deriv(n, y, 1)
        d2 = self.deriv(n, y, 2)
        return (1.0 - y * y) * d2 + (
            self.beta - self.alpha - (self.alpha + self.beta + 2.0) * y
        ) * d1

    def operator_residual(self, n: int, y_grid) -> float:
        """max |J[P_n] + n(n+alpha+beta+1) P_n| over the grid.

        P_n is an eigenfunction of the operator with eigenvalue
        -n(n+alpha+beta+1), so this vanishes to round-off.
        """
        y = np.asarray(y_grid, dtype=float)
        lam = n * (n + self.alpha + self.beta + 1.0)
        res = self.operator_apply(n, y) + lam * self.eval(n, y)
        return float(np.max(np.abs(res)))


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule: nodes/weights integrating against the basis weight exactly
    for polynomial integrands of degree <= 2m - 1."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    domain: str = field(default="symmetric")  # "symmetric": [-1,1] w/ rho; "unit": [0,1] w/ w

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_jacobi_rule(m: int, basis: JacobiBasis, domain: str = "symmetric") -> QuadratureRule:
    """m-point Gauss-Jacobi rule via the Golub-Welsch eigenproblem.

    domain="symmetric" integrates f(y) (1-y)^alpha (1+y)^beta over [-1, 1];
    domain="unit" integrates g(s) s^beta (1-s)^alpha over [0, 1].
    """
    if m < 1:
        raise DomainError(f"rule size must be >= 1, got {m!r}")
    if domain not in ("symmetric", "unit"):
        raise DomainError(f"unknown quadrature domain {domain!r}")
    a, b = basis.alpha, basis.beta
    apb = a + b
    diag = np.empty(m)
    diag[0] = (b - a) / (apb + 2.0)
    if m > 1:
        k = np.arange(1, m, dtype=float)
        diag[1:] = (b * b - a * a) / ((2.0 * k + apb) * (2.0 * k + apb + 2.0))
    sub = np.empty(max(m - 1, 0))
    if m > 1:
        sub[0] = math.sqrt(4.0 * (a + 1.0) * (b + 1.0) / ((apb + 2.0) ** 2 * (apb + 3.0)))
    if m > 2:
        k = np.arange(2, m, dtype=float)
        num = 4.0 * k * (k + a) * (k + b) * (k + apb)
        den = (2.0 * k + apb) ** 2 * ((2.0 * k + apb) ** 2 - 1.0)
        sub[1:] = np.sqrt(num / den)
    jac = np.diag(diag)
    if m > 1:
        jac += np.diag(sub, 1) + np.diag(sub, -1)
    try:
        vals, vecs = np.linalg.eigh(jac)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - eigh on tridiagonal is tame
        raise DomainError(f"quadrature eigenproblem failed for m={m}, "
                          f"(alpha, beta)=({a}, {b}): {exc}") from exc
    mu0 = math.exp((apb + 1.0) * math.log(2.0) + log_beta(a + 1.0, b + 1.0))
    nodes = vals
    weights = mu0 * vecs[0, :] ** 2
    if domain == "unit":
        nodes = (nodes + 1.0) / 2.0
        weights = weights * 2.0 ** (-apb - 1.0)
    return QuadratureRule(nodes=nodes, weights=weights, order=m, domain=domain)
