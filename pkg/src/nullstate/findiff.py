"""Central-difference stencils used by the residual evaluators.

Fourth-order five-point formulas by default; the second-order three-point
variants are kept for Richardson cross-checks.
"""

from __future__ import annotations


def d1(f, x: float, h: float) -> float:
    """Fourth-order first derivative."""
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12.0 * h)


def d2(f, x: float, h: float) -> float:
    """Fourth-order second derivative."""
    return (
        -f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)
    ) / (12.0 * h * h)


def d1_order2(f, x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def d2_order2(f, x: float, h: float) -> float:
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)


def richardson(coarse: float, fine: float, order: int, refine: float = 2.0) -> float:
    """Extrapolate two estimates at steps h and h/refine of a scheme of given order."""
    factor = refine**order
    return (factor * fine - coarse) / (factor - 1.0)


def d1_extrapolated(f, x: float, h: float) -> float:
    """Richardson-refined fourth-order first derivative (effective order six)."""
    return richardson(d1(f, x, h), d1(f, x, h / 2.0), order=4)


def d2_extrapolated(f, x: float, h: float) -> float:
    return richardson(d2(f, x, h), d2(f, x, h / 2.0), order=4)
