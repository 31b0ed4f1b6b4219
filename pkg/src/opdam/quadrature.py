"""Gauss-Jacobi quadrature with algebraic endpoint singularities.

Rules come from the Golub-Welsch eigenvalue formulation of the three-term
Jacobi recurrence (symmetric tridiagonal, scipy eigensolver), cached per
(order, alpha, beta).  The 2-D tensor integrator handles the rectangle
[x2, x1] x [x3, x2] with exponent-(k-1) edges that every integral
representation here uses.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, DomainError, ParameterError

MAX_ORDER = 512
_RULE_CACHE: dict[tuple, "QuadRule"] = {}
_CACHE_LOCK = threading.Lock()


@dataclass(frozen=True)
class QuadRule:
    """Nodes/weights for weight (1-s)^alpha (1+s)^beta on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    alpha: float
    beta: float
    order: int


@dataclass
class EvalResult:
    value: complex
    err_estimate: float
    nodes_used: int
    converged: bool


def gauss_jacobi_rule(order: int, alpha: float, beta: float) -> QuadRule:
    """Golub-Welsch Gauss-Jacobi rule, exact for degree <= 2*order - 1."""
    order = int(order)
    if order < 1:
        raise ParameterError(f"quadrature order must be >= 1, got {order}")
    if order > MAX_ORDER:
        raise ParameterError(f"quadrature order capped at {MAX_ORDER}, got {order}")
    alpha = float(alpha)
    beta = float(beta)
    if alpha <= -1 or beta <= -1:
        raise ParameterError(f"Jacobi exponents must exceed -1, got ({alpha}, {beta})")

    key = (order, alpha, beta)
    with _CACHE_LOCK:
        rule = _RULE_CACHE.get(key)
    if rule is not None:
        return rule

    ab = alpha + beta
    mu0 = math.exp(
        (ab + 1) * math.log(2.0)
        + math.lgamma(alpha + 1)
        + math.lgamma(beta + 1)
        - math.lgamma(ab + 2)
    )
    if order == 1:
        nodes = np.array([(beta - alpha) / (ab + 2)])
        weights = np.array([mu0])
    else:
        i = np.arange(order, dtype=float)
        d = np.empty(order)
        d[0] = (beta - alpha) / (ab + 2)
        den = (2 * i[1:] + ab) * (2 * i[1:] + ab + 2)
        d[1:] = (beta * beta - alpha * alpha) / den
        e = np.empty(order - 1)
        e[0] = math.sqrt(4 * (alpha + 1) * (beta + 1) / ((ab + 3) * (ab + 2) ** 2))
        j = i[2:]
        s = 2 * j + ab
        e[1:] = np.sqrt(4 * j * (j + alpha) * (j + beta) * (j + ab) / (s * s * (s * s - 1)))
        nodes, vecs = eigh_tridiagonal(d, e)
        weights = mu0 * vecs[0, :] ** 2

    rule = QuadRule(nodes, weights, alpha, beta, order)
    with _CACHE_LOCK:
        _RULE_CACHE[key] = rule
    return rule


def _refinement_orders(order: int, max_refine: int) -> list[int]:
    orders = [order]
    while len(orders) < max_refine + 2:
        nxt = math.ceil(1.5 * orders[-1])
        if nxt > MAX_ORDER:
            break
        orders.append(nxt)
    return orders


def integrate_singular_1d(f, a: float, b: float, exp_a: float, exp_b: float,
                          order: int, tol: float | None = None,
                          max_refine: int = 2) -> EvalResult:
    """Integral of (b-u)^exp_b (u-a)^exp_a f(u) over [a, b], f smooth and vectorized.

    The error estimate compares consecutive rule orders (order, ceil(1.5*order), ...);
    with a tolerance given, refinement continues until met or ConvergenceError.
    """
    if not a < b:
        raise ParameterError(f"need a < b, got [{a}, {b}]")
    half = (b - a) / 2.0
    scale = half ** (exp_a + exp_b + 1.0)

    def level(n: int) -> complex:
        rule = gauss_jacobi_rule(n, exp_b, exp_a)
        u = a + half * (rule.nodes + 1.0)
        return scale * complex(np.sum(rule.weights * np.asarray(f(u))))

    orders = _refinement_orders(order, max_refine)
    prev = level(orders[0])
    value, err, used = prev, math.inf, orders[0]
    for n in orders[1:]:
        value = level(n)
        err = abs(value - prev)
        used = n
        if tol is not None and err <= tol * max(1.0, abs(value)):
            return EvalResult(value, err, used, True)
        prev = value
    if tol is not None and err > tol * max(1.0, abs(value)):
        raise ConvergenceError(f"1-D quadrature stuck at err={err:.3e} with order {used}")
    return EvalResult(value, err, used, True)


def rect_grid(x, order: int, exponent: float):
    """Tensor grid/weights for [x2,x1] x [x3,x2] with the four singular edges.

    Returns (nu1, nu2, w1, w2) with scale factors absorbed into the weights.
    """
    x1, x2, x3 = x.coords if hasattr(x, "coords") else x
    rule = gauss_jacobi_rule(order, exponent, exponent)
    h1 = (x1 - x2) / 2.0
    h2 = (x2 - x3) / 2.0
    nu1 = x2 + h1 * (rule.nodes + 1.0)
    nu2 = x3 + h2 * (rule.nodes + 1.0)
    w1 = rule.weights * h1 ** (2 * exponent + 1.0)
    w2 = rule.weights * h2 ** (2 * exponent + 1.0)
    return nu1, nu2, w1, w2


def integrate_rect_singular_2d(g, x, exponent: float, order: int,
                               tol: float | None = None, max_refine: int = 2) -> EvalResult:
    """Integral of prod-of-four-edge-factors^exponent * g(nu1, nu2) over the rectangle.

    ``g`` receives meshgrid arrays (indexing 'ij') and returns an array.
    """
    if exponent <= -1:
        raise ParameterError(f"edge exponent must exceed -1, got {exponent}")

    def level(n: int) -> complex:
        nu1, nu2, w1, w2 = rect_grid(x, n, exponent)
        N1, N2 = np.meshgrid(nu1, nu2, indexing="ij")
        vals = np.asarray(g(N1, N2))
        return complex(w1 @ vals @ w2)

    orders = _refinement_orders(order, max_refine)
    prev = level(orders[0])
    value, err, used = prev, math.inf, orders[0]
    for n in orders[1:]:
        value = level(n)
        err = abs(value - prev)
        used = n * n
        if tol is not None and err <= tol * max(1.0, abs(value)):
            return EvalResult(value, err, used, True)
        prev = value
    if tol is not None and err > tol * max(1.0, abs(value)):
        raise ConvergenceError(f"2-D quadrature stuck at err={err:.3e}")
    return EvalResult(value, err, used, True)


def _exp_ratio(a, b):
    """(e^a - e^b)/(a - b) with the removable limit e^a at a == b; a >= b elementwise."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = a - b
    small = np.abs(d) < 1e-12
    dd = np.where(small, 1.0, d)
    out = np.exp(b) * np.expm1(dd) / dd
    return np.where(small, np.exp(a), out)


def w_smooth_grid(x, nu1, nu2, exponent: float) -> np.ndarray:
    """Smooth positive part of the six-factor weight on the rectangle grid:
    W / ((x1-nu1)(nu1-x2)(x2-nu2)(nu2-x3))^exponent, W the product of the six
    exponential differences raised to ``exponent``."""
    x1, x2, x3 = x.coords if hasattr(x, "coords") else x
    r1 = _exp_ratio(x1, nu1)
    r2 = _exp_ratio(nu1, x2)
    r3 = _exp_ratio(x2, nu2)
    r4 = _exp_ratio(nu2, x3)
    c1 = np.exp(x1) - np.exp(nu2)
    c2 = np.exp(nu1) - np.exp(x3)
    return (r1 * r2 * r3 * r4 * c1 * c2) ** exponent


def smooth_part_w(k, x, nu, shift_k) -> float:
    """W_{shift_k}(nu, x) with the four vanishing linear factors divided out.

    shift_k in {k, k+1} selects the exponent shift_k - 1.  DomainError when nu
    leaves the closed rectangle [x2,x1] x [x3,x2].
    """
    x1, x2, x3 = x.coords if hasattr(x, "coords") else x
    nu1, nu2 = nu
    eps = 1e-12
    if not (x2 - eps <= nu1 <= x1 + eps and x3 - eps <= nu2 <= x2 + eps):
        raise DomainError(f"nu={nu} outside the rectangle of x={(x1, x2, x3)}")
    return float(w_smooth_grid((x1, x2, x3), np.float64(nu1), np.float64(nu2), float(shift_k) - 1.0))
