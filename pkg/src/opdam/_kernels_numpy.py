"""Pure-numpy implementations of the hot kernels.

Semantics must match ``_kernels_numba`` exactly: per-element term recurrences
are frozen at first convergence so both backends produce identical sums.
"""
from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def hyp2f1_series(a, b, c, w, tol, max_terms):
    """Sum 2F1(a, b; c; w_i) for w_i in [0, 1) by the term recurrence.

    Returns (values, terms_used, converged).  Termination: once the step-ratio
    bound rho_m < 1, the tail is bounded by |T_m| rho/(1-rho) and compared to
    tol * |partial sum|.
    """
    w = np.ascontiguousarray(w, dtype=np.float64)
    n = w.shape[0]
    a = complex(a)
    b = complex(b)
    c = float(c)
    term = np.ones(n, dtype=np.complex128)
    total = np.ones(n, dtype=np.complex128)
    used = np.full(n, max_terms, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    absa, absb = abs(a), abs(b)
    for m in range(max_terms):
        ratio = (a + m) * (b + m) / ((c + m) * (1.0 + m))
        term = term * (ratio * w)
        total = np.where(done, total, total + term)
        f = (m + 1 + absa) * (m + 1 + absb) / ((m + 1 + c) * (m + 2.0))
        rho = w * max(f, 1.0)
        at = np.abs(term)
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = np.where(rho < 0.999, at * rho / (1.0 - rho), np.inf)
        newly = ~done & ((at == 0.0) | (tail <= tol * np.abs(total)))
        used[newly] = m + 1
        done |= newly
        if done.all():
            break
    return total, used, done.copy()


def rk_smooth_vals(t, k, cosh_y2, cosh_x2y, cosh_x1y, cosh_x3y, tlo, thi, e_lo, e_hi):
    """Smooth part h(t) of the Laplace-kernel t-integrand at interior nodes.

    h = [(cosh t - cosh_y2)(cosh t - cosh_x2y)(cosh_x1y - cosh t)(cosh_x3y - cosh t)
         / sinh^2 t]^(k-1) * (t - tlo)^(-e_lo) * (thi - t)^(-e_hi)
    """
    t = np.asarray(t, dtype=np.float64)
    ch = np.cosh(t)
    sh = np.sinh(t)
    logs = (
        np.log(ch - cosh_y2)
        + np.log(ch - cosh_x2y)
        + np.log(cosh_x1y - ch)
        + np.log(cosh_x3y - ch)
        - 2.0 * np.log(sh)
    )
    out = (k - 1.0) * logs - e_lo * np.log(t - tlo) - e_hi * np.log(thi - t)
    return np.exp(out)
