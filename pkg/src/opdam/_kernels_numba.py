"""Numba-compiled implementations of the hot kernels.

Same contracts as ``_kernels_numpy``; compiled lazily on first call and cached
on disk, so the first evaluation in a fresh environment pays the JIT cost once.
"""
from __future__ import annotations

import numpy as np
from numba import njit

BACKEND_NAME = "numba"


@njit(cache=True, nogil=True)
def hyp2f1_series(a, b, c, w, tol, max_terms):  # pragma: no cover - exercised via accel
    n = w.shape[0]
    vals = np.empty(n, dtype=np.complex128)
    used = np.empty(n, dtype=np.int64)
    conv = np.empty(n, dtype=np.bool_)
    absa = abs(a)
    absb = abs(b)
    for i in range(n):
        wi = w[i]
        term = 1.0 + 0.0j
        total = 1.0 + 0.0j
        ok = False
        stop = max_terms
        for m in range(max_terms):
            ratio = (a + m) * (b + m) / ((c + m) * (1.0 + m))
            term = term * ratio * wi
            total = total + term
            f = (m + 1 + absa) * (m + 1 + absb) / ((m + 1 + c) * (m + 2.0))
            rho = wi * (f if f > 1.0 else 1.0)
            at = abs(term)
            if at == 0.0:
                ok = True
                stop = m + 1
                break
            if rho < 0.999:
                tail = at * rho / (1.0 - rho)
                if tail <= tol * abs(total):
                    ok = True
                    stop = m + 1
                    break
        vals[i] = total
        used[i] = stop
        conv[i] = ok
    return vals, used, conv


@njit(cache=True, nogil=True)
def rk_smooth_vals(t, k, cosh_y2, cosh_x2y, cosh_x1y, cosh_x3y, tlo, thi, e_lo, e_hi):  # pragma: no cover
    n = t.shape[0]
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        ti = t[i]
        ch = np.cosh(ti)
        sh = np.sinh(ti)
        logs = (
            np.log(ch - cosh_y2)
            + np.log(ch - cosh_x2y)
            + np.log(cosh_x1y - ch)
            + np.log(cosh_x3y - ch)
            - 2.0 * np.log(sh)
        )
        out[i] = np.exp((k - 1.0) * logs - e_lo * np.log(ti - tlo) - e_hi * np.log(thi - ti))
    return out
