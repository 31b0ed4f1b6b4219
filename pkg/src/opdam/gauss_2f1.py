"""Gauss 2F1 for z <= 0 and the Jacobi functions phi^{(k-1/2,-1/2)}.

The 2F1 is summed after the Pfaff transform w = z/(z-1) in [0, 1):

    2F1(a, b; c; z) = (1-z)^(-a) 2F1(a, c-b; c; w)

which converges for every z <= 0.  The derivative identities of the Jacobi
function are implemented in cancelled closed form so that eta = k is a
regular point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import accel
from .errors import ConvergenceError, DomainError, ParameterError
from .root_lattice import MultiplicityK

MAX_TERMS = 10_000
SERIES_TOL = 1e-14
T_MAX = 3.0  # |t| cap: beyond this the transformed series loses digits slowly


@dataclass(frozen=True)
class Hyp2F1Params:
    a: complex
    b: complex
    c: float
    z: float

    def __post_init__(self):
        if not self.c > 0:
            raise ParameterError(f"2F1 parameter c must be positive, got {self.c}")
        if self.z > 0:
            raise DomainError(f"only z <= 0 is supported, got z = {self.z}")


def _kval(k) -> float:
    return k.k if isinstance(k, MultiplicityK) else float(MultiplicityK(float(k)).k)


def hyp2f1_grid(a, b, c, z, tol: float = SERIES_TOL, max_terms: int = MAX_TERMS) -> np.ndarray:
    """2F1(a, b; c; z) on an array of z <= 0."""
    if not c > 0:
        raise ParameterError(f"2F1 parameter c must be positive, got {c}")
    z = np.asarray(z, dtype=np.float64)
    if z.size and float(np.max(z)) > 0:
        raise DomainError("only z <= 0 is supported")
    flat = np.ravel(z)
    w = flat / (flat - 1.0)
    vals, _used, conv = accel.hyp2f1_series(complex(a), complex(c) - complex(b), float(c), w, tol, max_terms)
    if not conv.all():
        bad = int(np.count_nonzero(~conv))
        raise ConvergenceError(f"2F1 series unconverged at {bad} points after {max_terms} terms")
    pref = np.exp(-complex(a) * np.log1p(-flat))
    return (vals * pref).reshape(z.shape)


def hyp2f1(a, b=None, c=None, z=None, tol: float = SERIES_TOL, max_terms: int = MAX_TERMS) -> complex:
    """2F1(a, b; c; z) for a single z <= 0; also accepts a Hyp2F1Params."""
    if isinstance(a, Hyp2F1Params):
        p = a
        if b is not None:
            tol = float(b)
        a, b, c, z = p.a, p.b, p.c, p.z
    Hyp2F1Params(complex(a), complex(b), float(c), float(z))  # validates
    return complex(hyp2f1_grid(a, b, c, np.array([float(z)]), tol, max_terms)[0])


def _canonical_eta(eta: complex) -> complex:
    # phi is even in eta; fix the sign so both orientations share one float path
    eta = complex(eta)
    if eta.real < 0 or (eta.real == 0 and eta.imag < 0):
        return -eta
    return eta


def _check_t(t) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    if t.size and float(np.max(np.abs(t))) > T_MAX:
        raise ConvergenceError(f"|t| > {T_MAX} is outside the supported range")
    return t


def jacobi_phi_grid(k, eta, t, tol: float = SERIES_TOL) -> np.ndarray:
    """phi^{(k-1/2,-1/2)}_{i eta}(t) = 2F1((k-eta)/2, (k+eta)/2; k+1/2; -sinh^2 t)."""
    kv = _kval(k)
    eta = _canonical_eta(eta)
    t = _check_t(t)
    z = -np.sinh(t) ** 2
    return hyp2f1_grid((kv - eta) / 2.0, (kv + eta) / 2.0, kv + 0.5, z, tol)


def jacobi_phi(k, eta, t, tol: float = SERIES_TOL) -> complex:
    return complex(jacobi_phi_grid(k, eta, np.array([float(t)]), tol)[0])


def jacobi_phi_upper_grid(k, eta, t, tol: float = SERIES_TOL) -> np.ndarray:
    """phi^{(k+1/2,-1/2)}_{i eta}(t), the shifted-parameter companion."""
    kv = _kval(k)
    eta = _canonical_eta(eta)
    t = _check_t(t)
    z = -np.sinh(t) ** 2
    return hyp2f1_grid((kv + 1 - eta) / 2.0, (kv + 1 + eta) / 2.0, kv + 1.5, z, tol)


def jacobi_phi_deriv(k, eta, t, tol: float = SERIES_TOL) -> complex:
    """d/dt phi^{(k-1/2,-1/2)}_{i eta}(t) = (eta^2-k^2)/(2k+1) sinh(t) phi^{(k+1/2,-1/2)}_{i eta}(t)."""
    kv = _kval(k)
    eta = _canonical_eta(eta)
    up = complex(jacobi_phi_upper_grid(kv, eta, np.array([float(t)]), tol)[0])
    return (eta * eta - kv * kv) / (2 * kv + 1) * math.sinh(float(t)) * up


def jacobi_phi_L_grid(k, eta, t, tol: float = SERIES_TOL) -> np.ndarray:
    """phi'/(eta - k) in cancelled form: (eta+k)/(2k+1) sinh(t) phi^{(k+1/2,-1/2)}_{i eta}(t).

    eta here is NOT sign-canonicalized: the quotient is odd under eta -> -eta.
    """
    kv = _kval(k)
    t = np.asarray(t, dtype=np.float64)
    up = jacobi_phi_upper_grid(kv, eta, t, tol)
    return (complex(eta) + kv) / (2 * kv + 1) * np.sinh(t) * up


def jacobi_phi_L(k, eta, t, tol: float = SERIES_TOL) -> complex:
    return complex(jacobi_phi_L_grid(k, eta, np.array([float(t)]), tol)[0])
