"""Geometry of the A_{n-1} root system for n in {2, 3, 4}.

Points live in the trace-zero hyperplane V of R^n and are kept in ambient
coordinates; the constraint sum(x) = 0 is enforced at construction.  The Weyl
group is the symmetric group permuting coordinates, the positive chamber is
x_1 > x_2 > ... > x_n.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError, WallError

TRACE_TOL = 1e-12
WALL_TOL = 1e-10
K_MIN = 0.05  # global numerical floor on the multiplicity
SUPPORTED_N = (2, 3, 4)


def _check_n(n: int) -> None:
    if n not in SUPPORTED_N:
        raise ParameterError(f"rank parameter n must be one of {SUPPORTED_N}, got {n}")


@dataclass(frozen=True)
class VPoint:
    """Real point in the trace-zero hyperplane, ambient coordinates."""

    coords: tuple[float, ...]

    def __post_init__(self):
        _check_n(len(self.coords))
        s = sum(self.coords)
        if abs(s) > TRACE_TOL:
            raise DomainError(f"coordinates must sum to 0 (got sum {s:.3e})")

    @property
    def n(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    def __add__(self, other: "VPoint") -> "VPoint":
        return VPoint(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "VPoint") -> "VPoint":
        return VPoint(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c: float) -> "VPoint":
        return VPoint(tuple(c * a for a in self.coords))


@dataclass(frozen=True)
class SpectralParam:
    """Complex spectral parameter lambda with trace zero."""

    coords: tuple[complex, ...]

    def __post_init__(self):
        _check_n(len(self.coords))
        s = sum(self.coords)
        if abs(s.real) > TRACE_TOL or abs(s.imag) > TRACE_TOL:
            raise DomainError(f"lambda coordinates must sum to 0 (got sum {s:.3e})")

    @property
    def n(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=complex)

    def permuted(self, w: "WeylElement") -> "SpectralParam":
        return SpectralParam(w.apply(self.coords))


@dataclass(frozen=True)
class ChamberPoint:
    """Point with strictly decreasing coordinates (open positive chamber)."""

    coords: tuple[float, ...]

    def __post_init__(self):
        _check_n(len(self.coords))
        s = sum(self.coords)
        if abs(s) > TRACE_TOL:
            raise DomainError(f"coordinates must sum to 0 (got sum {s:.3e})")
        if self.wall_distance <= 0.0:
            raise WallError(f"coordinates must be strictly decreasing: {self.coords}")

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def wall_distance(self) -> float:
        c = self.coords
        return min(c[i] - c[i + 1] for i in range(len(c) - 1))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    def as_vpoint(self) -> VPoint:
        return VPoint(self.coords)


@dataclass(frozen=True)
class WeylElement:
    """Permutation of coordinate slots; apply(x)_i = x_{perm[i]} (0-based)."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ParameterError(f"not a permutation: {self.perm}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def sign(self) -> int:
        sgn, seen = 1, [False] * len(self.perm)
        for i in range(len(self.perm)):
            if seen[i]:
                continue
            j, clen = i, 0
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                clen += 1
            if clen % 2 == 0:
                sgn = -sgn
        return sgn

    def apply(self, coords):
        return tuple(coords[self.perm[i]] for i in range(len(self.perm)))

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self after other: (self*other).apply(x) = self.apply(other.apply(x))."""
        return WeylElement(tuple(other.perm[self.perm[i]] for i in range(self.n)))

    def inverse(self) -> "WeylElement":
        inv = [0] * self.n
        for i, p in enumerate(self.perm):
            inv[p] = i
        return WeylElement(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "WeylElement":
        """Swap of coordinate slots i and j (0-based)."""
        p = list(range(n))
        p[i], p[j] = p[j], p[i]
        return cls(tuple(p))


def weyl_group(n: int) -> list[WeylElement]:
    _check_n(n)
    return [WeylElement(p) for p in itertools.permutations(range(n))]


def s3_elements() -> list[tuple[str, WeylElement]]:
    """The six elements of S_3 in the order used by the reflection tables:
    e, s12, s23, s13, sigma = s13*s12, sigma^2."""
    s12 = WeylElement.transposition(3, 0, 1)
    s23 = WeylElement.transposition(3, 1, 2)
    s13 = WeylElement.transposition(3, 0, 2)
    sigma = s13.compose(s12)
    return [
        ("e", WeylElement.identity(3)),
        ("s12", s12),
        ("s23", s23),
        ("s13", s13),
        ("sigma", sigma),
        ("sigma2", sigma.compose(sigma)),
    ]


@dataclass(frozen=True)
class MultiplicityK:
    """Positive multiplicity parameter; floored at K_MIN for numerical safety."""

    k: float

    def __post_init__(self):
        if not self.k > 0:
            raise ParameterError(f"multiplicity k must be positive, got {self.k}")
        if self.k < K_MIN:
            raise ParameterError(f"multiplicity k below supported floor {K_MIN}: {self.k}")


def project_trace_zero(x) -> VPoint:
    """Orthogonal projection of an ambient vector onto the trace-zero hyperplane."""
    x = tuple(float(v) for v in x)
    _check_n(len(x))
    m = sum(x) / len(x)
    return VPoint(tuple(v - m for v in x))


def project_trace_zero_complex(lam) -> SpectralParam:
    lam = tuple(complex(v) for v in lam)
    _check_n(len(lam))
    m = sum(lam) / len(lam)
    return SpectralParam(tuple(v - m for v in lam))


def rho(k: float, n: int) -> VPoint:
    """rho_k = (k/2) sum_j (n - 2j + 1) e_j."""
    _check_n(n)
    return VPoint(tuple(0.5 * k * (n - 2 * j + 1) for j in range(1, n + 1)))


def pi_basis(n: int) -> list[VPoint]:
    """Projections pi_n(e_1), ..., pi_n(e_n)."""
    out = []
    for i in range(n):
        e = [0.0] * n
        e[i] = 1.0
        out.append(project_trace_zero(e))
    return out


def chamber_reduce(x: VPoint) -> tuple[ChamberPoint, WeylElement]:
    """Sort x into the chamber: returns (c, w) with w.apply(c.coords) == x.coords.

    Raises WallError when two coordinates coincide within WALL_TOL.
    """
    c = sorted(x.coords, reverse=True)
    for i in range(len(c) - 1):
        if c[i] - c[i + 1] < WALL_TOL:
            raise WallError(f"point within {WALL_TOL} of a wall: {x.coords}")
    # perm[i] = position of x_i in the sorted tuple; exact since values are distinct
    perm = tuple(c.index(v) for v in x.coords)
    return ChamberPoint(tuple(c)), WeylElement(perm)


def wall_distance(x) -> float:
    """Minimum pairwise coordinate gap (any n, any order)."""
    c = sorted(x.coords if hasattr(x, "coords") else x)
    return min(c[i + 1] - c[i] for i in range(len(c) - 1))


def vandermonde_exp(x) -> float:
    """V_n(x) = prod_{i<j} (e^{x_i} - e^{x_j})."""
    c = x.coords if hasattr(x, "coords") else tuple(x)
    ex = [math.exp(v) for v in c]
    out = 1.0
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            out *= ex[i] - ex[j]
    return out


def log_abs_vandermonde_exp(x) -> tuple[float, float]:
    """(log|V_n(x)|, sign).  Stable for large coordinates and small gaps:
    e^{x_i} - e^{x_j} = e^{x_j} expm1(x_i - x_j)."""
    c = x.coords if hasattr(x, "coords") else tuple(x)
    logv, sgn = 0.0, 1.0
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            d = c[i] - c[j]
            if d == 0.0:
                return -math.inf, 0.0
            t = math.expm1(abs(d))
            logv += min(c[i], c[j]) + math.log(t)
            if d < 0:
                sgn = -sgn
    return logv, sgn


def in_convex_hull(x: ChamberPoint, z: VPoint, tol: float = 1e-12) -> bool:
    """Whether z lies in the convex hull of the Weyl orbit of x (n = 3 only).

    For trace-zero triples with x sorted this is x_3 <= z_i <= x_1 for all i.
    """
    if x.n != 3 or z.n != 3:
        raise ParameterError("convex-hull membership is implemented for n = 3")
    lo, hi = x.coords[2] - tol, x.coords[0] + tol
    return all(lo <= v <= hi for v in z.coords)
