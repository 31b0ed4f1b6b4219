"""Heckman-Opdam hypergeometric functions of type A (rank 1 and A2).

Numerical evaluation of the symmetric function F_k, the antisymmetric F*_k,
and the nonsymmetric G_k via integral representations and Cherednik
operators, cross-validated against an exact rational polynomial oracle.
"""
from .accel import BACKEND
from .cherednik_numeric import (
    DirectionalStencil,
    OperatorCoeffs,
    cherednik_anti,
    cherednik_general,
    cherednik_sym,
    g_a2,
    g_orbit,
    laplacian_L,
    tau,
)
from .errors import (
    ConvergenceError,
    DegenerateSpectrum,
    DomainError,
    OpdamError,
    ParameterError,
    ResonantParam,
    SingularSpectralParam,
    WallError,
)
from .gauss_2f1 import Hyp2F1Params, hyp2f1, jacobi_phi, jacobi_phi_L, jacobi_phi_deriv
from .hyp_f import HypFContext, f_a2, f_rank1, f_rank1_quadrature, f_recursive, f_total
from .hyp_fstar import ShiftConstants, d_k, fstar_integral, fstar_total, fstar_via_shift, p_poly
from .laplace_kernel import KernelSupport, kernel_transform, n_kernel, r_kernel, vk_transform
from .quadrature import (
    EvalResult,
    QuadRule,
    gauss_jacobi_rule,
    integrate_rect_singular_2d,
    integrate_singular_1d,
    smooth_part_w,
)
from .root_lattice import (
    ChamberPoint,
    MultiplicityK,
    SpectralParam,
    VPoint,
    WeylElement,
    chamber_reduce,
    in_convex_hull,
    project_trace_zero,
    rho,
    vandermonde_exp,
)

__version__ = "0.1.0"
