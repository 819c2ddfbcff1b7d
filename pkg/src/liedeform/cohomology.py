"""Scalar Chevalley-Eilenberg cochain calculus in degrees one and two.

Coboundary conventions (all contractions against f[mu][alpha][beta]):

    (delta1 xi)_{ab}      = -xi_m f[m][a][b]
    (delta1 theta)_{a,mn} = -theta_{k,n} f[k][m][a] + theta_{k,m} f[k][n][a]
                            - theta_{a,k} f[k][m][n]
    (delta2 Theta)_{abc}  = -Theta_{kc} f[k][a][b] + Theta_{kb} f[k][a][c]
                            - Theta_{ka} f[k][b][c]

with theta_{a,m} the pairing of theta(e_m) against e_a.  For antisymmetric
theta the degree-one and degree-two residual tensors agree up to the index
permutation (a, m, n) -> (n, m, a); both vanish on the same cocycle set.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebra
from .errors import NotACocycle, NotAntisymmetric, NotExact

#: absolute cocycle-admission tolerance for integer-valued structure constants
ADMISSION_TOL_ABS = 1e-12
#: relative admission tolerance otherwise
ADMISSION_TOL_REL = 1e-9
#: relative exactness threshold in solve_primitive
EXACTNESS_TOL = 1e-9


def admission_tol(algebra: LieAlgebra, Theta) -> float:
    """Cocycle admission tolerance: absolute on integer-valued data, else relative."""
    Theta = np.asarray(Theta, float)
    integral = (np.max(np.abs(algebra.f - np.round(algebra.f)), initial=0.0) == 0.0
                and np.max(np.abs(Theta - np.round(Theta)), initial=0.0) == 0.0)
    if integral:
        return ADMISSION_TOL_ABS
    scale = max(np.max(np.abs(Theta), initial=0.0), 1.0) * max(np.max(np.abs(algebra.f), initial=0.0), 1.0)
    return ADMISSION_TOL_REL * scale


def delta1_scalar(algebra: LieAlgebra, xi) -> np.ndarray:
    """Coboundary of a dual-space element: Theta_{ab} = -xi_m f[m][a][b]."""
    return -np.einsum('m,mab->ab', np.asarray(xi, float), algebra.f)


def delta1_vector(algebra: LieAlgebra, theta) -> np.ndarray:
    """Coboundary residual of a dual-valued 1-cochain, indexed [a][m][n].

    Antisymmetric in the last two slots; identically zero exactly on cocycles.
    """
    theta = np.asarray(theta, float)
    return (-np.einsum('kn,kma->amn', theta, algebra.f)
            + np.einsum('km,kna->amn', theta, algebra.f)
            - np.einsum('ak,kmn->amn', theta, algebra.f))


def delta2(algebra: LieAlgebra, Theta, tol: float = 1e-12) -> np.ndarray:
    """Degree-two coboundary of an antisymmetric scalar 2-cochain, indexed [a][b][c]."""
    Theta = np.asarray(Theta, float)
    if np.max(np.abs(Theta + Theta.T), initial=0.0) > tol:
        raise NotAntisymmetric("Theta must be antisymmetric")
    return (-np.einsum('kc,kab->abc', Theta, algebra.f)
            + np.einsum('kb,kac->abc', Theta, algebra.f)
            - np.einsum('ka,kbc->abc', Theta, algebra.f))


def cocycle_residual(algebra: LieAlgebra, Theta) -> float:
    """Max-entry norm of delta2(Theta)."""
    return float(np.max(np.abs(delta2(algebra, Theta))))


def is_symplectic_cocycle(algebra: LieAlgebra, theta, tol: float | None = None) -> bool:
    """True iff theta is antisymmetric and has vanishing coboundary (both within tol)."""
    theta = np.asarray(theta, float)
    if tol is None:
        tol = admission_tol(algebra, theta)
    if np.max(np.abs(theta + theta.T), initial=0.0) > tol:
        return False
    return float(np.max(np.abs(delta1_vector(algebra, theta)))) <= tol


def _pair_index(n: int):
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def _coboundary_matrix(algebra: LieAlgebra) -> np.ndarray:
    """Matrix of xi -> delta1_scalar(xi) on the ordered-pair basis (a < b)."""
    pairs = _pair_index(algebra.dim)
    return np.array([[-algebra.f[m, a, b] for m in range(algebra.dim)] for a, b in pairs])


def solve_primitive(algebra: LieAlgebra, Theta, tol: float | None = None):
    """Minimal-norm xi with delta1_scalar(xi) = Theta, for a cocycle Theta.

    Returns (xi, residual, kernel_dim) where residual is the max-entry norm of
    Theta - delta1(xi) and kernel_dim the dimension of the coboundary map's
    kernel (nonzero only off the semisimple branch).  Raises NotACocycle if
    Theta fails the cocycle condition and NotExact if no primitive exists
    within the relative tolerance.
    """
    Theta = np.asarray(Theta, float)
    adm = admission_tol(algebra, Theta) if tol is None else tol
    res = cocycle_residual(algebra, Theta)
    if res > adm:
        raise NotACocycle(f"delta2 residual {res:.3e} exceeds tolerance {adm:.3e}")
    A = _coboundary_matrix(algebra)
    b = np.array([Theta[a, c] for a, c in _pair_index(algebra.dim)])
    xi, _, rank, _ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.max(np.abs(Theta - delta1_scalar(algebra, xi)), initial=0.0))
    scale = float(np.max(np.abs(Theta), initial=0.0))
    if residual > EXACTNESS_TOL * scale:
        raise NotExact(
            f"no primitive: residual {residual:.3e} vs scale {scale:.3e}",
            xi=xi, residual=residual)
    return xi, residual, algebra.dim - rank


@dataclass(frozen=True)
class CohomologyDims:
    z2: int
    b2: int
    h2: int
    h1: int


def cohomology_dimensions(algebra: LieAlgebra) -> CohomologyDims:
    """Ranks of the degree-one and degree-two coboundary maps.

    H2 = Z2 - B2 on the antisymmetric pair basis; H1 = N - dim of the
    derived algebra (rank of the flattened bracket map).
    """
    n = algebra.dim
    pairs = _pair_index(n)
    m = len(pairs)
    # delta2 on the ordered-pair basis of antisymmetric 2-cochains
    cols = []
    for a, b in pairs:
        E = np.zeros((n, n))
        E[a, b] = 1.0
        E[b, a] = -1.0
        cols.append(delta2(algebra, E).ravel())
    d2 = np.array(cols).T if m else np.zeros((n ** 3, 0))
    rank_d2 = int(np.linalg.matrix_rank(d2)) if m else 0
    z2 = m - rank_d2
    b2 = int(np.linalg.matrix_rank(_coboundary_matrix(algebra))) if m else 0
    derived = int(np.linalg.matrix_rank(algebra.f.reshape(n, n * n)))
    return CohomologyDims(z2=z2, b2=b2, h2=z2 - b2, h1=n - derived)
