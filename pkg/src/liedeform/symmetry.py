"""Residual right-symmetry: Lie derivatives of the deformations and isotropy.

Transformation rules: Theta is covariant (conjugation by Ad(a) on both
slots), Upsilon and the inertia tensor are contravariant (conjugation by
Ad(a^{-1})).  The isotropy subalgebra is the joint kernel of the stacked
infinitesimal actions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebra, ad_exp, ad_matrix

#: singular values below this (relative) cut count as zero in null-space extraction
NULLSPACE_TOL = 1e-10


def lie_derivative_cocycle(algebra: LieAlgebra, u, Theta) -> np.ndarray:
    """(L_u Theta)_{mn} = Theta(ad_u e_m, e_n) + Theta(e_m, ad_u e_n)."""
    ad = ad_matrix(algebra, u)
    Theta = np.asarray(Theta, float)
    return ad.T @ Theta + Theta @ ad


def lie_derivative_momentum_form(algebra: LieAlgebra, u, Upsilon) -> np.ndarray:
    """Contravariant Lie derivative: -(ad_u Upsilon + Upsilon ad_u^T)."""
    ad = ad_matrix(algebra, u)
    Upsilon = np.asarray(Upsilon, float)
    return -(ad @ Upsilon + Upsilon @ ad.T)


def lie_derivative_inertia(algebra: LieAlgebra, u, inertia_inv) -> np.ndarray:
    """Same contravariant rule applied to the symmetric inertia tensor."""
    return lie_derivative_momentum_form(algebra, u, inertia_inv)


@dataclass(frozen=True)
class IsotropySubalgebra:
    basis: np.ndarray  # k x N, orthonormal rows
    dimension: int
    closure_residual: float


def isotropy_subalgebra(algebra: LieAlgebra, Theta, Upsilon, inertia_inv=None,
                        tol: float = NULLSPACE_TOL) -> IsotropySubalgebra:
    """Null space of u -> (L_u Theta, L_u Upsilon[, L_u I]) with closure check."""
    n = algebra.dim
    cols = []
    for i in range(n):
        u = np.zeros(n)
        u[i] = 1.0
        parts = [lie_derivative_cocycle(algebra, u, Theta).ravel(),
                 lie_derivative_momentum_form(algebra, u, Upsilon).ravel()]
        if inertia_inv is not None:
            parts.append(lie_derivative_inertia(algebra, u, inertia_inv).ravel())
        cols.append(np.concatenate(parts))
    A = np.array(cols).T
    _, s, vt = np.linalg.svd(A)
    smax = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > tol * smax))
    basis = vt[rank:]
    # bracket closure: project [b_i, b_j] outside the span
    residual = 0.0
    proj = basis.T @ basis
    for i in range(basis.shape[0]):
        for j in range(i + 1, basis.shape[0]):
            w = algebra.bracket(basis[i], basis[j])
            residual = max(residual, float(np.linalg.norm(w - proj @ w)))
    return IsotropySubalgebra(basis=basis, dimension=basis.shape[0],
                              closure_residual=residual)


def group_isotropy_check(algebra: LieAlgebra, u, t: float, Theta, Upsilon) -> float:
    """Max-entry residual of the finite invariance conditions at a = exp(t u)."""
    Theta = np.asarray(Theta, float)
    Upsilon = np.asarray(Upsilon, float)
    Ad = ad_exp(algebra, u, t)
    Ad_inv = ad_exp(algebra, u, -t)
    r_theta = np.max(np.abs(Ad.T @ Theta @ Ad - Theta), initial=0.0)
    r_upsilon = np.max(np.abs(Ad_inv @ Upsilon @ Ad_inv.T - Upsilon), initial=0.0)
    return float(max(r_theta, r_upsilon))
