"""The deformed two-form in the left-invariant coframe.

The 2N x 2N coefficient matrix uses the basis ordering
(epsilon^1_L ... epsilon^N_L, dpi_1 ... dpi_N) and the block layout

    M = [[ C(pi),  I_N ],
         [ -I_N,   Upsilon ]],   C(pi) = pi_m f[m] + Theta.

Kernel vectors (x, y) satisfy y = -C x and (I + Upsilon C) x = 0, so the
nullity of M equals the nullity of I + Upsilon C(pi).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import LieAlgebra
from .cohomology import admission_tol, cocycle_residual, delta1_scalar, solve_primitive
from .errors import DegenerateForm, NotACocycle, NotAntisymmetric, UpsilonPresent

#: singular values below RANK_TOL * sigma_max count as zero
RANK_TOL = 1e-10


def _check_antisymmetric(name: str, A, tol: float = 1e-12):
    A = np.asarray(A, float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotAntisymmetric(f"{name} must be square, got shape {A.shape}")
    if np.max(np.abs(A + A.T), initial=0.0) > tol:
        raise NotAntisymmetric(f"{name} fails antisymmetry at {tol:.1e}")
    return A


@dataclass(frozen=True)
class DeformedStructure:
    """A Lie algebra together with admitted deformations Theta and Upsilon."""

    algebra: LieAlgebra
    Theta: np.ndarray = None
    Upsilon: np.ndarray = None

    def __post_init__(self):
        n = self.algebra.dim
        Theta = np.zeros((n, n)) if self.Theta is None else np.asarray(self.Theta, float)
        Upsilon = np.zeros((n, n)) if self.Upsilon is None else np.asarray(self.Upsilon, float)
        Theta = _check_antisymmetric("Theta", Theta)
        Upsilon = _check_antisymmetric("Upsilon", Upsilon)
        if Theta.shape != (n, n) or Upsilon.shape != (n, n):
            raise NotAntisymmetric(f"deformation matrices must be {n} x {n}")
        res = cocycle_residual(self.algebra, Theta)
        tol = admission_tol(self.algebra, Theta)
        if res > tol:
            raise NotACocycle(
                f"Theta is not a two-cocycle: residual {res:.3e} > {tol:.3e}")
        Theta.setflags(write=False)
        Upsilon.setflags(write=False)
        object.__setattr__(self, 'Theta', Theta)
        object.__setattr__(self, 'Upsilon', Upsilon)


def lie_poisson_block(structure: DeformedStructure, pi) -> np.ndarray:
    """Top-left block C(pi) = pi_m f[m] + Theta."""
    return np.einsum('m,mab->ab', np.asarray(pi, float), structure.algebra.f) + structure.Theta


def omega_matrix(structure: DeformedStructure, pi) -> np.ndarray:
    """Coefficient matrix of the deformed two-form at body momentum pi."""
    n = structure.algebra.dim
    eye = np.eye(n)
    C = lie_poisson_block(structure, pi)
    return np.block([[C, eye], [-eye, structure.Upsilon]])


@dataclass(frozen=True)
class DegeneracyReport:
    rank: int
    nullity: int
    kernel: np.ndarray  # 2N x nullity, orthonormal columns


def degeneracy(structure: DeformedStructure, pi, rank_tol: float = RANK_TOL) -> DegeneracyReport:
    """Rank, nullity and kernel basis of the two-form matrix via SVD."""
    M = omega_matrix(structure, pi)
    _, s, vt = np.linalg.svd(M)
    cutoff = rank_tol * s[0] if s[0] > 0 else rank_tol
    rank = int(np.sum(s > cutoff))
    kernel = vt[rank:].T
    return DegeneracyReport(rank=rank, nullity=M.shape[0] - rank, kernel=kernel)


def poisson_tensor(structure: DeformedStructure, pi, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Inverse of the two-form matrix, antisymmetrized to machine precision."""
    report = degeneracy(structure, pi, rank_tol)
    if report.nullity > 0:
        raise DegenerateForm(
            f"two-form degenerate at this momentum (nullity {report.nullity})",
            kernel=report.kernel)
    Pi = np.linalg.inv(omega_matrix(structure, pi))
    return 0.5 * (Pi - Pi.T)


def closedness_residual(structure: DeformedStructure) -> float:
    """Obstruction to closedness of the deformed form: the cocycle residual of Theta.

    Constant Upsilon contributes nothing, so the Maurer-Cartan identity
    reduces closedness to the two-cocycle condition on Theta.
    """
    return cocycle_residual(structure.algebra, structure.Theta)


def darboux_shift(structure: DeformedStructure, pi):
    """Absorb an exact Theta into a momentum shift: returns (pi - xi, xi).

    Requires Upsilon = 0.  After the shift the Lie-Poisson block satisfies
    C_Theta(pi) = C_0(pi - xi) entrywise.
    """
    if np.max(np.abs(structure.Upsilon), initial=0.0) != 0.0:
        raise UpsilonPresent("Darboux shift applies only with Upsilon = 0")
    xi, _, _ = solve_primitive(structure.algebra, structure.Theta)
    return np.asarray(pi, float) - xi, xi


def load_deformation(path, algebra: LieAlgebra) -> DeformedStructure:
    """Load a deformation spec {"Theta":, "Upsilon":, "xi":} and admit it.

    A null Theta together with a non-null xi builds the coboundary of xi.
    """
    with open(path) as fh:
        data = json.load(fh)
    n = algebra.dim
    Theta = data.get("Theta")
    if Theta is None:
        xi = data.get("xi")
        Theta = delta1_scalar(algebra, xi) if xi is not None else np.zeros((n, n))
    Upsilon = data.get("Upsilon")
    if Upsilon is None:
        Upsilon = np.zeros((n, n))
    return DeformedStructure(algebra, np.asarray(Theta, float), np.asarray(Upsilon, float))
