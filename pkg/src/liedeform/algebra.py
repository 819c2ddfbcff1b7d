"""Lie algebras given by structure constants.

Conventions: the rank-3 tensor ``f`` stores f[mu][alpha][beta] with
[e_alpha, e_beta] = e_mu f[mu][alpha][beta].  Everything downstream
(coboundaries, adjoint action, Lie-Poisson blocks) contracts against
this layout.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import ShapeMismatch

#: acceptance threshold for antisymmetry / Jacobi residuals
AXIOM_TOL = 1e-12

#: relative threshold on |det B| for Cartan's semisimplicity criterion
SEMISIMPLE_TOL = 1e-9


@dataclass(frozen=True)
class ValidationReport:
    antisymmetry_residual: float
    jacobi_residual: float
    tol: float = AXIOM_TOL

    @property
    def accepted(self) -> bool:
        return (self.antisymmetry_residual <= self.tol
                and self.jacobi_residual <= self.tol)


def validate_algebra(f, tol: float = AXIOM_TOL) -> ValidationReport:
    """Check bracket antisymmetry and the Jacobi identity.

    Raises ShapeMismatch for non-cubic input; otherwise always returns a
    report (acceptance is the report's verdict, not an exception).
    """
    f = np.asarray(f, dtype=float)
    if f.ndim != 3 or len(set(f.shape)) != 1:
        raise ShapeMismatch(f"structure constants must be N x N x N, got {f.shape}")
    anti = float(np.max(np.abs(f + np.swapaxes(f, 1, 2)))) if f.size else 0.0
    # cyclic sum over the inner contraction index
    jac = (np.einsum('mak,kbc->mabc', f, f)
           + np.einsum('mbk,kca->mabc', f, f)
           + np.einsum('mck,kab->mabc', f, f))
    return ValidationReport(anti, float(np.max(np.abs(jac))) if f.size else 0.0, tol)


@dataclass(frozen=True)
class LieAlgebra:
    """A finite-dimensional real Lie algebra in a fixed basis."""

    name: str
    dim: int
    f: np.ndarray

    def __post_init__(self):
        f = np.ascontiguousarray(np.asarray(self.f, dtype=float))
        f.setflags(write=False)
        object.__setattr__(self, 'f', f)

    @classmethod
    def from_structure_constants(cls, name: str, f, tol: float = AXIOM_TOL) -> "LieAlgebra":
        report = validate_algebra(f, tol)
        if not report.accepted:
            raise ValueError(
                f"structure constants rejected: antisymmetry residual "
                f"{report.antisymmetry_residual:.3e}, Jacobi residual "
                f"{report.jacobi_residual:.3e} (tol {tol:.1e})")
        f = np.asarray(f, dtype=float)
        return cls(name, f.shape[0], f)

    def bracket(self, u, v) -> np.ndarray:
        """[u, v] in components."""
        return np.einsum('mab,a,b->m', self.f, np.asarray(u, float), np.asarray(v, float))


def killing_form(algebra: LieAlgebra) -> np.ndarray:
    """B[a][b] = sum_{m,n} f[m][a][n] f[n][b][m]; symmetrized exactly."""
    B = np.einsum('man,nbm->ab', algebra.f, algebra.f)
    return 0.5 * (B + B.T)


def is_semisimple(algebra: LieAlgebra, tol: float = SEMISIMPLE_TOL) -> bool:
    """Cartan's criterion: nondegenerate Killing form.

    Scale-relative: |det B| > tol * (max |B|)^N, with an identically zero
    Killing form always judged non-semisimple.
    """
    B = killing_form(algebra)
    scale = float(np.max(np.abs(B)))
    if scale == 0.0:
        return False
    return abs(np.linalg.det(B)) > tol * scale ** algebra.dim


def ad_matrix(algebra: LieAlgebra, u) -> np.ndarray:
    """Matrix of ad_u, (ad_u)^m_n = f[m][k][n] u^k, so ad_u @ v = [u, v]."""
    return np.einsum('mkn,k->mn', algebra.f, np.asarray(u, float))


def ad_exp(algebra: LieAlgebra, u, t: float) -> np.ndarray:
    """Adjoint representation of exp(t u): the matrix exponential of t * ad_u."""
    return expm(t * ad_matrix(algebra, u))


def coadjoint_matrix(algebra: LieAlgebra, u, t: float) -> np.ndarray:
    """K(exp(t u)) on the dual space: transpose of Ad(exp(-t u))."""
    return ad_exp(algebra, u, -t).T


# ---------------------------------------------------------------------------
# benchmark registry
# ---------------------------------------------------------------------------

def _levi_civita(n: int = 3) -> np.ndarray:
    eps = np.zeros((n, n, n))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return eps


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_structure_constants(f"abelian{n}", np.zeros((n, n, n)))


def so3() -> LieAlgebra:
    return LieAlgebra.from_structure_constants("so3", _levi_civita())


def sl2r() -> LieAlgebra:
    # basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
    f = np.zeros((3, 3, 3))
    f[1, 0, 1] = 2.0
    f[1, 1, 0] = -2.0
    f[2, 0, 2] = -2.0
    f[2, 2, 0] = 2.0
    f[0, 1, 2] = 1.0
    f[0, 2, 1] = -1.0
    return LieAlgebra.from_structure_constants("sl2r", f)


def heisenberg() -> LieAlgebra:
    # [e1, e2] = e3, all else zero
    f = np.zeros((3, 3, 3))
    f[2, 0, 1] = 1.0
    f[2, 1, 0] = -1.0
    return LieAlgebra.from_structure_constants("heisenberg", f)


def se2() -> LieAlgebra:
    # translations e1, e2 and rotation e3: [e3,e1] = e2, [e3,e2] = -e1
    f = np.zeros((3, 3, 3))
    f[1, 2, 0] = 1.0
    f[1, 0, 2] = -1.0
    f[0, 2, 1] = -1.0
    f[0, 1, 2] = 1.0
    return LieAlgebra.from_structure_constants("se2", f)


_REGISTRY = {
    "so3": so3,
    "sl2r": sl2r,
    "heisenberg": heisenberg,
    "se2": se2,
}


def registry_names() -> list[str]:
    return sorted(_REGISTRY) + ["abelian<N>"]


def get_algebra(name: str) -> LieAlgebra:
    """Look up a benchmark algebra by name; 'abelianN' gives the N-dim abelian one."""
    if name in _REGISTRY:
        return _REGISTRY[name]()
    if name.startswith("abelian"):
        n = int(name[len("abelian"):])
        if n <= 0:
            raise ValueError(f"abelian dimension must be positive, got {n}")
        return abelian(n)
    raise KeyError(f"unknown registry algebra {name!r}; known: {registry_names()}")


def registry_algebras(abelian_dims=(2, 3)) -> list[LieAlgebra]:
    """All benchmark algebras, with abelian R^n for the given dimensions."""
    return [abelian(n) for n in abelian_dims] + [fn() for _, fn in sorted(_REGISTRY.items())]


def load_algebra(path) -> LieAlgebra:
    """Load an algebra spec file {"name":, "dim":, "f":} and validate it."""
    with open(path) as fh:
        data = json.load(fh)
    f = np.asarray(data["f"], dtype=float)
    if f.shape != (data["dim"],) * 3:
        raise ShapeMismatch(
            f"{path}: declared dim {data['dim']} but f has shape {f.shape}")
    report = validate_algebra(f)
    if not report.accepted:
        raise ValueError(
            f"{path}: algebra rejected (antisymmetry {report.antisymmetry_residual:.3e}, "
            f"Jacobi {report.jacobi_residual:.3e})")
    return LieAlgebra(data["name"], int(data["dim"]), f)
