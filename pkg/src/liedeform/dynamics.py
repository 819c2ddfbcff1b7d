"""Euler-type Hamiltonian dynamics under the deformed structure.

The flow solves M(pi) zeta = -dH with zeta = (eta, pidot) and
dH = (0, I_inv pi) in the left-invariant frame, which reduces to

    (I_N + C(pi) Upsilon) pidot = -C(pi) I_inv pi,   eta = I_inv pi + Upsilon pidot.

With Theta = Upsilon = 0 on so(3) this is classical Euler, pidot = pi x (I_inv pi).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import polar

from .algebra import LieAlgebra, is_semisimple, killing_form, so3
from .cohomology import solve_primitive
from .errors import DegenerateForm, NotExact, StepRejected
from .phase_space import RANK_TOL, DeformedStructure, lie_poisson_block


@dataclass(frozen=True)
class InertiaTensor:
    """Positive-definite contravariant inertia: maps body momentum to body velocity."""

    I_inv: np.ndarray

    def __post_init__(self):
        I_inv = np.asarray(self.I_inv, dtype=float)
        if I_inv.ndim != 2 or I_inv.shape[0] != I_inv.shape[1]:
            raise ValueError(f"inertia must be square, got shape {I_inv.shape}")
        if np.max(np.abs(I_inv - I_inv.T)) > 1e-12:
            raise ValueError("inertia must be symmetric")
        if np.min(np.linalg.eigvalsh(I_inv)) <= 0:
            raise ValueError("inertia must be positive definite")
        I_inv.setflags(write=False)
        object.__setattr__(self, 'I_inv', I_inv)

    @classmethod
    def diagonal(cls, values) -> "InertiaTensor":
        return cls(np.diag(np.asarray(values, float)))

    @classmethod
    def identity(cls, n: int) -> "InertiaTensor":
        return cls(np.eye(n))


def hamiltonian(inertia: InertiaTensor, pi) -> float:
    pi = np.asarray(pi, float)
    return 0.5 * float(pi @ inertia.I_inv @ pi)


def hamiltonian_vector_field(structure: DeformedStructure, inertia: InertiaTensor, pi):
    """(eta, pidot) of the Hamiltonian vector field at body momentum pi.

    Raises DegenerateForm when the two-form is singular at this point.
    """
    pi = np.asarray(pi, float)
    C = lie_poisson_block(structure, pi)
    velocity = inertia.I_inv @ pi
    if np.max(np.abs(structure.Upsilon), initial=0.0) == 0.0:
        pidot = -C @ velocity
        return velocity, pidot
    n = structure.algebra.dim
    K = np.eye(n) + C @ structure.Upsilon
    s = np.linalg.svd(K, compute_uv=False)
    if s[-1] <= RANK_TOL * max(s[0], 1.0):
        raise DegenerateForm("two-form degenerate at this momentum")
    pidot = np.linalg.solve(K, -C @ velocity)
    eta = velocity + structure.Upsilon @ pidot
    return eta, pidot


@dataclass
class Trajectory:
    times: np.ndarray
    pis: np.ndarray                      # steps+1 x N
    monitors: dict                       # name -> array, same length as times
    gs: np.ndarray | None = None         # steps+1 x d x d when a representation is supplied
    degenerate_at: float | None = None   # time of a mid-run degeneracy abort

    @property
    def complete(self) -> bool:
        return self.degenerate_at is None

    def drift(self, channel: str) -> float:
        values = self.monitors[channel]
        return float(np.max(np.abs(values - values[0])))


def _casimir_monitor(structure: DeformedStructure):
    """Quadratic Casimir of the shifted momentum, when it is well defined.

    Requires a semisimple algebra, Upsilon = 0 and exact Theta; the conserved
    quantity is then the inverse-Killing quadratic of sigma = pi - xi.
    """
    algebra = structure.algebra
    if not is_semisimple(algebra):
        return None
    if np.max(np.abs(structure.Upsilon), initial=0.0) != 0.0:
        return None
    try:
        xi, _, _ = solve_primitive(algebra, structure.Theta)
    except NotExact:
        return None
    B_inv = np.linalg.inv(killing_form(algebra))

    def monitor(pi):
        sigma = pi - xi
        return float(sigma @ B_inv @ sigma)

    return monitor


def _rk4_step(rhs, y, dt):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(structure: DeformedStructure, inertia: InertiaTensor, pi0,
              T: float, dt: float, g0=None, rep=None,
              extra_monitors: dict | None = None) -> Trajectory:
    """Classical RK4 integration of the deformed Euler flow.

    ``rep`` is an optional stack of N generator matrices rho(e_i); when given
    (with g0 defaulting to the identity), the group element is reconstructed
    from dg/dt = g rho(eta) with per-step polar reprojection.

    A mid-run degeneracy returns the partial trajectory with
    ``degenerate_at`` set; non-finite states raise StepRejected.
    """
    pi = np.asarray(pi0, dtype=float).copy()
    steps = int(round(T / dt))
    times = dt * np.arange(steps + 1)

    reconstruct = rep is not None
    if reconstruct:
        rep = np.asarray(rep, dtype=float)
        g = np.eye(rep.shape[1]) if g0 is None else np.asarray(g0, dtype=float).copy()

    extra = dict(extra_monitors or {})
    casimir = _casimir_monitor(structure)

    def sample_monitors(pi):
        row = {"energy": hamiltonian(inertia, pi)}
        if casimir is not None:
            row["casimir"] = casimir(pi)
        for name, vec in extra.items():
            row[name] = float(np.dot(vec, pi))
        return row

    def pi_rhs(p):
        _, pidot = hamiltonian_vector_field(structure, inertia, p)
        return pidot

    pis = [pi.copy()]
    gs = [g.copy()] if reconstruct else None
    channels = {k: [v] for k, v in sample_monitors(pi).items()}
    degenerate_at = None

    for k in range(steps):
        try:
            if reconstruct:
                def pair_rhs(state):
                    p, gg = state
                    eta, pidot = hamiltonian_vector_field(structure, inertia, p)
                    gen = np.einsum('i,ijk->jk', eta, rep)
                    return _PairState(pidot, gg @ gen)
                new = _rk4_step(pair_rhs, _PairState(pi, g), dt)
                pi, g = new.pi, new.g
                u, _ = polar(g)  # reproject onto the constraint surface
                g = u
            else:
                pi = _rk4_step(pi_rhs, pi, dt)
        except DegenerateForm:
            degenerate_at = float(times[k])
            break
        if not np.all(np.isfinite(pi)):
            raise StepRejected(f"non-finite momentum at t = {times[k + 1]:.6g}")
        pis.append(pi.copy())
        if reconstruct:
            gs.append(g.copy())
        for name, value in sample_monitors(pi).items():
            channels[name].append(value)

    n_kept = len(pis)
    return Trajectory(
        times=times[:n_kept],
        pis=np.array(pis),
        monitors={k: np.array(v) for k, v in channels.items()},
        gs=np.array(gs) if reconstruct else None,
        degenerate_at=degenerate_at,
    )


class _PairState:
    """Momentum plus group element, with the arithmetic RK4 needs."""

    __slots__ = ("pi", "g")

    def __init__(self, pi, g):
        self.pi = pi
        self.g = g

    def __iter__(self):
        return iter((self.pi, self.g))

    def __add__(self, other):
        return _PairState(self.pi + other.pi, self.g + other.g)

    def __rmul__(self, scalar):
        return _PairState(scalar * self.pi, scalar * self.g)

    def __mul__(self, scalar):
        return self.__rmul__(scalar)


def euler_reference(inertia: InertiaTensor, pi0, T: float, dt: float,
                    extra_monitors: dict | None = None) -> Trajectory:
    """Independent rigid-body oracle on so(3): RK4 on pidot = pi x (I_inv pi)."""
    pi0 = np.asarray(pi0, float)
    if pi0.shape != (3,):
        raise ValueError("the rigid-body oracle is three-dimensional")
    pi = pi0.copy()
    steps = int(round(T / dt))
    times = dt * np.arange(steps + 1)

    def rhs(p):
        return np.cross(p, inertia.I_inv @ p)

    extra = dict(extra_monitors or {})
    pis = [pi.copy()]
    energy = [hamiltonian(inertia, pi)]
    channels = {name: [float(np.dot(vec, pi))] for name, vec in extra.items()}
    for k in range(steps):
        pi = _rk4_step(rhs, pi, dt)
        if not np.all(np.isfinite(pi)):
            raise StepRejected(f"non-finite momentum at t = {times[k + 1]:.6g}")
        pis.append(pi.copy())
        energy.append(hamiltonian(inertia, pi))
        for name, vec in extra.items():
            channels[name].append(float(np.dot(vec, pi)))
    monitors = {"energy": np.array(energy)}
    monitors.update({k: np.array(v) for k, v in channels.items()})
    return Trajectory(times=times, pis=np.array(pis), monitors=monitors)


def so3_vector_representation() -> np.ndarray:
    """Generators of the rotation representation matching the so3 registry basis."""
    algebra = so3()
    gens = np.zeros((3, 3, 3))
    for i in range(3):
        u = np.zeros(3)
        u[i] = 1.0
        gens[i] = np.einsum('mkn,k->mn', algebra.f, u)
    return gens
