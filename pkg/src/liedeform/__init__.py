"""Numerical toolkit for deformed symplectic structures on cotangent bundles of Lie groups."""

__version__ = "0.1.0"

from .algebra import (
    LieAlgebra,
    ValidationReport,
    ad_exp,
    ad_matrix,
    coadjoint_matrix,
    get_algebra,
    is_semisimple,
    killing_form,
    load_algebra,
    registry_algebras,
    validate_algebra,
)
from .cohomology import (
    CohomologyDims,
    cohomology_dimensions,
    cocycle_residual,
    delta1_scalar,
    delta1_vector,
    delta2,
    is_symplectic_cocycle,
    solve_primitive,
)
from .dynamics import (
    InertiaTensor,
    Trajectory,
    euler_reference,
    hamiltonian,
    hamiltonian_vector_field,
    integrate,
    so3_vector_representation,
)
from .errors import (
    DegenerateForm,
    LieDeformError,
    NotACocycle,
    NotAntisymmetric,
    NotExact,
    ShapeMismatch,
    StepRejected,
    UpsilonPresent,
)
from .phase_space import (
    DeformedStructure,
    DegeneracyReport,
    closedness_residual,
    darboux_shift,
    degeneracy,
    lie_poisson_block,
    load_deformation,
    omega_matrix,
    poisson_tensor,
)
from .symmetry import (
    IsotropySubalgebra,
    group_isotropy_check,
    isotropy_subalgebra,
    lie_derivative_cocycle,
    lie_derivative_inertia,
    lie_derivative_momentum_form,
)
