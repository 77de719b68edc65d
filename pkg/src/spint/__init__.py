"""spint: structure-preserving time integration.

Symplectic Runge-Kutta schemes, Dirac integrators for constrained Lagrangian
systems, and a Borel-Pade-Laplace resummation integrator, with benchmark
problems and an invariant-tracking harness.
"""

from .borel import (
    BorelSum,
    BplConfig,
    BplTrajectory,
    RationalApproximant,
    TaylorGenerator,
    TaylorSeries,
    borel_transform,
    bpl_integrate,
    bpl_step,
    build_borel_sum,
    generate_series,
    pade_fit,
    pole_guard,
    residual,
    series_symplectic_defect,
)
from .dirac import (
    ConstrainedSystem,
    DiracState,
    constrained_energy,
    constraint_residual,
    dirac1_step,
    dirac2_step,
    euler_constrained_control,
    run_dirac,
)
from .errors import SpintError
from .hamiltonian import (
    HamiltonianSystem,
    apply_j,
    hamiltonian_drift,
    j_matrix,
    pairing,
    symplecticity_defect,
)
from .quadrature import QuadratureRule, gauss_laguerre
from .steppers import (
    ButcherTableau,
    StepReport,
    check_symplectic_condition,
    explicit_euler_step,
    implicit_euler_step,
    implicit_midpoint_tableau,
    integrate,
    integrate_rk4,
    integrate_rk4_adaptive,
    irk_step,
    rk4_step,
    rk4_tableau,
    rk4sym_tableau,
    stormer_verlet_step,
    symplectic_euler_step,
)

__version__ = "0.1.0"
