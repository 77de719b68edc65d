"""Benchmark problems: oscillators, Toda lattice, n-body, double pendulum,
Duffing, and the KdV spectral semi-discretization."""

from .duffing import (
    CHAOTIC_AMPLITUDES,
    DuffingProblem,
    duffing_H2,
    duffing_I1,
    duffing_case1,
    duffing_case2,
    duffing_chaotic,
    duffing_generator,
    duffing_initial_state,
    duffing_rhs,
    duffing_taylor,
)
from .kdv import (
    KdvSpectral,
    enforce_symmetry,
    kdv_exact,
    kdv_exact_coeffs,
    kdv_generator,
    kdv_initial,
    kdv_l2_error,
    kdv_profile,
    kdv_rhs,
    kdv_taylor_coeffs,
    mode_convolve,
    symmetry_defect,
)
from .nbody import (
    FIGURE_EIGHT_PERIOD,
    angular_momentum,
    figure_eight_initial,
    nbody_grad,
    nbody_hamiltonian,
    nbody_system,
    perturbed_initial,
)
from .oscillator import harmonic_exact, harmonic_oscillator, quartic_oscillator
from .pendulum import (
    double_pendulum,
    double_pendulum_state,
    free_particle,
    pendulum_angles,
    simple_pendulum,
)
from .toda import (
    lax_eigenvalues,
    lax_matrix,
    toda_grad,
    toda_hamiltonian,
    toda_initial_state,
    toda_system,
)
