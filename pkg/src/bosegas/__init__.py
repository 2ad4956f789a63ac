"""bosegas: computable artifacts for the dilute Bose gas.

Scattering lengths from pair potentials, certified upper/lower bounds on the
homogeneous ground-state energy with an optimized error constant,
Gross-Pitaevskii trap ground states (3d and 2d log-coupling), and the
Bogolubov pairing energy of the charged gas.
"""

__version__ = "0.1.0"

from .potentials import (  # noqa: F401
    Units, DILUTE_UNITS, CHARGED_UNITS,
    PairPotential, HardCore, SquareWell, Tabulated, PowerTail,
    TrapPotential, HarmonicTrap, BoxTrap, TabulatedRadialTrap,
    evaluate_potential, pair_potential,
)
from .scattering import (  # noqa: F401
    ScatteringSolution, solve_zero_energy, scattering_length_3d,
    scattering_length_2d, born_approximation, energy_identity_check,
    verify_dyson_lemma, UniformShell, DeltaShell,
)
from .dilute_bounds import (  # noqa: F401
    GasParameter, CellParameters, BoundReport,
    upper_bound_ratio, upper_bound_finite_box, dyson_bounds_hard_sphere,
    temple_K, lower_bound_ratio, lower_bound_finite_box,
    cell_occupancy_minimize, superadditivity_check,
    optimize_error_constant, lhy_expansion, schick_2d,
)
from .gp_solver import (  # noqa: F401
    GPProblem, GPSolution, RadialGrid, TensorGrid,
    gp_energy, gp_minimize, tf_minimize, gp_limit_scan, gp_2d_coupling,
)
from .charged_gas import (  # noqa: F401
    BogolubovMode, JelliumResult, bogolubov_coefficients, foldy_energy,
    pairing_kernel, infinite_mass_comparison, two_component_scaling,
)
