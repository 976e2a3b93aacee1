"""Double-cage induction motor parameter estimation from nameplate data."""

from .estimator import EstimationError, EstimationReport, compare_methods, emit_curves, estimate
from .motor_model import (
    CircuitParams,
    MaxTorque,
    ModelDomainError,
    Nameplate,
    SteadyState,
    current_curve,
    find_max_torque,
    parallel_impedance,
    rotor_branch_impedance,
    steady_state,
    torque_curve,
)
from .objective import (
    CostBreakdown,
    NameplateObjective,
    SearchBounds,
    check_constraints,
    cost,
    penalized_cost,
    residuals,
)

__version__ = "0.1.0"
