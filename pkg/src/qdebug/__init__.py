"""Synthesis and validation of monitoring protocols for discrete-time quantum processes."""

from .algebra import GaussianRational, Matrix, Polynomial, ScaledUnitary, Subspace
from .grover import GroverInstance, build_grover, grover_q_bound
from .measurement import GeneralMeasurement, ReductionResult, check_compatibility, reduce_measurement
from .process import ProcessSpec, anticipated_trajectory
from .protocols import Protocol, Strategy, is_error_detector, synthesize_protocols, verify_protocol
from .simulator import BugModel, RunReport, run_monitored_exact, run_monitored_sampled
from .sml import (
    PeriodCertificate,
    Progression,
    ZeroScan,
    candidate_orders,
    find_p,
    find_progression,
    find_residues,
    invariant_core,
    zero_set_scan,
)

__version__ = "0.1.0"
