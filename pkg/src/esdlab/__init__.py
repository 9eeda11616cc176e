"""Entanglement sudden death of two qubits under amplitude damping, with and
without four-qubit approximate error correction."""

from .analytic import coded_fidelity_series, uncoded_fidelity_exact, uncoded_phi_concurrence
from .channels import AmplitudeDamping, KrausChannel, apply_independent, kraus_pair
from .code41 import CODE, FourQubitCode
from .errors import LeakageError, NumericalError, SizeError
from .metrics import MetricResult, concurrence, fidelity
from .pipeline import (
    EsdReport,
    SimResult,
    coded_state,
    crossover,
    esd_report,
    esd_threshold,
    run_coded,
    run_uncoded,
    sweep,
    uncoded_state,
)
from .qlinalg import BACKEND, apply_local, eigvals_4x4, partial_trace, tensor
from .states import Family, StateFamily, make_coded, make_uncoded

__version__ = "0.1.0"
