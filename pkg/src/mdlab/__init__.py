from .lib.api import DualityReport, McEstimate, Model, ModelSpec, RunConfig
from .lib.duality import duality_braided, duality_msasep, duality_open, duality_matrix
from .lib.generators import build_braided, build_generator, build_msasep, build_open
from .lib.qnum import parse_rational, q_binomial, q_int
from .lib.sim import estimate_duality_gap, exact_expectation, run_trajectory
from .lib.states import enumerate_states, parse_config
from .lib.verify import SuiteParams, run_suite
from .plugins.report_summary import ReportSummaryPlugin
from .utils import bond_distribution, evaluate_duality, simulate_gap, verify_suite

__all__ = [
    "DualityReport",
    "McEstimate",
    "Model",
    "ModelSpec",
    "ReportSummaryPlugin",
    "RunConfig",
    "SuiteParams",
    "bond_distribution",
    "build_braided",
    "build_generator",
    "build_msasep",
    "build_open",
    "duality_braided",
    "duality_matrix",
    "duality_msasep",
    "duality_open",
    "enumerate_states",
    "estimate_duality_gap",
    "evaluate_duality",
    "exact_expectation",
    "parse_config",
    "parse_rational",
    "q_binomial",
    "q_int",
    "run_suite",
    "run_trajectory",
    "simulate_gap",
    "verify_suite",
]

__version__ = "0.1.0"
