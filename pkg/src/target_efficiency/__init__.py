"""Efficiency indicators for target operations.

Lumped (registration) and distributed (event-stream) models, reference sets
of capitalization chains, and reproducible parameter studies.
"""

from .core_model import (
    AssessmentConfig,
    FlowEvent,
    FlowOperation,
    InvalidSpec,
    InvalidTarget,
    InvertedTimes,
    LumpedOperation,
    MetricsReport,
    NonCausalFlow,
    NonPositiveValue,
    NoValueAdded,
    OneSidedFlow,
    OperationError,
    UnknownTable,
    ZeroDuration,
    make_flow,
    make_lumped,
)
from .flow_metrics import (
    FlowTotals,
    cumulative_net,
    effect_accumulator,
    effect_primitive,
    efficiency_flow,
    evaluate_flow,
    flow_totals,
    potential_effect_flow,
    resource_intensity_flow,
    taco_flow,
)
from .lumped_metrics import (
    DaughterSpec,
    daughter_resource_intensity,
    efficiency_pair,
    efficiency_potential,
    evaluate_lumped,
    potential_effect_lumped,
    profitability,
    resource_intensity_lumped,
    rvic,
    taco_lumped,
)
from .piecewise import PiecewisePolynomial
from .reference_sets import (
    ReferenceSet,
    ReferenceSetSpec,
    calibrate_output_value,
    calibrate_reference_set,
    extend_chain,
    generate_reference_set,
    group_efficiencies,
    verify_reference_set,
)
from .studies import RankedCatalog, SweepSpec, rank_operations, run_sweep, run_table_study

__version__ = "0.1.0"
