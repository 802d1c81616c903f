"""Knowledge sharing in opportunistic contact networks, measured in bits.

The package estimates a joint PMF of user activity from traces, computes each
user's knowledge-gain limit (the entropy everyone jointly holds beyond the
user's own), and simulates how close two sharing policies get to that limit
over single-hop and fixed multi-hop topologies.
"""

from . import errors
from .engine import (
    KnowledgeState,
    MetricsRecord,
    Policy,
    apply_encounter,
    encounter_overhead,
    focal_schedule,
    init_state,
    read_metrics_csv,
    round_robin_schedule,
    run,
    steps_to_limit,
    write_metrics_csv,
)
from .measures import JointDistribution, nonnegative_bits
from .reference import (
    DenseDistribution,
    brute_mutual_information,
    brute_subset_entropy,
    densify,
)
from .topology import (
    Graph,
    from_edge_list,
    full_mesh,
    random_geometric,
    read_edge_list,
    write_edge_list,
)
from .traces import (
    SampleTable,
    SynthConfig,
    inject_unique_tips,
    parse_activity_csv,
    profile_vector,
    read_sample_table,
    synthesize_traces,
    write_sample_table,
)

__version__ = "0.1.0"

__all__ = [
    "DenseDistribution",
    "Graph",
    "JointDistribution",
    "KnowledgeState",
    "MetricsRecord",
    "Policy",
    "SampleTable",
    "SynthConfig",
    "apply_encounter",
    "brute_mutual_information",
    "brute_subset_entropy",
    "densify",
    "encounter_overhead",
    "errors",
    "focal_schedule",
    "from_edge_list",
    "full_mesh",
    "init_state",
    "inject_unique_tips",
    "nonnegative_bits",
    "parse_activity_csv",
    "profile_vector",
    "random_geometric",
    "read_edge_list",
    "read_metrics_csv",
    "read_sample_table",
    "round_robin_schedule",
    "run",
    "steps_to_limit",
    "synthesize_traces",
    "write_edge_list",
    "write_metrics_csv",
    "write_sample_table",
]
