"""treecut: sample connected graph partitions by deleting edges of a random
spanning tree, and compute each partition's exact probability in closed form.

Library layers:

* :mod:`treecut.graphs` - graph, multigraph and partition types, text formats
* :mod:`treecut.treecount` - exact spanning-tree counts (Laplacian minors)
* :mod:`treecut.sampling` - Wilson / random-MST tree samplers, tree deletion
* :mod:`treecut.probability` - closed-form partition probabilities
* :mod:`treecut.exhaustive` - brute-force enumeration oracles
* :mod:`treecut.montecarlo` - sampled-frequency verification harness
* :mod:`treecut.service` - FastAPI service wrapping the above
* :mod:`treecut.cli` - command-line client of the service
"""

from .errors import (
    BudgetExceededError,
    GraphParseError,
    PreconditionError,
    TreecutError,
)
from .exhaustive import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    brute_force_distribution,
    brute_force_probability,
    brute_force_tallies,
    enumerate_connected_partitions,
    enumerate_labeled_spanning_trees,
    enumerate_spanning_trees,
    exact_partition_distribution,
    exact_randmst_partition_distribution,
    exact_randmst_tree_distribution,
    stirling2,
)
from .graphs import (
    GRAPH_FORMATS,
    Graph,
    Multigraph,
    Partition,
    boundary_edges,
    contract,
    induced_subgraph,
    is_connected,
    laplacian,
    load_graph,
    parse_adjacency_matrix,
    parse_edge_list,
    parse_partition,
    serialize_edge_list,
    serialize_partition,
)
from .montecarlo import TrialReport, compare, merge_tallies, run_trials
from .probability import (
    block_tree_counts,
    compatible_tree_count,
    partition_probability,
    render_decimal,
    render_rational,
    two_block_probability,
    validate_partition,
)
from .sampling import (
    SAMPLER_MODES,
    RngState,
    SpanningTree,
    components_after_deletion,
    make_rng,
    sample_connected_partition,
    sample_edge_subset,
    sample_spanning_tree_randmst,
    sample_spanning_tree_uniform,
)
from .treecount import bareiss_determinant, count_spanning_trees, minor_determinant

__version__ = "0.1.0"
