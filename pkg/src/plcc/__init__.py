"""List colouring and partial list colouring of small graphs."""

from .algorithms import (
    PartialColoring,
    PlccReport,
    bounds_report,
    find_deficiency_set,
    hall_violator,
    independent_set_third,
    lambda_t_exact,
    max_two_choosable_induced,
    partial_color_chordal,
    partial_color_chordless,
    partial_color_clawfree,
    partial_color_h_family,
    partial_color_tw2,
    shrink_large_chi,
)
from .graph import Graph, format_graph, parse_graph, read_graph, write_graph
from .listcolor import (
    CHOOSABLE,
    INCONCLUSIVE,
    NOT_CHOOSABLE,
    canonical_assignments,
    format_assignment,
    is_choosable,
    is_list_colorable,
    list_chromatic_number,
    max_colorable_subgraph,
    parse_assignment,
    sample_choosability,
    validate_coloring,
)
from .structure import (
    block_decomposition,
    chromatic_number,
    classify_two_choosable_core,
    core_reduce,
    degeneracy_order,
    find_uvw_min2connected,
    is_chordal,
    is_chordless,
    is_claw_free,
    is_treewidth_at_most_2,
    is_two_choosable,
)

__version__ = "0.1.0"
