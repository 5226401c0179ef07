"""Finite kei (involutive quandles), their edge-coloured graphs, and
exhaustive checks of the diameter bound on graph components."""

from .algebra import (
    InvolutionFamily,
    KeiTable,
    SubkeiSet,
    ValidationReport,
    are_isomorphic,
    conjugation_kei_sym,
    cube_kei,
    dihedral_kei,
    is_subkei,
    maps_to_table,
    subkei_closure,
    table_to_maps,
    trivial_kei,
    validate_table,
)
from .graph import (
    ColouredMultigraph,
    SimpleGraph,
    analyze,
    build_graph,
    colour_edge_counts,
    component_diameter,
    components,
    distance,
    export_dot,
    reduced_graph,
)
from .paths import (
    ColouredPath,
    LevelSets,
    assert_distinct_colours,
    canonicalize,
    hang_rewrite,
    level_sets,
    sequence_path,
    sequence_vertex,
    shortest_path,
)
from .verify import (
    BoundReport,
    catalog_read,
    catalog_write,
    check_component_bounds,
    enumerate_kei,
    enumerate_subkei,
    tightness_report,
    verify_theorem_over_all,
)

__version__ = "0.1.0"
