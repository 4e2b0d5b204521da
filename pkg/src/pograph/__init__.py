"""Pseudo-outerplanar graphs: diagrams, decompositions, and optimal colorings.

A graph is pseudo-outerplanar when every block can be drawn with its
vertices on a circle, edges inside the disk, and each edge crossed at most
once.  This package models those drawings, recognizes them exactly at desk
scale, constructs the forest decompositions and optimal edge colorings the
class admits, and cross-checks everything against brute-force oracles.
"""

from .diagram import (
    Diagram,
    DiagramBlock,
    make_diagram,
    maximal_completion,
    quasi_hamiltonize,
    recognize,
    surgery,
    to_hamiltonian_diagram,
    validate,
)
from .graph import (
    ClassFlags,
    Decomposition,
    Edge,
    EdgeColoring,
    Graph,
    blocks,
    class_membership,
    classify_subgraph,
    has_minor,
    is_outerplanar,
    vertex_connectivity,
    verify_decomposition,
    verify_edge_coloring,
)
from .colorings import ColorTrace, chromatic_index, po_edge_color, po_linear_arboricity, vizing_color
from .configurations import ConfigurationMatch, ConfigurationPattern, catalog, find_configuration
from .decompose import (
    ExtractionResult,
    PeelStep,
    cover_outerplanar_plus,
    extract_linear_forest,
    extract_star_forest,
    peel_maximal,
    two_forests_plus_matching,
)
from .errors import (
    BudgetExceededError,
    DiagnosticError,
    DisconnectedError,
    GuardExceededError,
    NotPseudoOuterplanarError,
    PographError,
)
from .generators import gen_fig1, gen_gn, gen_mat12, gen_pn, gen_qn, gen_random_po
from .oracles import (
    SearchBudget,
    brute_chromatic_index,
    brute_linear_arboricity,
    enumerate_po,
    exists_k_forest_partition,
    exists_removal_decomposition,
    outerplanar_by_planarity,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
