"""
py_bwcodes - bounded-weight binary codes through maximum clique search.

Usage:
    from py_bwcodes import CodeParams, build_graph, max_clique_exact

    graph = build_graph(CodeParams(n=6, d=4, w=3))
    result = max_clique_exact(graph)
    print(result.size, result.proven_optimal)
"""

__version__ = "0.2.0"

from .bounds import (
    ConstantWeightResolver,
    PatchedBound,
    ReferenceTable,
    augment_with_zero,
    load_reference_table,
    load_shipped_table,
    patch_codes,
    patch_lower_bound,
)
from .corpus import (
    Code,
    Provenance,
    VerificationReport,
    load_appendix,
    parse_code_file,
    serialize_code,
    verify_code,
)
from .exact import ExactResult, SearchBudget, max_clique_exact
from .exceptions import BWCodesError, CapacityError, ParseError, UsageError, ValidationError
from .graph import AdjacencyGraph, CompatibilityGraph, build_graph, export_dimacs, read_dimacs
from .greedy import GreedyConfig, GreedyResult, greedy_restarts
from .logger import get_logger
from .words import CodeParams, WeightMode, Word, enumerate_words, hamming_distance, weight

logger = get_logger()

__all__ = [
    "logger",
    "get_logger",
    "__version__",
    "Word",
    "WeightMode",
    "CodeParams",
    "hamming_distance",
    "weight",
    "enumerate_words",
    "AdjacencyGraph",
    "CompatibilityGraph",
    "build_graph",
    "export_dimacs",
    "read_dimacs",
    "SearchBudget",
    "ExactResult",
    "max_clique_exact",
    "GreedyConfig",
    "GreedyResult",
    "greedy_restarts",
    "Code",
    "Provenance",
    "VerificationReport",
    "verify_code",
    "parse_code_file",
    "serialize_code",
    "load_appendix",
    "ReferenceTable",
    "ConstantWeightResolver",
    "PatchedBound",
    "load_reference_table",
    "load_shipped_table",
    "patch_lower_bound",
    "augment_with_zero",
    "patch_codes",
    "BWCodesError",
    "UsageError",
    "CapacityError",
    "ParseError",
    "ValidationError",
]
