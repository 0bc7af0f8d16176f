"""girthforge: regular bipartite graph families with large girth, exact
LP bounds for graph secret sharing, machine-checked bound certificates,
and exhaustive scheme verification."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .bounds import (
    entropy_bound,
    entropy_set_bound,
    multipartite_cover_bound,
    star_cover_bound,
    stinson_upper,
    verify_cover,
)
from .certificate import (
    Certificate,
    TermBound,
    audit_certificate,
    audit_explain,
    certificate_from_json,
    certificate_to_json,
    certify_sum_bound,
    check_decomposition_identity,
    verify_term,
)
from .errors import BudgetError, CheckFailure, GirthforgeError, InputError
from .family import (
    GUARANTEED,
    PRACTICAL,
    GdGraph,
    PiGraph,
    build_cycle,
    build_h,
    build_large_girth,
    build_member,
    build_pi_graph,
    canonical_relabel,
    extend_family,
    far_matching,
    guaranteed_n,
    guaranteed_sizes,
    make_pi_graph,
    verify_member,
)
from .graphs import (
    INFINITE,
    Graph,
    OneFactor,
    check_homomorphism,
    check_regular_bipartite,
    find_one_factor,
    format_edge_list,
    girth,
    is_independent,
    is_qualified,
    parse_edge_list,
    verify_one_factor,
)
from .rational import R, RATIONAL_BACKEND, ratio_str
from .scheme import (
    DecompositionScheme,
    JointDistribution,
    make_star_decomposition,
    measured_ratio,
    realize_scheme,
    structural_ratio,
    verify_perfect,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "Certificate",
    "CheckFailure",
    "DecompositionScheme",
    "GUARANTEED",
    "GdGraph",
    "GirthforgeError",
    "Graph",
    "INFINITE",
    "InputError",
    "JointDistribution",
    "KERNEL_BACKEND",
    "OneFactor",
    "PRACTICAL",
    "PiGraph",
    "R",
    "RATIONAL_BACKEND",
    "TermBound",
    "audit_certificate",
    "audit_explain",
    "build_cycle",
    "build_h",
    "build_large_girth",
    "build_member",
    "build_pi_graph",
    "canonical_relabel",
    "certificate_from_json",
    "certificate_to_json",
    "certify_sum_bound",
    "check_decomposition_identity",
    "check_homomorphism",
    "check_regular_bipartite",
    "entropy_bound",
    "entropy_set_bound",
    "extend_family",
    "far_matching",
    "find_one_factor",
    "format_edge_list",
    "girth",
    "guaranteed_n",
    "guaranteed_sizes",
    "is_independent",
    "is_qualified",
    "make_pi_graph",
    "make_star_decomposition",
    "measured_ratio",
    "multipartite_cover_bound",
    "parse_edge_list",
    "ratio_str",
    "realize_scheme",
    "star_cover_bound",
    "stinson_upper",
    "structural_ratio",
    "verify_cover",
    "verify_member",
    "verify_one_factor",
    "verify_perfect",
    "__version__",
]
