"""Exact computations with finite-dimensional quiver algebras.

Presentations by quivers and relations, graded bases by normal forms,
finite Galois coverings and smash products, quadratic duals, and minimal
graded projective resolutions with Koszulity verdicts, all over the
rationals.
"""

from .algebra import (
    AlgebraModel,
    DegreeOverflowError,
    Presentation,
    hilbert_matrix,
)
from .corpus import (
    CORPUS,
    CorpusError,
    build_corpus,
    corpus_instances,
    exterior,
    loop_cubed,
    parse_quiver_spec,
    preprojective,
    trivial_extension_dual,
)
from .covering import (
    InhomogeneousGradingError,
    WeightError,
    build_covering,
    cyclic_covering,
    deck_action,
    is_homogeneous_grading,
    lift_path,
)
from .duality import (
    NotQuadraticError,
    double_dual_check,
    dual_presentation,
    quadratic_check,
)
from .groups import (
    FiniteGroup,
    GroupAction,
    GroupError,
    cyclic_group,
    dihedral_group,
    direct_product,
    trivial_action,
)
from .quiver import (
    Path,
    PathCombination,
    Quiver,
    QuiverError,
    RelationError,
    compose,
    double_quiver,
    enumerate_paths,
    make_quiver,
    opposite_quiver,
    trivial_path,
)
from .resolution import (
    ExtAlgebra,
    ExtElement,
    GenerationReport,
    KoszulVerdict,
    ResolutionReport,
    generation_check,
    hilbert_euler_check,
    is_koszul_to,
    koszul_duality_dim_check,
    resolve,
    theorem_covering_check,
)
from .serialization import (
    DocumentError,
    GroupSpecError,
    build_group,
    canonical_json,
    parse_document,
    parse_group_spec,
    parse_presentation,
    serialize_presentation,
)
from .structure import (
    StructureConstantAlgebra,
    algebra_to_structure_constants,
    radical,
    skew_group_algebra,
    smash_product,
    verify_smash_covering_iso,
)

__all__ = [
    "AlgebraModel",
    "CORPUS",
    "CorpusError",
    "DegreeOverflowError",
    "DocumentError",
    "ExtAlgebra",
    "ExtElement",
    "FiniteGroup",
    "GenerationReport",
    "GroupAction",
    "GroupError",
    "GroupSpecError",
    "InhomogeneousGradingError",
    "KoszulVerdict",
    "NotQuadraticError",
    "Path",
    "PathCombination",
    "Presentation",
    "Quiver",
    "QuiverError",
    "RelationError",
    "ResolutionReport",
    "StructureConstantAlgebra",
    "WeightError",
    "algebra_to_structure_constants",
    "build_corpus",
    "build_covering",
    "build_group",
    "canonical_json",
    "compose",
    "corpus_instances",
    "cyclic_covering",
    "cyclic_group",
    "deck_action",
    "dihedral_group",
    "direct_product",
    "double_dual_check",
    "double_quiver",
    "dual_presentation",
    "enumerate_paths",
    "exterior",
    "generation_check",
    "hilbert_euler_check",
    "hilbert_matrix",
    "is_homogeneous_grading",
    "is_koszul_to",
    "koszul_duality_dim_check",
    "lift_path",
    "loop_cubed",
    "make_quiver",
    "opposite_quiver",
    "parse_document",
    "parse_group_spec",
    "parse_presentation",
    "parse_quiver_spec",
    "preprojective",
    "quadratic_check",
    "radical",
    "resolve",
    "serialize_presentation",
    "skew_group_algebra",
    "smash_product",
    "theorem_covering_check",
    "trivial_action",
    "trivial_extension_dual",
    "trivial_path",
    "verify_smash_covering_iso",
]
