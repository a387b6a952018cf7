"""Exact inversion and determinants of distance matrices of strongly
connected weighted digraphs, via block decomposition and composable inverse
certificates.  All arithmetic is over arbitrary-precision rationals."""

from .linalg import (
    RMatrix,
    Rational,
    DimensionMismatchError,
    SingularMatrixError,
    as_rational,
    parse_rational_literal,
    identity,
    zeros,
    ones_column,
    ones_matrix,
    matmul,
    matvec,
    vecmat,
    dot,
    outer_product,
    det_bareiss,
    inverse_exact,
    adjugate,
    cofactor_sum,
    matrix_to_csv,
    matrix_from_csv,
)
from .graphs import (
    Graph,
    GraphFormatError,
    NotStronglyConnectedError,
    LabelMismatchError,
    parse_edge_list,
    format_edge_list,
    graph_to_json,
    graph_from_json,
    is_distance_well_defined,
    distance_matrix,
    weak_components,
    ValidationReport,
    validate_generalized_distance_matrix,
)
from .blocks import (
    BlockDecomposition,
    IndexOutOfRangeError,
    cut_vertices,
    block_decompose,
    submatrix_for_block,
    decomposition_to_json,
)
from .bags import (
    Bag,
    BagVerdict,
    LambdaZeroError,
    NotExpressibleError,
    FirstWeightZeroError,
    ZeroRowSumInverseError,
    verify_bag,
    verify_left,
    verify_right,
    bag_inverse,
    is_laplacian_like,
    first_weight,
    second_weight,
    cycle_distance_matrix,
    cycle_shift_matrix,
    cycle_bag,
    cycle_det,
    cycle_cof,
    generic_bag,
    MatrixClassification,
    classify,
    bag_to_json,
    bag_from_json,
)
from .compose import (
    ArityMismatchError,
    NotCactoidError,
    BlockNotExpressibleError,
    BlockReport,
    CompositionResult,
    assemble_distance_matrix,
    compose_bags,
    ghh_det_cof,
    cactoid_det,
    graham_pollak_det,
    cycle_blocks_of,
    effective_distance_matrix,
    invert_distance_matrix,
    composition_to_json,
)
from .generators import GenSpec, gen_cactoid, gen_tree

__version__ = "0.1.0"
