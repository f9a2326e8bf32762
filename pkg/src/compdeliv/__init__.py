"""Universal lossless codes for the two-terminal complementary delivery system."""

from .types_core import (
    Alphabet,
    BINARY,
    JointType,
    Sequence,
    TypeVector,
    enumerate_joint_types,
    joint_type_of,
    rank_in_type_class,
    rank_in_v_shell,
    seq,
    type_class_size,
    type_of,
    unrank_in_type_class,
    unrank_in_v_shell,
    v_shell_size,
    w_shell_size,
)
from .info_measures import (
    ExponentReport,
    SourceSpec,
    achievable_rate,
    conditional_entropy,
    converse_correct_exponent,
    correct_exponent_inside,
    dsbs,
    entropy,
    epsilon_n,
    error_exponent_outside,
    in_decodable_region,
    kl_divergence,
    prob_of_type_class,
    uniform_independent,
)
from .coding_table import (
    BipartiteTypeGraph,
    CodingTable,
    build_graph,
    edge_color,
    get_coding_table,
    lookup_col,
    lookup_row,
    lookup_symbol,
)
from .ff_codec import (
    FFCodeConfig,
    FFCodeword,
    codebook_size,
    exact_error_probability,
    ff_decode_x,
    ff_decode_y,
    ff_encode,
    rate_bound_check,
)
from .fv_codec import (
    FVCodeword,
    expected_length,
    fv_decode_x,
    fv_decode_y,
    fv_encode,
    overflow_probability,
    underflow_probability,
    wrap_ff_as_fv,
)
from .simulator import ExperimentReport, TrialPlan, run_plan, sample_pair

__version__ = "0.1.0"
