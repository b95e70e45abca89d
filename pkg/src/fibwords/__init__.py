"""Fibonacci commutator words in F_2: construction, depth, girth, laws,
and almost laws on SU(k)."""

from .words import (
    Word,
    WordParseError,
    parse,
    commutator,
    conjugate,
    apply_endomorphism,
    cyclic_reduce,
    letter_map_tables,
    IDENTITY,
)
from .magnus import (
    TruncatedSeries,
    DepthResult,
    generator_series,
    mul,
    magnus_expand,
    lcs_depth,
    lcs_member,
    DEFAULT_CAP,
)
from .construction import (
    ConstructionPair,
    ExponentRow,
    STANDARD,
    PRIMED,
    build_pair,
    predicted_length,
    fibonacci,
    depth_lower_bound,
    verify_level,
    exponent_table,
)
from .girth import (
    GirthRecord,
    RemarkReport,
    SymmetryFlags,
    ALL_SYMMETRIES,
    enumerate_canonical,
    girth_of,
    alpha,
    w28,
    verify_remarks,
)
from .finite import (
    FiniteGroup,
    GroupTableError,
    LawCertificate,
    evaluate_word,
    is_law,
    nilpotency_class,
    nilpotent_law_word,
    law_length_constant,
    load_group,
)
from .catalog import (
    NILPOTENT_NAMES,
    ALL_NAMES,
    catalog_names,
    build_group,
    write_catalog,
    load_catalog_group,
)
from .unitary import (
    DEFAULT_LENGTH_CAP,
    SEED_DEFECT_BOUND,
    SeedPair,
    SeedSearchError,
    DecayRow,
    random_su,
    word_map,
    dist_identity,
    estimate_L,
    find_seed_pair,
    sampled_defect,
    decay_report,
    decay_constants,
    commutator_contraction_check,
)

__version__ = "0.1.0"

__all__ = [
    "Word",
    "WordParseError",
    "parse",
    "commutator",
    "conjugate",
    "apply_endomorphism",
    "cyclic_reduce",
    "letter_map_tables",
    "IDENTITY",
    "TruncatedSeries",
    "DepthResult",
    "generator_series",
    "mul",
    "magnus_expand",
    "lcs_depth",
    "lcs_member",
    "DEFAULT_CAP",
    "ConstructionPair",
    "ExponentRow",
    "STANDARD",
    "PRIMED",
    "build_pair",
    "predicted_length",
    "fibonacci",
    "depth_lower_bound",
    "verify_level",
    "exponent_table",
    "GirthRecord",
    "RemarkReport",
    "SymmetryFlags",
    "ALL_SYMMETRIES",
    "enumerate_canonical",
    "girth_of",
    "alpha",
    "w28",
    "verify_remarks",
    "FiniteGroup",
    "GroupTableError",
    "LawCertificate",
    "evaluate_word",
    "is_law",
    "nilpotency_class",
    "nilpotent_law_word",
    "law_length_constant",
    "load_group",
    "NILPOTENT_NAMES",
    "ALL_NAMES",
    "catalog_names",
    "build_group",
    "write_catalog",
    "load_catalog_group",
    "DEFAULT_LENGTH_CAP",
    "SEED_DEFECT_BOUND",
    "SeedPair",
    "SeedSearchError",
    "DecayRow",
    "random_su",
    "word_map",
    "dist_identity",
    "estimate_L",
    "find_seed_pair",
    "sampled_defect",
    "decay_report",
    "decay_constants",
    "commutator_contraction_check",
    "__version__",
]
