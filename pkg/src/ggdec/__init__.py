"""Decision procedures for membership problems in graph groups whose
independence alphabet is a transitive forest, together with the semilinear,
automaton, grammar, and trace machinery they are built from."""

from .automata import (
    Nfa,
    build_block_nfa,
    concat,
    empty_language,
    from_word,
    nfa_parikh,
    prepend_word,
    restrict_alphabet,
    sl_realize,
    star,
    trim,
    union,
)
from .engine import (
    DEFAULT_LIMITS,
    Limits,
    SliQuery,
    decide_rational,
    decide_subgroup,
    decide_submonoid,
    trivial_word_image,
)
from .errors import (
    InputError,
    NotTransitiveForestError,
    ResourceLimitError,
    SpaceMismatchError,
)
from .grammar import BinCfg, ExtendedCfg, cfg_enumerate, cfg_normalize, cfg_parikh
from .letters import Marker, PairLetter, SignedGen, signed_alphabet, sort_letters
from .oracles import OracleVerdict, benois_member, bfs_member, exponent_sum, free_reduce
from .semilinear import (
    CoordSpace,
    LinearSet,
    SemilinearSet,
    Vector,
    hilbert_basis,
    render_semilinear,
    sl_empty,
    sl_intersect,
    sl_member,
    sl_project,
    sl_singleton,
    sl_union,
    sl_unit,
    zero_vector,
)
from .traces import (
    DecompositionTree,
    DirectZ,
    FreeProduct,
    IndependenceAlphabet,
    Trivial,
    ia_decompose,
    ia_is_transitive_forest,
    invert_word,
    parse_word,
    render_word,
    trace_nf,
    word_letters,
    wp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
