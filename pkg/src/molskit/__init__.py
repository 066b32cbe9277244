"""molskit: constructions and certification for mutually orthogonal Latin
squares and partial Latin square embeddings."""

from .completion import (
    BipartiteGraph,
    bipartite_edge_coloring,
    bipartite_max_matching,
    evans_complete,
    idempotent_complete,
)
from .constructions import (
    PairEmbedInputs,
    PairEmbedResult,
    SquareEmbedResult,
    amplify,
    build_576,
    embed_pls_with_mates,
    fallback_mols24,
    host_order_for,
    make_idempotent,
    pair_embed,
    square_embed,
)
from .core import (
    EMPTY,
    CertificationError,
    CompositeIndex,
    EmbeddingWitness,
    GridFormatError,
    InvariantViolation,
    LatinReport,
    LatinSquare,
    MolsReport,
    MolsSet,
    MolskitError,
    NotLatinError,
    OrthReport,
    PartialLatinSquare,
    SearchCapExceeded,
    Transversal,
    UncertifiedInputError,
    WitnessMismatchError,
    are_orthogonal,
    check_embedding,
    direct_product,
    find_transversal_decomposition,
    is_idempotent,
    is_latin,
    is_transversal,
    permute_rows,
    rename_symbols,
    verify_mols,
)
from .fields import (
    FiniteField,
    MODULUS_TABLE,
    gen_mols_prime_power,
    macneish_product,
    prime_power_decompose,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BipartiteGraph",
    "CertificationError",
    "CompositeIndex",
    "EMPTY",
    "EmbeddingWitness",
    "FiniteField",
    "GridFormatError",
    "InvariantViolation",
    "LatinReport",
    "LatinSquare",
    "MODULUS_TABLE",
    "MolsReport",
    "MolsSet",
    "MolskitError",
    "NotLatinError",
    "OrthReport",
    "PairEmbedInputs",
    "PairEmbedResult",
    "PartialLatinSquare",
    "SearchCapExceeded",
    "SquareEmbedResult",
    "Transversal",
    "UncertifiedInputError",
    "WitnessMismatchError",
    "amplify",
    "are_orthogonal",
    "build_576",
    "check_embedding",
    "direct_product",
    "embed_pls_with_mates",
    "evans_complete",
    "fallback_mols24",
    "find_transversal_decomposition",
    "gen_mols_prime_power",
    "host_order_for",
    "idempotent_complete",
    "is_idempotent",
    "is_latin",
    "is_transversal",
    "macneish_product",
    "make_idempotent",
    "pair_embed",
    "permute_rows",
    "prime_power_decompose",
    "rename_symbols",
    "square_embed",
    "verify_mols",
    "bipartite_edge_coloring",
    "bipartite_max_matching",
]
