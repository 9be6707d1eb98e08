"""qfold: exact quantum cluster calculus on quantum unipotent rings.

Two layers check each other everywhere: the cluster combinatorics
(staircase quivers, compatible pairs, quantum tori, mutation) and a
quantum-group oracle (Shapovalov pairing, generalized minors realized in
the quantum shuffle algebra).  Symmetrizable types are reached by folding
quivers with diagram automorphism.  All arithmetic is exact.
"""

from .folding import QuiverWithAut, fold, unfold_word
from .laurent import LaurentScalar, bar, q_binomial, q_factorial, q_int
from .qcluster import (
    CompatiblePair,
    QuantumSeed,
    check_compatible,
    enumerate_exchange_graph,
    mutate_pair,
    mutate_seed,
    normalized_monomial,
    specialize_classical,
)
from .rootdata import CartanDatum, Root, Weight, cartan_datum
from .uqn import (
    FWord,
    MinorSpec,
    OracleContext,
    ShuffleElement,
    minor_to_shuffle,
    shapovalov,
    shuffle_product,
)

__version__ = "0.1.0"

__all__ = [
    "CartanDatum", "CompatiblePair", "FWord", "LaurentScalar", "MinorSpec",
    "OracleContext", "QuantumSeed", "QuiverWithAut", "Root", "ShuffleElement",
    "Weight", "bar", "cartan_datum", "check_compatible",
    "enumerate_exchange_graph", "fold", "minor_to_shuffle", "mutate_pair",
    "mutate_seed", "normalized_monomial", "q_binomial", "q_factorial",
    "q_int", "shapovalov", "shuffle_product", "specialize_classical",
    "unfold_word",
]
