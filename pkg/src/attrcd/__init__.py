"""Community detection in attribute networks.

The discrete partitioning problem is recast over continuous genotypes through
an edge-wise sigmoid/softmax/argmax encoding and solved as a two-objective
minimisation of (-modularity, attribute-similarity) with an NSGA-II/DE
evolutionary engine. Companion modules provide evaluation metrics, a fitness
landscape analysis suite, a planted-partition generator, and a CLI harness.
"""

from .graph import (
    AttributeNetwork,
    EdgeSelection,
    NetworkConsistencyError,
    NetworkFormatError,
    Partition,
    PartitionStats,
    build_network,
    decode,
    load_network,
    load_truth,
    partition_stats,
)
from .encoding import encode, gnn_decode, locus_neighbors, sigmoid, softmax
from .objectives import (
    KindMismatchError,
    ObjectiveVector,
    attr_similarity_multi,
    attr_similarity_single,
    evaluate,
    modularity,
)
from .engine import (
    EngineConfig,
    EngineResult,
    Individual,
    binary_tournament,
    crowding_distance,
    de_variation,
    fast_nondominated_sort,
    run,
    select_report_solution,
)
from .metrics import confusion_matrix, density, entropy, nmi
from .landscape import (
    LandscapeConfig,
    LandscapeReport,
    calibrate_epsilon,
    discrete_distance,
    er,
    fdc,
    ils,
    lod,
)
from .planted import gen_planted, write_planted

__version__ = "0.1.0"
