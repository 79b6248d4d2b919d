"""Top-level package exports"""

from .config_schema import (
    ReportFormat,
    SearchConfig,
    SymmetryConfig,
    TableConfig,
    ToolkitConfig,
    VerificationConfig,
    VerifyMode,
)
from .gf2core import BitMatrix, BitVector, kernel_basis, rank, solve
from .codes import (
    Coset,
    LinearCode,
    coset_leader,
    distinct_hamming_codes,
    extend,
    hamming_code,
    intersection_dim,
    puncture,
)
from .partitions import (
    CodePartition,
    ExtendedPartition,
    PartitionCertificate,
    UniformityReport,
    VerificationError,
    extend_partition,
    invariant_signature,
    SearchResult,
    candidate_hamming_codes,
    phelps_search,
    puncture_partition,
    trivial_partition,
    uniform_search,
    uniformity,
    verify_partition,
)
from .mollard import MollardFrame, construction_b, mollard_code, p_vectors
from .symmetry import (
    IndexPermutation,
    Isometry,
    apply,
    exhaustive_automorphisms,
    lift_isometry,
    partition_action,
    two_transitive,
)
from .recipes import BuildContext, ImportedPartition, RecipeMismatchError, parse_recipe, predicted_uniformity
from .partition_file import PartitionFileError, import_verified, parse, read_partition, serialize, write_partition
from .drivers import corollary_counts, lemma3_chains, register_generator, theorem_table
from .utils import load_toolkit_config

__all__ = [
    "ReportFormat",
    "SearchConfig",
    "SymmetryConfig",
    "TableConfig",
    "ToolkitConfig",
    "VerificationConfig",
    "VerifyMode",
    "BitMatrix",
    "BitVector",
    "kernel_basis",
    "rank",
    "solve",
    "Coset",
    "LinearCode",
    "coset_leader",
    "distinct_hamming_codes",
    "extend",
    "hamming_code",
    "intersection_dim",
    "puncture",
    "CodePartition",
    "ExtendedPartition",
    "PartitionCertificate",
    "UniformityReport",
    "VerificationError",
    "extend_partition",
    "invariant_signature",
    "SearchResult",
    "candidate_hamming_codes",
    "phelps_search",
    "puncture_partition",
    "trivial_partition",
    "uniform_search",
    "uniformity",
    "verify_partition",
    "MollardFrame",
    "construction_b",
    "mollard_code",
    "p_vectors",
    "IndexPermutation",
    "Isometry",
    "apply",
    "exhaustive_automorphisms",
    "lift_isometry",
    "partition_action",
    "two_transitive",
    "BuildContext",
    "ImportedPartition",
    "RecipeMismatchError",
    "parse_recipe",
    "predicted_uniformity",
    "PartitionFileError",
    "import_verified",
    "parse",
    "read_partition",
    "serialize",
    "write_partition",
    "corollary_counts",
    "lemma3_chains",
    "register_generator",
    "theorem_table",
    "load_toolkit_config",
]
