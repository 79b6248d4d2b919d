# hamming_partitions/config_schema.py
from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class VerifyMode(str, Enum):
    ALGEBRAIC = "algebraic"
    EXHAUSTIVE = "exhaustive"
    BOTH = "both"


class ReportFormat(str, Enum):
    TABLE = "table"
    RECORDS = "records"


@dataclass
class VerificationConfig:
    """How partitions are certified."""
    mode: VerifyMode = VerifyMode.ALGEBRAIC
    exhaustive_max_length: int = 15            # 2^n membership scan is refused above this
    parallel_workers: int = 1                  # HPART_WORKERS overrides
    pair_chunk_size: int = 64                  # component rows per worker task


@dataclass
class SearchConfig:
    phelps_limit: int = 32                     # stop after this many partitions
    node_budget: int = 200_000                 # placements tried before a search gives up
    sample_codes: int = 64                     # candidate codes beyond length 7
    seed: int = 0


@dataclass
class SymmetryConfig:
    exhaustive_max_length: int = 7             # |Sym(7)| * 2^7 = 645,120 candidates
    lift_confirm: bool = True                  # re-check every lifted candidate


@dataclass
class TableConfig:
    general_splits: bool = True                # also try l = 2^a-1 beyond 3 and 7
    attempt_unguarded: bool = True             # certify compositions of two non-trivial inputs


@dataclass
class ToolkitConfig:
    verification: VerificationConfig = field(default_factory=VerificationConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    symmetry: SymmetryConfig = field(default_factory=SymmetryConfig)
    tables: TableConfig = field(default_factory=TableConfig)
    profile: Optional[str] = None
