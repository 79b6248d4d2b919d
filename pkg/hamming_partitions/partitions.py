# hamming_partitions/partitions.py
"""
Partitions of F^n into cosets of Hamming codes: the CodePartition type,
partition and uniformity certificates, invariant signatures, parity
extension, and the budgeted backtracking search for non-trivial uniform
partitions (exhaustive at length 7, sampled beyond).
"""
from __future__ import annotations

import logging
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .codes import (
    Coset,
    LinearCode,
    coset_intersection_size_log,
    distinct_hamming_codes,
    extend_coset,
    hamming_code,
    hamming_leader,
    intersection_dim,
    puncture_coset,
)
from .config_schema import VerificationConfig, VerifyMode
from .gf2core import BitVector, reduce_against

logger = logging.getLogger(__name__)

Signature = Tuple[Tuple[int, int], ...]


class VerificationError(ValueError):
    """A partition certificate failed."""


def _log2_exact(value: int) -> int:
    if value < 1 or value & (value - 1):
        raise ValueError(f"{value} is not a power of two")
    return value.bit_length() - 1


@dataclass(frozen=True, eq=False)
class CodePartition:
    """
    Components H_0, H_1+e_1, ..., H_n+e_n of F^n. Component k is the coset
    whose weight <= 1 leader is e_k (e_0 = 0^n).
    """
    length: int
    components: Tuple[Coset, ...]
    _memo: Dict[str, object] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = self.length
        object.__setattr__(self, "components", tuple(self.components))
        m = _log2_exact(n + 1)
        if m < 2:
            raise ValueError(f"length {n} is not 2^m-1 with m >= 2")
        if len(self.components) != n + 1:
            raise ValueError(f"expected {n + 1} components, got {len(self.components)}")
        for k, comp in enumerate(self.components):
            if comp.length != n:
                raise ValueError(f"component {k} has length {comp.length}, expected {n}")
            if not comp.code.is_hamming_shaped:
                raise ValueError(f"component {k} is not a coset of a Hamming code")
            if comp.leader != BitVector.unit(n, k):
                raise ValueError(f"component {k} has leader {comp.leader}, expected e_{k}")

    @classmethod
    def from_cosets(cls, length: int, cosets: Sequence[Coset]) -> CodePartition:
        """Re-index cosets of Hamming codes by their weight <= 1 leaders."""
        slots: List[Optional[Coset]] = [None] * (length + 1)
        for c in cosets:
            leader = hamming_leader(c.code, c.representative)
            k = leader.support()[0] if leader.bits else 0
            if slots[k] is not None:
                raise ValueError(f"two components share the leader e_{k}")
            slots[k] = Coset(c.code, c.representative, leader)
        missing = [k for k, c in enumerate(slots) if c is None]
        if missing:
            raise ValueError(f"no component with leader e_{missing[0]}")
        return cls(length, tuple(slots))

    @property
    def m(self) -> int:
        return _log2_exact(self.length + 1)

    @property
    def codes(self) -> List[LinearCode]:
        return [c.code for c in self.components]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CodePartition):
            return NotImplemented
        return self.length == other.length and all(
            a.code == b.code for a, b in zip(self.components, other.components)
        )

    def __hash__(self) -> int:
        return hash((self.length, tuple(c.code.key for c in self.components)))


@dataclass(frozen=True, eq=False)
class ExtendedPartition:
    """Parity extension of a CodePartition: the even-weight vectors of F^{n+1}."""
    length: int
    components: Tuple[Coset, ...]
    _memo: Dict[str, object] = field(default_factory=dict, repr=False)

    @property
    def codes(self) -> List[LinearCode]:
        return [c.code for c in self.components]


# ------------------------- Pairwise sweep ------------------------- #

@dataclass(frozen=True)
class PairSweep:
    dims: np.ndarray                 # symmetric; diagonal holds each code's dimension
    overlaps: Tuple[Tuple[int, int], ...]

    @property
    def disjoint(self) -> bool:
        return not self.overlaps


def _sweep_rows(payload) -> List[Tuple[int, List[int], List[int]]]:
    """Rows start..stop of the pair sweep; runs inside worker processes."""
    n, echelons, start, stop = payload
    rhs = 1 << n
    bases = [{r & -r: r for r in rows} for rows in echelons]
    out = []
    for i in range(start, stop):
        base = bases[i]
        rank_i = len(base)
        dims_row: List[int] = []
        overlaps: List[int] = []
        for j in range(i + 1, len(echelons)):
            extra: Dict[int, int] = {}
            for row in echelons[j]:
                r = reduce_against(base, row, extra)
                if r:
                    extra[r & -r] = r
            disjoint = rhs in extra
            dims_row.append(n - (rank_i + len(extra) - (1 if disjoint else 0)))
            if not disjoint:
                overlaps.append(j)
        out.append((i, dims_row, overlaps))
    return out


def pair_sweep(p, config: Optional[VerificationConfig] = None) -> PairSweep:
    """
    Code-intersection dimension and coset disjointness for every component
    pair, computed once per partition.
    """
    memo = p._memo
    if "sweep" in memo:
        return memo["sweep"]
    cfg = config or VerificationConfig()
    comps = p.components
    count = len(comps)
    echelons = [list(c.augmented_echelon.values()) for c in comps]
    chunk = max(1, cfg.pair_chunk_size)
    tasks = [(p.length, echelons, s, min(s + chunk, count)) for s in range(0, count, chunk)]
    logger.info("Sweeping %d component pairs at n=%d (%d tasks, %d workers)",
                count * (count - 1) // 2, p.length, len(tasks), cfg.parallel_workers)
    if cfg.parallel_workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallel_workers) as pool:
            results = [row for chunk_rows in pool.map(_sweep_rows, tasks) for row in chunk_rows]
    else:
        results = [row for task in tasks for row in _sweep_rows(task)]

    dims = np.zeros((count, count), dtype=np.int32)
    overlaps: List[Tuple[int, int]] = []
    for i, dims_row, bad in sorted(results, key=lambda r: r[0]):
        dims[i, i + 1:] = dims_row
        dims[i + 1:, i] = dims_row
        overlaps.extend((i, j) for j in bad)
    for k, c in enumerate(comps):
        dims[k, k] = c.code.dimension
    sweep = PairSweep(dims=dims, overlaps=tuple(overlaps))
    memo["sweep"] = sweep
    return sweep


# ------------------------- Certificates ------------------------- #

@dataclass(frozen=True)
class PartitionCertificate:
    valid: bool
    mode: VerifyMode
    pairs_checked: int
    offending_pair: Optional[Tuple[int, int]] = None
    offending_vector: Optional[BitVector] = None
    cover_count: Optional[int] = None        # how many components hold offending_vector
    modes_agree: Optional[bool] = None

    def describe(self) -> str:
        if self.valid:
            return f"valid ({self.mode.value}, {self.pairs_checked} pairs)"
        if self.offending_pair is not None:
            i, j = self.offending_pair
            return f"invalid: components {i} and {j} overlap"
        return f"invalid: vector {self.offending_vector} lies in {self.cover_count} components"


def _even_weight_only(p) -> bool:
    return isinstance(p, ExtendedPartition)


def _exhaustive_membership(p) -> Tuple[Optional[BitVector], int]:
    """First vector not covered exactly once (and its cover count), scanning all of F^n."""
    n = p.length
    values = np.arange(1 << n, dtype=np.int64)
    vectors = ((values[:, None] >> np.arange(n)) & 1).astype(np.int64)
    if _even_weight_only(p):
        keep = (vectors.sum(axis=1) % 2) == 0
        values, vectors = values[keep], vectors[keep]
    counts = np.zeros(len(values), dtype=np.int64)
    for comp in p.components:
        h = comp.code.parity_check.to_array().astype(np.int64)
        syndromes = (vectors @ h.T) % 2
        target = np.array([(comp.syndrome >> i) & 1 for i in range(h.shape[0])], dtype=np.int64)
        counts += np.all(syndromes == target, axis=1)
    bad = np.nonzero(counts != 1)[0]
    if len(bad) == 0:
        return None, 1
    first = int(bad[0])
    return BitVector(n, int(values[first])), int(counts[first])


def verify_partition(p, mode: VerifyMode = VerifyMode.ALGEBRAIC,
                     config: Optional[VerificationConfig] = None) -> PartitionCertificate:
    """
    Algebraic mode: every pair of components is disjoint; with the counting
    identity this implies the components cover the space. Exhaustive mode:
    every vector lies in exactly one component (n <= exhaustive_max_length).
    """
    cfg = config or VerificationConfig()
    count = len(p.components)
    pairs = count * (count - 1) // 2
    algebraic: Optional[PartitionCertificate] = None
    exhaustive: Optional[PartitionCertificate] = None

    if mode in (VerifyMode.ALGEBRAIC, VerifyMode.BOTH):
        sweep = pair_sweep(p, cfg)
        if sweep.disjoint:
            algebraic = PartitionCertificate(True, VerifyMode.ALGEBRAIC, pairs)
        else:
            algebraic = PartitionCertificate(False, VerifyMode.ALGEBRAIC, pairs, offending_pair=sweep.overlaps[0])

    if mode in (VerifyMode.EXHAUSTIVE, VerifyMode.BOTH):
        if p.length > cfg.exhaustive_max_length:
            raise ValueError(
                f"exhaustive verification refused at n={p.length} (limit {cfg.exhaustive_max_length})"
            )
        vector, covered = _exhaustive_membership(p)
        exhaustive = PartitionCertificate(vector is None, VerifyMode.EXHAUSTIVE, 0,
                                          offending_vector=vector,
                                          cover_count=None if vector is None else covered)

    if mode == VerifyMode.BOTH:
        agree = algebraic.valid == exhaustive.valid
        if not agree:
            logger.error("Algebraic and exhaustive verdicts disagree at n=%d", p.length)
        cert = PartitionCertificate(
            algebraic.valid and exhaustive.valid, VerifyMode.BOTH, pairs,
            offending_pair=algebraic.offending_pair,
            offending_vector=exhaustive.offending_vector,
            cover_count=exhaustive.cover_count,
            modes_agree=agree,
        )
    else:
        cert = algebraic or exhaustive
    logger.info("Partition of length %d: %s", p.length, cert.describe())
    return cert


def require_partition(p, config: Optional[VerificationConfig] = None) -> PartitionCertificate:
    cert = verify_partition(p, VerifyMode.ALGEBRAIC, config)
    if not cert.valid:
        logger.error("Rejecting partition of length %d: %s", p.length, cert.describe())
        raise VerificationError(cert.describe())
    return cert


# ------------------------- Uniformity ------------------------- #

def code_blocks(p) -> List[Tuple[int, ...]]:
    """Indices grouped by shared component code, in order of first index."""
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for k, comp in enumerate(p.components):
        groups.setdefault(comp.code.key, []).append(k)
    return [tuple(g) for g in groups.values()]


@dataclass(frozen=True)
class UniformityReport:
    """
    pairwise_dims holds the code-intersection dimension of every index pair.
    Uniformity is judged over pairs of distinct codes; a partition whose
    components share a single code is uniform with the code's dimension.
    """
    pairwise_dims: np.ndarray
    distinct_code_count: int
    distinct_code_values: Tuple[int, ...]
    is_uniform: bool
    uniformity_number: Optional[int]

    def dim(self, i: int, j: int) -> int:
        return int(self.pairwise_dims[i, j])

    def describe(self) -> str:
        if self.is_uniform:
            return f"uniform, uniformity number {self.uniformity_number} ({self.distinct_code_count} distinct codes)"
        return f"not uniform: distinct-code intersections take {list(self.distinct_code_values)}"


def uniformity(p, config: Optional[VerificationConfig] = None) -> UniformityReport:
    sweep = pair_sweep(p, config)
    blocks = code_blocks(p)
    if len(blocks) == 1:
        dim = p.components[0].code.dimension
        return UniformityReport(sweep.dims, 1, (dim,), True, dim)
    block_of = np.zeros(len(p.components), dtype=np.int32)
    for b, members in enumerate(blocks):
        block_of[list(members)] = b
    # one representative per code is enough: dims depend only on the codes
    reps = np.array([members[0] for members in blocks])
    sub = sweep.dims[np.ix_(reps, reps)]
    upper = sub[np.triu_indices(len(reps), k=1)]
    values = tuple(sorted(set(int(v) for v in upper)))
    uniform = len(values) == 1
    report = UniformityReport(sweep.dims, len(blocks), values, uniform, values[0] if uniform else None)
    logger.info("Uniformity at n=%d: %s", p.length, report.describe())
    return report


def invariant_signature(p, config: Optional[VerificationConfig] = None) -> Signature:
    """Multiset of code-intersection dimensions over index pairs i < j, as (value, count)."""
    dims = pair_sweep(p, config).dims
    upper = dims[np.triu_indices(dims.shape[0], k=1)]
    counts = Counter(int(v) for v in upper)
    return tuple(sorted(counts.items()))


# ------------------------- Constructors ------------------------- #

def trivial_partition(h: LinearCode) -> CodePartition:
    if not h.is_hamming_shaped:
        raise ValueError(f"code of length {h.length} is not a Hamming code")
    n = h.length
    comps = tuple(Coset(h, BitVector.unit(n, k), BitVector.unit(n, k)) for k in range(n + 1))
    return CodePartition(n, comps)


def extend_partition(p: CodePartition) -> ExtendedPartition:
    return ExtendedPartition(p.length + 1, tuple(extend_coset(c) for c in p.components))


def puncture_partition(q: ExtendedPartition, position: Optional[int] = None) -> CodePartition:
    """Delete one coordinate (default: the parity coordinate) and re-index by leaders."""
    position = q.length if position is None else position
    n = q.length - 1
    return CodePartition.from_cosets(n, [puncture_coset(c, position) for c in q.components])


# ------------------------- Uniform search ------------------------- #

@dataclass(frozen=True)
class SearchResult:
    """
    Outcome of a bounded search. Nothing is claimed about absence unless
    the search ran to completion without hitting its node budget or limit.
    """
    m: int
    target_dim: int
    partitions: Tuple[CodePartition, ...]
    candidate_codes: int
    nodes: int
    budget_exhausted: bool
    limit_reached: bool

    @property
    def complete(self) -> bool:
        return not (self.budget_exhausted or self.limit_reached)

    def describe(self) -> str:
        n = (1 << self.m) - 1
        head = f"n={n}, dimension {self.target_dim}: {len(self.partitions)} partitions"
        span = f"{self.nodes} nodes over {self.candidate_codes} candidate codes"
        if self.budget_exhausted:
            return f"{head}; node budget spent after {span}, absence not established"
        if self.limit_reached:
            return f"{head}; stopped at the partition limit after {span}"
        return f"{head}; {span} searched to completion"


def candidate_hamming_codes(m: int, sample: int = 64, max_support: int = 4,
                            rng: Optional[random.Random] = None) -> List[LinearCode]:
    """
    Every Hamming code for m <= 3. Beyond that, the natural-order code and
    up to sample - 1 images of it under random permutations moving at most
    max_support coordinates, so candidates keep large pairwise intersections.
    """
    if m <= 3:
        return distinct_hamming_codes(m)
    if max_support < 2:
        raise ValueError(f"max_support must be at least 2, got {max_support}")
    rng = rng or random.Random(0)
    n = (1 << m) - 1
    base = hamming_code(m)
    seen: Dict[Tuple[int, ...], LinearCode] = {base.key: base}
    for _ in range(8 * sample):
        if len(seen) >= sample:
            break
        moved = rng.sample(range(1, n + 1), rng.randint(2, max_support))
        images = moved[:]
        rng.shuffle(images)
        perm = list(range(1, n + 1))
        for k, image in zip(moved, images):
            perm[k - 1] = image
        code = base.permute(perm)
        seen.setdefault(code.key, code)
    logger.info("Sampled %d candidate Hamming codes of length %d", len(seen), n)
    return list(seen.values())


def uniform_search(m: int, target_dim: int, limit: int = 32, node_budget: Optional[int] = None,
                   codes: Optional[Sequence[LinearCode]] = None) -> SearchResult:
    """
    Backtracking for partitions {H_0, H_1+e_1, ..., H_n+e_n} of F^n, n = 2^m-1,
    whose component codes pairwise intersect in dimension target_dim. The
    candidates are all Hamming codes up to length 7, and sampled ones beyond
    (see candidate_hamming_codes). A node is one component placement.
    """
    n = (1 << m) - 1
    if m < 2:
        raise ValueError(f"search needs m >= 2, got {m}")
    if not 0 <= target_dim <= n - m:
        raise ValueError(f"target_dim must lie in 0..{n - m}, got {target_dim}")
    if node_budget is not None and node_budget < 1:
        raise ValueError(f"node_budget must be positive, got {node_budget}")
    codes = list(codes) if codes is not None else candidate_hamming_codes(m)
    if any(c.length != n or not c.is_hamming_shaped for c in codes):
        raise ValueError(f"candidates must be Hamming codes of length {n}")
    inter = [[intersection_dim(a, b) for b in codes] for a in codes]
    cosets = [[Coset(c, BitVector.unit(n, k), BitVector.unit(n, k)) for k in range(n + 1)] for c in codes]
    disjoint: Dict[Tuple[int, int, int, int], bool] = {}

    def is_disjoint(a: int, i: int, b: int, j: int) -> bool:
        key = (a, i, b, j)
        if key not in disjoint:
            disjoint[key] = coset_intersection_size_log(cosets[a][i], cosets[b][j]) is None
        return disjoint[key]

    solutions: List[CodePartition] = []
    chosen: List[int] = []
    nodes = 0
    spent = False

    def backtrack(k: int) -> bool:
        nonlocal nodes, spent
        if k == n + 1:
            solutions.append(CodePartition(n, tuple(cosets[c][i] for i, c in enumerate(chosen))))
            return len(solutions) >= limit
        for c in range(len(codes)):
            if any(inter[c][prev] != target_dim for prev in chosen):
                continue
            if not all(is_disjoint(prev, i, c, k) for i, prev in enumerate(chosen)):
                continue
            if node_budget is not None and nodes >= node_budget:
                spent = True
                return True
            nodes += 1
            chosen.append(c)
            if backtrack(k + 1):
                return True
            chosen.pop()
        return False

    backtrack(0)
    result = SearchResult(m, target_dim, tuple(solutions), len(codes), nodes,
                          budget_exhausted=spent, limit_reached=len(solutions) >= limit)
    if spent:
        logger.warning("Search stopped on its node budget: %s", result.describe())
    else:
        logger.info("Search finished: %s", result.describe())
    return result


def phelps_search(target_dim: int, limit: int = 32) -> List[CodePartition]:
    """Exhaustive length-7 search; uniform partitions exist only for target_dim 2 and 4."""
    if target_dim not in (2, 4):
        raise ValueError(f"target_dim must be 2 or 4, got {target_dim}")
    return list(uniform_search(3, target_dim, limit).partitions)
