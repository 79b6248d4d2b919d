# hamming_partitions/symmetry.py
"""
Isometries of F^n (coordinate permutation followed by translation), the
permutation they induce on a partition's index set, exhaustive automorphism
search at small n, lifting through construction B, and certification of
2-transitivity by orbit closure on ordered index pairs.
"""
from __future__ import annotations

import itertools
import logging
import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from .codes import Coset, LinearCode, hamming_leader
from .gf2core import BitVector, parity, permute_bits
from .mollard import MollardFrame
from .partitions import CodePartition, ExtendedPartition, code_blocks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Isometry:
    """x -> perm(x) + shift, where perm moves coordinate k to perm[k-1]."""
    perm: Tuple[int, ...]
    shift: BitVector

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        n = len(self.perm)
        if self.shift.length != n:
            raise ValueError(f"shift of length {self.shift.length} for a permutation of {n} points")
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError("perm is not a bijection of 1..n")

    @property
    def length(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> Isometry:
        return cls(tuple(range(1, n + 1)), BitVector.zero(n))

    @classmethod
    def translation(cls, shift: BitVector) -> Isometry:
        return cls(tuple(range(1, shift.length + 1)), shift)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> Isometry:
        return cls(tuple(perm), BitVector.zero(len(perm)))

    def apply_vector(self, x: BitVector) -> BitVector:
        if x.length != self.length:
            raise ValueError(f"vector of length {x.length} under an isometry of length {self.length}")
        return BitVector(self.length, permute_bits(x.bits, self.perm) ^ self.shift.bits)

    def compose(self, other: Isometry) -> Isometry:
        """self after other."""
        if other.length != self.length:
            raise ValueError("cannot compose isometries of different lengths")
        perm = tuple(self.perm[k - 1] for k in other.perm)
        shift = BitVector(self.length, permute_bits(other.shift.bits, self.perm) ^ self.shift.bits)
        return Isometry(perm, shift)

    def inverse(self) -> Isometry:
        inv = [0] * self.length
        for k, image in enumerate(self.perm, start=1):
            inv[image - 1] = k
        return Isometry(tuple(inv), BitVector(self.length, permute_bits(self.shift.bits, inv)))

    def is_identity(self) -> bool:
        return self.shift.bits == 0 and all(k == image for k, image in enumerate(self.perm, start=1))


@dataclass(frozen=True)
class IndexPermutation:
    """A permutation of I = {0..n}: index i goes to mapping[i]."""
    mapping: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("mapping is not a bijection of the index set")

    @classmethod
    def identity(cls, size: int) -> IndexPermutation:
        return cls(tuple(range(size)))

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def __len__(self) -> int:
        return len(self.mapping)

    def compose(self, other: IndexPermutation) -> IndexPermutation:
        """self after other."""
        return IndexPermutation(tuple(self.mapping[i] for i in other.mapping))

    def inverse(self) -> IndexPermutation:
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return IndexPermutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


Automorphism = Tuple[Isometry, IndexPermutation]


# ------------------------- Actions ------------------------- #

def apply(iso: Isometry, c: Coset) -> Coset:
    if c.length != iso.length:
        raise ValueError(f"coset of length {c.length} under an isometry of length {iso.length}")
    code = c.code.permute(iso.perm)
    return Coset.of(code, iso.apply_vector(c.representative))


def _index_of_leader(leader: BitVector) -> int:
    return (leader.bits.bit_length()) if leader.bits else 0


def partition_action(iso: Isometry, p: CodePartition,
                     _permuted: Optional[Dict[Tuple[int, ...], LinearCode]] = None) -> Optional[IndexPermutation]:
    """
    The permutation i -> j with iso(C_i) = C_j, or None when some image is
    not a component. Pure linear algebra: the image's leader fixes j, then
    the code of C_j must equal the permuted code.
    """
    if iso.length != p.length:
        raise ValueError(f"isometry of length {iso.length} on a partition of length {p.length}")
    permuted = {} if _permuted is None else _permuted
    mapping: List[int] = []
    hit = [False] * len(p.components)
    for comp in p.components:
        image = permuted.get(comp.code.key)
        if image is None:
            image = comp.code.permute(iso.perm)
            permuted[comp.code.key] = image
        rep = iso.apply_vector(comp.leader)
        j = _index_of_leader(hamming_leader(image, rep))
        if hit[j] or p.components[j].code.key != image.key:
            return None
        hit[j] = True
        mapping.append(j)
    return IndexPermutation(tuple(mapping))


def extend_isometry(iso: Isometry) -> Isometry:
    """Fix coordinate n+1 and translate by (v, wt(v) mod 2); preserves the even-weight vectors."""
    n = iso.length
    shift = iso.shift.bits | (parity(iso.shift.bits) << n)
    return Isometry(iso.perm + (n + 1,), BitVector(n + 1, shift))


def extended_action(iso: Isometry, q: ExtendedPartition) -> Optional[IndexPermutation]:
    """
    Index permutation of an isometry on a parity-extended partition. The
    components carry no weight <= 1 leaders, so each image is matched by its
    code and by membership of the image representative.
    """
    if iso.length != q.length:
        raise ValueError(f"isometry of length {iso.length} on an extended partition of length {q.length}")
    by_key: Dict[Tuple[int, ...], List[int]] = {}
    for k, comp in enumerate(q.components):
        by_key.setdefault(comp.code.key, []).append(k)
    permuted: Dict[Tuple[int, ...], LinearCode] = {}
    mapping: List[int] = []
    hit = [False] * len(q.components)
    for comp in q.components:
        image = permuted.get(comp.code.key)
        if image is None:
            image = comp.code.permute(iso.perm)
            permuted[comp.code.key] = image
        rep = iso.apply_vector(comp.representative)
        j = next((k for k in by_key.get(image.key, ()) if q.components[k].contains(rep)), None)
        if j is None or hit[j]:
            return None
        hit[j] = True
        mapping.append(j)
    return IndexPermutation(tuple(mapping))


def _component_codes_preserved(perm: Sequence[int], p: CodePartition, keys: set) -> Optional[Dict]:
    permuted: Dict[Tuple[int, ...], LinearCode] = {}
    for comp in p.components:
        if comp.code.key in permuted:
            continue
        image = comp.code.permute(perm)
        if image.key not in keys:
            return None
        permuted[comp.code.key] = image
    return permuted


def _search_permutations(payload) -> List[Automorphism]:
    p, first = payload
    n = p.length
    keys = {comp.code.key for comp in p.components}
    found: List[Automorphism] = []
    rest = [k for k in range(1, n + 1) if k != first]
    for tail in itertools.permutations(rest):
        perm = (first,) + tail
        permuted = _component_codes_preserved(perm, p, keys)
        if permuted is None:
            continue
        for shift in range(1 << n):
            iso = Isometry(perm, BitVector(n, shift))
            action = partition_action(iso, p, dict(permuted))
            if action is not None:
                found.append((iso, action))
    return found


def exhaustive_automorphisms(p: CodePartition, max_length: int = 7, workers: int = 1) -> List[Automorphism]:
    """
    Every isometry preserving p, with its induced index permutation.
    Permutations are visited in lexicographic order; a permutation is only
    combined with translations when it maps every component code onto a
    component code.
    """
    n = p.length
    if n > max_length:
        raise ValueError(f"exhaustive automorphism search refused at n={n} (limit {max_length})")
    tasks = [(p, first) for first in range(1, n + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_permutations, tasks))
    else:
        chunks = [_search_permutations(task) for task in tasks]
    found = [a for chunk in chunks for a in chunk]
    logger.info("Exhaustive search at n=%d: %d automorphisms", n, len(found))
    return found


# ------------------------- Generators ------------------------- #

def lift_isometry(sl: Isometry, st: Isometry, frame: MollardFrame) -> Isometry:
    """Row/column lift: cell (i, j) -> (perm_l(i), perm_t(j)), y and z blocks follow, shift (0, s_l, s_t)."""
    if sl.length != frame.l or st.length != frame.t:
        raise ValueError(f"isometries of lengths {sl.length}, {st.length} for a {frame.l} x {frame.t} frame")
    perm = [0] * frame.n
    for i in range(1, frame.l + 1):
        for j in range(1, frame.t + 1):
            perm[frame.matrix(i, j) - 1] = frame.matrix(sl.perm[i - 1], st.perm[j - 1])
        perm[frame.y(i) - 1] = frame.y(sl.perm[i - 1])
    for j in range(1, frame.t + 1):
        perm[frame.z(j) - 1] = frame.z(st.perm[j - 1])
    shift = (sl.shift.bits << frame.lt) | (st.shift.bits << (frame.lt + frame.l))
    return Isometry(tuple(perm), BitVector(frame.n, shift))


def lifted_automorphisms(left: Iterable[Isometry], right: Iterable[Isometry],
                         frame: MollardFrame, composed: CodePartition,
                         confirm: bool = True) -> List[Automorphism]:
    """
    Lift (s, id) and (id, s) for the given automorphisms of the two inputs.
    Candidates whose action on the composed partition is undefined are dropped.
    """
    id_l, id_t = Isometry.identity(frame.l), Isometry.identity(frame.t)
    candidates = [lift_isometry(s, id_t, frame) for s in left]
    candidates += [lift_isometry(id_l, s, frame) for s in right]
    verified: List[Automorphism] = []
    for iso in candidates:
        action = partition_action(iso, composed) if confirm else None
        if action is None:
            if confirm:
                logger.warning("Dropping lifted candidate that does not preserve the n=%d partition", frame.n)
                continue
            raise ValueError("lifted automorphisms must be confirmed to obtain their index action")
        verified.append((iso, action))
    logger.info("Lifted %d of %d candidates at n=%d", len(verified), len(candidates), frame.n)
    return verified


def trivial_automorphisms(p: CodePartition) -> List[Automorphism]:
    """
    For a partition whose components share one Hamming code: the coordinate
    permutations realising the elementary transvections of the syndrome
    space, plus the translation by e_1. Each is confirmed on p.
    """
    if len(code_blocks(p)) != 1:
        raise ValueError("components do not share a single code")
    code = p.components[0].code
    r = code.redundancy
    columns = code.columns
    position_of = code.column_map
    out: List[Automorphism] = []
    candidates = [Isometry.translation(BitVector.unit(p.length, 1))]
    for a in range(r):
        for b in range(r):
            if a == b:
                continue
            perm = tuple(position_of[col ^ (((col >> b) & 1) << a)] for col in columns)
            candidates.append(Isometry.permutation(perm))
    for iso in candidates:
        action = partition_action(iso, p)
        if action is None:
            logger.warning("Affine candidate failed on a trivial partition of length %d", p.length)
            continue
        out.append((iso, action))
    return out


def induced_group(actions: Iterable[IndexPermutation], size: int) -> PermutationGroup:
    perms = [Permutation(list(a.mapping)) for a in actions]
    if not perms:
        perms = [Permutation(size - 1)]
    return PermutationGroup(perms)


def reduce_generators(automorphisms: Sequence[Automorphism]) -> List[Automorphism]:
    """Keep the automorphisms whose index action is new to the group generated so far."""
    if not automorphisms:
        return []
    size = len(automorphisms[0][1])
    kept: List[Automorphism] = []
    seen = set()
    group = PermutationGroup([Permutation(size - 1)])
    for iso, action in automorphisms:
        if action.mapping in seen:
            continue
        seen.add(action.mapping)
        perm = Permutation(list(action.mapping))
        if group.contains(perm):
            continue
        kept.append((iso, action))
        group = PermutationGroup([Permutation(list(a.mapping)) for _, a in kept])
    logger.debug("Reduced %d automorphisms to %d generators (group order %d)",
                 len(automorphisms), len(kept), group.order())
    return kept


# ------------------------- Transitivity ------------------------- #

@dataclass(frozen=True)
class TransitivityCertificate:
    points: int                   # n + 1
    orbit_size: int               # ordered pairs reached from (0, 1)
    point_orbit_size: int         # indices reached from 0
    generator_count: int

    @property
    def expected(self) -> int:
        return self.points * (self.points - 1)

    @property
    def two_transitive(self) -> bool:
        return self.orbit_size == self.expected

    @property
    def transitive(self) -> bool:
        return self.point_orbit_size == self.points

    def describe(self) -> str:
        verdict = "2-transitive" if self.two_transitive else "not 2-transitive"
        return (f"{verdict}: pair orbit {self.orbit_size}/{self.expected}, "
                f"point orbit {self.point_orbit_size}/{self.points}, {self.generator_count} generators")


def two_transitive(gens: Sequence[IndexPermutation], n: int) -> TransitivityCertificate:
    """Breadth-first orbit of the ordered pair (0, 1) under the generated group."""
    size = n + 1
    for g in gens:
        if len(g) != size:
            raise ValueError(f"generator on {len(g)} points for an index set of size {size}")
    maps = [g.mapping for g in gens]

    seen_points = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for g in maps:
            j = g[i]
            if j not in seen_points:
                seen_points.add(j)
                queue.append(j)

    seed = (0, 1)
    seen = {seed}
    pairs = deque([seed])
    while pairs:
        a, b = pairs.popleft()
        for g in maps:
            image = (g[a], g[b])
            if image not in seen:
                seen.add(image)
                pairs.append(image)

    cert = TransitivityCertificate(size, len(seen), len(seen_points), len(maps))
    if cert.two_transitive and not cert.transitive:
        raise AssertionError("2-transitive orbit without a transitive point orbit")
    if induced_group(gens, size).is_transitive() != cert.transitive:
        raise AssertionError("point orbit disagrees with the permutation-group transitivity test")
    logger.info("Index group on %d points: %s", size, cert.describe())
    return cert


def random_isometry(n: int, rng: random.Random) -> Isometry:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return Isometry(tuple(perm), BitVector(n, rng.getrandbits(n)))
