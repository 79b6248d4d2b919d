# hamming_partitions/codes.py
"""Hamming codes, punctured/extended codes, cosets and exact intersections."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .gf2core import (
    BitMatrix,
    BitVector,
    echelon,
    extend_echelon,
    iter_set_bits,
    kernel_basis,
    parity,
    rank,
    reduce_against,
    solve,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """
    A binary linear code held by a full-row-rank parity-check matrix.

    Two codes are equal when their parity checks span the same row space;
    the generator is derived lazily unless one is supplied.
    """
    length: int
    parity_check: BitMatrix
    explicit_generator: Optional[BitMatrix] = field(default=None, repr=False)

    def __post_init__(self):
        if self.parity_check.cols != self.length:
            raise ValueError(
                f"parity check has {self.parity_check.cols} columns for a code of length {self.length}"
            )
        if len(self.echelon) != self.parity_check.nrows:
            raise ValueError("parity-check matrix does not have full row rank")

    @classmethod
    def from_parity_check(cls, parity_check: BitMatrix) -> LinearCode:
        return cls(parity_check.cols, parity_check)

    @classmethod
    def from_generator(cls, generator: BitMatrix) -> LinearCode:
        if rank(generator) != generator.nrows:
            raise ValueError("generator rows are not independent")
        return cls(generator.cols, kernel_basis(generator), generator)

    # ---------------- structure ----------------
    @property
    def redundancy(self) -> int:
        return self.parity_check.nrows

    @property
    def dimension(self) -> int:
        return self.length - self.redundancy

    @cached_property
    def echelon(self) -> Dict[int, int]:
        return echelon(self.parity_check.rows)

    @cached_property
    def key(self) -> Tuple[int, ...]:
        return self.parity_check.row_space_key()

    @cached_property
    def generator(self) -> BitMatrix:
        if self.explicit_generator is None:
            return kernel_basis(self.parity_check)
        g = self.explicit_generator
        if g.cols != self.length or g.nrows != self.dimension or rank(g) != g.nrows:
            raise ValueError("supplied generator does not span a space of the code's dimension")
        for i, row in enumerate(g.rows):
            if self.syndrome_bits(row):
                raise ValueError(f"generator row {i} violates the parity checks")
        return g

    @cached_property
    def columns(self) -> List[int]:
        return self.parity_check.columns()

    @cached_property
    def column_map(self) -> Dict[int, int]:
        """Nonzero syndrome -> 1-based position whose parity-check column equals it."""
        out: Dict[int, int] = {}
        for k, col in enumerate(self.columns, start=1):
            if col and col not in out:
                out[col] = k
        return out

    @cached_property
    def is_hamming_shaped(self) -> bool:
        """Length 2^r-1 with all parity-check columns distinct and nonzero."""
        r = self.redundancy
        return r >= 2 and self.length == (1 << r) - 1 and len(self.column_map) == self.length

    # ---------------- membership ----------------
    def syndrome_bits(self, bits: int) -> int:
        out = 0
        for i, row in enumerate(self.parity_check.rows):
            out |= parity(row & bits) << i
        return out

    def syndrome(self, x: BitVector) -> BitVector:
        self._check_length(x.length)
        return BitVector(self.redundancy, self.syndrome_bits(x.bits))

    def contains(self, x: BitVector) -> bool:
        self._check_length(x.length)
        return self.syndrome_bits(x.bits) == 0

    def same_code(self, other: LinearCode) -> bool:
        """Row-space equality of the parity checks (mutual rank test)."""
        if other.length != self.length or other.redundancy != self.redundancy:
            return False
        return not extend_echelon(self.echelon, other.parity_check.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.length == other.length and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.length, self.key))

    def codewords(self) -> Iterator[int]:
        """Every codeword as packed bits, in Gray-code order of the generator rows."""
        g = self.generator.rows
        word = 0
        yield word
        for i in range(1, 1 << len(g)):
            word ^= g[(i & -i).bit_length() - 1]
            yield word

    def minimum_distance(self) -> int:
        if self.dimension > 20:
            raise ValueError(f"refusing to enumerate 2^{self.dimension} codewords")
        weights = [w.bit_count() for w in self.codewords() if w]
        return min(weights) if weights else 0

    def permute(self, images: Sequence[int]) -> LinearCode:
        return LinearCode(self.length, self.parity_check.permute_columns(images))

    def _check_length(self, n: int) -> None:
        if n != self.length:
            raise ValueError(f"vector of length {n} against a code of length {self.length}")


# ------------------------- Hamming codes ------------------------- #

def hamming_code(m: int, column_order: Optional[Sequence[int]] = None) -> LinearCode:
    """
    Hamming code of length 2^m-1 whose parity-check column at position k is
    column_order[k-1] (an m-bit syndrome, bit i = row i). Natural order when omitted.
    """
    if m < 2:
        raise ValueError(f"Hamming codes need m >= 2, got {m}")
    n = (1 << m) - 1
    order = list(range(1, n + 1)) if column_order is None else list(column_order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"column order is not a bijection onto the {n} nonzero syndromes")
    rows = [0] * m
    for k, col in enumerate(order):
        for i in iter_set_bits(col):
            rows[i] |= 1 << k
    return LinearCode(n, BitMatrix(n, tuple(rows)))


def distinct_hamming_codes(m: int) -> List[LinearCode]:
    """All Hamming codes of length 2^m-1 as sets (30 for m=3), in first-seen order."""
    if m > 3:
        raise ValueError(f"enumerating column orders of length {(1 << m) - 1} is not supported")
    n = (1 << m) - 1
    seen: Dict[Tuple[int, ...], LinearCode] = {}
    for order in itertools.permutations(range(1, n + 1)):
        code = hamming_code(m, order)
        seen.setdefault(code.key, code)
    logger.info("Enumerated %d distinct Hamming codes of length %d", len(seen), n)
    return list(seen.values())


def intersection_dim(c1: LinearCode, c2: LinearCode) -> int:
    """log2 |c1 ∩ c2| = n - rank of the stacked parity checks."""
    if c1.length != c2.length:
        raise ValueError(f"length mismatch: {c1.length} vs {c2.length}")
    stacked_rank = len(c1.echelon) + len(extend_echelon(c1.echelon, c2.parity_check.rows))
    return c1.length - stacked_rank


# ------------------------- Cosets ------------------------- #

@dataclass(frozen=True, eq=False)
class Coset:
    code: LinearCode
    representative: BitVector
    leader: BitVector

    def __post_init__(self):
        n = self.code.length
        if self.representative.length != n or self.leader.length != n:
            raise ValueError("coset representative and leader must match the code length")
        if self.code.syndrome_bits(self.representative.bits ^ self.leader.bits):
            raise ValueError("leader and representative lie in different cosets")

    @classmethod
    def of(cls, code: LinearCode, representative: BitVector) -> Coset:
        """Coset code + representative with its canonical leader."""
        return cls(code, representative, canonical_leader(code, representative))

    @property
    def length(self) -> int:
        return self.code.length

    @cached_property
    def syndrome(self) -> int:
        return self.code.syndrome_bits(self.representative.bits)

    @cached_property
    def augmented_echelon(self) -> Dict[int, int]:
        """Echelon form of [H | H·rep]; the right-hand side sits at bit n."""
        rhs = 1 << self.length
        rows = [
            row | (rhs if (self.syndrome >> i) & 1 else 0)
            for i, row in enumerate(self.code.parity_check.rows)
        ]
        return echelon(rows)

    def contains(self, x: BitVector) -> bool:
        return self.code.syndrome_bits(x.bits) == self.syndrome

    def elements(self) -> Iterator[int]:
        rep = self.representative.bits
        for word in self.code.codewords():
            yield word ^ rep

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coset):
            return NotImplemented
        return self.code == other.code and other.code.syndrome_bits(self.representative.bits) == other.syndrome

    def __hash__(self) -> int:
        return hash((self.code, self.leader.bits))


def coset_leader(c: Coset) -> BitVector:
    """The unique vector of weight <= 1 in a coset of a Hamming code."""
    return hamming_leader(c.code, c.representative)


def hamming_leader(code: LinearCode, representative: BitVector) -> BitVector:
    if not code.is_hamming_shaped:
        raise ValueError(f"code of length {code.length} and dimension {code.dimension} is not a Hamming code")
    s = code.syndrome_bits(representative.bits)
    if s == 0:
        return BitVector.zero(code.length)
    k = code.column_map.get(s)
    if k is None:
        raise ValueError(f"syndrome {s:b} matches no parity-check column")
    return BitVector.unit(code.length, k)


def canonical_leader(code: LinearCode, representative: BitVector) -> BitVector:
    """Weight <= 1 leader for Hamming codes, otherwise the deterministic solution of H·x = s."""
    if code.is_hamming_shaped:
        return hamming_leader(code, representative)
    x = solve(code.parity_check, code.syndrome(representative))
    assert x is not None
    return x


def pair_profile(c1: Coset, c2: Coset) -> Tuple[int, bool]:
    """(intersection_dim of the two codes, whether the cosets are disjoint) in one elimination."""
    n = c1.length
    if c2.length != n:
        raise ValueError(f"length mismatch: {n} vs {c2.length}")
    rhs = 1 << n
    base = c1.augmented_echelon
    extra = extend_echelon(base, c2.augmented_echelon.values())
    disjoint = rhs in extra
    coefficient_rank = len(base) + len(extra) - (1 if disjoint else 0)
    return n - coefficient_rank, disjoint


def coset_intersection_size_log(c1: Coset, c2: Coset) -> Optional[int]:
    """None when disjoint, else log2 of |c1 ∩ c2| (= intersection_dim of the codes)."""
    dim, disjoint = pair_profile(c1, c2)
    return None if disjoint else dim


# ------------------------- Extension / puncturing ------------------------- #

def extend(c: LinearCode) -> LinearCode:
    """Append an overall parity coordinate at position n+1."""
    n = c.length
    all_ones = (1 << (n + 1)) - 1
    return LinearCode(n + 1, BitMatrix(n + 1, c.parity_check.rows + (all_ones,)))


def _delete_bit(bits: int, position: int) -> int:
    low = bits & ((1 << (position - 1)) - 1)
    return low | ((bits >> position) << (position - 1))


def puncture(c: LinearCode, position: int) -> LinearCode:
    """
    Delete one coordinate. The parity checks of the punctured code are the
    checks of c that vanish at the deleted coordinate.
    """
    n = c.length
    if not 1 <= position <= n:
        raise ValueError(f"puncture position {position} outside 1..{n}")
    if n < 2:
        raise ValueError("cannot puncture a code of length 1")
    bit = 1 << (position - 1)
    rows = list(c.parity_check.rows)
    at = next((i for i, r in enumerate(rows) if r & bit), None)
    if at is None:
        raise ValueError(f"puncturing position {position} merges codewords (unit vector is a codeword)")
    pivot = rows.pop(at)
    kept = [(r ^ pivot) if r & bit else r for r in rows]
    shortened = tuple(_delete_bit(r, position) for r in kept)
    return LinearCode(n - 1, BitMatrix(n - 1, shortened))


def extend_coset(c: Coset) -> Coset:
    rep = c.representative
    extended_rep = BitVector(rep.length + 1, rep.bits | (parity(rep.bits) << rep.length))
    return Coset.of(extend(c.code), extended_rep)


def puncture_coset(c: Coset, position: int) -> Coset:
    rep = c.representative
    return Coset.of(puncture(c.code, position), BitVector(rep.length - 1, _delete_bit(rep.bits, position)))
