# hamming_partitions/gf2core.py
"""
Exact linear algebra over GF(2) on bit-packed vectors and matrices.

Coordinate k (1-based) of a vector of length n lives at bit k-1 of a Python
integer. Every module in the package shares this one convention, including
the text serialization (coordinate k at string position k-1).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


# ------------------------- Vectors ------------------------- #

@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"BitVector length must be positive, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits 0x{self.bits:x} do not fit in length {self.length}")

    @classmethod
    def zero(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, position: int) -> BitVector:
        """e_position; position 0 is read as the all-zero vector."""
        if position == 0:
            return cls(length, 0)
        if not 1 <= position <= length:
            raise ValueError(f"position {position} outside 1..{length}")
        return cls(length, 1 << (position - 1))

    @classmethod
    def from_positions(cls, length: int, positions: Iterable[int]) -> BitVector:
        bits = 0
        for k in positions:
            if not 1 <= k <= length:
                raise ValueError(f"position {k} outside 1..{length}")
            bits ^= 1 << (k - 1)
        return cls(length, bits)

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {text!r}")
        # coordinate k sits at string position k-1, i.e. the string is little-endian
        return cls(len(text), int(text[::-1], 2))

    def to_string(self) -> str:
        return format(self.bits, f"0{self.length}b")[::-1]

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> List[int]:
        return [k + 1 for k in iter_set_bits(self.bits)]

    def __getitem__(self, position: int) -> int:
        if not 1 <= position <= self.length:
            raise IndexError(f"position {position} outside 1..{self.length}")
        return (self.bits >> (position - 1)) & 1

    def __add__(self, other: BitVector) -> BitVector:
        if other.length != self.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def permute(self, images: Sequence[int]) -> BitVector:
        """Move coordinate k to position images[k-1]."""
        if len(images) != self.length:
            raise ValueError(f"permutation of size {len(images)} applied to length {self.length}")
        return BitVector(self.length, permute_bits(self.bits, images))

    def __str__(self) -> str:
        return self.to_string()


def iter_set_bits(bits: int) -> Iterator[int]:
    """Yield the 0-based indices of set bits, lowest first."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def permute_bits(bits: int, images: Sequence[int]) -> int:
    out = 0
    for k in iter_set_bits(bits):
        out |= 1 << (images[k] - 1)
    return out


def parity(bits: int) -> int:
    return bits.bit_count() & 1


# ------------------------- Matrices ------------------------- #

@dataclass(frozen=True)
class BitMatrix:
    cols: int
    rows: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.cols <= 0:
            raise ValueError(f"BitMatrix needs a positive column count, got {self.cols}")
        object.__setattr__(self, "rows", tuple(self.rows))
        for i, r in enumerate(self.rows):
            if r < 0 or r >> self.cols:
                raise ValueError(f"row {i} does not fit in {self.cols} columns")

    @classmethod
    def from_vectors(cls, cols: int, vectors: Iterable[BitVector]) -> BitMatrix:
        rows = []
        for v in vectors:
            if v.length != cols:
                raise ValueError(f"row of length {v.length} in a matrix with {cols} columns")
            rows.append(v.bits)
        return cls(cols, tuple(rows))

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> BitMatrix:
        vectors = [BitVector.from_string(s) for s in lines]
        if not vectors:
            raise ValueError("cannot infer the column count of an empty matrix")
        return cls.from_vectors(vectors[0].length, vectors)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, tuple(1 << k for k in range(n)))

    @classmethod
    def from_array(cls, array: np.ndarray) -> BitMatrix:
        arr = np.asarray(array, dtype=np.uint8) % 2
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {arr.shape}")
        packed = np.packbits(arr, axis=1, bitorder="little")
        return cls(arr.shape[1], tuple(int.from_bytes(row.tobytes(), "little") for row in packed))

    def to_array(self) -> np.ndarray:
        nbytes = (self.cols + 7) // 8
        if not self.rows:
            return np.zeros((0, self.cols), dtype=np.uint8)
        raw = np.frombuffer(b"".join(r.to_bytes(nbytes, "little") for r in self.rows), dtype=np.uint8)
        bits = np.unpackbits(raw.reshape(len(self.rows), nbytes), axis=1, bitorder="little")
        return bits[:, : self.cols]

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def vectors(self) -> List[BitVector]:
        return [BitVector(self.cols, r) for r in self.rows]

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.rows[i])

    def stack(self, other: BitMatrix) -> BitMatrix:
        if other.cols != self.cols:
            raise ValueError(f"cannot stack {self.cols}-column and {other.cols}-column matrices")
        return BitMatrix(self.cols, self.rows + other.rows)

    def transpose(self) -> BitMatrix:
        if not self.rows:
            raise ValueError("transpose of a matrix without rows has no columns")
        return BitMatrix(len(self.rows), tuple(self.columns()))

    def columns(self) -> List[int]:
        """Column k (0-based) as an int whose bit r is entry (r, k)."""
        cols = [0] * self.cols
        for r, row in enumerate(self.rows):
            for k in iter_set_bits(row):
                cols[k] |= 1 << r
        return cols

    def multiply_vector(self, x: BitVector) -> BitVector:
        """M·x; the result has one coordinate per row."""
        if x.length != self.cols:
            raise ValueError(f"vector of length {x.length} against {self.cols} columns")
        if not self.rows:
            raise ValueError("product with a matrix without rows is empty")
        out = 0
        for i, row in enumerate(self.rows):
            out |= parity(row & x.bits) << i
        return BitVector(len(self.rows), out)

    def permute_columns(self, images: Sequence[int]) -> BitMatrix:
        return BitMatrix(self.cols, tuple(permute_bits(r, images) for r in self.rows))

    def row_space_key(self) -> Tuple[int, ...]:
        """Reduced row-echelon rows, sorted: equal keys iff equal row spaces."""
        return tuple(sorted(reduced_echelon(self.rows).values()))


# ------------------------- Elimination ------------------------- #
# Pivots are the lowest set bit (leftmost coordinate) of each row, rows are
# taken in order. An echelon basis is a dict pivot_mask -> row in which every
# row's lowest set bit is its own pivot.

def reduce_against(basis: Dict[int, int], row: int, extra: Optional[Dict[int, int]] = None) -> int:
    """Residue of row after elimination by basis (and extra), 0 if in their span."""
    while row:
        p = row & -row
        b = basis.get(p)
        if b is None and extra is not None:
            b = extra.get(p)
        if b is None:
            return row
        row ^= b
    return 0


def echelon(rows: Iterable[int]) -> Dict[int, int]:
    basis: Dict[int, int] = {}
    for row in rows:
        r = reduce_against(basis, row)
        if r:
            basis[r & -r] = r
    return basis


def reduced_echelon(rows: Iterable[int]) -> Dict[int, int]:
    basis = echelon(rows)
    # clear each pivot from the rows that contain it, highest pivot first
    for p in sorted(basis, reverse=True):
        prow = basis[p]
        for q in basis:
            if q != p and basis[q] & p:
                basis[q] ^= prow
    return basis


def extend_echelon(basis: Dict[int, int], rows: Iterable[int]) -> Dict[int, int]:
    """New echelon rows contributed by rows on top of basis (basis untouched)."""
    extra: Dict[int, int] = {}
    for row in rows:
        r = reduce_against(basis, row, extra)
        if r:
            extra[r & -r] = r
    return extra


def rank(m: BitMatrix) -> int:
    return len(echelon(m.rows))


def solve(m: BitMatrix, b: BitVector) -> Optional[BitVector]:
    """Some x with m·x = b, or None when the system is inconsistent."""
    if b.length != m.nrows:
        raise ValueError(f"right-hand side of length {b.length} for {m.nrows} equations")
    rhs = 1 << m.cols
    augmented = [row | (rhs if (b.bits >> i) & 1 else 0) for i, row in enumerate(m.rows)]
    basis = reduced_echelon(augmented)
    if rhs in basis:
        logger.debug("inconsistent %dx%d system", m.nrows, m.cols)
        return None
    x = 0
    for p, row in basis.items():
        if row & rhs:
            x |= p
    return BitVector(m.cols, x)


def kernel_basis(m: BitMatrix) -> BitMatrix:
    basis = reduced_echelon(m.rows)
    pivot_mask = 0
    for p in basis:
        pivot_mask |= p
    out = []
    for free in range(m.cols):
        f = 1 << free
        if f & pivot_mask:
            continue
        vec = f
        for p, row in basis.items():
            if row & f:
                vec |= p
        out.append(vec)
    return BitMatrix(m.cols, tuple(out))
