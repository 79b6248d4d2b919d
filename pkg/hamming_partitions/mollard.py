# hamming_partitions/mollard.py
"""
Mollard composition of Hamming codes and construction B on partitions.

A vector of length n = lt + l + t is read as (x, y, z): the l x t matrix x
row-major at positions 1..lt, y at lt+1..lt+l, z at lt+l+1..n.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .codes import Coset, LinearCode
from .config_schema import VerificationConfig
from .gf2core import BitMatrix, BitVector, iter_set_bits, parity
from .partitions import CodePartition, require_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MollardFrame:
    l: int
    t: int

    def __post_init__(self):
        if self.l < 1 or self.t < 1:
            raise ValueError(f"frame sizes must be positive, got l={self.l}, t={self.t}")

    @property
    def n(self) -> int:
        return self.l * self.t + self.l + self.t

    @property
    def lt(self) -> int:
        return self.l * self.t

    def matrix(self, i: int, j: int) -> int:
        if not (1 <= i <= self.l and 1 <= j <= self.t):
            raise ValueError(f"matrix cell ({i}, {j}) outside {self.l} x {self.t}")
        return (i - 1) * self.t + j

    def y(self, i: int) -> int:
        if not 1 <= i <= self.l:
            raise ValueError(f"y index {i} outside 1..{self.l}")
        return self.lt + i

    def z(self, j: int) -> int:
        if not 1 <= j <= self.t:
            raise ValueError(f"z index {j} outside 1..{self.t}")
        return self.lt + self.l + j

    def grid_position(self, i: int, j: int) -> int:
        """Coordinate of grid cell (i, j), 0 <= i <= l, 0 <= j <= t; (0, 0) is 0."""
        if i == 0 and j == 0:
            return 0
        if j == 0:
            return self.y(i)
        if i == 0:
            return self.z(j)
        return self.matrix(i, j)

    def cell_of(self, position: int) -> Tuple[int, int]:
        """Inverse of grid_position."""
        if position == 0:
            return 0, 0
        if not 1 <= position <= self.n:
            raise ValueError(f"position {position} outside 0..{self.n}")
        if position <= self.lt:
            i, j = divmod(position - 1, self.t)
            return i + 1, j + 1
        if position <= self.lt + self.l:
            return position - self.lt, 0
        return 0, position - self.lt - self.l

    @cached_property
    def row_masks(self) -> List[int]:
        block = (1 << self.t) - 1
        return [block << (i * self.t) for i in range(self.l)]

    @cached_property
    def column_masks(self) -> List[int]:
        masks = []
        for j in range(self.t):
            mask = 0
            for i in range(self.l):
                mask |= 1 << (i * self.t + j)
            masks.append(mask)
        return masks

    def spread_rows(self, row_bits: int) -> int:
        """Matrix with every row i in row_bits set to all ones."""
        out = 0
        for i in iter_set_bits(row_bits):
            out |= self.row_masks[i]
        return out

    def repeat_row(self, column_bits: int) -> int:
        """Matrix whose every row equals column_bits."""
        out = 0
        for i in range(self.l):
            out |= column_bits << (i * self.t)
        return out


def p_vectors(x: BitVector, frame: MollardFrame) -> Tuple[BitVector, BitVector]:
    """Row parities p1(x) in F^l and column parities p2(x) in F^t of the matrix view of x."""
    if x.length != frame.lt:
        raise ValueError(f"x has length {x.length}, frame needs {frame.lt}")
    p1 = 0
    for i, mask in enumerate(frame.row_masks):
        p1 |= parity(x.bits & mask) << i
    p2 = 0
    for j, mask in enumerate(frame.column_masks):
        p2 |= parity(x.bits & mask) << j
    return BitVector(frame.l, p1), BitVector(frame.t, p2)


def _require_hamming(code: LinearCode, label: str) -> None:
    if not code.is_hamming_shaped:
        raise ValueError(f"{label} of length {code.length} is not a Hamming code")


def mollard_parity_check(cl: LinearCode, ct: LinearCode) -> BitMatrix:
    """
    Parity check of M(cl, ct): the column at grid cell (i, j) is
    (column_i of cl, column_j of ct), with column_0 = 0.
    """
    frame = MollardFrame(cl.length, ct.length)
    rows = []
    for a in cl.parity_check.rows:
        rows.append(frame.spread_rows(a) | (a << frame.lt))
    for b in ct.parity_check.rows:
        rows.append(frame.repeat_row(b) | (b << (frame.lt + frame.l)))
    return BitMatrix(frame.n, tuple(rows))


def mollard_generator(cl: LinearCode, ct: LinearCode) -> BitMatrix:
    """Rows (e_ij, p1(e_ij), p2(e_ij)), then (0, y, 0) for y in cl, then (0, 0, z) for z in ct."""
    frame = MollardFrame(cl.length, ct.length)
    rows = []
    for i in range(1, frame.l + 1):
        for j in range(1, frame.t + 1):
            rows.append((1 << (frame.matrix(i, j) - 1)) | (1 << (frame.y(i) - 1)) | (1 << (frame.z(j) - 1)))
    rows.extend(g << frame.lt for g in cl.generator.rows)
    rows.extend(g << (frame.lt + frame.l) for g in ct.generator.rows)
    return BitMatrix(frame.n, tuple(rows))


def mollard_code(cl: LinearCode, ct: LinearCode) -> LinearCode:
    """{(x, y + p1(x), z + p2(x)) : x in F^{lt}, y in cl, z in ct}, a Hamming code of length lt+l+t."""
    _require_hamming(cl, "first Mollard input")
    _require_hamming(ct, "second Mollard input")
    code = LinearCode(cl.length * ct.length + cl.length + ct.length,
                      mollard_parity_check(cl, ct),
                      mollard_generator(cl, ct))
    logger.debug("Mollard code of length %d, dimension %d", code.length, code.dimension)
    return code


def construction_b(pl: CodePartition, pt: CodePartition, verify: bool = True,
                   config: Optional[VerificationConfig] = None) -> CodePartition:
    """
    Component (i, j) is M(H_i^l, H_j^t) + (0, e_i, e_j); the result is
    re-indexed by leader position, which is grid_position(i, j).
    """
    if verify:
        require_partition(pl, config)
        require_partition(pt, config)
    frame = MollardFrame(pl.length, pt.length)
    codes: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], LinearCode] = {}
    cosets: List[Coset] = []
    for i, ci in enumerate(pl.components):
        for j, cj in enumerate(pt.components):
            pair = (ci.code.key, cj.code.key)
            code = codes.get(pair)
            if code is None:
                code = LinearCode(frame.n, mollard_parity_check(ci.code, cj.code))
                codes[pair] = code
            rep = (ci.leader.bits << frame.lt) | (cj.leader.bits << (frame.lt + frame.l))
            cosets.append(Coset.of(code, BitVector(frame.n, rep)))
    out = CodePartition.from_cosets(frame.n, cosets)
    logger.info("Construction B: l=%d, t=%d -> n=%d with %d distinct component codes",
                frame.l, frame.t, frame.n, len(codes))
    if verify:
        require_partition(out, config)
    return out
