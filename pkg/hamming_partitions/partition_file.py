# hamming_partitions/partition_file.py
"""
Text format for partitions:

    HPART1 <n> <m> <n+1>
    component <index> <leader>
    <generator row>            (n-m rows)
    ...

Vectors are '0'/'1' strings with coordinate k at string position k-1.
Blank lines and lines starting with '#' are ignored. Parity-extended
partitions use the tag HPART1E, length n+1, and give each component's
even-weight representative in place of the leader.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .codes import Coset, LinearCode
from .config_schema import VerificationConfig
from .gf2core import BitMatrix, BitVector
from .partitions import (
    CodePartition,
    ExtendedPartition,
    VerificationError,
    uniformity,
    verify_partition,
)
from .recipes import ImportedPartition, check_import_name, import_label

logger = logging.getLogger(__name__)

FORMAT_TAG = "HPART1"
EXTENDED_TAG = "HPART1E"

Line = Tuple[int, str]


class PartitionFileError(ValueError):
    """Malformed partition file; line is 1-based when the fault has a position."""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.line = line
        self.source = source
        where = f"{source}:" if source else ""
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


# ------------------------- Writing ------------------------- #

def _serialize(tag: str, length: int, m: int, vectors: Sequence[BitVector], codes: Sequence[LinearCode]) -> str:
    out = [f"{tag} {length} {m} {len(codes)}"]
    for k, (vec, code) in enumerate(zip(vectors, codes)):
        out.append(f"component {k} {vec.to_string()}")
        out.extend(v.to_string() for v in code.generator.vectors)
    return "\n".join(out) + "\n"


def serialize(p: CodePartition) -> str:
    return _serialize(FORMAT_TAG, p.length, p.m, [c.leader for c in p.components], p.codes)


def serialize_extended(q: ExtendedPartition) -> str:
    m = (q.length).bit_length() - 1
    return _serialize(EXTENDED_TAG, q.length, m, [c.representative for c in q.components], q.codes)


def write_partition(p: Union[CodePartition, ExtendedPartition], path: str) -> Path:
    target = Path(path)
    text = serialize_extended(p) if isinstance(p, ExtendedPartition) else serialize(p)
    target.write_text(text, encoding="utf-8")
    logger.info("Wrote partition of length %d to %s", p.length, target)
    return target


# ------------------------- Reading ------------------------- #

def _content_lines(text: str) -> Iterator[Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _vector(text: str, n: int, line: int, source: Optional[str]) -> BitVector:
    if len(text) != n:
        raise PartitionFileError(f"expected a vector of length {n}, got {len(text)} characters", line, source)
    try:
        return BitVector.from_string(text)
    except ValueError as e:
        raise PartitionFileError(str(e), line, source) from e


def _header(lines: List[Line], source: Optional[str]) -> Tuple[str, int, int, int]:
    if not lines:
        raise PartitionFileError("empty partition file", None, source)
    number, text = lines[0]
    parts = text.split()
    if len(parts) != 4 or parts[0] not in (FORMAT_TAG, EXTENDED_TAG):
        raise PartitionFileError(f"expected header '{FORMAT_TAG} <n> <m> <count>'", number, source)
    try:
        length, m, count = (int(x) for x in parts[1:])
    except ValueError as e:
        raise PartitionFileError("header fields must be integers", number, source) from e
    n = length - 1 if parts[0] == EXTENDED_TAG else length
    if m < 2 or n != (1 << m) - 1:
        raise PartitionFileError(f"length {length} does not fit m={m}", number, source)
    if count != n + 1:
        raise PartitionFileError(f"component count {count}, expected {n + 1}", number, source)
    return parts[0], length, m, count


def _components(lines: List[Line], length: int, dimension: int, count: int,
                source: Optional[str]) -> List[Tuple[int, int, BitVector, LinearCode]]:
    """(index, line, vector, code) per component block, sorted by index."""
    seen: Dict[int, int] = {}
    out: List[Tuple[int, int, BitVector, LinearCode]] = []
    pos = 1
    while pos < len(lines):
        number, line = lines[pos]
        parts = line.split()
        if len(parts) != 3 or parts[0] != "component":
            raise PartitionFileError("expected 'component <index> <vector>'", number, source)
        try:
            index = int(parts[1])
        except ValueError as e:
            raise PartitionFileError(f"bad component index {parts[1]!r}", number, source) from e
        if not 0 <= index < count:
            raise PartitionFileError(f"component index {index} outside 0..{count - 1}", number, source)
        if index in seen:
            raise PartitionFileError(f"component {index} already defined at line {seen[index]}", number, source)
        seen[index] = number
        vector = _vector(parts[2], length, number, source)
        rows = lines[pos + 1: pos + 1 + dimension]
        if len(rows) < dimension or any(r.startswith("component") for _, r in rows):
            raise PartitionFileError(f"component {index} needs {dimension} generator rows", number, source)
        generator = BitMatrix.from_vectors(length, [_vector(r, length, rn, source) for rn, r in rows])
        try:
            code = LinearCode.from_generator(generator)
        except ValueError as e:
            raise PartitionFileError(f"component {index}: {e}", number, source) from e
        out.append((index, number, vector, code))
        pos += 1 + dimension
    if len(seen) != count:
        missing = min(set(range(count)) - set(seen))
        raise PartitionFileError(f"{count - len(seen)} components missing, first is {missing}",
                                 lines[-1][0], source)
    return sorted(out, key=lambda item: item[0])


def parse(text: str, source: Optional[str] = None) -> CodePartition:
    """Parse and structurally validate; no partial partition is ever returned."""
    lines = list(_content_lines(text))
    tag, n, m, count = _header(lines, source)
    if tag != FORMAT_TAG:
        raise PartitionFileError(f"expected a {FORMAT_TAG} file, found {tag}", lines[0][0], source)
    comps: List[Coset] = []
    for index, line, leader, code in _components(lines, n, n - m, count, source):
        if not code.is_hamming_shaped:
            raise PartitionFileError(f"component {index}: generator rows do not span a Hamming code", line, source)
        if leader != BitVector.unit(n, index):
            raise PartitionFileError(f"component {index} must have leader e_{index}", line, source)
        comps.append(Coset(code, leader, leader))
    try:
        return CodePartition(n, tuple(comps))
    except ValueError as e:
        raise PartitionFileError(str(e), None, source) from e


def parse_extended(text: str, source: Optional[str] = None) -> ExtendedPartition:
    lines = list(_content_lines(text))
    tag, length, m, count = _header(lines, source)
    if tag != EXTENDED_TAG:
        raise PartitionFileError(f"expected an {EXTENDED_TAG} file, found {tag}", lines[0][0], source)
    comps: List[Coset] = []
    for index, line, rep, code in _components(lines, length, length - 1 - m, count, source):
        if rep.weight % 2:
            raise PartitionFileError(f"component {index} has an odd-weight representative", line, source)
        comps.append(Coset.of(code, rep))
    return ExtendedPartition(length, tuple(comps))


def _read_text(path: str) -> Tuple[str, str]:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"Partition file not found: {p}")
    return p.read_text(encoding="utf-8"), str(p)


def read_partition(path: str) -> CodePartition:
    text, source = _read_text(path)
    return parse(text, source=source)


def read_any(path: str) -> Union[CodePartition, ExtendedPartition]:
    """Dispatch on the header tag."""
    text, source = _read_text(path)
    first = next(_content_lines(text), (None, ""))[1]
    if first.startswith(EXTENDED_TAG + " "):
        return parse_extended(text, source=source)
    return parse(text, source=source)


# ------------------------- Certified import ------------------------- #

def certify_import(partition: CodePartition, name: str, expected_uniformity: Optional[int] = None,
                   config: Optional[VerificationConfig] = None) -> ImportedPartition:
    """Accept a partition only if it certifies valid and uniform (at expected_uniformity when claimed)."""
    check_import_name(name)
    cert = verify_partition(partition, config=config)
    if not cert.valid:
        logger.error("Rejecting %s: %s", name, cert.describe())
        raise VerificationError(f"{name}: {cert.describe()}")
    report = uniformity(partition, config)
    if not report.is_uniform:
        logger.error("Rejecting %s: %s", name, report.describe())
        raise VerificationError(f"{name}: {report.describe()}")
    if expected_uniformity is not None and report.uniformity_number != expected_uniformity:
        logger.error("Rejecting %s: claimed uniformity %d, certified %d",
                     name, expected_uniformity, report.uniformity_number)
        raise VerificationError(
            f"{name}: claimed uniformity {expected_uniformity}, certified {report.uniformity_number}"
        )
    logger.info("Accepted %s: n=%d, uniformity %d", name, partition.length, report.uniformity_number)
    return ImportedPartition(name, partition, report.uniformity_number)


def import_verified(path: str, name: Optional[str] = None, expected_uniformity: Optional[int] = None,
                    config: Optional[VerificationConfig] = None) -> ImportedPartition:
    """Read and certify a partition file; without a name, the file stem is turned into one."""
    partition = read_partition(path)
    label = name
    if label is None:
        try:
            label = import_label(Path(path).stem)
        except ValueError as err:
            raise PartitionFileError(str(err), source=path) from err
    return certify_import(partition, label, expected_uniformity, config)
