import random

import pytest

from hamming_partitions.codes import Coset, distinct_hamming_codes, hamming_code, intersection_dim
from hamming_partitions.gf2core import BitVector
from hamming_partitions.mollard import (
    MollardFrame,
    construction_b,
    mollard_code,
    mollard_parity_check,
    p_vectors,
)
from hamming_partitions.partitions import (
    CodePartition,
    VerificationError,
    code_blocks,
    phelps_search,
    trivial_partition,
    uniformity,
    verify_partition,
)


def test_frame_positions():
    f = MollardFrame(3, 7)
    assert f.n == 31
    assert f.matrix(1, 1) == 1
    assert f.matrix(3, 7) == 21
    assert f.y(1) == 22 and f.y(3) == 24
    assert f.z(1) == 25 and f.z(7) == 31
    assert f.grid_position(0, 0) == 0
    assert f.grid_position(2, 0) == f.y(2)
    assert f.grid_position(0, 5) == f.z(5)
    for position in range(32):
        assert f.grid_position(*f.cell_of(position)) == position
    with pytest.raises(ValueError):
        f.matrix(4, 1)


def test_p_vectors_are_row_and_column_parities():
    f = MollardFrame(3, 3)
    # rows: 110 / 000 / 111
    x = BitVector.from_positions(9, [1, 2, 7, 8, 9])
    p1, p2 = p_vectors(x, f)
    assert p1.support() == [3]
    assert p2.support() == [3]


@pytest.mark.parametrize("ml,mt", [(2, 2), (2, 3), (3, 3)])
def test_mollard_code_is_hamming(ml, mt):
    cl, ct = hamming_code(ml), hamming_code(mt)
    code = mollard_code(cl, ct)
    n = cl.length * ct.length + cl.length + ct.length
    assert code.length == n
    assert code.is_hamming_shaped
    assert code.dimension == n - ml - mt
    # explicit generator is checked against the parity check when first used
    assert code.generator.nrows == code.dimension


def test_mollard_code_contains_its_defining_words():
    rng = random.Random(7)
    cl, ct = hamming_code(2), hamming_code(3)
    f = MollardFrame(3, 7)
    code = mollard_code(cl, ct)
    ys = list(cl.codewords())
    zs = list(ct.codewords())
    for _ in range(50):
        x = BitVector(f.lt, rng.getrandbits(f.lt))
        p1, p2 = p_vectors(x, f)
        y = rng.choice(ys) ^ p1.bits
        z = rng.choice(zs) ^ p2.bits
        word = x.bits | (y << f.lt) | (z << (f.lt + f.l))
        assert code.contains(BitVector(f.n, word))


def test_parity_check_columns_pair_input_columns():
    cl, ct = hamming_code(2), hamming_code(3)
    f = MollardFrame(3, 7)
    cols = mollard_parity_check(cl, ct).columns()
    for i in range(4):
        for j in range(8):
            position = f.grid_position(i, j)
            if position == 0:
                continue
            left = cl.columns[i - 1] if i else 0
            right = ct.columns[j - 1] if j else 0
            assert cols[position - 1] == left | (right << 2)


def test_mollard_intersections_add_up():
    h7 = hamming_code(3)
    other = h7.permute([2, 1, 3, 4, 5, 6, 7])
    a = mollard_code(h7, h7)
    b = mollard_code(other, h7)
    assert intersection_dim(a, b) == 49 + intersection_dim(h7, other) + 4


def test_trivial_composition_is_trivial(trivial3):
    p = construction_b(trivial3, trivial3)
    assert p.length == 15
    assert len(code_blocks(p)) == 1
    assert uniformity(p).uniformity_number == 11


def test_component_leaders_sit_on_the_grid(trivial3, phelps7):
    p = construction_b(trivial3, phelps7)
    f = MollardFrame(3, 7)
    for i in range(4):
        for j in range(8):
            k = f.grid_position(i, j)
            assert p.components[k].leader == BitVector.unit(31, k)


def test_length_31_partition_has_uniformity_24(trivial3, phelps7):
    p = construction_b(trivial3, phelps7)
    cert = verify_partition(p)
    assert cert.valid
    assert cert.pairs_checked == 496
    report = uniformity(p)
    assert report.is_uniform
    assert report.uniformity_number == 1 + 2 + 21


@pytest.mark.parametrize("left,right,expected", [
    ("t3", "t3", 11),
    ("t3", "p7", 24),
    ("p7", "t3", 24),
    ("t3", "t7", 26),
    ("t7", "t7", 57),
    ("p7", "t7", 55),
    ("t7", "p7", 55),
])
def test_composition_law_with_a_trivial_operand(left, right, expected, trivial3, trivial7, phelps7):
    seeds = {"t3": trivial3, "t7": trivial7, "p7": phelps7}
    l, r = seeds[left], seeds[right]
    p = construction_b(l, r)
    report = uniformity(p)
    assert report.is_uniform
    assert report.uniformity_number == expected
    assert expected == (uniformity(l).uniformity_number + uniformity(r).uniformity_number
                        + l.length * r.length)


def test_two_nontrivial_operands_break_uniformity(phelps7):
    p = construction_b(phelps7, phelps7)
    assert verify_partition(p).valid
    report = uniformity(p)
    assert not report.is_uniform
    # components sharing a row or column differ from the rest
    assert report.distinct_code_values == (53, 55)


def test_length_127_row(phelps7):
    p = construction_b(phelps7, trivial_partition(hamming_code(4)))
    assert p.length == 127
    assert verify_partition(p).valid
    assert uniformity(p).uniformity_number == 2 + 11 + 105


def test_several_length_7_partitions_compose(trivial3):
    for seed in phelps_search(2, limit=3):
        p = construction_b(trivial3, seed)
        assert uniformity(p).uniformity_number == 24


def test_construction_b_rejects_invalid_inputs(trivial3, h7):
    comps = list(trivial_partition(h7).components)
    other = h7.permute([2, 1, 3, 4, 5, 6, 7])
    e = BitVector.unit(7, 4)
    comps[4] = Coset(other, e, e)
    with pytest.raises(VerificationError):
        construction_b(trivial3, CodePartition(7, tuple(comps)))


@pytest.mark.slow
def test_length_1023_guarded_chain(trivial3, trivial7, phelps7):
    inner = construction_b(trivial3, phelps7)
    middle = construction_b(trivial7, inner)
    p = construction_b(trivial3, middle)
    assert p.length == 1023
    assert uniformity(p).uniformity_number == 1 + (4 + 24 + 217) + 765


def test_mollard_code_of_two_length_three_codes_is_every_defining_word():
    cl = ct = hamming_code(2)
    f = MollardFrame(3, 3)
    words = set()
    for bits in range(1 << f.lt):
        x = BitVector(f.lt, bits)
        p1, p2 = p_vectors(x, f)
        for y in cl.codewords():
            for z in ct.codewords():
                words.add(x.bits | ((y ^ p1.bits) << f.lt) | ((z ^ p2.bits) << (f.lt + f.l)))
    assert len(words) == (1 << 9) * 2 * 2
    assert words == set(mollard_code(cl, ct).codewords())


@pytest.mark.parametrize("ml,mt,take", [(2, 2, None), (2, 3, None), (3, 3, 5)])
def test_mollard_intersections_for_all_code_pairs(ml, mt, take):
    lefts = distinct_hamming_codes(ml)[:take]
    rights = distinct_hamming_codes(mt)[:take]
    l, t = lefts[0].length, rights[0].length
    built = {(i, j): mollard_code(a, b) for i, a in enumerate(lefts) for j, b in enumerate(rights)}
    for (i, j), first in built.items():
        for (r, s), second in built.items():
            expected = l * t + intersection_dim(lefts[i], lefts[r]) + intersection_dim(rights[j], rights[s])
            assert intersection_dim(first, second) == expected
