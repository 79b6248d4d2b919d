import pytest

from hamming_partitions.codes import (
    Coset,
    LinearCode,
    canonical_leader,
    coset_leader,
    coset_intersection_size_log,
    distinct_hamming_codes,
    extend,
    extend_coset,
    hamming_code,
    intersection_dim,
    pair_profile,
    puncture,
    puncture_coset,
)
from hamming_partitions.gf2core import BitMatrix, BitVector


@pytest.mark.parametrize("m,n,k", [(2, 3, 1), (3, 7, 4), (4, 15, 11), (5, 31, 26)])
def test_hamming_parameters(m, n, k):
    h = hamming_code(m)
    assert h.length == n
    assert h.dimension == k
    assert h.is_hamming_shaped


def test_hamming_distance_is_three(h7):
    assert h7.minimum_distance() == 3
    assert sum(1 for _ in h7.codewords()) == 16


def test_column_order_must_be_a_bijection():
    with pytest.raises(ValueError):
        hamming_code(2, [1, 1, 2])


def test_generator_lies_in_the_code(h7):
    for row in h7.generator.vectors:
        assert h7.contains(row)


def test_from_generator_recovers_the_code(h7):
    again = LinearCode.from_generator(h7.generator)
    assert again == h7
    assert again.same_code(h7)


def test_thirty_distinct_codes_of_length_seven():
    codes = distinct_hamming_codes(3)
    assert len(codes) == 30
    assert len({c.key for c in codes}) == 30


def test_intersection_dimensions_of_length_seven_codes(h7):
    codes = distinct_hamming_codes(3)
    values = {intersection_dim(h7, c) for c in codes}
    assert 4 in values
    assert max(v for v in values if v != 4) <= 3
    assert intersection_dim(h7, h7) == 4


def test_every_vector_has_a_weight_one_leader(h7):
    for bits in range(128):
        c = Coset.of(h7, BitVector(7, bits))
        assert c.leader.weight <= 1
        assert c.contains(BitVector(7, bits))
        assert coset_leader(c) == c.leader


def test_canonical_leader_for_non_hamming_code():
    code = LinearCode.from_parity_check(BitMatrix(4, (0b0011,)))
    leader = canonical_leader(code, BitVector(4, 0b0001))
    assert code.syndrome(leader) == code.syndrome(BitVector(4, 0b0001))


def test_cosets_of_one_code_are_disjoint(h7):
    a = Coset.of(h7, BitVector.unit(7, 1))
    b = Coset.of(h7, BitVector.unit(7, 2))
    dim, disjoint = pair_profile(a, b)
    assert disjoint
    assert dim == 4
    assert coset_intersection_size_log(a, a) == 4


def test_coset_intersection_matches_enumeration():
    codes = distinct_hamming_codes(3)
    for other in codes[:6]:
        a = Coset.of(codes[0], BitVector.unit(7, 3))
        b = Coset.of(other, BitVector.unit(7, 5))
        common = set(a.elements()) & set(b.elements())
        size_log = coset_intersection_size_log(a, b)
        if size_log is None:
            assert not common
        else:
            assert len(common) == 2 ** size_log


def test_extension_adds_even_weight(h7):
    ext = extend(h7)
    assert ext.length == 8
    assert ext.dimension == 4
    assert ext.minimum_distance() == 4
    assert all(word.bit_count() % 2 == 0 for word in ext.codewords())


def test_puncture_inverts_extension(h7):
    assert puncture(extend(h7), 8) == h7


def test_puncture_rejects_bad_positions(h7):
    with pytest.raises(ValueError):
        puncture(h7, 0)
    with pytest.raises(ValueError):
        puncture(h7, 8)


def test_extended_coset_round_trip(h7):
    c = Coset.of(h7, BitVector.unit(7, 6))
    ext = extend_coset(c)
    assert ext.representative.weight == 2
    back = puncture_coset(ext, 8)
    assert back == c


def test_extension_preserves_intersections():
    codes = distinct_hamming_codes(3)
    for other in codes[:10]:
        assert intersection_dim(extend(codes[0]), extend(other)) == intersection_dim(codes[0], other)


def test_permuted_code_is_another_hamming_code(h7):
    p = h7.permute([2, 1, 3, 4, 5, 6, 7])
    assert p.is_hamming_shaped
    # swapping coordinates 1 and 2 is not induced by a linear map of the columns
    assert not p.same_code(h7)
    assert p != h7


def test_length_fifteen_cosets_have_weight_one_leaders():
    h15 = hamming_code(4)
    assert h15.minimum_distance() == 3
    leaders = set()
    for bits in range(1 << 15):
        c = Coset.of(h15, BitVector(15, bits))
        assert c.leader.weight <= 1
        assert h15.contains(c.leader + BitVector(15, bits))
        leaders.add(c.leader.bits)
    assert len(leaders) == 16
