"""Unit tests for generalized Reed-Muller codes and code distances."""

import numpy as np
import pytest

from app.models import ZrmParams
from app.services.codes import (
    Generator,
    LinearCode,
    WeightMetric,
    contains,
    min_distance,
    rm_code,
    weight_distribution,
    wt_hamming,
    wt_lee,
    zrm_code,
    zrm_coefficient_constraint,
    zrm_distances,
    zrm_enumerate,
    zrm_label,
    zrm_log2_size,
)
from app.services.errors import EnumerationCapExceeded, NotACodewordError
from app.services.gbf import GBF, ZqVector, evaluate


@pytest.fixture
def zrm_4_1_2_3():
    """ZRM^1_4(2, 3)."""
    return ZrmParams(h=2, p=1, r=2, m=3)


class TestZrmParams:
    """Tests for parameter validation."""

    def test_h_must_exceed_p(self):
        with pytest.raises(ValueError):
            ZrmParams(h=2, p=2, r=2, m=3)

    def test_r_at_least_p(self):
        with pytest.raises(ValueError):
            ZrmParams(h=3, p=2, r=1, m=3)

    def test_r_at_most_m(self):
        with pytest.raises(ValueError):
            ZrmParams(h=1, p=0, r=4, m=3)


class TestCoefficientConstraint:
    """Tests for the per-order coefficient rule."""

    def test_free_and_scaled_orders(self, zrm_4_1_2_3):
        assert zrm_coefficient_constraint(zrm_4_1_2_3, 0) == 0
        assert zrm_coefficient_constraint(zrm_4_1_2_3, 1) == 0
        assert zrm_coefficient_constraint(zrm_4_1_2_3, 2) == 1
        assert zrm_coefficient_constraint(zrm_4_1_2_3, 3) is None


class TestZrmSize:
    """Tests for the closed-form size."""

    @pytest.mark.parametrize(
        "h,p,r,m,expected",
        [(2, 1, 2, 3, 11), (1, 0, 1, 3, 4), (3, 2, 2, 4, 17)],
    )
    def test_log2_size(self, h, p, r, m, expected):
        params = ZrmParams(h=h, p=p, r=r, m=m)
        assert zrm_log2_size(params) == expected
        assert zrm_code(params).size_log2 == expected

    def test_label(self, zrm_4_1_2_3):
        assert zrm_label(zrm_4_1_2_3) == "ZRM^1_4(2,3)"


class TestZrmEnumerate:
    """Tests for codeword enumeration."""

    def test_repetition_code(self):
        words = [w.tolist() for w in zrm_enumerate(ZrmParams(h=1, p=0, r=0, m=1))]
        assert words == [[0, 0], [1, 1]]

    def test_words_are_distinct(self, zrm_4_1_2_3):
        words = {w for w in zrm_enumerate(zrm_4_1_2_3)}
        assert len(words) == 2 ** 11

    def test_every_word_is_a_member(self, zrm_4_1_2_3):
        code = zrm_code(zrm_4_1_2_3)
        for _, batch in code.iter_words():
            assert code.contains_rows(batch).all()

    def test_cap(self, zrm_4_1_2_3):
        with pytest.raises(EnumerationCapExceeded):
            list(zrm_enumerate(zrm_4_1_2_3, cap_log2=10))


class TestMembership:
    """Tests for membership and indexing."""

    def test_scaled_quadratic(self):
        params = ZrmParams(h=2, p=1, r=2, m=2)
        assert contains(params, evaluate(GBF.from_terms(2, 4, {(0, 1): 2})))
        assert not contains(params, evaluate(GBF.from_terms(2, 4, {(0, 1): 1})))

    def test_order_too_high(self):
        word = evaluate(GBF.from_terms(3, 2, {(0, 1, 2): 1}))
        assert word not in rm_code(2, 3)

    def test_index_round_trip(self, zrm_4_1_2_3):
        code = zrm_code(zrm_4_1_2_3)
        for index in [0, 1, 5, 777, code.size - 1]:
            assert code.index_of(code.word(index)) == index

    def test_index_of_rejects_non_member(self):
        code = rm_code(1, 3)
        with pytest.raises(NotACodewordError):
            code.index_of(evaluate(GBF.from_terms(3, 2, {(0, 1): 1})))

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            contains(ZrmParams(h=1, p=0, r=1, m=3), [0, 1])

    def test_batches_match_single_words(self, zrm_4_1_2_3):
        code = zrm_code(zrm_4_1_2_3)
        batch = code.words_between(100, 110)
        for row, index in zip(batch, range(100, 110)):
            assert row.tolist() == code.word(index).tolist()

    def test_subcode_chain(self):
        """ZRM^{p+1}(r+1, m) contains ZRM^p(r, m)."""
        small = zrm_code(ZrmParams(h=3, p=1, r=2, m=4))
        large = zrm_code(ZrmParams(h=3, p=2, r=3, m=4))
        assert small.issubset(large)
        assert not large.issubset(small)


class TestLinearCode:
    """Tests for generic scaled-monomial codes."""

    def test_duplicate_monomials(self):
        with pytest.raises(ValueError):
            LinearCode(2, 2, [Generator(1), Generator(1, 1)])

    def test_shift_out_of_range(self):
        with pytest.raises(ValueError):
            LinearCode(2, 2, [Generator(1, 2)])

    def test_sampling_is_seeded(self, zrm_4_1_2_3):
        code = zrm_code(zrm_4_1_2_3)
        first = code.sample(20, seed=7)
        second = code.sample(20, seed=7)
        assert first[0] == second[0]
        assert np.array_equal(first[1], second[1])
        for index, row in zip(*first):
            assert code.word(index).tolist() == row.tolist()


class TestWeights:
    """Tests for Hamming and Lee weights."""

    def test_hamming(self):
        assert wt_hamming([0, 1, 0, 3]) == 2

    def test_lee(self):
        assert wt_lee(ZqVector(8, [0, 1, 7, 4, 5])) == 0 + 1 + 1 + 4 + 3

    def test_lee_needs_modulus(self):
        with pytest.raises(ValueError):
            wt_lee([1, 2])

    def test_row_wise(self):
        rows = np.array([[0, 1, 2, 3], [0, 0, 0, 2]])
        assert wt_hamming(rows).tolist() == [3, 1]
        assert wt_lee(rows, 4).tolist() == [4, 2]


class TestMinDistance:
    """Tests for brute-force minimum distances."""

    def test_zrm_4_1_2_3(self, zrm_4_1_2_3):
        code = zrm_code(zrm_4_1_2_3)
        assert min_distance(code, WeightMetric.HAMMING) == 2
        assert min_distance(code, WeightMetric.LEE) == 4
        assert zrm_distances(zrm_4_1_2_3) == (2, 4)

    def test_first_order_reed_muller(self):
        assert min_distance(rm_code(1, 3)) == 4

    def test_zrm_8_2_2_4(self):
        params = ZrmParams(h=3, p=2, r=2, m=4)
        code = zrm_code(params)
        assert min_distance(code, WeightMetric.HAMMING) == 4
        assert min_distance(code, WeightMetric.LEE) == 16
        assert zrm_distances(params) == (4, 16)

    def test_zero_code(self):
        assert min_distance(LinearCode(2, 1, [])) is None

    def test_weight_distribution(self):
        """RM(1, 3): the zero word, the all-ones word and 14 words of weight 4."""
        assert weight_distribution(rm_code(1, 3)) == {0: 1, 4: 14, 8: 1}
