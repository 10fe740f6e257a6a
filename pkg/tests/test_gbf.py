"""Unit tests for generalized Boolean functions."""

import numpy as np
import pytest

from app.services.gbf import (
    GBF,
    GeneralizedBooleanFunction,
    RestrictedVector,
    ZqVector,
    all_bit_vectors,
    evaluate,
    indicator,
    interpolate,
    order,
    reconstruct,
    restrict,
)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def random_function(rng, m, q):
    return GeneralizedBooleanFunction(m, q, rng.integers(0, q, size=1 << m))


class TestEvaluate:
    """Tests for truth tables under LSB-first indexing."""

    def test_known_truth_table(self):
        """2x0 + x1x2 over Z_4 with three variables."""
        f = GBF.from_terms(3, 4, {(0,): 2, (1, 2): 1})
        assert evaluate(f).tolist() == [0, 2, 0, 2, 0, 2, 1, 3]

    def test_constant(self):
        f = GBF.constant(2, 8, 5)
        assert evaluate(f).tolist() == [5, 5, 5, 5]

    def test_zero_variables(self):
        """m = 0 gives a single value."""
        f = GeneralizedBooleanFunction(0, 4, [3])
        assert evaluate(f).tolist() == [3]

    def test_coefficients_reduced(self):
        f = GeneralizedBooleanFunction(1, 4, [5, -1])
        assert f.coeffs.tolist() == [1, 3]

    def test_rejects_odd_modulus(self):
        with pytest.raises(ValueError):
            GeneralizedBooleanFunction(2, 3, [0, 0, 0, 0])

    def test_rejects_wrong_table_length(self):
        with pytest.raises(ValueError):
            GeneralizedBooleanFunction(2, 4, [0, 0, 0])


class TestInterpolate:
    """Tests for recovering the ANF from a truth table."""

    def test_inverts_evaluate(self, rng):
        """interpolate(evaluate(f)) == f for random functions."""
        for m, q in [(1, 2), (3, 4), (4, 8), (5, 16)]:
            for _ in range(5):
                f = random_function(rng, m, q)
                assert interpolate(evaluate(f)) == f

    def test_known_anf(self):
        f = interpolate(ZqVector(4, [0, 2, 0, 2, 0, 2, 1, 3]))
        assert f == GBF.from_terms(3, 4, {(0,): 2, (1, 2): 1})
        assert str(f) == "2x0 + x1x2"

    def test_plain_sequence_needs_modulus(self):
        with pytest.raises(ValueError):
            interpolate([0, 1, 1, 0])

    def test_length_must_be_power_of_two(self):
        with pytest.raises(ValueError):
            interpolate([0, 1, 1], q=2)

    def test_length_must_match_m(self):
        with pytest.raises(ValueError):
            interpolate(ZqVector(2, [0, 1, 1, 0]), m=3)


class TestOrder:
    """Tests for the algebraic order."""

    def test_quadratic(self):
        assert order(GBF.from_terms(3, 4, {(0,): 2, (1, 2): 1})) == 2

    def test_constant_has_order_zero(self):
        assert order(GBF.constant(3, 4, 1)) == 0

    def test_zero_function_has_order_zero(self):
        assert order(GBF.zero(3, 4)) == 0

    def test_full_product(self):
        assert GBF.from_terms(4, 2, {(0, 1, 2, 3): 1}).order() == 4


class TestArithmetic:
    """Tests for sums and pointwise products."""

    def test_sum_matches_truth_tables(self, rng):
        f, g = random_function(rng, 3, 8), random_function(rng, 3, 8)
        expected = (evaluate(f).values + evaluate(g).values) % 8
        assert evaluate(f + g).tolist() == expected.tolist()

    def test_product_is_pointwise(self, rng):
        f, g = random_function(rng, 3, 4), random_function(rng, 3, 4)
        expected = (evaluate(f).values * evaluate(g).values) % 4
        assert evaluate(f * g).tolist() == expected.tolist()

    def test_variables_are_idempotent(self):
        x0 = GBF.variable(2, 4, 0)
        assert x0 * x0 == x0

    def test_integer_operands(self):
        x0 = GBF.variable(1, 4, 0)
        assert (1 - x0).coeffs.tolist() == [1, 3]
        assert (x0 * 2).coeffs.tolist() == [0, 2]

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            GBF.variable(2, 4, 0) + GBF.variable(2, 8, 0)


class TestRestrict:
    """Tests for restriction and reconstruction."""

    def test_restricted_function(self):
        """x0x1 + x2 with x2 = 1 becomes x0x1 + 1."""
        f = GBF.from_terms(3, 2, {(0, 1): 1, (2,): 1})
        part, vector = restrict(f, [2], [1])
        assert part == GBF.from_terms(3, 2, {(0, 1): 1, (): 1})
        assert vector.support.tolist() == [False] * 4 + [True] * 4
        assert vector.weight == 4

    def test_restricted_vector_keeps_values_on_support(self, rng):
        f = random_function(rng, 4, 4)
        values = evaluate(f).values
        part, vector = restrict(f, [1, 3], [1, 0])
        for i in range(16):
            on_support = (i >> 1) & 1 == 1 and (i >> 3) & 1 == 0
            assert vector.support[i] == on_support
            if on_support:
                assert vector.exponents[i] == values[i]
                assert evaluate(part).values[i] == values[i]

    def test_empty_restriction_is_identity(self, rng):
        f = random_function(rng, 3, 4)
        part, vector = restrict(f, [], [])
        assert part == f
        assert vector.is_full

    def test_restricted_part_does_not_depend_on_fixed_variable(self, rng):
        f = random_function(rng, 4, 8)
        part, _ = restrict(f, [0, 2], [1, 1])
        assert not part.depends_on(0)
        assert not part.depends_on(2)

    @pytest.mark.parametrize("q", [2, 4, 8])
    def test_restriction_is_additive(self, rng, q):
        for x in [(0,), (1, 3), (0, 2, 3)]:
            f, g = random_function(rng, 4, q), random_function(rng, 4, q)
            for d in all_bit_vectors(len(x)):
                whole, vector = restrict(f + g, x, d)
                left, left_vector = restrict(f, x, d)
                right, right_vector = restrict(g, x, d)
                assert whole == left + right
                support = vector.support
                assert np.array_equal(support, left_vector.support)
                summed = (left_vector.exponents + right_vector.exponents) % q
                assert np.array_equal(vector.exponents[support], summed[support])

    def test_reconstruct_inverts_restrict(self, rng):
        for x in [(0,), (1, 3), (0, 1, 2)]:
            f = random_function(rng, 4, 4)
            parts = {d: restrict(f, x, d)[0] for d in all_bit_vectors(len(x))}
            assert reconstruct(parts, x) == f

    def test_reconstruct_needs_every_part(self, rng):
        f = random_function(rng, 3, 4)
        with pytest.raises(ValueError):
            reconstruct({(0,): restrict(f, [2], [0])[0]}, [2])

    def test_reconstruct_rejects_dependent_part(self):
        x2 = GBF.variable(3, 2, 2)
        with pytest.raises(ValueError):
            reconstruct({(0,): x2, (1,): x2}, [2])

    def test_rejects_unsorted_indices(self):
        f = GBF.zero(3, 2)
        with pytest.raises(ValueError):
            restrict(f, [2, 1], [0, 0])

    def test_rejects_non_bits(self):
        with pytest.raises(ValueError):
            restrict(GBF.zero(3, 2), [1], [2])

    def test_indicator_selects_points(self):
        ind = indicator(3, 4, [0, 2], [1, 0])
        values = evaluate(ind).tolist()
        assert values == [1 if (i & 1) and not (i >> 2) & 1 else 0 for i in range(8)]


class TestSerialization:
    """Tests for the ANF dict form and string output."""

    def test_to_dict(self):
        f = GBF.from_terms(2, 4, {(0, 1): 2, (): 1})
        assert f.to_dict() == {"m": 2, "q": 4, "coeffs": [1, 0, 0, 2]}
        assert GBF.from_dict(f.to_dict()) == f

    def test_zero_string(self):
        assert str(GBF.zero(2, 2)) == "0"


class TestVectors:
    """Tests for Z_q vectors and restricted polyphase vectors."""

    def test_entries_must_be_reduced(self):
        with pytest.raises(ValueError):
            ZqVector(4, [0, 4])

    def test_reduce(self):
        assert ZqVector.reduce(4, [5, -1]).tolist() == [1, 3]

    def test_values_are_read_only(self):
        v = ZqVector(4, [0, 1])
        with pytest.raises(ValueError):
            v.values[0] = 3

    def test_polyphase_entries(self):
        v = RestrictedVector(4, [0, 1, 2, 3], [True, True, True, False])
        assert np.allclose(v.to_complex(), [1, 1j, -1, 0])
        assert v.weight == 3
        assert not v.is_full
