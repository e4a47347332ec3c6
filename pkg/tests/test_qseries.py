import cmath
import math
import random
from fractions import Fraction

import pytest

from supertriplet.qseries import (
    COMPLEX,
    EXACT,
    CutoffUnderflowError,
    QExpansion,
    QSeriesError,
    product_expansion,
)

from oracles import partitions_into_distinct_parts, pentagonal_eta_terms


def random_series(rng, n_terms=6, cutoff=None):
    terms = {}
    for _ in range(n_terms):
        e = Fraction(rng.randint(0, 40), rng.choice([1, 2, 3, 4, 6, 8, 12, 24]))
        terms[e] = Fraction(rng.randint(-9, 9))
    return QExpansion(terms, cutoff=cutoff)


class TestConstruction:
    def test_zero_coefficients_dropped(self):
        s = QExpansion({Fraction(1, 2): 0, Fraction(1): 3})
        assert len(s) == 1

    def test_terms_sorted(self):
        s = QExpansion({Fraction(3): 1, Fraction(1, 2): 2})
        assert [e for e, _ in s.terms] == [Fraction(1, 2), Fraction(3)]

    def test_truncation_at_build(self):
        s = QExpansion({Fraction(5): 1, Fraction(1): 1}, cutoff=3)
        assert [e for e, _ in s.terms] == [Fraction(1)]

    def test_domain_inference(self):
        assert QExpansion({0: Fraction(1)}).domain == EXACT
        assert QExpansion({0: 1.5}).domain == COMPLEX


class TestArithmetic:
    def test_add_same_exponent(self):
        a = QExpansion({Fraction(1, 2): 1})
        assert (a + a).coeff(Fraction(1, 2)) == 2

    def test_geometric_mul(self):
        one_minus_q = QExpansion({0: 1, 1: -1})
        geo = QExpansion({n: 1 for n in range(10)}, cutoff=10)
        assert (one_minus_q * geo - QExpansion.one(10)).is_zero()

    def test_scale(self):
        s = QExpansion({Fraction(1, 24): 1}).scale(2)
        assert s.coeff(Fraction(1, 24)) == 2

    def test_mul_cutoff_rule(self):
        a = QExpansion({Fraction(1, 2): 1}, cutoff=10)
        b = QExpansion({Fraction(2): 1}, cutoff=8)
        prod = a * b
        # min(10 + 2, 8 + 1/2)
        assert prod.cutoff == Fraction(17, 2)

    def test_mul_window_never_closes_for_canonical_operands(self):
        # stored exponents sit strictly below their cutoff, so the product
        # window always contains the leading term
        a = QExpansion({Fraction(10): 1}, cutoff=12)
        b = QExpansion({Fraction(10): 1}, cutoff=12)
        prod = a * b
        assert prod.coeff(20) == 1
        assert prod.cutoff == 22

    def test_product_expansion_underflow(self):
        with pytest.raises(CutoffUnderflowError):
            product_expansion(1, 0, Fraction(5), Fraction(5))

    def test_beyond_window_content_drops_to_known_zero(self):
        a = QExpansion({Fraction(1, 2): 1}, cutoff=10)
        b = QExpansion({Fraction(5): 1}, cutoff=Fraction(1, 4))
        total = a + b
        assert total.cutoff == Fraction(1, 4)
        assert total.is_zero()

    def test_ring_axioms_on_random_triples(self):
        rng = random.Random(2718)
        for _ in range(25):
            a = random_series(rng, cutoff=30)
            b = random_series(rng, cutoff=25)
            c = random_series(rng, cutoff=35)
            assert (((a + b) + c) - (a + (b + c))).is_zero()
            assert (((a * b) * c) - (a * (b * c))).is_zero()
            assert ((a * (b + c)) - (a * b + a * c)).is_zero()

    def test_reciprocal_inverts(self):
        rng = random.Random(99)
        for _ in range(10):
            s = random_series(rng, cutoff=30) + QExpansion({Fraction(-1, 3): 5})
            inv = s.reciprocal()
            assert ((s * inv) - QExpansion.one()).is_zero()

    def test_division_by_series(self):
        num = QExpansion({0: 1, 1: 1}, cutoff=12)
        den = QExpansion({0: 1, 1: -1}, cutoff=12)
        q = num / den
        # (1+q)/(1-q) = 1 + 2q + 2q^2 + ...
        assert q.coeff(0) == 1
        assert q.coeff(1) == 2
        assert q.coeff(5) == 2

    def test_reciprocal_monomial_exact(self):
        s = QExpansion.monomial(Fraction(1, 24), 3)
        inv = s.reciprocal()
        assert inv.coeff(Fraction(-1, 24)) == Fraction(1, 3)
        assert inv.cutoff is None


class TestSubstitutions:
    def test_half_exponents(self):
        s = QExpansion({1: 1})
        assert s.half_exponents().coeff(Fraction(1, 2)) == 1

    def test_half_exponents_multiple_terms(self):
        s = QExpansion({Fraction(1, 24): 2, 1: 1})
        h = s.half_exponents()
        assert h.coeff(Fraction(1, 48)) == 2
        assert h.coeff(Fraction(1, 2)) == 1

    def test_round_trip(self):
        rng = random.Random(31)
        s = random_series(rng, cutoff=20)
        assert (s.half_exponents().double_exponents() - s).is_zero()

    def test_shift_tau_half_integer(self):
        s = QExpansion({Fraction(1, 2): 1})
        out = s.shift_tau()
        assert out.domain == COMPLEX
        assert abs(out.coeff(Fraction(1, 2)) + 1) < 1e-15

    def test_shift_tau_integer(self):
        s = QExpansion({1: 1})
        assert abs(s.shift_tau().coeff(1) - 1) < 1e-15

    def test_shift_tau_24th(self):
        s = QExpansion({Fraction(1, 24): 1})
        expected = cmath.exp(1j * math.pi / 12)
        assert abs(s.shift_tau().coeff(Fraction(1, 24)) - expected) < 1e-15

    def test_shift_tau_twice_is_double_phase(self):
        rng = random.Random(5)
        s = random_series(rng, cutoff=30)
        twice = s.shift_tau().shift_tau()
        for e, c in s.terms:
            phase = cmath.exp(4j * math.pi * float(e - math.floor(e)))
            assert abs(twice.coeff(e) - complex(c) * phase) < 1e-12


class TestEvaluate:
    def test_constant(self):
        assert QExpansion.one().evaluate(0.3 + 0.9j).value == pytest.approx(1)

    def test_single_power(self):
        val = QExpansion({1: 1}).evaluate(1j).value
        assert abs(val - math.exp(-2 * math.pi)) < 1e-15

    def test_eta_special_value_at_i(self):
        # eta(i) = Gamma(1/4) / (2 pi^{3/4})
        eta = product_expansion(-1, 0, Fraction(1, 24), 50)
        expected = math.gamma(0.25) / (2 * math.pi ** 0.75)
        value = eta.evaluate(1j).value
        assert abs(value - expected) < 1e-8

    def test_additivity(self):
        rng = random.Random(13)
        a = random_series(rng, cutoff=30)
        b = random_series(rng, cutoff=30)
        tau = 0.2 + 0.8j
        lhs = (a + b).evaluate(tau).value
        rhs = a.evaluate(tau).value + b.evaluate(tau).value
        assert abs(lhs - rhs) < 1e-12

    def test_error_bound_reported(self):
        s = QExpansion({0: 1}, cutoff=100)
        res = s.evaluate(1j, growth_bound=2.0)
        assert res.error_bound < 1e-200
        assert res.error_bound > 0

    def test_lower_half_plane_rejected(self):
        with pytest.raises(QSeriesError):
            QExpansion.one().evaluate(-1j)


class TestProductExpansion:
    def test_eta_pentagonal_window_60(self):
        cutoff = Fraction(60)
        eta = product_expansion(-1, 0, Fraction(1, 24), cutoff)
        expected = QExpansion(pentagonal_eta_terms(cutoff), cutoff=cutoff)
        assert (eta - expected).is_zero()

    def test_f2_distinct_parts(self):
        cutoff = Fraction(30)
        f2 = product_expansion(1, 0, Fraction(1, 24), cutoff)
        counts = partitions_into_distinct_parts(30)
        for g in range(29):
            assert f2.coeff(Fraction(1, 24) + g) == counts[g]

    def test_f1_leading_terms(self):
        f1 = product_expansion(-1, Fraction(1, 2), Fraction(-1, 48), 3)
        base = Fraction(-1, 48)
        assert f1.coeff(base) == 1
        assert f1.coeff(base + Fraction(1, 2)) == -1
        assert f1.coeff(base + Fraction(3, 2)) == -1
        assert f1.coeff(base + 2) == 1

    def test_cutoff_precondition(self):
        with pytest.raises(QSeriesError):
            product_expansion(1, 0, Fraction(5), 4)


class TestSerialization:
    def test_round_trip_exact(self):
        rng = random.Random(21)
        s = random_series(rng, cutoff=18)
        again = QExpansion.from_json_dict(s.to_json_dict())
        assert again == s

    def test_round_trip_complex(self):
        s = QExpansion({Fraction(1, 3): 0.5 + 2j}, cutoff=4)
        again = QExpansion.from_json_dict(s.to_json_dict())
        assert again.domain == COMPLEX
        assert abs(again.coeff(Fraction(1, 3)) - (0.5 + 2j)) < 1e-15

    def test_integers_serialized_as_strings(self):
        d = QExpansion({Fraction(1, 2): Fraction(3, 7)}, cutoff=2).to_json_dict()
        assert d["cutoff"] == ["2", "1"]
        assert d["terms"][0]["exp"] == ["1", "2"]
        assert d["terms"][0]["coef"] == ["3", "7"]
