import random
from fractions import Fraction

import pytest

from stepcalc.nonarch import (
    EPSILON,
    NoStandardPartError,
    Poly,
    RatFunc,
    compare,
    deriv_at,
    poly_gcd,
)

ONE = RatFunc.from_fraction(1)
ZERO = RatFunc.from_fraction(0)


def random_poly(rng: random.Random, max_degree: int = 2, allow_zero: bool = True) -> Poly:
    while True:
        coeffs = [
            Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            for _ in range(rng.randint(0, max_degree) + 1)
        ]
        p = Poly(coeffs)
        if allow_zero or not p.is_zero:
            return p


def random_ratfunc(rng: random.Random) -> RatFunc:
    return RatFunc(random_poly(rng), random_poly(rng, allow_zero=False))


class TestPoly:
    def test_trailing_zeros_stripped(self):
        assert Poly((1, 2, 0, 0)).coeffs == (Fraction(1), Fraction(2))
        assert Poly((0, 0)).is_zero

    def test_divmod_roundtrip(self):
        a = Poly((1, 0, 2, 3))
        b = Poly((1, 1))
        q, r = divmod(a, b)
        assert q * b + r == a

    def test_gcd_is_monic_common_factor(self):
        common = Poly((1, 1))
        g = poly_gcd(common * Poly((2, 3)), common * Poly((-1, 0, 1)))
        assert g == common

    def test_compose(self):
        p = Poly((0, 0, 1))  # x^2
        shifted = p.compose(Poly((3, 1)))  # (x+3)^2
        assert shifted == Poly((9, 6, 1))


class TestFieldOps:
    def test_eps_plus_eps(self):
        assert EPSILON + EPSILON == RatFunc(Poly((0, 2)))

    def test_eps_times_inverse(self):
        assert EPSILON * (ONE / EPSILON) == ONE

    def test_div_roundtrip(self):
        r = ONE / (ONE + EPSILON)
        assert r * (ONE + EPSILON) == ONE

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_canonical_form_makes_equality_semantic(self):
        a = RatFunc(Poly((0, 2)), Poly((2,)))
        b = RatFunc(Poly((0, 1)))
        assert a == b
        assert hash(a) == hash(b)


class TestOrderAndSign:
    def test_order_examples(self):
        assert EPSILON.order() == 1
        assert (ONE / EPSILON).order() == -1
        assert ((EPSILON**2 + EPSILON**3) / EPSILON).order() == 1

    def test_order_of_zero_undefined(self):
        with pytest.raises(ValueError):
            ZERO.order()

    def test_eps_is_positive_infinitesimal(self):
        assert compare(EPSILON, 0) > 0
        for q in (Fraction(1), Fraction(1, 1000), Fraction(1, 10**9)):
            assert compare(EPSILON, q) < 0

    def test_infinite_element_dominates(self):
        assert compare(ONE / EPSILON, 10**6) > 0

    def test_non_archimedean_witness(self):
        for n in (1, 7, 1000, 99991, 10**6):
            assert n * EPSILON < ONE


class TestStandardPart:
    def test_examples(self):
        assert ((ONE + EPSILON) ** 2).std() == 1
        assert RatFunc(Poly((3, 2, 1))).std() == 3
        assert ZERO.std() == 0

    def test_infinitesimal_has_zero_standard_part(self):
        assert (EPSILON / (ONE + EPSILON)).std() == 0

    def test_infinite_element_raises(self):
        with pytest.raises(NoStandardPartError):
            (ONE / EPSILON).std()


class TestDerivAt:
    def test_square(self):
        assert deriv_at(EPSILON**2, 3) == 6

    def test_reciprocal(self):
        assert deriv_at(ONE / EPSILON, 2) == Fraction(-1, 4)

    def test_removable_singularity(self):
        # (x^2 - 1)/(x - 1) cancels to x + 1 before substitution
        x = EPSILON
        assert deriv_at((x**2 - 1) / (x - 1), 1) == 1

    def test_true_pole_raises(self):
        with pytest.raises(ZeroDivisionError):
            deriv_at(ONE / EPSILON, 0)


class TestFieldProperties:
    def test_field_axioms_on_random_samples(self):
        rng = random.Random(20260823)
        for _ in range(300):
            a, b, c = (random_ratfunc(rng) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == ZERO
            if not a.is_zero:
                assert a * (ONE / a) == ONE

    def test_order_compatibility(self):
        rng = random.Random(7)
        seen = 0
        while seen < 200:
            a, b = random_ratfunc(rng), random_ratfunc(rng)
            if a.sign() > 0 and b.sign() > 0:
                assert (a + b).sign() > 0
                assert (a * b).sign() > 0
                seen += 1

    def test_std_is_a_homomorphism_on_finite_elements(self):
        rng = random.Random(11)
        seen = 0
        while seen < 200:
            a, b = random_ratfunc(rng), random_ratfunc(rng)
            try:
                sa, sb = a.std(), b.std()
            except NoStandardPartError:
                continue
            assert (a + b).std() == sa + sb
            assert (a * b).std() == sa * sb
            seen += 1

    def test_deriv_matches_coefficient_rule(self):
        rng = random.Random(99)
        for _ in range(100):
            coeffs = [
                Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                for _ in range(rng.randint(1, 9))
            ]
            x0 = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
            p = RatFunc(Poly(coeffs))
            # independent oracle: term-by-term power rule
            expected = sum(
                (i * c * x0 ** (i - 1) for i, c in enumerate(coeffs) if i > 0),
                Fraction(0),
            )
            assert deriv_at(p, x0) == expected
