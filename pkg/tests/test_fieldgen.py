from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uniline.fieldgen import (
    Localization,
    as_shift,
    loc_add,
    loc_div,
    loc_inv,
    loc_mul,
    loc_neg,
    loc_sub,
    localization_iso,
    order_compatibility,
    stretch_image,
    stretch_map,
    verify_field_axioms,
)
from uniline.ordline import Interval

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
localizations = st.builds(
    lambda z, d: Localization(z, z + d),
    rationals,
    rationals.filter(lambda q: q != 0),
)

L01 = Localization(Fraction(0), Fraction(1))
L13 = Localization(Fraction(1), Fraction(3))
L02 = Localization(Fraction(0), Fraction(2))


class TestLocalizedAddition:
    def test_standard(self):
        assert loc_add(L01, Fraction(2), Fraction(3)) == 5

    def test_shifted_zero(self):
        # oracle: compose the shifts taking z to x and z to y, read at z;
        # with z=1: s_x = (+1), s_y = (+2), s_x(y) = 3 + 1 = 4
        assert loc_add(L13, Fraction(2), Fraction(3)) == 4

    @given(localizations, rationals)
    def test_identity(self, loc, x):
        assert loc_add(loc, loc.zero, x) == x

    @given(localizations, rationals, rationals)
    def test_commutative(self, loc, x, y):
        assert loc_add(loc, x, y) == loc_add(loc, y, x)

    @given(localizations, rationals)
    def test_inverse(self, loc, x):
        assert loc_add(loc, x, loc_neg(loc, x)) == loc.zero

    @given(localizations, rationals, rationals)
    def test_subtraction(self, loc, x, y):
        assert loc_add(loc, loc_sub(loc, x, y), y) == x

    @given(localizations, rationals, rationals)
    def test_addition_is_shift_composition(self, loc, x, y):
        composed = as_shift(loc, x).compose(as_shift(loc, y))
        assert composed == as_shift(loc, loc_add(loc, x, y))


class TestLocalizedMultiplication:
    def test_standard(self):
        assert loc_mul(L01, Fraction(2), Fraction(3)) == 6

    def test_scaled_unit(self):
        # oracle: scaling automorphism t -> t*(x-z)/(u-z) applied to the
        # shift (+3), read back at z=0 with u=2: 3 * (2/2) ... -> 3
        assert loc_mul(L02, Fraction(2), Fraction(3)) == 3

    def test_shifted_positive_product(self):
        # closed form: 1 + (1*1)/2 = 3/2
        assert loc_mul(L13, Fraction(2), Fraction(2)) == Fraction(3, 2)

    @given(localizations, rationals)
    def test_unit_law(self, loc, x):
        assert loc_mul(loc, loc.one, x) == x

    @given(localizations, rationals)
    def test_inverse(self, loc, x):
        if x != loc.zero:
            assert loc_mul(loc, x, loc_inv(loc, x)) == loc.one
            assert loc_div(loc, loc.one, x) == loc_inv(loc, x)

    def test_inverse_at_zero_rejected(self):
        with pytest.raises(ZeroDivisionError, match="localized zero"):
            loc_inv(L13, Fraction(1))

    @given(localizations, rationals, rationals, rationals)
    def test_distributivity(self, loc, x, y, w):
        left = loc_mul(loc, x, loc_add(loc, y, w))
        right = loc_add(loc, loc_mul(loc, x, y), loc_mul(loc, x, w))
        assert left == right


class TestFieldReport:
    def test_standard_localization_passes(self):
        report = verify_field_axioms(L01, 300)
        assert report.all_passed()
        assert report.sample_count == 300

    def test_awkward_localization_passes(self):
        report = verify_field_axioms(Localization(Fraction(-7, 3), Fraction(5, 2)), 300)
        assert report.all_passed()
        assert not report.failed()

    def test_degenerate_localization_unconstructible(self):
        with pytest.raises(ValueError, match="distinct"):
            Localization(Fraction(1), Fraction(1))

    def test_axiom_names_stable(self):
        report = verify_field_axioms(L01, 5)
        assert [c.name for c in report.checks] == [
            "add_associative",
            "add_commutative",
            "add_identity",
            "add_inverse",
            "mul_associative",
            "mul_commutative",
            "mul_identity",
            "mul_inverse",
            "distributive",
        ]

    def test_sample_count_validated(self):
        with pytest.raises(ValueError):
            verify_field_axioms(L01, 0)


class TestLocalizationIso:
    def test_example(self):
        iso = localization_iso(L01, L13)
        assert iso(Fraction(0)) == 1
        assert iso(Fraction(1)) == 3
        assert iso.slope == 2 and iso.offset == 1

    def test_identity_when_equal(self):
        assert localization_iso(L13, L13).is_identity()

    def test_homomorphism_spot_check(self):
        iso = localization_iso(L01, L13)
        assert iso(loc_add(L01, Fraction(2), Fraction(3))) == loc_add(L13, iso(Fraction(2)), iso(Fraction(3)))
        assert iso(Fraction(5)) == 11

    @given(localizations, localizations, rationals, rationals)
    def test_field_isomorphism(self, first, second, x, y):
        iso = localization_iso(first, second)
        assert iso(first.zero) == second.zero
        assert iso(first.one) == second.one
        assert iso(loc_add(first, x, y)) == loc_add(second, iso(x), iso(y))
        assert iso(loc_mul(first, x, y)) == loc_mul(second, iso(x), iso(y))

    @given(localizations, localizations)
    def test_bijective(self, first, second):
        iso = localization_iso(first, second)
        back = localization_iso(second, first)
        assert iso.compose(back).is_identity()
        assert back.compose(iso).is_identity()


class TestStretch:
    def test_unit_interval_scaling(self):
        assert stretch_image(L01, Fraction(3), Interval(Fraction(0), Fraction(1))) == Interval(
            Fraction(0), Fraction(3)
        )

    def test_identity_factor(self):
        box = Interval(Fraction(-1), Fraction(4))
        assert stretch_image(L01, Fraction(1), box) == box

    def test_compression(self):
        assert stretch_image(L01, Fraction(1, 2), Interval(Fraction(0), Fraction(1))) == Interval(
            Fraction(0), Fraction(1, 2)
        )

    def test_negative_factor_reverses(self):
        image = stretch_image(L01, Fraction(-2), Interval(Fraction(0), Fraction(1)))
        assert image == Interval(Fraction(-2), Fraction(0))

    def test_degenerate_factor_rejected(self):
        with pytest.raises(ValueError, match="degenerate stretch"):
            stretch_image(L01, Fraction(0), Interval(Fraction(0), Fraction(1)))

    @given(localizations, rationals, rationals, rationals)
    def test_stretch_is_order_isomorphism_or_reversal(self, loc, a, p, q):
        if a == loc.zero or p == q:
            return
        m = stretch_map(loc, a)
        lo, hi = min(p, q), max(p, q)
        if (a > loc.zero) == (loc.one > loc.zero):
            assert m(lo) < m(hi)
        else:
            assert m(lo) > m(hi)

    @given(localizations, rationals)
    def test_stretch_fixes_zero(self, loc, a):
        if a != loc.zero:
            assert stretch_map(loc, a)(loc.zero) == loc.zero


class TestOrderCompatibility:
    def test_standard(self):
        report = order_compatibility(L01, 200)
        assert report.all_passed()

    def test_shifted(self):
        report = order_compatibility(L13, 200)
        assert report.all_passed()

    def test_sign_reversal_example(self):
        neg_one = loc_neg(L01, Fraction(1))
        assert loc_mul(L01, neg_one, Fraction(2)) == -2
        assert loc_mul(L01, neg_one, Fraction(3)) == -3

    def test_positives_closed_example(self):
        assert loc_add(L01, Fraction(2), Fraction(3)) == 5
        assert loc_mul(L01, Fraction(2), Fraction(3)) == 6

    def test_requires_positive_orientation(self):
        with pytest.raises(ValueError, match="positively oriented"):
            order_compatibility(Localization(Fraction(1), Fraction(0)), 10)

    @given(localizations, rationals, rationals)
    def test_negated_unit_reverses_order(self, loc, p, q):
        if p == q:
            return
        neg_one = loc_neg(loc, loc.one)
        lo, hi = min(p, q), max(p, q)
        assert loc_mul(loc, neg_one, lo) > loc_mul(loc, neg_one, hi)
