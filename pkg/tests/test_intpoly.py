import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mahlerdyn import intpoly
from mahlerdyn.errors import (
    EndpointRoot,
    InvalidPoly,
    NotReciprocal,
    NotSquarefree,
    OddDegree,
    ZeroPolynomial,
)
from mahlerdyn.intpoly import (
    IntPoly,
    canonicalize,
    count_real_roots,
    cyclotomic_part,
    discriminant,
    from_text,
    gcd_z,
    power_map,
    product_resolvent,
    ratio_resolvent,
    reciprocal_test,
    resultant,
    squarefree_part,
    sturm_real_roots,
    sum_resolvent,
    to_text,
    trace_poly,
    transform_resolvent,
    untrace_poly,
)

from oracles import sylvester_resultant

P = from_text

LEHMER = P("1,1,0,-1,-1,-1,-1,-1,0,1,1")


def rand_poly(rng, max_deg=6, max_coeff=100, nonzero=True):
    while True:
        deg = rng.randint(0, max_deg)
        cs = [rng.randint(-max_coeff, max_coeff) for _ in range(deg + 1)]
        p = IntPoly(cs)
        if not nonzero or not p.is_zero:
            return p


class TestBasics:
    def test_text_round_trip(self):
        p = P("-2,0,1")
        assert p.coeffs == (-2, 0, 1)
        assert to_text(p) == "-2,0,1"
        assert p.degree == 2 and p.lc == 1

    def test_text_rejects_garbage(self):
        for bad in ["", "1,,2", "x", "1, 2, three"]:
            with pytest.raises(InvalidPoly):
                from_text(bad)

    def test_zero_handling(self):
        z = IntPoly([0, 0])
        assert z.is_zero and z.degree == -1 and to_text(z) == "0"

    def test_eval(self):
        p = P("-2,0,1")
        assert p(5) == 23
        assert p(Fraction(1, 2)) == Fraction(-7, 4)

    def test_mul_add(self):
        p, q = P("1,1"), P("-1,1")
        assert (p * q).coeffs == (-1, 0, 1)
        assert (p + q).coeffs == (0, 2)


class TestCanonicalize:
    def test_content_removal(self):
        assert canonicalize(P("-8,0,4")) == P("-2,0,1")

    def test_sign_normalization(self):
        assert canonicalize(P("6,-3")) == P("-2,1")

    def test_zero(self):
        assert canonicalize(IntPoly(())).is_zero


class TestResultant:
    def test_sqrt2_sqrt3(self):
        assert resultant(P("-2,0,1"), P("-3,0,1")) == 1

    def test_evaluation_identity(self):
        # Res(x - a, q) = q(a)
        assert resultant(P("-5,1"), P("1,0,1")) == 26

    def test_shared_root(self):
        p = P("-2,0,1")
        assert resultant(p, p) == 0

    def test_zero_raises(self):
        with pytest.raises(ZeroPolynomial):
            resultant(IntPoly(()), P("1,1"))

    def test_against_sylvester_oracle(self):
        rng = random.Random(20260814)
        for _ in range(300):
            p = rand_poly(rng, max_deg=6, max_coeff=50)
            q = rand_poly(rng, max_deg=6, max_coeff=50)
            if p.degree < 0 or q.degree < 0:
                continue
            assert resultant(p, q) == sylvester_resultant(p, q)

    def test_swap_symmetry(self):
        rng = random.Random(99)
        for _ in range(200):
            p = rand_poly(rng, max_deg=6, max_coeff=100)
            q = rand_poly(rng, max_deg=6, max_coeff=100)
            s = (-1) ** (p.degree * q.degree) if p.degree > 0 and q.degree > 0 else 1
            assert resultant(p, q) == s * resultant(q, p)

    def test_multiplicativity(self):
        rng = random.Random(7)
        for _ in range(100):
            p = rand_poly(rng, max_deg=4, max_coeff=30)
            q = rand_poly(rng, max_deg=3, max_coeff=30)
            r = rand_poly(rng, max_deg=3, max_coeff=30)
            if (p * q).degree <= 0:
                continue
            assert resultant(p * q, r) == resultant(p, r) * resultant(q, r)


class TestGcd:
    def test_common_factor(self):
        p = P("-1,1") * P("1,0,1")
        q = P("-1,1") * P("2,1")
        assert gcd_z(p, q) == P("-1,1")

    def test_coprime(self):
        assert gcd_z(P("-2,0,1"), P("-3,0,1")).degree == 0

    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=5),
           st.lists(st.integers(-30, 30), min_size=1, max_size=5),
           st.lists(st.integers(-30, 30), min_size=1, max_size=4))
    @settings(max_examples=60, deadline=None)
    def test_gcd_divides_both(self, a, b, c):
        p, q, r = IntPoly(a), IntPoly(b), IntPoly(c)
        if p.is_zero or q.is_zero or r.is_zero:
            return
        g = gcd_z(p * r, q * r)
        assert intpoly.div_z(p * r, g) is not None
        assert intpoly.div_z(q * r, g) is not None
        assert g.degree >= r.degree  # r divides the gcd


class TestSquarefree:
    def test_repeated_factor(self):
        p = P("-1,1") * P("-1,1") * P("2,1")
        assert squarefree_part(p) == canonicalize(P("-1,1") * P("2,1"))

    def test_already_squarefree(self):
        assert squarefree_part(P("-2,0,1")) == P("-2,0,1")

    def test_cube(self):
        p = P("1,0,1") * P("1,0,1") * P("1,0,1")
        assert squarefree_part(p) == P("1,0,1")


class TestSturm:
    def test_sqrt2(self):
        assert sturm_real_roots(P("-2,0,1")) == 2

    def test_totally_imaginary_quartic(self):
        assert sturm_real_roots(P("1,-1,0,0,1")) == 0

    def test_cos_2pi_9_window(self):
        # minimal polynomial of 2cos(2pi/9); all three roots in (-2, 2)
        assert sturm_real_roots(P("1,-3,0,1"), Fraction(-2), Fraction(2)) == 3

    def test_half_lines(self):
        p = P("-2,0,1")
        assert sturm_real_roots(p, Fraction(0), None) == 1
        assert sturm_real_roots(p, None, Fraction(0)) == 1

    def test_endpoint_root(self):
        with pytest.raises(EndpointRoot):
            sturm_real_roots(P("-1,0,1"), Fraction(1), Fraction(2))

    def test_not_squarefree(self):
        with pytest.raises(NotSquarefree):
            sturm_real_roots(P("-1,1") * P("-1,1"))

    def test_random_against_numeric_oracle(self):
        from oracles import numeric_real_root_count

        rng = random.Random(4242)
        checked = 0
        while checked < 60:
            p = rand_poly(rng, max_deg=7, max_coeff=40)
            if p.degree < 1 or not intpoly.is_squarefree(p):
                continue
            assert count_real_roots(p) == numeric_real_root_count(p)
            checked += 1


class TestReciprocal:
    def test_lehmer_plus(self):
        assert reciprocal_test(LEHMER) == "Plus"

    def test_sqrt2_no(self):
        assert reciprocal_test(P("-2,0,1")) == "No"

    def test_x_minus_1_minus(self):
        assert reciprocal_test(P("-1,1")) == "Minus"


class TestTracePoly:
    def test_x2_plus_1(self):
        assert trace_poly(P("1,0,1")) == P("0,1")

    def test_x4_plus_1(self):
        assert trace_poly(P("1,0,0,0,1")) == P("-2,0,1")

    def test_lehmer_window_count(self):
        h = trace_poly(LEHMER)
        assert h.degree == 5
        # 8 unit-circle roots of the Salem number <=> 4 trace roots in (-2,2)
        assert sturm_real_roots(h, Fraction(-2), Fraction(2)) == 4

    def test_round_trip(self):
        for p in [P("1,0,1"), P("1,0,0,0,1"), LEHMER, P("1,2,3,2,1")]:
            assert untrace_poly(trace_poly(p)) == p

    def test_errors(self):
        with pytest.raises(NotReciprocal):
            trace_poly(P("-2,0,1"))
        with pytest.raises(OddDegree):
            trace_poly(P("1,1"))


class TestPowerMap:
    def test_identity(self):
        assert power_map(P("-1,-1,1"), 1) == P("-1,-1,1")

    def test_golden_square(self):
        assert power_map(P("-1,-1,1"), 2) == P("1,-3,1")

    def test_i_squared(self):
        # both roots of x^2+1 square to -1
        assert power_map(P("1,0,1"), 2) == P("1,2,1")

    def test_composition_on_torsion_free(self):
        # x^2 - x - 1: ratio of roots is not a root of unity
        p = P("-1,-1,1")
        assert power_map(p, 6) == power_map(power_map(p, 2), 3)
        assert power_map(p, 6) == power_map(power_map(p, 3), 2)

    def test_composition_squarefree_parts_agree(self):
        rng = random.Random(11)
        checked = 0
        while checked < 25:
            p = rand_poly(rng, max_deg=4, max_coeff=10)
            if p.degree < 1 or not intpoly.is_squarefree(p) or p[0] == 0:
                continue
            lhs = squarefree_part(power_map(p, 6))
            rhs = squarefree_part(power_map(power_map(p, 2), 3))
            assert lhs == rhs
            checked += 1

    def test_non_monic_normalization(self):
        # roots of 2x^2-1 are +-1/sqrt(2); squares are both 1/2
        assert power_map(P("-1,0,2"), 2) == P("-1,2") * P("-1,2")


class TestResolvents:
    def test_product_sqrt2_sqrt3(self):
        r = product_resolvent(P("-2,0,1"), P("-3,0,1"))
        # vanishes on +-sqrt(6): x^4 - 12x^2 + 36... actually (x^2-6)^2
        assert intpoly.div_z(r, P("-6,0,1")) is not None

    def test_sum_sqrt2_sqrt3(self):
        r = sum_resolvent(P("-2,0,1"), P("-3,0,1"))
        # sqrt(2)+sqrt(3) has minimal polynomial x^4 - 10x^2 + 1
        assert intpoly.div_z(r, P("1,0,-10,0,1")) is not None

    def test_ratio_resolvent_unity(self):
        r = ratio_resolvent(P("-2,0,1"), P("-2,0,1"))
        # ratios are +-1
        assert r(Fraction(1)) == 0 and r(Fraction(-1)) == 0

    def test_transform_square(self):
        r = transform_resolvent(P("-2,0,1"), IntPoly((0, 0, 1)))
        # alpha^2 = 2 for both roots
        assert intpoly.div_z(r, P("-2,1")) is not None

    def test_transform_with_denominator(self):
        # (alpha+1)/2 over roots of x^2-2
        r = transform_resolvent(P("-2,0,1"), IntPoly((1, 1)), 2)
        # value (1+sqrt2)/2 satisfies 4x^2-4x-1
        assert intpoly.div_z(r, P("-1,-4,4")) is not None


class TestCyclotomicPart:
    def test_x4_minus_1(self):
        assert cyclotomic_part(P("-1,0,0,0,1")) == P("-1,0,0,0,1")

    def test_golden_trivial(self):
        assert cyclotomic_part(P("-1,-1,1")) == IntPoly((1,))

    def test_mixed_product(self):
        p = P("1,1,1") * P("-3,0,1")
        assert cyclotomic_part(p) == P("1,1,1")

    def test_x2_plus_1(self):
        # regression: squaring i gives -1, which is not a root of x^2+1,
        # but x^2+1 is still cyclotomic
        assert cyclotomic_part(P("1,0,1")) == P("1,0,1")

    def test_all_cyclotomics_up_to_20(self):
        import sympy

        x = sympy.Symbol("x")
        for n in range(1, 21):
            cs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
            p = IntPoly([int(c) for c in cs])
            assert cyclotomic_part(p) == p, f"Phi_{n}"

    def test_salem_not_cyclotomic(self):
        assert cyclotomic_part(LEHMER) == IntPoly((1,))


class TestDiscriminant:
    def test_quadratic(self):
        assert discriminant(P("-2,0,1")) == 8

    def test_cubic(self):
        # disc(x^3 - 3x + 1) = 81: cyclic cubic
        assert discriminant(P("1,-3,0,1")) == 81


class TestMonicize:
    def test_scaling(self):
        g, c = intpoly.monicize(P("-1,0,2"))
        assert c == 2 and g.lc == 1
        # roots of g are 2*(+-1/sqrt2) = +-sqrt2
        assert g == P("-2,0,1")
