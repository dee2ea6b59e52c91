"""Number field arithmetic, automorphisms, units, and pattern search."""

from fractions import Fraction

import pytest

from mahlerdyn.errors import NotFound, NotIrreducible, NotMonic, RankDeficient
from mahlerdyn.intpoly import from_text
from mahlerdyn.algnum import an_equal, an_from_rational, an_mul, an_rational_value
from mahlerdyn.mahler import an_compare, an_sign, mahler_measure
from mahlerdyn.nfield import (
    ConjugatePattern,
    fe_add,
    fe_inv,
    fe_mul,
    fe_neg,
    fe_pow,
    fe_rational,
    fe_sub,
    fe_theta,
    fe_to_algnum,
    nf_apply,
    nf_automorphisms,
    nf_compose,
    nf_element,
    nf_embed,
    nf_embedding_permutation,
    nf_new,
    nf_norm,
    nf_pattern_search,
    nf_unit_sublattice,
)

P = from_text

SQRT2_POLY = P("-2,0,1")
C4_POLY = P("2,0,-4,0,1")  # totally real cyclic quartic
C5_POLY = P("1,3,-3,-4,1,1")  # minimal polynomial of 2cos(2pi/11)
X5M2 = P("-2,0,0,0,0,1")

ONE = an_from_rational(1)


def _abs_sq(K, x, j):
    # |x|^2 at real embedding j, computed as the exact field square
    return fe_to_algnum(K, fe_mul(K, x, x), j)


def _above_one(a):
    return an_compare(a, ONE) == 1


class TestConstruction:
    def test_signatures(self):
        assert nf_new(SQRT2_POLY).signature == (2, 0)
        assert nf_new(P("1,-1,0,0,1")).signature == (0, 2)
        assert nf_new(X5M2).signature == (1, 2)

    def test_rejects_non_monic(self):
        with pytest.raises(NotMonic):
            nf_new(P("-1,0,2"))

    def test_rejects_reducible(self):
        with pytest.raises(NotIrreducible):
            nf_new(P("-1,0,1"))

    def test_embeddings_count(self):
        K = nf_new(C4_POLY)
        assert len(K.embeddings) == 4
        assert all(b.center[1] == 0 for b in K.embeddings)


class TestElementArithmetic:
    def test_mul_inv_roundtrip(self):
        K = nf_new(C4_POLY)
        x = nf_element(K, [Fraction(1, 2), 3, 0, -1])
        assert fe_mul(K, x, fe_inv(K, x)) == fe_rational(K, 1)

    def test_theta_satisfies_defining(self):
        K = nf_new(C5_POLY)
        th = fe_theta(K)
        acc = fe_rational(K, 0)
        for c in reversed(K.defining.coeffs):
            acc = fe_add(K, fe_mul(K, acc, th), fe_rational(K, c))
        assert acc == fe_rational(K, 0)

    def test_pow_negative(self):
        K = nf_new(SQRT2_POLY)
        u = nf_element(K, [1, 1])
        assert fe_mul(K, fe_pow(K, u, 3), fe_pow(K, u, -3)) == fe_rational(K, 1)

    def test_reduction_mod_defining(self):
        K = nf_new(SQRT2_POLY)
        # theta^2 reduces to the rational 2
        assert nf_element(K, [0, 0, 1]) == fe_rational(K, 2)


class TestNorm:
    def test_quadratic_examples(self):
        K = nf_new(SQRT2_POLY)
        assert nf_norm(K, nf_element(K, [1, 1])) == -1
        assert nf_norm(K, fe_rational(K, 3)) == 9

    def test_theta_norm_is_signed_constant_term(self):
        K = nf_new(X5M2)
        assert nf_norm(K, fe_theta(K)) == 2

    def test_multiplicative(self):
        K = nf_new(C4_POLY)
        x = nf_element(K, [1, 2, 0, 1])
        y = nf_element(K, [0, -1, 1, 0])
        assert nf_norm(K, fe_mul(K, x, y)) == nf_norm(K, x) * nf_norm(K, y)

    def test_zero(self):
        K = nf_new(SQRT2_POLY)
        assert nf_norm(K, fe_rational(K, 0)) == 0


class TestEmbed:
    def test_sqrt2_value(self):
        K = nf_new(SQRT2_POLY)
        ball = nf_embed(K, fe_theta(K), 1, 80)
        assert ball.radius <= Fraction(1, 1 << 80)
        assert abs(ball.center[0] - Fraction(14142135623, 10**10)) < Fraction(1, 10**9)

    def test_theta_squared_in_x5m2(self):
        K = nf_new(X5M2)
        real_place = next(i for i, b in enumerate(K.embeddings) if b.center[1] == 0)
        ball = nf_embed(K, nf_element(K, [0, 0, 1]), real_place, 64)
        # 2^(2/5) = 1.31950...
        assert abs(ball.center[0] - Fraction(131950, 100000)) < Fraction(1, 10**4)

    def test_conjugate_places_mirror(self):
        K = nf_new(P("1,-1,0,0,1"))
        x = nf_element(K, [0, 1, 1, 0])
        balls = [nf_embed(K, x, i, 64) for i in range(4)]
        got = sorted((b.center[0], abs(b.center[1])) for b in balls)
        assert got[0] == got[1] and got[2] == got[3]


class TestAutomorphisms:
    def test_quadratic(self):
        K = nf_new(SQRT2_POLY)
        autos = nf_automorphisms(K)
        coords = {a.coords for a in autos}
        assert coords == {(Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1))}

    def test_cyclic_quartic_orders(self):
        K = nf_new(C4_POLY)
        autos = nf_automorphisms(K)
        assert len(autos) == 4
        ident = fe_theta(K)
        orders = []
        for a in autos:
            cur, k = a, 1
            while cur != ident:
                cur = nf_compose(K, a, cur)
                k += 1
            orders.append(k)
        assert sorted(orders) == [1, 2, 4, 4]

    def test_non_galois_quintic(self):
        K = nf_new(X5M2)
        autos = nf_automorphisms(K)
        assert len(autos) == 1
        assert autos[0] == fe_theta(K)

    def test_images_are_roots(self):
        K = nf_new(C5_POLY)
        autos = nf_automorphisms(K)
        assert len(autos) == 5
        for g in autos:
            acc = fe_rational(K, 0)
            for c in reversed(K.defining.coeffs):
                acc = fe_add(K, fe_mul(K, acc, g), fe_rational(K, c))
            assert acc == fe_rational(K, 0)

    def test_apply_is_ring_homomorphism(self):
        K = nf_new(C4_POLY)
        g = next(a for a in nf_automorphisms(K) if a != fe_theta(K))
        x = nf_element(K, [1, 2, 3, 4])
        y = nf_element(K, [0, 1, -1, 2])
        assert nf_apply(K, g, fe_mul(K, x, y)) == fe_mul(
            K, nf_apply(K, g, x), nf_apply(K, g, y)
        )
        assert nf_apply(K, g, fe_add(K, x, y)) == fe_add(
            K, nf_apply(K, g, x), nf_apply(K, g, y)
        )

    def test_embedding_permutation_single_orbit(self):
        K = nf_new(C5_POLY)
        gen = next(a for a in nf_automorphisms(K) if a != fe_theta(K))
        pi = nf_embedding_permutation(K, gen)
        seen, cur = {0}, 0
        for _ in range(4):
            cur = pi[cur]
            seen.add(cur)
        assert seen == {0, 1, 2, 3, 4}

    def test_composition_matches_permutation_product(self):
        K = nf_new(C4_POLY)
        autos = nf_automorphisms(K)
        a, b = autos[1], autos[2]
        pa = nf_embedding_permutation(K, a)
        pb = nf_embedding_permutation(K, b)
        pc = nf_embedding_permutation(K, nf_compose(K, a, b))
        # sigma_a(sigma_b(x)) at embedding i reads x at pb[pa[i]]
        assert pc == tuple(pb[pa[i]] for i in range(4))


class TestUnitSublattice:
    def test_real_quadratic_rank_one(self):
        K = nf_new(SQRT2_POLY)
        lat = nf_unit_sublattice(K)
        assert len(lat.generators) == 1
        v = lat.log_matrix[0]
        assert v.weights == (1, 1)
        total_lo = sum(e[0] for e in v.entries)
        total_hi = sum(e[1] for e in v.entries)
        assert total_lo <= 0 <= total_hi

    def test_biquadratic_rank_three(self):
        K = nf_new(P("1,0,-10,0,1"))  # Q(sqrt 2, sqrt 3)
        lat = nf_unit_sublattice(K)
        assert len(lat.generators) == 3
        for g in lat.generators:
            assert abs(nf_norm(K, g)) == 1

    def test_cyclotomic_rank_one(self):
        K = nf_new(P("1,1,1,1,1"))
        lat = nf_unit_sublattice(K)
        assert len(lat.generators) == 1
        assert lat.log_matrix[0].weights == (2, 2)

    def test_x5m2_rank_two(self):
        K = nf_new(X5M2)
        lat = nf_unit_sublattice(K)
        assert len(lat.generators) == 2
        for g in lat.generators:
            assert abs(nf_norm(K, g)) == 1

    def test_log_vectors_respect_product_formula(self):
        K = nf_new(C4_POLY)
        lat = nf_unit_sublattice(K)
        for g, v in zip(lat.generators, lat.log_matrix):
            assert abs(nf_norm(K, g)) == 1
            lo = sum(e[0] for e in v.entries)
            hi = sum(e[1] for e in v.entries)
            assert lo <= 0 <= hi

    def test_degree_one_has_no_unit_rank(self):
        K = nf_new(P("1,1"))
        with pytest.raises(RankDeficient):
            nf_unit_sublattice(K)


class TestPatternSearch:
    def test_real_quadratic_pisot_unit(self):
        K = nf_new(SQRT2_POLY)
        lat = nf_unit_sublattice(K)
        pat = ConjugatePattern(order=((1,), (0,)), one_position=1)
        u = nf_pattern_search(K, lat, pat)
        sq1 = _abs_sq(K, u, 1)
        sq0 = _abs_sq(K, u, 0)
        assert an_compare(sq1, sq0) == 1
        assert _above_one(sq1) and not _above_one(sq0)
        # exactly one conjugate outside the unit circle: the measure of the
        # unit is the absolute value of that conjugate
        m = mahler_measure(fe_to_algnum(K, u, 1))
        assert an_equal(an_mul(m, m), sq1)

    def test_impossible_pattern_not_found(self):
        K = nf_new(SQRT2_POLY)
        lat = nf_unit_sublattice(K)
        # both conjugates above 1 contradicts norm +-1
        pat = ConjugatePattern(order=((0, 1),), one_position=1)
        with pytest.raises(NotFound):
            nf_pattern_search(K, lat, pat, exponent_bound=3)

    def test_totally_real_cyclic_quartic(self):
        K = nf_new(C4_POLY)
        ident = fe_theta(K)
        gen = next(
            a
            for a in nf_automorphisms(K)
            if a != ident and nf_compose(K, a, a) != ident
        )
        pi = nf_embedding_permutation(K, gen)
        e = [0]
        for _ in range(3):
            e.append(pi[e[-1]])
        pat = ConjugatePattern(
            order=((e[0],), (e[1],), (e[2], e[3])),
            one_position=2,
            extras=(((e[0], e[3]), "!="),),
        )
        lat = nf_unit_sublattice(K)
        u = nf_pattern_search(K, lat, pat)
        # re-verify every constraint independently of the search
        sq = {j: _abs_sq(K, u, j) for j in range(4)}
        assert an_compare(sq[e[0]], sq[e[1]]) == 1
        assert an_compare(sq[e[1]], sq[e[2]]) == 1
        assert an_compare(sq[e[1]], sq[e[3]]) == 1
        assert _above_one(sq[e[0]]) and _above_one(sq[e[1]])
        assert not _above_one(sq[e[2]]) and not _above_one(sq[e[3]])
        assert an_compare(an_mul(sq[e[0]], sq[e[3]]), ONE) != 0


class TestCyclicQuinticDistribution:
    """Interleaved conjugate chains and their propagation under the measure.

    Writing x_k for the image of x under the k-th power of a fixed degree-5
    cyclic generator, a unit can satisfy the strict chain
    |x_0| > |x_1| > |x_-1| > |x_2| > |x_-2| (shape A) or its mirror
    |x_0| > |x_-1| > |x_1| > |x_-2| > |x_2| (shape B), with either 3 or 2
    conjugates outside the unit circle, the outside ones forming a prefix of
    the chain. For a unit in any of those four states the next measure stays
    among them with a forced shape: 3-outside keeps the shape, 2-outside
    flips it. Asserted here on exact conjugates through three successive
    measures, each cross-checked against the orbit engine.
    """

    SHAPE_POWERS = {"A": (0, 1, 4, 2, 3), "B": (0, 4, 1, 3, 2)}

    @staticmethod
    def _setup():
        K = nf_new(C5_POLY)
        gen = next(a for a in nf_automorphisms(K) if a != fe_theta(K))
        pi = nf_embedding_permutation(K, gen)
        e = [0]
        for _ in range(4):
            e.append(pi[e[-1]])
        return K, gen, e

    @classmethod
    def _classify_state(cls, K, x, e):
        """Exact (shape, outside-count) of x, or a failed assertion."""
        sq = {j: _abs_sq(K, x, j) for j in range(5)}
        shape = None
        for name, powers in cls.SHAPE_POWERS.items():
            chain = [e[k] for k in powers]
            if all(
                an_compare(sq[a], sq[b]) == 1 for a, b in zip(chain, chain[1:])
            ):
                shape = name
                break
        assert shape is not None
        chain = [e[k] for k in cls.SHAPE_POWERS[shape]]
        count = sum(1 for j in range(5) if _above_one(sq[j]))
        assert count in (2, 3)
        assert all(_above_one(sq[chain[t]]) for t in range(count))
        return shape, count

    @classmethod
    def _sigma_pow(cls, K, gen, x, k):
        for _ in range(k % 5):
            x = nf_apply(K, gen, x)
        return x

    def test_measure_propagates_chain(self):
        K, gen, e = self._setup()
        lat = nf_unit_sublattice(K)
        pat = ConjugatePattern(
            order=tuple((e[k],) for k in self.SHAPE_POWERS["A"]), one_position=3
        )
        alpha = nf_pattern_search(K, lat, pat)
        shape, count = self._classify_state(K, alpha, e)
        assert (shape, count) == ("A", 3)

        x, x_an = alpha, fe_to_algnum(K, alpha)
        for _ in range(3):
            powers = self.SHAPE_POWERS[shape]
            nxt = fe_rational(K, 1)
            for t in range(count):
                nxt = fe_mul(K, nxt, self._sigma_pow(K, gen, x, powers[t]))
            if an_sign(fe_to_algnum(K, nxt)) < 0:
                nxt = fe_neg(K, nxt)
            nxt_an = fe_to_algnum(K, nxt)
            # the product of the outside conjugates is the measure
            assert an_equal(nxt_an, mahler_measure(x_an))
            expected = "A" if (shape == "A") == (count == 3) else "B"
            shape, count = self._classify_state(K, nxt, e)
            assert shape == expected
            x, x_an = nxt, nxt_an


class TestFieldElementToAlgnum:
    def test_rational(self):
        K = nf_new(SQRT2_POLY)
        v = an_rational_value(fe_to_algnum(K, fe_rational(K, Fraction(5, 3))))
        assert v == Fraction(5, 3)

    def test_theta_roundtrip(self):
        K = nf_new(C5_POLY)
        z = fe_to_algnum(K, fe_theta(K))
        assert z.minpoly == C5_POLY

    def test_subfield_element_has_smaller_degree(self):
        K = nf_new(P("1,0,-10,0,1"))  # theta = sqrt 2 + sqrt 3
        th = fe_theta(K)
        # theta^2 - 5 = 2 sqrt 6 has degree 2
        x = fe_sub(K, fe_mul(K, th, th), fe_rational(K, 5))
        z = fe_to_algnum(K, x)
        assert z.degree == 2
        assert z.minpoly == P("-24,0,1")
