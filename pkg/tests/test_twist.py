import random
from fractions import Fraction

import pytest

import skewclifford as sk
from skewclifford.freealg import LinearMap, NcPoly
from skewclifford.rewrite import PresentedAlgebra
from skewclifford.twist import (
    DiagonalAutomorphism,
    mu_from_lambdas,
    relation_span_equal,
    twist_criterion,
    twist_presentation,
)

from conftest import NONZERO_SMALL, example21_mu


def commutative_ring(n):
    return sk.build_skew_ring(sk.MuMatrix.ones(n))


class TestDiagonalAutomorphism:
    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            DiagonalAutomorphism((1, 0))

    def test_apply_scales_words(self):
        tau = DiagonalAutomorphism((1, 2))
        assert tau.apply(NcPoly({(1, 1): 1, (0,): 3})) == NcPoly({(1, 1): 4, (0,): 3})

    def test_inverse_and_power(self):
        tau = DiagonalAutomorphism((2, 3))
        assert tau.inverse().lambdas == (Fraction(1, 2), Fraction(1, 3))
        assert tau.power(2).lambdas == (4, 9)


class TestTwistPresentation:
    def test_polynomial_ring_to_quantum_plane(self):
        tau = DiagonalAutomorphism((1, 2))
        twisted = twist_presentation(commutative_ring(2), tau.inverse())
        expected = sk.build_skew_ring(mu_from_lambdas((1, 2)))
        assert relation_span_equal(twisted.relations, expected.relations, 2)
        assert twisted.relations == (NcPoly({(1, 0): 1, (0, 1): -2}),)

    def test_identity_preserves_span(self, ex21):
        _, _, pres, _ = ex21
        alg = pres.presentation()
        twisted = twist_presentation(alg, DiagonalAutomorphism((1, 1, 1)))
        assert relation_span_equal(twisted.relations, alg.relations, 3)

    def test_inverse_round_trip(self, ex21):
        _, _, pres, _ = ex21
        alg = pres.presentation()
        phi = LinearMap.from_rows([[1, 1, 0], [0, 1, 0], [2, 0, 1]])
        there = twist_presentation(alg, phi)
        back = twist_presentation(there, phi.inverse())
        assert relation_span_equal(back.relations, alg.relations, 3)

    def test_composition(self):
        alg = commutative_ring(2)
        phi = DiagonalAutomorphism((2, 3))
        psi = DiagonalAutomorphism((1, 5))
        composed = DiagonalAutomorphism((2, 15))
        via_two = twist_presentation(twist_presentation(alg, psi), phi)
        at_once = twist_presentation(alg, composed)
        assert relation_span_equal(via_two.relations, at_once.relations, 2)

    def test_non_quadratic_rejected(self):
        alg = PresentedAlgebra(2, [NcPoly({(0, 0, 1): 1})])
        with pytest.raises(ValueError, match="non-quadratic"):
            twist_presentation(alg, DiagonalAutomorphism((1, 2)))

    def test_singular_map_rejected(self):
        with pytest.raises(ValueError, match="singular map"):
            twist_presentation(commutative_ring(2), LinearMap.from_rows([[1, 1], [1, 1]]))


class TestTwistCriterion:
    def test_worked_example_witness(self):
        verdict = twist_criterion(example21_mu())
        assert not verdict.is_twist
        assert verdict.witness == (0, 1, 2)
        assert str(verdict) == "not-twist witness (1,2,3)"

    def test_multiplicative_mu(self):
        mu = sk.validate_mu([[1, 2, 2], [Fraction(1, 2), 1, 1], [Fraction(1, 2), 1, 1]])
        verdict = twist_criterion(mu)
        assert verdict.is_twist and verdict.lambdas == (1, 2, 2)

    def test_all_ones(self):
        verdict = twist_criterion(sk.MuMatrix.ones(3))
        assert verdict.is_twist and verdict.lambdas == (1, 1, 1)


class TestMuFromLambdas:
    def test_examples(self):
        mu = mu_from_lambdas((1, 2, 2))
        assert mu[0, 1] == 2 and mu[0, 2] == 2 and mu[1, 2] == 1

    def test_constant_lambdas(self):
        assert mu_from_lambdas((Fraction(5), Fraction(5))).is_ones()

    def test_two(self):
        mu = mu_from_lambdas((1, 2))
        assert mu[0, 1] == 2 and mu[1, 0] == Fraction(1, 2)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            mu_from_lambdas((1, 0))


class TestInvariants:
    def test_criterion_recovers_ratios(self):
        rng = random.Random(77)
        for _ in range(20):
            lams = tuple(rng.choice(NONZERO_SMALL) for _ in range(3))
            verdict = twist_criterion(mu_from_lambdas(lams))
            assert verdict.is_twist
            for i in range(3):
                for j in range(3):
                    assert verdict.lambdas[j] / verdict.lambdas[i] == lams[j] / lams[i]

    def test_twist_of_polynomial_ring_matches_skew_ring(self):
        rng = random.Random(78)
        for _ in range(5):
            lams = tuple(rng.choice(NONZERO_SMALL) for _ in range(3))
            tau = DiagonalAutomorphism(lams)
            twisted = twist_presentation(commutative_ring(3), tau.inverse())
            skew = sk.build_skew_ring(mu_from_lambdas(lams))
            assert relation_span_equal(twisted.relations, skew.relations, 3)
