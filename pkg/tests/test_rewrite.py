import math
import random
from fractions import Fraction

import pytest

import skewclifford as sk
from skewclifford.freealg import NcPoly
from skewclifford.rewrite import (
    DegreeBoundError,
    PresentedAlgebra,
    degree_basis,
    finite_dim_check,
    groebner,
    hilbert_coeffs,
    normal_form,
)

from conftest import example21_matrices, example21_mu
from oracles import free_quotient_dims, skew_quotient_dims


def skew_ring_21():
    return sk.build_skew_ring(example21_mu())


class TestPresentedAlgebra:
    def test_rejects_inhomogeneous(self):
        with pytest.raises(ValueError, match="inhomogeneous"):
            PresentedAlgebra(2, [NcPoly({(0, 1): 1, (0,): 1})])

    def test_rejects_low_degree(self):
        with pytest.raises(ValueError, match="degree 1"):
            PresentedAlgebra(2, [NcPoly({(0,): 1})])

    def test_monic_storage(self):
        alg = PresentedAlgebra(2, [NcPoly({(1, 0): 3, (0, 1): -6})])
        assert alg.relations[0].lead_coeff() == 1
        assert alg.relations[0] == NcPoly({(1, 0): 1, (0, 1): -2})

    def test_drops_zero_relations(self):
        assert PresentedAlgebra(2, [NcPoly.zero()]).relations == ()

    def test_generator_range_enforced(self):
        with pytest.raises(ValueError, match="generator 3"):
            PresentedAlgebra(2, [NcPoly({(2, 2): 1})])

    def test_generator_count_cap(self):
        with pytest.raises(ValueError, match="1..16"):
            PresentedAlgebra(17, [])


class TestGroebner:
    def test_skew_ring_is_self_complete(self):
        ring = skew_ring_21()
        gb = groebner(ring, 6)
        assert gb.elements == ring.relations
        assert gb.complete_through == 6

    def test_empty_presentation(self):
        gb = groebner(PresentedAlgebra(2, []), 5)
        assert gb.elements == ()
        assert hilbert_coeffs(gb, 3) == [1, 2, 4, 8]

    def test_example_gsca_dims(self):
        mu = example21_mu()
        pres = sk.build_gsca(mu, example21_matrices(mu))
        gb = pres.groebner(6)
        assert hilbert_coeffs(gb, 6) == [1, 3, 6, 10, 15, 21, 28]

    def test_determinism(self):
        mu = example21_mu()
        pres = sk.build_gsca(mu, example21_matrices(mu))
        a = pres.groebner(7)
        b = pres.groebner(7)
        assert a.elements == b.elements
        assert a == b

    def test_interreduced_and_monic(self):
        mu = example21_mu()
        gb = sk.build_gsca(mu, example21_matrices(mu)).groebner(6)
        leads = gb.lead_words()
        for g in gb.elements:
            assert g.lead_coeff() == 1
        for u in leads:
            for v in leads:
                if u == v:
                    continue
                assert not any(v[p : p + len(u)] == u for p in range(len(v) - len(u) + 1))


class TestNormalForm:
    def test_skew_rewrite(self):
        gb = groebner(skew_ring_21(), 4)
        assert normal_form(NcPoly({(1, 0): 1}), gb) == NcPoly({(0, 1): 2})

    def test_gsca_sign_rewrite(self):
        mu = example21_mu()
        gb = sk.build_gsca(mu, example21_matrices(mu)).groebner(4)
        assert normal_form(NcPoly({(2, 0): 1}), gb) == NcPoly({(0, 2): -1})

    def test_gb_elements_reduce_to_zero(self):
        mu = example21_mu()
        gb = sk.build_gsca(mu, example21_matrices(mu)).groebner(6)
        for g in gb.elements:
            assert not normal_form(g, gb)

    def test_degree_bound_error(self):
        gb = groebner(skew_ring_21(), 3)
        with pytest.raises(DegreeBoundError):
            normal_form(NcPoly({(0, 1, 2, 0): 1}), gb)

    def test_idempotent_and_multiplicative(self):
        mu = example21_mu()
        gb = sk.build_gsca(mu, example21_matrices(mu)).groebner(8)
        rng = random.Random(23)
        for _ in range(15):
            p = NcPoly({tuple(rng.randrange(3) for _ in range(2)): Fraction(rng.randint(-2, 2))})
            q = NcPoly(
                {
                    tuple(rng.randrange(3) for _ in range(3)): Fraction(rng.randint(-2, 2)),
                    tuple(rng.randrange(3) for _ in range(3)): 1,
                }
            )
            nf_pq = normal_form(p * q, gb)
            assert normal_form(nf_pq, gb) == nf_pq
            assert normal_form(normal_form(p, gb) * normal_form(q, gb), gb) == nf_pq

    def test_linearity(self):
        gb = groebner(skew_ring_21(), 4)
        p = NcPoly({(1, 0): 1})
        q = NcPoly({(2, 1): 1})
        lhs = normal_form(p + q.scale(3), gb)
        assert lhs == normal_form(p, gb) + normal_form(q, gb).scale(3)


class TestDegreeBasis:
    def test_degree_zero(self):
        gb = groebner(skew_ring_21(), 3)
        assert degree_basis(gb, 0) == [()]

    def test_skew_ring_degree_two(self):
        gb = groebner(skew_ring_21(), 3)
        assert degree_basis(gb, 2) == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]

    def test_free_algebra(self):
        gb = groebner(PresentedAlgebra(2, []), 4)
        words = degree_basis(gb, 3)
        assert len(words) == 8
        assert words == sorted(words)

    def test_bound_enforced(self):
        gb = groebner(skew_ring_21(), 3)
        with pytest.raises(DegreeBoundError):
            degree_basis(gb, 4)


class TestHilbert:
    def test_example_gsca(self):
        mu = example21_mu()
        gb = sk.build_gsca(mu, example21_matrices(mu)).groebner(5)
        assert hilbert_coeffs(gb, 5) == [1, 3, 6, 10, 15, 21]

    def test_free_two_generators(self):
        gb = groebner(PresentedAlgebra(2, []), 3)
        assert hilbert_coeffs(gb, 3) == [1, 2, 4, 8]

    def test_quadric_quotient_matches_straightening_oracle(self):
        mu = example21_mu()
        pres = sk.build_gsca(mu, example21_matrices(mu))
        system = sk.quadric_system_of(pres)
        ring = sk.build_skew_ring(mu)
        rels = list(ring.relations) + [q.as_ncpoly() for q in system.forms]
        gb = groebner(PresentedAlgebra(3, rels), 5)
        mu_grid = [[mu[i, j] for j in range(3)] for i in range(3)]
        form_terms = [{w: c for w, c in q.as_ncpoly().terms.items()} for q in system.forms]
        oracle = skew_quotient_dims(mu_grid, form_terms, 5)
        assert oracle[:5] == [1, 3, 3, 1, 0]
        assert hilbert_coeffs(gb, 5) == oracle

    def test_commutative_binomials(self):
        for n in range(1, 5):
            gb = groebner(sk.build_skew_ring(sk.MuMatrix.ones(n)), 6)
            assert hilbert_coeffs(gb, 6) == [math.comb(n - 1 + d, d) for d in range(7)]

    def test_gsca_dims_match_free_ideal_oracle(self):
        # cross-check of the rewriting engine against plain linear algebra in
        # the free algebra, with no reduction machinery involved
        mu = example21_mu()
        pres = sk.build_gsca(mu, example21_matrices(mu))
        gb = pres.groebner(4)
        rel_terms = [dict(r.terms) for r in pres.x_relations]
        assert hilbert_coeffs(gb, 4) == free_quotient_dims(3, rel_terms, 4)

    def test_alternating_quotient(self):
        # x^2 and xy + yx: normal words are y^d and x*y^(d-1)
        alg = PresentedAlgebra(2, [NcPoly({(0, 0): 1}), NcPoly({(0, 1): 1, (1, 0): 1})])
        gb = groebner(alg, 6)
        assert hilbert_coeffs(gb, 6) == [1, 2, 2, 2, 2, 2, 2]

    def test_random_presentations_match_free_ideal_oracle(self):
        rng = random.Random(31415)
        cases = 0
        while cases < 10:
            n = rng.choice((2, 3))
            through = 5 if n == 2 else 4
            rels = []
            for _ in range(rng.randint(1, 3)):
                deg = rng.choice((2, 2, 2, 3))
                terms = {}
                for _ in range(rng.randint(1, 3)):
                    w = tuple(rng.randrange(n) for _ in range(deg))
                    terms[w] = Fraction(rng.randint(-2, 2))
                p = NcPoly(terms)
                if p:
                    rels.append(p)
            if not rels:
                continue
            cases += 1
            alg = PresentedAlgebra(n, rels)
            gb = groebner(alg, through)
            rel_terms = [dict(r.terms) for r in alg.relations]
            assert hilbert_coeffs(gb, through) == free_quotient_dims(n, rel_terms, through), (
                f"n={n} relations={[str(r) for r in alg.relations]}"
            )


class TestFiniteDim:
    def test_quadric_quotient_dimension(self):
        mu = example21_mu()
        pres = sk.build_gsca(mu, example21_matrices(mu))
        rels = list(sk.build_skew_ring(mu).relations) + [
            q.as_ncpoly() for q in sk.quadric_system_of(pres).forms
        ]
        verdict = finite_dim_check(groebner(PresentedAlgebra(3, rels), 8))
        assert verdict.finite and verdict.dimension == 8

    def test_single_square_unknown(self):
        mu = sk.MuMatrix.ones(3)
        rels = list(sk.build_skew_ring(mu).relations) + [NcPoly({(0, 0): 2})]
        verdict = finite_dim_check(groebner(PresentedAlgebra(3, rels), 8))
        assert not verdict.finite
        assert verdict.dimension is None

    def test_free_algebra_unknown(self):
        verdict = finite_dim_check(groebner(PresentedAlgebra(2, []), 5))
        assert not verdict.finite
