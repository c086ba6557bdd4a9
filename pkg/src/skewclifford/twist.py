"""Twists of quadratic presentations by degree-zero automorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .clifford import MuMatrix
from .exact import rref
from .freealg import LinearMap, NcPoly
from .rewrite import PresentedAlgebra


@dataclass(frozen=True)
class DiagonalAutomorphism:
    """Degree-zero automorphism acting by x_i -> lambda_i x_i."""

    lambdas: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(Fraction(v) for v in self.lambdas))
        if any(v == 0 for v in self.lambdas):
            raise ValueError("diagonal automorphism requires nonzero scalars")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def inverse(self) -> "DiagonalAutomorphism":
        return DiagonalAutomorphism(tuple(1 / v for v in self.lambdas))

    def power(self, k: int) -> "DiagonalAutomorphism":
        return DiagonalAutomorphism(tuple(v**k for v in self.lambdas))

    def as_linear_map(self) -> LinearMap:
        return LinearMap.diagonal(self.lambdas)

    def apply(self, p: NcPoly) -> NcPoly:
        terms = {}
        for w, c in p.terms.items():
            factor = Fraction(1)
            for letter in w:
                factor *= self.lambdas[letter]
            terms[w] = c * factor
        return NcPoly(terms)


Automorphism = Union[DiagonalAutomorphism, LinearMap]


def _inverse_generator_images(phi: Automorphism, n: int):
    if isinstance(phi, DiagonalAutomorphism):
        if phi.n != n:
            raise ValueError("automorphism size does not match the presentation")
        return [NcPoly({(j,): 1 / phi.lambdas[j]}) for j in range(n)]
    if phi.n != n:
        raise ValueError("automorphism size does not match the presentation")
    inv = phi.inverse()  # raises "singular map" when not invertible
    return [inv.image_of_generator(j) for j in range(n)]


def twist_presentation(alg: PresentedAlgebra, phi: Automorphism) -> PresentedAlgebra:
    """Presentation of the twist: the relation span transforms by identity (x) phi^{-1}.

    Each relation sum c_ab x_a x_b maps to sum c_ab x_a phi^{-1}(x_b);
    the output relations are renormalized to leading coefficient one.
    """
    inv_images = _inverse_generator_images(phi, alg.n)
    new_relations = []
    for rel in alg.relations:
        if rel.homogeneous_degree() != 2:
            raise ValueError(f"non-quadratic relation: {rel}")
        out = NcPoly.zero()
        for (a, b), c in rel.terms.items():
            out = out + (NcPoly.generator(a) * inv_images[b]).scale(c)
        new_relations.append(out)
    return PresentedAlgebra(alg.n, new_relations)


@dataclass(frozen=True)
class TwistVerdict:
    is_twist: bool
    lambdas: Optional[Tuple[Fraction, ...]]
    witness: Optional[Tuple[int, int, int]]  # 0-based (i, j, k) with mu_ik != mu_ij * mu_jk

    def __str__(self):
        if self.is_twist:
            return "is-twist lambda=(" + ",".join(str(v) for v in self.lambdas) + ")"
        i, j, k = self.witness
        return f"not-twist witness ({i + 1},{j + 1},{k + 1})"


def twist_criterion(mu: MuMatrix) -> TwistVerdict:
    """Multiplicativity test mu_ik = mu_ij * mu_jk over all triples.

    On success the scalars lambda are normalized by lambda_1 = 1, and the
    reconstruction mu_ij = lambda_j / lambda_i is verified entrywise.
    """
    n = mu.n
    for i, j, k in itertools.product(range(n), repeat=3):
        if mu[i, k] != mu[i, j] * mu[j, k]:
            return TwistVerdict(False, None, (i, j, k))
    lams = tuple(mu[0, j] for j in range(n))
    for i in range(n):
        for j in range(n):
            if mu[i, j] != lams[j] / lams[i]:
                raise AssertionError("scale reconstruction failed despite the triple test")
    return TwistVerdict(True, lams, None)


def mu_from_lambdas(lams: Sequence[Fraction]) -> MuMatrix:
    """mu_ij = lambda_j / lambda_i; always passes validate_mu and the criterion."""
    lams = [Fraction(v) for v in lams]
    if any(v == 0 for v in lams):
        raise ValueError("lambdas must be nonzero")
    n = len(lams)
    return MuMatrix([[lams[j] / lams[i] for j in range(n)] for i in range(n)])


def quadratic_coeff_rows(relations: Sequence[NcPoly], n: int):
    """Coefficient rows over the deglex-ordered degree-two word basis."""
    basis = [(a, b) for a in range(n) for b in range(n)]
    index = {w: i for i, w in enumerate(basis)}
    rows = []
    for rel in relations:
        if rel.homogeneous_degree() != 2:
            raise ValueError(f"non-quadratic relation: {rel}")
        row = [Fraction(0)] * len(basis)
        for w, c in rel.terms.items():
            row[index[w]] = c
        rows.append(row)
    return rows


def relation_span_equal(rels_a: Sequence[NcPoly], rels_b: Sequence[NcPoly], n: int) -> bool:
    """Compare quadratic relation spans via reduced row echelon forms."""
    rows_a = quadratic_coeff_rows(rels_a, n)
    rows_b = quadratic_coeff_rows(rels_b, n)
    if not rows_a or not rows_b:
        return not rows_a and not rows_b
    ech_a, _ = rref(rows_a)
    ech_b, _ = rref(rows_b)
    nonzero_a = [row for row in ech_a if any(row)]
    nonzero_b = [row for row in ech_b if any(row)]
    return nonzero_a == nonzero_b
