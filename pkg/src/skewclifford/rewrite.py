"""Truncated noncommutative Groebner bases for graded presentations.

Relations are homogeneous, so overlap obstructions can be resolved strictly
degree by degree: once every obstruction of degree <= D reduces to zero, the
words avoiding all leading words form a basis of each graded piece up to D,
and normal forms of elements of degree <= D are unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .freealg import MAX_GENERATORS, NcPoly, Word, word_key


class DegreeBoundError(ValueError):
    """Raised when an operation needs completeness beyond the computed bound."""


class PresentedAlgebra:
    """Graded algebra on n degree-one generators with homogeneous relations of degree >= 2."""

    __slots__ = ("n", "relations")

    def __init__(self, n: int, relations: Sequence[NcPoly]):
        if not 1 <= n <= MAX_GENERATORS:
            raise ValueError(f"generator count must be in 1..{MAX_GENERATORS}, got {n}")
        cleaned = []
        for r in relations:
            if not r:
                continue
            deg = r.homogeneous_degree()
            if deg is None:
                raise ValueError(f"inhomogeneous relation rejected: {r}")
            if deg < 2:
                raise ValueError(f"relation of degree {deg} rejected (must be >= 2): {r}")
            top = r.max_letter()
            if top is not None and top >= n:
                raise ValueError(f"relation uses generator {top + 1} but n = {n}")
            cleaned.append(r.monic())
        cleaned.sort(key=lambda p: (word_key(p.lead_word()), p.canonical_key()))
        self.n = n
        self.relations = tuple(cleaned)

    def __eq__(self, other):
        return isinstance(other, PresentedAlgebra) and self.n == other.n and self.relations == other.relations

    def __repr__(self):
        return f"PresentedAlgebra(n={self.n}, relations={len(self.relations)})"


def reduce_poly(p: NcPoly, basis: Sequence[NcPoly]) -> NcPoly:
    """Fully reduce p modulo a list of monic polynomials.

    Strategy is fixed for reproducibility: rewrite the deglex-largest
    reducible word, at its leftmost reducible position, by the smallest
    matching leading word.
    """
    if not basis:
        return p
    leads = sorted(((g.lead_word(), g) for g in basis), key=lambda t: word_key(t[0]))
    lead_words = [lw for lw, _ in leads]
    min_len = min(len(lw) for lw in lead_words)
    terms = dict(p.terms)
    while True:
        hit = None
        for w in sorted(terms, key=word_key, reverse=True):
            if len(w) < min_len:
                break
            for pos in range(len(w) - min_len + 1):
                for lw, g in leads:
                    if w[pos : pos + len(lw)] == lw:
                        hit = (w, pos, lw, g)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        w, pos, lw, g = hit
        c = terms.pop(w)
        left, right = w[:pos], w[pos + len(lw) :]
        for gw, gc in g.terms.items():
            if gw == lw:
                continue
            nw = left + gw + right
            s = terms.get(nw, Fraction(0)) - c * gc
            if s:
                terms[nw] = s
            else:
                terms.pop(nw, None)
    return NcPoly(terms)


def _interreduce(polys: Sequence[NcPoly]) -> List[NcPoly]:
    """Mutually reduce a set of monic polynomials to the canonical reduced set."""
    basis = [p.monic() for p in polys if p]
    changed = True
    while changed:
        changed = False
        basis.sort(key=lambda p: (word_key(p.lead_word()), p.canonical_key()))
        for i in range(len(basis)):
            p = basis[i]
            others = basis[:i] + basis[i + 1 :]
            h = reduce_poly(p, others)
            if h != p:
                basis.pop(i)
                if h:
                    basis.append(h.monic())
                changed = True
                break
    basis.sort(key=lambda p: (word_key(p.lead_word()), p.canonical_key()))
    return basis


class GroebnerData:
    """A truncated, inter-reduced rewriting system for a graded presentation."""

    __slots__ = ("source", "max_degree", "elements", "complete_through", "_basis_cache")

    def __init__(self, source: PresentedAlgebra, max_degree: int, elements: Sequence[NcPoly], complete_through: int):
        self.source = source
        self.max_degree = max_degree
        self.elements = tuple(elements)
        self.complete_through = complete_through
        self._basis_cache: dict = {}

    @property
    def n(self) -> int:
        return self.source.n

    def lead_words(self) -> List[Word]:
        return [g.lead_word() for g in self.elements]

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerData)
            and self.source == other.source
            and self.elements == other.elements
            and self.complete_through == other.complete_through
        )

    def __repr__(self):
        return f"GroebnerData(n={self.n}, elements={len(self.elements)}, complete_through={self.complete_through})"


def _obstructions(basis: Sequence[NcPoly], degree: int):
    """Overlap ambiguities with ambiguity word of the given total degree.

    Each item is (ambiguity word, left poly, right poly, overlap length);
    sorted by (word, overlap length, polynomial keys) for determinism.
    """
    obs = []
    for f in basis:
        u = f.lead_word()
        for g in basis:
            v = g.lead_word()
            for ell in range(1, min(len(u), len(v))):
                if len(u) + len(v) - ell != degree:
                    continue
                if u[len(u) - ell :] == v[:ell]:
                    obs.append((u + v[ell:], f, g, ell))
    obs.sort(key=lambda t: (word_key(t[0]), t[3], t[1].canonical_key(), t[2].canonical_key()))
    return obs


def groebner(alg: PresentedAlgebra, max_degree: int) -> GroebnerData:
    """Resolve all overlap obstructions of degree <= max_degree.

    Obstructions are processed in (degree, word) order and every nonzero
    reduced S-polynomial is adjoined monic; the basis is kept inter-reduced
    throughout, so the output is canonical.
    """
    if max_degree < 2:
        raise ValueError("max_degree must be >= 2")
    basis = _interreduce(alg.relations)
    for d in range(3, max_degree + 1):
        for w, f, g, ell in _obstructions(basis, d):
            # Stale pairs (f or g replaced by interreduction) still yield
            # ideal members, so reducing them is sound either way.
            u, v = f.lead_word(), g.lead_word()
            b = v[ell:]
            a = u[: len(u) - ell]
            s = f * NcPoly.word(b) - NcPoly.word(a) * g
            h = reduce_poly(s, basis)
            if h:
                basis = _interreduce(basis + [h.monic()])
    return GroebnerData(alg, max_degree, basis, max_degree)


def normal_form(p: NcPoly, gb: GroebnerData) -> NcPoly:
    """Unique normal form of p; requires deg(p) within the completeness bound."""
    deg = p.degree()
    if deg is not None and deg > gb.complete_through:
        raise DegreeBoundError(
            f"degree {deg} exceeds completeness bound {gb.complete_through}"
        )
    return reduce_poly(p, gb.elements)


def degree_basis(gb: GroebnerData, d: int) -> List[Word]:
    """All degree-d words with no leading word as a subword, in deglex order."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d > gb.complete_through:
        raise DegreeBoundError(f"degree {d} exceeds completeness bound {gb.complete_through}")
    cache = gb._basis_cache
    if d in cache:
        return cache[d]
    leads = {g.lead_word() for g in gb.elements}
    lengths = sorted({len(lw) for lw in leads})
    start = max((k for k in cache if k <= d), default=None)
    if start is None:
        cache[0] = [()]
        start = 0
    words = cache[start]
    for k in range(start + 1, d + 1):
        nxt = []
        for w in words:
            for i in range(gb.n):
                cand = w + (i,)
                # w is already normal, so only suffixes ending at the new
                # letter can introduce a leading word.
                if any(len(cand) >= L and cand[len(cand) - L :] in leads for L in lengths):
                    continue
                nxt.append(cand)
        cache[k] = nxt
        words = nxt
    return cache[d]


def hilbert_coeffs(gb: GroebnerData, through: int) -> List[int]:
    """Dimensions of the graded pieces 0..through."""
    return [len(degree_basis(gb, d)) for d in range(through + 1)]


@dataclass(frozen=True)
class FiniteDimVerdict:
    finite: bool
    dimension: Optional[int]
    bound: int

    def __str__(self):
        if self.finite:
            return f"finite (dimension {self.dimension})"
        return f"unknown at bound {self.bound}"


def finite_dim_check(gb: GroebnerData) -> FiniteDimVerdict:
    """Detect finite total dimension from a vanishing graded piece.

    A zero piece in degree d kills every higher degree because the algebra
    is generated in degree one.
    """
    total = 0
    for d in range(gb.complete_through + 1):
        count = len(degree_basis(gb, d))
        if count == 0:
            return FiniteDimVerdict(True, total, gb.complete_through)
        total += count
    return FiniteDimVerdict(False, None, gb.complete_through)
