"""Normality and centrality detection, subalgebra bases, and the twist-theorem pipeline."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .clifford import (
    CliffordPresentation,
    MuSymmetricMatrix,
    base_point_free_check,
    build_gca,
    build_gsca,
    quadric_system_of,
)
from .exact import ExactMatrix, ParamPoly, parametric_minors, solve_in_span
from .freealg import NcPoly
from .rewrite import DegreeBoundError, GroebnerData, degree_basis, normal_form
from .twist import DiagonalAutomorphism, TwistVerdict, mu_from_lambdas, relation_span_equal, twist_criterion, twist_presentation


def _coords(p: NcPoly, word_index: Dict[tuple, int]) -> Tuple[Fraction, ...]:
    vec = [Fraction(0)] * len(word_index)
    for w, c in p.terms.items():
        vec[word_index[w]] = c
    return tuple(vec)


def _default_side(gb: GroebnerData) -> List[NcPoly]:
    return [NcPoly.generator(i) for i in range(gb.n)]


def _check_side_degrees(a_deg: int, side: Sequence[NcPoly], gb: GroebnerData):
    for g in side:
        deg = g.homogeneous_degree()
        if deg is None:
            raise ValueError("side basis elements must be nonzero and homogeneous")
        if a_deg + deg > gb.complete_through:
            raise DegreeBoundError(
                f"degree {a_deg + deg} exceeds completeness bound {gb.complete_through}"
            )


@dataclass(frozen=True)
class NormalVerdict:
    normal: bool
    witness: Optional[Tuple[str, int]]  # ("left"|"right", side index) on failure
    left: Optional[Dict[int, Tuple[Fraction, ...]]]
    right: Optional[Dict[int, Tuple[Fraction, ...]]]


def is_normal(a: NcPoly, gb: GroebnerData, side_basis: Optional[Sequence[NcPoly]] = None) -> NormalVerdict:
    """Single-degree normality of a against the span generated by side_basis.

    Checks g*a in span{a*h} and a*g in span{h*a} for every g in the side
    basis (h ranging over side elements of the same degree as g).  For an
    algebra generated by the side span this propagates to aA = Aa.
    """
    side = list(side_basis) if side_basis is not None else _default_side(gb)
    a = normal_form(a, gb)
    if not a:
        return NormalVerdict(True, None, {}, {})
    a_deg = a.homogeneous_degree()
    if a_deg is None:
        raise ValueError("element must be homogeneous")
    _check_side_degrees(a_deg, side, gb)
    by_degree: Dict[int, List[int]] = {}
    for idx, g in enumerate(side):
        by_degree.setdefault(g.homogeneous_degree(), []).append(idx)

    left: Dict[int, Tuple[Fraction, ...]] = {}
    right: Dict[int, Tuple[Fraction, ...]] = {}
    for deg, indices in by_degree.items():
        words = degree_basis(gb, a_deg + deg)
        word_index = {w: i for i, w in enumerate(words)}
        right_mults = [_coords(normal_form(a * side[h], gb), word_index) for h in indices]
        left_mults = [_coords(normal_form(side[h] * a, gb), word_index) for h in indices]
        for g in indices:
            target = _coords(normal_form(side[g] * a, gb), word_index)
            combo = solve_in_span(target, right_mults)
            if combo is None:
                return NormalVerdict(False, ("left", g), None, None)
            row = [Fraction(0)] * len(side)
            for pos, h in enumerate(indices):
                row[h] = combo[pos]
            left[g] = tuple(row)
            target = _coords(normal_form(a * side[g], gb), word_index)
            combo = solve_in_span(target, left_mults)
            if combo is None:
                return NormalVerdict(False, ("right", g), None, None)
            row = [Fraction(0)] * len(side)
            for pos, h in enumerate(indices):
                row[h] = combo[pos]
            right[g] = tuple(row)
    return NormalVerdict(True, None, left, right)


@dataclass(frozen=True)
class CentralVerdict:
    central: bool
    witness: Optional[int]  # side index of a non-commuting element


def is_central(a: NcPoly, gb: GroebnerData, side_basis: Optional[Sequence[NcPoly]] = None) -> CentralVerdict:
    """Check NF(g*a - a*g) = 0 for every g in the side basis."""
    side = list(side_basis) if side_basis is not None else _default_side(gb)
    a = normal_form(a, gb)
    if not a:
        return CentralVerdict(True, None)
    a_deg = a.homogeneous_degree()
    if a_deg is None:
        raise ValueError("element must be homogeneous")
    _check_side_degrees(a_deg, side, gb)
    for idx, g in enumerate(side):
        if normal_form(g * a - a * g, gb):
            return CentralVerdict(False, idx)
    return CentralVerdict(True, None)


class SubalgebraBasis:
    """Degreewise bases of the subalgebra generated by degree-two elements."""

    __slots__ = ("ambient", "generators", "per_degree")

    def __init__(self, ambient: GroebnerData, generators: Sequence[NcPoly], per_degree: Dict[int, List[NcPoly]]):
        self.ambient = ambient
        self.generators = tuple(generators)
        self.per_degree = per_degree

    def dims(self) -> Tuple[int, ...]:
        return tuple(len(self.per_degree[d]) for d in sorted(self.per_degree))

    def __repr__(self):
        return f"SubalgebraBasis(dims={self.dims()})"


def subalgebra_basis(gb: GroebnerData, generators: Sequence[NcPoly], through: int) -> SubalgebraBasis:
    """Degreewise spans of products of the generators, degree by degree.

    All length-m words in the generators are normal-formed and a maximal
    independent subset is extracted by first-come pivoting in word order.
    """
    if through > gb.complete_through:
        raise DegreeBoundError(f"degree {through} exceeds completeness bound {gb.complete_through}")
    gens = []
    for g in generators:
        g = normal_form(g, gb)
        if not g:
            continue
        if g.homogeneous_degree() != 2:
            raise ValueError("subalgebra generators must be homogeneous of degree 2")
        gens.append(g)
    per_degree: Dict[int, List[NcPoly]] = {d: [] for d in range(through + 1)}
    per_degree[0] = [NcPoly.one()]
    products: Dict[tuple, NcPoly] = {(): NcPoly.one()}
    for m in range(1, through // 2 + 1):
        degree = 2 * m
        words = degree_basis(gb, degree)
        word_index = {w: i for i, w in enumerate(words)}
        reducer_rows: List[List[Fraction]] = []
        chosen: List[NcPoly] = []
        level: Dict[tuple, NcPoly] = {}
        for prefix, value in products.items():
            for g_idx, g in enumerate(gens):
                prod = normal_form(value * g, gb)
                level[prefix + (g_idx,)] = prod
                if not prod:
                    continue
                vec = list(_coords(prod, word_index))
                # incremental row reduction; first independent vector wins
                for row in reducer_rows:
                    pivot = next(i for i, e in enumerate(row) if e)
                    if vec[pivot]:
                        f = vec[pivot]
                        vec = [x - f * y for x, y in zip(vec, row)]
                if any(vec):
                    lead = next(i for i, e in enumerate(vec) if e)
                    inv = 1 / vec[lead]
                    reducer_rows.append([x * inv for x in vec])
                    chosen.append(prod)
        per_degree[degree] = chosen
        products = level
    return SubalgebraBasis(gb, gens, per_degree)


@dataclass(frozen=True)
class MinorRecord:
    side: str  # "left" or "right" containment
    g_index: int
    poly: ParamPoly


@dataclass(frozen=True)
class PointVerdict:
    point: Tuple[Fraction, ...]
    normal: bool
    certificate: Optional[int]  # index into the minor list, for not-normal points


@dataclass(frozen=True)
class LocusReport:
    variables: Tuple[str, ...]
    minors: Tuple[MinorRecord, ...]
    points: Tuple[PointVerdict, ...]


def default_grid(m: int, radius: int = 2) -> List[Tuple[Fraction, ...]]:
    """All parameter tuples with entries in -radius..radius, zero tuple excluded."""
    values = [Fraction(v) for v in range(-radius, radius + 1)]
    return [pt for pt in itertools.product(values, repeat=m) if any(pt)]


def normal_locus_in_span(
    gb: GroebnerData,
    span_gens: Sequence[NcPoly],
    side_basis: Sequence[NcPoly],
    grid: Sequence[Tuple[Fraction, ...]],
) -> LocusReport:
    """Normality of a = sum c_k span_gens[k] across a parameter grid.

    Because a is linear in the parameters, every product needed by the
    normality containments is a linear combination of products of fixed
    polynomials, so the containment matrices have entries linear in the
    parameters.  Vanishing of all maximal minors of each augmented matrix
    is necessary for normality; a nonzero minor at a grid point is a sound
    not-normal certificate, and the remaining points are settled exactly by
    specializing and running is_normal.
    """
    gens = [normal_form(g, gb) for g in span_gens]
    side = [normal_form(g, gb) for g in side_basis]
    degs = {g.homogeneous_degree() for g in gens if g}
    if len(degs) != 1:
        raise ValueError("span generators must be nonzero, homogeneous, of one common degree")
    span_deg = degs.pop()
    side_degs = {g.homogeneous_degree() for g in side if g}
    if len(side_degs) != 1:
        raise ValueError("side basis must be nonzero, homogeneous, of one common degree")
    side_deg = side_degs.pop()
    total = span_deg + side_deg
    if total > gb.complete_through:
        raise DegreeBoundError(f"degree {total} exceeds completeness bound {gb.complete_through}")

    m = len(gens)
    s = len(side)
    variables = tuple(f"c{k + 1}" for k in range(m))
    words = degree_basis(gb, total)
    word_index = {w: i for i, w in enumerate(words)}
    # gen_times_side[k][h] and side_times_gen[h][k] drive both containments
    gen_times_side = [[_coords(normal_form(gens[k] * side[h], gb), word_index) for h in range(s)] for k in range(m)]
    side_times_gen = [[_coords(normal_form(side[h] * gens[k], gb), word_index) for k in range(m)] for h in range(s)]

    def linear_entry(vectors_by_param: List[Tuple[Fraction, ...]], w: int) -> ParamPoly:
        terms = {}
        for k in range(m):
            c = vectors_by_param[k][w]
            if c:
                exp = tuple(1 if t == k else 0 for t in range(m))
                terms[exp] = c
        return ParamPoly(variables, terms)

    minors: List[MinorRecord] = []
    for side_name in ("left", "right"):
        for g in range(s):
            if side_name == "left":
                cols = [[gen_times_side[k][h] for k in range(m)] for h in range(s)]
                aug = [side_times_gen[g][k] for k in range(m)]
            else:
                cols = [[side_times_gen[h][k] for k in range(m)] for h in range(s)]
                aug = [gen_times_side[k][g] for k in range(m)]
            rows = []
            for w in range(len(words)):
                row = [linear_entry(col, w) for col in cols]
                row.append(linear_entry(aug, w))
                if any(row):
                    rows.append(row)
            if len(rows) >= s + 1:
                for poly in parametric_minors(ExactMatrix(rows), s + 1):
                    if poly:
                        minors.append(MinorRecord(side_name, g, poly))

    points: List[PointVerdict] = []
    for point in grid:
        point = tuple(Fraction(v) for v in point)
        certificate = None
        for idx, record in enumerate(minors):
            if record.poly.evaluate(point):
                certificate = idx
                break
        if certificate is not None:
            points.append(PointVerdict(point, False, certificate))
            continue
        element = NcPoly.zero()
        for c, g in zip(point, gens):
            element = element + g.scale(c)
        verdict = is_normal(element, gb, side)
        points.append(PointVerdict(point, verdict.normal, None))
    return LocusReport(variables, tuple(minors), tuple(points))


def _require_diagonal(tau):
    if not isinstance(tau, DiagonalAutomorphism):
        raise ValueError(
            "only diagonal automorphisms are supported here; diagonalize the map externally first"
        )


@dataclass(frozen=True)
class RElement:
    i: int
    j: int
    value: NcPoly  # stored in normal form; may be zero in the algebra

    @property
    def is_zero(self) -> bool:
        return not self.value


def build_r_elements(pres: CliffordPresentation, tau: DiagonalAutomorphism, gb: Optional[GroebnerData] = None) -> List[RElement]:
    """The twisted pair elements lambda_i x_i x_j + lambda_j x_j x_i, i <= j.

    Zero values (relations can kill a pair) are retained and flagged via
    is_zero so downstream checks can skip them while reporting the fact.
    """
    _require_diagonal(tau)
    if pres.mu != mu_from_lambdas(tau.lambdas):
        raise ValueError("mu/tau mismatch")
    if gb is None:
        gb = pres.groebner(2)
    lams = tau.lambdas
    out = []
    for i in range(pres.n):
        for j in range(i, pres.n):
            raw = NcPoly.generator(i) * NcPoly.generator(j) * lams[i] + NcPoly.generator(j) * NcPoly.generator(i) * lams[j]
            out.append(RElement(i, j, normal_form(raw, gb)))
    return out


@dataclass
class TheoremReport:
    """Structured evidence for each clause of the twist-theorem pipeline."""

    criterion: TwistVerdict
    rejected: bool = False
    construction_consistent: Optional[bool] = None
    normality_scalars: Dict[Tuple[int, int, int], Fraction] = field(default_factory=dict)
    normality_ok: Optional[bool] = None
    dagger_checks: List[Tuple[Tuple[int, int, int, int], bool]] = field(default_factory=list)
    dagger_ok: Optional[bool] = None
    nu_cocycle: Optional[bool] = None
    r_dims_expected: Optional[Tuple[int, ...]] = None
    r_dims_computed: Optional[Tuple[int, ...]] = None
    r_hilbert_ok: Optional[bool] = None
    c_scalars: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)
    c_twist_ok: Optional[bool] = None
    zero_pairs: Tuple[Tuple[int, int], ...] = ()
    warnings: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        if self.rejected or not self.criterion.is_twist:
            return False
        clauses = (self.normality_ok, self.dagger_ok, self.nu_cocycle, self.r_hilbert_ok, self.c_twist_ok)
        return all(c is True for c in clauses)


def _skew_poly_dims(n: int, through: int) -> Tuple[int, ...]:
    """Coefficients of 1/(1-t^2)^n: the series of n q-commuting degree-2 generators."""
    return tuple(math.comb(n - 1 + d // 2, d // 2) if d % 2 == 0 else 0 for d in range(through + 1))


def verify_twist_theorem(matrices: Sequence, tau: DiagonalAutomorphism, through: int) -> TheoremReport:
    """Verify, exactly and within the degree bound, the full twist pipeline.

    The commutative algebra B is built from the symmetric matrices, its
    twist A by tau is constructed (and cross-checked against the directly
    scaled skew data), and five clauses are checked: the normality scalars
    of the pair elements, their q-commutation, the scalar cocycle identity,
    the dimensions of the subalgebra generated by the y's, and the twisted
    commutation of the corresponding elements on the commutative side.
    """
    _require_diagonal(tau)
    if through < 4:
        raise ValueError("through must be >= 4 (the checks involve degree-4 products)")
    B = build_gca(matrices)
    n = B.n
    if tau.n != n:
        raise ValueError("tau size does not match the matrices")
    lams = tau.lambdas
    mu = mu_from_lambdas(lams)
    report = TheoremReport(criterion=twist_criterion(mu))

    warnings = []
    bpf = base_point_free_check(quadric_system_of(B), 2 * n + 2, assume_normalizing=True)
    if not bpf.base_point_free:
        warnings.append("quadric system of B not verified base-point-free; theorem hypotheses not established")

    scaled = [
        MuSymmetricMatrix(mu, [[lams[j] * B.matrices[k][i, j] for j in range(n)] for i in range(n)])
        for k in range(n)
    ]
    A = build_gsca(mu, scaled)
    twisted = twist_presentation(B.presentation(), tau)
    report.construction_consistent = relation_span_equal(A.x_relations, twisted.relations, n)

    gb_a = A.groebner(through)
    r_elems = build_r_elements(A, tau, gb_a)
    report.zero_pairs = tuple((r.i, r.j) for r in r_elems if r.is_zero)
    nonzero = [r for r in r_elems if not r.is_zero]

    normality_ok = True
    for r in nonzero:
        for k in range(n):
            scalar = mu[k, r.i] * mu[k, r.j]
            report.normality_scalars[(k, r.i, r.j)] = scalar
            delta = NcPoly.generator(k) * r.value - (r.value * NcPoly.generator(k)).scale(scalar)
            if normal_form(delta, gb_a):
                normality_ok = False
    report.normality_ok = normality_ok

    def nu(i, j, k, p):
        return mu[i, k] ** 2 * mu[j, p] ** 2

    dagger_ok = True
    for r1 in nonzero:
        for r2 in nonzero:
            factor = nu(r1.i, r1.j, r2.i, r2.j)
            delta = r1.value * r2.value - (r2.value * r1.value).scale(factor)
            ok = not normal_form(delta, gb_a)
            report.dagger_checks.append(((r1.i, r1.j, r2.i, r2.j), ok))
            dagger_ok = dagger_ok and ok
    report.dagger_ok = dagger_ok

    report.nu_cocycle = all(
        nu(i, j, k, p) * nu(k, p, a, b) == nu(i, j, a, b)
        for i, j, k, p, a, b in itertools.product(range(n), repeat=6)
    )

    sub = subalgebra_basis(gb_a, A.y_normal_forms(gb_a), through)
    report.r_dims_computed = sub.dims()
    report.r_dims_expected = _skew_poly_dims(n, through)
    report.r_hilbert_ok = report.r_dims_computed == report.r_dims_expected

    gb_b = B.groebner(4)
    c_twist_ok = True
    c_elements: Dict[Tuple[int, int], NcPoly] = {}
    for i in range(n):
        for j in range(i, n):
            e = NcPoly.generator(i) * NcPoly.generator(j) + NcPoly.generator(j) * NcPoly.generator(i)
            e_nf = normal_form(e, gb_b)
            c = normal_form(tau.apply(e), gb_b)
            report.c_scalars[(i, j)] = lams[i] * lams[j]
            c_elements[(i, j)] = c
            if e_nf:
                words = degree_basis(gb_b, 2)
                word_index = {w: t for t, w in enumerate(words)}
                combo = solve_in_span(_coords(c, word_index), [_coords(e_nf, word_index)])
                if combo is None or combo[0] != lams[i] * lams[j]:
                    c_twist_ok = False
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    for (i, j) in pairs:
        for (k, p) in pairs:
            lhs = c_elements[(i, j)] * c_elements[(k, p)].scale(lams[k] ** 2 * lams[p] ** 2)
            rhs = (c_elements[(k, p)] * c_elements[(i, j)].scale(lams[i] ** 2 * lams[j] ** 2)).scale(nu(i, j, k, p))
            if normal_form(lhs - rhs, gb_b):
                c_twist_ok = False
    report.c_twist_ok = c_twist_ok
    report.warnings = tuple(warnings)
    return report


def verify_twist_from_gsca(mu, matrices: Sequence[MuSymmetricMatrix], through: int, tau: Optional[DiagonalAutomorphism] = None) -> TheoremReport:
    """Entry point for skew data: reject when mu is not of twist type.

    When the criterion passes, the commutative matrices are recovered by
    unscaling the columns and the pipeline runs on them.
    """
    crit = twist_criterion(mu)
    if not crit.is_twist:
        return TheoremReport(criterion=crit, rejected=True)
    if tau is not None:
        if mu_from_lambdas(tau.lambdas) != mu:
            raise ValueError("mu/tau mismatch")
        lams = tau.lambdas
    else:
        lams = crit.lambdas
    n = mu.n
    unscaled = [[[matrices[k][i, j] / lams[j] for j in range(n)] for i in range(n)] for k in range(n)]
    return verify_twist_theorem(unscaled, DiagonalAutomorphism(lams), through)
