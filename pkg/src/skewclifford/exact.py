"""Exact rational scalars, parameter polynomials, and dense exact linear algebra."""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

_INT_RE = re.compile(r"^[+-]?\d+$")


def parse_scalar(text) -> Fraction:
    """Parse "p" or "p/q" into an exact rational.

    Integers are also accepted directly; floats and anything non-rational
    are rejected so no value ever passes through binary floating point.
    """
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"malformed scalar {text!r} (expected string or integer)")
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        num, den = num.strip(), den.strip()
        if not (_INT_RE.match(num) and _INT_RE.match(den)):
            raise ValueError(f"malformed scalar string {text!r}")
        if int(den) == 0:
            raise ValueError(f"zero denominator in scalar {text!r}")
        return Fraction(int(num), int(den))
    if not _INT_RE.match(s):
        raise ValueError(f"malformed scalar string {text!r}")
    return Fraction(int(s))


def scalar_str(x: Fraction) -> str:
    """Render a rational as "p/q", with "/q" omitted when q = 1."""
    return str(x)


class ParamPoly:
    """Commutative polynomial in named parameters with exact coefficients.

    Terms map exponent tuples (one slot per variable) to nonzero Fractions.
    Instances are treated as immutable once constructed.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms=None):
        self.variables = tuple(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.variables) or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for variables {self.variables}")
            clean[exp] = c
        self.terms = clean

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "ParamPoly":
        value = Fraction(value)
        zero_exp = (0,) * len(tuple(variables))
        return cls(variables, {zero_exp: value} if value else {})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "ParamPoly":
        variables = tuple(variables)
        idx = variables.index(name)
        exp = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {exp: Fraction(1)})

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other.variables != self.variables:
                raise ValueError("parameter polynomials over different variable lists")
            return other
        return ParamPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, Fraction(0)) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return ParamPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return ParamPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return ParamPoly(self.variables, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.constant(self.variables, other)
        return isinstance(other, ParamPoly) and self.variables == other.variables and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def evaluate(self, values: Sequence) -> Fraction:
        values = [Fraction(v) for v in values]
        if len(values) != len(self.variables):
            raise ValueError("wrong number of parameter values")
        total = Fraction(0)
        for exp, c in self.terms.items():
            prod = c
            for v, e in zip(values, exp):
                prod *= v ** e
            total += prod
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[exp]
            factors = []
            for name, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = scalar_str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{scalar_str(abs(c))}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ParamPoly({self})"


class ExactMatrix:
    """Dense matrix with Fraction or ParamPoly entries; immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        grid = tuple(tuple(row) for row in entries)
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        if any(len(row) != self.cols for row in grid):
            raise ValueError("ragged matrix")
        self.entries = grid

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def row(self, i) -> tuple:
        return self.entries[i]

    def column(self, j) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def specialize(self, values: Sequence) -> "ExactMatrix":
        """Evaluate a ParamPoly matrix at numeric parameter values."""
        return ExactMatrix(
            [[e.evaluate(values) if isinstance(e, ParamPoly) else Fraction(e) for e in row] for row in self.entries]
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals, by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers; row scaling does not change rank.
    """
    work = []
    for row in m.entries:
        fr = [Fraction(e) for e in row]
        den = math.lcm(*(e.denominator for e in fr)) if fr else 1
        work.append([int(e * den) for e in fr])
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                work[i][j] = (work[r][c] * work[i][j] - work[i][c] * work[r][j]) // prev
            work[i][c] = 0
        prev = work[r][c]
        r += 1
        if r == nrows:
            break
    return r


def rref(rows: Sequence[Sequence[Fraction]]):
    """Reduced row echelon form with first-pivot preference.

    Returns (new_rows, pivot_columns); deterministic for a given input.
    """
    work = [list(map(Fraction, row)) for row in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][c]
        work[r] = [e * inv for e in work[r]]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


def solve_in_span(target: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]):
    """Express target as an exact combination of the basis vectors.

    Returns the coefficient tuple, or None when the target is not in the
    span.  Free coefficients are set to zero (first-pivot preference), so
    the answer is deterministic.
    """
    target = [Fraction(t) for t in target]
    if not basis:
        return () if not any(target) else None
    if any(len(b) != len(target) for b in basis):
        raise ValueError("basis vectors and target must have equal length")
    ncols = len(basis)
    aug = [[Fraction(basis[j][i]) for j in range(ncols)] + [target[i]] for i in range(len(target))]
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    coeffs = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        coeffs[c] = reduced[r][ncols]
    return tuple(coeffs)


def _lift(entry, variables) -> ParamPoly:
    if isinstance(entry, ParamPoly):
        return entry
    return ParamPoly.constant(variables, entry)


def _det(grid) -> ParamPoly:
    n = len(grid)
    if n == 1:
        return grid[0][0]
    total = None
    for j in range(n):
        if not grid[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in grid[1:]]
        term = grid[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return ParamPoly(grid[0][0].variables, {})
    return total


def parametric_minors(m: ExactMatrix, order: int):
    """All order x order minors, row-major over index subsets, as ParamPoly.

    Row subsets vary slowest; each minor is expanded to canonical form.
    """
    if order == 0:
        raise ValueError("empty minor order")
    if order > min(m.rows, m.cols):
        raise ValueError(f"minor order {order} exceeds matrix shape {m.rows}x{m.cols}")
    variables = ()
    for row in m.entries:
        for e in row:
            if isinstance(e, ParamPoly):
                variables = e.variables
                break
        if variables:
            break
    lifted = [[_lift(e, variables) for e in row] for row in m.entries]
    minors = []
    for rows in itertools.combinations(range(m.rows), order):
        for cols in itertools.combinations(range(m.cols), order):
            sub = [[lifted[i][j] for j in cols] for i in rows]
            minors.append(_det(sub))
    return minors
