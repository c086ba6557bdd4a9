"""Noncommutative polynomials on degree-one generators with a graded monomial order."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

from .exact import ExactMatrix, parse_scalar, rref, scalar_str

# Words are tuples of 0-based generator indices; rendering is 1-based.
Word = Tuple[int, ...]

MAX_GENERATORS = 16


def word_key(w: Word):
    """Sort key realizing the degree-lexicographic order (index 0 smallest)."""
    return (len(w), w)


def compare_deglex(a: Word, b: Word) -> int:
    """-1, 0 or 1 according to the graded lexicographic order."""
    ka, kb = word_key(a), word_key(b)
    return (ka > kb) - (ka < kb)


class NcPoly:
    """Element of the free algebra: a map from words to nonzero Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls()

    @classmethod
    def one(cls) -> "NcPoly":
        return cls({(): Fraction(1)})

    @classmethod
    def generator(cls, i: int) -> "NcPoly":
        return cls({(i,): Fraction(1)})

    @classmethod
    def word(cls, letters: Sequence[int], coeff=1) -> "NcPoly":
        return cls({tuple(letters): Fraction(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "NcPoly") -> "NcPoly":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Fraction(0)) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        out = NcPoly.__new__(NcPoly)
        out.terms = terms
        return out

    def __neg__(self) -> "NcPoly":
        out = NcPoly.__new__(NcPoly)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other) -> "NcPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = terms.get(w, Fraction(0)) + c1 * c2
                if s:
                    terms[w] = s
                else:
                    terms.pop(w, None)
        out = NcPoly.__new__(NcPoly)
        out.terms = terms
        return out

    def __rmul__(self, other) -> "NcPoly":
        return self.scale(other)

    def scale(self, c) -> "NcPoly":
        c = Fraction(c)
        if not c:
            return NcPoly.zero()
        out = NcPoly.__new__(NcPoly)
        out.terms = {w: c * v for w, v in self.terms.items()}
        return out

    def lead_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=word_key)

    def lead_coeff(self) -> Fraction:
        return self.terms[self.lead_word()]

    def monic(self) -> "NcPoly":
        if not self.terms:
            return self
        return self.scale(1 / self.lead_coeff())

    def degree(self):
        """Maximal word length; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(len(w) for w in self.terms)

    def homogeneous_degree(self):
        """The common degree of all words, or None (zero or inhomogeneous)."""
        degs = {len(w) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def max_letter(self):
        letters = [i for w in self.terms for i in w]
        return max(letters) if letters else None

    def sorted_terms(self) -> Iterator[tuple]:
        for w in sorted(self.terms, key=word_key):
            yield w, self.terms[w]

    def canonical_key(self):
        return tuple((w, (c.numerator, c.denominator)) for w, c in self.sorted_terms())

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"NcPoly({poly_str(self)})"


def nc_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    """Free-algebra product (bilinear, associative, unit = empty word)."""
    return p * q


class LinearMap:
    """Linear action on the degree-one span; column j is the image of generator j."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: ExactMatrix):
        if matrix.rows != matrix.cols:
            raise ValueError("linear map matrix must be square")
        self.matrix = matrix

    @classmethod
    def from_rows(cls, rows) -> "LinearMap":
        return cls(ExactMatrix([[Fraction(e) for e in row] for row in rows]))

    @classmethod
    def diagonal(cls, lams: Sequence[Fraction]) -> "LinearMap":
        lams = [Fraction(v) for v in lams]
        n = len(lams)
        return cls(ExactMatrix([[lams[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]))

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(ExactMatrix.identity(n))

    @property
    def n(self) -> int:
        return self.matrix.rows

    def image_of_generator(self, j: int) -> NcPoly:
        return NcPoly({(i,): self.matrix[i, j] for i in range(self.n)})

    def inverse(self) -> "LinearMap":
        n = self.n
        aug = [list(self.matrix.row(i)) + list(ExactMatrix.identity(n).row(i)) for i in range(n)]
        reduced, pivots = rref(aug)
        if pivots != list(range(n)):
            raise ValueError("singular map")
        return LinearMap(ExactMatrix([row[n:] for row in reduced]))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other, as maps on the generator span."""
        a, b = self.matrix, other.matrix
        return LinearMap(
            ExactMatrix(
                [[sum((a[i, k] * b[k, j] for k in range(self.n)), Fraction(0)) for j in range(self.n)]
                 for i in range(self.n)]
            )
        )

    def apply(self, p: NcPoly) -> NcPoly:
        return apply_linear(self, p)

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.matrix == other.matrix


def apply_linear(phi: LinearMap, p: NcPoly) -> NcPoly:
    """Extend the degree-one action of phi to an algebra endomorphism."""
    result = NcPoly.zero()
    images = [phi.image_of_generator(j) for j in range(phi.n)]
    for w, c in p.terms.items():
        factor = NcPoly.one()
        for letter in w:
            if letter >= phi.n:
                raise ValueError(f"generator index {letter + 1} outside the map's span")
            factor = factor * images[letter]
        result = result + factor.scale(c)
    return result


def poly_str(p: NcPoly, letter: str = "x") -> str:
    """Render as e.g. "x1*x2 + 2*x2*x1 - x3^2" (caret only for repeated letters)."""
    if not p.terms:
        return "0"
    parts = []
    for w, c in p.sorted_terms():
        factors = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = f"{letter}{w[i] + 1}"
            factors.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
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


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<gen>[A-Za-z]\d+)|(?P<op>[+\-*^]))")


def parse_poly(text: str, n: int) -> NcPoly:
    """Parse the rendering grammar back into an NcPoly.

    Accepts any generator letter (x, z, X, Z, ...) with a 1-based index,
    e.g. "x1*x2 + 2*x2*x1 - x3^2".
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot parse polynomial near {text[pos:pos+12]!r}")
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("gen"):
            tokens.append(("gen", m.group("gen")))
        else:
            tokens.append(("op", m.group("op")))

    result = NcPoly.zero()
    idx = 0
    sign = Fraction(1)
    first = True
    while idx < len(tokens):
        kind, val = tokens[idx]
        if kind == "op" and val in "+-":
            sign = Fraction(1) if val == "+" else Fraction(-1)
            idx += 1
            first = False
            continue
        if not first and tokens[idx - 1][0] != "op":
            raise ValueError("missing operator between terms")
        coeff = sign
        word: list = []
        expect_factor = True
        while idx < len(tokens):
            kind, val = tokens[idx]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                idx += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ValueError(f"unexpected token {val!r}")
            if kind == "num":
                coeff *= parse_scalar(val)
                idx += 1
            elif kind == "gen":
                gen_idx = int(val[1:]) - 1
                if not 0 <= gen_idx < n:
                    raise ValueError(f"generator {val!r} out of range 1..{n}")
                power = 1
                idx += 1
                if idx + 1 < len(tokens) and tokens[idx] == ("op", "^"):
                    if tokens[idx + 1][0] != "num" or "/" in tokens[idx + 1][1]:
                        raise ValueError("exponent must be a positive integer")
                    power = int(tokens[idx + 1][1])
                    if power < 1:
                        raise ValueError("exponent must be a positive integer")
                    idx += 2
                word.extend([gen_idx] * power)
            else:
                raise ValueError(f"unexpected token {val!r}")
            expect_factor = False
        result = result + NcPoly.word(word, coeff)
        sign = Fraction(1)
        first = False
    return result
