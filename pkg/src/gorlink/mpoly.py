"""Homogeneous polynomials in x0..x3 over GF(p), graded reverse lex order.

A monomial is an exponent 4-tuple; a polynomial is a dict mapping
monomials to nonzero residues in [1, p).  Grevlex compares total degree
first, then declares the monomial whose exponent vector has the smaller
entries late (reading x3, x2, x1) to be the larger one; x0 > x1 > x2 > x3.

The canonical text form (terms in descending grevlex order, coefficients
as integers in [0, p), '*' products and '^' powers) is used bit-exactly
in certificate files, so the renderer and parser here are strict.
"""

from ._frozen import Frozen
from .gf import inv_mod

__all__ = [
    "NVARS",
    "grevlex_key",
    "monomials_of_degree",
    "monomial_count",
    "MultiPoly",
]

NVARS = 4

_VARNAMES = ["x0", "x1", "x2", "x3"]


def grevlex_key(m):
    """Sort key: max() under this key is the grevlex-leading monomial."""
    return (m[0] + m[1] + m[2] + m[3], -m[3], -m[2], -m[1])


def monomial_mul(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def monomial_divides(a, b):
    """True iff a | b."""
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2] and a[3] <= b[3]


def monomial_div(b, a):
    return (b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3])


def monomial_lcm(a, b):
    return (
        max(a[0], b[0]),
        max(a[1], b[1]),
        max(a[2], b[2]),
        max(a[3], b[3]),
    )


def monomial_degree(m):
    return m[0] + m[1] + m[2] + m[3]


_monomial_cache = {}


def monomials_of_degree(t):
    """All degree-t monomials in descending grevlex order (cached tuple)."""
    if t < 0:
        return ()
    if t not in _monomial_cache:
        ms = []
        for e0 in range(t, -1, -1):
            for e1 in range(t - e0, -1, -1):
                for e2 in range(t - e0 - e1, -1, -1):
                    ms.append((e0, e1, e2, t - e0 - e1 - e2))
        ms.sort(key=grevlex_key, reverse=True)
        _monomial_cache[t] = tuple(ms)
    return _monomial_cache[t]


def monomial_count(t):
    return (t + 1) * (t + 2) * (t + 3) // 6 if t >= 0 else 0


class MultiPoly(Frozen):
    """Polynomial in x0..x3 over GF(p); terms is a monomial -> coeff dict."""

    __slots__ = ("terms", "p")

    def __init__(self, terms, p):
        clean = {}
        for m, c in terms.items():
            c = int(c) % p
            if c:
                clean[tuple(m)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "p", p)

    @classmethod
    def zero(cls, p):
        return cls({}, p)

    @classmethod
    def constant(cls, c, p):
        return cls({(0, 0, 0, 0): c}, p)

    @classmethod
    def variable(cls, i, p):
        e = [0, 0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1}, p)

    @classmethod
    def linear_form(cls, coeffs, p):
        """c0*x0 + c1*x1 + c2*x2 + c3*x3."""
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0, 0, 0, 0]
            e[i] = 1
            terms[tuple(e)] = c
        return cls(terms, p)

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        degs = {monomial_degree(m) for m in self.terms}
        return len(degs) <= 1

    @property
    def degree(self):
        if not self.terms:
            return -1
        return max(monomial_degree(m) for m in self.terms)

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        inv = inv_mod(lc, self.p)
        return MultiPoly({m: c * inv % self.p for m, c in self.terms.items()}, self.p)

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed moduli")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = (t.get(m, 0) + c) % self.p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return MultiPoly(t, self.p)

    def __sub__(self, other):
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = (t.get(m, 0) - c) % self.p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return MultiPoly(t, self.p)

    def __neg__(self):
        return MultiPoly({m: -c % self.p for m, c in self.terms.items()}, self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.p
            return MultiPoly({m: v * c % self.p for m, v in self.terms.items()}, self.p)
        self._check(other)
        p = self.p
        out = {}
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return MultiPoly(out, p)

    __rmul__ = __mul__

    def term_mul(self, mono, coeff):
        """Multiply by coeff * x^mono."""
        p = self.p
        coeff %= p
        return MultiPoly(
            {monomial_mul(m, mono): c * coeff % p for m, c in self.terms.items()}, p
        )

    def substitute_linear(self, images):
        """Apply xi -> images[i] (a linear change of coordinates)."""
        out = MultiPoly.zero(self.p)
        one = MultiPoly.constant(1, self.p)
        power_cache = [{0: one} for _ in range(NVARS)]
        for m, c in self.terms.items():
            piece = MultiPoly.constant(c, self.p)
            for i in range(NVARS):
                e = m[i]
                cache = power_cache[i]
                if e not in cache:
                    top = max(cache)
                    cur = cache[top]
                    for k in range(top + 1, e + 1):
                        cur = cur * images[i]
                        cache[k] = cur
                if e:
                    piece = piece * cache[e]
            out = out + piece
        return out

    def coefficient_vector(self, monomial_index, size):
        """Dense coefficient row for a fixed monomial ordering."""
        row = [0] * size
        for m, c in self.terms.items():
            row[monomial_index[m]] = c
        return row

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.p == other.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.p))

    # canonical text format -------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[m]
            factors = []
            if c != 1 or monomial_degree(m) == 0:
                factors.append(str(c))
            for i in range(NVARS):
                if m[i] == 1:
                    factors.append(_VARNAMES[i])
                elif m[i] > 1:
                    factors.append("%s^%d" % (_VARNAMES[i], m[i]))
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def parse(cls, text, p):
        text = text.strip()
        if text == "0":
            return cls.zero(p)
        terms = {}
        for chunk in text.split(" + "):
            coeff = 1
            expo = [0, 0, 0, 0]
            seen_coeff = False
            for factor in chunk.split("*"):
                factor = factor.strip()
                if "^" in factor:
                    name, _, power = factor.partition("^")
                    expo[_VARNAMES.index(name)] += int(power)
                elif factor in _VARNAMES:
                    expo[_VARNAMES.index(factor)] += 1
                else:
                    if seen_coeff:
                        raise ValueError("malformed term %r" % chunk)
                    coeff = int(factor)
                    seen_coeff = True
            m = tuple(expo)
            terms[m] = (terms.get(m, 0) + coeff) % p
        return cls(terms, p)

    def __repr__(self):
        return "MultiPoly(%s mod %d)" % (self.render(), self.p)
