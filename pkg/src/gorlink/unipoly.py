"""Monic univariate polynomial arithmetic and factorization over GF(p).

Polynomials are coefficient sequences in ascending degree, entries in
[0, p).  Unlike the rest of the package, this module accepts p = 2 as
well: the split-statistics experiments cross-check factor counts over
GF(2) and GF(3).

Factorization is square-free decomposition, then distinct-degree
splitting, then randomized equal-degree (Cantor-Zassenhaus) splitting;
the char-2 case uses the trace map instead of an exponentiation by
(q^d - 1)/2.  Factor lists are returned in a canonical order (degree,
then the ascending-degree coefficient tuple, lexicographically) so the
output is deterministic even though the splitting is randomized.
"""

from ._frozen import Frozen
from .gf import inv_mod
from .rng import SplitStream

__all__ = [
    "UniPoly",
    "is_squarefree",
    "factor",
    "factor_degree_profile",
    "find_factor_of_degree",
    "random_monic",
]

_EDF_RETRIES = 64


# ---------------------------------------------------------------------------
# raw coefficient-list helpers (ascending degree, normalized: no trailing 0)


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def _sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _trim(out)


def _mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _scale(a, c, p):
    c %= p
    if c == 0:
        return []
    return [x * c % p for x in a]


def _divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = inv_mod(lb, p)
    q = [0] * max(0, len(r) - db)
    while len(r) - 1 >= db and r:
        c = r[-1] * inv % p
        k = len(r) - 1 - db
        q[k] = c
        for i in range(db + 1):
            r[k + i] = (r[k + i] - c * b[i]) % p
        _trim(r)
    return _trim(q), r


def _mod(a, b, p):
    return _divmod(a, b, p)[1]


def _monic(a, p):
    if not a:
        return a
    if a[-1] == 1:
        return list(a)
    return _scale(a, inv_mod(a[-1], p), p)


def _gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _deriv(a, p):
    return _trim([i * a[i] % p for i in range(1, len(a))])


def _mulmod(a, b, f, p):
    return _mod(_mul(a, b, p), f, p)


def _powmod(a, e, f, p):
    result = [1]
    base = _mod(a, f, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return result


# ---------------------------------------------------------------------------


class UniPoly(Frozen):
    """Univariate polynomial over GF(p); coefficients ascending by degree."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p):
        if p < 2:
            raise ValueError("modulus must be a prime >= 2")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(_trim([int(c) % p for c in coeffs])))

    @classmethod
    def zero(cls, p):
        return cls((), p)

    @classmethod
    def one(cls, p):
        return cls((1,), p)

    @classmethod
    def x(cls, p):
        return cls((0, 1), p)

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self):
        return UniPoly(_monic(list(self.coeffs), self.p), self.p)

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed moduli %d and %d" % (self.p, other.p))

    def __add__(self, other):
        self._check(other)
        return UniPoly(_add(list(self.coeffs), list(other.coeffs), self.p), self.p)

    def __sub__(self, other):
        self._check(other)
        return UniPoly(_sub(list(self.coeffs), list(other.coeffs), self.p), self.p)

    def __mul__(self, other):
        self._check(other)
        return UniPoly(_mul(list(self.coeffs), list(other.coeffs), self.p), self.p)

    def __divmod__(self, other):
        self._check(other)
        q, r = _divmod(list(self.coeffs), list(other.coeffs), self.p)
        return UniPoly(q, self.p), UniPoly(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other):
        self._check(other)
        return UniPoly(_gcd(self.coeffs, other.coeffs, self.p), self.p)

    def derivative(self):
        return UniPoly(_deriv(list(self.coeffs), self.p), self.p)

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def sort_key(self):
        """Canonical order: degree, then coefficient tuple lexicographically."""
        return (len(self.coeffs), self.coeffs)

    def coeff_csv(self):
        """Ascending coefficients as 'c0,c1,...'; empty string for zero."""
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def from_coeff_csv(cls, text, p):
        if not text:
            return cls.zero(p)
        return cls([int(t) for t in text.split(",")], p)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0 mod %d)" % self.p
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else "%d*" % c
                terms.append("%st" % head if i == 1 else "%st^%d" % (head, i))
        return "UniPoly(%s mod %d)" % (" + ".join(terms), self.p)


def random_monic(n, p, stream):
    """Uniformly random monic polynomial of degree n over GF(p)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    coeffs = [stream.below(p) for _ in range(n)] + [1]
    return UniPoly(coeffs, p)


def is_squarefree(f):
    """True iff gcd(f, f') = 1; requires f nonzero."""
    if f.is_zero():
        raise ValueError("zero polynomial has no square-free test")
    if f.degree == 0:
        return True
    return _squarefree_raw(list(f.coeffs), f.p)


def _squarefree_raw(c, p):
    d = _deriv(c, p)
    if not d:
        return len(c) == 1
    return len(_gcd(c, d, p)) == 1


# ---------------------------------------------------------------------------
# factorization


def _pth_root(c, p):
    # c is a polynomial in x^p; over GF(p) the root just reindexes coefficients
    return [c[i] for i in range(0, len(c), p)]


def _squarefree_decomposition(c, p):
    """Yield (squarefree factor, multiplicity) pieces of monic c."""
    out = []

    def recurse(f, scale):
        if len(f) <= 1:
            return
        df = _deriv(f, p)
        if not df:
            recurse(_pth_root(f, p), scale * p)
            return
        g = _gcd(f, df, p)
        w = _divmod(f, g, p)[0]
        i = 1
        while len(w) > 1:
            y = _gcd(w, g, p)
            z = _divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((z, i * scale))
            w = y
            g = _divmod(g, y, p)[0]
            i += 1
        if len(g) > 1:
            recurse(g, scale * p)

    recurse(_monic(c, p), 1)
    return out


def _distinct_degree(c, p):
    """Split squarefree monic c into (product-of-degree-d factors, d) parts."""
    out = []
    r = list(c)
    h = [0, 1]  # x^(p^i) mod r, updated as r shrinks
    d = 0
    while len(r) - 1 > 2 * d + 1:
        d += 1
        h = _powmod(h, p, r, p)
        g = _gcd(r, _sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            r = _divmod(r, g, p)[0]
            h = _mod(h, r, p)
    if len(r) > 1:
        out.append((r, len(r) - 1))
    return out


def _equal_degree_split(c, d, p, stream):
    """One random split of squarefree monic c (all factors of degree d)."""
    n = len(c) - 1
    for _ in range(_EDF_RETRIES):
        a = [stream.below(p) for _ in range(n)]
        _trim(a)
        if len(a) <= 1:
            continue
        if p == 2:
            # trace map over GF(2^d)
            b = list(a)
            t = list(a)
            for _ in range(d - 1):
                t = _mulmod(t, t, c, p)
                b = _add(b, t, p)
            g = _gcd(c, b, p)
        else:
            g0 = _gcd(c, a, p)
            if 1 < len(g0) < len(c):
                return g0
            b = _powmod(a, (pow(p, d) - 1) // 2, c, p)
            g = _gcd(c, _sub(b, [1], p), p)
        if 1 < len(g) < len(c):
            return g
    raise RuntimeError("equal-degree splitting failed after %d tries" % _EDF_RETRIES)


def _equal_degree_factor(c, d, p, stream):
    if len(c) - 1 == d:
        return [c]
    g = _equal_degree_split(c, d, p, stream)
    rest = _divmod(c, g, p)[0]
    return _equal_degree_factor(g, d, p, stream) + _equal_degree_factor(
        rest, d, p, stream
    )


def factor(f, stream=None):
    """Complete factorization of a monic nonzero f of degree >= 1.

    Returns a list of (irreducible monic UniPoly, multiplicity) pairs in
    canonical order.  The product over all pairs reproduces f exactly.
    """
    if f.is_zero() or not f.is_monic() or f.degree < 1:
        raise ValueError("factor() expects a monic polynomial of degree >= 1")
    if stream is None:
        stream = SplitStream(0x5EED).child("unipoly-factor")
    p = f.p
    found = []
    for sf, mult in _squarefree_decomposition(list(f.coeffs), p):
        for prod, d in _distinct_degree(sf, p):
            for irr in _equal_degree_factor(prod, d, p, stream):
                found.append((UniPoly(irr, p), mult))
    found.sort(key=lambda pair: pair[0].sort_key())
    return found


def factor_degree_profile(f):
    """Degrees of the irreducible factors of a squarefree monic f.

    Returns a sorted list of (degree, count) pairs.  Only distinct-degree
    splitting is needed, which keeps this cheap for statistics runs.
    """
    if not f.is_monic() or f.degree < 1:
        raise ValueError("degree profile expects a monic polynomial of degree >= 1")
    if not is_squarefree(f):
        raise ValueError("degree profile expects a square-free polynomial")
    return [
        (d, (len(prod) - 1) // d)
        for prod, d in _distinct_degree(list(f.coeffs), f.p)
    ]


def find_factor_of_degree(f, d, stream=None):
    """Product of irreducible factors of f with degrees summing to d.

    f must be monic and square-free.  Among all sub-multisets of the
    canonical factor list whose degrees sum to d, the lexicographically
    least (prefer the earliest factor at each step) is chosen, so the
    result is deterministic.  Returns None when no sub-multiset works.
    """
    if d < 0:
        raise ValueError("factor degree must be >= 0")
    if not f.is_monic() or f.degree < 1:
        raise ValueError("find_factor_of_degree expects a monic nonconstant input")
    if not is_squarefree(f):
        raise ValueError("input must be square-free; retry with a new projection")
    if d == 0:
        return UniPoly.one(f.p)
    if d > f.degree:
        return None
    factors = [g for g, _ in factor(f, stream)]
    degrees = [g.degree for g in factors]
    k = len(factors)
    # reachable[i] = set of sums formable from factors[i:], as a bitmask
    reachable = [0] * (k + 1)
    reachable[k] = 1
    for i in range(k - 1, -1, -1):
        reachable[i] = reachable[i + 1] | (reachable[i + 1] << degrees[i])
    if not (reachable[0] >> d) & 1:
        return None
    chosen = []
    need = d
    for i in range(k):
        if need == 0:
            break
        di = degrees[i]
        if di <= need and (reachable[i + 1] >> (need - di)) & 1:
            chosen.append(factors[i])
            need -= di
    out = UniPoly.one(f.p)
    for g in chosen:
        out = out * g
    return out
