"""Random arithmetically Gorenstein zero-schemes in P^3 with prescribed
h-vector, and the liaison steps that split them.

A codimension-3 Gorenstein ideal is generated by the sub-maximal
Pfaffians of a skew-symmetric matrix of forms whose entry degrees are
forced by the h-vector: the free resolution numerator h(t)*(1-t)^3 lists
generator degrees at its negative coefficients, and duality pairs each
generator of degree g with a relation of degree sigma - g, sigma being
the numerator degree.  When the numerator leaves an even generator
count, a cancelling generator/relation pair sits in the middle degree
sigma/2 (this happens for type II with c = 1, e.g. the complete
intersection (2,2,4) behind {1,3,4,4,3,1}).

Reducedness and splitting are tested by projecting: the characteristic
polynomial of multiplication by ell/x_h on the degree-stable graded
piece of S/I_G is the polynomial of the image scheme on a line; a
square-free value certifies that G is reduced, and a degree-d factor
cuts out a degree-d subscheme defined over GF(p).

The subscheme is extracted degreewise: a form of degree t lies in I_X
iff its normal form, pushed into the stable piece by a power of x_h,
falls in the row space of f_d(T) where T is the multiplication operator;
that row space is exactly the space of functions on G vanishing along X.
The result agrees with saturating I_G + (homogenized factor) by x_h and
is verified through its postconditions (degree, containment, and the
liaison involution I_G : (I_G : I_X) = I_X).
"""

import numpy as np

from ._frozen import Frozen
from .gf import (
    charpoly_mod_p,
    kernel_basis_array,
    rref,
    reduce_rows,
    _safe_matmul,
)
from .mpoly import MultiPoly, monomials_of_degree, monomial_count
from .groebner import GradedSpaces, groebner, normal_form, saturate
from .hvectors import parse_gorenstein_type, _entries
from .unipoly import UniPoly, is_squarefree, find_factor_of_degree
from .rng import SplitStream

__all__ = [
    "numerator_polynomial",
    "DegreeMatrix",
    "generic_degree_matrix",
    "SkewPolyMatrix",
    "submaximal_pfaffians",
    "random_gorenstein",
    "ProjectionWitness",
    "char_poly_of_projection",
    "multiplication_operator",
    "extract_subscheme",
    "extract_subscheme_by_saturation",
    "residual",
    "point_ideal_quotient",
    "is_reduced_and_split",
    "scheme_degree",
    "stable_degree",
    "DegeneracyError",
    "ExtractionError",
    "BadPositionError",
]

MATRIX_RETRIES = 32
PROJECTION_RETRIES = 16


class DegeneracyError(RuntimeError):
    """A random draw failed to produce the prescribed h-vector."""


class ExtractionError(RuntimeError):
    """The projection did not separate the subscheme (degree mismatch)."""


class BadPositionError(RuntimeError):
    """No dehomogenizing linear form avoiding the scheme was found."""


def numerator_polynomial(h):
    """Coefficients of h(t) * (1-t)^3, ascending; the resolution numerator."""
    e = _entries(h)
    cube = [1, -3, 3, -1]
    out = [0] * (len(e) + 3)
    for i, hi in enumerate(e):
        for j, b in enumerate(cube):
            out[i + j] += hi * b
    return out


class DegreeMatrix(Frozen):
    """Generator degrees and entry degrees of the generic skew presentation."""

    __slots__ = ("gen_degrees", "socle_degree")

    def __init__(self, gen_degrees, socle_degree):
        gen_degrees = tuple(sorted(int(g) for g in gen_degrees))
        if len(gen_degrees) % 2 == 0:
            raise ValueError("generator count must be odd")
        object.__setattr__(self, "gen_degrees", gen_degrees)
        object.__setattr__(self, "socle_degree", int(socle_degree))

    @property
    def size(self):
        return len(self.gen_degrees)

    def entry_degree(self, i, j):
        return self.socle_degree - self.gen_degrees[i] - self.gen_degrees[j]

    def free_module_split(self):
        """((mult, twist) summands of the source, same for the target).

        The presentation maps F*(-sigma) -> F with F = (+) S(-g_i); the
        target twists are -g_i and the source twists are g_i - sigma.
        """

        def group(twists):
            out = {}
            for tw in twists:
                out[tw] = out.get(tw, 0) + 1
            return sorted((mult, tw) for tw, mult in out.items())

        target = group(-g for g in self.gen_degrees)
        source = group(g - self.socle_degree for g in self.gen_degrees)
        return source, target

    def __eq__(self, other):
        return isinstance(other, DegreeMatrix) and (
            self.gen_degrees,
            self.socle_degree,
        ) == (other.gen_degrees, other.socle_degree)

    def __repr__(self):
        return "DegreeMatrix(gens=%r, socle=%d)" % (self.gen_degrees, self.socle_degree)


def generic_degree_matrix(h):
    """Degree data of the generic skew presentation for this h-vector.

    Generator degrees are read off the negative numerator coefficients
    (the final -t^sigma excluded); an even count is completed by one
    generator in degree sigma/2, paired with a relation in the same
    degree.  Duality (relation degrees = sigma - generator degrees) is
    verified and any mismatch raises.
    """
    if parse_gorenstein_type(h) is None:
        raise ValueError("not an admissible Gorenstein h-vector: %r" % (h,))
    num = numerator_polynomial(h)
    sigma = len(num) - 1
    gens, rels = [], []
    for deg, coeff in enumerate(num):
        if 0 < deg < sigma and coeff < 0:
            gens.extend([deg] * (-coeff))
        elif 0 < deg < sigma and coeff > 0:
            rels.extend([deg] * coeff)
    if len(gens) % 2 == 0:
        if sigma % 2:
            raise ValueError("inconsistent numerator for %r" % (h,))
        gens.append(sigma // 2)
        rels.append(sigma // 2)
    if sorted(sigma - g for g in gens) != sorted(rels):
        raise ValueError("numerator fails Gorenstein duality for %r" % (h,))
    return DegreeMatrix(gens, sigma)


class SkewPolyMatrix(Frozen):
    """Skew-symmetric matrix of homogeneous forms over GF(p)."""

    __slots__ = ("degree_matrix", "upper", "p")

    def __init__(self, degree_matrix, upper, p):
        n = degree_matrix.size
        table = {}
        for (i, j), f in upper.items():
            if not (0 <= i < j < n):
                raise ValueError("upper entries need 0 <= i < j < size")
            if not f.is_zero():
                expected = degree_matrix.entry_degree(i, j)
                if not f.is_homogeneous() or f.degree != expected:
                    raise ValueError(
                        "entry (%d,%d) must be homogeneous of degree %d" % (i, j, expected)
                    )
                table[(i, j)] = f
        object.__setattr__(self, "degree_matrix", degree_matrix)
        object.__setattr__(self, "upper", table)
        object.__setattr__(self, "p", p)

    @property
    def size(self):
        return self.degree_matrix.size

    def entry(self, i, j):
        if i == j:
            return MultiPoly.zero(self.p)
        if i < j:
            return self.upper.get((i, j), MultiPoly.zero(self.p))
        return -self.upper.get((j, i), MultiPoly.zero(self.p))

    def serialize(self):
        n = self.size
        lines = ["size: %d" % n,
                 "gen_degrees: %s" % ",".join(map(str, self.degree_matrix.gen_degrees)),
                 "socle: %d" % self.degree_matrix.socle_degree]
        for i in range(n):
            for j in range(i + 1, n):
                lines.append("m[%d][%d]: %s" % (i, j, self.entry(i, j).render()))
        return "\n".join(lines)

    @classmethod
    def deserialize(cls, text, p):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        fields = {}
        entries = {}
        for ln in lines:
            key, _, value = ln.partition(":")
            key, value = key.strip(), value.strip()
            if key.startswith("m["):
                i, j = key[2:-1].split("]["); entries[(int(i), int(j))] = value
            else:
                fields[key] = value
        dm = DegreeMatrix(
            [int(x) for x in fields["gen_degrees"].split(",")], int(fields["socle"])
        )
        upper = {
            key: MultiPoly.parse(value, p) for key, value in entries.items()
        }
        return cls(dm, upper, p)

    def __eq__(self, other):
        return isinstance(other, SkewPolyMatrix) and (
            self.p == other.p
            and self.degree_matrix == other.degree_matrix
            and self.upper == other.upper
        )


def _pfaffian(matrix_entry, indices, cache, p):
    """Pfaffian of the skew submatrix on the given sorted index tuple."""
    if not indices:
        return MultiPoly.constant(1, p)
    if indices in cache:
        return cache[indices]
    a = indices[0]
    rest = indices[1:]
    total = MultiPoly.zero(p)
    for pos, b in enumerate(rest):
        f = matrix_entry(a, b)
        if f.is_zero():
            continue
        sub = tuple(x for x in rest if x != b)
        term = f * _pfaffian(matrix_entry, sub, cache, p)
        total = total + term if pos % 2 == 0 else total - term
    cache[indices] = total
    return total


def pfaffian(M):
    """Pfaffian of an even-size SkewPolyMatrix."""
    if M.size % 2:
        raise ValueError("Pfaffian needs even size")
    return _pfaffian(M.entry, tuple(range(M.size)), {}, M.p)


def submaximal_pfaffians(M):
    """Signed Pfaffians of the principal minors deleting one row/column.

    The i-th output is (-1)^i * Pf(M with row and column i removed); with
    these signs the matrix annihilates the vector of Pfaffians.
    """
    n = M.size
    if n % 2 == 0:
        raise ValueError("sub-maximal Pfaffians need odd size")
    cache = {}
    out = []
    all_idx = tuple(range(n))
    for i in range(n):
        sub = tuple(x for x in all_idx if x != i)
        pf = _pfaffian(M.entry, sub, cache, M.p)
        out.append(pf if i % 2 == 0 else -pf)
    return out


def random_gorenstein(h, p, seed_or_stream, retries=MATRIX_RETRIES):
    """Random skew matrix with the generic degree layout, plus its ideal.

    Draws uniformly random homogeneous entries (degree-zero slots stay
    zero, keeping the presentation minimal), takes the Pfaffian ideal,
    and checks that the h-vector came out right; degenerate draws are
    retried up to `retries` times.
    """
    dm = generic_degree_matrix(h)
    target = _entries(h)
    stream = (
        seed_or_stream
        if isinstance(seed_or_stream, SplitStream)
        else SplitStream(seed_or_stream).child("gorenstein")
    )
    for attempt in range(retries):
        st = stream.child("draw", attempt)
        upper = {}
        for i in range(dm.size):
            for j in range(i + 1, dm.size):
                deg = dm.entry_degree(i, j)
                if deg >= 1:
                    terms = {
                        m: st.below(p) for m in monomials_of_degree(deg)
                    }
                    upper[(i, j)] = MultiPoly(terms, p)
        M = SkewPolyMatrix(dm, upper, p)
        gens = [f for f in submaximal_pfaffians(M) if not f.is_zero()]
        if len(gens) < dm.size:
            continue
        gb = groebner(gens, p)
        try:
            from .groebner import h_vector

            if h_vector(gb) == target:
                return M, gb
        except ValueError:
            pass
    raise DegeneracyError(
        "no Gorenstein scheme with h-vector %r after %d draws" % (target, retries)
    )


# ---------------------------------------------------------------------------
# projection to a line


class ProjectionWitness(Frozen):
    """A projection certificate: dehomogenizer x_h, direction ell, factor."""

    __slots__ = ("ell", "xh", "char_poly", "factor")

    def __init__(self, ell, xh, char_poly, factor):
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "xh", xh)
        object.__setattr__(self, "char_poly", char_poly)
        object.__setattr__(self, "factor", factor)


def stable_degree(spaces, limit=64):
    """First degree where the Hilbert function of the cone stabilizes."""
    prev = spaces.hf(0)
    for t in range(1, limit):
        cur = spaces.hf(t)
        if cur == prev:
            return t - 1, cur
        prev = cur
    raise ValueError("Hilbert function did not stabilize")


def scheme_degree(gb):
    return stable_degree(GradedSpaces(gb))[1]


def _artinian_hf_ok(spaces, xh, hvec):
    """Is the Hilbert function of S/(I + (x_h)) equal to the h-vector?

    Fails exactly when x_h is a zero-divisor mod I, i.e. vanishes at a
    point of the scheme.
    """
    p = spaces.p
    e = _entries(hvec)
    for t in range(len(e) + 2):
        expected = e[t] if t < len(e) else 0
        R, pivots, _ = spaces.piece(t)
        rows = [R] if R.shape[0] else []
        if t >= 1:
            monos = monomials_of_degree(t)
            index = {m: i for i, m in enumerate(monos)}
            prod = np.zeros((monomial_count(t - 1), len(monos)), dtype=np.int64)
            for j, m in enumerate(monomials_of_degree(t - 1)):
                for xm, xc in xh.terms.items():
                    mm = (m[0] + xm[0], m[1] + xm[1], m[2] + xm[2], m[3] + xm[3])
                    prod[j, index[mm]] = xc
            rows.append(prod)
        if rows:
            stacked = np.concatenate(rows, axis=0)
            rk = len(rref(stacked, p)[1])
        else:
            rk = 0
        if monomial_count(t) - rk != expected:
            return False
    return True


def _random_linear(stream, p):
    while True:
        coeffs = [stream.below(p) for _ in range(4)]
        if any(coeffs):
            return MultiPoly.linear_form(coeffs, p)


def multiplication_operator(spaces, ell, xh, sigma0):
    """Matrix of multiplication by ell/x_h on the stable graded piece.

    Row-vector convention: coordinates map through v -> v @ T.  Requires
    multiplication by x_h from degree sigma0 to sigma0+1 to be bijective.
    """
    p = spaces.p
    L = spaces.mult_matrix(ell, sigma0)
    X = spaces.mult_matrix(xh, sigma0)
    n = L.shape[0]
    aug = np.concatenate([X, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise BadPositionError("x_h is not invertible on the stable piece")
    Xinv = R[:, n:]
    return _safe_matmul(L, Xinv, p)


def char_poly_of_projection(gb, seed_or_stream, retries=PROJECTION_RETRIES, spaces=None):
    """Random projection of the scheme to a line.

    Picks a dehomogenizer x_h that misses the scheme (retrying while the
    artinian reduction has the wrong Hilbert function) and a direction
    ell, and returns (ell, x_h, characteristic polynomial of ell/x_h).
    """
    from .groebner import h_vector as _hv

    if spaces is None:
        spaces = GradedSpaces(gb)
    hvec = _hv(gb)
    sigma0, n = stable_degree(spaces)
    stream = (
        seed_or_stream
        if isinstance(seed_or_stream, SplitStream)
        else SplitStream(seed_or_stream).child("projection")
    )
    for attempt in range(retries):
        st = stream.child("proj", attempt)
        xh = _random_linear(st, gb.p)
        if not _artinian_hf_ok(spaces, xh, hvec):
            continue
        ell = _random_linear(st, gb.p)
        T = multiplication_operator(spaces, ell, xh, sigma0)
        coeffs = charpoly_mod_p(T, gb.p)
        return ell, xh, UniPoly(coeffs, gb.p)
    raise BadPositionError(
        "no dehomogenizing linear form found in %d tries" % retries
    )


def is_reduced_and_split(gb, d, seed_or_stream, retries=PROJECTION_RETRIES):
    """Search for a projection certifying reducedness and a degree-d split.

    Tries random projections; succeeds when the characteristic polynomial
    is square-free (so the scheme is reduced and the projection separates
    points) and a factor of degree d exists.  Returns a ProjectionWitness
    or None; None only means this search failed, not a refutation.
    """
    stream = (
        seed_or_stream
        if isinstance(seed_or_stream, SplitStream)
        else SplitStream(seed_or_stream).child("split-search")
    )
    spaces = GradedSpaces(gb)
    for attempt in range(retries):
        try:
            ell, xh, f = char_poly_of_projection(
                gb, stream.child(attempt), retries=4, spaces=spaces
            )
        except BadPositionError:
            continue
        if not is_squarefree(f):
            # could be a non-reduced scheme or a direction merging two
            # points; only another projection can tell, so retry
            continue
        fd = find_factor_of_degree(f, d)
        # square-free means the factor degrees are the residue-field
        # degrees of the points of G; no other projection can change them
        return ProjectionWitness(ell, xh, f, fd) if fd is not None else None
    return None


# ---------------------------------------------------------------------------
# subscheme extraction and residuals (degreewise linear algebra)


def _poly_power(f, m):
    out = MultiPoly.constant(1, f.p)
    for _ in range(m):
        out = out * f
    return out


class _PieceCollector:
    """Collects ideal generators degree by degree above a base ideal.

    Feed it, for each degree t, a basis (rows of standard-monomial
    coordinates) of the target ideal's piece modulo the base ideal; it
    returns the members not already generated by earlier pieces.
    """

    def __init__(self, spaces):
        self.spaces = spaces
        self.p = spaces.p
        self.prev_polys = []  # MultiPoly pieces at the previous degree
        self.generators = []

    def add_degree(self, t, coord_rows):
        spaces = self.spaces
        monos = monomials_of_degree(t)
        index = {m: i for i, m in enumerate(monos)}
        base_R, base_piv, std = spaces.piece(t)
        rows = []
        var_monos = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        for q in self.prev_polys:
            for vm in var_monos:
                xq = q.term_mul(vm, 1)
                row = np.zeros(len(monos), dtype=np.int64)
                for m, c in xq.terms.items():
                    row[index[m]] = c
                rows.append(row)
        if rows:
            span, span_piv = rref(
                reduce_rows(np.array(rows, dtype=np.int64), base_R, base_piv, self.p),
                self.p,
            )
        else:
            span = np.zeros((0, len(monos)), dtype=np.int64)
            span_piv = []
        piece_polys = []
        new_gens = []
        if len(coord_rows):
            dense = np.zeros((len(coord_rows), len(monos)), dtype=np.int64)
            for r, vec in enumerate(coord_rows):
                for value, pos in zip(vec, std):
                    dense[r, pos] = value % self.p
            for row in dense:
                poly = MultiPoly(
                    {monos[i]: int(c) for i, c in enumerate(row) if c}, self.p
                )
                piece_polys.append(poly)
            residues = reduce_rows(dense, span, span_piv, self.p)
            keep, _ = rref(residues, self.p)
            for row in keep:
                poly = MultiPoly(
                    {monos[i]: int(c) for i, c in enumerate(row) if c}, self.p
                )
                if not poly.is_zero():
                    new_gens.append(poly)
        self.generators.extend(new_gens)
        self.prev_polys = piece_polys
        return new_gens


def _matrix_poly(coeffs, A, p):
    """Evaluate a univariate polynomial at a square matrix (Horner)."""
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(coeffs):
        out = _safe_matmul(out, A, p)
        if c % p:
            out = (out + (c % p) * np.eye(n, dtype=np.int64)) % p
    return out


def extract_subscheme(gb, ell, xh, f_d, max_extra_degrees=None):
    """Ideal of the subscheme the degree-d factor cuts out.

    Equals saturate(I_G + (F_d), x_h) with F_d the x_h-homogenization of
    f_d(ell/x_h); computed degreewise instead: a degree-t form g lies in
    I_X iff the coordinates of g * x_h^(sigma0 - t) on the stable piece
    fall in the row space of f_d(T).  Raises ExtractionError when the
    resulting degree disagrees with deg f_d.
    """
    p = gb.p
    d = f_d.degree
    spaces = GradedSpaces(gb)
    sigma0, n = stable_degree(spaces)
    if d == 0:
        return groebner([MultiPoly.constant(1, p)], p)
    if d == n:
        return gb
    if d > n:
        raise ValueError("factor degree exceeds the scheme degree")
    T = multiplication_operator(spaces, ell, xh, sigma0)
    W = _matrix_poly([c % p for c in f_d.coeffs], T, p)
    RW, pivW = rref(W, p)
    if len(pivW) != n - d:
        raise ExtractionError(
            "factor image has rank %d, expected %d" % (len(pivW), n - d)
        )
    collector = _PieceCollector(spaces)
    hf_hist = []
    cap = sigma0 + (max_extra_degrees if max_extra_degrees is not None else n + 2)
    t = 0
    while True:
        if t <= sigma0:
            # push degree-t forms into the stable piece and compare with W
            push = spaces.mult_matrix(_poly_power(xh, sigma0 - t), t)
            residual_map = reduce_rows(push, RW, pivW, p)
        else:
            # above the stable degree the vanishing space is W moved up by x_h
            step = spaces.mult_matrix(_poly_power(xh, t - sigma0), sigma0)
            RW_t, pivW_t = rref(_safe_matmul(W, step, p), p)
            residual_map = reduce_rows(
                np.eye(spaces.hf(t), dtype=np.int64), RW_t, pivW_t, p
            )
        kernel = kernel_basis_array(residual_map.T, p)
        collector.add_degree(t, kernel)
        hf_hist.append(spaces.hf(t) - len(kernel))
        if _points_hf_done(hf_hist, d):
            break
        if t > cap:
            raise ExtractionError("subscheme pieces did not stabilize")
        t += 1
    gens = list(gb.gens) + collector.generators
    gbx = groebner(gens, p)
    if scheme_degree(gbx) != d:
        raise ExtractionError("extracted subscheme has the wrong degree")
    return gbx


def _points_hf_done(hist, expected):
    """Stop once the quotient Hilbert function sits at the expected degree
    for two consecutive degrees plus one safety degree."""
    if len(hist) < 3:
        return False
    return hist[-1] == hist[-2] == hist[-3] == expected


def extract_subscheme_by_saturation(gb, ell, xh, f_d):
    """Reference implementation: saturate(I_G + (F_d), x_h) directly.

    F_d is f_d(ell/x_h) cleared of denominators by x_h^deg(f_d).  Slow for
    large factors; used to cross-check extract_subscheme on small cases.
    """
    p = gb.p
    d = f_d.degree
    F = MultiPoly.zero(p)
    for i, c in enumerate(f_d.coeffs):
        if c:
            F = F + int(c) * (_poly_power(ell, i) * _poly_power(xh, d - i))
    total = groebner(list(gb.gens) + [F], p)
    return saturate(total, xh)


def point_ideal_quotient(gb, other_gens, max_extra_degrees=None):
    """I : J for a saturated ideal I of a zero-scheme cone, degreewise.

    For such I the quotient is again saturated and Cohen-Macaulay of
    dimension <= 1, so its Hilbert function stabilizes and generators
    live below the stabilization degree plus one; the loop runs two
    degrees further as a consistency window.
    """
    p = gb.p
    gens_j = [g for g in other_gens if not g.is_zero()]
    if not gens_j:
        raise ValueError("quotient by the zero ideal")
    if any(g.degree == 0 for g in gens_j):
        return gb
    spaces = GradedSpaces(gb)
    sigma0, n = stable_degree(spaces)
    collector = _PieceCollector(spaces)
    hist = []
    cap = sigma0 + (max_extra_degrees if max_extra_degrees is not None else n + 2)
    t = 0
    while True:
        blocks = [spaces.mult_matrix(f, t) for f in gens_j]
        stacked = np.concatenate(blocks, axis=1)
        kernel = kernel_basis_array(stacked.T, p)
        if t == 0 and len(kernel):
            return groebner([MultiPoly.constant(1, p)], p)
        collector.add_degree(t, kernel)
        hist.append(spaces.hf(t) - len(kernel))
        if len(hist) >= 3 and hist[-1] == hist[-2] == hist[-3]:
            break
        if t > cap:
            raise RuntimeError("quotient pieces did not stabilize")
        t += 1
    return groebner(list(gb.gens) + collector.generators, p)


def residual(gb_g, gb_x):
    """I_Y = I_G : I_X, the ideal of the residual subscheme."""
    for g in gb_g.gens:
        if not normal_form(g, gb_x).is_zero():
            raise ValueError("residual needs I_G contained in I_X")
    return point_ideal_quotient(gb_g, list(gb_x.gens))
