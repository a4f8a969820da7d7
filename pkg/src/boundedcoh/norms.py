"""Polyhedral norms on rational vector spaces.

A polyhedral norm is determined by finitely many facet functionals a_i with
norm(v) = max_i |a_i . v| (the H-description of the unit ball), or by the
unit ball's vertices (V-description).  Several structured families get
closed-form evaluation so that the exponentially large descriptions (the
H-description of an l1 ball, the vertex set of a sup ball) are never
materialized:

    l1          sum of absolute values (chain fibers)
    linf        max of absolute values
    sup-block   max over blocks of a block norm (cochain spaces, products)
    h-rep       explicit facet rows
    quotient    inf over representatives, evaluated by LP
    polar       the dual of any of the above

Every norm answers eval(v) and dual_eval(c) exactly; dual_eval is the norm
of c in the dual space (sup of c.v over the unit ball).  Operator norms are
derived from these two primitives.  Explicit H/V descriptions are produced
on demand and refused past the conversion cap.
"""

from bisect import bisect_right
from fractions import Fraction
from itertools import combinations, product

from .linalg import QMatrix, kernel_basis, rank, rref, solve
from .lp import LPProblem, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)

# Vertex/facet enumeration refuses beyond this dimension.
CONVERSION_DIM_CAP = 6
_ENUM_WORK_CAP = 200000


class NormError(Exception):
    pass


class NormCapError(NormError):
    """An explicit H- or V-description would exceed the conversion cap."""


def _as_dict(v, dim):
    if isinstance(v, dict):
        return v
    assert len(v) == dim
    return {i: Fraction(x) for i, x in enumerate(v) if x}


def _dot(row, vd):
    # row dense list, vd sparse dict
    s = ZERO
    for i, x in vd.items():
        if row[i]:
            s += row[i] * x
    return s


class PolyhedralNorm:
    """Base class; concrete kinds override eval/dual_eval and descriptions."""

    dim = 0

    def eval(self, v):
        raise NotImplementedError

    def dual_eval(self, c):
        """Norm of the functional c in the dual space."""
        raise NotImplementedError

    def h_rows(self):
        """Facet functionals as dense rows; max_i |a_i.v| = eval(v)."""
        raise NotImplementedError

    def h_rows_sparse(self):
        return [{i: x for i, x in enumerate(r) if x} for r in self.h_rows()]

    def vertices(self):
        """Points of the unit ball whose convex hull is the ball."""
        raise NotImplementedError

    def dual(self):
        return PolarNorm(self)

    def is_positive_definite(self):
        if self.dim == 0:
            return True
        return rank(QMatrix.from_rows(self.h_rows(), self.dim)) == self.dim

    def __eq__(self, other):
        return self is other or (isinstance(other, PolyhedralNorm)
                                 and norms_equal(self, other))

    def __hash__(self):
        return id(self)


class L1Norm(PolyhedralNorm):
    def __init__(self, dim):
        assert dim >= 0
        self.dim = dim

    def eval(self, v):
        vd = _as_dict(v, self.dim)
        return sum((abs(x) for x in vd.values()), ZERO)

    def dual_eval(self, c):
        cd = _as_dict(c, self.dim)
        return max((abs(x) for x in cd.values()), default=ZERO)

    def h_rows(self):
        # all sign vectors, up to global sign
        if self.dim > 2 * CONVERSION_DIM_CAP:
            raise NormCapError("l1 facet description in dimension %d"
                               % self.dim)
        if self.dim == 0:
            return []
        rows = []
        for signs in product((ONE, -ONE), repeat=self.dim - 1):
            rows.append([ONE] + list(signs))
        return rows

    def vertices(self):
        vs = []
        for i in range(self.dim):
            e = [ZERO] * self.dim
            e[i] = ONE
            vs.append(list(e))
            e2 = list(e)
            e2[i] = -ONE
            vs.append(e2)
        return vs

    def dual(self):
        return LinfNorm(self.dim)

    def __repr__(self):
        return "L1Norm(%d)" % self.dim


class LinfNorm(PolyhedralNorm):
    def __init__(self, dim):
        assert dim >= 0
        self.dim = dim

    def eval(self, v):
        vd = _as_dict(v, self.dim)
        return max((abs(x) for x in vd.values()), default=ZERO)

    def dual_eval(self, c):
        cd = _as_dict(c, self.dim)
        return sum((abs(x) for x in cd.values()), ZERO)

    def h_rows(self):
        rows = []
        for i in range(self.dim):
            e = [ZERO] * self.dim
            e[i] = ONE
            rows.append(e)
        return rows

    def h_rows_sparse(self):
        return [{i: ONE} for i in range(self.dim)]

    def vertices(self):
        if self.dim > 2 * CONVERSION_DIM_CAP:
            raise NormCapError("linf vertex description in dimension %d"
                               % self.dim)
        if self.dim == 0:
            return []
        return [list(s) for s in product((ONE, -ONE), repeat=self.dim)]

    def dual(self):
        return L1Norm(self.dim)

    def __repr__(self):
        return "LinfNorm(%d)" % self.dim


class HRepNorm(PolyhedralNorm):
    def __init__(self, rows, dim=None):
        if dim is None:
            assert rows, "dimension required for an empty row list"
            dim = len(rows[0])
        self.dim = dim
        self.rows = [[Fraction(x) for x in r] for r in rows]
        for r in self.rows:
            assert len(r) == dim
        if dim > 0 and rank(QMatrix.from_rows(self.rows, dim)) < dim:
            raise NormError("facet rows do not span the dual space")

    def eval(self, v):
        vd = _as_dict(v, self.dim)
        return max((abs(_dot(r, vd)) for r in self.rows), default=ZERO)

    def dual_eval(self, c):
        # gauge of conv(+-rows) at c: min sum(lam) with sum lam_i g_i = c
        cd = _as_dict(c, self.dim)
        if not cd:
            return ZERO
        m = len(self.rows)
        prob = LPProblem(2 * m, [ONE] * (2 * m))
        for k in range(self.dim):
            coeffs = [self.rows[i][k] for i in range(m)]
            coeffs += [-self.rows[i][k] for i in range(m)]
            prob.add(coeffs, "=", cd.get(k, ZERO))
        for i in range(2 * m):
            coeffs = [ZERO] * (2 * m)
            coeffs[i] = -ONE
            prob.add(coeffs, "<=", ZERO)
        res = solve_lp(prob)
        if res.status != "optimal":
            raise NormError("functional outside the span of the facet rows")
        return res.value

    def h_rows(self):
        return [list(r) for r in self.rows]

    def vertices(self):
        return enumerate_ball_vertices(self.rows, self.dim)

    def __repr__(self):
        return "HRepNorm(dim=%d, facets=%d)" % (self.dim, len(self.rows))


class SupBlockNorm(PolyhedralNorm):
    """max over consecutive blocks of a per-block norm."""

    def __init__(self, blocks):
        self.blocks = list(blocks)
        self.offsets = []
        off = 0
        for b in self.blocks:
            self.offsets.append(off)
            off += b.dim
        self.dim = off

    def _split(self, vd):
        # only touched blocks appear; untouched blocks contribute 0
        parts = {}
        for i, x in vd.items():
            k = bisect_right(self.offsets, i) - 1
            parts.setdefault(k, {})[i - self.offsets[k]] = x
        return parts

    def eval(self, v):
        vd = _as_dict(v, self.dim)
        parts = self._split(vd)
        return max((self.blocks[k].eval(p) for k, p in parts.items()),
                   default=ZERO)

    def dual_eval(self, c):
        cd = _as_dict(c, self.dim)
        parts = self._split(cd)
        return sum((self.blocks[k].dual_eval(p) for k, p in parts.items()),
                   ZERO)

    def h_rows(self):
        rows = []
        for b, off in zip(self.blocks, self.offsets):
            for r in b.h_rows():
                padded = [ZERO] * self.dim
                for j, x in enumerate(r):
                    padded[off + j] = x
                rows.append(padded)
        return rows

    def h_rows_sparse(self):
        rows = []
        for b, off in zip(self.blocks, self.offsets):
            for r in b.h_rows():
                rows.append({off + j: x for j, x in enumerate(r) if x})
        return rows

    def vertices(self):
        # the unit ball is the product of the block balls
        sizes = 1
        per_block = []
        for b in self.blocks:
            vs = b.vertices()
            per_block.append(vs)
            sizes *= max(len(vs), 1)
            if sizes > _ENUM_WORK_CAP:
                raise NormCapError("sup-block vertex product too large")
        out = []
        for combo in product(*per_block):
            v = [ZERO] * self.dim
            for part, off in zip(combo, self.offsets):
                for j, x in enumerate(part):
                    v[off + j] = x
            out.append(v)
        return out

    def __repr__(self):
        return "SupBlockNorm(%d blocks, dim=%d)" % (len(self.blocks),
                                                    self.dim)


class PolarNorm(PolyhedralNorm):
    """The dual norm of a given norm; polarity swaps the two descriptions."""

    def __init__(self, base):
        self.base = base
        self.dim = base.dim

    def eval(self, v):
        return self.base.dual_eval(v)

    def dual_eval(self, c):
        return self.base.eval(c)

    def h_rows(self):
        return [list(v) for v in self.base.vertices()]

    def vertices(self):
        return [list(r) for r in self.base.h_rows()]

    def dual(self):
        return self.base

    def __repr__(self):
        return "PolarNorm(%r)" % (self.base,)


class QuotientNorm(PolyhedralNorm):
    """Quotient of an ambient norm by a subspace, on complement coordinates.

    The complement is spanned by the standard basis vectors at the non-pivot
    columns of the subspace basis (deterministic).  eval is the exact LP
    infimum over representatives; the unit ball is the image of the ambient
    ball under the projection.
    """

    def __init__(self, ambient, sub_vectors):
        self.ambient = ambient
        d = ambient.dim
        for s in sub_vectors:
            assert len(s) == d
        if sub_vectors:
            rr, piv = rref(QMatrix.from_rows(
                [[Fraction(x) for x in s] for s in sub_vectors], d))
            self.sub_basis = [[rr.rows[i].get(j, ZERO) for j in range(d)]
                              for i in range(len(piv))]
            pivset = set(piv)
        else:
            self.sub_basis = []
            pivset = set()
        # standard basis vectors off the pivot columns complement the span
        self.complement = [i for i in range(d) if i not in pivset]
        self.dim = len(self.complement)
        # projection matrix pi with pi . lift = id and ker pi = subspace:
        # express v in the basis [sub_basis | complement e_i] and keep the
        # complement coefficients.
        basis_cols = self.sub_basis + [
            [ONE if i == j else ZERO for i in range(d)]
            for j in self.complement]
        mat = QMatrix.from_rows(
            [[basis_cols[k][i] for k in range(d)] for i in range(d)], d)
        aug = mat.hstack(QMatrix.identity(d))
        red, piv = rref(aug)
        assert piv[:d] == list(range(d)), "subspace + complement not a basis"
        inv_rows = [[red.rows[i].get(d + j, ZERO) for j in range(d)]
                    for i in range(d)]
        nsub = len(self.sub_basis)
        self.proj_rows = inv_rows[nsub:]

    def lift(self, x):
        xd = _as_dict(x, self.dim)
        v = [ZERO] * self.ambient.dim
        for k, val in xd.items():
            v[self.complement[k]] = val
        return v

    def project(self, v):
        vd = _as_dict(v, self.ambient.dim)
        return [_dot(r, vd) for r in self.proj_rows]

    def eval(self, x):
        v = self.lift(x)
        nsub = len(self.sub_basis)
        if nsub == 0:
            return self.ambient.eval(v)
        # minimize t over mu with |a.(v - sum mu_k s_k)| <= t per facet row
        prob = LPProblem(nsub + 1, [ZERO] * nsub + [ONE])
        vd = _as_dict(v, self.ambient.dim)
        for a in self.ambient.h_rows():
            av = _dot(a, vd)
            asub = [sum(a[i] * s[i] for i in range(self.ambient.dim))
                    for s in self.sub_basis]
            prob.add([-x for x in asub] + [-ONE], "<=", -av)
            prob.add(asub + [-ONE], "<=", av)
        res = solve_lp(prob)
        assert res.status == "optimal"
        return res.value

    def eval_with_witness(self, x):
        """(value, representative in the ambient space attaining it)."""
        v = self.lift(x)
        nsub = len(self.sub_basis)
        if nsub == 0:
            return self.ambient.eval(v), v
        prob = LPProblem(nsub + 1, [ZERO] * nsub + [ONE])
        vd = _as_dict(v, self.ambient.dim)
        for a in self.ambient.h_rows():
            av = _dot(a, vd)
            asub = [sum(a[i] * s[i] for i in range(self.ambient.dim))
                    for s in self.sub_basis]
            prob.add([-x for x in asub] + [-ONE], "<=", -av)
            prob.add(asub + [-ONE], "<=", av)
        res = solve_lp(prob)
        assert res.status == "optimal"
        mu = res.x[:nsub]
        rep = list(v)
        for k, s in enumerate(self.sub_basis):
            if mu[k]:
                for i in range(self.ambient.dim):
                    rep[i] -= mu[k] * s[i]
        return res.value, rep

    def dual_eval(self, c):
        # the quotient ball is the projected ambient ball
        cd = _as_dict(c, self.dim)
        pulled = [ZERO] * self.ambient.dim
        for k, val in cd.items():
            row = self.proj_rows[k]
            for i in range(self.ambient.dim):
                if row[i]:
                    pulled[i] += val * row[i]
        return self.ambient.dual_eval(pulled)

    def vertices(self):
        seen = set()
        out = []
        for v in self.ambient.vertices():
            p = self.project(v)
            key = tuple(p)
            if key not in seen:
                seen.add(key)
                out.append(p)
        return out

    def h_rows(self):
        return enumerate_ball_facets(self.vertices(), self.dim)

    def is_positive_definite(self):
        # a quotient of a norm by a subspace is again a norm
        return self.ambient.is_positive_definite()

    def __repr__(self):
        return "QuotientNorm(dim=%d)" % self.dim


def norm_eval(n, v):
    return n.eval(v)


def dual_norm(n):
    if not n.is_positive_definite():
        raise NormError("degenerate norm has no dual norm")
    return n.dual()


def quotient_norm(n, subspace):
    return QuotientNorm(n, subspace)


def normed_product(parts):
    """Finite normed product: direct product with the max norm."""
    return SupBlockNorm(list(parts))


def enumerate_ball_vertices(rows, dim):
    """Vertices of {v : |a_i.v| <= 1} for explicit facet rows."""
    if dim > CONVERSION_DIM_CAP:
        raise NormCapError("vertex enumeration in dimension %d" % dim)
    if dim == 0:
        return []
    m = len(rows)
    if dim == 1:
        r = max(abs(row[0]) for row in rows)
        return [[ONE / r], [-ONE / r]]
    from math import comb
    if comb(m, dim) * (2 ** dim) > _ENUM_WORK_CAP:
        raise NormCapError("vertex enumeration work cap exceeded")
    out = []
    seen = set()
    for subset in combinations(range(m), dim):
        sub = [rows[i] for i in subset]
        if rank(QMatrix.from_rows(sub, dim)) < dim:
            continue
        for signs in product((ONE, -ONE), repeat=dim):
            mat = QMatrix.from_rows(sub, dim)
            v = solve(mat, list(signs))
            if v is None:
                continue
            vd = _as_dict(v, dim)
            if all(abs(_dot(row, vd)) <= ONE for row in rows):
                key = tuple(v)
                if key not in seen:
                    seen.add(key)
                    out.append(v)
    return out


def enumerate_ball_facets(vertices, dim):
    """Facet rows of the symmetric polytope conv(vertices).

    vertices must already span the space and come in +-pairs (unit balls
    always do).
    """
    if dim > CONVERSION_DIM_CAP:
        raise NormCapError("facet enumeration in dimension %d" % dim)
    if dim == 0:
        return []
    pts = []
    seen = set()
    for v in vertices:
        for w in (v, [-x for x in v]):
            key = tuple(w)
            if key not in seen:
                seen.add(key)
                pts.append([Fraction(x) for x in w])
    if dim == 1:
        r = max(abs(p[0]) for p in pts)
        if r == 0:
            raise NormError("degenerate vertex set")
        return [[ONE / r]]
    from math import comb
    if comb(len(pts), dim) > _ENUM_WORK_CAP:
        raise NormCapError("facet enumeration work cap exceeded")
    rows = []
    seen_rows = set()
    for subset in combinations(range(len(pts)), dim):
        sub = [pts[i] for i in subset]
        mat = QMatrix.from_rows(sub, dim)
        a = solve(mat, [ONE] * dim)
        if a is None:
            continue
        ad = _as_dict(a, dim)
        vals = [_dot(p, ad) for p in pts]
        if all(abs(x) <= ONE for x in vals):
            key = tuple(a)
            negkey = tuple(-x for x in a)
            if key not in seen_rows and negkey not in seen_rows:
                seen_rows.add(key)
                rows.append(a)
    if not rows or rank(QMatrix.from_rows(rows, dim)) < dim:
        raise NormError("vertex set does not describe a full ball")
    return rows


def norms_equal(n1, n2):
    """Exact unit-ball equality via bidirectional facet checks.

    ball(a) is contained in ball(b) iff every facet functional of b has
    dual norm at most 1 under a; equality is containment both ways.
    """
    if n1.dim != n2.dim:
        return False
    if n1.dim == 0:
        return True
    for b in n2.h_rows():
        if n1.dual_eval(b) > ONE:
            return False
    for b in n1.h_rows():
        if n2.dual_eval(b) > ONE:
            return False
    return True


def operator_norm(mat, dom, cod):
    """Exact operator norm of the matrix mat : (dom) -> (cod).

    Two strategies: max of cod.eval over the images of the domain ball's
    vertices, or max over the codomain's facet rows b of the domain dual
    norm of (transpose of mat) b.  Both are exact; the cheap one is chosen.
    """
    assert mat.ncols == dom.dim and mat.nrows == cod.dim
    if dom.dim == 0:
        return ZERO
    if isinstance(dom, L1Norm):
        # ball vertices are the signed basis vectors
        return max((cod.eval(mat.col_dict(j)) for j in range(dom.dim)),
                   default=ZERO)
    try:
        rows = cod.h_rows_sparse()
        strategy = "rows"
    except NormCapError:
        rows = None
        strategy = "verts"
    if strategy == "rows":
        best = ZERO
        for bd in rows:
            val = dom.dual_eval(mat.vecmat_dict(bd))
            if val > best:
                best = val
        return best
    verts = dom.vertices()
    return max((cod.eval(mat.matvec_dict(_as_dict(v, dom.dim)))
                for v in verts), default=ZERO)
