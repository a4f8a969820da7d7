"""Normed equivariant modules over a finite groupoid and their functors.

A module assigns each object a finite-dimensional rational vector space
with a polyhedral norm, and each morphism g an action matrix between the
fibers at its endpoints.  Construction audits everything exhaustively:
identity and composition laws, and operator norm exactly 1 for each action
on a nonzero fiber.  Together with the composition law that forces every
action to be an exact isometry, since rho_g and rho_{g^-1} are mutually
inverse contractions.

Functors provided: pullback along a groupoid map, bounded maps B(V,W),
invariants, the sup-function module with its constants inclusion, duals,
the cokernel of constants, and the isometry induced by a homotopy.
"""

from fractions import Fraction

from .linalg import QMatrix, kernel_basis
from .norms import (HRepNorm, L1Norm, QuotientNorm, SupBlockNorm, dual_norm,
                    operator_norm)

ZERO = Fraction(0)
ONE = Fraction(1)


class ModuleError(ValueError):
    """Raised when data fails a module, equivariance, or isometry axiom."""


class NormedModule:
    """Fiberwise normed vector spaces with an isometric groupoid action."""

    __slots__ = ("base", "fiber_dims", "fiber_norms", "actions")

    def __init__(self, base, fiber_dims, fiber_norms, actions, audit=True):
        self.base = base
        self.fiber_dims = list(fiber_dims)
        self.fiber_norms = list(fiber_norms)
        self.actions = list(actions)
        if audit:
            self._audit()

    def _audit(self):
        G = self.base
        if (len(self.fiber_dims) != G.num_objects
                or len(self.fiber_norms) != G.num_objects
                or len(self.actions) != G.num_morphisms):
            raise ModuleError("fiber or action family has wrong length")
        for e in range(G.num_objects):
            if self.fiber_norms[e].dim != self.fiber_dims[e]:
                raise ModuleError("norm dimension mismatch at object %d" % e)
        for g in range(G.num_morphisms):
            a = self.actions[g]
            if (a.nrows != self.fiber_dims[G.target[g]]
                    or a.ncols != self.fiber_dims[G.source[g]]):
                raise ModuleError("action %d has wrong shape" % g)
        for e in range(G.num_objects):
            if self.actions[G.identity[e]] != QMatrix.identity(self.fiber_dims[e]):
                raise ModuleError("identity morphism does not act as identity")
        for f in range(G.num_morphisms):
            for g in range(G.num_morphisms):
                if G.source[f] != G.target[g]:
                    continue
                if self.actions[G.comp[f][g]] != self.actions[f] * self.actions[g]:
                    raise ModuleError("action is not functorial at (%d, %d)" % (f, g))
        for g in range(G.num_morphisms):
            nrm = operator_norm(self.actions[g],
                                self.fiber_norms[G.source[g]],
                                self.fiber_norms[G.target[g]])
            want = ONE if self.fiber_dims[G.source[g]] > 0 else ZERO
            if nrm != want:
                raise ModuleError("action of morphism %d is not isometric" % g)

    def fiber_offsets(self):
        """Offsets of the fibers inside the product over all objects."""
        offs, total = [], 0
        for d in self.fiber_dims:
            offs.append(total)
            total += d
        return offs, total

    def product_norm(self):
        """Sup norm over all fibers on the product space."""
        return SupBlockNorm(self.fiber_norms)

    def apply(self, g, vec):
        return self.actions[g].matvec(vec)

    def __repr__(self):
        return "NormedModule(objects=%d, dims=%r)" % (self.base.num_objects,
                                                      self.fiber_dims)


class EquivariantMap:
    """A fiberwise linear map commuting with the actions."""

    __slots__ = ("dom", "cod", "components", "_norm_bound")

    def __init__(self, dom, cod, components, audit=True):
        if dom.base is not cod.base:
            raise ModuleError("equivariant map needs one common base groupoid")
        self.dom = dom
        self.cod = cod
        self.components = list(components)
        self._norm_bound = None
        if audit:
            self._audit()

    def _audit(self):
        G = self.dom.base
        if len(self.components) != G.num_objects:
            raise ModuleError("need one component per object")
        for e in range(G.num_objects):
            c = self.components[e]
            if c.nrows != self.cod.fiber_dims[e] or c.ncols != self.dom.fiber_dims[e]:
                raise ModuleError("component %d has wrong shape" % e)
        for g in range(G.num_morphisms):
            s, t = G.source[g], G.target[g]
            lhs = self.cod.actions[g] * self.components[s]
            rhs = self.components[t] * self.dom.actions[g]
            if lhs != rhs:
                raise ModuleError("map does not commute with morphism %d" % g)

    @property
    def norm_bound(self):
        """sup over objects of the exact operator norm of the component."""
        if self._norm_bound is None:
            best = ZERO
            for e in range(self.dom.base.num_objects):
                nrm = operator_norm(self.components[e],
                                    self.dom.fiber_norms[e],
                                    self.cod.fiber_norms[e])
                if nrm > best:
                    best = nrm
            self._norm_bound = best
        return self._norm_bound

    def then(self, other):
        if other.dom is not self.cod:
            raise ModuleError("maps not composable")
        comps = [other.components[e] * self.components[e]
                 for e in range(self.dom.base.num_objects)]
        return EquivariantMap(self.dom, other.cod, comps, audit=False)

    def is_identity(self):
        return (self.dom is self.cod and all(
            c == QMatrix.identity(c.nrows) for c in self.components))

    def __repr__(self):
        return "EquivariantMap(%r -> %r)" % (self.dom, self.cod)


def identity_equivariant(v):
    return EquivariantMap(v, v, [QMatrix.identity(d) for d in v.fiber_dims],
                          audit=False)


def trivial_module(G):
    """Fiber R with the absolute value at every object; all actions 1."""
    return NormedModule(G, [1] * G.num_objects,
                        [L1Norm(1) for _ in range(G.num_objects)],
                        [QMatrix.identity(1) for _ in range(G.num_morphisms)],
                        audit=False)


def pullback(f, u):
    """Module over the domain of f with fibers and actions read off u."""
    return NormedModule(f.dom,
                        [u.fiber_dims[f.obj_map[e]] for e in range(f.dom.num_objects)],
                        [u.fiber_norms[f.obj_map[e]] for e in range(f.dom.num_objects)],
                        [u.actions[f.mor_map[g]] for g in range(f.dom.num_morphisms)])


def _hom_fiber_norm(vnorm, wnorm, dimv, dimw):
    # maps are flattened column-major: entry (i, j) sits at j*dimw + i
    if isinstance(vnorm, L1Norm):
        # operator norm over the l1 ball = max over basis columns
        return SupBlockNorm([wnorm] * dimv)
    rows = []
    for u in vnorm.vertices():
        for b in wnorm.h_rows():
            row = [ZERO] * (dimv * dimw)
            for j in range(dimv):
                if u[j]:
                    for i in range(dimw):
                        if b[i]:
                            row[j * dimw + i] = b[i] * u[j]
            rows.append(row)
    return HRepNorm(rows, dim=dimv * dimw)


def _kron(a, b):
    """Kronecker product a (x) b as a sparse matrix."""
    rows = []
    for i1 in range(a.nrows):
        ra = a.rows[i1]
        for i2 in range(b.nrows):
            rb = b.rows[i2]
            row = {}
            for j1, x in ra.items():
                for j2, y in rb.items():
                    row[j1 * b.ncols + j2] = x * y
            rows.append(row)
    return QMatrix(a.nrows * b.nrows, a.ncols * b.ncols, rows)


def hom_module(v, w):
    """B(V, W): fiberwise bounded maps with conjugation action.

    The fiber at e is all linear maps V_e -> W_e with the exact operator
    norm; g acts by f |-> rho^W_g f rho^V_{g^-1}.
    """
    if v.base is not w.base:
        raise ModuleError("hom module needs one common base groupoid")
    G = v.base
    dims = [v.fiber_dims[e] * w.fiber_dims[e] for e in range(G.num_objects)]
    norms = [_hom_fiber_norm(v.fiber_norms[e], w.fiber_norms[e],
                             v.fiber_dims[e], w.fiber_dims[e])
             for e in range(G.num_objects)]
    actions = []
    for g in range(G.num_morphisms):
        ginv = G.inv[g]
        # column-major flatten turns f |-> P f Q into (Q^T kron P)
        actions.append(_kron(v.actions[ginv].transpose(), w.actions[g]))
    return NormedModule(G, dims, norms, actions)


def invariants(v):
    """Basis of the invariant subspace of the product, with its norm.

    Returns (basis, norm): basis vectors live in the product of all fibers
    (dense coordinates); the norm acts on coefficient vectors with respect
    to that basis and is the restriction of the sup norm over fibers.
    """
    G = v.base
    offs, total = v.fiber_offsets()
    rows = []
    for g in range(G.num_morphisms):
        s, t = G.source[g], G.target[g]
        if g == G.identity[s]:
            continue
        act = v.actions[g]
        for i in range(v.fiber_dims[t]):
            row = dict()
            for j, x in act.rows[i].items():
                row[offs[s] + j] = row.get(offs[s] + j, ZERO) + x
            k = offs[t] + i
            row[k] = row.get(k, ZERO) - ONE
            rows.append(row)
    mat = QMatrix(len(rows), total, rows)
    basis = kernel_basis(mat)
    if not basis:
        return [], HRepNorm([], dim=0)
    prod = v.product_norm()
    nrows = []
    for a in prod.h_rows_sparse():
        nrows.append([sum(a[i] * b[i] for i in a) for b in basis])
    return basis, HRepNorm(nrows, dim=len(basis))


def linf_module(G, v):
    """Functions on target fibers of the groupoid with values in v.

    The fiber at e is all maps from {morphisms with target e} to V_e with
    the sup norm; g acts by (g.phi)(h) = g.(phi(g^-1 h)).  Returns the
    module together with the constants inclusion from v.
    """
    fibers = [G.morphisms_with_target(e) for e in range(G.num_objects)]
    pos = [{h: k for k, h in enumerate(fb)} for fb in fibers]
    dims = [len(fibers[e]) * v.fiber_dims[e] for e in range(G.num_objects)]
    norms = [SupBlockNorm([v.fiber_norms[e]] * len(fibers[e]))
             for e in range(G.num_objects)]
    actions = []
    for g in range(G.num_morphisms):
        s, t = G.source[g], G.target[g]
        dv = v.fiber_dims[s]
        rho = v.actions[g]
        rows = [dict() for _ in range(dims[t])]
        ginv = G.inv[g]
        for h in fibers[t]:
            src_block = pos[s][G.comp[ginv][h]] * dv
            dst_block = pos[t][h] * v.fiber_dims[t]
            for i in range(v.fiber_dims[t]):
                for j, x in rho.rows[i].items():
                    rows[dst_block + i][src_block + j] = x
        actions.append(QMatrix(dims[t], dims[s], rows))
    mod = NormedModule(G, dims, norms, actions)
    comps = []
    for e in range(G.num_objects):
        dv = v.fiber_dims[e]
        rows = [dict() for _ in range(dims[e])]
        for k in range(len(fibers[e])):
            for i in range(dv):
                rows[k * dv + i][i] = ONE
        comps.append(QMatrix(dims[e], dv, rows))
    return mod, EquivariantMap(v, mod, comps)


def dual_module(v):
    """Dual fibers with dual norms; g acts by the transpose of g inverse."""
    G = v.base
    norms = [dual_norm(n) for n in v.fiber_norms]
    actions = [v.actions[G.inv[g]].transpose() for g in range(G.num_morphisms)]
    return NormedModule(G, list(v.fiber_dims), norms, actions)


def sigma_parts(G):
    """The constants inclusion into the sup-function module and its cokernel.

    Returns (linf, c, sigma, proj) with proj the fiberwise quotient map
    linf -> sigma; sigma carries the quotient norm.
    """
    r = trivial_module(G)
    linf, c = linf_module(G, r)
    qnorms, lifts, projs = [], [], []
    for e in range(G.num_objects):
        sub = [c.components[e].col(0)] if linf.fiber_dims[e] else []
        q = QuotientNorm(linf.fiber_norms[e], sub)
        qnorms.append(q)
        lift_rows = [dict() for _ in range(linf.fiber_dims[e])]
        for k, i in enumerate(q.complement):
            lift_rows[i][k] = ONE
        lifts.append(QMatrix(linf.fiber_dims[e], q.dim, lift_rows))
        projs.append(QMatrix.from_rows(q.proj_rows, linf.fiber_dims[e]))
    actions = []
    for g in range(G.num_morphisms):
        s, t = G.source[g], G.target[g]
        actions.append(projs[t] * linf.actions[g] * lifts[s])
    sigma = NormedModule(G, [q.dim for q in qnorms], qnorms, actions)
    proj = EquivariantMap(linf, sigma, projs)
    return linf, c, sigma, proj


def sigma_module(G):
    """Cokernel of the constants inclusion, with the quotient norm."""
    return sigma_parts(G)[2]


def homotopy_action(h, v):
    """The isometry (pullback along from) -> (pullback along to) given by h.

    The component at e is the action of the connecting morphism h_e; the
    naturality of h makes it equivariant, which is re-verified exactly.
    """
    dom = pullback(h.from_map, v)
    cod = pullback(h.to_map, v)
    comps = [v.actions[h.components[e]]
             for e in range(h.from_map.dom.num_objects)]
    return EquivariantMap(dom, cod, comps)
