"""Strong resolutions and comparison maps onto the standard dual complex.

A resolution here is an augmented cochain complex of equivariant modules
together with an explicit fiberwise contraction of norm at most one.  The
two stock constructions dualize the chain complexes: the standard
resolution is functions on composable tuples, the homogeneous one is
functions on common-target tuples with the contraction transported
through the prefix-product isometries.

comparison_map realizes the canonical norm non-increasing cochain map of
any such resolution onto the standard one by the contraction recursion,
and audits it exactly.  The invariants (and, for pairs, the kernel of the
restriction between invariants) form ordinary rational cochain complexes
whose classes can be pushed into the reduced complex; this is how the
resolution-independence statements are checked.
"""

from fractions import Fraction

from .chains import (DEGREE_PATH_CAP, bar_complex, hom_inhom_isos,
                     homogeneous_complex)
from .cohomology import (CochainComplexDesc, class_coordinates, cohomology,
                         reduced_embedding)
from .linalg import QMatrix, columns_matrix, kernel_basis, solve, solve_in_span
from .modules import EquivariantMap, hom_module, invariants, pullback
from .norms import HRepNorm, operator_norm

ZERO = Fraction(0)
ONE = Fraction(1)


class HomalgError(Exception):
    pass


def _dual_block(mat, dv):
    """Precomposition with mat on hom coordinates (path-major, dv each)."""
    rows = [dict() for _ in range(mat.ncols * dv)]
    for p, r in enumerate(mat.rows):
        for q, x in r.items():
            for i in range(dv):
                rows[q * dv + i][p * dv + i] = x
    return QMatrix(mat.ncols * dv, mat.nrows * dv, rows)


def _global_map(emap):
    """Product-coordinate matrix of a fiberwise map."""
    offs_d, tot_d = emap.dom.fiber_offsets()
    offs_c, tot_c = emap.cod.fiber_offsets()
    rows = [dict() for _ in range(tot_c)]
    for e, blk in enumerate(emap.components):
        for i, r in enumerate(blk.rows):
            for j, x in r.items():
                rows[offs_c[e] + i][offs_d[e] + j] = x
    return QMatrix(tot_c, tot_d, rows)


class AugmentedResolution:
    """Augmented cochain complex of equivariant modules with a contraction.

    modules[k] for k = 0..degrees, deltas[k] : modules[k] -> modules[k+1]
    for k < degrees, augmentation : module -> modules[0].  contraction[k]
    (k >= 1) and s0 are per-object fiber matrices going one step down;
    they need not be equivariant but must satisfy the contraction identity
    and have norm at most one.  chains optionally keeps the chain complex
    the resolution was dualized from.
    """

    __slots__ = ("groupoid", "module", "degrees", "modules", "deltas",
                 "augmentation", "s0", "contraction", "chains")

    def __init__(self, module, degrees, modules, deltas, augmentation,
                 s0, contraction, chains=None, audit=True):
        self.groupoid = module.base
        self.module = module
        self.degrees = degrees
        self.modules = modules
        self.deltas = deltas
        self.augmentation = augmentation
        self.s0 = s0
        self.contraction = contraction
        self.chains = chains
        if audit:
            self.check_strong()

    def check_strong(self):
        G = self.groupoid
        n = self.degrees
        if len(self.modules) != n + 1 or len(self.deltas) != n:
            raise HomalgError("resolution needs modules 0..%d and %d "
                              "coboundaries" % (n, n))
        if len(self.contraction) != n + 1:
            raise HomalgError("contraction must cover degrees 1..%d" % n)
        for k in range(n):
            d = self.deltas[k]
            if d.dom is not self.modules[k] or d.cod is not self.modules[k + 1]:
                raise HomalgError("coboundary %d connects wrong modules" % k)
        if (self.augmentation.dom is not self.module
                or self.augmentation.cod is not self.modules[0]):
            raise HomalgError("augmentation does not map onto degree 0")
        for e in range(G.num_objects):
            for k in range(n - 1):
                a = self.deltas[k + 1].components[e]
                b = self.deltas[k].components[e]
                if not (a * b).is_zero():
                    raise HomalgError(
                        "coboundaries do not square to zero at degree %d" % k)
            if n and not (self.deltas[0].components[e]
                          * self.augmentation.components[e]).is_zero():
                raise HomalgError("augmentation is not closed")
        # contraction identities, object by object
        for e in range(G.num_objects):
            eps = self.augmentation.components[e]
            s0 = self.s0[e]
            if s0 * eps != QMatrix.identity(self.module.fiber_dims[e]):
                raise HomalgError(
                    "contraction does not split the augmentation at "
                    "object %d" % e)
            if n:
                lhs = eps * s0 + self.contraction[1][e] \
                    * self.deltas[0].components[e]
                if lhs != QMatrix.identity(self.modules[0].fiber_dims[e]):
                    raise HomalgError(
                        "contraction identity fails at degree 0, object %d"
                        % e)
            for k in range(1, n):
                lhs = self.deltas[k - 1].components[e] \
                    * self.contraction[k][e] \
                    + self.contraction[k + 1][e] \
                    * self.deltas[k].components[e]
                if lhs != QMatrix.identity(self.modules[k].fiber_dims[e]):
                    raise HomalgError(
                        "contraction identity fails at degree %d, object %d"
                        % (k, e))
        # norm bounds
        for e in range(G.num_objects):
            if operator_norm(self.s0[e], self.modules[0].fiber_norms[e],
                             self.module.fiber_norms[e]) > ONE:
                raise HomalgError("degree-0 contraction has norm above one")
            for k in range(1, n + 1):
                if operator_norm(self.contraction[k][e],
                                 self.modules[k].fiber_norms[e],
                                 self.modules[k - 1].fiber_norms[e]) > ONE:
                    raise HomalgError(
                        "degree-%d contraction has norm above one" % k)


def _dual_resolution(cx, v, s_minus1, s_comps):
    """Resolution dual to a chain complex with the given chain contraction."""
    G = cx.groupoid
    n = cx.max_degree
    dv = v.fiber_dims
    mods = [hom_module(cx.modules[k], v) for k in range(n + 1)]
    deltas = []
    for k in range(n):
        comps = [_dual_block(cx.boundaries[k + 1].components[e], dv[e])
                 for e in range(G.num_objects)]
        deltas.append(EquivariantMap(mods[k], mods[k + 1], comps))
    aug = EquivariantMap(v, mods[0],
                         [_dual_block(cx.augmentation.components[e], dv[e])
                          for e in range(G.num_objects)])
    s0 = [_dual_block(s_minus1[e], dv[e]) for e in range(G.num_objects)]
    contraction = [None]
    for k in range(n):
        contraction.append([_dual_block(s_comps[k][e], dv[e])
                            for e in range(G.num_objects)])
    return AugmentedResolution(v, n, mods, deltas, aug, s0, contraction,
                               chains=cx)


def standard_resolution(G, v, n, path_cap=DEGREE_PATH_CAP):
    """Functions on composable tuples, contracted by evaluation at paths
    with a leading identity."""
    if v.base is not G:
        raise HomalgError("module lives over a different groupoid")
    if n < 1:
        raise HomalgError("need degree at least one")
    bar = bar_complex(G, n, path_cap)
    return _dual_resolution(bar, v, bar.s_minus1, bar.contraction_components)


def homogeneous_resolution(G, v, n, path_cap=DEGREE_PATH_CAP):
    """Functions on common-target tuples; the contraction is transported
    through the prefix-product isometries and prepends an identity."""
    if v.base is not G:
        raise HomalgError("module lives over a different groupoid")
    if n < 1:
        raise HomalgError("need degree at least one")
    inh = bar_complex(G, n, path_cap)
    hom = homogeneous_complex(G, n, path_cap)
    to_hom, to_inhom = hom_inhom_isos(inh, hom)
    s_minus1 = [to_hom[0].components[e] * inh.s_minus1[e]
                for e in range(G.num_objects)]
    s_comps = []
    for k in range(n):
        s_comps.append([to_hom[k + 1].components[e]
                        * inh.contraction_components[k][e]
                        * to_inhom[k].components[e]
                        for e in range(G.num_objects)])
    return _dual_resolution(hom, v, s_minus1, s_comps)


def comparison_map(res, std=None):
    """The canonical cochain map from a strong resolution onto the
    standard one, built degreewise by the contraction recursion.

    Returns (alphas, std) with alphas[k] equivariant from res.modules[k]
    to std.modules[k].  Verified exactly: equivariance, the cochain map
    identity, compatibility with the augmentations, and operator norm at
    most one in every degree.
    """
    G = res.groupoid
    v = res.module
    n = res.degrees
    if std is None:
        std = standard_resolution(G, v, n)
    sv = std.module
    if std.groupoid is not G or sv.fiber_dims != v.fiber_dims or (
            sv is not v and any(sv.actions[g] != v.actions[g]
                                for g in range(G.num_morphisms))):
        raise HomalgError("standard target built for different data")
    bar = std.chains
    alphas = []
    prev_blocks = None
    for k in range(n + 1):
        bk = bar.bases[k]
        comps = []
        for e in range(G.num_objects):
            dv = v.fiber_dims[e]
            d = res.modules[k].fiber_dims[e]
            rows = [dict() for _ in range(bk.counts[e] * dv)]
            for loc in range(bk.counts[e]):
                p = bk.paths[bk.offsets[e] + loc]
                g0 = p[0]
                ep = G.source[g0]
                if k == 0:
                    blk = v.actions[g0] * (res.s0[ep]
                                           * res.modules[0].actions[G.inv[g0]])
                else:
                    bprev = bar.bases[k - 1]
                    q = (G.comp[g0][p[1]],) + p[2:]
                    qloc = bprev.index[q] - bprev.offsets[e]
                    blk = prev_blocks[e][qloc] \
                        * res.modules[k - 1].actions[g0] \
                        * res.contraction[k][ep] \
                        * res.modules[k].actions[G.inv[g0]]
                for i, r in enumerate(blk.rows):
                    rows[loc * dv + i] = dict(r)
            comps.append(QMatrix(bk.counts[e] * dv, d, rows))
        alphas.append(EquivariantMap(res.modules[k], std.modules[k], comps))
        prev_blocks = []
        for e in range(G.num_objects):
            dv = v.fiber_dims[e]
            full = comps[e]
            prev_blocks.append([full.submatrix(
                range(loc * dv, (loc + 1) * dv), range(full.ncols))
                for loc in range(bk.counts[e])])
    for k in range(n):
        for e in range(G.num_objects):
            lhs = std.deltas[k].components[e] * alphas[k].components[e]
            rhs = alphas[k + 1].components[e] * res.deltas[k].components[e]
            if lhs != rhs:
                raise HomalgError(
                    "comparison is not a cochain map at degree %d" % k)
    for e in range(G.num_objects):
        lhs = alphas[0].components[e] * res.augmentation.components[e]
        if lhs != std.augmentation.components[e]:
            raise HomalgError("comparison does not extend the identity")
    for k in range(n + 1):
        if alphas[k].norm_bound > ONE:
            raise HomalgError("comparison has norm above one at degree %d" % k)
    return alphas, std


def invariants_complex(res):
    """The equivariant vectors of a resolution as a plain cochain complex.

    Returns (desc, lifts): desc carries the coboundaries and norms in
    invariant coordinates (cohomology computable through degree
    res.degrees - 1), lifts[k] holds the product-coordinate basis vectors
    behind those coordinates.
    """
    if res.degrees < 1:
        raise HomalgError("need degree at least one")
    lifts, norms, dims = [], [], []
    for k in range(res.degrees + 1):
        basis, nrm = invariants(res.modules[k])
        lifts.append(basis)
        norms.append(nrm)
        dims.append(len(basis))
    deltas = []
    for k in range(res.degrees):
        dg = _global_map(res.deltas[k])
        cols = []
        for b in lifts[k]:
            coords = solve_in_span(lifts[k + 1], dg.matvec(b))
            if coords is None:
                raise HomalgError(
                    "coboundary leaves the invariants at degree %d" % k)
            cols.append(coords)
        deltas.append(columns_matrix(cols, dims[k + 1]))
    desc = CochainComplexDesc(res.groupoid, res.module, res.degrees - 1,
                              None, dims, deltas, norms)
    return desc, lifts


def _combine(vectors, coeffs):
    n = len(vectors[0]) if vectors else 0
    out = [ZERO] * n
    for c, vec in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(vec):
                if x:
                    out[i] += c * x
    return out


class InducedClasses:
    """Classes of a resolution-side complex pushed into reduced classes."""

    __slots__ = ("matrices", "source", "desc", "lifts")

    def __init__(self, matrices, source, desc, lifts):
        self.matrices = matrices
        self.source = source
        self.desc = desc
        self.lifts = lifts


def comparison_induced_classes(res, alphas, cx, h, bar):
    """Push the invariants-cohomology of res through the comparison map.

    cx, h: reduced cochain complex of the same groupoid and module and its
    cohomology; bar the chain complex behind the standard target.
    matrices[k] expresses the image of each invariants-class in the chosen
    reduced representatives.
    """
    desc, lifts = invariants_complex(res)
    src = cohomology(desc, seminorms=False)
    mats = []
    top = min(desc.degrees, h.degrees)
    for k in range(top + 1):
        emb = reduced_embedding(cx, bar, k)
        ag = _global_map(alphas[k])
        cols = []
        for rep in src.reps[k]:
            mapped = ag.matvec(_combine(lifts[k], rep))
            red = solve(emb, mapped)
            if red is None:
                raise HomalgError(
                    "comparison image is not an invariant cochain")
            cols.append(class_coordinates(h, red, k))
        mats.append(columns_matrix(cols, len(h.reps[k])))
    return InducedClasses(mats, src, desc, lifts)


class PairResolution:
    """Resolutions over a groupoid pair joined by a restriction map.

    amb resolves a module over the ambient groupoid, sub the pulled back
    module over the subgroupoid; connecting[k] is equivariant over the
    subgroupoid from the pullback of amb.modules[k] to sub.modules[k] and
    must commute with the coboundaries, the augmentations and the two
    contractions.
    """

    __slots__ = ("pair", "amb", "sub", "connecting")

    def __init__(self, pair, amb, sub, connecting, audit=True):
        self.pair = pair
        self.amb = amb
        self.sub = sub
        self.connecting = connecting
        if audit:
            self.check()

    def check(self):
        pair = self.pair
        omap = pair.inclusion.obj_map
        n = self.amb.degrees
        if self.sub.degrees != n or len(self.connecting) != n + 1:
            raise HomalgError("pair resolution degrees disagree")
        if self.amb.groupoid is not pair.ambient \
                or self.sub.groupoid is not pair.sub:
            raise HomalgError("resolutions live over the wrong groupoids")
        for k in range(n + 1):
            conn = self.connecting[k]
            if conn.cod is not self.sub.modules[k]:
                raise HomalgError("connecting map %d has wrong codomain" % k)
            for a in range(pair.sub.num_objects):
                want = self.amb.modules[k].fiber_dims[omap[a]]
                if conn.components[a].ncols != want:
                    raise HomalgError(
                        "connecting map %d has wrong domain at object %d"
                        % (k, a))
        for a in range(pair.sub.num_objects):
            e = omap[a]
            for k in range(n):
                lhs = self.connecting[k + 1].components[a] \
                    * self.amb.deltas[k].components[e]
                rhs = self.sub.deltas[k].components[a] \
                    * self.connecting[k].components[a]
                if lhs != rhs:
                    raise HomalgError(
                        "restriction does not commute with the coboundary "
                        "at degree %d" % k)
            lhs = self.connecting[0].components[a] \
                * self.amb.augmentation.components[e]
            if lhs != self.sub.augmentation.components[a]:
                raise HomalgError(
                    "restriction does not commute with the augmentations")
            if self.sub.s0[a] * self.connecting[0].components[a] \
                    != self.amb.s0[e]:
                raise HomalgError(
                    "restriction does not commute with the degree-0 "
                    "contractions")
            for k in range(1, n + 1):
                lhs = self.connecting[k - 1].components[a] \
                    * self.amb.contraction[k][e]
                rhs = self.sub.contraction[k][a] \
                    * self.connecting[k].components[a]
                if lhs != rhs:
                    raise HomalgError(
                        "restriction does not commute with the contractions "
                        "at degree %d" % k)


def _restriction_connecting(pair, amb, sub, v):
    """Precomposition with the entrywise inclusion of paths."""
    omap = pair.inclusion.obj_map
    mmap = pair.inclusion.mor_map
    out = []
    for k in range(amb.degrees + 1):
        ba = sub.chains.bases[k]
        bg = amb.chains.bases[k]
        comps = []
        for a in range(pair.sub.num_objects):
            e = omap[a]
            dv = v.fiber_dims[e]
            rows = [dict() for _ in range(ba.counts[a] * dv)]
            for qloc in range(ba.counts[a]):
                q = ba.paths[ba.offsets[a] + qloc]
                p = tuple(mmap[m] for m in q)
                ploc = bg.index[p] - bg.offsets[e]
                for j in range(dv):
                    rows[qloc * dv + j][ploc * dv + j] = ONE
            comps.append(QMatrix(ba.counts[a] * dv, bg.counts[e] * dv, rows))
        out.append(EquivariantMap(pullback(pair.inclusion, amb.modules[k]),
                                  sub.modules[k], comps))
    return out


def standard_pair_resolution(pair, v, n, path_cap=DEGREE_PATH_CAP):
    amb = standard_resolution(pair.ambient, v, n, path_cap)
    sub = standard_resolution(pair.sub, pullback(pair.inclusion, v), n,
                              path_cap)
    return PairResolution(pair, amb, sub,
                          _restriction_connecting(pair, amb, sub, v))


def homogeneous_pair_resolution(pair, v, n, path_cap=DEGREE_PATH_CAP):
    amb = homogeneous_resolution(pair.ambient, v, n, path_cap)
    sub = homogeneous_resolution(pair.sub, pullback(pair.inclusion, v), n,
                                 path_cap)
    return PairResolution(pair, amb, sub,
                          _restriction_connecting(pair, amb, sub, v))


def pair_comparison_map(pres, std_pair=None):
    """Componentwise comparison maps, with the commutation audit.

    Returns (alphas_amb, alphas_sub, std_pair)."""
    if std_pair is None:
        std_pair = standard_pair_resolution(pres.pair, pres.amb.module,
                                            pres.amb.degrees)
    alphas_amb, _ = comparison_map(pres.amb, std_pair.amb)
    alphas_sub, _ = comparison_map(pres.sub, std_pair.sub)
    omap = pres.pair.inclusion.obj_map
    for k in range(pres.amb.degrees + 1):
        for a in range(pres.pair.sub.num_objects):
            lhs = std_pair.connecting[k].components[a] \
                * alphas_amb[k].components[omap[a]]
            rhs = alphas_sub[k].components[a] \
                * pres.connecting[k].components[a]
            if lhs != rhs:
                raise HomalgError(
                    "comparison components do not commute with the "
                    "restriction at degree %d" % k)
    return alphas_amb, alphas_sub, std_pair


def pair_kernel_complex(pres):
    """Kernel of the restriction between invariants, as a cochain complex.

    Returns (desc, lifts): lifts[k] are product-coordinate vectors over
    the ambient resolution spanning the kernel; desc carries the
    coboundaries and the restricted norms in those coordinates.
    """
    n = pres.amb.degrees
    if n < 1:
        raise HomalgError("need degree at least one")
    desc_amb, inv_amb = invariants_complex(pres.amb)
    desc_sub, inv_sub = invariants_complex(pres.sub)
    pair = pres.pair
    omap = pair.inclusion.obj_map
    lifts, dims, norms = [], [], []
    kcoords = []
    for k in range(n + 1):
        offs_g, _ = pres.amb.modules[k].fiber_offsets()
        offs_a, tot_a = pres.sub.modules[k].fiber_offsets()
        rows = []
        for b in inv_amb[k]:
            restricted = [ZERO] * tot_a
            for a in range(pair.sub.num_objects):
                e = omap[a]
                d = pres.amb.modules[k].fiber_dims[e]
                piece = pres.connecting[k].components[a].matvec(
                    b[offs_g[e]:offs_g[e] + d])
                for i, x in enumerate(piece):
                    restricted[offs_a[a] + i] = x
            coords = solve_in_span(inv_sub[k], restricted)
            if coords is None:
                raise HomalgError("restriction of an invariant vector is "
                                  "not invariant")
            rows.append(coords)
        cmat = columns_matrix(rows, len(inv_sub[k]))
        ker = kernel_basis(cmat)
        kcoords.append(ker)
        lifts.append([_combine(inv_amb[k], kc) for kc in ker])
        dims.append(len(ker))
        base_rows = desc_amb.norms[k]
        kmat = columns_matrix(ker, len(inv_amb[k]))
        hrows = []
        for a in base_rows.h_rows_sparse():
            hrows.append([sum(a[i] * kmat.entry(i, j) for i in a)
                          for j in range(dims[k])])
        norms.append(HRepNorm(hrows, dim=dims[k]))
    deltas = []
    for k in range(n):
        cols = []
        for j in range(dims[k]):
            img = desc_amb.deltas[k].matvec(kcoords[k][j])
            coords = solve_in_span(kcoords[k + 1], img)
            if coords is None:
                raise HomalgError(
                    "coboundary leaves the kernel at degree %d" % k)
            cols.append(coords)
        deltas.append(columns_matrix(cols, dims[k + 1]))
    desc = CochainComplexDesc(pair.ambient, pres.amb.module, n - 1,
                              None, dims, deltas, norms)
    return desc, lifts


def pair_induced_classes(pres, alphas_amb, rel, hrel, bar):
    """Push kernel classes of a pair resolution into the relative complex.

    rel, hrel: the relative complex of the same pair and module and its
    cohomology; bar the chain complex behind the standard ambient target.
    """
    desc, lifts = pair_kernel_complex(pres)
    src = cohomology(desc, seminorms=False)
    mats = []
    top = min(desc.degrees, hrel.degrees)
    for k in range(top + 1):
        emb = reduced_embedding(rel.ambient, bar, k)
        ag = _global_map(alphas_amb[k])
        cols = []
        for rep in src.reps[k]:
            mapped = ag.matvec(_combine(lifts[k], rep))
            red = solve(emb, mapped)
            if red is None:
                raise HomalgError(
                    "comparison image is not an invariant cochain")
            kc = rel.project(red, k)
            cols.append(class_coordinates(hrel, kc, k))
        mats.append(columns_matrix(cols, len(hrel.reps[k])))
    return InducedClasses(mats, src, desc, lifts)


def verify_relative_injectivity_witness(bar, n, u, i_map, sigma, alpha):
    """Extend a map into a degree-n dual module along a split injection.

    i_map : V -> W equivariant, sigma a per-object family of splits
    W_e -> V_e with sigma o i = id and norm at most one; alpha : V -> I
    where I is hom_module(bar.modules[n], u).  Returns beta : W -> I with
    beta o i = alpha and norm(beta) <= norm(alpha); equivariance, the
    factorization and the norm bound are all verified exactly.
    """
    G = bar.groupoid
    v = i_map.dom
    w = i_map.cod
    bn = bar.bases[n]
    target = alpha.cod
    if alpha.dom is not v:
        raise HomalgError("alpha must start at the domain of the injection")
    for e in range(G.num_objects):
        du = u.fiber_dims[e]
        if target.fiber_dims[e] != bn.counts[e] * du:
            raise HomalgError("target is not the degree-%d dual module" % n)
        s = sigma[e]
        if s.nrows != v.fiber_dims[e] or s.ncols != w.fiber_dims[e]:
            raise HomalgError("split has wrong shape at object %d" % e)
        if s * i_map.components[e] != QMatrix.identity(v.fiber_dims[e]):
            raise HomalgError("sigma does not split the injection at "
                              "object %d" % e)
        if operator_norm(s, w.fiber_norms[e], v.fiber_norms[e]) > ONE:
            raise HomalgError("split has norm above one at object %d" % e)
    comps = []
    for e in range(G.num_objects):
        du = u.fiber_dims[e]
        rows = [dict() for _ in range(target.fiber_dims[e])]
        for loc in range(bn.counts[e]):
            p = bn.paths[bn.offsets[e] + loc]
            g0 = p[0]
            ep = G.source[g0]
            # conjugate the split along the leading entry, then evaluate
            # alpha at this path
            r = v.actions[g0] * sigma[ep] * w.actions[G.inv[g0]]
            ablk = alpha.components[e].submatrix(
                range(loc * du, (loc + 1) * du),
                range(alpha.components[e].ncols))
            blk = ablk * r
            for i, row in enumerate(blk.rows):
                rows[loc * du + i] = dict(row)
        comps.append(QMatrix(target.fiber_dims[e], w.fiber_dims[e], rows))
    beta = EquivariantMap(w, target, comps)
    for e in range(G.num_objects):
        if beta.components[e] * i_map.components[e] != alpha.components[e]:
            raise HomalgError("extension does not restrict to alpha")
    if beta.norm_bound > alpha.norm_bound:
        raise HomalgError("extension increases the norm")
    return beta
