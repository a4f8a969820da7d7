"""Bar chain complexes of a finite groupoid, in both parameterizations.

The inhomogeneous complex has basis the composable (n+1)-tuples
(g_0, ..., g_n) with s(g_i) = t(g_{i+1}), fibered over the target of g_0;
g acts on the leading entry.  The homogeneous complex has basis the
(n+1)-tuples with a common target, with the diagonal action.  Fibers carry
the l1 norm.  Coordinates concatenate the fibers in object order, each
fiber ordered lexicographically by morphism ids.

Also here: the augmentation and chain contraction of the inhomogeneous
complex, the mutually inverse isometries between the two parameterizations,
chain maps induced by groupoid maps, the chain homotopy induced by a
homotopy of groupoid maps, and the signed averaging operator on the
homogeneous complex.
"""

from fractions import Fraction
from itertools import permutations

from .linalg import QMatrix
from .modules import EquivariantMap, NormedModule, trivial_module
from .norms import L1Norm

ZERO = Fraction(0)
ONE = Fraction(1)

# Refuse degrees whose total basis path count exceeds this.
DEGREE_PATH_CAP = 20000


class ChainError(Exception):
    pass


class BarBasis:
    """Ordered basis of one chain degree, with fiber bookkeeping."""

    __slots__ = ("degree", "paths", "index", "offsets", "counts", "fiber_of")

    def __init__(self, degree, paths_by_fiber):
        self.degree = degree
        self.paths = []
        self.fiber_of = []
        self.offsets = []
        self.counts = []
        for e, bucket in enumerate(paths_by_fiber):
            self.offsets.append(len(self.paths))
            self.counts.append(len(bucket))
            for p in bucket:
                self.paths.append(p)
                self.fiber_of.append(e)
        self.index = {p: k for k, p in enumerate(self.paths)}

    @property
    def total(self):
        return len(self.paths)


def _inhom_paths(G, n):
    """Composable (n+1)-tuples bucketed by target object, lex order."""
    buckets = [[] for _ in range(G.num_objects)]
    by_target = [G.morphisms_with_target(e) for e in range(G.num_objects)]
    # start with single morphisms, extend on the right
    level = [(g,) for g in range(G.num_morphisms)]
    for _ in range(n):
        nxt = []
        for p in level:
            for g in by_target[G.source[p[-1]]]:
                nxt.append(p + (g,))
        level = nxt
    for p in sorted(level):
        buckets[G.target[p[0]]].append(p)
    return buckets


def _hom_paths(G, n):
    """Common-target (n+1)-tuples bucketed by that target, lex order."""
    buckets = []
    for e in range(G.num_objects):
        fiber = G.morphisms_with_target(e)
        bucket = [()]
        for _ in range(n + 1):
            bucket = [p + (g,) for p in bucket for g in fiber]
        buckets.append(sorted(bucket))
    return buckets


class BarComplex:
    """Chain data of one groupoid up to a fixed degree.

    modules[n] is the degree-n chain module; boundaries[n] (n >= 1) the
    equivariant boundary; augmentation maps degree 0 onto the trivial
    module.  For the inhomogeneous kind, s_minus1 and
    contraction_components hold the fiberwise chain contraction.
    """

    __slots__ = ("groupoid", "max_degree", "kind", "bases", "modules",
                 "trivial", "boundaries", "augmentation", "s_minus1",
                 "contraction_components")

    def __init__(self, groupoid, max_degree, kind, bases, modules, trivial,
                 boundaries, augmentation, s_minus1, contraction_components):
        self.groupoid = groupoid
        self.max_degree = max_degree
        self.kind = kind
        self.bases = bases
        self.modules = modules
        self.trivial = trivial
        self.boundaries = boundaries
        self.augmentation = augmentation
        self.s_minus1 = s_minus1
        self.contraction_components = contraction_components

    def _assemble(self, n_dst, n_src, blocks):
        """Block-diagonal global matrix from per-object fiber blocks."""
        bs, bd = self.bases[n_src], self.bases[n_dst]
        rows = [dict() for _ in range(bd.total)]
        for e, blk in enumerate(blocks):
            ro, co = bd.offsets[e], bs.offsets[e]
            for i, r in enumerate(blk.rows):
                for j, x in r.items():
                    rows[ro + i][co + j] = x
        return QMatrix(bd.total, bs.total, rows)

    def boundary_global(self, n):
        return self._assemble(n - 1, n, self.boundaries[n].components)

    def augmentation_global(self):
        b0 = self.bases[0]
        rows = [dict() for _ in range(self.groupoid.num_objects)]
        for e in range(self.groupoid.num_objects):
            comp = self.augmentation.components[e]
            for i, r in enumerate(comp.rows):
                for j, x in r.items():
                    rows[e][b0.offsets[e] + j] = x
        return QMatrix(self.groupoid.num_objects, b0.total, rows)

    def contraction_global(self, k):
        """s_k : degree k -> degree k+1 as one matrix (k = -1 allowed)."""
        if k == -1:
            b0 = self.bases[0]
            rows = [dict() for _ in range(b0.total)]
            for e, blk in enumerate(self.s_minus1):
                for i, r in enumerate(blk.rows):
                    for j, x in r.items():
                        rows[b0.offsets[e] + i][e] = x
            return QMatrix(b0.total, self.groupoid.num_objects, rows)
        return self._assemble(k + 1, k, self.contraction_components[k])

    def level_action(self, n, g):
        """Action of one morphism on the full degree-n coordinate space."""
        G = self.groupoid
        b = self.bases[n]
        s, t = G.source[g], G.target[g]
        act = self.modules[n].actions[g]
        rows = [dict() for _ in range(b.total)]
        for i, r in enumerate(act.rows):
            for j, x in r.items():
                rows[b.offsets[t] + i][b.offsets[s] + j] = x
        return QMatrix(b.total, b.total, rows)


def _chain_module(G, basis, leading_action):
    """Degree module with l1 fibers; action style depends on the kind."""
    dims = list(basis.counts)
    norms = [L1Norm(d) for d in dims]
    actions = []
    for g in range(G.num_morphisms):
        s, t = G.source[g], G.target[g]
        rows = [dict() for _ in range(dims[t])]
        off_s, off_t = basis.offsets[s], basis.offsets[t]
        for j in range(dims[s]):
            p = basis.paths[off_s + j]
            q = leading_action(g, p)
            rows[basis.index[q] - off_t][j] = ONE
        actions.append(QMatrix(dims[t], dims[s], rows))
    return NormedModule(G, dims, norms, actions)


def bar_complex(G, max_degree, path_cap=DEGREE_PATH_CAP):
    """Inhomogeneous Bar complex with boundary, augmentation, contraction."""
    if max_degree < 0:
        raise ChainError("negative degree")
    bases, modules = [], []
    for n in range(max_degree + 1):
        buckets = _inhom_paths(G, n)
        basis = BarBasis(n, buckets)
        if basis.total > path_cap:
            raise ChainError("degree %d needs %d basis paths, cap is %d"
                             % (n, basis.total, path_cap))
        bases.append(basis)
        modules.append(_chain_module(
            G, basis, lambda g, p: (G.comp[g][p[0]],) + p[1:]))
    triv = trivial_module(G)

    boundaries = [None]
    for n in range(1, max_degree + 1):
        bs, bd = bases[n], bases[n - 1]
        comps = []
        for e in range(G.num_objects):
            rows = [dict() for _ in range(bd.counts[e])]
            for j in range(bs.counts[e]):
                p = bs.paths[bs.offsets[e] + j]
                sign = ONE
                for i in range(n):
                    q = p[:i] + (G.comp[p[i]][p[i + 1]],) + p[i + 2:]
                    k = bd.index[q] - bd.offsets[e]
                    rows[k][j] = rows[k].get(j, ZERO) + sign
                    sign = -sign
                k = bd.index[p[:-1]] - bd.offsets[e]
                rows[k][j] = rows[k].get(j, ZERO) + sign
            comps.append(QMatrix(bd.counts[e], bs.counts[e],
                                 [{j: x for j, x in r.items() if x}
                                  for r in rows]))
        boundaries.append(EquivariantMap(modules[n], modules[n - 1], comps))

    aug_comps = []
    for e in range(G.num_objects):
        aug_comps.append(QMatrix(1, bases[0].counts[e],
                                 [{j: ONE for j in range(bases[0].counts[e])}]))
    augmentation = EquivariantMap(modules[0], triv, aug_comps)

    s_minus1 = []
    for e in range(G.num_objects):
        rows = [dict() for _ in range(bases[0].counts[e])]
        k = bases[0].index[(G.identity[e],)] - bases[0].offsets[e]
        rows[k][0] = ONE
        s_minus1.append(QMatrix(bases[0].counts[e], 1, rows))
    contraction = []
    for n in range(max_degree):
        bs, bd = bases[n], bases[n + 1]
        comps = []
        for e in range(G.num_objects):
            rows = [dict() for _ in range(bd.counts[e])]
            for j in range(bs.counts[e]):
                p = bs.paths[bs.offsets[e] + j]
                q = (G.identity[e],) + p
                rows[bd.index[q] - bd.offsets[e]][j] = ONE
            comps.append(QMatrix(bd.counts[e], bs.counts[e], rows))
        contraction.append(comps)

    return BarComplex(G, max_degree, "inhomogeneous", bases, modules, triv,
                      boundaries, augmentation, s_minus1, contraction)


def homogeneous_complex(G, max_degree, path_cap=DEGREE_PATH_CAP):
    """Common-target Bar complex with deletion boundary, diagonal action."""
    if max_degree < 0:
        raise ChainError("negative degree")
    bases, modules = [], []
    for n in range(max_degree + 1):
        basis = BarBasis(n, _hom_paths(G, n))
        if basis.total > path_cap:
            raise ChainError("degree %d needs %d basis paths, cap is %d"
                             % (n, basis.total, path_cap))
        bases.append(basis)
        modules.append(_chain_module(
            G, basis, lambda g, p: tuple(G.comp[g][x] for x in p)))
    triv = trivial_module(G)

    boundaries = [None]
    for n in range(1, max_degree + 1):
        bs, bd = bases[n], bases[n - 1]
        comps = []
        for e in range(G.num_objects):
            rows = [dict() for _ in range(bd.counts[e])]
            for j in range(bs.counts[e]):
                p = bs.paths[bs.offsets[e] + j]
                sign = ONE
                for i in range(n + 1):
                    q = p[:i] + p[i + 1:]
                    k = bd.index[q] - bd.offsets[e]
                    rows[k][j] = rows[k].get(j, ZERO) + sign
                    sign = -sign
            comps.append(QMatrix(bd.counts[e], bs.counts[e],
                                 [{j: x for j, x in r.items() if x}
                                  for r in rows]))
        boundaries.append(EquivariantMap(modules[n], modules[n - 1], comps))

    aug_comps = []
    for e in range(G.num_objects):
        aug_comps.append(QMatrix(1, bases[0].counts[e],
                                 [{j: ONE for j in range(bases[0].counts[e])}]))
    augmentation = EquivariantMap(modules[0], triv, aug_comps)

    return BarComplex(G, max_degree, "homogeneous", bases, modules, triv,
                      boundaries, augmentation, None, None)


def hom_inhom_isos(inhom, hom):
    """Mutually inverse equivariant isometries between the two complexes.

    Returns (to_hom, to_inhom), lists over degrees; to_hom sends
    (g_0, ..., g_n) to its prefix products (g_0, g_0 g_1, ...).
    """
    G = inhom.groupoid
    n_max = min(inhom.max_degree, hom.max_degree)
    to_hom, to_inhom = [], []
    for n in range(n_max + 1):
        bi, bh = inhom.bases[n], hom.bases[n]
        fwd, bwd = [], []
        for e in range(G.num_objects):
            rows = [dict() for _ in range(bh.counts[e])]
            rows_b = [dict() for _ in range(bi.counts[e])]
            for j in range(bi.counts[e]):
                p = bi.paths[bi.offsets[e] + j]
                acc = []
                cur = None
                for g in p:
                    cur = g if cur is None else G.comp[cur][g]
                    acc.append(cur)
                q = tuple(acc)
                rows[bh.index[q] - bh.offsets[e]][j] = ONE
                rows_b[j][bh.index[q] - bh.offsets[e]] = ONE
            fwd.append(QMatrix(bh.counts[e], bi.counts[e], rows))
            bwd.append(QMatrix(bi.counts[e], bh.counts[e], rows_b))
        to_hom.append(EquivariantMap(inhom.modules[n], hom.modules[n], fwd))
        to_inhom.append(EquivariantMap(hom.modules[n], inhom.modules[n], bwd))
    return to_hom, to_inhom


def transported_contraction(inhom, hom, to_hom=None, to_inhom=None):
    """Contraction of the homogeneous complex through the isometries.

    Returns (s_minus1_global, [s_0, ..., s_{n-1}] as global matrices).
    """
    if to_hom is None or to_inhom is None:
        to_hom, to_inhom = hom_inhom_isos(inhom, hom)

    # global forms of the isometries, built on the mixed bases
    def iso_global(n, fwd):
        src = inhom.bases[n] if fwd else hom.bases[n]
        dst = hom.bases[n] if fwd else inhom.bases[n]
        comps = (to_hom if fwd else to_inhom)[n].components
        rows = [dict() for _ in range(dst.total)]
        for e, blk in enumerate(comps):
            ro, co = dst.offsets[e], src.offsets[e]
            for i, r in enumerate(blk.rows):
                for j, x in r.items():
                    rows[ro + i][co + j] = x
        return QMatrix(dst.total, src.total, rows)

    s_m1 = iso_global(0, True) * inhom.contraction_global(-1)
    out = []
    for k in range(min(inhom.max_degree, hom.max_degree)):
        out.append(iso_global(k + 1, True) * inhom.contraction_global(k)
                   * iso_global(k, False))
    return s_m1, out


def induced_chain_map(f, src, dst, n):
    """Entrywise application of a groupoid map, as one global matrix."""
    bs, bd = src.bases[n], dst.bases[n]
    rows = [dict() for _ in range(bd.total)]
    for j, p in enumerate(bs.paths):
        q = tuple(f.mor_map[g] for g in p)
        rows[bd.index[q]][j] = ONE
    return QMatrix(bd.total, bs.total, rows)


def homotopy_leading_twist(h, src, dst, n):
    """Like the induced map of h.from_map, then acting by h on the lead.

    Sends (g_0, ..., g_n) to (h_{t(g_0)} from(g_0), from(g_1), ...).
    """
    G, H = h.from_map.dom, h.from_map.cod
    bs, bd = src.bases[n], dst.bases[n]
    rows = [dict() for _ in range(bd.total)]
    for j, p in enumerate(bs.paths):
        lead = H.comp[h.components[G.target[p[0]]]][h.from_map.mor_map[p[0]]]
        q = (lead,) + tuple(h.from_map.mor_map[g] for g in p[1:])
        rows[bd.index[q]][j] = ONE
    return QMatrix(bd.total, bs.total, rows)


def homotopy_operator(h, src, dst, n):
    """Chain homotopy between the maps induced by h's two functors.

    The degree-n operator sends a path into degree n+1 by the alternating
    insertions of the connecting morphisms; with boundaries d it satisfies

        d s_n + s_{n-1} d = (induced map of to) - (twisted map of from)

    exactly, the right side being induced_chain_map(h.to_map) minus
    homotopy_leading_twist(h).
    """
    G = h.from_map.dom
    fm, tm = h.from_map.mor_map, h.to_map.mor_map
    bs, bd = src.bases[n], dst.bases[n + 1]
    rows = [dict() for _ in range(bd.total)]
    for j, p in enumerate(bs.paths):
        sign = -ONE  # insertion at i carries (-1)^(i+1)
        for i in range(n + 1):
            q = (tuple(tm[g] for g in p[:i + 1])
                 + (h.components[G.source[p[i]]],)
                 + tuple(fm[g] for g in p[i + 1:]))
            r = rows[bd.index[q]]
            r[j] = r.get(j, ZERO) + sign
            sign = -sign
    cleaned = [{j: x for j, x in r.items() if x} for r in rows]
    return QMatrix(bd.total, bs.total, cleaned)


def alt_operator(hom, n):
    """Signed average over entry permutations of the homogeneous basis."""
    if hom.kind != "homogeneous":
        raise ChainError("signed averaging lives on the homogeneous complex")
    basis = hom.bases[n]
    G = hom.groupoid
    coeff = ONE
    for k in range(2, n + 2):
        coeff /= k
    comps = []
    for e in range(G.num_objects):
        rows = [dict() for _ in range(basis.counts[e])]
        for j in range(basis.counts[e]):
            p = basis.paths[basis.offsets[e] + j]
            for perm in permutations(range(n + 1)):
                sgn = _perm_sign(perm)
                q = tuple(p[i] for i in perm)
                k = basis.index[q] - basis.offsets[e]
                rows[k][j] = rows[k].get(j, ZERO) + sgn * coeff
        comps.append(QMatrix(basis.counts[e], basis.counts[e],
                             [{j: x for j, x in r.items() if x}
                              for r in rows]))
    return EquivariantMap(hom.modules[n], hom.modules[n], comps, audit=True)


def _perm_sign(perm):
    sign = ONE
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign
