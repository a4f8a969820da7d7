"""Bounded cochain complexes and their cohomology with exact seminorms.

Equivariant cochains are stored in a reduced parameterization: a cochain is
determined by its values on paths whose leading entry is an identity
morphism, so a degree-k slot is a pair (object, tail) with tail a composable
k-tuple of morphisms starting at that object.  The coboundary is the
classical inhomogeneous formula written in these coordinates; the cochain
norm is the sup over slots of the coefficient fiber norm.  Class seminorms
are exact LP optima with certified witnesses.
"""

from fractions import Fraction

from .chains import DEGREE_PATH_CAP
from .groupoids import (GroupoidMap, GroupoidPair, Homotopy, blow_up,
                        check_relative_homotopy, connected_components,
                        from_group_table, identity_map,
                        subgroupoid_from_morphisms)
from .linalg import (QMatrix, columns_matrix, image_basis, kernel_basis,
                     rank, rref, solve, solve_in_span)
from .lp import LPProblem, solve_lp
from .modules import homotopy_action, pullback, trivial_module
from .norms import SupBlockNorm

ZERO = Fraction(0)
ONE = Fraction(1)

LP_VAR_CAP = 5000


class CohomologyError(Exception):
    pass


def _tails(G, k):
    """Composable k-tuples of morphisms, in lexicographic order."""
    if k == 0:
        return [()]
    by_target = [sorted(G.morphisms_with_target(e))
                 for e in range(G.num_objects)]
    level = [(g,) for g in range(G.num_morphisms)]
    for _ in range(k - 1):
        nxt = []
        for p in level:
            for g in by_target[G.source[p[-1]]]:
                nxt.append(p + (g,))
        level = nxt
    return sorted(level)


class ReducedBasis:
    """Slots (object, tail) of one cochain degree, with coordinate offsets."""

    __slots__ = ("degree", "slots", "offsets", "total", "index")

    def __init__(self, degree, slots, fiber_dims):
        self.degree = degree
        self.slots = slots
        self.offsets = []
        off = 0
        for (e, _) in slots:
            self.offsets.append(off)
            off += fiber_dims[e]
        self.total = off
        self.index = {s: i for i, s in enumerate(slots)}

    def __repr__(self):
        return "ReducedBasis(degree=%d, slots=%d, dim=%d)" % (
            self.degree, len(self.slots), self.total)


class CochainComplexDesc:
    """Cochain spaces C^0..C^(degrees+1) with coboundaries and norms.

    deltas[k] maps degree k to degree k+1 for k = 0..degrees, so cohomology
    is computable through the stated top degree.  Derived complexes (kernel
    subcomplexes) reuse this container with bases set to None.
    """

    __slots__ = ("groupoid", "module", "degrees", "bases", "dims", "deltas",
                 "norms")

    def __init__(self, groupoid, module, degrees, bases, dims, deltas, norms):
        self.groupoid = groupoid
        self.module = module
        self.degrees = degrees
        self.bases = bases
        self.dims = dims
        self.deltas = deltas
        self.norms = norms

    def __repr__(self):
        return "CochainComplexDesc(degrees=%d, dims=%r)" % (self.degrees,
                                                            self.dims)


def _reduced_basis(G, v, k, path_cap):
    if k == 0:
        slots = [(e, ()) for e in range(G.num_objects)]
    else:
        slots = sorted((G.target[t[0]], t) for t in _tails(G, k))
    if len(slots) > path_cap:
        raise CohomologyError(
            "degree %d needs %d identity-led paths, cap is %d"
            % (k, len(slots), path_cap))
    return ReducedBasis(k, slots, v.fiber_dims)


def _coboundary(G, v, bk, bk1):
    """delta from degree k to k+1 in reduced coordinates."""
    rows = [dict() for _ in range(bk1.total)]
    for s1, (e, tail) in enumerate(bk1.slots):
        r0 = bk1.offsets[s1]
        dim_e = v.fiber_dims[e]
        # face 0 strips the leading identity; equivariance turns the new
        # leading entry into a coefficient action
        g1 = tail[0]
        act = v.actions[g1]
        c0 = bk.offsets[bk.index[(G.source[g1], tail[1:])]]
        for i in range(act.nrows):
            ri = rows[r0 + i]
            for j, x in act.rows[i].items():
                ri[c0 + j] = ri.get(c0 + j, ZERO) + x
        sign = ONE
        for i in range(1, len(tail)):
            sign = -sign
            merged = (tail[:i - 1] + (G.comp[tail[i - 1]][tail[i]],)
                      + tail[i + 1:])
            c0 = bk.offsets[bk.index[(e, merged)]]
            for d in range(dim_e):
                ri = rows[r0 + d]
                ri[c0 + d] = ri.get(c0 + d, ZERO) + sign
        sign = -sign
        c0 = bk.offsets[bk.index[(e, tail[:-1])]]
        for d in range(dim_e):
            ri = rows[r0 + d]
            ri[c0 + d] = ri.get(c0 + d, ZERO) + sign
    rows = [{j: x for j, x in r.items() if x} for r in rows]
    return QMatrix(bk1.total, bk.total, rows)


def cochain_complex(G, v, n, path_cap=DEGREE_PATH_CAP):
    """Bounded cochains on G with coefficients in v, degrees 0..n+1."""
    if v.base is not G:
        raise CohomologyError("coefficients are not a module over this groupoid")
    if n < 0:
        raise CohomologyError("negative top degree")
    bases = [_reduced_basis(G, v, k, path_cap) for k in range(n + 2)]
    dims = [b.total for b in bases]
    deltas = [_coboundary(G, v, bases[k], bases[k + 1]) for k in range(n + 1)]
    norms = [SupBlockNorm([v.fiber_norms[e] for (e, _) in b.slots])
             for b in bases]
    return CochainComplexDesc(G, v, n, bases, dims, deltas, norms)


def reduced_embedding(cx, bar, k):
    """Expansion of reduced cochains into fiberwise maps on basis paths.

    bar must be the inhomogeneous chain complex of the same groupoid.  The
    image coordinates are those of hom_module(bar.modules[k], cx.module):
    per object, per basis path, a coefficient-fiber column.  Used to audit
    the reduced parameterization against the generic invariant subspace.
    """
    G = cx.groupoid
    v = cx.module
    pb = bar.bases[k]
    offs = []
    off = 0
    for e in range(G.num_objects):
        offs.append(off)
        off += pb.counts[e] * v.fiber_dims[e]
    rows = [dict() for _ in range(off)]
    for e in range(G.num_objects):
        dim_e = v.fiber_dims[e]
        for loc in range(pb.counts[e]):
            p = pb.paths[pb.offsets[e] + loc]
            g0 = p[0]
            act = v.actions[g0]
            c0 = cx.bases[k].offsets[cx.bases[k].index[(G.source[g0], p[1:])]]
            r0 = offs[e] + loc * dim_e
            for i in range(act.nrows):
                for j, x in act.rows[i].items():
                    rows[r0 + i][c0 + j] = x
    return QMatrix(off, cx.dims[k], rows)


class CohomologyResult:
    """Dimensions, representative cocycles, and exact class seminorms."""

    __slots__ = ("degrees", "dims", "reps", "seminorms", "witnesses",
                 "images")

    def __init__(self, degrees, dims, reps, seminorms, witnesses, images):
        self.degrees = degrees
        self.dims = dims
        self.reps = reps
        self.seminorms = seminorms
        self.witnesses = witnesses
        self.images = images

    def __repr__(self):
        return "CohomologyResult(dims=%r)" % (self.dims,)


def class_seminorm(cx, vec, k, var_cap=LP_VAR_CAP):
    """Exact seminorm of a cocycle class, with an attaining witness.

    Returns (value, u) where u is a degree-(k-1) cochain with
    norm(vec - delta u) = value (u is None in degree 0).  The witness is
    re-checked before returning.
    """
    if k < 0 or k > cx.degrees:
        raise CohomologyError("degree %d outside the built range" % k)
    z = [Fraction(x) for x in vec]
    if len(z) != cx.dims[k]:
        raise CohomologyError("cochain has the wrong dimension")
    if any(cx.deltas[k].matvec(z)):
        raise CohomologyError("seminorm of a non-cocycle requested")
    if k == 0:
        return cx.norms[0].eval(z), None
    nprev = cx.dims[k - 1]
    if nprev > var_cap:
        raise CohomologyError(
            "seminorm needs %d lp variables, cap is %d" % (nprev, var_cap))
    d = cx.deltas[k - 1]
    lp = LPProblem(nprev + 1, [ZERO] * nprev + [ONE])
    for r in cx.norms[k].h_rows_sparse():
        rd = d.vecmat_dict(r)
        rz = sum((r[i] * z[i] for i in r), ZERO)
        # facet rows bound |r.(z - delta u)|, so both signs constrain t
        for sgn in (ONE, -ONE):
            coeffs = [ZERO] * (nprev + 1)
            for j, x in rd.items():
                coeffs[j] = -sgn * x
            coeffs[nprev] = -ONE
            lp.add(coeffs, "<=", -sgn * rz)
    tpos = [ZERO] * (nprev + 1)
    tpos[nprev] = -ONE
    lp.add(tpos, "<=", ZERO)
    res = solve_lp(lp)
    if res.status != "optimal":
        raise CohomologyError("seminorm lp ended %s" % res.status)
    u = res.x[:nprev]
    du = d.matvec(u)
    if cx.norms[k].eval([z[i] - du[i] for i in range(len(z))]) != res.value:
        raise CohomologyError("seminorm witness failed certification")
    return res.value, u


def cohomology(cx, var_cap=LP_VAR_CAP, seminorms=True):
    """Cohomology of the complex in degrees 0..cx.degrees.

    Representatives are the kernel-basis vectors that survive reduction
    mod the image, in order; each carries its exact seminorm and witness.
    """
    dims, reps, semis, wits, images = [], [], [], [], []
    for k in range(cx.degrees + 1):
        Z = kernel_basis(cx.deltas[k])
        B = image_basis(cx.deltas[k - 1]) if k else []
        mat = columns_matrix(B + Z, cx.dims[k])
        _, pivots = rref(mat)
        chosen = [Z[j - len(B)] for j in pivots if j >= len(B)]
        if len(pivots) != len(B) + len(chosen):
            raise CohomologyError("image escapes the kernel in degree %d" % k)
        dims.append(len(chosen))
        reps.append(chosen)
        images.append(B)
        if seminorms:
            vals, us = [], []
            for zvec in chosen:
                val, u = class_seminorm(cx, zvec, k, var_cap)
                vals.append(val)
                us.append(u)
            semis.append(vals)
            wits.append(us)
        else:
            semis.append(None)
            wits.append(None)
    return CohomologyResult(cx.degrees, dims, reps, semis, wits, images)


def class_coordinates(res, vec, k):
    """Coordinates of a cocycle's class in the chosen representative basis."""
    cols = res.reps[k] + res.images[k]
    sol = solve_in_span(cols, list(vec))
    if sol is None:
        raise CohomologyError("vector is not a cocycle of this complex")
    return sol[:len(res.reps[k])]


def cochain_restriction(f, cx_cod, cx_dom, k):
    """Matrix of precomposition with a functor f: X -> Y on degree-k cochains.

    cx_cod is the complex over Y = f.cod, cx_dom over X = f.dom; the
    coefficient module of cx_dom must be the pullback of cx_cod's along f
    (fiber dimensions are checked).  Slots map by applying f entrywise.
    """
    bx, by = cx_dom.bases[k], cx_cod.bases[k]
    rows = [dict() for _ in range(cx_dom.dims[k])]
    for s, (a, tail) in enumerate(bx.slots):
        e = f.obj_map[a]
        if cx_dom.module.fiber_dims[a] != cx_cod.module.fiber_dims[e]:
            raise CohomologyError("coefficient fibers differ along the functor")
        img = (e, tuple(f.mor_map[g] for g in tail))
        c0 = by.offsets[by.index[img]]
        r0 = bx.offsets[s]
        for d in range(cx_dom.module.fiber_dims[a]):
            rows[r0 + d][c0 + d] = ONE
    return QMatrix(cx_dom.dims[k], cx_cod.dims[k], rows)


def cochain_value_map(cx_from, cx_to, emap, k):
    """Apply an equivariant coefficient map slotwise to reduced cochains."""
    bf, bt = cx_from.bases[k], cx_to.bases[k]
    if bf.slots != bt.slots:
        raise CohomologyError("complexes do not share a slot basis")
    rows = [dict() for _ in range(cx_to.dims[k])]
    for s, (e, _) in enumerate(bf.slots):
        blk = emap.components[e]
        r0, c0 = bt.offsets[s], bf.offsets[s]
        for i in range(blk.nrows):
            for j, x in blk.rows[i].items():
                rows[r0 + i][c0 + j] = x
    return QMatrix(cx_to.dims[k], cx_from.dims[k], rows)


class RelativeComplexDesc:
    """Ambient and sub cochain complexes with the kernel of restriction.

    The restriction along an injective inclusion selects whole slots, so
    the kernel is the coordinate subspace of the unmatched slots; the
    kernel complex lives in those coordinates with the restricted
    coboundary and the restriction of the sup-over-slots norm.
    """

    __slots__ = ("pair", "ambient", "sub", "restrictions", "kept_slots",
                 "kept_coords", "kernel_complex")

    def __init__(self, pair, ambient, sub, restrictions, kept_slots,
                 kept_coords, kernel_complex):
        self.pair = pair
        self.ambient = ambient
        self.sub = sub
        self.restrictions = restrictions
        self.kept_slots = kept_slots
        self.kept_coords = kept_coords
        self.kernel_complex = kernel_complex

    def embed(self, x, k):
        """Kernel coordinates to ambient coordinates."""
        out = [ZERO] * self.ambient.dims[k]
        for pos, i in enumerate(self.kept_coords[k]):
            out[i] = Fraction(x[pos])
        return out

    def project(self, w, k):
        """Ambient vector known to lie in the kernel, to kernel coordinates."""
        keep = set(self.kept_coords[k])
        for i, x in enumerate(w):
            if x and i not in keep:
                raise CohomologyError("vector does not lie in the kernel")
        return [Fraction(w[i]) for i in self.kept_coords[k]]

    def __repr__(self):
        return "RelativeComplexDesc(dims=%r)" % (self.kernel_complex.dims,)


def relative_complex(pair, v, n, path_cap=DEGREE_PATH_CAP):
    """Restriction to the subgroupoid and its kernel subcomplex."""
    amb = cochain_complex(pair.ambient, v, n, path_cap)
    vs = pullback(pair.inclusion, v)
    sub = cochain_complex(pair.sub, vs, n, path_cap)
    restrictions = [cochain_restriction(pair.inclusion, amb, sub, k)
                    for k in range(n + 2)]
    for k in range(n + 1):
        if (sub.deltas[k] * restrictions[k]
                != restrictions[k + 1] * amb.deltas[k]):
            raise CohomologyError("restriction is not a cochain map")
    kept_slots, kept_coords, dims, norms = [], [], [], []
    for k in range(n + 2):
        if rank(restrictions[k]) != sub.dims[k]:
            raise CohomologyError("restriction not surjective in degree %d" % k)
        f = pair.inclusion
        hit = set()
        for (a, tail) in sub.bases[k].slots:
            hit.add((f.obj_map[a], tuple(f.mor_map[g] for g in tail)))
        keep = [s for s, slot in enumerate(amb.bases[k].slots)
                if slot not in hit]
        coords = []
        for s in keep:
            off = amb.bases[k].offsets[s]
            coords.extend(range(off, off + v.fiber_dims[amb.bases[k].slots[s][0]]))
        kept_slots.append(keep)
        kept_coords.append(coords)
        dims.append(len(coords))
        norms.append(SupBlockNorm([v.fiber_norms[amb.bases[k].slots[s][0]]
                                   for s in keep]))
    deltas = [amb.deltas[k].submatrix(kept_coords[k + 1], kept_coords[k])
              for k in range(n + 1)]
    kernel = CochainComplexDesc(pair.ambient, v, n, None, dims, deltas, norms)
    return RelativeComplexDesc(pair, amb, sub, restrictions, kept_slots,
                               kept_coords, kernel)


def relative_cohomology(rel, var_cap=LP_VAR_CAP):
    """Cohomology of the kernel subcomplex with induced seminorms."""
    return cohomology(rel.kernel_complex, var_cap)


def _exact_at(incoming, outgoing):
    """Exactness of a two-map window: zero composite and matching ranks."""
    comp_zero = (outgoing * incoming).is_zero()
    rin = rank(incoming)
    dker = outgoing.ncols - rank(outgoing)
    return comp_zero and rin == dker, rin, dker


class LESResult:
    """The long exact sequence of a pair, realized on representatives."""

    __slots__ = ("pair", "degrees", "rel", "h_rel", "h_ambient", "h_sub",
                 "maps_j", "maps_i", "maps_delta", "slots", "delta_constants",
                 "ok")

    def __init__(self, pair, degrees, rel, h_rel, h_ambient, h_sub, maps_j,
                 maps_i, maps_delta, slots, delta_constants):
        self.pair = pair
        self.degrees = degrees
        self.rel = rel
        self.h_rel = h_rel
        self.h_ambient = h_ambient
        self.h_sub = h_sub
        self.maps_j = maps_j
        self.maps_i = maps_i
        self.maps_delta = maps_delta
        self.slots = slots
        self.delta_constants = delta_constants
        self.ok = all(s["exact"] for s in slots)

    def __repr__(self):
        return "LESResult(degrees=%d, ok=%r)" % (self.degrees, self.ok)


def long_exact_sequence(pair, v, n, path_cap=DEGREE_PATH_CAP,
                        var_cap=LP_VAR_CAP):
    """H^k(rel) -> H^k(G) -> H^k(A) -> H^(k+1)(rel) with exactness checks.

    Builds one degree of headroom so exactness is verifiable at every slot
    from H^0(rel) through H^(n+1)(G); the connecting map is the snake
    construction: section of the restriction, ambient coboundary, kernel
    coordinates.
    """
    rel = relative_complex(pair, v, n + 1, path_cap)
    kc = rel.kernel_complex
    h_rel = cohomology(kc, var_cap)
    h_amb = cohomology(rel.ambient, var_cap)
    h_sub = cohomology(rel.sub, var_cap)
    maps_j, maps_i, maps_delta = [], [], []
    delta_vecs = []
    for k in range(n + 2):
        cols = [class_coordinates(h_amb, rel.embed(r, k), k)
                for r in h_rel.reps[k]]
        maps_j.append(columns_matrix(cols, h_amb.dims[k]))
        cols = [class_coordinates(h_sub, rel.restrictions[k].matvec(r), k)
                for r in h_amb.reps[k]]
        maps_i.append(columns_matrix(cols, h_sub.dims[k]))
    for k in range(n + 1):
        cols, vecs = [], []
        for a in h_sub.reps[k]:
            u = solve(rel.restrictions[k], a)
            if u is None:
                raise CohomologyError("restriction section failed")
            x = rel.project(rel.ambient.deltas[k].matvec(u), k + 1)
            vecs.append(x)
            cols.append(class_coordinates(h_rel, x, k + 1))
        maps_delta.append(columns_matrix(cols, h_rel.dims[k + 1]))
        delta_vecs.append(vecs)
    slots = []
    ok0 = rank(maps_j[0]) == h_rel.dims[0]
    slots.append({"space": "rel", "degree": 0, "exact": ok0,
                  "image_rank": 0, "kernel_dim": h_rel.dims[0] - rank(maps_j[0])})
    for k in range(1, n + 2):
        ex, rin, dker = _exact_at(maps_delta[k - 1], maps_j[k])
        slots.append({"space": "rel", "degree": k, "exact": ex,
                      "image_rank": rin, "kernel_dim": dker})
    for k in range(n + 2):
        ex, rin, dker = _exact_at(maps_j[k], maps_i[k])
        slots.append({"space": "ambient", "degree": k, "exact": ex,
                      "image_rank": rin, "kernel_dim": dker})
    for k in range(n + 1):
        ex, rin, dker = _exact_at(maps_i[k], maps_delta[k])
        slots.append({"space": "sub", "degree": k, "exact": ex,
                      "image_rank": rin, "kernel_dim": dker})
    constants = []
    for k in range(n + 1):
        ratios = []
        for idx, x in enumerate(delta_vecs[k]):
            src = h_sub.seminorms[k][idx]
            tgt, _ = class_seminorm(kc, x, k + 1, var_cap)
            ratios.append(tgt / src)
        constants.append(max(ratios) if ratios else None)
    return LESResult(pair, n, rel, h_rel, h_amb, h_sub, maps_j, maps_i,
                     maps_delta, slots, constants)


class FamilyResult:
    """Relative cohomology of a group against a family of subgroups."""

    __slots__ = ("group", "module", "blown", "proj", "inclusions", "pair",
                 "les", "relative", "base_cohomology", "vertex_maps",
                 "vertex_maps_agree")

    def __init__(self, group, module, blown, proj, inclusions, pair, les,
                 base_cohomology, vertex_maps):
        self.group = group
        self.module = module
        self.blown = blown
        self.proj = proj
        self.inclusions = inclusions
        self.pair = pair
        self.les = les
        self.relative = les.h_rel
        self.base_cohomology = base_cohomology
        self.vertex_maps = vertex_maps
        self.vertex_maps_agree = all(
            all(m == mats[0] for m in mats) for mats in vertex_maps)

    def __repr__(self):
        return "FamilyResult(relative dims=%r)" % (self.relative.dims,)


def family_cohomology(group, subgroups, n, v=None,
                      path_cap=DEGREE_PATH_CAP, var_cap=LP_VAR_CAP):
    """Cohomology of a group relative to a family of subgroups.

    group is a multiplication table or a one-object groupoid; each
    subgroup is a set of its morphisms, verified closed under the
    operations.  The family is realized as a pair: the blow-up on one
    object per subgroup, with the i-th subgroup embedded at vertex i.
    Coefficients default to the trivial module and are pulled back along
    the blow-up projection.
    """
    from .groupoids import FiniteGroupoid
    if isinstance(group, FiniteGroupoid):
        G0 = group
        if G0.num_objects != 1:
            raise CohomologyError("the family base must be a group")
    else:
        G0 = from_group_table(group)
    if not subgroups:
        raise CohomologyError("the family needs at least one subgroup")
    ident = G0.identity[0]
    for A in subgroups:
        s = set(A)
        if not s or not s.issubset(range(G0.num_morphisms)):
            raise CohomologyError("subgroup elements outside the group")
        if ident not in s:
            raise CohomologyError("subgroup misses the identity")
        for a in s:
            if G0.inv[a] not in s:
                raise CohomologyError("subgroup not closed under inverse")
            for b in s:
                if G0.comp[a][b] not in s:
                    raise CohomologyError("subgroup not closed under product")
    if v is None:
        v = trivial_module(G0)
    elif v.base is not G0:
        raise CohomologyError("coefficients are not over the family base")
    blown, proj = blow_up(G0, len(subgroups))
    mor_id = {lab: m for m, lab in enumerate(blown.mor_labels)}
    sub_mors = sorted(mor_id[(a, i, i)]
                      for i, A in enumerate(subgroups) for a in set(A))
    sub, incl = subgroupoid_from_morphisms(blown, range(len(subgroups)),
                                           sub_mors)
    pair = GroupoidPair(blown, sub, incl)
    vI = pullback(proj, v)
    les = long_exact_sequence(pair, vI, n, path_cap, var_cap)
    inclusions = [GroupoidMap(G0, blown, [i],
                              [mor_id[(g, i, i)]
                               for g in range(G0.num_morphisms)])
                  for i in range(len(subgroups))]
    cx0 = cochain_complex(G0, v, n + 1, path_cap)
    h0 = cohomology(cx0, var_cap)
    vertex_maps = []
    for k in range(n + 2):
        mats = []
        for li in inclusions:
            rmat = cochain_restriction(li, les.rel.ambient, cx0, k)
            cols = [class_coordinates(h0, rmat.matvec(rep), k)
                    for rep in les.h_ambient.reps[k]]
            mats.append(columns_matrix(cols, h0.dims[k]))
        vertex_maps.append(mats)
    return FamilyResult(G0, v, blown, proj, inclusions, pair, les, h0,
                        vertex_maps)


class AdditivityResult:
    """Whole-groupoid cohomology against the product over components."""

    __slots__ = ("degrees", "dims", "component_dims", "seminorm_rows", "ok")

    def __init__(self, degrees, dims, component_dims, seminorm_rows):
        self.degrees = degrees
        self.dims = dims
        self.component_dims = component_dims
        self.seminorm_rows = seminorm_rows
        ok = all(dims[k] == sum(component_dims[k])
                 for k in range(degrees + 1))
        for per_degree in seminorm_rows:
            for (whole, parts) in per_degree:
                if whole != max(parts, default=ZERO):
                    ok = False
        self.ok = ok

    def __repr__(self):
        return "AdditivityResult(ok=%r, dims=%r)" % (self.ok, self.dims)


def additivity_check(G, v, n, path_cap=DEGREE_PATH_CAP, var_cap=LP_VAR_CAP):
    """Compare cohomology with the normed product over connected components.

    Dimensions must add up and each basis class seminorm must equal the
    max of its component restrictions' seminorms, exactly.
    """
    cx = cochain_complex(G, v, n, path_cap)
    h = cohomology(cx, var_cap)
    parts = []
    for (comp, incl) in connected_components(G):
        vc = pullback(incl, v)
        cxc = cochain_complex(comp, vc, n, path_cap)
        hc = cohomology(cxc, var_cap)
        rmats = [cochain_restriction(incl, cx, cxc, k) for k in range(n + 1)]
        parts.append((cxc, hc, rmats))
    dims = list(h.dims[:n + 1])
    component_dims = [[hc.dims[k] for (_, hc, _) in parts]
                      for k in range(n + 1)]
    seminorm_rows = []
    for k in range(n + 1):
        rows = []
        for j, rep in enumerate(h.reps[k]):
            vals = []
            for (cxc, _, rmats) in parts:
                val, _ = class_seminorm(cxc, rmats[k].matvec(rep), k, var_cap)
                vals.append(val)
            rows.append((h.seminorms[k][j], vals))
        seminorm_rows.append(rows)
    return AdditivityResult(n, dims, component_dims, seminorm_rows)


class EquivalenceResult:
    """Isometric-isomorphism report for the map induced by an equivalence."""

    __slots__ = ("degrees", "dims_cod", "dims_dom", "induced", "seminorm_pairs",
                 "ok")

    def __init__(self, degrees, dims_cod, dims_dom, induced, seminorm_pairs):
        self.degrees = degrees
        self.dims_cod = dims_cod
        self.dims_dom = dims_dom
        self.induced = induced
        self.seminorm_pairs = seminorm_pairs
        ok = True
        for k in range(degrees + 1):
            if dims_cod[k] != dims_dom[k]:
                ok = False
            elif rank(induced[k]) != dims_cod[k]:
                ok = False
            for (a, b) in seminorm_pairs[k]:
                if a != b:
                    ok = False
        self.ok = ok

    def __repr__(self):
        return "EquivalenceResult(ok=%r)" % (self.ok,)


def _bijective_inverse(f):
    inv_obj = [0] * f.cod.num_objects
    for a, e in enumerate(f.obj_map):
        inv_obj[e] = a
    inv_mor = [0] * f.cod.num_morphisms
    for m, g in enumerate(f.mor_map):
        inv_mor[g] = m
    return GroupoidMap(f.cod, f.dom, inv_obj, inv_mor)


def equivalence_invariance_check(f, v, n, witness=None,
                                 path_cap=DEGREE_PATH_CAP,
                                 var_cap=LP_VAR_CAP):
    """Verify that an equivalence induces an isometric isomorphism.

    f: X -> Y with coefficients v over Y.  witness is (quasi_inverse,
    homotopy on X, homotopy on Y); for a bijective functor the witness is
    derived.  The check itself is by ranks and class seminorms on both
    sides, degree by degree.
    """
    X, Y = f.dom, f.cod
    if witness is None:
        if not (f.is_injective() and f.is_surjective()):
            raise CohomologyError(
                "equivalence witness required for a non-invertible functor")
        q = _bijective_inverse(f)
        witness = (q,
                   Homotopy(f.then(q), identity_map(X),
                            [X.identity[e] for e in range(X.num_objects)]),
                   Homotopy(q.then(f), identity_map(Y),
                            [Y.identity[e] for e in range(Y.num_objects)]))
    q, h_dom, h_cod = witness
    if q.dom is not Y or q.cod is not X:
        raise CohomologyError("quasi-inverse runs the wrong way")
    comp_x, comp_y = f.then(q), q.then(f)
    idx, idy = identity_map(X), identity_map(Y)
    ends_x = (h_dom.from_map, h_dom.to_map)
    ends_y = (h_cod.from_map, h_cod.to_map)
    if not ((ends_x[0] == comp_x and ends_x[1] == idx)
            or (ends_x[0] == idx and ends_x[1] == comp_x)):
        raise CohomologyError("domain homotopy does not witness f")
    if not ((ends_y[0] == comp_y and ends_y[1] == idy)
            or (ends_y[0] == idy and ends_y[1] == comp_y)):
        raise CohomologyError("codomain homotopy does not witness f")
    if v.base is not Y:
        raise CohomologyError("coefficients must live over the codomain")
    vX = pullback(f, v)
    cxY = cochain_complex(Y, v, n, path_cap)
    cxX = cochain_complex(X, vX, n, path_cap)
    hY = cohomology(cxY, var_cap)
    hX = cohomology(cxX, var_cap)
    induced, pairs = [], []
    for k in range(n + 1):
        mat = cochain_restriction(f, cxY, cxX, k)
        cols = [class_coordinates(hX, mat.matvec(rep), k)
                for rep in hY.reps[k]]
        induced.append(columns_matrix(cols, hX.dims[k]))
        deg_pairs = []
        for j, rep in enumerate(hY.reps[k]):
            val, _ = class_seminorm(cxX, mat.matvec(rep), k, var_cap)
            deg_pairs.append((hY.seminorms[k][j], val))
        pairs.append(deg_pairs)
    return EquivalenceResult(n, hY.dims[:n + 1], hX.dims[:n + 1], induced,
                             pairs)


class HomotopyInvarianceResult:
    """Per-degree agreement of two homotopic maps on relative cohomology."""

    __slots__ = ("degrees", "agreements", "twist_norm", "ok")

    def __init__(self, degrees, agreements, twist_norm):
        self.degrees = degrees
        self.agreements = agreements
        self.twist_norm = twist_norm
        self.ok = all(all(row) for row in agreements)

    def __repr__(self):
        return "HomotopyInvarianceResult(ok=%r)" % (self.ok,)


def homotopy_invariance_check(pair_x, pair_y, h, v, n,
                              path_cap=DEGREE_PATH_CAP, var_cap=LP_VAR_CAP):
    """Homotopic maps of pairs agree on relative cohomology, up to twist.

    h is a homotopy from f0 = h.from_map to f1 = h.to_map, both maps of
    pairs (pair_x to pair_y) with components inside the sub level.  With
    T the slotwise coefficient twist by h, the check is that T(f0-pullback)
    and f1-pullback of every relative class agree in relative cohomology.
    """
    f0, f1 = h.from_map, h.to_map
    if f0.dom is not pair_x.ambient or f0.cod is not pair_y.ambient:
        raise CohomologyError("homotopy does not run between the pairs")
    if not check_relative_homotopy(h, pair_x, pair_y):
        raise CohomologyError("homotopy leaves the sub level")
    for m in range(pair_x.sub.num_morphisms):
        im = pair_x.inclusion.mor_map[m]
        if (f0.mor_map[im] not in pair_y.mor_image
                or f1.mor_map[im] not in pair_y.mor_image):
            raise CohomologyError("map does not respect the pairs")
    if v.base is not pair_y.ambient:
        raise CohomologyError("coefficients must live over the codomain pair")
    v0, v1 = pullback(f0, v), pullback(f1, v)
    tw = homotopy_action(h, v)
    relY = relative_complex(pair_y, v, n, path_cap)
    relX0 = relative_complex(pair_x, v0, n, path_cap)
    relX1 = relative_complex(pair_x, v1, n, path_cap)
    hY = cohomology(relY.kernel_complex, var_cap, seminorms=False)
    agreements = []
    for k in range(n + 1):
        f0mat = cochain_restriction(f0, relY.ambient, relX0.ambient, k)
        f1mat = cochain_restriction(f1, relY.ambient, relX1.ambient, k)
        tmat = cochain_value_map(relX0.ambient, relX1.ambient, tw, k)
        imgs = (image_basis(relX1.kernel_complex.deltas[k - 1])
                if k else [])
        row = []
        for z in hY.reps[k]:
            zy = relY.embed(z, k)
            a0 = tmat.matvec(f0mat.matvec(zy))
            a1 = f1mat.matvec(zy)
            diff = relX1.project([a1[i] - a0[i] for i in range(len(a1))], k)
            if k == 0:
                row.append(not any(diff))
            else:
                row.append(solve_in_span(imgs, diff) is not None)
        agreements.append(row)
    return HomotopyInvarianceResult(n, agreements, tw.norm_bound)
