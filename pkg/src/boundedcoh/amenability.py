"""Means on finite groupoids and the averaging arguments they power.

Every finite groupoid admits a canonical mean: average a bounded function
over each target fiber.  Extending the mean coordinatewise to dual
coefficients and applying it slot by slot over a subgroupoid produces a
norm one cochain self-map of the homogeneous function complex.  Its
alternation vanishes after restricting to the subgroupoid, which is the
exact matrix identity behind two facts checked here: bounded cohomology
with dual coefficients vanishes in positive degrees, and the relative
groups of a pair map isometrically onto the ambient ones from degree two
up.
"""

from fractions import Fraction

from .chains import DEGREE_PATH_CAP, alt_operator, homogeneous_complex
from .cohomology import (LP_VAR_CAP, class_coordinates, class_seminorm,
                         cochain_complex, cohomology, relative_cohomology,
                         relative_complex)
from .homalg import _dual_block, homogeneous_resolution
from .linalg import QMatrix, columns_matrix, rank
from .modules import (EquivariantMap, dual_module, linf_module, pullback,
                      sigma_module, trivial_module)

ZERO = Fraction(0)
ONE = Fraction(1)

# fiber dimension guard for the function modules built below
MEAN_DIM_CAP = DEGREE_PATH_CAP


class AmenabilityError(Exception):
    pass


class Mean:
    """A norm one equivariant retraction onto the coefficients.

    components[e] sends a function on the target fiber at e (coordinates
    of the sup-function module) to a coefficient vector; the three
    defining identities are re-verified exactly on construction:
    equivariance, operator norm one, and splitting the constants
    inclusion.
    """

    __slots__ = ("groupoid", "module", "linf", "constants", "map")

    def __init__(self, module, linf, constants, components, audit=True):
        self.groupoid = module.base
        self.module = module
        self.linf = linf
        self.constants = constants
        self.map = EquivariantMap(linf, module, components, audit=audit)
        if audit:
            self.check()

    @property
    def components(self):
        return self.map.components

    def check(self):
        for e in range(self.groupoid.num_objects):
            d = self.module.fiber_dims[e]
            if self.components[e] * self.constants.components[e] \
                    != QMatrix.identity(d):
                raise AmenabilityError(
                    "mean does not split the constants at object %d" % e)
        if any(self.module.fiber_dims) and self.map.norm_bound != ONE:
            raise AmenabilityError("mean norm is %s, not one"
                                   % (self.map.norm_bound,))

    def __repr__(self):
        return "Mean(objects=%d, dims=%r)" % (self.groupoid.num_objects,
                                              self.module.fiber_dims)


def uniform_mean(g):
    """Average over each target fiber, with scalar coefficients."""
    r = trivial_module(g)
    linf, c = linf_module(g, r)
    _check_dims(linf.fiber_dims)
    comps = []
    for e in range(g.num_objects):
        fib = g.morphisms_with_target(e)
        w = ONE / len(fib)
        comps.append(QMatrix(1, len(fib), [{k: w for k in range(len(fib))}]))
    return Mean(r, linf, c, comps)


def _check_dims(dims):
    for d in dims:
        if d > MEAN_DIM_CAP:
            raise AmenabilityError(
                "function fiber needs %d coordinates, cap is %d"
                % (d, MEAN_DIM_CAP))


def _scalar_extension(m, w):
    """Apply a scalar mean coordinatewise to functions valued in w."""
    g = w.base
    if m.groupoid is not g:
        raise AmenabilityError("mean lives over a different groupoid")
    if m.module.fiber_dims != [1] * g.num_objects:
        raise AmenabilityError("coordinatewise extension needs a scalar mean")
    linf, c = linf_module(g, w)
    _check_dims(linf.fiber_dims)
    comps = []
    for e in range(g.num_objects):
        dw = w.fiber_dims[e]
        weights = m.components[e].rows[0]
        rows = [dict() for _ in range(dw)]
        for k, x in weights.items():
            for i in range(dw):
                rows[i][k * dw + i] = x
        comps.append(QMatrix(dw, linf.fiber_dims[e], rows))
    return Mean(w, linf, c, comps)


def dual_coefficient_mean(m, v):
    """Push a scalar mean to dual coefficients, value by value.

    The resulting mean sends phi to the functional w -> m(g -> phi(g)(w)),
    which in coordinates is the scalar mean applied to each dual
    coordinate separately.
    """
    return _scalar_extension(m, dual_module(v))


class AveragingOperator:
    """Slotwise averaging over a subgroupoid on the homogeneous complex.

    phis[k][i] averages the i-th entry of a degree-k cochain whenever
    that entry starts at a subgroupoid object; maps[k] is the composite
    over all slots.  The maps are audited as an equivariant cochain
    self-map of norm at most one extending the identity, and every slot
    map is checked against the face maps case by case.
    """

    __slots__ = ("pair", "module", "degrees", "resolution", "phis", "maps")

    def __init__(self, pair, module, degrees, resolution, phis, maps):
        self.pair = pair
        self.module = module
        self.degrees = degrees
        self.resolution = resolution
        self.phis = phis
        self.maps = maps

    def __repr__(self):
        return "AveragingOperator(degrees=%d)" % self.degrees


def _slot_weights(pair, mean, vd, g, sub_at):
    """dv x dv blocks, per subgroupoid morphism, averaging one slot entry."""
    G = pair.ambient
    A = pair.sub
    a0 = sub_at[G.source[g]]
    dwa = mean.module.fiber_dims[a0]
    mcomp = mean.components[a0]
    rho = vd.actions[g]
    rho_inv = vd.actions[G.inv[g]]
    out = {}
    for pos, h in enumerate(A.morphisms_with_target(a0)):
        c0 = pos * dwa
        cols = [{c - c0: x for c, x in mcomp.rows[i].items()
                 if c0 <= c < c0 + dwa} for i in range(dwa)]
        out[h] = rho * QMatrix(dwa, dwa, cols) * rho_inv
    return out


def _phi_components(pair, mean, vd, res, k, slot, weights, sub_at):
    G = pair.ambient
    A = pair.sub
    mmap = pair.inclusion.mor_map
    basis = res.chains.bases[k]
    comps = []
    for e in range(G.num_objects):
        dw = vd.fiber_dims[e]
        n_e = basis.counts[e]
        rows = [dict() for _ in range(n_e * dw)]
        for ploc in range(n_e):
            p = basis.paths[basis.offsets[e] + ploc]
            g = p[slot]
            if G.source[g] in sub_at:
                if g not in weights:
                    weights[g] = _slot_weights(pair, mean, vd, g, sub_at)
                a0 = sub_at[G.source[g]]
                for h in A.morphisms_with_target(a0):
                    q = p[:slot] + (G.comp[g][mmap[h]],) + p[slot + 1:]
                    qloc = basis.index[q] - basis.offsets[e]
                    blk = weights[g][h]
                    for i in range(dw):
                        r = rows[ploc * dw + i]
                        for j, x in blk.rows[i].items():
                            c = qloc * dw + j
                            y = r.get(c, ZERO) + x
                            if y:
                                r[c] = y
                            elif c in r:
                                del r[c]
            else:
                for i in range(dw):
                    rows[ploc * dw + i][ploc * dw + i] = ONE
        comps.append(QMatrix(n_e * dw, n_e * dw, rows))
    return comps


def _face_duals(res, k):
    """Duals of the single-entry deletions, one per face, per object."""
    hom = res.chains
    G = hom.groupoid
    bk, bk1 = hom.bases[k], hom.bases[k - 1]
    dv = res.module.fiber_dims
    out = []
    for i in range(k + 1):
        comps = []
        for e in range(G.num_objects):
            rows = [dict() for _ in range(bk1.counts[e])]
            for ploc in range(bk.counts[e]):
                p = bk.paths[bk.offsets[e] + ploc]
                q = p[:i] + p[i + 1:]
                rows[bk1.index[q] - bk1.offsets[e]][ploc] = ONE
            comps.append(_dual_block(
                QMatrix(bk1.counts[e], bk.counts[e], rows), dv[e]))
        out.append(comps)
    return out


def averaging_operator(pair, mean, v_dual, n, path_cap=DEGREE_PATH_CAP):
    """The composite of all slot averages, fully audited.

    mean must live over the subgroupoid with coefficients matching the
    restriction of v_dual along the inclusion.
    """
    G = pair.ambient
    A = pair.sub
    if v_dual.base is not G:
        raise AmenabilityError("coefficients live over a different groupoid")
    if mean.groupoid is not A:
        raise AmenabilityError("mean must live over the subgroupoid")
    omap = pair.inclusion.obj_map
    if mean.module.fiber_dims != [v_dual.fiber_dims[omap[a]]
                                  for a in range(A.num_objects)]:
        raise AmenabilityError("mean coefficients do not restrict v_dual")
    for m in range(A.num_morphisms):
        if mean.module.actions[m] != v_dual.actions[pair.inclusion.mor_map[m]]:
            raise AmenabilityError("mean coefficients do not restrict v_dual")
    if n < 0:
        raise AmenabilityError("negative degree")
    res = homogeneous_resolution(G, v_dual, max(n, 1), path_cap)
    sub_at = {omap[a]: a for a in range(A.num_objects)}
    weights = {}
    phis, maps = [], []
    for k in range(n + 1):
        row = [EquivariantMap(res.modules[k], res.modules[k],
                              _phi_components(pair, mean, v_dual, res, k, i,
                                              weights, sub_at))
               for i in range(k + 1)]
        phis.append(row)
        comp = row[k]
        for i in range(k - 1, -1, -1):
            comp = comp.then(row[i])
        maps.append(comp)
    _audit_averaging(pair, res, phis, maps, n)
    return AveragingOperator(pair, v_dual, n, res, phis, maps)


def _audit_averaging(pair, res, phis, maps, n):
    G = pair.ambient
    for k in range(n + 1):
        if maps[k].norm_bound > ONE:
            raise AmenabilityError("averaging norm exceeds one in degree %d"
                                   % k)
    for e in range(G.num_objects):
        aug = res.augmentation.components[e]
        if maps[0].components[e] * aug != aug:
            raise AmenabilityError("averaging does not extend the identity")
        for k in range(1, n + 1):
            d = res.deltas[k - 1].components[e]
            if maps[k].components[e] * d != d * maps[k - 1].components[e]:
                raise AmenabilityError(
                    "averaging is not a cochain map in degree %d" % k)
    for k in range(1, n + 1):
        faces = _face_duals(res, k)
        for e in range(G.num_objects):
            total = None
            sgn = ONE
            for i in range(k + 1):
                term = faces[i][e].scale(sgn)
                total = term if total is None else total + term
                sgn = -sgn
            if total != res.deltas[k - 1].components[e]:
                raise AmenabilityError("face maps do not sum to the "
                                       "coboundary in degree %d" % k)
            for j in range(k + 1):
                for i in range(k + 1):
                    lhs = phis[k][j].components[e] * faces[i][e]
                    if i == j:
                        rhs = faces[i][e]
                    elif i > j:
                        rhs = faces[i][e] * phis[k - 1][j].components[e]
                    else:
                        rhs = faces[i][e] * phis[k - 1][j - 1].components[e]
                    if lhs != rhs:
                        raise AmenabilityError(
                            "slot average %d and face %d disagree in "
                            "degree %d" % (j, i, k))


class FactorizationResult:
    """Whether the alternated average dies under restriction.

    zero: the composite restriction . alternation . average is the zero
    matrix in the requested degree (vacuously for an empty subgroupoid).
    composite_norm is the exact norm of alternation . average, and
    extends_identity records that the degree zero average still splits
    the augmentation.
    """

    __slots__ = ("degree", "zero", "vacuous", "composite_norm",
                 "extends_identity")

    def __init__(self, degree, zero, vacuous, composite_norm,
                 extends_identity):
        self.degree = degree
        self.zero = zero
        self.vacuous = vacuous
        self.composite_norm = composite_norm
        self.extends_identity = extends_identity

    @property
    def ok(self):
        return (self.zero and self.extends_identity
                and self.composite_norm <= ONE)

    def __repr__(self):
        return "FactorizationResult(degree=%d, zero=%r)" % (self.degree,
                                                            self.zero)


def factorization_check(pair, v_dual, n, path_cap=DEGREE_PATH_CAP):
    """Restriction of the alternated average to the subgroupoid is zero.

    This is the exact matrix form of the statement that averaging then
    antisymmetrizing lands in the relative kernel complex in degrees at
    least one.
    """
    if n < 1:
        raise AmenabilityError("factorization starts in degree one")
    mean = _scalar_extension(uniform_mean(pair.sub),
                             pullback(pair.inclusion, v_dual))
    op = averaging_operator(pair, mean, v_dual, n, path_cap)
    res = op.resolution
    G = pair.ambient
    dv = v_dual.fiber_dims
    alt = alt_operator(res.chains, n)
    alt_dual = EquivariantMap(
        res.modules[n], res.modules[n],
        [_dual_block(alt.components[e], dv[e]) for e in range(G.num_objects)])
    composite = op.maps[n].then(alt_dual)
    extends = all(op.maps[0].components[e] * res.augmentation.components[e]
                  == res.augmentation.components[e]
                  for e in range(G.num_objects))
    if pair.sub.num_objects == 0:
        return FactorizationResult(n, True, True, composite.norm_bound,
                                   extends)
    sub_hom = homogeneous_complex(pair.sub, n, path_cap)
    omap = pair.inclusion.obj_map
    mmap = pair.inclusion.mor_map
    bs = sub_hom.bases[n]
    bg = res.chains.bases[n]
    zero = True
    for a in range(pair.sub.num_objects):
        e = omap[a]
        dw = dv[e]
        rows = [dict() for _ in range(bs.counts[a] * dw)]
        for qloc in range(bs.counts[a]):
            q = bs.paths[bs.offsets[a] + qloc]
            ploc = bg.index[tuple(mmap[m] for m in q)] - bg.offsets[e]
            for j in range(dw):
                rows[qloc * dw + j][ploc * dw + j] = ONE
        restr = QMatrix(bs.counts[a] * dw, bg.counts[e] * dw, rows)
        if not (restr * composite.components[e]).is_zero():
            zero = False
    return FactorizationResult(n, zero, False, composite.norm_bound, extends)


class VanishingResult:
    """Dimensions of bounded cohomology with dual coefficients."""

    __slots__ = ("degrees", "dims", "dim0", "ok")

    def __init__(self, degrees, dims, dim0, ok):
        self.degrees = degrees
        self.dims = dims
        self.dim0 = dim0
        self.ok = ok

    def __repr__(self):
        return "VanishingResult(dims=%r, ok=%r)" % (self.dims, self.ok)


def amenable_vanishing_check(g, v, n, path_cap=DEGREE_PATH_CAP):
    """Cohomology with dual coefficients vanishes in degrees 1..n.

    Degree zero is reported but excluded from the verdict: it is the
    space of invariant functionals and is generally nonzero.
    """
    vd = dual_module(v)
    cx = cochain_complex(g, vd, n, path_cap)
    h = cohomology(cx, seminorms=False)
    dims = [h.dims[k] for k in range(1, n + 1)]
    return VanishingResult(list(range(1, n + 1)), dims, h.dims[0],
                           all(d == 0 for d in dims))


class MappingTheoremResult:
    """Comparison of relative and ambient classes with dual coefficients.

    Per degree 1..n: both dimensions, the rank of the induced map, and
    the seminorm of each relative basis class next to the seminorm of
    its image.  The verdict only covers degrees two and up; degree one
    is reported for inspection but carries no claim.
    """

    __slots__ = ("degrees", "dims_relative", "dims_ambient", "ranks",
                 "seminorms", "isometric")

    def __init__(self, degrees, dims_relative, dims_ambient, ranks,
                 seminorms, isometric):
        self.degrees = degrees
        self.dims_relative = dims_relative
        self.dims_ambient = dims_ambient
        self.ranks = ranks
        self.seminorms = seminorms
        self.isometric = isometric

    @property
    def ok(self):
        for pos, k in enumerate(self.degrees):
            if k < 2:
                continue
            if not self.isometric[pos]:
                return False
            if self.dims_relative[pos] != self.dims_ambient[pos]:
                return False
            if self.ranks[pos] != self.dims_relative[pos]:
                return False
        return True

    def __repr__(self):
        return "MappingTheoremResult(dims=%r, ok=%r)" % (self.dims_relative,
                                                         self.ok)


def algebraic_mapping_theorem_check(pair, v, n, path_cap=DEGREE_PATH_CAP,
                                    var_cap=LP_VAR_CAP):
    """Relative classes map isometrically onto ambient ones, degrees >= 2.

    Coefficients are the dual of v throughout.  The induced map is the
    inclusion of the kernel complex; rank equality gives the isomorphism
    and per-class seminorm equality the isometry.
    """
    if n < 2:
        raise AmenabilityError("the isometry statement starts in degree two")
    vd = dual_module(v)
    rel = relative_complex(pair, vd, n, path_cap)
    hrel = relative_cohomology(rel, var_cap)
    hamb = cohomology(rel.ambient, var_cap)
    degrees = list(range(1, n + 1))
    dims_rel, dims_amb, ranks, semis, isometric = [], [], [], [], []
    for k in degrees:
        dims_rel.append(hrel.dims[k])
        dims_amb.append(hamb.dims[k])
        cols = [class_coordinates(hamb, rel.embed(z, k), k)
                for z in hrel.reps[k]]
        ranks.append(rank(columns_matrix(cols, hamb.dims[k])))
        pairs = []
        flat = True
        for i, z in enumerate(hrel.reps[k]):
            s_amb, _ = class_seminorm(rel.ambient, rel.embed(z, k), k, var_cap)
            pairs.append((hrel.seminorms[k][i], s_amb))
            if hrel.seminorms[k][i] != s_amb:
                flat = False
        semis.append(pairs)
        isometric.append(flat)
    return MappingTheoremResult(degrees, dims_rel, dims_amb, ranks, semis,
                                isometric)


class ConverseProbeResult:
    """Vanishing against the dual of the function quotient module."""

    __slots__ = ("degrees", "dims", "sigma_dims", "ok")

    def __init__(self, degrees, dims, sigma_dims, ok):
        self.degrees = degrees
        self.dims = dims
        self.sigma_dims = sigma_dims
        self.ok = ok

    def __repr__(self):
        return "ConverseProbeResult(dims=%r, ok=%r)" % (self.dims, self.ok)


def converse_amenability_probe(g, n=1, path_cap=DEGREE_PATH_CAP):
    """H^1 with coefficients dual to the function quotient module.

    A nonzero answer would certify non-amenability; finite groupoids
    always report zero, so this probe can only ever confirm.
    """
    sig = sigma_module(g)
    _check_dims(sig.fiber_dims)
    cx = cochain_complex(g, dual_module(sig), n, path_cap)
    h = cohomology(cx, seminorms=False)
    dims = [h.dims[k] for k in range(1, n + 1)]
    return ConverseProbeResult(list(range(1, n + 1)), dims,
                               list(sig.fiber_dims), all(d == 0 for d in dims))
