"""Finite groupoids given by explicit composition tables.

Objects and morphisms are integer ids.  A groupoid stores source/target
arrays, an identity morphism per object, and a dense composition table
with -1 marking non-composable pairs.  Validation is exhaustive: identity
laws, associativity over all composable triples, and two-sided inverses.

Composition is written in function order: ``compose(f, g)`` is "g then f"
and needs ``source(f) == target(g)``.
"""

from __future__ import annotations


class GroupoidError(ValueError):
    """Raised when data fails a groupoid, functor, or homotopy axiom."""


class FiniteGroupoid:
    """A finite groupoid with integer object and morphism ids.

    comp[f][g] is the composite "g then f" when source(f) == target(g),
    and -1 otherwise.
    """

    __slots__ = ("num_objects", "num_morphisms", "source", "target",
                 "identity", "comp", "inv", "obj_labels", "mor_labels")

    def __init__(self, num_objects, source, target, identity, comp,
                 obj_labels=None, mor_labels=None):
        self.num_objects = num_objects
        self.source = list(source)
        self.target = list(target)
        self.identity = list(identity)
        self.comp = [list(row) for row in comp]
        self.num_morphisms = len(self.source)
        self.obj_labels = obj_labels
        self.mor_labels = mor_labels
        self._validate()
        self.inv = self._compute_inverses()

    def _validate(self):
        n, m = self.num_objects, self.num_morphisms
        if n < 0:
            raise GroupoidError("negative object count")
        if len(self.target) != m or len(self.comp) != m:
            raise GroupoidError("inconsistent morphism counts")
        if len(self.identity) != n:
            raise GroupoidError("need one identity per object")
        for f in range(m):
            if not (0 <= self.source[f] < n and 0 <= self.target[f] < n):
                raise GroupoidError("source/target out of range")
            if len(self.comp[f]) != m:
                raise GroupoidError("composition table not square")
        for e in range(n):
            i = self.identity[e]
            if not (0 <= i < m) or self.source[i] != e or self.target[i] != e:
                raise GroupoidError("identity of object %d is not an endomorphism" % e)
        for f in range(m):
            for g in range(m):
                fg = self.comp[f][g]
                if self.source[f] != self.target[g]:
                    if fg != -1:
                        raise GroupoidError("composite defined for non-composable pair")
                    continue
                if not (0 <= fg < m):
                    raise GroupoidError("missing composite for composable pair")
                if self.source[fg] != self.source[g] or self.target[fg] != self.target[f]:
                    raise GroupoidError("composite has wrong source or target")
        for f in range(m):
            if self.comp[f][self.identity[self.source[f]]] != f:
                raise GroupoidError("right identity law fails at morphism %d" % f)
            if self.comp[self.identity[self.target[f]]][f] != f:
                raise GroupoidError("left identity law fails at morphism %d" % f)
        # associativity over all composable triples
        for f in range(m):
            for g in range(m):
                if self.source[f] != self.target[g]:
                    continue
                fg = self.comp[f][g]
                for h in range(m):
                    if self.source[g] != self.target[h]:
                        continue
                    if self.comp[fg][h] != self.comp[f][self.comp[g][h]]:
                        raise GroupoidError(
                            "associativity fails at morphisms (%d, %d, %d)"
                            % (f, g, h))

    def _compute_inverses(self):
        inv = [-1] * self.num_morphisms
        for f in range(self.num_morphisms):
            e, e2 = self.source[f], self.target[f]
            for g in range(self.num_morphisms):
                if self.source[g] == e2 and self.target[g] == e:
                    if (self.comp[g][f] == self.identity[e]
                            and self.comp[f][g] == self.identity[e2]):
                        inv[f] = g
                        break
            if inv[f] == -1:
                raise GroupoidError("morphism %d has no two-sided inverse" % f)
        return inv

    def compose(self, f, g):
        """Composite "g then f"; raises if not composable."""
        fg = self.comp[f][g]
        if fg == -1:
            raise GroupoidError("morphisms %d and %d are not composable" % (f, g))
        return fg

    def is_composable(self, f, g):
        return self.source[f] == self.target[g]

    def morphisms_with_target(self, e):
        return [f for f in range(self.num_morphisms) if self.target[f] == e]

    def morphisms_with_source(self, e):
        return [f for f in range(self.num_morphisms) if self.source[f] == e]

    def vertex_group(self, e):
        """Endomorphisms of object e, as a sorted list of morphism ids."""
        return [f for f in range(self.num_morphisms)
                if self.source[f] == e and self.target[f] == e]

    def is_connected(self):
        return len(connected_components(self)) == 1

    def __repr__(self):
        return "FiniteGroupoid(objects=%d, morphisms=%d)" % (
            self.num_objects, self.num_morphisms)


class GroupoidMap:
    """A functor between finite groupoids."""

    __slots__ = ("dom", "cod", "obj_map", "mor_map")

    def __init__(self, dom, cod, obj_map, mor_map):
        self.dom = dom
        self.cod = cod
        self.obj_map = list(obj_map)
        self.mor_map = list(mor_map)
        self._validate()

    def _validate(self):
        G, H = self.dom, self.cod
        if len(self.obj_map) != G.num_objects or len(self.mor_map) != G.num_morphisms:
            raise GroupoidError("map arrays have wrong length")
        for e in range(G.num_objects):
            if not (0 <= self.obj_map[e] < H.num_objects):
                raise GroupoidError("object image out of range")
            if self.mor_map[G.identity[e]] != H.identity[self.obj_map[e]]:
                raise GroupoidError("functor does not preserve identities")
        for f in range(G.num_morphisms):
            ff = self.mor_map[f]
            if not (0 <= ff < H.num_morphisms):
                raise GroupoidError("morphism image out of range")
            if (H.source[ff] != self.obj_map[G.source[f]]
                    or H.target[ff] != self.obj_map[G.target[f]]):
                raise GroupoidError("functor breaks source/target")
        for f in range(G.num_morphisms):
            for g in range(G.num_morphisms):
                if G.source[f] != G.target[g]:
                    continue
                if self.mor_map[G.comp[f][g]] != H.comp[self.mor_map[f]][self.mor_map[g]]:
                    raise GroupoidError("functor breaks composition")

    def __call__(self, f):
        return self.mor_map[f]

    def then(self, other):
        """Composite functor: self followed by other."""
        if other.dom is not self.cod:
            raise GroupoidError("functors not composable")
        return GroupoidMap(self.dom, other.cod,
                           [other.obj_map[e] for e in self.obj_map],
                           [other.mor_map[f] for f in self.mor_map])

    def is_identity(self):
        return (self.dom is self.cod
                and self.obj_map == list(range(self.dom.num_objects))
                and self.mor_map == list(range(self.dom.num_morphisms)))

    def is_injective(self):
        return (len(set(self.obj_map)) == self.dom.num_objects
                and len(set(self.mor_map)) == self.dom.num_morphisms)

    def is_surjective(self):
        return (len(set(self.obj_map)) == self.cod.num_objects
                and len(set(self.mor_map)) == self.cod.num_morphisms)

    def __eq__(self, other):
        return (isinstance(other, GroupoidMap)
                and self.dom is other.dom and self.cod is other.cod
                and self.obj_map == other.obj_map and self.mor_map == other.mor_map)

    def __repr__(self):
        return "GroupoidMap(%r -> %r)" % (self.dom, self.cod)


def identity_map(G):
    return GroupoidMap(G, G, list(range(G.num_objects)),
                       list(range(G.num_morphisms)))


class Homotopy:
    """A natural transformation from_map => to_map between parallel functors.

    components[e] is a morphism from_map(e) -> to_map(e) in the codomain,
    with to_map(g) o h_{source(g)} == h_{target(g)} o from_map(g).
    """

    __slots__ = ("from_map", "to_map", "components")

    def __init__(self, from_map, to_map, components):
        if from_map.dom is not to_map.dom or from_map.cod is not to_map.cod:
            raise GroupoidError("homotopy needs parallel functors")
        self.from_map = from_map
        self.to_map = to_map
        self.components = list(components)
        self._validate()

    def _validate(self):
        G, H = self.from_map.dom, self.from_map.cod
        if len(self.components) != G.num_objects:
            raise GroupoidError("need one component per object")
        for e in range(G.num_objects):
            h = self.components[e]
            if (H.source[h] != self.from_map.obj_map[e]
                    or H.target[h] != self.to_map.obj_map[e]):
                raise GroupoidError("component %d has wrong endpoints" % e)
        for g in range(G.num_morphisms):
            lhs = H.comp[self.to_map.mor_map[g]][self.components[G.source[g]]]
            rhs = H.comp[self.components[G.target[g]]][self.from_map.mor_map[g]]
            if lhs != rhs:
                raise GroupoidError("naturality square fails at morphism %d" % g)

    def __repr__(self):
        return "Homotopy(%r => %r)" % (self.from_map, self.to_map)


class GroupoidPair:
    """A groupoid with a distinguished subgroupoid, via an injective functor."""

    __slots__ = ("ambient", "sub", "inclusion", "mor_image", "obj_image")

    def __init__(self, ambient, sub, inclusion):
        if inclusion.dom is not sub or inclusion.cod is not ambient:
            raise GroupoidError("inclusion must map the subgroupoid into the ambient groupoid")
        if len(set(inclusion.obj_map)) != sub.num_objects:
            raise GroupoidError("inclusion is not injective on objects")
        if len(set(inclusion.mor_map)) != sub.num_morphisms:
            raise GroupoidError("inclusion is not injective on morphisms")
        self.ambient = ambient
        self.sub = sub
        self.inclusion = inclusion
        self.obj_image = set(inclusion.obj_map)
        self.mor_image = set(inclusion.mor_map)

    def contains_morphism(self, f):
        return f in self.mor_image

    def __repr__(self):
        return "GroupoidPair(%r, %r)" % (self.ambient, self.sub)


def from_group_table(table, labels=None):
    """One-object groupoid from a finite group multiplication table.

    table[i][j] is the product "apply j then i".  The identity element is
    located by inspection; group axioms are then checked by the groupoid
    validator.
    """
    m = len(table)
    for row in table:
        if len(row) != m:
            raise GroupoidError("multiplication table must be square")
        for x in row:
            if not (0 <= x < m):
                raise GroupoidError("table entry out of range")
    ident = None
    for e in range(m):
        if all(table[e][x] == x and table[x][e] == x for x in range(m)):
            ident = e
            break
    if ident is None:
        raise GroupoidError("table has no identity element")
    return FiniteGroupoid(1, [0] * m, [0] * m, [ident], table,
                          mor_labels=labels)


def trivial_groupoid(num_objects=1):
    """Groupoid with the given objects and only identity morphisms."""
    comp = [[-1] * num_objects for _ in range(num_objects)]
    for e in range(num_objects):
        comp[e][e] = e
    return FiniteGroupoid(num_objects, list(range(num_objects)),
                          list(range(num_objects)), list(range(num_objects)),
                          comp)


def disjoint_union(*parts):
    """Disjoint union of groupoids; returns (union, [inclusion maps])."""
    if not parts:
        raise GroupoidError("need at least one part")
    obj_off, mor_off = [], []
    n = m = 0
    for G in parts:
        obj_off.append(n)
        mor_off.append(m)
        n += G.num_objects
        m += G.num_morphisms
    source, target, identity = [0] * m, [0] * m, [0] * n
    comp = [[-1] * m for _ in range(m)]
    for k, G in enumerate(parts):
        on, om = obj_off[k], mor_off[k]
        for f in range(G.num_morphisms):
            source[om + f] = on + G.source[f]
            target[om + f] = on + G.target[f]
            for g in range(G.num_morphisms):
                if G.comp[f][g] != -1:
                    comp[om + f][om + g] = om + G.comp[f][g]
        for e in range(G.num_objects):
            identity[on + e] = om + G.identity[e]
    union = FiniteGroupoid(n, source, target, identity, comp)
    incls = [GroupoidMap(G, union,
                         [obj_off[k] + e for e in range(G.num_objects)],
                         [mor_off[k] + f for f in range(G.num_morphisms)])
             for k, G in enumerate(parts)]
    return union, incls


def action_groupoid(table, action):
    """Action groupoid of a group acting on a finite set.

    table is a group multiplication table, action[g][x] the image of point
    x under g.  Objects are the points; the morphism with id x*|G| + g runs
    from x to action[g][x], and composition multiplies in the group.
    """
    nG = len(table)
    nX = len(action[0])
    for row in action:
        if len(row) != nX:
            raise GroupoidError("action table rows must have equal length")
    group = from_group_table(table)  # validates the group axioms
    e0 = group.identity[0]
    for x in range(nX):
        if action[e0][x] != x:
            raise GroupoidError("identity does not act trivially")
    for g in range(nG):
        for h in range(nG):
            for x in range(nX):
                if action[g][action[h][x]] != action[table[g][h]][x]:
                    raise GroupoidError("action is not compatible with multiplication")
    m = nX * nG

    def mid(x, g):
        return x * nG + g

    source, target = [0] * m, [0] * m
    labels = [None] * m
    for x in range(nX):
        for g in range(nG):
            source[mid(x, g)] = x
            target[mid(x, g)] = action[g][x]
            labels[mid(x, g)] = (x, g)
    identity = [mid(x, e0) for x in range(nX)]
    comp = [[-1] * m for _ in range(m)]
    for x in range(nX):
        for g in range(nG):
            y = action[g][x]
            for h in range(nG):
                # (y, h) after (x, g): runs x -> action[h][y]
                comp[mid(y, h)][mid(x, g)] = mid(x, table[h][g])
    return FiniteGroupoid(nX, source, target, identity, comp,
                          mor_labels=labels)


def blow_up(G, copies):
    """Blow-up replacing each object of G by a set of copies.

    copies is an int (same count everywhere) or a per-object list.  Objects
    are pairs (e, i); the morphism (f, i, j) runs from (source(f), i) to
    (target(f), j) and composition is (f2, j, k) o (f1, i, j) = (f2 f1, i, k).
    Returns (blow_up_groupoid, projection onto G).
    """
    if isinstance(copies, int):
        copies = [copies] * G.num_objects
    if len(copies) != G.num_objects or any(c <= 0 for c in copies):
        raise GroupoidError("need a positive copy count per object")
    obj_ids = {}
    obj_labels = []
    for e in range(G.num_objects):
        for i in range(copies[e]):
            obj_ids[(e, i)] = len(obj_labels)
            obj_labels.append((e, i))
    mor_ids = {}
    mor_labels = []
    for f in range(G.num_morphisms):
        for i in range(copies[G.source[f]]):
            for j in range(copies[G.target[f]]):
                mor_ids[(f, i, j)] = len(mor_labels)
                mor_labels.append((f, i, j))
    m = len(mor_labels)
    source = [obj_ids[(G.source[f], i)] for (f, i, _) in mor_labels]
    target = [obj_ids[(G.target[f], j)] for (f, _, j) in mor_labels]
    identity = [mor_ids[(G.identity[e], i, i)] for (e, i) in obj_labels]
    comp = [[-1] * m for _ in range(m)]
    for (f2, j2, k) in mor_labels:
        a = mor_ids[(f2, j2, k)]
        for (f1, i, j1) in mor_labels:
            if G.source[f2] == G.target[f1] and j2 == j1:
                comp[a][mor_ids[(f1, i, j1)]] = mor_ids[(G.comp[f2][f1], i, k)]
    blown = FiniteGroupoid(len(obj_labels), source, target, identity, comp,
                           obj_labels=obj_labels, mor_labels=mor_labels)
    proj = GroupoidMap(blown, G, [e for (e, _) in obj_labels],
                       [f for (f, _, _) in mor_labels])
    return blown, proj


def connected_components(G):
    """Connected components as full subgroupoids.

    Returns a list of (component, inclusion) ordered by smallest object id.
    """
    parent = list(range(G.num_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in range(G.num_morphisms):
        a, b = find(G.source[f]), find(G.target[f])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = {}
    for e in range(G.num_objects):
        groups.setdefault(find(e), []).append(e)
    return [full_subgroupoid(G, groups[r]) for r in sorted(groups)]


def full_subgroupoid(G, objects):
    """Full subgroupoid on the given objects; returns (sub, inclusion)."""
    objects = sorted(set(objects))
    obj_idx = {e: k for k, e in enumerate(objects)}
    mors = [f for f in range(G.num_morphisms)
            if G.source[f] in obj_idx and G.target[f] in obj_idx]
    return _subgroupoid(G, objects, mors, obj_idx)


def subgroupoid_from_morphisms(G, objects, morphisms):
    """Subgroupoid on the given objects and morphisms.

    The morphism set must contain the identities of the chosen objects and
    be closed under composition and inverse; returns (sub, inclusion).
    """
    objects = sorted(set(objects))
    morphisms = sorted(set(morphisms))
    obj_idx = {e: k for k, e in enumerate(objects)}
    mor_set = set(morphisms)
    for f in morphisms:
        if G.source[f] not in obj_idx or G.target[f] not in obj_idx:
            raise GroupoidError("morphism endpoints leave the object set")
        if G.inv[f] not in mor_set:
            raise GroupoidError("morphism set is not closed under inverse")
    for e in objects:
        if G.identity[e] not in mor_set:
            raise GroupoidError("missing identity of object %d" % e)
    for f in morphisms:
        for g in morphisms:
            if G.source[f] == G.target[g] and G.comp[f][g] not in mor_set:
                raise GroupoidError("morphism set is not closed under composition")
    return _subgroupoid(G, objects, morphisms, obj_idx)


def _subgroupoid(G, objects, mors, obj_idx):
    mor_idx = {f: k for k, f in enumerate(mors)}
    m = len(mors)
    source = [obj_idx[G.source[f]] for f in mors]
    target = [obj_idx[G.target[f]] for f in mors]
    identity = [mor_idx[G.identity[e]] for e in objects]
    comp = [[-1] * m for _ in range(m)]
    for a, f in enumerate(mors):
        for b, g in enumerate(mors):
            if G.source[f] == G.target[g]:
                comp[a][b] = mor_idx[G.comp[f][g]]
    sub = FiniteGroupoid(len(objects), source, target, identity, comp)
    incl = GroupoidMap(sub, G, objects, mors)
    return sub, incl


def skeleton_retraction(G, choice=None):
    """Deformation retract G onto one object per component.

    choice, when given, lists the basepoints (exactly one object per
    component); otherwise the smallest object id in each component is used.
    The connecting morphism gamma_e: basepoint -> e is the smallest such
    morphism id, with gamma = identity at the basepoint.  Returns
    (skeleton, inclusion, retraction, homotopy) where the homotopy runs
    inclusion o retraction => identity with components gamma_e.
    """
    comps = connected_components(G)
    if choice is not None:
        chosen = sorted(set(choice))
        if len(chosen) != len(comps):
            raise GroupoidError("need exactly one chosen object per component")
    base_of = [0] * G.num_objects  # object -> its component basepoint
    bases = []
    for sub, incl in comps:
        if choice is None:
            base = incl.obj_map[0]
        else:
            hits = [e for e in chosen if e in incl.obj_map]
            if len(hits) != 1:
                raise GroupoidError("need exactly one chosen object per component")
            base = hits[0]
        bases.append(base)
        for e in incl.obj_map:
            base_of[e] = base
    gamma = [-1] * G.num_objects
    for e in range(G.num_objects):
        if e == base_of[e]:
            gamma[e] = G.identity[e]
        else:
            for f in range(G.num_morphisms):
                if G.source[f] == base_of[e] and G.target[f] == e:
                    gamma[e] = f
                    break
    skel, incl = full_subgroupoid(G, bases)
    obj_map = [incl.obj_map.index(base_of[e]) for e in range(G.num_objects)]
    mor_map = []
    for g in range(G.num_morphisms):
        pg = G.comp[G.inv[gamma[G.target[g]]]][G.comp[g][gamma[G.source[g]]]]
        mor_map.append(incl.mor_map.index(pg))
    retr = GroupoidMap(G, skel, obj_map, mor_map)
    homotopy = Homotopy(retr.then(incl), identity_map(G), gamma)
    return skel, incl, retr, homotopy


def check_relative_homotopy(h, pair_dom, pair_cod):
    """Whether a homotopy between maps of pairs stays inside the sub-level.

    True iff for every object of pair_dom's subgroupoid the homotopy
    component at its ambient image lies in pair_cod's subgroupoid.
    """
    if h.from_map.dom is not pair_dom.ambient or h.from_map.cod is not pair_cod.ambient:
        raise GroupoidError("homotopy does not run between the given pairs")
    for a in range(pair_dom.sub.num_objects):
        e = pair_dom.inclusion.obj_map[a]
        if h.components[e] not in pair_cod.mor_image:
            return False
    return True
