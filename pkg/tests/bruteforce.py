"""Brute-force oracles built independently of the library internals.

Small instances are recomputed from first principles: paths by direct
enumeration, invariant cochains as orbit functions under the leading-entry
action, coboundaries straight from the face formula, ranks through sympy,
and class seminorms as LPs over the raw unreduced constraint system (one
constraint per full path, not per reduced slot).
"""

from fractions import Fraction

import sympy

from boundedcoh.lp import LPProblem, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)


def entry_paths(G, m):
    """All m-entry composable tuples."""
    if m == 0:
        return [()]
    out = [(g,) for g in range(G.num_morphisms)]
    for _ in range(m - 1):
        out = [p + (g,) for p in out for g in range(G.num_morphisms)
               if G.source[p[-1]] == G.target[g]]
    return out


def orbit_key(G, p):
    """Orbit of a path under left multiplication of the leading entry."""
    return (G.source[p[0]], p[1:])


def faces(G, p):
    """Faces of a path with alternating signs, as (sign, face) pairs."""
    out = []
    sign = ONE
    for i in range(len(p) - 1):
        out.append((sign, p[:i] + (G.comp[p[i]][p[i + 1]],) + p[i + 2:]))
        sign = -sign
    out.append((sign, p[:-1]))
    return out


def cochain_orbits(G, k):
    """Orbit keys of (k+1)-entry paths: invariant degree-k coordinates."""
    return sorted({orbit_key(G, p) for p in entry_paths(G, k + 1)})


def is_sub_orbit(pair, key):
    e, tail = key
    return e in pair.obj_image and all(g in pair.mor_image for g in tail)


def brute_delta(G, k, keep=None):
    """Coboundary on invariant orbit coordinates as a sympy matrix.

    keep, if given, restricts both sides to the orbits it accepts (used
    for relative cochains, which vanish on sub orbits).
    """
    src = [o for o in cochain_orbits(G, k) if keep is None or keep(o)]
    dst = [o for o in cochain_orbits(G, k + 1) if keep is None or keep(o)]
    si = {o: j for j, o in enumerate(src)}
    m = sympy.zeros(len(dst), len(src))
    for i, (e, tail) in enumerate(dst):
        p = (G.identity[e],) + tail
        for sign, f in faces(G, p):
            o = orbit_key(G, f)
            if o in si:
                m[i, si[o]] += int(sign)
    return m


def brute_h_dims(G, n, keep=None):
    """Cohomology dimensions 0..n with trivial coefficients, via sympy."""
    deltas = [brute_delta(G, k, keep) for k in range(n + 1)]
    dims = []
    for k in range(n + 1):
        z = deltas[k].cols - deltas[k].rank()
        b = deltas[k - 1].rank() if k else 0
        dims.append(z - b)
    return dims


def brute_relative_h_dims(pair, n):
    G = pair.ambient
    return brute_h_dims(G, n, keep=lambda o: not is_sub_orbit(pair, o))


def brute_seminorm(G, k, values, pair=None):
    """Class seminorm by the raw LP over all (k+1)-entry paths.

    values maps orbit keys (object, k-tail) to Fractions; when pair is
    given the cochain is relative and the competing coboundaries range
    only over relative degree-(k-1) cochains.
    """
    assert k >= 1
    psi = [o for o in cochain_orbits(G, k - 1)
           if pair is None or not is_sub_orbit(pair, o)]
    pi = {o: j for j, o in enumerate(psi)}
    nv = len(psi)
    lp = LPProblem(nv + 1, [ZERO] * nv + [ONE])
    seen = set()
    for p in entry_paths(G, k + 1):
        rhs = values[orbit_key(G, p)]
        base = [ZERO] * nv
        for sign, f in faces(G, p):
            o = orbit_key(G, f)
            if o in pi:
                base[pi[o]] += sign
        # paths in one leading-entry orbit repeat the same row; adding it
        # once leaves the feasible set unchanged and the tableau small
        key = (tuple(base), rhs)
        if key in seen:
            continue
        seen.add(key)
        # |rhs - base.psi| <= t
        for sgn in (ONE, -ONE):
            lp.add([-sgn * c for c in base] + [-ONE], "<=", -sgn * rhs)
    lp.add([ZERO] * nv + [-ONE], "<=", ZERO)
    res = solve_lp(lp)
    assert res.status == "optimal"
    return res.value
