"""Exact linear programming by the two-phase simplex method.

Bland's pivot rule throughout, so termination is guaranteed without any
perturbation and the solution path (hence every witness this package
reports) is deterministic.  Variables are unrestricted in sign; the solver
splits them internally.  All arithmetic is exact rational.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class LPProblem:
    """minimize objective . x subject to rows (coeffs, rel, bound).

    rel is "<=" or "=".  ">=" is accepted and converted on entry.
    """

    def __init__(self, num_vars, objective=None):
        assert num_vars >= 0
        self.num_vars = num_vars
        if objective is None:
            objective = [ZERO] * num_vars
        self.objective = [Fraction(x) for x in objective]
        assert len(self.objective) == num_vars
        self.constraints = []

    def add(self, coeffs, rel, bound):
        coeffs = [Fraction(x) for x in coeffs]
        assert len(coeffs) == self.num_vars
        bound = Fraction(bound)
        if rel == ">=":
            coeffs = [-x for x in coeffs]
            bound = -bound
            rel = "<="
        assert rel in ("<=", "=")
        self.constraints.append((coeffs, rel, bound))


class LPResult:
    __slots__ = ["status", "value", "x"]

    def __init__(self, status, value=None, x=None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.value = value
        self.x = x

    def __repr__(self):
        if self.status == "optimal":
            return "LPResult(optimal, %s)" % self.value
        return "LPResult(%s)" % self.status


def _pivot(tab, basis, row, col):
    basis[row] = col
    piv = tab[row][col]
    if piv != ONE:
        inv = ONE / piv
        tab[row] = [x * inv for x in tab[row]]
    prow = tab[row]
    for i in range(len(tab)):
        if i != row:
            f = tab[i][col]
            if f:
                ri = tab[i]
                tab[i] = [ri[k] - f * prow[k] for k in range(len(ri))]


def _simplex(tab, basis, cost):
    """Run simplex to optimality on a feasible tableau; Bland's rule."""
    m = len(tab)
    ncols = len(tab[0]) if m else len(cost) + 1
    nvars = ncols - 1
    while True:
        y = [cost[basis[i]] for i in range(m)]
        enter = -1
        for j in range(nvars):
            r = cost[j]
            for i in range(m):
                if y[i]:
                    a = tab[i][j]
                    if a:
                        r -= y[i] * a
            if r < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][nvars] / a
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(tab, basis, leave, enter)


def solve_lp(p):
    """Exact optimum with witness, or an infeasible/unbounded certificate."""
    m = len(p.constraints)
    n = p.num_vars
    nslack = sum(1 for (_, rel, _) in p.constraints if rel == "<=")
    nsplit = 2 * n
    nstd = nsplit + nslack
    ntot = nstd + m  # + one artificial per row
    tab = []
    sl = 0
    for (coeffs, rel, b) in p.constraints:
        row = [ZERO] * (ntot + 1)
        for k, a in enumerate(coeffs):
            if a:
                row[k] = a
                row[n + k] = -a
        if rel == "<=":
            row[nsplit + sl] = ONE
            sl += 1
        row[ntot] = b
        tab.append(row)
    for i in range(m):
        if tab[i][ntot] < 0:
            tab[i] = [-x for x in tab[i]]
    basis = []
    for i in range(m):
        tab[i][nstd + i] = ONE
        basis.append(nstd + i)

    cost1 = [ZERO] * ntot
    for i in range(m):
        cost1[nstd + i] = ONE
    _simplex(tab, basis, cost1)
    if sum(tab[i][ntot] for i in range(m) if basis[i] >= nstd):
        return LPResult("infeasible")

    # Drive zero-level artificials out; rows where that fails are redundant.
    drop = []
    for i in range(m):
        if basis[i] >= nstd:
            piv = -1
            for j in range(nstd):
                if tab[i][j]:
                    piv = j
                    break
            if piv >= 0:
                _pivot(tab, basis, i, piv)
            else:
                drop.append(i)
    if drop:
        dropset = set(drop)
        tab = [tab[i] for i in range(m) if i not in dropset]
        basis = [basis[i] for i in range(m) if i not in dropset]
        m = len(tab)

    tab = [row[:nstd] + [row[ntot]] for row in tab]
    cost2 = [ZERO] * nstd
    for k in range(n):
        cost2[k] = p.objective[k]
        cost2[n + k] = -p.objective[k]
    status = _simplex(tab, basis, cost2)
    if status == "unbounded":
        return LPResult("unbounded")
    xs = [ZERO] * nstd
    for i in range(m):
        xs[basis[i]] = tab[i][nstd]
    x = [xs[k] - xs[n + k] for k in range(n)]
    value = sum(p.objective[k] * x[k] for k in range(n))
    return LPResult("optimal", value, x)
