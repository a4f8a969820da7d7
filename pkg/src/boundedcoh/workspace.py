"""Workspace files and job execution behind the command line.

A workspace is a JSON document describing one groupoid (directly, from a
group table, as an action groupoid, or as a blow-up), an optional
coefficient module, a list of subgroupoid pairs, and a list of jobs.
Rationals travel as strings like "3/4" so nothing is ever rounded.  Jobs
produce plain dictionaries with sorted-key JSON in mind: two runs on the
same input yield byte-identical reports.
"""

import json
from fractions import Fraction

from .amenability import (algebraic_mapping_theorem_check,
                          amenable_vanishing_check, factorization_check)
from .chains import DEGREE_PATH_CAP
from .cohomology import (LP_VAR_CAP, additivity_check, class_seminorm,
                         cochain_complex, cohomology,
                         equivalence_invariance_check, long_exact_sequence,
                         relative_cohomology, relative_complex)
from .groupoids import (FiniteGroupoid, GroupoidError, GroupoidPair, Homotopy,
                        action_groupoid, blow_up, from_group_table,
                        identity_map, skeleton_retraction,
                        subgroupoid_from_morphisms)
from .linalg import QMatrix
from .modules import (ModuleError, NormedModule, dual_module, trivial_module)
from .norms import HRepNorm, L1Norm, LinfNorm, NormError

JOB_NAMES = ("cohomology", "relative", "les", "seminorm", "additivity",
             "equivalence", "amenable-vanishing", "mapping-theorem",
             "factorization", "verify-all")

GROUPOID_KEYS = ("groupoid", "group_table", "action", "blowup")


class WorkspaceError(Exception):
    """A workspace problem, tagged with where in the document it sits."""

    def __init__(self, where, message):
        super().__init__("%s: %s" % (where, message))
        self.where = where


def _fmt(x):
    return str(Fraction(x))


def _fmt_vec(v):
    return [str(Fraction(x)) for x in v]


def _rational(x, where):
    if isinstance(x, bool):
        raise WorkspaceError(where, "expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as err:
            raise WorkspaceError(where, "bad rational %r (%s)" % (x, err))
    raise WorkspaceError(where, "expected an integer or a 'p/q' string")


def _int(x, where, minimum=None):
    if isinstance(x, bool) or not isinstance(x, int):
        raise WorkspaceError(where, "expected an integer")
    if minimum is not None and x < minimum:
        raise WorkspaceError(where, "must be at least %d" % minimum)
    return x


def _int_list(x, where, minimum=None):
    if not isinstance(x, list):
        raise WorkspaceError(where, "expected a list of integers")
    return [_int(e, "%s[%d]" % (where, i), minimum) for i, e in enumerate(x)]


def _int_table(x, where):
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise WorkspaceError(where, "expected a list of integer rows")
    return [_int_list(r, "%s[%d]" % (where, i)) for i, r in enumerate(x)]


def _rational_rows(x, where):
    if not isinstance(x, list) or not x or not all(
            isinstance(r, list) for r in x):
        raise WorkspaceError(where, "expected a nonempty list of rows")
    width = len(x[0])
    out = []
    for i, r in enumerate(x):
        if len(r) != width:
            raise WorkspaceError("%s[%d]" % (where, i), "ragged rows")
        out.append([_rational(e, "%s[%d][%d]" % (where, i, j))
                    for j, e in enumerate(r)])
    return out


def _norm(spec, where, dim):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise WorkspaceError(where, "norm needs a 'kind'")
    kind = spec["kind"]
    if kind == "linf":
        return LinfNorm(dim)
    if kind == "l1":
        return L1Norm(dim)
    if kind == "hrep":
        rows = _rational_rows(spec.get("rows"), where + ".rows")
        if rows and len(rows[0]) != dim:
            raise WorkspaceError(where + ".rows",
                                 "rows have %d columns, fiber has dimension %d"
                                 % (len(rows[0]), dim))
        return HRepNorm(rows, dim=dim)
    raise WorkspaceError(where, "unknown norm kind %r" % (kind,))


class Workspace:
    """A loaded groupoid with its module, pairs, and requested jobs."""

    __slots__ = ("groupoid", "module", "pairs", "pair_names", "jobs")

    def __init__(self, groupoid, module, pairs, pair_names, jobs):
        self.groupoid = groupoid
        self.module = module
        self.pairs = pairs
        self.pair_names = pair_names
        self.jobs = jobs

    def __repr__(self):
        return "Workspace(objects=%d, pairs=%d, jobs=%d)" % (
            self.groupoid.num_objects, len(self.pairs), len(self.jobs))


def _build_groupoid(doc):
    present = [k for k in GROUPOID_KEYS if k in doc]
    if len(present) != 1:
        raise WorkspaceError(
            "document", "need exactly one of %s" % (", ".join(GROUPOID_KEYS)))
    key = present[0]
    spec = doc[key]
    try:
        if key == "group_table":
            return from_group_table(_int_table(spec, key))
        if key == "action":
            if not isinstance(spec, dict):
                raise WorkspaceError(key, "expected an object")
            return action_groupoid(_int_table(spec.get("table"),
                                              key + ".table"),
                                   _int_table(spec.get("action"),
                                              key + ".action"))
        if key == "blowup":
            if not isinstance(spec, dict):
                raise WorkspaceError(key, "expected an object")
            base = from_group_table(_int_table(spec.get("table"),
                                               key + ".table"))
            copies = _int(spec.get("copies"), key + ".copies", minimum=1)
            return blow_up(base, copies)[0]
        if not isinstance(spec, dict):
            raise WorkspaceError(key, "expected an object")
        return FiniteGroupoid(
            _int(spec.get("objects"), key + ".objects", minimum=0),
            _int_list(spec.get("source"), key + ".source"),
            _int_list(spec.get("target"), key + ".target"),
            _int_list(spec.get("identity"), key + ".identity"),
            _int_table(spec.get("comp"), key + ".comp"))
    except GroupoidError as err:
        raise WorkspaceError(key, "groupoid axiom violated: %s" % err)


def _build_module(doc, G):
    if "module" not in doc:
        return trivial_module(G)
    spec = doc["module"]
    if not isinstance(spec, dict):
        raise WorkspaceError("module", "expected an object")
    dims = _int_list(spec.get("dims"), "module.dims", minimum=0)
    if len(dims) != G.num_objects:
        raise WorkspaceError("module.dims", "need one dimension per object")
    norm_specs = spec.get("norms")
    if not isinstance(norm_specs, list) or len(norm_specs) != G.num_objects:
        raise WorkspaceError("module.norms", "need one norm per object")
    norms = [_norm(ns, "module.norms[%d]" % e, dims[e])
             for e, ns in enumerate(norm_specs)]
    act_specs = spec.get("actions")
    if not isinstance(act_specs, list) or len(act_specs) != G.num_morphisms:
        raise WorkspaceError("module.actions", "need one matrix per morphism")
    actions = []
    for g, rows in enumerate(act_specs):
        where = "module.actions[%d]" % g
        if dims[G.target[g]] == 0:
            actions.append(QMatrix.zeros(0, dims[G.source[g]]))
            continue
        mat = _rational_rows(rows, where)
        if len(mat) != dims[G.target[g]] or len(mat[0]) != dims[G.source[g]]:
            raise WorkspaceError(where, "matrix is %dx%d, expected %dx%d"
                                 % (len(mat), len(mat[0]),
                                    dims[G.target[g]], dims[G.source[g]]))
        actions.append(QMatrix.from_rows(mat))
    try:
        return NormedModule(G, dims, norms, actions)
    except (ModuleError, NormError) as err:
        raise WorkspaceError("module", "module axiom violated: %s" % err)


def _build_pairs(doc, G):
    specs = doc.get("pairs", [])
    if not isinstance(specs, list):
        raise WorkspaceError("pairs", "expected a list")
    pairs, names = [], []
    for i, spec in enumerate(specs):
        where = "pairs[%d]" % i
        if not isinstance(spec, dict):
            raise WorkspaceError(where, "expected an object")
        objs = _int_list(spec.get("objects"), where + ".objects", minimum=0)
        mors = _int_list(spec.get("morphisms"), where + ".morphisms",
                         minimum=0)
        try:
            sub, incl = subgroupoid_from_morphisms(G, objs, mors)
            pairs.append(GroupoidPair(G, sub, incl))
        except GroupoidError as err:
            raise WorkspaceError(where, "subgroupoid axiom violated: %s" % err)
        name = spec.get("name", "pair-%d" % i)
        if not isinstance(name, str):
            raise WorkspaceError(where + ".name", "expected a string")
        names.append(name)
    return pairs, names


def _build_jobs(doc, num_pairs):
    specs = doc.get("jobs", [])
    if not isinstance(specs, list):
        raise WorkspaceError("jobs", "expected a list")
    out = []
    for i, spec in enumerate(specs):
        where = "jobs[%d]" % i
        if isinstance(spec, str):
            spec = {"job": spec}
        if not isinstance(spec, dict) or "job" not in spec:
            raise WorkspaceError(where, "expected an object with a 'job'")
        if spec["job"] not in JOB_NAMES:
            raise WorkspaceError(where, "unknown job %r (choose from %s)"
                                 % (spec["job"], ", ".join(JOB_NAMES)))
        if "degree" in spec:
            _int(spec["degree"], where + ".degree", minimum=0)
        if "pair" in spec:
            p = _int(spec["pair"], where + ".pair", minimum=0)
            if p >= num_pairs:
                raise WorkspaceError(where + ".pair",
                                     "workspace has %d pairs" % num_pairs)
        out.append(dict(spec))
    return out


def parse_workspace(doc):
    if not isinstance(doc, dict):
        raise WorkspaceError("document", "top level must be an object")
    known = set(GROUPOID_KEYS) | {"module", "pairs", "jobs"}
    for k in doc:
        if k not in known:
            raise WorkspaceError("document", "unknown key %r" % (k,))
    G = _build_groupoid(doc)
    module = _build_module(doc, G)
    pairs, names = _build_pairs(doc, G)
    jobs = _build_jobs(doc, len(pairs))
    return Workspace(G, module, pairs, names, jobs)


def load_workspace(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise WorkspaceError(str(path), "cannot read workspace: %s" % err)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise WorkspaceError(str(path), "parse error: %s" % err)
    return parse_workspace(doc)


def _classes(h, k):
    out = []
    for i, rep in enumerate(h.reps[k]):
        entry = {"representative": _fmt_vec(rep)}
        if h.seminorms[k] is not None:
            entry["seminorm"] = _fmt(h.seminorms[k][i])
            w = h.witnesses[k][i]
            entry["witness"] = None if w is None else _fmt_vec(w)
        out.append(entry)
    return out


def _get_pair(ws, spec, where):
    if not ws.pairs:
        raise WorkspaceError(where, "this job needs a pair in the workspace")
    idx = spec.get("pair", 0)
    if not isinstance(idx, int) or not 0 <= idx < len(ws.pairs):
        raise WorkspaceError(where + ".pair",
                             "workspace has %d pairs" % len(ws.pairs))
    return idx, ws.pairs[idx], ws.pair_names[idx]


def _job_cohomology(ws, spec, n, pc, vc, where):
    cx = cochain_complex(ws.groupoid, ws.module, n, pc)
    h = cohomology(cx, vc)
    return {"job": "cohomology", "degree": n, "dims": list(h.dims),
            "classes": [_classes(h, k) for k in range(n + 1)], "pass": True}


def _job_relative(ws, spec, n, pc, vc, where):
    idx, pair, name = _get_pair(ws, spec, where)
    rel = relative_complex(pair, ws.module, n, pc)
    h = relative_cohomology(rel, vc)
    return {"job": "relative", "pair": name, "degree": n,
            "dims": list(h.dims),
            "classes": [_classes(h, k) for k in range(n + 1)], "pass": True}


def _job_les(ws, spec, n, pc, vc, where):
    idx, pair, name = _get_pair(ws, spec, where)
    les = long_exact_sequence(pair, ws.module, n, pc, vc)
    return {"job": "les", "pair": name, "degree": n,
            "dims": {"relative": list(les.h_rel.dims),
                     "ambient": list(les.h_ambient.dims),
                     "sub": list(les.h_sub.dims)},
            "slots": [dict(s) for s in les.slots],
            "delta_constants": [None if c is None else _fmt(c)
                                for c in les.delta_constants],
            "pass": les.ok}


def _job_seminorm(ws, spec, n, pc, vc, where):
    k = spec.get("degree", n)
    cx = cochain_complex(ws.groupoid, ws.module, k, pc)
    if "cocycle" in spec:
        raw = spec["cocycle"]
        if not isinstance(raw, list):
            raise WorkspaceError(where + ".cocycle", "expected a list")
        z = [_rational(x, "%s.cocycle[%d]" % (where, i))
             for i, x in enumerate(raw)]
        if len(z) != cx.dims[k]:
            raise WorkspaceError(where + ".cocycle",
                                 "degree %d cochains have dimension %d"
                                 % (k, cx.dims[k]))
        if any(cx.deltas[k].matvec(z)):
            raise WorkspaceError(where + ".cocycle", "not a cocycle")
    elif "class" in spec:
        h = cohomology(cx, vc, seminorms=False)
        i = _int(spec["class"], where + ".class", minimum=0)
        if i >= h.dims[k]:
            raise WorkspaceError(where + ".class",
                                 "degree %d has %d classes" % (k, h.dims[k]))
        z = h.reps[k][i]
    else:
        raise WorkspaceError(where, "seminorm needs 'cocycle' or 'class'")
    val, wit = class_seminorm(cx, z, k, vc)
    return {"job": "seminorm", "degree": k, "cocycle": _fmt_vec(z),
            "value": _fmt(val),
            "witness": None if wit is None else _fmt_vec(wit), "pass": True}


def _job_additivity(ws, spec, n, pc, vc, where):
    rep = additivity_check(ws.groupoid, ws.module, n, pc, vc)
    rows = [[{"whole": _fmt(w), "components": _fmt_vec(parts)}
             for (w, parts) in per_degree]
            for per_degree in rep.seminorm_rows]
    return {"job": "additivity", "degree": n, "dims": list(rep.dims),
            "component_dims": [list(r) for r in rep.component_dims],
            "seminorms": rows, "pass": rep.ok}


def _job_equivalence(ws, spec, n, pc, vc, where):
    G = ws.groupoid
    skel, incl, retr, h = skeleton_retraction(G)
    witness = (retr,
               Homotopy(identity_map(skel), identity_map(skel),
                        [skel.identity[e] for e in range(skel.num_objects)]),
               h)
    rep = equivalence_invariance_check(incl, ws.module, n, witness, pc, vc)
    pairs = [[{"ambient": _fmt(a), "skeleton": _fmt(b)} for (a, b) in row]
             for row in rep.seminorm_pairs]
    return {"job": "equivalence", "degree": n,
            "skeleton_objects": skel.num_objects,
            "dims_ambient": list(rep.dims_cod),
            "dims_skeleton": list(rep.dims_dom),
            "seminorms": pairs, "pass": rep.ok}


def _job_vanishing(ws, spec, n, pc, vc, where):
    rep = amenable_vanishing_check(ws.groupoid, ws.module, n, pc)
    return {"job": "amenable-vanishing", "degrees": list(rep.degrees),
            "dims": list(rep.dims), "dim0": rep.dim0, "pass": rep.ok}


def _job_mapping(ws, spec, n, pc, vc, where):
    idx, pair, name = _get_pair(ws, spec, where)
    if n < 2:
        raise WorkspaceError(where, "mapping-theorem needs degree >= 2")
    rep = algebraic_mapping_theorem_check(pair, ws.module, n, pc, vc)
    semis = [[{"relative": _fmt(a), "ambient": _fmt(b)} for (a, b) in row]
             for row in rep.seminorms]
    return {"job": "mapping-theorem", "pair": name,
            "degrees": list(rep.degrees),
            "dims_relative": list(rep.dims_relative),
            "dims_ambient": list(rep.dims_ambient),
            "ranks": list(rep.ranks), "seminorms": semis,
            "isometric": list(rep.isometric), "pass": rep.ok}


def _job_factorization(ws, spec, n, pc, vc, where):
    idx, pair, name = _get_pair(ws, spec, where)
    if n < 1:
        raise WorkspaceError(where, "factorization needs degree >= 1")
    rep = factorization_check(pair, dual_module(ws.module), n, pc)
    return {"job": "factorization", "pair": name, "degree": rep.degree,
            "zero": rep.zero, "vacuous": rep.vacuous,
            "composite_norm": _fmt(rep.composite_norm),
            "extends_identity": rep.extends_identity, "pass": rep.ok}


def _job_verify_all(ws, spec, n, pc, vc, where):
    sections = [_job_cohomology(ws, {}, n, pc, vc, where),
                _job_vanishing(ws, {}, min(n, 2), pc, vc, where),
                _job_additivity(ws, {}, min(n, 2), pc, vc, where),
                _job_equivalence(ws, {}, min(n, 2), pc, vc, where)]
    for idx in range(len(ws.pairs)):
        pspec = {"pair": idx}
        sections.append(_job_relative(ws, pspec, min(n, 2), pc, vc, where))
        sections.append(_job_les(ws, pspec, max(0, min(n, 2) - 1), pc, vc,
                                 where))
        if n >= 1:
            sections.append(_job_factorization(ws, pspec, min(n, 2), pc, vc,
                                               where))
        if n >= 2:
            sections.append(_job_mapping(ws, pspec, 2, pc, vc, where))
    return {"job": "verify-all", "degree": n, "sections": sections,
            "pass": all(s["pass"] for s in sections)}


_HANDLERS = {
    "cohomology": _job_cohomology,
    "relative": _job_relative,
    "les": _job_les,
    "seminorm": _job_seminorm,
    "additivity": _job_additivity,
    "equivalence": _job_equivalence,
    "amenable-vanishing": _job_vanishing,
    "mapping-theorem": _job_mapping,
    "factorization": _job_factorization,
    "verify-all": _job_verify_all,
}


def run_job(ws, spec, degree=3, path_cap=DEGREE_PATH_CAP,
            var_cap=LP_VAR_CAP, where="job"):
    """Execute one job spec against a loaded workspace.

    The spec's own "degree" wins over the degree argument.  Returns the
    report dictionary; raises WorkspaceError for bad parameters and lets
    library errors (audit failures, caps) propagate.
    """
    name = spec.get("job")
    if name not in _HANDLERS:
        raise WorkspaceError(where, "unknown job %r" % (name,))
    n = spec.get("degree", degree)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise WorkspaceError(where + ".degree", "expected a degree >= 0")
    return _HANDLERS[name](ws, spec, n, path_cap, var_cap, where)


def render_report(reports):
    """The deterministic top-level report document, as a JSON string."""
    doc = {"jobs": reports, "pass": all(r["pass"] for r in reports)}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
