"""Command line front end: load a workspace, run jobs, write the report.

Exit codes: 0 all assertions pass, 1 an assertion failed, 2 the input
was unusable (parse, schema, or axiom problem), 3 a resource cap was
hit.
"""

import argparse
import sys

from .amenability import AmenabilityError
from .chains import ChainError, DEGREE_PATH_CAP
from .cohomology import CohomologyError, LP_VAR_CAP
from .groupoids import GroupoidError
from .homalg import HomalgError
from .modules import ModuleError
from .norms import NormCapError, NormError
from .workspace import (JOB_NAMES, WorkspaceError, load_workspace,
                        render_report, run_job)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3

_LIB_ERRORS = (ChainError, CohomologyError, AmenabilityError, HomalgError,
               GroupoidError, ModuleError, NormError)


def build_parser():
    p = argparse.ArgumentParser(
        prog="boundedcoh",
        description="Bounded cohomology of finite groupoids with exact "
                    "rational seminorms.")
    p.add_argument("--workspace", required=True, metavar="PATH",
                   help="JSON workspace file to load")
    p.add_argument("--job", choices=JOB_NAMES, default=None,
                   help="run this single job instead of the workspace's list")
    p.add_argument("--degree", type=int, default=3,
                   help="default top degree for jobs (default 3)")
    p.add_argument("--path-cap", type=int, default=DEGREE_PATH_CAP,
                   help="refuse basis constructions past this many paths")
    p.add_argument("--lp-var-cap", type=int, default=LP_VAR_CAP,
                   help="refuse seminorm programs past this many variables")
    p.add_argument("--report", metavar="PATH", default=None,
                   help="write the JSON report here instead of stdout")
    return p


def _is_cap(err):
    return isinstance(err, NormCapError) or "cap is" in str(err)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        ws = load_workspace(args.workspace)
    except WorkspaceError as err:
        print("workspace error: %s" % err, file=sys.stderr)
        return EXIT_INPUT
    if args.job is not None:
        specs = [{"job": args.job}]
    else:
        specs = ws.jobs if ws.jobs else [{"job": "verify-all"}]
    reports = []
    for i, spec in enumerate(specs):
        where = "jobs[%d]" % i
        try:
            reports.append(run_job(ws, spec, args.degree, args.path_cap,
                                   args.lp_var_cap, where))
        except WorkspaceError as err:
            print("workspace error: %s" % err, file=sys.stderr)
            return EXIT_INPUT
        except _LIB_ERRORS as err:
            if _is_cap(err):
                print("resource cap: %s (%s)" % (err, where), file=sys.stderr)
                return EXIT_CAP
            print("audit failure: %s (%s)" % (err, where), file=sys.stderr)
            return EXIT_FAIL
    text = render_report(reports)
    if args.report is not None:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if all(r["pass"] for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
