"""Command-line front end.

Exit status: 0 success, 1 verification failed or nothing found, 2 usage or
input error.  Inputs default to stdin and outputs to stdout; ``--in`` and
``--out`` override.  ``NEIGHBORLY_SEARCH_BUDGET`` overrides the default search
budget (100000 nodes).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .chirotope import (
    Chirotope,
    VectorConfiguration,
    chirotope_from_configuration,
    dual,
    gale_dual_configuration,
    gp_violation,
)
from .constructions import (
    ConstructionLog,
    cyclic,
    default_p_program,
    gale_sew,
    gale_sewn_pipeline,
    neighborly_completion,
    openness_probe,
    replay,
    sew,
)
from .errors import ConstructionFailedError, NeighborlyError, ParseError
from .extension import LexProgram, fiber_polyhedron, lex_extend_geometric
from .linalg import format_scalar, parse_scalar
from .polytope import Flag, face_lattice, find_universal_flags, neighborly_violation, non_vertices, positive_circuit

BUDGET_ENV = "NEIGHBORLY_SEARCH_BUDGET"
DEFAULT_BUDGET = 10**5


class UsageError(Exception):
    pass


def search_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _read(args) -> str:
    if args.inp in (None, "-"):
        return sys.stdin.read()
    with open(args.inp) as fh:
        return fh.read()


def _write(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(args.out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, args.out)


def _write_file(path: str, text: str):
    with open(path, "w") as fh:
        fh.write(text)


def _config(args) -> VectorConfiguration:
    return VectorConfiguration.from_text(_read(args))


def _chirotope_input(args) -> Chirotope:
    text = _read(args)
    if getattr(args, "config", False):
        return chirotope_from_configuration(VectorConfiguration.from_text(text))
    return Chirotope.from_text(text)


def _program(text: str) -> LexProgram:
    try:
        return LexProgram.parse(text)
    except ParseError as exc:
        raise UsageError(f"--prog: {exc}") from None


def cmd_cyclic(args):
    params = [parse_scalar(t) for t in args.params.split(",")] if args.params else None
    v = cyclic(args.d, args.n, params)
    _write(args, v.to_text())
    return 0


def cmd_chirotope(args):
    c = chirotope_from_configuration(_config(args))
    _write(args, face_lattice(c).to_text() if args.lattice else c.to_text())
    return 0


def cmd_dual(args):
    if args.gale:
        _write(args, gale_dual_configuration(_config(args)).to_text())
    else:
        _write(args, dual(_chirotope_input(args)).to_text())
    return 0


def cmd_extend(args):
    v, eps = lex_extend_geometric(_config(args), _program(args.prog))
    print(f"epsilon {format_scalar(eps)}", file=sys.stderr)
    _write(args, v.to_text())
    return 0


def cmd_sew(args):
    v = _config(args)
    if args.flag is not None:
        flag = Flag.parse(args.flag)
    else:
        found = find_universal_flags(chirotope_from_configuration(v), budget=search_budget())
        if not found.flags:
            print("no universal flag found" + (" (budget exhausted)" if found.truncated else ""), file=sys.stderr)
            return 1
        flag = found.flags[0]
    print(f"flag {flag}", file=sys.stderr)
    _write(args, sew(v, flag).to_text())
    return 0


def cmd_galesew(args):
    c = _chirotope_input(args)
    prog = _program(args.prog) if args.prog else default_p_program(c)
    _write(args, gale_sew(c, prog).to_text())
    return 0


def cmd_pipeline(args):
    progs = [_program(p) for p in args.prog] if args.prog else None
    c, log, _ = gale_sewn_pipeline(args.m, args.k, progs)
    if args.log:
        _write_file(args.log, log.to_text())
    _write(args, c.to_text())
    return 0


def cmd_complete(args):
    budget = args.budget if args.budget is not None else search_budget()
    res = neighborly_completion(_config(args), budget=budget)
    if not res.found:
        print(f"not found within budget {budget} (this is not a refutation)", file=sys.stderr)
        return 1
    if args.log:
        _write_file(args.log, res.log.to_text())
    _write(args, res.chirotope.to_text())
    return 0


def cmd_verify(args):
    c = _chirotope_input(args)
    checks = [k for k in ("acyclic", "uniform", "gp", "neighborly") if getattr(args, k)]
    if not checks:
        raise UsageError("verify needs at least one of --neighborly, --uniform, --gp, --acyclic")
    lines = []
    for check in checks:
        if check == "uniform":
            bad = next((b for b, s in c.bases() if s == 0), None)
            witness = None if bad is None else f"zero basis {' '.join(map(str, bad))}"
        elif check == "gp":
            v = gp_violation(c)
            witness = None if v is None else f"S={' '.join(map(str, v[0]))} abcd={' '.join(map(str, v[1]))}"
        elif check == "acyclic":
            x = positive_circuit(c)
            witness = None if x is None else f"positive circuit {' '.join(map(str, sorted(x.positive())))}"
        else:
            x = positive_circuit(c)
            if x is not None:
                witness = f"positive circuit {' '.join(map(str, sorted(x.positive())))}"
            else:
                s = next(iter(non_vertices(c)), None)
                s = frozenset([s]) if s is not None else neighborly_violation(c)
                witness = None if s is None else f"non-face {' '.join(map(str, sorted(s)))}"
        if witness is not None:
            _write(args, "\n".join(lines + [f"{check} FAILED {witness}"]))
            return 1
        lines.append(f"{check} ok")
    _write(args, "\n".join(lines))
    return 0


def cmd_fiber(args):
    _write(args, fiber_polyhedron(_config(args), _program(args.prog)).to_text())
    return 0


def cmd_probe(args):
    report = openness_probe(_config(args), args.trials, parse_scalar(args.delta), seed=args.seed)
    _write(args, report.to_text())
    return 0


def cmd_replay(args):
    _, c = replay(ConstructionLog.from_text(_read(args)))
    _write(args, c.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="neighborly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help, io=True):
        p = sub.add_parser(name, help=help)
        if io:
            p.add_argument("--in", dest="inp", metavar="PATH", help="input file (default stdin)")
        p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
        p.set_defaults(func=func)
        return p

    p = verb("cyclic", cmd_cyclic, "moment-curve configuration", io=False)
    p.add_argument("d", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--params", help="comma-separated increasing rationals (default 0..n-1)")

    p = verb("chirotope", cmd_chirotope, "chirotope of a configuration")
    p.add_argument("--lattice", action="store_true", help="print the face lattice instead")

    p = verb("dual", cmd_dual, "dual chirotope (or Gale transform with --gale)")
    p.add_argument("--config", action="store_true", help="input is a configuration")
    p.add_argument("--gale", action="store_true", help="configuration in, Gale dual configuration out")

    p = verb("extend", cmd_extend, "certified lexicographic extension of a configuration")
    p.add_argument("--prog", required=True, help='e.g. "4+,1-,6+"')

    p = verb("sew", cmd_sew, "sew a vertex through a universal flag")
    p.add_argument("--flag", help='faces as comma-joined labels, e.g. "1,2 1,2,3,4" (default: first universal flag)')

    p = verb("galesew", cmd_galesew, "Gale sewing step on a dual chirotope")
    p.add_argument("--prog", help="p program (default: first r labels, all +)")
    p.add_argument("--config", action="store_true", help="input is a configuration")

    p = verb("pipeline", cmd_pipeline, "Gale-sewn polytope from a polygon", io=False)
    p.add_argument("--m", type=int, required=True, help="seed polygon size")
    p.add_argument("--k", type=int, required=True, help="number of Gale sewing steps")
    p.add_argument("--prog", action="append", help="p program for a step (repeatable)")
    p.add_argument("--log", metavar="PATH", help="write the construction log here")

    p = verb("complete", cmd_complete, "neighborly completion of a rank-3 configuration")
    p.add_argument("--budget", type=int, help=f"node budget (default ${BUDGET_ENV} or {DEFAULT_BUDGET})")
    p.add_argument("--log", metavar="PATH", help="write the construction log here")

    p = verb("verify", cmd_verify, "check properties of a chirotope")
    for name in ("neighborly", "uniform", "gp", "acyclic"):
        p.add_argument(f"--{name}", action="store_true")
    p.add_argument("--config", action="store_true", help="input is a configuration")

    p = verb("fiber", cmd_fiber, "fiber polyhedron of a lexicographic extension")
    p.add_argument("--prog", required=True)

    p = verb("probe", cmd_probe, "perturbation stability of a uniform realization")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--delta", default="1/1000000")
    p.add_argument("--seed", type=int, default=0)

    verb("replay", cmd_replay, "replay a construction log")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstructionFailedError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return 1
    except (NeighborlyError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
