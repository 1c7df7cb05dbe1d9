"""Command-line front end.

Data goes to stdout (or ``--output``), diagnostics to stderr. Exit status:
0 success, 1 verification or precondition failure, 2 budget exhausted,
64 usage or input error.
"""

from __future__ import annotations

import argparse
import io
import json
import random
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .cleanup import peel
from .extremal import bes_family, chain_check, exact_max, results_csv
from .freeness import DEFAULT_BUDGET, ConstraintFamily, is_family_free, property_family, witness_family
from .hypergraph import ParseError, read, serialize
from .increment import crucial_constants, density_increment
from .limits import bes_bounds, known_limit, limits_table
from .packing import greedy_pack

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot encode {type(x).__name__}")


class Out:
    """Writes data rows in the requested format; talk() goes to stderr."""

    def __init__(self, args, stream):
        self.fmt = args.format
        self.quiet = args.quiet
        self.stream = stream

    def text(self, line: str = ""):
        self.stream.write(line + "\n")

    def rows(self, rows: list[dict], text_line=None):
        if self.fmt == "json-lines":
            for row in rows:
                self.stream.write(json.dumps(row, default=_jsonable, sort_keys=False) + "\n")
        elif self.fmt == "csv":
            self.stream.write(results_csv([{k: _cell(v) for k, v in row.items()} for row in rows]))
        else:
            for row in rows:
                self.text(text_line(row) if text_line else " ".join(f"{k}={_cell(v)}" for k, v in row.items()))

    def talk(self, msg: str):
        if not self.quiet:
            sys.stderr.write(msg + "\n")


def _cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(_cell(x)) for x in v)
    if v is None:
        return ""
    return str(v)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing {', '.join(missing)}")


def _load(args):
    _need(args, "input")
    try:
        return read(args.input)
    except ParseError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    except OSError as exc:
        raise UsageError(f"{args.input}: {exc.strerror}") from None


def _write_graph(args, H):
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(serialize(H))


def _family(args, r: int) -> ConstraintFamily:
    """--v/--e gives one constraint; --k/--t/--e the constrained family;
    --k/--e alone the sparse-limit constraint plus the lower-level ones."""
    if args.v is not None:
        _need(args, "e")
        return ConstraintFamily.of((args.v, args.e))
    _need(args, "k", "e")
    if args.t is not None:
        return property_family(r, args.k, args.e, args.t)
    if args.command == "solve":
        return bes_family(r, args.k, args.e)
    return witness_family(r, args.k, args.e)


# ------------------------------------------------------------- subcommands


def cmd_check(args, out: Out) -> int:
    H = _load(args)
    fam = _family(args, H.r)
    rep = is_family_free(H, fam, args.budget)
    status = "free" if rep.free else ("budget-exhausted" if rep.exhausted and all(
        v.free or v.exhausted for v in rep.verdicts) else "violation")
    rows = [v.record(H) for v in rep.verdicts]
    if rep.codegree is not None:
        cd = rep.codegree
        rows.append({"codegree_k": cd.rule.k, "codegree_e": cd.rule.e,
                     "status": "free" if cd.satisfied else "violation",
                     "subset": list(cd.subset) if cd.subset else None, "codegree": cd.codegree})
    if out.fmt == "text":
        out.text(status)
        for v in rep.verdicts:
            if not v.free:
                edges = " | ".join(" ".join(map(str, e)) for e in v.witness.edges(H)) if v.witness else ""
                out.text(f"{v.constraint} {v.status}" + (f": {edges}" if edges else ""))
        if rep.codegree is not None and not rep.codegree.satisfied:
            cd = rep.codegree
            out.text(f"codegree of {list(cd.subset)} is {cd.codegree}, needs 0 or at least {cd.rule.e}")
    else:
        out.rows(rows)
    out.talk(f"check: {rep.nodes} search nodes")
    if status == "free":
        return EXIT_OK
    return EXIT_BUDGET if status == "budget-exhausted" else EXIT_FAIL


def cmd_peel(args, out: Out) -> int:
    H = _load(args)
    _need(args, "k", "e")
    rng = random.Random(args.seed) if args.order == "random" else None
    G, log = peel(H, args.k, args.e, rng=rng)
    _write_graph(args, G)
    rows = log.records()
    if out.fmt == "text":
        for x in log:
            out.text(f"remove {' '.join(map(str, x.edge))} via [{' '.join(map(str, x.subset))}] codegree {x.codegree}")
        out.text(f"kept {len(G)} of {len(H)} edges")
    else:
        out.rows(rows)
    return EXIT_OK


def cmd_extract(args, out: Out) -> int:
    H = _load(args)
    _need(args, "t", "e")
    k = 2 if args.k is None else args.k
    G, trace = density_increment(H, args.t, args.e, k=k, budget=args.budget)
    _write_graph(args, G)
    if out.fmt == "csv":
        out.stream.write(trace.to_csv())
    elif out.fmt == "json-lines":
        out.rows([trace.header()] + [s.record() for s in trace.steps])
    else:
        for key, val in trace.header().items():
            out.text(f"{key}={_cell(val)}")
        out.text(trace.to_csv().rstrip("\n"))
    if trace.beyond_k2:
        out.talk("extract: k != 2, only the bookkeeping is meaningful")
    if trace.diagnostic:
        out.talk(f"extract: {trace.diagnostic}")
    if trace.status == "budget-exhausted":
        return EXIT_BUDGET
    return EXIT_OK if trace.status == "complete" else EXIT_FAIL


def cmd_solve(args, out: Out) -> int:
    _need(args, "n", "r")
    fam = _family(args, args.r)
    if args.threads and args.threads > 1:
        out.talk("solve: running single-threaded; --threads does not change the result")
    res = exact_max(args.n, args.r, fam, args.budget)
    _write_graph(args, res.witness)
    row = {"n": args.n, "r": args.r,
           "v": ";".join(str(c.v) for c in fam.constraints),
           "e": ";".join(str(c.e) for c in fam.constraints),
           "optimum": res.optimum, "nodes": res.nodes, "status": res.status}
    if out.fmt == "text":
        out.text(f"optimum {res.optimum}")
        out.text(f"status {res.status}")
    else:
        out.rows([row])
    out.talk(f"solve: {res.nodes} nodes")
    return EXIT_OK if res.proven else EXIT_BUDGET


def cmd_construct(args, out: Out) -> int:
    _need(args, "n", "r", "e")
    H, rep = greedy_pack(args.n, args.r, args.e, seed=args.seed, order=args.order or "random",
                         check_maximal=args.maximal, budget=args.budget)
    _write_graph(args, H)
    row = rep.record()
    row["ratio"] = f"{rep.ratio:.6f}"
    row["target"] = str(rep.target)
    if out.fmt == "text":
        out.text(f"edges {rep.edges}")
        out.text(f"target {rep.target} ratio {rep.ratio:.6f}")
        for v in rep.freeness.verdicts:
            out.text(f"{v.constraint} {v.status}")
        if rep.maximal is not None:
            out.text(f"maximal {str(rep.maximal).lower()}")
    else:
        out.rows([row])
    if rep.freeness.exhausted:
        return EXIT_BUDGET
    return EXIT_OK if rep.verified and rep.maximal is not False else EXIT_FAIL


def cmd_limits(args, out: Out) -> int:
    if args.what == "constants":
        _need(args, "r")
        c = crucial_constants(args.r)
        row = {"r": c.r, "alpha_squared": c.alpha_squared,
               "alpha": c.alpha_exact if c.alpha_exact is not None else repr(c.alpha),
               "delta": c.delta, "b": c.b}
        out.rows([{k: _cell(v) for k, v in row.items()}])
        return EXIT_OK
    if args.what == "bounds":
        _need(args, "n", "r", "v", "e")
        b = bes_bounds(args.n, args.r, args.v, args.e)
        out.rows([{"n": args.n, "r": args.r, "v": args.v, "e": args.e,
                   "lower_exponent": str(b.lower_exponent), "upper_exponent": b.upper_exponent,
                   "lower_value": repr(b.lower_value), "upper_value": repr(b.upper_value)}])
        return EXIT_OK
    if None not in (args.r, args.k, args.e):
        recs = [known_limit(args.r, args.k, args.e)]
    else:
        rs = [args.r] if args.r is not None else range(3, 9)
        ks = [args.k] if args.k is not None else None
        es = [args.e] if args.e is not None else (2, 3, 4, 5)
        recs = limits_table(rs, ks, es)

    def line(row):
        flags = f" [{row['flags']}]" if row["flags"] else ""
        return f"{row['r']} {row['k']} {row['e']} {row['value'] or '-'}{flags}"

    out.rows([rec.row() for rec in recs], line)
    return EXIT_OK


def cmd_chain(args, out: Out) -> int:
    _need(args, "n", "r", "e")
    k = 2 if args.k is None else args.k
    rep = chain_check(args.n, args.r, args.e, k=k, budget=args.budget)
    rows = rep.rows()
    if out.fmt == "text":
        for row in rows:
            name = "f" if row["which"] == "f" else f"f^({row['which']})"
            out.text(f"{name} {row['value']} {row['status']}")
        out.text(f"monotone {str(rep.monotone).lower()}")
        out.text(f"case1 {str(rep.case1).lower()}")
    else:
        out.rows(rows)
    if rep.status != "proven-optimal":
        return EXIT_BUDGET
    return EXIT_OK if rep.ok else EXIT_FAIL


COMMANDS = {
    "check": (cmd_check, "verify freeness of a hypergraph file"),
    "peel": (cmd_peel, "remove edges until (k-1)-codegrees are 0 or at least e"),
    "extract": (cmd_extract, "run the density-increment deletion loop"),
    "solve": (cmd_solve, "exact maximum edge count at small n"),
    "construct": (cmd_construct, "greedy packing free at (tr - 2(t-1), t) for 2 <= t <= e"),
    "limits": (cmd_limits, "known limits, exponent bounds and constants"),
    "chain": (cmd_chain, "check f >= f^(e-1) >= ... >= f^(2) at small n"),
}


def _parser() -> _Parser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", help="key=value file; command-line flags take precedence")
    g.add_argument("--input", help="hypergraph text file")
    g.add_argument("--output", help="write the resulting hypergraph here")
    for name in ("n", "r", "v", "e", "k", "t"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--seed", type=int, default=0, help="random seed (default %(default)s)")
    g.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget (default %(default)s)")
    g.add_argument("--format", choices=("text", "csv", "json-lines"), default="text")
    g.add_argument("--threads", type=int, default=1, help="accepted for batch scripts; searches run single-threaded")
    g.add_argument("--quiet", action="store_true", help="no progress messages")
    g.add_argument("--order", choices=("lex", "random"), help="peel/construct edge order")

    p = _Parser(prog="sparsehyper", description="Tools for sparse r-uniform hypergraphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (fn, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(func=fn)
        if name == "construct":
            sp.add_argument("--maximal", action="store_true", help="also re-scan all candidates for maximality")
        if name == "limits":
            sp.add_argument("--what", choices=("limit", "bounds", "constants"), default="limit")
    return p


def _read_config(path: str) -> dict:
    out = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def _apply_config(parser: _Parser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    conf = _read_config(args.config)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[args.command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, val in conf.items():
        act = actions.get(key)
        if act is None or key in ("config", "help", "func"):
            raise UsageError(f"{args.config}: unknown key {key!r}")
        if isinstance(act, argparse._StoreTrueAction):
            defaults[key] = val.lower() in ("1", "true", "yes", "on")
            continue
        try:
            conv = act.type(val) if act.type else val
        except ValueError:
            raise UsageError(f"{args.config}: bad value for {key}: {val!r}") from None
        if act.choices and conv not in act.choices:
            raise UsageError(f"{args.config}: {key} must be one of {', '.join(map(str, act.choices))}")
        defaults[key] = conv
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def run(argv: Optional[list[str]] = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = _parser()
    try:
        args = _apply_config(parser, list(sys.argv[1:] if argv is None else argv))
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        buf = io.StringIO()
        code = args.func(args, Out(args, buf))
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    stdout.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
