"""`hubsolve` command line: solve, reduce, gadget and selfcheck.

Reports are `key=value` lines. Exit codes: 0 success or YES, 1 NO or
infeasible, 2 usage or input error, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import acceptance
from .coloring import (check_solution, list_coloring_search, solve_coloring, solve_coloring_ed,
                       solve_coloring_vd)
from .domset import (is_dominating, reduce_hittingset_to_domset, reduce_setcover_to_domset,
                     solve_domset_hub)
from .errors import CapExceeded, HubsolveError
from .gadgets import (build_forbid, build_neq, build_one_realizer, build_or,
                      build_or2, build_or2_pow, build_relation, parse_gadget, parse_relation,
                      serialize_gadget, verify_realization)
from .graph import (Graph, ListAssignment, greedy_hub, parse_graph, parse_hub, parse_lists,
                    serialize_graph, serialize_hub, validate_hub)
from .maxcsp import covering_family, group_sat, parse_cnf, parse_maxcsp, serialize_maxcsp, \
    structured_split
from .setsys import REDUCTIONS, elems_of, oracle_set, parse_setsys, serialize_setsys
from .triangles import (build_trieq, is_packing, reduce_partition_to_triangle,
                        solve_triangle_packing)
from .wildcard import parse_wcsp, solve_wildcard

YES, NO, USAGE, CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, text: str):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def _emit(stream, **kv):
    for k, v in kv.items():
        print(f"{k}={v}", file=stream)


def _load_hub(args, g: Graph):
    if args.hub:
        hub, sigma, delta = parse_hub(_read(args.hub))
        return validate_hub(g, hub, sigma, delta)
    return validate_hub(g, greedy_hub(g, args.sigma, args.delta), args.sigma, args.delta)


def _ids(vs) -> str:
    return ",".join(str(v + 1) for v in sorted(vs)) or "-"


def _coloring_str(assignment: dict) -> str:
    return ",".join(f"{v + 1}:{c}" for v, c in sorted(assignment.items())) or "-"


# ---------------------------------------------------------------- solve

def _solve_coloring_family(args, out) -> int:
    g = parse_graph(_read(args.graph))
    h = _load_hub(args, g)
    q = args.q
    if q is None or q < 1:
        raise UsageError("--q must be a positive integer")
    L = parse_lists(_read(args.lists), g.n, q) if args.lists else ListAssignment.full(g.n, q)
    kind = args.problem
    if kind in ("coloring", "list-coloring"):
        if kind == "coloring" and args.lists:
            raise UsageError("--lists applies to list-coloring and vd only")
        if kind == "coloring":
            sol = solve_coloring(g, h, q)
            leaves = list_coloring_search(g, L, h)[1] if args.stats else None
        else:
            sol, leaves = list_coloring_search(g, L, h)
        if sol is not None:
            assert check_solution(g, sol, L, q)
        _emit(out, verdict="yes" if sol else "no")
        if args.stats:
            _emit(out, leaves=leaves)
        if sol:
            _emit(out, witness=_coloring_str(sol.assignment))
        return YES if sol else NO
    if kind == "vd":
        sol = solve_coloring_vd(g, L, h)
        assert check_solution(g, sol, L)
        deleted = _ids(sol.deleted_vertices)
    else:
        if args.lists:
            raise UsageError("--lists applies to list-coloring and vd only")
        sol = solve_coloring_ed(g, h, q)
        assert check_solution(g, sol, q=q)
        deleted = ",".join(f"{u + 1}-{v + 1}" for u, v in sorted(sol.deleted_edges)) or "-"
    ok = args.budget is None or sol.cost <= args.budget
    _emit(out, verdict="yes" if ok else "no", cost=sol.cost)
    if args.stats:
        _emit(out, leaves=sol.leaves)
    _emit(out, deleted=deleted, witness=_coloring_str(sol.assignment))
    return YES if ok else NO


def _solve_wcsp(args, out) -> int:
    csp = parse_wcsp(_read(args.input))
    res = solve_wildcard(csp)
    vals = ",".join("x" if v is None else str(v) for v in res.assignment.values) or "-"
    _emit(out, verdict="yes", cost=res.cost)
    if args.stats:
        _emit(out, leaves=res.leaves)
    _emit(out, witness=vals)
    return YES


def _solve_setsys(args, out) -> int:
    inst = parse_setsys(_read(args.input))
    res = oracle_set(inst, cap=args.cap)
    _emit(out, verdict="yes" if res.verdict else "no", value=res.value)
    if res.verdict:
        _emit(out, witness=";".join(",".join(map(str, elems_of(s))) for s in res.witness) or "-")
    return YES if res.verdict else NO


def _solve_triangle(args, out) -> int:
    g = parse_graph(_read(args.graph))
    h = _load_hub(args, g)
    res = solve_triangle_packing(g, h, args.target, args.capacity, args.splitter, args.seed)
    if res.verdict:
        assert is_packing(res.packing, g) and len(res.packing) >= args.target
    _emit(out, verdict="yes" if res.verdict else "no", members=res.members_tried)
    if res.verdict:
        _emit(out, witness=";".join(_ids(t) for t in res.packing) or "-")
    return YES if res.verdict else NO


def _solve_domset(args, out) -> int:
    g = parse_graph(_read(args.graph))
    h = _load_hub(args, g)
    res = solve_domset_hub(g, h)
    assert is_dominating(g, res.witness)
    ok = args.budget is None or res.size <= args.budget
    _emit(out, verdict="yes" if ok else "no", cost=res.size, witness=_ids(res.witness))
    return YES if ok else NO


# ---------------------------------------------------------------- reduce

def _set_family(text: str) -> tuple[int, list]:
    inst = parse_setsys(text)
    return inst.n, [elems_of(s) for s in inst.family]


def _reduce(args, out) -> int:
    name = args.name
    if name in REDUCTIONS:
        if not args.out_dir:
            raise UsageError("--out-dir is required for set-system reductions")
        inst = parse_setsys(_read(args.input))
        src, fn = REDUCTIONS[name]
        if inst.variant != src:
            raise UsageError(f"--input has variant {inst.variant}, {name} expects {src}")
        params = {k: v for k, v in (("b", args.b), ("c", args.c)) if v is not None}
        k = 0
        for k, j in enumerate(fn(inst, **params), start=1):
            _write(str(Path(args.out_dir) / f"{name}-{k}.txt"), serialize_setsys(j))
        _emit(out, instances=k, out_dir=args.out_dir)
        return YES
    if name == "group-sat":
        if args.p is None:
            raise UsageError("--p is required for group-sat")
        res = group_sat(parse_cnf(_read(args.input)), args.p)
        _write(_need(args.out, "--out"), serialize_maxcsp(res))
        _emit(out, variables=res.n, domain=res.d, constraints=len(res.constraints), written=args.out)
        return YES
    if name == "cover-family":
        for flag in ("dprime", "d", "n"):
            if getattr(args, flag) is None:
                raise UsageError(f"--{flag} is required for cover-family")
        fam = covering_family(args.dprime, args.d, args.n, args.m or 1, args.exact_block)
        lines = [" | ".join(",".join(map(str, sorted(D))) for D in member) for member in fam]
        if args.out:
            _write(args.out, "\n".join(lines) + "\n")
        _emit(out, size=len(fam))
        return YES
    if name == "structured-split":
        if args.b is None or not args.out_dir:
            raise UsageError("--b and --out-dir are required for structured-split")
        inst = parse_maxcsp(_read(args.input))
        k = 0
        for k, (sig, j) in enumerate(structured_split(inst, args.b), start=1):
            _write(str(Path(args.out_dir) / f"split-{'-'.join(map(str, sig))}.txt"),
                   serialize_maxcsp(j))
        _emit(out, instances=k, out_dir=args.out_dir)
        return YES
    if name == "partition-to-triangle":
        g, h = reduce_partition_to_triangle(parse_setsys(_read(args.input)))
    elif name == "setcover-to-domset":
        g, h = reduce_setcover_to_domset(*_set_family(_read(args.input)))
    elif name == "hittingset-to-domset":
        g, h = reduce_hittingset_to_domset(*_set_family(_read(args.input)))
    else:
        raise UsageError(f"unknown reduction {name!r}")
    path = _need(args.out, "--out")
    _write(path, serialize_graph(g))
    _write(path + ".hub", serialize_hub(h.hub, h.sigma, h.delta))
    _emit(out, vertices=g.n, edges=g.m, hub=len(h.hub), written=path, hub_written=path + ".hub")
    return YES


def _need(value, flag):
    if not value:
        raise UsageError(f"{flag} is required")
    return value


# ---------------------------------------------------------------- gadget

def _gadget(args, out) -> int:
    if args.action == "trieq":
        gad = build_trieq(_need(args.r, "--r"))
        text = serialize_graph(gad.graph).rstrip("\n") + "\nportal " + \
            " ".join(str(v + 1) for v in gad.portals) + "\n"
        _write(_need(args.out, "--out"), text)
        _emit(out, vertices=gad.graph.n, edges=gad.graph.m, portals=len(gad.portals), written=args.out)
        return YES
    if args.action == "build":
        gad = _build_named(args)
        _write(_need(args.out, "--out"), serialize_gadget(gad))
        _emit(out, vertices=gad.n, edges=len(gad.edges), portals=gad.arity, written=args.out)
        return YES
    gad = parse_gadget(_read(_need(args.gadget, "--gadget")))
    R = parse_relation(_read(_need(args.relation, "--relation")))
    rep = verify_realization(gad, R)
    _emit(out, realizes="yes" if rep.realizes else "no",
          k="-" if rep.k is None else int(rep.k),
          omega="-" if rep.omega is None else int(rep.omega))
    ok = rep.realizes
    if args.omega is not None:
        ok = rep.omega_realizes(args.omega)
        _emit(out, omega_realizes="yes" if ok else "no")
    return YES if ok else NO


def _build_named(args):
    name = args.name
    if name == "neq":
        return build_neq()
    if name == "or2":
        return build_or2()
    if name == "or2pow":
        return build_or2_pow(args.omega or 1)
    if name == "or":
        return build_or(_need(args.p, "--p"), args.omega)
    if name == "forbid":
        d = tuple(int(x) for x in _need(args.tuple, "--tuple").split(","))
        return build_forbid(d)
    R = parse_relation(_read(_need(args.relation, "--relation")))
    if name == "relation":
        return build_relation(R)
    if name == "one-realizer":
        return build_one_realizer(R, args.omega or 1)
    raise UsageError(f"unknown gadget {name!r}")


# ---------------------------------------------------------------- selfcheck

def _selfcheck(args, out) -> int:
    ok = True
    only = args.only or sorted(acceptance.CRITERIA)
    for k in only:
        if k not in acceptance.CRITERIA:
            raise UsageError(f"--only: no criterion {k}")
        res = acceptance.run_criterion(k, args.seed, args.level)
        print(res.line(args.timing), file=out, flush=True)
        ok &= res.passed
    _emit(out, selfcheck="pass" if ok else "fail", level=args.level, seed=args.seed)
    return YES if ok else NO


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hubsolve", description="Hub-parameterized exact solvers, reductions and gadgets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="run a solver")
    s.add_argument("problem", choices=["coloring", "list-coloring", "vd", "ed", "wcsp", "setsys",
                                       "triangle", "domset"])
    s.add_argument("--graph")
    s.add_argument("--hub")
    s.add_argument("--sigma", type=int, default=3, help="greedy hub bound when --hub is absent")
    s.add_argument("--delta", type=int, default=3, help="greedy hub bound when --hub is absent")
    s.add_argument("--lists")
    s.add_argument("--q", type=int)
    s.add_argument("--budget", type=int)
    s.add_argument("--stats", action="store_true")
    s.add_argument("--input")
    s.add_argument("--cap", type=int, default=24, help="universe cap for the set-system DP")
    s.add_argument("--target", type=int)
    s.add_argument("--capacity", type=int)
    s.add_argument("--splitter", choices=["exhaustive", "mc"], default="exhaustive")
    s.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("reduce", help="emit reduced instances")
    r.add_argument("name")
    r.add_argument("--input")
    r.add_argument("--out")
    r.add_argument("--out-dir")
    r.add_argument("--b", type=int)
    r.add_argument("--c", type=int)
    r.add_argument("--p", type=int)
    r.add_argument("--dprime", type=int)
    r.add_argument("--d", type=int)
    r.add_argument("--n", type=int)
    r.add_argument("--m", type=int)
    r.add_argument("--exact-block", action="store_true")

    g = sub.add_parser("gadget", help="build or verify gadgets")
    g.add_argument("action", choices=["build", "verify", "trieq"])
    g.add_argument("name", nargs="?")
    g.add_argument("--r", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--tuple")
    g.add_argument("--relation")
    g.add_argument("--gadget")
    g.add_argument("--omega", type=int)
    g.add_argument("--out")

    c = sub.add_parser("selfcheck", help="run the acceptance suites")
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--level", choices=list(acceptance.LEVELS), default="quick")
    c.add_argument("--only", type=int, nargs="+")
    c.add_argument("--timing", action="store_true", help="append seconds to each line")
    return p


def _dispatch(args, out) -> int:
    if args.command == "selfcheck":
        return _selfcheck(args, out)
    if args.command == "gadget":
        if args.action == "build" and not args.name:
            raise UsageError("gadget build needs a gadget name")
        return _gadget(args, out)
    if args.command == "reduce":
        if args.name not in ("cover-family",):
            _need(args.input, "--input")
        return _reduce(args, out)
    prob = args.problem
    if prob in ("coloring", "list-coloring", "vd", "ed"):
        _need(args.graph, "--graph")
        return _solve_coloring_family(args, out)
    if prob == "wcsp":
        _need(args.input, "--input")
        return _solve_wcsp(args, out)
    if prob == "setsys":
        _need(args.input, "--input")
        return _solve_setsys(args, out)
    if prob == "triangle":
        _need(args.graph, "--graph")
        if args.target is None or args.capacity is None:
            raise UsageError("--target and --capacity are required")
        return _solve_triangle(args, out)
    _need(args.graph, "--graph")
    return _solve_domset(args, out)


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args, out)
    except UsageError as e:
        _emit(out, error=f"usage: {e}")
        return USAGE
    except CapExceeded as e:
        _emit(out, error=f"cap exceeded: {e}")
        return CAP
    except (HubsolveError, ValueError) as e:
        _emit(out, error=str(e))
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
