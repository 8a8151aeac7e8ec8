"""CSP with wildcard: values 1..q plus a wildcard ×, monotone cost tables.

Tables are dense lists indexed by a mixed-radix code of the scope
assignment. Digit k < q stands for color k+1 and digit q for ×; the first
scope variable is the most significant digit. Public assignments use
1..q and None for ×.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .coloring import ColoringSolution, _local_vd
from .errors import InstanceTooLarge, ParseError, WildcardPropertyViolated
from .graph import Graph, HubDecomposition, ListAssignment

WILD = None


@dataclass(frozen=True)
class Constraint:
    scope: tuple
    table: tuple


@dataclass(frozen=True)
class WildcardCsp:
    n: int
    q: int
    constraints: tuple

    def __post_init__(self):
        for c in self.constraints:
            if len(set(c.scope)) != len(c.scope):
                raise ValueError("repeated variable in scope")
            if any(not 0 <= v < self.n for v in c.scope):
                raise ValueError("scope variable out of range")
            if len(c.table) != (self.q + 1) ** len(c.scope):
                raise ValueError("table length does not match scope")
            if any(x < 0 for x in c.table):
                raise ValueError("negative cost")

    @property
    def arity(self) -> int:
        return max((len(c.scope) for c in self.constraints), default=0)


@dataclass(frozen=True)
class WildcardAssignment:
    values: tuple
    norm: int
    total_cost: int


@dataclass(frozen=True)
class WildcardResult:
    assignment: WildcardAssignment
    cost: int
    leaves: int


def _digit(value, q):
    return q if value is None else value - 1


def _value(digit, q):
    return None if digit == q else digit + 1


def encode(digits: Sequence[int], q: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * (q + 1) + d
    return idx


def decode(idx: int, k: int, q: int) -> list:
    out = [0] * k
    for i in range(k - 1, -1, -1):
        idx, out[i] = divmod(idx, q + 1)
    return out


def total_cost(csp: WildcardCsp, values: Sequence) -> int:
    q = csp.q
    cost = sum(1 for v in values if v is None)
    for c in csp.constraints:
        cost += c.table[encode([_digit(values[v], q) for v in c.scope], q)]
    return cost


def make_assignment(csp: WildcardCsp, values: Sequence) -> WildcardAssignment:
    values = tuple(values)
    return WildcardAssignment(values, sum(1 for v in values if v is None), total_cost(csp, values))


def check_wildcard_property(csp: WildcardCsp) -> bool:
    q = csp.q
    for c in csp.constraints:
        k = len(c.scope)
        for idx, cost in enumerate(c.table):
            digits = decode(idx, k, q)
            for i, d in enumerate(digits):
                if d != q:
                    up = idx + (q - d) * (q + 1) ** (k - 1 - i)
                    if c.table[up] > cost:
                        return False
    return True


# ---------------------------------------------------------------- solver

def _project(scope, table, sub_scope, q):
    """Expand a table over sub_scope (a subset of scope) to the ordering of scope."""
    pos = [scope.index(v) for v in sub_scope]
    out = []
    for digits in product(range(q + 1), repeat=len(scope)):
        out.append(table[encode([digits[i] for i in pos], q)])
    return out


def _restrict(scope, table, fixed: dict, q):
    new_scope = tuple(v for v in scope if v not in fixed)
    out = []
    for digits in product(range(q + 1), repeat=len(new_scope)):
        it = iter(digits)
        full = [fixed[v] if v in fixed else next(it) for v in scope]
        out.append(table[encode(full, q)])
    return new_scope, out


class _Search:
    def __init__(self, q, r):
        self.q = q
        self.r = r
        self.leaves = 0

    def reduce(self, variables: set, cons: list):
        """Apply the reduction rules; returns (offset, dropped vars, variables, cons)."""
        q = self.q
        offset = 0
        dropped = {}
        cons = [(s, list(t)) for s, t in cons]
        changed = True
        while changed:
            changed = False
            keep = []
            for s, t in cons:
                if not s:
                    offset += t[0]
                    changed = True
                else:
                    keep.append((s, t))
            cons = keep
            for i in range(len(cons)):
                for j in range(len(cons)):
                    if i != j and set(cons[j][0]) <= set(cons[i][0]):
                        si, ti = cons[i]
                        add = _project(si, cons[j][1], cons[j][0], q)
                        cons[i] = (si, [a + b for a, b in zip(ti, add)])
                        del cons[j]
                        changed = True
                        break
                if changed:
                    break
            if changed:
                continue
            used = set().union(*(set(s) for s, _ in cons)) if cons else set()
            free = variables - used
            if free:
                variables = variables - free
                for v in free:
                    dropped[v] = 0
            for idx, (s, t) in enumerate(cons):
                if all(x == t[0] for x in t):
                    offset += t[0]
                    del cons[idx]
                    changed = True
                    break
        return offset, dropped, variables, cons

    def brute(self, variables, cons):
        q = self.q
        order = sorted(variables)
        best = None
        for digits in product(range(q + 1), repeat=len(order)):
            val = dict(zip(order, digits))
            cost = sum(1 for d in digits if d == q)
            for s, t in cons:
                cost += t[encode([val[v] for v in s], q)]
            if best is None or cost < best[0]:
                best = (cost, val)
        return best

    def solve(self, variables: set, cons: list):
        q = self.q
        offset, assigned, variables, cons = self.reduce(variables, cons)
        if len(variables) <= self.r:
            self.leaves += 1
            cost, val = self.brute(variables, cons)
            assigned.update(val)
            return offset + cost, assigned
        ci = max(range(len(cons)), key=lambda i: (len(cons[i][0]), -i))
        scope, table = cons[ci]
        k = len(scope)
        c_del = table[-1]
        fprime = None
        best_norm = -1
        for idx, cost in enumerate(table):
            if cost >= c_del + 1:
                norm = sum(1 for d in decode(idx, k, q) if d == q)
                if norm > best_norm:
                    best_norm, fprime = norm, idx
        fp = decode(fprime, k, q)
        pos = next(i for i, d in enumerate(fp) if d != q)
        f = list(fp)
        f[pos] = q
        f_idx = encode(f, q)
        # witness of the case-b split: f' strictly below f and no better after ×
        assert table[f_idx] + best_norm + 1 <= table[fprime] + best_norm
        others = [c for i, c in enumerate(cons) if i != ci]
        rest = variables - set(scope)
        best = None
        for idx in range(len(table)):
            if idx == fprime:
                continue
            digits = decode(idx, k, q)
            fixed = dict(zip(scope, digits))
            sub_cons = [_restrict(s, t, fixed, q) if set(s) & fixed.keys() else (s, t)
                        for s, t in others]
            here = table[idx] + sum(1 for d in digits if d == q)
            if best is not None and here >= best[0]:
                continue  # subtree costs are nonnegative
            sub_cost, sub_val = self.solve(rest, sub_cons)
            cost = here + sub_cost
            if best is None or cost < best[0]:
                best = (cost, {**sub_val, **fixed})
        assigned.update(best[1])
        return offset + best[0], assigned


def solve_wildcard(csp: WildcardCsp, r: Optional[int] = None, check: bool = True) -> WildcardResult:
    """Exact optimum by branch and reduce; leaves <= ((q+1)^r - 1)^ceil(n/r)."""
    if check and not check_wildcard_property(csp):
        raise WildcardPropertyViolated("cost tables are not monotone under ×")
    q = csp.q
    r = max(1, csp.arity) if r is None else max(r, csp.arity, 1)
    s = _Search(q, r)
    cons = [(c.scope, list(c.table)) for c in csp.constraints]
    cost, val = s.solve(set(range(csp.n)), cons)
    values = tuple(_value(val.get(v, 0), q) for v in range(csp.n))
    a = make_assignment(csp, values)
    assert a.total_cost == cost, (a.total_cost, cost)
    return WildcardResult(a, cost, s.leaves)


def reduce_wildcard(csp: WildcardCsp) -> tuple[int, WildcardCsp]:
    """Run the reduction rules once; the optimum of the input is offset + optimum of the result."""
    s = _Search(csp.q, max(1, csp.arity))
    cons = [(c.scope, list(c.table)) for c in csp.constraints]
    offset, _, _, cons = s.reduce(set(range(csp.n)), cons)
    return offset, WildcardCsp(csp.n, csp.q, tuple(Constraint(tuple(sc), tuple(t)) for sc, t in cons))


def oracle_wildcard(csp: WildcardCsp, cap: int = 2_000_000) -> tuple[WildcardAssignment, int]:
    q = csp.q
    if (q + 1) ** csp.n > cap:
        raise InstanceTooLarge(f"(q+1)^n = {(q + 1) ** csp.n} above cap")
    best = None
    for digits in product(range(q + 1), repeat=csp.n):
        values = [_value(d, q) for d in digits]
        cost = total_cost(csp, values)
        if best is None or cost < best[1]:
            best = (values, cost)
    return make_assignment(csp, best[0]), best[1]


# ---------------------------------------------------------------- VD reduction

def rho(lst: frozenset, value: int) -> int:
    """Surjection [q] -> lst: value c picks the c-th smallest color, clamped."""
    s = sorted(lst)
    return s[min(value, len(s)) - 1]


def _vd_csp(g: Graph, L: ListAssignment, h: HubDecomposition, hub_vars: list) -> WildcardCsp:
    q = L.q
    var = {x: i for i, x in enumerate(hub_vars)}
    cons = []
    for A in h.components:
        gamma = sorted({u for v in A for u in g.adj[v] if u in var})
        table = []
        for digits in product(range(q + 1), repeat=len(gamma)):
            fixed = {x: rho(L[x], d + 1) for x, d in zip(gamma, digits) if d != q}
            table.append(_local_vd(g, A, fixed, L)[0])
        cons.append(Constraint(tuple(var[x] for x in gamma), tuple(table)))
    big = len(hub_vars) + 1
    for u, v in g.sorted_edges:
        if u in var and v in var:
            table = []
            for du, dv in product(range(q + 1), repeat=2):
                clash = du != q and dv != q and rho(L[u], du + 1) == rho(L[v], dv + 1)
                table.append(big if clash else 0)
            cons.append(Constraint((var[u], var[v]), tuple(table)))
    return WildcardCsp(len(hub_vars), q, tuple(cons))


def vd_to_wildcard_csp(g: Graph, L: ListAssignment, h: HubDecomposition) -> WildcardCsp:
    """Variables are the hub vertices in increasing id order.

    One constraint per component over its hub neighbours, plus one binary
    constraint per hub edge that forbids equal decoded colors with cost p+1.
    """
    if any(not L[x] for x in h.hub):
        raise ValueError("hub vertex with empty list: delete it before reducing")
    return _vd_csp(g, L, h, sorted(h.hub))


def solve_coloring_vd_fast(g: Graph, L: ListAssignment, h: HubDecomposition) -> ColoringSolution:
    forced = {x for x in h.hub if not L[x]}
    hub_vars = sorted(h.hub - forced)
    csp = _vd_csp(g, L, h, hub_vars)
    res = solve_wildcard(csp, r=max(h.delta, 1))
    fixed = {}
    deleted = set(forced)
    for x, val in zip(hub_vars, res.assignment.values):
        if val is None:
            deleted.add(x)
        else:
            fixed[x] = rho(L[x], val)
    assignment = dict(fixed)
    for A in h.components:
        _, dele, col = _local_vd(g, A, fixed, L)
        deleted |= dele
        assignment.update(col)
    sol = ColoringSolution(assignment, frozenset(deleted), cost=len(deleted), leaves=res.leaves)
    assert sol.cost == len(forced) + res.cost, (sol.cost, len(forced), res.cost)
    return sol


# ---------------------------------------------------------------- text format

def parse_wcsp(text: str) -> WildcardCsp:
    toks = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks += [(no, t) for t in line.split()]
    if len(toks) < 3 or toks[0][1] != "wcsp":
        raise ParseError(toks[0][0] if toks else 0, "malformed header: expected 'wcsp n q'")
    pos = 1

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(toks[-1][0], "unexpected end of input")
        no, t = toks[pos]
        pos += 1
        if t == "c":
            return no, t
        try:
            return no, int(t)
        except ValueError:
            raise ParseError(no, f"expected integer, got {t!r}") from None

    _, n = take()
    _, q = take()
    cons = []
    while pos < len(toks):
        no, kw = take()
        if kw != "c":
            raise ParseError(no, "expected 'c'")
        _, k = take()
        scope = []
        for _ in range(k):
            no, v = take()
            if not 1 <= v <= n:
                raise ParseError(no, "variable id out of range")
            scope.append(v - 1)
        table = [take()[1] for _ in range((q + 1) ** k)]
        cons.append(Constraint(tuple(scope), tuple(table)))
    return WildcardCsp(n, q, tuple(cons))


def serialize_wcsp(csp: WildcardCsp) -> str:
    lines = [f"wcsp {csp.n} {csp.q}"]
    for c in csp.constraints:
        lines.append(f"c {len(c.scope)} " + " ".join(str(v + 1) for v in c.scope))
        lines.append(" ".join(map(str, c.table)))
    return "\n".join(lines) + "\n"
