"""Exact Turán numbers at small n and the checks built on them.

:func:`exact_max` is a branch-and-bound over the ``C(n, r)`` candidate edges
in lexicographic order. Freeness constraints are hereditary, so a node keeps
only the candidates still compatible with its chosen edges and is pruned when
``chosen + compatible <= best``. The first chosen edge is fixed to
``{0, ..., r-1}``: every nonempty graph is isomorphic to one containing it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from .freeness import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    ConstraintFamily,
    FreenessConstraint,
    NotFreeError,
    Verdict,
    find_violation,
    property_family,
    witness_family,
)
from .hypergraph import Hypergraph, build, mask_of

PROVEN = "proven-optimal"
INCUMBENT = "budget-exhausted"


@dataclass(frozen=True)
class SearchResult:
    optimum: int  # best edge count found; the true maximum when status is proven-optimal
    witness: Hypergraph
    nodes: int
    status: str
    certificates: tuple[str, ...] = ()

    @property
    def proven(self) -> bool:
        return self.status == PROVEN

    def record(self, n: int, r: int, fam: ConstraintFamily) -> dict:
        return {
            "n": n,
            "r": r,
            "constraints": [[c.v, c.e] for c in fam.constraints],
            "codegree_rule": [fam.codegree_rule.k, fam.codegree_rule.e] if fam.codegree_rule else None,
            "optimum": self.optimum,
            "nodes": self.nodes,
            "status": self.status,
        }


def _clashes(chosen: list[int], cmask: int, v: int, need: int) -> bool:
    """Do ``need`` of the chosen edges together with ``cmask`` span <= v vertices?"""
    m = len(chosen)

    def rec(start, U, left):
        if left == 0:
            return True
        for i in range(start, m - left + 1):
            U2 = U | chosen[i]
            if U2.bit_count() <= v and rec(i + 1, U2, left - 1):
                return True
        return False

    return rec(0, cmask, need)


class _Solver:
    def __init__(self, n, r, fam: ConstraintFamily, budget):
        self.n, self.r, self.fam, self.budget = n, r, fam, budget
        self.cands = list(combinations(range(n), r))
        self.cmasks = [mask_of(c) for c in self.cands]
        self.rule = fam.codegree_rule
        if self.rule is not None:
            size = self.rule.k - 1
            self.subsets = [tuple(combinations(c, size)) for c in self.cands]
            self.subset_masks = {}
            for subs in self.subsets:
                for s in subs:
                    self.subset_masks.setdefault(s, mask_of(s))
        self.nodes = 0
        self.best = 0
        self.best_set: list[int] = []

    def compatible(self, chosen_masks, c):
        cm = self.cmasks[c]
        return not any(_clashes(chosen_masks, cm, con.v, con.e - 1) for con in self.fam.constraints)

    def rule_state(self, deg, cands):
        """(satisfied now, can still be satisfied in this subtree)."""
        e = self.rule.e
        satisfied = True
        for T, d in deg.items():
            if 0 < d < e:
                satisfied = False
                tm = self.subset_masks[T]
                more = sum(1 for c in cands if self.cmasks[c] & tm == tm)
                if d + more < e:
                    return False, False
        return satisfied, True

    def search(self, chosen, chosen_masks, cands, deg):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes)
        if self.rule is not None:
            ok, feasible = self.rule_state(deg, cands)
            if not feasible:
                return
        else:
            ok = True
        if ok and len(chosen) > self.best:
            self.best = len(chosen)
            self.best_set = list(chosen)
        size = len(chosen)
        for idx, c in enumerate(cands):
            if size + len(cands) - idx <= self.best:
                return
            cm = self.cmasks[c]
            nxt_masks = chosen_masks + [cm]
            nxt = [d for d in cands[idx + 1:] if self.compatible(nxt_masks, d)]
            if self.rule is not None:
                deg2 = dict(deg)
                for s in self.subsets[c]:
                    deg2[s] = deg2.get(s, 0) + 1
            else:
                deg2 = deg
            self.search(chosen + [c], nxt_masks, nxt, deg2)

    def greedy(self):
        chosen, masks = [], []
        for c in range(len(self.cands)):
            if self.compatible(masks, c):
                chosen.append(c)
                masks.append(self.cmasks[c])
        return chosen

    def run(self):
        certs = ["bound: chosen + compatible remaining candidates"]
        if self.rule is None:
            g = self.greedy()
            self.best, self.best_set = len(g), g
            certs.append(f"incumbent: lexicographic greedy ({len(g)} edges)")
        else:
            certs.append("codegree rule: completion check on pending candidates")
        status = PROVEN
        if self.cands:
            certs.append(f"symmetry: first edge fixed to {self.cands[0]}")
            first = 0
            masks = [self.cmasks[first]]
            rest = [d for d in range(1, len(self.cands)) if self.compatible(masks, d)]
            deg = {s: 1 for s in self.subsets[first]} if self.rule is not None else {}
            try:
                self.search([first], masks, rest, deg)
            except BudgetExhausted:
                status = INCUMBENT
        witness = build(self.n, self.r, [self.cands[c] for c in self.best_set])
        return SearchResult(self.best, witness, self.nodes, status, tuple(certs))


def exact_max(n: int, r: int, fam: ConstraintFamily, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Maximum number of edges of an r-graph on ``n`` vertices satisfying ``fam``.

    If the node budget runs out the best graph found so far is returned with
    status ``"budget-exhausted"``.
    """
    if n < 0 or r < 1:
        raise ValueError(f"need n >= 0 and r >= 1, got n={n}, r={r}")
    return _Solver(n, r, fam, budget).run()


def bes_family(r: int, k: int, e: int) -> ConstraintFamily:
    """The single constraint ``(e*r - (e-1)*k, e)``."""
    return ConstraintFamily.of((e * r - (e - 1) * k, e))


@dataclass
class ChainReport:
    n: int
    r: int
    e: int
    k: int
    values: dict  # "f" and each t -> optimum
    results: dict = field(default_factory=dict)
    monotone: Optional[bool] = None
    case1: Optional[bool] = None  # f - (e-1) C(n, k-1) <= f^(e-1)
    status: str = PROVEN

    @property
    def ok(self) -> bool:
        return self.status == PROVEN and bool(self.monotone) and bool(self.case1)

    def rows(self) -> list[dict]:
        out = []
        for key, val in self.values.items():
            res = self.results[key]
            out.append({"n": self.n, "r": self.r, "e": self.e, "k": self.k, "which": key,
                        "value": val, "nodes": res.nodes, "status": res.status})
        return out


def chain_check(n: int, r: int, e: int, k: int = 2, budget: int = DEFAULT_BUDGET) -> ChainReport:
    """Compute ``f`` and ``f^(t)`` for ``t = e-1, ..., 2`` and check
    ``f >= f^(e-1) >= ... >= f^(2)`` and ``f - (e-1) C(n, k-1) <= f^(e-1)``."""
    if e < 3:
        raise ValueError(f"the chain needs e >= 3, got e={e}")
    results = {"f": exact_max(n, r, bes_family(r, k, e), budget)}
    for t in range(e - 1, 1, -1):
        results[t] = exact_max(n, r, property_family(r, k, e, t), budget)
    values = {key: res.optimum for key, res in results.items()}
    rep = ChainReport(n, r, e, k, values, results)
    if any(not res.proven for res in results.values()):
        rep.status = INCUMBENT
    chain = [values["f"]] + [values[t] for t in range(e - 1, 1, -1)]
    rep.monotone = all(a >= b for a, b in zip(chain, chain[1:]))
    rep.case1 = values["f"] - (e - 1) * comb(n, k - 1) <= values[e - 1]
    return rep


def lower_bound_from_witness(F: Hypergraph, r: int, k: int, e: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Certified lower bound ``|F| / m^k`` on the liminf of ``f_r(n, er-(e-1)k, e)/n^k``.

    ``F`` lives on ``m = F.n`` vertices and must be free at
    ``(e*r - (e-1)*k, e)`` and at ``(i*r - (i-1)*k - 1, i)`` for every
    ``2 <= i <= e-1``; otherwise :class:`NotFreeError` carries the witness.
    """
    if F.r != r:
        raise ValueError(f"witness has uniformity {F.r}, expected {r}")
    if not (1 <= k < r and e >= 2):
        raise ValueError(f"need 1 <= k < r and e >= 2, got r={r}, k={k}, e={e}")
    for c in witness_family(r, k, e).constraints:
        verdict = find_violation(F, c, budget)
        if verdict.exhausted:
            raise BudgetExhausted(verdict.nodes, f"{c} search")
        if not verdict.free:
            raise NotFreeError(verdict)
    if F.n == 0:
        raise ValueError("witness has no vertices")
    return Fraction(len(F.edges), F.n**k)


@dataclass(frozen=True)
class SizeReport:
    precondition: Verdict
    edges: int
    bound: Fraction  # n / (r - 1)
    below_bound: bool

    @property
    def precondition_ok(self) -> bool:
        return self.precondition.free


def upp_size_check(H: Hypergraph, r: int, e: int, budget: int = DEFAULT_BUDGET) -> SizeReport:
    """Is ``|H| < n/(r-1)`` for an H free at ``(e*r - (e-1), e)``?"""
    if H.r != r or r < 2:
        raise ValueError(f"need a {r}-graph with r >= 2")
    pre = find_violation(H, FreenessConstraint(e * r - (e - 1), e), budget)
    bound = Fraction(H.n, r - 1)
    return SizeReport(pre, len(H.edges), bound, len(H.edges) < bound)


def results_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()
