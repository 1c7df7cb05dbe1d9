"""Greedy construction of r-graphs free at ``(t*r - 2(t-1), t)`` for all ``2 <= t <= e``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .cleanup import peel
from .freeness import (
    DEFAULT_BUDGET,
    EdgeIndex,
    FamilyReport,
    anchored_conflict,
    is_family_free,
    packing_family,
    property_family,
)
from .hypergraph import Hypergraph, build
from .increment import crucial_constants


@dataclass
class PackingReport:
    n: int
    r: int
    e: int
    seed: int
    order: str
    edges: int
    target: Fraction  # n^2 / (r^2 - r)
    freeness: Optional[FamilyReport] = None
    maximal: Optional[bool] = None

    @property
    def ratio(self) -> float:
        return float(Fraction(self.edges) / self.target) if self.target else 0.0

    @property
    def verified(self) -> bool:
        return self.freeness is not None and self.freeness.free

    def record(self) -> dict:
        out = {"n": self.n, "r": self.r, "e": self.e, "seed": self.seed, "order": self.order,
               "edges": self.edges, "target": float(self.target), "ratio": self.ratio,
               "maximal": self.maximal}
        if self.freeness is not None:
            for v in self.freeness.verdicts:
                out[f"t{v.constraint.e}"] = v.status
        return out


def _pair_covered(ix: EdgeIndex, edge) -> bool:
    return any(p in ix.by_pair for p in combinations(edge, 2))


def _conflicts(ix: EdgeIndex, edge, fam, budget) -> bool:
    # t = 2 means two edges may share at most one vertex
    if _pair_covered(ix, edge):
        return True
    return anchored_conflict(ix, edge, fam, budget) is not None


def greedy_pack(
    n: int,
    r: int,
    e: int,
    seed: int = 0,
    order: str = "random",
    verify: bool = True,
    check_maximal: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> tuple[Hypergraph, PackingReport]:
    """Scan all r-subsets once (shuffled by ``seed``, or in ``"lex"`` order)
    and keep each one that creates no bad configuration.

    One pass yields a maximal graph, since a rejected candidate stays
    rejected as edges are added. With ``verify`` every constraint is
    re-checked from scratch on the result; ``check_maximal`` re-scans all
    candidates.
    """
    if n < r:
        raise ValueError(f"need n >= r, got n={n}, r={r}")
    if e < 2:
        raise ValueError(f"need e >= 2, got e={e}")
    if order not in ("random", "lex"):
        raise ValueError(f"order must be 'random' or 'lex', got {order!r}")
    fam = packing_family(r, e)
    cands = list(combinations(range(n), r))
    if order == "random":
        random.Random(seed).shuffle(cands)
    ix = EdgeIndex(r)
    kept = []
    for c in cands:
        if not _conflicts(ix, c, fam, budget):
            ix.add(c)
            kept.append(c)
    H = build(n, r, kept)
    rep = PackingReport(n, r, e, seed, order, len(H.edges), Fraction(n * n, r * r - r))
    if verify:
        rep.freeness = is_family_free(H, fam, budget)
    if check_maximal:
        rep.maximal = is_maximal(H, e, budget)
    return H, rep


def is_maximal(H: Hypergraph, e: int, budget: int = DEFAULT_BUDGET) -> bool:
    """No r-subset outside ``H`` can be added without a bad configuration."""
    fam = packing_family(H.r, e)
    ix = EdgeIndex(H.r, H)
    present = set(H.edges)
    return all(_conflicts(ix, c, fam, budget) for c in combinations(range(H.n), H.r) if c not in present)


@dataclass
class CleanedPacking:
    graph: Hypergraph
    removed: int
    property: FamilyReport
    density: Fraction  # |F| / n^2
    threshold: Fraction  # the density threshold b
    above_threshold: bool
    notes: list = field(default_factory=list)


def clean_packing(H: Hypergraph, e: int, budget: int = DEFAULT_BUDGET) -> CleanedPacking:
    """Peel a packing so vertex degrees are 0 or at least ``e``, then check the
    full k=2 property (with ``t = 2``) and the density threshold."""
    G, log = peel(H, 2, e)
    rep = is_family_free(G, property_family(H.r, 2, e, 2), budget)
    dens = Fraction(len(G.edges), H.n * H.n)
    b = crucial_constants(H.r).b
    return CleanedPacking(G, len(log), rep, dens, b, dens > b)
