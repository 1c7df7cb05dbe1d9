"""G_r(v, e)-freeness: no e distinct edges span at most v vertices.

Write ``D = e*r - v`` for the deficiency a bad configuration must reach, where
the deficiency of an edge set S is ``|S|*r - |union(S)|``. Deficiency never
drops when an edge is added, and it is additive over vertex-disjoint parts.
So H fails (v, e)-freeness exactly when it has at least e edges and some set
of at most e edges, all of whose components have two or more edges, has
deficiency at least D. :func:`find_violation` searches for such a *core*
(connected pieces first, then unions of disjoint pieces) and pads it with the
lowest unused edge ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

from .hypergraph import Hypergraph, vertices_of

DEFAULT_BUDGET = 10_000_000

FREE = "free"
VIOLATION = "violation"
EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class FreenessConstraint:
    """Every ``e`` distinct edges must span at least ``v + 1`` vertices."""

    v: int
    e: int

    def __post_init__(self):
        if self.e < 2:
            raise ValueError(f"configuration size must be at least 2, got e={self.e}")
        if self.v < 0:
            raise ValueError(f"union threshold must be non-negative, got v={self.v}")

    def deficiency_needed(self, r: int) -> int:
        return self.e * r - self.v

    def __str__(self):
        return f"G({self.v},{self.e})"


@dataclass(frozen=True)
class CodegreeRule:
    """Every (k-1)-subset lies in no edge or in at least ``e`` edges."""

    k: int
    e: int

    def __post_init__(self):
        if self.k < 1 or self.e < 1:
            raise ValueError(f"codegree rule needs positive k and e, got k={self.k}, e={self.e}")


@dataclass(frozen=True)
class ConstraintFamily:
    constraints: tuple[FreenessConstraint, ...]
    codegree_rule: Optional[CodegreeRule] = None

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not self.constraints:
            raise ValueError("a constraint family needs at least one freeness constraint")

    @classmethod
    def of(cls, *pairs: tuple[int, int], codegree: Optional[tuple[int, int]] = None):
        """``ConstraintFamily.of((5, 3), (3, 2), codegree=(2, 3))``."""
        rule = CodegreeRule(*codegree) if codegree else None
        return cls(tuple(FreenessConstraint(v, e) for v, e in pairs), rule)


def property_family(r: int, k: int, e: int, t: int) -> ConstraintFamily:
    """Constraints defining the constrained maximum with parameter ``t``:
    free at ``(e*r - (e-1)*k, e)``, free at ``(i*r - (i-1)*k - 1, i)`` for
    ``t <= i <= e-1``, and (k-1)-codegrees either 0 or at least ``e``."""
    if not 2 <= t <= e - 1:
        raise ValueError(f"t must satisfy 2 <= t <= e-1, got t={t}, e={e}")
    cons = [FreenessConstraint(e * r - (e - 1) * k, e)]
    cons += [FreenessConstraint(i * r - (i - 1) * k - 1, i) for i in range(t, e)]
    return ConstraintFamily(tuple(cons), CodegreeRule(k, e))


def witness_family(r: int, k: int, e: int) -> ConstraintFamily:
    """Free at ``(e*r - (e-1)*k, e)`` and at ``(i*r - (i-1)*k - 1, i)`` for
    every ``2 <= i <= e-1``; no codegree rule."""
    cons = [FreenessConstraint(e * r - (e - 1) * k, e)]
    cons += [FreenessConstraint(i * r - (i - 1) * k - 1, i) for i in range(2, e)]
    return ConstraintFamily(tuple(cons))


def packing_family(r: int, e: int) -> ConstraintFamily:
    """Free at ``(t*r - 2*(t-1), t)`` for every ``2 <= t <= e``."""
    return ConstraintFamily(tuple(FreenessConstraint(t * r - 2 * (t - 1), t) for t in range(2, e + 1)))


@dataclass(frozen=True)
class Configuration:
    """A set of edges (by id), their union ``X`` and ``deficiency = |ids|*r - |X|``."""

    edge_ids: tuple[int, ...]
    X: tuple[int, ...]
    deficiency: int

    @classmethod
    def of(cls, H: Hypergraph, edge_ids: Iterable[int]) -> "Configuration":
        ids = tuple(sorted(set(edge_ids)))
        mask = 0
        for i in ids:
            mask |= H.masks[i]
        X = vertices_of(mask)
        return cls(ids, X, len(ids) * H.r - len(X))

    def edges(self, H: Hypergraph) -> list[tuple[int, ...]]:
        return [H.edges[i] for i in self.edge_ids]


@dataclass(frozen=True)
class Verdict:
    """Outcome of one freeness search."""

    constraint: FreenessConstraint
    status: str
    witness: Optional[Configuration] = None
    nodes: int = 0

    @property
    def free(self) -> bool:
        return self.status == FREE

    @property
    def exhausted(self) -> bool:
        return self.status == EXHAUSTED

    def record(self, H: Optional[Hypergraph] = None) -> dict:
        out = {"v": self.constraint.v, "e": self.constraint.e, "status": self.status, "nodes": self.nodes}
        if self.witness is not None:
            out["edge_ids"] = list(self.witness.edge_ids)
            out["union"] = list(self.witness.X)
            out["deficiency"] = self.witness.deficiency
            if H is not None:
                out["edges"] = [list(e) for e in self.witness.edges(H)]
        return out


class CodegreeVerdict(NamedTuple):
    rule: CodegreeRule
    satisfied: bool
    subset: Optional[tuple[int, ...]]
    codegree: int


@dataclass(frozen=True)
class FamilyReport:
    verdicts: tuple[Verdict, ...]
    codegree: Optional[CodegreeVerdict] = None

    @property
    def free(self) -> bool:
        """All constraints free and the codegree rule (if any) satisfied."""
        ok = all(v.free for v in self.verdicts)
        return ok and (self.codegree is None or self.codegree.satisfied)

    @property
    def exhausted(self) -> bool:
        return any(v.exhausted for v in self.verdicts)

    @property
    def nodes(self) -> int:
        return sum(v.nodes for v in self.verdicts)


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int, message: str = "search budget exhausted"):
        super().__init__(f"{message} after {nodes} nodes")
        self.nodes = nodes


class NotFreeError(ValueError):
    """A hypergraph failed a freeness constraint it was required to satisfy."""

    def __init__(self, verdict: Verdict, message: str = ""):
        w = verdict.witness
        detail = f"edges {w.edge_ids} span {len(w.X)} vertices" if w else verdict.status
        super().__init__(message or f"not {verdict.constraint}-free: {detail}")
        self.verdict = verdict


class _Stop(Exception):
    pass


class EdgeIndex:
    """Edge bitmasks plus vertex and pair incidence, for the searches below.

    Built from a :class:`Hypergraph`, or grown one edge at a time with
    :meth:`add` (used by the greedy packer).
    """

    def __init__(self, r: int, H: Optional[Hypergraph] = None):
        self.r = r
        self.masks: list[int] = []
        self.by_vertex: dict[int, list[int]] = {}
        self.by_pair: dict[tuple[int, int], list[int]] = {}
        if H is not None:
            self.masks = list(H.masks)
            self.by_vertex = {k[0]: list(v) for k, v in H.incidence(1).items()}
            if r >= 2:
                self.by_pair = {k: list(v) for k, v in H.incidence(2).items()}

    def add(self, edge: Sequence[int]) -> int:
        i = len(self.masks)
        mask = 0
        for v in edge:
            mask |= 1 << v
            self.by_vertex.setdefault(v, []).append(i)
        for p in combinations(sorted(edge), 2):
            self.by_pair.setdefault(p, []).append(i)
        self.masks.append(mask)
        return i

    def meeting(self, vertices: Sequence[int], need: int) -> set[int]:
        """Ids of edges sharing at least ``need`` vertices with ``vertices``."""
        if need <= 0:
            return set(range(len(self.masks)))
        if need > self.r:
            return set()
        out: set[int] = set()
        if need == 1 or self.r < 2:
            for v in vertices:
                out.update(self.by_vertex.get(v, ()))
            return out
        for p in combinations(vertices, 2):
            out.update(self.by_pair.get(p, ()))
        if need > 2:
            target = 0
            for v in vertices:
                target |= 1 << v
            out = {i for i in out if (self.masks[i] & target).bit_count() >= need}
        return out


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Stop


def _esu(ix: EdgeIndex, sub: tuple, U: int, ext: list, floor: int, cap: int, smax: int, visit, counter):
    """Enumerate connected edge sets extending ``sub`` exactly once each.

    Edges are adjacent when they intersect. ``ext`` holds the current
    extension candidates (ascending); only edges with id above ``floor`` may
    join, and no set whose union exceeds ``cap`` vertices is entered.
    ``visit(sub, U)`` returning a true value stops the walk and is returned.
    """
    masks = ix.masks
    r = ix.r
    pos = {u: i for i, u in enumerate(ext)}
    for i, w in enumerate(ext):
        counter.tick()
        U2 = U | masks[w]
        size2 = U2.bit_count()
        if size2 > cap:
            continue
        sub2 = sub + (w,)
        hit = visit(sub2, U2)
        if hit:
            return hit
        if len(sub2) >= smax:
            continue
        need = r - (cap - size2)
        if need >= 2:
            allowed = ix.meeting(vertices_of(U2), need)
            rest = [u for u in allowed if pos.get(u, -1) > i]
        else:
            rest = ext[i + 1:]
        wv = vertices_of(masks[w])
        excl = [
            u for u in ix.meeting(wv, max(1, need - 0))
            if u > floor and not masks[u] & U and (U2 | masks[u]).bit_count() <= cap
        ]
        nxt = sorted(set(rest) | set(excl))
        if nxt:
            hit = _esu(ix, sub2, U2, nxt, floor, cap, smax, visit, counter)
            if hit:
                return hit
    return None


def _root_ext(ix: EdgeIndex, root_mask: int, floor: int, cap: int) -> list:
    rv = vertices_of(root_mask)
    need = ix.r - (cap - len(rv))
    out = [
        u for u in ix.meeting(rv, max(1, need))
        if u > floor and (root_mask | ix.masks[u]).bit_count() <= cap
    ]
    return sorted(out)


def _find_core(ix: EdgeIndex, v: int, e: int, counter: _Counter) -> Optional[tuple]:
    r = ix.r
    m = len(ix.masks)
    D = e * r - v
    if D <= 0:
        return ()
    if r > v:
        return None
    # pieces usable inside a core with two or more components
    piece_cap = v - (r + 1)
    multi = e >= 4 and piece_cap >= r + 1
    pieces: list[tuple[tuple, int]] = []

    def visit(sub, U):
        size = len(sub)
        if size * r - U.bit_count() >= D:
            return sub
        if multi and size <= e - 2 and U.bit_count() <= piece_cap:
            pieces.append((sub, U))
        return None

    for s in range(m):
        counter.tick()
        ext = _root_ext(ix, ix.masks[s], s, v)
        if not ext:
            continue
        hit = _esu(ix, (s,), ix.masks[s], ext, s, v, e, visit, counter)
        if hit:
            return hit
    if not multi:
        return None

    sets = [frozenset(p[0]) for p in pieces]

    def combine(start, chosen: frozenset, U: int, size: int, count: int):
        for j in range(start, len(pieces)):
            sub, Uj = pieces[j]
            if size + len(sub) > e or chosen & sets[j]:
                continue
            U2 = U | Uj
            if U2.bit_count() > v:
                continue
            counter.tick()
            size2 = size + len(sub)
            if count >= 1 and size2 * r - U2.bit_count() >= D:
                return tuple(chosen | sets[j])
            hit = combine(j + 1, chosen | sets[j], U2, size2, count + 1)
            if hit:
                return hit
        return None

    return combine(0, frozenset(), 0, 0, 0)


def find_violation(H: Hypergraph, c: FreenessConstraint, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Look for ``c.e`` distinct edges of ``H`` spanning at most ``c.v`` vertices.

    Returns a :class:`Verdict` whose status is ``"free"``, ``"violation"``
    (with a verified witness) or ``"budget-exhausted"``. The search is
    deterministic: the witness is the first core met in ascending seed order,
    padded with the lowest remaining edge ids, and reported sorted.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if len(H.edges) < c.e:
        return Verdict(c, FREE, None, 0)
    counter = _Counter(budget)
    ix = EdgeIndex(H.r, H)
    try:
        core = _find_core(ix, c.v, c.e, counter)
    except _Stop:
        return Verdict(c, EXHAUSTED, None, counter.nodes)
    if core is None:
        return Verdict(c, FREE, None, counter.nodes)
    chosen = set(core)
    for i in range(len(H.edges)):
        if len(chosen) >= c.e:
            break
        chosen.add(i)
    witness = Configuration.of(H, chosen)
    if len(witness.edge_ids) != c.e or len(witness.X) > c.v:
        raise AssertionError(f"search produced an invalid witness {witness}")
    return Verdict(c, VIOLATION, witness, counter.nodes)


def is_free(H: Hypergraph, c: FreenessConstraint, budget: int = DEFAULT_BUDGET) -> bool:
    """``True``/``False``; raises :class:`BudgetExhausted` rather than guess."""
    verdict = find_violation(H, c, budget)
    if verdict.exhausted:
        raise BudgetExhausted(verdict.nodes, f"{c} search")
    return verdict.free


def check_codegree(H: Hypergraph, rule: CodegreeRule) -> CodegreeVerdict:
    """First (lexicographically) (k-1)-subset with codegree in ``[1, e-1]``."""
    size = rule.k - 1
    if size >= H.r:
        return CodegreeVerdict(rule, True, None, 0)
    bad = [(key, len(ids)) for key, ids in H.incidence(size).items() if 0 < len(ids) < rule.e]
    if not bad:
        return CodegreeVerdict(rule, True, None, 0)
    key, deg = min(bad)
    return CodegreeVerdict(rule, False, key, deg)


def is_family_free(H: Hypergraph, fam: ConstraintFamily, budget: int = DEFAULT_BUDGET) -> FamilyReport:
    """One verdict per constraint (no short-circuit) plus the codegree rule."""
    verdicts = tuple(find_violation(H, c, budget) for c in fam.constraints)
    cd = check_codegree(H, fam.codegree_rule) if fam.codegree_rule else None
    return FamilyReport(verdicts, cd)


class Enumeration(NamedTuple):
    configurations: list
    nodes: int
    exhausted: bool


def enumerate_violations(
    H: Hypergraph, c: FreenessConstraint, max_count: int, budget: int = DEFAULT_BUDGET
) -> Enumeration:
    """All bad ``c.e``-edge sets (up to ``max_count``) in lexicographic order of
    their sorted edge ids, by a plain depth-first walk over increasing ids."""
    found: list[Configuration] = []
    if max_count <= 0 or len(H.edges) < c.e:
        return Enumeration(found, 0, False)
    ix = EdgeIndex(H.r, H)
    masks = ix.masks
    m = len(masks)
    counter = _Counter(budget)

    def walk(start, chosen, U):
        left = c.e - len(chosen)
        if left == 0:
            found.append(Configuration.of(H, chosen))
            if len(found) >= max_count:
                raise _Stop
            return
        need = H.r - (c.v - U.bit_count())
        if need <= 0:
            cands = range(start, m - left + 1)
        else:
            cands = sorted(i for i in ix.meeting(vertices_of(U), need) if start <= i <= m - left)
        for a in cands:
            counter.tick()
            U2 = U | masks[a]
            if U2.bit_count() <= c.v:
                walk(a + 1, chosen + (a,), U2)

    try:
        walk(0, (), 0)
    except _Stop:
        if len(found) < max_count:
            return Enumeration(found, counter.nodes, True)
    return Enumeration(found, counter.nodes, False)


def anchored_conflict(ix: EdgeIndex, edge: Sequence[int], fam: ConstraintFamily, budget: int = DEFAULT_BUDGET):
    """Would adding ``edge`` to the (family-free) edges in ``ix`` break ``fam``?

    Only connected configurations through the new edge are searched. That is
    complete for families whose required deficiency grows by a fixed step per
    edge, such as :func:`packing_family`: any new bad configuration then has a
    smaller bad configuration in the component of the new edge. Returns the
    offending ids of existing edges, or ``None``.
    """
    root = 0
    for x in edge:
        root |= 1 << x
    thresholds = {c.e: c.v for c in fam.constraints}
    cap = max(thresholds.values())
    smax = max(thresholds) - 1
    counter = _Counter(budget)

    def visit(sub, U):
        v = thresholds.get(len(sub) + 1)
        if v is not None and U.bit_count() <= v:
            return sub
        return None

    ext = _root_ext(ix, root, -1, cap)
    if not ext:
        return None
    try:
        return _esu(ix, (), root, ext, -1, cap, smax, visit, counter)
    except _Stop:
        raise BudgetExhausted(counter.nodes, "conflict search") from None
