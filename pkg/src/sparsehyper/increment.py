"""Structure around a bad configuration and the density-increment deletion loop.

A *bad configuration* for parameters ``(r, k, t)`` is a set of ``t-1``
distinct edges whose union ``X`` has at most ``x = (t-1)r - (t-2)k - 1``
vertices. ``I(X)`` collects the other edges meeting ``X`` in exactly ``k-1``
vertices. The loop in :func:`density_increment` repeatedly deletes a bad
configuration, ``I(X)`` and the vertices of ``X``; it records enough per step
to check the edge/vertex accounting exactly.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import freeness
from .freeness import (
    DEFAULT_BUDGET,
    Configuration,
    ConstraintFamily,
    FreenessConstraint,
    Verdict,
    find_violation,
    property_family,
)
from .hypergraph import Hypergraph, _make, delete_vertices, link, mask_of, vertices_of


def bad_threshold(r: int, k: int, t: int) -> int:
    """``(t-1)r - (t-2)k - 1``: the most vertices a bad configuration may span."""
    return (t - 1) * r - (t - 2) * k - 1


# ---------------------------------------------------------------- constants


@dataclass(frozen=True)
class CrucialConstants:
    r: int
    alpha_squared: Fraction
    alpha: float
    alpha_exact: Optional[Fraction]  # set when alpha_squared is a rational square
    delta: Fraction
    b: Fraction


def _exact_sqrt(q: Fraction) -> Optional[Fraction]:
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def crucial_constants(r: int) -> CrucialConstants:
    """Vertex-retention factor alpha, delta and the density threshold b.

    ``alpha^2 = (3r^2 - 4r - 14) / (3r^2 + 2r - 8)``,
    ``delta = 1 / ((3r-4)(r-1) + 1)``,
    ``b = max(1/(r(r-1)) - delta/(r(r-2)), 1/(2r^2 - 2r - 5))``.
    """
    if r < 3:
        raise ValueError(f"constants are defined for r >= 3, got r={r}")
    a2 = Fraction(3 * r * r - 4 * r - 14, 3 * r * r + 2 * r - 8)
    delta = Fraction(1, (3 * r - 4) * (r - 1) + 1)
    b = max(Fraction(1, r * (r - 1)) - delta / (r * (r - 2)), Fraction(1, 2 * r * r - 2 * r - 5))
    return CrucialConstants(r, a2, math.sqrt(a2), _exact_sqrt(a2), delta, b)


# --------------------------------------------------------------- structure


@dataclass(frozen=True)
class StructuralReport:
    X: tuple[int, ...]
    x_expected: int
    size_ok: bool
    I_of_X: tuple[int, ...]
    intersection_violations: tuple[int, ...]
    projection_distinct: bool  # the sets A - X, A in I(X), are pairwise distinct
    I_bound: Optional[int]  # max{e-t+1, f_{r-k+1}(...)} when the solver finished
    I_bound_status: str
    fallback_bound: Fraction  # (n - |X|) / (r - k)
    I_bound_ok: bool  # |I(X)| < fallback_bound

    @property
    def exact_bound_ok(self) -> Optional[bool]:
        return None if self.I_bound is None else len(self.I_of_X) <= self.I_bound


def _as_ids(H: Hypergraph, config) -> tuple[int, ...]:
    ids = config.edge_ids if isinstance(config, Configuration) else tuple(config)
    for i in ids:
        if not 0 <= i < len(H.edges):
            raise ValueError(f"edge id {i} is not an edge of the hypergraph")
    if len(set(ids)) != len(ids):
        raise ValueError("configuration edges must be distinct")
    return tuple(sorted(ids))


def intersection_profile(H: Hypergraph, config_ids, X_mask: int, k: int):
    """Split the edges outside the configuration by how much they meet X:
    ``(exactly k-1, at least k, between 1 and k-2)``."""
    inside = set(config_ids)
    exact, heavy, light = [], [], []
    for i, m in enumerate(H.masks):
        if i in inside:
            continue
        s = (m & X_mask).bit_count()
        if s == k - 1:
            exact.append(i)
        elif s >= k:
            heavy.append(i)
        elif s > 0:
            light.append(i)
    return tuple(exact), tuple(heavy), tuple(light)


def projection(H: Hypergraph, X, I_ids) -> Hypergraph:
    """The (r-|A∩X|)-graph ``{A - X : A in I(X)}`` on the vertices outside ``X``.

    Coinciding projections are merged; compare ``len`` with ``len(I_ids)``.
    """
    xs = set(X)
    survivors = [v for v in range(H.n) if v not in xs]
    new_id = {v: i for i, v in enumerate(survivors)}
    edges = {tuple(new_id[v] for v in H.edges[i] if v not in xs) for i in I_ids}
    sizes = {len(e) for e in edges}
    r = sizes.pop() if len(sizes) == 1 else H.r
    return _make(len(survivors), r, tuple(sorted(edges)), [H.labels[v] for v in survivors])


def _link_bound(n_rest: int, u: int, s: int, budget: int):
    """``f_u(n_rest, s*u - (s-1), s)`` or ``(None, status)``."""
    if s < 1:
        return None, "undefined"
    v = s * u - (s - 1)
    if s == 1:
        # one edge is already a violation as soon as it fits within v vertices
        return (0 if u <= v else math.comb(n_rest, u)), "exact"
    from .extremal import exact_max

    res = exact_max(n_rest, u, ConstraintFamily.of((v, s)), budget=budget)
    if res.status != "proven-optimal":
        return None, "fallback (solver budget exhausted)"
    return res.optimum, "exact"


def structural_analyze(
    H: Hypergraph, config, k: int, t: int, e: int, bound_budget: int = 200_000
) -> StructuralReport:
    """Measure the three structural assertions around a bad configuration.

    Nothing is asserted: the guarantees only hold for hypergraphs with the
    full constraint/codegree property, so the report states what is observed.
    """
    ids = _as_ids(H, config)
    if len(ids) != t - 1:
        raise ValueError(f"a bad configuration has t-1={t - 1} edges, got {len(ids)}")
    x = bad_threshold(H.r, k, t)
    X_mask = 0
    for i in ids:
        X_mask |= H.masks[i]
    X = vertices_of(X_mask)
    if len(X) > x:
        raise ValueError(f"union has {len(X)} vertices, more than the bad-configuration threshold {x}")
    exact, heavy, _ = intersection_profile(H, ids, X_mask, k)
    proj = {tuple(v for v in H.edges[i] if not (X_mask >> v) & 1) for i in exact}
    bound, status = _link_bound(H.n - len(X), H.r - k + 1, e - t + 1, bound_budget)
    if bound is not None:
        bound = max(e - t + 1, bound)
    fallback = Fraction(H.n - len(X), H.r - k)
    return StructuralReport(
        X=X,
        x_expected=x,
        size_ok=len(X) == x,
        I_of_X=exact,
        intersection_violations=heavy,
        projection_distinct=len(proj) == len(exact),
        I_bound=bound,
        I_bound_status=status,
        fallback_bound=fallback,
        I_bound_ok=len(exact) < fallback,
    )


# ----------------------------------------------------------- deletion loop


@dataclass(frozen=True)
class Step:
    j: int
    X: tuple[int, ...]  # original vertex ids
    configuration: tuple[int, ...]  # original edge ids
    I_of_X: tuple[int, ...]
    e_j: int
    v_j: int
    e_next: int
    v_next: int
    y: int  # x * j
    step_inequality: Optional[bool]  # e_{j+1} > e_j - v_j/(r-2)
    cumulative_inequality: Optional[bool]  # e_{j+1} > e_0 - sum_{i<=j} v_i / (r-2)

    @property
    def density(self) -> Fraction:
        return Fraction(self.e_j, self.v_j**2) if self.v_j else Fraction(0)

    def record(self) -> dict:
        return {
            "j": self.j,
            "X": list(self.X),
            "configuration": list(self.configuration),
            "I": list(self.I_of_X),
            "e_j": self.e_j,
            "v_j": self.v_j,
            "density": str(self.density),
            "e_next": self.e_next,
            "v_next": self.v_next,
            "y": self.y,
            "step_inequality": self.step_inequality,
            "cumulative_inequality": self.cumulative_inequality,
        }


@dataclass
class IncrementTrace:
    r: int
    k: int
    t: int
    e: int
    x: int
    constants: Optional[CrucialConstants]
    hypothesis_flags: dict
    steps: list[Step] = field(default_factory=list)
    status: str = "complete"
    diagnostic: str = ""
    final_verdict: Optional[Verdict] = None
    conclusions: dict = field(default_factory=dict)

    @property
    def beyond_k2(self) -> bool:
        """True when run with k != 2, where only the mechanics are meaningful."""
        return self.k != 2

    def header(self) -> dict:
        c = self.constants
        return {
            "r": self.r, "k": self.k, "t": self.t, "e": self.e, "x": self.x,
            "alpha_squared": str(c.alpha_squared) if c else None,
            "alpha": c.alpha if c else None,
            "delta": str(c.delta) if c else None,
            "b": str(c.b) if c else None,
            "status": self.status,
            "beyond_k2": self.beyond_k2,
            **{f"hypothesis_{name}": v for name, v in self.hypothesis_flags.items()},
            **{f"conclusion_{name}": v for name, v in self.conclusions.items()},
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "e_j", "v_j", "density"])
        for s in self.steps:
            w.writerow([s.j, s.e_j, s.v_j, float(s.density)])
        if self.steps:
            last = self.steps[-1]
            dens = Fraction(last.e_next, last.v_next**2) if last.v_next else Fraction(0)
            w.writerow([last.j + 1, last.e_next, last.v_next, float(dens)])
        return buf.getvalue()


def density_increment(
    H: Hypergraph,
    t: int,
    e: int,
    k: int = 2,
    budget: int = DEFAULT_BUDGET,
    check_property: bool = True,
) -> tuple[Hypergraph, IncrementTrace]:
    """Delete bad configurations, their ``I(X)`` and ``X`` until none is left.

    Returns the final hypergraph (on the surviving vertices; ``labels`` gives
    the original ids) and the trace. The loop stops early, with
    ``trace.status`` explaining why, if a bad configuration does not span
    exactly ``x`` vertices, if some other edge meets ``X`` in a number of
    vertices other than 0 or ``k-1``, or if a freeness search runs out of
    budget. Conclusions about size and density are reported, not asserted.
    """
    if t < 3:
        raise ValueError(f"need t >= 3, got t={t}")
    r = H.r
    x = bad_threshold(r, k, t)
    target = FreenessConstraint(x, t - 1)
    constants = crucial_constants(r) if r >= 3 else None

    flags: dict = {}
    n0, e0 = H.n, len(H.edges)
    flags["density"] = (Fraction(e0, n0 * n0) >= constants.b) if constants and n0 else None
    if check_property and 2 <= t <= e - 1:
        rep = freeness.is_family_free(H, property_family(r, k, e, t), budget)
        flags["property"] = None if rep.exhausted else rep.free
    else:
        flags["property"] = None
    trace = IncrementTrace(r, k, t, e, x, constants, flags)

    G = H
    orig = list(range(len(H.edges)))
    sum_v = 0
    j = 0
    while True:
        verdict = find_violation(G, target, budget)
        if verdict.exhausted:
            trace.status = "budget-exhausted"
            trace.diagnostic = f"freeness search exhausted at step {j}"
            trace.final_verdict = verdict
            break
        if verdict.free:
            trace.final_verdict = verdict
            break
        conf = verdict.witness.edge_ids
        X_mask = mask_of(verdict.witness.X)
        if len(verdict.witness.X) != x:
            trace.status = "aborted"
            trace.diagnostic = f"step {j}: bad configuration spans {len(verdict.witness.X)} vertices, expected {x}"
            break
        exact, heavy, light = intersection_profile(G, conf, X_mask, k)
        if heavy or light:
            trace.status = "aborted"
            trace.diagnostic = (
                f"step {j}: {len(heavy) + len(light)} edges meet X in a number of vertices other than 0 or {k - 1}"
            )
            break
        removed = set(conf) | set(exact)
        e_j, v_j = len(G.edges), G.n
        kept = [i for i in range(e_j) if i not in removed]
        G_next = delete_vertices(G, verdict.witness.X)
        if len(G_next.edges) != len(kept):
            raise AssertionError("removed edges differ from the edges meeting X")
        e_next, v_next = len(G_next.edges), G_next.n
        sum_v += v_j
        step_ineq = (e_next > e_j - Fraction(v_j, r - 2)) if r > 2 else None
        cum_ineq = (e_next > e0 - Fraction(sum_v, r - 2)) if r > 2 else None
        trace.steps.append(
            Step(
                j=j,
                X=tuple(G.labels[v] for v in verdict.witness.X),
                configuration=tuple(orig[i] for i in conf),
                I_of_X=tuple(orig[i] for i in exact),
                e_j=e_j,
                v_j=v_j,
                e_next=e_next,
                v_next=v_next,
                y=x * j,
                step_inequality=step_ineq,
                cumulative_inequality=cum_ineq,
            )
        )
        orig = [orig[i] for i in kept]
        G = G_next
        j += 1

    v_final, e_final = G.n, len(G.edges)
    concl = trace.conclusions
    concl["free"] = trace.final_verdict is not None and trace.final_verdict.free
    if constants is not None:
        concl["vertices_retained"] = v_final * v_final >= constants.alpha_squared * n0 * n0
    concl["density_not_decreased"] = (
        Fraction(e_final, v_final**2) >= Fraction(e0, n0 * n0) if v_final and n0 else None
    )
    concl["y_final"] = x * len(trace.steps)
    if constants is not None:
        # y < (1 - alpha) n  <=>  n - y > alpha n
        concl["y_below_limit"] = (n0 - x * len(trace.steps)) ** 2 > constants.alpha_squared * n0 * n0
    return G, trace


# ------------------------------------------------------ codegree upper bound


@dataclass(frozen=True)
class CodegreeUpperReport:
    precondition: Verdict
    max_codegree: int
    argmax: Optional[tuple[int, ...]]
    bound: Fraction  # n / (r - k)
    below_bound: bool
    links_free: Optional[bool]
    failing_link: Optional[tuple[int, ...]]

    @property
    def precondition_ok(self) -> bool:
        return self.precondition.free


def codegree_upper_check(H: Hypergraph, k: int, e: int, budget: int = DEFAULT_BUDGET) -> CodegreeUpperReport:
    """Largest (k-1)-codegree against ``n/(r-k)``, and freeness of every link.

    The input should be free at ``(e*r - (e-1)*k, e)``; when it is not, the
    report carries the violating witness and the remaining fields describe
    the graph anyway.
    """
    r = H.r
    if not 1 <= k < r:
        raise ValueError(f"need 1 <= k < r, got k={k}, r={r}")
    pre = find_violation(H, FreenessConstraint(e * r - (e - 1) * k, e), budget)
    inc = H.incidence(k - 1)
    if inc:
        argmax, ids = max(inc.items(), key=lambda kv: (len(kv[1]), [-v for v in kv[0]]))
        best = len(ids)
    else:
        argmax, best = None, 0
    bound = Fraction(H.n, r - k)
    u = r - k + 1
    link_c = FreenessConstraint(e * u - (e - 1), e)
    links_free, failing = True, None
    for T in sorted(inc):
        verdict = find_violation(link(H, T), link_c, budget)
        if verdict.exhausted:
            links_free = None
            continue
        if not verdict.free:
            links_free, failing = False, T
            break
    return CodegreeUpperReport(pre, best, argmax, bound, best < bound, links_free, failing)
