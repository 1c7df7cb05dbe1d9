import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_free
from sparsehyper.freeness import FreenessConstraint, find_violation
from sparsehyper.generators import planted_instance
from sparsehyper.hypergraph import build, fano
from sparsehyper.increment import (
    bad_threshold,
    codegree_upper_check,
    crucial_constants,
    density_increment,
    projection,
    structural_analyze,
)


class TestConstants:
    def test_r3(self):
        c = crucial_constants(3)
        assert c.alpha_squared == Fraction(1, 25)
        assert c.alpha_exact == Fraction(1, 5)
        assert c.delta == Fraction(1, 11)
        assert c.b == Fraction(1, 7)

    def test_r4(self):
        # alpha^2 = 18/48, delta = 1/25, b = max(1/12 - 1/200, 1/19) = 47/600
        c = crucial_constants(4)
        assert c.alpha_squared == Fraction(3, 8)
        assert c.alpha_exact is None
        assert c.alpha == pytest.approx(0.6123724356957945, abs=1e-15)
        assert c.delta == Fraction(1, 25)
        assert c.b == Fraction(47, 600)

    def test_small_r_rejected(self):
        with pytest.raises(ValueError):
            crucial_constants(2)

    @pytest.mark.parametrize("r", range(3, 12))
    def test_ranges(self, r):
        c = crucial_constants(r)
        assert 0 < c.alpha_squared < 1 and 0 < c.delta < 1 and c.b > 0


def test_bad_threshold():
    assert bad_threshold(3, 2, 4) == 4
    assert bad_threshold(4, 2, 3) == 5
    assert bad_threshold(5, 3, 4) == 8


class TestStructural:
    H = build(8, 3, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (1, 5, 6), (2, 5, 6)])

    def test_single_step_example(self):
        rep = structural_analyze(self.H, [0, 1, 2], 2, 4, 5)
        assert rep.X == (1, 2, 3, 4) and rep.x_expected == 4 and rep.size_ok
        assert [self.H.edges[i] for i in rep.I_of_X] == [(1, 5, 6), (2, 5, 6)]
        assert rep.intersection_violations == ()
        # both project onto {5, 6}
        assert not rep.projection_distinct

    def test_loop_example(self):
        G, trace = density_increment(self.H, 4, 5, check_property=False)
        assert trace.status == "complete"
        assert len(trace.steps) == 1
        step = trace.steps[0]
        assert step.X == (1, 2, 3, 4) and step.I_of_X == (3, 4)
        assert len(G) == 0 and G.n == 4 and G.labels == (0, 5, 6, 7)

    def test_rejects_wrong_count(self):
        with pytest.raises(ValueError):
            structural_analyze(self.H, [0, 1], 2, 4, 5)

    def test_projection(self):
        P = projection(self.H, (1, 2, 3, 4), (3, 4))
        assert len(P) == 1 and P.r == 2 and P.n == 4

    def test_planted(self):
        H = planted_instance(4, 3, 1, random.Random(0))
        rep = structural_analyze(H, [0, 1], 2, 3, 5)
        assert rep.size_ok and rep.intersection_violations == ()
        assert rep.projection_distinct
        assert rep.I_bound_status == "exact"


def _planted_cases():
    return [(r, t, blocks, seed) for r, t in [(3, 4), (3, 5), (4, 3), (4, 4), (5, 3)] for blocks in (1, 3) for seed in range(2)]


@pytest.mark.parametrize("r, t, blocks, seed", _planted_cases())
def test_exact_accounting_on_planted(r, t, blocks, seed):
    H = planted_instance(r, t, blocks, random.Random(seed), background=8)
    x = bad_threshold(r, 2, t)
    G, trace = density_increment(H, t, t + 1, check_property=False)
    assert trace.status == "complete", trace.diagnostic
    assert len(trace.steps) == blocks
    for s in trace.steps:
        assert s.v_j - s.v_next == x
        assert s.e_j - s.e_next == (t - 1) + len(s.I_of_X)
        assert s.y == x * s.j
    assert trace.conclusions["free"]
    assert brute_free(G.edges, x, t - 1) if len(G) <= 25 else find_violation(G, FreenessConstraint(x, t - 1)).free
    assert G.n == H.n - x * blocks
    # retained labels are original ids
    orig = {tuple(G.labels[v] for v in e) for e in G.edges}
    assert orig <= set(H.edges)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_loop_terminates_free_or_explains(seed, blocks):
    H = planted_instance(3, 4, blocks, random.Random(seed), spokes=3, bridges=2)
    G, trace = density_increment(H, 4, 5, check_property=False)
    if trace.status == "complete":
        assert find_violation(G, FreenessConstraint(5, 3)).free
    else:
        assert trace.diagnostic
    csv_text = trace.to_csv()
    assert csv_text.splitlines()[0] == "j,e_j,v_j,density"


def test_free_input_takes_no_steps():
    G, trace = density_increment(fano(), 4, 5, check_property=False)
    # Fano is (5,3)-free, so three edges never fit in x = 4 vertices
    assert trace.status == "complete" and trace.steps == [] and G == fano()
    assert trace.conclusions["vertices_retained"]


def test_header_fields():
    H = planted_instance(3, 4, 2, random.Random(1))
    _, trace = density_increment(H, 4, 5)
    h = trace.header()
    assert h["alpha_squared"] == "1/25" and h["b"] == "1/7" and h["x"] == 4
    assert h["hypothesis_property"] in (True, False)
    assert not h["beyond_k2"]


class TestCodegreeUpper:
    def test_fano_k2(self):
        rep = codegree_upper_check(fano(), 2, 3)
        assert rep.precondition_ok
        assert rep.max_codegree == 3 and rep.bound == 7
        assert rep.below_bound and rep.links_free

    def test_fano_k1_precondition_fails(self):
        rep = codegree_upper_check(fano(), 1, 3)
        assert not rep.precondition_ok
        assert rep.precondition.witness is not None

    def test_link_violation_found(self):
        # two edges through 0 sharing another vertex: the link of 0 has two
        # pairs sharing a vertex, which is not (3, 2)-free
        H = build(6, 3, [(0, 1, 2), (0, 1, 3)])
        rep = codegree_upper_check(H, 2, 2)
        assert rep.links_free is False and rep.failing_link == (0,)
