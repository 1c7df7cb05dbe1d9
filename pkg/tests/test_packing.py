from fractions import Fraction

import pytest

from oracles import brute_free
from sparsehyper.freeness import packing_family
from sparsehyper.packing import clean_packing, greedy_pack, is_maximal


@pytest.mark.parametrize("n, e, seed", [(9, 3, 0), (12, 4, 1), (15, 4, 2), (20, 5, 3)])
def test_free_and_maximal(n, e, seed):
    H, rep = greedy_pack(n, 3, e, seed=seed, check_maximal=True)
    assert rep.verified and rep.maximal
    assert rep.target == Fraction(n * n, 6)
    if len(H) <= 30:
        for c in packing_family(3, e).constraints:
            assert brute_free(H.edges, c.v, c.e)


def test_deterministic_per_seed():
    a, _ = greedy_pack(25, 3, 4, seed=7)
    b, _ = greedy_pack(25, 3, 4, seed=7)
    assert a == b


def test_lex_order():
    H, rep = greedy_pack(10, 3, 3, order="lex")
    assert H.edges[0] == (0, 1, 2) and rep.order == "lex"


def test_r4():
    H, rep = greedy_pack(14, 4, 3, seed=0, check_maximal=True)
    assert rep.verified and rep.maximal


def test_bad_arguments():
    with pytest.raises(ValueError):
        greedy_pack(2, 3, 3)
    with pytest.raises(ValueError):
        greedy_pack(9, 3, 3, order="zigzag")


def test_not_maximal_after_removal():
    H, _ = greedy_pack(12, 3, 3, seed=0)
    assert is_maximal(H, 3)
    assert not is_maximal(H.subgraph(range(1, len(H))), 3)


def test_record_has_verdicts():
    _, rep = greedy_pack(12, 3, 4, seed=0)
    rec = rep.record()
    assert rec["t2"] == rec["t3"] == rec["t4"] == "free"
    assert 0 < rep.ratio <= 1


def test_clean_packing():
    H, _ = greedy_pack(30, 3, 4, seed=1)
    out = clean_packing(H, 4)
    assert out.property.free
    assert out.threshold == Fraction(1, 7)
    assert out.above_threshold == (out.density > Fraction(1, 7))
