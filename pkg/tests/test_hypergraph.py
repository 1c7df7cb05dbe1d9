import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparsehyper.hypergraph import (
    ParseError,
    build,
    codegree,
    complete,
    delete_vertices,
    fano,
    link,
    parse,
    serialize,
    union_size,
    union_vertices,
)


@st.composite
def hypergraphs(draw, max_n=9, max_m=14):
    n = draw(st.integers(3, max_n))
    r = draw(st.integers(2, min(4, n)))
    pool = list(combinations(range(n), r))
    edges = draw(st.lists(st.sampled_from(pool), max_size=max_m))
    return build(n, r, edges)


class TestBuild:
    def test_complete_k4(self):
        H = build(4, 3, [{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}])
        assert len(H) == 4
        assert H == complete(4, 3)

    def test_duplicates_merge(self):
        lines = [{0, 1, 3}, {0, 4, 5}, {0, 2, 6}, {1, 2, 4}, {1, 5, 6}, {2, 3, 5}, {3, 4, 6}]
        H = build(7, 3, lines + [{0, 2, 6}])
        assert len(H) == 7
        assert H == fano()

    def test_out_of_range(self):
        with pytest.raises(ValueError, match=r"\(1, 2, 9\)"):
            build(5, 3, [(1, 2, 3), (1, 2, 9)])

    def test_wrong_size(self):
        with pytest.raises(ValueError, match="distinct vertices"):
            build(5, 3, [(1, 2)])
        with pytest.raises(ValueError, match="distinct vertices"):
            build(5, 3, [(1, 1, 2)])

    @given(hypergraphs())
    def test_canonical_order(self, H):
        shuffled = list(H.edges)
        random.Random(len(shuffled)).shuffle(shuffled)
        again = build(H.n, H.r, [tuple(reversed(e)) for e in shuffled])
        assert again.edges == H.edges
        assert list(H.edges) == sorted(H.edges)
        assert all(len(set(e)) == H.r and list(e) == sorted(e) for e in H.edges)


class TestCodegree:
    def test_examples(self):
        assert codegree(build(6, 3, [(1, 2, 3), (1, 2, 4), (1, 2, 5)]), (1, 2)) == 3
        assert codegree(build(6, 3, [(1, 2, 3), (1, 4, 5)]), (4,)) == 1
        assert codegree(complete(4, 3), (1,)) == 3

    def test_rejects_large_subsets(self):
        with pytest.raises(ValueError):
            codegree(complete(4, 3), (0, 1, 2))

    def test_empty_subset_counts_edges(self):
        assert codegree(fano(), ()) == 7

    @given(hypergraphs(), st.data())
    def test_matches_linear_scan(self, H, data):
        size = data.draw(st.integers(0, H.r - 1))
        T = tuple(sorted(data.draw(st.sets(st.integers(0, H.n - 1), min_size=size, max_size=size))))
        assert codegree(H, T) == sum(1 for e in H.edges if set(T) <= set(e))
        # link and codegree agree: A - T determines A when T is contained in A
        assert len(link(H, T).edges) == codegree(H, T)


class TestUnion:
    def test_examples(self):
        H = build(6, 3, [(1, 2, 3), (1, 4, 5)])
        assert union_size(H, [0, 1]) == 5
        assert union_size(H, [1]) == 3
        K = complete(4, 3)
        assert all(union_size(K, ids) == 4 for ids in combinations(range(4), 3))

    def test_unknown_id(self):
        with pytest.raises(IndexError):
            union_size(fano(), [7])

    @given(hypergraphs(), st.data())
    def test_bitset_path_matches_sets(self, H, data):
        if not H.edges:
            return
        ids = data.draw(st.sets(st.integers(0, len(H.edges) - 1)))
        plain = set()
        for i in ids:
            plain |= set(H.edges[i])
        assert union_size(H, ids) == len(plain)
        assert union_vertices(H, ids) == tuple(sorted(plain))


class TestLink:
    def test_pair_link(self):
        L = link(build(6, 3, [(1, 2, 3), (1, 2, 4), (1, 2, 5)]), (1, 2))
        assert L.r == 1
        assert [tuple(L.labels[v] for v in e) for e in L.edges] == [(3,), (4,), (5,)]

    def test_absent_subset(self):
        L = link(build(10, 3, [(1, 2, 3), (1, 4, 5)]), (9,))
        assert len(L) == 0 and L.n == 9

    def test_fano_point(self):
        # the three lines through 0 are 013, 045, 026
        L = link(fano(), (0,))
        pairs = [tuple(L.labels[v] for v in e) for e in L.edges]
        assert sorted(pairs) == [(1, 3), (2, 6), (4, 5)]
        covered = [v for p in pairs for v in p]
        assert len(covered) == len(set(covered)) == 6


class TestDeleteVertices:
    def test_examples(self):
        H = build(7, 3, [(1, 2, 3), (4, 5, 6)])
        D = delete_vertices(H, {1})
        assert D.n == 6 and len(D) == 1
        assert tuple(D.labels[v] for v in D.edges[0]) == (4, 5, 6)
        assert delete_vertices(H, set()) == H
        E = delete_vertices(complete(4, 3), {1, 2})
        assert E.n == 2 and len(E) == 0

    @given(hypergraphs(), st.data())
    def test_no_edge_meets_deleted(self, H, data):
        X = data.draw(st.sets(st.integers(0, H.n - 1)))
        D = delete_vertices(H, X)
        assert D.n == H.n - len(X)
        originals = [tuple(D.labels[v] for v in e) for e in D.edges]
        assert all(not set(e) & X for e in originals)
        assert sorted(originals) == sorted(e for e in H.edges if not set(e) & X)


class TestText:
    def test_parse_single(self):
        H = parse("4 3 1\n0 1 2\n")
        assert H.edges == ((0, 1, 2),)

    def test_fano_round_trip_bytes(self):
        text = serialize(fano())
        assert serialize(parse(text)) == text
        assert text.startswith("7 3 7\n0 1 3\n")

    def test_missing_line(self):
        with pytest.raises(ParseError) as err:
            parse("4 3 2\n0 1 2")
        assert err.value.lineno == 3

    @pytest.mark.parametrize(
        "text, lineno",
        [
            ("4 3\n", 1),
            ("a b c\n", 1),
            ("4 3 1\n0 1\n", 2),
            ("4 3 1\n0 2 1\n", 2),
            ("4 3 1\n0 1 7\n", 2),
            ("4 3 1\n0 1 2\n0 1 3\n", 3),
            ("", 1),
        ],
    )
    def test_errors_have_line_numbers(self, text, lineno):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.lineno == lineno

    @given(hypergraphs())
    def test_round_trip(self, H):
        assert parse(serialize(H)) == H
        assert serialize(parse(serialize(H))) == serialize(H)

    def test_empty_graph(self):
        assert serialize(parse("5 2 0\n")) == "5 2 0\n"


def test_incidence_is_thread_safe():
    import threading

    H = complete(8, 3)
    seen = []

    def work():
        seen.append(codegree(H, (0, 1)))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert seen == [6] * 8
