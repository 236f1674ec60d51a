import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treeplateaux import (
    Graph,
    GraphError,
    RootedTree,
    make_path,
    make_random_tree,
    make_starlike_uniform,
    nontrivial_count,
    nontrivial_pairs,
    reduction_stats,
    simplify,
    validate,
)

from conftest import chain_interior_index, contraction_oracle_edges


def test_p6_at_second_becomes_p4():
    result = simplify(make_path(6, root_position=2))
    expected = make_path(4, root_position=2)
    assert result.tree.graph.adjacency == expected.graph.adjacency
    assert result.tree.root == expected.root
    assert result.stats.removed_count == 2


def test_p5_center_root_is_fixed_point():
    tree = make_path(5, root_position=3)
    result = simplify(tree)
    assert result.tree.graph.adjacency == tree.graph.adjacency
    assert result.tree.root == tree.root
    assert result.stats.reduction_percent == 0.0


def test_chain_behind_root_keeps_one_mid():
    # root - t1 - t2 - t3 - b with two extra leaves keeping b nontrivial
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6)])
    result = simplify(RootedTree(graph=g, root=0))
    survivors = sorted(result.index_map)
    assert survivors == [0, 1, 4, 5, 6]  # t2, t3 deleted; t1 (root-adjacent) kept
    m = result.index_map
    assert set(result.tree.graph.edges()) == {
        tuple(sorted((m[0], m[1]))),
        tuple(sorted((m[1], m[4]))),
        tuple(sorted((m[4], m[5]))),
        tuple(sorted((m[4], m[6]))),
    }


def test_reduction_stats_paper_scale_examples():
    # 1154 -> 53 vertices is a 95.4% reduction; 5636 -> 612 is 89.1%
    assert round(100 * (1154 - 53) / 1154, 1) == 95.4
    assert round(100 * (5636 - 612) / 5636, 1) == 89.1
    long_chain = simplify(make_path(1154, root_position=1))
    assert long_chain.stats.simplified_vertex_count == 3
    stats = reduction_stats(make_path(5, 3), simplify(make_path(5, 3)).tree)
    assert stats.reduction_percent == 0.0
    assert stats.removed_count == 0


def test_stats_fields_consistent():
    tree = make_random_tree(80, 9, 0.2)
    result = simplify(tree)
    s = result.stats
    assert s.removed_count == s.original_vertex_count - s.simplified_vertex_count
    assert s.reduction_percent == pytest.approx(
        100.0 * s.removed_count / s.original_vertex_count
    )
    assert s.nontrivial_count_before == s.nontrivial_count_after


def test_provenance_flows_through():
    g = Graph.from_edges(
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
        labels=[10, 11, 12, 13, 14, 15],
        positions=[(float(i), 0.0, 0.0) for i in range(6)],
    )
    result = simplify(RootedTree(graph=g, root=1))
    out = result.tree.graph
    for old, new in result.index_map.items():
        assert out.labels[new] == g.labels[old]
        assert out.positions[new] == g.positions[old]


def _structure_matches_oracle(tree, result):
    """Map the simplified tree onto the chain-decomposition oracle structure."""
    interior_of = chain_interior_index(tree)
    g_in = tree.graph

    def tag(old):
        if old == tree.root or g_in.degree(old) != 2:
            return ("v", old)
        return ("chain", interior_of[old])

    new_to_old = {new: old for old, new in result.index_map.items()}
    actual = {
        frozenset((tag(new_to_old[u]), tag(new_to_old[v])))
        for u, v in result.tree.graph.edges()
    }
    return actual == contraction_oracle_edges(tree)


def _check_all_properties(tree):
    result = simplify(tree)
    out = result.tree
    g_in, g_out = tree.graph, out.graph

    assert validate(g_out).passed and g_out.is_tree()
    # root and its neighbors survive
    assert tree.root in result.index_map
    for u in g_in.neighbors(tree.root):
        assert u in result.index_map
    # survivor degrees unchanged, so nontrivial count is preserved
    for old, new in result.index_map.items():
        assert g_out.degree(new) == g_in.degree(old)
    assert nontrivial_count(tree) == nontrivial_count(out)
    # spine preservation: pendant edges at degree>=3 vertices survive
    for u, v in g_in.edges():
        if g_in.degree(u) == 1 and g_in.degree(v) >= 3:
            u, v = v, u
        if g_in.degree(v) == 1 and g_in.degree(u) >= 3:
            assert (
                tuple(sorted((result.index_map[u], result.index_map[v])))
                in set(g_out.edges())
            )
    # no edge joins two trivial vertices in the output
    for u, v in g_out.edges():
        u_triv = u != out.root and g_out.degree(u) == 2
        v_triv = v != out.root and g_out.degree(v) == 2
        assert not (u_triv and v_triv)
    # every non-spine path between nontrivial neighbors now has length 1 or 2
    assert all(p.length in (1, 2) for p in nontrivial_pairs(out))
    # exactly one interior survivor per input chain, structure per the oracle
    interior_of = chain_interior_index(tree)
    survivors_per_chain = {}
    for old in result.index_map:
        if old in interior_of:
            survivors_per_chain.setdefault(interior_of[old], []).append(old)
    for pair_index, pair in enumerate(nontrivial_pairs(tree)):
        if pair.length >= 2:
            assert len(survivors_per_chain.get(pair_index, [])) == 1
    assert _structure_matches_oracle(tree, result)
    # idempotence
    again = simplify(out)
    assert again.tree.graph.adjacency == out.graph.adjacency
    assert again.tree.root == out.root


@pytest.mark.parametrize("n,root_position", [(2, 1), (3, 2), (9, 1), (9, 5), (12, 12)])
def test_path_properties(n, root_position):
    _check_all_properties(make_path(n, root_position))


@pytest.mark.parametrize("k,m", [(3, 1), (3, 4), (5, 2), (4, 7)])
def test_starlike_properties(k, m):
    _check_all_properties(make_starlike_uniform(k, m))


@given(n=st.integers(2, 120), seed=st.integers(0, 10**6),
       q=st.sampled_from([0.0, 0.3, 0.7]))
@settings(max_examples=80, deadline=None)
def test_random_tree_properties(n, seed, q):
    _check_all_properties(make_random_tree(n, seed, q))


@given(seed=st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_contraction_is_label_order_independent(seed):
    """Shuffled vertex labels change the pass order but not the contraction."""
    rng = random.Random(seed)
    tree = make_random_tree(rng.randrange(3, 80), seed, 0.3)
    perm = list(range(tree.graph.n))
    rng.shuffle(perm)
    relabeled = RootedTree(
        graph=Graph.from_edges(
            tree.graph.n, [(perm[u], perm[v]) for u, v in tree.graph.edges()]
        ),
        root=perm[tree.root],
    )
    base = simplify(tree)
    shuffled = simplify(relabeled)
    assert base.tree.graph.n == shuffled.tree.graph.n
    assert sorted(base.tree.graph.degrees()) == sorted(shuffled.tree.graph.degrees())
    assert _structure_matches_oracle(relabeled, shuffled)


def test_rejects_cyclic_graph():
    with pytest.raises(GraphError):
        RootedTree(graph=Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)]), root=0)
