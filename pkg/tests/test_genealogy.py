import math

import numpy as np
import pytest

from genediv import (
    INFINITE,
    AncestryIndex,
    GenealogyGraph,
    OpKind,
    read_genealogy_log,
    write_genealogy_log,
)

from oracles import (
    adist_matrix,
    brute_earliest,
    brute_edist_from,
    brute_gdist,
    brute_lca,
    random_dag,
)


def chain(length=4):
    """0 -> 1 -> 2 -> ... by successive mutations."""
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS, 0)
    for i in range(1, length):
        g.record_birth((i - 1,), OpKind.MUTATION, i)
    return g


def siblings():
    """One genesis parent with two mutation children."""
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS, 0)
    g.record_birth((0,), OpKind.MUTATION, 1)
    g.record_birth((0,), OpKind.MUTATION, 1)
    return g


def diamond():
    """Two mutation children of node 0, recombined into node 3."""
    g = siblings()
    g.record_birth((1, 2), OpKind.RECOMBINATION, 2)
    return g


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------

def test_record_birth_assigns_sequential_ids():
    g = GenealogyGraph()
    assert g.record_birth((), OpKind.GENESIS) == 0
    assert g.record_birth((0,), OpKind.MUTATION) == 1
    assert len(g) == 2
    assert g.parents(1) == (0,)
    assert g.kind(0) is OpKind.GENESIS


def test_record_birth_accepts_kind_names():
    g = GenealogyGraph()
    g.record_birth((), "genesis", 0)
    g.record_birth((0,), "mutation", 1)
    assert g.kind(1) is OpKind.MUTATION


def test_record_birth_checks_arity():
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS)
    with pytest.raises(ValueError):
        g.record_birth((0,), OpKind.GENESIS)
    with pytest.raises(ValueError):
        g.record_birth((), OpKind.MUTATION)
    with pytest.raises(ValueError):
        g.record_birth((0,), OpKind.RECOMBINATION)


def test_record_birth_rejects_unknown_parent():
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS)
    with pytest.raises(KeyError):
        g.record_birth((5,), OpKind.MUTATION)


def test_queries_reject_unknown_nodes():
    g = chain()
    with pytest.raises(KeyError):
        g.adist(0, 99)
    with pytest.raises(KeyError):
        g.gdist(-1, 0)
    with pytest.raises(KeyError):
        g.parents(4)


def test_birth_generation_recorded():
    g = chain(3)
    assert [g.birth_generation(i) for i in g.nodes()] == [0, 1, 2]


# ----------------------------------------------------------------------
# directed ancestry distance
# ----------------------------------------------------------------------

def test_adist_on_chain():
    g = chain(4)
    assert g.adist(0, 3) == 3
    assert g.adist(1, 2) == 1
    assert g.adist(2, 2) == 0
    assert g.adist(3, 0) is INFINITE


def test_adist_unrelated_is_infinite():
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS)
    g.record_birth((), OpKind.GENESIS)
    assert g.adist(0, 1) is INFINITE
    assert math.isinf(g.adist(1, 0))


def test_adist_takes_shortest_route():
    # 0 -> 1 -> 2 and the shortcut 0 -> 3 (recombining 0 and 2)
    g = chain(3)
    g.record_birth((0, 2), OpKind.RECOMBINATION, 3)
    assert g.adist(0, 3) == 1


# ----------------------------------------------------------------------
# relatives
# ----------------------------------------------------------------------

def test_latest_common_ancestor_on_fixtures():
    g = diamond()
    assert g.latest_common_ancestor(1, 2) == 0
    assert g.latest_common_ancestor(1, 3) == 1
    assert g.latest_common_ancestor(3, 3) == 3


def test_latest_common_ancestor_none_for_disjoint():
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS)
    g.record_birth((), OpKind.GENESIS)
    assert g.latest_common_ancestor(0, 1) is None


def test_earliest_ancestor():
    g = chain(4)
    assert g.earliest_ancestor(3) == 0
    assert g.earliest_ancestor(0) == 0
    assert g.depth(3) == 3
    assert g.depth(0) == 0


def test_earliest_ancestor_tie_breaks_to_smaller_id():
    # 0 and 1 are both roots at distance 1 from node 2.
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS)
    g.record_birth((), OpKind.GENESIS)
    g.record_birth((0, 1), OpKind.RECOMBINATION)
    assert g.earliest_ancestor(2) == 0


# ----------------------------------------------------------------------
# normalised genealogical distance
# ----------------------------------------------------------------------

def test_gdist_identity_is_zero():
    g = diamond()
    for n in g.nodes():
        assert g.gdist(n, n) == 0.0


def test_gdist_siblings_is_one():
    g = siblings()
    assert g.gdist(1, 2) == 1.0


def test_gdist_disjoint_is_one():
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS)
    g.record_birth((), OpKind.GENESIS)
    assert g.gdist(0, 1) == 1.0


def test_gdist_chain_parent_child_is_zero():
    g = chain(4)
    assert g.gdist(2, 3) == 0.0
    assert g.gdist(0, 1) == 0.0
    assert g.gdist(0, 3) == 0.0


def test_gdist_two_fresh_genesis_nodes_both_depth_zero():
    # no shared history and no history at all: still maximally distant
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS)
    g.record_birth((), OpKind.GENESIS)
    assert g.gdist(0, 1) == 1.0


def test_gdist_recombination_child_close_to_parents():
    g = diamond()
    assert g.gdist(1, 3) == 0.0
    assert g.gdist(2, 3) == 0.0


def test_gdist_symmetric_and_bounded_on_random_dags():
    rng = np.random.default_rng(11)
    for _ in range(30):
        g = random_dag(rng, max_nodes=40)
        n = len(g)
        for _ in range(20):
            a = int(rng.integers(n))
            b = int(rng.integers(n))
            d = g.gdist(a, b)
            assert d == g.gdist(b, a)
            assert 0.0 <= d <= 1.0


def test_graph_queries_match_brute_force_on_random_dags():
    rng = np.random.default_rng(12)
    for _ in range(40):
        g = random_dag(rng, max_nodes=40)
        n = len(g)
        m = adist_matrix(g)
        source = int(rng.integers(n))
        edist_row = brute_edist_from(g, source)
        for _ in range(12):
            a = int(rng.integers(n))
            b = int(rng.integers(n))
            assert g.adist(a, b) == m[a, b] or (math.isinf(g.adist(a, b)) and math.isinf(m[a, b]))
            assert g.latest_common_ancestor(a, b) == brute_lca(m, a, b)
            assert g.earliest_ancestor(a) == brute_earliest(m, a)
            assert g.gdist(a, b) == brute_gdist(m, a, b)
            ed = g.edist_oracle(source, b)
            assert ed == edist_row[b] or (math.isinf(ed) and math.isinf(edist_row[b]))


# ----------------------------------------------------------------------
# undirected oracle distance
# ----------------------------------------------------------------------

def test_edist_oracle_on_fixtures():
    g = diamond()
    assert g.edist_oracle(1, 2) == 2
    assert g.edist_oracle(0, 3) == 2
    assert g.edist_oracle(3, 3) == 0


def test_edist_oracle_disconnected():
    g = GenealogyGraph()
    g.record_birth((), OpKind.GENESIS)
    g.record_birth((), OpKind.GENESIS)
    assert math.isinf(g.edist_oracle(0, 1))


# ----------------------------------------------------------------------
# log round-trip
# ----------------------------------------------------------------------

def test_log_round_trip(tmp_path):
    rng = np.random.default_rng(13)
    g = random_dag(rng, max_nodes=60)
    path = tmp_path / "genealogy.log"
    write_genealogy_log(g, path)
    back = read_genealogy_log(path)
    assert len(back) == len(g)
    for node in g.nodes():
        assert back.parents(node) == g.parents(node)
        assert back.kind(node) is g.kind(node)
        assert back.birth_generation(node) == g.birth_generation(node)
    for _ in range(50):
        a = int(rng.integers(len(g)))
        b = int(rng.integers(len(g)))
        assert back.gdist(a, b) == g.gdist(a, b)


def test_log_format(tmp_path):
    g = diamond()
    path = tmp_path / "genealogy.log"
    write_genealogy_log(g, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "0,0,genesis"
    assert lines[1] == "1,1,mutation,0"
    assert lines[3] == "3,2,recombination,1,2"


def test_read_log_rejects_bad_lines(tmp_path):
    path = tmp_path / "bad.log"
    path.write_text("0,0,genesis\n2,0,mutation,0\n")
    with pytest.raises(ValueError):
        read_genealogy_log(path)
    path.write_text("0,0,teleport\n")
    with pytest.raises(ValueError):
        read_genealogy_log(path)
    path.write_text("0,0\n")
    with pytest.raises(ValueError):
        read_genealogy_log(path)
    path.write_text("x,0,genesis\n")
    with pytest.raises(ValueError):
        read_genealogy_log(path)


# ----------------------------------------------------------------------
# incremental index
# ----------------------------------------------------------------------

def test_ancestry_index_matches_graph_on_random_dags():
    rng = np.random.default_rng(14)
    for _ in range(25):
        g = random_dag(rng, max_nodes=60)
        index = AncestryIndex.from_graph(g)
        n = len(g)
        for _ in range(40):
            a = int(rng.integers(n))
            b = int(rng.integers(n))
            assert index.gdist(a, b) == g.gdist(a, b)
            assert index.depth(a) == g.depth(a)


def test_ancestry_index_requires_birth_order():
    index = AncestryIndex(capacity=4)
    index.add(0, ())
    with pytest.raises(ValueError):
        index.add(2, ())


def test_ancestry_index_capacity_bound():
    index = AncestryIndex(capacity=1)
    index.add(0, ())
    with pytest.raises(ValueError):
        index.add(1, (0,))


def test_ancestry_index_retain_keeps_alive_queries_working():
    g = chain(6)
    index = AncestryIndex.from_graph(g)
    expected = g.gdist(4, 5)
    index.retain([4, 5])
    assert index.gdist(4, 5) == expected
    assert 3 not in index
    with pytest.raises(KeyError):
        index.gdist(3, 5)


def test_ancestry_index_rejects_dropped_parent():
    index = AncestryIndex(capacity=8)
    index.add(0, ())
    index.retain([])
    with pytest.raises(KeyError):
        index.add(1, (0,))
