import random
from itertools import combinations

import pytest

from powergraphs.errors import GraphTooLargeError
from powergraphs.groups import parse_group_spec, realize
from powergraphs.isocheck import (
    are_digraph_isomorphic,
    are_isomorphic,
    canonical_form,
    digraph_isomorphism,
)
from powergraphs.powergraph import DiGraph, Graph, directed_power_graph, power_graph
from tests.helpers import isomorphic_by_search, path, random_graph, random_perm, star


CORPUS = ["C6", "C12", "C2xC2", "C2xC4", "C2xC2xC2", "Q8", "D8", "C2xC6", "H3", "C3xC3xC3", "Q8xC3",
          "C2xC2xC2xC3"]


def _group(text):
    return realize(parse_group_spec(text))


def _bytes_of_relabeled(graph, labeling):
    rows = graph.permuted(labeling)
    rows = rows.out if isinstance(rows, DiGraph) else rows.adj
    width = (graph.vertex_count + 7) // 8
    return b"".join(r.to_bytes(width, "big") for r in rows)


def test_complete_graph_relabelings():
    K4 = Graph.complete(4)
    assert canonical_form(K4).bytes == canonical_form(K4.permuted([2, 0, 3, 1])).bytes


def test_path_and_triangle_differ():
    assert canonical_form(path(3)).bytes != canonical_form(Graph.complete(3)).bytes


def test_heisenberg_and_elementary_abelian_power_graphs():
    P1 = power_graph(_group("C3xC3xC3"))
    P2 = power_graph(_group("H3"))
    assert P1.edge_count() == P2.edge_count() == 39
    assert canonical_form(P1).bytes == canonical_form(P2).bytes
    result = are_isomorphic(P1, P2)
    assert result
    assert P1.permuted(result.witness) == P2


def test_q8_and_c2xc4_differ():
    P1 = power_graph(_group("Q8"))
    P2 = power_graph(_group("C2xC4"))
    assert (P1.edge_count(), P2.edge_count()) == (16, 13)
    assert not are_isomorphic(P1, P2)


@pytest.mark.parametrize("text", CORPUS)
def test_self_isomorphism_has_a_witness(text):
    P = power_graph(_group(text))
    result = are_isomorphic(P, P)
    assert result.isomorphic
    assert P.permuted(result.witness) == P


def test_digraph_examples():
    D = directed_power_graph(_group("C3"))
    assert are_digraph_isomorphic(D, D.permuted([0, 2, 1]))
    assert are_digraph_isomorphic(directed_power_graph(_group("C3xC3xC3")),
                                  directed_power_graph(_group("H3")))
    D4 = directed_power_graph(_group("C4"))
    assert not are_digraph_isomorphic(D4, D4.reversed())


def test_digraph_witness_maps_arcs():
    D1 = directed_power_graph(_group("Q8xC3"))
    D2 = D1.permuted(random_perm(D1.vertex_count, random.Random(5)))
    result = digraph_isomorphism(D1, D2)
    assert result
    assert D1.permuted(result.witness) == D2


@pytest.mark.parametrize("text", CORPUS)
def test_canonical_bytes_survive_relabeling(text):
    rng = random.Random(CORPUS.index(text))
    P = power_graph(_group(text))
    D = directed_power_graph(_group(text))
    expected = canonical_form(P).bytes
    expected_directed = canonical_form(D).bytes
    for _ in range(100):
        perm = random_perm(P.vertex_count, rng)
        assert canonical_form(P.permuted(perm)).bytes == expected
    for _ in range(20):
        perm = random_perm(D.vertex_count, rng)
        assert canonical_form(D.permuted(perm)).bytes == expected_directed


@pytest.mark.parametrize("text", CORPUS)
def test_labeling_reproduces_bytes(text):
    P = power_graph(_group(text))
    form = canonical_form(P)
    assert sorted(form.labeling) == list(range(P.vertex_count))
    assert form.bytes[5:] == _bytes_of_relabeled(P, form.labeling)
    assert form.bytes[1:5] == P.vertex_count.to_bytes(4, "big")


def test_repeated_runs_are_identical():
    P = power_graph(_group("C2xQ8"))
    assert canonical_form(P) == canonical_form(P)


def test_graph_and_digraph_bytes_differ():
    assert canonical_form(Graph(0, ())).bytes != canonical_form(DiGraph(0, ())).bytes


def test_size_bound():
    with pytest.raises(GraphTooLargeError):
        canonical_form(Graph.complete(4), max_vertices=3)


def _small_corpus():
    rng = random.Random(7)
    graphs = [path(4), path(5), star(3), star(4), Graph.complete(4), Graph(5, (0,) * 5)]
    graphs += [power_graph(_group(t)) for t in ["C4", "C2xC2", "C6", "C5", "C7"]]
    for n in (5, 6, 6, 7):
        for density in (0.3, 0.5, 0.7):
            g = random_graph(n, density, rng)
            graphs.append(g)
            graphs.append(g.permuted(random_perm(n, rng)))
    return graphs


def test_isomorphism_agrees_with_permutation_search():
    graphs = _small_corpus()
    for g1, g2 in combinations(graphs, 2):
        if g1.vertex_count != g2.vertex_count or g1.edge_count() != g2.edge_count():
            continue
        expected = isomorphic_by_search(g1, g2)
        assert bool(are_isomorphic(g1, g2)) == expected
        assert bool(are_isomorphic(g1, g2, collapse_twins=False)) == expected
        assert (canonical_form(g1, collapse_twins=False).bytes
                == canonical_form(g2, collapse_twins=False).bytes) == expected


def test_random_digraphs_agree_with_permutation_search():
    rng = random.Random(11)
    digraphs = []
    for n in (4, 5, 6):
        for _ in range(4):
            arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.35]
            d = DiGraph.from_arcs(n, arcs)
            digraphs.append(d)
            digraphs.append(d.permuted(random_perm(n, rng)))
    for d1, d2 in combinations(digraphs, 2):
        if d1.vertex_count != d2.vertex_count or d1.arc_count() != d2.arc_count():
            continue
        assert are_digraph_isomorphic(d1, d2) == isomorphic_by_search(d1, d2)
