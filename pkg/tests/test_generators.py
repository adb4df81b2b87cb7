import networkx as nx
import pytest

from hcp3.gadgets import petersen
from hcp3.generators import (
    INSTANCES,
    TABLE1,
    NamedInstance,
    SignatureMismatch,
    UnknownInstance,
    andrasfai,
    complete,
    generate,
    knight,
    named,
    paley,
    random_graph,
)
from hcp3.graph_core import degrees


def to_nx(g):
    h = nx.DiGraph() if g.directed else nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edge_list())
    return h


class TestComplete:
    def test_k10(self):
        assert complete(10).num_edges == 45

    def test_k100_regular(self):
        assert (degrees(complete(100)).degree == 99).all()

    def test_k1(self):
        g = complete(1)
        assert g.n == 1 and g.num_edges == 0

    def test_k0_rejected(self):
        with pytest.raises(ValueError):
            complete(0)


class TestAndrasfai:
    def test_six(self):
        g = andrasfai(6)
        assert (g.n, g.num_edges) == (17, 51)
        assert (degrees(g).degree == 6).all()

    def test_two_is_c5(self):
        assert nx.is_isomorphic(to_nx(andrasfai(2)), nx.cycle_graph(5))

    @pytest.mark.parametrize("k", [3, 4, 6])
    def test_triangle_free(self, k):
        assert sum(nx.triangles(to_nx(andrasfai(k))).values()) == 0


class TestPaley:
    def test_29(self):
        assert (degrees(paley(29)).degree == 14).all()

    def test_5_is_c5(self):
        assert nx.is_isomorphic(to_nx(paley(5)), nx.cycle_graph(5))

    def test_13(self):
        assert (degrees(paley(13)).degree == 6).all()

    @pytest.mark.parametrize("q", [13, 29])
    def test_matches_networkx(self, q):
        ref = nx.Graph(nx.paley_graph(q).to_undirected())
        ref.remove_edges_from(nx.selfloop_edges(ref))
        assert nx.is_isomorphic(to_nx(paley(q)), ref)

    @pytest.mark.parametrize("q", [7, 15, 9])
    def test_bad_order(self, q):
        with pytest.raises(ValueError):
            paley(q)


class TestKnight:
    def test_8x8(self):
        p = degrees(knight(8, 8))
        assert knight(8, 8).num_edges == 168
        assert p.max_degree == 8 and p.mean_degree == pytest.approx(5.25)

    def test_1x1(self):
        g = knight(1, 1)
        assert g.n == 1 and g.num_edges == 0

    def test_3x3_centre_isolated(self):
        assert degrees(knight(3, 3)).degree[4] == 0


class TestNamed:
    def test_foster_cage(self):
        g = named("foster-cage")
        assert g.n == 30 and (degrees(g).degree == 5).all()
        assert nx.girth(to_nx(g)) == 5

    def test_sheehan_40(self):
        assert named("sheehan-40").num_edges == 401

    def test_24_cell(self):
        assert named("24-cell").num_edges == 96

    def test_sims_gewirtz_is_strongly_regular(self):
        h = to_nx(named("sims-gewirtz"))
        # triangle-free with every non-adjacent pair sharing two neighbours
        assert sum(nx.triangles(h).values()) == 0
        for u in range(0, 56, 7):
            for w in range(56):
                if w != u and not h.has_edge(u, w):
                    assert len(set(h[u]) & set(h[w])) == 2

    def test_goldner_harary_is_maximal_planar(self):
        h = to_nx(named("goldner-harary"))
        assert nx.check_planarity(h)[0] and h.number_of_edges() == 3 * h.number_of_nodes() - 6

    @pytest.mark.parametrize("inst", TABLE1, ids=lambda i: i.name)
    def test_every_row_loads(self, inst):
        g = named(inst.name)
        assert (g.n, g.num_edges) == (inst.vertices, inst.edges)

    def test_unknown(self):
        with pytest.raises(UnknownInstance):
            named("heawood")

    def test_signature_check(self):
        bogus = NamedInstance("x", 10, 15, 3, 3.0, 0)
        bogus.check(petersen())
        with pytest.raises(SignatureMismatch):
            NamedInstance("x", 10, 16, 3, 3.0, 0).check(petersen())

    def test_index(self):
        assert set(INSTANCES) == {i.name for i in TABLE1} and len(TABLE1) == 12


class TestGenerate:
    @pytest.mark.parametrize(
        "spec, n",
        [("k7", 7), ("K7", 7), ("andrasfai:3", 8), ("paley:13", 13), ("knight:3x4", 12), ("sousselier", 16)],
    )
    def test_specs(self, spec, n):
        assert generate(spec).n == n

    def test_unknown(self):
        with pytest.raises(UnknownInstance):
            generate("grid:3x3")


class TestRandom:
    def test_seeded(self):
        assert random_graph(8, 0.5, 7) == random_graph(8, 0.5, 7)

    def test_directed(self):
        g = random_graph(6, 1.0, 0, directed=True)
        assert g.directed and g.num_edges == 30

    def test_empty(self):
        assert random_graph(1, 0.5, 0).num_edges == 0
