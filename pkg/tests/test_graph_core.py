import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle_graph
from hcp3.graph_core import (
    DuplicateEdgeError,
    EndpointRangeError,
    ParseError,
    ProjectionError,
    ProvenanceError,
    SelfLoopError,
    build_graph,
    collapsed_provenance,
    compose_provenance,
    degrees,
    export_dot,
    format_trace,
    identity_provenance,
    is_hamiltonian_cycle,
    make_provenance,
    parse_graph,
    parse_trace,
    parse_tsplib,
    project_cycle,
    serialize_graph,
)
from hcp3.generators import complete
from hcp3.oracle import count_hc, find_hc
from hcp3.reductions import cubify, sgate_pipeline, to_undirected


class TestBuildGraph:
    def test_triangle(self):
        g = build_graph("undirected", 3, [(0, 1), (1, 2), (2, 0)])
        assert g.n == 3 and g.num_edges == 3

    def test_antiparallel_arcs_are_distinct(self):
        g = build_graph("directed", 2, [(0, 1), (1, 0)])
        assert g.num_edges == 2

    def test_undirected_duplicate_rejected(self):
        with pytest.raises(DuplicateEdgeError):
            build_graph("undirected", 2, [(0, 1), (1, 0)])

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError, match="2"):
            build_graph("undirected", 3, [(2, 2)])

    def test_out_of_range_rejected(self):
        with pytest.raises(EndpointRangeError, match="5"):
            build_graph("directed", 3, [(0, 5)])

    def test_edges_sorted(self):
        g = build_graph("undirected", 4, [(3, 2), (1, 0), (2, 0)])
        assert g.edge_list() == [(0, 1), (0, 2), (2, 3)]

    def test_empty_and_single_vertex_are_legal(self):
        assert build_graph("undirected", 0, []).n == 0
        assert build_graph("undirected", 1, []).num_edges == 0


class TestDegrees:
    def test_k10(self):
        p = degrees(complete(10))
        assert (p.degree == 9).all() and p.k == 180

    def test_single_vertex(self):
        p = degrees(build_graph("undirected", 1, []))
        assert p.degree.tolist() == [0] and p.k == 0

    def test_directed_triangle(self):
        p = degrees(cycle_graph(3, directed=True))
        assert p.in_degree.tolist() == [1, 1, 1] and p.out_degree.tolist() == [1, 1, 1]
        assert p.k == 6

    def test_handshake(self):
        g = build_graph("undirected", 5, [(0, 1), (0, 2), (1, 2), (3, 4)])
        p = degrees(g)
        assert p.degree.sum() == 2 * g.num_edges and p.k == 4 * g.num_edges


class TestText:
    def test_parse_triangle(self):
        g = parse_graph("hcp undirected 3\n0 1\n1 2\n0 2\n")
        assert g == build_graph("undirected", 3, [(0, 1), (1, 2), (0, 2)])

    def test_parse_single_arc(self):
        g = parse_graph("hcp directed 2\n0 1\n")
        assert g.directed and g.edge_list() == [(0, 1)]

    def test_parse_out_of_range(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_graph("hcp undirected 2\n0 2\n")

    def test_comments_and_blank_lines(self):
        g = parse_graph("# note\n\nhcp undirected 2\n\n# edge\n0 1\n")
        assert g.num_edges == 1

    @pytest.mark.parametrize(
        "text",
        [
            "graph undirected 3\n",
            "hcp sideways 3\n",
            "hcp undirected x\n",
            "hcp undirected 3\n0 one\n",
            "hcp undirected 3\n0 1\n1 0\n",
            "",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_graph(text)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 9), st.booleans(), st.data())
    def test_round_trip(self, n, directed, data):
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (directed or u < v)]
        chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
        g = build_graph("directed" if directed else "undirected", n, chosen)
        text = serialize_graph(g)
        assert parse_graph(text) == g
        assert serialize_graph(parse_graph(text)) == text

    def test_tsplib(self):
        text = "NAME : t\nTYPE : HCP\nDIMENSION : 3\nEDGE_DATA_FORMAT : EDGE_LIST\nEDGE_DATA_SECTION\n1 2\n2 3\n3 1\n-1\nEOF\n"
        assert parse_tsplib(text) == cycle_graph(3)


class TestDot:
    def test_triangle(self):
        text = export_dot(cycle_graph(3))
        assert text.startswith("graph ")
        assert sum(1 for line in text.splitlines() if line.strip().endswith(";") and "--" not in line) == 3
        assert text.count("--") == 3

    def test_arc(self):
        assert "0 -> 1" in export_dot(build_graph("directed", 2, [(0, 1)]))

    def test_empty(self):
        lines = export_dot(build_graph("undirected", 0, [])).splitlines()
        assert lines == ["graph G {", "}"]


class TestProvenance:
    def test_identity_laws(self):
        p = make_provenance("x", 3, [0, 0, 1, 2, 2])
        assert compose_provenance(identity_provenance(5), p) == p
        assert compose_provenance(p, identity_provenance(3)) == p

    def test_compose_maps_through(self):
        inner = make_provenance("a", 2, [0, 1, 1])
        outer = make_provenance("b", 3, [2, 0, 1, 2])
        assert compose_provenance(outer, inner).origin.tolist() == [1, 0, 1, 1]

    def test_domain_mismatch(self):
        with pytest.raises(ProvenanceError):
            compose_provenance(make_provenance("b", 4, [0]), make_provenance("a", 2, [0, 1, 1]))

    def test_two_stage_pipeline_on_k4_is_surjective(self):
        _, prov, _ = sgate_pipeline(complete(4))
        assert prov.stage_provenances()  # more than one stage was composed
        assert sorted(set(prov.origin.tolist())) == [0, 1, 2, 3]

    def test_stage_levels_compose_to_origin(self):
        _, prov, _ = sgate_pipeline(complete(5))
        stages = prov.stage_provenances()
        comp = stages[0]
        for s in stages[1:]:
            comp = compose_provenance(s, comp)
        assert comp == prov

    def test_trace_round_trip(self):
        p = make_provenance("sgate", 3, [0, 0, 1, 2])
        assert parse_trace(format_trace(p)) == p

    def test_collapsed_trace_round_trip(self):
        for out_n in (0, 10):
            p = collapsed_provenance("x:collapsed", 3, out_n)
            assert parse_trace(format_trace(p)).collapsed

    def test_trace_must_cover_every_vertex(self):
        with pytest.raises(ParseError):
            parse_trace("trace x 2 3\n0 0\n2 1\n")


class TestProjection:
    def test_identity(self):
        g = cycle_graph(5)
        assert project_cycle(identity_provenance(5), [0, 1, 2, 3, 4], g) == [0, 1, 2, 3, 4]

    def test_karp_directed_triangle(self):
        g = cycle_graph(3, directed=True)
        out, prov = to_undirected(g)
        res = find_hc(out)
        assert res.found and out.n == 9
        lifted = project_cycle(prov, res.sequence, g)
        assert is_hamiltonian_cycle(g, lifted)

    def test_cubify_c5_all_cycles_lift(self):
        g = cycle_graph(5)
        out, prov = cubify(g)
        assert count_hc(out).count == 32
        # every Hamiltonian cycle of the 20-vertex output lifts to the 5-cycle
        lifted = set()
        for seq in _all_cycles(out):
            lifted.add(tuple(_normal(project_cycle(prov, seq, g))))
        assert lifted == {(0, 1, 2, 3, 4)}

    def test_bad_cycle_raises(self):
        g = cycle_graph(4)
        prov = make_provenance("x", 4, [0, 1, 2, 3])
        with pytest.raises(ProjectionError):
            project_cycle(prov, [0, 2, 1, 3], g)


def _normal(seq):
    i = seq.index(0)
    s = seq[i:] + seq[:i]
    return s if s[1] < s[-1] else [s[0]] + s[:0:-1]


def _all_cycles(g):
    """Every Hamiltonian cycle of a small cubic graph, by plain DFS from vertex 0."""
    adj = [sorted(set(g.neighbors(v).tolist())) for v in range(g.n)]
    out = []

    def dfs(path, seen):
        if len(path) == g.n:
            if 0 in adj[path[-1]] and path[1] < path[-1]:
                out.append(list(path))
            return
        for w in adj[path[-1]]:
            if w not in seen:
                seen.add(w)
                path.append(w)
                dfs(path, seen)
                path.pop()
                seen.discard(w)

    dfs([0], {0})
    return out


def test_is_hamiltonian_cycle_rejects_short_undirected():
    g = build_graph("undirected", 2, [(0, 1)])
    assert not is_hamiltonian_cycle(g, [0, 1])
    assert is_hamiltonian_cycle(build_graph("directed", 2, [(0, 1), (1, 0)]), [0, 1])
