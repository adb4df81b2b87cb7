import numpy as np
import pytest

from conftest import cycle_graph
from hcp3.gadgets import (
    Gadget,
    diamond,
    expanded_s_gate,
    in_split_gadget,
    out_split_gadget,
    petersen,
    s_gate,
    split_gadget,
    sr_gate,
)
from hcp3.generators import complete, random_graph
from hcp3.graph_core import build_graph, identity_provenance, is_hamiltonian_cycle, make_provenance
from hcp3.oracle import (
    FALSE,
    TRUE,
    Outcome,
    SearchBudget,
    admissible_pairs,
    check_equivalence,
    check_gadget_blocking,
    check_gadget_traversal,
    count_ham_paths,
    count_hc,
    find_hc,
    find_path_cover,
    ham_path,
    naive_count_hc,
    naive_has_path,
)
from hcp3.oracle import _pykernel, search, sigdp
from hcp3.oracle.checks import provenance_hierarchy
from hcp3.reductions import cubify, quick_3hcp, run_pipeline, to_undirected


def random_cases(count, directed):
    for seed in range(count):
        n = 3 + seed % 6
        yield seed, random_graph(n, 0.5 + 0.05 * (seed % 5), seed, directed)


class TestFindHC:
    def test_petersen_has_none(self):
        res = find_hc(petersen())
        assert res.outcome is Outcome.EXHAUSTED_NONE

    def test_k5(self):
        res = find_hc(complete(5))
        assert res.found and is_hamiltonian_cycle(complete(5), res.sequence)

    def test_quick_of_directed_triangle_lifts(self):
        g = cycle_graph(3, directed=True)
        out, prov, _ = quick_3hcp(g)
        eq = check_equivalence(g, out, prov)
        assert eq and eq.lift_valid and eq.lifted is not None

    def test_budget_exceeded(self):
        res = find_hc(petersen(), SearchBudget(1))
        assert res.outcome is Outcome.BUDGET_EXCEEDED and not res.complete

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError):
            SearchBudget(0)

    def test_tiny_graphs(self):
        assert not find_hc(build_graph("undirected", 1, [])).found
        assert not find_hc(build_graph("undirected", 2, [(0, 1)])).found
        assert find_hc(build_graph("directed", 2, [(0, 1), (1, 0)])).found

    @pytest.mark.parametrize("directed", [False, True])
    def test_agrees_with_naive(self, directed):
        for seed, g in random_cases(60, directed):
            res = find_hc(g)
            assert res.found == (naive_count_hc(g) > 0), seed
            if res.found:
                assert is_hamiltonian_cycle(g, res.sequence)


class TestCountHC:
    def test_c5(self):
        assert count_hc(cycle_graph(5)).count == 1

    def test_cubify_c5(self):
        assert count_hc(cubify(cycle_graph(5))[0]).count == 32

    def test_directed_triangle_and_karp_image(self):
        g = cycle_graph(3, directed=True)
        assert count_hc(g).count == 1
        assert count_hc(to_undirected(g)[0]).count == 1

    def test_k5_conventions(self):
        assert count_hc(complete(5)).count == 12
        assert count_hc(complete(5), convention="rotation").count == 24

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            count_hc(complete(4), convention="reflection")

    @pytest.mark.parametrize("directed", [False, True])
    def test_agrees_with_naive(self, directed):
        for seed, g in random_cases(60, directed):
            assert count_hc(g).count == naive_count_hc(g), seed
            assert count_hc(g, convention="rotation").count == naive_count_hc(g, "rotation"), seed

    def test_incomplete_count_is_flagged(self):
        assert not count_hc(complete(7), SearchBudget(3)).complete


class TestHamPath:
    def test_four_gate_top_to_left(self):
        res = ham_path(s_gate(4).graph, 0, 1)
        assert res.found and res.sequence[0] == 0 and res.sequence[-1] == 1

    def test_five_gate_bottom_pair(self):
        assert ham_path(s_gate(5).graph, 10, 12).found

    def test_diamond_middle_pair(self):
        assert ham_path(diamond().graph, 1, 2).outcome is Outcome.EXHAUSTED_NONE

    def test_endpoints_must_differ(self):
        with pytest.raises(ValueError):
            ham_path(complete(4), 1, 1)

    @pytest.mark.parametrize("directed", [False, True])
    def test_agrees_with_naive(self, directed):
        for seed, g in random_cases(40, directed):
            for u in range(g.n):
                for w in range(g.n):
                    if u != w:
                        assert ham_path(g, u, w).found == naive_has_path(g, u, w), (seed, u, w)

    def test_path_count_diamond(self):
        assert count_ham_paths(diamond().graph, 0, 3).count == 2


class TestGadgetChecks:
    def test_four_gate_traversal(self):
        v = check_gadget_traversal(s_gate(4))
        assert v.status == TRUE and v.checked == 6

    def test_five_gate_traversal(self):
        v = check_gadget_traversal(s_gate(5))
        assert v.status == TRUE and v.checked == 10

    @pytest.mark.parametrize("s", [6, 7])
    def test_larger_gates_traverse(self, s):
        assert check_gadget_traversal(s_gate(s))

    @pytest.mark.parametrize(
        "gadget",
        [s_gate(4), s_gate(5), s_gate(6), s_gate(7), expanded_s_gate(4), expanded_s_gate(5)],
        ids=lambda g: g.name,
    )
    def test_blocking(self, gadget):
        assert check_gadget_blocking(gadget).status == TRUE

    @pytest.mark.parametrize("make", [split_gadget, in_split_gadget, out_split_gadget], ids=["split", "in", "out"])
    def test_split_family(self, make):
        g = make()
        assert check_gadget_traversal(g) and check_gadget_blocking(g)

    def test_directed_pairs(self):
        assert len(admissible_pairs(sr_gate(2, 2))) == 4

    def test_diamond_does_not_block_as_a_pair_gadget(self):
        # a diamond with all four vertices as attachments is covered by two edges
        d = diamond()
        open_d = Gadget("open", d.mode, d.n, d.edges, tuple((v, "undirected") for v in range(4)))
        assert check_gadget_blocking(open_d).status == FALSE
        assert find_path_cover(open_d) is not None

    def test_blocking_failure_is_reported(self):
        path4 = Gadget("p4", "undirected", 4, ((0, 1), (1, 2), (2, 3)), tuple((v, "undirected") for v in range(4)))
        v = check_gadget_blocking(path4)
        assert v.status == FALSE and v.failures


class TestEquivalence:
    def test_c5_cubify_counts(self):
        g = cycle_graph(5)
        out, prov = cubify(g)
        eq = check_equivalence(g, out, prov, count_factor=32)
        assert eq and (eq.input_count, eq.output_count) == (1, 32)

    def test_petersen_quick(self):
        out, prov, _ = quick_3hcp(petersen())
        eq = check_equivalence(petersen(), out, prov)
        assert eq and eq.input_hamiltonian is False and eq.output_hamiltonian is False

    def test_k4_karp_counts(self):
        g = build_graph("directed", 4, [(u, v) for u in range(4) for v in range(4) if u != v])
        out, prov = to_undirected(g)
        eq = check_equivalence(g, out, prov, count_factor=1)
        assert eq and eq.input_count == eq.output_count == naive_count_hc(g)

    def test_mismatch_detected(self):
        g = cycle_graph(4)
        eq = check_equivalence(g, petersen(), make_provenance("x", 4, [0, 1, 2, 3, 0, 1, 2, 3, 0, 1]))
        assert not eq and eq.status == "inequivalent"

    def test_bad_lift_detected(self):
        g = cycle_graph(4)
        other = build_graph("undirected", 4, [(0, 2), (2, 1), (1, 3), (3, 0)])
        eq = check_equivalence(g, other, identity_provenance(4))
        assert eq.status == "inequivalent" and eq.lift_valid is False


class TestKernels:
    def test_reported_kernel(self):
        assert search.KERNEL in ("cython", "python")

    @pytest.mark.parametrize("directed", [False, True])
    def test_python_and_default_kernel_agree(self, directed):
        for seed, g in random_cases(40, directed):
            a = count_hc(g, kernel=_pykernel)
            b = count_hc(g)
            assert (a.count, a.nodes) == (b.count, b.nodes), seed
            fa, fb = find_hc(g, kernel=_pykernel), find_hc(g)
            assert fa.sequence == fb.sequence, seed


class TestGroupedSearch:
    def test_random_hierarchies_match_naive(self):
        for seed in range(80):
            n = 4 + seed % 7
            g = random_graph(n, 0.55, seed)
            rng = np.random.default_rng(seed)
            parents, size = [], n
            for _ in range(3):
                m = max(1, size - int(rng.integers(0, 3)))
                p = rng.integers(0, m, size)
                parents.append(p)
                size = int(p.max()) + 1
            want = naive_count_hc(g)
            assert count_hc(g, hierarchy=parents).count == want, seed
            res = find_hc(g, hierarchy=parents)
            assert res.found == (want > 0), seed
            if res.found:
                assert is_hamiltonian_cycle(g, res.sequence)

    @pytest.mark.parametrize("pipeline", ["sgate", "quick", "3hcp:4"])
    def test_pipeline_hierarchy_matches_kernel(self, pipeline):
        g = complete(5)
        out, prov, _ = run_pipeline(pipeline, g)
        hier = provenance_hierarchy(prov, out.n)
        assert hier is not None
        res = find_hc(out, hierarchy=hier)
        assert res.found and is_hamiltonian_cycle(out, res.sequence)

    def test_counts_with_pipeline_hierarchy(self):
        g = cycle_graph(6)
        out, prov = cubify(g)
        hier = provenance_hierarchy(prov, out.n)
        assert count_hc(out, hierarchy=hier).count == count_hc(out).count == 64

    def test_collapsed_provenance_has_no_hierarchy(self):
        out, prov, _ = quick_3hcp(build_graph("undirected", 2, [(0, 1)]))
        assert provenance_hierarchy(prov, out.n) is None

    def test_budget(self):
        out, prov, _ = run_pipeline("quick", complete(5))
        hier = provenance_hierarchy(prov, out.n)
        assert not find_hc(out, SearchBudget(1), hierarchy=hier).complete

    def test_cache_can_be_cleared(self):
        sigdp.clear_cache()
        assert count_hc(petersen(), hierarchy=[np.arange(10) // 5]).count == 0
