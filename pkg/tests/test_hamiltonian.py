"""QUBO construction, Ising conversion and energy evaluation."""

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from aaqaoa.automorphism import edge_equivalence_classes, find_automorphism_generators
from aaqaoa.errors import ContractError
from aaqaoa.graph import balanced_tree, full_rary_tree, make_graph, path_graph, star_graph
from aaqaoa.hamiltonian import (
    IsingHamiltonian,
    QuboMatrix,
    build_full_qubo,
    build_reduced_qubo,
    cut_value,
    energy,
    full_hamiltonian,
    percent_reduction,
    qubo_to_ising,
    reduced_hamiltonian,
    reduction_percentage,
    term_count,
)

K2 = make_graph(2, [(0, 1)])


def classes_of(g):
    return edge_equivalence_classes(g, find_automorphism_generators(g))


random_trees = st.integers(min_value=2, max_value=20).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.tuples(*(st.integers(min_value=0, max_value=i - 1)
                    for i in range(1, n))),
    )
)


def tree_from_parents(spec):
    n, parents = spec
    return make_graph(n, [(p, i + 1) for i, p in enumerate(parents)])


class TestQubo:
    def test_full_qubo_k2(self):
        assert build_full_qubo(K2).entries == {(0, 1): 1.0}

    def test_full_qubo_empty_graph(self):
        assert build_full_qubo(make_graph(3, [])).entries == {}

    def test_full_qubo_binary_15(self):
        q = build_full_qubo(full_rary_tree(2, 15))
        assert len(q.entries) == 14
        assert set(q.entries.values()) == {1.0}

    def test_reduced_qubo_star_29(self):
        g = star_graph(29)
        q = build_reduced_qubo(g, classes_of(g))
        assert q.entries == {(0, 1): 28.0}

    def test_reduced_qubo_k2_equals_full(self):
        assert build_reduced_qubo(K2, classes_of(K2)).entries == \
            build_full_qubo(K2).entries

    def test_reduced_qubo_binary_15_sizes(self):
        g = full_rary_tree(2, 15)
        q = build_reduced_qubo(g, classes_of(g))
        assert sorted(q.entries.values()) == [2.0, 4.0, 8.0]

    def test_reduced_qubo_rejects_foreign_classes(self):
        with pytest.raises(ContractError):
            build_reduced_qubo(path_graph(4), classes_of(star_graph(4)))

    def test_qubo_validation(self):
        with pytest.raises(ContractError):
            QuboMatrix(n=3, entries={(1, 0): 1.0})
        with pytest.raises(ContractError):
            QuboMatrix(n=3, entries={(0, 1): -1.0})

    @given(random_trees)
    @settings(max_examples=40, deadline=None)
    def test_weight_conservation(self, spec):
        g = tree_from_parents(spec)
        full = build_full_qubo(g)
        red = build_reduced_qubo(g, classes_of(g))
        assert full.total_weight() == red.total_weight() == g.m


class TestIsingConversion:
    def test_k2_maxcut(self):
        h = full_hamiltonian(K2, "maxcut")
        assert h.offset == 0.5
        assert h.linear == {}
        assert h.quadratic == {(0, 1): -0.5}
        assert term_count(h) == (0, 1, 1)

    def test_binary_15_adjacency_term_count(self):
        h = full_hamiltonian(full_rary_tree(2, 15), "adjacency")
        assert term_count(h) == (15, 14, 29)

    def test_balanced_31_adjacency_term_count(self):
        h = full_hamiltonian(balanced_tree(2, 4), "adjacency")
        assert h.total_terms == 61

    def test_reduced_balanced_2_3_adjacency(self):
        g = balanced_tree(2, 3)
        h = reduced_hamiltonian(g, classes_of(g), "adjacency")
        assert term_count(h) == (4, 3, 7)

    def test_unknown_convention(self):
        with pytest.raises(ContractError):
            qubo_to_ising(build_full_qubo(K2), "spinglass")

    def test_json_round_trip(self):
        g = balanced_tree(2, 2)
        h = reduced_hamiltonian(g, classes_of(g), "adjacency")
        assert IsingHamiltonian.from_json(h.to_json()) == h

    @given(random_trees)
    @settings(max_examples=30, deadline=None)
    def test_adjacency_full_has_n_plus_m_terms(self, spec):
        g = tree_from_parents(spec)
        lin, quad, total = term_count(full_hamiltonian(g, "adjacency"))
        assert (lin, quad, total) == (g.n, g.m, g.n + g.m)

    @given(random_trees)
    @settings(max_examples=30, deadline=None)
    def test_reduced_adjacency_term_bookkeeping(self, spec):
        g = tree_from_parents(spec)
        classes = classes_of(g)
        h = reduced_hamiltonian(g, classes, "adjacency")
        endpoints = {v for e in classes.representatives for v in e}
        assert h.total_terms == classes.num_classes + len(endpoints)


class TestTermCounts:
    @pytest.mark.parametrize("n,total", [(10, 19), (34, 67)])
    def test_full_binary_adjacency(self, n, total):
        assert full_hamiltonian(full_rary_tree(2, n), "adjacency").total_terms == total

    def test_k2_maxcut(self):
        assert full_hamiltonian(K2, "maxcut").total_terms == 1


class TestReductionPercentage:
    def test_binary_31_reported_counts(self):
        assert percent_reduction(61, 11) == 81.97

    def test_binary_15_reported_counts(self):
        assert percent_reduction(29, 9) == 68.97

    def test_no_reduction(self):
        assert percent_reduction(29, 29) == 0.0

    def test_convention_mismatch(self):
        full = full_hamiltonian(K2, "maxcut")
        red = full_hamiltonian(K2, "adjacency")
        with pytest.raises(ContractError):
            reduction_percentage(full, red)

    def test_on_hamiltonians(self):
        g = balanced_tree(2, 4)
        full = full_hamiltonian(g, "adjacency")
        red = reduced_hamiltonian(g, classes_of(g), "adjacency")
        assert reduction_percentage(full, red) == percent_reduction(
            full.total_terms, red.total_terms
        )


class TestEnergy:
    def test_k2(self):
        h = full_hamiltonian(K2, "maxcut")
        assert energy(h, "01") == 1.0
        assert energy(h, "00") == 0.0

    def test_path3_both_edges_cut(self):
        h = full_hamiltonian(path_graph(3), "maxcut")
        assert energy(h, "010") == 2.0

    def test_length_mismatch(self):
        with pytest.raises(ContractError):
            energy(full_hamiltonian(K2, "maxcut"), "011")


class TestCutValue:
    def test_depth_parity_coloring_cuts_all_edges(self):
        g = full_rary_tree(2, 15)
        depth = {0: 0}
        for u, v in g.edges:
            depth[v] = depth[u] + 1
        bits = "".join(str(depth[v] % 2) for v in range(g.n))
        assert cut_value(g, bits) == g.m

    def test_all_zeros(self):
        assert cut_value(star_graph(6), "0" * 6) == 0

    def test_five_cycle_brute_force(self):
        cycle = make_graph(5, [(i, (i + 1) % 5) for i in range(5)])
        best = max(
            cut_value(cycle, "".join(bits))
            for bits in product("01", repeat=5)
        )
        assert best == 4

    def test_length_mismatch(self):
        with pytest.raises(ContractError):
            cut_value(K2, "0")


class TestInvariants:
    @given(random_trees, st.integers(min_value=0, max_value=2**20 - 1))
    @settings(max_examples=40, deadline=None)
    def test_maxcut_energy_equals_cut_value(self, spec, bits):
        g = tree_from_parents(spec)
        x = format(bits % (1 << g.n), f"0{g.n}b")
        h = full_hamiltonian(g, "maxcut")
        assert energy(h, x) == cut_value(g, x)

    @given(random_trees, st.integers(min_value=0, max_value=2**20 - 1))
    @settings(max_examples=40, deadline=None)
    def test_complement_invariance(self, spec, bits):
        g = tree_from_parents(spec)
        x = format(bits % (1 << g.n), f"0{g.n}b")
        flipped = "".join("1" if ch == "0" else "0" for ch in x)
        h = full_hamiltonian(g, "maxcut")
        assert energy(h, x) == energy(h, flipped)
