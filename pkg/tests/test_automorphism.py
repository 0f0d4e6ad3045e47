"""Automorphism generators, edge orbits and the brute-force oracle."""

import pytest
from hypothesis import given, settings, strategies as st

from aaqaoa.automorphism import (
    GeneratorSet,
    Permutation,
    brute_force_automorphisms,
    edge_classes_from_elements,
    edge_equivalence_classes,
    find_automorphism_generators,
    identity_permutation,
    is_automorphism,
    orbit_witness,
    refine_partition,
    vertex_orbits,
)
from aaqaoa.errors import ContractError, ResourceError
from aaqaoa.graph import (
    balanced_tree,
    full_rary_tree,
    make_graph,
    path_graph,
    star_graph,
)

K2 = make_graph(2, [(0, 1)])


def group_order(gens: GeneratorSet) -> int:
    """Size of the generated group, by breadth-first closure."""
    ident = identity_permutation(gens.n)
    seen = {ident.map}
    frontier = [ident]
    while frontier:
        nxt = []
        for word in frontier:
            for gen in gens.generators:
                prod = gen.compose(word)
                if prod.map not in seen:
                    seen.add(prod.map)
                    nxt.append(prod)
        frontier = nxt
    return len(seen)


random_trees = st.integers(min_value=2, max_value=16).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.tuples(*(st.integers(min_value=0, max_value=i - 1)
                    for i in range(1, n))),
    )
)


def tree_from_parents(spec):
    n, parents = spec
    return make_graph(n, [(p, i + 1) for i, p in enumerate(parents)])


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(ContractError):
            Permutation((0, 0, 1))

    def test_compose_and_inverse(self):
        a = Permutation((1, 2, 0))
        b = Permutation((0, 2, 1))
        assert a.compose(b).map == tuple(a(b(v)) for v in range(3))
        assert a.compose(a.inverse()).is_identity()

    def test_apply_edge_normalizes(self):
        a = Permutation((2, 1, 0))
        assert a.apply_edge((0, 1)) == (1, 2)


class TestRefinePartition:
    def test_star_unit_partition(self):
        cells = refine_partition(star_graph(5), [list(range(5))])
        assert [sorted(c) for c in cells] in ([[0], [1, 2, 3, 4]],
                                              [[1, 2, 3, 4], [0]])

    def test_path3_unit_partition(self):
        cells = refine_partition(path_graph(3), [list(range(3))])
        assert sorted(sorted(c) for c in cells) == [[0, 2], [1]]

    def test_binary7_separates_levels(self):
        cells = refine_partition(full_rary_tree(2, 7), [list(range(7))])
        as_sets = [frozenset(c) for c in cells]
        # root, internal and leaf layers must not share a cell
        assert frozenset([0]) in as_sets
        assert frozenset([1, 2]) in as_sets
        assert frozenset([3, 4, 5, 6]) in as_sets

    def test_rejects_bad_partition(self):
        with pytest.raises(ContractError):
            refine_partition(path_graph(3), [[0, 1]])
        with pytest.raises(ContractError):
            refine_partition(path_graph(3), [[0, 1, 2], []])

    @given(random_trees)
    @settings(max_examples=40)
    def test_result_is_equitable_and_idempotent(self, spec):
        g = tree_from_parents(spec)
        cells = refine_partition(g, [list(range(g.n))])
        cell_of = {v: k for k, cell in enumerate(cells) for v in cell}
        for cell in cells:
            signatures = set()
            for v in cell:
                counts = [0] * len(cells)
                for w in g.adjacency[v]:
                    counts[cell_of[w]] += 1
                signatures.add(tuple(counts))
            assert len(signatures) == 1
        assert refine_partition(g, [list(c) for c in cells]) == cells


class TestGeneratorSearch:
    def test_k2(self):
        gens = find_automorphism_generators(K2)
        assert group_order(gens) == 2

    def test_binary_5_vertices(self):
        gens = find_automorphism_generators(full_rary_tree(2, 5))
        assert group_order(gens) == 2
        nonid = [p for p in gens.generators if not p.is_identity()]
        assert nonid and nonid[0].map == (0, 1, 2, 4, 3)

    def test_star_5(self):
        gens = find_automorphism_generators(star_graph(5))
        assert group_order(gens) == 24

    def test_all_generators_are_automorphisms(self):
        for g in (full_rary_tree(2, 15), balanced_tree(3, 2), star_graph(9)):
            gens = find_automorphism_generators(g)
            assert all(is_automorphism(g, p) for p in gens.generators)

    def test_search_cap(self):
        with pytest.raises(ResourceError):
            find_automorphism_generators(star_graph(20), cap=10)


class TestBruteForceOracle:
    def test_k2(self):
        assert len(brute_force_automorphisms(K2)) == 2

    def test_path3(self):
        perms = sorted(p.map for p in brute_force_automorphisms(path_graph(3)))
        assert perms == [(0, 1, 2), (2, 1, 0)]

    def test_balanced_2_2_has_wreath_order_8(self):
        assert len(brute_force_automorphisms(balanced_tree(2, 2))) == 8

    def test_cap(self):
        with pytest.raises(ResourceError):
            brute_force_automorphisms(path_graph(11))


class TestEdgeClasses:
    @pytest.mark.parametrize("g,count", [
        (full_rary_tree(2, 15), 3),
        (full_rary_tree(2, 10), 7),
        (balanced_tree(2, 4), 4),
        (K2, 1),
    ])
    def test_class_counts(self, g, count):
        gens = find_automorphism_generators(g)
        assert edge_equivalence_classes(g, gens).num_classes == count

    def test_star_29_single_class(self):
        g = star_graph(29)
        classes = edge_equivalence_classes(g, find_automorphism_generators(g))
        assert classes.num_classes == 1
        assert classes.sizes == (28,)
        assert classes.representatives == ((0, 1),)

    def test_balanced_trees_have_height_many_classes(self):
        for r, h in ((2, 2), (3, 2), (2, 3), (2, 4)):
            g = balanced_tree(r, h)
            gens = find_automorphism_generators(g)
            assert edge_equivalence_classes(g, gens).num_classes == h

    def test_representatives_are_lexicographic_minima(self):
        g = full_rary_tree(2, 15)
        classes = edge_equivalence_classes(g, find_automorphism_generators(g))
        for cls, rep in zip(classes.classes, classes.representatives):
            assert rep == min(cls)

    def test_sizes_partition_edge_set(self):
        g = balanced_tree(2, 3)
        classes = edge_equivalence_classes(g, find_automorphism_generators(g))
        assert sum(classes.sizes) == g.m
        assert sorted(e for cls in classes.classes for e in cls) == sorted(g.edges)

    def test_rejects_non_automorphism_generator(self):
        g = path_graph(4)
        bad = GeneratorSet(n=4, generators=(Permutation((1, 0, 2, 3)),))
        with pytest.raises(ContractError, match="generator 0"):
            edge_equivalence_classes(g, bad)

    def test_determinism(self):
        g = full_rary_tree(2, 20)
        first = edge_equivalence_classes(g, find_automorphism_generators(g))
        second = edge_equivalence_classes(g, find_automorphism_generators(g))
        assert first == second

    def test_generator_application_stays_in_class(self):
        g = balanced_tree(2, 3)
        gens = find_automorphism_generators(g)
        classes = edge_equivalence_classes(g, gens)
        for perm in gens.generators:
            for e in g.edges:
                assert classes.class_of[perm.apply_edge(e)] == classes.class_of[e]

    def test_orbit_witness_soundness(self):
        g = full_rary_tree(2, 10)
        gens = find_automorphism_generators(g)
        classes = edge_equivalence_classes(g, gens)
        for cls, rep in zip(classes.classes, classes.representatives):
            for e in cls:
                word = orbit_witness(g, gens, rep, e)
                assert word is not None
                assert word.apply_edge(rep) == e

    def test_witness_absent_between_classes(self):
        g = full_rary_tree(2, 7)
        gens = find_automorphism_generators(g)
        classes = edge_equivalence_classes(g, gens)
        assert classes.num_classes >= 2
        assert orbit_witness(g, gens, classes.representatives[0],
                             classes.representatives[1]) is None

    def test_json_schema(self):
        import json
        g = star_graph(4)
        classes = edge_equivalence_classes(g, find_automorphism_generators(g))
        payload = json.loads(classes.to_json())
        assert payload["classes"][0] == {
            "id": 0, "size": 3, "representative": [0, 1],
            "edges": [[0, 1], [0, 2], [0, 3]],
        }

    @given(random_trees)
    @settings(max_examples=25, deadline=None)
    def test_oracle_equivalence_on_random_trees(self, spec):
        g = tree_from_parents(spec)
        if g.n > 8:
            return
        fast = edge_equivalence_classes(g, find_automorphism_generators(g))
        oracle = edge_classes_from_elements(g, brute_force_automorphisms(g))
        assert fast.classes == oracle.classes


class TestVertexOrbits:
    def test_star(self):
        g = star_graph(5)
        orbits = vertex_orbits(g, find_automorphism_generators(g))
        assert orbits == [[0], [1, 2, 3, 4]]

    def test_balanced_2_2_one_orbit_per_depth(self):
        g = balanced_tree(2, 2)
        orbits = vertex_orbits(g, find_automorphism_generators(g))
        assert orbits == [[0], [1, 2], [3, 4, 5, 6]]

    def test_matches_brute_force(self):
        g = full_rary_tree(2, 10)
        fast = vertex_orbits(g, find_automorphism_generators(g))
        elements = brute_force_automorphisms(g)
        oracle = vertex_orbits(g, GeneratorSet(n=g.n, generators=tuple(elements)))
        assert fast == oracle
