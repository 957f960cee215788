import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_threegraph
from homeofind.core import (
    BLUE,
    GREEN,
    RED,
    Config,
    ThreeGraph,
    build_aux_graph,
    build_triple_subdivision,
    covered_pairs,
    euler_characteristic,
    tripartite_reduce,
)

K4 = ThreeGraph(4, frozenset(itertools.combinations(range(4), 3)))
TRIANGLE = ThreeGraph(3, frozenset({(0, 1, 2)}))


def threegraphs(max_v=9, max_e=12):
    return st.integers(min_value=0, max_value=2 ** 30).map(
        lambda s: random_threegraph(random.Random(s), max_v, max_e)
    )


def one_cells_by_enumeration(h: ThreeGraph) -> set:
    cells = set()
    for f in h.faces:
        cells.update(itertools.combinations(f, 2))
    return cells


class TestThreeGraph:
    def test_faces_are_normalized(self):
        h = ThreeGraph(5, frozenset({(2, 0, 4)}))
        assert h.faces == frozenset({(0, 2, 4)})

    def test_rejects_degenerate_face(self):
        with pytest.raises(ValueError):
            ThreeGraph(5, frozenset({(1, 1, 2)}))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ThreeGraph(3, frozenset({(0, 1, 3)}))


class TestCoveredPairs:
    def test_single_face(self):
        assert covered_pairs(TRIANGLE) == [(0, 1), (0, 2), (1, 2)]

    def test_k4_all_pairs(self):
        # oracle: exhaustive enumeration of pairs inside faces
        assert covered_pairs(K4) == sorted(itertools.combinations(range(4), 2))

    def test_empty(self):
        assert covered_pairs(ThreeGraph(5, frozenset())) == []

    @given(threegraphs())
    @settings(max_examples=50, deadline=None)
    def test_matches_enumeration(self, h):
        assert set(covered_pairs(h)) == one_cells_by_enumeration(h)


class TestEulerCharacteristic:
    def test_k4_is_sphere(self):
        assert euler_characteristic(K4) == 2

    def test_single_face_is_disk(self):
        assert euler_characteristic(TRIANGLE) == 1

    def test_isolated_vertices_count(self):
        assert euler_characteristic(ThreeGraph(5, frozenset())) == 5


class TestTripleSubdivision:
    def test_single_face_counts(self):
        sub = build_triple_subdivision(TRIANGLE)
        u = sub.underlying
        assert u.vertex_count == 10
        assert u.e == 12
        assert len(one_cells_by_enumeration(u)) == 21
        assert euler_characteristic(u) == 1

    def test_k4_counts(self):
        sub = build_triple_subdivision(K4)
        u = sub.underlying
        assert u.vertex_count == 26  # 4 + 6 + 16
        assert u.e == 48
        assert len(one_cells_by_enumeration(u)) == 72
        assert euler_characteristic(u) == 2

    def test_empty(self):
        sub = build_triple_subdivision(ThreeGraph(0, frozenset()))
        assert sub.underlying.vertex_count == 0
        assert sub.underlying.e == 0

    @given(threegraphs())
    @settings(max_examples=60, deadline=None)
    def test_counting_identities(self, h):
        sub = build_triple_subdivision(h)
        u = sub.underlying
        pairs = len(covered_pairs(h))
        assert u.e == 12 * h.e
        assert u.vertex_count == h.vertex_count + pairs + 4 * h.e
        assert len(one_cells_by_enumeration(u)) == 2 * pairs + 15 * h.e

    @given(threegraphs())
    @settings(max_examples=60, deadline=None)
    def test_preserves_euler_characteristic(self, h):
        sub = build_triple_subdivision(h)
        assert euler_characteristic(sub.underlying) == euler_characteristic(h)

    @given(threegraphs())
    @settings(max_examples=40, deadline=None)
    def test_proper_three_coloring(self, h):
        sub = build_triple_subdivision(h)
        for f in sub.underlying.faces:
            assert {sub.color[v] for v in f} == {RED, BLUE, GREEN}

    def test_provenance_covers_all_vertices(self):
        sub = build_triple_subdivision(K4)
        kinds = [sub.provenance[v][0] for v in range(sub.underlying.vertex_count)]
        assert kinds.count("orig") == 4
        assert kinds.count("pair") == 6
        assert kinds.count("center") == 4
        assert kinds.count("corner") == 12


class TestAuxGraph:
    def test_k4_counts(self):
        aux = build_aux_graph(K4)
        assert len(aux.v2) == 10  # 6 pair vertices + 4 face vertices
        assert len(aux.edges) == 24
        assert len(aux.special_cycles) == 12

    def test_single_face_counts(self):
        aux = build_aux_graph(TRIANGLE)
        assert len(aux.v2) == 4
        assert len(aux.edges) == 9
        assert len(aux.special_cycles) == 3

    def test_empty(self):
        aux = build_aux_graph(ThreeGraph(4, frozenset()))
        assert aux.v2 == ()
        assert aux.special_cycles == ()

    def test_special_cycles_of_a_face(self):
        aux = build_aux_graph(TRIANGLE)
        got = {(sc.a, sc.b, sc.edge) for sc in aux.special_cycles}
        assert got == {(0, 1, (0, 1)), (1, 2, (1, 2)), (2, 0, (0, 2))}
        # all three share the face vertex and use the right pair vertices
        tags = dict(zip(aux.v2, aux.v2_tags))
        for sc in aux.special_cycles:
            assert tags[sc.w] == ("face", (0, 1, 2))
            assert tags[sc.u] == ("pair", sc.edge)

    @given(threegraphs())
    @settings(max_examples=60, deadline=None)
    def test_invariants(self, h):
        aux = build_aux_graph(h)
        pairs = len(covered_pairs(h))
        assert len(aux.v2) == pairs + h.e
        assert len(aux.edges) == 2 * pairs + 3 * h.e
        assert len(aux.special_cycles) == 3 * h.e
        # bipartite between v1 and v2; v2 degrees are 2 (pair) or 3 (face)
        deg = {u: 0 for u in aux.v2}
        for a, u in aux.edges:
            assert a in set(aux.v1) and u in deg
            deg[u] += 1
        for u, tag in zip(aux.v2, aux.v2_tags):
            assert deg[u] == (2 if tag[0] == "pair" else 3)


class TestTripartiteReduce:
    def test_single_face_kept(self):
        th = tripartite_reduce(TRIANGLE, seed=0)
        assert th.class_sizes == (1, 1, 1)
        assert th.e == 1

    def test_nine_face_bound(self):
        rng = random.Random(3)
        faces = frozenset(rng.sample(list(itertools.combinations(range(6), 3)), 9))
        h = ThreeGraph(6, faces)
        th = tripartite_reduce(h, seed=1)
        assert th.e >= 2  # at least 2m/9 faces survive

    def test_against_exhaustive_maximum(self):
        rng = random.Random(7)
        faces = frozenset(rng.sample(list(itertools.combinations(range(9), 3)), 20))
        h = ThreeGraph(9, faces)
        th = tripartite_reduce(h, seed=1)
        assert th.e >= -(-2 * 20 // 9)  # ceil(40/9) = 5

        best = 0
        verts = range(9)
        for c1 in itertools.combinations(verts, 3):
            rest = [v for v in verts if v not in c1]
            for c2 in itertools.combinations(rest, 3):
                cls = {v: 0 for v in c1}
                cls.update({v: 1 for v in c2})
                cls.update({v: 2 for v in rest if v not in c2})
                best = max(best, sum(1 for f in faces if len({cls[v] for v in f}) == 3))
        assert th.e <= best

    def test_pads_to_multiple_of_three(self):
        h = ThreeGraph(4, frozenset({(0, 1, 2)}))
        th = tripartite_reduce(h, seed=0)
        assert th.class_sizes == (2, 2, 2)

    @given(threegraphs(max_v=8, max_e=10), st.integers(0, 1000))
    @settings(max_examples=40, deadline=None)
    def test_bound_always_holds(self, h, seed):
        th = tripartite_reduce(h, seed=seed)
        assert th.e >= -(-2 * h.e // 9)
        # kept faces really are 3-partite by construction of the type
        for x, y, z in th.faces:
            assert 0 <= x < th.n_x and 0 <= y < th.n_y and 0 <= z < th.n_z


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            Config(C=0)
        with pytest.raises(ValueError):
            Config(epsilon=Fraction(1, 2), delta=Fraction(1, 5))
        with pytest.raises(ValueError):
            Config(k_threshold=0)

    def test_paper_defaults(self):
        cfg = Config.paper_defaults(K4)
        assert cfg.C == 2000 * 4 ** 6
        assert cfg.k_threshold == 3 * 4 ** 3

    def test_desk_scale_floor(self):
        cfg = Config.desk_scale(K4)
        assert cfg.k_threshold == 12
        assert cfg.k_for(K4) == 12

    def test_k_default_from_target(self):
        assert Config().k_for(K4) == 3 * 64
