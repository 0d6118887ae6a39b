import random

import pytest

from percforge.grid import EdgeId, GridError, GridSpec, VertexSet, parse_grid

from naive import naive_edges, naive_incident_labels, naive_neighbors, naive_vertices

SMALL_GRIDS = [(2,), (3,), (4,), (2, 2), (3, 3), (3, 2), (2, 3, 2), (2, 2, 2), (3, 3, 2), (5, 4)]


def test_index_coords_roundtrip():
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        seen = set()
        for v in spec.vertices():
            coords = spec.coords_of(v)
            assert spec.index_of(coords) == v
            seen.add(coords)
        assert seen == set(naive_vertices(dims))


def test_neighbors_against_naive():
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        for v in spec.vertices():
            got = {spec.coords_of(u) for u in spec.neighbors(v)}
            assert got == set(naive_neighbors(dims, spec.coords_of(v)))


def test_neighbors_examples():
    q3 = GridSpec.hypercube(3)
    # corner 000 (coords all 1) has its d coordinate successors
    corner = q3.index_of((1, 1, 1))
    assert sorted(q3.neighbors(corner)) == [
        q3.index_of((2, 1, 1)),
        q3.index_of((1, 2, 1)),
        q3.index_of((1, 1, 2)),
    ]
    g33 = GridSpec((3, 3))
    assert len(g33.neighbors(g33.index_of((2, 2)))) == 4
    assert len(g33.neighbors(g33.index_of((1, 1)))) == 2
    with pytest.raises(GridError):
        g33.neighbors(9)


def test_incident_labels_against_naive():
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        for v in spec.vertices():
            assert set(spec.incident_labels(v)) == naive_incident_labels(dims, spec.coords_of(v))


def test_incident_labels_examples():
    g33 = GridSpec((3, 3))
    assert g33.incident_labels(g33.index_of((1, 1))) == (1, 3)
    path4 = GridSpec((4,))
    # vertex with coordinate 3: edge {2,3} is even (label 2), edge {3,4} odd (label 1)
    assert path4.incident_labels(path4.index_of((3,))) == (1, 2)
    q3 = GridSpec.hypercube(3)
    for v in q3.vertices():
        assert q3.incident_labels(v) == (1, 3, 5)


def test_edge_label_examples():
    path3 = GridSpec((3,))
    e12 = EdgeId(path3.index_of((1,)), 1)
    e23 = EdgeId(path3.index_of((2,)), 1)
    assert path3.edge_label(e12, path3.index_of((1,))).label == 1
    assert path3.edge_label(e12, path3.index_of((2,))).label == 1
    assert path3.edge_label(e23, path3.index_of((3,))).label == 2
    qd = GridSpec.hypercube(4)
    for e in qd.edges():
        u, w = qd.endpoints(e)
        assert qd.edge_label(e, u).label % 2 == 1
        assert qd.edge_label(e, w).label % 2 == 1
    with pytest.raises(GridError):
        path3.edge_label(e12, path3.index_of((3,)))


def test_label_edge_roundtrip():
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        for v in spec.vertices():
            for j in spec.incident_labels(v):
                e = spec.resolve_label(v, j)
                assert spec.edge_label(e, v) == (v, j)
            absent = set(range(1, 2 * spec.d + 1)) - set(spec.incident_labels(v))
            for j in absent:
                with pytest.raises(GridError):
                    spec.resolve_label(v, j)


def test_each_edge_carries_two_labels():
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        for e in spec.edges():
            u, w = spec.endpoints(e)
            lu = spec.edge_label(e, u)
            lw = spec.edge_label(e, w)
            assert lu.label == lw.label  # same parity class seen from both ends
            assert spec.resolve_label(u, lu.label) == e
            assert spec.resolve_label(w, lw.label) == e


def test_degree_sum_and_edge_count():
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        assert spec.num_edges == len(naive_edges(dims))
        assert sum(len(spec.incident_labels(v)) for v in spec.vertices()) == 2 * spec.num_edges
        by_formula = sum(
            (a - 1) * spec.num_vertices // a for a in spec.dims
        )
        assert spec.num_edges == by_formula


def test_edge_enumeration_is_a_bijection():
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        order = spec.edges_in_order()
        assert len(order) == spec.num_edges
        for k, e in enumerate(order):
            assert spec.edge_index(e) == k
            assert spec.edge_from_index(k) == e
            # enumeration position equals the documented axis-major,
            # lower-endpoint mixed-radix rank
            assert spec._edge_rank(e) == k
        # axis-major: axis numbers are non-decreasing along the enumeration
        axes = [e.axis for e in order]
        assert axes == sorted(axes)


def test_label_table_matches_resolve():
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        for v in spec.vertices():
            present = set(spec.incident_labels(v))
            for j in range(1, 2 * spec.d + 1):
                idx = spec.label_to_edge_index(v, j)
                if j in present:
                    assert idx == spec.edge_index(spec.resolve_label(v, j))
                else:
                    assert idx == -1


def test_edge_enumeration_golden():
    # the global enumeration is a serialization contract: certificates
    # reference edges by these positions
    spec = GridSpec((3, 2))
    assert [tuple(e) for e in spec.edges_in_order()] == [
        (0, 1), (1, 1), (3, 1), (4, 1),
        (0, 2), (1, 2), (2, 2),
    ]
    q3 = GridSpec.hypercube(3)
    assert [tuple(e) for e in q3.edges_in_order()] == [
        (0, 1), (2, 1), (4, 1), (6, 1),
        (0, 2), (1, 2), (4, 2), (5, 2),
        (0, 3), (1, 3), (2, 3), (3, 3),
    ]


def test_parse_and_format():
    assert parse_grid("Q5") == GridSpec((2,) * 5)
    assert parse_grid("q3") == GridSpec.hypercube(3)
    assert parse_grid("3x3x2") == GridSpec((3, 3, 2))
    assert str(GridSpec((3, 3, 2))) == "3x3x2"
    for bad in ["", "Qx", "3x1", "0x2", "foo", "3x-2"]:
        with pytest.raises(GridError):
            parse_grid(bad)


def test_vertex_count_limit():
    with pytest.raises(GridError):
        GridSpec((2,) * 29)


def test_vertex_set_basics():
    spec = GridSpec((3, 3))
    s = VertexSet.from_indices(spec, [0, 4, 8])
    assert len(s) == 3
    assert 4 in s and 5 not in s
    assert s.indices() == [0, 4, 8]
    t = VertexSet.from_coords(spec, [(1, 1), (2, 2)])
    assert (s & t).indices() == [0, 4]
    assert (s | t).indices() == [0, 4, 8]
    assert (s - t).indices() == [8]
    assert VertexSet.full(spec).is_full
    assert t.issubset(s)
    with pytest.raises(GridError):
        VertexSet.from_indices(spec, [9])
    with pytest.raises(GridError):
        s | VertexSet.empty(GridSpec((2, 2)))


def test_coord_masks_match_per_vertex_scan():
    rng = random.Random(7)
    for dims in SMALL_GRIDS:
        spec = GridSpec(dims)
        for _ in range(5):
            axis = rng.randrange(1, spec.d + 1)
            c = rng.randrange(1, spec.dims[axis - 1] + 2)
            mask = spec.coord_ge_mask(axis, c)
            expect = 0
            for v in spec.vertices():
                if spec.coord(v, axis) >= c:
                    expect |= 1 << v
            assert mask == expect
