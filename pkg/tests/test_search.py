import random

import numpy as np
import pytest

from percforge.bootstrap import percolates
from percforge.counts import DomainError, m_lower_hypercube
from percforge.grid import GridSpec, VertexSet
from percforge.search import (
    SearchConfig,
    _CanonicalTables,
    _MaskKernel,
    canonical_form,
    count_canonical_subsets,
    exact_min,
    exhaust_layer,
    grid_automorphisms,
)
from percforge.witnesses import build_r3


def test_group_orders():
    assert len(grid_automorphisms(GridSpec.hypercube(3))) == 48
    assert len(grid_automorphisms(GridSpec.hypercube(5))) == 3840
    assert len(grid_automorphisms(GridSpec((3, 3)))) == 8
    assert len(grid_automorphisms(GridSpec((3, 2)))) == 4
    assert len(grid_automorphisms(GridSpec((4, 3, 3)))) == 16


def test_automorphisms_preserve_adjacency():
    rng = random.Random(1)
    for dims in [(2, 2, 2), (3, 3), (3, 2)]:
        spec = GridSpec(dims)
        perms = grid_automorphisms(spec)
        edges = {frozenset(spec.endpoints(e)) for e in spec.edges()}
        for perm in rng.sample(perms, min(6, len(perms))):
            mapped = {frozenset((perm[u], perm[v])) for u, v in edges}
            assert mapped == edges


def test_canonical_form_properties():
    spec = GridSpec.hypercube(3)
    rng = random.Random(4)
    for _ in range(50):
        s = VertexSet(spec, rng.getrandbits(8))
        c = canonical_form(spec, s)
        assert len(c) == len(s)
        assert canonical_form(spec, c) == c
        # canonical image is lexicographically least in its orbit
        for perm in random.Random(0).sample(grid_automorphisms(spec), 10):
            image = tuple(sorted(perm[v] for v in s))
            assert tuple(c.indices()) <= image


def test_canonical_orbit_count_q3_pairs():
    assert count_canonical_subsets(GridSpec.hypercube(3), 2) == 3


def test_orbit_counts_match_burnside():
    from naive import burnside_subset_orbits

    for spec, kmax in [(GridSpec.hypercube(3), 5), (GridSpec((3, 2)), 4), (GridSpec((3, 3)), 3)]:
        perms = grid_automorphisms(spec)
        for k in range(1, kmax + 1):
            got = count_canonical_subsets(spec, k)
            expect = burnside_subset_orbits(perms, spec.num_vertices, k)
            assert got == expect, (spec.dims, k)


def test_tables_agree_with_reference_canonicalization():
    for dims in [(2, 2, 2), (3, 3), (2, 2, 2, 2)]:
        spec = GridSpec(dims)
        tables = _CanonicalTables(spec)
        rng = random.Random(9)
        masks = np.array(
            [rng.getrandbits(spec.num_vertices) for _ in range(200)], dtype=np.uint64
        )
        got = tables.canonicalize(masks)
        for m, g in zip(masks.tolist(), got.tolist()):
            expect = canonical_form(spec, VertexSet(spec, int(m)))
            assert VertexSet(spec, int(g)) == expect


def test_mask_kernel_matches_int_kernel():
    from percforge.bootstrap import closure_mask

    rng = random.Random(12)
    for dims in [(2, 2, 2), (3, 3), (2, 2, 2, 2), (3, 2, 2)]:
        spec = GridSpec(dims)
        for r in range(1, 5):
            kernel = _MaskKernel(spec, r)
            masks = [rng.getrandbits(spec.num_vertices) for _ in range(64)]
            out = kernel.closure(np.array(masks, dtype=np.uint64))
            for m, o in zip(masks, out.tolist()):
                assert closure_mask(spec, m, r) == int(o)


def test_canonicalization_preserves_percolation():
    rng = random.Random(77)
    for dims in [(2, 2, 2), (2, 2, 2, 2)]:
        spec = GridSpec(dims)
        for _ in range(150):
            s = VertexSet(spec, rng.getrandbits(spec.num_vertices))
            c = canonical_form(spec, s)
            for r in (1, 2, 3):
                assert percolates(spec, s, r) == percolates(spec, c, r)


def test_exact_min_small_hypercubes():
    assert exact_min(SearchConfig(GridSpec.hypercube(3), 3)).exact_m == 4
    assert exact_min(SearchConfig(GridSpec.hypercube(3), 1)).exact_m == 1
    res = exact_min(SearchConfig(GridSpec.hypercube(4), 3))
    assert res.exact_m == 6
    assert res.witness is not None and res.witness.size == 6
    assert percolates(res.spec, res.witness.vertices, 3)


def test_exact_min_matches_naive_enumeration():
    for d in (3, 4):
        spec = GridSpec.hypercube(d)
        for r in range(1, d + 1):
            fast = exact_min(SearchConfig(spec, r))
            slow = exact_min(SearchConfig(spec, r, symmetry=False))
            assert fast.exact_m == slow.exact_m, (d, r)


def test_exact_min_with_low_seed_exhausts_layers():
    res = exact_min(SearchConfig(GridSpec.hypercube(4), 3, seed_lower=5))
    assert res.exact_m == 6
    assert res.proof_of_optimality
    assert res.exhaustion == res.exhaustion.__class__(5, 384, res.exhaustion.canonical_sets)
    assert res.exhaustion.canonical_sets == 27


def test_exact_min_grid():
    res = exact_min(SearchConfig(GridSpec((3, 3)), 2))
    assert res.exact_m == 3
    res = exact_min(SearchConfig(GridSpec((3, 2)), 2))
    assert res.exact_m == 3  # matches the refined threshold-2 lower bound


def test_exact_min_degree_bound():
    res = exact_min(SearchConfig(GridSpec.hypercube(2), 5))
    assert res.exact_m == 4
    assert res.seed_basis == "degree-bound"


def test_exact_min_requires_positive_threshold():
    with pytest.raises(DomainError):
        exact_min(SearchConfig(GridSpec.hypercube(3), 0))


def test_bound_sanity():
    for d, r in [(3, 2), (4, 3), (4, 2), (5, 3)]:
        res = exact_min(SearchConfig(GridSpec.hypercube(d), r))
        assert res.exact_m >= m_lower_hypercube(d, r).ceil_value
    assert exact_min(SearchConfig(GridSpec.hypercube(5), 3)).exact_m == build_r3(5).size


def test_exhaust_layer_examples():
    spec = GridSpec.hypercube(3)
    found, witness, record = exhaust_layer(spec, 1, 1)
    assert found and witness.size == 1
    found, witness, record = exhaust_layer(spec, 3, 3)
    assert not found
    assert record.k == 3 and record.group_order == 48
    assert record.canonical_sets > 0
    # exhaustion agrees with the naive route
    found_naive, _, record_naive = exhaust_layer(spec, 3, 3, symmetry=False)
    assert not found_naive


def test_exhaust_layer_pads_when_smaller_sets_percolate():
    # at threshold 1 every single vertex percolates; layer 3 must still be
    # decided correctly by padding a smaller percolating set
    spec = GridSpec.hypercube(3)
    found, witness, record = exhaust_layer(spec, 1, 3)
    assert found and witness.size == 3
    assert percolates(spec, witness.vertices, 1)


def test_budget_flagging():
    res = exact_min(SearchConfig(GridSpec.hypercube(4), 3, node_budget=10))
    assert res.status == "budget"
    assert res.exact_m is None


def test_search_result_json():
    res = exact_min(SearchConfig(GridSpec.hypercube(3), 2))
    doc = res.to_json_doc()
    assert doc["kind"] == "search-result"
    assert doc["exact_m"] == res.exact_m
    assert doc["witness"]["size"] == res.witness.size
