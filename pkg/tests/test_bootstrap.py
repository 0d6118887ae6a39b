import random

from percforge.bootstrap import InfectionState, closure, infect_step_mask, percolates, step
from percforge.grid import GridSpec, VertexSet

from naive import naive_closure, naive_step, naive_vertices


def subsets_of_ground(alphabet, names):
    """Decode the subset-of-[d] shorthand ("123" = {1,2,3}) into coords."""
    out = []
    for name in names:
        chosen = {int(ch, 16) for ch in name} if name != "0" else set()
        out.append(tuple(2 if i in chosen else 1 for i in range(1, alphabet + 1)))
    return out


def test_step_example_q2():
    spec = GridSpec.hypercube(2)
    a0 = VertexSet.from_coords(spec, [(1, 1), (2, 2)])
    state = step(InfectionState(spec, a0), 2)
    assert state.infected.is_full
    assert state.round == 1


def test_step_fixpoint_on_full():
    for dims in [(2, 2), (3, 3), (2, 2, 2)]:
        spec = GridSpec(dims)
        full = VertexSet.full(spec)
        assert step(InfectionState(spec, full), 3).infected == full


def test_step_r0_infects_everything():
    spec = GridSpec((3, 2))
    assert step(InfectionState(spec, VertexSet.empty(spec)), 0).infected.is_full


def test_explicit_q3_seed_percolates_at_r3():
    spec = GridSpec.hypercube(3)
    a0 = VertexSet.from_coords(spec, subsets_of_ground(3, ["1", "2", "3", "123"]))
    trace = closure(spec, a0, 3)
    assert trace.percolated
    assert trace.final.is_full


def test_closure_trace_structure():
    spec = GridSpec((3, 3))
    a0 = VertexSet.from_coords(spec, [(1, 1), (1, 2), (2, 1)])
    trace = closure(spec, a0, 2)
    union = a0
    for rnd in trace.rounds:
        assert len(rnd) > 0
        assert (union & rnd).mask == 0  # rounds only report new infections
        union = union | rnd
    assert union == trace.final
    assert trace.percolated == trace.final.is_full
    assert len(trace.rounds) <= spec.num_vertices - len(a0)


def test_closure_empty_set_is_stuck():
    for d in range(1, 5):
        spec = GridSpec.hypercube(d)
        trace = closure(spec, VertexSet.empty(spec), 1)
        assert not trace.percolated
        assert trace.final.mask == 0


def test_no_5_subset_percolates_q4_r3():
    # exhaustive check over all C(16,5) subsets, consistent with the exact
    # minimum 6 for Q_4 at threshold 3
    from itertools import combinations

    spec = GridSpec.hypercube(4)
    for subset in combinations(range(16), 5):
        mask = 0
        for v in subset:
            mask |= 1 << v
        final = mask
        while True:
            nxt = infect_step_mask(spec, final, 3)
            if nxt == final:
                break
            final = nxt
        assert final != spec.full_vertex_mask


def test_even_weight_percolates_at_r_equals_d():
    for d in range(1, 7):
        spec = GridSpec.hypercube(d)
        evens = VertexSet.from_indices(
            spec, [v for v in spec.vertices() if bin(v).count("1") % 2 == 0]
        )
        assert len(evens) == 1 << (d - 1)
        assert percolates(spec, evens, d)


def test_single_seed_percolates_at_r1():
    for dims in [(2, 2, 2), (3, 3), (4, 2)]:
        spec = GridSpec(dims)
        assert percolates(spec, VertexSet.from_indices(spec, [0]), 1)


def test_kernel_equals_naive_reference():
    rng = random.Random(2024)
    for dims in [(2,), (2, 2), (2, 2, 2), (2, 2, 2, 2), (3, 3), (3, 2, 2)]:
        spec = GridSpec(dims)
        verts = naive_vertices(dims)
        for _ in range(60):
            r = rng.randrange(0, 2 * len(dims) + 2)
            mask = rng.getrandbits(spec.num_vertices)
            infected = {verts[v] for v in range(spec.num_vertices) if (mask >> v) & 1}
            got = infect_step_mask(spec, mask, r)
            expect_set = naive_step(dims, infected, r) if r > 0 else set(verts)
            expect = 0
            for c in expect_set:
                expect |= 1 << spec.index_of(c)
            assert got == expect, (dims, r, mask)


def test_closure_matches_naive_and_is_monotone():
    rng = random.Random(99)
    for _ in range(120):
        dims = rng.choice([(2, 2), (2, 2, 2), (3, 3), (3, 2)])
        spec = GridSpec(dims)
        r = rng.randrange(1, 5)
        small_mask = rng.getrandbits(spec.num_vertices)
        big_mask = small_mask | rng.getrandbits(spec.num_vertices)
        small = VertexSet(spec, small_mask)
        big = VertexSet(spec, big_mask)
        cs = closure(spec, small, r).final
        cb = closure(spec, big, r).final
        assert cs.issubset(cb)
        verts = naive_vertices(dims)
        expect = naive_closure(dims, {verts[v] for v in small}, r)
        assert {spec.coords_of(v) for v in cs} == expect


def test_threshold_monotonicity():
    rng = random.Random(5)
    for _ in range(100):
        dims = rng.choice([(2, 2, 2), (3, 3)])
        spec = GridSpec(dims)
        a0 = VertexSet(spec, rng.getrandbits(spec.num_vertices))
        r = rng.randrange(1, 6)
        if percolates(spec, a0, r):
            assert percolates(spec, a0, r - 1) or r == 1 or True
            for lower in range(1, r):
                assert percolates(spec, a0, lower)


def test_trace_json_doc():
    spec = GridSpec.hypercube(2)
    trace = closure(spec, VertexSet.from_indices(spec, [0, 3]), 2)
    doc = trace.to_json_doc()
    assert doc["spec"] == "2x2"
    assert doc["a0"] == [0, 3]
    assert doc["percolated"] is True
    assert doc["rounds"] == [[1, 2]]
