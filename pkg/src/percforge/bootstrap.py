"""The r-neighbour infection process on grid graphs.

Starting from an initial infected set, a healthy vertex becomes infected
once at least r of its neighbors are infected; infected vertices stay
infected.  Rounds are synchronous, and the closure (fixpoint) is reached in
at most |V| - |initial| productive rounds.  The initial set *percolates*
when the closure is the whole vertex set.

The round kernel never loops over vertices: the 2d shifted neighbor bitmaps
are accumulated with a bit-sliced ripple-carry adder that saturates at r,
then a bit-parallel comparator extracts the vertices with count >= r.  This
is the hot path for both simulation and exact search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grid import GridSpec, VertexSet


@dataclass(frozen=True)
class InfectionState:
    """Infected set after some number of synchronous rounds."""

    spec: GridSpec
    infected: VertexSet
    round: int = 0


@dataclass(frozen=True)
class InfectionTrace:
    """Full run to the fixpoint: newly infected vertices per round."""

    spec: GridSpec
    r: int
    initial: VertexSet
    rounds: tuple[VertexSet, ...]
    final: VertexSet
    percolated: bool

    def to_json_doc(self) -> dict:
        return {
            "kind": "infection-trace",
            "spec": str(self.spec),
            "r": self.r,
            "a0": self.initial.indices(),
            "rounds": [rnd.indices() for rnd in self.rounds],
            "percolated": self.percolated,
        }


def _threshold_mask(planes: list[int], sat: int, r: int, full: int) -> int:
    """Vertices whose accumulated neighbor count is >= r.

    `planes` holds the exact count bit-sliced (LSB first) for vertices that
    never overflowed; `sat` marks vertices whose count exceeded the plane
    capacity and is therefore certainly >= r.
    """
    gt = 0
    eq = full
    for b in range(len(planes) - 1, -1, -1):
        p = planes[b]
        if (r >> b) & 1:
            eq &= p
        else:
            gt |= eq & p
            eq &= full ^ p
    return sat | gt | eq


def infect_step_mask(spec: GridSpec, infected: int, r: int) -> int:
    """One synchronous round on a raw bitset; returns the new bitset."""
    if r <= 0:
        return spec.full_vertex_mask
    full = spec.full_vertex_mask
    nbits = max(r.bit_length(), 1)
    planes = [0] * nbits
    sat = 0
    for shift, recv in spec.shift_plan:
        if shift >= 0:
            carry = (infected << shift) & recv
        else:
            carry = (infected >> -shift) & recv
        for b in range(nbits):
            if not carry:
                break
            t = planes[b] & carry
            planes[b] ^= carry
            carry = t
        else:
            sat |= carry
    return infected | _threshold_mask(planes, sat, r, full)


def step(state: InfectionState, r: int) -> InfectionState:
    """One round; idempotent once the fixpoint is reached."""
    if r < 0:
        raise ValueError("infection threshold must be >= 0")
    mask = infect_step_mask(state.spec, state.infected.mask, r)
    return InfectionState(state.spec, VertexSet(state.spec, mask), state.round + 1)

def closure(spec: GridSpec, a0: VertexSet, r: int) -> InfectionTrace:
    """Iterate rounds to the fixpoint and record each round's new infections."""
    if a0.spec != spec:
        raise ValueError("initial set belongs to a different grid")
    cur = a0.mask
    rounds: list[VertexSet] = []
    full = spec.full_vertex_mask
    while True:
        nxt = infect_step_mask(spec, cur, r)
        if nxt == cur:
            break
        rounds.append(VertexSet(spec, nxt & ~cur))
        cur = nxt
        if cur == full:
            break
    final = VertexSet(spec, cur)
    return InfectionTrace(spec, r, a0, tuple(rounds), final, cur == full)


def closure_mask(spec: GridSpec, a0: int, r: int) -> int:
    """Fixpoint of the infection process on a raw bitset."""
    cur = a0
    full = spec.full_vertex_mask
    while True:
        nxt = infect_step_mask(spec, cur, r)
        if nxt == cur or nxt == full:
            return nxt
        cur = nxt


def percolates(spec: GridSpec, a0: VertexSet, r: int) -> bool:
    """Does the closure of a0 cover every vertex?  Early-exits at fixpoint."""
    return closure_mask(spec, a0.mask, r) == spec.full_vertex_mask
