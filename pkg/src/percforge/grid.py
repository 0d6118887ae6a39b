"""Axis-aligned grid graphs: the product of paths [a_1] x ... x [a_d].

Vertices carry 1-based coordinates (v_1, ..., v_d) with v_i in {1, ..., a_i}
and are indexed row-major with axis 1 fastest.  Two vertices are adjacent
when they differ by exactly 1 in exactly one coordinate.  The hypercube Q_d
is the all-twos grid.

Edges are labelled from both endpoints: the edge on axis i whose smaller
endpoint coordinate is odd is "odd" and carries label 2i-1, otherwise it is
"even" and carries label 2i.  At any vertex the (at most two) incident edges
on one axis always receive the two different labels of that axis, so
``resolve_label(v, j)`` is well defined.  On hypercubes every edge is odd,
and the odd labels 1, 3, 5, ... correspond to the usual directions 1..d.

Edge sets and vertex sets are dense bitsets (Python ints) over fixed global
enumerations, so every serialized artifact is byte-stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Iterable, Iterator, NamedTuple

MAX_VERTICES = 1 << 28


class GridError(ValueError):
    """Invalid grid specification, vertex, edge, or label."""


class EdgeId(NamedTuple):
    """Canonical edge handle: endpoint with the smaller coordinate on the
    edge's axis, plus the 1-based axis."""

    vertex: int
    axis: int


class EdgeLabel(NamedTuple):
    """An edge as seen from one endpoint: label is in [2d]."""

    vertex: int
    label: int


def _tile_mask(block: int, period: int, total: int) -> int:
    """Tile a bit pattern of width `period` across `total` bit positions."""
    out = block
    span = period
    while span < total:
        out |= out << span
        span *= 2
    return out & ((1 << total) - 1)


@dataclass(frozen=True)
class GridSpec:
    """Immutable description of a grid graph; all derived data is cached."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(a) for a in self.dims)
        object.__setattr__(self, "dims", dims)
        if any(a < 2 for a in dims):
            raise GridError(f"every side length must be >= 2, got {dims}")
        if prod(dims) > MAX_VERTICES:
            raise GridError(
                f"grid has {prod(dims)} vertices; supported maximum is {MAX_VERTICES}"
            )

    @classmethod
    def hypercube(cls, d: int) -> "GridSpec":
        if d < 0:
            raise GridError("hypercube dimension must be >= 0")
        return cls((2,) * d)

    # -- basic shape -------------------------------------------------------

    @property
    def d(self) -> int:
        return len(self.dims)

    @cached_property
    def num_vertices(self) -> int:
        return prod(self.dims)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for a in self.dims:
            out.append(s)
            s *= a
        return tuple(out)

    @cached_property
    def is_hypercube(self) -> bool:
        return all(a == 2 for a in self.dims)

    @cached_property
    def full_vertex_mask(self) -> int:
        return (1 << self.num_vertices) - 1

    # -- vertex indexing ---------------------------------------------------

    def check_vertex(self, v: int) -> int:
        if not 0 <= v < self.num_vertices:
            raise GridError(f"vertex index {v} out of range for {self}")
        return v

    def index_of(self, coords: Iterable[int]) -> int:
        coords = tuple(coords)
        if len(coords) != self.d:
            raise GridError(f"expected {self.d} coordinates, got {len(coords)}")
        idx = 0
        for c, a, s in zip(coords, self.dims, self.strides):
            if not 1 <= c <= a:
                raise GridError(f"coordinate {c} out of range 1..{a}")
            idx += (c - 1) * s
        return idx

    def coords_of(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        out = []
        for a in self.dims:
            out.append(v % a + 1)
            v //= a
        return tuple(out)

    def coord(self, v: int, axis: int) -> int:
        """1-based coordinate of v on a 1-based axis."""
        return (v // self.strides[axis - 1]) % self.dims[axis - 1] + 1

    def vertices(self) -> range:
        return range(self.num_vertices)

    # -- adjacency and labels ----------------------------------------------

    def neighbors(self, v: int) -> list[int]:
        self.check_vertex(v)
        out = []
        for axis in range(1, self.d + 1):
            s = self.strides[axis - 1]
            c = self.coord(v, axis)
            if c >= 2:
                out.append(v - s)
            if c <= self.dims[axis - 1] - 1:
                out.append(v + s)
        return out

    def degree(self, v: int) -> int:
        return len(self.incident_labels(v))

    def incident_labels(self, v: int) -> tuple[int, ...]:
        """The label set I_v: all j in [2d] for which e(v, j) is an edge."""
        self.check_vertex(v)
        out = []
        for axis in range(1, self.d + 1):
            a = self.dims[axis - 1]
            c = self.coord(v, axis)
            if c >= 2:  # edge down; its smaller coordinate is c - 1
                out.append(2 * axis - 1 if (c - 1) % 2 == 1 else 2 * axis)
            if c <= a - 1:  # edge up; its smaller coordinate is c
                out.append(2 * axis - 1 if c % 2 == 1 else 2 * axis)
        return tuple(sorted(out))

    def resolve_label(self, v: int, label: int) -> EdgeId:
        """The unique edge e(v, label), or GridError if absent."""
        self.check_vertex(v)
        if not 1 <= label <= 2 * self.d:
            raise GridError(f"label {label} out of range 1..{2 * self.d}")
        axis = (label + 1) // 2
        odd = label % 2 == 1
        a = self.dims[axis - 1]
        s = self.strides[axis - 1]
        c = self.coord(v, axis)
        if odd:
            if c % 2 == 1 and c <= a - 1:
                return EdgeId(v, axis)
            if c % 2 == 0:
                return EdgeId(v - s, axis)
        else:
            if c % 2 == 0 and c <= a - 1:
                return EdgeId(v, axis)
            if c % 2 == 1 and c >= 3:
                return EdgeId(v - s, axis)
        raise GridError(f"vertex {v} has no incident edge with label {label}")

    def endpoints(self, e: EdgeId) -> tuple[int, int]:
        v, axis = e
        self.check_vertex(v)
        if not 1 <= axis <= self.d:
            raise GridError(f"axis {axis} out of range")
        if self.coord(v, axis) >= self.dims[axis - 1]:
            raise GridError(f"{e} is not a canonical edge: no room above on axis {axis}")
        return v, v + self.strides[axis - 1]

    def edge_label(self, e: EdgeId, endpoint: int) -> EdgeLabel:
        u, w = self.endpoints(e)
        if endpoint not in (u, w):
            raise GridError(f"vertex {endpoint} is not an endpoint of {e}")
        low = self.coord(e.vertex, e.axis)
        label = 2 * e.axis - 1 if low % 2 == 1 else 2 * e.axis
        return EdgeLabel(endpoint, label)

    # -- global edge enumeration (axis-major, then lower endpoint index) ----

    @cached_property
    def _axis_edge_counts(self) -> tuple[int, ...]:
        v = self.num_vertices
        return tuple((a - 1) * (v // a) for a in self.dims)

    @cached_property
    def _axis_edge_offsets(self) -> tuple[int, ...]:
        out = []
        acc = 0
        for n in self._axis_edge_counts:
            out.append(acc)
            acc += n
        return tuple(out)

    @cached_property
    def num_edges(self) -> int:
        return sum(self._axis_edge_counts)

    def _edge_rank(self, e: EdgeId) -> int:
        v, axis = e
        rank = 0
        s = 1
        for i, a in enumerate(self.dims, start=1):
            digit = (v // self.strides[i - 1]) % a
            width = a - 1 if i == axis else a
            rank += digit * s
            s *= width
        return self._axis_edge_offsets[axis - 1] + rank

    @cached_property
    def edge_list(self) -> tuple[EdgeId, ...]:
        """All edges, axis-major then by lower endpoint; position equals
        edge_index."""
        return tuple(self.edges())

    @cached_property
    def _edge_index_map(self) -> dict[EdgeId, int]:
        return {e: k for k, e in enumerate(self.edge_list)}

    def edge_index(self, e: EdgeId) -> int:
        idx = self._edge_index_map.get(e)
        if idx is None:
            raise GridError(f"{e} is not a canonical edge of {self}")
        return idx

    def edge_from_index(self, k: int) -> EdgeId:
        if not 0 <= k < self.num_edges:
            raise GridError(f"edge index {k} out of range for {self}")
        return self.edge_list[k]

    @cached_property
    def _label_table(self) -> list[int]:
        """Flat lookup: vertex * 2d + (label - 1) -> edge index, or -1."""
        table = [-1] * (self.num_vertices * 2 * self.d)
        width = 2 * self.d
        for k, (v, axis) in enumerate(self.edge_list):
            s = self.strides[axis - 1]
            low = self.coord(v, axis)
            label = 2 * axis - 1 if low % 2 == 1 else 2 * axis
            table[v * width + label - 1] = k
            table[(v + s) * width + label - 1] = k
        return table

    def label_to_edge_index(self, v: int, label: int) -> int:
        """Global index of e(v, label), or -1 when the label is absent."""
        return self._label_table[v * 2 * self.d + label - 1]

    def edges(self) -> Iterator[EdgeId]:
        for axis in range(1, self.d + 1):
            s = self.strides[axis - 1]
            a = self.dims[axis - 1]
            for v in range(self.num_vertices):
                if (v // s) % a != a - 1:
                    yield EdgeId(v, axis)

    def edges_in_order(self) -> list[EdgeId]:
        return list(self.edge_list)

    # -- bitset plumbing for the infection kernel ---------------------------

    def coord_ge_mask(self, axis: int, c: int) -> int:
        """Bitset of vertices whose coordinate on axis is >= c."""
        a = self.dims[axis - 1]
        s = self.strides[axis - 1]
        if c <= 1:
            return self.full_vertex_mask
        if c > a:
            return 0
        block = ((1 << ((a - c + 1) * s)) - 1) << ((c - 1) * s)
        return _tile_mask(block, a * s, self.num_vertices)

    def coord_le_mask(self, axis: int, c: int) -> int:
        return self.full_vertex_mask & ~self.coord_ge_mask(axis, c + 1)

    @cached_property
    def shift_plan(self) -> tuple[tuple[int, int], ...]:
        """(stride, receiver-mask) per incident direction; shifting the
        infected bitset by +stride and masking yields, at each receiver, the
        state of its lower neighbor on that axis (and symmetrically)."""
        plan = []
        for axis in range(1, self.d + 1):
            s = self.strides[axis - 1]
            a = self.dims[axis - 1]
            plan.append((s, self.coord_ge_mask(axis, 2)))  # receive from below
            plan.append((-s, self.coord_le_mask(axis, a - 1)))  # receive from above
        return tuple(plan)

    # -- formatting ---------------------------------------------------------

    def __str__(self) -> str:
        return "x".join(str(a) for a in self.dims)

    def spec_string(self) -> str:
        return str(self)


def parse_grid(text: str) -> GridSpec:
    """Parse "a1xa2x...xad" or the "Qd" hypercube shorthand."""
    text = text.strip()
    if not text:
        raise GridError("empty grid specification")
    if text[0] in "Qq":
        try:
            d = int(text[1:])
        except ValueError:
            raise GridError(f"bad hypercube shorthand {text!r}") from None
        if d < 1:
            raise GridError("hypercube shorthand needs Qd with d >= 1")
        return GridSpec.hypercube(d)
    parts = text.lower().split("x")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise GridError(f"bad grid specification {text!r}") from None
    if not dims:
        raise GridError("empty grid specification")
    return GridSpec(dims)


@dataclass(frozen=True)
class VertexSet:
    """Dense vertex bitset bound to its grid."""

    spec: GridSpec
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= self.spec.full_vertex_mask:
            raise GridError("vertex mask out of range for grid")

    @classmethod
    def empty(cls, spec: GridSpec) -> "VertexSet":
        return cls(spec, 0)

    @classmethod
    def full(cls, spec: GridSpec) -> "VertexSet":
        return cls(spec, spec.full_vertex_mask)

    @classmethod
    def from_indices(cls, spec: GridSpec, indices: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in indices:
            spec.check_vertex(v)
            mask |= 1 << v
        return cls(spec, mask)

    @classmethod
    def from_coords(cls, spec: GridSpec, coords: Iterable[Iterable[int]]) -> "VertexSet":
        return cls.from_indices(spec, (spec.index_of(c) for c in coords))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool((self.mask >> v) & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def indices(self) -> list[int]:
        return list(self)

    def _check_same(self, other: "VertexSet") -> None:
        if self.spec != other.spec:
            raise GridError("vertex sets belong to different grids")

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet(self.spec, self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet(self.spec, self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet(self.spec, self.mask & ~other.mask)

    def issubset(self, other: "VertexSet") -> bool:
        self._check_same(other)
        return self.mask & ~other.mask == 0

    @property
    def is_full(self) -> bool:
        return self.mask == self.spec.full_vertex_mask
