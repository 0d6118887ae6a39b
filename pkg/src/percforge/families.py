"""Edge-vector families certifying weak saturation lower bounds.

The certificate scheme: assign to every edge e of G a rational vector f_e
of length w such that (a) for every star center v and every admissible
coefficient vector x supported on labels of edges at v, the combination
sum_i x_i f_{e(v,i)} vanishes, with all coefficients nonzero on any chosen
(r+1)-leaf star, and (b) the family spans R^w.  Replaying the edge
additions of any weakly saturated subgraph then shows its edge count is at
least dim span {f_e} = w, so wsat(G, S_{r+1}) >= w, and dividing by r
bounds the minimum percolating set.

Families are built by the same recursions as the saturated graphs:

* hypercube: split off the last direction; the bottom copy keeps the
  support subspace with the last coordinate eliminated against a pivot
  member z, the top copy keeps its plain projection.  Cross edges get the
  unique combination that kills the z-relation at their bottom endpoint.
* grid: peel the highest axis of length >= 3.  The shortened copy reuses
  the subspace unchanged; the dropped-axis copy gets the projection after
  eliminating the label that cannot occur on the boundary; cross edges
  into the low-degree set Y get fresh basis vectors, other cross edges get
  the killing combination for a member supported inside the boundary
  vertex's label set.

Every derived subspace is re-certified (dimension and support threshold)
before use, and the finished family is checked against both defining
properties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counts import DomainError, w_recurrence, wsat_hypercube
from .grid import EdgeId, GridSpec, parse_grid
from .linalg import (
    F0,
    F1,
    CertificationError,
    SupportSubspace,
    Vector,
    build_support_subspace,
    find_support_vector,
    rank_profile_of_rows,
    reduce_rows,
    support,
)


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeVectorFamily:
    """Vectors indexed by the grid's global edge enumeration.

    label_mode is "grid" (subspace coordinates are the 2d odd/even labels)
    or "direction" (hypercube only: coordinates are the d directions).
    """

    spec: GridSpec
    r: int
    label_mode: str
    target_dim: int
    vectors: tuple[Vector, ...]
    subspace: SupportSubspace

    def __post_init__(self) -> None:
        if self.label_mode not in ("grid", "direction"):
            raise FamilyError(f"unknown label mode {self.label_mode!r}")
        if self.label_mode == "direction" and not self.spec.is_hypercube:
            raise FamilyError("direction labels only apply to hypercubes")
        if len(self.vectors) != self.spec.num_edges:
            raise FamilyError("need exactly one vector per edge")

    def incident_coords(self, v: int) -> tuple[int, ...]:
        """0-based subspace coordinates whose edge exists at v."""
        if self.label_mode == "direction":
            return tuple(range(self.spec.d))
        return tuple(j - 1 for j in self.spec.incident_labels(v))

    def edge_at(self, v: int, coord: int) -> int:
        """Global index of e(v, coord) for a 0-based subspace coordinate."""
        spec = self.spec
        if self.label_mode == "direction":
            axis = coord + 1
            lower = v & ~(1 << coord)
            return spec.edge_index(EdgeId(lower, axis))
        idx = spec.label_to_edge_index(v, coord + 1)
        if idx < 0:
            raise FamilyError(f"no edge with label {coord + 1} at vertex {v}")
        return idx


@dataclass(frozen=True)
class RankCertificate:
    family: EdgeVectorFamily
    rank: int
    pivot_edges: tuple[int, ...]
    wsat_lower: int
    m_lower: int

    def to_json_doc(self) -> dict:
        fam = self.family
        return {
            "kind": "rank-certificate",
            "spec": str(fam.spec),
            "r": fam.r,
            "label_mode": fam.label_mode,
            "ambient": fam.subspace.ambient,
            "subspace_basis": [[str(x) for x in row] for row in fam.subspace.basis],
            "target_dim": fam.target_dim,
            "vectors": [[_frac_str(x) for x in vec] for vec in fam.vectors],
            "rank": self.rank,
            "pivot_edges": list(self.pivot_edges),
            "wsat_lower": self.wsat_lower,
            "m_lower": self.m_lower,
        }


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# vector helpers


def _zeros(n: int) -> list[Fraction]:
    return [F0] * n


def _concat(vec: Vector, pad_after: int, pad_before: int = 0) -> Vector:
    return (F0,) * pad_before + tuple(vec) + (F0,) * pad_after


def _unit(n: int, k: int) -> Vector:
    return tuple(F1 if i == k else F0 for i in range(n))


# ---------------------------------------------------------------------------
# derived subspaces


def _eliminate_and_drop(
    space: SupportSubspace,
    kill_coord: int,
    drop_coords: tuple[int, ...],
    expect_dim: int,
    certify: bool,
) -> SupportSubspace:
    """Project out `kill_coord` against a member z with z[kill_coord] != 0,
    then delete `drop_coords`; re-certify the claimed support threshold."""
    target = _lex_first_superset(range(space.ambient), kill_coord, space.codim + 1)
    z = find_support_vector(space, target)
    zc = z[kill_coord]
    rows = []
    for b in space.basis:
        coeff = Fraction(b[kill_coord]) / zc
        rows.append([Fraction(x) - coeff * zx for x, zx in zip(b, z)])
    kept = [c for c in range(space.ambient) if c not in drop_coords]
    projected = [[row[c] for c in kept] for row in rows]
    reduced = reduce_rows(projected, len(kept))
    derived = SupportSubspace(len(kept), tuple(reduced))
    if derived.dim != expect_dim:
        raise CertificationError(
            f"derived space has dimension {derived.dim}, expected {expect_dim}"
        )
    if certify:
        derived.certify()
    return derived


def _project_drop(
    space: SupportSubspace, drop_coords: tuple[int, ...], expect_dim: int, certify: bool
) -> SupportSubspace:
    kept = [c for c in range(space.ambient) if c not in drop_coords]
    projected = [[row[c] for c in kept] for row in space.basis]
    reduced = reduce_rows(projected, len(kept))
    derived = SupportSubspace(len(kept), tuple(reduced))
    if derived.dim != expect_dim:
        raise CertificationError(
            f"projected space has dimension {derived.dim}, expected {expect_dim}"
        )
    if certify:
        derived.certify()
    return derived


def _restrict_to_coords(
    space: SupportSubspace, keep: tuple[int, ...], expect_dim: int, certify: bool
) -> SupportSubspace:
    """Members supported inside `keep`, compressed onto those coordinates."""
    members = space.vectors_supported_inside(keep)
    compressed = [[vec[c] for c in keep] for vec in members]
    reduced = reduce_rows(compressed, len(keep))
    derived = SupportSubspace(len(keep), tuple(reduced))
    if derived.dim != expect_dim:
        raise CertificationError(
            f"restricted space has dimension {derived.dim}, expected {expect_dim}"
        )
    if certify:
        derived.certify()
    return derived


def _lex_first_superset(universe, required: int, size: int) -> tuple[int, ...]:
    """Lexicographically first `size`-subset of `universe` containing
    `required`: the required coordinate plus the smallest others."""
    pool = sorted(set(universe))
    if required not in pool:
        raise FamilyError(f"required coordinate {required} not available")
    out = [required]
    for c in pool:
        if len(out) == size:
            break
        if c != required:
            out.append(c)
    if len(out) != size:
        raise FamilyError(f"cannot pick {size} coordinates from {len(pool)}")
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# hypercube family (direction coordinates)


def _cube_family(d: int, r: int, space: SupportSubspace, certify: bool) -> list[Vector]:
    spec = GridSpec.hypercube(d)
    ne = spec.num_edges
    if r == 0:
        return [()] * ne
    if d == r:
        return [_unit(ne, k) for k in range(ne)]

    w = wsat_hypercube(d, r)
    x0 = _eliminate_and_drop(space, d - 1, (d - 1,), d - 1 - r, certify)
    x1 = _project_drop(space, (d - 1,), d - r, certify)
    f0 = _cube_family(d - 1, r, x0, certify)
    f1 = _cube_family(d - 1, r - 1, x1, certify)
    w0 = wsat_hypercube(d - 1, r)
    w1 = wsat_hypercube(d - 1, r - 1)
    assert w == w0 + w1

    sub = GridSpec.hypercube(d - 1)
    off = 1 << (d - 1)
    vectors: list[Vector | None] = [None] * ne
    sub_edges = sub.edges_in_order()
    low_idx = [spec.edge_index(EdgeId(e.vertex, e.axis)) for e in sub_edges]
    high_idx = [spec.edge_index(EdgeId(e.vertex + off, e.axis)) for e in sub_edges]
    for k, _ in enumerate(sub_edges):
        vectors[low_idx[k]] = _concat(f0[k], w1)

    target = _lex_first_superset(range(d), d - 1, r + 1)
    z = find_support_vector(space, target)
    zd = z[d - 1]
    for v in range(off):
        acc = _zeros(w)
        for coord in range(d - 1):
            zc = z[coord]
            if zc:
                lower = v & ~(1 << coord)
                fvec = vectors[spec.edge_index(EdgeId(lower, coord + 1))]
                for j, x in enumerate(fvec):
                    if x:
                        acc[j] += zc * x
        vectors[spec.edge_index(EdgeId(v, d))] = tuple(-x / zd for x in acc)

    for k, _ in enumerate(sub_edges):
        vectors[high_idx[k]] = tuple(f0[k]) + tuple(f1[k])
    assert all(vec is not None for vec in vectors)
    return vectors  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# grid family (odd/even label coordinates)


def _grid_family(dims: tuple[int, ...], r: int, space: SupportSubspace, certify: bool) -> list[Vector]:
    d = len(dims)
    if d == 0:
        return []
    spec = GridSpec(dims)
    ne = spec.num_edges
    if r == 0:
        return [()] * ne
    if r == 2 * d:
        return [_unit(ne, k) for k in range(ne)]
    if all(a == 2 for a in dims):
        if r > d:
            return [_unit(ne, k) for k in range(ne)]
        odd = tuple(2 * i for i in range(d))  # 0-based slots of labels 1,3,5,...
        compressed = _restrict_to_coords(space, odd, d - r, certify)
        return _cube_family(d, r, compressed, certify)

    p = max(i + 1 for i, a in enumerate(dims) if a >= 3)
    a_p = dims[p - 1]
    side_dims = dims[: p - 1] + dims[p:]
    cur = _grid_family(dims[: p - 1] + (2,) + dims[p:], r, space, certify)
    side_cache: dict[int, list[Vector]] = {}

    def side_family(tau_label: int) -> list[Vector]:
        taubar0 = (2 * p - 1 if tau_label == 2 * p else 2 * p) - 1
        if taubar0 not in side_cache:
            x2 = _eliminate_and_drop(
                space, taubar0, (2 * p - 2, 2 * p - 1), 2 * d - r - 1, certify
            )
            side_cache[taubar0] = _grid_family(side_dims, r - 1, x2, certify)
        return side_cache[taubar0]

    for m in range(3, a_p + 1):
        parent = GridSpec(dims[: p - 1] + (m,) + dims[p:])
        tau_label = 2 * p - 1 if (m - 1) % 2 == 1 else 2 * p
        cur = _combine_layer(parent, p, m, cur, side_family(tau_label), r, space, tau_label)
    return cur


def _combine_layer(
    parent: GridSpec,
    p: int,
    m: int,
    g1_vecs: list[Vector],
    side_vecs: list[Vector],
    r: int,
    space: SupportSubspace,
    tau_label: int,
) -> list[Vector]:
    g1 = GridSpec(parent.dims[: p - 1] + (m - 1,) + parent.dims[p:])
    side = GridSpec(parent.dims[: p - 1] + parent.dims[p:])
    w1 = w_recurrence(g1.dims, r)
    w2 = w_recurrence(side.dims, r - 1)
    top = [v for v in g1.vertices() if g1.coord(v, p) == m - 1]
    y_set = [v for v in top if len(g1.incident_labels(v)) < r]
    y_pos = {v: i for i, v in enumerate(y_set)}
    w = w1 + w2 + len(y_set)
    assert w == w_recurrence(parent.dims, r)

    emb1 = [parent.index_of(g1.coords_of(v)) for v in g1.vertices()]
    embs = []
    for v in side.vertices():
        coords = list(side.coords_of(v))
        coords.insert(p - 1, m)
        embs.append(parent.index_of(coords))

    vectors: list[Vector | None] = [None] * parent.num_edges
    g1_edges = g1.edges_in_order()
    for k, e in enumerate(g1_edges):
        idx = parent.edge_index(EdgeId(emb1[e.vertex], e.axis))
        vectors[idx] = _concat(g1_vecs[k], w2 + len(y_set))

    tau0 = tau_label - 1
    cache: dict[tuple[int, ...], Vector] = {}
    for v in top:
        pv = emb1[v]
        idx = parent.edge_index(EdgeId(pv, p))
        if v in y_pos:
            vectors[idx] = _unit(w, w1 + w2 + y_pos[v])
            continue
        coords_at_v = tuple(j - 1 for j in parent.incident_labels(pv))
        target = _lex_first_superset(coords_at_v, tau0, space.codim + 1)
        zv = cache.get(target)
        if zv is None:
            zv = find_support_vector(space, target)
            cache[target] = zv
        acc = _zeros(w)
        for c in target:
            if c == tau0:
                continue
            zc = zv[c]
            fvec = vectors[parent.label_to_edge_index(pv, c + 1)]
            for j, x in enumerate(fvec):
                if x:
                    acc[j] += zc * x
        vectors[idx] = tuple(-x / zv[tau0] for x in acc)

    side_edges = side.edges_in_order()
    for k, e in enumerate(side_edges):
        axis = e.axis if e.axis < p else e.axis + 1
        idx = parent.edge_index(EdgeId(embs[e.vertex], axis))
        low_coords = list(side.coords_of(e.vertex))
        low_coords.insert(p - 1, m - 1)
        shadow = EdgeId(g1.index_of(low_coords), axis)
        fe1 = g1_vecs[g1.edge_index(shadow)]
        vectors[idx] = tuple(fe1) + tuple(side_vecs[k]) + (F0,) * len(y_set)
    assert all(vec is not None for vec in vectors)
    return vectors  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# entry points and verification


def build_edge_vectors_hypercube(d: int, r: int, certify: bool = True) -> EdgeVectorFamily:
    """Direction-coordinate family for Q_d with span dimension
    wsat_hypercube(d, r); both defining properties are verified."""
    if not d >= r >= 0:
        raise DomainError(f"need d >= r >= 0, got d={d}, r={r}")
    space = build_support_subspace(d, r, certify=certify)
    vectors = _cube_family(d, r, space, certify)
    family = EdgeVectorFamily(
        GridSpec.hypercube(d), r, "direction", wsat_hypercube(d, r), tuple(vectors), space
    )
    verify_family(family)
    return family


def build_edge_vectors_grid(dims, r: int, certify: bool = True) -> EdgeVectorFamily:
    """Label-coordinate family for the grid with span dimension
    w_recurrence(dims, r); both defining properties are verified."""
    dims = tuple(int(a) for a in dims)
    if not dims:
        raise DomainError("grid needs at least one axis")
    if any(a < 2 for a in dims):
        raise DomainError(f"all sides must be >= 2, got {dims}")
    if not 0 <= r <= 2 * len(dims):
        raise DomainError(f"need 0 <= r <= 2d, got r={r}")
    space = build_support_subspace(2 * len(dims), r, certify=certify)
    vectors = _grid_family(dims, r, space, certify)
    family = EdgeVectorFamily(
        GridSpec(dims), r, "grid", w_recurrence(dims, r), tuple(vectors), space
    )
    verify_family(family)
    return family


def verify_family(family: EdgeVectorFamily) -> None:
    """Check the vanishing property at every vertex (over a basis of the
    admissible members) and that the family spans R^w."""
    w = family.target_dim
    members_cache: dict[tuple[int, ...], list[Vector]] = {}
    for v in family.spec.vertices():
        coords = family.incident_coords(v)
        members = members_cache.get(coords)
        if members is None:
            members = family.subspace.vectors_supported_inside(coords)
            members_cache[coords] = members
        for x in members:
            acc = _zeros(w)
            for c in support(x):
                fvec = family.vectors[family.edge_at(v, c)]
                xc = x[c]
                for j, val in enumerate(fvec):
                    if val:
                        acc[j] += xc * val
            if any(acc):
                raise FamilyError(f"vanishing relation fails at vertex {v}")
    rank = rank_profile_of_rows(family.vectors, w)[0] if w else 0
    if rank != w:
        raise FamilyError(f"family spans rank {rank}, expected {w}")


def family_rank(family: EdgeVectorFamily) -> tuple[int, tuple[int, ...]]:
    """Exact rank and a deterministic independent edge subset: pivot columns
    of the transposed family under first-nonzero elimination."""
    w = family.target_dim
    ne = len(family.vectors)
    if w == 0:
        return 0, ()
    transposed = [[family.vectors[e][j] for e in range(ne)] for j in range(w)]
    rank, pivots = rank_profile_of_rows(transposed, ne)
    return rank, pivots


def verify_star_relations(family: EdgeVectorFamily) -> int:
    """For every vertex and every (r+1)-subset of its labels, the chosen
    member vanishes against the star's edge vectors with every coefficient
    nonzero.  Returns the number of star relations checked."""
    from itertools import combinations

    r = family.r
    w = family.target_dim
    cache: dict[tuple[int, ...], Vector] = {}
    checked = 0
    for v in family.spec.vertices():
        coords = family.incident_coords(v)
        if len(coords) < r + 1:
            continue
        for t in combinations(coords, r + 1):
            x = cache.get(t)
            if x is None:
                x = find_support_vector(family.subspace, t)
                cache[t] = x
            if support(x) != t:
                raise FamilyError(f"support vector for {t} has wrong support")
            acc = _zeros(w)
            for c in t:
                fvec = family.vectors[family.edge_at(v, c)]
                xc = x[c]
                for j, val in enumerate(fvec):
                    if val:
                        acc[j] += xc * val
            if any(acc):
                raise FamilyError(f"star relation fails at vertex {v}, labels {t}")
            checked += 1
    return checked


def assemble_lower_bound(dims, r: int, certify: bool = True) -> RankCertificate:
    """Build the grid family, verify every star relation, compute the exact
    rank, and package the certified bounds wsat >= rank, m >= ceil(rank/r)."""
    dims = tuple(int(a) for a in dims)
    if not 1 <= r <= 2 * len(dims):
        raise DomainError(f"need 1 <= r <= 2d, got r={r}")
    family = build_edge_vectors_grid(dims, r, certify=certify)
    verify_star_relations(family)
    rank, pivots = family_rank(family)
    if rank != family.target_dim:
        raise FamilyError(f"rank {rank} does not match target {family.target_dim}")
    m_lower = -(-rank // r)
    return RankCertificate(family, rank, pivots, rank, m_lower)


def rank_certificate_from_json_doc(doc: dict) -> RankCertificate:
    if doc.get("kind") != "rank-certificate":
        raise ValueError("not a rank certificate document")
    spec = parse_grid(doc["spec"])
    basis = tuple(tuple(int(x) for x in row) for row in doc["subspace_basis"])
    space = SupportSubspace(int(doc["ambient"]), basis)
    vectors = tuple(tuple(_parse_frac(x) for x in vec) for vec in doc["vectors"])
    family = EdgeVectorFamily(
        spec, int(doc["r"]), doc["label_mode"], int(doc["target_dim"]), vectors, space
    )
    return RankCertificate(
        family,
        int(doc["rank"]),
        tuple(int(e) for e in doc["pivot_edges"]),
        int(doc["wsat_lower"]),
        int(doc["m_lower"]),
    )


def recheck_rank_certificate(cert: RankCertificate) -> None:
    """Full independent re-verification of a (possibly reloaded) certificate:
    support subspace, vanishing relations, star relations, rank, pivots."""
    fam = cert.family
    fam.subspace.certify()
    verify_family(fam)
    verify_star_relations(fam)
    rank, pivots = family_rank(fam)
    if rank != cert.rank or pivots != cert.pivot_edges:
        raise FamilyError("rank or pivot set does not match the certificate")
    if cert.wsat_lower != rank:
        raise FamilyError("claimed wsat bound does not equal the rank")
    if cert.m_lower != -(-rank // fam.r):
        raise FamilyError("claimed percolation bound does not equal ceil(rank/r)")
