"""Exact rational linear algebra for rank certificates.

Everything is integer-or-Fraction arithmetic; rows are kept as primitive
integer vectors (gcd 1, first nonzero positive) after every elimination so
intermediate values stay small and artifacts are byte-stable.

The central object is a *support subspace*: a subspace of R^k, given by a
basis, in which every nonzero vector has more than `codim` nonzero entries.
That property is certified combinatorially: for every coordinate set T of
size codim, deleting the T-columns of the basis must leave full row rank.
The explicit construction is Vandermonde-based: row i is
(i^1, ..., i^codim) followed by the i-th unit vector, and any square
selection of the Vandermonde columns is nonsingular because a polynomial
with t nonzero terms cannot have t positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

F0 = Fraction(0)
F1 = Fraction(1)


class LinalgError(ValueError):
    pass


class CertificationError(LinalgError):
    """A claimed support/rank property failed its exhaustive check."""


# ---------------------------------------------------------------------------
# primitive integer row utilities


def primitive_int_row(row: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Scale a rational row to coprime integers with positive leading sign."""
    fracs = [Fraction(x) for x in row]
    denom_lcm = 1
    for x in fracs:
        d = x.denominator
        denom_lcm = denom_lcm // gcd(denom_lcm, d) * d
    ints = [int(x * denom_lcm) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


def reduce_rows(rows: Iterable[Sequence[Fraction | int]], ncols: int) -> list[tuple[int, ...]]:
    """Row-reduce to an independent echelon set of primitive integer rows.

    Fraction-free: each elimination uses cross-multiplication followed by a
    gcd rescale of the updated row, so no rationals ever appear.
    """
    work = [list(primitive_int_row(r)) for r in rows]
    work = [r for r in work if any(r)]
    out: list[list[int]] = []
    pivot_cols: list[int] = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(work) if r[col]), None)
        if idx is None:
            continue
        piv_row = work.pop(idx)
        piv = piv_row[col]
        for r in work:
            x = r[col]
            if x:
                for c in range(ncols):
                    r[c] = r[c] * piv - x * piv_row[c]
                g = 0
                for c in range(ncols):
                    g = gcd(g, r[c])
                if g > 1:
                    for c in range(ncols):
                        r[c] //= g
        work = [r for r in work if any(r)]
        out.append(piv_row)
        pivot_cols.append(col)
    return [tuple(primitive_int_row(r)) for r in out]


def rank_profile_of_rows(
    rows: Iterable[Sequence[Fraction | int]], ncols: int
) -> tuple[int, tuple[int, ...]]:
    """Exact rank plus the first-nonzero pivot columns."""
    work = [list(primitive_int_row(r)) for r in rows]
    work = [r for r in work if any(r)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        idx = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if idx is None:
            continue
        work[rank], work[idx] = work[idx], work[rank]
        piv_row = work[rank]
        piv = piv_row[col]
        for i in range(rank + 1, len(work)):
            r = work[i]
            x = r[col]
            if x:
                for c in range(col, ncols):
                    r[c] = r[c] * piv - x * piv_row[c]
                g = 0
                for c in range(col + 1, ncols):
                    g = gcd(g, r[c])
                if g > 1:
                    for c in range(col + 1, ncols):
                        r[c] //= g
        rank += 1
        pivots.append(col)
        if rank == len(work):
            break
    return rank, tuple(pivots)


def nullspace_rows(rows: Iterable[Sequence[Fraction | int]], ncols: int) -> list[tuple[int, ...]]:
    """Deterministic primitive basis of {x : M x = 0}: free variables in
    column order, one at a time set to 1, pivots back-substituted."""
    echelon = reduce_rows(rows, ncols)
    pivot_of: dict[int, tuple[int, ...]] = {}
    for r in echelon:
        col = next(c for c in range(ncols) if r[c])
        pivot_of[col] = r
    free = [c for c in range(ncols) if c not in pivot_of]
    basis = []
    for f in free:
        x = [F0] * ncols
        x[f] = F1
        for col in sorted(pivot_of, reverse=True):
            r = pivot_of[col]
            s = sum((Fraction(r[c]) * x[c] for c in range(col + 1, ncols)), start=F0)
            x[col] = -s / r[col]
        basis.append(primitive_int_row(x))
    return basis


def _to_fraction_vector(row: Sequence[Fraction | int]) -> Vector:
    return tuple(Fraction(x) for x in row)


class RationalMatrix:
    """Dense exact matrix; rows of Fractions, never floats."""

    def __init__(self, rows: Iterable[Sequence[Fraction | int]], ncols: int | None = None):
        self.rows: list[Vector] = [_to_fraction_vector(r) for r in rows]
        if self.rows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise LinalgError("ragged rows")
            self.ncols = widths.pop()
            if ncols is not None and ncols != self.ncols:
                raise LinalgError("ncols mismatch")
        else:
            if ncols is None:
                raise LinalgError("empty matrix needs an explicit column count")
            self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[F1 if i == j else F0 for j in range(n)] for i in range(n)], ncols=n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def rank(self) -> int:
        return rank_profile_of_rows(self.rows, self.ncols)[0]

    def rank_profile(self) -> tuple[int, tuple[int, ...]]:
        return rank_profile_of_rows(self.rows, self.ncols)


# ---------------------------------------------------------------------------
# support subspaces


def support(vec: Sequence[Fraction | int]) -> tuple[int, ...]:
    """0-based positions of the nonzero coordinates."""
    return tuple(i for i, x in enumerate(vec) if x)


@dataclass(frozen=True)
class SupportSubspace:
    """Row space of `basis` inside R^ambient, carrying the guarantee that
    every nonzero member has at least codim + 1 nonzero coordinates."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def certify(self, max_checks: int | None = None) -> int:
        """Exhaustively verify the support property via column deletions;
        returns the number of rank checks performed."""
        k, l = self.ambient, self.codim
        if rank_profile_of_rows(self.basis, k)[0] != self.dim:
            raise CertificationError("basis rows are dependent")
        total = comb(k, l)
        if max_checks is not None and total > max_checks:
            raise CertificationError(
                f"certification needs {total} checks, above the {max_checks} limit"
            )
        for drop in combinations(range(k), l):
            keep = [c for c in range(k) if c not in drop]
            sub = [[row[c] for c in keep] for row in self.basis]
            if rank_profile_of_rows(sub, len(keep))[0] != self.dim:
                raise CertificationError(
                    f"support property fails: columns {drop} admit a vanishing combination"
                )
        return total

    def member(self, coeffs: Sequence[Fraction | int]) -> Vector:
        if len(coeffs) != self.dim:
            raise LinalgError("coefficient count must match the basis size")
        out = [F0] * self.ambient
        for c, row in zip(coeffs, self.basis):
            if c:
                fc = Fraction(c)
                for j, x in enumerate(row):
                    if x:
                        out[j] += fc * x
        return tuple(out)

    def vectors_supported_inside(self, allowed: Iterable[int]) -> list[Vector]:
        """Basis of the members whose support lies inside `allowed`
        (full-ambient vectors)."""
        allowed = set(allowed)
        outside = [c for c in range(self.ambient) if c not in allowed]
        if not outside:
            return [_to_fraction_vector(r) for r in self.basis]
        # coefficient vectors c with (c . basis) vanishing on `outside`
        constraint = [[row[c] for row in self.basis] for c in outside]
        coeffs = nullspace_rows(constraint, self.dim)
        return [self.member(c) for c in coeffs]


def build_support_subspace(k: int, l: int, certify: bool = True) -> SupportSubspace:
    """The explicit Vandermonde construction: k - l rows (i^1..i^l | e_i)."""
    if not k >= l >= 0:
        raise LinalgError(f"need k >= l >= 0, got k={k}, l={l}")
    rows = []
    for i in range(1, k - l + 1):
        head = [i**j for j in range(1, l + 1)]
        tail = [1 if t == i - 1 else 0 for t in range(k - l)]
        rows.append(tuple(head + tail))
    space = SupportSubspace(k, tuple(rows))
    if certify:
        space.certify()
    return space


def find_support_vector(space: SupportSubspace, target: Iterable[int]) -> Vector:
    """The (projectively unique) member supported exactly on `target`,
    normalized so its first nonzero coordinate is 1.  `target` must have
    codim + 1 coordinates."""
    t = sorted(set(target))
    if len(t) != space.codim + 1:
        raise LinalgError(f"target must have {space.codim + 1} coordinates, got {len(t)}")
    if t and not 0 <= t[0] <= t[-1] < space.ambient:
        raise LinalgError("target coordinates out of range")
    outside = [c for c in range(space.ambient) if c not in set(t)]
    constraint = [[row[c] for row in space.basis] for c in outside]
    coeffs = nullspace_rows(constraint, space.dim)
    if len(coeffs) != 1:
        raise CertificationError(
            f"expected a one-dimensional solution for target {t}, got {len(coeffs)}"
        )
    vec = space.member(coeffs[0])
    if support(vec) != tuple(t):
        raise CertificationError(f"member support {support(vec)} differs from target {t}")
    lead = next(x for x in vec if x)
    return tuple(x / lead for x in vec)
