"""Pointed rational polyhedral cones in N = Z^d.

Facet and membership computations use brute-force subset enumeration with
exact integers.  That is cubic-ish in the number of rays but the cones this
package handles have at most a few dozen generators in rank <= 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from .lattice import (
    Covector,
    Vector,
    adjugate,
    as_vector,
    cross,
    determinant,
    dot,
    hermite_form,
    integer_kernel,
    lcm_denominators,
    maximal_minors_gcd,
    nullspace,
    pivot_columns,
    primitive,
    rank,
    solve_consistent,
    solve_rational,
)


class ConeError(ValueError):
    """Invalid cone input or violated operation precondition."""


def hrep(vectors: Sequence[Vector], d: int) -> tuple[list[Vector], list[Vector]]:
    """Equations and facet inequalities of the cone generated by `vectors`.

    Returns ``(eqs, ineqs)``: the cone is ``{x : e.x == 0 for e in eqs,
    m.x >= 0 for m in ineqs}``.  Works for non-pointed cones too.
    """
    vecs = sorted({primitive(v) for v in vectors if any(v)})
    eqs = nullspace(vecs, d) if vecs else [tuple(int(i == j) for j in range(d)) for i in range(d)]
    k = d - len(eqs)
    if k == 0:
        return eqs, []
    cols = pivot_columns(vecs)
    proj = [tuple(v[c] for c in cols) for v in vecs]
    normals = set()
    for sub in combinations(proj, k - 1):
        n = cross(sub, k)
        if not any(n):
            continue
        n = primitive(n)
        if n in normals or tuple(-x for x in n) in normals:
            continue
        vals = [dot(n, p) for p in proj]
        if all(x >= 0 for x in vals):
            normals.add(n)
        elif all(x <= 0 for x in vals):
            normals.add(tuple(-x for x in n))
    ineqs = []
    for n in sorted(normals):
        full = [0] * d
        for c, x in zip(cols, n):
            full[c] = x
        ineqs.append(tuple(full))
    return eqs, ineqs


def lineality_dim(vectors: Sequence[Vector], d: int) -> int:
    eqs, ineqs = hrep(vectors, d)
    return d - len(eqs) - rank(ineqs)


@dataclass(frozen=True)
class Cone:
    """A pointed cone given by its primitive minimal generators.

    Use :func:`make_cone` to build one from arbitrary generators; the
    constructor trusts its input.
    """

    rays: tuple[Vector, ...]
    rank: int

    def __repr__(self) -> str:
        return f"Cone({list(map(list, self.rays))}, rank={self.rank})"

    @cached_property
    def dim(self) -> int:
        return rank(self.rays)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.rank

    @cached_property
    def hrep(self) -> tuple[list[Vector], list[Vector]]:
        return hrep(self.rays, self.rank)

    @cached_property
    def _adjugate(self) -> tuple[tuple[Vector, ...], int]:
        # rows of the ray matrix are the rays, so coords of v are (v @ adj) / det
        det = determinant(self.rays)
        return adjugate(self.rays), det

    def coordinates(self, v: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients of `v` in the ray basis of a full-dimensional simplicial cone."""
        adj, det = self._adjugate
        return tuple(Fraction(dot(v, col), det) for col in zip(*adj))

    def interior_functional(self) -> Vector:
        """An integer functional that is positive on every nonzero point of the cone."""
        eqs, ineqs = self.hrep
        d = self.rank
        if not ineqs:
            # a single ray spans a one-dimensional cone without proper facets
            return self.rays[0] if self.rays else (0,) * d
        return tuple(sum(m[i] for m in ineqs) for i in range(d))


rank_of = rank


def _check_rank(vectors: Iterable[Sequence[int]], d: int) -> list[Vector]:
    return [as_vector(v, d) for v in vectors]


def make_cone(generators: Sequence[Sequence[int]], rank: Optional[int] = None) -> Cone:
    """Canonical pointed cone generated by `generators`.

    Generators are primitivized, redundant ones dropped, and the remaining rays
    sorted lexicographically.
    """
    generators = list(generators)
    if not generators:
        raise ConeError("empty generator list")
    d = rank if rank is not None else len(generators[0])
    vecs = _check_rank(generators, d)
    if any(not any(v) for v in vecs):
        raise ConeError("zero generator")
    vecs = sorted({primitive(v) for v in vecs})
    eqs, ineqs = hrep(vecs, d)
    k = d - len(eqs)
    if rank_of(ineqs) != k:
        raise ConeError("cone contains a line (not pointed)")
    rays = [v for v in vecs if rank_of([m for m in ineqs if dot(m, v) == 0]) == k - 1]
    cone = Cone(tuple(rays), d)
    cone.__dict__["hrep"] = (eqs, ineqs)
    cone.__dict__["dim"] = k
    return cone


def zero_cone(d: int) -> Cone:
    return Cone((), d)


def contains(c: Cone, v: Sequence[int]) -> bool:
    """Exact test whether `v` is a nonnegative combination of the rays of `c`."""
    v = as_vector(v, c.rank)
    if not c.rays:
        return not any(v)
    if c.is_full_dimensional and c.is_simplicial:
        adj, det = c._adjugate
        if det > 0:
            return all(dot(v, col) >= 0 for col in zip(*adj))
        return all(dot(v, col) <= 0 for col in zip(*adj))
    eqs, ineqs = c.hrep
    return all(dot(e, v) == 0 for e in eqs) and all(dot(m, v) >= 0 for m in ineqs)


def is_full_dimensional(c: Cone) -> bool:
    return c.is_full_dimensional


def faces(c: Cone) -> list[Cone]:
    """All faces of a simplicial cone, the zero cone included."""
    if not c.is_simplicial:
        raise ConeError("face enumeration is only supported for simplicial cones")
    out = []
    for k in range(len(c.rays) + 1):
        for sub in combinations(c.rays, k):
            out.append(Cone(sub, c.rank))
    return out


def face_ray_sets(c: Cone) -> set[frozenset]:
    """Ray sets of every face of `c` (any cone), the zero face included."""
    seen: set[frozenset] = set()
    stack = [c]
    while stack:
        cur = stack.pop()
        key = frozenset(cur.rays)
        if key in seen:
            continue
        seen.add(key)
        if not cur.rays:
            continue
        _, ineqs = cur.hrep
        if not ineqs:
            # one-dimensional: the only proper face is the origin
            stack.append(zero_cone(c.rank))
            continue
        for m in ineqs:
            stack.append(Cone(tuple(r for r in cur.rays if dot(m, r) == 0), c.rank))
    return seen


def multiplicity(c: Cone) -> int:
    """Lattice index of the sublattice spanned by the rays of a simplicial cone."""
    if not c.is_simplicial:
        raise ConeError("multiplicity is defined for simplicial cones")
    if not c.rays:
        return 1
    if c.is_full_dimensional:
        return abs(determinant(c.rays))
    return maximal_minors_gcd(c.rays)


def parallelepiped_points(c: Cone) -> list[Vector]:
    """Lattice points sum(l_i u_i) with 0 <= l_i < 1, the origin first.

    Enumerates the residue classes of Z^d modulo the ray lattice using the
    Hermite form of the generator matrix, so the work is O(multiplicity).
    """
    if not (c.is_simplicial and c.is_full_dimensional):
        raise ConeError("parallelepiped points need a simplicial full-dimensional cone")
    d = c.rank
    cols = tuple(tuple(r[i] for r in c.rays) for i in range(d))  # rays as columns
    h, _ = hermite_form(cols)
    diag = [h[i][i] for i in range(d)]
    adj, det = c._adjugate
    sgn = 1 if det > 0 else -1
    pts = []
    for x in product(*(range(t) for t in diag)):
        # lambda_j = (x . adj[:, j]) / det ; n = x - sum floor(lambda_j) u_j
        n = list(x)
        for j, col in enumerate(zip(*adj)):
            fl = (sgn * dot(x, col)) // abs(det)
            if fl:
                u = c.rays[j]
                for i in range(d):
                    n[i] -= fl * u[i]
        pts.append(tuple(n))
    pts.sort(key=lambda p: (any(p), p))
    return pts


def height_functional(c: Cone) -> Covector:
    """The linear functional taking the value 1 on every ray of `c`."""
    if not (c.is_simplicial and c.is_full_dimensional):
        raise ConeError("height functional needs a simplicial full-dimensional cone")
    x = solve_rational(c.rays, [1] * c.rank)
    assert x is not None
    return x


def gorenstein_functional(c: Cone) -> Optional[tuple[Covector, int]]:
    """Functional m with m(u) = 1 on all rays, and its Q-Gorenstein index.

    None when the rays do not lie on a common affine hyperplane.  For a cone
    that is not full-dimensional the functional is only determined on its
    span; the particular solution with free coordinates zero is returned.
    """
    if not c.rays:
        return None
    m = solve_consistent(c.rays, [1] * len(c.rays))
    if m is None:
        return None
    return m, lcm_denominators(m)


def span_lattice_basis(c: Cone) -> list[Vector]:
    """A Z-basis of N intersected with the linear span of `c`."""
    eqs, _ = c.hrep
    if not eqs:
        return [tuple(int(i == j) for j in range(c.rank)) for i in range(c.rank)]
    return integer_kernel(eqs, c.rank)


def to_span_coordinates(c: Cone) -> tuple[Cone, list[Vector]]:
    """Re-express `c` as a full-dimensional cone in the saturated span lattice.

    Returns the cone in coordinates plus the basis mapping back: a coordinate
    vector y corresponds to sum(y_i * basis[i]).
    """
    basis = span_lattice_basis(c)
    return make_cone(coords_in_basis(c.rays, basis), len(basis)), basis


def coords_in_basis(vectors: Sequence[Vector], basis: Sequence[Vector]) -> list[Vector]:
    """Integer coordinates of lattice vectors lying in the span of a lattice basis."""
    cols = pivot_columns(basis)
    sq = [[b[col] for b in basis] for col in cols]
    out = []
    for v in vectors:
        y = solve_rational(sq, [v[col] for col in cols])
        if y is None or any(q.denominator != 1 for q in y):
            raise ConeError(f"{list(v)} is not in the lattice spanned by the basis")
        out.append(tuple(int(q) for q in y))
    return out


def from_span_coordinates(y: Sequence[int], basis: Sequence[Vector]) -> Vector:
    d = len(basis[0])
    return tuple(sum(yi * b[i] for yi, b in zip(y, basis)) for i in range(d))


def placing_triangulation(c: Cone) -> list[tuple[int, ...]]:
    """Triangulate a full-dimensional cone using only its rays.

    Returns index tuples into ``c.rays``.  Rays are placed in order; each new
    ray is coned over the boundary facets it sees.
    """
    if not c.is_full_dimensional:
        raise ConeError("placing triangulation needs a full-dimensional cone")
    d = c.rank
    rays = c.rays
    if c.is_simplicial:
        return [tuple(range(d))]
    first: list[int] = []
    for i, r in enumerate(rays):
        if rank([rays[j] for j in first] + [r]) > len(first):
            first.append(i)
        if len(first) == d:
            break
    cells = [tuple(first)]
    placed = set(first)
    for i in range(len(rays)):
        if i in placed:
            continue
        v = rays[i]
        count: dict[tuple[int, ...], int] = {}
        owner: dict[tuple[int, ...], tuple[int, ...]] = {}
        for cell in cells:
            for f in combinations(cell, d - 1):
                count[f] = count.get(f, 0) + 1
                owner[f] = cell
        new = []
        for f, n in count.items():
            if n != 1:
                continue
            (apex,) = set(owner[f]) - set(f)
            normal = cross([rays[j] for j in f], d)
            if dot(normal, rays[apex]) < 0:
                normal = tuple(-x for x in normal)
            if dot(normal, v) < 0:
                new.append(tuple(sorted(f + (i,))))
        cells.extend(new)
        placed.add(i)
    return sorted(cells)


def simplicial_volume(vectors: Sequence[Vector], psi: Sequence[int]) -> Fraction:
    """d! * volume of cone(vectors) cut by {psi <= 1}, up to a constant factor."""
    det = abs(determinant(vectors))
    den = 1
    for v in vectors:
        den *= dot(psi, v)
    return Fraction(det, den)


def cone_volume(c: Cone, psi: Sequence[int]) -> Fraction:
    """Scaled volume of c ∩ {psi <= 1}; zero for lower-dimensional cones."""
    if not c.is_full_dimensional:
        return Fraction(0)
    return sum(
        (simplicial_volume([c.rays[i] for i in cell], psi) for cell in placing_triangulation(c)),
        Fraction(0),
    )


def meet_properly(a: Cone, b: Cone) -> bool:
    """True iff a ∩ b is a common face of both cones.

    Uses the separation criterion: a ∩ b is a face of both exactly when some
    m vanishes on the shared rays, is positive on the other rays of `a` and
    negative on the other rays of `b`.  Feasibility is decided through the
    Gordan alternative as a lineality computation.
    """
    d = a.rank
    sa = {r for r in a.rays if contains(b, r)}
    sb = {r for r in b.rays if contains(a, r)}
    if sa != sb:
        return False
    z = sorted(sa)
    w = [r for r in a.rays if r not in sa] + [tuple(-x for x in r) for r in b.rays if r not in sb]
    if not w:
        return True
    zr = rank(z)
    if any(rank(z + [x]) == zr for x in w):
        return False
    neg = [tuple(-x for x in r) for r in z]
    return lineality_dim(w + z + neg, d) == zr
