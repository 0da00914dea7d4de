"""Fans stored by their maximal cones over a shared ray list."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .cone import (
    Cone,
    ConeError,
    cone_volume,
    contains,
    coords_in_basis,
    face_ray_sets,
    gorenstein_functional,
    make_cone,
    meet_properly,
    multiplicity,
    to_span_coordinates,
)
from .lattice import Vector, as_vector, dot, primitive


class FanError(ValueError):
    """Malformed fan data or violated fan precondition."""


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple[Vector, ...]
    cones: tuple[tuple[int, ...], ...]

    def cell(self, i: int) -> Cone:
        return Cone(tuple(sorted(self.rays[j] for j in self.cones[i])), self.rank)

    def cells(self) -> list[Cone]:
        return [self.cell(i) for i in range(len(self.cones))]

    def cell_vectors(self) -> list[frozenset]:
        return [frozenset(self.rays[j] for j in cone) for cone in self.cones]

    def canonical(self) -> "Fan":
        """Same fan with unused rays dropped, rays sorted, cones renumbered and sorted."""
        used = sorted({self.rays[j] for cone in self.cones for j in cone})
        index = {r: i for i, r in enumerate(used)}
        cones = sorted(tuple(sorted(index[self.rays[j]] for j in cone)) for cone in self.cones)
        return Fan(self.rank, tuple(used), tuple(cones))

    def key(self) -> frozenset:
        """Hashable identity independent of ray numbering."""
        return frozenset(self.cell_vectors())

    def same_as(self, other: "Fan") -> bool:
        return self.rank == other.rank and self.key() == other.key()


def make_fan(rays: Sequence[Sequence[int]], cones: Sequence[Sequence[int]], rank: int | None = None) -> Fan:
    """Build a fan, checking shapes and indices (not the fan axioms)."""
    rays = list(rays)
    if rank is None:
        if not rays:
            raise FanError("rank is required for a fan without rays")
        rank = len(rays[0])
    vecs = []
    for r in rays:
        v = as_vector(r, rank)
        if not any(v) or primitive(v) != v:
            raise FanError(f"ray {list(v)} is not a primitive nonzero vector")
        vecs.append(v)
    if len(set(vecs)) != len(vecs):
        raise FanError("duplicate rays")
    out = []
    for cone in cones:
        idx = tuple(sorted(int(i) for i in cone))
        if not idx:
            raise FanError("empty maximal cone")
        if len(set(idx)) != len(idx) or idx[0] < 0 or idx[-1] >= len(vecs):
            raise FanError(f"malformed cone indices {list(cone)}")
        out.append(idx)
    return Fan(rank, tuple(vecs), tuple(out))


def fan_from_cells(cells: Sequence[Sequence[Vector]], rank: int) -> Fan:
    rays = sorted({tuple(v) for cell in cells for v in cell})
    index = {r: i for i, r in enumerate(rays)}
    cones = sorted(tuple(sorted(index[tuple(v)] for v in cell)) for cell in cells)
    return Fan(rank, tuple(rays), tuple(cones))


def trivial_fan(c: Cone) -> Fan:
    return fan_from_cells([c.rays], c.rank)


def validate_fan(f: Fan) -> bool:
    """Check the fan axioms exactly."""
    for cone in f.cones:
        if any(j < 0 or j >= len(f.rays) for j in cone):
            raise FanError(f"malformed cone indices {list(cone)}")
    cells = []
    for i in range(len(f.cones)):
        vecs = [f.rays[j] for j in f.cones[i]]
        try:
            c = make_cone(vecs, f.rank)
        except ConeError:
            return False
        if set(c.rays) != set(vecs):
            return False
        cells.append(c)
    sets = f.cell_vectors()
    for i, j in combinations(range(len(cells)), 2):
        if sets[i] <= sets[j] or sets[j] <= sets[i]:
            return False
        if not meet_properly(cells[i], cells[j]):
            return False
    return True


def gen_set(f: Fan) -> frozenset:
    return frozenset(f.rays[j] for cone in f.cones for j in cone)


def _full_dim_support_check(cells: list[Cone], c: Cone) -> bool:
    psi = c.interior_functional()
    total = sum((cone_volume(x, psi) for x in cells), Fraction(0))
    return total == cone_volume(c, psi)


def is_subdivision_of(f: Fan, c: Cone) -> bool:
    """True iff `f` is a fan whose cones lie in `c` and cover it.

    Coverage is decided by exact volume accounting against an interior
    functional of `c`; together with pairwise proper intersection this is
    equivalent to equality of supports.
    """
    if f.rank != c.rank or not f.cones:
        return False
    if not all(contains(c, r) for r in gen_set(f)):
        return False
    if not validate_fan(f):
        return False
    if c.is_full_dimensional:
        return _full_dim_support_check(f.cells(), c)
    sub, basis = to_span_coordinates(c)
    cells = [make_cone(coords_in_basis(cell.rays, basis), sub.rank) for cell in f.cells()]
    return _full_dim_support_check(cells, sub)


def restrict(f: Fan, c: Cone) -> Fan:
    """The fan of all cones of `f` contained in `c`, by maximal cones."""
    found: set[frozenset] = set()
    for cell in f.cells():
        for face in face_ray_sets(cell):
            if face and all(contains(c, r) for r in face):
                found.add(face)
    maximal = [s for s in found if not any(s < t for t in found)]
    if not maximal:
        return Fan(f.rank, (), ())
    return fan_from_cells([sorted(s) for s in maximal], f.rank)


def stellar_subdivide(f: Fan, v: Sequence[int]) -> Fan:
    """Star subdivision of `f` at the primitive vector `v`.

    Every maximal cone containing `v` is replaced by the joins of `v` with its
    facets that do not contain `v`.
    """
    v = as_vector(v, f.rank)
    if not any(v) or primitive(v) != v:
        raise FanError("subdivision vector must be primitive")
    cells = [sorted(s) for s in f.cell_vectors()]
    if v in gen_set(f):
        return f
    hit = False
    new_cells = []
    for vecs in cells:
        cone = Cone(tuple(vecs), f.rank)
        if not contains(cone, v):
            new_cells.append(vecs)
            continue
        hit = True
        for facet in _facets_as_rays(cone):
            if not contains(Cone(tuple(facet), f.rank), v):
                new_cells.append(sorted(facet) + [v])
    if not hit:
        raise FanError(f"{list(v)} is outside the support of the fan")
    return fan_from_cells(new_cells, f.rank)


def _facets_as_rays(cone: Cone) -> list[list[Vector]]:
    if cone.is_simplicial:
        return [list(s) for s in combinations(cone.rays, len(cone.rays) - 1)]
    _, ineqs = cone.hrep
    return [[r for r in cone.rays if dot(m, r) == 0] for m in ineqs]


def refines(f: Fan, g: Fan) -> bool:
    """True iff every maximal cone of `f` lies in some cone of `g`.

    Both fans must subdivide the same cone (the cone spanned by their rays).
    """
    if f.rank != g.rank:
        raise FanError("rank mismatch")
    hull = make_cone(sorted(gen_set(g)), g.rank)
    if not (is_subdivision_of(f, hull) and is_subdivision_of(g, hull)):
        raise FanError("fans do not have the same support")
    gcells = g.cells()
    for cell in f.cells():
        if not any(all(contains(x, r) for r in cell.rays) for x in gcells):
            return False
    return True


def is_smooth_fan(f: Fan) -> bool:
    for cell in f.cells():
        if not cell.is_simplicial or multiplicity(cell) != 1:
            return False
    return True


def is_crepant(f: Fan, c: Cone) -> bool:
    """True iff every ray of `f` lies on the Gorenstein hyperplane of `c`."""
    g = gorenstein_functional(c)
    if g is None:
        raise ConeError("cone is not Q-Gorenstein")
    m, _ = g
    return all(dot(m, r) == 1 for r in gen_set(f))
