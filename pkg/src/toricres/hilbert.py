"""Hilbert bases of pointed cones."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cone import (
    Cone,
    contains,
    from_span_coordinates,
    make_cone,
    parallelepiped_points,
    placing_triangulation,
    to_span_coordinates,
)
from .lattice import Vector, dot


@dataclass(frozen=True)
class HilbertBasis:
    """Minimal generating set of the monoid of lattice points in a cone."""

    elements: tuple[Vector, ...]
    ray_generators: frozenset

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return tuple(v) in set(self.elements)

    def is_ray_generator(self, v) -> bool:
        return tuple(v) in self.ray_generators

    @property
    def exceptional(self) -> tuple[Vector, ...]:
        """Basis elements that are not ray generators."""
        return tuple(h for h in self.elements if h not in self.ray_generators)

    def as_set(self) -> frozenset:
        return frozenset(self.elements)


def _ordered(c: Cone, elements) -> tuple[Vector, ...]:
    psi = c.interior_functional()
    return tuple(sorted(set(elements), key=lambda h: (dot(psi, h), h)))


def _full_dim_candidates(c: Cone) -> set[Vector]:
    cands = set(c.rays)
    for cell in placing_triangulation(c):
        sub = make_cone([c.rays[i] for i in cell], c.rank)
        cands.update(p for p in parallelepiped_points(sub) if any(p))
    return cands


def hilbert_basis(c: Cone) -> HilbertBasis:
    """Hilbert basis of a pointed cone.

    Candidates are the rays plus the parallelepiped points of the cells of a
    placing triangulation.  A candidate is kept when subtracting any other
    candidate leaves the cone; one pass suffices because every reducible
    candidate has an irreducible summand among the candidates.
    """
    if not c.rays:
        return HilbertBasis((), frozenset())
    if not c.is_full_dimensional:
        sub, basis = to_span_coordinates(c)
        hb = hilbert_basis(sub)
        elems = [from_span_coordinates(h, basis) for h in hb.elements]
        return HilbertBasis(_ordered(c, elems), frozenset(c.rays))
    cands = sorted(_full_dim_candidates(c))
    keep = []
    for h in cands:
        reducible = False
        for g in cands:
            if g == h:
                continue
            diff = tuple(x - y for x, y in zip(h, g))
            if contains(c, diff):
                reducible = True
                break
        if not reducible:
            keep.append(h)
    return HilbertBasis(_ordered(c, keep), frozenset(c.rays))


def zonotope_box(c: Cone) -> list[tuple[int, int]]:
    """Coordinate bounds of sum([0, 1] * u) over the rays u.

    Every Hilbert basis element lies in this box.
    """
    return [
        (sum(min(0, r[i]) for r in c.rays), sum(max(0, r[i]) for r in c.rays))
        for i in range(c.rank)
    ]


def hilbert_basis_bruteforce(c: Cone, box_bound: Optional[int] = None) -> HilbertBasis:
    """Hilbert basis by exhaustive lattice enumeration (independent oracle).

    Enumerates lattice points of `c` in [-box_bound, box_bound]^d, clipped to
    the zonotope box of the rays, then sweeps them by increasing height under
    an interior functional: a point is irreducible iff no previously found
    irreducible point can be subtracted from it inside the cone.
    """
    d = c.rank
    eqs, ineqs = c.hrep
    bounds = zonotope_box(c)
    if box_bound is not None:
        bounds = [(max(lo, -box_bound), min(hi, box_bound)) for lo, hi in bounds]
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in bounds]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
    grid = grid[np.any(grid != 0, axis=1)]
    eq = np.array(eqs, dtype=np.int64).reshape(-1, d)
    iq = np.array(ineqs, dtype=np.int64).reshape(-1, d)

    def inside(pts):
        ok = np.all(pts @ iq.T >= 0, axis=1)
        if len(eq):
            ok &= np.all(pts @ eq.T == 0, axis=1)
        return ok

    pts = grid[inside(grid)]
    psi = np.array(c.interior_functional(), dtype=np.int64)
    heights = pts @ psi
    order = np.lexsort((heights,))
    pts, heights = pts[order], heights[order]
    alive = np.ones(len(pts), dtype=bool)
    found: list[Vector] = []
    start = 0
    while start < len(pts):
        level = heights[start]
        stop = start
        while stop < len(pts) and heights[stop] == level:
            stop += 1
        fresh = [i for i in range(start, stop) if alive[i]]
        for i in fresh:
            h = pts[i]
            found.append(tuple(int(x) for x in h))
            rest = slice(stop, len(pts))
            alive[rest] &= ~inside(pts[rest] - h)
        start = stop
    return HilbertBasis(_ordered(c, found), frozenset(c.rays))


def essential_divisors(c: Cone) -> tuple[HilbertBasis, tuple[Vector, ...]]:
    """Hilbert basis together with its elements that are not ray generators.

    Those extra elements index the exceptional divisors that appear on every
    toric resolution.
    """
    hb = hilbert_basis(c)
    return hb, hb.exceptional
