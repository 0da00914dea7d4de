"""Resolutions and exhaustive searches over triangulations of a cone.

The enumeration engine glues simplicial cells across open interior facets,
always expanding the facet with the fewest compatible candidates.  A facet
with a single candidate forces the next cell, so forced chains propagate
without branching.  Completeness is only claimed when the whole space was
explored within budget.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Sequence

from .cone import (
    Cone,
    ConeError,
    contains,
    cone_volume,
    hrep,
    make_cone,
    multiplicity,
    parallelepiped_points,
    placing_triangulation,
    simplicial_volume,
)
from .fan import (
    Fan,
    fan_from_cells,
    gen_set,
    is_smooth_fan,
    is_subdivision_of,
    stellar_subdivide,
)
from .hilbert import hilbert_basis
from .lattice import Vector, adjugate, cross, determinant, dot, solve_rational

MAX_SEARCH_RANK = 4


class InvariantError(AssertionError):
    """An internal consistency check failed."""


@dataclass(frozen=True)
class Budget:
    max_nodes: int = 10**7
    max_seconds: float = 300.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("budgets must be positive")


@dataclass
class SearchOutcome:
    fans: list[Fan]
    complete: bool
    nodes_explored: int
    budget: Budget = field(default_factory=Budget)

    @property
    def proves_nonexistence(self) -> bool:
        return self.complete and not self.fans


def _require_searchable(c: Cone) -> None:
    if not c.is_full_dimensional:
        raise ConeError("search needs a full-dimensional cone")
    if c.rank > MAX_SEARCH_RANK or c.rank < 1:
        raise ConeError(f"search operations support ranks 1..{MAX_SEARCH_RANK}")


def resolve(c: Cone) -> Fan:
    """A smooth subdivision of `c` by repeated star subdivisions.

    Starts from the placing triangulation on the rays of `c`.  Any singular
    cell is subdivided at its nonzero parallelepiped point of least height
    (ties broken lexicographically), which strictly lowers the multiplicity
    of every new cell.
    """
    if not c.is_full_dimensional:
        raise ConeError("resolve needs a full-dimensional cone")
    fan = fan_from_cells(
        [[c.rays[i] for i in cell] for cell in placing_triangulation(c)], c.rank
    )
    while True:
        bad = None
        for cell in sorted(fan.cells(), key=lambda x: x.rays):
            if multiplicity(cell) > 1:
                bad = cell
                break
        if bad is None:
            return fan
        ell = solve_rational(bad.rays, [1] * c.rank)
        pts = [p for p in parallelepiped_points(bad) if any(p)]
        v = min(pts, key=lambda p: (dot(ell, p), p))
        fan = stellar_subdivide(fan, v)


class _Cells:
    """Candidate simplicial cells over a point list with memoized compatibility."""

    def __init__(self, points: Sequence[Vector], cells: list[tuple[int, ...]], d: int):
        self.points = points
        self.cells = cells
        self.d = d
        self.index = {cell: i for i, cell in enumerate(cells)}
        self.by_facet: dict[tuple[int, ...], list[int]] = {}
        for i, cell in enumerate(cells):
            for f in combinations(cell, d - 1):
                self.by_facet.setdefault(f, []).append(i)
        self._inv = {}
        self._compat: dict[tuple[int, int], bool] = {}

    def _inverse(self, i):
        # signed adjugate: coords of v in cell i are (v @ adj) * sign / |det|
        got = self._inv.get(i)
        if got is None:
            vecs = [self.points[j] for j in self.cells[i]]
            det = determinant(vecs)
            adj = adjugate(vecs)
            s = 1 if det > 0 else -1
            cols = [tuple(s * x for x in col) for col in zip(*adj)]
            got = self._inv[i] = cols
        return got

    def compatible(self, i: int, j: int) -> bool:
        if i == j:
            return True
        key = (i, j) if i < j else (j, i)
        got = self._compat.get(key)
        if got is None:
            got = self._compat[key] = self._meet_properly(*key)
        return got

    def _meet_properly(self, i: int, j: int) -> bool:
        a, b = self.cells[i], self.cells[j]
        common = set(a) & set(b)
        a_only = [k for k, x in enumerate(a) if x not in common]
        b_only = [x for x in b if x not in common]
        cols = self._inverse(i)
        # rows: coordinates of b's private vertices on a's private vertices
        m = []
        for x in b_only:
            p = self.points[x]
            row = [dot(p, cols[k]) for k in a_only]
            if all(v >= 0 for v in row):
                return False
            m.append(row)
        k = len(a_only)
        if k == 1:
            return True
        return not _nonneg_combination_nonneg(m, k)


def _nonneg_combination_nonneg(m: list[list[int]], k: int) -> bool:
    """Is there y >= 0, y != 0 with y @ m >= 0 componentwise?

    The solution set is a pointed cone in R^k; it is nontrivial iff it has an
    extreme ray, i.e. a nonzero vector tight on k-1 independent constraints.
    """
    rows = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    rows += [tuple(m[i][j] for i in range(k)) for j in range(len(m[0]))]
    for sub in combinations(rows, k - 1):
        y = cross(sub, k)
        if not any(y):
            continue
        vals = [dot(r, y) for r in rows]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            return True
    return False


def _enumerate(
    c: Cone,
    points: Sequence[Vector],
    cell_ok: Callable[[list[Vector], int], bool],
    budget: Budget,
) -> SearchOutcome:
    """All triangulations of `c` whose cells are d-subsets of `points` passing `cell_ok`.

    `cell_ok` receives the cell vectors and their determinant.  Cells must be
    empty with respect to `points` for the result to use every point; callers
    guarantee that through `cell_ok`.
    """
    d = c.rank
    points = sorted(set(points))
    n = len(points)
    start = time.monotonic()
    cand = []
    for comb in combinations(range(n), d):
        vecs = [points[i] for i in comb]
        det = determinant(vecs)
        if det != 0 and cell_ok(vecs, det):
            cand.append(comb)
    cells = _Cells(points, cand, d)
    _, ineqs = c.hrep
    boundary_cache: dict[tuple[int, ...], bool] = {}

    def on_boundary(f):
        got = boundary_cache.get(f)
        if got is None:
            got = boundary_cache[f] = any(
                all(dot(m, points[i]) == 0 for i in f) for m in ineqs
            )
        return got

    psi = c.interior_functional()
    target = cone_volume(c, psi)
    results: dict[frozenset, Fan] = {}
    nodes = 0
    exhausted = False

    placed: list[int] = []
    owners: dict[tuple[int, ...], list[int]] = {}
    open_facets: dict[tuple[int, ...], list[int]] = {}

    def out_of_budget() -> bool:
        nonlocal exhausted
        if nodes >= budget.max_nodes or time.monotonic() - start > budget.max_seconds:
            exhausted = True
        return exhausted

    def place(ci: int):
        """Add cell ci; return (undo, ok)."""
        saved_lists = {}
        removed_open = {}
        added_open = []
        placed.append(ci)
        for f, lst in open_facets.items():
            new = [x for x in lst if x != ci and cells.compatible(x, ci)]
            if len(new) != len(lst):
                saved_lists[f] = lst
                open_facets[f] = new
        for f in combinations(cand[ci], d - 1):
            own = owners.setdefault(f, [])
            own.append(ci)
            if f in open_facets:
                removed_open[f] = open_facets.pop(f)
            elif len(own) == 1 and not on_boundary(f):
                lst = [
                    x for x in cells.by_facet.get(f, ())
                    if x != ci and all(cells.compatible(x, p) for p in placed)
                ]
                open_facets[f] = lst
                added_open.append(f)
        ok = all(open_facets.values()) if open_facets else True
        return (ci, saved_lists, removed_open, added_open), ok

    def undo(token):
        ci, saved_lists, removed_open, added_open = token
        for f in added_open:
            del open_facets[f]
        for f, lst in removed_open.items():
            open_facets[f] = lst
        for f, lst in saved_lists.items():
            open_facets[f] = lst
        for f in combinations(cand[ci], d - 1):
            owners[f].pop()
            if not owners[f]:
                del owners[f]
        placed.pop()

    def record():
        key = frozenset(placed)
        if key in results:
            return
        vol = sum(
            (simplicial_volume([points[i] for i in cand[x]], psi) for x in placed),
            Fraction(0),
        )
        if vol != target:
            raise InvariantError("closed cell complex does not cover the cone")
        results[key] = fan_from_cells([[points[i] for i in cand[x]] for x in placed], d)

    def dfs():
        nonlocal nodes
        if out_of_budget():
            return
        if not open_facets:
            record()
            return
        f = min(open_facets, key=lambda g: (len(open_facets[g]), g))
        for ci in list(open_facets[f]):
            if out_of_budget():
                return
            nodes += 1
            token, ok = place(ci)
            if ok:
                dfs()
            undo(token)

    seeds = _seed_cells(c, points, cand, on_boundary, d)
    for ci in seeds:
        if out_of_budget():
            break
        nodes += 1
        token, ok = place(ci)
        if ok:
            dfs()
        undo(token)

    fans = [results[k].canonical() for k in sorted(results, key=lambda k: sorted(k))]
    fans.sort(key=lambda f: (f.rays, f.cones))
    return SearchOutcome(fans, not exhausted, nodes, budget)


def _seed_cells(c, points, cand, on_boundary, d) -> list[int]:
    """Cells one of which must appear in every triangulation.

    Prefer a facet of `c` that is itself a simplex without further points:
    it must be a facet of exactly one cell.  Otherwise fall back to all cells
    containing a fixed interior point (results are deduplicated).
    """
    index = {p: i for i, p in enumerate(points)}
    _, ineqs = c.hrep
    for m in ineqs:
        on = [p for p in points if dot(m, p) == 0]
        if len(on) == d - 1 and all(p in index for p in on):
            f = tuple(sorted(index[p] for p in on))
            return [i for i, cell in enumerate(cand) if set(f) <= set(cell)]
    x = [0] * d
    for k, r in enumerate(c.rays):
        for i in range(d):
            x[i] += (k + 2) * r[i]
    out = []
    for i, cell in enumerate(cand):
        if contains(make_cone([points[j] for j in cell], d), x):
            out.append(i)
    return out


def _unimodular(vecs, det) -> bool:
    return abs(det) == 1


def enumerate_hilbert_basis_resolutions(c: Cone, budget: Budget | None = None) -> SearchOutcome:
    """All smooth subdivisions of `c` whose ray set is exactly its Hilbert basis.

    Candidate cells are unimodular simplices on Hilbert basis points; such a
    cell contains no other Hilbert basis element, so every complete
    triangulation found uses the whole basis.
    """
    _require_searchable(c)
    budget = budget or Budget()
    hb = hilbert_basis(c)
    out = _enumerate(c, hb.elements, _unimodular, budget)
    want = hb.as_set()
    for f in out.fans:
        if gen_set(f) != want or not is_smooth_fan(f):
            raise InvariantError("search produced a fan that is not a Hilbert basis resolution")
    return out


def is_moderate(f: Fan, c: Cone) -> bool:
    """Every full-dimensional cell is smooth and its height hyperplane meets every ray of `c`."""
    if not c.is_full_dimensional:
        raise ConeError("moderateness needs a full-dimensional cone")
    if not is_subdivision_of(f, c):
        raise ConeError("fan is not a subdivision of the cone")
    for cell in f.cells():
        if not cell.is_full_dimensional:
            continue
        if not cell.is_simplicial or multiplicity(cell) != 1:
            return False
        ell = solve_rational(cell.rays, [1] * c.rank)
        if any(dot(ell, v) <= 0 for v in c.rays):
            return False
    return True


def _moderate_cell(c: Cone):
    def ok(vecs, det):
        if abs(det) != 1:
            return False
        ell = solve_rational(vecs, [1] * len(vecs))
        return all(dot(ell, v) > 0 for v in c.rays)

    return ok


def find_moderate_resolutions(c: Cone, budget: Budget | None = None) -> SearchOutcome:
    """All moderate toric resolutions of `c`.

    Moderate resolutions are Hilbert basis resolutions, and moderateness is a
    condition on each cell, so the Hilbert basis search is run with the cell
    condition applied up front.  The resulting set equals filtering the full
    Hilbert basis resolution list.
    """
    _require_searchable(c)
    budget = budget or Budget()
    hb = hilbert_basis(c)
    out = _enumerate(c, hb.elements, _moderate_cell(c), budget)
    for f in out.fans:
        if gen_set(f) != hb.as_set() or not is_moderate(f, c):
            raise InvariantError("search produced a non-moderate fan")
    return out


def _compact_faces(c: Cone) -> list[list[Vector]]:
    """Lattice points on each compact facet of conv(c ∩ N \\ {0})."""
    d = c.rank
    hb = hilbert_basis(c).elements
    gens = [h + (1,) for h in hb] + [r + (0,) for r in c.rays]
    _, ineqs = hrep(gens, d + 1)
    faces = []
    for m in ineqs:
        normal, offset = m[:d], -m[d]
        if offset <= 0:
            continue
        pts = sorted(h for h in hb if dot(normal, h) == offset)
        faces.append(pts)
    return sorted(faces)


def canonical_subdivision(c: Cone) -> Fan:
    """Fan over the compact faces of conv(c ∩ N \\ {0})."""
    _require_searchable(c)
    cells = [make_cone(pts, c.rank).rays for pts in _compact_faces(c)]
    return fan_from_cells(cells, c.rank)


def _empty_cell(points: Sequence[Vector]):
    def ok(vecs, det):
        cell = make_cone(vecs, len(vecs))
        return not any(p not in vecs and contains(cell, p) for p in points)

    return ok


def minimal_terminal_models_3d(c: Cone, budget: Budget | None = None) -> list[Fan]:
    """Simplicial terminal subdivisions of the canonical subdivision in rank 3.

    Each compact face is triangulated in every way that uses all of its
    lattice points (so each cell is an empty triangle); the models are the
    products of these choices across faces.
    """
    if c.rank != 3:
        raise ConeError("minimal terminal models are computed in rank 3 only")
    _require_searchable(c)
    budget = budget or Budget()
    per_face = []
    for pts in _compact_faces(c):
        face_cone = make_cone(pts, 3)
        out = _enumerate(face_cone, pts, _empty_cell(pts), budget)
        if not out.complete:
            raise RuntimeError("budget exhausted while triangulating a compact face")
        per_face.append([[list(fc.rays[j] for j in cone) for cone in fc.cones] for fc in out.fans])
    models = []
    for choice in product(*per_face):
        cells = [cell for tri in choice for cell in tri]
        models.append(fan_from_cells(cells, 3))
    models.sort(key=lambda f: (f.rays, f.cones))
    return models


__all__ = [
    "Budget",
    "InvariantError",
    "SearchOutcome",
    "canonical_subdivision",
    "enumerate_hilbert_basis_resolutions",
    "find_moderate_resolutions",
    "is_moderate",
    "minimal_terminal_models_3d",
    "resolve",
]
