"""Slow, independent reference computations used to derive expected values.

Nothing here reuses the package's elimination or search code: determinants
come from the permutation expansion, linear solves from sympy, and
triangulations from exhaustive subset enumeration.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations, product

import sympy

from toricres.cone import ConeError, make_cone, meet_properly, placing_triangulation


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def coefficients(rays, v):
    """Exact coefficients of v in the linearly independent rays, or None."""
    a = sympy.Matrix(rays).T
    try:
        sol, params = a.gauss_jordan_solve(sympy.Matrix(v))
    except ValueError:
        return None
    if params.shape[0]:
        return None
    return [Fraction(int(x.p), int(x.q)) for x in sol]


def in_cone(rays, v):
    """Membership by Caratheodory: v lies in a cone over independent rays."""
    if not any(v):
        return True
    for k in range(1, len(v) + 1):
        for sub in combinations(rays, k):
            if sympy.Matrix(sub).rank() != k:
                continue
            lam = coefficients(list(sub), v)
            if lam is not None and all(x >= 0 for x in lam):
                return True
    return False


def parallelepiped(rays):
    """Lattice points with all coefficients in [0, 1) for independent full-rank rays."""
    d = len(rays)
    lo = [sum(min(0, r[i]) for r in rays) for i in range(d)]
    hi = [sum(max(0, r[i]) for r in rays) for i in range(d)]
    inv = sympy.Matrix(rays).T.inv()
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        lam = inv * sympy.Matrix(x)
        if all(0 <= c < 1 for c in lam):
            out.append(tuple(x))
    return sorted(out)


def simplicial_flags(rays):
    """(canonical, terminal) of a full-dimensional simplicial cone via its parallelepiped.

    A nonzero lattice point below the generator hyperplane has all
    coefficients below 1, so it is a parallelepiped point.
    """
    inv = sympy.Matrix(rays).T.inv()
    sums = [sum(inv * sympy.Matrix(p)) for p in parallelepiped(rays) if any(p)]
    return all(s >= 1 for s in sums), all(s > 1 for s in sums)


def _vol(rays, psi):
    den = 1
    for r in rays:
        den *= sum(a * b for a, b in zip(psi, r))
    return Fraction(abs(leibniz_det(rays)), den)


def triangulations(cone_rays, points, keep_cell):
    """All sets of full-dimensional simplices on `points` that triangulate the cone.

    Exhaustive over subsets: a set is accepted when its cells pairwise meet
    in common faces and their volumes (cut off by a positive functional) add
    up to the volume of the cone.
    """
    d = len(cone_rays[0])
    c = make_cone(cone_rays, d)
    psi = c.interior_functional()
    target = sum(
        (_vol([c.rays[i] for i in cell], psi) for cell in placing_triangulation(c)), Fraction(0)
    )
    cells = []
    for sub in combinations(sorted(points), d):
        if leibniz_det(sub) != 0 and keep_cell(sub):
            cells.append((sub, _vol(sub, psi), make_cone(sub, d)))
    found = set()

    def extend(start, chosen, vol):
        if vol == target:
            found.add(frozenset(frozenset(cells[i][0]) for i in chosen))
            return
        for i in range(start, len(cells)):
            if vol + cells[i][1] > target:
                continue
            if all(meet_properly(cells[i][2], cells[j][2]) for j in chosen):
                extend(i + 1, chosen + [i], vol + cells[i][1])

    extend(0, [], Fraction(0))
    return found


def random_pointed_cone(rng: random.Random, d: int, bound: int, max_rays: int, nonneg=False):
    lo = 0 if nonneg else -bound
    while True:
        k = rng.randint(d, max_rays)
        gens = [tuple(rng.randint(lo, bound) for _ in range(d)) for _ in range(k)]
        if any(not any(g) for g in gens):
            continue
        try:
            c = make_cone(gens, d)
        except ConeError:
            continue
        if c.is_full_dimensional:
            return c


def random_simplicial_cone(rng: random.Random, d: int, bound: int):
    while True:
        gens = [tuple(rng.randint(-bound, bound) for _ in range(d)) for _ in range(d)]
        if leibniz_det(gens) != 0:
            return make_cone(gens, d)
