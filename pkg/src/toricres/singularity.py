"""Classification of affine toric singularities from their cones."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import gcd
from typing import Optional

from .cone import Cone, ConeError, contains, gorenstein_functional, multiplicity
from .lattice import Vector, cross, dot, solve_rational, xgcd


@dataclass(frozen=True)
class ClassificationReport:
    smooth: bool
    simplicial: bool
    q_gorenstein_index: Optional[int]
    gorenstein: bool
    terminal: Optional[bool]
    canonical: Optional[bool]
    multiplicity: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "simplicial": self.simplicial,
            "q_gorenstein_index": self.q_gorenstein_index,
            "gorenstein": self.gorenstein,
            "terminal": self.terminal,
            "canonical": self.canonical,
            "multiplicity": self.multiplicity,
        }


def low_points(c: Cone, m) -> list[Vector]:
    """Nonzero lattice points n of `c` with m(n) <= 1.

    When every ray sits at m = 1 this region is conv(0, rays), so the
    coordinate box of the rays (and the origin) bounds it.
    """
    d = c.rank
    lo = [min(0, min(r[i] for r in c.rays)) for i in range(d)]
    hi = [max(0, max(r[i] for r in c.rays)) for i in range(d)]
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if not any(x) or dot(m, x) > 1:
            continue
        if contains(c, x):
            out.append(x)
    return out


def classify(c: Cone) -> ClassificationReport:
    if not c.is_full_dimensional:
        raise ConeError("classification needs a full-dimensional cone")
    simplicial = c.is_simplicial
    mult = multiplicity(c) if simplicial else None
    smooth = simplicial and mult == 1
    g = gorenstein_functional(c)
    if g is None:
        return ClassificationReport(smooth, simplicial, None, False, None, None, mult)
    m, index = g
    pts = low_points(c, m)
    rays = set(c.rays)
    canonical = all(dot(m, x) >= 1 for x in pts)
    terminal = canonical and all(x in rays for x in pts)
    return ClassificationReport(smooth, simplicial, index, index == 1, terminal, canonical, mult)


def _unimodular_completion(u1: Vector, u2: Vector) -> Optional[Vector]:
    """Some u3 with det(u1, u2, u3) == 1, or None if (u1, u2) is not primitive."""
    n = cross([u1, u2], 3)
    g, x, y = xgcd(n[0], n[1])
    g2, s, t = xgcd(g, n[2])
    if g2 != 1:
        return None
    return (s * x, s * y, t)


def terminal_form_3d(c: Cone) -> Optional[tuple[int, int]]:
    """Parameters (p, q) of the normal form Cone(u1, u2, u1 + p u2 + q u3).

    Tries every ordered pair of rays as (u1, u2), completes it to a lattice
    basis and reads off the coefficients of the third ray modulo q.  Among
    all recognitions the one with the smallest p is returned.
    """
    if c.rank != 3 or not c.is_full_dimensional or not c.is_simplicial:
        raise ConeError("terminal_form_3d needs a simplicial full-dimensional rank-3 cone")
    report = classify(c)
    if not report.terminal:
        raise ConeError("cone is not terminal")
    q = multiplicity(c)
    if q == 1:
        return (0, 1)
    best = None
    for i, j in permutations(range(3), 2):
        (k,) = {0, 1, 2} - {i, j}
        u1, u2, w = c.rays[i], c.rays[j], c.rays[k]
        u3 = _unimodular_completion(u1, u2)
        if u3 is None:
            continue
        coeffs = solve_rational([list(col) for col in zip(u1, u2, u3)], w)
        alpha, beta, gamma = (int(x) for x in coeffs)
        if gamma < 0:
            # flip u3 so the last coefficient is +q
            alpha, beta, gamma = alpha, beta, -gamma
        if gamma != q or alpha % q != 1 % q:
            continue
        p = beta % q
        if gcd(p, q) == 1 and (best is None or p < best):
            best = p
    return None if best is None else (best, q)


def recognize_family_4d(c: Cone) -> Optional[tuple[int, int]]:
    """Match Cone(e1, e2, e3, (1, a, r-a, r)) up to a permutation of coordinates."""
    if c.rank != 4 or len(c.rays) != 4:
        return None
    units = [r for r in c.rays if sorted(r) == [0, 0, 0, 1]]
    if len(units) != 3:
        return None
    (w,) = [r for r in c.rays if r not in units]
    (missing,) = set(range(4)) - {r.index(1) for r in units}
    r = w[missing]
    rest = sorted(w[i] for i in range(4) if i != missing)
    if rest[0] != 1 or rest[1] < 1 or rest[1] + rest[2] != r:
        return None
    a = rest[1]
    if not (1 <= a <= r - a < r) or gcd(a, r) != 1:
        return None
    return (a, r)

