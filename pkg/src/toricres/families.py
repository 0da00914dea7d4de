"""Parametric cone families and exact certificates about their resolutions.

Three families are provided:

* ``basis-plus-vector``: Cone(e_1, ..., e_{d-1}, (a_1, ..., a_d)) with
  a_1 <= ... <= a_{d-1} < a_d, 1 <= a_1 <= d - 2 and gcd(a) = 1;
* ``terminal-3d``: Cone(e_1, e_2, (1, p, q)) with 0 <= p < q, gcd(p, q) = 1;
* ``gorenstein-4d``: Cone(e_1, e_2, e_3, (1, a, r - a, r)) with gcd(a, r) = 1
  and 1 <= a <= r - a < r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .cone import Cone, contains, height_functional, make_cone, meet_properly, parallelepiped_points
from .fan import Fan, make_fan
from .hilbert import hilbert_basis
from .lattice import Covector, Vector, determinant, dot


class FamilyError(ValueError):
    """Parameters outside a family; `constraint` names the violated condition."""

    def __init__(self, constraint: str, message: str):
        super().__init__(f"{constraint}: {message}")
        self.constraint = constraint


class CertificateError(AssertionError):
    """A recomputed step of a certificate did not come out as expected."""


BASIS_PLUS_VECTOR = "basis-plus-vector"
TERMINAL_3D = "terminal-3d"
GORENSTEIN_4D = "gorenstein-4d"


def _ceil_div(x: int, y: int) -> int:
    return -(-x // y)


def _unit(i: int, d: int) -> Vector:
    return tuple(int(j == i) for j in range(d))


@dataclass(frozen=True)
class FamilyParams:
    variant: str
    values: tuple[int, ...]

    @property
    def apex(self) -> Vector:
        """The generator that is not a standard basis vector."""
        if self.variant == BASIS_PLUS_VECTOR:
            return self.values
        if self.variant == TERMINAL_3D:
            p, q = self.values
            return (1, p, q)
        a, r = self.values
        return (1, a, r - a, r)

    @property
    def rank(self) -> int:
        return len(self.apex)

    @property
    def cone(self) -> Cone:
        return family_cone(self)


def basis_plus_vector(a: Sequence[int]) -> FamilyParams:
    a = tuple(int(x) for x in a)
    d = len(a)
    if d < 3:
        raise FamilyError("range", "rank must be at least 3")
    if any(a[i] > a[i + 1] for i in range(d - 2)) or not a[d - 2] < a[d - 1]:
        raise FamilyError("ordering", f"need a_1 <= ... <= a_(d-1) < a_d, got {list(a)}")
    if not 1 <= a[0] <= d - 2:
        raise FamilyError("range", f"need 1 <= a_1 <= {d - 2}, got a_1 = {a[0]}")
    g = 0
    for x in a:
        g = gcd(g, x)
    if g != 1:
        raise FamilyError("gcd", f"entries of {list(a)} share the factor {g}")
    return FamilyParams(BASIS_PLUS_VECTOR, a)


def terminal_3d(p: int, q: int) -> FamilyParams:
    if not 0 <= p < q:
        raise FamilyError("range", f"need 0 <= p < q, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise FamilyError("gcd", f"gcd({p}, {q}) != 1")
    return FamilyParams(TERMINAL_3D, (p, q))


def gorenstein_4d(a: int, r: int) -> FamilyParams:
    if gcd(a, r) != 1:
        raise FamilyError("gcd", f"gcd({a}, {r}) != 1")
    if not 1 <= a <= r - a < r:
        raise FamilyError("range", f"need 1 <= a <= r - a < r, got a={a}, r={r}")
    return FamilyParams(GORENSTEIN_4D, (a, r))


def family_cone(params: FamilyParams) -> Cone:
    d = params.rank
    return make_cone([_unit(i, d) for i in range(d - 1)] + [params.apex], d)


def closed_form_points(params: FamilyParams) -> list[Vector]:
    """Nonzero parallelepiped points p_l = (ceil(a_1 l / a_d), ..., ceil(a_{d-1} l / a_d), l)."""
    w = params.apex
    top = w[-1]
    return [tuple(_ceil_div(x * l, top) for x in w[:-1]) + (l,) for l in range(1, top)]


@dataclass(frozen=True)
class ObstructionReport:
    forced_cell: Cone
    hyperplane: Covector
    missed_ray: Vector
    value: Fraction
    completion_dets: tuple[int, ...]

    @property
    def obstructed(self) -> bool:
        return self.value <= 0

    def as_dict(self) -> dict:
        return {
            "forced_cell": [list(r) for r in self.forced_cell.rays],
            "hyperplane": [str(x) for x in self.hyperplane],
            "missed_ray": list(self.missed_ray),
            "value": str(self.value),
            "completion_dets": list(self.completion_dets),
            "obstructed": self.obstructed,
        }


def hyperplane_obstruction(params: FamilyParams) -> ObstructionReport:
    """Why no moderate resolution of a basis-plus-vector cone exists.

    The smooth facet spanned by e_1..e_{d-1} must be completed by a unimodular
    cell using one parallelepiped point; det(e_1, ..., e_{d-1}, p_l) = l leaves
    only p_1 = (1, ..., 1).  The height hyperplane of that cell then has
    nonpositive value on the apex generator, so it never meets that ray.
    """
    w = params.apex
    checked = basis_plus_vector(w)
    d = checked.rank
    units = [_unit(i, d) for i in range(d - 1)]
    points = closed_form_points(checked)
    if set(points) != {p for p in parallelepiped_points(family_cone(checked)) if any(p)}:
        raise CertificateError("closed-form points differ from the parallelepiped points")
    dets = tuple(determinant(units + [p]) for p in points)
    if dets != tuple(range(1, w[-1])):
        raise CertificateError(f"completion determinants {dets} are not 1..{w[-1] - 1}")
    unimodular = [p for p, det in zip(points, dets) if abs(det) == 1]
    if unimodular != [(1,) * d]:
        raise CertificateError("the unimodular completion is not the all-ones point")
    cell = make_cone(units + unimodular, d)
    ell = height_functional(cell)
    expected = (1,) * (d - 1) + (-(d - 2),)
    if tuple(ell) != expected:
        raise CertificateError(f"height functional {ell} differs from {expected}")
    return ObstructionReport(cell, ell, w, Fraction(dot(ell, w)), dets)


def _family_point(a: int, r: int, l: int) -> Vector:
    return (_ceil_div(l, r), _ceil_div(a * l, r), _ceil_div((r - a) * l, r), l)


def det_identity_table(a: int, r: int, l: int, l2: int) -> list[tuple[str, int, tuple[int, ...]]]:
    """The six determinant identities for the gorenstein-4d family.

    Each row is (name, direct determinant, closed-form values); the fourth
    identity has two closed forms.
    """
    if gcd(a, r) != 1 or not 1 <= a < r:
        raise FamilyError("gcd" if gcd(a, r) != 1 else "range", f"invalid (a, r) = ({a}, {r})")
    if not (1 <= l <= r - 1 and 1 <= l2 <= r - 1):
        raise FamilyError("range", f"need 1 <= l, l' <= {r - 1}")
    e1, e2, e3, _ = (_unit(i, 4) for i in range(4))
    e4 = (1, a, r - a, r)
    p, p2 = _family_point(a, r, l), _family_point(a, r, l2)
    c = lambda x: _ceil_div(x, r)  # noqa: E731
    return [
        ("det(e1,e2,e3,p_l)", determinant([e1, e2, e3, p]), (l,)),
        ("det(p_l,e2,e3,p_l')", determinant([p, e2, e3, p2]), (l2 - l,)),
        ("det(p_l,e2,e3,e4)", determinant([p, e2, e3, e4]), (r - l,)),
        (
            "det(e1,p_l,e3,e4)",
            determinant([e1, p, e3, e4]),
            (r * c(a * l) - a * l, r + (r - a) * l - r * c((r - a) * l)),
        ),
        (
            "det(e1,p_l,p_l',e4)",
            determinant([e1, p, p2, e4]),
            (r * (c((r - a) * l2) - c((r - a) * l)) - (r - a) * (l2 - l),),
        ),
        ("det(e1,e2,p_l,e4)", determinant([e1, e2, p, e4]), (r * c((r - a) * l) - (r - a) * l,)),
    ]


def det_identities_hold(a: int, r: int, l: int, l2: int) -> bool:
    """True iff every identity's direct determinant equals all of its closed forms."""
    return all(all(v == direct for v in forms) for _, direct, forms in det_identity_table(a, r, l, l2))


@dataclass(frozen=True)
class ChainCertificate:
    a: int
    r: int
    b: int
    l: tuple[int, ...]
    first_chain: tuple[tuple[Vector, ...], ...]
    second_chain: tuple[tuple[Vector, ...], ...]
    first_edge: tuple[Vector, Vector]
    second_edge: tuple[Vector, Vector]
    clash_ray: Vector
    generator_sum: Vector
    edges_meet_properly: bool

    @property
    def holds(self) -> bool:
        return (
            self.clash_ray == self.generator_sum
            and set(self.first_edge) != set(self.second_edge)
            and not self.edges_meet_properly
        )

    def as_dict(self) -> dict:
        cells = lambda chain: [[list(v) for v in cell] for cell in chain]  # noqa: E731
        return {
            "a": self.a,
            "r": self.r,
            "b": self.b,
            "l": list(self.l),
            "first_chain": cells(self.first_chain),
            "second_chain": cells(self.second_chain),
            "first_edge": [list(v) for v in self.first_edge],
            "second_edge": [list(v) for v in self.second_edge],
            "clash_ray": list(self.clash_ray),
            "generator_sum": list(self.generator_sum),
            "edges_meet_properly": self.edges_meet_properly,
            "holds": self.holds,
        }


def _forced_step(
    sigma: Cone, wall: list[Vector], slot: int, candidates: list[Vector], on_boundary: bool = False
) -> Vector:
    """The unique candidate x making det(wall with x inserted at `slot`) == 1.

    A starting wall is a facet of `sigma`; any other wall must be interior, so
    some cell lies beyond it.  Orientation is fixed by the caller so that +1
    is the far side (or the side of `sigma` for a starting facet).
    """
    _, ineqs = sigma.hrep
    if any(all(dot(m, v) == 0 for v in wall) for m in ineqs) != on_boundary:
        raise CertificateError(f"wall {wall} is not {'on' if on_boundary else 'off'} the boundary")
    hits = []
    for x in candidates:
        if x in wall:
            continue
        if determinant(wall[:slot] + [x] + wall[slot:]) == 1:
            hits.append(x)
    if len(hits) != 1:
        raise CertificateError(f"wall {wall} has {len(hits)} unimodular extensions")
    return hits[0]


def forced_chain(a: int, r: int) -> ChainCertificate:
    """Recompute the two forced chains of unimodular cells for the gorenstein-4d cone.

    Starting from the smooth facets Cone(e1, e2, e4) and Cone(e1, e2, e3), every
    cell of a Hilbert basis resolution is forced: each interior wall has a
    single unimodular extension among the Hilbert basis elements.  The chains
    contain the two-dimensional cones Cone(p_{l_m}, p_{l_{m+1}}) and
    Cone(p_m, p_{m+1}) with m = (r - 1) / 2, which cross at a common interior ray;
    so the forced cells cannot belong to one fan.
    """
    if gcd(a, r) != 1:
        raise FamilyError("gcd", f"gcd({a}, {r}) != 1")
    if not 1 < a < r - a < r:
        raise FamilyError("range", f"need 1 < a < r - a < r, got a={a}, r={r}")
    if r % 2 == 0:
        raise FamilyError("parity", f"r = {r} must be odd")
    params = gorenstein_4d(a, r)
    sigma = family_cone(params)
    e1, e2, e3 = (_unit(i, 4) for i in range(3))
    e4 = params.apex
    pts = {l: _family_point(a, r, l) for l in range(1, r)}
    hb = set(hilbert_basis(sigma).elements)
    if hb != {e1, e2, e3, e4} | set(pts.values()):
        raise CertificateError("Hilbert basis differs from generators plus parallelepiped points")
    cands = sorted(hb)
    index = {v: l for l, v in pts.items()}

    b = pow(a, -1, r)
    ls = tuple(b * i % r for i in range(1, r))
    for i, li in enumerate(ls, start=1):
        if r * _ceil_div((r - a) * li, r) - (r - a) * li != i:
            raise CertificateError(f"l_{i} = {li} does not give determinant {i}")

    # chain through the edge Cone(e1, e4): walls (e1, p, e4), new vertex in slot 2
    first = []
    x = _forced_step(sigma, [e1, e2, e4], 2, cands, on_boundary=True)
    first.append((e1, e2, x, e4))
    visited = []
    while x != e3:
        if x not in index:
            raise CertificateError(f"unexpected vertex {x} in the first chain")
        visited.append(index[x])
        nxt = _forced_step(sigma, [e1, x, e4], 2, cands)
        first.append((e1, x, nxt, e4))
        x = nxt
    if tuple(visited) != ls:
        raise CertificateError(f"first chain visits {visited}, expected {list(ls)}")

    # chain through the edge Cone(e2, e3): walls (p, e2, e3), new vertex in slot 3
    second = []
    x = _forced_step(sigma, [e1, e2, e3], 3, cands, on_boundary=True)
    second.append((e1, e2, e3, x))
    visited = []
    while x != e4:
        if x not in index:
            raise CertificateError(f"unexpected vertex {x} in the second chain")
        visited.append(index[x])
        nxt = _forced_step(sigma, [x, e2, e3], 3, cands)
        second.append((x, e2, e3, nxt))
        x = nxt
    if visited != list(range(1, r)):
        raise CertificateError(f"second chain visits {visited}, expected 1..{r - 1}")

    m = (r - 1) // 2
    first_edge = (pts[ls[m - 1]], pts[ls[m]])
    second_edge = (pts[m], pts[m + 1])
    clash = tuple(x + y for x, y in zip(*first_edge))
    if clash != tuple(x + y for x, y in zip(*second_edge)):
        raise CertificateError("the two edges do not share their generator sum")
    total = tuple(sum(v) for v in zip(e1, e2, e3, e4))
    if clash != (2, a + 1, r - a + 1, r):
        raise CertificateError(f"clash ray {clash} differs from (2, a+1, r-a+1, r)")
    edge_a, edge_b = make_cone(first_edge, 4), make_cone(second_edge, 4)
    if not (contains(edge_a, clash) and contains(edge_b, clash)):
        raise CertificateError("clash ray is not in both edges")
    return ChainCertificate(
        a, r, b, ls, tuple(first), tuple(second), first_edge, second_edge,
        clash, total, meet_properly(edge_a, edge_b),
    )


def known_resolution_1_3() -> Fan:
    """An externally computed smooth 8-cell subdivision of Cone(e1, e2, e3, (1, 1, 2, 3))."""
    rays = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 2, 3), (1, 1, 1, 1), (1, 1, 2, 2)]
    cones = [
        [0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 5], [0, 2, 4, 5],
        [0, 3, 4, 5], [1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5],
    ]
    return make_fan(rays, cones, 4)
