"""Randomized properties driven by hypothesis."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from oracles import leibniz_det
from toricres.cone import ConeError, make_cone, multiplicity, parallelepiped_points
from toricres.fan import is_smooth_fan, is_subdivision_of, refines, stellar_subdivide, trivial_fan, validate_fan
from toricres.hilbert import hilbert_basis, hilbert_basis_bruteforce
from toricres.lattice import adjugate, determinant, hermite_form, identity, matmul
from toricres.search import enumerate_hilbert_basis_resolutions, is_moderate, resolve

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])


def vec(d, bound):
    return st.tuples(*[st.integers(-bound, bound)] * d)


def square(d, bound):
    return st.lists(vec(d, bound), min_size=d, max_size=d)


def simplicial(rows):
    assume(determinant(rows) != 0)
    return make_cone(rows)


@SETTINGS
@given(st.integers(1, 4).flatmap(lambda d: square(d, 6)))
def test_determinant_matches_leibniz(m):
    assert determinant(m) == leibniz_det(m)


@SETTINGS
@given(st.integers(1, 4).flatmap(lambda d: square(d, 6)))
def test_adjugate_identity(m):
    d = len(m)
    det = determinant(m)
    assert matmul(adjugate(m), m) == tuple(tuple(det * x for x in row) for row in identity(d))


@SETTINGS
@given(st.integers(1, 4).flatmap(lambda d: st.lists(vec(d, 6), min_size=1, max_size=5)))
def test_hermite_form_is_a_unimodular_change(m):
    h, u = hermite_form(m)
    assert matmul(m, u) == h
    assert abs(determinant(u)) == 1


@SETTINGS
@given(st.integers(2, 4).flatmap(lambda d: square(d, 5)))
def test_parallelepiped_size_is_multiplicity(rows):
    c = simplicial(rows)
    pts = parallelepiped_points(c)
    assert len(pts) == len(set(pts)) == multiplicity(c) == abs(determinant(c.rays))


@SETTINGS
@given(st.integers(2, 3).flatmap(lambda d: st.lists(vec(d, 3), min_size=d, max_size=4)))
def test_hilbert_basis_matches_bruteforce(gens):
    try:
        c = make_cone(gens)
    except ConeError:
        assume(False)
    assume(c.rays)
    assert hilbert_basis(c).as_set() == hilbert_basis_bruteforce(c).as_set()


@SETTINGS
@given(st.integers(2, 3).flatmap(lambda d: square(d, 4)))
def test_resolve_gives_smooth_subdivision(rows):
    c = simplicial(rows)
    f = resolve(c)
    assert validate_fan(f) and is_smooth_fan(f) and is_subdivision_of(f, c)
    assert refines(f, trivial_fan(c))


@SETTINGS
@given(square(3, 3), st.data())
def test_stellar_subdivision_at_basis_points(rows, data):
    c = simplicial(rows)
    ex = hilbert_basis(c).exceptional
    assume(ex)
    v = data.draw(st.sampled_from(ex))
    g = stellar_subdivide(trivial_fan(c), v)
    assert validate_fan(g) and is_subdivision_of(g, c) and v in g.rays


@settings(max_examples=40, deadline=None)
@given(square(2, 6))
def test_surface_resolution_is_unique_and_moderate(rows):
    c = simplicial(rows)
    out = enumerate_hilbert_basis_resolutions(c)
    assert out.complete and len(out.fans) == 1
    assert is_moderate(out.fans[0], c)
