import random

import pytest

from oracles import leibniz_det, random_pointed_cone, triangulations
from toricres.cone import ConeError, make_cone
from toricres.families import known_resolution_1_3
from toricres.fan import gen_set, is_crepant, is_smooth_fan, is_subdivision_of, refines, trivial_fan, validate_fan
from toricres.hilbert import hilbert_basis
from toricres.search import (
    Budget,
    canonical_subdivision,
    enumerate_hilbert_basis_resolutions,
    find_moderate_resolutions,
    is_moderate,
    minimal_terminal_models_3d,
    resolve,
)
from toricres.fan import fan_from_cells, make_fan
from toricres.singularity import classify

E3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
C113 = [(1, 0, 0), (0, 1, 0), (1, 1, 3)]
SQUARE = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
TRIANGLE2 = [(0, 0, 1), (2, 0, 1), (0, 2, 1)]
A13 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 2, 3)]
A37 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 3, 4, 7)]


def fan_set(fans):
    return {f.key() for f in fans}


def oracle_hbr(c):
    hb = list(hilbert_basis(c).elements)
    return triangulations(list(c.rays), hb, lambda cell: abs(leibniz_det(cell)) == 1)


def test_resolve_examples():
    assert resolve(make_cone(E3)).same_as(trivial_fan(make_cone(E3)))
    f = resolve(make_cone([(1, 0), (1, 2)]))
    assert set(f.rays) == {(1, 0), (1, 1), (1, 2)}
    c = make_cone(A13)
    g = resolve(c)
    assert is_smooth_fan(g) and is_subdivision_of(g, c) and validate_fan(g)
    assert gen_set(g) == hilbert_basis(c).as_set()


def test_resolve_random_cones():
    rng = random.Random(31)
    for _ in range(12):
        c = random_pointed_cone(rng, rng.randint(2, 3), 3, 4)
        f = resolve(c)
        assert is_smooth_fan(f) and is_subdivision_of(f, c)


def test_hbr_examples():
    out = enumerate_hilbert_basis_resolutions(make_cone([(1, 0), (1, 2)]))
    assert out.complete and len(out.fans) == 1
    assert set(out.fans[0].rays) == {(1, 0), (1, 1), (1, 2)}
    out = enumerate_hilbert_basis_resolutions(make_cone(A37))
    assert out.complete and out.fans == [] and out.proves_nonexistence
    out = enumerate_hilbert_basis_resolutions(make_cone(A13))
    assert out.complete and any(f.same_as(known_resolution_1_3()) for f in out.fans)


@pytest.mark.parametrize("gens", [SQUARE, TRIANGLE2, C113, [(1, 0), (1, 5)], [(1, 0, 0), (0, 1, 0), (1, 2, 5)]])
def test_hbr_matches_exhaustive_oracle(gens):
    c = make_cone(gens)
    out = enumerate_hilbert_basis_resolutions(c)
    assert out.complete
    assert fan_set(out.fans) == oracle_hbr(c)


def test_hbr_matches_oracle_on_random_cones():
    rng = random.Random(41)
    for _ in range(6):
        c = random_pointed_cone(rng, 3, 2, 4, nonneg=True)
        out = enumerate_hilbert_basis_resolutions(c)
        assert fan_set(out.fans) == oracle_hbr(c)


def test_hbr_fans_are_canonical_and_sorted():
    out = enumerate_hilbert_basis_resolutions(make_cone(TRIANGLE2))
    assert len(out.fans) == 4
    assert all(f.canonical() == f for f in out.fans)
    keys = [(f.rays, f.cones) for f in out.fans]
    assert keys == sorted(keys)


def test_budget_exhaustion_is_not_a_certificate():
    out = enumerate_hilbert_basis_resolutions(make_cone(A13), Budget(max_nodes=2))
    assert not out.complete and not out.proves_nonexistence
    with pytest.raises(ValueError):
        Budget(max_nodes=0)


def test_search_rank_cap_and_dimension():
    with pytest.raises(ConeError):
        enumerate_hilbert_basis_resolutions(make_cone([tuple(int(i == j) for j in range(5)) for i in range(5)]))
    with pytest.raises(ConeError):
        enumerate_hilbert_basis_resolutions(make_cone([(1, 0, 0), (0, 1, 0)]))


def test_is_moderate_examples():
    assert is_moderate(trivial_fan(make_cone(E3)), make_cone(E3))
    sq = make_cone(SQUARE)
    assert is_moderate(make_fan(SQUARE, [[0, 1, 3], [0, 2, 3]]), sq)
    assert is_moderate(make_fan(SQUARE, [[0, 1, 2], [1, 2, 3]]), sq)
    c = make_cone(C113)
    res = fan_from_cells(
        [
            [(1, 0, 0), (0, 1, 0), (1, 1, 1)],
            [(1, 0, 0), (1, 1, 1), (1, 1, 2)],
            [(0, 1, 0), (1, 1, 1), (1, 1, 2)],
            [(1, 0, 0), (1, 1, 2), (1, 1, 3)],
            [(0, 1, 0), (1, 1, 2), (1, 1, 3)],
        ],
        3,
    )
    assert not is_moderate(res, c)
    with pytest.raises(ConeError):
        is_moderate(trivial_fan(make_cone(E3)), c)


def test_find_moderate_examples():
    out = find_moderate_resolutions(make_cone(C113))
    assert out.complete and out.fans == []
    out = find_moderate_resolutions(make_cone(SQUARE))
    assert out.complete and len(out.fans) == 2
    out = find_moderate_resolutions(make_cone(E3))
    assert out.complete and [f.key() for f in out.fans] == [trivial_fan(make_cone(E3)).key()]


def test_moderate_search_equals_filtered_hbr():
    rng = random.Random(43)
    cones = [make_cone(g) for g in (SQUARE, TRIANGLE2, C113)]
    cones += [random_pointed_cone(rng, 3, 2, 4, nonneg=True) for _ in range(5)]
    for c in cones:
        everything = enumerate_hilbert_basis_resolutions(c)
        filtered = [f for f in everything.fans if is_moderate(f, c)]
        assert fan_set(find_moderate_resolutions(c).fans) == fan_set(filtered)


def test_canonical_subdivision_examples():
    for gens in (C113, SQUARE, E3):
        c = make_cone(gens)
        assert canonical_subdivision(c).same_as(trivial_fan(c))
    # the lattice point (1,1) lies inside the single bounded edge, so nothing is split
    a1 = make_cone([(1, 0), (1, 2)])
    assert canonical_subdivision(a1).same_as(trivial_fan(a1))
    # (1,1) lies strictly below the segment from (1,0) to (2,3)
    c = make_cone([(1, 0), (2, 3)])
    f = canonical_subdivision(c)
    assert f.key() == make_fan([(1, 0), (1, 1), (2, 3)], [[0, 1], [1, 2]]).key()


def test_minimal_models_examples():
    assert [f.key() for f in minimal_terminal_models_3d(make_cone(E3))] == [trivial_fan(make_cone(E3)).key()]
    sq = minimal_terminal_models_3d(make_cone(SQUARE))
    assert len(sq) == 2
    assert fan_set(sq) == oracle_hbr(make_cone(SQUARE))
    c = make_cone(C113)
    assert [f.key() for f in minimal_terminal_models_3d(c)] == [trivial_fan(c).key()]
    tri = minimal_terminal_models_3d(make_cone(TRIANGLE2))
    assert len(tri) == 4
    with pytest.raises(ConeError):
        minimal_terminal_models_3d(make_cone([(1, 0), (1, 2)]))


def test_minimal_models_are_terminal_subdivisions():
    for gens in (SQUARE, TRIANGLE2, C113, [(1, 0, 0), (0, 1, 0), (2, 3, 5)]):
        c = make_cone(gens)
        sigma_c = canonical_subdivision(c)
        for f in minimal_terminal_models_3d(c):
            assert is_subdivision_of(f, c) and refines(f, sigma_c)
            assert all(x.is_simplicial and classify(x).terminal for x in f.cells())


def test_rank_three_structure_results():
    """Hilbert basis resolutions dominate a minimal model; moderate ones are minimal models and crepant."""
    rng = random.Random(47)
    cones = [make_cone(g) for g in (SQUARE, TRIANGLE2, C113, [(1, 0, 0), (0, 1, 0), (2, 3, 5)])]
    cones += [random_pointed_cone(rng, 3, 2, 4, nonneg=True) for _ in range(4)]
    for c in cones:
        models = minimal_terminal_models_3d(c)
        hbr = enumerate_hilbert_basis_resolutions(c)
        assert hbr.complete
        for f in hbr.fans:
            assert any(refines(f, m) for m in models)
        moderate = find_moderate_resolutions(c)
        model_keys = fan_set(models)
        canonical = classify(c).canonical
        for f in moderate.fans:
            assert gen_set(f) == hilbert_basis(c).as_set()
            assert f.key() in model_keys
            if canonical:
                assert is_crepant(f, c)
