import pytest

from golden import P2_FACTORS, R1_TILDE_FACTORS
from quarticdyn.dynamics import (
    MatchError,
    OrbitRecord,
    assemble_orbits,
    exceptional_fixed_points,
    expected_point_count,
    lift_periodic_point,
    match_orbit_to_factor,
    newton_lift_on_factor,
    residue_orbits,
    residue_periodic_points,
    unit_root_count,
)
from quarticdyn.padic import ResidueElement, reduce_mod2
from quarticdyn.resultants import tilde_factor
from quarticdyn.tmap import iterate_Ttilde

N = 64


def test_residue_counts():
    assert len(residue_periodic_points(1)) == 3
    assert len(residue_periodic_points(2)) == 12
    assert len(residue_periodic_points(3)) == 60
    assert [expected_point_count(n) for n in (1, 2, 3, 4)] == [3, 12, 60, 240]
    assert [len(residue_orbits(n)) for n in (1, 2, 3)] == [3, 6, 20]


def test_residue_orbits_are_frobenius_cycles():
    for cycle in residue_orbits(2):
        assert len(cycle) == 2
        r = cycle[0]
        assert cycle[1] == r ** 4
        assert cycle[1] ** 4 == r


def test_exceptional_points():
    assert exceptional_fixed_points() == (0, -1)


def test_unit_root_counts():
    assert [unit_root_count(g) for g in R1_TILDE_FACTORS] == [0, 0, 1, 2]
    tilde = [tilde_factor(g) for g in P2_FACTORS.values()]
    assert sum(unit_root_count(g) for g in tilde) == 12
    assert all(unit_root_count(g) == 4 for g in tilde)


def test_fixed_points_lie_on_tilde_factors():
    factors = R1_TILDE_FACTORS
    for cycle in residue_orbits(1):
        z = lift_periodic_point(cycle[0], 1, N)
        hits = [g for g in factors if g(z).agrees(0, N - 8)]
        assert len(hits) == 1
        assert hits[0] in (factors[2], factors[3])


def test_lift_agrees_with_newton_on_factor():
    g = R1_TILDE_FACTORS[2]   # 2x^2 - x + 1, unit root with residue 1
    r = ResidueElement(2, 1)
    z = lift_periodic_point(r, 1, N)
    w = newton_lift_on_factor(g, r, N)
    assert z.agrees(w, N - 8)


def test_lift_is_stable_under_precision_increase():
    for cycle in residue_orbits(2):
        lo = lift_periodic_point(cycle[0], 2, N)
        hi = lift_periodic_point(cycle[0], 2, N + 16)
        assert hi.change_modulus(N).agrees(lo, min(lo.k, hi.k))


def test_lift_rejects_wrong_field():
    with pytest.raises(ValueError):
        lift_periodic_point(ResidueElement(4, 1), 1, N)


def test_orbits_level_two():
    orbits = assemble_orbits(2, N)
    assert len(orbits) == 6
    assert sum(len(o.lifted_cycle) for o in orbits) == 12
    tilde = [tilde_factor(g) for g in P2_FACTORS.values()]
    counts = [0, 0, 0]
    for orb in orbits:
        assert all(orb.checks.values())
        idx = match_orbit_to_factor(orb, tilde)
        counts[idx] += len(orb.lifted_cycle)
        for z in orb.lifted_cycle:
            assert tilde[idx](z).agrees(0, 48)
        assert iterate_Ttilde(orb.lifted_cycle[0], 2).agrees(orb.lifted_cycle[0], 48)
    assert counts == [4, 4, 4]


def test_orbit_residues_match_lifts():
    for orb in assemble_orbits(1, N):
        assert [reduce_mod2(z) for z in orb.lifted_cycle] == orb.residue_cycle
        assert orb.precision <= N


def test_match_requires_unique_factor():
    orb = assemble_orbits(1, N)[0]
    g = R1_TILDE_FACTORS[2]
    with pytest.raises(MatchError):
        match_orbit_to_factor(orb, [g, g])
    with pytest.raises(MatchError):
        match_orbit_to_factor(orb, [R1_TILDE_FACTORS[0]])
    low = OrbitRecord(1, orb.residue_cycle, [z.with_precision(4) for z in orb.lifted_cycle])
    with pytest.raises(MatchError):
        match_orbit_to_factor(low, R1_TILDE_FACTORS)


def test_unit_root_count_rejects_zero_mod_2():
    from quarticdyn.exactalg.intpoly import IntPoly
    with pytest.raises(ValueError):
        unit_root_count(IntPoly([2, 4]))
