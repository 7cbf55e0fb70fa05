"""Periodic points of Ttilde and their orbits.

A periodic point of minimal period n is a unit whose residue lies in the
field with 4^n elements and has degree exactly n over the 4-element field.
Ttilde reduces to x -> x^4 mod 2 and is 2-adically contracting on each residue
disk, so iterating Ttilde^n from the Teichmuller lift converges to the unique
periodic point in that disk.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactalg.intpoly import IntPoly
from .padic import (
    DEFAULT_PRECISION,
    PrecisionError,
    ResidueElement,
    UnramifiedElement,
    lift_residue,
    newton_root,
    reduce_mod2,
    teichmuller_lift,
)
from .resultants import divisors, primitive_count
from .tmap import eval_f, eval_Ttilde, iterate_Ttilde

DEFAULT_MARGIN = 8

# The two fixed points of the correspondence outside the unit-residue picture:
# 0 lies off the punctured disk and -1 is a unit.  They are the roots of the
# factors x and x + 1 of R_1.
EXCEPTIONAL_FIXED_POINTS = (0, -1)


class ConvergenceError(RuntimeError):
    pass


class MatchError(RuntimeError):
    pass


def exceptional_fixed_points() -> tuple[int, ...]:
    for a in EXCEPTIONAL_FIXED_POINTS:
        if eval_f(a, a) != 0:  # pragma: no cover - fixed data
            raise AssertionError(f"{a} is not a fixed point of the correspondence")
    return EXCEPTIONAL_FIXED_POINTS


@dataclass
class OrbitRecord:
    period: int
    residue_cycle: list[ResidueElement]
    lifted_cycle: list[UnramifiedElement]
    matched_factor: int | None = None
    factor: IntPoly | None = None
    discriminant_label: int | None = None
    checks: dict = field(default_factory=dict)

    @property
    def precision(self) -> int:
        return min(z.k for z in self.lifted_cycle)


def _frob4(r: ResidueElement) -> ResidueElement:
    r2 = r * r
    return r2 * r2


def _is_fixed_by(r: ResidueElement, k: int) -> bool:
    s = r
    for _ in range(k):
        s = _frob4(s)
    return s == r


def residue_periodic_points(n: int) -> list[ResidueElement]:
    """Nonzero residues of exact degree n over F_4, inside the degree-2n field."""
    if n < 1:
        raise ValueError("period must be positive")
    proper = [k for k in divisors(n) if k < n]
    out = []
    for r in ResidueElement.all(2 * n):
        if r.is_zero():
            continue
        if not _is_fixed_by(r, n):
            continue
        if any(_is_fixed_by(r, k) for k in proper):
            continue
        out.append(r)
    assert len(out) == expected_point_count(n)
    return out


def expected_point_count(n: int) -> int:
    """sum_{k|n} mu(n/k) 4^k, minus the zero residue when n = 1."""
    return primitive_count(n) - (1 if n == 1 else 0)


def residue_orbits(n: int) -> list[list[ResidueElement]]:
    """x -> x^4 cycles, each starting at its smallest coordinate vector, sorted."""
    seen = set()
    orbits = []
    for r in residue_periodic_points(n):
        if r in seen:
            continue
        cycle = [r]
        s = _frob4(r)
        while s != r:
            cycle.append(s)
            s = _frob4(s)
        seen.update(cycle)
        start = min(range(len(cycle)), key=lambda i: cycle[i].coords[::-1])
        orbits.append(cycle[start:] + cycle[:start])
    orbits.sort(key=lambda c: c[0].coords[::-1])
    return orbits


def lift_periodic_point(r: ResidueElement, n: int, N: int = DEFAULT_PRECISION) -> UnramifiedElement:
    """The unique z reducing to r with Ttilde^n(z) = z, to precision N."""
    if r.m != 2 * n:
        raise ValueError(f"residue of degree {r.m} does not live in the degree-{2 * n} field")
    z = teichmuller_lift(r, N)
    for _ in range(4 * N):
        nxt = iterate_Ttilde(z, n)
        if nxt.coeffs == z.coeffs:
            return nxt.with_precision(min(nxt.k, z.k))
        z = nxt
    raise ConvergenceError(f"no convergence within {4 * N} iterations for residue {r.coords}")


def newton_lift_on_factor(g: IntPoly, r: ResidueElement, N: int = DEFAULT_PRECISION) -> UnramifiedElement:
    """Cross-check: Hensel-lift the root of g with residue r."""
    return newton_root(g, lift_residue(r, N))


def assemble_orbits(n: int, N: int = DEFAULT_PRECISION) -> list[OrbitRecord]:
    out = []
    for cycle in residue_orbits(n):
        z0 = lift_periodic_point(cycle[0], n, N)
        pts = [z0]
        for _ in range(n - 1):
            pts.append(eval_Ttilde(pts[-1]))
        closing = eval_Ttilde(pts[-1])
        k = min(min(z.k for z in pts), closing.k)
        rec = OrbitRecord(n, cycle, pts)
        rec.checks["closes"] = closing.agrees(z0, k)
        rec.checks["residues_match"] = all(reduce_mod2(z) == r for z, r in zip(pts, cycle))
        rec.checks["minimal"] = all(not _is_fixed_by(cycle[0], d) for d in divisors(n) if d < n)
        rec.checks["units"] = all(z.is_unit() for z in pts)
        if not all(rec.checks.values()):
            raise PrecisionError(f"orbit from residue {cycle[0].coords} failed checks {rec.checks}")
        out.append(rec)
    return out


def factor_vanishes(g: IntPoly, z: UnramifiedElement, bits: int) -> bool:
    value = g(z)
    return value.agrees(0, bits)


def match_orbit_to_factor(orbit: OrbitRecord, factors: list[IntPoly],
                          margin: int = DEFAULT_MARGIN) -> int:
    """Index of the unique factor vanishing on every lifted point of the orbit."""
    bits = orbit.precision - margin
    if bits < 1:
        raise MatchError("not enough precision to match factors")
    hits = [i for i, g in enumerate(factors)
            if all(factor_vanishes(g, z, bits) for z in orbit.lifted_cycle)]
    if len(hits) != 1:
        raise MatchError(f"orbit from {orbit.residue_cycle[0].coords} matched {len(hits)} factors")
    orbit.matched_factor = hits[0]
    orbit.factor = factors[hits[0]]
    return hits[0]


def unit_root_count(g: IntPoly) -> int:
    """Number of unit 2-adic roots of g (with multiplicity, in the algebraic closure).

    By the Newton polygon this is deg(g mod 2) minus the order of x in g mod 2.
    """
    red = g.mod(2)
    if red.is_zero():
        raise ValueError("polynomial vanishes mod 2")
    low = next(i for i, c in enumerate(red.coeffs) if c)
    return red.degree - low
