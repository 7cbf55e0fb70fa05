"""The curve f(x, y) = y^4 (x-1)^4 + 8x(x^2+1) and its 2-adic branch T.

For y in the punctured disk 0 < |y|_2 <= 1/2 the equation f(x, y) = 0 has a
distinguished root T(y) = T2(T1(y)) of the same kind, where

    T1(y) = -8/y^4 + 4 + sum_{m>=1} C_m 2^(1-2m) y^(4m)
    T2(z) = sum_{n>=1} C_{n-1} z^(1-2n)

and C_m are the Catalan numbers.  T1 has negative valuation and is carried as
a ScaledElement.  Ttilde(z) = T(2z)/2 acts on units and reduces to z^4 mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg.bipoly import BiPoly
from .padic import (
    VAL_INFINITY,
    ScaledElement,
    UnramifiedElement,
    catalan,
    invert,
    val2,
)


class TmapDomainError(ValueError):
    pass


# ---------------------------------------------------------------------------
# curve polynomials
# ---------------------------------------------------------------------------

def _f_terms() -> dict[tuple[int, int], int]:
    terms = {(i, 4): c for i, c in enumerate((1, -4, 6, -4, 1))}
    terms[(1, 0)] = 8
    terms[(3, 0)] = 8
    return terms


def _f1_terms() -> dict[tuple[int, int], int]:
    terms = {(i, 4): c for i, c in enumerate((1, -8, 24, -32, 16))}
    terms[(1, 0)] = 1
    terms[(3, 0)] = 4
    return terms


@dataclass(frozen=True)
class CurvePolynomials:
    f: BiPoly
    f1: BiPoly

    @classmethod
    def build(cls, vars=("x", "y")) -> CurvePolynomials:
        return cls(BiPoly.from_dict(_f_terms(), vars), BiPoly.from_dict(_f1_terms(), vars))

    def f_in(self, v0: str, v1: str) -> BiPoly:
        return self.f.with_vars((v0, v1))

    def f1_in(self, v0: str, v1: str) -> BiPoly:
        return self.f1.with_vars((v0, v1))


CURVE = CurvePolynomials.build()


def f_poly(v0: str = "x", v1: str = "y") -> BiPoly:
    return CURVE.f_in(v0, v1)


def f1_poly(v0: str = "x", v1: str = "y") -> BiPoly:
    return CURVE.f1_in(v0, v1)


def eval_f(x, y):
    """y^4 (x-1)^4 + 8x(x^2+1) for any ring elements supporting + - *."""
    xm1 = x - 1
    y2 = y * y
    xm2 = xm1 * xm1
    return (y2 * y2) * (xm2 * xm2) + x * (x * x + 1) * 8


# ---------------------------------------------------------------------------
# series truncation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesTruncation:
    """How many terms of each series are needed at a given target precision.

    Every dropped term is divisible by 2**target, so truncation is exact modulo
    the working modulus.
    """

    target_precision: int
    t1_terms: int
    t2_terms: int

    @classmethod
    def for_valuation(cls, target: int, v: int) -> SeriesTruncation:
        # T1 tail term m inside the unit part carries 2^(4v-2-2m+4mv)
        m = 0
        while 4 * v - 2 + (m + 1) * (4 * v - 2) < target:
            m += 1
        # T2 term n has valuation (2n-1)(4v-3)
        n = 0
        while (2 * (n + 1) - 1) * (4 * v - 3) < target:
            n += 1
        return cls(target, m, n)


# ---------------------------------------------------------------------------
# series branches
# ---------------------------------------------------------------------------

def _split(y: UnramifiedElement) -> tuple[int, UnramifiedElement]:
    v = val2(y)
    if v == VAL_INFINITY:
        raise TmapDomainError("y is zero to working precision; outside the punctured disk")
    if v < 1:
        raise TmapDomainError(f"y must satisfy val2(y) >= 1, got {v}")
    return v, y.div_pow2(v)


def _t1_unit(v: int, w: UnramifiedElement) -> UnramifiedElement:
    """Unit u with T1(2^v w) = 2^(3-4v) u."""
    w4 = w * w
    w4 = w4 * w4
    unit = -invert(w4)
    N = w.N
    # 2^(4v-3) * 4 = 2^(4v-1)
    if 4 * v - 1 < N:
        unit = unit + (1 << (4 * v - 1))
    trunc = SeriesTruncation.for_valuation(N, v)
    power = w4
    for m in range(1, trunc.t1_terms + 1):
        shift = 4 * v - 2 - 2 * m + 4 * m * v
        unit = unit + power * (catalan(m) << shift)
        power = power * w4
    return unit


def eval_T1(y: UnramifiedElement) -> ScaledElement:
    """T1(y) as 2**scale * unit; scale = 3 - 4 val2(y) <= -1."""
    v, w = _split(y)
    return ScaledElement(_t1_unit(v, w), 3 - 4 * v)


def _odd_series(r: UnramifiedElement, terms: int, weight) -> UnramifiedElement:
    """sum_{n=1}^{terms} weight(n) r^(2n-1) by Horner in r^2."""
    if terms <= 0:
        return r._like([0], r.N)
    r2 = r * r
    acc = r._like([weight(terms)], r.N)
    for n in range(terms - 1, 0, -1):
        acc = acc * r2 + weight(n)
    return acc * r


def eval_T2(z: ScaledElement) -> UnramifiedElement:
    """T2(z) = sum C_{n-1} z^(1-2n) for val2(z) <= -1."""
    if z.scale > -1:
        raise TmapDomainError(f"T2 needs val2(z) <= -1, got {z.scale}")
    r = invert(z.unit).mul_pow2(-z.scale)
    s = -z.scale
    N = r.N
    terms = 0
    while (2 * (terms + 1) - 1) * s < N:
        terms += 1
    return _odd_series(r, terms, lambda n: catalan(n - 1))


def eval_T(y: UnramifiedElement) -> UnramifiedElement:
    """T(y) = T2(T1(y)) on the punctured disk; the result lies in it again."""
    return eval_T2(eval_T1(y))


def eval_Ttilde(z: UnramifiedElement) -> UnramifiedElement:
    """T(2z)/2 for a unit z, computed without the intermediate halving.

    With V the inverse of the T1 unit part at y = 2z,
    Ttilde(z) = sum_{n>=1} C_{n-1} 4^(n-1) V^(2n-1).
    """
    if not z.is_unit():
        raise TmapDomainError("Ttilde is evaluated on units only")
    V = invert(_t1_unit(1, z))
    N = z.N
    terms = 0
    while 2 * terms < N:
        terms += 1
    return _odd_series(V, terms, lambda n: catalan(n - 1) << (2 * n - 2))


def iterate_Ttilde(z: UnramifiedElement, n: int) -> UnramifiedElement:
    for _ in range(n):
        z = eval_Ttilde(z)
    return z


def mobius_involution(x):
    """(x+1)/(x-1).  For 2-adic elements x - 1 must be a unit; other values
    (Fraction, prime-field elements) use their own division."""
    if not isinstance(x, UnramifiedElement):
        return (x + 1) / (x - 1)
    den = x - 1
    if not den.is_unit():
        raise TmapDomainError("x - 1 is not invertible to working precision")
    return (x + 1) * invert(den)


def mobius_identity_holds() -> bool:
    """(x-1)^4 (y-1)^4 f((x+1)/(x-1), (y+1)/(y-1)) == 16 f(y, x) as polynomials."""
    f = f_poly()
    lhs = BiPoly((), ("x", "y"))
    xp = BiPoly([[1], [1]], ("x", "y"))
    xm = BiPoly([[-1], [1]], ("x", "y"))
    yp = BiPoly([[1, 1]], ("x", "y"))
    ym = BiPoly([[-1, 1]], ("x", "y"))
    for (i, j), c in f.terms().items():
        lhs = lhs + (xp ** i) * (xm ** (4 - i)) * (yp ** j) * (ym ** (4 - j)) * c
    rhs = f.swap().with_vars(("x", "y")) * 16
    return lhs == rhs


# ---------------------------------------------------------------------------
# property suite
# ---------------------------------------------------------------------------

SUITE_DEGREES = (1, 2, 4, 6)
SUITE_MARGIN = 16


def random_disk_element(rng, m: int, N: int, max_val: int = 3) -> UnramifiedElement:
    """2^v w with 1 <= v <= max_val and w a unit of the degree-m ring."""
    v = rng.randint(1, max_val)
    while True:
        coeffs = [rng.getrandbits(N) for _ in range(m)]
        w = UnramifiedElement(m, N, coeffs)
        if w.is_unit():
            return w.mul_pow2(v).with_precision(N)


def residue_congruence_holds(y: UnramifiedElement, t: UnramifiedElement) -> bool:
    """2^3 T(y) / y^4 = 1 mod 2 for val2(y) = 1."""
    w = y.div_pow2(1)
    w4 = w * w
    w4 = w4 * w4
    q = t.div_pow2(1) * invert(w4)
    return q.agrees(1, 1)


def branch_property_suite(trials: int = 100, N: int = 64, seed: int = 0,
                          degrees=SUITE_DEGREES, margin: int = SUITE_MARGIN) -> dict:
    """Check f(T(y), y) = 0 mod 2^(N - margin), val2(T(y)) >= 1 and the residue
    congruence on valuation-1 inputs, for random y across extension degrees."""
    import random

    rng = random.Random(seed)
    bits = N - margin
    counts = {"curve": 0, "valuation": 0, "congruence": 0, "congruence_trials": 0}
    samples = []
    failures = []
    for t in range(trials):
        m = degrees[t % len(degrees)]
        y = random_disk_element(rng, m, N)
        T = eval_T(y)
        ok_curve = eval_f(T, y).agrees(0, bits) and T.k >= bits
        ok_val = val2(T) >= 1
        counts["curve"] += ok_curve
        counts["valuation"] += ok_val
        rec = {"m": m, "y": y.to_line(), "T": T.to_line(), "val_y": val2(y),
               "curve": ok_curve, "valuation": ok_val}
        if val2(y) == 1:
            ok_c = residue_congruence_holds(y, T)
            counts["congruence_trials"] += 1
            counts["congruence"] += ok_c
            rec["congruence"] = ok_c
        if not all(v for k, v in rec.items() if k in ("curve", "valuation", "congruence")):
            failures.append(rec)
        samples.append(rec)
    return {"trials": trials, "precision": N, "bits": bits, "counts": counts,
            "samples": samples, "failures": failures, "ok": not failures}
