"""Factorization of squarefree integer polynomials.

Pick a prime q where p stays squarefree and has few modular factors, factor
mod q, Hensel-lift to a modulus beyond a Mignotte bound, then recombine
subsets of lifted factors by trial division over Z.
"""

from __future__ import annotations

from itertools import combinations
from math import comb, isqrt

from . import modpoly as mp
from .intpoly import InexactDivisionError, IntPoly, poly_product, primitive_gcd
from .primes import primes_from


class FactorDomainError(ValueError):
    pass


class NoGoodPrimeError(RuntimeError):
    pass


MAX_PRIME_TRIES = 100


def mignotte_bound(p: IntPoly) -> int:
    """Bound on the max-norm of any integer factor of p, times |lc(p)|."""
    n = p.degree
    norm = isqrt(p.norm2_sq()) + 1
    return comb(n, n // 2) * norm * abs(p.lc)


def _to_int(a) -> IntPoly:
    return IntPoly(int(c) for c in a)


def _divmod_monic(a: IntPoly, b: IntPoly, m: int) -> tuple[IntPoly, IntPoly]:
    qt, r = a.divmod_int(b)
    return qt.mod(m), r.mod(m)


def _hensel_step(f, g, h, s, t, m):
    """Lift f = g h mod m (h monic, s g + t h = 1 mod m) to modulus m**2."""
    m2 = m * m
    e = (f - g * h).mod(m2)
    qt, r = _divmod_monic((s * e).mod(m2), h, m2)
    g2 = (g + t * e + qt * g).mod(m2)
    h2 = (h + r).mod(m2)
    b = (s * g2 + t * h2 - 1).mod(m2)
    c, d = _divmod_monic((s * b).mod(m2), h2, m2)
    s2 = (s - d).mod(m2)
    t2 = (t - t * b - c * g2).mod(m2)
    return g2, h2, s2, t2


def hensel_lift(f: IntPoly, factors: list[IntPoly], q: int, k: int):
    """Lift monic factors of f mod q to monic factors mod M = q**(2**j) >= q**k.

    Returns (lifted factors, M).
    """
    e = 1
    while e < k:
        e *= 2
    M = q ** e
    lifted = []
    target = f.mod(M)
    lc = f.lc
    rest = list(factors)
    while len(rest) > 1:
        h = rest.pop(0)
        g = (poly_product(rest) * lc).mod(q)
        gg, s, t = mp.xgcd(mp.as_array(g.coeffs, q), mp.as_array(h.coeffs, q), q)
        if len(gg) != 1:
            raise FactorDomainError("modular factors are not coprime")
        s, t = _to_int(s), _to_int(t)
        m = q
        gl, hl = g, h
        while m < M:
            gl, hl, s, t = _hensel_step(target, gl, hl, s, t, m)
            m = m * m
        lifted.append(hl)
        target = gl
        lc = target.lc
    # the last factor carries the leading coefficient; make it monic
    last = target
    inv = pow(last.lc % M, -1, M)
    lifted.append((last * inv).mod(M))
    return lifted, M


def _good_primes(f: IntPoly, screen: int):
    """Yield (berlekamp count, q, monic f mod q) for primes keeping f squarefree."""
    tried = 0
    good = 0
    for q in primes_from(3):
        if tried >= MAX_PRIME_TRIES or good >= screen:
            return
        tried += 1
        if f.lc % q == 0:
            continue
        fq = mp.monic(mp.as_array(f.coeffs, q), q)
        if not mp.is_squarefree(fq, q):
            continue
        good += 1
        yield mp.berlekamp_count(fq, q), q, fq


def _screen_count(n: int) -> int:
    return 6 if n < 12 else 12 if n < 40 else 24


def _recombine(f: IntPoly, lifted: list[IntPoly], M: int) -> list[IntPoly]:
    out = []
    factors = list(lifted)
    s = 1
    half = M // 2

    def sym(c):
        c %= M
        return c - M if c > half else c

    while 2 * s <= len(factors):
        lc = f.lc
        tail = lc * f[0]
        consts = [g[0] for g in factors]
        found = None
        for S in combinations(range(len(factors)), s):
            c = lc
            for i in S:
                c = c * consts[i] % M
            c = sym(c)
            if c == 0 or tail % c:
                continue
            cand = poly_product(factors[i] for i in S) * lc
            cand = cand.symmetric_mod(M).primitive()
            if f.lc % cand.lc:
                continue
            try:
                qt, r = f.divmod_int(cand)
            except InexactDivisionError:
                continue
            if r.is_zero():
                found = S, cand, qt
                break
        if found is None:
            s += 1
            continue
        S, cand, qt = found
        out.append(cand)
        factors = [g for i, g in enumerate(factors) if i not in S]
        f = qt
    out.append(f.primitive())
    return out


def _factor_primitive(f: IntPoly) -> list[IntPoly]:
    """f primitive, squarefree, f(0) != 0."""
    if f.degree <= 1:
        return [f]
    best = None
    for r, q, fq in _good_primes(f, _screen_count(f.degree)):
        if best is None or r < best[0]:
            best = (r, q, fq)
        if r == 1:
            break
    if best is None:
        g = primitive_gcd(f, f.derivative())
        if g.degree > 0:
            raise FactorDomainError("input is not squarefree")
        raise NoGoodPrimeError(
            f"no prime among the first {MAX_PRIME_TRIES} keeps the input squarefree")
    r, q, fq = best
    if r == 1:
        return [f]
    mod_factors = [_to_int(g) for g in mp.factor_squarefree_mod(fq, q)]
    B = 2 * mignotte_bound(f) + 1
    k = 1
    qk = q
    while qk <= B:
        qk *= q
        k += 1
    lifted, M = hensel_lift(f, mod_factors, q, k)
    return _recombine(f, lifted, M)


def _sort_key(p: IntPoly):
    return (p.degree, [abs(c) for c in reversed(p.coeffs)], list(reversed(p.coeffs)))


def factor_squarefree_over_Z(p: IntPoly) -> list[IntPoly]:
    """Irreducible primitive factors with positive leading coefficient.

    The product equals p up to sign; any integer content of p is dropped (see
    ``factor_over_Z`` to keep it).
    """
    if p.degree < 1:
        raise FactorDomainError("cannot factor a constant")
    f = p.primitive()
    out = []
    # Squarefreeness is certified by the good prime found below: if f mod q is
    # squarefree of full degree then so is f.
    if f[0] == 0:
        if f[1] == 0:
            raise FactorDomainError("input is not squarefree")
        out.append(IntPoly((0, 1)))
        f = f // IntPoly((0, 1))
    if f.degree >= 1:
        out.extend(g.primitive() for g in _factor_primitive(f))
    out.sort(key=_sort_key)
    return out


def factor_over_Z(p: IntPoly) -> tuple[int, list[IntPoly]]:
    """(content with sign, factors) with content * prod(factors) == p."""
    factors = factor_squarefree_over_Z(p)
    c = p.content()
    if p.lc < 0:
        c = -c
    return c, factors


def degree_pattern(p: IntPoly, q: int) -> list[int] | None:
    """Sorted degrees of the irreducible factors of p mod q, or None when q is bad."""
    if p.lc % q == 0:
        return None
    fq = mp.monic(mp.as_array(p.coeffs, q), q)
    if not mp.is_squarefree(fq, q):
        return None
    degs = []
    for g, d in mp.distinct_degree(fq, q):
        degs.extend([d] * ((len(g) - 1) // d))
    return sorted(degs)
