"""Truncated arithmetic in unramified extensions of the 2-adic integers.

The degree-m extension is Z_2[u]/(U(u)) where U is the lexicographically
smallest irreducible polynomial of degree m over F_2, lifted with 0/1
coefficients.  Elements carry coefficient vectors modulo 2**N together with a
guaranteed precision k: the true value agrees with the stored one modulo 2**k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exactalg.intpoly import IntPoly

VAL_INFINITY = float("inf")
DEFAULT_PRECISION = 64


class PrecisionError(ArithmeticError):
    pass


class NonInvertibleError(ArithmeticError):
    pass


class ConvergenceDomainError(ValueError):
    pass


# ---------------------------------------------------------------------------
# F_2[x] on bitmasks
# ---------------------------------------------------------------------------

def _gf2_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _gf2_irreducible(p: int) -> bool:
    d = p.bit_length() - 1
    if d <= 0:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if q.bit_length() - 1 > d // 2:
            break
        if _gf2_mod(p, q) == 0:
            return False
    return True


@dataclass(frozen=True)
class Extension:
    """Descriptor of the degree-m unramified extension."""

    m: int
    modulus: tuple[int, ...]  # U lowest degree first, monic, entries in {0, 1}

    @property
    def mask(self) -> int:
        return sum(c << i for i, c in enumerate(self.modulus))

    def modulus_poly(self) -> IntPoly:
        return IntPoly(self.modulus)


@lru_cache(maxsize=None)
def extension(m: int) -> Extension:
    if m < 1:
        raise ValueError("extension degree must be positive")
    for low in range(1 << m):
        p = (1 << m) | low
        if _gf2_irreducible(p):
            return Extension(m, tuple((p >> i) & 1 for i in range(m + 1)))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# residue field F_{2^m}
# ---------------------------------------------------------------------------

class ResidueElement:
    """Element of F_{2^m} as a bitmask on the basis 1, u, ..., u^(m-1)."""

    __slots__ = ("m", "bits")

    def __init__(self, m: int, bits: int):
        if bits < 0 or bits >> m:
            raise ValueError(f"bitmask {bits} out of range for degree {m}")
        self.m = m
        self.bits = bits

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> ResidueElement:
        return cls(len(coords), sum((int(c) & 1) << i for i, c in enumerate(coords)))

    @classmethod
    def all(cls, m: int) -> list[ResidueElement]:
        return [cls(m, b) for b in range(1 << m)]

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.m))

    def _check(self, other):
        if not isinstance(other, ResidueElement) or other.m != self.m:
            raise TypeError("residue elements of different fields")

    def __add__(self, other):
        self._check(other)
        return ResidueElement(self.m, self.bits ^ other.bits)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        self._check(other)
        prod = _gf2_mul(self.bits, other.bits)
        return ResidueElement(self.m, _gf2_mod(prod, extension(self.m).mask))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = ResidueElement(self.m, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> ResidueElement:
        if self.bits == 0:
            raise NonInvertibleError("zero residue has no inverse")
        return self ** ((1 << self.m) - 2)

    def frobenius(self) -> ResidueElement:
        return self * self

    def is_zero(self) -> bool:
        return self.bits == 0

    def __eq__(self, other):
        return isinstance(other, ResidueElement) and (self.m, self.bits) == (other.m, other.bits)

    def __hash__(self):
        return hash((self.m, self.bits))

    def __repr__(self):
        return f"ResidueElement(m={self.m}, coords={self.coords})"


# ---------------------------------------------------------------------------
# integral elements
# ---------------------------------------------------------------------------

def _v2(c: int) -> int:
    return (c & -c).bit_length() - 1


class UnramifiedElement:
    """Element of the degree-m unramified ring of integers, modulo 2**N."""

    __slots__ = ("m", "N", "k", "coeffs")

    def __init__(self, m: int, N: int, coeffs: Iterable[int], k: int | None = None):
        coeffs = list(coeffs)
        if len(coeffs) > m:
            raise ValueError(f"{len(coeffs)} coefficients for degree {m}")
        coeffs += [0] * (m - len(coeffs))
        if N < 1:
            raise ValueError("working modulus exponent must be positive")
        mask = (1 << N) - 1
        self.m = m
        self.N = N
        self.k = N if k is None else max(0, min(k, N))
        self.coeffs = tuple(c & mask for c in coeffs)

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_int(cls, m: int, N: int, value: int, k: int | None = None) -> UnramifiedElement:
        return cls(m, N, [value], k)

    @classmethod
    def generator(cls, m: int, N: int) -> UnramifiedElement:
        if m == 1:
            return cls(1, N, [0])
        return cls(m, N, [0, 1])

    def _like(self, coeffs, k) -> UnramifiedElement:
        return UnramifiedElement(self.m, self.N, coeffs, k)

    def _coerce(self, other) -> UnramifiedElement:
        if isinstance(other, UnramifiedElement):
            if other.m != self.m or other.N != self.N:
                raise TypeError(
                    f"incompatible elements (m={self.m}, N={self.N}) and (m={other.m}, N={other.N})")
            return other
        if isinstance(other, int):
            return UnramifiedElement(self.m, self.N, [other])
        raise TypeError(f"cannot combine UnramifiedElement with {type(other).__name__}")

    # -- valuation ---------------------------------------------------------
    def _val(self) -> int:
        """Valuation capped at k (k means known zero)."""
        v = self.k
        for c in self.coeffs:
            if c:
                v = min(v, _v2(c))
        return v

    def is_known_zero(self) -> bool:
        return self._val() >= self.k

    def is_unit(self) -> bool:
        return self.k >= 1 and self._val() == 0

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        return self._like([a + b for a, b in zip(self.coeffs, o.coeffs)], min(self.k, o.k))

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs], self.k)

    def __sub__(self, other):
        o = self._coerce(other)
        return self._like([a - b for a, b in zip(self.coeffs, o.coeffs)], min(self.k, o.k))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            v = _v2(other) if other else self.N
            return self._like([c * other for c in self.coeffs], self.k + v)
        o = self._coerce(other)
        m = self.m
        a, b = self.coeffs, o.coeffs
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        U = extension(m).modulus
        for i in range(2 * m - 2, m - 1, -1):
            c = prod[i]
            if c:
                base = i - m
                for j in range(m):
                    if U[j]:
                        prod[base + j] -= c
        k = min(self.k + o._val(), o.k + self._val(), self.N)
        return self._like(prod[:m], k)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        result = self._like([1], self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_pow2(self, s: int) -> UnramifiedElement:
        """Multiply by 2**s (s >= 0): gains s bits of guaranteed precision."""
        if s < 0:
            return self.div_pow2(-s)
        return self._like([c << s for c in self.coeffs], self.k + s)

    def div_pow2(self, s: int) -> UnramifiedElement:
        """Exact division by 2**s; loses s bits of guaranteed precision."""
        if s < 0:
            return self.mul_pow2(-s)
        if self._val() < s:
            raise NonInvertibleError(f"element is not divisible by 2**{s}")
        return self._like([c >> s for c in self.coeffs], self.k - s)

    def with_precision(self, k: int) -> UnramifiedElement:
        """Same coefficients with a lower (never higher) precision tag."""
        return self._like(self.coeffs, min(k, self.k))

    def change_modulus(self, N: int) -> UnramifiedElement:
        """Re-home at working modulus 2**N; precision cannot increase."""
        return UnramifiedElement(self.m, N, self.coeffs, min(self.k, N))

    # -- comparison --------------------------------------------------------
    def agrees(self, other, bits: int) -> bool:
        """True when self == other modulo 2**bits on the stored coefficients."""
        o = self._coerce(other)
        mask = (1 << bits) - 1
        return all((a - b) & mask == 0 for a, b in zip(self.coeffs, o.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            other = UnramifiedElement(self.m, self.N, [other])
        if not isinstance(other, UnramifiedElement):
            return NotImplemented
        return (self.m, self.N, self.k, self.coeffs) == (other.m, other.N, other.k, other.coeffs)

    def __hash__(self):
        return hash((self.m, self.N, self.k, self.coeffs))

    def __repr__(self):
        return f"UnramifiedElement(m={self.m}, N={self.N}, k={self.k}, coeffs={list(self.coeffs)})"

    # -- text format -------------------------------------------------------
    def to_line(self) -> str:
        return " ".join(str(t) for t in (self.m, self.N, self.k) + self.coeffs)

    @classmethod
    def from_line(cls, line: str) -> UnramifiedElement:
        parts = [int(t) for t in line.split()]
        if len(parts) < 3:
            raise ValueError("element line needs 'm N k c0 ... c_{m-1}'")
        m, N, k = parts[:3]
        coeffs = parts[3:]
        if len(coeffs) != m:
            raise ValueError(f"expected {m} coefficients, got {len(coeffs)}")
        if not 0 <= k <= N:
            raise ValueError("precision tag out of range")
        if any(c < 0 or c >> N for c in coeffs):
            raise ValueError("coefficient not reduced modulo 2**N")
        return cls(m, N, coeffs, k)


def val2(a: UnramifiedElement):
    """2-adic valuation, or VAL_INFINITY when a is zero to its guaranteed precision."""
    v = a._val()
    return VAL_INFINITY if v >= a.k else v


def reduce_mod2(a: UnramifiedElement) -> ResidueElement:
    if a.k < 1:
        raise PrecisionError("no guaranteed bits to reduce")
    return ResidueElement.from_coords([c & 1 for c in a.coeffs])


def lift_residue(r: ResidueElement, N: int) -> UnramifiedElement:
    """The element with 0/1 coefficients reducing to r (exact at precision N)."""
    return UnramifiedElement(r.m, N, r.coords)


def invert(a: UnramifiedElement) -> UnramifiedElement:
    """Inverse of a unit by Newton iteration x <- x(2 - a x); precision preserved."""
    if not a.is_unit():
        raise NonInvertibleError("only units are invertible; scale by powers of 2 first")
    exact = a._like(a.coeffs, a.N)
    x = lift_residue(reduce_mod2(a).inverse(), a.N)
    bits = 1
    while bits < a.N:
        x = x * (2 - exact * x)
        bits *= 2
    return x.with_precision(a.k)


def teichmuller_lift(r: ResidueElement, N: int = DEFAULT_PRECISION) -> UnramifiedElement:
    """The root of unity of order dividing 2^m - 1 reducing to r (0 lifts to 0)."""
    if r.is_zero():
        return UnramifiedElement(r.m, N, [0])
    z = lift_residue(r, N)
    m = r.m
    # each pass of z -> z^(2^m) gains at least m bits
    for _ in range(N // max(m, 1) + 2):
        nxt = z
        for _ in range(m):
            nxt = nxt * nxt
        if nxt.coeffs == z.coeffs:
            break
        z = nxt
    return z


def newton_root(poly: IntPoly, start: UnramifiedElement, max_iter: int | None = None) -> UnramifiedElement:
    """Hensel-lift a simple root of poly from an approximation with unit derivative."""
    d = poly.derivative()
    x = start._like(start.coeffs, start.N)
    cap = max_iter or (start.N.bit_length() + 4)
    for _ in range(cap + 1):
        fx = poly(x)
        if fx.is_known_zero():
            return x
        x = x - fx * invert(d(x))
    fx = poly(x)
    if not fx.is_known_zero():
        raise PrecisionError("Newton iteration did not converge")
    return x


@lru_cache(maxsize=None)
def _frobenius_image_of_generator(m: int, N: int) -> UnramifiedElement:
    u = UnramifiedElement.generator(m, N)
    if m == 1:
        return u
    return newton_root(extension(m).modulus_poly(), u * u)


def frobenius(a: UnramifiedElement) -> UnramifiedElement:
    """The Frobenius automorphism: lifts x -> x^2 on residues."""
    phi_u = _frobenius_image_of_generator(a.m, a.N)
    acc = a._like([0], a.N)
    power = a._like([1], a.N)
    for c in a.coeffs:
        if c:
            acc = acc + power * c
        power = power * phi_u
    return acc.with_precision(a.k)


@lru_cache(maxsize=None)
def _embedding_root(m: int, target_m: int, N: int) -> UnramifiedElement:
    U = extension(m).modulus_poly()
    for r in ResidueElement.all(target_m):
        val = IntPoly(c % 2 for c in U.coeffs)
        acc = ResidueElement(target_m, 0)
        for c in reversed(val.coeffs):
            acc = acc * r
            if c:
                acc = acc + ResidueElement(target_m, 1)
        if acc.is_zero():
            return newton_root(U, lift_residue(r, N))
    raise AssertionError("modulus has no root in the larger field")  # pragma: no cover


def embed(a: UnramifiedElement, target_m: int) -> UnramifiedElement:
    """Map a into the degree-target_m extension, sending u to a fixed root of U_m there."""
    if target_m % a.m:
        raise ValueError(f"degree {a.m} does not divide {target_m}")
    if target_m == a.m:
        return a
    theta = _embedding_root(a.m, target_m, a.N)
    acc = UnramifiedElement(target_m, a.N, [0])
    power = UnramifiedElement(target_m, a.N, [1])
    for c in a.coeffs:
        if c:
            acc = acc + power * c
        power = power * theta
    return acc.with_precision(a.k)


def embed_residue(r: ResidueElement, target_m: int) -> ResidueElement:
    if target_m % r.m:
        raise ValueError(f"degree {r.m} does not divide {target_m}")
    return reduce_mod2(embed(lift_residue(r, 8), target_m))


# ---------------------------------------------------------------------------
# binomial square root
# ---------------------------------------------------------------------------

def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def binomial_sqrt_one_plus(t: UnramifiedElement) -> UnramifiedElement:
    """sqrt(1 + t) by the binomial series, for val2(t) >= 3.

    With t = 2^v w the n-th term is (-1)^(n-1) C_{n-1} 2^(n v - 2n + 1) w^n,
    an integral multiple of 2^(n(v-2)+1); terms past the working modulus are
    exactly zero modulo 2**N.  The result is guaranteed to k_t - 1 bits.
    """
    v = val2(t)
    if v < 3:
        raise ConvergenceDomainError(f"binomial series needs val2(t) >= 3, got {v}")
    one = t._like([1], t.N)
    k_out = t.k - 1
    if v == VAL_INFINITY:
        return one.with_precision(k_out)
    w = t.div_pow2(v)
    acc = one
    wn = one
    n = 1
    while n * (v - 2) + 1 < t.N:
        wn = wn * w
        coef = catalan(n - 1) << (n * v - 2 * n + 1)
        term = wn * coef
        acc = acc + term if n % 2 else acc - term
        n += 1
    return acc._like(acc.coeffs, k_out)


# ---------------------------------------------------------------------------
# elements of negative valuation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScaledElement:
    """The value 2**scale * unit, for a unit UnramifiedElement."""

    unit: UnramifiedElement
    scale: int

    def __post_init__(self):
        if not self.unit.is_unit():
            raise ValueError("ScaledElement requires a unit part")

    @classmethod
    def from_element(cls, a: UnramifiedElement) -> ScaledElement:
        v = val2(a)
        if v == VAL_INFINITY:
            raise NonInvertibleError("cannot normalize a known-zero element")
        return cls(a.div_pow2(v), v)

    @property
    def valuation(self) -> int:
        return self.scale

    def inverse(self) -> ScaledElement:
        return ScaledElement(invert(self.unit), -self.scale)

    def __mul__(self, other):
        if isinstance(other, ScaledElement):
            return ScaledElement(self.unit * other.unit, self.scale + other.scale)
        return NotImplemented

    def to_integral(self) -> UnramifiedElement:
        if self.scale < 0:
            raise NonInvertibleError("negative valuation has no integral representative")
        return self.unit.mul_pow2(self.scale)
