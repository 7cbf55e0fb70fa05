"""Dense univariate polynomials with arbitrary-precision integer coefficients.

A polynomial c_0 + c_1 x + ... + c_n x^n is stored as the tuple (c_0, ..., c_n)
with c_n != 0; the zero polynomial is the empty tuple and has degree -1.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial division expected to be exact leaves a remainder."""


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(int(c) for c in coeffs[:n])


# Above this many coefficients per operand, multiply by packing into one big int.
_KRONECKER_CUTOFF = 24


def _mul_naive(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _pack(coeffs: Sequence[int], bits: int) -> int:
    # Horner in base 2**bits; negative digits are fine, unpacking handles borrows.
    r = 0
    for c in reversed(coeffs):
        r = (r << bits) + c
    return r


def _unpack(value: int, bits: int, count: int) -> list[int]:
    half = 1 << (bits - 1)
    mask = (1 << bits) - 1
    out = []
    for _ in range(count):
        d = value & mask
        value >>= bits
        if d >= half:
            d -= 1 << bits
            value += 1
        out.append(d)
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = ma * mb * min(len(a), len(b))
    bits = bound.bit_length() + 2
    prod = _pack(a, bits) * _pack(b, bits)
    return _unpack(prod, bits, len(a) + len(b) - 1)


def mul_coeffs(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        return _mul_naive(a, b)
    return _mul_kronecker(a, b)


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(list(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> IntPoly:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntPoly(mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, value):
        """Horner evaluation; ``value`` may be any ring element supporting + and *."""
        if not self.coeffs:
            return 0 * value
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    # -- division ---------------------------------------------------------
    def divmod_int(self, den: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division over the integers; raises if a quotient coefficient is fractional."""
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = den.degree
        lc = den.lc
        if self.degree < dd:
            return IntPoly(), self
        quot = [0] * (self.degree - dd + 1)
        dcoeffs = den.coeffs
        for k in range(self.degree - dd, -1, -1):
            c = rem[k + dd]
            if c == 0:
                continue
            q, r = divmod(c, lc)
            if r:
                raise InexactDivisionError(
                    f"leading coefficient {c} not divisible by {lc} at degree {k + dd}")
            quot[k] = q
            for j, dj in enumerate(dcoeffs):
                if dj:
                    rem[k + j] -= q * dj
        return IntPoly(quot), IntPoly(rem[:dd])

    def exact_div(self, den: IntPoly) -> IntPoly:
        return exact_div(self, den)

    def __floordiv__(self, other):
        if isinstance(other, int):
            out = []
            for c in self.coeffs:
                q, r = divmod(c, other)
                if r:
                    raise InexactDivisionError(f"{c} not divisible by {other}")
                out.append(q)
            return IntPoly(out)
        return exact_div(self, other)

    # -- misc -------------------------------------------------------------
    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def primitive(self) -> IntPoly:
        """Primitive part normalized to a positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def normalized(self) -> IntPoly:
        return self if self.lc >= 0 else -self

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def mod(self, q: int) -> IntPoly:
        return IntPoly(c % q for c in self.coeffs)

    def symmetric_mod(self, m: int) -> IntPoly:
        half = m // 2
        out = []
        for c in self.coeffs:
            c %= m
            if c > half:
                c -= m
            out.append(c)
        return IntPoly(out)

    def scale_var(self, s: int) -> IntPoly:
        """p(s*x)."""
        out = []
        f = 1
        for c in self.coeffs:
            out.append(c * f)
            f *= s
        return IntPoly(out)

    def compose(self, inner: IntPoly) -> IntPoly:
        acc = IntPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reverse(self) -> IntPoly:
        return IntPoly(reversed(self.coeffs))

    def norm2_sq(self) -> int:
        return sum(c * c for c in self.coeffs)

    def max_norm(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def mobius_transform(self) -> IntPoly:
        """(x-1)^deg * p((x+1)/(x-1))."""
        n = self.degree
        if n < 0:
            return self
        xp1 = IntPoly((1, 1))
        xm1 = IntPoly((-1, 1))
        powers_p = [IntPoly((1,))]
        powers_m = [IntPoly((1,))]
        for _ in range(n):
            powers_p.append(powers_p[-1] * xp1)
            powers_m.append(powers_m[-1] * xm1)
        acc = IntPoly()
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * (powers_p[i] * powers_m[n - i])
        return acc

    # -- text format ------------------------------------------------------
    def to_line(self) -> str:
        return " ".join([str(self.degree)] + [str(c) for c in self.coeffs])

    @classmethod
    def from_line(cls, line: str) -> IntPoly:
        parts = line.split()
        if not parts:
            raise ValueError("empty polynomial line")
        deg = int(parts[0])
        coeffs = [int(t) for t in parts[1:]]
        if len(coeffs) != deg + 1:
            raise ValueError(f"degree {deg} but {len(coeffs)} coefficients")
        p = cls(coeffs)
        if p.degree != deg:
            raise ValueError("leading coefficient is zero")
        return p


def exact_div(num: IntPoly, den: IntPoly) -> IntPoly:
    """Quotient q with q*den == num; raises InexactDivisionError otherwise."""
    q, r = num.divmod_int(den)
    if not r.is_zero():
        raise InexactDivisionError(f"nonzero remainder of degree {r.degree}")
    return q


def poly_product(polys: Iterable[IntPoly]) -> IntPoly:
    acc = IntPoly((1,))
    for p in polys:
        acc = acc * p
    return acc


def pseudo_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    """lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    da, db = a.degree, b.degree
    if da < db:
        return a
    rem = list(a.coeffs)
    lc = b.lc
    bc = b.coeffs
    for k in range(da - db, -1, -1):
        c = rem[k + db]
        rem = [lc * r for r in rem]
        if c:
            for j, bj in enumerate(bc):
                rem[k + j] -= c * bj
        rem = rem[: k + db]
    # every step multiplied by lc once, so the total scale is lc^(da-db+1)
    return IntPoly(rem)


def primitive_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """gcd over Z[x] by primitive remainder sequence, normalized positive."""
    if a.is_zero():
        return b.primitive() * b.content() if b else b
    if b.is_zero():
        return a.primitive() * a.content()
    c = gcd(a.content(), b.content())
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, (r.primitive() if r else r)
    return a.primitive() * c
