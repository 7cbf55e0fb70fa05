"""Primality, prime enumeration and prime-field elements."""

from __future__ import annotations

from typing import Iterator

# These bases make Miller-Rabin deterministic for n < 3.3e24, which covers 64 bits.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def primes_from(start: int) -> Iterator[int]:
    """Primes >= start in increasing order."""
    p = start - 1
    while True:
        p = next_prime(p)
        yield p


def sqrt_mod(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square modulo {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class PrimeFieldElement:
    """Residue class modulo a prime q."""

    __slots__ = ("residue", "q")

    def __init__(self, value: int, q: int):
        self.q = q
        self.residue = value % q

    def _other(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.q != self.q:
                raise ValueError("elements of different prime fields")
            return other.residue
        if isinstance(other, int):
            return other % self.q
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else PrimeFieldElement(self.residue + o, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else PrimeFieldElement(self.residue - o, self.q)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else PrimeFieldElement(o - self.residue, self.q)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else PrimeFieldElement(self.residue * o, self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.q)

    def inverse(self) -> PrimeFieldElement:
        if self.residue == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return PrimeFieldElement(pow(self.residue, -1, self.q), self.q)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * PrimeFieldElement(o, self.q).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(o, self.q) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElement(pow(self.residue, e, self.q), self.q)

    def __eq__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self.residue == o

    def __hash__(self):
        return hash((self.residue, self.q))

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_square(self) -> bool:
        return self.residue == 0 or pow(self.residue, (self.q - 1) // 2, self.q) == 1

    def sqrt(self) -> PrimeFieldElement:
        return PrimeFieldElement(sqrt_mod(self.residue, self.q), self.q)

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.q})"
