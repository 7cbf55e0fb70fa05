"""Polynomials over the prime field F_q and their factorization.

Polynomials are numpy arrays of residues, lowest degree first, with no trailing
zeros.  For q < 2**24 int64 arithmetic is exact (q**2 * 257 < 2**63); larger
moduli fall back to object arrays of Python ints.
"""

from __future__ import annotations

import random
from typing import Iterable

import numpy as np

from .intpoly import IntPoly

_INT64_LIMIT = 1 << 24


class ModDomainError(ValueError):
    pass


def _dtype(q: int):
    return np.int64 if q < _INT64_LIMIT else object


def as_array(coeffs: Iterable[int], q: int) -> np.ndarray:
    arr = np.array([int(c) % q for c in coeffs], dtype=_dtype(q))
    return trim(arr)


def trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def to_intpoly(a: np.ndarray) -> IntPoly:
    return IntPoly(int(c) for c in a)


def deg(a: np.ndarray) -> int:
    return len(a) - 1


def mul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    if a.dtype == object or b.dtype == object:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += int(x) * int(y)
        return as_array(out, q)
    if len(a) < len(b):
        a, b = b, a
    if len(b) * (q - 1) ** 2 >= (1 << 62):
        # Split the shorter operand to keep int64 partial sums exact.
        acc = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        step = max(1, (1 << 62) // ((q - 1) ** 2) - 1)
        for s in range(0, len(b), step):
            part = np.convolve(a, b[s:s + step]) % q
            acc[s:s + len(part)] = (acc[s:s + len(part)] + part) % q
        return trim(acc)
    return trim(np.convolve(a, b) % q)


def add(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = (out[: len(b)] + b) % q
    return trim(out)


def sub(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=a.dtype if len(a) else b.dtype)
    out[: len(a)] += a
    out[: len(b)] -= b
    return trim(out % q)


def scale(a: np.ndarray, c: int, q: int) -> np.ndarray:
    return trim((a * (c % q)) % q)


def monic(a: np.ndarray, q: int) -> np.ndarray:
    if len(a) == 0:
        return a
    inv = pow(int(a[-1]), -1, q)
    return scale(a, inv, q)


def divmod_poly(a: np.ndarray, b: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    if len(b) == 0:
        raise ZeroDivisionError("division by zero polynomial mod q")
    db = len(b) - 1
    if len(a) - 1 < db:
        return a[:0], a
    inv = pow(int(b[-1]), -1, q)
    r = a.copy()
    quot = np.zeros(len(a) - db, dtype=a.dtype)
    for k in range(len(a) - 1 - db, -1, -1):
        c = int(r[k + db]) * inv % q
        if c:
            quot[k] = c
            r[k:k + db + 1] = (r[k:k + db + 1] - c * b) % q
    return trim(quot), trim(r[:db])


def rem(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    return divmod_poly(a, b, q)[1]


def gcd(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    while len(b):
        a, b = b, rem(a, b, q)
    return monic(a, q)


def xgcd(a: np.ndarray, b: np.ndarray, q: int):
    """Return (g, s, t) with s*a + t*b = g monic."""
    dt = a.dtype
    one = np.array([1], dtype=dt)
    zero = one[:0]
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while len(r1):
        qq, r = divmod_poly(r0, r1, q)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(qq, s1, q), q)
        t0, t1 = t1, sub(t0, mul(qq, t1, q), q)
    if len(r0) == 0:
        return r0, s0, t0
    inv = pow(int(r0[-1]), -1, q)
    return scale(r0, inv, q), scale(s0, inv, q), scale(t0, inv, q)


def derivative(a: np.ndarray, q: int) -> np.ndarray:
    if len(a) <= 1:
        return a[:0]
    return trim((a[1:] * np.arange(1, len(a), dtype=a.dtype)) % q)


class QuotientRing:
    """Arithmetic in F_q[x]/(g) for monic g, with a precomputed reduction table."""

    def __init__(self, g: np.ndarray, q: int):
        g = monic(g, q)
        self.g = g
        self.q = q
        self.n = len(g) - 1
        n = self.n
        dt = g.dtype
        # table[i] = x^(n+i) mod g for 0 <= i < n - 1
        table = np.zeros((max(n - 1, 0), n), dtype=dt)
        if n > 1:
            cur = np.zeros(n, dtype=dt)
            cur[:] = (-g[:n]) % q
            table[0] = cur
            for i in range(1, n - 1):
                top = int(cur[-1])
                nxt = np.zeros(n, dtype=dt)
                nxt[1:] = cur[:-1]
                if top:
                    nxt = (nxt - top * g[:n]) % q
                table[i] = nxt
                cur = nxt
        self.table = table
        self._frob = None

    def reduce(self, a: np.ndarray) -> np.ndarray:
        n = self.n
        if len(a) <= n:
            return trim(a)
        if len(a) > 2 * n - 1:
            return rem(a, self.g, self.q)
        low = np.zeros(n, dtype=self.g.dtype)
        low[:] = a[:n]
        high = a[n:]
        if self.g.dtype == object:
            acc = low.copy()
            for i, c in enumerate(high):
                if c:
                    acc = acc + int(c) * self.table[i]
            return trim(acc % self.q)
        q = self.q
        # chunk the contraction so int64 sums stay exact
        step = max(1, (1 << 62) // ((q - 1) ** 2 + 1))
        acc = low % q
        for s in range(0, len(high), step):
            e = min(s + step, len(high))
            acc = (acc + high[s:e] @ self.table[s:e]) % q
        return trim(acc)

    def mul(self, a, b):
        return self.reduce(mul(a, b, self.q))

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = np.array([1], dtype=self.g.dtype)
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def x(self) -> np.ndarray:
        return self.reduce(np.array([0, 1], dtype=self.g.dtype))

    def frobenius_matrix(self) -> np.ndarray:
        """Row i holds x^(q*i) mod g, so a(x)^q = a @ Q for a in F_q[x]/(g)."""
        if self._frob is None:
            n = self.n
            Q = np.zeros((n, n), dtype=self.g.dtype)
            xq = self.pow(self.x(), self.q)
            cur = np.array([1], dtype=self.g.dtype)
            for i in range(n):
                Q[i, : len(cur)] = cur
                cur = self.mul(cur, xq)
            self._frob = Q
        return self._frob

    def frobenius(self, a: np.ndarray) -> np.ndarray:
        Q = self.frobenius_matrix()
        if len(a) == 0:
            return a
        if Q.dtype == object:
            acc = np.zeros(self.n, dtype=object)
            for i, c in enumerate(a):
                if c:
                    acc = acc + int(c) * Q[i]
            return trim(acc % self.q)
        q = self.q
        step = max(1, (1 << 62) // ((q - 1) ** 2 + 1))
        acc = np.zeros(self.n, dtype=np.int64)
        for s in range(0, len(a), step):
            e = min(s + step, len(a))
            acc = (acc + a[s:e] @ Q[s:e]) % q
        return trim(acc)


def rank_mod(M: np.ndarray, q: int) -> int:
    A = (M % q).copy()
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = np.flatnonzero(A[r:, c])
        if piv.size == 0:
            continue
        p = r + piv[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        inv = pow(int(A[r, c]), -1, q)
        A[r] = (A[r] * inv) % q
        col = A[:, c].copy()
        col[r] = 0
        nz = np.flatnonzero(col)
        if nz.size:
            A[nz] = (A[nz] - np.outer(col[nz], A[r])) % q
        r += 1
    return r


def berlekamp_count(f: np.ndarray, q: int) -> int:
    """Number of distinct irreducible factors of a squarefree f mod q."""
    ring = QuotientRing(f, q)
    Q = ring.frobenius_matrix()
    n = ring.n
    M = Q.copy()
    for i in range(n):
        M[i, i] = (M[i, i] - 1) % q
    return n - rank_mod(M, q)


def is_squarefree(f: np.ndarray, q: int) -> bool:
    d = derivative(f, q)
    if len(d) == 0:
        return len(f) <= 1
    return len(gcd(f, d, q)) == 1


def squarefree_decomposition(f: np.ndarray, q: int) -> list[tuple[np.ndarray, int]]:
    """Monic f -> [(g, m)] with f = prod g^m and each g squarefree, pairwise coprime."""
    out: list[tuple[np.ndarray, int]] = []
    f = monic(f, q)
    if len(f) <= 1:
        return out
    d = derivative(f, q)
    c = gcd(f, d, q) if len(d) else f
    w = divmod_poly(f, c, q)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, q)
        z = divmod_poly(w, y, q)[0]
        if len(z) > 1:
            out.append((monic(z, q), i))
        i += 1
        w = y
        c = divmod_poly(c, y, q)[0]
    if len(c) > 1:
        # c is a polynomial in x^q; its q-th root has coefficients c[q*k]
        root = trim(c[::q].copy())
        for g, m in squarefree_decomposition(root, q):
            out.append((g, m * q))
    return out


def distinct_degree(f: np.ndarray, q: int) -> list[tuple[np.ndarray, int]]:
    """Squarefree monic f -> [(product of all irreducible factors of degree d, d)]."""
    out = []
    ring = QuotientRing(f, q)
    xpoly = ring.x()
    h = xpoly
    rest = monic(f, q)
    d = 0
    while 2 * (d + 1) <= len(rest) - 1:
        d += 1
        h = ring.frobenius(h)
        g = gcd(rest, sub(h, xpoly, q), q)
        if len(g) > 1:
            out.append((g, d))
            rest = divmod_poly(rest, g, q)[0]
            h = rem(h, rest, q) if len(rest) > 1 else h
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def equal_degree(f: np.ndarray, d: int, q: int, rng: random.Random) -> list[np.ndarray]:
    """Split a squarefree monic product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    dt = f.dtype
    ring = QuotientRing(f, q)
    while True:
        a = as_array([rng.randrange(q) for _ in range(n)], q)
        if len(a) < 2:
            continue
        if q == 2:
            # trace to F_2: a + a^2 + ... + a^(2^(d-1))
            t = a
            cur = a
            for _ in range(d - 1):
                cur = ring.mul(cur, cur)
                t = add(t, cur, q)
            b = t
        else:
            # a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
            norm = a
            cur = a
            for _ in range(d - 1):
                cur = ring.frobenius(cur)
                norm = ring.mul(norm, cur)
            b = sub(ring.pow(norm, (q - 1) // 2), np.array([1], dtype=dt), q)
        g = gcd(f, b, q)
        if 1 < len(g) < len(f):
            h = divmod_poly(f, g, q)[0]
            return equal_degree(g, d, q, rng) + equal_degree(monic(h, q), d, q, rng)


def _sort_key(p: np.ndarray):
    return (len(p), [int(c) for c in reversed(p)])


def factor_squarefree_mod(f: np.ndarray, q: int, seed: int = 0) -> list[np.ndarray]:
    rng = random.Random(seed)
    out = []
    for g, d in distinct_degree(f, q):
        out.extend(equal_degree(monic(g, q), d, q, rng))
    out.sort(key=_sort_key)
    return out


def factor_mod_q(p: IntPoly, q: int, seed: int = 0) -> list[tuple[IntPoly, int]]:
    """Monic irreducible factors of p mod q with multiplicities.

    The product of factor**multiplicity equals p * lc(p)^(-1) mod q.
    """
    if q < 2:
        raise ModDomainError(f"modulus {q} is not prime")
    if p.lc % q == 0:
        raise ModDomainError(f"{q} divides the leading coefficient")
    f = monic(as_array(p.coeffs, q), q)
    result = []
    for g, m in squarefree_decomposition(f, q):
        for h in factor_squarefree_mod(g, q, seed):
            result.append((h, m))
    result.sort(key=lambda t: (_sort_key(t[0]), t[1]))
    return [(to_intpoly(h), m) for h, m in result]


def splits_completely(p: IntPoly, q: int) -> bool:
    """True when p mod q is a product of distinct linear factors of full degree."""
    if p.lc % q == 0:
        return False
    f = monic(as_array(p.coeffs, q), q)
    if len(f) <= 2:
        return len(f) == 2
    ring = QuotientRing(f, q)
    xq = ring.pow(ring.x(), q)
    g = gcd(f, sub(xq, ring.x(), q), q)
    return len(g) == len(f)
