"""Binary quadratic forms, class numbers and the discriminant sets D_n.

A discriminant -d with -d = 1 mod 8 belongs to D_n when the square of the class
of the norm-2 form (2, b, (b^2+d)/8) has order exactly n in the form class
group.  Factors b_d of P_n are labeled by the primes q = x^2 + d y^2, which are
exactly the primes modulo which b_d splits into linear factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exactalg import modpoly as mp
from .exactalg.intpoly import IntPoly
from .exactalg.primes import is_prime
from .resultants import primitive_count


class FormDomainError(ValueError):
    pass


class LabelingError(RuntimeError):
    pass


class SearchCapacityError(RuntimeError):
    pass


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class QuadForm:
    """Positive definite form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise FormDomainError(f"{self} is not positive definite")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def d(self) -> int:
        return -self.discriminant

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not abs(b) <= a <= c:
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduced(self) -> QuadForm:
        a, b, c = self.a, self.b, self.c
        while True:
            # bring b into (-a, a]
            if not -a < b <= a:
                k = (a - b) // (2 * a)
                c = a * k * k + b * k + c
                b = b + 2 * a * k
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return QuadForm(a, b, c)

    def inverse(self) -> QuadForm:
        return QuadForm(self.a, -self.b, self.c).reduced()

    def __repr__(self):
        return f"QuadForm({self.a}, {self.b}, {self.c})"


def _check_disc(d: int):
    if d <= 0 or (-d) % 4 not in (0, 1):
        raise FormDomainError(f"-{d} is not a negative discriminant")


def principal_form(d: int) -> QuadForm:
    _check_disc(d)
    b = d % 2
    return QuadForm(1, b, (b * b + d) // 4)


def reduced_forms(d: int) -> list[QuadForm]:
    """All reduced primitive forms of discriminant -d."""
    _check_disc(d)
    out = []
    a = 1
    while 3 * a * a <= d:
        for b in range(-a + 1, a + 1):
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            f = QuadForm(a, b, c)
            if f.is_primitive():
                out.append(f)
        a += 1
    return out


def class_number(d: int) -> int:
    """h(-d) by counting reduced primitive forms."""
    return len(reduced_forms(d))


def compose_reduce(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Reduced representative of the Gauss product of two primitive forms."""
    D = f1.discriminant
    if f2.discriminant != D:
        raise FormDomainError("forms have different discriminants")
    a1, b1, c1 = f1.a, f1.b, f1.c
    a2, b2, c2 = f2.a, f2.b, f2.c
    s = (b1 + b2) // 2
    g1, x1, y1 = _xgcd(a1, a2)
    e, x2, y2 = _xgcd(g1, s)
    u, v, w = x2 * x1, x2 * y1, y2  # u a1 + v a2 + w s = e
    A = a1 * a2 // (e * e)
    B = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + D) // 2) // e
    B %= 2 * A
    C = (B * B - D) // (4 * A)
    return QuadForm(A, B, C).reduced()


def form_power(f: QuadForm, e: int) -> QuadForm:
    result = principal_form(f.d)
    base = f.reduced()
    while e:
        if e & 1:
            result = compose_reduce(result, base)
        e >>= 1
        if e:
            base = compose_reduce(base, base)
    return result


def form_order(f: QuadForm) -> int:
    one = principal_form(f.d)
    g = f.reduced()
    k = 1
    while g != one:
        g = compose_reduce(g, f)
        k += 1
    return k


def norm2_form(d: int, b: int | None = None) -> QuadForm:
    """The form (2, b, (b^2+d)/8) representing the prime above 2."""
    if d % 8 != 7:
        raise FormDomainError(f"-{d} is not 1 mod 8")
    if b is None:
        b = 1
    if b not in (1, 3):
        raise ValueError("b must be 1 or 3")
    return QuadForm(2, b, (b * b + d) // 8)


def frob2_square_order(d: int, b: int | None = None) -> int:
    f = norm2_form(d, b)
    return form_order(compose_reduce(f, f))


@dataclass(frozen=True)
class DiscriminantRecord:
    d: int
    h: int
    frob2_sq_order: int
    in_Dn_for: int


def discriminant_bound(n: int) -> int:
    return 4 ** (n + 1)


def discriminants_with_order(n: int) -> list[DiscriminantRecord]:
    """All d < 4^(n+1) with -d = 1 mod 8 and frob2_square_order(d) = n."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for d in range(7, discriminant_bound(n), 8):
        k = frob2_square_order(d)
        if k == n:
            out.append(DiscriminantRecord(d, class_number(d), k, n))
    return out


def class_relation_rhs(n: int) -> int:
    return 3 if n == 1 else primitive_count(n)


def verify_class_relation(n: int) -> tuple[int, int, bool]:
    lhs = sum(r.h for r in discriminants_with_order(n))
    rhs = class_relation_rhs(n)
    return lhs, rhs, lhs == rhs


def represented_primes(d: int, count: int, limit: int = 10 ** 12) -> list[int]:
    """The `count` smallest primes x^2 + d y^2 with x, y >= 1."""
    if d <= 0:
        raise ValueError("d must be positive")
    bound = max(64, 4 * d)
    while bound <= limit:
        found = set()
        y = 1
        while d * y * y + 1 <= bound:
            x = 1
            base = d * y * y
            while base + x * x <= bound:
                q = base + x * x
                if q % 2 and gcd(q, d) == 1 and is_prime(q):
                    found.add(q)
                x += 1
            y += 1
        if len(found) >= count:
            return sorted(found)[:count]
        bound *= 4
    raise SearchCapacityError(f"fewer than {count} represented primes below {limit} for d={d}")


def _good_prime(g: IntPoly, q: int) -> bool:
    """q divides neither the leading coefficient nor the discriminant of g."""
    if g.lc % q == 0:
        return False
    return mp.is_squarefree(mp.as_array(g.coeffs, q), q)


@dataclass
class LabelReport:
    d: int
    h: int
    witnesses: list[int]
    rejected: dict  # rival d -> prime where g failed to split


def label_factor(g: IntPoly, n: int, positives: int = 3, max_primes: int = 10) -> LabelReport:
    candidates = [r for r in discriminants_with_order(n) if 2 * r.h == g.degree]
    if not candidates:
        raise LabelingError(f"no discriminant in D_{n} has class number {g.degree // 2}")
    accepted = []
    rejected = {}
    witnesses = {}
    for rec in candidates:
        split = []
        failed = None
        tested = 0
        for q in represented_primes(rec.d, 4 * max_primes):
            if len(split) >= positives or failed is not None or tested >= max_primes:
                break
            if not _good_prime(g, q):
                continue
            tested += 1
            if mp.splits_completely(g, q):
                split.append(q)
            else:
                failed = q
        if failed is None and len(split) >= positives:
            accepted.append(rec)
            witnesses[rec.d] = split
        elif failed is not None:
            rejected[rec.d] = failed
    if len(accepted) != 1:
        raise LabelingError(
            f"factor of degree {g.degree}: {len(accepted)} candidates passed "
            f"({[r.d for r in accepted]})")
    rec = accepted[0]
    missing = [r.d for r in candidates if r.d != rec.d and r.d not in rejected]
    if missing:
        raise LabelingError(f"no negative witness for rival candidates {missing}")
    return LabelReport(rec.d, rec.h, witnesses[rec.d], rejected)


def label_factor_discriminant(g: IntPoly, n: int) -> int:
    return label_factor(g, n).d
