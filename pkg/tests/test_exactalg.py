import math
import random

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from quarticdyn.exactalg import modpoly as mp
from quarticdyn.exactalg.bipoly import BiPoly
from quarticdyn.exactalg.factor import (
    FactorDomainError,
    factor_over_Z,
    factor_squarefree_over_Z,
    hensel_lift,
    mignotte_bound,
)
from quarticdyn.exactalg.intpoly import (
    InexactDivisionError,
    IntPoly,
    exact_div,
    poly_product,
    primitive_gcd,
)
from quarticdyn.exactalg.primes import PrimeFieldElement, is_prime, next_prime, sqrt_mod
from quarticdyn.exactalg.resultant import (
    newton_interpolate,
    resultant_in,
    resultant_int,
    resultant_univariate_in,
)

X = sympy.Symbol("x")
Y = sympy.Symbol("y")

small_polys = st.lists(st.integers(-20, 20), min_size=1, max_size=7).map(IntPoly)
nonzero_polys = small_polys.filter(lambda p: not p.is_zero())


def to_sympy(p: IntPoly, var=X):
    return sympy.Integer(0) + sum(c * var ** i for i, c in enumerate(p.coeffs))


def from_sympy(expr, var=X) -> IntPoly:
    return IntPoly(reversed(sympy.Poly(expr, var).all_coeffs()))


# ---------------------------------------------------------------------------
# IntPoly
# ---------------------------------------------------------------------------

def test_exact_div_examples():
    x = IntPoly.x()
    assert exact_div(x * x - 1, x - 1) == x + 1
    R1 = IntPoly([0, 8, 0, 8, 1, -4, 6, -4, 1])
    assert exact_div(R1, R1) == IntPoly([1])


def test_exact_div_rejects_remainder():
    x = IntPoly.x()
    with pytest.raises(InexactDivisionError):
        exact_div(x * x + 1, x - 1)
    with pytest.raises(InexactDivisionError):
        exact_div(x * 2 + 1, x * 2)


@given(small_polys, small_polys)
def test_mul_matches_sympy(a, b):
    assert to_sympy(a * b).expand() == (to_sympy(a) * to_sympy(b)).expand()


def test_kronecker_multiplication_large():
    rng = random.Random(1)
    a = IntPoly([rng.randint(-10 ** 30, 10 ** 30) for _ in range(80)])
    b = IntPoly([rng.randint(-10 ** 30, 10 ** 30) for _ in range(70)])
    prod = a * b
    assert prod(3) == a(3) * b(3)
    assert prod(-7) == a(-7) * b(-7)


@given(small_polys, nonzero_polys)
def test_product_divides_back(a, b):
    assert exact_div(a * b, b) == a


@given(small_polys)
def test_text_round_trip(a):
    assert IntPoly.from_line(a.to_line()) == a


def test_from_line_rejects_bad_count():
    with pytest.raises(ValueError):
        IntPoly.from_line("2 1 2")


@given(nonzero_polys)
def test_mobius_transform_is_involution_up_to_scalar(p):
    twice = p.mobius_transform().mobius_transform()
    # (x-1)^d g((x+1)/(x-1)) applied twice multiplies by 2^d
    if p.mobius_transform().degree == p.degree:
        assert twice == p * (2 ** p.degree)


def test_scale_var_and_symmetric_mod():
    p = IntPoly([1, 1, 1])
    assert p.scale_var(2) == IntPoly([1, 2, 4])
    assert IntPoly([5, 6, 7]).symmetric_mod(6) == IntPoly([-1, 0, 1])


def test_primitive_gcd_matches_sympy():
    x = IntPoly.x()
    a = (x - 1) * (x + 2) * (x * 3 + 1)
    b = (x - 1) * (x * 3 + 1) * (x + 5)
    g = primitive_gcd(a, b)
    want = from_sympy(sympy.gcd(to_sympy(a), to_sympy(b)))
    assert g.primitive() == want.primitive() or g.primitive() == (-want).primitive()


# ---------------------------------------------------------------------------
# BiPoly and resultants
# ---------------------------------------------------------------------------

def test_linear_elimination():
    p = BiPoly.from_dict({(1, 0): 1, (0, 1): -1}, ("x", "t"))    # x - t
    q = BiPoly.from_dict({(1, 0): 1, (0, 1): -1}, ("t", "y"))    # t - y
    r = resultant_in(p, q, "t")
    xy = BiPoly.from_dict({(1, 0): 1, (0, 1): -1}, ("x", "y"))
    assert r.ordered(("x", "y")) in (xy, -xy)


def test_square_elimination():
    p = BiPoly.from_dict({(0, 2): 1, (1, 0): -1}, ("x", "t"))    # t^2 - x
    q = BiPoly.from_dict({(2, 0): 1, (0, 1): -1}, ("t", "y"))    # t^2 - y
    r = resultant_in(p, q, "t").ordered(("x", "y"))
    want = BiPoly.from_dict({(2, 0): 1, (1, 1): -2, (0, 2): 1}, ("x", "y"))
    assert r == want


def test_methods_agree_with_sympy():
    rng = random.Random(7)
    for _ in range(3):
        pt = {(i, j): rng.randint(-5, 5) for i in range(3) for j in range(3)}
        qt = {(i, j): rng.randint(-5, 5) for i in range(3) for j in range(4)}
        pt[(0, 2)] = 1
        qt[(0, 3)] = 2
        p = BiPoly.from_dict(pt, ("x", "t"))
        q = BiPoly.from_dict(qt, ("y", "t"))
        T = sympy.Symbol("t")
        sp = sum(c * X ** i * T ** j for (i, j), c in pt.items())
        sq = sum(c * Y ** i * T ** j for (i, j), c in qt.items())
        want = sympy.expand(sympy.resultant(sp, sq, T))
        for method in ("bareiss", "interp"):
            r = resultant_in(p, q, "t", method=method).ordered(("x", "y"))
            got = sum(c * X ** i * Y ** j for (i, j), c in r.terms().items())
            assert sympy.expand(got - want) == 0


def test_iterated_degree_16():
    from quarticdyn.tmap import f_poly
    r = resultant_in(f_poly("x", "x1"), f_poly("x1", "x2"), "x1")
    assert r.degree_in("x") == 16 and r.degree_in("x2") == 16


def test_univariate_resultant_and_int():
    a = IntPoly([-2, 0, 1])   # x^2 - 2
    b = IntPoly([-3, 0, 1])   # x^2 - 3
    assert resultant_int(a, b) == int(sympy.resultant(X ** 2 - 2, X ** 2 - 3, X))
    p = BiPoly.from_dict({(0, 2): 1, (1, 0): -1}, ("x", "t"))
    q = BiPoly.from_dict({(0, 2): 1, (0, 0): -1, (1, 0): -1}, ("x", "t"))
    r = resultant_univariate_in(p, q, "t")
    want = from_sympy(sympy.resultant(T_ ** 2 - X, T_ ** 2 - 1 - X, T_) + 0 * X)
    assert r == want


T_ = sympy.Symbol("t")


def test_newton_interpolation():
    p = IntPoly([3, -1, 0, 7])
    nodes = [0, 1, -1, 2]
    assert newton_interpolate(nodes, [p(v) for v in nodes]) == p


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

def test_factor_mod_q_examples():
    x2p1 = IntPoly([1, 0, 1])
    assert mp.factor_mod_q(x2p1, 5) == [(IntPoly([2, 1]), 1), (IntPoly([3, 1]), 1)]
    assert mp.factor_mod_q(x2p1, 7) == [(x2p1, 1)]


def test_factor_mod_2_of_x4_plus_x():
    # the monic part of R~_1 mod 2 is x^4 + x = x (x + 1) (x^2 + x + 1)
    f = mp.factor_mod_q(IntPoly([0, 1, 0, 0, 1]), 2)
    assert f == [(IntPoly([0, 1]), 1), (IntPoly([1, 1]), 1), (IntPoly([1, 1, 1]), 1)]


def test_factor_mod_q_rejects_vanishing_lead():
    with pytest.raises(mp.ModDomainError):
        mp.factor_mod_q(IntPoly([1, -1, 5, -8, 4]), 2)


@given(st.lists(st.integers(0, 12), min_size=2, max_size=9), st.sampled_from([2, 3, 5, 13, 10007]))
def test_factor_mod_q_against_sympy(coeffs, q):
    coeffs[-1] = 1
    p = IntPoly(coeffs)
    got = mp.factor_mod_q(p, q)
    assert all(g.is_monic() for g, _ in got)
    prod = IntPoly([1])
    for g, e in got:
        prod = prod * g ** e
    assert prod.mod(q) == p.mod(q)
    _, want = sympy.factor_list(to_sympy(p), modulus=q)
    assert sorted(e for _, e in want) == sorted(e for _, e in got)
    assert sorted(sympy.degree(g, X) for g, _ in want) == sorted(g.degree for g, _ in got)


def test_splits_completely():
    # x^2 - x + 2 splits modulo 11 = 2^2 + 7 and not modulo 3
    g = IntPoly([2, -1, 1])
    assert mp.splits_completely(g, 11)
    assert not mp.splits_completely(g, 3)


def test_large_prime_uses_object_arrays():
    q = next_prime(2 ** 61)
    p = IntPoly([-4, 0, 1])
    assert sorted(mp.factor_mod_q(p, q), key=repr) == sorted(
        [(IntPoly([q - 2, 1]), 1), (IntPoly([2, 1]), 1)], key=repr)


# ---------------------------------------------------------------------------
# primes and prime fields
# ---------------------------------------------------------------------------

@given(st.integers(2, 10 ** 6))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_large():
    assert is_prime(2 ** 61 - 1)
    assert not is_prime((2 ** 61 - 1) * (2 ** 31 - 1))


@given(st.integers(1, 10 ** 9))
def test_sqrt_mod(a):
    p = 1_000_000_009
    if pow(a, (p - 1) // 2, p) == 1:
        r = sqrt_mod(a, p)
        assert r * r % p == a % p


def test_prime_field_element_arithmetic():
    p = 97
    a = PrimeFieldElement(5, p)
    assert a * a.inverse() == 1
    assert (a / 5) == 1
    assert (1 / a) * 5 == 1
    assert (a ** 96) == 1
    with pytest.raises(ZeroDivisionError):
        PrimeFieldElement(0, p).inverse()


# ---------------------------------------------------------------------------
# factorization over Z
# ---------------------------------------------------------------------------

def test_factor_irreducible():
    assert factor_squarefree_over_Z(IntPoly([-2, 0, 1])) == [IntPoly([-2, 0, 1])]


def test_factor_p1(pipeline):
    from golden import P1_FACTORS
    assert factor_squarefree_over_Z(pipeline.Pn(1)) == P1_FACTORS


@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=4), min_size=1, max_size=3))
def test_factor_random_products_against_sympy(parts):
    polys = []
    for c in parts:
        c[-1] = c[-1] or 1
        polys.append(IntPoly(c))
    f = poly_product(polys)
    _, sym = sympy.factor_list(to_sympy(f))
    assume(not any(e > 1 for _, e in sym))
    content, factors = factor_over_Z(f)
    prod = poly_product(factors) * content
    assert prod == f or prod == -f
    assert sorted(g.degree for g in factors) == sorted(sympy.degree(g, X) for g, _ in sym)


def test_factor_rejects_repeated_factor():
    x = IntPoly.x()
    with pytest.raises(FactorDomainError):
        factor_squarefree_over_Z((x * x - 2) ** 2)


def test_hensel_lift_products():
    f = IntPoly([2, -1, 1]) * IntPoly([4, -2, 5, -4, 1])   # x^6 degree, monic
    fq = mp.factor_mod_q(f, 13)
    lifted, M = hensel_lift(f, [g for g, _ in fq], 13, 6)
    assert M >= 13 ** 6 and 13 ** round(math.log(M, 13)) == M
    assert poly_product(lifted).mod(M) == f.mod(M)


def test_mignotte_bound_dominates_factor_coefficients():
    from golden import P2_FACTORS
    f = poly_product(P2_FACTORS.values())
    B = mignotte_bound(f)
    assert all(g.max_norm() <= B for g in P2_FACTORS.values())
