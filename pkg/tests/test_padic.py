import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quarticdyn.exactalg.intpoly import IntPoly
from quarticdyn.padic import (
    VAL_INFINITY,
    ConvergenceDomainError,
    NonInvertibleError,
    PrecisionError,
    ResidueElement,
    ScaledElement,
    UnramifiedElement,
    binomial_sqrt_one_plus,
    catalan,
    embed,
    extension,
    frobenius,
    invert,
    lift_residue,
    newton_root,
    reduce_mod2,
    teichmuller_lift,
    val2,
)

N = 64
degrees = st.sampled_from([1, 2, 3, 4, 6])


@st.composite
def elements(draw, m=None, N=N):
    m = draw(degrees) if m is None else m
    coeffs = [draw(st.integers(0, 2 ** N - 1)) for _ in range(m)]
    return UnramifiedElement(m, N, coeffs)


@st.composite
def units(draw, m=None, N=N):
    a = draw(elements(m, N))
    if a.coeffs[0] % 2 == 0 and all(c % 2 == 0 for c in a.coeffs):
        a = a + 1
    return a


def test_extension_moduli_are_lowest_irreducibles():
    want = {1: (0, 1), 2: (1, 1, 1), 3: (1, 1, 0, 1), 4: (1, 1, 0, 0, 1), 6: (1, 1, 0, 0, 0, 0, 1)}
    for m, mod in want.items():
        assert extension(m).modulus == mod


def test_val2_examples():
    for m in (1, 2, 4):
        assert val2(UnramifiedElement.from_int(m, N, 2)) == 1
        assert val2(UnramifiedElement(m, N, [1] + [0] * (m - 1))) == 0
    assert val2(UnramifiedElement(2, N, [0])) == VAL_INFINITY
    # the root of x^2 - x + 2 near 0 has valuation 1, so 2 xi has valuation 2
    g = IntPoly([2, -1, 1])
    xi = newton_root(g, UnramifiedElement(2, N, [0]))
    assert val2(xi) == 1
    assert val2(xi * 2) == 2


def test_invert_examples():
    one = UnramifiedElement.from_int(1, N, 1)
    assert invert(one) == one
    three = UnramifiedElement.from_int(1, N, 3)
    assert invert(three).coeffs[0] == pow(3, -1, 2 ** N)
    u = UnramifiedElement(2, N, [5, 6])
    assert (invert(u) * u).agrees(1, N)
    with pytest.raises(NonInvertibleError):
        invert(UnramifiedElement(2, N, [2, 4]))


@given(units())
def test_invert_property(u):
    assert (invert(u) * u).agrees(1, N)


def test_binomial_sqrt_examples():
    zero = UnramifiedElement(1, N, [0])
    assert binomial_sqrt_one_plus(zero).agrees(1, N - 1)
    t = UnramifiedElement(2, N, [16 * 3, 16 * 5])
    s = binomial_sqrt_one_plus(t)
    half = t.div_pow2(1)
    # the next term after 1 + t/2 is -t^2/8, of valuation 5
    assert s.agrees(half + 1, 5)
    assert not s.agrees(half + 1, 6)
    with pytest.raises(ConvergenceDomainError):
        binomial_sqrt_one_plus(UnramifiedElement(1, N, [4]))


@given(elements(), st.integers(3, 10))
def test_binomial_sqrt_squares_back(a, v):
    t = a.mul_pow2(v).with_precision(N)
    if val2(t) == VAL_INFINITY:
        return
    s = binomial_sqrt_one_plus(t)
    assert (s * s - (t + 1)).agrees(0, s.k)


def test_teichmuller_examples():
    one = ResidueElement(1, 1)
    assert teichmuller_lift(one, N).agrees(1, N)
    omega = teichmuller_lift(ResidueElement(2, 0b10), N)
    assert (omega ** 3).agrees(1, N)
    assert not omega.agrees(1, N)


@given(st.sampled_from([2, 3, 4, 6]), st.data())
def test_teichmuller_is_root_of_unity(m, data):
    bits = data.draw(st.integers(1, 2 ** m - 1))
    r = ResidueElement(m, bits)
    w = teichmuller_lift(r, N)
    assert reduce_mod2(w) == r
    assert (w ** (2 ** m - 1)).agrees(1, N)


@given(st.data())
def test_precision_tags_are_sound(data):
    """Perturbing inputs below their tags never changes outputs below the output tag."""
    m = data.draw(degrees)
    a = data.draw(elements(m)).with_precision(data.draw(st.integers(1, N)))
    b = data.draw(elements(m)).with_precision(data.draw(st.integers(1, N)))
    da = UnramifiedElement(m, N, [data.draw(st.integers(0, 2 ** N)) << a.k for _ in range(m)])
    db = UnramifiedElement(m, N, [data.draw(st.integers(0, 2 ** N)) << b.k for _ in range(m)])
    a2 = UnramifiedElement(m, N, (a + da).coeffs, a.k)
    b2 = UnramifiedElement(m, N, (b + db).coeffs, b.k)
    for op in (lambda x, y: x + y, lambda x, y: x - y, lambda x, y: x * y):
        r1, r2 = op(a, b), op(a2, b2)
        assert r1.agrees(r2, min(r1.k, r2.k))


def test_integer_multiplication_gains_precision():
    a = UnramifiedElement(1, N, [5], k=10)
    assert (a * 8).k == 13
    assert a.mul_pow2(3).k == 13
    assert a.mul_pow2(3).div_pow2(3).k == 10


@given(st.data())
def test_frobenius_is_ring_map_lifting_squaring(data):
    m = data.draw(st.sampled_from([2, 3, 4, 6]))
    a, b = data.draw(elements(m)), data.draw(elements(m))
    fa, fb = frobenius(a), frobenius(b)
    assert frobenius(a * b).agrees(fa * fb, N)
    assert frobenius(a + b).agrees(fa + fb, N)
    assert reduce_mod2(fa) == reduce_mod2(a) * reduce_mod2(a)
    x = a
    for _ in range(m):
        x = frobenius(x)
    assert x.agrees(a, N)


@given(st.data())
def test_embed_is_ring_map(data):
    target = data.draw(st.sampled_from([4, 6]))
    a, b = data.draw(elements(2)), data.draw(elements(2))
    assert embed(a * b, target).agrees(embed(a, target) * embed(b, target), N)
    assert embed(a + b, target).agrees(embed(a, target) + embed(b, target), N)


def test_embed_rejects_non_divisor():
    with pytest.raises(ValueError):
        embed(UnramifiedElement(4, N, [1]), 6)


@given(elements())
def test_text_round_trip(a):
    assert UnramifiedElement.from_line(a.to_line()) == a


def test_from_line_rejects_bad_input():
    with pytest.raises(ValueError):
        UnramifiedElement.from_line("2 8 8 1")
    with pytest.raises(ValueError):
        UnramifiedElement.from_line("1 8 9 1")


def test_residue_field_arithmetic():
    rng = random.Random(3)
    for m in (2, 3, 4, 6):
        for _ in range(20):
            r = ResidueElement(m, rng.randrange(1, 2 ** m))
            assert r * r.inverse() == ResidueElement(m, 1)
            assert r ** (2 ** m) == r
    with pytest.raises(NonInvertibleError):
        ResidueElement(2, 0).inverse()


def test_lift_and_reduce():
    r = ResidueElement.from_coords([1, 0, 1, 1])
    assert reduce_mod2(lift_residue(r, N)) == r
    with pytest.raises(PrecisionError):
        reduce_mod2(UnramifiedElement(1, N, [1], k=0))


def test_catalan_numbers():
    assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]


def test_scaled_element():
    u = UnramifiedElement(2, N, [3, 2])
    s = ScaledElement(u, -3)
    assert (s * s.inverse()).unit.agrees(1, N)
    assert ScaledElement.from_element(u.mul_pow2(4)).scale == 4
    with pytest.raises(NonInvertibleError):
        s.to_integral()
    with pytest.raises(ValueError):
        ScaledElement(UnramifiedElement(2, N, [2]), 0)
