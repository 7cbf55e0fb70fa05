"""Resultants over Z[x] and Z[u, w].

Two routes compute bivariate resultants:

* fraction-free elimination (Bareiss) on the Sylvester matrix with bivariate
  polynomial entries, used for small systems;
* evaluation at integer points, univariate integer resultants by the
  subresultant PRS, and exact Newton interpolation, used when the Sylvester
  matrix is larger than ``INTERP_THRESHOLD``.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .bipoly import BiPoly
from .intpoly import IntPoly, pseudo_remainder


class ResultantDomainError(ValueError):
    pass


INTERP_THRESHOLD = 16


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------

def resultant_int(a: IntPoly, b: IntPoly) -> int:
    """Res(a, b) for integer polynomials via the subresultant PRS."""
    if a.is_zero() or b.is_zero():
        return 0
    if a.degree == 0 and b.degree == 0:
        return 1
    if a.degree == 0:
        return a.lc ** b.degree
    if b.degree == 0:
        return b.lc ** a.degree
    ca, cb = a.content(), b.content()
    if a.lc < 0:
        ca = -ca
    if b.lc < 0:
        cb = -cb
    A, B = a // ca, b // cb
    t = ca ** B.degree * cb ** A.degree
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -s
    g = h = 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = pseudo_remainder(A, B)
        A = B
        if R.is_zero():
            return 0
        B = R // (g * h ** delta)
        g = A.lc
        if delta == 1:
            h = g
        elif delta > 1:
            h = g ** delta // h ** (delta - 1)
        if B.degree == 0:
            dA = A.degree
            if dA == 0:
                return s * t * h
            hh = B.lc ** dA
            if dA > 1:
                hh //= h ** (dA - 1)
            return s * t * hh


def sylvester_matrix(a: Sequence, b: Sequence, zero) -> list[list]:
    """Sylvester matrix from coefficient lists given lowest degree first."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    ra = list(reversed(a))
    rb = list(reversed(b))
    for i in range(n):
        rows.append([zero] * i + ra + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + rb + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: list[list], div: Callable, is_zero: Callable, one):
    """Determinant by fraction-free elimination; ``div`` must be exact division."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0 * one
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                val = pivot * row_i[j] - mik * row_k[j]
                row_i[j] = val if prev is one else div(val, prev)
            row_i[k] = 0 * one
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------

def newton_interpolate(nodes: Sequence[int], values: Sequence[int]) -> IntPoly:
    """Integer-coefficient interpolant through (nodes, values).

    All divided differences are integers when the data come from a polynomial
    in Z[x] of degree < len(nodes); a fractional quotient raises.
    """
    n = len(nodes)
    dd = list(values)
    coef = [dd[0]]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            num = dd[i] - dd[i - 1]
            den = nodes[i] - nodes[i - level]
            q, r = divmod(num, den)
            if r:
                raise ArithmeticError("interpolant does not have integer coefficients")
            dd[i] = q
        coef.append(dd[level])
    # Horner on the Newton basis.
    acc = [coef[-1]]
    for k in range(n - 2, -1, -1):
        node = nodes[k]
        nxt = [0] * (len(acc) + 1)
        for i, c in enumerate(acc):
            nxt[i + 1] += c
            nxt[i] -= node * c
        nxt[0] += coef[k]
        acc = nxt
    return IntPoly(acc)


def _nodes(count: int, bad: Callable[[int], bool]) -> list[int]:
    out = []
    k = 0
    while len(out) < count:
        for cand in ((0,) if k == 0 else (k, -k)):
            if not bad(cand):
                out.append(cand)
                if len(out) == count:
                    break
        k += 1
    return out


# ---------------------------------------------------------------------------
# bivariate
# ---------------------------------------------------------------------------

def _check_inputs(p: BiPoly, q: BiPoly, var: str):
    for name, poly in (("first", p), ("second", q)):
        if var not in poly.vars:
            raise ResultantDomainError(f"{name} input does not involve {var!r}")
        if poly.degree_in(var) < 1:
            raise ResultantDomainError(f"{name} input has degree < 1 in {var!r}")


def _resultant_bareiss(p: BiPoly, q: BiPoly, var: str) -> BiPoly:
    u, w = p.other(var), q.other(var)
    out_vars = (u, w) if u != w else (u, var)
    zero = BiPoly((), out_vars)
    one = BiPoly([[1]], out_vars)

    def lift(c: IntPoly, name: str) -> BiPoly:
        if name == out_vars[0]:
            return BiPoly([[x] for x in c.coeffs], out_vars)
        return BiPoly([list(c.coeffs)], out_vars)

    pc = [lift(c, u) for c in p.coefficients_in(var)]
    qc = [lift(c, w) for c in q.coefficients_in(var)]
    M = sylvester_matrix(pc, qc, zero)
    return bareiss_det(M, lambda a, b: a.exact_div(b), lambda a: a.is_zero(), one)


def _resultant_interp(p: BiPoly, q: BiPoly, var: str) -> BiPoly:
    u, w = p.other(var), q.other(var)
    pc = p.coefficients_in(var)  # polynomials in u
    qc = q.coefficients_in(var)  # polynomials in w
    dp, dq = len(pc) - 1, len(qc) - 1
    if u == w:
        bound = max(c.degree for c in pc) * dq + max(c.degree for c in qc) * dp
        nodes = _nodes(bound + 1, lambda a: pc[-1](a) == 0 or qc[-1](a) == 0)
        vals = []
        for a in nodes:
            pa = IntPoly([c(a) for c in pc])
            qa = IntPoly([c(a) for c in qc])
            vals.append(resultant_int(pa, qa))
        res = newton_interpolate(nodes, vals)
        return BiPoly([[c] for c in res.coeffs], (u, var))

    du = max(c.degree for c in pc) * dq
    dw = max(c.degree for c in qc) * dp
    a_nodes = _nodes(max(du, 0) + 1, lambda a: pc[-1](a) == 0)
    b_nodes = _nodes(max(dw, 0) + 1, lambda b: qc[-1](b) == 0)
    q_at = [IntPoly([c(b) for c in qc]) for b in b_nodes]
    per_a = []
    for a in a_nodes:
        pa = IntPoly([c(a) for c in pc])
        vals = [resultant_int(pa, qb) for qb in q_at]
        per_a.append(newton_interpolate(b_nodes, vals))
    width = dw + 1
    cols = []
    for j in range(width):
        cols.append(newton_interpolate(a_nodes, [r[j] for r in per_a]))
    rows = [[cols[j][i] for j in range(width)] for i in range(du + 1)]
    return BiPoly(rows, (u, w))


def resultant_in(p: BiPoly, q: BiPoly, var: str, method: str = "auto") -> BiPoly:
    """Resultant of ``p`` and ``q`` with respect to the shared variable ``var``.

    The result lives in the two remaining variables ``(other(p), other(q))``.
    When both inputs share the same remaining variable the result is returned
    as a BiPoly of degree zero in ``var``.
    """
    _check_inputs(p, q, var)
    if method == "auto":
        size = p.degree_in(var) + q.degree_in(var)
        method = "interp" if size > INTERP_THRESHOLD else "bareiss"
    if method == "bareiss":
        res = _resultant_bareiss(p, q, var)
    elif method == "interp":
        res = _resultant_interp(p, q, var)
    else:
        raise ValueError(f"unknown resultant method {method!r}")
    return res


def resultant_univariate_in(p: BiPoly, q: BiPoly, var: str, method: str = "auto") -> IntPoly:
    """Resultant when both inputs share the same remaining variable."""
    if p.other(var) != q.other(var):
        raise ResultantDomainError("inputs do not share the remaining variable")
    res = resultant_in(p, q, var, method)
    return res.substitute(var, 0)
