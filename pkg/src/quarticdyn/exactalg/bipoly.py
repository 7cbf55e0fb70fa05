"""Bivariate integer polynomials on a dense coefficient grid.

``grid[i][j]`` is the coefficient of ``v0**i * v1**j`` where ``(v0, v1)`` are the
two variable names.  Trailing all-zero rows and columns are trimmed, so the grid
shape is always ``(deg_v0 + 1, deg_v1 + 1)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .intpoly import IntPoly, InexactDivisionError, mul_coeffs


def _trim_grid(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    rows = [list(r) for r in rows]
    while rows and not any(rows[-1]):
        rows.pop()
    if not rows:
        return ()
    width = 0
    for r in rows:
        for j in range(len(r) - 1, -1, -1):
            if r[j]:
                width = max(width, j + 1)
                break
    return tuple(tuple(int(c) for c in (r + [0] * width)[:width]) for r in rows)


class BiPoly:
    __slots__ = ("vars", "grid")

    def __init__(self, grid: Iterable[Sequence[int]], vars: tuple[str, str] = ("x", "y")):
        if len(vars) != 2 or vars[0] == vars[1]:
            raise ValueError(f"need two distinct variable names, got {vars!r}")
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "grid", _trim_grid(list(grid)))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def from_dict(cls, terms: dict[tuple[int, int], int], vars=("x", "y")) -> BiPoly:
        if not terms:
            return cls((), vars)
        dx = max(i for i, _ in terms)
        dy = max(j for _, j in terms)
        rows = [[0] * (dy + 1) for _ in range(dx + 1)]
        for (i, j), c in terms.items():
            rows[i][j] += c
        return cls(rows, vars)

    @classmethod
    def from_univariate(cls, p: IntPoly, var: str, other: str) -> BiPoly:
        """Embed a polynomial in ``var`` into the ring with variables (var, other)."""
        return cls([[c] for c in p.coeffs], (var, other))

    # -- shape --------------------------------------------------------------
    @property
    def degrees(self) -> tuple[int, int]:
        if not self.grid:
            return (-1, -1)
        return (len(self.grid) - 1, len(self.grid[0]) - 1)

    def degree_in(self, var: str) -> int:
        return self.degrees[self._index(var)]

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"{var!r} is not a variable of {self.vars}") from None

    def is_zero(self) -> bool:
        return not self.grid

    def terms(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, row in enumerate(self.grid) for j, c in enumerate(row) if c}

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self.grid == other.grid
        if self.vars == other.vars[::-1]:
            return self.grid == other.swap().grid
        return self.is_zero() and other.is_zero()

    def __hash__(self):
        return hash((self.vars, self.grid))

    def __repr__(self):
        return f"BiPoly(vars={self.vars}, degrees={self.degrees})"

    # -- variable handling -------------------------------------------------
    def swap(self) -> BiPoly:
        """Same polynomial with the grid transposed (variable order reversed)."""
        if not self.grid:
            return BiPoly((), self.vars[::-1])
        cols = list(zip(*self.grid))
        return BiPoly(cols, self.vars[::-1])

    def with_vars(self, vars: tuple[str, str]) -> BiPoly:
        """Rename variables positionally."""
        return BiPoly(self.grid, vars)

    def ordered(self, vars: tuple[str, str]) -> BiPoly:
        """Return the same polynomial stored with variable order ``vars``."""
        if self.vars == tuple(vars):
            return self
        if self.vars == tuple(vars)[::-1]:
            return self.swap()
        raise ValueError(f"variables {self.vars} do not match {vars}")

    def coefficients_in(self, var: str) -> list[IntPoly]:
        """Coefficients with respect to ``var`` as polynomials in the other variable."""
        p = self.ordered((var, self.other(var)))
        return [IntPoly(row) for row in p.grid]

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[IntPoly], var: str, other: str) -> BiPoly:
        return cls([list(c.coeffs) for c in coeffs], (var, other))

    def other(self, var: str) -> str:
        i = self._index(var)
        return self.vars[1 - i]

    # -- arithmetic ---------------------------------------------------------
    def _align(self, other: BiPoly) -> BiPoly:
        if not isinstance(other, BiPoly):
            raise TypeError(f"cannot combine BiPoly with {type(other).__name__}")
        if other.is_zero():
            return BiPoly((), self.vars)
        return other.ordered(self.vars)

    def __add__(self, other):
        if isinstance(other, int):
            other = BiPoly([[other]], self.vars)
        other = self._align(other)
        dx = max(len(self.grid), len(other.grid))
        dy = max(len(self.grid[0]) if self.grid else 0, len(other.grid[0]) if other.grid else 0)
        rows = [[0] * dy for _ in range(dx)]
        for src in (self.grid, other.grid):
            for i, row in enumerate(src):
                r = rows[i]
                for j, c in enumerate(row):
                    r[j] += c
        return BiPoly(rows, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly([[-c for c in row] for row in self.grid], self.vars)

    def __sub__(self, other):
        if isinstance(other, int):
            other = BiPoly([[other]], self.vars)
        return self + (-self._align(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BiPoly([[c * other for c in row] for row in self.grid], self.vars)
        other = self._align(other)
        if self.is_zero() or other.is_zero():
            return BiPoly((), self.vars)
        # Kronecker substitution in the second variable reduces to univariate products.
        wa = len(self.grid[0])
        wb = len(other.grid[0])
        stride = wa + wb - 1
        flat_a = []
        for row in self.grid:
            flat_a.extend(row)
            flat_a.extend([0] * (stride - wa))
        flat_b = []
        for row in other.grid:
            flat_b.extend(row)
            flat_b.extend([0] * (stride - wb))
        prod = mul_coeffs(flat_a, flat_b)
        nrows = len(self.grid) + len(other.grid) - 1
        prod.extend([0] * (nrows * stride - len(prod)))
        rows = [prod[i * stride:(i + 1) * stride] for i in range(nrows)]
        return BiPoly(rows, self.vars)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = BiPoly([[1]], self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, den: BiPoly) -> BiPoly:
        """Exact quotient over Z[v0, v1]; raises InexactDivisionError otherwise."""
        den = self._align(den)
        if den.is_zero():
            raise ZeroDivisionError("BiPoly division by zero")
        # Treat as univariate in v0 with coefficients in Z[v1].
        num_c = [IntPoly(r) for r in self.grid]
        den_c = [IntPoly(r) for r in den.grid]
        dd = len(den_c) - 1
        if len(num_c) - 1 < dd:
            if self.is_zero():
                return self
            raise InexactDivisionError("degree of divisor exceeds dividend")
        quot = [IntPoly()] * (len(num_c) - dd)
        lead = den_c[-1]
        for k in range(len(num_c) - 1 - dd, -1, -1):
            c = num_c[k + dd]
            if c.is_zero():
                continue
            q = c.exact_div(lead)
            quot[k] = q
            for j, dj in enumerate(den_c):
                if dj:
                    num_c[k + j] = num_c[k + j] - q * dj
        if any(not c.is_zero() for c in num_c[:dd]):
            raise InexactDivisionError("nonzero remainder in bivariate division")
        return BiPoly([list(q.coeffs) for q in quot], self.vars)

    # -- evaluation ---------------------------------------------------------
    def __call__(self, a, b):
        """Evaluate at v0 = a, v1 = b (any ring elements supporting + and *)."""
        acc = None
        for row in reversed(self.grid):
            inner = IntPoly(row)(b)
            acc = inner if acc is None else acc * a + inner
        return 0 if acc is None else acc

    def substitute(self, var: str, value: int) -> IntPoly:
        """Specialize ``var`` to an integer; returns a polynomial in the other variable."""
        coeffs = self.coefficients_in(var)
        acc = IntPoly()
        for c in reversed(coeffs):
            acc = acc * value + c
        return acc

    def diagonal(self) -> IntPoly:
        """p(t, t) as a univariate polynomial."""
        out: list[int] = []
        for i, row in enumerate(self.grid):
            for j, c in enumerate(row):
                if c:
                    if i + j >= len(out):
                        out.extend([0] * (i + j + 1 - len(out)))
                    out[i + j] += c
        return IntPoly(out)

    def mod(self, q: int) -> BiPoly:
        return BiPoly([[c % q for c in row] for row in self.grid], self.vars)

    def max_norm(self) -> int:
        return max((abs(c) for row in self.grid for c in row), default=0)

    # -- text format --------------------------------------------------------
    def to_lines(self) -> list[str]:
        dx, dy = self.degrees
        lines = [f"{dx} {dy}"]
        for row in self.grid:
            lines.append(" ".join(str(c) for c in row))
        return lines

    @classmethod
    def from_lines(cls, lines: Sequence[str], vars=("x", "y")) -> BiPoly:
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError("bivariate header must be 'dx dy'")
        dx, dy = int(header[0]), int(header[1])
        if dx < 0:
            return cls((), vars)
        rows = []
        for line in lines[1:dx + 2]:
            row = [int(t) for t in line.split()]
            if len(row) != dy + 1:
                raise ValueError(f"expected {dy + 1} coefficients, got {len(row)}")
            rows.append(row)
        if len(rows) != dx + 1:
            raise ValueError(f"expected {dx + 1} rows, got {len(rows)}")
        p = cls(rows, vars)
        if p.degrees != (dx, dy):
            raise ValueError(f"declared degrees {(dx, dy)} but found {p.degrees}")
        return p
