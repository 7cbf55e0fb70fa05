"""Iterated resultants of the curve and their minimal-period parts.

R^(1)(x, x1) = f(x, x1)
R^(k)(x, xk) = Res_{x_{k-1}}(R^(k-1)(x, x_{k-1}), f(x_{k-1}, xk))
R_n(x)       = R^(n)(x, x)
P_n          = prod_{k | n} R_k^mu(n/k)

The tilde family uses f1(x, y) = f(2x, 2y)/16 instead of f.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .exactalg.bipoly import BiPoly
from .exactalg.intpoly import IntPoly, InexactDivisionError, exact_div, poly_product
from .exactalg.resultant import resultant_in, resultant_univariate_in
from .tmap import f1_poly, f_poly

PIPELINE_VERSION = "1"
DEFAULT_MAX_LEVEL = 4
CACHE_ENV = "QUARTICDYN_CACHE_DIR"
KINDS = ("R_bi", "R_tilde_bi", "R", "R_tilde", "P", "P_tilde")


class CapacityError(RuntimeError):
    pass


class PipelineIntegrityError(RuntimeError):
    pass


class CacheIntegrityError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# number theory helpers
# ---------------------------------------------------------------------------

def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def primitive_count(n: int, base: int = 4) -> int:
    """sum_{k | n} mu(n/k) base^k: elements of exact degree n over F_base."""
    return sum(mobius(n // k) * base ** k for k in divisors(n))


def expected_degree_P(n: int) -> int:
    return 2 * primitive_count(n)


# ---------------------------------------------------------------------------
# disk cache
# ---------------------------------------------------------------------------

def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "quarticdyn"


@dataclass
class ResultantCacheEntry:
    kind: str
    n: int
    payload: object  # IntPoly or BiPoly
    version: str = PIPELINE_VERSION

    def lines(self) -> list[str]:
        head = f"{self.kind} {self.n} {self.version}"
        if isinstance(self.payload, BiPoly):
            return [head] + self.payload.to_lines()
        return [head, self.payload.to_line()]

    @classmethod
    def parse(cls, text: str) -> ResultantCacheEntry:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty cache file")
        parts = lines[0].split()
        if len(parts) != 3 or parts[0] not in KINDS:
            raise ValueError(f"bad cache header {lines[0]!r}")
        kind, n, version = parts[0], int(parts[1]), parts[2]
        if kind.endswith("_bi"):
            payload = BiPoly.from_lines(lines[1:], ("x", f"x{n}"))
        else:
            if len(lines) != 2:
                raise ValueError("univariate cache entry must have one polynomial line")
            payload = IntPoly.from_line(lines[1])
        return cls(kind, n, payload, version)


def check_entry(entry: ResultantCacheEntry) -> None:
    """Degree and leading-coefficient invariants for a cache entry."""
    n, p, kind = entry.n, entry.payload, entry.kind
    if kind in ("R_bi", "R_tilde_bi"):
        if p.degrees != (4 ** n, 4 ** n):
            raise CacheIntegrityError(f"{kind} {n}: degrees {p.degrees}, expected {(4 ** n, 4 ** n)}")
        return
    want = 2 * 4 ** n if kind in ("R", "R_tilde") else expected_degree_P(n)
    if p.degree != want:
        raise CacheIntegrityError(f"{kind} {n}: degree {p.degree}, expected {want}")
    if kind in ("R", "P") and p.lc != 1:
        raise CacheIntegrityError(f"{kind} {n}: not monic")
    if kind == "R_tilde" and p.lc != 2 ** (4 ** n):
        raise CacheIntegrityError(f"{kind} {n}: leading coefficient is not 2^(4^n)")


class DiskCache:
    def __init__(self, root):
        self.root = Path(root)

    def path(self, kind: str, n: int) -> Path:
        return self.root / f"{kind}_{n}.txt"

    def load(self, kind: str, n: int):
        path = self.path(kind, n)
        if not path.exists():
            return None
        try:
            entry = ResultantCacheEntry.parse(path.read_text())
        except (ValueError, IndexError) as exc:
            raise CacheIntegrityError(f"corrupt cache entry {path}: {exc}") from exc
        if entry.version != PIPELINE_VERSION or entry.kind != kind or entry.n != n:
            return None
        check_entry(entry)
        return entry.payload

    def store(self, kind: str, n: int, payload) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        text = "\n".join(ResultantCacheEntry(kind, n, payload).lines()) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".txt")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self.path(kind, n))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def entries(self) -> list[Path]:
        if not self.root.exists():
            return []
        return sorted(p for p in self.root.glob("*.txt") if not p.name.startswith(".tmp-"))

    def verify(self) -> list[tuple[str, str]]:
        """(file name, status) for every entry; raises on the first corrupt one."""
        out = []
        for path in self.entries():
            try:
                entry = ResultantCacheEntry.parse(path.read_text())
                check_entry(entry)
            except (ValueError, IndexError, CacheIntegrityError) as exc:
                raise CacheIntegrityError(f"corrupt cache entry {path}: {exc}") from exc
            out.append((path.name, "ok"))
        return out

    def clear(self) -> int:
        count = 0
        for path in self.entries():
            path.unlink()
            count += 1
        return count


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------

@dataclass
class Pipeline:
    """Computes and memoizes the resultant family, optionally backed by a disk cache."""

    cache_dir: object = None
    max_level: int = DEFAULT_MAX_LEVEL
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.disk = DiskCache(self.cache_dir) if self.cache_dir is not None else None

    def _check_level(self, n: int):
        if n < 1:
            raise ValueError(f"level must be >= 1, got {n}")
        if n > self.max_level:
            raise CapacityError(f"level {n} exceeds the configured maximum {self.max_level}")

    def _get(self, kind: str, n: int, compute, persist: bool = True):
        key = (kind, n)
        if key in self._memo:
            return self._memo[key]
        value = self.disk.load(kind, n) if self.disk else None
        if value is None:
            value = compute()
            if self.disk and persist:
                self.disk.store(kind, n, value)
        self._memo[key] = value
        return value

    def _base(self, tilde: bool):
        return f1_poly if tilde else f_poly

    def iterated_resultant(self, n: int, tilde: bool = False) -> BiPoly:
        """R^(n)(x, x_n) as a BiPoly in variables (x, f"x{n}")."""
        self._check_level(n)
        base = self._base(tilde)
        kind = "R_tilde_bi" if tilde else "R_bi"

        def compute():
            if n == 1:
                return base("x", "x1")
            prev = self.iterated_resultant(n - 1, tilde)
            res = resultant_in(prev, base(f"x{n - 1}", f"x{n}"), f"x{n - 1}")
            return res.ordered(("x", f"x{n}"))

        return self._get(kind, n, compute)

    def _R(self, n: int, tilde: bool) -> IntPoly:
        self._check_level(n)
        base = self._base(tilde)
        kind = "R_tilde" if tilde else "R"

        def compute():
            if n == 1:
                return base("x", "x1").diagonal()
            # Specializing x_n = x commutes with the last elimination because the
            # leading coefficient of f(x_{n-1}, x_n) in x_{n-1} is a constant
            # times x_n^4, which stays nonzero.
            prev = self.iterated_resultant(n - 1, tilde)
            return resultant_univariate_in(prev, base(f"x{n - 1}", "x"), f"x{n - 1}")

        return self._get(kind, n, compute)

    def Rn(self, n: int) -> IntPoly:
        return self._R(n, False)

    def Rn_tilde(self, n: int) -> IntPoly:
        return self._R(n, True)

    def _P(self, n: int, tilde: bool) -> IntPoly:
        self._check_level(n)
        kind = "P_tilde" if tilde else "P"

        def compute():
            num, den = [], []
            for k in divisors(n):
                mu = mobius(n // k)
                if mu == 1:
                    num.append(self._R(k, tilde))
                elif mu == -1:
                    den.append(self._R(k, tilde))
            try:
                return exact_div(poly_product(num), poly_product(den))
            except InexactDivisionError as exc:
                raise PipelineIntegrityError(f"Mobius quotient for level {n} is inexact") from exc

        return self._get(kind, n, compute)

    def Pn(self, n: int) -> IntPoly:
        return self._P(n, False)

    def Pn_tilde(self, n: int) -> IntPoly:
        return self._P(n, True)

    def verify_congruences(self, n_max: int) -> list[dict]:
        """Degree, monicity, mod-2 and scaling checks for levels 1..n_max."""
        report = []

        def record(identity, n, ok, detail=None):
            entry = {"identity": identity, "n": n, "ok": bool(ok)}
            if not ok and detail is not None:
                entry["counterexample"] = detail
            report.append(entry)

        for n in range(1, n_max + 1):
            R = self.Rn(n)
            Rt = self.Rn_tilde(n)
            record("degree R_n = 2*4^n", n, R.degree == 2 * 4 ** n, R.degree)
            record("R_n monic", n, R.lc == 1, R.lc)
            target = IntPoly({4 ** n: 1, 1: 1}.get(i, 0) for i in range(4 ** n + 1))
            red = Rt.mod(2)
            record("R~_n = x^(4^n) + x mod 2", n, red == target, str(red) if red.degree < 40 else red.degree)
            lhs = R.scale_var(2)
            rhs = Rt * (2 ** (4 ** n))
            record("R_n(2x) = 2^(4^n) R~_n(x)", n, lhs == rhs,
                   None if lhs == rhs else (lhs - rhs).degree)
            bi = self.iterated_resultant(n)
            bi_red = bi.mod(2)
            shape = BiPoly([[0] * (4 ** n) + [c] for c in _binomial_row(4 ** n)], bi.vars).mod(2)
            record("R^(n) = x_n^(4^n) (x+1)^(4^n) mod 2", n, bi_red == shape)
            P = self.Pn(n)
            record("deg P_n = 2 sum mu(n/k) 4^k", n, P.degree == expected_degree_P(n), P.degree)
            recon = poly_product(self.Pn(k) for k in divisors(n))
            record("prod_{k|n} P_k = R_n", n, recon == R)
        return report


def _binomial_row(e: int) -> list[int]:
    from math import comb
    return [comb(e, i) for i in range(e + 1)]


def involution_partner(g: IntPoly) -> IntPoly:
    """(x-1)^deg g * g((x+1)/(x-1)), primitive with positive leading coefficient."""
    return g.mobius_transform().primitive()


def tilde_factor(g: IntPoly) -> IntPoly:
    """Primitive part of g(2x): the factor of P~_n matching a factor g of P_n."""
    return g.scale_var(2).primitive()


_DEFAULT = None


def default_pipeline() -> Pipeline:
    global _DEFAULT
    if _DEFAULT is None:
        env = os.environ.get(CACHE_ENV)
        _DEFAULT = Pipeline(cache_dir=env)
    return _DEFAULT


def iterated_resultant(n: int, tilde: bool = False) -> BiPoly:
    return default_pipeline().iterated_resultant(n, tilde)


def Rn(n: int) -> IntPoly:
    return default_pipeline().Rn(n)


def Rn_tilde(n: int) -> IntPoly:
    return default_pipeline().Rn_tilde(n)


def Pn(n: int) -> IntPoly:
    return default_pipeline().Pn(n)


def Pn_tilde(n: int) -> IntPoly:
    return default_pipeline().Pn_tilde(n)


def verify_congruences(n_max: int) -> list[dict]:
    return default_pipeline().verify_congruences(n_max)
