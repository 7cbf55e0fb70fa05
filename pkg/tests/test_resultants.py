import pytest
import sympy

from golden import P1_FACTORS, R1_TILDE_FACTORS
from quarticdyn.exactalg.bipoly import BiPoly
from quarticdyn.exactalg.intpoly import IntPoly, poly_product
from quarticdyn.resultants import (
    CacheIntegrityError,
    CapacityError,
    DiskCache,
    Pipeline,
    ResultantCacheEntry,
    check_entry,
    divisors,
    expected_degree_P,
    involution_partner,
    mobius,
    primitive_count,
    tilde_factor,
)
from quarticdyn.tmap import f_poly


def test_number_theory_helpers():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert [primitive_count(n) for n in (1, 2, 3, 4)] == [4, 12, 60, 240]
    assert [expected_degree_P(n) for n in (1, 2, 3)] == [8, 24, 120]


def test_level_one(pipeline):
    assert pipeline.iterated_resultant(1) == f_poly("x", "x1")
    R1 = pipeline.Rn(1)
    assert R1 == poly_product(P1_FACTORS)
    assert pipeline.Pn(1) == R1
    assert pipeline.Rn_tilde(1) == poly_product(R1_TILDE_FACTORS)


def test_level_two_against_sympy(pipeline):
    x, x1, x2 = sympy.symbols("x x1 x2")

    def f(a, b):
        return b ** 4 * (a - 1) ** 4 + 8 * a * (a * a + 1)

    want = sympy.Poly(sympy.resultant(f(x, x1), f(x1, x2), x1), x, x2)
    got = pipeline.iterated_resultant(2)
    assert got.degrees == (16, 16)
    terms = {(i, j): c for (i, j), c in got.terms().items()}
    sym = {m: int(c) for m, c in want.terms()}
    assert terms == sym or terms == {k: -v for k, v in sym.items()}


def test_shortcut_matches_diagonal(pipeline):
    for n in (1, 2):
        assert pipeline.iterated_resultant(n).diagonal() == pipeline.Rn(n)


def test_scaling_and_degrees(pipeline):
    R2, R2t = pipeline.Rn(2), pipeline.Rn_tilde(2)
    assert R2.scale_var(2) == R2t * 2 ** 16
    assert R2t.mod(2) == IntPoly([0, 1] + [0] * 14 + [1])
    assert pipeline.Pn(2).degree == 24
    assert pipeline.Pn(2).is_monic()


def test_level_three(pipeline):
    P3 = pipeline.Pn(3)
    assert P3.degree == 120
    assert poly_product(pipeline.Pn(k) for k in divisors(3)) == pipeline.Rn(3)
    assert pipeline.Rn(3).is_monic()


def test_congruence_report(pipeline):
    report = pipeline.verify_congruences(3)
    assert report and all(r["ok"] for r in report)
    names = {r["identity"] for r in report}
    assert "R~_n = x^(4^n) + x mod 2" in names
    assert "R^(n) = x_n^(4^n) (x+1)^(4^n) mod 2" in names


def test_capacity():
    with pytest.raises(CapacityError):
        Pipeline(max_level=2).Rn(3)
    with pytest.raises(ValueError):
        Pipeline().Rn(0)


def test_involution_and_tilde_factors():
    x, x1, b7, b15 = P1_FACTORS
    assert involution_partner(x) == x1
    assert involution_partner(x1) == x
    assert involution_partner(b7) == b7
    assert involution_partner(b15) == b15
    assert [tilde_factor(g) for g in P1_FACTORS] == R1_TILDE_FACTORS


def test_disk_cache_round_trip(tmp_path):
    cache = DiskCache(tmp_path)
    R1 = poly_product(P1_FACTORS)
    cache.store("R", 1, R1)
    assert cache.load("R", 1) == R1
    bi = f_poly("x", "x1")
    cache.store("R_bi", 1, bi)
    assert cache.load("R_bi", 1) == bi
    assert [p.name for p in cache.entries()] == ["R_1.txt", "R_bi_1.txt"]
    assert cache.verify() == [("R_1.txt", "ok"), ("R_bi_1.txt", "ok")]
    assert cache.clear() == 2
    assert cache.entries() == []


def test_disk_cache_detects_corruption(tmp_path):
    cache = DiskCache(tmp_path)
    cache.store("R", 1, poly_product(P1_FACTORS))
    path = cache.path("R", 1)
    path.write_text("R 1 1\n3 1 2 3 4 5\n")
    with pytest.raises(CacheIntegrityError, match="R_1.txt"):
        cache.load("R", 1)
    with pytest.raises(CacheIntegrityError, match="R_1.txt"):
        cache.verify()
    # well-formed but wrong degree
    path.write_text("R 1 1\n2 1 0 1\n")
    with pytest.raises(CacheIntegrityError):
        cache.verify()


def test_stale_version_is_recomputed(tmp_path):
    cache = DiskCache(tmp_path)
    cache.path("R", 1).write_text("R 1 0\n1 0 1\n")
    assert cache.load("R", 1) is None
    pipe = Pipeline(cache_dir=tmp_path)
    assert pipe.Rn(1) == poly_product(P1_FACTORS)
    assert cache.load("R", 1) == poly_product(P1_FACTORS)


def test_check_entry_rejects_non_monic():
    with pytest.raises(CacheIntegrityError):
        check_entry(ResultantCacheEntry("P", 1, IntPoly([0] * 8 + [2])))
    with pytest.raises(CacheIntegrityError):
        check_entry(ResultantCacheEntry("R_bi", 1, BiPoly([[1]], ("x", "x1"))))


def test_cached_pipeline_reuses_results(tmp_path):
    a = Pipeline(cache_dir=tmp_path)
    R2 = a.Rn(2)
    b = Pipeline(cache_dir=tmp_path)
    assert b.disk.load("R", 2) == R2
    assert b.Rn(2) == R2
