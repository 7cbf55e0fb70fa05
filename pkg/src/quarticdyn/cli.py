"""Command-line front end.

Every subcommand builds one document (a dict of scalars, lists and nested
dicts) and prints it as JSON or as indented text.  Exit codes: 0 ok, 2 usage,
3 invariant failure, 4 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import classfield, dynamics, isogeny, resultants, tmap
from .exactalg.factor import FactorDomainError, NoGoodPrimeError, factor_over_Z
from .exactalg.intpoly import IntPoly, poly_product
from .padic import PrecisionError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_CAPACITY = 4

HARD_MAX_LEVEL = 4
CLASSREL_MAX_LEVEL = 6


class UsageError(ValueError):
    pass


class InvariantFailure(RuntimeError):
    pass


INVARIANT_ERRORS = (
    InvariantFailure,
    resultants.PipelineIntegrityError,
    resultants.CacheIntegrityError,
    isogeny.IdentityFailure,
    dynamics.MatchError,
    dynamics.ConvergenceError,
    classfield.LabelingError,
    PrecisionError,
    FactorDomainError,
)
CAPACITY_ERRORS = (
    resultants.CapacityError,
    classfield.SearchCapacityError,
    NoGoodPrimeError,
    isogeny.SeedError,
)


@dataclass(frozen=True)
class RunConfig:
    precision: int = 64
    nmax: int = 3
    cache_dir: str | None = None
    threads: int = 1
    seed: int = 0
    format: str = "text"

    def __post_init__(self):
        if not 16 <= self.precision <= 256:
            raise UsageError(f"precision must lie in [16, 256], got {self.precision}")
        if not 1 <= self.nmax <= HARD_MAX_LEVEL:
            raise UsageError(f"nmax must lie in [1, {HARD_MAX_LEVEL}], got {self.nmax}")
        if self.threads < 1:
            raise UsageError("threads must be positive")
        if self.format not in ("text", "json"):
            raise UsageError(f"unknown format {self.format!r}")

    def pipeline(self) -> resultants.Pipeline:
        return resultants.Pipeline(cache_dir=self.cache_dir, max_level=self.nmax)

    def check_level(self, n: int):
        if n < 1:
            raise UsageError(f"level must be positive, got {n}")
        if n > self.nmax:
            raise resultants.CapacityError(f"level {n} exceeds nmax {self.nmax}")


# ---------------------------------------------------------------------------
# document builders
# ---------------------------------------------------------------------------

def _poly_doc(p: IntPoly) -> dict:
    return {"degree": p.degree, "coefficients": list(p.coeffs), "text": str(p)}


def _factors(pipe: resultants.Pipeline, n: int) -> list[IntPoly]:
    content, factors = factor_over_Z(pipe.Pn(n))
    if content != 1:
        raise InvariantFailure(f"P_{n} has content {content}")
    return factors


def _is_exceptional(g: IntPoly) -> bool:
    return g.degree == 1 and any(g(a) == 0 for a in dynamics.EXCEPTIONAL_FIXED_POINTS)


def doc_resultant(cfg: RunConfig, n: int) -> dict:
    pipe = cfg.pipeline()
    R, Rt = pipe.Rn(n), pipe.Rn_tilde(n)
    checks = [c for c in pipe.verify_congruences(n) if c["n"] == n]
    if not all(c["ok"] for c in checks):
        raise InvariantFailure(f"congruence checks failed: {[c for c in checks if not c['ok']]}")
    return {"command": "resultant", "n": n, "R": _poly_doc(R), "R_tilde": _poly_doc(Rt),
            "checks": checks}


def doc_pn(cfg: RunConfig, n: int) -> dict:
    pipe = cfg.pipeline()
    P = pipe.Pn(n)
    if P.degree != resultants.expected_degree_P(n):
        raise InvariantFailure(f"deg P_{n} = {P.degree}")
    return {"command": "pn", "n": n, "P": _poly_doc(P), "P_tilde": _poly_doc(pipe.Pn_tilde(n))}


def doc_factor(cfg: RunConfig, n: int) -> dict:
    pipe = cfg.pipeline()
    factors = _factors(pipe, n)
    Pt = pipe.Pn_tilde(n)
    tilde = [resultants.tilde_factor(g) for g in factors]
    if poly_product(tilde).primitive() != Pt.primitive():
        raise InvariantFailure(f"rescaled factors do not multiply to P~_{n}")
    out = []
    for i, (g, gt) in enumerate(zip(factors, tilde)):
        partner = resultants.involution_partner(g)
        out.append({"index": i, "factor": _poly_doc(g), "tilde_factor": _poly_doc(gt),
                    "involution_partner": factors.index(partner) if partner in factors else None,
                    "unit_roots": dynamics.unit_root_count(gt)})
    return {"command": "factor", "n": n, "count": len(out),
            "degrees": [g.degree for g in factors], "factors": out}


def _labels(factors: list[IntPoly], n: int) -> list[dict]:
    out = []
    for i, g in enumerate(factors):
        if _is_exceptional(g):
            root = next(a for a in dynamics.EXCEPTIONAL_FIXED_POINTS if g(a) == 0)
            out.append({"index": i, "factor": _poly_doc(g), "exceptional_root": root,
                        "d": None, "h": None, "witnesses": []})
            continue
        rep = classfield.label_factor(g, n)
        out.append({"index": i, "factor": _poly_doc(g), "d": rep.d, "h": rep.h,
                    "witnesses": rep.witnesses,
                    "rejected": {str(k): v for k, v in sorted(rep.rejected.items())}})
    labeled = [r["d"] for r in out if r["d"] is not None]
    if len(set(labeled)) != len(labeled):
        raise InvariantFailure(f"two factors share a label: {labeled}")
    expected = sorted(r.d for r in classfield.discriminants_with_order(n))
    if sorted(labeled) != expected:
        raise InvariantFailure(f"labels {sorted(labeled)} differ from D_{n} = {expected}")
    return out


def doc_label(cfg: RunConfig, n: int) -> dict:
    pipe = cfg.pipeline()
    labels = _labels(_factors(pipe, n), n)
    return {"command": "label", "n": n, "labels": labels,
            "discriminants": sorted(r["d"] for r in labels if r["d"] is not None)}


def doc_classrel(cfg: RunConfig, n: int) -> dict:
    if n < 1:
        raise UsageError(f"level must be positive, got {n}")
    if n > CLASSREL_MAX_LEVEL:
        raise resultants.CapacityError(f"classrel is capped at level {CLASSREL_MAX_LEVEL}")
    recs = classfield.discriminants_with_order(n)
    lhs, rhs, ok = classfield.verify_class_relation(n)
    if not ok:
        raise InvariantFailure(f"class relation fails at n={n}: {lhs} != {rhs}")
    return {"command": "classrel", "n": n, "bound": classfield.discriminant_bound(n),
            "discriminants": [{"d": r.d, "h": r.h} for r in recs],
            "lhs": lhs, "rhs": rhs, "equal": ok}


def _orbit_docs(cfg: RunConfig, n: int, factors: list[IntPoly], labels: list[dict] | None) -> list[dict]:
    tilde = [resultants.tilde_factor(g) for g in factors]
    docs = []
    for orb in dynamics.assemble_orbits(n, cfg.precision):
        idx = dynamics.match_orbit_to_factor(orb, tilde)
        if labels is not None:
            orb.discriminant_label = labels[idx]["d"]
        docs.append({
            "period": orb.period,
            "residues": [list(r.coords) for r in orb.residue_cycle],
            "points": [z.to_line() for z in orb.lifted_cycle],
            "precision": orb.precision,
            "matched_factor": idx,
            "discriminant": orb.discriminant_label,
            "checks": orb.checks,
        })
    expected = dynamics.expected_point_count(n)
    if sum(len(d["points"]) for d in docs) != expected:
        raise InvariantFailure(f"found {sum(len(d['points']) for d in docs)} points, expected {expected}")
    for i, gt in enumerate(tilde):
        hits = sum(len(d["points"]) for d in docs if d["matched_factor"] == i)
        if hits != dynamics.unit_root_count(gt):
            raise InvariantFailure(f"factor {i} has {dynamics.unit_root_count(gt)} unit roots "
                                   f"but {hits} matched periodic points")
    return docs


def doc_orbits(cfg: RunConfig, n: int) -> dict:
    pipe = cfg.pipeline()
    factors = _factors(pipe, n)
    docs = _orbit_docs(cfg, n, factors, None)
    return {"command": "orbits", "n": n, "precision": cfg.precision,
            "orbit_count": len(docs), "point_count": sum(len(d["points"]) for d in docs),
            "orbits": docs}


def doc_fixedpoints(cfg: RunConfig) -> dict:
    pts = dynamics.exceptional_fixed_points()
    pipe = cfg.pipeline()
    factors = _factors(pipe, 1)
    docs = _orbit_docs(cfg, 1, factors, _labels(factors, 1))
    return {"command": "fixedpoints", "exceptional": list(pts),
            "unit_fixed_points": docs, "count": len(pts) + len(docs)}


def doc_verify_series(cfg: RunConfig, trials: int) -> dict:
    rep = tmap.branch_property_suite(trials, cfg.precision, cfg.seed)
    if not rep["ok"]:
        raise InvariantFailure(f"branch property failures: {rep['failures'][:1]}")
    rep["command"] = "verify-series"
    rep["mobius_identity"] = tmap.mobius_identity_holds()
    return rep


def doc_verify_isogeny(cfg: RunConfig, trials: int, primes: list[int] | None) -> dict:
    primes = isogeny.default_primes() if not primes else primes
    for p in primes:
        if p % 8 != 1:
            raise UsageError(f"prime {p} is not 1 mod 8")
    report = isogeny.verify_isogenies(trials, primes, cfg.seed)
    return {"command": "verify-isogeny", "trials": trials, "primes": primes,
            "identities": {k: {"trials": v.trials, "passes": v.passes, "witness": v.witness}
                           for k, v in report.items()},
            "ok": all(v.passes == v.trials for v in report.values())}


def doc_report(cfg: RunConfig, n: int) -> dict:
    pipe = cfg.pipeline()
    factors = _factors(pipe, n)
    labels = _labels(factors, n)
    orbits = _orbit_docs(cfg, n, factors, labels)
    unit_roots = sum(dynamics.unit_root_count(resultants.tilde_factor(g)) for g in factors)
    want_roots = dynamics.expected_point_count(n)
    deg_from_labels = sum(2 * r["h"] for r in labels if r["d"] is not None)
    deg_exceptional = sum(r["factor"]["degree"] for r in labels if r["d"] is None)
    degP = pipe.Pn(n).degree
    cross = {
        "unit_roots": unit_roots,
        "expected_points": want_roots,
        "unit_roots_ok": unit_roots == want_roots,
        "sum_2h": deg_from_labels,
        "exceptional_degree": deg_exceptional,
        "deg_P": degP,
        "degree_ok": deg_from_labels + deg_exceptional == degP,
    }
    if not (cross["unit_roots_ok"] and cross["degree_ok"]):
        raise InvariantFailure(f"report cross-checks failed: {cross}")
    return {"command": "report", "n": n, "precision": cfg.precision,
            "discriminants": sorted(r["d"] for r in labels if r["d"] is not None),
            "labels": labels, "orbit_count": len(orbits), "orbits": orbits,
            "cross_checks": cross}


def doc_cache(cfg: RunConfig, action: str) -> dict:
    root = cfg.cache_dir or str(resultants.default_cache_dir())
    cache = resultants.DiskCache(root)
    if action == "list":
        names = [p.name for p in cache.entries()]
        return {"command": "cache list", "cache_dir": root, "entries": names, "count": len(names)}
    if action == "clear":
        return {"command": "cache clear", "cache_dir": root, "removed": cache.clear()}
    status = cache.verify()
    return {"command": "cache verify", "cache_dir": root, "count": len(status),
            "entries": [{"file": f, "status": s} for f, s in status], "ok": True}


# ---------------------------------------------------------------------------
# argument parsing and output
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS)
    common.add_argument("--nmax", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    parser = _Parser(prog="quarticdyn", parents=[common],
                     description="Periodic points of the 2-adic branch of the quartic Fermat correspondence.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in ("resultant", "pn", "factor", "label", "classrel", "orbits", "report"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("n", type=int)
    sub.add_parser("fixedpoints", parents=[common])
    sp = sub.add_parser("verify-series", parents=[common])
    sp.add_argument("--trials", type=int, default=100)
    sp = sub.add_parser("verify-isogeny", parents=[common])
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--primes", type=int, nargs="*", default=None)
    sp = sub.add_parser("cache", parents=[common])
    sp.add_argument("action", choices=("list", "clear", "verify"))
    return parser


def parse_config(args: argparse.Namespace) -> RunConfig:
    cache_dir = getattr(args, "cache_dir", None) or os.environ.get(resultants.CACHE_ENV)
    return RunConfig(
        precision=getattr(args, "precision", 64),
        nmax=getattr(args, "nmax", 3),
        cache_dir=cache_dir,
        threads=getattr(args, "threads", 1),
        seed=getattr(args, "seed", 0),
        format=getattr(args, "format", "text"),
    )


def _text_lines(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                out.append(f"{pad}{k}:")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
        return out
    if isinstance(value, list):
        out = []
        for item in value:
            if isinstance(item, (dict, list)) and not _flat_list(item):
                out.append(f"{pad}-")
                out.extend(_text_lines(item, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(item)}")
        return out
    return [f"{pad}{_scalar(value)}"]


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2)
    return "\n".join(_text_lines(doc))


def dispatch(cfg: RunConfig, args: argparse.Namespace) -> dict:
    cmd = args.command
    if cmd in ("resultant", "pn", "factor", "label", "orbits", "report"):
        cfg.check_level(args.n)
    if cmd == "resultant":
        return doc_resultant(cfg, args.n)
    if cmd == "pn":
        return doc_pn(cfg, args.n)
    if cmd == "factor":
        return doc_factor(cfg, args.n)
    if cmd == "label":
        return doc_label(cfg, args.n)
    if cmd == "classrel":
        return doc_classrel(cfg, args.n)
    if cmd == "orbits":
        return doc_orbits(cfg, args.n)
    if cmd == "report":
        return doc_report(cfg, args.n)
    if cmd == "fixedpoints":
        return doc_fixedpoints(cfg)
    if cmd == "verify-series":
        if args.trials < 1:
            raise UsageError("trials must be positive")
        return doc_verify_series(cfg, args.trials)
    if cmd == "verify-isogeny":
        if args.trials < 1:
            raise UsageError("trials must be positive")
        return doc_verify_isogeny(cfg, args.trials, args.primes)
    if cmd == "cache":
        return doc_cache(cfg, args.action)
    raise UsageError("missing subcommand")


def run_command(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = parse_config(args)
        doc = dispatch(cfg, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except CAPACITY_ERRORS as exc:
        print(f"capacity exceeded: {exc}", file=stderr)
        return EXIT_CAPACITY
    except INVARIANT_ERRORS as exc:
        print(f"invariant failure: {exc}", file=stderr)
        return EXIT_INVARIANT
    print(render(doc, cfg.format), file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())
