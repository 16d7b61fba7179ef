"""Command-line batch driver.

    expsum-newton compute  --d 3 --coeffs 1,0 --p 23
    expsum-newton predict  --d 3 --coeffs 1,0 --p 23
    expsum-newton verify   --d 3 --coeffs 1,0 --pmin 20 --pmax 50
    expsum-newton scan     --d 3 --coeffs 1,0 --pmin 5 --pmax 50 --residue 2
    expsum-newton diagonal --d 5 --pmin 3 --pmax 20
    expsum-newton wtest    --d 3 --coeffs 3,3

Exit status: 0 success, 1 usage/domain error, 2 a certified prediction
(or a checked identity) failed, 3 enumeration budget refused.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import cache
from ._util import (
    BudgetError,
    DomainError,
    PreconditionError,
    UsageError,
    format_rational,
    is_p_integral,
    is_prime,
    parse_rational,
    parse_rational_list,
    primes_in_range,
)
from .diagonal import cycle_data, diagonal_polygon, nonconvergence_witness
from .expsums import PolyInput, l_polynomial, l_polynomial_to_json, newton_polygon
from .finitefield import DEFAULT_BUDGET, check_budget
from .polygon import hodge_polygon, lies_on_or_above, polygons_svg
from .predictor import coprime_residues, predict, strata, t_n, w_membership

log = logging.getLogger("expsum_newton")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3
CSV_COLUMNS = ["d", "p", "r", "n", "ord_bn", "predicted", "certified", "match"]
COMMANDS = ("compute", "predict", "verify", "scan", "diagonal", "wtest")


@dataclass
class RunConfig:
    command: str
    d: int
    coeffs: tuple[Fraction, ...]
    a0: Fraction = Fraction(0)
    primes: tuple[int, ...] = ()
    residue: int | None = None
    budget: int = DEFAULT_BUDGET
    cache_dir: Path | None = None
    out: str = "json"
    svg: Path | None = None
    jobs: int = 1
    skipped: dict = field(default_factory=dict)

    @property
    def poly(self) -> PolyInput:
        return PolyInput(self.d, self.coeffs, self.a0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="expsum-newton", description="L-functions of exponential sums and their Newton polygons.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--d", type=int, required=True, help="degree of f (>= 3)")
    parser.add_argument("--coeffs", default=None, help="a_1,...,a_{d-1} as rationals (default: all zero)")
    parser.add_argument("--a0", default="0", help="constant term of f")
    parser.add_argument("--p", default=None, help="a prime, or a comma-separated list of primes")
    parser.add_argument("--pmin", type=int, default=None)
    parser.add_argument("--pmax", type=int, default=None)
    parser.add_argument("--residue", type=int, default=None, help="keep only primes = residue mod d")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max field elements per enumeration")
    parser.add_argument("--cache-dir", type=Path, default=None, help=f"L-polynomial cache (default: ${cache.ENV_CACHE_DIR})")
    parser.add_argument("--out", choices=("json", "csv"), default="json")
    parser.add_argument("--svg", type=Path, default=None, help="write a polygon overlay to this path")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for prime ranges")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    d = args.d
    if d < 3:
        raise UsageError("--d must be at least 3")
    coeffs = parse_rational_list(args.coeffs) if args.coeffs is not None else (Fraction(0),) * (d - 1)
    if len(coeffs) != d - 1:
        raise UsageError(f"--coeffs needs {d - 1} entries a_1..a_{d - 1}, got {len(coeffs)}")
    if args.p is not None:
        primes = [int(x) for x in args.p.split(",") if x.strip()]
        for q in primes:
            if not is_prime(q):
                raise UsageError(f"{q} is not prime")
    elif args.pmin is not None or args.pmax is not None:
        if args.pmin is None or args.pmax is None:
            raise UsageError("--pmin and --pmax go together")
        primes = primes_in_range(args.pmin, args.pmax)
    else:
        primes = []
    skipped = {}
    kept = []
    for q in sorted(set(primes)):
        if q == 2:
            skipped[q] = "p = 2 is not supported"
        elif d % q == 0:
            if args.p is not None:
                raise UsageError("p must be coprime to d")
            skipped[q] = "p divides d"
        elif args.residue is not None and q % d != args.residue:
            continue
        elif not all(is_p_integral(c, q) for c in (*coeffs, parse_rational(args.a0))):
            skipped[q] = "coefficients not p-integral"
        else:
            kept.append(q)
    if args.residue is not None and math.gcd(args.residue, d) != 1:
        raise UsageError("--residue must be coprime to d")
    cache_dir = args.cache_dir if args.cache_dir is not None else cache.default_cache_dir()
    return RunConfig(
        command=args.command,
        d=d,
        coeffs=coeffs,
        a0=parse_rational(args.a0),
        primes=tuple(kept),
        residue=args.residue,
        budget=args.budget,
        cache_dir=cache_dir,
        out=args.out,
        svg=args.svg,
        jobs=max(1, args.jobs),
        skipped=skipped,
    )


# -- jobs (module level so worker processes can pickle them) ------------------


def _ground_truth(f: PolyInput, p: int, budget: int, cache_dir: Path | None):
    L = cache.load(cache_dir, f, p)
    hit = L is not None
    if not hit:
        L = l_polynomial(f, p, budget)
        cache.store(cache_dir, f, L)
    return L, hit


def _compute_job(args) -> dict:
    f, p, budget, cache_dir = args
    L, hit = _ground_truth(f, p, budget, cache_dir)
    NP = newton_polygon(L)
    HP = hodge_polygon(f.d)
    rec = l_polynomial_to_json(f, L)
    rec["ord_b"] = [format_rational(v) if v != math.inf else "inf" for v in L.valuations()]
    rec["hp_vertices"] = HP.to_json()
    rec["np_equals_hp"] = NP == HP
    rec["np_on_or_above_hp"] = NP.width == HP.width and lies_on_or_above(NP, HP)
    return {"record": rec, "cache_hit": hit}


def _map(cfg: RunConfig, fn, jobs: list) -> list:
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def _require_primes(cfg: RunConfig) -> None:
    if not cfg.primes:
        raise UsageError("no usable primes; give --p or --pmin/--pmax")


def _check_budgets(cfg: RunConfig) -> None:
    for q in cfg.primes:
        check_budget(q ** (cfg.d - 1), cfg.budget)


def _ord_str(v) -> str:
    return "inf" if v == math.inf else format_rational(v)


# -- commands -------------------------------------------------------------------


def cmd_compute(cfg: RunConfig) -> dict:
    _require_primes(cfg)
    _check_budgets(cfg)
    f = cfg.poly
    out = _map(cfg, _compute_job, [(f, q, cfg.budget, cfg.cache_dir) for q in cfg.primes])
    for q, res in zip(cfg.primes, out):
        if res["cache_hit"]:
            log.info("cache hit for d=%d p=%d", cfg.d, q)
    return {"command": "compute", "results": [res["record"] for res in out]}


def cmd_predict(cfg: RunConfig) -> dict:
    _require_primes(cfg)
    return {"command": "predict", "results": [predict(cfg.d, cfg.coeffs, q).to_json() for q in cfg.primes]}


def _verify_job(args) -> dict:
    f, p, budget, cache_dir = args
    report = predict(f.d, f.coeffs, p)
    L, _ = _ground_truth(f, p, budget, cache_dir)
    rows = []
    for row, v in zip(report.rows, L.valuations()):
        claim = row.certified
        rows.append(
            {
                "d": f.d,
                "p": p,
                "r": report.r,
                "n": row.n,
                "ord_bn": _ord_str(v),
                "predicted": format_rational(row.predicted_ord),
                "certified": claim,
                "match": (v == row.predicted_ord) if claim else "no claim",
            }
        )
    return {"p": p, "r": report.r, "rows": rows}


def cmd_verify(cfg: RunConfig) -> dict:
    _require_primes(cfg)
    _check_budgets(cfg)
    f = cfg.poly
    results = _map(cfg, _verify_job, [(f, q, cfg.budget, cfg.cache_dir) for q in cfg.primes])
    rows = [row for res in results for row in res["rows"]]
    mismatches = [r for r in rows if r["certified"] and not r["match"]]
    return {
        "command": "verify",
        "d": cfg.d,
        "coeffs": [format_rational(c) for c in cfg.coeffs],
        "rows": rows,
        "certified_rows": sum(1 for r in rows if r["certified"]),
        "mismatches": len(mismatches),
        "skipped": {str(k): v for k, v in cfg.skipped.items()},
    }


def cmd_scan(cfg: RunConfig) -> dict:
    _require_primes(cfg)
    _check_budgets(cfg)
    f = cfg.poly
    d = cfg.d
    results = _map(cfg, _verify_job, [(f, q, cfg.budget, cfg.cache_dir) for q in cfg.primes])
    classes = []
    all_ok = True
    for r in coprime_residues(d):
        in_class = [res for res in results if res["r"] == r]
        if not in_class:
            continue
        rows = []
        checks = {}
        for n in range(1, d):
            hodge = Fraction(n * (n + 1), 2 * d)
            series = []
            for res in in_class:
                row = res["rows"][n - 1]
                ordv = row["ord_bn"]
                eps = None if ordv == "inf" else Fraction(ordv) - hodge
                series.append((res["p"], eps, row["certified"]))
                rows.append(
                    {
                        "p": res["p"],
                        "n": n,
                        "ord_bn": ordv,
                        "epsilon_n": None if eps is None else format_rational(eps),
                        "scaled_epsilon": None if eps is None else format_rational((res["p"] - 1) * eps),
                        "certified": row["certified"],
                    }
                )
            certified = [(q, e) for q, e, c in series if c and e is not None]
            scaled = {(q - 1) * e for q, e in certified}
            constant = len(scaled) <= 1
            monotone = all(
                e2 <= e1 and (e2 < e1 or e1 == 0)
                for (_, e1), (_, e2) in zip(certified, certified[1:])
            )
            checks[str(n)] = {"constant_scaled_epsilon": constant, "monotone_to_zero": monotone}
            all_ok = all_ok and constant and monotone
        classes.append(
            {
                "r": r,
                "primes": [res["p"] for res in in_class],
                "c_n": {str(n): strata(d, r, n).c_n for n in range(1, d)},
                "t_n": {str(n): t_n(d, r, n) for n in range(1, d)},
                "rows": rows,
                "checks": checks,
            }
        )
    return {
        "command": "scan",
        "d": d,
        "coeffs": [format_rational(c) for c in cfg.coeffs],
        "classes": classes,
        "checks_passed": all_ok,
        "skipped": {str(k): v for k, v in cfg.skipped.items()},
    }


def _diag_job(args) -> dict:
    d, p, budget, cache_dir = args
    L, _ = _ground_truth(PolyInput.monomial(d), p, budget, cache_dir)
    NP = newton_polygon(L)
    return {"p": p, "r": p % d, "np_vertices": NP.to_json(), "match": NP == diagonal_polygon(d, p % d)}


def cmd_diagonal(cfg: RunConfig) -> dict:
    d = cfg.d
    classes = {str(r): cycle_data(d, r).to_json() for r in coprime_residues(d)}
    witness = nonconvergence_witness(d)
    checks = []
    if cfg.primes:
        _check_budgets(cfg)
        checks = _map(cfg, _diag_job, [(d, q, cfg.budget, cfg.cache_dir) for q in cfg.primes])
    return {
        "command": "diagonal",
        "d": d,
        "classes": classes,
        "witness": list(witness) if witness else None,
        "brute_force": checks,
        "skipped": {str(k): v for k, v in cfg.skipped.items()},
    }


def cmd_wtest(cfg: RunConfig) -> dict:
    return {"command": "wtest", **w_membership(cfg.d, cfg.coeffs).to_json()}


HANDLERS = {
    "compute": cmd_compute,
    "predict": cmd_predict,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "diagonal": cmd_diagonal,
    "wtest": cmd_wtest,
}


# -- output ---------------------------------------------------------------------


def _csv_rows(result: dict) -> list[dict]:
    cmd = result["command"]
    if cmd in ("verify",):
        return result["rows"]
    if cmd == "scan":
        d = result["d"]
        return [
            {"d": d, "p": row["p"], "r": cls["r"], "n": row["n"], "ord_bn": row["ord_bn"],
             "predicted": "", "certified": row["certified"], "match": ""}
            for cls in result["classes"] for row in cls["rows"]
        ]
    if cmd == "compute":
        return [
            {"d": rec["d"], "p": rec["p"], "r": rec["p"] % rec["d"], "n": n, "ord_bn": v,
             "predicted": "", "certified": "", "match": ""}
            for rec in result["results"] for n, v in enumerate(rec["ord_b"], start=1)
        ]
    if cmd == "predict":
        return [
            {"d": rep["d"], "p": rep["p"], "r": rep["r"], "n": row["n"], "ord_bn": "",
             "predicted": row["predicted_ord"], "certified": row["certified"], "match": ""}
            for rep in result["results"] for row in rep["rows"]
        ]
    raise UsageError(f"--out csv is not available for {cmd}")


def render(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in _csv_rows(result):
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in CSV_COLUMNS})
    return buf.getvalue()


def write_svg(cfg: RunConfig, result: dict) -> None:
    from .polygon import NewtonPolygon

    if result["command"] == "compute":
        for rec in result["results"]:
            path = cfg.svg
            if len(result["results"]) > 1:
                path = path.with_name(f"{path.stem}_p{rec['p']}{path.suffix}")
            svg = polygons_svg(
                [("NP", NewtonPolygon.from_json(rec["np_vertices"])), ("HP", hodge_polygon(cfg.d))],
                title=f"d={cfg.d} p={rec['p']}",
            )
            path.write_text(svg)
    elif result["command"] == "diagonal":
        polys = [(f"r={r}", NewtonPolygon.from_json(c["np_vertices"])) for r, c in result["classes"].items()]
        polys.append(("HP", hodge_polygon(cfg.d)))
        cfg.svg.write_text(polygons_svg(polys, title=f"x^{cfg.d} by residue class"))
    else:
        raise UsageError(f"--svg is not available for {result['command']}")


def exit_status(result: dict) -> int:
    cmd = result["command"]
    if cmd == "verify" and result["mismatches"]:
        return EXIT_MISMATCH
    if cmd == "scan" and not result["checks_passed"]:
        return EXIT_MISMATCH
    if cmd == "diagonal" and not all(c["match"] for c in result["brute_force"]):
        return EXIT_MISMATCH
    return EXIT_OK


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(message)s")
    try:
        cfg = config_from_args(args)
        result = HANDLERS[cfg.command](cfg)
        text = render(result, cfg.out)
        if cfg.svg is not None:
            write_svg(cfg, result)
    except BudgetError as exc:
        print(f"expsum-newton: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DomainError, PreconditionError) as exc:
        print(f"expsum-newton: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stdout.write(text)
    return exit_status(result)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
