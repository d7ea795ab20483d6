"""Command-line front end.

Subcommands
-----------
``eval``         one measure between two distributions
``sweep``        one measure over a grid of orders
``rate-gauss``   Gaussian-process rates from spectral densities
``rate-markov``  Markov-source rates from transition matrices
``verify``       the full invariant suite, as a JSON report
``tables``       closed form against oracle for every family

Exit codes: 0 success, 1 unparseable or invalid input, 2 the requested
measure is undefined (a constraint is violated), 3 an oracle disagreed.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import logging
import math
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import closed_form as cf
from . import gaussian_process as gp
from . import markov as mk
from .closed_form import AlphaOrder, SHANNON
from .distributions import Family, make_family
from .errors import ConstraintViolated, ParseError, RenyiError
from .oracle import Verdict, certify
from .verify import (DEFAULT_ALPHAS, PARAM_GRID, SECTIONS, TABLE_COLUMNS, VerifyConfig,
                     default_tolerance, run_verify, table_rows)

log = logging.getLogger("renyixent")

EXIT_OK, EXIT_PARSE, EXIT_CONSTRAINT, EXIT_ORACLE = 0, 1, 2, 3
ROW_TOLERANCE = 1e-9

_SPEC_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\{(.*)\}\s*$", re.DOTALL)


# ---------------------------------------------------------------------------
# grammar


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not nested inside brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced ']' in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced '[' in {text!r}")
    parts.append("".join(cur))
    return [p for p in (s.strip() for s in parts) if p]


def _numeric(value, where: str):
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, (list, tuple)):
        return [_numeric(v, where) for v in value]
    raise ParseError(f"{where}: expected a number or a list of numbers, got {value!r}")


def parse_call(text: str) -> tuple[str, dict]:
    """Parse ``name{key=value,...}`` into the name and a dict of numbers or nested lists."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse {text!r}; expected name{{key=value,...}}")
    name, body = m.group(1).lower(), m.group(2)
    params: dict = {}
    for item in _split_top_level(body):
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ParseError(f"{text!r}: expected key=value, got {item!r}")
        if key in params:
            raise ParseError(f"{text!r}: parameter {key!r} given twice")
        try:
            value = ast.literal_eval(raw.strip())
        except (ValueError, SyntaxError):
            raise ParseError(f"{text!r}: cannot read value {raw.strip()!r} of {key}") from None
        params[key] = _numeric(value, f"{name}.{key}")
    return name, params


def parse_family(text: str) -> Family:
    """Parse a distribution descriptor such as ``gaussian{mu=0,var=1}``."""
    name, params = parse_call(text)
    try:
        f = make_family(name, **params)
        f.check()
    except RenyiError as exc:
        raise ParseError(str(exc)) from None
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{text!r}: {exc}") from None
    return f


def parse_alpha(text: str) -> AlphaOrder:
    try:
        return AlphaOrder.parse(text)
    except ValueError as exc:
        raise ParseError(f"invalid order {text!r}: {exc}") from None


def parse_alpha_grid(text: Optional[str]) -> list[AlphaOrder]:
    if text is None:
        return [AlphaOrder(a) for a in DEFAULT_ALPHAS]
    items = [s for s in (t.strip() for t in text.split(",")) if s]
    if not items:
        raise ParseError("empty order grid")
    return [parse_alpha(s) for s in items]


def parse_spectral(text: str) -> gp.SpectralDensity:
    """``white{s2=..}``, ``ar1{rho=..,s2=..}``, or a two-column text file."""
    path = Path(text)
    if "{" not in text and path.exists():
        try:
            return gp.SpectralDensity.from_file(path)
        except (OSError, ValueError) as exc:
            raise ParseError(f"{path}: {exc}") from None
    name, params = parse_call(text)
    try:
        if name == "white" and set(params) == {"s2"}:
            return gp.SpectralDensity.white(params["s2"])
        if name == "ar1" and set(params) == {"rho", "s2"}:
            return gp.SpectralDensity.ar1(params["rho"], params["s2"])
    except RenyiError as exc:
        raise ParseError(str(exc)) from None
    raise ParseError(f"unknown spectral density {text!r}; expected white{{s2=..}}, "
                     "ar1{rho=..,s2=..} or a file path")


def read_array(text: str, what: str) -> np.ndarray:
    """Read a vector or matrix from a JSON / whitespace text file or an inline JSON literal."""
    path = Path(text)
    try:
        if text.lstrip().startswith("["):
            data = json.loads(text)
        elif path.suffix.lower() == ".json":
            data = json.loads(path.read_text(encoding="utf-8"))
        else:
            data = np.loadtxt(path, ndmin=1)
        arr = np.array(data, dtype=float)
    except (OSError, ValueError) as exc:
        raise ParseError(f"cannot read {what} from {text!r}: {exc}") from None
    return arr


def normalise_rows(arr: np.ndarray, what: str) -> np.ndarray:
    """Renormalise rows that sum to one within ``ROW_TOLERANCE``; reject the rest."""
    rows = np.atleast_2d(arr)
    sums = rows.sum(axis=1)
    worst = float(np.max(np.abs(sums - 1.0))) if sums.size else 0.0
    if not np.all(np.isfinite(rows)) or np.any(rows < 0):
        raise ParseError(f"{what} must have finite nonnegative entries")
    if worst > ROW_TOLERANCE:
        raise ParseError(f"{what}: a row sums to {float(sums[np.argmax(np.abs(sums - 1))])!r}, "
                         f"not 1 within {ROW_TOLERANCE}")
    if worst > 0:
        log.warning("%s: rows renormalised (largest deviation from 1 was %.3g)", what, worst)
        rows = rows / sums[:, None]
    return rows.reshape(arr.shape)


def read_source(matrix: str, initial: Optional[str], what: str) -> mk.MarkovSource:
    P = read_array(matrix, f"{what} transition matrix")
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ParseError(f"{what} transition matrix must be square, got shape {P.shape}")
    P = normalise_rows(P, f"{what} transition matrix")
    p0 = None
    if initial is not None:
        p0 = read_array(initial, f"{what} initial vector")
        if p0.ndim != 1:
            raise ParseError(f"{what} initial vector must be one-dimensional")
        p0 = normalise_rows(p0, f"{what} initial vector")
    try:
        return mk.MarkovSource(P, p0)
    except RenyiError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# output


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (np.floating, np.integer)):
        v = v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, Verdict):
        return v.value
    return v


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (dict, list)):
        return json.dumps(_jsonable(v), sort_keys=True, ensure_ascii=False)
    return str(v)


def render(records: list[dict], fmt: str, columns: Optional[Sequence[str]] = None) -> str:
    """Render flat records as json, csv or a markdown table."""
    if fmt == "json":
        return dump_json(records if len(records) != 1 or columns else records[0])
    cols = list(columns) if columns else sorted({k for r in records for k in r})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(cols)
        for r in records:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue().rstrip("\r\n")
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in records:
        lines.append("| " + " | ".join(_cell(r.get(c)).replace("|", "\\|") for c in cols) + " |")
    return "\n".join(lines)


def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# commands


_MEASURES = ("renyi", "natural", "shannon", "entropy")


def _evaluate(measure: str, f1: Family, f2: Optional[Family], alpha: AlphaOrder, generic: bool):
    if measure == "entropy":
        return cf.renyi_entropy(f1, alpha)
    if f2 is None:
        raise ParseError(f"--f2 is required for measure {measure}")
    if measure == "shannon" or alpha.is_shannon:
        return cf.shannon_xent(f1, f2)
    if generic:
        fn = cf.generic_renyi_xent if measure == "renyi" else cf.generic_natural_renyi_xent
        return fn(f1, f2, alpha, carrier_expectation=cf.analytic_carrier_expectation)
    fn = cf.renyi_xent if measure == "renyi" else cf.natural_renyi_xent
    return fn(f1, f2, alpha)


def _oracle_measure(measure: str, alpha: AlphaOrder) -> str:
    if measure == "shannon" or alpha.is_shannon:
        return "shannon"
    return "natural" if measure == "natural" else "renyi"


def _alpha_for(args) -> AlphaOrder:
    if args.measure == "shannon":
        return SHANNON
    if args.alpha is None:
        raise ParseError(f"--alpha is required for measure {args.measure}")
    return parse_alpha(args.alpha)


def cmd_eval(args) -> int:
    f1 = parse_family(args.f1)
    f2 = parse_family(args.f2) if args.f2 else None
    alpha = _alpha_for(args)
    try:
        res = _evaluate(args.measure, f1, f2, alpha, args.generic)
    except ConstraintViolated as exc:
        record = {"status": "undefined", "constraint": exc.name, "constraint_value": exc.value,
                  "message": str(exc)}
        if args.certify:
            rep = certify(f1, f2 if f2 is not None else f1, alpha, exc, threshold=args.tolerance,
                          measure=_oracle_measure(args.measure, alpha), n_samples=args.samples,
                          seed=args.seed)
            record["oracle"] = rep.to_dict()
        _emit(render([record], args.format))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    record = {"status": "ok", **res.to_dict()}
    code = EXIT_OK
    if args.certify:
        other = f2 if f2 is not None else f1
        rep = certify(f1, other, alpha, res.value, threshold=args.tolerance,
                      measure=_oracle_measure(args.measure, alpha), n_samples=args.samples, seed=args.seed)
        record["oracle"] = rep.to_dict()
        if rep.verdict == Verdict.FAIL:
            code = EXIT_ORACLE
    _emit(render([record], args.format))
    return code


def cmd_sweep(args) -> int:
    f1 = parse_family(args.f1)
    f2 = parse_family(args.f2) if args.f2 else None
    records, code = [], EXIT_OK
    for alpha in parse_alpha_grid(args.alphas):
        row: dict = {"alpha": str(alpha), "measure": args.measure}
        try:
            res = _evaluate(args.measure, f1, f2, alpha, args.generic)
            row.update(value=res.value, status="ok")
            closed = res.value
        except ConstraintViolated as exc:
            row.update(value=None, status=f"undefined: {exc.name}")
            closed = exc
        if args.certify:
            rep = certify(f1, f2 if f2 is not None else f1, alpha, closed, threshold=args.tolerance,
                          measure=_oracle_measure(args.measure, alpha), n_samples=args.samples,
                          seed=args.seed)
            row.update(oracle=rep.oracle_value, rel_err=rep.rel_err, verdict=rep.verdict.value)
            if rep.verdict == Verdict.FAIL:
                code = EXIT_ORACLE
        records.append(row)
    cols = ["alpha", "measure", "value", "status"] + (["oracle", "rel_err", "verdict"] if args.certify else [])
    _emit(render(records, args.format, cols))
    return code


def cmd_rate_gauss(args) -> int:
    f, g = parse_spectral(args.f), parse_spectral(args.g)
    alpha = _alpha_for(args)
    measure = "shannon" if alpha.is_shannon else args.measure
    try:
        res = gp.rate(measure, f, g, alpha, grid_size=args.grid)
    except ConstraintViolated as exc:
        _emit(render([{"status": "undefined", "constraint": exc.name, "constraint_value": exc.value,
                       "message": str(exc)}], args.format))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    record = {"status": "ok", "f": f.label, "g": g.label, **res.to_dict()}
    if args.oracle_n:
        record["toeplitz_oracle"] = gp.toeplitz_rate_oracle(f, g, alpha, args.oracle_n, measure=measure,
                                                            grid_size=args.grid)
        record["toeplitz_n"] = args.oracle_n
    _emit(render([record], args.format))
    return EXIT_OK


def cmd_rate_markov(args) -> int:
    s1 = read_source(args.P, args.p0, "P")
    s2 = read_source(args.Q, args.q0, "Q")
    alpha = _alpha_for(args)
    measure = "shannon" if alpha.is_shannon else args.measure
    try:
        res = mk.rate(measure, s1, s2, alpha)
    except ConstraintViolated as exc:
        _emit(render([{"status": "undefined", "message": str(exc)}], args.format))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    record = {"status": "ok", **res.to_dict()}
    if args.oracle_n:
        record["brute_force"] = mk.brute_force_rate(s1, s2, alpha, args.oracle_n, measure=measure)
        record["brute_force_n"] = args.oracle_n
    _emit(render([record], args.format))
    return EXIT_OK


_SECTION_ALIASES = {"gp": "gaussian_process", "gauss": "gaussian_process", "shannon": "shannon_limit",
                    "decomposition": "oracle", "continuity": "shannon_limit"}


def _verify_config(args) -> VerifyConfig:
    base: dict = {}
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ParseError(f"cannot read config {args.config!r}: {exc}") from None
        base = loaded.get("config", loaded)
        allowed = {"alphas", "families", "sections", "tolerance", "seed", "n_samples", "mutate"}
        unknown = set(base) - allowed
        if unknown:
            raise ParseError(f"unknown config keys {sorted(unknown)}")
    if args.only:
        sections = []
        for s in args.only.split(","):
            s = _SECTION_ALIASES.get(s.strip(), s.strip())
            if s not in SECTIONS:
                raise ParseError(f"unknown section {s!r}; expected one of {', '.join(SECTIONS)}")
            sections.append(s)
        base["sections"] = sections
    if args.families:
        base["families"] = [s.strip() for s in args.families.split(",") if s.strip()]
    if args.alphas:
        grid = parse_alpha_grid(args.alphas)
        if any(a.is_shannon for a in grid):
            raise ParseError("verify orders must be numeric")
        base["alphas"] = [a.value for a in grid]
    for key in ("seed", "mutate"):
        if getattr(args, key) is not None:
            base[key] = getattr(args, key)
    if args.samples is not None:
        base["n_samples"] = args.samples
    if args.tolerance_given:
        base["tolerance"] = args.tolerance
    if "alphas" in base:
        base["alphas"] = tuple(float(a) for a in base["alphas"])
    try:
        return VerifyConfig(**base)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def cmd_verify(args) -> int:
    cfg = _verify_config(args)
    report = run_verify(cfg)
    _emit(dump_json(report), args.output)
    s = report["summary"]
    print(f"verify: {s['PASS']} PASS, {s['FAIL']} FAIL, {s['UNDEFINED']} UNDEFINED", file=sys.stderr)
    for line in report["failures"]:
        print(f"FAIL {line}", file=sys.stderr)
    return EXIT_OK if s["ok"] else EXIT_ORACLE


def cmd_tables(args) -> int:
    families = [s.strip() for s in args.families.split(",")] if args.families else None
    if families:
        unknown = set(families) - set(PARAM_GRID)
        if unknown:
            raise ParseError(f"unknown families {sorted(unknown)}")
    grid = parse_alpha_grid(args.alphas)
    if any(a.is_shannon for a in grid):
        raise ParseError("tables need numeric orders")
    rows = table_rows(families, [a.value for a in grid], measure=args.measure, pairs=args.pairs,
                      tolerance=args.tolerance, seed=args.seed, n_samples=args.samples)
    _emit(render(rows, args.format, TABLE_COLUMNS), args.output)
    return EXIT_ORACLE if any(r["verdict"] == "FAIL" for r in rows) else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _tolerance(text: str) -> float:
    v = float(text)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError("tolerance must be a positive number")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="renyixent", description="Rényi and natural Rényi cross-entropies and rates.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt="json"):
        sp.add_argument("--format", choices=("json", "csv", "markdown"), default=fmt)
        sp.add_argument("--tolerance", type=_tolerance, default=None,
                        help="relative oracle tolerance (default from RENYIXENT_TOLERANCE or 1e-6)")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--samples", type=int, default=None, help="Monte Carlo sample count")

    e = sub.add_parser("eval", help="evaluate one measure")
    e.add_argument("--measure", choices=_MEASURES, default="renyi")
    e.add_argument("--f1", required=True)
    e.add_argument("--f2")
    e.add_argument("--alpha")
    e.add_argument("--certify", action="store_true", help="compare with the numerical oracle")
    e.add_argument("--generic", action="store_true", help="use the natural-parameter engine")
    common(e)
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("sweep", help="evaluate one measure over a grid of orders")
    s.add_argument("--measure", choices=_MEASURES, default="renyi")
    s.add_argument("--f1", required=True)
    s.add_argument("--f2")
    s.add_argument("--alphas", help="comma-separated orders (default 0.3,0.5,0.9,1.1,2,3)")
    s.add_argument("--certify", action="store_true")
    s.add_argument("--generic", action="store_true")
    common(s, fmt="markdown")
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("rate-gauss", help="Gaussian-process rates from spectral densities")
    g.add_argument("--measure", choices=("renyi", "natural", "shannon"), default="renyi")
    g.add_argument("--f", required=True, help="white{s2=..}, ar1{rho=..,s2=..} or a two-column file")
    g.add_argument("--g", required=True)
    g.add_argument("--alpha")
    g.add_argument("--grid", type=int, default=gp.DEFAULT_GRID, help="frequency grid size")
    g.add_argument("--oracle-n", type=int, default=None, help="also report the n-block Toeplitz value")
    common(g)
    g.set_defaults(func=cmd_rate_gauss)

    m = sub.add_parser("rate-markov", help="Markov-source rates from transition matrices")
    m.add_argument("--measure", choices=("renyi", "natural", "shannon"), default="renyi")
    m.add_argument("--P", required=True, help="JSON/text file or inline JSON matrix")
    m.add_argument("--Q", required=True)
    m.add_argument("--p0", help="initial distribution of the first source")
    m.add_argument("--q0", help="initial distribution of the second source")
    m.add_argument("--alpha")
    m.add_argument("--oracle-n", type=int, default=None, help="also report the brute-force n-block value")
    common(m)
    m.set_defaults(func=cmd_rate_markov)

    v = sub.add_parser("verify", help="run the invariant suite and write a JSON report")
    v.add_argument("--only", help=f"comma-separated sections: {', '.join(SECTIONS)}")
    v.add_argument("--families")
    v.add_argument("--alphas")
    v.add_argument("--mutate", help="shift one family's closed forms to test the harness")
    v.add_argument("--config", help="rerun with the config block of an earlier report")
    v.add_argument("--output", "-o", help="write the report here instead of stdout")
    common(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tables", help="closed form against oracle for every family")
    t.add_argument("--families")
    t.add_argument("--alphas")
    t.add_argument("--measure", choices=("renyi", "natural"), default="renyi")
    t.add_argument("--pairs", type=int, default=1, help="parameter pairs per family (1-5)")
    t.add_argument("--output", "-o")
    common(t, fmt="markdown")
    t.set_defaults(func=cmd_tables)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s: %(message)s", stream=sys.stderr)
        args.tolerance_given = args.tolerance is not None
        if args.tolerance is None:
            args.tolerance = default_tolerance()
        if args.seed is None and args.command != "verify":
            args.seed = 0
        if args.samples is None and args.command != "verify":
            args.samples = 10**6
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConstraintViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except (RenyiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


__all__ = ["main", "build_parser", "parse_family", "parse_call", "parse_alpha", "parse_alpha_grid",
           "parse_spectral", "read_array", "normalise_rows", "render", "dump_json"]
