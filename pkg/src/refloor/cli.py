"""Command-line interface: ``refloor <command> ...``.

Commands
--------
diagrams   per-diagram tally rows for a class and tangency type
relative   relative BPS polynomial, its tally and the Welschinger value
absolute   absolute BPS polynomial of S_n (n <= 6) via the ABV sum
kkv        KKV coefficients, optionally checked against the real-K3 product

Every JSON document carries ``"format": 1``. Exit status is 0 on success,
1 when ``kkv --check`` finds a mismatch and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction

from .bps import BpsResult, abv_absolute, gw_expansion_absolute, pt_series, relative_result, welschinger_relative
from .diagram import CurveClass, Tangency
from .enumeration import FORMAT_VERSION, check_class_and_tangency, tally
from .k3series import check_k3_welschinger, kkv_coefficients, real_k3_coefficients
from .qlaurent import evaluate_at_sign

__all__ = ["RunConfig", "main", "build_parser"]

TALLY_COLUMNS = ["canonical_key", "marking_count", "complex", "real", "refined"]


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    beta: CurveClass | None = None
    tangency: Tangency | None = None
    surface_n: int | None = None
    h_max: int | None = None
    g_max: int | None = None
    truncation: int | None = None
    cache_dir: str | None = None
    workers: int = 1
    output: str = "text"
    check: bool = False
    e_real: int = -16


def _int_list(text: str | None) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def parse_class(text: str) -> CurveClass:
    values = _int_list(text)
    if not values:
        raise UsageError("--class needs at least the degree")
    return CurveClass(values[0], values[1:])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="refloor", description="Refined floor-diagram curve counts.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tangency=True):
        p.add_argument("--class", dest="beta", required=True, metavar="D,A1,...", help="curve class d,a1,...,an")
        if tangency:
            p.add_argument("--mu", default="", help="tangency orders at fixed points, comma list")
            p.add_argument("--nu", default="", help="tangency orders at free points, comma list")
        p.add_argument("--format", dest="output", choices=("json", "csv", "text"), default="text")
        p.add_argument("--cache-dir", default=None, help="diagram cache (REFLOOR_CACHE takes precedence)")
        p.add_argument("--threads", type=int, default=1, help="worker processes")

    common(sub.add_parser("diagrams", help="tally rows (one per leg-coloured diagram)"))
    common(sub.add_parser("relative", help="relative BPS polynomial"))
    p = sub.add_parser("absolute", help="absolute BPS polynomial via the ABV sum")
    common(p, tangency=False)
    p.add_argument("--n", dest="surface_n", type=int, default=None, help="number of blown-up points (<= 6)")
    p.add_argument("--pt-series", dest="truncation", type=int, default=None, metavar="T")
    p.add_argument("--gw-genus", dest="g_max", type=int, default=None, metavar="G")

    p = sub.add_parser("kkv", help="KKV generating function")
    p.add_argument("--h-max", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare q=-1 values with the real-K3 product")
    p.add_argument("--e-real", type=int, default=-16, help="real Euler characteristic for --check")
    p.add_argument("--format", dest="output", choices=("json", "csv", "text"), default="text")
    return parser


def make_config(ns: argparse.Namespace) -> RunConfig:
    if ns.command == "kkv":
        if ns.h_max < 0:
            raise UsageError("--h-max must be nonnegative")
        return RunConfig("kkv", h_max=ns.h_max, output=ns.output, check=ns.check, e_real=ns.e_real)
    if ns.threads < 1:
        raise UsageError("--threads must be at least 1")
    beta = parse_class(ns.beta)
    base = dict(command=ns.command, beta=beta, cache_dir=ns.cache_dir, workers=ns.threads, output=ns.output)
    if ns.command == "absolute":
        n = beta.n if ns.surface_n is None else ns.surface_n
        if n < beta.n:
            raise UsageError(f"--n {n} is smaller than the number of entries in the class ({beta.n})")
        if ns.truncation is not None and ns.truncation < 1:
            raise UsageError("--pt-series needs a positive truncation")
        if ns.g_max is not None and ns.g_max < 0:
            raise UsageError("--gw-genus must be nonnegative")
        return RunConfig(**base, surface_n=n, truncation=ns.truncation, g_max=ns.g_max)
    t = Tangency(_int_list(ns.mu), _int_list(ns.nu))
    check_class_and_tangency(beta, t)
    return RunConfig(**base, tangency=t)


# ---------------------------------------------------------------------------
# rendering


def _class_dict(beta: CurveClass) -> dict:
    return {"d": beta.d, "a": list(beta.a)}


def _tangency_dict(t: Tangency) -> dict:
    return {"mu": list(t.mu), "nu": list(t.nu)}


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _tally_csv_rows(rows) -> list[list]:
    return [[r.key.hex(), r.marking_count, r.complex, r.real, r.refined.to_doubled_string()] for r in rows]


def _tally_text(rows) -> str:
    lines = [f"{'#':>3}  {'markings':>8}  {'complex':>8}  {'real':>6}  refined"]
    for i, r in enumerate(rows, 1):
        lines.append(f"{i:>3}  {r.marking_count:>8}  {r.complex:>8}  {r.real:>6}  {r.refined}")
    lines.append(f"total  rows={len(rows)}  complex={sum(r.complex for r in rows)}  real={sum(r.real for r in rows)}")
    return "\n".join(lines) + "\n"


def _run_diagrams(cfg: RunConfig) -> str:
    rows = tally(cfg.beta, cfg.tangency, workers=cfg.workers, cache_dir=cfg.cache_dir)
    if cfg.output == "json":
        return _dump({
            "format": FORMAT_VERSION,
            "class": _class_dict(cfg.beta),
            "tangency": _tangency_dict(cfg.tangency),
            "rows": [r.to_dict() for r in rows],
        })
    if cfg.output == "csv":
        return _csv(TALLY_COLUMNS, _tally_csv_rows(rows))
    return f"class {cfg.beta}  mu={list(cfg.tangency.mu)}  nu={list(cfg.tangency.nu)}\n" + _tally_text(rows)


def _run_relative(cfg: RunConfig) -> str:
    rows = tally(cfg.beta, cfg.tangency, workers=cfg.workers, cache_dir=cfg.cache_dir)
    result = relative_result(cfg.beta, cfg.tangency, workers=cfg.workers, cache_dir=cfg.cache_dir)
    welschinger = welschinger_relative(cfg.beta, cfg.tangency, poly=result.poly)
    if cfg.output == "json":
        doc = result.to_dict()
        doc["welschinger"] = str(welschinger)
        doc["rows"] = [r.to_dict() for r in rows]
        return _dump(doc)
    if cfg.output == "csv":
        header = ["class", "mu", "nu", "rows", "q1", "qm1", "welschinger", "poly"]
        t = cfg.tangency
        line = [str(cfg.beta), " ".join(map(str, t.mu)), " ".join(map(str, t.nu)), len(rows),
                result.gw_at_1, result.welschinger_at_minus_1, str(welschinger), result.poly.to_doubled_string()]
        return _csv(header, [line])
    return (
        f"class {cfg.beta}  mu={list(cfg.tangency.mu)}  nu={list(cfg.tangency.nu)}\n"
        + _tally_text(rows)
        + f"BPS(q)      = {result.poly}\n"
        + f"BPS(1)      = {result.gw_at_1}\n"
        + f"BPS(-1)     = {result.welschinger_at_minus_1}\n"
        + f"Welschinger = {welschinger}\n"
    )


def _run_absolute(cfg: RunConfig) -> str:
    result: BpsResult = abv_absolute(cfg.beta, surface_n=cfg.surface_n, workers=cfg.workers, cache_dir=cfg.cache_dir)
    m_beta = result.beta.m_beta
    pt = pt_series(result.poly, m_beta, cfg.truncation) if cfg.truncation is not None else None
    gw = gw_expansion_absolute(result.poly, m_beta, cfg.g_max) if cfg.g_max is not None else None
    if cfg.output == "json":
        doc = result.to_dict()
        if pt is not None:
            doc["pt_series"] = {"truncation": cfg.truncation, "m_beta": m_beta, "poly": pt.to_pairs()}
        if gw is not None:
            doc["gw"] = [str(x) for x in gw]
        return _dump(doc)
    if cfg.output == "csv":
        header = ["class", "surface_n", "q1", "qm1", "poly"]
        line = [str(result.beta), cfg.surface_n, result.gw_at_1, result.welschinger_at_minus_1,
                result.poly.to_doubled_string()]
        if pt is not None:
            header.append("pt_series")
            line.append(pt.to_doubled_string())
        if gw is not None:
            header.append("gw")
            line.append(" ".join(str(x) for x in gw))
        return _csv(header, [line])
    out = (
        f"class {result.beta} on S_{cfg.surface_n}\n"
        f"BPS(q)  = {result.poly}\n"
        f"BPS(1)  = {result.gw_at_1}\n"
        f"BPS(-1) = {result.welschinger_at_minus_1}\n"
    )
    if pt is not None:
        out += f"PT(q)   = {pt}\n"
    if gw is not None:
        out += "".join(f"GW_{g}    = {x}\n" for g, x in enumerate(gw))
    return out


def _run_kkv(cfg: RunConfig) -> tuple[str, int]:
    coeffs = kkv_coefficients(cfg.h_max)
    real = real_k3_coefficients(cfg.h_max, cfg.e_real)
    checks = check_k3_welschinger(cfg.h_max, cfg.e_real) if cfg.check else None
    rows = []
    for h, poly in enumerate(coeffs):
        row = {
            "h": h,
            "poly": poly.to_pairs(),
            "q1": evaluate_at_sign(poly, 1),
            "qm1": evaluate_at_sign(poly, -1),
            "real": real[h],
        }
        if checks is not None:
            row["equal"] = checks[h]["equal"]
        rows.append((row, poly))
    status = 0 if checks is None or all(c["equal"] for c in checks) else 1
    if cfg.output == "json":
        doc = {"format": FORMAT_VERSION, "h_max": cfg.h_max, "e_real": cfg.e_real, "rows": [r for r, _ in rows]}
        return _dump(doc), status
    if cfg.output == "csv":
        header = ["h", "poly", "q1", "qm1", "real"] + (["equal"] if checks is not None else [])
        lines = []
        for r, poly in rows:
            line = [r["h"], poly.to_doubled_string(), r["q1"], r["qm1"], r["real"]]
            if checks is not None:
                line.append(str(r["equal"]).lower())
            lines.append(line)
        return _csv(header, lines), status
    out = []
    for r, poly in rows:
        line = f"h={r['h']:<3} q=1: {r['q1']:<12} q=-1: {r['qm1']:<12} real: {r['real']:<12}"
        if checks is not None:
            line += f" equal: {str(r['equal']).lower():<5}"
        out.append(line.rstrip() + f"\n      {poly}")
    return "\n".join(out) + "\n", status


def run(cfg: RunConfig) -> tuple[str, int]:
    if cfg.command == "kkv":
        return _run_kkv(cfg)
    handler = {"diagrams": _run_diagrams, "relative": _run_relative, "absolute": _run_absolute}[cfg.command]
    return handler(cfg), 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        cfg = make_config(ns)
        text, status = run(cfg)
    except ValueError as exc:
        print(f"refloor: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
