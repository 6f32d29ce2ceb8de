"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 evaluation error, 4 inadmissible
target, 5 search exhausted, 6 pi_1 mismatch, 7 pi_1 unverifiable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

from . import fpgroup as fp
from .blocks import PARAMETRIC_FAMILIES, REGISTRY_ENV, Registry, RegistryError, default_registry_path
from .calculus import EvaluationError, Evaluator, Recipe, RecipeError, to_dot
from .pi1check import compare
from .planner import (
    InadmissibleTargetError,
    SearchExhaustedError,
    Target6,
    Window,
    enumerate_region_4d,
    plan,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_EVAL = 3
EXIT_INADMISSIBLE = 4
EXIT_EXHAUSTED = 5
EXIT_MISMATCH = 6
EXIT_UNVERIFIABLE = 7

CSV_COLUMNS = ("c1sq", "chi_h", "e", "sigma", "family")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _registry(args) -> Registry:
    path = args.registry or os.environ.get(REGISTRY_ENV) or default_registry_path()
    try:
        return Registry.from_path(path)
    except RegistryError as exc:
        raise CliError(EXIT_PARSE, f"registry {path}: {exc}") from None
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read registry {path}: {exc.strerror}") from None


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _table(rows: list[tuple[str, ...]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]


def _parse_group(text: str) -> fp.Presentation:
    try:
        return fp.parse_presentation(text)
    except fp.PresentationError as exc:
        raise CliError(EXIT_PARSE, f"group: {exc}") from None


def _load_recipe(path: str) -> Recipe:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    try:
        return Recipe.from_json(text)
    except RecipeError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _invariants(result) -> dict:
    if result.dim == 4:
        c = result.char4
        out = {"dim": 4, "e": c.e, "sigma": c.sigma, "c1sq": c.c1_squared()}
        if c.has_chi_h():
            out["chi_h"] = c.chi_h()
        return out
    return {"dim": 6, "c13": result.chern.c13, "c1c2": result.chern.c1c2, "c3": result.chern.c3}


def _invariant_line(inv: dict) -> str:
    if inv["dim"] == 4:
        chi = inv.get("chi_h", "undefined")
        return f"invariants: e={inv['e']} sigma={inv['sigma']} c1sq={inv['c1sq']} chi_h={chi}"
    return f"chern: c13={inv['c13']} c1c2={inv['c1c2']} c3={inv['c3']}"


def _evaluate(evaluator: Evaluator, recipe: Recipe):
    try:
        return evaluator.evaluate(recipe)
    except (EvaluationError, RecipeError) as exc:
        raise CliError(EXIT_EVAL, f"evaluation failed: {exc}") from None


# ---------------------------------------------------------------- commands


def cmd_blocks(args) -> int:
    reg = _registry(args)
    needle = args.filter or ""
    records = []
    for bid in sorted(reg):
        if needle not in bid:
            continue
        b = reg[bid]
        c = b.char4
        records.append(
            {
                "id": bid,
                "e": c.e,
                "sigma": c.sigma,
                "c1sq": c.c1_squared(),
                "chi_h": c.chi_h() if c.has_chi_h() else None,
                "claims": sorted(b.claims),
                "provenance": b.provenance,
            }
        )
    families = [{"id": k, "description": v} for k, v in sorted(PARAMETRIC_FAMILIES.items()) if needle in k]
    rows = [("id", "e", "sigma", "c1sq", "chi_h", "claims", "provenance")]
    for r in records:
        chi = "-" if r["chi_h"] is None else str(r["chi_h"])
        rows.append((r["id"], str(r["e"]), str(r["sigma"]), str(r["c1sq"]), chi, ",".join(r["claims"]) or "-", r["provenance"]))
    for f in families:
        rows.append((f["id"], "*", "*", "*", "*", "-", f["description"]))
    _emit(args, {"blocks": records, "families": families}, _table(rows))
    return EXIT_OK


def cmd_eval(args) -> int:
    reg = _registry(args)
    recipe = _load_recipe(args.recipe)
    evaluator = Evaluator(reg)
    result = _evaluate(evaluator, recipe)
    if args.dot:
        Path(args.dot).write_text(to_dot(recipe, reg))
    inv = _invariants(result)
    status = "verified" if result.pi1_verified else "unverifiable"
    payload = {"invariants": inv, "pi1": fp.format_presentation(result.pi1), "pi1_status": status, "recipe": args.recipe}
    lines = [f"recipe: {args.recipe}", _invariant_line(inv), f"pi1: {fp.format_presentation(result.pi1)}", f"pi1 status: {status}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_realize(args) -> int:
    reg = _registry(args)
    group = _parse_group(args.group)
    target = Target6(args.c13, args.c1c2, args.c3, group)
    try:
        p = plan(target, args.max_chi)
    except InadmissibleTargetError as exc:
        raise CliError(EXIT_INADMISSIBLE, f"inadmissible target: {exc}") from None
    except SearchExhaustedError as exc:
        raise CliError(EXIT_EXHAUSTED, f"search exhausted: {exc}") from None
    evaluator = Evaluator(reg)
    result = _evaluate(evaluator, p.recipe)
    got = result.chern.as_tuple()
    want = (target.c13, target.c1c2, target.c3)
    verdict = "exact match" if got == want else f"MISMATCH: evaluated {got}"
    recipe_text = p.recipe.to_json()
    if args.emit:
        Path(args.emit).write_text(recipe_text + "\n")
    if args.dot:
        Path(args.dot).write_text(to_dot(p.recipe, reg))
    budget = {"p": p.budget.p, "r_e": p.budget.r_e, "z": p.budget.z}
    payload = {
        "target": {"c13": target.c13, "c1c2": target.c1c2, "c3": target.c3, "group": fp.format_presentation(group)},
        "family": p.family,
        "base": dict(zip(("c13", "c1c2", "c3"), p.base.as_tuple())),
        "preparatory_point": p.preparatory_point,
        "budget": budget,
        "recipe": json.loads(recipe_text),
        "evaluated": _invariants(result),
        "pi1": fp.format_presentation(result.pi1),
        "verification": verdict,
    }
    lines = [
        f"target: c13={target.c13} c1c2={target.c1c2} c3={target.c3} group={fp.format_presentation(group)}",
        f"family: {p.family}",
        "base: c13={} c1c2={} c3={}".format(*p.base.as_tuple()),
        f"preparatory point blow-up: {'yes' if p.preparatory_point else 'no'}",
        f"budget: p={p.budget.p} r_e={p.budget.r_e} z={p.budget.z}",
        _invariant_line(_invariants(result)),
        f"pi1: {fp.format_presentation(result.pi1)}",
        f"verification: {verdict}",
    ]
    if args.emit:
        lines.append(f"recipe written to {args.emit}")
    else:
        lines += ["recipe:", recipe_text]
    _emit(args, payload, lines)
    return EXIT_OK if got == want else EXIT_EVAL


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise CliError(EXIT_PARSE, f"bad window {text!r}, expected a..b") from None


def cmd_geography(args) -> int:
    if args.dim != 4:
        raise CliError(EXIT_PARSE, "only --dim 4 is supported")
    lo, hi = _parse_window(args.chi_window)
    points = enumerate_region_4d(Window(lo, hi), args.g, args.r, args.spin, args.coordinates)
    records = [{"c1sq": p.c1sq, "chi_h": p.chi_h, "e": p.e, "sigma": p.sigma, "family": p.family} for p in points]
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([rec[k] for k in CSV_COLUMNS])
        if args.csv == "-":
            sys.stdout.write(buf.getvalue())
        else:
            Path(args.csv).write_text(buf.getvalue())
        return EXIT_OK
    rows = [CSV_COLUMNS] + [tuple(str(rec[k]) for k in CSV_COLUMNS) for rec in records]
    _emit(args, {"points": records}, _table(rows))
    return EXIT_OK


def cmd_check_pi1(args) -> int:
    reg = _registry(args)
    recipe = _load_recipe(args.recipe)
    expected = _parse_group(args.expect)
    result = _evaluate(Evaluator(reg), recipe)
    report = compare(result.raw_pi1, expected, result.pi1_verified)
    payload = {
        "status": report.status,
        "failing_oracle": report.failing_oracle,
        "details": list(report.details),
        "pi1": fp.format_presentation(result.pi1),
        "expected": fp.format_presentation(expected),
    }
    lines = [f"pi1: {payload['pi1']}", f"expected: {payload['expected']}", f"status: {report.status}"]
    if report.failing_oracle:
        lines.append(f"failing oracle: {report.failing_oracle}")
    lines += [f"  {d}" for d in report.details]
    _emit(args, payload, lines)
    return {"verified": EXIT_OK, "consistent-with": EXIT_OK, "mismatch": EXIT_MISMATCH}.get(report.status, EXIT_UNVERIFIABLE)


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_PARSE, f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--registry", help=f"block registry file (default: ${REGISTRY_ENV} or the bundled file)")
    common.add_argument("--timing", action="store_true", help="report elapsed time on stderr")

    parser = _Parser(prog="chernplan", description="Chern-number geography planner for symplectic 4- and 6-manifolds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("blocks", parents=[common], help="list registered blocks")
    p.add_argument("filter", nargs="?", help="substring of the block id")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("eval", parents=[common], help="evaluate a recipe file")
    p.add_argument("recipe")
    p.add_argument("--dot", help="write a DOT graph of the recipe")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("realize", parents=[common], help="build a recipe for a Chern triple")
    p.add_argument("--c13", type=int, required=True)
    p.add_argument("--c1c2", type=int, required=True)
    p.add_argument("--c3", type=int, required=True)
    p.add_argument("--group", default="", help='presentation, e.g. "a,b | a a; b b b"')
    p.add_argument("--emit", help="write the recipe JSON here")
    p.add_argument("--dot", help="write a DOT graph here")
    p.add_argument("--max-chi", type=int, default=None, help="largest chi_h scanned for the second block")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("geography", parents=[common], help="enumerate realized (c1^2, chi_h) points")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--chi-window", required=True, help="a..b")
    spin = p.add_mutually_exclusive_group()
    spin.add_argument("--spin", dest="spin", action="store_true")
    spin.add_argument("--nonspin", dest="spin", action="store_false")
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--coordinates", choices=("euler_shift", "c1sq_shift"), default="euler_shift")
    p.add_argument("--csv", help="write CSV to this path ('-' for stdout)")
    p.set_defaults(func=cmd_geography, spin=False)

    p = sub.add_parser("check-pi1", parents=[common], help="compare a recipe's pi_1 with an expected group")
    p.add_argument("recipe")
    p.add_argument("--expect", required=True)
    p.set_defaults(func=cmd_check_pi1)
    return parser


def main(argv: list[str] | None = None) -> int:
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        code = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    if getattr(args, "timing", False):
        print(f"elapsed: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code
