"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 budget exceeded (a bounds-only report
is still printed), 4 a required hypothesis was not asserted.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .algebra import AlgebraElement, dimension_formula_D, lambda1, weighted_lambda1
from .classify import (
    b0,
    ceil_sqrt_ratio,
    classify,
    classify_modular_exhaustive,
    classify_semisimple_arithmetic,
    wedderburn_solver,
)
from .codes import (
    BudgetExceeded,
    abelian_bounds,
    analyze_code,
    dimension_congruence_set,
    idempotent_search,
    subset_table,
)
from .cyclotomic import is_splitting_field, qorbits, splitting_necessary_condition
from .groups import commutator_subgroup, conjugacy_class_count, exponent
from .io import parse_field, parse_group, parse_idempotent, parse_wedderburn

EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_ASSERTION = 4
SEED = 0
CLI_BUDGET = 10**9


class InputError(Exception):
    pass


class AssertionRequired(Exception):
    pass


def _budget(text: str) -> int:
    try:
        value = int(float(text)) if any(c in text for c in ".eE") else int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid budget {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


# -- commands ---------------------------------------------------------------------


def cmd_orbits(args, field, group) -> tuple[dict, list[str]]:
    data = qorbits(group, field.q)
    sizes = sorted(data.orbit_sizes)
    out = {
        "q": data.q,
        "orbit_sizes": sizes,
        "orbits": [[group.labels[i] for i in o] for o in data.orbits],
        "l": data.l,
        "w": group.labels[data.w],
        "t_w": data.t_w,
        "exponent": data.exponent,
    }
    lines = [f"q = {data.q}, |G| = {group.n}, exp(G) = {data.exponent}",
             f"t_w = {data.t_w} (w = {group.labels[data.w]}), l = {data.l}",
             f"orbit sizes: {sorted(set(sizes))}"]
    lines += ["  {" + ", ".join(group.labels[i] for i in o) + "}" for o in data.orbits]
    return out, lines


def cmd_splitting(args, field, group) -> tuple[dict, list[str]]:
    if group.is_abelian:
        v = is_splitting_field(group, field.q, args.t)
        out = {"t": args.t, "splits": v.splits, "exponent_divides": v.exponent_divides,
               "orbit_index_divides": v.orbit_index_divides, "exponent": v.exponent, "t_w": v.t_w}
        lines = [f"extension of index {args.t} splits G: {v.splits}",
                 f"  exp(G) = {v.exponent} | q^t - 1: {v.exponent_divides}; t_w = {v.t_w} | t: {v.orbit_index_divides}"]
        return out, lines
    nec = splitting_necessary_condition(group, field.q)
    _, quotient = commutator_subgroup(group)
    exp_ab, _ = exponent(quotient)
    out = {"necessary_condition": nec, "exponent_abelianization": exp_ab}
    lines = [f"exp(H/H') = {exp_ab} divides q - 1: {nec} (necessary, not sufficient)"]
    return out, lines


def cmd_classify(args, field, group) -> tuple[dict, list[str]]:
    wd = parse_wedderburn(args.wedderburn) if args.wedderburn else None
    if group is None:
        inv = json.loads(args.invariants)
        if not args.assert_splitting and "t_w" not in inv:
            raise AssertionRequired("arithmetic-only classification needs --assert-splitting or an explicit t_w")
        report = classify_semisimple_arithmetic(
            int(inv["order"]), int(inv["abelianization"]), field.p,
            t_w=inv.get("t_w"), class_count=inv.get("classes"), wedderburn=wd,
            splitting=args.assert_splitting, splitting_reason="asserted by caller" if args.assert_splitting else None,
        )
    elif args.modular_exhaustive:
        report = classify_modular_exhaustive(group, field, args.budget)
    else:
        report = classify(group, field, wd=wd, assert_splitting=args.assert_splitting, budget=args.budget)
    out = report.to_json()
    lines = [f"verdict: {report.verdict}"]
    for r in report.rules_fired:
        lines.append(f"  [{'x' if r.holds else ' '}] {r.rule_id}: {r.statement}  {_jsonable(r.inputs)}")
    for k, v in report.quantities.items():
        lines.append(f"  {k} = {v}")
    for a in report.assertions:
        lines.append(f"  assumed: {a}")
    if report.search is not None:
        prims = report.search.primitives()
        out["primitive_idempotents"] = [_element_str(e) for e in prims]
        lines.append(f"  {len(prims)} primitive idempotents")
    return out, lines


def cmd_wedderburn(args, field, group) -> tuple[dict, list[str]]:
    if args.gamma is not None:
        gamma, s = args.gamma, args.s
    else:
        if group is None:
            raise InputError("wedderburn needs --group or --gamma")
        _, quotient = commutator_subgroup(group)
        gamma = group.n - quotient.n
        s = args.s if args.s is not None else conjugacy_class_count(group) - quotient.n
    out: dict[str, Any] = {"gamma": gamma, "b0": b0(gamma), "floor_sqrt_gamma": math.isqrt(gamma),
                           "floor_half_gamma": gamma // 2}
    lines = [f"gamma = {gamma}, b0 = {out['b0']}, floor(sqrt(gamma)) = {out['floor_sqrt_gamma']}"]
    if s is not None:
        out["s"] = s
        out["ceil_sqrt_gamma_over_s"] = ceil_sqrt_ratio(gamma, s)
        lines.append(f"s = {s}, ceil(sqrt(gamma/s)) = {out['ceil_sqrt_gamma_over_s']}")
        if s <= 64:
            sols = wedderburn_solver(gamma, s, limit=args.max_solutions)
            out["solutions"] = sols
            out["unique"] = len(sols) == 1
            lines.append(f"solutions of sum n_j^2 = gamma: {sols}")
    return out, lines


def _element_str(e: AlgebraElement) -> str:
    try:
        return e.digits()
    except ValueError:
        return repr(e)


def cmd_search(args, field, group) -> tuple[dict, list[str]]:
    s = idempotent_search(group, field, args.budget)
    prims = [(e, d) for e, d, f in zip(s.idempotents, s.dims, s.primitive) if f]
    dims: dict[int, int] = {}
    for d, f in zip(s.dims, s.primitive):
        if f:
            dims[d] = dims.get(d, 0) + 1
    out = {"idempotents": len(s.idempotents), "primitive": len(prims), "primitive_dims": dims,
           "primitive_idempotents": [{"element": _element_str(e), "dim": d} for e, d in prims]}
    lines = [f"{len(s.idempotents)} idempotents, {len(prims)} primitive; primitive dims {dims}"]
    lines += [f"  {_element_str(e)}  dim {d}" for e, d in prims]
    return out, lines


def _names(args, es: list[AlgebraElement]) -> list[str]:
    """Digit strings when short, otherwise the input source as given."""
    out = []
    for src, e in zip(args.idempotents, es):
        try:
            out.append(e.digits())
        except ValueError:
            out.append(src if len(src) <= 40 else src[:37] + "...")
    return out


def _load_idempotents(args, field, group) -> list[AlgebraElement]:
    sources = args.idempotents or []
    if not sources:
        raise InputError("no idempotents given")
    return [parse_idempotent(src, field, group) for src in sources]


def cmd_code(args, field, group) -> tuple[dict, list[str]]:
    es = _load_idempotents(args, field, group)
    wd = parse_wedderburn(args.wedderburn) if args.wedderburn else None
    certificate = None
    if args.certify:
        certificate = classify(group, field, wd=wd, assert_splitting=args.assert_splitting, budget=args.budget)
        wd = wd or certificate.wedderburn
    out: dict[str, Any] = {}
    lines: list[str] = []
    exceeded = False
    if args.subsets:
        t1 = []
        lines.append("i | lambda_1(e_i) | |H| lambda_1(e_i) | D(|H| lambda_1(e_i))")
        for i, e in enumerate(es, 1):
            lam = lambda1(e)
            x = group.n * int(lam) if field.in_prime_subfield(lam.value) else weighted_lambda1(e)
            row = {"i": i, "lambda1": str(lam), "weighted_lambda1": x, "D": dimension_formula_D(x, field.p)}
            t1.append(row)
            lines.append(f"{i} | {lam} | {x} | {row['D']}")
        t2 = []
        lines.append("")
        lines.append("I | dim | |H|/dim | d")
        for row in subset_table(es, budget=args.budget):
            exceeded |= row["distance"] is None
            entry = {"subset": row["subset"], "dim": row["dim"], "ratio": str(row["ratio"]), "distance": row["distance"]}
            if row["distance"] is None:
                entry["lower_bound"] = math.ceil(row["ratio"])
            t2.append(entry)
            d = row["distance"] if row["distance"] is not None else f">= {math.ceil(row['ratio'])} (budget)"
            lines.append("{" + ",".join(map(str, row["subset"])) + f"}} | {row['dim']} | {row['ratio']} | {d}")
        out = {"table1": t1, "table2": t2}
    else:
        reports = []
        for name, e in zip(_names(args, es), es):
            rep = analyze_code(e, budget=args.budget, certificate=certificate, wedderburn=wd)
            exceeded |= rep.distance is None
            reports.append(rep.to_json())
            d = rep.distance if rep.distance is not None else "lower bounds " + ", ".join(str(b.value) for b in rep.lower_bounds())
            lines.append(f"{name}: dim {rep.dim} ({rep.dim_method}), d = {d}, {rep.primitivity}"
                         + (f" ({rep.primitivity_reason})" if rep.primitivity_reason else ""))
        out = {"codes": reports}
    if exceeded:
        out["budget_exceeded"] = True
    return out, lines


def cmd_bounds(args, field, group) -> tuple[dict, list[str]]:
    es = _load_idempotents(args, field, group)
    entries, lines = [], []
    for name, e in zip(_names(args, es), es):
        entry: dict[str, Any] = {"element": _element_str(e)}
        one = AlgebraElement.one(field, group)
        if not e.is_zero() and e != one:
            cands = dimension_congruence_set(group, field, e)
            entry["congruence_set"] = [{"dim": c, "bound": str(b)} for c, b in cands]
            lines.append(f"{name}: dim in {[c for c, _ in cands]}")
        if group.is_abelian and group.n % field.p:
            bs = abelian_bounds(group, field, e)
            entry["bounds"] = [b.to_json() for b in bs]
            lines += [f"  {b.value}  {b.cite}" + ("  (if primitive)" if b.requires_primitive else "") for b in bs]
        entries.append(entry)
    return {"bounds": entries}, lines


COMMANDS = {
    "orbits": cmd_orbits,
    "splitting": cmd_splitting,
    "classify": cmd_classify,
    "wedderburn": cmd_wedderburn,
    "code": cmd_code,
    "search": cmd_search,
    "bounds": cmd_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field JSON, file, or bundled name (e.g. GF25)")
    common.add_argument("--group", help="group JSON, file, or bundled name (e.g. A4, SL23)")
    common.add_argument("--budget", type=_budget, default=CLI_BUDGET, help="enumeration cap (default 1e9)")
    common.add_argument("--assert-splitting", action="store_true", help="assume F_q splits the group")
    common.add_argument("--wedderburn", help="Wedderburn data JSON or file")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table")
    common.set_defaults(fmt="table")

    parser = argparse.ArgumentParser(prog="ecid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("orbits", parents=[common], help="q-orbits, t_g, l and t_w")
    p = sub.add_parser("splitting", parents=[common], help="splitting-field tests")
    p.add_argument("--t", type=int, default=1, help="extension index")
    p = sub.add_parser("classify", parents=[common], help="minimal ECD / ECID verdict")
    p.add_argument("--modular-exhaustive", action="store_true")
    p.add_argument("--invariants", help='arithmetic data instead of a group: {"order":..,"abelianization":..,"classes":..}')
    p = sub.add_parser("wedderburn", parents=[common], help="gamma, b0 and block-size solver")
    p.add_argument("--gamma", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--max-solutions", type=int, default=100)
    for name, help_ in (("code", "dimension, distance and primitivity of idempotent codes"),
                        ("bounds", "congruence set and distance bounds")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--idempotents", "--idempotent", nargs="+", dest="idempotents")
        if name == "code":
            p.add_argument("--subsets", choices=["all"], help="tabulate every subset sum")
            p.add_argument("--certify", action="store_true", help="classify the algebra first")
    sub.add_parser("search", parents=[common], help="enumerate all idempotents")
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute one job; returns (exit code, rendered output)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    header = {"tool": "ecid", "version": __version__, "command": args.command, "seed": SEED}
    try:
        field = parse_field(args.field) if args.field else None
        group = parse_group(args.group) if args.group else None
        if field is None:
            raise InputError("--field is required")
        if group is None and not (args.command == "wedderburn" or getattr(args, "invariants", None)):
            raise InputError("--group is required")
        body, lines = COMMANDS[args.command](args, field, group)
    except (InputError, json.JSONDecodeError, FileNotFoundError, KeyError) as exc:
        return EXIT_INPUT, f"error: {exc}"
    except AssertionRequired as exc:
        return EXIT_ASSERTION, f"error: {exc}"
    except BudgetExceeded as exc:
        return EXIT_BUDGET, json.dumps({**header, "error": str(exc)}, sort_keys=True)
    except ValueError as exc:
        return EXIT_INPUT, f"error: {exc}"
    code = EXIT_BUDGET if body.get("budget_exceeded") else 0
    if args.fmt == "json":
        return code, json.dumps({**header, "report": _jsonable(body)}, sort_keys=True, indent=1)
    return code, "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code in (0, EXIT_BUDGET) else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
