"""Command-line front end.

Vectors are given as space-separated integers, e.g. ``soclevec minh 0 0 1 0 2 4 2 5``.
Every subcommand builds one JSON-ready dict; the text rendering is derived
from that same dict, so ``--json`` and plain output carry the same data.

Exit codes: 0 on success, 1 on invalid input or a failed verification,
2 when a search budget ran out before an answer was reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable, Sequence

from . import macaulay, oracle, resolution, uniqueness
from .monomial_algebra import format_monomial, lex_ideal_for_h, sort_desc
from .vectors import (
    InvalidVector,
    SocleVector,
    max_socle_for_h,
    min_codimension,
    min_h_for_socle,
    validate_h,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _socle(values: Sequence[int]) -> SocleVector:
    return SocleVector(tuple(values))


def _join(values) -> str:
    return " ".join(map(str, values))


# -- subcommands: each returns (data, text, exit code) ----------------------


def cmd_expand(args):
    exp = macaulay.expand(args.n, args.i)
    shifts = {}
    for a in range(-exp.last_index if exp.terms else -args.i, 2):
        shifts[f"{a:+d}" if a else "0"] = macaulay.shift(exp, a)
    data = {
        "n": args.n,
        "i": args.i,
        "terms": [list(t) for t in exp.terms],
        "expansion": str(exp),
        "shifts": shifts,
    }
    lines = [f"{args.n} = {exp}", "shift  value"]
    lines += [f"{a:>5}  {v}" for a, v in shifts.items()]
    return data, "\n".join(lines), EXIT_OK


def cmd_bound(args):
    value = macaulay.macaulay_bound(args.h_d, args.d)
    data = {"h_d": args.h_d, "d": args.d, "bound": value}
    return data, str(value), EXIT_OK


def cmd_minh(args):
    s = _socle(args.s)
    h = min_h_for_socle(s)
    return {"s": list(s), "h": list(h)}, str(h), EXIT_OK


def cmd_maxsocle(args):
    h = validate_h(args.h)
    s = max_socle_for_h(h)
    return {"h": list(h), "s": list(s)}, str(s), EXIT_OK


def cmd_mincodim(args):
    s = _socle(args.s)
    r = min_codimension(s)
    return {"s": list(s), "r": r}, str(r), EXIT_OK


def cmd_lexideal(args):
    h = validate_h(args.h)
    ideal = lex_ideal_for_h(h, args.top)
    gens = ideal.all_generators()
    data = {
        "h": list(h),
        "ideal": ideal.to_json(),
        "generators": {str(d): [format_monomial(m) for m in sort_desc(g)] for d, g in gens.items()},
    }
    lines = [f"I_{d}: {', '.join(monos)}" for d, monos in data["ideal"]["pieces"].items()]
    lines.append("generators:")
    lines += [f"  degree {d}: {', '.join(monos)}" for d, monos in data["generators"].items()]
    return data, "\n".join(lines), EXIT_OK


def cmd_betti(args):
    h = validate_h(args.h)
    table = resolution.lex_betti(h)
    check = resolution.eq1_check(h, table)
    data = {"h": list(h), "betti": table.to_json(), "identity_holds": check.ok, "residual": check.residual}
    text = table.format_grid() + f"\nBetti identity: {'holds' if check.ok else 'FAILS, residual ' + str(check.residual)}"
    return data, text, EXIT_OK


def cmd_cancellations(args):
    h = validate_h(args.h)
    report = resolution.possible_cancellations(h)
    data = {"h": list(h), **report.to_json()}
    if not report:
        return data, "no possible cancellations", EXIT_OK
    lines = [
        f"R(-{d}): multiplicity {m}, socle degree {d - report.r}"
        for d, m in zip(report.shifts, report.multiplicities)
    ]
    return data, "\n".join(lines), EXIT_OK


def _witness_text(w: uniqueness.Witness) -> list[str]:
    lines = [f"  witness ({w.kind}): s = {w.claimed_s}  [{w.note}]"]
    if w.predicted is not None and not w.matches_prediction:
        lines.append(f"    predicted s = {w.predicted}")
    payload = w.to_json()
    if w.kind == "monomial-ideal":
        for d, monos in payload["ideal"]["pieces"].items():
            lines.append(f"    J_{d}: {', '.join(monos)}")
    else:
        for d, forms in payload["module"]["generators"].items():
            lines.append(f"    degree {d}: {'; '.join(forms)}")
    return lines


def cmd_unique(args):
    h = validate_h(args.h)
    budget = oracle.Budget(max_nodes=args.budget) if args.budget is not None else None
    verdict = uniqueness.decide(h, seed=args.seed, oracle_budget=budget)
    data = {"h": list(h), "max_socle": list(max_socle_for_h(h)) if h.e >= 1 else None, **verdict.to_json()}
    lines = [f"h = {h}", f"verdict: {verdict.status}"]
    if data["max_socle"] is not None:
        lines.append(f"maximal socle-vector: {_join(data['max_socle'])}")
    lines += [f"reason: {r}" for r in verdict.reasons]
    lines += [f"condition {c.label()}: predicted s = {c.predicted}" for c in verdict.conditions]
    for w in verdict.witnesses:
        lines += _witness_text(w)
    code = EXIT_OK
    if verdict.status == uniqueness.UNDECIDED and budget is not None and budget.exhausted:
        code = EXIT_BUDGET
    return data, "\n".join(lines), code


def cmd_forced(args):
    h = validate_h(args.h)
    alpha = resolution.forced_socle_entry(h, args.d)
    weaker = resolution.maximal_growth_into_entry(h, args.d)
    data = {"h": list(h), "d": args.d, "socle_degree": args.d - 1, "alpha": alpha, "weaker_criterion": weaker}
    if alpha is None:
        text = f"no forced entry: h does not grow maximally from degree {args.d}"
    else:
        text = f"alpha = {alpha}"
        if weaker is None:
            text += "\n(out of scope for the maximal-growth-into-d criterion)"
    return data, text, EXIT_OK


def cmd_catalog(args):
    h = validate_h(args.h)
    budget = oracle.Budget(max_nodes=args.budget) if args.budget is not None else oracle.Budget()
    catalog = oracle.socle_catalog(h, budget)
    data = catalog.to_json()
    lines = [
        f"h = {h}: {catalog.ideal_count} monomial ideals, "
        f"{'exhaustive' if catalog.exhaustive else 'budget exhausted, partial'} (monomial ideals only)"
    ]
    lines += [f"  s = {_join(entry['s'])}" for entry in data["socle_vectors"]]
    return data, "\n".join(lines), EXIT_OK if catalog.exhaustive else EXIT_BUDGET


def cmd_compressed(args):
    h = uniqueness.compressed_gorenstein_h(args.m, args.d, args.r)
    data = {"m": args.m, "d": args.d, "r": args.r, "h": list(h)}
    if args.check:
        form, trail = uniqueness.verified_power_sum(args.m, args.d, args.r, seed=args.seed)
        data["checked_seed"] = trail
        return data, f"{h}\nverified with seed {trail}", EXIT_OK
    return data, str(h), EXIT_OK


def _load_witnesses(payload) -> list[uniqueness.Witness]:
    if isinstance(payload, dict) and "witnesses" in payload:
        payload = payload["witnesses"]
    if isinstance(payload, dict):
        payload = [payload]
    return [uniqueness.Witness.from_json(item) for item in payload]


def cmd_verify_witness(args):
    with open(args.file, encoding="utf-8") as fh:
        witnesses = _load_witnesses(json.load(fh))
    results = []
    for w in witnesses:
        h, s = uniqueness.measure(w, exact=args.exact)
        try:
            uniqueness.verify_witness(w, exact=args.exact)
            ok, message = True, "ok"
        except uniqueness.WitnessError as exc:
            ok, message = False, str(exc)
        results.append({"h": list(h), "s": list(s), "ok": ok, "message": message})
    data = {"file": args.file, "results": results, "all_ok": all(r["ok"] for r in results)}
    lines = [f"h = {_join(r['h'])}  s = {_join(r['s'])}: {r['message']}" for r in results]
    return data, "\n".join(lines) or "no witnesses in file", EXIT_OK if data["all_ok"] else EXIT_INVALID


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized constructions")

    parser = _Parser(
        prog="soclevec",
        description="h-vectors, socle-vectors and the uniqueness question for artinian algebras.",
        fromfile_prefix_chars="@",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    p = add("expand", cmd_expand, "i-binomial expansion of N and its shifts")
    p.add_argument("n", type=int)
    p.add_argument("i", type=int)

    p = add("bound", cmd_bound, "largest admissible h_{d+1} after h_d")
    p.add_argument("h_d", type=int)
    p.add_argument("d", type=int)

    p = add("minh", cmd_minh, "minimal h-vector for a socle-vector")
    p.add_argument("s", type=int, nargs="+")

    p = add("maxsocle", cmd_maxsocle, "maximal socle-vector for an h-vector")
    p.add_argument("h", type=int, nargs="+")

    p = add("mincodim", cmd_mincodim, "least codimension for a socle-vector")
    p.add_argument("s", type=int, nargs="+")

    p = add("lexideal", cmd_lexideal, "lex-segment ideal of an h-vector")
    p.add_argument("h", type=int, nargs="+")
    p.add_argument("--top", type=int, default=None, help="store pieces through this degree (default e+1)")

    p = add("betti", cmd_betti, "Eliahou-Kervaire Betti table of the lex ideal, with the Hilbert series check")
    p.add_argument("h", type=int, nargs="+")

    p = add("cancellations", cmd_cancellations, "shifts shared by the last two lex resolution modules")
    p.add_argument("h", type=int, nargs="+")

    p = add("unique", cmd_unique, "decide whether the socle-vector is determined by h")
    p.add_argument("h", type=int, nargs="+")
    p.add_argument("--budget", type=int, default=None, help="node budget for the oracle when r >= 4")

    p = add("forced", cmd_forced, "socle entry in degree D-1 forced by maximal growth from D")
    p.add_argument("h", type=int, nargs="+", help="h-vector followed by D")

    p = add("catalog", cmd_catalog, "socle-vectors of all monomial ideals with h-vector h")
    p.add_argument("h", type=int, nargs="+")
    p.add_argument("--budget", type=int, default=None, help="node budget (default from SOCLEVEC_MAX_NODES)")

    p = add("compressed", cmd_compressed, "h-vector of m generic d-th powers in r variables")
    p.add_argument("m", type=int)
    p.add_argument("d", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--check", action="store_true", help="also build a power sum and confirm the vector")

    p = add("verify-witness", cmd_verify_witness, "re-check witnesses stored as JSON")
    p.add_argument("file")
    p.add_argument("--exact", action="store_true", help="use rational ranks even for monomial modules")

    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "forced":
            if len(args.h) < 3:
                raise UsageError("forced needs an h-vector followed by the degree D")
            args.h, args.d = args.h[:-1], args.h[-1]
        data, text, code = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_INVALID
    except InvalidVector as exc:
        where = f" (degree {exc.degree})" if exc.degree is not None else ""
        print(f"invalid vector{where}: {exc}", file=err)
        return EXIT_INVALID
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    except uniqueness.GenericityError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    if args.json:
        json.dump(data, out, indent=2)
        out.write("\n")
    else:
        out.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
