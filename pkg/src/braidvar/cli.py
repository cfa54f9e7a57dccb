"""Command-line front end.

Exit codes: 0 success, 1 domain error (for example a Demazure product that
is not the longest element), 2 usage error, 3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import counting
from .braids import BraidWord, demazure_product, parse_braid
from .cluster import cluster_via_u, cluster_variables, s_variables
from .counting import BudgetExceeded, brute_force_count, verify_decomposition
from .deodhar import (
    enumerate_distinguished,
    sequences_to_json,
    shape,
)
from .fields import FunctionField, PrimeField
from .mcs import f_map, f_map_inverse
from .braids import longest_perm
from .rulings import (
    DemazureNotLongest,
    enumerate_rulings,
    maximal_ruling,
    rulings_to_json,
)
from .svg import render_ruling, render_weave
from .weaves import build_right_simplifying, is_cycle_decomposable

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _braid_from_args(args) -> BraidWord:
    return parse_braid(args.braid, args.strands)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _selected_ruling(braid: BraidWord, args):
    if args.ruling_index is None:
        return maximal_ruling(braid)
    rulings = enumerate_rulings(braid)
    if not 0 <= args.ruling_index < len(rulings):
        raise DemazureNotLongest(
            f"ruling index {args.ruling_index} out of range (have {len(rulings)})"
        )
    return rulings[args.ruling_index]


def cmd_demazure(args) -> int:
    braid = _braid_from_args(args)
    perm = demazure_product(braid)
    one_line = [x + 1 for x in perm]
    if args.format == "json":
        _emit(args, json.dumps({"braid": list(braid.letters), "demazure": one_line}))
    else:
        _emit(args, " ".join(map(str, one_line)))
    return EXIT_OK


def cmd_rulings(args) -> int:
    braid = _braid_from_args(args)
    rulings = enumerate_rulings(braid)
    if args.format == "json":
        _emit(args, rulings_to_json(braid, rulings))
    elif args.format == "csv":
        lines = ["labels,switches,departures"]
        lines += [
            f"{r.label_string()},{r.switches},{r.departures}" for r in rulings
        ]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, "\n".join(r.label_string() for r in rulings))
    return EXIT_OK


def cmd_deodhar(args) -> int:
    braid = _braid_from_args(args)
    seqs = enumerate_distinguished(braid, longest_perm(braid.n))
    if args.format == "json":
        _emit(args, sequences_to_json(braid, seqs))
    else:
        lines = []
        for seq in seqs:
            t, c = shape(seq)
            walk = " ".join("".join(str(x + 1) for x in w) for w in seq.perms)
            lines.append(f"cases={''.join(map(str, seq.cases))} shape=({t},{c}) walk={walk}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_weave(args) -> int:
    braid = _braid_from_args(args)
    rho = _selected_ruling(braid, args)
    m = build_right_simplifying(braid, rho)
    if args.format == "svg":
        _emit(args, render_weave(m))
    else:
        _emit(args, json.dumps(m.to_json_dict()))
    return EXIT_OK


def cmd_cluster(args) -> int:
    braid = _braid_from_args(args)
    m = build_right_simplifying(braid, maximal_ruling(braid))
    values = cluster_variables(m)
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {"braid": list(braid.letters), "cluster": [str(v) for v in values]}
            ),
        )
    else:
        _emit(args, "\n".join(f"A_{k + 1} = {v}" for k, v in enumerate(values)))
    return EXIT_OK


def cmd_svars(args) -> int:
    braid = _braid_from_args(args)
    m = build_right_simplifying(braid, maximal_ruling(braid))
    values = s_variables(m)
    if args.format == "json":
        _emit(
            args,
            json.dumps({"braid": list(braid.letters), "s": [str(v) for v in values]}),
        )
    else:
        _emit(args, "\n".join(f"s_{k + 1} = {v}" for k, v in enumerate(values)))
    return EXIT_OK


def cmd_fmap(args) -> int:
    braid = _braid_from_args(args)
    m = build_right_simplifying(braid, maximal_ruling(braid))
    t = sum(1 for mv in m.moves if mv.kind == "trivalent")
    c = sum(1 for mv in m.moves if mv.kind == "cup")
    field = FunctionField()
    params = [field.var(f"y{k + 1}", "chart parameter") for k in range(t + c)]
    sr = f_map(m, params, field)
    back = f_map_inverse(m, sr, field)
    payload = {
        "braid": list(braid.letters),
        "returns": [[k, str(v)] for k, v in sr.returns],
        "switches": [[k, str(v)] for k, v in sr.switches],
        "roundtrip_identity": all(
            (a - b).is_zero() for a, b in zip(back, params)
        ),
    }
    if args.format == "json":
        _emit(args, json.dumps(payload))
    else:
        lines = [f"f: switch marks {[str(v) for _, v in sr.switches]}"]
        lines.append(f"   return marks {[str(v) for _, v in sr.returns]}")
        lines.append(f"f_inverse(f) == id: {payload['roundtrip_identity']}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_count(args) -> int:
    braid = _braid_from_args(args)
    value = brute_force_count(braid, args.field, args.budget)
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {"braid": list(braid.letters), "q": args.field, "count": value}
            ),
        )
    else:
        _emit(args, str(value))
    return EXIT_OK


def cmd_verify(args) -> int:
    braid = _braid_from_args(args)
    report = verify_decomposition(braid, args.field, args.budget)
    if args.format == "json":
        _emit(args, report.to_json())
    else:
        _emit(args, report.table())
    return EXIT_OK if report.partition_ok else EXIT_DOMAIN


def cmd_render(args) -> int:
    braid = _braid_from_args(args)
    if args.what == "weave":
        rho = _selected_ruling(braid, args)
        _emit(args, render_weave(build_right_simplifying(braid, rho)))
    else:
        rho = _selected_ruling(braid, args) if args.ruling_index is not None else None
        _emit(args, render_ruling(braid, rho))
    return EXIT_OK


def cmd_decompose(args) -> int:
    braid = _braid_from_args(args)
    result = is_cycle_decomposable(braid, budget=args.budget or 100_000)
    payload = {
        "braid": list(braid.letters),
        "status": result.status,
        "pieces": len(result.tuple_found),
        "root_y_trees": result.root_y_trees,
        "non_right_simplifying": len(result.non_right_simplifying),
    }
    if args.format == "json":
        _emit(args, json.dumps(payload))
    else:
        _emit(args, "\n".join(f"{k}: {v}" for k, v in payload.items()))
    if result.status == "budget_exhausted":
        return EXIT_BUDGET
    return EXIT_OK if result.status == "decomposable" else EXIT_DOMAIN


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    q_field = PrimeField(7)
    trials = 25
    for _ in range(trials):
        n = rng.choice([2, 3])
        length = rng.randint(3, 6)
        letters = tuple(rng.randint(1, n - 1) for _ in range(length))
        braid = BraidWord(n, letters)
        from .braids import longest_perm as _lp

        if demazure_product(braid) != _lp(n):
            continue
        for rho in enumerate_rulings(braid):
            m = build_right_simplifying(braid, rho)
            t = sum(1 for mv in m.moves if mv.kind == "trivalent")
            c = sum(1 for mv in m.moves if mv.kind == "cup")
            assert (t, c) == (rho.switches, rho.departures)
    _emit(args, f"selftest ok (seed={args.seed}, trials={trials})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidvar",
        description="Rulings, weaves, Deodhar pieces and cluster variables of braid varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_field=False):
        p.add_argument("--braid", required=True, help="letters, e.g. 1,1,2,2")
        p.add_argument("--strands", type=int, default=None)
        p.add_argument(
            "--format", choices=["json", "csv", "text", "svg"], default="text"
        )
        p.add_argument("--out", default=None)
        p.add_argument("--ruling-index", type=int, default=None)
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        if needs_field:
            p.add_argument("--field", type=int, required=True, help="prime p for F_p")

    for name, fn, needs_field in [
        ("demazure", cmd_demazure, False),
        ("rulings", cmd_rulings, False),
        ("deodhar", cmd_deodhar, False),
        ("weave", cmd_weave, False),
        ("cluster", cmd_cluster, False),
        ("svars", cmd_svars, False),
        ("fmap", cmd_fmap, False),
        ("count", cmd_count, True),
        ("verify", cmd_verify, True),
        ("decompose", cmd_decompose, False),
    ]:
        p = sub.add_parser(name)
        common(p, needs_field)
        p.set_defaults(func=fn)

    p = sub.add_parser("render")
    common(p)
    p.add_argument("--what", choices=["ruling", "weave"], default="ruling")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("selftest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "budget", None) is None and hasattr(args, "budget"):
        args.budget = counting.default_budget() if args.command in ("count", "verify") else None
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DemazureNotLongest, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
