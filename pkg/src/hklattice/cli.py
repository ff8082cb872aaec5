"""Command-line front end: ``hklattice <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

from .discform import DiscFormError, describe, discriminant_form, induced_action, is_trivial_action
from .isometry import (
    CapExceededError,
    IsometryError,
    conjugacy_partition,
    default_cap,
    element_orders,
    fixed_ranks,
    isometry_from_json,
    order_histogram,
    orthogonal_group,
)
from .lattice import LatticeError, load_lattice
from .scenarios import SCENARIOS, ScenarioError, build_picard, get_scenario, run_all, a2_surface_automorphism
from .springer import SpringerError, get_group, springer_report
from .walls import DEFAULT_BOUND, WallError, kgen_obstruction, wall_classes

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    cap: int
    bound: int
    threads: int
    fmt: str
    out: Optional[str]

    def __post_init__(self):
        if self.cap <= 0 or self.bound <= 0 or self.threads <= 0:
            raise UsageError("--cap, --bound and --threads must be positive")
        if self.fmt not in ("human", "json"):
            raise UsageError("--format must be human or json")


def _progress(msg: str):
    print(msg, file=sys.stderr, flush=True)


def _frac(x) -> str:
    return str(x)


def _emit(cfg: CliConfig, data, human: str):
    text = json.dumps(data, indent=2) if cfg.fmt == "json" else human
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _lattice(spec: str):
    try:
        return load_lattice(spec)
    except (LatticeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot parse lattice {spec!r}: {exc}") from exc


def _disc_json(L):
    F = discriminant_form(L)
    return {
        "cyclic_orders": list(F.cyclic_orders),
        "q_table": [_frac(x) for x in F.q_table],
        "b_table": [[_frac(x) for x in r] for r in F.b_table],
        "generators": [[_frac(x) for x in g] for g in F.generators],
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(args, cfg: CliConfig) -> int:
    L = _lattice(args.lattice)
    p, m = L.signature
    data = {
        "lattice": L.name(),
        "rank": L.rank,
        "signature": [p, m],
        "det": L.det,
        "even": L.is_even,
    }
    if L.is_even:
        data["discriminant"] = list(discriminant_form(L).cyclic_orders)
    disc = " + ".join(f"Z/{d}" for d in data.get("discriminant", [])) or "trivial"
    human = "\n".join([
        f"lattice:      {L.name()}",
        f"rank:         {L.rank}",
        f"signature:    ({p}, {m})",
        f"determinant:  {L.det}",
        f"even:         {'yes' if L.is_even else 'no'}",
        f"discriminant: {disc if L.is_even else 'n/a (odd lattice)'}",
    ])
    _emit(cfg, data, human)
    return EXIT_OK


def cmd_disc(args, cfg: CliConfig) -> int:
    L = _lattice(args.lattice)
    if not L.is_even:
        raise UsageError("discriminant forms need an even lattice")
    data = {"lattice": L.name(), **_disc_json(L)}
    F = discriminant_form(L)
    lines = [f"lattice: {L.name()}", f"group:   {describe(F)}"]
    for i, d in enumerate(F.cyclic_orders):
        lines.append(f"  g{i}: order {d}, q = {F.q_table[i]} mod 2")
    if args.isometry:
        try:
            with open(args.isometry) as fh:
                f = isometry_from_json(json.load(fh))
        except (OSError, ValueError, KeyError, IsometryError) as exc:
            raise UsageError(f"cannot read isometry: {exc}") from exc
        if f.lattice.gram != L.gram:
            raise UsageError("isometry acts on a different lattice")
        act = induced_action(f)
        data["action"] = [list(im) for im in act.images]
        data["action_trivial"] = is_trivial_action(act)
        lines.append("action on generators: " + ", ".join(str(im) for im in act.images))
        lines.append(f"trivial action: {'yes' if data['action_trivial'] else 'no'}")
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def _selector(text: str) -> List[int]:
    if text == "all":
        return sorted(SCENARIOS)
    if len(text) == 2 and text[0] == "a" and text[1].isdigit() and int(text[1]) in SCENARIOS:
        return [int(text[1])]
    raise UsageError(f"unknown scenario {text!r}; expected a1..a4 or all")


def cmd_verify(args, cfg: CliConfig) -> int:
    which = _selector(args.scenario)
    _progress(f"verifying {', '.join(f'a{i}' for i in which)}")
    reports = run_all(which, threads=cfg.threads, bound=cfg.bound)
    data = {"reports": [r.to_json() for r in reports],
            "overall": "pass" if all(r.overall == "pass" for r in reports) else "fail"}
    lines = []
    for r in reports:
        lines.append(f"scenario a{r.scenario}: {r.overall.upper()}")
        for c in r.checks:
            anchor = f" [{c.anchor}]" if c.anchor else ""
            lines.append(f"  {c.status:7} {c.name}{anchor}: {c.details}")
    lines.append(f"overall: {data['overall'].upper()}")
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK if data["overall"] == "pass" else EXIT_FAIL


def _group(L, cfg: CliConfig):
    _progress(f"enumerating O({L.name()})")
    return orthogonal_group(L, cfg.cap, cfg.threads)


def cmd_orthgroup(args, cfg: CliConfig) -> int:
    L = _lattice(args.lattice)
    G = _group(L, cfg)
    orders = element_orders(G)
    data = {
        "lattice": L.name(),
        "order": G.order,
        "reflection_subgroup_order": len(G.reflection_subgroup),
        "order_counts": {str(k): v for k, v in order_histogram(G).items()},
    }
    lines = [f"|O({L.name()})| = {G.order}",
             f"reflection subgroup order = {data['reflection_subgroup_order']}",
             "elements by order: " + ", ".join(f"{k}:{v}" for k, v in data["order_counts"].items())]
    if args.order_filter is not None or args.fpf:
        mask = orders > 0
        if args.order_filter is not None:
            mask &= orders == args.order_filter
        if args.fpf:
            mask &= fixed_ranks(G) == 0
        S = [G.elements[k] for k in mask.nonzero()[0]]
        W = set(G.reflection_subgroup)
        S_W = [M for M in S if M in W]
        classes_O = conjugacy_partition(G, S)
        classes_W = conjugacy_partition(G, S_W, G.reflections)
        data["filter"] = {"order": args.order_filter, "fixed_point_free": bool(args.fpf)}
        data["selected"] = len(S)
        data["classes_in_orthogonal_group"] = len(classes_O)
        data["selected_in_reflection_subgroup"] = len(S_W)
        data["classes_in_reflection_subgroup"] = len(classes_W)
        lines += [
            f"selected elements: {len(S)}",
            f"conjugacy classes in O: {len(classes_O)}",
            f"selected in reflection subgroup: {len(S_W)}, classes there: {len(classes_W)}",
        ]
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def cmd_springer(args, cfg: CliConfig) -> int:
    try:
        g = get_group(args.group)
        rep = springer_report(g, args.e, enumerate_group=args.enumerate,
                              element_cap=cfg.cap, workers=cfg.threads)
    except SpringerError as exc:
        raise UsageError(str(exc)) from exc
    lines = [
        f"group {rep['group']}, e = {rep['e']}",
        f"degrees {rep['degrees']}, codegrees {rep['codegrees']}",
        f"lambda = {rep['lambda']}, lambda* = {rep['lambda_star']}",
        f"unique regular class predicted: {'yes' if rep['regular_uniqueness'] else 'no'}",
    ]
    if "cross_check" in rep:
        lines += [
            f"enumerated max eigenspace dim over O({rep['lattice']}): {rep['enumerated_max_eigendim']}",
            f"classes in O: {rep['classes_in_orthogonal_group']}, "
            f"in reflection subgroup: {rep['classes_in_reflection_subgroup']}",
            f"cross-check: {'pass' if rep['cross_check'] else 'FAIL'}",
        ]
    _emit(cfg, rep, "\n".join(lines))
    return EXIT_OK if rep.get("cross_check", True) else EXIT_FAIL


def _squares(text: str) -> List[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --squares value {text!r}") from exc
    if not vals or any(v >= 0 for v in vals):
        raise UsageError("--squares must list negative integers")
    return vals


def cmd_walls(args, cfg: CliConfig) -> int:
    i = _selector(args.scenario)
    if len(i) != 1:
        raise UsageError("walls takes a single scenario")
    squares = _squares(args.squares)
    sc = get_scenario(i[0])
    P = build_picard(sc)
    data = {"scenario": f"a{i[0]}", "bound": cfg.bound, "squares": squares}
    lines = [f"scenario a{i[0]}, coefficient bound {cfg.bound}, squares {squares}"]
    try:
        if i[0] == 2:
            f = a2_surface_automorphism(P)
            wit = kgen_obstruction(P, f, cfg.bound, squares)
            data["witnesses"] = [w.to_json() if w else None for w in wit]
            for s, w in zip(squares, wit):
                if w is None:
                    lines.append(f"  square {s}: none in box")
                else:
                    lines.append(f"  square {s}: wall {list(w.wall)} (div {w.divisibility}) "
                                 f"orthogonal to invariant {list(w.invariant_class)} of square {w.invariant_square}")
        found = wall_classes(P, cfg.bound, squares)
    except WallError as exc:
        raise UsageError(str(exc)) from exc
    data["wall_classes"] = [{"class": list(v), "square": s} for v, s in found]
    lines.append(f"  numerical wall classes in box (up to sign): {len(found)}")
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies use SUPPRESS so they never clobber values given before the subcommand
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default=d("human"))
    common.add_argument("--threads", type=int, default=d(os.cpu_count() or 1))
    common.add_argument("--cap", type=int, default=d(None),
                        help="element cap for group enumeration (env HKLATTICE_CAP)")
    common.add_argument("--bound", type=int, default=d(DEFAULT_BOUND),
                        help="coefficient bound for wall searches")
    common.add_argument("--out", default=d(None), help="write output to this file")
    return common


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hklattice", parents=[_common_options(False)],
                                description="Exact lattice computations for K3 and K3^[2] lattices.")
    common = _common_options(True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="rank, signature, determinant, discriminant")
    s.add_argument("lattice", help='lattice spec such as "U(3)+<-2>" or @file.json')
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("disc", parents=[common], help="discriminant form and induced actions")
    s.add_argument("lattice")
    s.add_argument("--isometry", help="JSON file with {lattice, matrix}")
    s.set_defaults(func=cmd_disc)

    s = sub.add_parser("verify", parents=[common], help="run scenario checks")
    s.add_argument("scenario", help="a1, a2, a3, a4 or all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("orthgroup", parents=[common], help="orthogonal group of a definite lattice")
    s.add_argument("lattice")
    s.add_argument("--order-filter", type=int, default=None)
    s.add_argument("--fpf", action="store_true", help="keep only fixed-point-free elements")
    s.set_defaults(func=cmd_orthgroup)

    s = sub.add_parser("springer", parents=[common], help="degree-table eigenspace bounds")
    s.add_argument("group", help="f4 or e6")
    s.add_argument("e", type=int)
    s.add_argument("--no-enumerate", dest="enumerate", action="store_false",
                   help="skip the cross-check by group enumeration")
    s.set_defaults(func=cmd_springer)

    s = sub.add_parser("walls", parents=[common], help="wall classes in a coefficient box")
    s.add_argument("scenario")
    s.add_argument("--squares", default="-2,-10")
    s.set_defaults(func=cmd_walls)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cap = default_cap() if args.cap is None else args.cap
        cfg = CliConfig(cap, args.bound, args.threads, args.format, args.out)
        return args.func(args, cfg)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, IsometryError, ScenarioError, DiscFormError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
