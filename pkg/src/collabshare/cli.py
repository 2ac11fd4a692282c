"""Command-line front end for the multi-dealer workflow.

Exit codes: 0 success, 2 usage error, 3 validation error, 4 construction
failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import files, plot
from .collab import (
    CollaborationPlan,
    build_collaboration,
    choose_modulus,
    construct_first,
    construct_followup,
)
from .errors import CollabError, ConstructionError
from .field import PrimeModulus
from .scheme import SchemeParams, Share, make_rng, recover

EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_CONSTRUCTION = 4


class CLIError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _seed(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("COLLAB_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise CLIError(f"COLLAB_SEED must be an integer, got {env!r}", EXIT_USAGE) from None
    return None


def _emit(args, text: str, doc: dict) -> None:
    if args.format == "json":
        sys.stdout.write(files.dumps(doc))
    else:
        sys.stdout.write(text)


def cmd_modulus(args) -> int:
    m = choose_modulus(args.secret, args.n)
    print(m.p)
    return 0


def cmd_deal_first(args) -> int:
    modulus = PrimeModulus(args.modulus)
    params = SchemeParams(args.t, args.n, args.secret, modulus, args.label)
    if args.crossover_x is not None:
        xs = list(args.crossover_x)
    else:
        xs = list(range(1, args.crossover_count + 1))
    if len(xs) > params.t:
        raise CLIError(f"u = {len(xs)} exceeds the threshold t = {params.t}")
    if len(xs) == params.t and xs:
        print(f"warning: u = t = {params.t}; the common participants alone can open this scheme",
              file=sys.stderr)
    f, crossover = construct_first(params, xs, make_rng(_seed(args)), args.pin_coefficients)
    scheme_doc = files.SchemeFile.from_parts(params, f, crossover)
    cross_doc = files.CrossoverFile(modulus.p, crossover.points, params.label)
    files.write(args.out, scheme_doc)
    files.write(args.crossover_out, cross_doc)
    text = f"f(x) = {f}\ncrossover: " + " ".join(f"({pt.x}, {pt.y})" for pt in crossover.points) + "\n"
    _emit(args, text, scheme_doc.to_dict())
    return 0


def cmd_deal_next(args) -> int:
    modulus = PrimeModulus(args.modulus)
    cross = files.read(args.crossover, "crossover")
    if cross.modulus != modulus.p:
        raise CLIError(f"crossover file uses p = {cross.modulus}, but --modulus is {modulus.p}")
    params = SchemeParams(args.t, args.n, args.secret, modulus, args.label)
    u = len(cross.points)
    if u >= params.t:
        raise CLIError(
            f"u = {u} crossover points but t = {params.t}: follow-up schemes need u < t "
            "(the construction cannot be used when u = t)"
        )
    for pt in cross.points:
        if not 1 <= pt.x <= params.n:
            raise CLIError(f"crossover x = {pt.x} is not a share position (1..{params.n})")
    prior = [files.read(path, "scheme").polynomial for path in args.prior or ()]
    f, retries = construct_followup(
        params, cross.crossover, prior, make_rng(_seed(args)), args.pin_filler
    )
    doc = files.SchemeFile.from_parts(params, f, cross.crossover)
    files.write(args.out, doc)
    _emit(args, f"f(x) = {f}\nretries: {retries}\n", doc.to_dict())
    return 0


def _share_line(x: int, y: int, common: bool) -> str:
    return f"({x}, {y})" + (" COMMON" if common else "")


def cmd_shares(args) -> int:
    doc = files.read(args.scheme_file, "scheme")
    label = args.label or Path(args.scheme_file).stem
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for s in doc.shares:
            schemes = (label, "crossover") if s.common else (label,)
            files.write(out / f"share-{s.x}.json", files.ShareFile(doc.modulus, s.x, s.y, schemes))
    text = "".join(_share_line(s.x, s.y, s.common) + "\n" for s in doc.shares)
    _emit(args, text, {"version": files.VERSION, "modulus": str(doc.modulus),
                       "shares": doc.to_dict()["shares"]})
    return 0


def _parse_pair(raw: str) -> tuple[int, int]:
    try:
        x, y = raw.split(":")
        return int(x), int(y)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x:y, got {raw!r}") from None


def cmd_reconstruct(args) -> int:
    modulus = PrimeModulus(args.modulus)
    shares = [Share(x, y) for x, y in args.shares]
    for path in args.share_file or ():
        sf = files.read(path, "share")
        if sf.modulus != modulus.p:
            raise CLIError(f"{path} uses p = {sf.modulus}, but --modulus is {modulus.p}")
        shares.append(Share(sf.x, sf.y))
    secret = recover(args.t, modulus, shares)
    _emit(args, f"{secret}\n", {"secret": str(secret)})
    return 0


def cmd_plot(args) -> int:
    docs = [files.read(path, "scheme") for path in args.scheme_files]
    if len({d.modulus for d in docs}) != 1:
        raise CLIError("all scheme files must share one modulus")
    labels = [Path(path).stem for path in args.scheme_files]
    polys = [d.polynomial for d in docs]
    if args.format == "points":
        body = plot.points_text(polys, labels)
    else:
        xs = sorted({x for d in docs for x in d.crossover_x}) if len(docs) > 1 else []
        body = plot.svg(polys, labels, xs)
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)
    return 0


def cmd_collaborate(args) -> int:
    plan_doc = files.read(args.plan, "plan")
    plan: CollaborationPlan = plan_doc.to_plan()
    result = build_collaboration(plan, make_rng(_seed(args)))
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    out = Path(args.out_dir)
    (out / "shares").mkdir(parents=True, exist_ok=True)
    for label, doc in files.scheme_files_from_result(result).items():
        files.write(out / f"{label}.json", doc)
    files.write(
        out / "crossover.json",
        files.CrossoverFile(plan.modulus.p, result.crossover.points, result.crossover.source),
    )
    lines = []
    for pid, entry in result.ledger.items():
        files.write(out / "shares" / f"{pid.replace('@', '-')}.json",
                    files.ShareFile.from_entry(plan.modulus.p, entry))
        lines.append(f"{pid}\t({entry.x}, {entry.y})\t{','.join(entry.schemes)}")
    text = "\n".join(lines) + "\n"
    doc = {
        "version": files.VERSION,
        "retry_counts": [str(r) for r in result.retry_counts],
        "ledger": {pid: {"x": str(e.x), "y": str(e.y), "schemes": list(e.schemes)}
                   for pid, e in result.ledger.items()},
    }
    _emit(args, text, doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collabshare",
        description="Threshold schemes that share crossover points between dealers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, seed: bool = False) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help="RNG seed (falls back to $COLLAB_SEED, then OS entropy)")

    p = sub.add_parser("modulus", help="agree on the smallest admissible prime")
    p.add_argument("--secret", type=int, action="append", required=True)
    p.add_argument("--n", type=int, action="append", required=True)
    p.set_defaults(func=cmd_modulus)

    p = sub.add_parser("deal-first", help="first dealer: draw a curve and export crossover points")
    for name in ("--t", "--n", "--secret", "--modulus"):
        p.add_argument(name, type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--crossover-count", type=int)
    group.add_argument("--crossover-x", type=int, nargs="+")
    p.add_argument("--pin-coefficients", type=int, nargs="+", metavar="A",
                   help="fix a_1 .. a_{t-1} instead of drawing them")
    p.add_argument("--label", default="scheme-1")
    p.add_argument("--out", required=True)
    p.add_argument("--crossover-out", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_deal_first)

    p = sub.add_parser("deal-next", help="later dealer: build a curve through the crossover points")
    for name in ("--t", "--n", "--secret", "--modulus"):
        p.add_argument(name, type=int, required=True)
    p.add_argument("--crossover", required=True)
    p.add_argument("--pin-filler", type=int, nargs="+", metavar="Y",
                   help="fix the first attempt's filler y values")
    p.add_argument("--prior", nargs="+", help="scheme files whose curves must not be repeated")
    p.add_argument("--label", default="scheme-2")
    p.add_argument("--out", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_deal_next)

    p = sub.add_parser("shares", help="list a scheme file's shares")
    p.add_argument("scheme_file")
    p.add_argument("--out-dir", help="also write one share file per participant")
    p.add_argument("--label")
    common(p)
    p.set_defaults(func=cmd_shares)

    p = sub.add_parser("reconstruct", help="recover a secret from x:y shares")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("shares", nargs="*", type=_parse_pair, metavar="X:Y")
    p.add_argument("--share-file", nargs="+")
    common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("plot", help="draw curves over one period")
    p.add_argument("scheme_files", nargs="+")
    p.add_argument("--out")
    p.add_argument("--format", choices=("svg", "points"), default="svg")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("collaborate", help="build a whole collaboration from a plan file")
    p.add_argument("--plan", required=True)
    p.add_argument("--out-dir", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_collaborate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (CollabError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
