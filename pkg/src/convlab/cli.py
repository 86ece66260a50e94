"""``convlab`` command line: search, certify, convert, distances.

Exit status: 0 success or property true, 1 property false, 2 infeasible
within budget, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .convcode import (
    DEFAULT_BUDGET,
    CodeParams,
    ConvCode,
    Infeasible,
    check_profile,
    column_distance_oracle,
    free_distance_oracle,
)
from .fileio import ParseError, dumps, read
from .gf import FieldError, is_prime
from .lsys import Realization, code_from_realization, column_distance_from_realization, free_distance_from_realization
from .lsys import markov as markov_blocks
from .realize import MarkovSeq, RealizationFailure, partial_realization, realization_from_code
from .search import SearchConfig, SearchFailed, default_ladder, search
from .toeplitz import CertificationTooLarge, certify_MDP, certify_sMDS

EXIT_TRUE, EXIT_FALSE, EXIT_INFEASIBLE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(lines: Sequence[str], out) -> None:
    for line in lines:
        print(line, file=out)


# -- distances -----------------------------------------------------------------

def _distance_backend(doc):
    """(d_j function, d_free function, params) for any document type."""
    if isinstance(doc, ConvCode):
        return (lambda j, b: column_distance_oracle(doc, j, b)), (lambda b: free_distance_oracle(doc, b)), doc.params
    if isinstance(doc, MarkovSeq):
        try:
            doc = partial_realization(doc, doc.params.delta)
        except RealizationFailure as e:
            raise InputError(str(e)) from None
    R: Realization = doc
    return (lambda j, b: column_distance_from_realization(R, j, b)), (lambda b: free_distance_from_realization(R, b)), R.params


def distance_lines(doc, jmax: int | None, budget: int) -> tuple[list[str], list[int], int]:
    dcol, dfree, p = _distance_backend(doc)
    jmax = p.M if jmax is None else jmax
    profile = [dcol(j, budget) for j in range(jmax + 1)]
    check_profile(profile, p)
    free = dfree(budget)
    lines = [f"dcol {j} {d}" for j, d in enumerate(profile)] + [f"dfree {free}"]
    return lines, profile, free


# -- certification -------------------------------------------------------------

def certify_doc(doc, prop: str, budget: int = DEFAULT_BUDGET) -> tuple[list[str], bool]:
    if prop == "distances":
        lines, _, _ = distance_lines(doc, None, budget)
        return lines, True
    if isinstance(doc, ConvCode):
        p = doc.params
        j, want, name = (p.L, p.col_bound(p.L), "MDP") if prop == "mdp" else (p.M, p.singleton, "sMDS")
        d = column_distance_oracle(doc, j, budget)
        ok = d == want
        return [f"cert {name} {'true' if ok else 'false'}", f"dcol {j} {d}"], ok
    if isinstance(doc, Realization):
        p = doc.params
        blocks = markov_blocks(doc, p.M + 1)
    else:
        p, blocks = doc.params, list(doc.blocks)
    res = certify_MDP(blocks[:p.L + 1], p) if prop == "mdp" else certify_sMDS(blocks, p)
    return res.lines(), res.ok


def convert_doc(doc, target: str):
    if target == "code":
        if isinstance(doc, ConvCode):
            return doc
        if isinstance(doc, MarkovSeq):
            doc = partial_realization(doc, doc.params.delta)
        return code_from_realization(doc)
    if isinstance(doc, Realization):
        return doc
    if isinstance(doc, MarkovSeq):
        return partial_realization(doc, doc.params.delta)
    return realization_from_code(doc)


# -- commands ------------------------------------------------------------------

def _figure(profile: list[int], params: CodeParams, path: Path, dfree: int | None) -> None:
    from .plotting import profile_figure

    profile_figure(profile, params, path, dfree)


def cmd_search(args, out) -> int:
    if args.char is not None and not is_prime(args.char):
        raise InputError(f"--char {args.char} is not prime")
    try:
        params = CodeParams(args.n, args.k, args.delta)
        cfg = SearchConfig(params, default_ladder(args.char or 2), trials=args.trials, seed=args.seed,
                           budget=args.budget, oracle=args.oracle)
    except ValueError as e:
        raise InputError(str(e)) from None
    try:
        res = search(cfg)
    except SearchFailed as e:
        print(f"search failed {e}", file=out)
        return EXIT_INFEASIBLE
    text = res.report()
    out.write(text)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.txt").write_text(text, encoding="ascii")
        (d / "markov.txt").write_text(dumps(res.markov), encoding="ascii")
        (d / "realization.txt").write_text(dumps(res.realization), encoding="ascii")
        (d / "code.txt").write_text(dumps(res.code), encoding="ascii")
        if res.oracle_status == "confirmed":
            try:
                lines, profile, free = distance_lines(res.realization, None, args.budget)
            except Infeasible:
                pass
            else:
                (d / "distances.txt").write_text("\n".join(lines) + "\n", encoding="ascii")
                _figure(profile, params, d / "profile.png", free)
    return EXIT_TRUE


def cmd_certify(args, out) -> int:
    lines, ok = certify_doc(read(args.file), args.property, args.budget)
    _emit(lines, out)
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_convert(args, out) -> int:
    try:
        doc = convert_doc(read(args.file), args.to)
    except RealizationFailure as e:
        raise InputError(str(e)) from None
    text = dumps(doc)
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        out.write(text)
    return EXIT_TRUE


def cmd_distances(args, out) -> int:
    doc = read(args.file)
    lines, profile, free = distance_lines(doc, args.jmax, args.budget)
    _emit(lines, out)
    if args.figure:
        p = doc.params
        _figure(profile, p, Path(args.figure), free)
    return EXIT_TRUE


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # usage errors are input errors, not "infeasible"
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="convlab", description="MDP / sMDS convolutional codes over finite fields")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("search", help="randomized search for a certified MDP + sMDS code")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-d", "--delta", type=int, required=True)
    s.add_argument("--char", type=int, default=None, help="characteristic of the field ladder (default 2)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=100, help="prefix draws per field")
    s.add_argument("--oracle", choices=("on", "off", "auto"), default="auto")
    s.add_argument("--out", help="directory for report, code, realization, markov and figure files")
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("certify", help="certify MDP / sMDS or print distances")
    c.add_argument("file")
    c.add_argument("--property", choices=("mdp", "smds", "distances"), required=True)
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("convert", help="convert between code and realization files")
    v.add_argument("file")
    v.add_argument("--to", choices=("code", "realization"), required=True)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_convert)

    d = sub.add_parser("distances", help="column distance profile and free distance")
    d.add_argument("file")
    d.add_argument("--jmax", type=int, default=None)
    d.add_argument("--figure", metavar="PNG", help="also draw the profile against its bounds")
    d.set_defaults(func=cmd_distances)

    for p in (s, c, d):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle enumeration budget")
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (Infeasible, CertificationTooLarge) as e:
        print(f"infeasible {e}", file=out)
        return EXIT_INFEASIBLE
    except (InputError, ParseError, FieldError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
