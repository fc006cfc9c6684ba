"""Command-line front end.

Exit status: 0 on success, 1 when a computation is refused or a check
fails, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .bases import convert, product_in_basis
from .core import NHopfError, ParseError, Signature, parse_forest
from .hopf import HopfElement, NaturalHopfAlgebra
from .lattice import hasse_export, interval
from .operad import AssociativeOperad, FreeOperad, MasOperad
from .realization import RelatedAlphabet, canonical_alphabet, realize
from .special import fdb_construct, levels_alphabet, wqsym_expansion
from .verify import SUITES, run_suites

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


def _common_options() -> argparse.ArgumentParser:
    # defaults are suppressed so options may appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--sig", default=S, metavar="SPEC|FILE",
                   help="signature, inline as 'a:1,b:2' or a file of 'name arity' lines")
    p.add_argument("--as", dest="assoc", action="store_true", default=S,
                   help="use the associative operad")
    p.add_argument("--mas", action="store_true", default=S,
                   help="use the multiset operad MAs over --sig")
    p.add_argument("--basis", choices=("E", "F", "H"), default=S)
    p.add_argument("--max-degree", type=int, default=S)
    p.add_argument("--format", choices=("text", "json", "dot"), default=S)
    p.add_argument("--alphabet", default=S, metavar="FILE|canonical:L,M|levels:N")
    return p


DEFAULTS = {"sig": None, "assoc": False, "mas": False, "basis": "E", "max_degree": 3,
            "format": "text", "alphabet": None}


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="nhopf", parents=[common],
        description="Natural Hopf algebras of operads: products, coproducts, bases, "
                    "lattices and polynomial realizations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("product", parents=[common], help="product of two basis elements")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("coproduct", parents=[common], help="coproduct of an E-basis element")
    p.add_argument("word")

    p = sub.add_parser("antipode", parents=[common], help="antipode of an E-basis element")
    p.add_argument("word")

    p = sub.add_parser("convert", parents=[common], help="change basis among E, F, H")
    p.add_argument("word")
    p.add_argument("--to", required=True, choices=("E", "F", "H"))

    p = sub.add_parser("lattice", parents=[common], help="easterly wind interval of a word")
    p.add_argument("--word", required=True, help="generator word, e.g. cab or 'c a b'")
    p.add_argument("--join", nargs=2, metavar="FOREST")
    p.add_argument("--meet", nargs=2, metavar="FOREST")

    p = sub.add_parser("realize", parents=[common], help="polynomial realization of an E-basis element")
    p.add_argument("word")

    p = sub.add_parser("expand-wqsym", parents=[common], help="expansion on packed words")
    p.add_argument("word")

    p = sub.add_parser("fdb", parents=[common], help="Faà di Bruno algebras FdB_{r,s}")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("action", choices=("expand", "regroup", "realize", "coproduct"))
    p.add_argument("word", help="word of multisets, e.g. '{a,a,b} {a}'")
    p.add_argument("--bound", type=int, default=4, help="level alphabet bound")

    p = sub.add_parser("verify", parents=[common], help="run bounded verification suites")
    p.add_argument("--suite", default="all", help=f"all or a comma list of {','.join(SUITES)}")
    return parser


# ---------------------------------------------------------------------------


def _algebra(args) -> NaturalHopfAlgebra:
    if args.assoc:
        if args.sig or args.mas:
            raise UsageError("--as cannot be combined with --sig or --mas")
        return NaturalHopfAlgebra(AssociativeOperad())
    if not args.sig:
        raise UsageError("a signature is required (--sig) unless --as is given")
    sig = Signature.load(args.sig)
    if args.mas:
        return NaturalHopfAlgebra(MasOperad(sig))
    return NaturalHopfAlgebra(FreeOperad(sig))


def _signature(args) -> Signature:
    if not args.sig:
        raise UsageError("a signature is required (--sig)")
    return Signature.load(args.sig)


def _alphabet(args, sig: Signature) -> RelatedAlphabet:
    spec = args.alphabet
    if not spec:
        raise UsageError("--alphabet is required")
    kind, _, rest = spec.partition(":")
    try:
        if kind == "canonical" and rest:
            L, M = (int(x) for x in rest.split(","))
            return canonical_alphabet(sig, L, M)
        if kind == "levels" and rest:
            return levels_alphabet(sig, int(rest))
    except ValueError:
        raise UsageError(f"malformed alphabet argument {spec!r}") from None
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"alphabet {spec!r} is neither a file nor canonical:L,M nor levels:N")
    try:
        return RelatedAlphabet.load(path)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in alphabet file: {e.msg}", e.doc, e.pos) from None


def _emit(args, obj, text: str) -> str:
    if args.format == "dot":
        raise UsageError("--format dot is only available for the lattice command")
    if args.format == "json":
        data = obj if isinstance(obj, dict) else obj.to_json()
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    return text + "\n"


def _element(alg: NaturalHopfAlgebra, text: str, basis: str) -> HopfElement:
    return alg.parse(text, basis)


def cmd_product(args) -> str:
    alg = _algebra(args)
    x, y = _element(alg, args.left, args.basis), _element(alg, args.right, args.basis)
    res = product_in_basis(x, y, args.basis)
    return _emit(args, res, str(res))


def cmd_coproduct(args) -> str:
    alg = _algebra(args)
    x = _element(alg, args.word, args.basis)
    if x.basis != "E":
        x = convert(x, "E")
    res = alg.coproduct(x)
    return _emit(args, res, str(res))


def cmd_antipode(args) -> str:
    alg = _algebra(args)
    x = _element(alg, args.word, args.basis)
    if x.basis != "E":
        x = convert(x, "E")
    res = alg.antipode(x)
    return _emit(args, res, str(res))


def cmd_convert(args) -> str:
    alg = _algebra(args)
    res = convert(_element(alg, args.word, args.basis), args.to)
    return _emit(args, res, str(res))


def cmd_lattice(args) -> str:
    sig = _signature(args)
    word = args.word.split() if " " in args.word.strip() else list(args.word.strip())
    iv = interval(sig, word)
    extra = {}
    for op in ("join", "meet"):
        pair = getattr(args, op)
        if pair:
            f, g = (parse_forest(x, sig) for x in pair)
            extra[op] = (getattr(iv, op)(f, g)).key
    if args.format == "dot":
        if extra:
            raise UsageError("--join/--meet cannot be combined with --format dot")
        return hasse_export(iv, "dot")
    if args.format == "json":
        data = iv.to_json()
        data.update(extra)
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    lines = [
        f"word: {' '.join(iv.word)}",
        f"bottom: {iv.bottom}",
        f"top: {iv.top}",
        f"elements: {len(iv)}",
        f"cover pairs: {len(iv.cover_pairs)}",
        f"word class size: {iv.word_class_size}",
    ]
    lines += [f"{op}: {v}" for op, v in extra.items()]
    return "\n".join(lines) + "\n"


def cmd_realize(args) -> str:
    alg = _algebra(args)
    if not isinstance(alg.operad, FreeOperad):
        raise NHopfError("realize needs a free operad (--sig without --mas)")
    A = _alphabet(args, alg.operad.signature)
    x = _element(alg, args.word, args.basis)
    if x.basis != "E":
        x = convert(x, "E")
    res = realize(x, A)
    return _emit(args, res, str(res))


def cmd_expand_wqsym(args) -> str:
    sig = _signature(args)
    res = wqsym_expansion(parse_forest(args.word, sig))
    return _emit(args, res, str(res))


def cmd_fdb(args) -> str:
    H = fdb_construct(args.r, args.s)
    w = H.parse(args.word)
    if args.action == "expand":
        res = H.expand(w)
        return _emit(args, res, str(res))
    if args.action == "realize":
        res = H.realize(w, args.bound)
        return _emit(args, res, str(res))
    if args.action == "coproduct":
        res = H.coproduct(w)
        return _emit(args, res, str(res))
    groups = H.regroup(w, args.bound)
    data = {
        "format_version": FORMAT_VERSION,
        "groups": [{"coeff": c, "representative": f.key} for c, f, _ in groups],
    }
    text = "\n".join(f"{c} × [{f}]" for c, f, _ in groups)
    return _emit(args, data, text)


def cmd_verify(args) -> str:
    names = list(SUITES) if args.suite == "all" else [s.strip() for s in args.suite.split(",")]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    checks = run_suites(names, args.max_degree)
    ok = all(c.ok for c in checks)
    data = {"format_version": FORMAT_VERSION, "max_degree": args.max_degree, "ok": ok,
            "checks": [c.to_json() for c in checks]}
    rows = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}  ({c.checked} cases"
            + (f", {c.failed} failed: {'; '.join(c.failures)}" if not c.ok else "") + ")"
            for c in checks]
    rows.append(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
    out = _emit(args, data, "\n".join(rows))
    if not ok:
        raise _Failed(out)
    return out


class _Failed(Exception):
    def __init__(self, output: str):
        self.output = output


COMMANDS = {
    "product": cmd_product,
    "coproduct": cmd_coproduct,
    "antipode": cmd_antipode,
    "convert": cmd_convert,
    "lattice": cmd_lattice,
    "realize": cmd_realize,
    "expand-wqsym": cmd_expand_wqsym,
    "fdb": cmd_fdb,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        out = COMMANDS[args.command](args)
    except _Failed as e:
        sys.stdout.write(e.output)
        return 1
    except (ParseError, UsageError) as e:
        print(f"nhopf: error: {e}", file=sys.stderr)
        return 2
    except (NHopfError, ValueError, TypeError) as e:
        print(f"nhopf: error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
