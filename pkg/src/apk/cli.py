"""``apk``: command-line front end.

Exit status is 0 on success (a ``zero`` verdict included), 1 on bad input and
2 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import __version__
from .arthur import aubert_dual, langlands_separated, packet_count, packet_enumerate
from .ems import ExtendedMultiSegment, SegmentError, shift, validate
from .io import SchemaError, dumps, emit_ems, ems_to_obj, parse_ems, parse_parameter
from .nonvanishing import PreconditionError, explain
from .orders import enumerate_admissible_orders, swap_adjacent
from .symbol import render_symbol
from .transforms import algorithm_star, derivative_step


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_ems(args) -> ExtendedMultiSegment:
    E = parse_ems(_read(args.file))
    report = validate(E, strict=args.strict)
    if not report.ok:
        raise InputError(f"invalid extended multi-segment:\n{report}")
    return E


def _emit_or_render(E, args) -> str:
    return render_symbol(E, ascii=args.ascii) + "\n" if args.render else emit_ems(E)


def cmd_validate(args) -> str:
    E = parse_ems(_read(args.file))
    report = validate(E, strict=args.strict)
    if not report.ok:
        raise InputError(str(report))
    return "valid\n"


def cmd_render(args) -> str:
    return render_symbol(_load_ems(args), ascii=args.ascii) + "\n"


def cmd_orders(args) -> str:
    E = _load_ems(args)
    lines = []
    for blk in E.blocks:
        if args.rho is not None and blk.rho.id != args.rho:
            continue
        for order in enumerate_admissible_orders(blk.rows):
            lines.append(f"{blk.rho.id}: " + " < ".join(str(i + 1) for i in order))
    return "\n".join(lines) + "\n"


def cmd_swap(args) -> str:
    E = _load_ems(args)
    # --pos k (1-based) exchanges rows k and k+1, i.e. 0-based k-1 and k
    return _emit_or_render(swap_adjacent(E, args.rho, args.pos), args)


def cmd_nonzero(args) -> str:
    E = _load_ems(args)
    why = explain(E)
    if why is None:
        return "nonzero\n"
    return f"zero\n{why}\n" if args.explain else "zero\n"


def cmd_reduce(args) -> str:
    return _emit_or_render(algorithm_star(_load_ems(args), args.rho), args)


def cmd_derive(args) -> str:
    rec = derivative_step(_load_ems(args), args.rho)
    removed = [str(x) for _, x in rec.removed]
    if args.render:
        return f"removed: {{{', '.join(removed)}}}\n" + render_symbol(rec.result, ascii=args.ascii) + "\n"
    return dumps({"removed": removed, "result": ems_to_obj(rec.result)})


def cmd_shift(args) -> str:
    if args.t < 0:
        raise InputError("--t must be non-negative")
    return _emit_or_render(shift(_load_ems(args), args.t), args)


def cmd_dual(args) -> str:
    D = aubert_dual(_load_ems(args))
    report = validate(D)
    if not report.ok:
        print(f"warning: dual is not a valid extended multi-segment:\n{report}", file=sys.stderr)
    return _emit_or_render(D, args)


def cmd_packet(args) -> str:
    psi = parse_parameter(_read(args.param))
    if args.count:
        n = packet_count(psi, strict=args.strict)
        return dumps({"count": n}) if args.json else f"{n}\n"
    members = packet_enumerate(psi, strict=args.strict)
    if args.json:
        out = []
        for m in members:
            item = {"E": ems_to_obj(m.E)}
            if args.characters:
                item["character"] = list(m.character.signs)
            out.append(item)
        return dumps({"count": len(members), "members": out})
    parts = []
    for k, m in enumerate(members, 1):
        head = f"#{k}"
        if args.characters:
            head += f"  eta_E = {m.character}"
        parts.append(head + "\n" + render_symbol(m.E, ascii=args.ascii))
    parts.append(f"count: {len(members)}")
    return "\n\n".join(parts) + "\n"


def cmd_langlands(args) -> str:
    return f"{langlands_separated(_load_ems(args))}\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apk", description="Extended multi-segment calculus for "
                                "local Arthur packets of SO(2n+1) and Sp(2n).")
    p.add_argument("--version", action="version", version=f"apk {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true", help="also check good parity and dimension")
    common.add_argument("--ascii", action="store_true", help="render symbols with < > + -")
    common.add_argument("--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, helptext, file=True, render=False):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        if file:
            sp.add_argument("file", help="JSON document, or - for stdin")
        if render:
            sp.add_argument("--render", action="store_true", help="print the symbol instead of JSON")
        sp.set_defaults(func=func)
        return sp

    verb("validate", cmd_validate, "check every invariant")
    verb("render", cmd_render, "print the symbol grid")
    verb("orders", cmd_orders, "list admissible orders").add_argument("--rho")
    sp = verb("swap", cmd_swap, "exchange two adjacent rows", render=True)
    sp.add_argument("--rho")
    sp.add_argument("--pos", type=int, required=True, help="swap rows pos and pos+1 (1-based)")
    verb("nonzero", cmd_nonzero, "decide whether pi(E) is nonzero").add_argument(
        "--explain", action="store_true")
    verb("reduce", cmd_reduce, "run the union algorithm on the top rows", render=True).add_argument("--rho")
    verb("derive", cmd_derive, "one highest derivative step", render=True).add_argument("--rho")
    verb("shift", cmd_shift, "shift every segment by t", render=True).add_argument(
        "--t", type=int, required=True)
    verb("dual", cmd_dual, "Aubert dual formula", render=True)
    sp = verb("packet", cmd_packet, "enumerate or count a packet", file=False)
    sp.add_argument("--param", required=True, help="A-parameter JSON document")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--characters", action="store_true")
    sp.add_argument("--json", action="store_true")
    verb("langlands", cmd_langlands, "Langlands data of a separated E")
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (InputError, SchemaError, PreconditionError, SegmentError, KeyError, IndexError,
            ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
