"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 validation or parse failure, 3 cap
exceeded, 4 internal inconsistency (a result contradicting a proven fact).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as cons
from .assembly import DEFAULT_WITNESS_CAP, check_axioms
from .census import classify_census, enumerate_semigroups
from .core import (
    DEFAULT_ISO_CAP,
    DEFAULT_POWER_CAP,
    DEFAULT_PRODUCT_CAP,
    are_isomorphic,
    direct_product,
    power_semigroup,
)
from .errors import AssemblyError, PreconditionError
from .morphisms import (
    DEFAULT_MAP_CAP,
    HomMap,
    components,
    enumerate_homomorphisms,
    image,
    is_homomorphism,
    is_injective_hom,
    kernel,
)
from .report import analysis_json, analysis_text
from .substructures import centre, is_subassembly
from .textformat import read_group, read_table, render_table, split_names

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_CAP, EXIT_INCONSISTENT = 0, 1, 2, 3, 4


class UsageError(AssemblyError):
    exit_code = EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _caps(args):
    order = args.cap_order
    return {
        "product": order or DEFAULT_PRODUCT_CAP,
        "power": order or DEFAULT_POWER_CAP,
        "iso": order or DEFAULT_ISO_CAP,
        "witness": order or DEFAULT_WITNESS_CAP,
        "group": order or cons.DEFAULT_GROUP_CAP,
        "maps": args.cap_maps or DEFAULT_MAP_CAP,
    }


def _emit(out, text: str):
    out.write(text)


def cmd_validate(args, out):
    t = read_table(args.file)
    _emit(out, f"ok: associative table of order {t.order}\n")
    return EXIT_OK


def cmd_analyze(args, out):
    a = check_axioms(read_table(args.file))
    _emit(out, analysis_json(a) if args.format == "json" else analysis_text(a))
    return EXIT_OK


def _int_arg(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"expected an integer, got {s!r}") from None


def _parse_sandwich(text: str, g) -> tuple[tuple[int, ...], ...]:
    rows = [r for r in text.split(";") if r.strip()]
    try:
        return tuple(tuple(g.base.index(v.strip()) for v in r.split(",")) for r in rows)
    except KeyError as exc:
        raise UsageError(f"sandwich matrix: {exc.args[0]}") from None


CONSTRUCT_ARITY = {
    "cyclic": 1,
    "with-zero": 1,
    "left-zero": 1,
    "right-zero": 1,
    "chain": 1,
    "product": 2,
    "power": 1,
    "rees": 2,
    "rees-paper": 0,
    "coset-assembly": 1,
    "semilattice-group": 2,
}


def cmd_construct(args, out):
    caps = _caps(args)
    kind, params = args.kind, args.params
    if kind not in CONSTRUCT_ARITY:
        raise UsageError(f"unknown construction {kind!r}; choose from {', '.join(CONSTRUCT_ARITY)}")
    if len(params) != CONSTRUCT_ARITY[kind]:
        raise UsageError(f"{kind} takes {CONSTRUCT_ARITY[kind]} argument(s)")
    if kind == "cyclic":
        t = cons.cyclic_group(_int_arg(params[0])).base
    elif kind == "with-zero":
        t = cons.with_zero(read_table(params[0]))
    elif kind == "left-zero":
        t = cons.left_zero_band(_int_arg(params[0]))
    elif kind == "right-zero":
        t = cons.right_zero_band(_int_arg(params[0]))
    elif kind == "chain":
        t = cons.chain_assembly(_int_arg(params[0]))
    elif kind == "product":
        t = direct_product(read_table(params[0]), read_table(params[1]), cap=caps["product"])
    elif kind == "power":
        t = power_semigroup(read_table(params[0]), cap=caps["power"])
    elif kind == "rees":
        g = read_group(params[0])
        p = _parse_sandwich(params[1], g)
        if not p or len({len(r) for r in p}) != 1:
            raise UsageError("sandwich matrix rows must have equal length")
        t = cons.rees_matrix(cons.ReesSpec(g, len(p[0]), len(p), p))
    elif kind == "rees-paper":
        t = cons.rees_paper()
    elif kind == "coset-assembly":
        t = cons.coset_assembly(read_group(params[0]), cap=caps["group"])
    else:
        t = cons.semilattice_times_group(read_table(params[0]), read_group(params[1]), cap=caps["product"])
    text = render_table(t)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        _emit(out, f"wrote {args.output} (order {t.order})\n")
    else:
        _emit(out, text)
    return EXIT_OK


def _parse_map_pairs(text: str) -> dict[str, str]:
    pairs = {}
    for item in split_names(text):
        if "->" not in item:
            raise UsageError(f"map entry {item!r} is not of the form name->name")
        x, y = item.split("->", 1)
        pairs[x.strip()] = y.strip()
    return pairs


def _hom_details(h: HomMap) -> list[str]:
    s, t = h.source.names, h.target.names
    lines = []
    sa, ta = h.source_analysis, h.target_analysis
    if not sa.is_assembly:
        return lines
    lines.append("  kernel: {" + ", ".join(kernel(h).names()) + "}")
    lines.append(f"  injective: {'yes' if is_injective_hom(h) else 'no'}")
    if ta.is_assembly:
        lines.append("  image: {" + ", ".join(image(h).names()) + "}")
        for e, c in components(h).items():
            body = ", ".join(f"{s[x]}->{t[y]}" for x, y in sorted(c.images.items()))
            lines.append(f"  component S_{s[e]} -> T_{t[c.target_identity]}: {body}")
    return lines


def cmd_hom(args, out):
    caps = _caps(args)
    src, dst = read_table(args.source), read_table(args.target)
    if args.map is not None:
        h = HomMap.from_names(src, dst, _parse_map_pairs(args.map))
        v = is_homomorphism(h)
        if not v:
            x, y = v.witness
            n = src.names
            _emit(out, f"not a homomorphism: witness ({n[x]},{n[y]})\n")
            return EXIT_OK
        _emit(out, "homomorphism\n" + "\n".join(_hom_details(h)) + "\n")
        return EXIT_OK
    homs = enumerate_homomorphisms(src, dst, cap=caps["maps"])
    if args.count:
        _emit(out, f"{len(homs)}\n")
        return EXIT_OK
    lines = [f"{len(homs)} homomorphism(s)"]
    for k, h in enumerate(homs):
        is_homomorphism(h)
        lines.append(f"[{k}] " + ", ".join(f"{x}->{y}" for x, y in h.pairs()))
        lines.extend(_hom_details(h))
    _emit(out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_sub(args, out):
    t = read_table(args.file)
    a = check_axioms(t)
    if not a.is_assembly:
        raise PreconditionError("table is not an assembly")
    names = split_names(args.subset)
    try:
        members = t.subset_by_names(names)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    v = is_subassembly(a, members)
    if v:
        _emit(out, "subassembly: ✓ {" + ", ".join(members.names()) + "}\n")
    else:
        x, y = v.witness
        n = t.names
        _emit(out, f"subassembly: ✗ witness ({n[x]},{n[y]}): {n[x]}·s({n[y]}) = {n[t.table[x][a.s(y)]]} not in subset\n")
    return EXIT_OK


def cmd_centre(args, out):
    z = centre(read_table(args.file))
    _emit(out, "centre: {" + ", ".join(z.names()) + "}" + (" (empty)" if not len(z) else "") + "\n")
    return EXIT_OK


def cmd_iso(args, out):
    caps = _caps(args)
    s, t = read_table(args.first), read_table(args.second)
    f = are_isomorphic(s, t, cap=caps["iso"])
    if f is None:
        _emit(out, "not isomorphic\n")
    else:
        _emit(out, "isomorphic: " + ", ".join(f"{s.names[x]}->{t.names[y]}" for x, y in enumerate(f)) + "\n")
    return EXIT_OK


def cmd_census(args, out):
    lines = []
    summary_json = {}
    for n in range(1, args.max_order + 1):
        records = enumerate_semigroups(n, allow_long=args.long, workers=args.workers)
        lines.append(f"order {n}: {len(records)} semigroups up to isomorphism")
        if args.classify:
            s = classify_census(n, strict=True, allow_long=args.long)
            for flag, count in s.counts.items():
                lines.append(f"  {flag}: {count}")
            lines.append("  equivalences: all hold")
            summary_json[n] = {"total": s.total, "counts": s.counts}
        if args.emit:
            d = Path(args.emit)
            d.mkdir(parents=True, exist_ok=True)
            for k, r in enumerate(records):
                (d / f"order{n}_{k:03d}.sgt").write_text(render_table(r.canonical_table), encoding="utf-8")
    text = "\n".join(lines) + "\n"
    if args.emit:
        Path(args.emit, "summary.txt").write_text(text, encoding="utf-8")
        if summary_json:
            Path(args.emit, "summary.json").write_text(json.dumps(summary_json, indent=2) + "\n", encoding="utf-8")
    _emit(out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="assemblies", description="Finite semigroup and assembly analyzer.")
    p.add_argument("--cap-order", type=int, default=None, help="override order caps of exponential operations")
    p.add_argument("--cap-maps", type=int, default=None, help="cap on candidate maps in homomorphism search")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a table is well formed and associative")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="assembly axioms, e/s maps, Clifford blocks")
    s.add_argument("file")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("construct", help="build a table: " + ", ".join(CONSTRUCT_ARITY))
    s.add_argument("kind")
    s.add_argument("params", nargs="*")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("hom", help="verify or enumerate homomorphisms")
    s.add_argument("source")
    s.add_argument("target")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", help="comma-separated name->name pairs")
    g.add_argument("--all", action="store_true")
    g.add_argument("--count", action="store_true")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("sub", help="subassembly criterion for a subset")
    s.add_argument("file")
    s.add_argument("--subset", required=True, help="comma-separated element names")
    s.set_defaults(func=cmd_sub)

    s = sub.add_parser("centre", help="elements commuting with everything")
    s.add_argument("file")
    s.set_defaults(func=cmd_centre)

    s = sub.add_parser("iso", help="isomorphism test")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("census", help="semigroups of small order up to isomorphism")
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--classify", action="store_true")
    s.add_argument("--emit", metavar="DIR")
    s.add_argument("--long", action="store_true", help="allow order 5 (long-running)")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_census)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except AssemblyError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
