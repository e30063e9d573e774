"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse or validation failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import families
from .dsl import read_lattice
from .export import complex_to_json, lattice_to_dot, polytope_off, simplicial_to_json
from .homology import homology
from .lattice import Lattice, LatticeError
from .triangulation import build_simplicial_hom, compare_models
from .wcomplex import (
    basis_subcomplex,
    build_hom_complex,
    cell_label,
    indecomposable_cubes,
    obstruction_pairs,
    simplified_basis,
    skeleton,
    strict_quotient,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _lattice_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--lattice", metavar="FILE", help="lattice description (.lat)")
    src.add_argument("--builtin", metavar="KIND[:N]",
                     help="chain:n, cosimplicial:n, powerset:n, mapping:n, toda, whitehead")
    p.add_argument("--from", dest="source", metavar="NODE", help="source node (default init)")
    p.add_argument("--to", dest="target", metavar="NODE", help="target node (default fin)")
    p.add_argument("--null", action="append", default=[], metavar="PATH",
                   help="extra null mark, arrows joined by '.' (repeatable)")
    p.add_argument("--strict-preset", choices=families.PRESETS,
                   help="mark relations strict as for a family quotient check")
    p.add_argument("--order", choices=("diagrammatic", "composition"), default="diagrammatic",
                   help="label order for cells")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", metavar="PATH", help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wconstruct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "validate": "check the lattice invariants",
        "complex": "f-vector and cells of a hom complex",
        "basis": "the basis subcomplex",
        "skeleton": "k-skeleton of a hom complex",
        "homology": "integer homology of a hom complex or its basis",
        "simplified": "basis with null cells collapsed",
        "quotient": "strict quotient of a hom complex",
        "indecomposables": "indecomposable cubes of the basis",
        "pairs": "obstruction pairs of indecomposable cubes",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        _lattice_args(p)
        _common(p)
        if name in ("complex", "basis", "skeleton"):
            p.add_argument("--cells", action="store_true", help="list cell labels")
        if name == "skeleton":
            p.add_argument("--k", type=int, required=True)
        if name == "homology":
            p.add_argument("--basis", action="store_true", help="use the basis subcomplex")
            p.add_argument("--simplicial", action="store_true",
                           help="also compare with the simplicial model")
        if name in ("indecomposables", "pairs"):
            p.add_argument("--dim", type=int, required=True, help="cube dimension")
    fam = sub.add_parser("family", help="polytope families and quotient checks")
    fam.add_argument("name", choices=(
        "permutohedron", "associahedron", "simplex", "cube", "tonks",
        "simplex-quotient", "cube-quotient", "mapping-simplex-quotient",
    ))
    fam.add_argument("--n", type=int, required=True)
    _common(fam)
    exp = sub.add_parser("export", help="write JSON, DOT or OFF")
    src = exp.add_mutually_exclusive_group()
    src.add_argument("--lattice", metavar="FILE")
    src.add_argument("--builtin", metavar="KIND[:N]")
    exp.add_argument("--from", dest="source", metavar="NODE")
    exp.add_argument("--to", dest="target", metavar="NODE")
    exp.add_argument("--null", action="append", default=[], metavar="PATH")
    exp.add_argument("--strict-preset", choices=families.PRESETS)
    exp.add_argument("--format", choices=("json", "dot", "off"), required=True)
    exp.add_argument("--target", dest="what", default="complex",
                     choices=("complex", "basis", "simplicial", "permutohedron", "associahedron"))
    exp.add_argument("--n", type=int, help="polytope dimension for OFF export")
    exp.add_argument("--out", metavar="PATH")
    exp.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    return parser


# -- helpers -------------------------------------------------------------------


def load_lattice(args) -> Lattice:
    if args.lattice:
        result = read_lattice(args.lattice)
        if not result.ok:
            raise InvalidInput("\n".join(map(str, result.diagnostics)))
        lattice = result.lattice
        if args.strict_preset:
            raise UsageError("--strict-preset only applies to --builtin lattices")
    elif args.builtin:
        try:
            lattice = families.parse_builtin(args.builtin, args.strict_preset)
        except LatticeError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("one of --lattice or --builtin is required")
    if args.null:
        paths = [tuple(p.split(".")) for p in args.null]
        try:
            lattice = lattice.with_nulls(lattice.nulls + tuple(paths))
        except LatticeError as exc:
            raise UsageError(f"bad --null: {exc}") from None
    report = lattice.validate()
    if not report.ok:
        raise InvalidInput(str(report))
    return lattice


def endpoints(args, lattice: Lattice) -> tuple[str, str]:
    u = args.source or lattice.init
    v = args.target or lattice.fin
    for node in (u, v):
        if node not in lattice.nodes:
            raise UsageError(f"unknown node {node!r}")
    return u, v


def _fvec(xs) -> str:
    return " ".join(map(str, xs))


def _complex_report(h, args) -> tuple[str, dict]:
    data = {"source": h.source, "target": h.target, "fvector": list(h.f_vector()),
            "euler": h.euler()}
    lines = [f"hom {h.source} -> {h.target} ({h.kind})",
             f"f-vector: {_fvec(h.f_vector())}", f"euler: {h.euler()}"]
    if getattr(args, "cells", False):
        for c in h.cells:
            lines.append(f"  dim {c.dim}  {cell_label(c, args.order)}")
    return "\n".join(lines), data


# -- commands --------------------------------------------------------------------


def cmd_validate(args):
    lattice = load_lattice(args)  # raises on failure
    n = len(lattice.morphism_classes(lattice.init, lattice.fin))
    return "ok", {"ok": True, "violations": [], "max_classes": n}


def cmd_complex(args):
    lattice = load_lattice(args)
    h = build_hom_complex(lattice, *endpoints(args, lattice))
    text, data = _complex_report(h, args)
    return text, (complex_to_json(h) if args.json else data)


def cmd_basis(args):
    lattice = load_lattice(args)
    h = basis_subcomplex(build_hom_complex(lattice, *endpoints(args, lattice)))
    text, data = _complex_report(h, args)
    return text, (complex_to_json(h) if args.json else data)


def cmd_skeleton(args):
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    lattice = load_lattice(args)
    h = skeleton(build_hom_complex(lattice, *endpoints(args, lattice)), args.k)
    text, data = _complex_report(h, args)
    return text, (complex_to_json(h) if args.json else data)


def cmd_homology(args):
    lattice = load_lattice(args)
    u, v = endpoints(args, lattice)
    h = build_hom_complex(lattice, u, v)
    target = basis_subcomplex(h) if args.basis else h
    res = homology(target)
    data = {"betti": list(res.betti), "reduced_betti": list(res.reduced()),
            "torsion": [list(t) for t in res.torsion], "euler": target.euler()}
    lines = [f"betti: {_fvec(res.betti)}", f"reduced: {_fvec(res.reduced())}"]
    if any(res.torsion):
        lines.append("torsion: " + "; ".join(f"H{k}: {list(t)}" for k, t in enumerate(res.torsion) if t))
    if args.simplicial:
        cmp = compare_models(h, build_simplicial_hom(lattice, u, v))
        data["models_agree"] = cmp.ok
        lines.append(str(cmp))
    return "\n".join(lines), data


def cmd_simplified(args):
    lattice = load_lattice(args)
    if not lattice.nulls:
        raise UsageError("the lattice has no null marks; add some with --null")
    q = simplified_basis(build_hom_complex(lattice))
    res = q.homology()
    data = {"fvector": list(q.f_vector()), "betti": list(res.betti),
            "reduced_betti": list(res.reduced()), "torsion": [list(t) for t in res.torsion],
            "collapsed_cells": len(q.collapsed.cells)}
    text = "\n".join([
        f"basis f-vector: {_fvec(q.base.f_vector())}",
        f"collapsed cells: {len(q.collapsed.cells)}",
        f"quotient f-vector: {_fvec(q.f_vector())}",
        f"betti: {_fvec(res.betti)}",
        f"reduced: {_fvec(res.reduced())}",
    ])
    return text, data


def cmd_quotient(args):
    lattice = load_lattice(args)
    q = strict_quotient(build_hom_complex(lattice, *endpoints(args, lattice)))
    word = lambda v: families.vertex_word(lattice, v.chain)  # noqa: E731
    corners = sorted(sorted(word(v) for v in c) for c in q.corner_classes)
    data = {"fvector": list(q.f_vector()), "corner_classes": corners,
            "vertex_classes": len(q.vertex_classes), "collapses": len(q.collapse_log),
            "irregularities": list(q.irregularities)}
    lines = [f"classes per dimension: {_fvec(q.f_vector())}",
             f"corner vertex classes: {len(corners)}"]
    lines += ["  {" + ", ".join(c) + "}" for c in corners]
    lines.append(f"collapsed cells: {len(q.collapse_log)}")
    lines += [f"irregular: {m}" for m in q.irregularities]
    return "\n".join(lines), data


def cmd_indecomposables(args):
    lattice = load_lattice(args)
    cubes = indecomposable_cubes(build_hom_complex(lattice, *endpoints(args, lattice)), args.dim)
    labels = [cell_label(c, args.order) for c in cubes]
    return "\n".join(labels) if labels else "(none)", {"cells": labels}


def cmd_pairs(args):
    lattice = load_lattice(args)
    pairs = obstruction_pairs(build_hom_complex(lattice, *endpoints(args, lattice)), args.dim)
    rows = [
        {"first": cell_label(p.first, args.order), "second": cell_label(p.second, args.order),
         "meet": cell_label(p.meet, args.order)}
        for p in pairs
    ]
    text = "\n".join(f"{r['first']} & {r['second']} meet in {r['meet']}" for r in rows)
    return text or "(none)", {"pairs": rows}


def cmd_family(args):
    n, name = args.n, args.name
    if n < 0:
        raise UsageError("--n must be non-negative")
    if name.endswith("-quotient"):
        kind = name[: -len("-quotient")]
        if n > 3:
            raise UsageError("quotient checks are limited to n <= 3")
        try:
            report = families.family_quotient_check(kind, n)
        except LatticeError as exc:
            raise UsageError(str(exc)) from None
        data = {"ok": report.ok, "expected": report.expected, "classes": report.classes,
                "class_counts": list(report.class_counts),
                "irregularities": list(report.irregularities)}
        if not report.ok:
            raise InvalidInput(str(report))
        return str(report), data
    if n > 4:
        raise UsageError("families are limited to n <= 4")
    if name == "tonks":
        faces = families.collapsed_faces(n)
        image = families.associahedron_faces(n)
        pe = families.permutohedron_faces(n)
        labels = [families.flag_label(op) for op in faces]
        data = {"collapsed": labels, "dims": [pe.dim[op] for op in faces],
                "image_fvector": list(image.f_vector())}
        lines = [f"{pe.dim[op]}-face {families.flag_label(op)} -> "
                 f"{families.bracketing_label(families.tonks_image(op, n), n)}" for op in faces]
        lines.append(f"image f-vector: {_fvec(image.f_vector())}")
        return "\n".join(lines), data
    poset = {
        "permutohedron": families.permutohedron_faces,
        "associahedron": families.associahedron_faces,
        "simplex": families.simplex_faces,
        "cube": families.cube_faces,
    }[name](n)
    return f"f-vector: {_fvec(poset.f_vector())}", {"fvector": list(poset.f_vector())}


def cmd_export(args):
    if args.format == "off":
        if args.what not in ("permutohedron", "associahedron") or args.n is None:
            raise UsageError("OFF export needs --target permutohedron|associahedron and --n 3")
        if args.n != 3:
            raise UsageError(f"OFF export needs a 3-dimensional polytope, got n={args.n}")
        return polytope_off(args.what, args.n), None
    if args.what in ("permutohedron", "associahedron"):
        raise UsageError(f"{args.what} can only be exported as OFF")
    lattice = load_lattice(args)
    if args.format == "dot":
        return lattice_to_dot(lattice), None
    u, v = endpoints(args, lattice)
    if args.what == "simplicial":
        data = simplicial_to_json(build_simplicial_hom(lattice, u, v))
    else:
        h = build_hom_complex(lattice, u, v)
        data = complex_to_json(basis_subcomplex(h) if args.what == "basis" else h)
    return json.dumps(data, indent=1, sort_keys=True) + "\n", None


COMMANDS = {
    "validate": cmd_validate, "complex": cmd_complex, "basis": cmd_basis,
    "skeleton": cmd_skeleton, "homology": cmd_homology, "simplified": cmd_simplified,
    "quotient": cmd_quotient, "indecomposables": cmd_indecomposables, "pairs": cmd_pairs,
    "family": cmd_family, "export": cmd_export,
}


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, data = COMMANDS[args.command](args)
        if args.json and data is not None:
            text = json.dumps(data, sort_keys=True)
        if not text.endswith("\n"):
            text += "\n"
        _emit(text, args.out)
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInput as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
