"""Command line interface.

Subcommands: width, remove, closure, filter, check, example, enum-circ.
Exit codes: 0 success, 1 usage or parse error, 2 precondition violation,
3 internal invariant failure.  Outputs are deterministic byte-for-byte; the
LATFREE_WORKERS environment variable (default 1) only affects speed and
LATFREE_KERNELS selects the integer-scan backend.
"""

from __future__ import annotations

import argparse
import sys

from . import families
from .cuts import closure, minimal_dominating_subfamily, remove_interior
from .fileio import ParseError, format_hrep, load_polyhedron
from .lattice import (
    INFINITE_WIDTH,
    is_lattice_free,
    is_maximal_lattice_free,
    lattice_points,
    max_facet_width,
    zd_equivalent,
)
from .polyhedra import GeometryError, Polyhedron


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _width_str(w) -> str:
    return "inf" if w == INFINITE_WIDTH else str(w)


def _parse_offset_range(spec: str) -> range:
    try:
        lo, hi = spec.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise _UsageError(f"bad offset range {spec!r}; expected LO..HI")


def _family_from_args(dim: int, args) -> list[Polyhedron]:
    members: list[Polyhedron] = []
    if args.splits_max_norm is not None:
        if args.offsets is None:
            raise _UsageError("--splits-max-norm requires --offsets LO..HI")
        members.extend(
            families.splits(dim, args.splits_max_norm, _parse_offset_range(args.offsets)))
    elif args.offsets is not None:
        raise _UsageError("--offsets requires --splits-max-norm")
    for path in args.family or []:
        members.append(load_polyhedron(path))
    return members


def cmd_width(args) -> int:
    L = load_polyhedron(args.file)
    print(_width_str(max_facet_width(L)))
    return 0


def cmd_remove(args) -> int:
    P = load_polyhedron(args.p_file)
    L = load_polyhedron(args.l_file)
    R = remove_interior(P, L)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(format_hrep(R))
    return 0


def cmd_closure(args) -> int:
    P = load_polyhedron(args.p_file)
    members = _family_from_args(P.dim, args)
    result, cuts = closure(P, members, return_cuts=True)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(format_hrep(result))
    for idx, cut in cuts:
        c = cut.constraint
        tag = " infeasible" if cut.infeasible else ""
        print(f"cut {c.b} {' '.join(str(a) for a in c.a)} # body {idx}{tag}")
    return 0


def cmd_filter(args) -> int:
    P = load_polyhedron(args.p_file)
    members = [load_polyhedron(path) for path in args.family or []]
    if not members:
        raise _UsageError("filter needs at least one --family file")
    kept = minimal_dominating_subfamily(P, members)
    for body in kept:
        print(next(i for i, m in enumerate(members) if m is body))
    return 0


def cmd_check(args) -> int:
    L = load_polyhedron(args.file)
    lf = is_lattice_free(L)
    maximal = is_maximal_lattice_free(L) if lf else False
    w = max_facet_width(L)
    print(f"lattice-free: {'yes' if lf else 'no'}, "
          f"maximal: {'yes' if maximal else 'no'}, width: {_width_str(w)}")
    return 0


def cmd_example(args) -> int:
    body = families.flat_family_member(args.dim, args.k)
    text = format_hrep(body)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    pts = lattice_points(body)
    print(f"# volume: {body.volume()}")
    print(f"# volume * k * 2^(d-1): {body.volume() * args.k * 2 ** (args.dim - 1)}")
    print(f"# lattice points ({len(pts)}): " + "; ".join(
        "(" + ",".join(str(x) for x in z) + ")" for z in pts))
    print(f"# max-facet-width: {_width_str(max_facet_width(body))} "
          f"(bound {args.dim * 2 ** (args.dim - 1)})")
    return 0


def cmd_enum_circ(args) -> int:
    P = load_polyhedron(args.p_file)
    bodies = families.enumerate_circumscribed(P, args.m)
    print(f"count {len(bodies)}")
    if args.classes:
        groups: list[list[int]] = []
        reps: list[Polyhedron] = []
        for i, b in enumerate(bodies):
            for g, rep in enumerate(reps):
                if zd_equivalent(rep, b) is not None:
                    groups[g].append(i)
                    break
            else:
                reps.append(b)
                groups.append([i])
        for g, idxs in enumerate(groups):
            print(f"class {g}: " + " ".join(str(i) for i in idxs))
    for i, b in enumerate(bodies):
        print(f"# body {i}")
        sys.stdout.write(format_hrep(b))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="latfree",
                     description="Exact lattice-free cuts and closures of rational polyhedra.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("width", help="max-facet-width of a body")
    p.add_argument("file")
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("remove", help="write conv(P \\ int L)")
    p.add_argument("p_file")
    p.add_argument("l_file")
    p.add_argument("out")
    p.set_defaults(func=cmd_remove)

    p = sub.add_parser("closure", help="intersection of conv(P \\ int L) over a family")
    p.add_argument("p_file")
    p.add_argument("out")
    p.add_argument("--splits-max-norm", type=int, default=None)
    p.add_argument("--offsets", default=None, help="offset range LO..HI for generated splits")
    p.add_argument("--family", action="append", help="body file (repeatable)")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("filter", help="minimal dominating subfamily indices")
    p.add_argument("p_file")
    p.add_argument("--family", action="append", required=True)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("check", help="lattice-freeness, maximality and width of a body")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("example", help="construct a thin maximal lattice-free family member")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("enum-circ", help="maximal bodies circumscribing an integral polytope")
    p.add_argument("p_file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--classes", action="store_true",
                   help="also group outputs by unimodular equivalence")
    p.set_defaults(func=cmd_enum_circ)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GeometryError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
