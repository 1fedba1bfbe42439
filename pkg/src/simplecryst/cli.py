"""Command-line interface: ``simplecryst <subcommand> ...``.

Exit status is 0 on success, 1 when the input fails validation and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import anneal, census, io
from .catalog import ENTRIES, MissingData, ValidationFailed, catalog
from .complex import CellComplex, dual_graph_coloring, realize, validate
from .graph import ColoredGraph, GraphError
from .group import abelianize, gagliardi_presentation, tietze_simplify
from .invariants import (check_3manifold_crystallization, check_4manifold_crystallization,
                         check_sphere3, simple_report)
from .surgery import connected_sum, iterated_sum, sum_vertices

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> ColoredGraph | CellComplex:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    text = p.read_text()
    first = next((ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.startswith("#")), "")
    if first == "gem":
        return io.parse_gem(text)
    if first == "pst":
        return io.parse_pst(text)
    raise UsageError(f"{path}: not a gem or pst file")


def _load_graph(path: str) -> ColoredGraph:
    obj = _load(path)
    if not isinstance(obj, ColoredGraph):
        raise UsageError(f"{path}: expected a gem file")
    return obj


def _load_complex(path: str) -> CellComplex:
    obj = _load(path)
    if not isinstance(obj, CellComplex):
        raise UsageError(f"{path}: expected a pst file")
    return obj


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    obj = _load(args.file)
    if isinstance(obj, CellComplex):
        v = validate(obj, args.budget)
        print(v)
        return OK if v.ok else FAILED
    G = obj
    if G.dim == 4:
        try:
            cert = check_4manifold_crystallization(G, args.budget)
        except GraphError as exc:
            print(f"invalid: {exc}")
            return FAILED
        print(f"residues: {cert}")
        print(f"crystallization: {cert.status}")
        return OK if cert.status != "NotSphere" else FAILED
    if G.dim == 3:
        try:
            ok = check_3manifold_crystallization(G)
        except GraphError as exc:
            print(f"invalid: {exc}")
            return FAILED
        print(f"gagliardi: {str(ok).lower()}")
        if ok:
            print(f"sphere: {check_sphere3(G, args.budget)}")
        return OK if ok else FAILED
    v = validate(realize(G), args.budget)
    print(v)
    return OK if v.ok else FAILED


def cmd_report(args) -> int:
    G = _load_graph(args.file)
    if G.dim != 4:
        raise UsageError("report needs a 5-colored gem")
    print(simple_report(G, certify=not args.no_certify, budget=args.budget))
    return OK


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--drop expects 'i,j', got {text!r}") from None
    return i, j


def cmd_pi1(args) -> int:
    G = _load_graph(args.file)
    i, j = _pair(args.drop)
    try:
        P = gagliardi_presentation(G, i, j)
    except GraphError as exc:
        print(f"invalid: {exc}")
        return FAILED
    Q, status = tietze_simplify(P, args.budget)
    print(f"presentation: {P}")
    print(f"simplified: {Q} [{status}]")
    print(f"abelianization: {abelianize(P)}")
    return OK


def _perm(text: str | None, k: int):
    if text is None:
        return None
    p = [int(ch) for ch in text]
    if sorted(p) != list(range(k)):
        raise UsageError(f"--perm must be a permutation of 0..{k - 1}")
    return p


def cmd_sum(args) -> int:
    A, B = _load_graph(args.a), _load_graph(args.b)
    d1, d2 = sum_vertices(A, B, args.reverse)
    v1 = d1 if args.v1 is None else args.v1
    v2 = d2 if args.v2 is None else args.v2
    G = connected_sum(A, v1, B, v2, _perm(args.perm, A.num_colors))
    _emit(io.write_gem(G), args.output)
    return OK


def _resolver(data: list[str]):
    files = {}
    for item in data or []:
        name, _, path = item.partition("=")
        if not path:
            raise UsageError(f"--data expects name=path, got {item!r}")
        files[name] = path

    def resolve(name):
        if name in files and name not in ENTRIES:
            return io.read_gem(files[name])
        return catalog(name, files.get(name))

    return resolve


def cmd_iterated_sum(args) -> int:
    G = iterated_sum(args.spec, _resolver(args.data))
    _emit(io.write_gem(G), args.output)
    return OK


def cmd_realize(args) -> int:
    _emit(io.write_pst(realize(_load_graph(args.file))), args.output)
    return OK


def cmd_dualize(args) -> int:
    _emit(io.write_gem(dual_graph_coloring(_load_complex(args.file))), args.output)
    return OK


def cmd_simplify(args) -> int:
    C = _load_complex(args.file)
    cfg = anneal.AnnealConfig(
        seed=args.seed, max_steps=args.max_steps,
        weights=anneal.parse_weights(args.weights or ""),
        plateau_patience=args.patience, target=anneal.parse_target(args.target))
    C2, log, outcome = anneal.simplify(C, cfg)
    if args.log:
        log.save(args.log)
    _emit(io.write_pst(C2), args.output)
    print(f"{outcome} after {len(log)} moves: f={C2.f_vector}", file=sys.stderr)
    return OK


def cmd_census(args) -> int:
    if args.dim == 3:
        classes = census.census_3manifold(args.vertices, override=args.override)
        rows = []
        for G in classes:
            gs = {(i, j): _g(G, i, j) for i in range(4) for j in range(i + 1, 4)}
            if args.simple and len(set(gs.values())) != 1:
                continue
            rows.append((G, str(check_sphere3(G))))
        unknown = []
    else:
        res = census.census_simple_4(args.vertices, override=args.override)
        rows = [(G, "Sphere") for G in res]
        unknown = res.unknown
    out = Path(args.output) if args.output else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    summary = [f"# census dim={args.dim} n={args.vertices}{' simple' if args.simple else ''}",
               "class  file  certificate"]
    for k, (G, cert) in enumerate(rows):
        name = f"class_{k:03d}.gem"
        if out:
            (out / name).write_text(io.write_gem(G))
        summary.append(f"{k}  {name}  {cert}")
    for k, G in enumerate(unknown):
        name = f"unknown_{k:03d}.gem"
        if out:
            (out / name).write_text(io.write_gem(G))
        summary.append(f"?  {name}  Unknown")
    summary.append(f"total {len(rows)} classes, {len(unknown)} unknown")
    text = "\n".join(summary) + "\n"
    if out:
        (out / "summary.txt").write_text(text)
    sys.stdout.write(text)
    return OK


def _g(G, i, j):
    from .graph import g_count

    return g_count(G, (i, j))


def cmd_catalog(args) -> int:
    try:
        G = catalog(args.name, args.data)
    except MissingData as exc:
        raise UsageError(str(exc)) from None
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    _emit(io.write_gem(G), args.output)
    return OK


def cmd_export_dot(args) -> int:
    _emit(io.export_dot(_load_graph(args.file)), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simplecryst", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=100_000, help="Tietze move budget")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a gem or pst file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("report", help="invariants of a 5-colored gem")
    s.add_argument("file")
    s.add_argument("--no-certify", action="store_true", help="skip residue sphere certificates")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("pi1", help="fundamental group of a 4-colored gem")
    s.add_argument("file")
    s.add_argument("--drop", default="0,1", help="color pair i,j whose residue generates")
    s.set_defaults(func=cmd_pi1)

    s = sub.add_parser("sum", help="connected sum of two gems")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--v1", type=int)
    s.add_argument("--v2", type=int)
    s.add_argument("--perm", help="color permutation as a digit string, e.g. 01234")
    s.add_argument("--reverse", action="store_true", help="sum with the second orientation reversed")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("iterated-sum", help="fold of oriented sums, e.g. '3*cp2+20*cp2bar'")
    s.add_argument("spec")
    s.add_argument("--data", action="append", help="name=path gem file for a summand (k3=...)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_iterated_sum)

    s = sub.add_parser("realize", help="gem -> pst")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("dualize", help="contracted pst -> gem")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dualize)

    s = sub.add_parser("simplify", help="randomized simplification of a pst")
    s.add_argument("file")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-steps", type=int, default=10_000)
    s.add_argument("--weights", help="e.g. B0=1,B1=2,B2=6,B3=10,B4=10,EC=10")
    s.add_argument("--patience", type=int, default=200)
    s.add_argument("--target", default="simple", help="'simple' or 'facets=K'")
    s.add_argument("-o", "--output")
    s.add_argument("--log")
    s.set_defaults(func=cmd_simplify)

    s = sub.add_parser("census", help="enumerate small crystallizations")
    s.add_argument("--dim", type=int, choices=(3, 4), required=True)
    s.add_argument("--vertices", type=int, required=True)
    s.add_argument("--simple", action="store_true",
                   help="dim 3: keep classes with all g_ij equal; dim 4 is always simple")
    s.add_argument("--override", action="store_true", help="lift the desk-scale size guard")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("catalog", help="write a built-in crystallization")
    s.add_argument("name", choices=sorted(ENTRIES))
    s.add_argument("--data")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("export-dot", help="Graphviz rendering of a gem")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except census.TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (io.ParseError, GraphError, ValidationFailed, anneal.InvalidConfig) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return FAILED
    except ValueError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
