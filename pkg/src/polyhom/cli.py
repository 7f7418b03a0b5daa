"""Command-line front end.

Exit codes: 0 on success, 1 when a check is mathematically refuted or
a counterexample is found, 2 on malformed input.  All output orderings
are fixed, so identical invocations print identical bytes; ``--json``
switches to a machine-readable encoding of the same content.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import abelianize as ab
from . import homology as hm
from . import nerve as nv
from . import rewrite as rw
from . import zoo
from .conduche import FiniteFunctor, check_conduche, slice_category
from .polygraph import (
    PolygraphError,
    Polygraph,
    dump_polygraph,
    functor_file_paths,
    load_functor,
    load_polygraph,
)
from .terms import CompositionError, ParseError, parse_word, print_word

OK, REFUTED_EXIT, INPUT_ERROR = 0, 1, 2


def _load_poly(spec: str) -> Polygraph:
    if spec.startswith("zoo:"):
        return zoo.zoo_entry(spec[4:]).build()
    return load_polygraph(Path(spec).read_text())


def _load_cat(path: str):
    text = Path(path).read_text()
    head = text.lstrip().split("\n", 1)[0].strip()
    if head == "2category":
        return nv.load_2category(text)
    return nv.load_category(text)


def _budget(args) -> rw.Budget:
    return rw.Budget(nodes=args.budget_nodes, extra_size=args.budget_size)


def _emit(args, lines: list[str], payload: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _homology_lines(groups) -> list[str]:
    return [f"H_{k} = {hm.format_group(h)}" for k, h in enumerate(groups)]


def cmd_build(args) -> int:
    P = _load_poly(args.input)
    counts = [len(P.gens(d)) for d in range(P.max_dim + 1)]
    lines = [f"dim {P.max_dim}"] + [
        f"generators[{d}] = {c}" for d, c in enumerate(counts)
    ]
    _emit(args, lines, {"max_dim": P.max_dim, "counts": counts})
    return OK


def cmd_validate(args) -> int:
    path = args.input
    if path.endswith(".poly") or path.startswith("zoo:"):
        _load_poly(path)
    else:
        _load_cat(path)
    _emit(args, ["valid"], {"valid": True})
    return OK


def cmd_abelianize(args) -> int:
    C = ab.abelianize(_load_poly(args.input))
    text = ab.dump_complex(C)
    _emit(
        args,
        [text.rstrip("\n")],
        {"ranks": C.ranks, "boundaries": C.boundaries},
    )
    return OK


def cmd_homology_pol(args) -> int:
    P = _load_poly(args.input)
    C = ab.abelianize(P)
    groups = hm.homology_groups(C, args.max_deg)
    _emit(
        args,
        _homology_lines(groups),
        {
            "groups": [
                {"betti": h.betti, "torsion": list(h.torsion)} for h in groups
            ]
        },
    )
    return OK


def cmd_homology_sing(args) -> int:
    C = _load_cat(args.input)
    groups = [nv.singular_homology(C, k) for k in range(args.degree + 1)]
    _emit(
        args,
        _homology_lines(groups),
        {
            "groups": [
                {"betti": h.betti, "torsion": list(h.torsion)} for h in groups
            ]
        },
    )
    return OK


def cmd_word(args) -> int:
    P = _load_poly(args.polygraph)
    if args.action == "parse":
        t = parse_word(args.words[0], P)
        _emit(
            args,
            [f"dim {t.dim}", print_word(t)],
            {"dim": t.dim, "word": print_word(t)},
        )
        return OK
    if args.action == "print":
        t = parse_word(args.words[0], P)
        _emit(args, [print_word(t)], {"word": print_word(t)})
        return OK
    if args.action == "normalize":
        t = rw.canonical_form(P, parse_word(args.words[0], P))
        _emit(args, [print_word(t)], {"word": print_word(t)})
        return OK
    if args.action == "moves":
        t = parse_word(args.words[0], P)
        lines = []
        records = []
        for move, result in rw.elementary_moves(P, t):
            kind, path, direction = move.record()
            path_txt = ".".join(map(str, path)) or "-"
            lines.append(f"{kind} {path_txt} {direction} -> {print_word(result)}")
            records.append(
                {
                    "kind": kind,
                    "path": list(path),
                    "direction": direction,
                    "result": print_word(result),
                }
            )
        _emit(args, lines, {"moves": records})
        return OK
    if args.action == "eq":
        u = parse_word(args.words[0], P)
        v = parse_word(args.words[1], P)
        res = rw.equivalent(P, u, v, _budget(args))
        if res.verdict is rw.Verdict.PROVED and res.moves is not None:
            noun = "move" if res.moves == 1 else "moves"
            lines = [f"PROVED ({res.moves} {noun})"]
        elif res.verdict is rw.Verdict.PROVED:
            lines = ["PROVED"]
        elif res.verdict is rw.Verdict.REFUTED:
            lines = [f"REFUTED ({res.reason})"]
        else:
            lines = [f"UNKNOWN ({res.reason})"]
        _emit(
            args,
            lines,
            {"verdict": res.verdict.name, "moves": res.moves, "reason": res.reason},
        )
        return REFUTED_EXIT if res.verdict is rw.Verdict.REFUTED else OK
    raise AssertionError(args.action)


def cmd_check_basis(args) -> int:
    C = _load_cat(args.input)
    sigma = args.sigma.split(",") if args.sigma else []
    report = rw.check_basis(C, sigma, bound=args.bound)
    lines = [report.verdict.name]
    if report.witness:
        lines.append(report.witness)
    _emit(args, lines, {"verdict": report.verdict.name, "witness": report.witness})
    return REFUTED_EXIT if report.verdict is rw.Verdict.REFUTED else OK


def cmd_check_conduche(args) -> int:
    text = Path(args.functor).read_text()
    src_path, tgt_path = functor_file_paths(text)
    base = Path(args.functor).parent
    S = _load_cat(str(base / src_path))
    T = _load_cat(str(base / tgt_path))
    maps = _parse_finite_functor(text, S, T)
    F = FiniteFunctor(S, T, *maps)
    rep = check_conduche(F)
    lines = ["PROVED" if rep.ok else f"REFUTED ({rep.witness})"]
    _emit(args, lines, {"ok": rep.ok, "witness": rep.witness})
    return OK if rep.ok else REFUTED_EXIT


def _parse_finite_functor(text: str, S, T):
    on_obj = {}
    on_one = {}
    on_two = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head in ("source", "target"):
            continue
        kind, rest = line.split(None, 1)
        lhs, rhs = (s.strip() for s in rest.split("=", 1))
        if kind == "obj":
            on_obj[lhs] = rhs
        elif kind == "map":
            on_one[lhs] = rhs
        elif kind == "map2":
            on_two[lhs] = rhs
        else:
            raise PolygraphError(f"unknown functor directive {kind!r}")
    return on_obj, on_one, on_two


def cmd_slice(args) -> int:
    A = _load_cat(args.input)
    obj = args.object
    if obj not in set(map(str, A.objects)):
        raise PolygraphError(f"no object named {obj!r}")
    target = next(x for x in A.objects if str(x) == obj)
    S, proj = slice_category(A, target)
    rep = check_conduche(proj)
    lines = [
        f"objects {len(S.objects)}",
        f"arrows {len(S.arrows)}",
        f"projection unique-lifting: {'yes' if rep.ok else 'no'}",
    ]
    _emit(
        args,
        lines,
        {
            "objects": len(S.objects),
            "arrows": len(S.arrows),
            "conduche": rep.ok,
        },
    )
    return OK


def cmd_binerve(args) -> int:
    C = _load_cat(args.input)
    if not isinstance(C, nv.Finite2Category):
        raise PolygraphError("binerve needs a 2-category input")
    count = nv.binerve_level(C, args.n, args.m)
    _emit(args, [str(count)], {"count": count})
    return OK


def cmd_bubble_free(args) -> int:
    spec = args.input
    if spec.startswith("zoo:") or spec.endswith(".poly"):
        target = _load_poly(spec)
    else:
        target = _load_cat(spec)
    rep = zoo.bubble_free(target, bound=args.bound)
    if rep.verdict is rw.Verdict.REFUTED:
        lines = [f"REFUTED (witness: {rep.witness})"]
    else:
        lines = [rep.verdict.name]
    _emit(args, lines, {"verdict": rep.verdict.name, "witness": rep.witness})
    return REFUTED_EXIT if rep.verdict is rw.Verdict.REFUTED else OK


def cmd_zoo(args) -> int:
    if args.action == "list":
        lines = []
        payload = []
        for e in zoo.zoo_2cats():
            lines.append(
                f"{e.name}: {e.description} "
                f"[type {e.expected_homotopy_type}, good {e.expected_good}, "
                f"bubble-free {'yes' if e.bubble_free else 'no'}]"
            )
            payload.append(
                {
                    "name": e.name,
                    "description": e.description,
                    "homotopy_type": e.expected_homotopy_type,
                    "good": e.expected_good,
                    "bubble_free": e.bubble_free,
                }
            )
        _emit(args, lines, {"entries": payload})
        return OK
    entry = zoo.zoo_entry(args.name)
    text = dump_polygraph(entry.build())
    if args.output:
        Path(args.output).write_text(text)
        _emit(args, [f"wrote {args.output}"], {"wrote": args.output})
    else:
        _emit(args, [text.rstrip("\n")], {"polygraph": text})
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyhom",
        description="polygraphs, cell words, and homology of free higher categories",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budgets(p):
        p.add_argument("--budget-nodes", type=int, default=rw.Budget().nodes)
        p.add_argument("--budget-size", type=int, default=rw.Budget().extra_size)

    p = sub.add_parser("build", help="load and summarize a polygraph")
    p.add_argument("input")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", help="validate a polygraph or category file")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("abelianize", help="print the chain complex of a polygraph")
    p.add_argument("input")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("homology-pol", help="homology of the abelianized presentation")
    p.add_argument("input")
    p.add_argument("--max-deg", type=int, default=None)
    p.set_defaults(func=cmd_homology_pol)

    p = sub.add_parser("homology-sing", help="homology of the nerve of a category")
    p.add_argument("input")
    p.add_argument("--degree", type=int, default=2)
    p.set_defaults(func=cmd_homology_sing)

    p = sub.add_parser("word", help="parse, compare and rewrite cell words")
    p.add_argument("action", choices=["parse", "print", "eq", "moves", "normalize"])
    p.add_argument("polygraph")
    p.add_argument("words", nargs="+")
    add_budgets(p)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("check-basis", help="verify a candidate generating set")
    p.add_argument("input")
    p.add_argument("--sigma", required=True, help="comma-separated cell names")
    p.add_argument("--bound", type=int, default=4)
    p.set_defaults(func=cmd_check_basis)

    p = sub.add_parser("check-conduche", help="unique-lifting check for a functor file")
    p.add_argument("functor")
    p.set_defaults(func=cmd_check_conduche)

    p = sub.add_parser("slice", help="slice a finite category over an object")
    p.add_argument("input")
    p.add_argument("object")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("binerve", help="size of one double-nerve level")
    p.add_argument("input")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_binerve)

    p = sub.add_parser("bubble-free", help="scan for 2-cells bounded by one unit")
    p.add_argument("input")
    p.add_argument("--bound", type=int, default=4)
    p.set_defaults(func=cmd_bubble_free)

    p = sub.add_parser("zoo", help="list or build the bundled examples")
    p.add_argument("action", choices=["list", "build"])
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_zoo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CompositionError, PolygraphError, nv.CategoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except KeyError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
