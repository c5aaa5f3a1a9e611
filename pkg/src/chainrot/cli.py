"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (bad tree, illegal move,
refused size), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import bounds, decompose, exact, generators
from .bounds import ScriptError, parse_script, replay
from .moves import CROT, ROT, IllegalMove
from .tree import (
    LEFT,
    RIGHT,
    TreeError,
    chain_counts,
    maximal_chains,
    parse_tree,
    shape_key,
    to_dot,
    to_json_obj,
    to_literal,
)


class DomainError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=None)


def _tree_obj(t) -> dict:
    return {"literal": to_literal(t), "bits": shape_key(t), **to_json_obj(t)}


def _read_tree(args, name: str):
    text = getattr(args, name)
    if text is None:
        raise DomainError(f"--{name} is required")
    if text == "-":
        text = sys.stdin.read()
    try:
        return parse_tree(text, args.input_format)
    except TreeError as exc:
        raise DomainError(f"--{name}: {type(exc).__name__}: {exc}") from None


def _pair(args):
    s, t = _read_tree(args, "s"), _read_tree(args, "t")
    if s.n != t.n:
        raise DomainError(f"size mismatch: --s has n={s.n}, --t has n={t.n}")
    return s, t


def _chain_obj(c) -> dict:
    return {"text": str(c), "vertices": list(c.vertices), "maximal": c.maximal}


def cmd_validate(args) -> str:
    t = _read_tree(args, "tree")
    if args.format == "dot":
        return to_dot(t)
    if args.format == "text":
        return to_literal(t)
    return _dump({"valid": True, **_tree_obj(t)})


def cmd_chains(args) -> str:
    t = _read_tree(args, "tree")
    left = maximal_chains(t, LEFT)
    right = maximal_chains(t, RIGHT)
    L, R = chain_counts(t)
    if args.format == "text":
        return f"L={L} R={R}\nleft: {' '.join(map(str, left))}\nright: {' '.join(map(str, right))}"
    return _dump({"L": L, "R": R, "n": t.n, "left": [_chain_obj(c) for c in left], "right": [_chain_obj(c) for c in right]})


def cmd_bounds(args) -> str:
    s, t = _pair(args)
    report = bounds.distance_report(s, t, exact=args.exact, cap=args.max_n)
    return report.to_json()


def cmd_transform(args) -> str:
    if args.check:
        return _check_script(args)
    s, t = _pair(args)
    script = bounds.transform_script(s, t)
    if args.format == "text":
        return script.to_text().rstrip("\n")
    obj = script.to_json_obj()
    obj["upper_bound"] = bounds.chain_upper_bound(s, t)
    return _dump(obj)


def _check_script(args) -> str:
    source = args.script
    text = sys.stdin.read() if source in (None, "-") else open(source, encoding="utf-8").read()
    try:
        if text.lstrip().startswith("{"):
            obj = json.loads(text)
            text = "\n".join([f"n={obj['n']} start={obj['start']} end={obj['end']}", *obj["moves"]])
        script = parse_script(text)
    except (ValueError, KeyError) as exc:
        raise DomainError(f"unreadable script: {exc}") from None
    s = _read_tree(args, "s") if args.s else parse_tree(script.start, "bits")
    t = _read_tree(args, "t") if args.t else parse_tree(script.end, "bits")
    if shape_key(s) != script.start or shape_key(t) != script.end:
        raise DomainError("script header does not match --s/--t")
    try:
        got = replay(s, script.moves)
    except ScriptError as exc:
        raise DomainError(f"script fails at move index {exc.index}: {exc.reason}") from None
    if got != t:
        raise DomainError(f"script ends at {to_literal(got)}, expected {to_literal(t)}")
    return _dump({"verified": True, "length": len(script), "n": script.n})


def cmd_exact(args) -> str:
    s, t = _pair(args)
    d, script = exact.distance(s, t, args.moves, cap=args.max_n)
    if args.format == "text":
        return script.to_text().rstrip("\n")
    return _dump({"distance": d, "moves": args.moves, "n": s.n, "script": [m.to_text() for m in script.moves],
                  "start": script.start, "end": script.end})


def cmd_decompose(args) -> str:
    s, t = _pair(args)
    if args.edges:
        return _dump([
            {"interval": [p.interval.lo, p.interval.hi], "s_edge": list(p.s_edge), "t_edge": list(p.t_edge)}
            for p in decompose.equivalent_edges(s, t)
        ])
    return _dump(decompose.split_to_json_obj(decompose.split(s, t)))


def cmd_generate(args) -> str:
    fam = args.family
    if fam in ("left-chain", "right-chain"):
        trees = [generators.complete_chain(args.n, LEFT if fam == "left-chain" else RIGHT)]
    elif fam == "figure4":
        if args.c is None:
            raise DomainError("figure4 needs --c")
        trees = list(generators.figure4_pair(args.n, args.c))
    else:
        trees = [generators.random_tree(args.n, args.seed + i) for i in range(args.count)]
    if args.format == "text":
        return "\n".join(to_literal(t) for t in trees)
    if fam == "figure4":
        return _dump({"s": _tree_obj(trees[0]), "t": _tree_obj(trees[1])})
    return _dump([_tree_obj(t) for t in trees] if len(trees) > 1 else _tree_obj(trees[0]))


def cmd_audit(args) -> str:
    if args.format == "dot":
        return exact.move_graph_dot(args.n, args.moves)
    report = exact.audit(args.n, cap=args.max_n, seed=args.seed, workers=args.threads)
    return _dump(report.to_json_obj())


def cmd_diameter(args) -> str:
    if args.format == "dot":
        return exact.move_graph_dot(args.n, args.moves)
    d, (s, t) = exact.diameter(args.n, args.moves, cap=args.max_n, workers=args.threads)
    return _dump({"diameter": d, "moves": args.moves, "n": args.n, "witness": [to_literal(s), to_literal(t)]})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--input-format", choices=("auto", "literal", "bits", "json"), default="auto",
                        help="how to read tree arguments (default: detect)")
    common.add_argument("-v", "--verbose", action="store_true")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--s", help="source tree (literal, bitstring or JSON; '-' for stdin)")
    pair.add_argument("--t", help="target tree")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--moves", choices=(ROT, CROT), default=CROT)
    search.add_argument("--max-n", type=int, default=None, help="refuse exact searches above this size")
    search.add_argument("--threads", type=int, default=1, help="worker processes for move-graph construction")

    p = argparse.ArgumentParser(prog="chainrot", description="Chain rotations on infix-labeled binary trees.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", parents=[common], help="check and echo a tree")
    sp.add_argument("--tree", required=True)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("chains", parents=[common], help="maximal left/right chains")
    sp.add_argument("--tree", required=True)
    sp.set_defaults(func=cmd_chains)

    sp = sub.add_parser("bounds", parents=[common, pair], help="chain-distance bounds for a pair")
    sp.add_argument("--exact", choices=(ROT, CROT), default=None, help="also compute the exact distance")
    sp.add_argument("--max-n", type=int, default=None)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("transform", parents=[common, pair], help="script through a complete chain")
    sp.add_argument("--check", action="store_true", help="verify a script instead of producing one")
    sp.add_argument("--script", help="script file for --check (default stdin)")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("exact", parents=[common, pair, search], help="exact distance by BFS")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("decompose", parents=[common, pair], help="split along equivalent edges")
    sp.add_argument("--edges", action="store_true", help="list equivalent edge pairs instead of the split")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("generate", parents=[common], help="named families and random trees")
    sp.add_argument("--family", choices=("left-chain", "right-chain", "figure4", "random"), default="random")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--c", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("audit", parents=[common, search], help="exhaustive bound audit over all pairs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("diameter", parents=[common, search], help="largest distance among shapes of size n")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_diameter)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be positive")
    try:
        out = args.func(args)
    except (DomainError, TreeError, IllegalMove, exact.CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
