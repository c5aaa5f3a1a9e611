"""Constructive transformations through a complete chain, and distance bounds."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .decompose import equivalent_edge_count, split
from .moves import DIRECT, IllegalMove, Move, apply, invert, parse_move
from .tree import LEFT, RIGHT, Tree, chain_counts, maximal_chains, parse_shape, shape_key


class ScriptError(ValueError):
    """Replay failure; ``index`` is the 0-based position of the offending move."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"move {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class Script:
    start: str
    end: str
    moves: tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def n(self) -> int:
        return (len(self.start) - 1) // 2

    def to_text(self) -> str:
        lines = [f"n={self.n} start={self.start} end={self.end}"]
        lines.extend(m.to_text() for m in self.moves)
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "start": self.start,
            "end": self.end,
            "length": len(self.moves),
            "moves": [m.to_text() for m in self.moves],
        }


def parse_script(text: str) -> Script:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty script")
    header = dict(part.split("=", 1) for part in lines[0].split() if "=" in part)
    try:
        n, start, end = int(header["n"]), header["start"], header["end"]
    except (KeyError, ValueError):
        raise ValueError(f"script header must read 'n=<n> start=<bits> end=<bits>', got {lines[0]!r}") from None
    if len(start) != 2 * n + 1 or len(end) != 2 * n + 1:
        raise ValueError(f"script header bitstrings must have length {2 * n + 1}")
    # singleton moves without a suffix need the tree they apply to
    tree = parse_shape(start)
    moves = []
    for ln in lines[1:]:
        m = parse_move(ln, tree)
        moves.append(m)
        try:
            tree = apply(tree, m)
        except IllegalMove:
            tree = None
    return Script(start, end, tuple(moves))


def replay(s: Tree, moves) -> Tree:
    t = s
    for i, m in enumerate(moves):
        try:
            t = apply(t, m)
        except IllegalMove as exc:
            raise ScriptError(i, exc.reason) from None
    return t


def verify_script(s: Tree, script: Script, t: Tree) -> bool:
    if shape_key(s) != script.start or shape_key(t) != script.end:
        return False
    try:
        return replay(s, script.moves) == t
    except ScriptError:
        return False


def _rot_to_chain(y: Tree, side: str) -> tuple[Move, ...]:
    moves = []
    while True:
        candidates = [c for c in maximal_chains(y, side) if y.parent[c.top]]
        if not candidates:
            break
        # maximal_chains is already ordered deepest top first, ties by label
        c = candidates[0]
        m = Move(DIRECT, side, c.top, c.bottom, y.parent[c.top])
        y = apply(y, m)
        moves.append(m)
    return tuple(moves)


def rotleft(y: Tree) -> Script:
    """Merge maximal left chains into their parents until one left chain remains."""
    moves = _rot_to_chain(y, LEFT)
    return Script(shape_key(y), shape_key(replay(y, moves)), moves)


def rotright(y: Tree) -> Script:
    moves = _rot_to_chain(y, RIGHT)
    return Script(shape_key(y), shape_key(replay(y, moves)), moves)


def _check_sizes(s: Tree, t: Tree) -> None:
    if s.n != t.n:
        raise ValueError(f"size mismatch: {s.n} vs {t.n}")


def via_chain(s: Tree, t: Tree, side: str) -> Script:
    """``s -> complete chain -> t``, the second half by inverting ``t``'s moves."""
    _check_sizes(s, t)
    to_chain = rotleft if side == LEFT else rotright
    fwd = to_chain(s).moves
    back = tuple(invert(m) for m in reversed(to_chain(t).moves))
    return Script(shape_key(s), shape_key(t), fwd + back)


def transform_script(s: Tree, t: Tree) -> Script:
    """The shorter of the two chain-routed scripts; ties go to the left chain.

    The script always routes through a complete chain, so its length is
    ``min(L_s+L_t-2, R_s+R_t-2)`` even when ``s == t``.
    """
    _check_sizes(s, t)
    ls, rs = chain_counts(s)
    lt, rt = chain_counts(t)
    side = LEFT if ls + lt <= rs + rt else RIGHT
    return via_chain(s, t, side)


def chain_upper_bound(s: Tree, t: Tree) -> int:
    _check_sizes(s, t)
    ls, rs = chain_counts(s)
    lt, rt = chain_counts(t)
    bound = min(ls + lt - 2, rs + rt - 2)
    assert bound <= s.n - 1, (bound, s.n)
    return bound


def chain_lower_bound(s: Tree, t: Tree) -> int:
    _check_sizes(s, t)
    return abs(chain_counts(s)[0] - chain_counts(t)[0])


def rotation_lower_bound(s: Tree, t: Tree) -> int:
    """``n - e - 1`` for the classical rotation distance, ``e`` = equivalent-edge pairs."""
    _check_sizes(s, t)
    return s.n - equivalent_edge_count(s, t) - 1


@dataclass
class DistanceReport:
    n: int
    lower: int
    upper: int
    e: int
    rotation_lower: int
    rotation_lower_split: int
    exact: int | None = None
    script: Script | None = None
    moves: str | None = None
    extra: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        obj = {
            "n": self.n,
            "lower": self.lower,
            "upper": self.upper,
            "e": self.e,
            "rotation_lower": self.rotation_lower,
            "rotation_lower_split": self.rotation_lower_split,
            "exact": self.exact,
            "moves": self.moves,
            "script": [m.to_text() for m in self.script.moves] if self.script else None,
        }
        obj.update(self.extra)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, ensure_ascii=False)


def distance_report(s: Tree, t: Tree, exact: str | None = None, **exact_kwargs) -> DistanceReport:
    """Bounds for ``(s, t)``; with ``exact`` set to a move set, also the exact distance."""
    _check_sizes(s, t)
    pieces = split(s, t)
    e = len(pieces) - 1
    report = DistanceReport(
        n=s.n,
        lower=chain_lower_bound(s, t),
        upper=chain_upper_bound(s, t),
        e=e,
        rotation_lower=s.n - e - 1,
        rotation_lower_split=sum(p.size - 1 for p in pieces),
        script=transform_script(s, t),
    )
    if exact is not None:
        from .exact import distance

        d, script = distance(s, t, exact, **exact_kwargs)
        report.exact, report.script, report.moves = d, script, exact
    return report
