"""Chain rotations (c-rotations) and classical rotations.

A :class:`Move` names a chain ``[u-v]`` and a pivot ``w`` in the notation
``rot([u-v],w)`` (direct: the chain top replaces its parent ``w``) or
``rot(w,[u-v])`` (inverse: the same-side child ``w`` of the chain bottom
replaces the chain top). A classical rotation is the singleton case ``u == v``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .tree import LEFT, RIGHT, Tree, other_side

DIRECT = "direct"
INVERSE = "inverse"

ROT = "rot"
CROT = "crot"
MOVE_SETS = (ROT, CROT)


class IllegalMove(ValueError):
    def __init__(self, move: "Move", reason: str):
        super().__init__(f"{move}: {reason}")
        self.move = move
        self.reason = reason


@dataclass(frozen=True)
class Move:
    kind: str
    side: str
    u: int
    v: int
    w: int

    @property
    def chain_text(self) -> str:
        return f"[{self.u}]" if self.u == self.v else f"[{self.u}-{self.v}]"

    @property
    def is_singleton(self) -> bool:
        return self.u == self.v

    def __str__(self) -> str:
        if self.kind == DIRECT:
            return f"rot({self.chain_text},{self.w})"
        return f"rot({self.w},{self.chain_text})"

    def to_text(self) -> str:
        """Bracket notation with the side recorded as an ``L``/``R`` suffix."""
        return f"{self} {self.side[0].upper()}"


def invert(m: Move) -> Move:
    return replace(m, kind=INVERSE if m.kind == DIRECT else DIRECT)


def _walk_chain(same: tuple[int, ...], u: int, v: int) -> bool:
    x = u
    while x and x != v:
        x = same[x]
    return x == v


def apply(t: Tree, m: Move) -> Tree:
    """Apply ``m`` to ``t``; raises :class:`IllegalMove` when it does not fit."""
    n = t.n
    for name in ("u", "v", "w"):
        x = getattr(m, name)
        if not 1 <= x <= n:
            raise IllegalMove(m, f"vertex {name}={x} outside 1..{n}")
    if m.side not in (LEFT, RIGHT):
        raise IllegalMove(m, f"unknown side {m.side!r}")
    if m.kind not in (DIRECT, INVERSE):
        raise IllegalMove(m, f"unknown kind {m.kind!r}")

    same_is_left = m.side == LEFT
    left = list(t.left)
    right = list(t.right)
    same, opp = (left, right) if same_is_left else (right, left)
    u, v, w = m.u, m.v, m.w

    if not _walk_chain(t.links(m.side), u, v):
        raise IllegalMove(m, f"chain broken: {v} is not below {u} along {m.side} links")

    if m.kind == DIRECT:
        if opp[w] != u:
            raise IllegalMove(m, f"wrong pivot: {u} is not the {other_side(m.side)} child of {w}")
        moved_out, replaced = w, u
        transfer = same[v]
        same[v] = w
        opp[w] = transfer
    else:
        if same[v] != w or not w:
            raise IllegalMove(m, f"wrong pivot: {w} is not the {m.side} child of {v}")
        moved_out, replaced = u, w
        transfer = opp[w]
        opp[w] = u
        same[v] = transfer

    # the vertex that rises takes the old slot of the vertex it displaces
    x = t.parent[moved_out]
    root = t.root
    if x == 0:
        root = replaced
    elif t.left[x] == moved_out:
        left[x] = replaced
    else:
        right[x] = replaced
    return Tree(n, tuple(left), tuple(right), root)


def is_legal(t: Tree, m: Move) -> bool:
    try:
        apply(t, m)
    except IllegalMove:
        return False
    return True


def enumerate_moves(t: Tree, move_set: str = CROT) -> list[Move]:
    """Every legal move of the given set, without merging equal results."""
    if move_set not in MOVE_SETS:
        raise ValueError(f"move set must be one of {MOVE_SETS}, got {move_set!r}")
    chains = move_set == CROT
    par = t.parent
    out = []
    for side in (LEFT, RIGHT):
        same = t.links(side)
        opp = t.links(other_side(side))
        # direct: u is an opposite-side child of w; v runs down the chain from u
        for w in range(1, t.n + 1):
            u = opp[w]
            if not u:
                continue
            v = u
            while v:
                out.append(Move(DIRECT, side, u, v, w))
                if not chains:
                    break
                v = same[v]
        # inverse: w is the same-side child of v; u runs up the chain from v
        for v in range(1, t.n + 1):
            w = same[v]
            if not w:
                continue
            u = v
            while True:
                out.append(Move(INVERSE, side, u, v, w))
                if not chains:
                    break
                p = par[u]
                if not p or same[p] != u:
                    break
                u = p
    return out


def neighbors(t: Tree, move_set: str = CROT) -> list[tuple[Move, Tree]]:
    return [(m, apply(t, m)) for m in enumerate_moves(t, move_set)]


def pointer_delta(a: Tree, b: Tree) -> int:
    """Child slots (plus the external root pointer) that differ between two trees."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    diff = sum(1 for x, y in zip(a.left, b.left) if x != y)
    diff += sum(1 for x, y in zip(a.right, b.right) if x != y)
    return diff + (a.root != b.root)


_CHAIN = r"\[\s*(\d+)\s*(?:-\s*(\d+)\s*)?\]"
_DIRECT_RE = re.compile(r"^rot\(\s*" + _CHAIN + r"\s*,\s*(\d+)\s*\)\s*([LR])?$")
_INVERSE_RE = re.compile(r"^rot\(\s*(\d+)\s*,\s*" + _CHAIN + r"\s*\)\s*([LR])?$")


def parse_move(text: str, tree: Tree | None = None) -> Move:
    """Parse ``rot([7-5],3) L`` or ``rot(3,[7-5])``.

    Without a suffix the side comes from the label order of a non-singleton
    chain, or from ``tree`` for a singleton.
    """
    s = text.strip()
    mt = _DIRECT_RE.match(s)
    if mt:
        kind = DIRECT
        u = int(mt.group(1))
        v = int(mt.group(2) or u)
        w = int(mt.group(3))
        suffix = mt.group(4)
    else:
        mt = _INVERSE_RE.match(s)
        if not mt:
            raise ValueError(f"cannot parse move {text!r}")
        kind = INVERSE
        w = int(mt.group(1))
        u = int(mt.group(2))
        v = int(mt.group(3) or u)
        suffix = mt.group(4)

    if suffix:
        side = LEFT if suffix == "L" else RIGHT
    elif u != v:
        side = LEFT if u > v else RIGHT
    elif tree is not None:
        if kind == DIRECT:
            side = LEFT if 1 <= w <= tree.n and tree.right[w] == u else RIGHT
        else:
            side = LEFT if 1 <= v <= tree.n and tree.left[v] == w else RIGHT
    else:
        raise ValueError(f"side of singleton move {text!r} needs an L/R suffix or a tree")
    return Move(kind, side, u, v, w)
