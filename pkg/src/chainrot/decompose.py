"""Equivalent edges and the split of a tree pair into independent sub-pairs.

An edge ``(p, c)`` of ``S`` and an edge ``(q, d)`` of ``T`` are equivalent when
the subtrees below ``c`` and ``d`` span the same label interval. Cutting every
such pair splits ``(S, T)`` into ``e + 1`` smaller pairs. In each piece a cut
subtree is replaced by an empty slot, so the piece sizes add up to ``n`` and
no piece has an equivalent edge left (this is the diagonal split of the
associated polygon triangulations).
"""

from __future__ import annotations

from dataclasses import dataclass

from .tree import Interval, Tree, parse_shape, to_literal


@dataclass(frozen=True)
class EquivalentEdgePair:
    interval: Interval
    s_edge: tuple[int, int]
    t_edge: tuple[int, int]


@dataclass(frozen=True)
class SplitPair:
    interval: Interval
    s_part: Tree
    t_part: Tree
    label_map: tuple[int, ...]  # new label i -> label_map[i - 1] in the original

    @property
    def size(self) -> int:
        return self.s_part.n


def _check_sizes(s: Tree, t: Tree) -> None:
    if s.n != t.n:
        raise ValueError(f"size mismatch: {s.n} vs {t.n}")


def _interval_owner(t: Tree) -> dict[tuple[int, int], int]:
    iv = t.intervals
    return {(iv[c].lo, iv[c].hi): c for c in range(1, t.n + 1) if c != t.root}


def equivalent_edges(s: Tree, t: Tree) -> list[EquivalentEdgePair]:
    """All equivalent edge pairs, ordered by interval."""
    _check_sizes(s, t)
    s_own = _interval_owner(s)
    t_own = _interval_owner(t)
    out = []
    for key in sorted(s_own.keys() & t_own.keys()):
        c, d = s_own[key], t_own[key]
        out.append(EquivalentEdgePair(Interval(*key), (s.parent[c], c), (t.parent[d], d)))
    return out


def equivalent_edge_count(s: Tree, t: Tree) -> int:
    _check_sizes(s, t)
    return len(_interval_owner(s).keys() & _interval_owner(t).keys())


def _piece(tree: Tree, top: int, cut: set[tuple[int, int]]) -> tuple[str, list[int]]:
    """Preorder shape and vertex set of the subtree at ``top`` with cut subtrees emptied."""
    iv = tree.intervals
    bits = []
    verts = []
    stack = [top]
    while stack:
        x = stack.pop()
        if not x or (x != top and (iv[x].lo, iv[x].hi) in cut):
            bits.append("0")
            continue
        bits.append("1")
        verts.append(x)
        stack.append(tree.right[x])
        stack.append(tree.left[x])
    return "".join(bits), sorted(verts)


def split(s: Tree, t: Tree) -> list[SplitPair]:
    """Cut ``(s, t)`` along all equivalent edges, innermost intervals first.

    The last pair is the remainder holding the two roots.
    """
    _check_sizes(s, t)
    s_own = _interval_owner(s)
    t_own = _interval_owner(t)
    common = s_own.keys() & t_own.keys()
    order = sorted(common, key=lambda k: (k[1] - k[0], k[0]))
    tops = [(k, s_own[k], t_own[k]) for k in order]
    tops.append(((1, s.n), s.root, t.root))
    out = []
    for key, cs, ct in tops:
        s_bits, s_verts = _piece(s, cs, common)
        t_bits, t_verts = _piece(t, ct, common)
        assert s_verts == t_verts, (key, s_verts, t_verts)
        out.append(SplitPair(Interval(*key), parse_shape(s_bits), parse_shape(t_bits), tuple(s_verts)))
    return out


def split_to_json_obj(pieces: list[SplitPair]) -> list[dict]:
    return [
        {
            "interval": [p.interval.lo, p.interval.hi],
            "s_part": to_literal(p.s_part),
            "t_part": to_literal(p.t_part),
            "label_map": list(p.label_map),
        }
        for p in pieces
    ]
