"""Infix-labeled binary trees.

A tree of ``n`` vertices uses the labels ``1..n`` in in-order, so the shape
alone fixes every label. Child links live in dense tuples indexed by label
(slot 0 is unused) with ``0`` meaning "no child".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Mapping, Sequence

LEFT = "left"
RIGHT = "right"
SIDES = (LEFT, RIGHT)

EMPTY_MARKS = ("·", ".")


class TreeError(ValueError):
    """Base class for malformed tree input."""


class CycleError(TreeError):
    pass


class ForestError(TreeError):
    pass


class DuplicateChildError(TreeError):
    pass


class InfixOrderError(TreeError):
    pass


class ShapeError(TreeError):
    """Malformed preorder bitstring."""


class LiteralError(TreeError):
    """Malformed ``v(L,R)`` literal."""


def other_side(side: str) -> str:
    if side == LEFT:
        return RIGHT
    if side == RIGHT:
        return LEFT
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class Chain:
    """A left or right chain listed from its top vertex down."""

    side: str
    vertices: tuple[int, ...]
    maximal: bool

    @property
    def top(self) -> int:
        return self.vertices[0]

    @property
    def bottom(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        if len(self.vertices) == 1:
            return f"[{self.top}]"
        return f"[{self.top}-{self.bottom}]"


@dataclass(frozen=True)
class Tree:
    """Immutable infix-labeled binary tree.

    The constructor trusts its arguments; use :func:`build` (or one of the
    parsers) for checked construction.
    """

    n: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    root: int

    def child(self, v: int, side: str) -> int:
        return self.left[v] if side == LEFT else self.right[v]

    def links(self, side: str) -> tuple[int, ...]:
        return self.left if side == LEFT else self.right

    @cached_property
    def parent(self) -> tuple[int, ...]:
        par = [0] * (self.n + 1)
        for v in range(1, self.n + 1):
            if self.left[v]:
                par[self.left[v]] = v
            if self.right[v]:
                par[self.right[v]] = v
        return tuple(par)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        depth = [0] * (self.n + 1)
        for v in self.preorder():
            for c in (self.left[v], self.right[v]):
                if c:
                    depth[c] = depth[v] + 1
        return tuple(depth)

    @cached_property
    def intervals(self) -> tuple[Interval | None, ...]:
        """Label interval spanned by the subtree of every vertex (index 0 is None)."""
        lo = list(range(self.n + 1))
        hi = list(range(self.n + 1))
        for v in reversed(self.preorder()):
            if self.left[v]:
                lo[v] = lo[self.left[v]]
            if self.right[v]:
                hi[v] = hi[self.right[v]]
        return (None,) + tuple(Interval(lo[v], hi[v]) for v in range(1, self.n + 1))

    def preorder(self) -> list[int]:
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            if self.right[v]:
                stack.append(self.right[v])
            if self.left[v]:
                stack.append(self.left[v])
        return out

    def inorder(self) -> list[int]:
        return _inorder(self.left, self.right, self.root)

    def is_left_child(self, v: int) -> bool:
        p = self.parent[v]
        return p != 0 and self.left[p] == v

    def is_right_child(self, v: int) -> bool:
        p = self.parent[v]
        return p != 0 and self.right[p] == v

    @property
    def key(self) -> str:
        return shape_key(self)

    def __str__(self) -> str:
        return to_literal(self)


def _inorder(left: Sequence[int], right: Sequence[int], root: int) -> list[int]:
    out = []
    stack = []
    v = root
    while stack or v:
        while v:
            stack.append(v)
            v = left[v]
        v = stack.pop()
        out.append(v)
        v = right[v]
    return out


def _dense(children, n: int, name: str) -> list[int]:
    if isinstance(children, Mapping):
        arr = [0] * (n + 1)
        for v, c in children.items():
            v = int(v)
            if not 1 <= v <= n:
                raise TreeError(f"{name} map has vertex {v} outside 1..{n}")
            arr[v] = int(c) if c else 0
        return arr
    seq = [int(c) if c else 0 for c in children]
    if len(seq) == n:
        return [0] + seq
    if len(seq) == n + 1:
        return [0] + seq[1:]
    raise TreeError(f"{name} array must have length {n}, got {len(seq)}")


def build(n: int, left, right, root: int) -> Tree:
    """Validate child maps over ``1..n`` and return a :class:`Tree`.

    ``left``/``right`` may be mappings ``vertex -> child`` or arrays of length
    ``n`` (vertex ``i`` at position ``i-1``); a falsy child means absent.
    """
    if n < 1:
        raise TreeError(f"n must be positive, got {n}")
    lf = _dense(left, n, "left")
    rt = _dense(right, n, "right")
    if not 1 <= root <= n:
        raise TreeError(f"root {root} outside 1..{n}")

    par = [0] * (n + 1)
    for v in range(1, n + 1):
        for c in (lf[v], rt[v]):
            if not c:
                continue
            if not 1 <= c <= n:
                raise TreeError(f"child {c} of {v} outside 1..{n}")
            if c == v:
                raise CycleError(f"vertex {v} is its own child")
            if par[c]:
                raise DuplicateChildError(f"vertex {c} is a child of both {par[c]} and {v}")
            par[c] = v
        if lf[v] and lf[v] == rt[v]:
            raise DuplicateChildError(f"vertex {lf[v]} is both children of {v}")
    if par[root]:
        raise CycleError(f"root {root} has parent {par[root]}")

    seen = [False] * (n + 1)
    stack = [root]
    count = 0
    while stack:
        v = stack.pop()
        seen[v] = True
        count += 1
        for c in (lf[v], rt[v]):
            if c:
                stack.append(c)
    if count != n:
        unreached = [v for v in range(1, n + 1) if not seen[v]]
        if all(par[v] for v in unreached):
            raise CycleError(f"vertices {unreached} form a cycle detached from root {root}")
        raise ForestError(f"vertices {unreached} are not reachable from root {root}")

    order = _inorder(lf, rt, root)
    if order != list(range(1, n + 1)):
        bad = next(i for i, v in enumerate(order, 1) if v != i)
        raise InfixOrderError(
            f"in-order position {bad} holds vertex {order[bad - 1]}; labels must follow infix order"
        )
    return Tree(n, tuple(lf), tuple(rt), root)


def subtree_interval(t: Tree, v: int) -> Interval:
    if not 1 <= v <= t.n:
        raise ValueError(f"vertex {v} outside 1..{t.n}")
    return t.intervals[v]


def maximal_chains(t: Tree, side: str) -> list[Chain]:
    """All maximal chains of one side, deepest top first, ties by label."""
    same = t.links(side)
    # tops are exactly the vertices that are not a same-side child
    is_same_child = [False] * (t.n + 1)
    for v in range(1, t.n + 1):
        if same[v]:
            is_same_child[same[v]] = True
    chains = []
    for top in range(1, t.n + 1):
        if is_same_child[top]:
            continue
        verts = [top]
        while same[verts[-1]]:
            verts.append(same[verts[-1]])
        chains.append(Chain(side, tuple(verts), True))
    chains.sort(key=lambda c: (-t.depth[c.top], c.top))
    return chains


def chain_counts(t: Tree) -> tuple[int, int]:
    """``(L, R)``: numbers of maximal left and right chains."""
    n_right = sum(1 for c in t.right[1:] if c)
    n_left = sum(1 for c in t.left[1:] if c)
    return n_right + 1, n_left + 1


def shape_key(t: Tree) -> str:
    """Preorder bitstring: ``1`` + left + right per vertex, ``0`` per empty slot."""
    out = []
    stack = [t.root]
    lf, rt = t.left, t.right
    while stack:
        v = stack.pop()
        if v:
            out.append("1")
            stack.append(rt[v])
            stack.append(lf[v])
        else:
            out.append("0")
    return "".join(out)


def packed_key(t: Tree) -> int:
    return int(shape_key(t), 2)


def parse_shape(bits: str) -> Tree:
    if not bits or any(b not in "01" for b in bits):
        raise ShapeError(f"shape bitstring must be a non-empty string of 0/1, got {bits!r}")
    if len(bits) % 2 == 0 or len(bits) < 3:
        raise ShapeError(f"shape bitstring must have odd length 2n+1 >= 3, got {len(bits)}")
    n = (len(bits) - 1) // 2
    # preorder ids, labels fixed afterwards by an in-order pass
    lf = [0] * (n + 1)
    rt = [0] * (n + 1)
    pending: list[tuple[int, int]] = [(0, 0)]
    made = 0
    for i, b in enumerate(bits):
        if not pending:
            raise ShapeError(f"shape bitstring ends early at position {i}")
        node, slot = pending.pop()
        if b == "0":
            continue
        made += 1
        if made > n:
            raise ShapeError("shape bitstring has too many vertices for its length")
        if node:
            (lf if slot == 0 else rt)[node] = made
        pending.append((made, 1))
        pending.append((made, 0))
    if pending or made != n:
        raise ShapeError("shape bitstring is unbalanced")
    order = _inorder(lf, rt, 1)
    label = [0] * (n + 1)
    for rank, node in enumerate(order, 1):
        label[node] = rank
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    for node in range(1, n + 1):
        left[label[node]] = label[lf[node]] if lf[node] else 0
        right[label[node]] = label[rt[node]] if rt[node] else 0
    return Tree(n, tuple(left), tuple(right), label[1])


# -- human-readable literal ``v(L,R)`` ------------------------------------


def to_literal(t: Tree, empty: str = "·") -> str:
    parts = []
    # explicit stack of pending tokens keeps deep chains off the call stack
    stack: list[object] = [t.root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        v = item
        if not v:
            parts.append(empty)
            continue
        parts.append(str(v))
        if t.left[v] or t.right[v]:
            stack.extend([")", t.right[v], ",", t.left[v], "("])
    return "".join(parts)


def parse_literal(text: str) -> Tree:
    """Parse ``9(3(2(1,·),7(5(4,6),8)),10)``; ``.`` may stand in for ``·``."""
    s = "".join(text.split())
    if not s:
        raise LiteralError("empty tree literal")
    pos = 0
    lf: dict[int, int] = {}
    rt: dict[int, int] = {}
    labels: list[int] = []

    def number() -> int:
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise LiteralError(f"expected a vertex label at position {start} in {text!r}")
        return int(s[start:pos])

    def expect(ch: str) -> None:
        nonlocal pos
        if pos >= len(s) or s[pos] != ch:
            got = s[pos] if pos < len(s) else "end of input"
            raise LiteralError(f"expected {ch!r} at position {pos}, got {got!r}")
        pos += 1

    def child() -> int:
        nonlocal pos
        if pos < len(s) and s[pos] in EMPTY_MARKS:
            pos += 1
            return 0
        return node()

    def node() -> int:
        nonlocal pos
        v = number()
        labels.append(v)
        if pos < len(s) and s[pos] == "(":
            pos += 1
            a = child()
            expect(",")
            b = child()
            expect(")")
            if a:
                lf[v] = a
            if b:
                rt[v] = b
        return v

    root = node()
    if pos != len(s):
        raise LiteralError(f"trailing input at position {pos} in {text!r}")
    n = len(labels)
    if len(set(labels)) != n:
        raise DuplicateChildError(f"repeated vertex label in {text!r}")
    if sorted(labels) != list(range(1, n + 1)):
        raise InfixOrderError(f"labels must be exactly 1..{n}, got {sorted(labels)}")
    return build(n, lf, rt, root)


# -- JSON form ------------------------------------------------------------


def to_json_obj(t: Tree) -> dict:
    return {"n": t.n, "root": t.root, "left": list(t.left[1:]), "right": list(t.right[1:])}


def from_json_obj(obj: Mapping) -> Tree:
    try:
        n = int(obj["n"])
        return build(n, obj["left"], obj["right"], int(obj["root"]))
    except (KeyError, TypeError) as exc:
        raise TreeError(f"tree JSON needs fields n, root, left, right: {exc}") from None


def parse_tree(text: str, fmt: str = "auto") -> Tree:
    """Parse a tree given as literal, bitstring or JSON."""
    text = text.strip()
    if fmt == "auto":
        if text.startswith("{"):
            fmt = "json"
        elif len(text) > 1 and set(text) <= {"0", "1"}:
            fmt = "bits"
        else:
            fmt = "literal"
    if fmt == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TreeError(f"invalid tree JSON: {exc}") from None
        return from_json_obj(obj)
    if fmt == "bits":
        return parse_shape(text)
    if fmt == "literal":
        return parse_literal(text)
    raise ValueError(f"unknown tree format {fmt!r}")


def to_dot(t: Tree, name: str = "tree") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in t.preorder():
        lines.append(f"  {v};")
        for side, c in ((LEFT, t.left[v]), (RIGHT, t.right[v])):
            if c:
                lines.append(f'  {v} -> {c} [label="{side[0].upper()}"];')
    lines.append("}")
    return "\n".join(lines)


# -- enumeration, ranking -------------------------------------------------


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def _shapes(m: int) -> tuple[str, ...]:
    if m == 0:
        return ("0",)
    out = []
    for k in range(1, m + 1):
        rights = _shapes(m - k)
        for a in _shapes(k - 1):
            out.extend("1" + a + b for b in rights)
    return tuple(out)


def enumerate_shapes(n: int) -> tuple[str, ...]:
    """Shape keys of all trees of ``n`` vertices, in rank order."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return _shapes(n)


def enumerate_trees(n: int) -> Iterator[Tree]:
    """Every tree of ``n`` vertices once, ordered by root label then sub-ranks."""
    for bits in enumerate_shapes(n):
        yield parse_shape(bits)


def unrank_shape(n: int, rank: int) -> str:
    if not 0 <= rank < catalan(n):
        raise ValueError(f"rank {rank} outside [0, {catalan(n)})")
    out = []
    # (size, rank) work items, left subtree emitted before right
    stack = [(n, rank)]
    while stack:
        m, r = stack.pop()
        if m == 0:
            out.append("0")
            continue
        for k in range(1, m + 1):
            right_count = catalan(m - k)
            block = catalan(k - 1) * right_count
            if r < block:
                lr, rr = divmod(r, right_count)
                out.append("1")
                stack.append((m - k, rr))
                stack.append((k - 1, lr))
                break
            r -= block
    return "".join(out)


def unrank(n: int, rank: int) -> Tree:
    return parse_shape(unrank_shape(n, rank))


def rank(t: Tree) -> int:
    def size(v: int) -> int:
        return len(t.intervals[v]) if v else 0

    total = 0
    mult = 1
    # rank is a mixed-radix number; accumulate (vertex, multiplier) pairs
    stack = [(t.root, 1)]
    while stack:
        v, mult = stack.pop()
        if not v:
            continue
        m = size(v)
        k = size(t.left[v]) + 1
        offset = sum(catalan(j - 1) * catalan(m - j) for j in range(1, k))
        right_count = catalan(m - k)
        total += mult * offset
        stack.append((t.left[v], mult * right_count))
        stack.append((t.right[v], mult))
    return total
