"""Exact chain and rotation distances by breadth-first search over tree shapes.

The move graph on the Catalan(n) shapes of size ``n`` is undirected (every
move has an inverse), so distances are plain BFS geodesics. Single queries run
a bidirectional search; whole-space sweeps materialize the graph once and run
an all-sources BFS that carries, for every shape, the set of sources already
within reach as one Python integer bitset.

Distances are deterministic. Witness scripts are optimal but which optimal
script is returned may change between versions or worker counts.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Iterable

import numpy as np

from .bounds import Script
from .decompose import split
from .moves import CROT, MOVE_SETS, ROT, Move, apply, enumerate_moves
from .tree import Tree, catalan, chain_counts, enumerate_shapes, parse_shape, shape_key

log = logging.getLogger(__name__)

CAPS = {
    "distance": 12,
    ("sssp", CROT): 11,
    ("sssp", ROT): 12,
    "audit": 8,
    "diameter": 10,
}


class CapExceeded(ValueError):
    def __init__(self, what: str, n: int, cap: int):
        super().__init__(
            f"{what} refused for n={n}: cap is {cap}; the state space has Catalan({n}) = {catalan(n)} shapes"
        )
        self.n = n
        self.cap = cap


def _check_cap(what: str, n: int, cap: int | None, default: int) -> None:
    limit = default if cap is None else cap
    if n > limit:
        raise CapExceeded(what, n, limit)


def _check_move_set(move_set: str) -> None:
    if move_set not in MOVE_SETS:
        raise ValueError(f"move set must be one of {MOVE_SETS}, got {move_set!r}")


# -- materialized move graph ----------------------------------------------


def _neighbor_keys(args: tuple[tuple[str, ...], str]) -> list[list[str]]:
    shapes, move_set = args
    out = []
    for bits in shapes:
        t = parse_shape(bits)
        out.append(sorted({shape_key(apply(t, m)) for m in enumerate_moves(t, move_set)}))
    return out


@dataclass
class MoveGraph:
    """All shapes of size ``n`` (in rank order) with deduplicated adjacency."""

    n: int
    move_set: str
    shapes: tuple[str, ...]
    index: dict[str, int]
    adj: list[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.shapes)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def tree(self, i: int) -> Tree:
        return parse_shape(self.shapes[i])

    @classmethod
    def build(cls, n: int, move_set: str = CROT, workers: int = 1) -> "MoveGraph":
        _check_move_set(move_set)
        shapes = enumerate_shapes(n)
        index = {b: i for i, b in enumerate(shapes)}
        if workers > 1 and len(shapes) > 2000:
            size = -(-len(shapes) // (workers * 4))
            chunks = [(shapes[i:i + size], move_set) for i in range(0, len(shapes), size)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                keyed = [row for part in pool.map(_neighbor_keys, chunks) for row in part]
        else:
            keyed = _neighbor_keys((shapes, move_set))
        adj = [tuple(sorted(index[k] for k in row)) for row in keyed]
        log.debug("move graph n=%d %s: %d shapes", n, move_set, len(shapes))
        return cls(n, move_set, shapes, index, adj)


@lru_cache(maxsize=16)
def get_graph(n: int, move_set: str = CROT, workers: int = 1) -> MoveGraph:
    return MoveGraph.build(n, move_set, workers)


# -- searches -------------------------------------------------------------


def _bidirectional(src: Hashable, dst: Hashable, expand: Callable[[Hashable], Iterable[Hashable]]) -> list | None:
    """Shortest node path ``src .. dst``; expands the smaller frontier one full layer at a time."""
    if src == dst:
        return [src]
    parents = ({src: None}, {dst: None})
    frontiers = ([src], [dst])
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, theirs = parents[side], parents[1 - side]
        nxt = []
        for x in frontiers[side]:
            for y in expand(x):
                if y in mine:
                    continue
                mine[y] = x
                if y in theirs:
                    # any meet found within the first meeting layer is optimal
                    return _join(parents, y)
                nxt.append(y)
        frontiers = (nxt, frontiers[1]) if side == 0 else (frontiers[0], nxt)
    return None


def _join(parents, meet) -> list:
    fwd = []
    x = meet
    while x is not None:
        fwd.append(x)
        x = parents[0][x]
    fwd.reverse()
    x = parents[1][meet]
    while x is not None:
        fwd.append(x)
        x = parents[1][x]
    return fwd


def _lazy_expand(move_set: str):
    cache: dict[str, Tree] = {}

    def expand(bits: str) -> list[str]:
        t = cache.get(bits) or parse_shape(bits)
        out = []
        for m in enumerate_moves(t, move_set):
            nt = apply(t, m)
            k = shape_key(nt)
            cache.setdefault(k, nt)
            out.append(k)
        return out

    return expand


def _move_between(a: Tree, b: Tree, move_set: str) -> Move:
    for m in enumerate_moves(a, move_set):
        if apply(a, m) == b:
            return m
    raise AssertionError(f"no {move_set} move joins {shape_key(a)} and {shape_key(b)}")


def _script_from_path(path: list[str], move_set: str) -> Script:
    trees = [parse_shape(b) for b in path]
    moves = tuple(_move_between(a, b, move_set) for a, b in zip(trees, trees[1:]))
    return Script(path[0], path[-1], moves)


def distance(
    s: Tree,
    t: Tree,
    move_set: str = CROT,
    cap: int | None = None,
    graph: MoveGraph | None = None,
) -> tuple[int, Script]:
    """Exact distance and one optimal script, by bidirectional BFS."""
    _check_move_set(move_set)
    if s.n != t.n:
        raise ValueError(f"size mismatch: {s.n} vs {t.n}")
    _check_cap("distance", s.n, cap, CAPS["distance"])
    a, b = shape_key(s), shape_key(t)
    if graph is not None:
        if graph.n != s.n or graph.move_set != move_set:
            raise ValueError("graph does not match the query size or move set")
        found = _bidirectional(graph.index[a], graph.index[b], graph.adj.__getitem__)
        path = None if found is None else [graph.shapes[i] for i in found]
    else:
        path = _bidirectional(a, b, _lazy_expand(move_set))
    if path is None:
        raise RuntimeError("move graph is disconnected; this is a bug")
    return len(path) - 1, _script_from_path(path, move_set)


def bfs_distance(s: Tree, t: Tree, move_set: str = CROT) -> int:
    """Plain one-sided BFS; the reference the bidirectional search is checked against."""
    a, b = shape_key(s), shape_key(t)
    dist = {a: 0}
    queue = deque([a])
    expand = _lazy_expand(move_set)
    while queue:
        x = queue.popleft()
        if x == b:
            return dist[x]
        for y in expand(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    raise RuntimeError("move graph is disconnected; this is a bug")


def sssp(
    s: Tree,
    move_set: str = CROT,
    cap: int | None = None,
    graph: MoveGraph | None = None,
) -> dict[str, int]:
    """Distance from ``s`` to every shape of its size, keyed by shape bitstring."""
    _check_move_set(move_set)
    _check_cap("sssp", s.n, cap, CAPS[("sssp", move_set)])
    src = shape_key(s)
    if graph is not None:
        d = [-1] * len(graph)
        i0 = graph.index[src]
        d[i0] = 0
        queue = deque([i0])
        while queue:
            x = queue.popleft()
            for y in graph.adj[x]:
                if d[y] < 0:
                    d[y] = d[x] + 1
                    queue.append(y)
        return {graph.shapes[i]: d[i] for i in range(len(graph))}
    dist = {src: 0}
    queue = deque([src])
    expand = _lazy_expand(move_set)
    while queue:
        x = queue.popleft()
        for y in expand(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


# -- all-sources sweeps ---------------------------------------------------


def _reach_levels(graph: MoveGraph):
    """Yield ``(k, reach)`` where bit ``j`` of ``reach[i]`` means ``d(i, j) <= k``."""
    size = len(graph)
    full = (1 << size) - 1
    reach = [1 << i for i in range(size)]
    k = 0
    yield k, reach
    adj = graph.adj
    while any(r != full for r in reach):
        nxt = []
        for i in range(size):
            r = reach[i]
            for j in adj[i]:
                r |= reach[j]
            nxt.append(r)
        if nxt == reach:
            raise RuntimeError("move graph is disconnected; this is a bug")
        reach = nxt
        k += 1
        yield k, reach


def distance_matrix(graph: MoveGraph) -> np.ndarray:
    """All-pairs distances (``uint8``) in rank order of the shapes."""
    size = len(graph)
    nbytes = (size + 7) // 8
    out = np.zeros((size, size), dtype=np.uint8)
    prev = None
    for k, reach in _reach_levels(graph):
        if prev is not None:
            for i in range(size):
                new = reach[i] & ~prev[i]
                if new:
                    bits = np.unpackbits(
                        np.frombuffer(new.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little"
                    )[:size]
                    out[i, bits.astype(bool)] = k
        prev = reach
    return out


def diameter(n: int, move_set: str = CROT, cap: int | None = None, workers: int = 1) -> tuple[int, tuple[Tree, Tree]]:
    """Largest distance between two shapes of size ``n``, with one pair attaining it."""
    _check_move_set(move_set)
    _check_cap("diameter", n, cap, CAPS["diameter"])
    graph = get_graph(n, move_set, workers)
    last = prev = None
    for k, reach in _reach_levels(graph):
        prev, last = last, (k, reach)
    k, _ = last
    if k == 0:
        t = graph.tree(0)
        return 0, (t, t)
    full = (1 << len(graph)) - 1
    _, before = prev
    i = next(i for i, r in enumerate(before) if r != full)
    missing = full & ~before[i]
    j = (missing & -missing).bit_length() - 1
    return k, (graph.tree(i), graph.tree(j))


# -- audit ----------------------------------------------------------------


@dataclass
class AuditReport:
    n: int
    shapes: int
    pairs: int
    max_chain_distance: int
    max_rotation_distance: int
    violations: dict[str, int]
    instances: list[dict]
    triangle_samples: int
    additivity: dict
    checked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "shapes": self.shapes,
            "pairs": self.pairs,
            "max_chain_distance": self.max_chain_distance,
            "max_rotation_distance": self.max_rotation_distance,
            "violations": self.violations,
            "instances": self.instances,
            "triangle_samples": self.triangle_samples,
            "additivity": self.additivity,
            "checked": self.checked,
            "ok": self.ok,
        }


def _interval_matrix(graph: MoveGraph) -> np.ndarray:
    n = graph.n
    col = {}
    for lo in range(1, n + 1):
        for hi in range(lo, n + 1):
            col[(lo, hi)] = len(col)
    out = np.zeros((len(graph), len(col)), dtype=np.int32)
    for i in range(len(graph)):
        t = graph.tree(i)
        for v in range(1, n + 1):
            if v != t.root:
                iv = t.intervals[v]
                out[i, col[(iv.lo, iv.hi)]] = 1
    return out


MAX_INSTANCES = 200


def audit(n: int, cap: int | None = None, seed: int = 0, triangle_samples: int = 200_000, workers: int = 1) -> AuditReport:
    """Check every ordered pair of shapes of size ``n`` against the chain-distance bounds.

    Exact chain (``C``) and rotation (``D``) distances come from all-sources
    BFS. Checked per pair: ``|L_S-L_T| <= C <= min(L_S+L_T-2, R_S+R_T-2) <= n-1``,
    ``C <= D``, ``D >= n-1`` when there are no equivalent edges, and symmetry;
    the triangle inequality on sampled triples. Whether ``C`` adds up over the
    equivalent-edge split is measured and reported, never asserted.
    """
    _check_cap("audit", n, cap, CAPS["audit"])
    gc = get_graph(n, CROT, workers)
    gd = get_graph(n, ROT, workers)
    assert gc.shapes == gd.shapes
    C = distance_matrix(gc).astype(np.int32)
    D = distance_matrix(gd).astype(np.int32)
    size = len(gc)
    counts = np.array([chain_counts(gc.tree(i)) for i in range(size)], dtype=np.int32)
    Lc, Rc = counts[:, 0], counts[:, 1]
    LB = np.abs(Lc[:, None] - Lc[None, :])
    UB = np.minimum(Lc[:, None] + Lc[None, :] - 2, Rc[:, None] + Rc[None, :] - 2)
    B = _interval_matrix(gc)
    E = B @ B.T

    checks = {
        "lower_bound": LB > C,
        "upper_bound": C > UB,
        "n_minus_1_cap": UB > n - 1,
        "chain_le_rotation": C > D,
        "rotation_lower_e0": (E == 0) & (D < n - 1),
        "chain_symmetric": C != C.T,
        "rotation_symmetric": D != D.T,
    }
    violations = {}
    instances = []
    for name, bad in checks.items():
        idx = np.argwhere(bad)
        violations[name] = int(len(idx))
        room = max(0, MAX_INSTANCES - len(instances))
        for i, j in idx[:room]:
            instances.append({
                "check": name, "s": gc.shapes[i], "t": gc.shapes[j],
                "C": int(C[i, j]), "D": int(D[i, j]), "lower": int(LB[i, j]), "upper": int(UB[i, j]),
                "e": int(E[i, j]),
            })

    rng = np.random.default_rng(seed)
    samples = triangle_samples if size > 1 else 0
    if samples:
        i, j, k = rng.integers(0, size, size=(3, samples))
        tri = C[i, k] > C[i, j] + C[j, k]
        violations["triangle"] = int(tri.sum())
        for a, b, c in zip(i[tri][:10], j[tri][:10], k[tri][:10]):
            instances.append({"check": "triangle", "s": gc.shapes[a], "mid": gc.shapes[b], "t": gc.shapes[c]})
    else:
        violations["triangle"] = 0

    # cross-check the bit-parallel sweep against one-source BFS on a few rows
    for i in sorted(set(rng.integers(0, size, size=min(size, 5)).tolist())):
        row = sssp(gc.tree(i), CROT, cap=n, graph=gc)
        assert all(row[gc.shapes[j]] == C[i, j] for j in range(size))

    return AuditReport(
        n=n,
        shapes=size,
        pairs=size * size,
        max_chain_distance=int(C.max()),
        max_rotation_distance=int(D.max()),
        violations=violations,
        instances=instances,
        triangle_samples=samples,
        additivity=additivity_probe(gc, C, E),
        checked=list(checks) + ["triangle"],
    )


def additivity_probe(graph: MoveGraph, C: np.ndarray, E: np.ndarray, max_instances: int = MAX_INSTANCES) -> dict:
    """Compare ``C`` of each pair having equivalent edges with the sum over its split pieces."""
    n = graph.n
    piece_tables = {}
    for m in range(1, n):
        gm = get_graph(m, CROT)
        piece_tables[m] = (gm.index, distance_matrix(gm))
    size = len(graph)
    trees = [graph.tree(i) for i in range(size)]
    equal = less = greater = 0
    found = []
    for i in range(size):
        for j in range(i + 1, size):
            if E[i, j] == 0:
                continue
            total = 0
            for p in split(trees[i], trees[j]):
                if p.size > 1:
                    index, table = piece_tables[p.size]
                    total += int(table[index[shape_key(p.s_part)], index[shape_key(p.t_part)]])
            whole = int(C[i, j])
            if whole == total:
                equal += 1
                continue
            if whole < total:
                less += 1
            else:
                greater += 1
            if len(found) < max_instances:
                found.append({"s": graph.shapes[i], "t": graph.shapes[j], "whole": whole, "pieces_sum": total})
    # counts are over unordered pairs; C is symmetric so ordered counts are doubled
    return {
        "unordered_pairs_with_equivalent_edges": equal + less + greater,
        "additive": equal,
        "whole_less_than_pieces": less,
        "whole_greater_than_pieces": greater,
        "additive_everywhere": less == 0 and greater == 0,
        "instances": found,
    }


def move_graph_dot(n: int, move_set: str = CROT, cap: int = 7) -> str:
    _check_cap("move graph dump", n, cap, 7)
    g = get_graph(n, move_set)
    lines = [f"graph moves_{move_set}_{n} {{", "  node [shape=box, fontname=monospace];"]
    for i, bits in enumerate(g.shapes):
        lines.append(f'  s{i} [label="{parse_shape(bits)}"];')
    for i, row in enumerate(g.adj):
        lines.extend(f"  s{i} -- s{j};" for j in row if j > i)
    lines.append("}")
    return "\n".join(lines)
