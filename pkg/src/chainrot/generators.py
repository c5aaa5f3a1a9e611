"""Named tree families and uniformly random shapes."""

from __future__ import annotations

import random

from .decompose import equivalent_edge_count
from .tree import LEFT, RIGHT, Tree, catalan, chain_counts, unrank


def complete_chain(n: int, side: str = LEFT) -> Tree:
    """``[n-1]`` (every vertex a left child of the next) or its mirror ``[1-n]``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if side == LEFT:
        left = (0, 0) + tuple(range(1, n))
        return Tree(n, left, (0,) * (n + 1), n)
    if side == RIGHT:
        right = (0,) + tuple(range(2, n + 1)) + (0,)
        return Tree(n, (0,) * (n + 1), right, 1)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def figure4_pair(n: int, c: int) -> tuple[Tree, Tree]:
    """A pair with ``L_S = c``, ``L_T = n`` and no equivalent edges.

    ``T`` is the complete right chain. ``S`` is the left spine
    ``n -> n-1 -> ... -> c+1`` whose last vertex has left child ``1``, and
    ``1`` carries the right chain ``2 -> 3 -> ... -> c``. Both chain-distance
    bounds equal ``n - c`` on this pair.
    """
    if not 1 <= c <= n - 1:
        raise ValueError(f"c must satisfy 1 <= c <= n-1, got c={c}, n={n}")
    left = [0] * (n + 1)
    right = [0] * (n + 1)
    for k in range(c + 2, n + 1):
        left[k] = k - 1
    left[c + 1] = 1
    for k in range(1, c):
        right[k] = k + 1
    s = Tree(n, tuple(left), tuple(right), n)
    t = complete_chain(n, RIGHT)

    # the construction is only trusted with the properties it must have
    ls, _ = chain_counts(s)
    lt, _ = chain_counts(t)
    if ls != c or lt != n or equivalent_edge_count(s, t):
        raise AssertionError(f"figure4_pair({n}, {c}) failed its own check")
    return s, t


def random_tree(n: int, seed: int | None = None, rng: random.Random | None = None) -> Tree:
    """Uniform over the Catalan(n) shapes, by unranking a uniform rank."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rng = rng if rng is not None else random.Random(seed)
    return unrank(n, rng.randrange(catalan(n)))
