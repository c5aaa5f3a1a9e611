"""Chain rotations on infix-labeled binary trees: moves, bounds and exact distances."""

from .bounds import (
    DistanceReport,
    Script,
    chain_lower_bound,
    chain_upper_bound,
    distance_report,
    rotation_lower_bound,
    rotleft,
    rotright,
    transform_script,
    verify_script,
)
from .decompose import equivalent_edges, split
from .exact import audit, diameter, distance, sssp
from .generators import complete_chain, figure4_pair, random_tree
from .moves import CROT, DIRECT, INVERSE, ROT, IllegalMove, Move, apply, enumerate_moves, invert, pointer_delta
from .tree import (
    LEFT,
    RIGHT,
    Tree,
    build,
    chain_counts,
    enumerate_trees,
    maximal_chains,
    parse_shape,
    parse_tree,
    shape_key,
    subtree_interval,
)

__version__ = "0.1.0"
