import random

import pytest
from hypothesis import given, settings, strategies as st

from chainrot.bounds import (
    Script,
    ScriptError,
    chain_lower_bound,
    chain_upper_bound,
    distance_report,
    parse_script,
    replay,
    rotation_lower_bound,
    rotleft,
    rotright,
    transform_script,
    verify_script,
)
from chainrot.generators import complete_chain, figure4_pair, random_tree
from chainrot.moves import DIRECT, INVERSE, LEFT, Move, parse_move
from chainrot.tree import RIGHT, catalan, chain_counts, enumerate_trees, parse_literal, parse_shape, shape_key, unrank

trees = st.integers(1, 40).flatmap(lambda n: st.integers(0, catalan(n) - 1).map(lambda r: unrank(n, r)))


def test_rotleft_on_chain_is_empty():
    t = complete_chain(7, LEFT)
    assert len(rotleft(t)) == 0
    assert len(rotright(complete_chain(7, RIGHT))) == 0


def test_rotleft_figure(fig_t):
    s = rotleft(fig_t)
    assert len(s) == 4
    assert parse_shape(s.end) == complete_chain(10, LEFT)
    # deterministic choice: deepest maximal chain first, ties by smallest top
    assert [m.to_text() for m in s.moves] == ["rot([6],5) L", "rot([8],7) L", "rot([8-4],3) L", "rot([10],9) L"]


def test_rotright_figure(fig_t):
    s = rotright(fig_t)
    assert len(s) == 5
    assert str(parse_shape(s.end)) == "1(·,2(·,3(·,4(·,5(·,6(·,7(·,8(·,9(·,10)))))))))"
    assert verify_script(fig_t, s, complete_chain(10, RIGHT))


@given(trees)
def test_rot_lengths_and_monotone_chain_counts(t):
    L, R = chain_counts(t)
    for side, fn, count in ((LEFT, rotleft, L), (RIGHT, rotright, R)):
        s = fn(t)
        assert len(s) == count - 1
        y = t
        for k, m in enumerate(s.moves, 1):
            assert m.kind == DIRECT and m.side == side
            assert y.child(m.v, side) == 0  # the merged chain is maximal
            y = replay(y, [m])
            assert chain_counts(y)[0 if side == LEFT else 1] == count - k
        assert y == complete_chain(t.n, side)


def test_transform_identity(fig_t):
    assert len(transform_script(parse_literal("1"), parse_literal("1"))) == 0
    chain = complete_chain(6, LEFT)
    assert len(transform_script(chain, chain)) == 0
    # routed through a chain even for equal trees
    script = transform_script(fig_t, fig_t)
    assert len(script) == 8 and verify_script(fig_t, script, fig_t)


def test_transform_chain_pair():
    s, t = complete_chain(10, LEFT), complete_chain(10, RIGHT)
    script = transform_script(s, t)
    assert len(script) == 9 == chain_upper_bound(s, t)
    assert verify_script(s, script, t)


def test_transform_figure_pair(fig_t, fig_t2):
    # T'' keeps L=5, R=6: min(5+5-2, 6+6-2) = 8
    assert chain_counts(fig_t2) == (5, 6)
    script = transform_script(fig_t, fig_t2)
    assert len(script) == 8 == chain_upper_bound(fig_t, fig_t2)
    assert verify_script(fig_t, script, fig_t2)
    assert all(m.kind == DIRECT for m in script.moves[:4])
    assert all(m.kind == INVERSE for m in script.moves[4:])


@pytest.mark.parametrize("n", range(1, 7))
def test_transform_all_pairs_small(n):
    ts = list(enumerate_trees(n))
    for s in ts:
        for t in ts:
            script = transform_script(s, t)
            assert verify_script(s, script, t)
            assert len(script) == chain_upper_bound(s, t)
            assert chain_lower_bound(s, t) <= chain_upper_bound(s, t) <= n - 1


@settings(max_examples=60)
@given(trees, st.integers(0, 10**6))
def test_transform_random_pairs(s, seed):
    t = random_tree(s.n, seed)
    script = transform_script(s, t)
    assert verify_script(s, script, t)
    ls, rs = chain_counts(s)
    lt, rt = chain_counts(t)
    assert len(script) == min(ls + lt - 2, rs + rt - 2)


def test_upper_bound_examples(fig_t):
    one = parse_literal("1")
    assert chain_upper_bound(one, one) == 0
    assert chain_upper_bound(fig_t, fig_t) == 8
    for n in range(2, 12):
        for c in range(1, n):
            s, t = figure4_pair(n, c)
            assert chain_upper_bound(s, t) == n - c


def test_n_minus_one_cap_is_attained():
    for n in range(1, 8):
        ts = list(enumerate_trees(n))
        best = max(chain_upper_bound(s, t) for s in ts for t in ts)
        assert best == n - 1
        witnesses = [(s, t) for s in ts for t in ts if chain_upper_bound(s, t) == n - 1]
        assert all(chain_counts(s)[0] + chain_counts(t)[0] == n + 1 for s, t in witnesses)


def test_lower_bound_examples(fig_t):
    assert chain_lower_bound(fig_t, fig_t) == 0
    for n in range(2, 12):
        assert chain_lower_bound(complete_chain(n, LEFT), complete_chain(n, RIGHT)) == n - 1
        for c in range(1, n):
            assert chain_lower_bound(*figure4_pair(n, c)) == n - c


@given(trees, st.integers(0, 10**6))
def test_lower_bound_same_on_both_sides(s, seed):
    t = random_tree(s.n, seed)
    (ls, rs), (lt, rt) = chain_counts(s), chain_counts(t)
    assert chain_lower_bound(s, t) == abs(ls - lt) == abs(rs - rt)


def test_size_mismatch(fig_t):
    with pytest.raises(ValueError):
        chain_upper_bound(fig_t, parse_literal("1"))
    with pytest.raises(ValueError):
        transform_script(fig_t, parse_literal("1"))


def test_rotation_lower_bound(fig_t, fig_tp):
    # T and T' are one rotation apart and share 8 subtree intervals
    assert rotation_lower_bound(fig_t, fig_tp) == 1
    assert rotation_lower_bound(fig_t, fig_t) == 0
    for n in range(2, 9):
        assert rotation_lower_bound(complete_chain(n, LEFT), complete_chain(n, RIGHT)) == n - 1


def test_verify_script_examples(fig_t, fig_t2, fig_tp):
    m = Move(DIRECT, LEFT, 7, 5, 3)
    good = Script(shape_key(fig_t), shape_key(fig_t2), (m,))
    assert verify_script(fig_t, good, fig_t2)
    assert verify_script(fig_t, Script(shape_key(fig_t), shape_key(fig_t), ()), fig_t)
    wrong_end = Script(shape_key(fig_t), shape_key(fig_tp), (m,))
    assert not verify_script(fig_t, wrong_end, fig_tp)


def test_replay_reports_first_illegal_index(fig_t):
    moves = [parse_move("rot([7-5],3)"), parse_move("rot([7-5],3)")]
    with pytest.raises(ScriptError) as info:
        replay(fig_t, moves)
    assert info.value.index == 1


def test_script_text_round_trip(fig_t, fig_t2):
    script = transform_script(fig_t, fig_t2)
    text = script.to_text()
    assert text.splitlines()[0] == f"n=10 start={shape_key(fig_t)} end={shape_key(fig_t2)}"
    assert parse_script(text) == script


def test_parse_script_without_suffixes(fig_t, fig_t2):
    text = f"n=10 start={shape_key(fig_t)} end={shape_key(fig_t2)}\nrot([7-5],3)\n"
    assert verify_script(fig_t, parse_script(text), fig_t2)


def test_distance_report(fig_t, fig_t2):
    r = distance_report(fig_t, fig_t2)
    assert (r.lower, r.upper, r.exact) == (0, 8, None)
    assert len(r.script) == r.upper
    r = distance_report(fig_t, fig_t2, exact="crot")
    assert r.exact == 1 and len(r.script) == 1
    assert r.lower <= r.exact <= r.upper
    obj = r.to_json_obj()
    assert obj["exact"] == 1 and obj["script"] == ["rot([7-5],3) L"]


def test_random_larger_rot_lengths():
    rng = random.Random(5)
    for _ in range(200):
        t = random_tree(rng.randint(9, 80), rng=rng)
        L, R = chain_counts(t)
        assert len(rotleft(t)) == L - 1 and len(rotright(t)) == R - 1
