import pytest
from hypothesis import given, strategies as st

from chainrot.moves import (
    CROT,
    DIRECT,
    INVERSE,
    ROT,
    IllegalMove,
    Move,
    apply,
    enumerate_moves,
    invert,
    parse_move,
    pointer_delta,
)
from chainrot.tree import LEFT, RIGHT, build, catalan, chain_counts, enumerate_trees, parse_literal, unrank
from reference import reference_moves


def revalidate(t):
    return build(t.n, t.left[1:], t.right[1:], t.root)


def test_direct_figure_move(fig_t, fig_t2):
    m = Move(DIRECT, LEFT, 7, 5, 3)
    assert str(m) == "rot([7-5],3)"
    assert apply(fig_t, m) == fig_t2


def test_inverse_figure_move(fig_t, fig_t2):
    m = Move(INVERSE, LEFT, 7, 5, 3)
    assert str(m) == "rot(3,[7-5])"
    assert apply(fig_t2, m) == fig_t


def test_singleton_inverse_is_classical_rotation(fig_t, fig_tp):
    out = apply(fig_t, Move(INVERSE, LEFT, 7, 7, 5))
    assert out == fig_tp
    # right pointers of 3 and 5 and the left pointer of 7 change
    changed = {(v, "L") for v in range(1, 11) if fig_t.left[v] != out.left[v]}
    changed |= {(v, "R") for v in range(1, 11) if fig_t.right[v] != out.right[v]}
    assert changed == {(3, "R"), (5, "R"), (7, "L")}


def test_invert_figure_move():
    m = Move(DIRECT, LEFT, 7, 5, 3)
    assert invert(m) == Move(INVERSE, LEFT, 7, 5, 3)
    assert invert(invert(m)) == m


@given(st.sampled_from([DIRECT, INVERSE]), st.sampled_from([LEFT, RIGHT]), st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))
def test_invert_is_involution(kind, side, u, v, w):
    m = Move(kind, side, u, v, w)
    assert invert(invert(m)) == m
    assert invert(m).kind != m.kind


@pytest.mark.parametrize(
    "move, reason",
    [
        (Move(DIRECT, LEFT, 7, 4, 9), "pivot"),
        (Move(DIRECT, LEFT, 7, 6, 3), "chain broken"),
        (Move(DIRECT, RIGHT, 7, 5, 3), "chain broken"),
        (Move(INVERSE, LEFT, 9, 3, 1), "pivot"),
        (Move(INVERSE, LEFT, 7, 4, 3), "pivot"),
        (Move(DIRECT, LEFT, 11, 11, 3), "outside"),
    ],
)
def test_illegal_moves(fig_t, move, reason):
    with pytest.raises(IllegalMove) as info:
        apply(fig_t, move)
    assert reason in str(info.value)


def test_single_vertex_has_no_moves():
    t = parse_literal("1")
    assert enumerate_moves(t, CROT) == [] and enumerate_moves(t, ROT) == []


def test_two_vertex_moves_reach_other_shape():
    t = parse_literal("2(1,·)")
    moves = enumerate_moves(t, CROT)
    assert moves
    assert {str(apply(t, m)) for m in moves} == {"1(·,2)"}


def test_direct_left_moves_from_7(fig_t):
    got = [str(m) for m in enumerate_moves(fig_t, CROT) if m.kind == DIRECT and m.side == LEFT and m.u == 7]
    assert got == ["rot([7],3)", "rot([7-5],3)", "rot([7-4],3)"]


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_matches_brute_force(n):
    for t in enumerate_trees(n):
        ref = reference_moves(t)
        got = {(m.kind, m.side, m.u, m.v, m.w): apply(t, m) for m in enumerate_moves(t, CROT)}
        assert got == ref
        ref_rot = reference_moves(t, singleton_only=True)
        got_rot = {(m.kind, m.side, m.u, m.v, m.w): apply(t, m) for m in enumerate_moves(t, ROT)}
        assert got_rot == ref_rot


@pytest.mark.parametrize("n", range(1, 8))
def test_rot_is_subset_of_crot(n):
    for t in enumerate_trees(n):
        assert set(enumerate_moves(t, ROT)) <= set(enumerate_moves(t, CROT))


def test_rot_moves_count_two_per_edge():
    for t in enumerate_trees(6):
        assert len(enumerate_moves(t, ROT)) == 2 * (t.n - 1)


def test_pointer_delta_examples(fig_t, fig_t2):
    assert pointer_delta(fig_t, fig_t2) == 3
    assert pointer_delta(fig_t, fig_t) == 0
    with pytest.raises(ValueError):
        pointer_delta(fig_t, parse_literal("1"))


def test_pointer_delta_slots(fig_t, fig_t2):
    # left of 9, left of 5, right of 3
    assert {v for v in range(1, 11) if fig_t.left[v] != fig_t2.left[v]} == {5, 9}
    assert {v for v in range(1, 11) if fig_t.right[v] != fig_t2.right[v]} == {3}


@pytest.mark.parametrize("n", range(2, 8))
def test_chain_count_effect(n):
    for t in enumerate_trees(n):
        L, R = chain_counts(t)
        for m in enumerate_moves(t, CROT):
            L2, R2 = chain_counts(apply(t, m))
            assert abs(L2 - L) <= 1
            if m.kind == DIRECT:
                maximal = t.child(m.v, m.side) == 0
                if not maximal:
                    assert (L2, R2) == (L, R)
                elif m.side == LEFT:
                    assert (L2, R2) == (L - 1, R + 1)
                else:
                    assert (L2, R2) == (L + 1, R - 1)
            else:
                w_has_opp = t.child(m.w, RIGHT if m.side == LEFT else LEFT) != 0
                if w_has_opp:
                    assert (L2, R2) == (L, R)
                elif m.side == LEFT:
                    assert (L2, R2) == (L + 1, R - 1)
                else:
                    assert (L2, R2) == (L - 1, R + 1)


@given(st.integers(2, 40).flatmap(lambda n: st.integers(0, catalan(n) - 1).map(lambda r: unrank(n, r))), st.data())
def test_random_moves_preserve_infix_and_invert(t, data):
    m = data.draw(st.sampled_from(enumerate_moves(t, CROT)))
    out = apply(t, m)
    assert revalidate(out) == out
    assert pointer_delta(t, out) == 3
    assert apply(out, invert(m)) == t


@pytest.mark.parametrize(
    "text, tree, expected",
    [
        ("rot([7-5],3)", None, Move(DIRECT, LEFT, 7, 5, 3)),
        ("rot(3,[7-5])", None, Move(INVERSE, LEFT, 7, 5, 3)),
        ("rot([3-8],9) R", None, Move(DIRECT, RIGHT, 3, 8, 9)),
        ("rot( 5 , [ 7 ] )", "fig", Move(INVERSE, LEFT, 7, 7, 5)),
        ("rot([7],3)", "fig", Move(DIRECT, LEFT, 7, 7, 3)),
        ("rot([2],3) L", None, Move(DIRECT, LEFT, 2, 2, 3)),
    ],
)
def test_parse_move(fig_t, text, tree, expected):
    assert parse_move(text, fig_t if tree else None) == expected


def test_move_text_round_trip(fig_t):
    for m in enumerate_moves(fig_t, CROT):
        assert parse_move(m.to_text()) == m
        assert parse_move(str(m), fig_t) == m


def test_parse_move_rejects():
    with pytest.raises(ValueError):
        parse_move("rot(7-5,3)")
    with pytest.raises(ValueError):
        parse_move("rot([7],3)")
