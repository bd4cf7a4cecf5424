import pytest
from hypothesis import given, strategies as st

from spanfact.errors import SizeMismatchError
from spanfact.perm import (
    Perm,
    compose,
    evaluate,
    cycle_string,
    oneline_string,
    parse_perm,
    parse_word,
    word_str,
)
from spanfact.digraph import build_toy

TOY3_F1 = Perm([1, 2, 0, 4, 5, 3])
TOY3_F2 = Perm([4, 5, 3, 1, 2, 0])


def perms(max_n=8):
    return st.integers(2, max_n).flatmap(
        lambda n: st.permutations(list(range(n))).map(Perm)
    )


def test_compose_identity():
    p = Perm([2, 0, 1, 3])
    assert compose(p, Perm.identity(4)) == p
    assert compose(Perm.identity(4), p) == p


def test_toy_x_composition():
    assert compose(TOY3_F2.inverse(), TOY3_F1) == Perm([3, 4, 5, 0, 1, 2])


def test_compose_inverse_law():
    assert compose(TOY3_F1, TOY3_F1.inverse()).is_identity()


def test_compose_size_mismatch():
    with pytest.raises(SizeMismatchError):
        compose(Perm.identity(3), Perm.identity(4))


def test_inverse_examples():
    assert Perm.identity(5).inverse() == Perm.identity(5)
    assert TOY3_F2.inverse() == Perm([5, 3, 4, 2, 0, 1])


def test_cycle_type_examples():
    assert Perm.identity(6).cycle_type() == (1, 1, 1, 1, 1, 1)
    assert TOY3_F2.cycle_type() == (6,)


def test_orbits_examples():
    x = Perm([3, 4, 5, 0, 1, 2])
    assert x.cycles() == ((0, 3), (1, 4), (2, 5))
    assert Perm.identity(4).cycles() == ((0,), (1,), (2,), (3,))


def test_is_derangement():
    assert not Perm.identity(3).is_derangement()
    assert Perm([3, 4, 5, 0, 1, 2]).is_derangement()
    assert not Perm([0, 2, 1]).is_derangement()


def test_evaluate_examples():
    assert evaluate((), TOY3_F1, TOY3_F2).is_identity()
    assert evaluate((1,), TOY3_F1, TOY3_F2) == TOY3_F1
    assert evaluate((2, 1), TOY3_F1, TOY3_F2) == compose(TOY3_F2, TOY3_F1)
    assert evaluate((2, 1), TOY3_F1, TOY3_F2) == Perm([5, 3, 4, 2, 0, 1])


def test_evaluate_inverse_symbols():
    x = evaluate((-2, 1), TOY3_F1, TOY3_F2)
    assert x == compose(TOY3_F2.inverse(), TOY3_F1)


@given(perms(), perms(), perms())
def test_compose_associative(a, b, c):
    n = max(a.n, b.n, c.n)
    a, b, c = (Perm(list(p.images) + list(range(p.n, n))) for p in (a, b, c))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(perms())
def test_orbits_of_inverse_same_partition(p):
    part = {frozenset(c) for c in p.cycles()}
    part_inv = {frozenset(c) for c in p.inverse().cycles()}
    assert part == part_inv


@given(perms())
def test_derangement_iff_no_fixed_cycle(p):
    assert p.is_derangement() == (1 not in p.cycle_type())


@given(
    st.lists(st.sampled_from([1, 2, -1, -2]), max_size=6),
    st.lists(st.sampled_from([1, 2, -1, -2]), max_size=6),
)
def test_evaluate_concat_homomorphism(u, v):
    d, f = build_toy(3)
    u, v = tuple(u), tuple(v)
    lhs = evaluate(u + v, f.f1, f.f2)
    rhs = compose(evaluate(u, f.f1, f.f2), evaluate(v, f.f1, f.f2))
    assert lhs == rhs


@given(perms())
def test_cycle_string_round_trip(p):
    assert parse_perm(cycle_string(p), n=p.n) == p


@given(perms())
def test_oneline_round_trip(p):
    assert parse_perm(oneline_string(p)) == p


def test_parse_perm_forms():
    assert parse_perm("(0 2)(1 3)") == Perm([2, 3, 0, 1])
    assert parse_perm("()", n=4) == Perm.identity(4)
    assert parse_perm("[1,2,0]") == Perm([1, 2, 0])
    with pytest.raises(ValueError):
        parse_perm("(0 2")
    with pytest.raises(ValueError):
        parse_perm("(0 5)", n=3)


@given(st.lists(st.sampled_from([1, 2, -1, -2]), max_size=8))
def test_word_str_round_trip(syms):
    w = tuple(syms)
    assert parse_word(word_str(w)) == w


def test_word_str_orientation():
    # "112" means F2 after F1 after F1
    w = parse_word("112")
    assert w == (2, 1, 1)
    d, f = build_toy(3)
    assert evaluate(w, f.f1, f.f2) == compose(f.f2, compose(f.f1, f.f1))
