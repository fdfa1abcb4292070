import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathinv.action import (Generator, HomogeneousAction, IncompleteClosure, ModularField,
                            act_on_path, char_dim_invariants, close_group, compose,
                            element_order, identity_generator, validate)
from pathinv.catalog import (oriented_cycle, random_signed_instance, sign_loop, swap_loops,
                             two_cycle)
from pathinv.exactlin import Field, Matrix, kron
from pathinv.quiver import PathWord, Quiver, words_of_length

LOOP = ("v", "v")


def one_loop(dim=1):
    return Quiver(["v"], {LOOP: dim})


def test_identity_generator_is_valid():
    q = Quiver(["1", "2"], {("1", "2"): 2, ("2", "2"): 1})
    assert validate(HomogeneousAction(q, (identity_generator(q),))) == []


def test_singular_block():
    a = HomogeneousAction(one_loop(), (Generator("g1", {LOOP: Matrix.from_rows([[0]])}),))
    errors = validate(a)
    assert [e.kind for e in errors] == ["SingularBlock"]
    assert str(errors[0]) == "SingularBlock g1 (v,v)"


def test_shape_mismatch():
    a = HomogeneousAction(one_loop(), (Generator("g1", {LOOP: Matrix.identity(2)}),))
    assert [e.kind for e in validate(a)] == ["ShapeMismatch"]


def test_missing_and_unknown_blocks():
    q = Quiver(["1", "2"], {("1", "2"): 1})
    a = HomogeneousAction(q, (Generator("g", {("2", "1"): Matrix.identity(1)}),))
    assert sorted(e.kind for e in validate(a)) == ["MissingBlock", "UnknownArrow"]


def test_vertex_permutation_rejected():
    q = oriented_cycle(2)
    g = Generator("g", {a: Matrix.identity(1) for a in q.arrows}, vertex_map={"1": "2", "2": "1"})
    assert [e.kind for e in validate(HomogeneousAction(q, (g,)))] == ["VertexPermutation"]


# --- act_on_path ----------------------------------------------------------

def test_identity_acts_trivially():
    q = Quiver(["1", "2"], {("1", "2"): 2, ("2", "1"): 1})
    g = identity_generator(q)
    for w in words_of_length(q, 3):
        assert act_on_path(g, w).is_identity()


def test_sign_squared():
    g = sign_loop().generators[0]
    assert act_on_path(g, PathWord((LOOP, LOOP))) == Matrix.from_rows([[1]])


def test_two_cycle_aba():
    g = two_cycle().generators[0]
    w = PathWord((("1", "2"), ("2", "1"), ("1", "2")))
    assert act_on_path(g, w) == Matrix.from_rows([[1]])


def test_path_action_uses_last_arrow_as_most_significant():
    q = Quiver(["1", "2", "3"], {("1", "2"): 2, ("2", "3"): 2})
    A = Matrix.from_rows([[1, 2], [3, 4]])
    B = Matrix.from_rows([[0, 1], [5, 7]])
    g = Generator("g", {("1", "2"): A, ("2", "3"): B})
    assert act_on_path(g, PathWord((("1", "2"), ("2", "3")))) == kron(B, A)


@given(st.randoms(use_true_random=False))
def test_functorial_and_concatenation(rnd):
    a = random_signed_instance(rnd, max_generators=2)
    q = a.quiver
    g = a.generators[0]
    h = a.generators[-1]
    for w in words_of_length(q, 3)[:6]:
        assert act_on_path(compose(g, h), w) == act_on_path(g, w) @ act_on_path(h, w)
        w1, w2 = w.sub(0, 1), w.sub(1, 3)
        assert act_on_path(g, w) == kron(act_on_path(g, w2), act_on_path(g, w1))


@given(st.randoms(use_true_random=False))
def test_finite_order_generators_are_periodic_on_paths(rnd):
    a = random_signed_instance(rnd, max_generators=1)
    g = a.generators[0]
    r = element_order(g)
    assert r is not None
    for w in words_of_length(a.quiver, 2)[:5]:
        m = act_on_path(g, w)
        power = m
        for _ in range(r - 1):
            power = power @ m
        assert power.is_identity()


# --- closure --------------------------------------------------------------

def test_closure_sign():
    c = close_group(sign_loop())
    assert c.complete and c.order == 2


def test_closure_swap():
    c = close_group(swap_loops())
    assert c.complete and c.order == 2
    blocks = {e.blocks[LOOP] for e in c.elements}
    assert blocks == {Matrix.identity(2), Matrix.from_rows([[0, 1], [1, 0]])}


def test_closure_infinite_cyclic():
    a = HomogeneousAction(one_loop(), (Generator("g", {LOOP: Matrix.from_rows([[2]])}),))
    c = close_group(a, cap=64)
    assert not c.complete and c.order == 64


def test_closure_contains_identity_and_is_closed():
    rnd = random.Random(7)
    a = random_signed_instance(rnd, max_generators=2)
    c = close_group(a)
    assert c.complete
    keys = {tuple(sorted((k, m.data) for k, m in e.blocks.items())) for e in c.elements}
    for x in c.elements:
        for y in c.elements:
            xy = compose(x, y)
            assert tuple(sorted((k, m.data) for k, m in xy.blocks.items())) in keys


def test_closure_modular_order_four():
    F = Field(5)
    q = one_loop()
    a = HomogeneousAction(q, (Generator("g", {LOOP: Matrix.from_rows([[2]], field=F)}),), F)
    assert close_group(a).order == 4


# --- character oracle -----------------------------------------------------

def test_char_trivial_group():
    q = Quiver(["1", "2"], {("1", "2"): 2, ("2", "2"): 2})
    c = close_group(HomogeneousAction(q, (identity_generator(q),)))
    for w in words_of_length(q, 3):
        assert char_dim_invariants(c, w) == w.space_dim(q)


def test_char_swap_cubed():
    c = close_group(swap_loops())
    assert char_dim_invariants(c, PathWord((LOOP,) * 3)) == Fraction(4)


def test_char_sign_cubed():
    c = close_group(sign_loop())
    assert char_dim_invariants(c, PathWord((LOOP,) * 3)) == 0


def test_char_refuses_incomplete_and_modular():
    a = HomogeneousAction(one_loop(), (Generator("g", {LOOP: Matrix.from_rows([[2]])}),))
    with pytest.raises(IncompleteClosure):
        char_dim_invariants(close_group(a, cap=8), PathWord((LOOP,)))
    F = Field(3)
    m = HomogeneousAction(one_loop(), (Generator("g", {LOOP: Matrix.from_rows([[2]], field=F)}),), F)
    with pytest.raises(ModularField):
        char_dim_invariants(close_group(m), PathWord((LOOP,)))
