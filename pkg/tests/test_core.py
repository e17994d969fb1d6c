import random

import pytest

from origami_tess.core import (
    INF,
    S,
    T,
    Disconnected,
    GroupElement,
    BadPermutation,
    EmptyMarking,
    ParseError,
    apply_matrix,
    build_origami,
    canonical_form,
    is_isomorphic,
    matrix_to_word,
    parse_cycles,
    parse_slope,
    slope,
    word_product,
)


def test_torus_has_one_marked_vertex(T1):
    (vc,) = T1.vertex_classes
    assert vc.angle_pi == 2 and vc.marked
    assert T1.genus == 1


def test_l3_single_singular_class(L3):
    (vc,) = L3.vertex_classes
    assert vc.angle_pi == 6 and vc.marked
    assert L3.genus == 2 and L3.stratum == (2,)


def test_w4_two_classes_only_singular_marked(W4):
    angles = sorted((vc.angle_pi, vc.marked) for vc in W4.vertex_classes)
    assert angles == [(2, False), (6, True)]


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        build_origami(2, "(1)(2)", "(1)(2)", "all")


def test_bad_permutation_rejected():
    with pytest.raises(BadPermutation):
        build_origami(3, "(1 4)", "()", "all")
    with pytest.raises(BadPermutation):
        build_origami(3, "(1 2)(2 3)", "()", "all")


def test_empty_marking_rejected():
    with pytest.raises(EmptyMarking):
        build_origami(2, "(1 2)", "()", "nothing")


def test_explicit_marking_adds_singular_classes(W4):
    O = build_origami(4, "(1 2 3 4)", "(1 2)", [(3, "bl")])
    assert O.mark == W4.mark or all(O.mark)


def test_parse_cycles_whitespace_and_fixed_points():
    assert parse_cycles(" ( 1  2 )(3) ") == [[1, 2], [3]]
    assert parse_cycles("()") == []
    with pytest.raises(ParseError) as exc:
        parse_cycles("(1 2")
    assert exc.value.line == 1


def test_canonical_form_idempotent_on_torus(T1):
    c, _ = canonical_form(T1)
    assert c == T1


def test_relabelled_l3_same_canonical(L3):
    R = L3.relabel([0, 2, 1])
    assert canonical_form(R)[0] == canonical_form(L3)[0]
    assert is_isomorphic(L3, R)


def test_isomorphism_basic(T1, L3, W4):
    assert is_isomorphic(T1, T1)
    assert not is_isomorphic(L3, W4)


def test_apply_identity_and_torus_stabilized(T1, L3):
    assert is_isomorphic(apply_matrix(L3, GroupElement(1, 0, 0, 1)), L3)
    assert is_isomorphic(apply_matrix(T1, T), T1)
    assert is_isomorphic(apply_matrix(T1, S), T1)


def test_apply_inverse_law(L3):
    rng = random.Random(7)
    for _ in range(20):
        g = word_product((rng.choice("ST"), rng.choice((-1, 1))) for _ in range(6))
        assert is_isomorphic(apply_matrix(apply_matrix(L3, g), g.inverse()), L3)


@pytest.mark.parametrize(
    "g",
    [T, S, GroupElement(1, 0, 1, 1), GroupElement(2, 3, 1, 2), GroupElement(-5, 3, 13, -8)],
)
def test_matrix_to_word_multiplies_back(g):
    assert word_product(matrix_to_word(g)).canonical() == g.canonical()


def test_words_of_generators():
    assert matrix_to_word(T) == (("T", 1),)
    assert matrix_to_word(S) == (("S", 1),)


def test_slopes():
    assert str(slope(1, 0)) == "inf" and slope(-1, 0) == INF
    assert slope(2, -4) == slope(-1, 2)
    assert parse_slope("inf") == INF
    assert parse_slope("0.5") == slope(1, 2)
    assert parse_slope("-3/6") == slope(-1, 2)
    with pytest.raises(ValueError):
        parse_slope("abc")


def test_projective_equality():
    g = GroupElement(2, 3, 1, 2)
    assert g == GroupElement(-2, -3, -1, -2)
    assert hash(g) == hash(GroupElement(-2, -3, -1, -2))
    assert g.canonical().a > 0
