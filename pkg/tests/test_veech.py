from fractions import Fraction

import pytest

from origami_tess.core import INF, S, T, GroupElement, apply_matrix, is_isomorphic, parse_slope, slope
from origami_tess.triangles import IdealTriangle, triangles_with_vertex
from origami_tess.veech import (
    Unbounded,
    algorithm_A,
    algorithm_B,
    coset_enumeration,
    cusp_period,
    directions_equivalent,
    in_veech_group,
    normalize_direction,
    oracle_orbit,
    period_is_minimal,
    reference_domain,
    triangle_stabilizer,
    volume_report,
)

from conftest import make


def tri(*ks):
    return IdealTriangle(parse_slope(k) for k in ks)


def test_normalize_horizontal(T1):
    nd = normalize_direction(T1, INF)
    assert nd.A == GroupElement(1, 0, 0, 1)
    assert (nd.delta, nd.kappa) == (1, 1)


@pytest.mark.parametrize("k", ["0", "1/2", "-3/5", "7/2"])
def test_normalizer_sends_direction_to_horizontal(k):
    nd = normalize_direction(make("L3"), k)
    assert nd.A.act(parse_slope(k)) == INF


@pytest.mark.parametrize("name, period", [("T1", 1), ("W4", 4), ("L3", 2)])
def test_horizontal_periods(name, period):
    O = make(name)
    assert cusp_period(O) == period
    assert period_is_minimal(O, period)
    assert in_veech_group(O, T**period)


def test_torus_directions_equivalent(T1):
    eq = directions_equivalent(T1, slope(0, 1), INF)
    assert eq.equivalent and eq.witness.act(slope(0, 1)) == INF
    assert directions_equivalent(T1, INF, INF).witness == GroupElement(1, 0, 0, 1)


def test_w4_horizontal_and_vertical_inequivalent(W4):
    # one horizontal cylinder versus two vertical ones
    assert not directions_equivalent(W4, INF, slope(0, 1)).equivalent


@pytest.mark.parametrize("name", ["L3", "W4"])
def test_equivalence_witnesses_verified(name):
    O = make(name)
    dom = algorithm_A(O)
    ks = [slope(p, q) for p in range(-3, 4) for q in range(1, 4)]
    for k in ks:
        for cd in dom.cusp_classes:
            eq = directions_equivalent(O, k, cd.rep)
            if eq.equivalent:
                assert eq.witness.act(k) == cd.rep
                assert in_veech_group(O, eq.witness)
                break
        else:
            pytest.fail(f"{k} in no cusp class")


def test_torus_reference_domain(T1):
    cd = reference_domain(T1, INF)
    assert cd.ref_triangles == (tri("inf", "0", "1"),)
    assert set(cd.neighbors) == {slope(0, 1), slope(1, 1)}
    assert cd.g_k == T


@pytest.mark.parametrize("name", ["T1", "L3", "W4", "O2"])
@pytest.mark.parametrize("k", ["inf", "0", "1", "2/3", "-5/4", "3/5"])
def test_reference_domain_properties(name, k):
    O = make(name)
    k = parse_slope(k)
    cd = reference_domain(O, k)
    assert cd.is_connected()
    assert cd.g_k.act(k) == k and in_veech_group(O, cd.g_k)
    assert period_is_minimal(apply_matrix(O, cd.A), cd.period_raw)
    # every triangle at k in a wider window is a Stab(k)-translate of a member
    a = cd.period_raw
    refs = set(cd.ref_triangles)
    for w in triangles_with_vertex(O, k, (-2 * a, 3 * a), chart=cd.A):
        images = {w.ideal.image(cd.g_k**j) for j in range(-4, 5)}
        assert images & refs, w.ideal


def test_torus_domain(T1):
    dom = algorithm_A(T1)
    assert [cd.rep for cd in dom.cusp_classes] == [INF]
    assert dom.d1 == 0 and len(dom.triangle_classes) == 1
    assert triangle_stabilizer(T1, dom.triangle_classes[0])[0] == 3


@pytest.mark.parametrize("name", ["T1", "L3", "W4", "O2"])
def test_cusp_count_matches_oracle(name):
    O = make(name)
    assert len(algorithm_A(O).cusp_classes) == oracle_orbit(O).cusp_count


def test_torus_generators(T1):
    B = algorithm_B(T1)
    assert T in B.matrices
    assert any(g.act(INF) == slope(0, 1) for g in B.matrices)
    assert coset_enumeration(B.words) == 1


@pytest.mark.parametrize("name", ["T1", "L3", "W4", "O2"])
def test_generators_are_in_group_and_generate_it(name):
    O = make(name)
    B = algorithm_B(O)
    for g in B.matrices:
        assert in_veech_group(O, g)
    assert coset_enumeration(B.words) == oracle_orbit(O).index


# Oracle values below come from the orbit of the surface under S and T,
# computed independently of the fundamental-domain algorithms.
@pytest.mark.parametrize(
    "name, index, widths",
    [("T1", 1, (1,)), ("L3", 3, (2, 1)), ("W4", 9, (4, 2, 3)), ("O2", 3, (2, 1))],
)
def test_oracle_values(name, index, widths):
    r = oracle_orbit(make(name))
    assert r.index == index
    assert sorted(r.cusp_widths) == sorted(widths)
    assert sum(r.cusp_widths) == r.index


@pytest.mark.parametrize(
    "gens, index",
    [
        ([S, T], 1),
        ([S, T**2], 3),  # theta group
        ([T, GroupElement(1, 0, 2, 1)], 3),  # Gamma_0(2)
        ([T**2, GroupElement(1, 0, 2, 1)], 6),  # Gamma(2)
        ([T, GroupElement(2, -1, 3, -1)], 4),  # Gamma_0(3), with an order-3 element
    ],
)
def test_coset_enumeration_classical_indices(gens, index):
    assert coset_enumeration(gens) == index


def test_coset_enumeration_infinite_index():
    assert isinstance(coset_enumeration([T], cap=2000), Unbounded)
    # the level-3 principal congruence generators span a free subgroup of infinite index
    assert isinstance(coset_enumeration([T**3, GroupElement(1, 0, 3, 1)], cap=5000), Unbounded)


@pytest.mark.parametrize("name", ["T1", "L3", "W4"])
def test_volume_bound(name):
    O = make(name)
    v = volume_report(O)
    assert v.bound_ok
    assert v.vol_over_pi == Fraction(v.index, 3)
    assert v.index <= 3 * v.triangle_classes


def test_torus_volume(T1):
    v = volume_report(T1)
    assert (v.index, v.vol_over_pi, v.triangle_classes) == (1, Fraction(1, 3), 1)


def test_membership_is_projective(L3):
    for g in algorithm_B(L3).matrices:
        assert in_veech_group(L3, GroupElement(-g.a, -g.b, -g.c, -g.d))
        assert is_isomorphic(apply_matrix(L3, g), L3) or is_isomorphic(
            apply_matrix(L3, GroupElement(-g.a, -g.b, -g.c, -g.d)), L3
        )
    assert not in_veech_group(L3, T)
