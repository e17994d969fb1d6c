import pytest

from origami_tess.core import INF, direction_normalizer, parse_slope, slope
from origami_tess.flatgeom import (
    horizontal_saddle_connections,
    oriented_saddle_connections_up_to,
    saddle_connections_in_direction,
)
from origami_tess.triangles import (
    IdealTriangle,
    NotHorizontal,
    Reason,
    adjacent,
    canonical_triangle_over,
    embed_check,
    triangles_on_geodesic,
    triangles_up_to,
    triangles_with_vertex,
)
from origami_tess.veech import cusp_period, lemma_bound, normalize_direction

from conftest import make
from oracles import torus_triangle_loops


def tri(*ks):
    return IdealTriangle(parse_slope(k) for k in ks)


def test_torus_unit_triangle_accepted(T1):
    t = embed_check(T1, (0, (1, 0)), (0, (1, 1)))
    assert t
    assert t.ideal == tri("inf", "1", "0")
    assert abs(t.det) == 1


def test_torus_area_exceeded(T1):
    r = embed_check(T1, (0, (2, 1)), (0, (1, 2)))
    assert not r and r.reason == Reason.AREA_EXCEEDED


def test_l3_cone_inside(L3):
    # found by scanning L3 ray pairs; the development wraps the 6pi point
    r = embed_check(L3, (0, (0, 1)), (0, (-3, -1)))
    assert not r and r.reason == Reason.CONE_INSIDE


def test_canonical_triangle_over_torus(T1):
    (s0,) = horizontal_saddle_connections(T1)
    t = canonical_triangle_over(T1, s0)
    assert t.ideal == tri("inf", "0", "1")
    assert sum(y for _, y in t.holonomies if y > 0) == 1


def test_canonical_triangle_over_w4(W4):
    for s0 in horizontal_saddle_connections(W4):
        t = canonical_triangle_over(W4, s0)
        assert s0.holonomy in t.holonomies
        # apex within the single horizontal cylinder of height 1
        assert max(abs(y) for _, y in t.holonomies) == 1


def test_canonical_triangle_rejects_vertical(T1):
    (s,) = saddle_connections_in_direction(T1, slope(0, 1))
    with pytest.raises(NotHorizontal):
        canonical_triangle_over(T1, s)


def test_torus_reference_window(T1):
    ws = triangles_with_vertex(T1, INF, (0, 1))
    assert [w.ideal for w in ws] == [tri("inf", "0", "1")]
    assert all(INF in w.ideal for w in ws)


@pytest.mark.parametrize("L2", [2, 5, 8, 13, 20])
def test_torus_triangles_are_unimodular(T1, L2):
    got = {t.holonomy_loop() for t in triangles_up_to(T1, L2)}
    assert got == torus_triangle_loops(L2)


@pytest.mark.parametrize("L2", [5, 8])
def test_double_cover_has_torus_triangles(T1, O2, L2):
    a = {t.holonomy_loop() for t in triangles_up_to(T1, L2)}
    b = {t.holonomy_loop() for t in triangles_up_to(O2, L2)}
    assert a == b


@pytest.mark.parametrize("name", ["T1", "L3", "W4"])
def test_embedding_invariants(name):
    O = make(name)
    for t in triangles_up_to(O, 30):
        hs = t.holonomies
        assert tuple(map(sum, zip(*hs))) == (0, 0)
        for i in range(3):
            (a, b), (c, d) = hs[i], hs[(i + 1) % 3]
            assert 0 < a * d - b * c <= 2 * O.n
        assert len({s.slope for s in t.sides}) == 3


def test_torus_determinant_law(T1):
    for t in triangles_up_to(T1, 30):
        hs = t.holonomies
        for i in range(3):
            (a, b), (c, d) = hs[i], hs[(i + 1) % 3]
            assert a * d - b * c == 1


@pytest.mark.parametrize("name", ["L3", "W4"])
def test_verdict_independent_of_starting_corner(name):
    O = make(name)
    for t in triangles_up_to(O, 20):
        s1, s2, s3 = t.sides
        for a, b in ((s2, s1.reversed()), (s3, s2.reversed()), (s1, s3.reversed())):
            again = embed_check(O, a, b)
            assert again and again.key == t.key


@pytest.mark.parametrize("name", ["L3", "W4"])
def test_verdicts_match_enumeration(name):
    O = make(name)
    L2 = 13
    keys = {t.key for t in triangles_up_to(O, L2)}
    scs = oriented_saddle_connections_up_to(O, L2)
    for s1 in scs:
        for s2 in scs:
            if s1.start_vertex != s2.start_vertex:
                continue
            (x1, y1), (x2, y2) = s1.holonomy, s2.holonomy
            det = x1 * y2 - y1 * x2
            if not 0 < det <= 2 * O.n or (x2 - x1) ** 2 + (y2 - y1) ** 2 > L2:
                continue
            t = embed_check(O, s1, s2)
            assert bool(t) == (bool(t) and t.key in keys)


@pytest.mark.parametrize("name", ["T1", "L3", "W4", "O2"])
@pytest.mark.parametrize("k", ["inf", "0", "1", "1/2", "-3/2"])
def test_length_filter_removes_nothing(name, k):
    O = make(name)
    k = parse_slope(k)
    nd = normalize_direction(O, k)
    a = cusp_period(nd.surface)
    bound = lemma_bound(O.n, a, nd.delta, nd.kappa)
    filtered = triangles_with_vertex(O, k, (0, a), len2_bound=bound)
    full = triangles_with_vertex(O, k, (0, a))
    assert [w.ideal for w in filtered] == [w.ideal for w in full]


def test_triangles_on_torus_geodesic(T1):
    got = {w.ideal for w in triangles_on_geodesic(T1, INF, slope(0, 1))}
    assert got == {tri("-1", "0", "inf"), tri("0", "1", "inf")}
    assert adjacent(T1, INF, slope(0, 1))
    assert not adjacent(T1, INF, slope(1, 2))


def test_triangles_on_w4_geodesic(W4):
    ws = triangles_on_geodesic(W4, INF, slope(0, 1))
    assert len(ws) == 4
    for w in ws:
        assert INF in w.ideal and slope(0, 1) in w.ideal
        assert w.embedded.ideal.image(w.chart.inverse()) == w.ideal


def test_normalizer_examples():
    assert direction_normalizer(INF).canonical() == direction_normalizer(INF).canonical()
    A = direction_normalizer(slope(1, 2))
    x, y = A.a * 1 + A.b * 2, A.c * 1 + A.d * 2
    assert y == 0 and abs(x) == 1


@pytest.mark.parametrize("name", ["T1", "L3", "W4", "O2"])
def test_each_triangle_found_from_three_corners(name):
    O = make(name)
    L2 = 13
    scs = oriented_saddle_connections_up_to(O, L2)
    accepted = 0
    for s1 in scs:
        for s2 in scs:
            if s1.start_vertex != s2.start_vertex:
                continue
            (x1, y1), (x2, y2) = s1.holonomy, s2.holonomy
            det = x1 * y2 - y1 * x2
            if 0 < det <= 2 * O.n and (x2 - x1) ** 2 + (y2 - y1) ** 2 <= L2 and embed_check(O, s1, s2):
                accepted += 1
    assert accepted == 3 * len(triangles_up_to(O, L2))
