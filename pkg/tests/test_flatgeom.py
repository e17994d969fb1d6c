import pytest

from origami_tess.core import INF, IrrationalDirection, slope
from origami_tess.flatgeom import (
    cylinder_decomposition,
    horizontal_cylinders,
    ordered_intersection,
    saddle_connections_in_direction,
    saddle_connections_up_to,
    trace_ray,
    trace_saddle_connection,
)

from conftest import make
from oracles import saddle_holonomies


@pytest.mark.parametrize("vec, len2", [((1, 0), 1), ((1, 1), 2), ((2, 1), 5)])
def test_torus_rays_hit_lattice(T1, vec, len2):
    hit = trace_ray(T1, 0, vec, 100)
    assert hit and hit.len2 == len2


def test_ray_beyond_bound_misses(T1):
    assert not trace_ray(T1, 0, (2, 1), 4)


def test_torus_short_saddle_connections(T1):
    hol = {s.holonomy for s in saddle_connections_up_to(T1, 2)}
    assert hol == {(1, 0), (0, 1), (1, 1), (-1, 1)}


def test_torus_non_primitive_vector_absent(T1):
    assert (2, 2) not in {s.holonomy for s in saddle_connections_up_to(T1, 8)}


def test_l3_unit_saddle_connections(L3):
    # three horizontal and three vertical sectors at the 6pi point
    hol = sorted(s.holonomy for s in saddle_connections_up_to(L3, 1))
    assert hol == saddle_holonomies(L3, 1) == [(0, 1)] * 3 + [(1, 0)] * 3


@pytest.mark.parametrize("name", ["T1", "L3", "W4", "O2"])
@pytest.mark.parametrize("L2", [5, 20, 50])
def test_enumeration_matches_walker(name, L2):
    O = make(name)
    assert sorted(s.holonomy for s in saddle_connections_up_to(O, L2)) == saddle_holonomies(O, L2)


def test_monotone_in_bound(W4):
    small = set(saddle_connections_up_to(W4, 10))
    big = set(saddle_connections_up_to(W4, 30))
    assert small <= big


def test_retrace_reproduces_holonomy(W4):
    for s in saddle_connections_up_to(W4, 30):
        again = trace_saddle_connection(W4, s.start_anchor, s.holonomy, W4.n)
        assert again.holonomy == s.holonomy and again.end_anchor == s.end_anchor


def test_torus_horizontal_cylinder(T1):
    d = cylinder_decomposition(T1, INF)
    assert [(c.circumference, c.height) for c in d.cylinders] == [(1, 1)]


def test_w4_one_horizontal_cylinder(W4):
    d = cylinder_decomposition(W4, INF)
    assert [(c.circumference, c.height) for c in d.cylinders] == [(4, 1)]
    assert len(horizontal_cylinders(W4)) == 1


def test_l3_two_horizontal_cylinders(L3):
    d = cylinder_decomposition(L3, INF)
    assert sorted((c.circumference, c.height) for c in d.cylinders) == [(1, 1), (2, 1)]


@pytest.mark.parametrize("name", ["T1", "L3", "W4"])
@pytest.mark.parametrize("k", ["inf", "0", "1", "1/2", "-2/3", "5/3"])
def test_cylinder_areas_sum_to_n(name, k):
    O = make(name)
    d = cylinder_decomposition(O, k)
    assert d.total_area == O.n
    covered = set().union(*(c.core_squares for c in d.cylinders))
    assert covered == set(range(O.n))


def test_irrational_direction_rejected(T1):
    with pytest.raises(IrrationalDirection):
        cylinder_decomposition(T1, 0.5)


@pytest.mark.parametrize(
    "k, k2, expected",
    [("0", "inf", 0), ("1", "inf", 0), ("1/2", "inf", 1), ("inf", "1/2", 1)],
)
def test_torus_ordered_intersection(T1, k, k2, expected):
    assert ordered_intersection(T1, k, k2) == expected


def test_ordered_intersection_needs_distinct_directions(T1):
    with pytest.raises(ValueError):
        ordered_intersection(T1, INF, INF)


def test_direction_saddle_connections_parallel(L3):
    scs = saddle_connections_in_direction(L3, slope(1, 2))
    assert scs and all(s.slope == slope(1, 2) for s in scs)
