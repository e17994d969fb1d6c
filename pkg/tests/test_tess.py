import math
import random
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from origami_tess.core import INF, parse_slope, slope
from origami_tess.tess import (
    DEFAULT_REGION,
    DegenerateRegion,
    Region,
    Surd,
    as_region,
    faces_in_region,
    geodesics_in_region,
    locate,
    patch_to_json,
    render,
)
from origami_tess.triangles import IdealTriangle

from conftest import make
from oracles import farey_edges

WIDE = Region(Fraction(-1, 2), Fraction(3, 2), Fraction(1, 4), Fraction(2))


def tri(*ks):
    return IdealTriangle(parse_slope(k) for k in ks)


def edge_set(geos):
    return {tuple(sorted((tuple(g.k1), tuple(g.k2)), key=lambda p: (p[1] == 0, Fraction(p[0], p[1] or 1)))) for g in geos}


def oracle_set(region):
    out = set()
    for (p, q), (r, s) in farey_edges(*region):
        a, b = sorted([(p, q), (r, s)], key=lambda v: (v[1] == 0, Fraction(v[0], v[1] or 1)))
        out.add((a, b))
    return out


def test_region_parsing():
    assert as_region("0,1,0.25,2") == Region(0, 1, Fraction(1, 4), 2)
    assert as_region("-1/2,3/2,1/4,2") == WIDE
    with pytest.raises(DegenerateRegion):
        as_region("0,1,0,2")


@pytest.mark.parametrize(
    "region",
    [(0, 1, Fraction(1, 2), 2), (-1, 2, Fraction(1, 5), 3), (Fraction(1, 3), Fraction(5, 2), Fraction(1, 7), 1)],
)
def test_torus_geodesics_are_farey_edges(T1, region):
    geos = geodesics_in_region(T1, region)
    for g in geos:
        (x1, y1), (x2, y2) = g.endpoints()
        assert abs(x1 * y2 - x2 * y1) == 1
    assert edge_set(geos) == oracle_set(region)


@pytest.mark.parametrize("region", [(0, 1, Fraction(1, 2), 2), (-1, 2, Fraction(1, 5), 3)])
def test_l3_tessellation_is_farey(T1, L3, region):
    assert edge_set(geodesics_in_region(L3, region)) == edge_set(geodesics_in_region(T1, region))


def test_threads_do_not_change_output(W4):
    assert geodesics_in_region(W4, WIDE, threads=2) == geodesics_in_region(W4, WIDE)


def test_locate_interior(T1):
    loc = locate(T1, (Fraction(1, 2), 1))
    assert loc.interior and loc.edge is None
    assert loc.triangles == (tri("0", "1", "inf"),)


def test_locate_on_edge(T1):
    loc = locate(T1, (0, 1))
    assert not loc.interior
    assert {loc.edge.k1, loc.edge.k2} == {slope(0, 1), INF}
    assert set(loc.triangles) == {tri("0", "1", "inf"), tri("-1", "0", "inf")}


def test_locate_translate(T1):
    loc = locate(T1, (2, 1))
    assert set(loc.triangles) <= {tri("1", "2", "inf"), tri("2", "3", "inf")}
    assert loc.triangles


@pytest.mark.parametrize("name", ["T1", "L3", "W4"])
def test_locate_covers_region(name):
    O = make(name)
    rng = random.Random(1)
    R = DEFAULT_REGION
    for _ in range(30):
        x = R.x1 + (R.x2 - R.x1) * Fraction(rng.randint(0, 101), 101)
        y = R.y1 + (R.y2 - R.y1) * Fraction(rng.randint(0, 101), 101)
        loc = locate(O, (x, y))
        assert loc.triangles
        if not loc.interior:
            assert len(loc.triangles) == 2


def test_torus_patch_has_no_crossings(T1):
    R = Region(-1, 2, Fraction(1, 5), 3)
    p = faces_in_region(T1, R)
    assert p.euler_ok()
    for f in p.faces:
        for v in f.vertices:
            on_side = float(v.x) in (float(R.x1), float(R.x2)) or v.y2 in (R.y1**2, R.y2**2)
            assert on_side
        if f.complete:
            assert f.sides == 3


def test_w4_patch_is_not_farey(W4):
    p = faces_in_region(W4, WIDE)
    assert p.euler_ok()
    complete = p.complete_faces
    assert complete and any(f.sides > 3 for f in complete)
    assert all(0 < f.area <= math.pi + 1e-9 for f in complete)


def test_faces_partition_region(W4):
    p = faces_in_region(W4, WIDE)
    rng = random.Random(4)
    for _ in range(60):
        x = WIDE.x1 + (WIDE.x2 - WIDE.x1) * Fraction(rng.randint(1, 996), 997)
        y = WIDE.y1 + (WIDE.y2 - WIDE.y1) * Fraction(rng.randint(1, 996), 997)
        if 0 in p.sign_vector(x, y):
            continue
        assert len(p.faces_at(x, y)) == 1


def test_render_one_path_per_geodesic(T1):
    p = faces_in_region(T1, Region(0, 1, Fraction(1, 2), 2))
    svg = render(p, "half-plane")
    root = ET.fromstring(svg)
    paths = [e for e in root.iter() if e.tag.endswith("path") and e.get("class") == "geodesic"]
    assert len(paths) == len(p.geodesics)


def test_render_deterministic(W4):
    p = faces_in_region(W4, DEFAULT_REGION)
    assert render(p, "disk") == render(faces_in_region(W4, DEFAULT_REGION), "disk")
    assert patch_to_json(p) == patch_to_json(faces_in_region(W4, DEFAULT_REGION))


def test_w4_disk_drawing(W4):
    svg = render(faces_in_region(W4, DEFAULT_REGION), "disk")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert sum(1 for e in root.iter() if e.get("class") == "geodesic") == 11


def test_json_rationals_are_strings(W4):
    import json

    doc = json.loads(patch_to_json(faces_in_region(W4, WIDE)))
    assert all(isinstance(v, str) for g in doc["geodesics"] for v in g)
    assert all(isinstance(v, str) for v in doc["region"])


small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(small, small, st.integers(0, 30), small, small, st.integers(0, 30))
def test_surd_order_matches_floats(a1, b1, s1, a2, b2, s2):
    u, v = Surd.make(a1, b1, s1), Surd.make(a2, b2, s2)
    fu, fv = float(a1) + float(b1) * math.sqrt(s1), float(a2) + float(b2) * math.sqrt(s2)
    c = u.cmp(v)
    if abs(fu - fv) > 1e-9:
        assert c == (1 if fu > fv else -1)
    assert v.cmp(u) == -c
    assert abs(float(u) - fu) < 1e-9


@settings(max_examples=100, deadline=None, derandomize=True)
@given(small, st.integers(0, 30))
def test_surd_square_of_pure_root(b, s):
    u = Surd.make(0, b, s)
    assert u.square() == b * b * s
    assert Surd.make(b).square() == b * b
