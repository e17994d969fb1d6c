"""End-to-end acceptance criteria; each prints one PASS/FAIL line."""

import math
import random
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager
from fractions import Fraction

from origami_tess.core import INF, slope
from origami_tess.flatgeom import horizontal_cylinders, ordered_intersection
from origami_tess.graph import (
    check_certificate,
    connecting_path,
    edge_action_free,
    local_ball,
    path_length,
    quotient_graph,
)
from origami_tess.tess import DEFAULT_REGION, Region, faces_in_region, geodesics_in_region, locate, render
from origami_tess.triangles import triangles_up_to, triangles_with_vertex
from origami_tess.veech import (
    algorithm_A,
    algorithm_B,
    coset_enumeration,
    cusp_period,
    normalize_direction,
    oracle_orbit,
    period_is_minimal,
    reference_domain,
    volume_report,
)

from conftest import make
from oracles import farey_edges

WIDE = Region(Fraction(-1, 2), Fraction(3, 2), Fraction(1, 4), Fraction(2))


@contextmanager
def criterion(capsys, number, title, limit):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < limit
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {title} ({dt:.2f}s, limit {limit}s)")
    assert dt < limit, f"took {dt:.1f}s"


def endpoint_pair(g):
    key = lambda p: (p[1] == 0, Fraction(p[0], p[1] or 1))
    return tuple(sorted((tuple(g.k1), tuple(g.k2)), key=key))


def test_criterion_1_torus_golden(capsys):
    with criterion(capsys, 1, "torus golden suite", 1):
        T1 = make("T1")
        dom = algorithm_A(T1)
        q = quotient_graph(T1, dom)
        o = oracle_orbit(T1)
        v = volume_report(T1, dom, o)
        assert q.counts == (1, 1, 1)
        assert o.index == 1
        assert v.vol_over_pi == Fraction(1, 3) and v.triangle_classes == 1 and v.bound_ok
        assert dom.d1 == 0
        assert coset_enumeration(algorithm_B(T1, dom.d1).words) == 1


def test_criterion_2_farey_reproduction(capsys):
    with criterion(capsys, 2, "Farey reproduction", 10):
        region = (0, 1, Fraction(1, 2), 2)
        geos = geodesics_in_region(make("T1"), region)
        for g in geos:
            (x1, y1), (x2, y2) = g.endpoints()
            assert abs(x1 * y2 - x2 * y1) == 1
        expected = set()
        for a, b in farey_edges(*region):
            expected.add(tuple(sorted((a, b), key=lambda p: (p[1] == 0, Fraction(p[0], p[1] or 1)))))
        assert {endpoint_pair(g) for g in geos} == expected


def test_criterion_3_covering_invariance(capsys):
    with criterion(capsys, 3, "covering invariance", 30):
        T1, L3, O2 = make("T1"), make("L3"), make("O2")
        for region in (DEFAULT_REGION, (0, 1, Fraction(1, 2), 2)):
            a = {endpoint_pair(g) for g in geodesics_in_region(T1, region)}
            b = {endpoint_pair(g) for g in geodesics_in_region(L3, region)}
            assert a == b
        loops_t = {t.holonomy_loop() for t in triangles_up_to(T1, 8)}
        loops_o = {t.holonomy_loop() for t in triangles_up_to(O2, 8)}
        assert loops_t == loops_o


def test_criterion_4_edge_count_equals_index(capsys):
    with criterion(capsys, 4, "edge count = oracle index = coset index (L3, W4)", 120):
        report = []
        for name in ("L3", "W4"):
            O = make(name)
            dom = algorithm_A(O)
            E = len(quotient_graph(O, dom).edges)
            idx = oracle_orbit(O).index
            coset = coset_enumeration(algorithm_B(O, dom.d1).words)
            report.append((name, E, idx, coset))
        with capsys.disabled():
            for name, E, idx, coset in report:
                print(f"  {name}: edges={E} oracle index={idx} coset index={coset}")
        for name, E, idx, coset in report:
            assert coset == idx, name
            assert E == idx, name


def test_criterion_5_w4_picture(capsys, tmp_path):
    with criterion(capsys, 5, "W4 qualitative picture", 120):
        W4 = make("W4")
        assert len(horizontal_cylinders(W4)) == 1
        assert oracle_orbit(W4).index > 1
        patch = faces_in_region(W4, WIDE)
        assert patch.complete_faces
        assert all(f.area <= math.pi + 1e-9 for f in patch.complete_faces)
        out = tmp_path / "w4.svg"
        out.write_bytes(render(patch))
        root = ET.parse(out).getroot()
        assert root.tag.endswith("svg")
        assert len(root.findall(".//{http://www.w3.org/2000/svg}path")) >= len(patch.geodesics)


def _slopes(rng, count, bound):
    out = []
    while len(out) < count:
        x, y = rng.randint(-bound, bound), rng.randint(0, bound)
        if math.gcd(x, y) == 1 and (y or x == 1):
            out.append(slope(x, y))
    return out


def test_criterion_6_property_suites(capsys):
    with criterion(capsys, 6, "property suites", 300):
        rng = random.Random(20240601)
        surfaces = {name: make(name) for name in ("T1", "L3", "W4")}
        for O in surfaces.values():
            for t in triangles_up_to(O, 50):
                hs = t.holonomies
                assert tuple(map(sum, zip(*hs))) == (0, 0)
                for i in range(3):
                    (a, b), (c, d) = hs[i], hs[(i + 1) % 3]
                    assert 0 < a * d - b * c <= 2 * O.n

        for O in surfaces.values():
            b = local_ball(O, INF, 2)
            assert b.is_bipartite() and b.distances_ok()
            assert all(b.degree(t) == 3 for t in b.i_vertices)
            assert all(check_certificate(O, c, t) for t, c in b.certificates.items())

        T1 = surfaces["T1"]
        pairs = 0
        while pairs < 50:
            k1, k2 = _slopes(rng, 2, 10)
            if k1 == k2:
                continue
            m = min(ordered_intersection(T1, k1, k2), ordered_intersection(T1, k2, k1))
            assert path_length(connecting_path(T1, k1, k2)) <= math.log2(m + 1) + 1
            pairs += 1

        R = DEFAULT_REGION
        for O in surfaces.values():
            for _ in range(100):
                x = R.x1 + (R.x2 - R.x1) * Fraction(rng.randint(0, 997), 997)
                y = R.y1 + (R.y2 - R.y1) * Fraction(rng.randint(0, 997), 997)
                loc = locate(O, (x, y))
                assert loc.triangles
                assert len(loc.triangles) == (1 if loc.interior else 2)

        for O in surfaces.values():
            dom = algorithm_A(O)
            assert edge_action_free(O, dom)
            for cd in dom.cusp_classes:
                nd = normalize_direction(O, cd.rep)
                assert period_is_minimal(nd.surface, cusp_period(nd.surface))
            for k in [cd.rep for cd in dom.cusp_classes] + _slopes(rng, 4, 6):
                cd = reference_domain(O, k)
                assert cd.is_connected()
                a = cd.period_raw
                refs = set(cd.ref_triangles)
                for w in triangles_with_vertex(O, k, (-2 * a, 3 * a), chart=cd.A):
                    assert {w.ideal.image(cd.g_k**j) for j in range(-4, 5)} & refs
