"""Invariant suite run by ``origami-tess verify``.

Each check returns ``(ok, detail)``; ``ok`` is None when the check does not
apply to the surface.  Sample sizes are small so the suite stays fast on
the example surfaces.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, NamedTuple

from .core import (
    INF,
    GroupElement,
    Origami,
    Slope,
    apply_matrix,
    canonical_form,
    is_isomorphic,
    matrix_to_word,
    word_product,
)
from .flatgeom import cylinder_decomposition, ordered_intersection, saddle_connections_up_to
from .graph import (
    connecting_path,
    edge_action_free,
    local_ball,
    path_length,
    quotient_graph,
)
from .tess import DEFAULT_REGION, faces_in_region, locate
from .triangles import adjacent, triangles_up_to
from .veech import (
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

__all__ = ["CheckResult", "Caps", "run_checks", "format_table"]


class CheckResult(NamedTuple):
    name: str
    ok: bool | None
    detail: str

    @property
    def status(self) -> str:
        return {True: "PASS", False: "FAIL", None: "SKIP"}[self.ok]


class Caps(NamedTuple):
    orbit: int = 10**6
    coset: int = 10**6
    radius: int = 2
    iterations: int = 100
    samples: int = 12
    seed: int = 0


def _sample_slopes(rng: random.Random, count: int, bound: int = 6) -> list[Slope]:
    out = []
    while len(out) < count:
        x, y = rng.randint(-bound, bound), rng.randint(0, bound)
        if math.gcd(x, y) != 1:
            continue
        out.append(Slope(x, y) if y else Slope(1, 0))
    return out


def run_checks(O: Origami, caps: Caps = Caps(), region=DEFAULT_REGION) -> list[CheckResult]:
    rng = random.Random(caps.seed)
    ctx: dict = {}

    def oracle():
        if "oracle" not in ctx:
            ctx["oracle"] = oracle_orbit(O, caps.orbit)
        return ctx["oracle"]

    def domain():
        if "domain" not in ctx:
            ctx["domain"] = algorithm_A(O, caps.iterations)
        return ctx["domain"]

    def angle_sum():
        V = len(O.vertex_classes)
        g = (2 - V + O.n) // 2
        lhs = sum(vc.angle_pi - 2 for vc in O.vertex_classes)
        return lhs == 4 * g - 4, f"sum(angle - 2pi) = {lhs}pi, genus {g}"

    def canonical():
        perm = list(range(O.n))
        rng.shuffle(perm)
        R = O.relabel(perm)
        c1, _ = canonical_form(O)
        c2, _ = canonical_form(R)
        c3, _ = canonical_form(c1)
        return c1 == c2 == c3 and is_isomorphic(O, R), "canonical form idempotent and relabelling invariant"

    def action():
        ok = True
        for _ in range(caps.samples):
            g = word_product(("S" if rng.random() < 0.5 else "T", rng.choice((-1, 1))) for _ in range(4))
            h = word_product(("S" if rng.random() < 0.5 else "T", rng.choice((-1, 1))) for _ in range(4))
            lhs = apply_matrix(O, g * h)
            rhs = apply_matrix(apply_matrix(O, h), g)
            ok &= is_isomorphic(lhs, rhs)
            ok &= word_product(matrix_to_word(g)).canonical() == g.canonical()
        ok &= is_isomorphic(apply_matrix(O, GroupElement(1, 0, 0, 1)), O)
        return ok, "action law and word round trip on random elements"

    def cylinders():
        dirs = [INF, Slope(0, 1), Slope(1, 1)] + _sample_slopes(rng, 3, 3)
        areas = [cylinder_decomposition(O, k).total_area for k in dirs]
        return all(a == O.n for a in areas), f"cylinder areas sum to n in {len(dirs)} directions"

    def triangles():
        ts = triangles_up_to(O, 18)
        ok = all(
            tuple(map(sum, zip(*t.holonomies))) == (0, 0) and 0 < t.det <= 2 * O.n for t in ts
        )
        return ok, f"{len(ts)} triangles: holonomy closure, 0 < det <= 2n"

    def zero_intersection():
        scs = saddle_connections_up_to(O, 10)
        dirs = sorted({s.slope for s in scs}, key=Slope.key)[:6]
        bad = []
        for i, k in enumerate(dirs):
            for k2 in dirs[i + 1 :]:
                if min(ordered_intersection(O, k, k2), ordered_intersection(O, k2, k)) == 0 and not adjacent(O, k, k2):
                    bad.append((k, k2))
        return not bad, "zero ordered intersection implies adjacency"

    def coverage():
        R = region
        miss = 0
        for _ in range(caps.samples):
            x = R.x1 + (R.x2 - R.x1) * Fraction(rng.randint(0, 97), 97)
            y = R.y1 + (R.y2 - R.y1) * Fraction(rng.randint(0, 97), 97)
            loc = locate(O, (x, y))
            miss += not loc.triangles
        return miss == 0, f"{caps.samples} sampled points located"

    def patch():
        p = faces_in_region(O, region)
        areas = [f.area for f in p.complete_faces]
        ok = p.euler_ok() and all(a <= math.pi + 1e-9 for a in areas)
        return ok, f"{len(p.faces)} faces, {len(areas)} complete, Euler ok={p.euler_ok()}"

    def periods():
        ok = True
        for cd in domain().cusp_classes:
            nd = normalize_direction(O, cd.rep)
            a = cusp_period(nd.surface)
            ok &= period_is_minimal(nd.surface, a)
        return ok, "cusp periods minimal"

    def ref_domains():
        ks = [cd.rep for cd in domain().cusp_classes] + _sample_slopes(rng, 3, 3)
        ok = all(reference_domain(O, k).is_connected() for k in ks)
        return ok, f"{len(ks)} reference domains connected"

    def cusps():
        d, o = domain(), oracle()
        return len(d.cusp_classes) == o.cusp_count, f"algorithm A {len(d.cusp_classes)} cusps, oracle {o.cusp_count}"

    def generators():
        B = algorithm_B(O, domain().d1)
        idx = coset_enumeration(B.words, caps.coset)
        return idx == oracle().index, f"coset index {idx}, oracle index {oracle().index}"

    def volume():
        v = volume_report(O, domain(), oracle())
        return v.bound_ok, str(v)

    def ball():
        b = local_ball(O, INF, min(2, caps.radius))
        ok = b.is_bipartite() and all(b.degree(t) == 3 for t in b.i_vertices) and b.distances_ok()
        return ok, f"radius {b.radius}: {len(b.c_vertices)} slopes, {len(b.i_vertices)} triangles"

    def quotient():
        q = quotient_graph(O, domain())
        ok = len(q.edges) == q.edge_count_formula() and list(q.distances) == list(domain().generations)
        return ok, f"{q.summary()}, distances {list(q.distances)}"

    def free_action():
        return edge_action_free(O, domain()), "no rotation fixes an incidence"

    def edge_index():
        if not all(vc.marked for vc in O.vertex_classes):
            return None, "not a torus cover with all vertices marked"
        q = quotient_graph(O, domain())
        return len(q.edges) == oracle().index, f"E={len(q.edges)}, index={oracle().index}"

    def distance_bound():
        ok = True
        for _ in range(max(2, caps.samples // 4)):
            k1, k2 = _sample_slopes(rng, 2, 4)
            if k1 == k2:
                continue
            m = min(ordered_intersection(O, k1, k2), ordered_intersection(O, k2, k1))
            ok &= path_length(connecting_path(O, k1, k2)) <= math.log2(m + 1) + 1
        return ok, "connecting paths within log2(m + 1) + 1"

    checks: list[tuple[str, Callable]] = [
        ("core.angle_sum", angle_sum),
        ("core.canonical_form", canonical),
        ("core.action", action),
        ("flatgeom.cylinder_area", cylinders),
        ("flatgeom.zero_intersection", zero_intersection),
        ("triangles.embedding", triangles),
        ("tess.coverage", coverage),
        ("tess.faces", patch),
        ("veech.period_minimal", periods),
        ("veech.reference_domains", ref_domains),
        ("veech.cusp_count", cusps),
        ("veech.generators", generators),
        ("veech.volume", volume),
        ("graph.ball", ball),
        ("graph.quotient", quotient),
        ("graph.free_edge_action", free_action),
        ("graph.edge_count_index", edge_index),
        ("graph.distance_bound", distance_bound),
    ]
    out = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # reported as a failure, not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, ok, detail))
    return out


def format_table(results: list[CheckResult]) -> str:
    w = max(len(r.name) for r in results)
    lines = [f"{r.status}  {r.name:<{w}}  {r.detail}" for r in results]
    return "\n".join(lines) + "\n"
