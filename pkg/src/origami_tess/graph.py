"""The graph of periodic directions.

Vertices are periodic directions (slopes) and ideal triangles; a slope is
joined to every triangle having it as a vertex, each edge of length 1/2.
The graph is infinite, so every operation here is local.

Triangles at a slope ``k`` are the translates ``A^-1 U^(j a') A`` of the
reference triangles of ``k`` (``A`` sends ``k`` to the horizontal, ``a'``
is the raw period).  Only finitely many translates are used: either a
fixed number on each side of the reference window (balls) or those that
meet a window around a target slope (distances).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import NamedTuple

from .core import INF, GroupElement, Origami, Slope, T, apply_matrix, direction_normalizer
from .flatgeom import (
    _check_rational,
    horizontal_saddle_connections,
    intersection_points,
    ordered_intersection,
)
from .triangles import (
    IdealTriangle,
    TriangleWitness,
    _prev_anchor,
    embed_check,
    triangles_on_geodesic,
)
from .veech import (
    CoarseFundamentalDomain,
    algorithm_A,
    cusp_key,
    directions_equivalent,
    in_veech_group,
    reference_domain,
)

__all__ = [
    "RadiusTooLarge",
    "ExceedsCutoff",
    "Distance",
    "Certificate",
    "PeriodicDirectionBall",
    "QuotientGraph",
    "incident_triangles",
    "check_certificate",
    "local_ball",
    "common_neighbors",
    "graph_distance",
    "connecting_path",
    "path_length",
    "path_witnesses",
    "quotient_graph",
    "edge_action_free",
    "to_json_text",
    "is_farey_type",
]

MAX_RADIUS = 2


class RadiusTooLarge(ValueError):
    pass


class ExceedsCutoff(NamedTuple):
    """No path of length at most ``cutoff`` was found.

    ``certain`` is true when the search space is known to contain a
    shortest path, so the distance really exceeds ``cutoff``.
    """

    cutoff: int
    certain: bool

    def __bool__(self) -> bool:
        return False


class Distance(int):
    """A path length; ``exact`` tells whether it is the distance or only
    an upper bound."""

    exact: bool

    def __new__(cls, value: int, exact: bool):
        obj = super().__new__(cls, value)
        obj.exact = exact
        return obj

    def __repr__(self) -> str:
        return f"Distance({int(self)}, exact={self.exact})"


class Certificate(NamedTuple):
    """``g`` maps the reference triangle of ``base`` onto the certified
    triangle; ``g`` is a Veech group element."""

    base: TriangleWitness
    g: GroupElement


def check_certificate(O: Origami, cert: Certificate, t: IdealTriangle) -> bool:
    base = cert.base
    surf = apply_matrix(O, base.chart)
    if base.embedded.ideal != base.ideal.image(base.chart):
        return False
    if tuple(map(sum, zip(*base.embedded.holonomies))) != (0, 0):
        return False
    if not 0 < base.embedded.det <= 2 * surf.n:
        return False
    if not (cert.g.is_identity() or in_veech_group(O, cert.g)):
        return False
    return base.ideal.image(cert.g) == t


# ---------------------------------------------------------------------------
# triangles at a slope


def _translate_range(p, q, a, lo, hi):
    """Integers ``j`` with ``[p + j a, q + j a]`` meeting ``[lo, hi]``."""
    return range(ceil((lo - q) / a), floor((hi - p) / a) + 1)


@lru_cache(maxsize=None)
def _cusp_reps(O: Origami) -> dict:
    return {cusp_key(O, cd.rep): cd.rep for cd in algorithm_A(O).cusp_classes}


@lru_cache(maxsize=None)
def _transport(O: Origami, k: Slope):
    """``(cd, h, m)``: the reference domain ``cd`` of the cusp
    representative of ``k``, a group element ``h`` sending it to ``k``, and
    the shift ``m`` with ``A_k h A_rep^-1 = +-U^m``."""
    rep = _cusp_reps(O)[cusp_key(O, k)]
    cd = reference_domain(O, rep)
    h = directions_equivalent(O, rep, k).witness
    M = direction_normalizer(k) * h * cd.A.inverse()
    assert M.c == 0 and abs(M.a) == 1
    return cd, h, M.a * M.b


def incident_triangles(O: Origami, k, translates: int = 1, around=None):
    """Triangles with vertex ``k``, each with a :class:`Certificate`.

    With ``around`` (a slope other than ``k``) the triangles returned are
    those meeting the slope window of ``translates`` periods on each side
    of ``around`` in the chart of ``k``.  Otherwise the reference triangles
    of ``k`` and ``translates`` translates on each side are returned.

    Triangles are transported from the reference domain of the cusp
    representative of ``k``, so each certificate is that representative's
    witness together with a group element.
    """
    k = _check_rational(k)
    cd, h, m = _transport(O, k)
    A, a = cd.A, cd.period_raw
    Ainv = A.inverse()
    if around is not None:
        c = direction_normalizer(k).act(_check_rational(around)).value
        if c is None:
            raise ValueError("around must differ from k")
        lo, hi = c - translates * a, c + translates * a
    out = {}
    for w in cd.witnesses:
        p, q = sorted(x.value for x in w.ideal.image(A).vertices if not x.is_inf)
        p, q = p + m, q + m
        if around is not None:
            js = _translate_range(p, q, a, lo, hi)
        else:
            # the translates meeting the open window (0, a) are the
            # reference triangles of k itself
            base = [j for j in range(floor(-q / a), ceil((a - p) / a) + 1) if p + j * a < a and q + j * a > 0]
            js = range(min(base) - translates, max(base) + translates + 1)
        for j in js:
            g = (h * Ainv * T ** (j * a) * A).canonical()
            t = w.ideal.image(g)
            out.setdefault(t, Certificate(w, g))
    return sorted(out.items(), key=lambda kv: kv[0].sort_key())


# ---------------------------------------------------------------------------
# balls


@dataclass(frozen=True)
class PeriodicDirectionBall:
    center: Slope
    radius: Fraction
    c_vertices: dict
    i_vertices: dict
    edges: frozenset
    certificates: dict = field(repr=False)
    translates: int = 1
    truncated: bool = True

    def degree(self, t: IdealTriangle) -> int:
        return sum(1 for k, s in self.edges if s == t)

    def is_bipartite(self) -> bool:
        return all(isinstance(k, Slope) and isinstance(t, IdealTriangle) for k, t in self.edges)

    def distances_ok(self) -> bool:
        """Recompute distances from the listed edges alone."""
        dist = _edge_distances(self.center, self.edges)
        want = {**self.c_vertices, **self.i_vertices}
        return all(dist.get(x) == d and d <= self.radius for x, d in want.items())

    def to_json(self) -> dict:
        return {
            "center": str(self.center),
            "radius": str(self.radius),
            "translates": self.translates,
            "truncated": self.truncated,
            "slopes": {str(k): str(d) for k, d in sorted(self.c_vertices.items(), key=lambda kv: kv[0].key())},
            "triangles": {
                str(t): str(d) for t, d in sorted(self.i_vertices.items(), key=lambda kv: kv[0].sort_key())
            },
            "edges": sorted([str(k), str(t)] for k, t in self.edges),
        }

    def to_dot(self) -> str:
        return _dot(
            "ball",
            sorted(self.c_vertices, key=Slope.key),
            sorted(self.i_vertices, key=IdealTriangle.sort_key),
            sorted(self.edges, key=lambda e: (e[0].key(), e[1].sort_key())),
        )


def local_ball(O: Origami, center, radius=1, translates: int = 1, max_radius=MAX_RADIUS) -> PeriodicDirectionBall:
    """Ball of the given radius (a multiple of 1/2) around ``center``.

    Each slope contributes its reference triangles and ``translates``
    stabilizer translates on each side; since every slope has infinitely
    many triangles the ball is always a truncation (``truncated``).
    Triangles are joined to all three vertices when those lie within the
    radius, so at integer radius every triangle has degree 3.
    """
    center = _check_rational(center)
    radius = Fraction(radius)
    if radius <= 0 or (2 * radius).denominator != 1:
        raise ValueError("radius must be a positive multiple of 1/2")
    if radius > max_radius:
        raise RadiusTooLarge(f"radius {radius} exceeds the cap {max_radius}")
    half = Fraction(1, 2)
    slopes = {center: Fraction(0)}
    tris: dict = {}
    certs: dict = {}
    edges = set()
    frontier = [center]
    while frontier:
        nxt = []
        for k in sorted(frontier, key=Slope.key):
            dk = slopes[k]
            if dk + half > radius:
                continue
            for t, cert in incident_triangles(O, k, translates):
                if t not in tris:
                    tris[t] = dk + half
                    certs[t] = cert
                for x in t.vertices:
                    if x not in slopes and tris[t] + half <= radius:
                        slopes[x] = tris[t] + half
                        nxt.append(x)
                    if x in slopes:
                        edges.add((x, t))
        frontier = nxt
    # a triangle at the center may lie outside its translate window and be
    # reached through a neighbour first; distances along the edges found
    # are recomputed
    dist = _edge_distances(center, edges)
    slopes = {k: dist[k] for k in slopes}
    tris = {t: dist[t] for t in tris}
    return PeriodicDirectionBall(center, radius, slopes, tris, frozenset(edges), certs, translates)


def _edge_distances(center, edges) -> dict:
    adj: dict = {}
    for k, t in edges:
        adj.setdefault(k, []).append(t)
        adj.setdefault(t, []).append(k)
    dist = {center: Fraction(0)}
    queue = deque([center])
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y not in dist:
                dist[y] = dist[x] + Fraction(1, 2)
                queue.append(y)
    return dist


# ---------------------------------------------------------------------------
# distances


def _denominator_bound(O: Origami, A: GroupElement) -> int:
    """Bound on the denominators of the neighbours of ``A^-1(inf)`` in the
    chart ``A``: an apex over a horizontal side of length at least the
    shortest one has height at most ``2n / delta``."""
    surf = apply_matrix(O, A)
    delta = min(s.holonomy[0] for s in horizontal_saddle_connections(surf))
    return (2 * O.n) // delta


def common_neighbors(O: Origami, k1, k2) -> list[Slope]:
    """All slopes adjacent to both ``k1`` and ``k2`` (exact).

    A neighbour of ``k1`` has denominator at most ``D1`` in the chart of
    ``k1`` and at most ``D2`` in the chart of ``k2``; with ``p/q`` in the
    first chart, the second condition bounds ``p``.
    """
    k1, k2 = _check_rational(k1), _check_rational(k2)
    if k1 == k2:
        raise ValueError("directions must differ")
    A, B = direction_normalizer(k1), direction_normalizer(k2)
    D1, D2 = _denominator_bound(O, A), _denominator_bound(O, B)
    M = B * A.inverse()
    g, e = M.c, M.d
    Ainv = A.inverse()
    out = []
    for q in range(1, D1 + 1):
        # |g p + e q| <= D2 with g != 0 since k1 != k2
        lo = ceil(Fraction(-D2 - e * q, g)) if g > 0 else ceil(Fraction(D2 - e * q, g))
        hi = floor(Fraction(D2 - e * q, g)) if g > 0 else floor(Fraction(-D2 - e * q, g))
        for p in range(lo, hi + 1):
            if g * p + e * q == 0:
                continue
            r = Ainv.act(Slope(p, q))
            if r in (k1, k2):
                continue
            if triangles_on_geodesic(O, k1, r) and triangles_on_geodesic(O, r, k2):
                out.append(r)
    return sorted(set(out), key=Slope.key)


@lru_cache(maxsize=None)
def is_farey_type(O: Origami) -> bool:
    """Whether every triangle is a Farey triangle.

    Every triangle is a Veech group image of a triangle of the coarse
    fundamental domain, and group elements preserve unimodularity, so it
    suffices to look at the domain.
    """
    dom = algorithm_A(O)
    for t in dom.domain_triangles:
        vs = [(k.x, k.y) for k in t.vertices]
        for i in range(3):
            for j in range(i + 1, 3):
                (a, b), (c, d) = vs[i], vs[j]
                if abs(a * d - b * c) != 1:
                    return False
    return True


def _windowed_bfs(O: Origami, k1: Slope, k2: Slope, cutoff: int, translates: int):
    dist = {k1: 0}
    frontier = [k1]
    d = 0
    while frontier and d < cutoff:
        d += 1
        nxt = []
        for k in frontier:
            for t, _ in incident_triangles(O, k, translates, around=k2):
                for x in t.vertices:
                    if x == k2:
                        return d
                    if x not in dist:
                        dist[x] = d
                        nxt.append(x)
        frontier = sorted(nxt, key=Slope.key)
    return None


def graph_distance(O: Origami, k1, k2, cutoff: int = 6, translates: int = 1):
    """Distance between two slopes, or :class:`ExceedsCutoff`.

    Distances 0, 1 and 2 are decided by finite exact checks.  Beyond that
    a breadth-first search runs where each slope contributes the triangles
    meeting a window of ``translates`` periods around ``k2`` in its own
    chart.  The result is exact when it equals 3 (the lower bound is
    certified) or when every triangle is a Farey triangle (triangles do
    not overlap, so a shortest path stays inside the windows); otherwise
    it is an upper bound, flagged by ``exact=False``.
    """
    k1, k2 = _check_rational(k1), _check_rational(k2)
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if k1 == k2:
        return Distance(0, True)
    if triangles_on_geodesic(O, k1, k2):
        return Distance(1, True)
    if cutoff < 2:
        return ExceedsCutoff(cutoff, True)
    if common_neighbors(O, k1, k2):
        return Distance(2, True)
    if cutoff < 3:
        return ExceedsCutoff(cutoff, True)
    d = _windowed_bfs(O, k1, k2, cutoff, translates)
    if d is None:
        return ExceedsCutoff(cutoff, is_farey_type(O))
    return Distance(d, d == 3 or is_farey_type(O))


# ---------------------------------------------------------------------------
# connecting paths


def _halving_step(O: Origami, k: Slope, target: Slope):
    """One step of the halving construction.

    In the chart where ``target`` is horizontal take a saddle connection
    ``s`` in direction ``k`` with the least number of horizontal crossings
    and the horizontal connection whose first crossing with ``s`` is
    closest to its left endpoint.  The segment up to that crossing lies in
    an embedded triangle with side ``s`` and apex at that endpoint.
    Returns the ideal triangle, its witness and the two new directions.
    """
    A = direction_normalizer(target)
    surf = apply_matrix(O, A)
    _, s = ordered_intersection(surf, A.act(k), INF, report=True)
    s = s.positive()
    best = None
    for h in horizontal_saddle_connections(surf):
        ts = intersection_points(h, [s])
        if ts:
            r = min(ts) * h.holonomy[0]
            if best is None or r < best[0]:
                best = (r, h)
    r, h = best
    a = h.start_anchor
    xs, ys = s.holonomy
    for j in range(1, ys):
        tau = Fraction(j, ys)
        x0 = r - tau * xs
        if x0.denominator != 1:
            continue
        S0 = (int(x0), -j)
        S1 = (int(x0) + xs, ys - j)
        t = embed_check(surf, (_prev_anchor(surf, a), S0), (a, S1))
        if t and any(side.holonomy == s.holonomy and side.start_anchor == s.start_anchor for side in t.sides):
            ideal = t.ideal.image(A.inverse())
            others = [side.slope for side in t.sides if side.holonomy != s.holonomy]
            return ideal, TriangleWitness(ideal, A, t), [A.inverse().act(x) for x in others]
    raise AssertionError(f"no triangle found over {s.holonomy}")


def _min_intersection(O: Origami, k, k2) -> int:
    return min(ordered_intersection(O, k, k2), ordered_intersection(O, k2, k))


def connecting_path(O: Origami, k1, k2) -> list:
    """Alternating path ``[k1, t1, s1, t2, ..., k2]`` of slopes and ideal
    triangles with at most ``log2(m + 1) + 1`` triangles, ``m`` the smaller
    ordered intersection number of the two directions."""
    k1, k2 = _check_rational(k1), _check_rational(k2)
    return [x for x, _ in _path(O, k1, k2)]


def _path(O: Origami, k1: Slope, k2: Slope) -> list:
    if k1 == k2:
        return [(k1, None)]
    c12 = ordered_intersection(O, k1, k2)
    c21 = ordered_intersection(O, k2, k1)
    if min(c12, c21) == 0:
        w = triangles_on_geodesic(O, k1, k2)
        if not w:
            raise AssertionError(f"no triangle on {k1}, {k2} with zero intersection")
        return [(k1, None), (w[0].ideal, w[0]), (k2, None)]
    if c21 < c12:
        return list(reversed(_path(O, k2, k1)))
    ideal, wit, cands = _halving_step(O, k1, k2)
    nxt = min(cands, key=lambda x: (0 if x == k2 else 1, _min_intersection(O, x, k2) if x != k2 else 0, x.key()))
    if nxt == k2:
        return [(k1, None), (ideal, wit), (k2, None)]
    return [(k1, None), (ideal, wit)] + _path(O, nxt, k2)


def path_witnesses(O: Origami, k1, k2) -> list[TriangleWitness]:
    """The embedded triangles certifying each step of :func:`connecting_path`."""
    k1, k2 = _check_rational(k1), _check_rational(k2)
    return [w for x, w in _path(O, k1, k2) if w is not None]


def path_length(path: list) -> int:
    """Number of triangles on an alternating path."""
    return (len(path) - 1) // 2


# ---------------------------------------------------------------------------
# quotient graph


@dataclass(frozen=True)
class QuotientGraph:
    v_vertices: tuple[Slope, ...]
    w_vertices: tuple[IdealTriangle, ...]
    edges: tuple[tuple[int, int], ...]
    stabilizer_orders: tuple[int, ...]
    distances: tuple[int, ...]
    w_distances: tuple[Fraction, ...]

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.v_vertices), len(self.w_vertices), len(self.edges)

    def summary(self) -> str:
        v, w, e = self.counts
        return f"V={v} W={w} E={e}"

    def edge_count_formula(self) -> Fraction:
        return sum(Fraction(3, s) for s in self.stabilizer_orders)

    def to_json(self) -> dict:
        return {
            "V": [{"slope": str(k), "distance": d} for k, d in zip(self.v_vertices, self.distances)],
            "W": [
                {"triangle": str(t), "stabilizer": s, "distance": str(d)}
                for t, s, d in zip(self.w_vertices, self.stabilizer_orders, self.w_distances)
            ],
            "E": [list(e) for e in self.edges],
            "summary": self.summary(),
        }

    def to_dot(self) -> str:
        return _dot("quotient", self.v_vertices, self.w_vertices, self.edges, indexed=True)


def quotient_graph(O: Origami, domain: CoarseFundamentalDomain | None = None) -> QuotientGraph:
    """Cusp classes, triangle classes and incidence classes.

    A triangle class contributes three incidences, folded into one when a
    rotation of order 3 in the Veech group permutes its vertices.
    """
    dom = algorithm_A(O) if domain is None else domain
    edges = []
    for i, tc in enumerate(dom.classes):
        if tc.stabilizer_order == 3:
            edges.append((tc.vertex_cusps[0], i))
        else:
            edges.extend((c, i) for c in tc.vertex_cusps)
    nv = len(dom.cusp_classes)
    adj: dict = {}
    for c, i in edges:
        adj.setdefault(("v", c), set()).add(("w", i))
        adj.setdefault(("w", i), set()).add(("v", c))
    dist = {("v", 0): Fraction(0)}
    queue = deque([("v", 0)])
    while queue:
        x = queue.popleft()
        for y in sorted(adj.get(x, ())):
            if y not in dist:
                dist[y] = dist[x] + Fraction(1, 2)
                queue.append(y)
    return QuotientGraph(
        tuple(cd.rep for cd in dom.cusp_classes),
        tuple(tc.rep for tc in dom.classes),
        tuple(sorted(edges, key=lambda e: (e[1], e[0]))),
        tuple(tc.stabilizer_order for tc in dom.classes),
        tuple(int(dist[("v", c)]) for c in range(nv)),
        tuple(dist[("w", i)] for i in range(len(dom.classes))),
    )


def edge_action_free(O: Origami, domain: CoarseFundamentalDomain | None = None) -> bool:
    """No certified non-trivial stabilizer element of a triangle class
    representative fixes one of its vertices (hence an incidence)."""
    dom = algorithm_A(O) if domain is None else domain
    for tc in dom.classes:
        if tc.rotation is None:
            continue
        g = tc.rotation
        for h in (g, g * g):
            if h.is_identity():
                return False
            if any(h.act(k) == k for k in tc.rep.vertices):
                return False
    return True


# ---------------------------------------------------------------------------
# export


def _dot(name, slopes, tris, edges, indexed=False) -> str:
    ids = {}
    lines = [f"graph {name} {{"]
    for i, k in enumerate(slopes):
        ids[("v", i if indexed else k)] = f"v{i}"
        lines.append(f'  v{i} [label="{k}", shape=circle];')
    for i, t in enumerate(tris):
        ids[("w", i if indexed else t)] = f"w{i}"
        lines.append(f'  w{i} [label="{t}", shape=box];')
    for a, b in edges:
        lines.append(f"  {ids[('v', a)]} -- {ids[('w', b)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_text(obj) -> str:
    return json.dumps(obj.to_json(), indent=2, sort_keys=True) + "\n"
