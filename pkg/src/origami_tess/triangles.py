"""Embedded triangles with vertices at marked points.

A candidate triangle is given by two rays at the same marked point.  It is
developed onto the plane cell by cell: every unit cell meeting the open
triangle receives a square of the origami, propagated across shared edges
with ``h`` and ``v``.  The triangle embeds exactly when this labelling is
consistent (no cone point inside), no marked point lies in the interior or
on an open side, and the closing side is a saddle connection.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd

from .core import (
    INF,
    GroupElement,
    Origami,
    Slope,
    apply_matrix,
    direction_normalizer,
)
from .flatgeom import (
    _START_OFFSET,
    SaddleConnection,
    _check_rational,
    anchor_at_corner,
    horizontal_saddle_connections,
    oriented_saddle_connections_up_to,
    quadrant,
    start_cell,
    trace_saddle_connection,
)

__all__ = [
    "Reason",
    "Rejection",
    "EmbeddedTriangle",
    "IdealTriangle",
    "NotHorizontal",
    "embed_check",
    "canonical_triangle_over",
    "triangles_with_vertex",
    "triangles_up_to",
    "TriangleWitness",
    "triangles_on_geodesic",
    "adjacent",
]


class NotHorizontal(ValueError):
    pass


class Reason(str, enum.Enum):
    AREA_EXCEEDED = "AreaExceeded"
    CONE_INSIDE = "ConeInside"
    MARKED_POINT_INSIDE = "MarkedPointInside"
    MARKED_POINT_ON_SIDE = "MarkedPointOnSide"
    THIRD_SIDE_BLOCKED = "ThirdSideBlocked"
    SIDES_NOT_ADJACENT = "SidesNotAdjacent"


@dataclass(frozen=True)
class Rejection:
    reason: Reason
    detail: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True, order=True)
class IdealTriangle:
    """Ideal hyperbolic triangle given by its three boundary slopes."""

    vertices: tuple[Slope, Slope, Slope]

    def __init__(self, slopes):
        vs = tuple(sorted(set(slopes), key=Slope.key))
        if len(vs) != 3:
            raise ValueError("an ideal triangle needs three distinct slopes")
        object.__setattr__(self, "vertices", vs)

    def __str__(self) -> str:
        return "{" + ",".join(str(k) for k in self.vertices) + "}"

    def __contains__(self, k) -> bool:
        return k in self.vertices

    def sort_key(self):
        return tuple(k.key() for k in self.vertices)

    def image(self, g: GroupElement) -> "IdealTriangle":
        return IdealTriangle(g.act(k) for k in self.vertices)

    def sides(self) -> tuple[frozenset, ...]:
        a, b, c = self.vertices
        return (frozenset((a, b)), frozenset((b, c)), frozenset((a, c)))

    def others(self, k: Slope) -> tuple[Slope, Slope]:
        rest = tuple(x for x in self.vertices if x != k)
        assert len(rest) == 2
        return rest


@dataclass(frozen=True)
class EmbeddedTriangle:
    """An accepted triangle.

    ``sides`` are oriented saddle connections forming the counter-clockwise
    boundary loop, so their holonomies sum to zero.  ``development`` maps
    cells ``(i, j)`` meeting the open triangle (with the first vertex at the
    origin) to squares.
    """

    sides: tuple[SaddleConnection, SaddleConnection, SaddleConnection]
    development: dict = field(repr=False, compare=False, hash=False)

    @property
    def holonomies(self) -> tuple[tuple[int, int], ...]:
        return tuple(s.holonomy for s in self.sides)

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.holonomies[0], self.holonomies[1]
        return a * d - b * c

    @property
    def key(self) -> frozenset:
        """The oriented boundary sides.  The triangle lies to the left of
        each, so this identifies its image; the unoriented sides alone do
        not (the two halves of the unit torus share all three)."""
        return frozenset((s.holonomy, s.start_anchor) for s in self.sides)

    @property
    def ideal(self) -> IdealTriangle:
        return IdealTriangle(s.slope for s in self.sides)

    def holonomy_loop(self) -> tuple:
        """Cyclic boundary holonomies rotated to start at the least one."""
        hs = list(self.holonomies)
        i = hs.index(min(hs))
        return tuple(hs[i:] + hs[:i])


# ---------------------------------------------------------------------------
# angles at a cone point


def _angle_less(u, w) -> bool:
    """``arg(u) < arg(w)`` with arguments in ``[0, 2 pi)``."""
    qu, qw = quadrant(*u), quadrant(*w)
    if qu != qw:
        return qu < qw
    return u[0] * w[1] - u[1] * w[0] > 0


def _cone_index(O: Origami, anchor: int) -> tuple[int, int]:
    """``(j, m)``: the anchor is ``c^j`` of the least anchor of its vertex,
    ``m`` the number of anchors at the vertex."""
    c = O.commutator
    base = O.vertex_classes[O.vertex_of[anchor]].squares[0]
    j, s = 0, base
    while s != anchor:
        s = c[s]
        j += 1
    m = 0
    s = base
    while True:
        s = c[s]
        m += 1
        if s == base:
            break
    return j, m


def _ccw_within_pi(O: Origami, r1, r2) -> bool:
    """Whether ray ``r2`` follows ray ``r1`` counter-clockwise by less than pi."""
    (a1, v1), (a2, v2) = r1, r2
    if v1[0] * v2[1] - v1[1] * v2[0] <= 0:
        return False
    j1, m = _cone_index(O, a1)
    j2, _ = _cone_index(O, a2)
    wrap = 1 if _angle_less(v2, v1) else 0
    return (j2 - j1 - wrap) % m == 0


# ---------------------------------------------------------------------------
# development


def _slice_x(P, X):
    """Closed vertical slice ``[ylo, yhi]`` of triangle ``P`` at ``x = X``."""
    ys = []
    for k in range(3):
        (x0, y0), (x1, y1) = P[k], P[(k + 1) % 3]
        if x0 == x1:
            if x0 == X:
                ys += [Fraction(y0), Fraction(y1)]
            continue
        if min(x0, x1) <= X <= max(x0, x1):
            ys.append(y0 + Fraction(X - x0, x1 - x0) * (y1 - y0))
    return min(ys), max(ys)


def _slice_y(P, Y):
    return _slice_x([(y, x) for x, y in P], Y)


def _slices(P):
    """Vertical and horizontal slices of ``P`` at every integer coordinate
    of its bounding box."""
    xs = [p[0] for p in P]
    ys = [p[1] for p in P]
    sx = {X: _slice_x(P, X) for X in range(min(xs), max(xs) + 1)}
    sy = {Y: _slice_y(P, Y) for Y in range(min(ys), max(ys) + 1)}
    return sx, sy


def _cells(P, sy=None):
    """Cells ``(i, j)`` meeting the open triangle with integer vertices ``P``."""
    if sy is None:
        sy = _slices(P)[1]
    ys = [p[1] for p in P]
    xs_all = [p[0] for p in P]
    ymin, ymax = min(ys), max(ys)
    xmin, xmax = min(xs_all), max(xs_all)
    out = []
    for j in range(ymin, ymax):
        xs = [Fraction(p[0]) for p in P if j <= p[1] <= j + 1]
        for Y in (j, j + 1):
            if ymin <= Y <= ymax:
                lo, hi = sy[Y]
                xs += [lo, hi]
        lo, hi = min(xs), max(xs)
        for i in range(max(xmin, floor(lo)), min(xmax, -floor(-hi))):
            if i < hi and i + 1 > lo:
                out.append((i, j))
    return out


def _open_meets_vertical(sx, X, j, xmin, xmax) -> bool:
    if not xmin < X < xmax:
        return False
    lo, hi = sx[X]
    return max(lo, j) < min(hi, j + 1)


def _open_meets_horizontal(sy, Y, i, ymin, ymax) -> bool:
    if not ymin < Y < ymax:
        return False
    lo, hi = sy[Y]
    return max(lo, i) < min(hi, i + 1)


def _interior_lattice_points(P, sx=None):
    if sx is None:
        sx = _slices(P)[0]
    xs = [p[0] for p in P]
    out = []
    for X in range(min(xs) + 1, max(xs)):
        lo, hi = sx[X]
        Y = floor(lo) + 1
        while Y < hi:
            out.append((X, Y))
            Y += 1
    return out


def _side_points(A, B):
    dx, dy = B[0] - A[0], B[1] - A[1]
    g = gcd(dx, dy)
    return [(A[0] + t * dx // g, A[1] + t * dy // g) for t in range(1, g)]


def _point_marked(O: Origami, dev, X, Y):
    """Markedness of lattice point ``(X, Y)`` read off an adjacent cell."""
    for (di, dj), corner in (((0, 0), 0), ((-1, 0), 1), ((-1, -1), 2), ((0, -1), 3)):
        c = dev.get((X + di, Y + dj))
        if c is not None:
            return O.corner_marked(c, corner), c, corner
    raise AssertionError("lattice point not adjacent to the development")


def _interior_direction(v1, v2):
    for a, b in ((1, 1), (2, 1), (1, 2)):
        w = (a * v1[0] + b * v2[0], a * v1[1] + b * v2[1])
        if w[0] and w[1]:
            return w
    raise AssertionError("no off-axis interior direction")


def _as_ray(s):
    if isinstance(s, SaddleConnection):
        return (s.start_anchor, s.holonomy)
    a, v = s
    return (a, tuple(v))


def embed_check(O: Origami, s1, s2):
    """Decide whether two rays at a marked point span an embedded triangle.

    ``s1`` and ``s2`` are saddle connections (or rays ``(anchor, vector)``)
    leaving the same marked point.  Returns an :class:`EmbeddedTriangle`
    or a falsy :class:`Rejection`.
    """
    r1, r2 = _as_ray(s1), _as_ray(s2)
    v1, v2 = r1[1], r2[1]
    det = v1[0] * v2[1] - v1[1] * v2[0]
    if det == 0:
        raise ValueError("sides must have distinct slopes")
    if O.vertex_of[r1[0]] != O.vertex_of[r2[0]]:
        raise ValueError("sides must start at the same marked point")
    if abs(det) > 2 * O.n:
        return Rejection(Reason.AREA_EXCEEDED, f"|det| = {abs(det)} > {2 * O.n}")
    if det < 0:
        r1, r2 = r2, r1
        v1, v2 = v2, v1
    if not _ccw_within_pi(O, r1, r2):
        return Rejection(Reason.SIDES_NOT_ADJACENT, "rays lie on different sheets")
    a1 = r1[0]
    P = [(0, 0), tuple(v1), tuple(v2)]
    w = _interior_direction(v1, v2)
    aw = a1 if not _angle_less(w, v1) else O.commutator[a1]
    qw = quadrant(*w)
    start = _START_OFFSET[qw]
    sx, sy = _slices(P)
    cells = set(_cells(P, sy))
    assert start in cells
    dev = {start: start_cell(O, aw, qw)}
    xs = [p[0] for p in P]
    ys = [p[1] for p in P]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    queue = [start]
    h, hi, v, vi = O.h, O.hi, O.v, O.vi
    while queue:
        i, j = queue.pop()
        c = dev[(i, j)]
        nbrs = []
        if _open_meets_vertical(sx, i + 1, j, xmin, xmax):
            nbrs.append(((i + 1, j), h[c]))
        if _open_meets_vertical(sx, i, j, xmin, xmax):
            nbrs.append(((i - 1, j), hi[c]))
        if _open_meets_horizontal(sy, j + 1, i, ymin, ymax):
            nbrs.append(((i, j + 1), v[c]))
        if _open_meets_horizontal(sy, j, i, ymin, ymax):
            nbrs.append(((i, j - 1), vi[c]))
        for cell, sq in nbrs:
            old = dev.get(cell)
            if old is None:
                dev[cell] = sq
                queue.append(cell)
            elif old != sq:
                return Rejection(Reason.CONE_INSIDE, f"inconsistent square at cell {cell}")
    assert len(dev) == len(cells), "development did not reach every cell"
    for X, Y in _interior_lattice_points(P, sx):
        if _point_marked(O, dev, X, Y)[0]:
            return Rejection(Reason.MARKED_POINT_INSIDE, f"marked point at {(X, Y)}")
    for A, B in ((P[0], P[1]), (P[2], P[0])):
        for X, Y in _side_points(A, B):
            if _point_marked(O, dev, X, Y)[0]:
                return Rejection(Reason.MARKED_POINT_ON_SIDE, f"marked point at {(X, Y)}")
    for X, Y in _side_points(P[1], P[2]):
        if _point_marked(O, dev, X, Y)[0]:
            return Rejection(Reason.THIRD_SIDE_BLOCKED, f"marked point at {(X, Y)}")
    # the three sides as saddle connections, counter-clockwise
    d = (v2[0] - v1[0], v2[1] - v1[1])
    qd = quadrant(*d)
    off = _START_OFFSET[qd]
    cell = (v1[0] + off[0], v1[1] + off[1])
    corner = {(0, 0): 0, (-1, 0): 1, (-1, -1): 2, (0, -1): 3}[off]
    a_mid = anchor_at_corner(O, dev[cell], corner)
    s_a = trace_saddle_connection(O, a1, v1, gcd(*v1))
    s_b = trace_saddle_connection(O, a_mid, d, gcd(*d))
    s_c = trace_saddle_connection(O, r2[0], v2, gcd(*v2))
    if s_b is None or s_b.holonomy != d:
        return Rejection(Reason.THIRD_SIDE_BLOCKED, "closing side is not a saddle connection")
    if s_a is None or s_a.holonomy != tuple(v1) or s_c is None or s_c.holonomy != tuple(v2):
        return Rejection(Reason.MARKED_POINT_ON_SIDE, "a given side is not a saddle connection")
    if O.vertex_of[s_b.end_anchor] != O.vertex_of[s_c.end_anchor]:
        return Rejection(Reason.THIRD_SIDE_BLOCKED, "closing side ends elsewhere")
    return EmbeddedTriangle((s_a, s_b, s_c.reversed()), dev)


# ---------------------------------------------------------------------------
# constructions and enumerations


def canonical_triangle_over(O: Origami, s0: SaddleConnection) -> EmbeddedTriangle:
    """Triangle on the horizontal saddle connection ``s0`` whose apex is the
    lowest marked point above ``s0`` with offset ``x`` in ``(0, len(s0)]``
    (least ``x`` on ties).

    Every lattice point strictly below the apex and over the base is
    unmarked, hence regular, so the triangle develops and embeds.
    """
    if s0.holonomy[1] != 0:
        raise NotHorizontal("the base must be horizontal")
    s0 = s0.positive()
    ell = s0.holonomy[0]
    column = []
    c = s0.start_anchor
    for _ in range(ell):
        column.append(c)
        c = O.h[c]
    for y in range(1, O.n + 1):
        column = [O.v[c] for c in column]
        marks = [O.mark[column[x]] for x in range(1, ell)]
        marks.append(O.corner_marked(column[ell - 1], 1))
        if any(marks):
            x = marks.index(True) + 1
            apex = trace_saddle_connection(O, s0.start_anchor, (x, y), gcd(x, y))
            t = embed_check(O, s0, apex)
            assert t, t
            return t
    raise AssertionError("no marked point above the base")


@dataclass(frozen=True)
class TriangleWitness:
    """An ideal triangle in the original chart with an embedded triangle of
    ``chart_surface = apply_matrix(O, chart)`` certifying it."""

    ideal: IdealTriangle
    chart: GroupElement
    embedded: EmbeddedTriangle = field(compare=False)


def triangles_with_horizontal_side(O: Origami, window, len2_bound=None, delta=None):
    """Embedded triangles of ``O`` with a horizontal side whose other two
    slopes ``k1 < k2`` satisfy ``k1 < hi`` and ``k2 > lo`` for the open
    window ``(lo, hi)``.

    Complete: the apex height times the base length is at most ``2 n``.
    With ``len2_bound`` a candidate is kept only if one of its non
    horizontal sides has ``x^2/delta^2 + delta^2 y^2 <= len2_bound``.
    """
    lo, hi = Fraction(window[0]), Fraction(window[1])
    n = O.n
    found = {}
    for s0 in horizontal_saddle_connections(O):
        ell = s0.holonomy[0]
        a = s0.start_anchor
        a_prev = _prev_anchor(O, a)
        for Y in range(1, (2 * n) // ell + 1):
            # apex above: x in (lo Y, ell + hi Y)
            xa, xb = lo * Y, ell + hi * Y
            for x in range(floor(xa) + 1, -floor(-xb)):
                _try(O, found, (a, (x, Y)), s0, (x - ell, Y), len2_bound, delta)
            # apex below: x in (-hi Y, ell - lo Y)
            xa, xb = -hi * Y, ell - lo * Y
            for x in range(floor(xa) + 1, -floor(-xb)):
                _try(O, found, (a_prev, (x, -Y)), s0, (x - ell, -Y), len2_bound, delta)
    return sorted(found.values(), key=lambda t: t.ideal.sort_key())


def _prev_anchor(O: Origami, a: int) -> int:
    c = O.commutator
    b = a
    while c[b] != a:
        b = c[b]
    return b


def _norm_len2(vec, delta):
    x, y = vec
    return Fraction(x * x, delta * delta) + delta * delta * y * y


def _try(O, found, ray, s0, other, len2_bound, delta):
    if len2_bound is not None:
        d = delta or 1
        if min(_norm_len2(ray[1], d), _norm_len2(other, d)) > len2_bound:
            return
    sc = trace_saddle_connection(O, ray[0], ray[1], gcd(*ray[1]))
    if sc is None or sc.holonomy != ray[1]:
        return
    t = embed_check(O, s0, sc)
    if t:
        found.setdefault(t.key, t)


def triangles_with_vertex(O: Origami, k, window, len2_bound=None, chart=None):
    """Ideal triangles with vertex ``k`` meeting ``window``.

    ``window = (lo, hi)`` is an open interval of slopes in the chart
    ``chart`` (default :func:`direction_normalizer`), which must send ``k``
    to the horizontal.  Returns one :class:`TriangleWitness` per ideal
    triangle, ordered by the slopes in that chart.
    """
    k = _check_rational(k)
    A = direction_normalizer(k) if chart is None else chart
    if A.act(k) != INF:
        raise ValueError(f"chart does not send {k} to inf")
    O2 = apply_matrix(O, A)
    delta = min(s.holonomy[0] for s in horizontal_saddle_connections(O2))
    Ainv = A.inverse()
    out = {}
    for t in triangles_with_horizontal_side(O2, window, len2_bound, delta):
        ideal = t.ideal.image(Ainv)
        out.setdefault(ideal, TriangleWitness(ideal, A, t))
    return list(out.values())


def triangles_up_to(O: Origami, L2) -> list[EmbeddedTriangle]:
    """Every embedded triangle whose three sides have squared length at
    most ``L2``, each listed once."""
    L2 = Fraction(L2)
    scs = oriented_saddle_connections_up_to(O, L2)
    by_vertex: dict[int, list] = {}
    for s in scs:
        by_vertex.setdefault(s.start_vertex, []).append(s)
    bound = 2 * O.n
    found = {}
    for group in by_vertex.values():
        for s1 in group:
            x1, y1 = s1.holonomy
            for s2 in group:
                x2, y2 = s2.holonomy
                det = x1 * y2 - y1 * x2
                if det <= 0 or det > bound:
                    continue
                if (x2 - x1) ** 2 + (y2 - y1) ** 2 > L2:
                    continue
                t = embed_check(O, s1, s2)
                if t:
                    found.setdefault(t.key, t)
    return sorted(found.values(), key=lambda t: (t.holonomy_loop(), sorted(t.key)))


def triangles_on_geodesic(O: Origami, k1, k2) -> list[TriangleWitness]:
    """Ideal triangles having both ``k1`` and ``k2`` as vertices.

    In the chart where ``k1`` is horizontal the side in direction ``k2``
    is ``t (p, q)`` with ``t q`` at most the apex height bound, so the
    candidates are finite.
    """
    k1, k2 = _check_rational(k1), _check_rational(k2)
    if k1 == k2:
        raise ValueError("directions must differ")
    A = direction_normalizer(k1)
    O2 = apply_matrix(O, A)
    p, q = A.act(k2)
    found = {}
    for s0 in horizontal_saddle_connections(O2):
        ell = s0.holonomy[0]
        a = s0.start_anchor
        b = _prev_anchor(O2, a)
        t = 1
        while t * q <= (2 * O.n) // ell:
            Y = t * q
            for ray, other in (
                ((a, (t * p, Y)), (t * p - ell, Y)),
                ((a, (ell + t * p, Y)), (t * p, Y)),
                ((b, (-t * p, -Y)), (-t * p - ell, -Y)),
                ((b, (ell - t * p, -Y)), (-t * p, -Y)),
            ):
                _try(O2, found, ray, s0, other, None, None)
            t += 1
    Ainv = A.inverse()
    out = {}
    for t in sorted(found.values(), key=lambda t: t.ideal.sort_key()):
        ideal = t.ideal.image(Ainv)
        if k1 in ideal and k2 in ideal:
            out.setdefault(ideal, TriangleWitness(ideal, A, t))
    return list(out.values())


def adjacent(O: Origami, k1, k2) -> bool:
    """Whether some embedded triangle has sides in both directions."""
    return bool(triangles_on_geodesic(O, k1, k2))
