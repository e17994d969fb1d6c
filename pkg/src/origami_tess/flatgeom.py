"""Exact straight-line geometry on origamis.

Directions at a marked point are described by *rays* ``(anchor, vector)``.
The anchor is a square whose bottom-left corner is the point; it fixes a
sheet of the cone: the ray leaves at angle ``arg(vector)`` in ``[0, 2 pi)``
measured counter-clockwise from the bottom edge of the anchor.  Going once
around a cone point of angle ``2 pi m`` visits ``m`` anchors, linked by the
commutator of the origami.

Segments are followed on the planar development: a segment starting at a
lattice point visits unit cells ``(i, j)`` of the plane, each labelled with
the square of the origami it lies over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable

from .core import (
    DomainError,
    GroupElement,
    IrrationalDirection,
    Origami,
    Slope,
    apply_matrix,
    direction_normalizer,
    matrix_to_word,
    parse_slope,
    rotate,
    shear,
    slope,
    word_product,
)

__all__ = [
    "SaddleConnection",
    "HitReport",
    "Cylinder",
    "DirectionDecomposition",
    "quadrant",
    "start_cell",
    "anchor_at_corner",
    "trace_ray",
    "trace_saddle_connection",
    "saddle_connections_up_to",
    "oriented_saddle_connections_up_to",
    "saddle_connections_in_direction",
    "horizontal_saddle_connections",
    "cylinder_decomposition",
    "ordered_intersection",
    "transport_ray",
    "transport_point",
]


# ---------------------------------------------------------------------------
# local combinatorics at a vertex


def quadrant(x: int, y: int) -> int:
    """Index of the half-open quarter ``[q pi/2, (q+1) pi/2)`` holding ``(x, y)``."""
    if x > 0 and y >= 0:
        return 0
    if x <= 0 and y > 0:
        return 1
    if x < 0 and y <= 0:
        return 2
    return 3


# cell offsets, relative to the vertex, of the square a ray enters
_START_OFFSET = ((0, 0), (-1, 0), (-1, -1), (0, -1))
# corner of the last cell reached by a ray of the given quadrant; axis rays
# run along an edge of the cell and end at a different corner
_END_CORNER_DIAG = (2, 3, 0, 1)
_END_CORNER_AXIS = (1, 2, 3, 0)


def start_cell(O: Origami, anchor: int, quad: int) -> int:
    """Square entered by a ray leaving the anchor's vertex in ``quad``."""
    if quad == 0:
        return anchor
    nw = O.hi[anchor]
    if quad == 1:
        return nw
    sw = O.vi[nw]
    if quad == 2:
        return sw
    return O.h[sw]


def anchor_at_corner(O: Origami, c: int, corner: int) -> int:
    """Anchor of the sheet at the given corner of ``c`` that contains ``c``.

    ``corner`` is 0..3 for bottom-left, bottom-right, top-right, top-left.
    The returned anchor ``a`` satisfies ``start_cell(a, q) == c`` for the
    quadrant ``q`` pointing from the corner into ``c``.
    """
    if corner == 0:
        return c
    if corner == 1:
        return O.h[c]
    if corner == 2:
        return O.h[O.v[c]]
    return O.h[O.v[O.hi[c]]]


def _step_pattern(a: int, b: int) -> tuple[int, ...]:
    """Order of vertical-line (0) and horizontal-line (1) crossings of a
    primitive segment with ``|dx| = a`` and ``|dy| = b``."""
    moves = []
    k = l = 1
    while k < a or l < b:
        if l >= b or (k < a and k * b < l * a):
            moves.append(0)
            k += 1
        else:
            moves.append(1)
            l += 1
    return tuple(moves)


# ---------------------------------------------------------------------------
# saddle connections


@dataclass(frozen=True)
class SaddleConnection:
    """An oriented saddle connection.

    ``cells`` lists ``(square, i, j)`` for every unit cell of the plane the
    segment from ``(0, 0)`` to ``holonomy`` passes through (axis-parallel
    segments list the cell on their left).  ``start_anchor`` and
    ``end_anchor`` are the rays of the segment and of its reverse.
    """

    holonomy: tuple[int, int]
    start_anchor: int
    end_anchor: int
    start_vertex: int
    end_vertex: int
    cells: tuple[tuple[int, int, int], ...] = field(repr=False, compare=False)

    @property
    def slope(self) -> Slope:
        return slope(*self.holonomy)

    @property
    def len2(self) -> int:
        x, y = self.holonomy
        return x * x + y * y

    @property
    def is_positive(self) -> bool:
        return quadrant(*self.holonomy) in (0, 1)

    def reversed(self) -> "SaddleConnection":
        x, y = self.holonomy
        return SaddleConnection(
            (-x, -y),
            self.end_anchor,
            self.start_anchor,
            self.end_vertex,
            self.start_vertex,
            tuple((c, i - x, j - y) for c, i, j in reversed(self.cells)),
        )

    def positive(self) -> "SaddleConnection":
        """The orientation with ``y > 0`` or ``y == 0, x > 0``."""
        return self if self.is_positive else self.reversed()

    @property
    def key(self) -> tuple[int, int, int]:
        """Identifier of the unoriented saddle connection."""
        p = self.positive()
        return (p.holonomy[0], p.holonomy[1], p.start_anchor)

    @property
    def ray(self) -> tuple[int, tuple[int, int]]:
        return (self.start_anchor, self.holonomy)

    def sort_key(self):
        return (self.len2, self.slope.key(), self.holonomy, self.start_anchor)

    def pieces(self):
        """``(square, P, Q)`` with ``P, Q`` the local endpoints of the part of
        the segment inside each visited cell."""
        X, Y = self.holonomy
        out = []
        for c, i, j in self.cells:
            t0, t1 = _clip(X, Y, i, j)
            out.append(
                (
                    c,
                    (t0 * X - i, t0 * Y - j),
                    (t1 * X - i, t1 * Y - j),
                    (t0, t1, i, j),
                )
            )
        return out

    def crossings(self):
        """Edge crossings ``(square, entry_edge, coordinate)``.

        ``entry_edge`` is one of ``left/bottom/right/top`` and ``coordinate``
        is the exact position along that edge (``None`` when the segment
        enters through a corner).
        """
        out = []
        for c, P, Q, _ in self.pieces():
            x, y = P
            if x == 0 and 0 < y < 1:
                out.append((c, "left", y))
            elif x == 1 and 0 < y < 1:
                out.append((c, "right", y))
            elif y == 0 and 0 < x < 1:
                out.append((c, "bottom", x))
            elif y == 1 and 0 < x < 1:
                out.append((c, "top", x))
            else:
                out.append((c, "corner", None))
        return out


def _clip(X, Y, i, j) -> tuple[Fraction, Fraction]:
    """Parameter interval of ``t (X, Y)``, ``0 <= t <= 1``, inside the closed
    cell ``[i, i+1] x [j, j+1]``."""
    lo, hi = Fraction(0), Fraction(1)
    for d, a in ((X, i), (Y, j)):
        if d == 0:
            continue
        u, w = Fraction(a, d), Fraction(a + 1, d)
        if u > w:
            u, w = w, u
        lo, hi = max(lo, u), min(hi, w)
    return lo, hi


@dataclass(frozen=True)
class HitReport:
    hit: bool
    len2: int | None
    saddle_connection: SaddleConnection | None

    def __bool__(self) -> bool:
        return self.hit


def _primitive(x: int, y: int) -> tuple[int, int, int]:
    g = gcd(x, y)
    return x // g, y // g, g


def trace_saddle_connection(O: Origami, anchor: int, vec, max_steps: int | None = None):
    """Follow the ray ``(anchor, vec)`` until it reaches a marked point.

    ``vec`` only matters through its direction.  Returns the saddle
    connection, or ``None`` when no marked point is met within
    ``max_steps`` lattice steps (default ``n``, enough for every
    direction of an origami).
    """
    p, q, _ = _primitive(*vec)
    if max_steps is None:
        max_steps = O.n
    quad = quadrant(p, q)
    moves = _step_pattern(abs(p), abs(q))
    corner = _END_CORNER_AXIS[quad] if (p == 0 or q == 0) else _END_CORNER_DIAG[quad]
    sx = (p > 0) - (p < 0)
    sy = (q > 0) - (q < 0)
    hs = O.h if p > 0 else O.hi
    vs = O.v if q > 0 else O.vi
    di, dj = _START_OFFSET[quad]
    c = start_cell(O, anchor, quad)
    i, j = di, dj
    cells = []
    mark = O.mark
    for m in range(1, max_steps + 1):
        cells.append((c, i, j))
        for mv in moves:
            if mv == 0:
                c = hs[c]
                i += sx
            else:
                c = vs[c]
                j += sy
            cells.append((c, i, j))
        a = anchor_at_corner(O, c, corner)
        if mark[a]:
            vid = O.vertex_of
            if q == 0 and p < 0:
                # the reverse ray points along angle 0, the first edge of the
                # sheet whose quadrant-0 cell lies above the ray
                a = O.v[c]
            return SaddleConnection((m * p, m * q), anchor, a, vid[anchor], vid[a], tuple(cells))
        c = start_cell(O, a, quad)
        i, j = m * p + di, m * q + dj
    return None


def trace_ray(O: Origami, start_corner: int, direction, max_len2) -> HitReport:
    """Trace from the bottom-left corner of square ``start_corner`` (0-based)
    in the primitive integer ``direction``; report the first marked point
    within squared length ``max_len2``."""
    p, q = direction
    if gcd(p, q) != 1:
        raise ValueError("direction must be primitive")
    step2 = p * p + q * q
    m = isqrt(int(Fraction(max_len2) // step2)) if max_len2 >= step2 else 0
    while (m + 1) ** 2 * step2 <= max_len2:
        m += 1
    sc = trace_saddle_connection(O, start_corner, (p, q), m) if m else None
    if sc is None:
        return HitReport(False, None, None)
    return HitReport(True, sc.len2, sc)


def _marked_anchors(O: Origami) -> list[int]:
    return [s for s in range(O.n) if O.mark[s]]


def primitive_vectors(L2, positive: bool = True) -> list[tuple[int, int]]:
    """Primitive integer vectors with squared length at most ``L2``."""
    L2 = Fraction(L2)
    r = isqrt(int(L2))
    out = []
    for y in range(-r, r + 1):
        for x in range(-r, r + 1):
            if (x or y) and gcd(x, y) == 1 and x * x + y * y <= L2:
                if positive and not (y > 0 or (y == 0 and x > 0)):
                    continue
                out.append((x, y))
    return out


def saddle_connections_up_to(O: Origami, L2) -> tuple[SaddleConnection, ...]:
    """All saddle connections with squared length at most ``L2``.

    Each unoriented saddle connection appears once, in its positive
    orientation; ``sc.reversed()`` gives the other one.  Sorted by length,
    then slope, then anchor.
    """
    L2 = Fraction(L2)
    out = []
    anchors = _marked_anchors(O)
    for p, q in primitive_vectors(L2):
        step2 = p * p + q * q
        m = 1
        while (m + 1) ** 2 * step2 <= L2:
            m += 1
        for a in anchors:
            sc = trace_saddle_connection(O, a, (p, q), m)
            if sc is not None:
                out.append(sc)
    out.sort(key=SaddleConnection.sort_key)
    return tuple(out)


def oriented_saddle_connections_up_to(O: Origami, L2) -> tuple[SaddleConnection, ...]:
    """Both orientations of every saddle connection of squared length <= L2."""
    base = saddle_connections_up_to(O, L2)
    out = list(base) + [s.reversed() for s in base]
    out.sort(key=SaddleConnection.sort_key)
    return tuple(out)


def _check_rational(k) -> Slope:
    if isinstance(k, Slope):
        return k
    if isinstance(k, float):
        raise IrrationalDirection("directions must be rational (got a float)")
    try:
        return parse_slope(k)
    except ValueError as exc:
        raise IrrationalDirection(str(exc)) from exc


def saddle_connections_in_direction(O: Origami, k) -> tuple[SaddleConnection, ...]:
    """Every saddle connection parallel to ``k`` (positive orientation)."""
    k = _check_rational(k)
    out = []
    for a in _marked_anchors(O):
        sc = trace_saddle_connection(O, a, (k.x, k.y), O.n)
        if sc is None:
            raise DomainError(f"direction {k} is not periodic")
        out.append(sc)
    out.sort(key=SaddleConnection.sort_key)
    return tuple(out)


def horizontal_saddle_connections(O: Origami) -> tuple[SaddleConnection, ...]:
    from .core import INF

    return saddle_connections_in_direction(O, INF)


# ---------------------------------------------------------------------------
# transport along the affine action


def _rotate_ray(O: Origami, a: int, x: int, y: int):
    if quadrant(x, y) == 3:
        a = O.vi[O.commutator[a]]
    else:
        a = O.vi[a]
    return a, (-y, x)


def transport_ray(O: Origami, g: GroupElement, anchor: int, vec):
    """Image of the ray ``(anchor, vec)`` in ``apply_matrix(O, g)``.

    Returns ``(anchor', vec')`` with ``vec' = g vec``.
    """
    word = matrix_to_word(g)
    x, y = vec
    a = anchor
    for letter, e in reversed(word):
        if letter == "T":
            x, y = x + e * y, y
            O = shear(O, e)
        else:
            for _ in range(e % 4):
                a, (x, y) = _rotate_ray(O, a, x, y)
                O = rotate(O)
    if not word_product(word).exactly_equal(g):
        for _ in range(2):
            a, (x, y) = _rotate_ray(O, a, x, y)
            O = rotate(O)
    return a, (x, y)


def transport_point(O: Origami, g: GroupElement, sq: int, x, y):
    """Image in ``apply_matrix(O, g)`` of the point with local coordinates
    ``(x, y)`` in square ``sq``."""
    from .core import perm_power

    word = matrix_to_word(g)
    x, y = Fraction(x), Fraction(y)

    def rot(sq, x, y):
        return sq, 1 - y, x

    for letter, e in reversed(word):
        if letter == "T":
            x = x + e * y
            f = x.numerator // x.denominator
            if f:
                sq = perm_power(O.h, f)[sq]
                x -= f
            O = shear(O, e)
        else:
            for _ in range(e % 4):
                sq, x, y = rot(sq, x, y)
                O = rotate(O)
    if not word_product(word).exactly_equal(g):
        for _ in range(2):
            sq, x, y = rot(sq, x, y)
    return sq, x, y


# ---------------------------------------------------------------------------
# cylinders


@dataclass(frozen=True)
class Cylinder:
    """A maximal cylinder in a rational direction.

    ``circumference`` and ``height`` are measured in units of the primitive
    vector ``(p, q)`` of the direction and of its inverse length
    respectively, so both are exact; for the horizontal and vertical
    directions they are ordinary lengths.  ``holonomy`` is the exact
    period of the core curve and ``area = circumference * height``.
    """

    direction: Slope
    circumference: Fraction
    height: Fraction
    holonomy: tuple[int, int]
    boundary_bottom: tuple[tuple[int, int, int], ...]
    boundary_top: tuple[tuple[int, int, int], ...]
    core_squares: frozenset[int]

    @property
    def area(self) -> Fraction:
        return self.circumference * self.height

    @property
    def circumference_len2(self) -> int:
        x, y = self.holonomy
        return x * x + y * y


@dataclass(frozen=True)
class DirectionDecomposition:
    direction: Slope
    cylinders: tuple[Cylinder, ...]
    saddle_connections: tuple[SaddleConnection, ...]
    normalizer: GroupElement

    @property
    def total_area(self) -> Fraction:
        return sum((c.area for c in self.cylinders), Fraction(0))


def horizontal_cylinders(O: Origami) -> list[dict]:
    """Horizontal cylinders read from the rows of ``O``.

    Each entry has ``rows`` (bottom to top, each a list of squares starting
    at a square with a marked bottom-left corner when possible),
    ``circumference`` and ``height``.
    """
    rows = [[s - 1 for s in cyc] for cyc in O.h_cycles()]
    row_of = {}
    for r, cyc in enumerate(rows):
        for s in cyc:
            row_of[s] = r
    parent = list(range(len(rows)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    top_marked = []
    for r, cyc in enumerate(rows):
        tm = any(O.mark[O.v[s]] for s in cyc)
        top_marked.append(tm)
        if not tm:
            parent[find(r)] = find(row_of[O.v[cyc[0]]])
    groups: dict[int, list[int]] = {}
    for r in range(len(rows)):
        groups.setdefault(find(r), []).append(r)
    out = []
    for members in groups.values():
        bottom = [r for r in members if any(O.mark[s] for s in rows[r])]
        assert len(bottom) == 1, "cylinder without a unique bottom row"
        r = bottom[0]
        stack = []
        while True:
            stack.append(r)
            if top_marked[r]:
                break
            r = row_of[O.v[rows[r][0]]]
        ordered = []
        for r in stack:
            cyc = rows[r]
            start = next((t for t, s in enumerate(cyc) if O.mark[s]), 0)
            ordered.append(cyc[start:] + cyc[:start])
        out.append(
            {
                "rows": ordered,
                "circumference": len(ordered[0]),
                "height": len(ordered),
            }
        )
    out.sort(key=lambda c: min(min(r) for r in c["rows"]))
    return out


def cylinder_decomposition(O: Origami, k) -> DirectionDecomposition:
    """Cylinders and saddle connections in the rational direction ``k``."""
    k = _check_rational(k)
    A = direction_normalizer(k)
    O2 = apply_matrix(O, A)
    cyls = horizontal_cylinders(O2)
    cyl_of_sq = {}
    for idx, c in enumerate(cyls):
        for row in c["rows"]:
            for s in row:
                cyl_of_sq[s] = idx
    scs = saddle_connections_in_direction(O, k)
    bottoms: list[list] = [[] for _ in cyls]
    tops: list[list] = [[] for _ in cyls]
    for sc in scs:
        a2, vec2 = transport_ray(O, A, sc.start_anchor, sc.holonomy)
        assert vec2[1] == 0 and vec2[0] > 0
        bottoms[cyl_of_sq[a2]].append(sc.key)
        tops[cyl_of_sq[O2.vi[a2]]].append(sc.key)
    core: list[set] = [set() for _ in cyls]
    p, q = k.x, k.y
    pieces_by_sq: dict[int, list] = {}
    for sc in scs:
        for c, P, Q, _ in sc.pieces():
            pieces_by_sq.setdefault(c, []).append(q * P[0] - p * P[1])
    corner_u = [0, q, q - p, -p]
    umin, umax = min(corner_u), max(corner_u)
    norm = p * p + q * q
    for sq in range(O.n):
        cuts = sorted({u for u in pieces_by_sq.get(sq, []) if umin < u < umax})
        bounds = [Fraction(umin)] + cuts + [Fraction(umax)]
        for u0, u1 in zip(bounds, bounds[1:]):
            u = (u0 + u1) / 2
            base = (u * q / norm, -u * p / norm)
            t0, t1 = _line_box(base, (p, q))
            tm = (t0 + t1) / 2
            pt = (base[0] + tm * p, base[1] + tm * q)
            s2, _, _ = transport_point(O, A, sq, pt[0], pt[1])
            core[cyl_of_sq[s2]].add(sq)
    cylinders = []
    for idx, c in enumerate(cyls):
        cyl = Cylinder(
            direction=k,
            circumference=Fraction(c["circumference"]),
            height=Fraction(c["height"]),
            holonomy=(c["circumference"] * p, c["circumference"] * q),
            boundary_bottom=tuple(sorted(bottoms[idx])),
            boundary_top=tuple(sorted(tops[idx])),
            core_squares=frozenset(core[idx]),
        )
        cylinders.append(cyl)
    return DirectionDecomposition(k, tuple(cylinders), scs, A)


def _line_box(base, d):
    """Parameter range of ``base + t d`` inside the unit square."""
    lo, hi = None, None
    for b, dd in zip(base, d):
        if dd == 0:
            continue
        u, w = (0 - b) / dd, (1 - b) / dd
        if u > w:
            u, w = w, u
        lo = u if lo is None else max(lo, u)
        hi = w if hi is None else min(hi, w)
    return lo, hi


# ---------------------------------------------------------------------------
# intersections


def _segment_hits(P0, P1, Q0, Q1):
    """Parameter ``s`` on ``P0 P1`` of its intersection with the closed
    segment ``Q0 Q1`` (non-parallel), or ``None``."""
    dx, dy = P1[0] - P0[0], P1[1] - P0[1]
    ex, ey = Q1[0] - Q0[0], Q1[1] - Q0[1]
    den = dx * ey - dy * ex
    if den == 0:
        return None
    rx, ry = Q0[0] - P0[0], Q0[1] - P0[1]
    s = Fraction(rx * ey - ry * ex) / den
    w = Fraction(rx * dy - ry * dx) / den
    if 0 <= w <= 1 and 0 <= s <= 1:
        return s
    return None


def intersection_points(sc: SaddleConnection, others: Iterable[SaddleConnection]) -> set[Fraction]:
    """Parameters ``t`` in ``(0, 1)`` along ``sc`` where it meets the union
    of ``others`` (which must not be parallel to ``sc``)."""
    by_sq: dict[int, list] = {}
    for o in others:
        for c, P, Q, _ in o.pieces():
            by_sq.setdefault(c, []).append((P, Q))
    hits: set[Fraction] = set()
    for c, P, Q, (t0, t1, _, _) in sc.pieces():
        for R0, R1 in by_sq.get(c, ()):
            s = _segment_hits(P, Q, R0, R1)
            if s is None:
                continue
            t = t0 + s * (t1 - t0)
            if 0 < t < 1:
                hits.add(t)
    return hits


def ordered_intersection(O: Origami, k, k2, report: bool = False):
    """Least number of interior intersections of a saddle connection in
    direction ``k`` with the union of saddle connections in direction
    ``k2``.  With ``report=True`` also return the realising connection."""
    k = _check_rational(k)
    k2 = _check_rational(k2)
    if k == k2:
        raise ValueError("directions must differ")
    a = saddle_connections_in_direction(O, k)
    b = saddle_connections_in_direction(O, k2)
    best = None
    for s in a:
        cnt = len(intersection_points(s, b))
        if best is None or cnt < best[0]:
            best = (cnt, s)
    if report:
        return best
    return best[0]
