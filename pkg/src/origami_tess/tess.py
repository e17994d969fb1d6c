"""Geodesics, tiles and drawings in the upper half plane.

The geodesic family consists of the sides of all ideal triangles.  Inside a
rectangle ``[x1, x2] x [y1, y2]`` (``y1 > 0``) only finitely many of them
appear; their arrangement, clipped to the rectangle, is computed exactly.
Endpoints of geodesics are rational, so circle centers and squared radii
are rational; crossings with the horizontal sides of the rectangle have
abscissae ``a + b sqrt(f)``, handled by :class:`Surd`.
"""

from __future__ import annotations

import functools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd
from typing import NamedTuple

from .core import INF, Origami, Slope
from .triangles import IdealTriangle, TriangleWitness, triangles_on_geodesic

__all__ = [
    "DegenerateRegion",
    "Region",
    "Surd",
    "GeodesicLine",
    "Face",
    "TessellationPatch",
    "Location",
    "as_region",
    "geodesics_in_region",
    "locate",
    "faces_in_region",
    "render",
    "patch_to_json",
    "DEFAULT_REGION",
]


class DegenerateRegion(ValueError):
    pass


def _frac(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        return Fraction(str(v))
    return Fraction(v)


class Region(NamedTuple):
    x1: Fraction
    x2: Fraction
    y1: Fraction
    y2: Fraction

    def __str__(self) -> str:
        return ",".join(str(v) for v in self)

    def contains(self, x, y) -> bool:
        return self.x1 <= x <= self.x2 and self.y1 <= y <= self.y2


DEFAULT_REGION = Region(Fraction(0), Fraction(1), Fraction(1, 4), Fraction(2))


def as_region(region) -> Region:
    """Accept a :class:`Region`, a 4-sequence or a string ``"x1,x2,y1,y2"``."""
    if isinstance(region, str):
        region = region.split(",")
    if len(region) != 4:
        raise ValueError("a region has four bounds x1,x2,y1,y2")
    r = Region(*(_frac(v) for v in region))
    if r.y1 <= 0:
        raise DegenerateRegion(f"minimum height {r.y1} must be positive")
    if r.x1 > r.x2 or r.y1 > r.y2:
        raise ValueError(f"empty region {r}")
    return r


# ---------------------------------------------------------------------------
# numbers a + b sqrt(f)


@lru_cache(maxsize=None)
def _square_part(n: int) -> tuple[int, int]:
    """``(m, f)`` with ``n = m^2 f`` and ``f`` squarefree."""
    m, f, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            m *= d
        if n % d == 0:
            n //= d
            f *= d
        d += 1
    return m, f * n


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def _sign2(A, B, f) -> int:
    """Sign of ``A + B sqrt(f)``."""
    sa, sb = _sgn(A), _sgn(B)
    if sb == 0 or f == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    d = A * A - B * B * f
    return sa if d > 0 else (sb if d < 0 else 0)


def _sign3(A, B, f, C, g) -> int:
    """Sign of ``A + B sqrt(f) + C sqrt(g)``."""
    if C == 0:
        return _sign2(A, B, f)
    if B == 0:
        return _sign2(A, C, g)
    if f == g:
        return _sign2(A, B + C, f)
    su, sv = _sign2(A, B, f), _sgn(C)
    if su == 0:
        return sv
    if su == sv:
        return su
    d = _sign2(A * A + B * B * f - C * C * g, 2 * A * B, f)
    return su if d > 0 else (sv if d < 0 else 0)


@dataclass(frozen=True)
class Surd:
    """``a + b sqrt(f)`` with ``f`` squarefree (``f = 1`` iff ``b = 0``)."""

    a: Fraction
    b: Fraction = Fraction(0)
    f: int = 1

    @staticmethod
    def make(a, b=0, s=0) -> "Surd":
        """``a + b sqrt(s)`` for rationals ``a, b`` and ``s >= 0``."""
        a, b, s = Fraction(a), Fraction(b), Fraction(s)
        if s < 0:
            raise ValueError("negative radicand")
        if b == 0 or s == 0:
            return Surd(a)
        m, f = _square_part(s.numerator * s.denominator)
        b = b * m / s.denominator
        if f == 1:
            return Surd(a + b)
        return Surd(a, b, f)

    def cmp(self, other) -> int:
        o = other if isinstance(other, Surd) else Surd(Fraction(other))
        return _sign3(self.a - o.a, self.b, self.f, -o.b, o.f)

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.f)

    def square(self) -> Fraction:
        """Exact square; only for rational values or pure ``b sqrt(f)``."""
        if self.b == 0:
            return self.a * self.a
        if self.a == 0:
            return self.b * self.b * self.f
        raise ValueError("square is irrational")

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.f})"


def _smin(u, v):
    return u if u <= v else v


def _smax(u, v):
    return u if u >= v else v


# ---------------------------------------------------------------------------
# geodesics


@dataclass(frozen=True)
class GeodesicLine:
    """The geodesic joining two slopes, stored with ``k1 < k2`` (``inf``
    last).  ``witness`` is an embedded triangle having both as sides."""

    k1: Slope
    k2: Slope
    witness: TriangleWitness | None = field(default=None, compare=False, repr=False)

    @property
    def is_vertical(self) -> bool:
        return self.k2.is_inf

    @property
    def center(self) -> Fraction:
        return (self.k1.value + self.k2.value) / 2

    @property
    def radius2(self) -> Fraction:
        return ((self.k2.value - self.k1.value) / 2) ** 2

    def side(self, x, y2) -> int:
        """Sign of the point ``(x, sqrt(y2))`` relative to the geodesic:
        outside (+) or inside (-) the disk, right (+) or left (-) of a
        vertical line, 0 on it."""
        x = x if isinstance(x, Surd) else Surd(Fraction(x))
        if self.is_vertical:
            return x.cmp(self.k1.value)
        c, r2 = self.center, self.radius2
        # (x - c)^2 + y2 - r2 with x = a + b sqrt(f)
        A = (x.a - c) ** 2 + x.b * x.b * x.f + y2 - r2
        return _sign2(A, 2 * (x.a - c) * x.b, x.f)

    def endpoints(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.k1.x, self.k1.y), (self.k2.x, self.k2.y)

    def __str__(self) -> str:
        return f"({self.k1},{self.k2})"


def _line(k1: Slope, k2: Slope, witness=None) -> GeodesicLine:
    if k2.is_inf or (not k1.is_inf and k1.value < k2.value):
        return GeodesicLine(k1, k2, witness)
    return GeodesicLine(k2, k1, witness)


def _arc_meets(R: Region, c: Fraction, r: Fraction) -> bool:
    lo, hi = max(R.x1, c - r), min(R.x2, c + r)
    if lo > hi:
        return False
    ys = [r * r - (x - c) ** 2 for x in (lo, hi)]
    top = r * r if lo <= c <= hi else max(ys)
    return min(ys) <= R.y2 * R.y2 and top >= R.y1 * R.y1


def _candidates(O: Origami, R: Region):
    n, h0 = O.n, R.y1
    for q in range(1, 2 * n + 1):
        for p in range(ceil(R.x1 * q), floor(R.x2 * q) + 1):
            if gcd(p, q) == 1:
                yield Slope(p, q), INF
    for q1 in range(1, floor(n / h0) + 1):
        for q2 in range(1, floor(n / (h0 * q1)) + 1):
            rmax = Fraction(n, q1 * q2)
            for p1 in range(ceil((R.x1 - 2 * rmax) * q1), floor((R.x2 + 2 * rmax) * q1) + 1):
                if gcd(p1, q1) != 1:
                    continue
                for p2 in range(floor(Fraction(p1 * q2, q1)) + 1, floor(Fraction(p1 * q2 + 2 * n, q1)) + 1):
                    if gcd(p2, q2) != 1:
                        continue
                    D = p2 * q1 - p1 * q2
                    if D < 2 * h0 * q1 * q2:
                        continue
                    k1, k2 = Fraction(p1, q1), Fraction(p2, q2)
                    if _arc_meets(R, (k1 + k2) / 2, (k2 - k1) / 2):
                        yield Slope(p1, q1), Slope(p2, q2)


def _certify(args):
    O, pairs = args
    out = []
    for k1, k2 in pairs:
        w = triangles_on_geodesic(O, k1, k2)
        if w:
            out.append(_line(k1, k2, w[0]))
    return out


def geodesics_in_region(O: Origami, region, threads: int = 1) -> list[GeodesicLine]:
    """All sides of embedded-triangle images meeting the closed rectangle.

    A side joining ``x1/y1`` and ``x2/y2`` has ``|x1 y2 - x2 y1| <= 2n``
    and, to reach height ``h0``, ``y1 y2 <= n / h0``; every candidate is
    certified by an embedded triangle.
    """
    R = as_region(region)
    cands = list(_candidates(O, R))
    if threads > 1 and len(cands) > 64:
        chunks = [cands[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(threads) as ex:
            lines = [g for part in ex.map(_certify, [(O, c) for c in chunks]) for g in part]
    else:
        lines = _certify((O, cands))
    return sorted(set(lines), key=_line_key)


def _line_key(g: GeodesicLine):
    return (g.k1.key(), g.k2.key())


# ---------------------------------------------------------------------------
# point location


class Location(NamedTuple):
    """Either one triangle containing the point in its interior
    (``edge is None``) or two triangles on opposite sides of ``edge``,
    which contains the point."""

    triangles: tuple[IdealTriangle, ...]
    edge: GeodesicLine | None

    @property
    def interior(self) -> bool:
        return self.edge is None


def _tri_sides(t: IdealTriangle) -> list[GeodesicLine]:
    a, b, c = t.vertices
    return [_line(a, b), _line(b, c), _line(a, c)]


def _position(t: IdealTriangle, x: Fraction, y2: Fraction) -> int:
    """1 inside, 0 on the boundary, -1 outside (exact)."""
    vs = t.vertices
    if vs[2].is_inf:
        a, b = vs[0].value, vs[1].value
        signs = [_sgn(x - a), _sgn(b - x), _line(vs[0], vs[1]).side(x, y2)]
    else:
        signs = [
            _line(vs[0], vs[1]).side(x, y2),
            _line(vs[1], vs[2]).side(x, y2),
            -_line(vs[0], vs[2]).side(x, y2),
        ]
    if min(signs) < 0:
        return -1
    return 1 if min(signs) > 0 else 0


def _triangles_near(O: Origami, x: Fraction, y: Fraction):
    from .graph import incident_triangles

    top = max(y, Fraction(O.n))
    tris = {}
    for g in geodesics_in_region(O, (x, x, y, top)):
        for w in triangles_on_geodesic(O, g.k1, g.k2):
            tris.setdefault(w.ideal, w)
    for t, _ in incident_triangles(O, INF, 1, around=Slope(x.numerator, x.denominator)):
        tris.setdefault(t, None)
    return sorted(tris, key=IdealTriangle.sort_key)


def locate(O: Origami, z) -> Location:
    """Triangle containing ``z = (x, y)``, ``y > 0``, in its interior, or
    two triangles sharing a side through ``z``.

    A triangle containing ``z`` either has ``inf`` as a vertex or has its
    outer side above ``z``; both kinds are enumerated finitely.
    """
    x, y = (_frac(v) for v in z)
    if y <= 0:
        raise DegenerateRegion("point must lie in the upper half plane")
    y2 = y * y
    tris = _triangles_near(O, x, y)
    closed = [t for t in tris if _position(t, x, y2) >= 0]
    for t in closed:
        if _position(t, x, y2) > 0:
            return Location((t,), None)
    edges = sorted(
        {g for t in closed for g in _tri_sides(t) if g.side(x, y2) == 0},
        key=_line_key,
    )
    for g in edges:
        ws = [w.ideal for w in triangles_on_geodesic(O, g.k1, g.k2)]
        pos = [t for t in ws if _third_side(t, g) > 0]
        neg = [t for t in ws if _third_side(t, g) < 0]
        if pos and neg:
            return Location((neg[0], pos[0]), g)
    raise AssertionError(f"no triangle contains {x},{y}")


def _third_side(t: IdealTriangle, g: GeodesicLine) -> int:
    (k,) = [v for v in t.vertices if v not in (g.k1, g.k2)]
    if g.is_vertical:
        return _sgn(k.value - g.k1.value) if not k.is_inf else 0
    if k.is_inf:
        return 1
    return 1 if not (g.k1.value < k.value < g.k2.value) else -1


# ---------------------------------------------------------------------------
# arrangement


class _Pt(NamedTuple):
    x: Surd
    y2: Fraction

    def coords(self) -> tuple[float, float]:
        return float(self.x), math.sqrt(self.y2)


# curve kinds: ("c", center, r2, line) for arcs, ("v", x, line) for vertical
# lines (boundary sides have line None), ("h", y) for horizontal sides


def _dir_key(curve, P: _Pt, forward: bool):
    """Sort key of the direction leaving ``P`` along ``curve``; forward is
    increasing x on arcs and horizontal sides, increasing y on verticals.
    Keys increase counter-clockwise from straight down."""
    kind = curve[0]
    if kind == "c":
        c = Surd(curve[1])
        return (0, c, -1) if forward else (2, c, 1)
    if kind == "h":
        return (0, P.x, 0) if forward else (2, P.x, 0)
    return (1, Surd(0), 0) if forward else (3, Surd(0), 0)


def _key_cmp(k1, k2) -> int:
    if k1[0] != k2[0]:
        return _sgn(k1[0] - k2[0])
    c = k1[1].cmp(k2[1])
    if c:
        return c
    return _sgn(k1[2] - k2[2])


def _dir_vector(curve, P: _Pt, forward: bool) -> tuple[float, float]:
    x, y = P.coords()
    kind = curve[0]
    if kind == "c":
        v = (y, float(curve[1]) - x)
    elif kind == "h":
        v = (1.0, 0.0)
    else:
        v = (0.0, 1.0)
    return v if forward else (-v[0], -v[1])


@dataclass(frozen=True)
class Face:
    """A face of the arrangement, boundary counter-clockwise.  ``edges[i]``
    is the geodesic from ``vertices[i]`` to the next vertex, or None on a
    side of the rectangle; ``signs`` give the side of every geodesic."""

    vertices: tuple
    edges: tuple
    complete: bool
    sides: int
    area: float | None
    signs: tuple

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "sides": self.sides,
            "area": None if self.area is None else f"{self.area:.12f}",
            # exact vertices as [x, y^2]; y itself may be irrational
            "vertices": [{"x": str(p.x), "y2": str(p.y2)} for p in self.vertices],
        }


@dataclass(frozen=True)
class TessellationPatch:
    region: Region
    triangles: tuple[IdealTriangle, ...]
    geodesics: tuple[GeodesicLine, ...]
    faces: tuple[Face, ...]
    n_vertices: int
    n_edges: int
    pieces: tuple = field(repr=False)

    @property
    def complete_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.complete)

    def euler_ok(self) -> bool:
        """``V - E + F = 2`` counting the outer face: the faces form a
        subdivision of the closed rectangle."""
        return self.n_vertices - self.n_edges + len(self.faces) + 1 == 2

    def sign_vector(self, x, y) -> tuple:
        x, y = _frac(x), _frac(y)
        return tuple(g.side(x, y * y) for g in self.geodesics)

    def faces_at(self, x, y) -> list[int]:
        """Indices of faces whose closure may contain the point, judged by
        the side of every geodesic."""
        s = self.sign_vector(x, y)
        return [
            i
            for i, f in enumerate(self.faces)
            if all(a == 0 or b == 0 or a == b for a, b in zip(s, f.signs))
        ]


def _arc_pieces(R: Region, c: Fraction, r2: Fraction):
    """Closed x-intervals of the arc inside the rectangle, as Surd pairs."""
    if r2 < R.y1 * R.y1:
        return []
    beta = Surd.make(0, 1, r2 - R.y1 * R.y1)
    alpha = Surd.make(0, 1, r2 - R.y2 * R.y2) if r2 > R.y2 * R.y2 else Surd(Fraction(0))
    def shift(s, sign):
        return Surd(c + sign * s.a, sign * s.b, s.f)

    if alpha.cmp(0) == 0:
        ivs = [(shift(beta, -1), shift(beta, 1))]
    else:
        ivs = [(shift(beta, -1), shift(alpha, -1)), (shift(alpha, 1), shift(beta, 1))]
    out = []
    X1, X2 = Surd(R.x1), Surd(R.x2)
    for u, v in ivs:
        u, v = _smax(u, X1), _smin(v, X2)
        if u < v:
            out.append((u, v))
    return out


def _y2_on(c: Fraction, r2: Fraction, x: Surd) -> Fraction:
    """``r2 - (x - c)^2`` for an endpoint of an arc piece (rational)."""
    if x.b == 0:
        return r2 - (x.a - c) ** 2
    # x = c +- sqrt(s) gives r2 - s
    return r2 - Surd(x.a - c, x.b, x.f).square()


def faces_in_region(O: Origami, region, threads: int = 1) -> TessellationPatch:
    """Arrangement of the geodesics meeting the rectangle, clipped to it.

    Faces not touching the rectangle's sides are complete tiles; their
    hyperbolic area comes from Gauss-Bonnet (floating point).
    """
    R = as_region(region)
    geos = geodesics_in_region(O, R, threads)
    return _arrangement(R, geos)


def _arrangement(R: Region, geos) -> TessellationPatch:
    y1s, y2s = R.y1 * R.y1, R.y2 * R.y2
    X1, X2 = Surd(R.x1), Surd(R.x2)
    corners = {
        "bl": _Pt(X1, y1s),
        "br": _Pt(X2, y1s),
        "tl": _Pt(X1, y2s),
        "tr": _Pt(X2, y2s),
    }
    boundary_geo = {}
    touch = []
    curves = []
    pieces = []  # (curve index, lo, hi) along the curve parameter
    for g in geos:
        if g.is_vertical:
            x = g.k1.value
            if x in (R.x1, R.x2):
                boundary_geo[x] = g
                continue
            curves.append(("v", x, g))
            pieces.append((len(curves) - 1, _Pt(Surd(x), y1s), _Pt(Surd(x), y2s)))
        else:
            c, r2 = g.center, g.radius2
            curves.append(("c", c, r2, g))
            for u, v in _arc_pieces(R, c, r2):
                pieces.append((len(curves) - 1, _Pt(u, _y2_on(c, r2, u)), _Pt(v, _y2_on(c, r2, v))))
            if r2 == y2s and R.x1 <= c <= R.x2:
                # the arc touches the top side at its apex
                touch.append(_Pt(Surd(c), y2s))
    ngeo = len(curves)
    b_idx = {}
    for name, curve in (
        ("bottom", ("h", R.y1)),
        ("top", ("h", R.y2)),
        ("left", ("v", R.x1, boundary_geo.get(R.x1))),
        ("right", ("v", R.x2, boundary_geo.get(R.x2))),
    ):
        curves.append(curve)
        b_idx[name] = len(curves) - 1
    pieces.append((b_idx["bottom"], corners["bl"], corners["br"]))
    pieces.append((b_idx["top"], corners["tl"], corners["tr"]))
    pieces.append((b_idx["left"], corners["bl"], corners["tl"]))
    pieces.append((b_idx["right"], corners["br"], corners["tr"]))

    # points on each piece
    on_piece = [[lo, hi] for _, lo, hi in pieces]

    def inside(p: _Pt) -> bool:
        return X1 <= p.x <= X2 and y1s <= p.y2 <= y2s

    def along(ci, lo, hi, p) -> bool:
        kind = curves[ci][0]
        if kind == "h":
            return p.y2 == lo.y2 and lo.x <= p.x <= hi.x
        if kind == "v":
            return p.x.cmp(lo.x) == 0 and lo.y2 <= p.y2 <= hi.y2
        return lo.x <= p.x <= hi.x

    # piece endpoints lie on the rectangle sides
    for i, (ci, lo, hi) in enumerate(pieces):
        if curves[ci][0] == "h" or (curves[ci][0] == "v" and ci >= ngeo):
            continue
        for p in (lo, hi):
            for j in (4, 3, 2, 1):
                bj = len(pieces) - j
                bci, blo, bhi = pieces[bj]
                if along(bci, blo, bhi, p):
                    on_piece[bj].append(p)
    for p in touch:
        for k, (ci, lo, hi) in enumerate(pieces):
            if along(ci, lo, hi, p) and (curves[ci][0] == "h" or _geo_of(curves[ci]).side(p.x, p.y2) == 0):
                on_piece[k].append(p)
    # crossings of geodesics
    for i in range(ngeo):
        for j in range(i + 1, ngeo):
            p = _cross(curves[i], curves[j])
            if p is None or not inside(p):
                continue
            for k, (ci, lo, hi) in enumerate(pieces):
                if ci in (i, j) and along(ci, lo, hi, p):
                    on_piece[k].append(p)
            for j2 in (4, 3, 2, 1):
                bj = len(pieces) - j2
                bci, blo, bhi = pieces[bj]
                if along(bci, blo, bhi, p):
                    on_piece[bj].append(p)

    # half-edges
    verts: dict = {}
    out: dict = {}  # vertex -> list of (key, edge id)
    edges = []  # (u, v, curve index); edge 2e is u->v, 2e+1 is v->u
    for k, (ci, lo, hi) in enumerate(pieces):
        curve = curves[ci]
        pts = _dedupe_sorted(on_piece[k], curve)
        for u, v in zip(pts, pts[1:]):
            e = len(edges)
            edges.append((u, v, ci))
            for p in (u, v):
                verts.setdefault(p, len(verts))
            out.setdefault(u, []).append((_dir_key(curve, u, True), 2 * e))
            out.setdefault(v, []).append((_dir_key(curve, v, False), 2 * e + 1))

    order = {}
    for p, lst in out.items():
        lst.sort(key=functools.cmp_to_key(lambda a, b: _key_cmp(a[0], b[0])))
        ids = [h for _, h in lst]
        for i, h in enumerate(ids):
            order[h] = (p, ids, i)

    def head(h):
        u, v, _ = edges[h // 2]
        return v if h % 2 == 0 else u

    def next_half(h):
        twin = h ^ 1
        _, ids, i = order[twin]
        return ids[i - 1]

    seen = set()
    cycles = []
    for h in range(2 * len(edges)):
        if h in seen:
            continue
        cyc = []
        while h not in seen:
            seen.add(h)
            cyc.append(h)
            h = next_half(h)
        cycles.append(cyc)

    bottom = b_idx["bottom"]
    outer = next(
        i for i, cyc in enumerate(cycles) if any(edges[h // 2][2] == bottom and h % 2 == 1 for h in cyc)
    )
    faces = []
    for i, cyc in enumerate(cycles):
        if i == outer:
            continue
        faces.append(_face(cyc, edges, curves, geos, head))
    faces.sort(key=lambda f: (not f.complete, min((float(p.x), float(p.y2)) for p in f.vertices)))
    tris = sorted({g.witness.ideal for g in geos if g.witness is not None}, key=IdealTriangle.sort_key)
    return TessellationPatch(
        R,
        tuple(tris),
        tuple(geos),
        tuple(faces),
        len(verts),
        len(edges),
        tuple(pieces),
    )


def _geo_of(curve):
    if curve[0] == "c":
        return curve[3]
    if curve[0] == "v":
        return curve[2]
    return None


def _face(cyc, edges, curves, geos, head) -> Face:
    vs = []
    cs = []
    fwd = []
    for h in cyc:
        u, v, ci = edges[h // 2]
        vs.append(u if h % 2 == 0 else v)
        cs.append(ci)
        fwd.append(h % 2 == 0)
    geo_curves = [_geo_of(curves[ci]) for ci in cs]
    complete = all(g is not None for g in geo_curves)
    # sides: maximal runs of one curve
    ids = [id(g) if g is not None else ("b", ci) for g, ci in zip(geo_curves, cs)]
    runs = sum(1 for i in range(len(ids)) if ids[i] != ids[i - 1]) or 1
    area = None
    if complete:
        total = 0.0
        k = len(cyc)
        for i in range(k):
            # interior angle at the head of edge i
            h_in, h_out = cyc[i], cyc[(i + 1) % k]
            _, _, ci = edges[h_in // 2]
            P = head(h_in)
            d_back = _dir_vector(curves[ci], P, h_in % 2 == 1)
            _, _, co = edges[h_out // 2]
            d_out = _dir_vector(curves[co], P, h_out % 2 == 0)
            a = math.atan2(d_back[1], d_back[0]) - math.atan2(d_out[1], d_out[0])
            total += a % (2 * math.pi)
        area = (k - 2) * math.pi - total
    signs = _face_signs(vs, geo_curves, fwd, geos)
    return Face(tuple(vs), tuple(geo_curves), complete, runs, area, signs)


def _face_signs(vs, edge_geos, fwd, geos) -> tuple:
    out = []
    for g in geos:
        s = 0
        for p in vs:
            s = g.side(p.x, p.y2)
            if s:
                break
        if s == 0:
            for e, f in zip(edge_geos, fwd):
                if e == g:
                    # the face lies to the left of its boundary edges
                    s = (1 if f else -1) * (-1 if g.is_vertical else 1)
                    break
        out.append(s)
    return tuple(out)


def _cross(a, b):
    if a[0] == "v" and b[0] == "v":
        return None
    if a[0] == "v":
        a, b = b, a
    if b[0] == "v":
        c, r2 = a[1], a[2]
        x = b[1]
        y2 = r2 - (x - c) ** 2
        return _Pt(Surd(x), y2) if y2 > 0 else None
    c1, r1, c2, r2 = a[1], a[2], b[1], b[2]
    if c1 == c2:
        return None
    x = (r1 - r2 + c2 * c2 - c1 * c1) / (2 * (c2 - c1))
    y2 = r1 - (x - c1) ** 2
    return _Pt(Surd(x), y2) if y2 > 0 else None


def _dedupe_sorted(pts, curve):

    if curve[0] == "v":
        key = functools.cmp_to_key(lambda p, q: _sgn(p.y2 - q.y2))
    else:
        key = functools.cmp_to_key(lambda p, q: p.x.cmp(q.x))
    out = []
    for p in sorted(set(pts), key=key):
        if not out or key(out[-1]) != key(p):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# drawing


def _fmt(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _cayley(x: float, y: float) -> tuple[float, float]:
    """Half plane to disk: ``w = (z - i) / (z + i)``."""
    d = x * x + (y + 1) ** 2
    return (x * x + y * y - 1) / d, -2 * x / d


def _boundary_point(k: Slope) -> tuple[float, float]:
    if k.is_inf:
        return 1.0, 0.0
    return _cayley(float(k.value), 0.0)


def render(patch: TessellationPatch, model: str = "half-plane", size: int = 600) -> bytes:
    """SVG drawing of a patch; one path per geodesic, complete faces
    shaded.  Floating point is used only here."""
    if model not in ("half-plane", "disk"):
        raise ValueError(f"unknown model {model!r}")
    R = patch.region
    lines = []
    if model == "half-plane":
        x1, x2, y1, y2 = (float(v) for v in R)
        w, h = x2 - x1 or 1.0, y2 - y1
        scale = (size - 40) / max(w, h)
        W, H = w * scale + 40, h * scale + 40

        def P(x, y):
            return 20 + (x - x1) * scale, 20 + (y2 - y) * scale

        lines.append(
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(W)}" height="{_fmt(H)}" '
            f'viewBox="0 0 {_fmt(W)} {_fmt(H)}">'
        )
        bx, by = P(x1, y2)
        lines.append(
            f'<defs><clipPath id="region"><rect x="{_fmt(bx)}" y="{_fmt(by)}" '
            f'width="{_fmt(w * scale)}" height="{_fmt(h * scale)}"/></clipPath></defs>'
        )
        lines.append('<rect width="100%" height="100%" fill="white"/>')
        for f in patch.complete_faces:
            pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (P(*p) for p in _face_polyline(f)))
            lines.append(f'<polygon class="face" points="{pts}" fill="#cfe3f7" stroke="none"/>')
        lines.append('<g clip-path="url(#region)" fill="none" stroke="black" stroke-width="1">')
        for g in patch.geodesics:
            if g.is_vertical:
                a, b = P(float(g.k1.value), y1), P(float(g.k1.value), y2)
                d = f"M {_fmt(a[0])} {_fmt(a[1])} L {_fmt(b[0])} {_fmt(b[1])}"
            else:
                r = math.sqrt(float(g.radius2)) * scale
                a, b = P(float(g.k1.value), 0.0), P(float(g.k2.value), 0.0)
                d = f"M {_fmt(a[0])} {_fmt(a[1])} A {_fmt(r)} {_fmt(r)} 0 0 1 {_fmt(b[0])} {_fmt(b[1])}"
            lines.append(f'<path class="geodesic" d="{d}"><title>{g}</title></path>')
        lines.append("</g>")
        lines.append(
            f'<rect class="region" x="{_fmt(bx)}" y="{_fmt(by)}" width="{_fmt(w * scale)}" '
            f'height="{_fmt(h * scale)}" fill="none" stroke="#888" stroke-dasharray="4 2"/>'
        )
    else:
        rad = size / 2 - 20
        c0 = size / 2

        def P(u, v):
            return c0 + u * rad, c0 - v * rad

        lines.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">')
        outline = _region_outline(R)
        pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (P(*_cayley(x, y)) for x, y in outline))
        lines.append(f'<defs><clipPath id="region"><polygon points="{pts}"/></clipPath></defs>')
        lines.append('<rect width="100%" height="100%" fill="white"/>')
        lines.append(f'<circle cx="{_fmt(c0)}" cy="{_fmt(c0)}" r="{_fmt(rad)}" fill="none" stroke="#888"/>')
        for f in patch.complete_faces:
            fp = " ".join(
                f"{_fmt(a)},{_fmt(b)}" for a, b in (P(*_cayley(*p)) for p in _face_polyline(f))
            )
            lines.append(f'<polygon class="face" points="{fp}" fill="#cfe3f7" stroke="none"/>')
        lines.append('<g fill="none" stroke="black" stroke-width="1">')
        for g in patch.geodesics:
            a, b = _boundary_point(g.k1), _boundary_point(g.k2)
            pa, pb = P(*a), P(*b)
            cosang = max(-1.0, min(1.0, a[0] * b[0] + a[1] * b[1]))
            ang = math.acos(cosang)
            if abs(ang - math.pi) < 1e-12:
                d = f"M {_fmt(pa[0])} {_fmt(pa[1])} L {_fmt(pb[0])} {_fmt(pb[1])}"
            else:
                r = math.tan(ang / 2) * rad
                cross = a[0] * b[1] - a[1] * b[0]
                sweep = 1 if cross > 0 else 0
                d = f"M {_fmt(pa[0])} {_fmt(pa[1])} A {_fmt(r)} {_fmt(r)} 0 0 {sweep} {_fmt(pb[0])} {_fmt(pb[1])}"
            lines.append(f'<path class="geodesic" d="{d}"><title>{g}</title></path>')
        lines.append("</g>")
        lines.append(f'<polygon class="region" points="{pts}" fill="none" stroke="#888" stroke-dasharray="4 2"/>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode()


def _region_outline(R: Region, steps: int = 16):
    x1, x2, y1, y2 = (float(v) for v in R)
    out = []
    for i in range(steps):
        out.append((x1 + (x2 - x1) * i / steps, y1))
    for i in range(steps):
        out.append((x2, y1 + (y2 - y1) * i / steps))
    for i in range(steps):
        out.append((x2 - (x2 - x1) * i / steps, y2))
    for i in range(steps):
        out.append((x1, y2 - (y2 - y1) * i / steps))
    return out


def _face_polyline(f: Face, steps: int = 12):
    """Points along the boundary of a face, arcs sampled."""
    pts = []
    k = len(f.vertices)
    for i in range(k):
        P, Q = f.vertices[i].coords(), f.vertices[(i + 1) % k].coords()
        g = f.edges[i]
        if g is None or g.is_vertical:
            pts.append(P)
            continue
        c, r = float(g.center), math.sqrt(float(g.radius2))
        t0 = math.atan2(P[1], P[0] - c)
        t1 = math.atan2(Q[1], Q[0] - c)
        for j in range(steps):
            t = t0 + (t1 - t0) * j / steps
            pts.append((c + r * math.cos(t), r * math.sin(t)))
    return pts


def patch_to_json(patch: TessellationPatch) -> str:
    doc = {
        "region": [str(v) for v in patch.region],
        "geodesics": [[str(v) for v in (*g.endpoints()[0], *g.endpoints()[1])] for g in patch.geodesics],
        "triangles": [str(t) for t in patch.triangles],
        "faces": [f.to_json() for f in patch.faces],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
