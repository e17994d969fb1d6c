"""Cusps, reference domains and the Veech group.

Every periodic direction ``k`` is moved to the horizontal by an integer
matrix ``A``.  The stabilizer of the horizontal in the Veech group of
``A.O`` is generated by ``U^a'`` with ``U = [[1, 1], [0, 1]]``; ``a'`` is the
raw period.  Reference domains, the coarse fundamental domain (algorithm A)
and the generating set (algorithm B) are built from these charts.  Every
equivalence verdict carries a matrix witness that is checked with
:func:`apply_matrix` and a canonical-form comparison.

An independent orbit computation (:func:`oracle_orbit`) and a Todd-Coxeter
coset enumeration (:func:`coset_enumeration`) verify the results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd
from typing import NamedTuple

from .core import (
    INF,
    GroupElement,
    Origami,
    Slope,
    T,
    apply_matrix,
    direction_normalizer,
    expand_word,
    matrix_to_word,
    projective_key,
    rotate,
    shear,
    word_to_str,
)
from .flatgeom import _check_rational, horizontal_cylinders, horizontal_saddle_connections
from .triangles import IdealTriangle, TriangleWitness, triangles_with_vertex

__all__ = [
    "CapExceeded",
    "OrbitCapExceeded",
    "NormalizedDirection",
    "CuspData",
    "CoarseFundamentalDomain",
    "GeneratorSet",
    "OracleResult",
    "Unbounded",
    "VolumeReport",
    "normalize_direction",
    "cusp_period",
    "period_is_minimal",
    "in_veech_group",
    "directions_equivalent",
    "cusp_key",
    "reference_domain",
    "triangles_equivalent",
    "triangle_stabilizer",
    "algorithm_A",
    "algorithm_B",
    "oracle_orbit",
    "coset_enumeration",
    "volume_report",
]


class CapExceeded(RuntimeError):
    pass


class OrbitCapExceeded(RuntimeError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# normalization and periods


class NormalizedDirection(NamedTuple):
    A: GroupElement
    surface: Origami
    delta: int
    kappa: int


@lru_cache(maxsize=None)
def _chart(O: Origami, A: GroupElement) -> NormalizedDirection:
    Op = apply_matrix(O, A)
    lengths = [s.holonomy[0] for s in horizontal_saddle_connections(Op)]
    return NormalizedDirection(A, Op, min(lengths), max(lengths))


def normalize_direction(O: Origami, k) -> NormalizedDirection:
    """``(A, A.O, delta, kappa)`` with ``A`` the normalizer of ``k`` and
    ``delta``, ``kappa`` the shortest and longest horizontal saddle
    connection lengths of ``A.O``."""
    return _chart(O, direction_normalizer(_check_rational(k)))


@lru_cache(maxsize=None)
def cusp_period(Op: Origami) -> int:
    """Least ``m > 0`` with ``U^m . Op`` projectively isomorphic to ``Op``.

    Searched up to the lcm over horizontal cylinders of
    ``c / gcd(c, h)``, where ``U`` acts by a multi-twist.
    """
    bound = 1
    for cyl in horizontal_cylinders(Op):
        c, h = int(cyl["circumference"]), int(cyl["height"])
        bound = _lcm(bound, c // gcd(c, h))
    key = projective_key(Op)
    for m in range(1, bound + 1):
        if projective_key(shear(Op, m)) == key:
            return m
    raise AssertionError("multi-twist does not stabilize the surface")


def period_is_minimal(Op: Origami, a: int) -> bool:
    """``U^a`` stabilizes ``Op`` and no ``U^d`` with ``d`` a proper divisor
    of ``a`` does."""
    key = projective_key(Op)
    if projective_key(shear(Op, a)) != key:
        return False
    return all(projective_key(shear(Op, d)) != key for d in range(1, a) if a % d == 0)


def in_veech_group(O: Origami, g: GroupElement) -> bool:
    """``g.O`` isomorphic to ``O`` or to ``-I.O`` (i.e. ``+-g`` in the group)."""
    return projective_key(apply_matrix(O, g)) == projective_key(O)


@lru_cache(maxsize=None)
def cusp_key(O: Origami, k) -> tuple:
    """Complete invariant of the cusp of ``k``: the least projective key
    over ``U^m A.O``, ``0 <= m < a'``."""
    nd = normalize_direction(O, k)
    a = cusp_period(nd.surface)
    return min(projective_key(shear(nd.surface, m)) for m in range(a))


class Equivalence(NamedTuple):
    equivalent: bool
    witness: GroupElement | None


def directions_equivalent(O: Origami, k1, k2) -> Equivalence:
    """Whether some element of the Veech group sends ``k1`` to ``k2``.

    The witness ``g = A2^-1 U^m A1`` satisfies ``g(k1) = k2`` and is
    verified to lie in the group.
    """
    k1, k2 = _check_rational(k1), _check_rational(k2)
    n1, n2 = normalize_direction(O, k1), normalize_direction(O, k2)
    target = projective_key(n2.surface)
    a = cusp_period(n1.surface)
    for m in range(a):
        if projective_key(shear(n1.surface, m)) == target:
            g = (n2.A.inverse() * T**m * n1.A).canonical()
            assert g.act(k1) == k2 and in_veech_group(O, g)
            return Equivalence(True, g)
    return Equivalence(False, None)


# ---------------------------------------------------------------------------
# reference domains


@dataclass(frozen=True)
class CuspData:
    """Chart and reference domain of a periodic direction.

    In the chart ``A`` (``A(rep) = inf``) every reference triangle has the
    horizontal as a vertex and meets the slope window ``(0, period_raw)``.
    """

    rep: Slope
    A: GroupElement
    delta: int
    kappa: int
    period_raw: int
    ref_triangles: tuple[IdealTriangle, ...]
    neighbors: tuple[Slope, ...]
    g_k: GroupElement
    len2_bound: Fraction
    witnesses: tuple[TriangleWitness, ...] = field(repr=False, compare=False)

    @property
    def period(self) -> Fraction:
        """Period in the chart where the shortest horizontal has length 1."""
        return Fraction(self.period_raw, self.delta**2)

    def chart_intervals(self) -> list[tuple[Fraction, Fraction]]:
        """Slope intervals ``[p, q]`` of the reference triangles in chart ``A``."""
        out = []
        for t in self.ref_triangles:
            p, q = sorted(x.value for x in t.image(self.A).vertices if not x.is_inf)
            out.append((p, q))
        return sorted(out)

    def is_connected(self) -> bool:
        """The union of the intervals covers ``(0, period_raw)``."""
        ivs = self.chart_intervals()
        reach = None
        for p, q in ivs:
            if reach is None:
                if p > 0:
                    return False
                reach = q
            elif p <= reach:
                reach = max(reach, q)
            else:
                break
            if reach >= self.period_raw:
                return True
        return reach is not None and reach >= self.period_raw


def lemma_bound(n: int, period_raw: int, delta: int, kappa: int) -> Fraction:
    """Squared normalized length bound on the shorter non-horizontal side
    of a reference triangle, for a surface of area ``n``."""
    a = Fraction(period_raw, delta * delta)
    return max(4 * n * n * (1 + a * a), 4 * n * n + Fraction(kappa * kappa, 4 * delta * delta))


@lru_cache(maxsize=None)
def _reference_domain(O: Origami, k: Slope, A: GroupElement) -> CuspData:
    nd = _chart(O, A)
    a = cusp_period(nd.surface)
    bound = lemma_bound(O.n, a, nd.delta, nd.kappa)
    ws = triangles_with_vertex(O, k, (0, a), len2_bound=bound, chart=A)
    tris = tuple(w.ideal for w in ws)
    nbrs = sorted({x for t in tris for x in t.vertices if x != k}, key=Slope.key)
    g_k = (A.inverse() * T**a * A).canonical()
    cd = CuspData(k, A, nd.delta, nd.kappa, a, tris, tuple(nbrs), g_k, bound, tuple(ws))
    if not cd.is_connected():
        raise AssertionError(f"reference domain of {k} is not connected")
    return cd


def reference_domain(O: Origami, k, containing: IdealTriangle | None = None) -> CuspData:
    """Reference domain of ``k``.

    With ``containing`` (a triangle with vertex ``k``) the chart is shifted
    by an integer power of ``U`` so that this triangle is one of the
    reference triangles.
    """
    k = _check_rational(k)
    A = direction_normalizer(k)
    if containing is not None:
        if k not in containing:
            raise ValueError(f"{containing} does not have {k} as a vertex")
        p = min(x.value for x in containing.image(A).vertices if not x.is_inf)
        A = T ** (-floor(p)) * A
    return _reference_domain(O, k, A)


# ---------------------------------------------------------------------------
# triangle orbits


@lru_cache(maxsize=None)
def _vertex_chart(O: Origami, t: IdealTriangle, k: Slope):
    """Chart ``B`` with ``B(k) = inf`` and the lower finite vertex of
    ``B(t)`` in ``[0, 1)``, with the invariant of ``(t, k)`` it defines."""
    A = direction_normalizer(k)
    p = min(x.value for x in t.image(A).vertices if not x.is_inf)
    B = T ** (-floor(p)) * A
    Bt = t.image(B)
    return (projective_key(apply_matrix(O, B)), Bt.vertices), B


def triangles_equivalent(O: Origami, t1: IdealTriangle, t2: IdealTriangle) -> Equivalence:
    """Whether some element of the Veech group maps ``t1`` onto ``t2``.

    A fixed vertex of ``t1`` is paired with each vertex of ``t2``; the
    witness is the matrix between the two normalized charts.
    """
    k1 = t1.vertices[0]
    key1, B1 = _vertex_chart(O, t1, k1)
    for k2 in t2.vertices:
        key2, B2 = _vertex_chart(O, t2, k2)
        if key1 == key2:
            g = (B2.inverse() * B1).canonical()
            assert t1.image(g) == t2 and in_veech_group(O, g)
            return Equivalence(True, g)
    return Equivalence(False, None)


def triangle_stabilizer(O: Origami, t: IdealTriangle) -> tuple[int, GroupElement | None]:
    """Order (1 or 3) of the stabilizer of ``t`` and a rotation when 3."""
    k0 = t.vertices[0]
    key0, B0 = _vertex_chart(O, t, k0)
    for k in t.vertices[1:]:
        key, B = _vertex_chart(O, t, k)
        if key == key0:
            g = (B.inverse() * B0).canonical()
            assert t.image(g) == t and g.act(k0) == k and in_veech_group(O, g)
            return 3, g
    return 1, None


def _triangle_class_key(O: Origami, t: IdealTriangle):
    return min(_vertex_chart(O, t, k)[0] for k in t.vertices)


# ---------------------------------------------------------------------------
# algorithm A


@dataclass(frozen=True)
class TriangleClass:
    rep: IdealTriangle
    stabilizer_order: int
    rotation: GroupElement | None
    vertex_cusps: tuple[int, int, int]


@dataclass(frozen=True)
class CoarseFundamentalDomain:
    cusp_classes: tuple[CuspData, ...]
    generations: tuple[int, ...]
    d1: int
    triangle_classes: tuple[IdealTriangle, ...]
    domain_triangles: tuple[IdealTriangle, ...]
    classes: tuple[TriangleClass, ...] = field(repr=False)

    def cusp_index(self, O: Origami, k) -> int:
        """Position in ``cusp_classes`` of the class of ``k``."""
        key = cusp_key(O, _check_rational(k))
        for i, cd in enumerate(self.cusp_classes):
            if cusp_key(O, cd.rep) == key:
                return i
        raise KeyError(k)


def _sorted_tris(tris):
    return sorted(set(tris), key=IdealTriangle.sort_key)


def algorithm_A(O: Origami, cap: int = 100) -> CoarseFundamentalDomain:
    """Explore the graph of periodic directions from the horizontal until
    every cusp class has a reference domain.

    ``d1`` is the number of iterations performed; ``cap`` bounds it.
    """
    known: dict[tuple, Slope] = {}

    def fresh(cands):
        out = []
        for k in sorted(set(cands), key=Slope.key):
            ck = cusp_key(O, k)
            if ck in known:
                eq = directions_equivalent(O, known[ck], k)
                assert eq.equivalent
                continue
            known[ck] = k
            out.append(k)
        return out

    d_inf = reference_domain(O, INF)
    known[cusp_key(O, INF)] = INF
    cusps = [d_inf]
    gens = [0]
    domain = list(d_inf.ref_triangles)
    C1 = fresh(d_inf.neighbors)
    n = 0
    while C1:
        if n >= cap:
            raise CapExceeded(f"algorithm A did not stop within {cap} iterations")
        new_domains = []
        for k in C1:
            delta = next(t for t in _sorted_tris(domain) if k in t)
            new_domains.append(reference_domain(O, k, containing=delta))
        cusps += new_domains
        gens += [n + 1] * len(new_domains)
        nhat = [x for cd in new_domains for x in cd.neighbors]
        for cd in new_domains:
            domain += cd.ref_triangles
        C1 = fresh(nhat)
        n += 1
    domain = _sorted_tris(domain)
    keys = [cusp_key(O, cd.rep) for cd in cusps]
    by_key: dict = {}
    for t in domain:
        by_key.setdefault(_triangle_class_key(O, t), t)
    classes = []
    for t in _sorted_tris(by_key.values()):
        order, rot = triangle_stabilizer(O, t)
        vc = tuple(keys.index(cusp_key(O, k)) for k in t.vertices)
        classes.append(TriangleClass(t, order, rot, vc))
    return CoarseFundamentalDomain(
        tuple(cusps),
        tuple(gens),
        n,
        tuple(c.rep for c in classes),
        tuple(domain),
        tuple(classes),
    )


# ---------------------------------------------------------------------------
# algorithm B


@dataclass(frozen=True)
class Generator:
    matrix: GroupElement
    cusp: Slope
    provenance: str

    @property
    def word(self):
        return matrix_to_word(self.matrix)


@dataclass(frozen=True)
class GeneratorSet:
    generators: tuple[Generator, ...]
    iterations: int
    directions: tuple[Slope, ...] = field(repr=False)

    @property
    def matrices(self) -> tuple[GroupElement, ...]:
        return tuple(g.matrix for g in self.generators)

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(word_to_str(g.word) for g in self.generators)


STABILIZER = "stabilizer of cusp"
CHART = "maps inf-class chart"


def algorithm_B(O: Origami, d1: int | None = None) -> GeneratorSet:
    """Generators of the Veech group after ``2 d1 + 1`` iterations.

    Directions equivalent to the horizontal receive a group element moving
    the horizontal reference domain onto a triangle already found; the
    others receive a stabilizer generator.
    """
    if d1 is None:
        d1 = algorithm_A(O).d1
    d_inf = reference_domain(O, INF)
    a_inf = d_inf.period_raw
    ref_inf = set(d_inf.ref_triangles)
    key_inf = cusp_key(O, INF)
    state: dict[Slope, tuple] = {INF: (d_inf.ref_triangles, d_inf.g_k, STABILIZER)}
    for _ in range(2 * d1 + 1):
        J = _sorted_tris(t for v in state.values() for t in v[0])
        new = sorted({k for t in J for k in t.vertices if k not in state}, key=Slope.key)
        for k in new:
            delta = next(t for t in J if k in t)
            if cusp_key(O, k) == key_inf:
                eq = directions_equivalent(O, INF, k)
                g0 = eq.witness
                back = delta.image(g0.inverse())
                p, q = sorted(x.value for x in back.vertices if not x.is_inf)
                g = None
                for j in range(floor(p / a_inf) - 1, floor(q / a_inf) + 2):
                    if back.image(T ** (-j * a_inf)) in ref_inf:
                        g = (g0 * T ** (j * a_inf)).canonical()
                        break
                assert g is not None and g.act(INF) == k and in_veech_group(O, g)
                state[k] = (tuple(t.image(g) for t in d_inf.ref_triangles), g, CHART)
            else:
                cd = reference_domain(O, k, containing=delta)
                state[k] = (cd.ref_triangles, cd.g_k, STABILIZER)
    gens: dict[GroupElement, Generator] = {}
    for k in sorted(state, key=Slope.key):
        _, g, prov = state[k]
        if g.is_identity():
            continue
        assert in_veech_group(O, g)
        gens.setdefault(g, Generator(g, k, prov))
    return GeneratorSet(tuple(gens.values()), 2 * d1 + 1, tuple(sorted(state, key=Slope.key)))


# ---------------------------------------------------------------------------
# the orbit oracle


@dataclass(frozen=True)
class OracleResult:
    index: int
    cosets: tuple[Origami, ...] = field(repr=False)
    s_perm: tuple[int, ...] = field(repr=False)
    t_perm: tuple[int, ...] = field(repr=False)
    cusp_widths: tuple[int, ...]

    @property
    def cusp_count(self) -> int:
        return len(self.cusp_widths)


def oracle_orbit(O: Origami, cap: int = 10**6) -> OracleResult:
    """Orbit of ``O`` up to isomorphism and sign under ``S`` and ``T``.

    Its size is the index of the Veech group in ``PSL(2, Z)``; the cycles of
    ``T`` are the cusps.
    """
    keys = {projective_key(O): 0}
    reps = [O]
    s_perm: list[int] = []
    t_perm: list[int] = []
    i = 0
    while i < len(reps):
        X = reps[i]
        for op, perm in ((rotate, s_perm), (shear, t_perm)):
            Y = op(X)
            ky = projective_key(Y)
            j = keys.get(ky)
            if j is None:
                if len(reps) >= cap:
                    raise OrbitCapExceeded(f"orbit exceeds {cap} elements")
                j = keys[ky] = len(reps)
                reps.append(Y)
            perm.append(j)
        i += 1
    seen = [False] * len(reps)
    widths = []
    for s in range(len(reps)):
        if not seen[s]:
            w, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = t_perm[x]
                w += 1
            widths.append(w)
    return OracleResult(len(reps), tuple(reps), tuple(s_perm), tuple(t_perm), tuple(widths))


# ---------------------------------------------------------------------------
# coset enumeration


@dataclass(frozen=True)
class Unbounded:
    """Report that coset enumeration hit its cap."""

    cap: int

    def __str__(self) -> str:
        return "Unbounded"


_GENS = {"S": 0, "T": 1, "t": 2}
_INV = (0, 2, 1)
_RELATORS = ((0, 0), (0, 1, 0, 1, 0, 1))


def _as_letters(w) -> list[int]:
    if isinstance(w, GroupElement):
        w = matrix_to_word(w)
    if isinstance(w, str):
        from .core import parse_word

        w = parse_word(w)
    return [_GENS[x] for x in expand_word(w)]


def coset_enumeration(subgroup_words, cap: int = 10**6):
    """Index of the subgroup generated by ``subgroup_words`` in
    ``PSL(2, Z) = <S, T | S^2, (S T)^3>`` by Todd-Coxeter (HLT with
    coincidence processing), or :class:`Unbounded` after ``cap`` cosets.

    Words are syllable tuples, word strings, or group elements.
    """
    table: list[list[int | None]] = [[None, None, None]]
    parent = [0]
    defined = [1]

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def define(c, x):
        if defined[0] >= cap:
            raise _Overflow
        d = len(table)
        table.append([None, None, None])
        parent.append(d)
        defined[0] += 1
        table[c][x] = d
        table[d][_INV[x]] = c

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a == b:
            return
        if b < a:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(3):
                f = table[e][x]
                if f is None:
                    continue
                if table[f][_INV[x]] == e:
                    table[f][_INV[x]] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][_INV[x]] is not None:
                    merge(e1, table[f1][_INV[x]], queue)
                else:
                    table[e1][x] = f1
                    table[f1][_INV[x]] = e1

    def scan_and_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][_INV[w[j]]] is not None:
                b = table[b][_INV[w[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][_INV[w[i]]] = f
                return
            define(f, w[i])

    words = [_as_letters(w) for w in subgroup_words]
    try:
        for w in words:
            if w:
                scan_and_fill(0, w)
        c = 0
        while c < len(table):
            if parent[c] == c:
                for r in _RELATORS:
                    scan_and_fill(c, r)
                    if parent[c] != c:
                        break
                if parent[c] == c:
                    for x in range(3):
                        if table[c][x] is None:
                            define(c, x)
            c += 1
    except _Overflow:
        return Unbounded(cap)
    return sum(1 for c in range(len(table)) if parent[c] == c)


class _Overflow(Exception):
    pass


# ---------------------------------------------------------------------------
# volume


@dataclass(frozen=True)
class VolumeReport:
    index: int
    triangle_classes: int
    vol_over_pi: Fraction
    bound_ok: bool

    def __str__(self) -> str:
        v = self.vol_over_pi
        return (
            f"index={self.index} vol={v}*pi <= {self.triangle_classes}*pi "
            f"{'ok' if self.bound_ok else 'VIOLATED'}"
        )


def volume_report(O: Origami, domain: CoarseFundamentalDomain | None = None, oracle=None) -> VolumeReport:
    """Volume ``(pi / 3) index`` of the quotient against ``pi`` times the
    number of triangle classes."""
    domain = domain or algorithm_A(O)
    oracle = oracle or oracle_orbit(O)
    nt = len(domain.triangle_classes)
    return VolumeReport(oracle.index, nt, Fraction(oracle.index, 3), oracle.index <= 3 * nt)
