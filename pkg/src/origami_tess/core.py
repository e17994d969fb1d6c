"""Square-tiled surfaces, their vertices, canonical labelings and the
action of the modular group.

An origami with ``n`` squares is stored with squares labelled ``0..n-1``;
``h[i]`` is the square to the right of ``i`` and ``v[i]`` the square on top.
Marked points are stored per square: ``mark[i]`` tells whether the
bottom-left corner of square ``i`` is a marked point.  Every vertex of the
surface is the bottom-left corner of at least one square, so this encodes
the marked set exactly and is invariant under relabelling.

User facing input and output (cycle notation, corner references) is
1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from ._native import canonical_code

__all__ = [
    "DomainError",
    "BadPermutation",
    "Disconnected",
    "EmptyMarking",
    "IrrationalDirection",
    "ParseError",
    "parse_cycles",
    "Origami",
    "VertexClass",
    "GroupElement",
    "Slope",
    "INF",
    "S",
    "T",
    "I",
    "build_origami",
    "vertex_classes",
    "canonical_form",
    "is_isomorphic",
    "is_projectively_isomorphic",
    "projective_key",
    "apply_matrix",
    "matrix_to_word",
    "direction_normalizer",
    "word_product",
    "word_to_str",
    "parse_word",
    "expand_word",
    "perm_from_cycles",
    "perm_to_cycles",
    "slope",
    "parse_slope",
    "qstr",
]


class DomainError(ValueError):
    """Base class for errors caused by mathematically invalid input."""


class BadPermutation(DomainError):
    pass


class Disconnected(DomainError):
    pass


class EmptyMarking(DomainError):
    pass


class IrrationalDirection(DomainError):
    pass


class ParseError(DomainError):
    """Malformed origami text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def parse_cycles(text: str, line: int = 1, column: int = 1) -> list[list[int]]:
    """Parse cycle notation like ``(1 2)(3 4 5)``; whitespace is ignored.

    ``()`` is the identity.  Entries may also be separated by commas.
    """
    cycles: list[list[int]] = []
    cur: list[int] | None = None
    i = 0
    L = len(text)
    while i < L:
        ch = text[i]
        if ch.isspace() or (ch == "," and cur is not None):
            i += 1
        elif ch == "(":
            if cur is not None:
                raise ParseError("nested parenthesis", line, column + i)
            cur = []
            i += 1
        elif ch == ")":
            if cur is None:
                raise ParseError("unmatched ')'", line, column + i)
            if cur:
                cycles.append(cur)
            cur = None
            i += 1
        elif ch.isdigit():
            if cur is None:
                raise ParseError("number outside a cycle", line, column + i)
            j = i
            while j < L and text[j].isdigit():
                j += 1
            cur.append(int(text[i:j]))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", line, column + i)
    if cur is not None:
        raise ParseError("unbalanced parenthesis", line, column + L)
    return cycles


CORNER_NAMES = ("bl", "br", "tr", "tl")


def qstr(x) -> str:
    """Render a rational as ``p/q``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# permutations


def _check_perm(p: Sequence[int], n: int, name: str) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if len(p) != n or sorted(p) != list(range(n)):
        raise BadPermutation(f"{name} is not a permutation of 1..{n}")
    return p


def perm_from_cycles(cycles, n: int, name: str = "permutation") -> tuple[int, ...]:
    """Build a 0-based image tuple from 1-based cycles.

    ``cycles`` is either cycle notation such as ``"(1 2)(3)"`` or a list of
    lists.  Omitted points are fixed.
    """
    if isinstance(cycles, str):
        cycles = parse_cycles(cycles)
    img = list(range(n))
    seen: set[int] = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if not 1 <= x <= n:
                raise BadPermutation(f"{name}: entry {x} outside 1..{n}")
            if x in seen:
                raise BadPermutation(f"{name}: entry {x} repeated")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def perm_to_cycles(p: Sequence[int], fixed: bool = False) -> list[list[int]]:
    """1-based cycles of a 0-based permutation, each starting at its minimum."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p[j]
        if len(cyc) > 1 or fixed:
            out.append(cyc)
    return out


def perm_power(p: Sequence[int], k: int) -> tuple[int, ...]:
    """``p`` composed with itself ``k`` times (``k`` may be negative)."""
    out = [0] * len(p)
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        m = len(cyc)
        for t, x in enumerate(cyc):
            out[x] = cyc[(t + k) % m]
    return tuple(out)


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    q = [0] * len(p)
    for i, x in enumerate(p):
        q[x] = i
    return tuple(q)


# ---------------------------------------------------------------------------
# slopes


class Slope(NamedTuple):
    """Slope ``x/y`` of a holonomy vector, stored primitive with ``y >= 0``.

    The horizontal direction is ``Slope(1, 0)`` and stands for infinity.
    """

    x: int
    y: int

    @property
    def is_inf(self) -> bool:
        return self.y == 0

    @property
    def value(self) -> Fraction | None:
        return None if self.y == 0 else Fraction(self.x, self.y)

    def key(self):
        """Sort key: finite slopes by value, infinity last."""
        return (1, Fraction(0)) if self.y == 0 else (0, Fraction(self.x, self.y))

    def __str__(self) -> str:
        return "inf" if self.y == 0 else f"{self.x}/{self.y}"

    def vector(self) -> tuple[int, int]:
        return (self.x, self.y)


INF = Slope(1, 0)


def slope(x: int, y: int) -> Slope:
    """Slope of the holonomy vector ``(x, y)``."""
    if x == 0 and y == 0:
        raise ValueError("zero vector has no slope")
    g = gcd(x, y)
    x, y = x // g, y // g
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    return Slope(x, y)


def parse_slope(text) -> Slope:
    """Parse ``inf``, ``p/q``, an integer or a decimal into a slope."""
    if isinstance(text, Slope):
        return text
    if isinstance(text, Fraction):
        return slope(text.numerator, text.denominator)
    if isinstance(text, int):
        return slope(text, 1)
    s = str(text).strip().lower()
    if s in ("inf", "infinity", "oo", "∞"):
        return INF
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        if "/" in s:
            num, den = s.split("/", 1)
            if den.strip() == "0" and num.strip() not in ("", "0"):
                return INF
        raise ValueError(f"not a rational slope: {text!r}") from exc
    return slope(q.numerator, q.denominator)


# ---------------------------------------------------------------------------
# matrices


class GroupElement:
    """Integer 2x2 matrix of determinant 1 viewed in PSL(2,Z).

    The stored entries are exact (the sign matters for the action on
    origamis); equality and hashing are projective.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        if a * d - b * c != 1:
            raise ValueError(f"determinant of [[{a},{b}],[{c},{d}]] is not 1")
        self.a, self.b, self.c, self.d = int(a), int(b), int(c), int(d)

    @classmethod
    def from_rows(cls, rows) -> "GroupElement":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def canonical(self) -> "GroupElement":
        """Representative whose first nonzero entry is positive."""
        for e in self.entries():
            if e:
                return self if e > 0 else -self
        raise AssertionError("zero matrix")

    def rows(self) -> list[list[int]]:
        g = self.canonical()
        return [[g.a, g.b], [g.c, g.d]]

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = I
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def __eq__(self, o) -> bool:
        if not isinstance(o, GroupElement):
            return NotImplemented
        return self.canonical().entries() == o.canonical().entries()

    def exactly_equal(self, o: "GroupElement") -> bool:
        return self.entries() == o.entries()

    def __hash__(self) -> int:
        return hash(self.canonical().entries())

    def __repr__(self) -> str:
        return f"GroupElement([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def is_identity(self) -> bool:
        return self == I

    def trace(self) -> int:
        return self.a + self.d

    def act_vector(self, x: int, y: int) -> tuple[int, int]:
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def act(self, k: Slope) -> Slope:
        """Image of a slope (Moebius action on the boundary of H)."""
        return slope(*self.act_vector(k.x, k.y))

    def act_point(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)


def direction_normalizer(k: Slope) -> GroupElement:
    """Integer matrix of determinant 1 sending the primitive vector of ``k``
    to ``(1, 0)``.

    Among the Bezout solutions the one with the smallest ``|b|`` (top-right
    entry) is taken, ties broken by smallest ``|a|`` and then larger ``b``.
    """
    p, q = k.x, k.y
    g, a0, b0 = _ext_gcd(p, q)
    assert g == 1
    if p == 0:
        a, b = 0, b0
    else:
        t0 = b0 // p
        best = None
        for t in (t0 - 1, t0, t0 + 1, t0 + 2):
            a, b = a0 + t * q, b0 - t * p
            cand = (abs(b), abs(a), -b)
            if best is None or cand < best[0]:
                best = (cand, a, b)
        _, a, b = best
    return GroupElement(a, b, -q, p)


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """``(g, a, b)`` with ``a x + b y = g = gcd(x, y) >= 0``."""
    a0, b0, a1, b1 = 1, 0, 0, 1
    while y:
        q, r = divmod(x, y)
        x, y = y, r
        a0, a1 = a1, a0 - q * a1
        b0, b1 = b1, b0 - q * b1
    if x < 0:
        x, a0, b0 = -x, -a0, -b0
    return x, a0, b0


I = GroupElement(1, 0, 0, 1)
S = GroupElement(0, -1, 1, 0)
T = GroupElement(1, 1, 0, 1)

_GEN = {"S": S, "T": T}

# A word is a tuple of syllables (letter, exponent) with letter in "ST".
Word = tuple


def word_product(word: Iterable[tuple[str, int]]) -> GroupElement:
    g = I
    for letter, e in word:
        g = g * (_GEN[letter] ** e)
    return g


def _simplify(syl: list[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for letter, e in syl:
        if e == 0:
            continue
        if out and out[-1][0] == letter:
            e2 = out[-1][1] + e
            out.pop()
            if e2:
                out.append((letter, e2))
        else:
            out.append((letter, e))
    return tuple(out)


def matrix_to_word(g: GroupElement) -> tuple[tuple[str, int], ...]:
    """Continued-fraction decomposition of ``g`` over S and T.

    Returns syllables ``(letter, exponent)``; the product equals ``g`` or
    ``-g``.  The number of syllables is linear in the length of the
    continued fraction of ``a/c``.
    """
    a, b, c, d = g.entries()
    syl: list[tuple[str, int]] = []
    while c != 0:
        q = a // c
        syl.append(("T", q))
        syl.append(("S", 1))
        a, b = a - q * c, b - q * d
        a, b, c, d = c, d, -a, -b
    syl.append(("T", a * b))
    return _simplify(syl)


def expand_word(word) -> list[str]:
    """Letters over ``S``, ``T``, ``t`` (``t`` is the inverse of ``T``).

    ``S`` has order two projectively so negative powers of ``S`` expand to
    ``S``.
    """
    out: list[str] = []
    for letter, e in word:
        if letter == "S":
            out.extend("S" * (abs(e) % 2))
        else:
            out.extend(("T" if e > 0 else "t") * abs(e))
    return out


def word_to_str(word) -> str:
    parts = []
    for letter, e in word:
        parts.append(letter if e == 1 else f"{letter}^{e}")
    return " ".join(parts) if parts else "1"


def parse_word(text: str) -> tuple[tuple[str, int], ...]:
    """Inverse of :func:`word_to_str`; also accepts ``t`` for ``T^-1``."""
    syl = []
    for tok in text.replace("*", " ").replace("·", " ").split():
        if tok == "1":
            continue
        letter, _, exp = tok.partition("^")
        if letter == "t":
            letter, sign = "T", -1
        else:
            sign = 1
        if letter not in _GEN:
            raise ValueError(f"bad word token {tok!r}")
        syl.append((letter, sign * (int(exp) if exp else 1)))
    return _simplify(syl)


# ---------------------------------------------------------------------------
# origamis


@dataclass(frozen=True)
class VertexClass:
    id: int
    corners: tuple[tuple[int, int], ...]
    angle_pi: int
    marked: bool

    @property
    def cone_angle(self) -> float:
        from math import pi

        return self.angle_pi * pi

    @property
    def angle_multiple(self) -> int:
        """Cone angle divided by 2 pi."""
        return self.angle_pi // 2

    @property
    def squares(self) -> tuple[int, ...]:
        """Squares having this vertex as bottom-left corner."""
        return tuple(s for s, c in self.corners if c == 0)


class Origami:
    """Immutable origami with marked points.  See the module docstring."""

    __slots__ = ("n", "h", "v", "mark", "__dict__")

    def __init__(self, h: Sequence[int], v: Sequence[int], mark: Sequence[bool]):
        self.n = len(h)
        self.h = tuple(h)
        self.v = tuple(v)
        self.mark = tuple(bool(x) for x in mark)

    # derived permutations -------------------------------------------------
    @cached_property
    def hi(self) -> tuple[int, ...]:
        return _inverse(self.h)

    @cached_property
    def vi(self) -> tuple[int, ...]:
        return _inverse(self.v)

    @cached_property
    def commutator(self) -> tuple[int, ...]:
        """Counter-clockwise full turn around the bottom-left corner."""
        h, v, hi, vi = self.h, self.v, self.hi, self.vi
        return tuple(v[h[vi[hi[i]]]] for i in range(self.n))

    def corner_square(self, s: int, corner: int) -> int:
        """Square whose bottom-left corner is the given corner of ``s``."""
        if corner == 0:
            return s
        if corner == 1:
            return self.h[s]
        if corner == 2:
            return self.v[self.h[s]]
        if corner == 3:
            return self.v[s]
        raise ValueError("corner must be 0..3")

    def corner_marked(self, s: int, corner: int) -> bool:
        return self.mark[self.corner_square(s, corner)]

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Vertex class id of the bottom-left corner of each square."""
        vid = [-1] * self.n
        c = self.commutator
        k = 0
        for i in range(self.n):
            if vid[i] >= 0:
                continue
            j = i
            while vid[j] < 0:
                vid[j] = k
                j = c[j]
            k += 1
        return tuple(vid)

    @cached_property
    def vertex_classes(self) -> tuple[VertexClass, ...]:
        c = self.commutator
        h, hi, vi = self.h, self.hi, self.vi
        out = []
        vid = self.vertex_of
        for k in range(max(vid) + 1):
            s0 = vid.index(k)
            corners = []
            s = s0
            while True:
                nw = hi[s]
                sw = vi[nw]
                se = h[sw]
                corners += [(s, 0), (nw, 1), (sw, 2), (se, 3)]
                s = c[s]
                if s == s0:
                    break
            out.append(VertexClass(k, tuple(corners), len(corners) // 2, self.mark[s0]))
        return tuple(out)

    @property
    def marked_classes(self) -> frozenset[int]:
        return frozenset(vc.id for vc in self.vertex_classes if vc.marked)

    @property
    def genus(self) -> int:
        nv = len(self.vertex_classes)
        return (2 - nv + self.n) // 2

    @cached_property
    def stratum(self) -> tuple[int, ...]:
        """Zero orders of the marked points (angle/2pi - 1), decreasing."""
        return tuple(sorted((vc.angle_multiple - 1 for vc in self.vertex_classes if vc.marked), reverse=True))

    # equality -------------------------------------------------------------
    def key(self):
        return (self.h, self.v, self.mark)

    def __eq__(self, o) -> bool:
        return isinstance(o, Origami) and self.key() == o.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return (
            f"Origami(n={self.n}, h={_cyc_str(self.h)}, v={_cyc_str(self.v)}, "
            f"marked={sorted(self.marked_classes)})"
        )

    # convenience -----------------------------------------------------------
    def h_cycles(self) -> list[list[int]]:
        return perm_to_cycles(self.h, fixed=True)

    def relabel(self, sigma: Sequence[int]) -> "Origami":
        """Origami with square ``i`` renamed ``sigma[i]``."""
        n = self.n
        h = [0] * n
        v = [0] * n
        m = [False] * n
        for i in range(n):
            h[sigma[i]] = sigma[self.h[i]]
            v[sigma[i]] = sigma[self.v[i]]
            m[sigma[i]] = self.mark[i]
        return Origami(h, v, m)


def _cyc_str(p) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in perm_to_cycles(p)) or "()"


def _is_transitive(h, v) -> bool:
    n = len(h)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in (h[i], v[i]):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _corner_code(c) -> int:
    if isinstance(c, str):
        c = c.strip().lower()
        if c in CORNER_NAMES:
            return CORNER_NAMES.index(c)
        c = int(c)
    if c not in (0, 1, 2, 3):
        raise EmptyMarking(f"bad corner {c!r}")
    return int(c)


def build_origami(n: int, h, v, marking="singular") -> Origami:
    """Validate permutations and resolve a marking into an :class:`Origami`.

    ``h`` and ``v`` may be cycle strings, lists of 1-based cycles, or
    1-based image sequences of length ``n``.  ``marking`` is ``"singular"``, ``"all"`` or a list
    of ``(square, corner)`` pairs with 1-based squares and corners given as
    ``0..3`` or ``bl/br/tr/tl``.
    """
    if not isinstance(n, int) or n < 1:
        raise BadPermutation("n must be a positive integer")

    def conv(p, name):
        if isinstance(p, str):
            return perm_from_cycles(p, n, name)
        p = list(p)
        if all(isinstance(c, (list, tuple)) for c in p):
            return perm_from_cycles(p, n, name)
        return _check_perm([int(x) - 1 for x in p], n, name)

    h = conv(h, "h")
    v = conv(v, "v")
    if not _is_transitive(h, v):
        raise Disconnected("h and v do not act transitively")
    base = Origami(h, v, [False] * n)
    classes = base.vertex_classes
    vid = base.vertex_of
    if isinstance(marking, str) and marking == "all":
        chosen = {vc.id for vc in classes}
    elif isinstance(marking, str) and marking == "singular":
        chosen = {vc.id for vc in classes if vc.angle_pi > 2}
        if not chosen:
            chosen = {0}
    elif isinstance(marking, str):
        raise EmptyMarking(f"unknown marking {marking!r}")
    else:
        chosen = set()
        for item in marking:
            sq, corner = item
            sq = int(sq)
            if not 1 <= sq <= n:
                raise EmptyMarking(f"square {sq} outside 1..{n}")
            chosen.add(vid[base.corner_square(sq - 1, _corner_code(corner))])
        if not chosen:
            raise EmptyMarking("marking resolves to no vertex")
        chosen |= {vc.id for vc in classes if vc.angle_pi != 2}
    return Origami(h, v, [vid[i] in chosen for i in range(n)])


def vertex_classes(O: Origami) -> tuple[VertexClass, ...]:
    return O.vertex_classes


# ---------------------------------------------------------------------------
# canonical forms


def canonical_form(O: Origami) -> tuple[Origami, tuple[int, ...]]:
    """Canonical representative of the translation-isomorphism class.

    Returns the canonical origami and the relabelling ``sigma`` with
    ``O.relabel(sigma) == canonical``.
    """
    code, start = canonical_code(O.h, O.v, O.mark)
    n = O.n
    order = _bfs_order(O, start)
    sigma = [0] * n
    for new, old in enumerate(order):
        sigma[old] = new
    C = Origami(code[:n], code[n : 2 * n], code[2 * n :])
    return C, tuple(sigma)


def _bfs_order(O: Origami, start: int) -> list[int]:
    lab = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        x = order[i]
        for y in (O.h[x], O.v[x]):
            if y not in lab:
                lab[y] = len(order)
                order.append(y)
        i += 1
    return order


def canonical(O: Origami) -> Origami:
    return canonical_form(O)[0]


def is_isomorphic(O1: Origami, O2: Origami) -> bool:
    if O1.n != O2.n or sorted(O1.mark) != sorted(O2.mark):
        return False
    return canonical_code(O1.h, O1.v, O1.mark)[0] == canonical_code(O2.h, O2.v, O2.mark)[0]


def projective_key(O: Origami) -> tuple:
    """Invariant of ``{O, -I.O}``: equal keys iff projectively isomorphic."""
    c1 = canonical_code(O.h, O.v, O.mark)[0]
    R = rotate_half(O)
    c2 = canonical_code(R.h, R.v, R.mark)[0]
    return min(c1, c2)


def is_projectively_isomorphic(O1: Origami, O2: Origami) -> bool:
    """True iff ``O2`` is isomorphic to ``O1`` or to its half-turn."""
    if O1.n != O2.n:
        return False
    c2 = canonical_code(O2.h, O2.v, O2.mark)[0]
    if canonical_code(O1.h, O1.v, O1.mark)[0] == c2:
        return True
    R = rotate_half(O1)
    return canonical_code(R.h, R.v, R.mark)[0] == c2


# ---------------------------------------------------------------------------
# the SL(2,Z) action


def shear(O: Origami, k: int = 1) -> Origami:
    """Action of ``T^k``: new top neighbour of ``i`` is ``v(h^-k(i))``."""
    p = perm_power(O.h, -k)
    v = O.v
    return Origami(O.h, [v[p[i]] for i in range(O.n)], O.mark)


def rotate(O: Origami) -> Origami:
    """Action of ``S`` (quarter turn counter-clockwise)."""
    vi, h, v, m = O.vi, O.h, O.v, O.mark
    return Origami(vi, h, [m[v[i]] for i in range(O.n)])


def rotate_half(O: Origami) -> Origami:
    """Action of ``-I``."""
    h, v, m = O.h, O.v, O.mark
    return Origami(O.hi, O.vi, [m[v[h[i]]] for i in range(O.n)])


def apply_word(O: Origami, word) -> Origami:
    """Apply the product of ``word`` (rightmost syllable acts first)."""
    for letter, e in reversed(tuple(word)):
        if letter == "T":
            O = shear(O, e)
        else:
            for _ in range(e % 4):
                O = rotate(O)
    return O


def apply_matrix(O: Origami, g: GroupElement) -> Origami:
    """Origami of ``g . O`` for the exact matrix ``g`` (sign included)."""
    word = matrix_to_word(g)
    out = apply_word(O, word)
    if not word_product(word).exactly_equal(g):
        out = rotate_half(out)
    return out
