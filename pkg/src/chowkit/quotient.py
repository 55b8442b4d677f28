"""The rational Chow ring of Y_n as a graded quotient ring.

For n = 2m + 1::

    Q[c1, c2] / (d_{m-1}, c2^2 d_{m-2})

and for n = 2m::

    Q[c1, c2, chi] / (c2 chi, chi^2 - d_{m-2}, d_{m-1}),   |chi| = 2m - 4.

Each degree gets a canonical monomial basis (the c1-truncated towers on
c2^(2i), c2^(2i+1), plus chi-monomials for even n) and a reduction table
sending every monomial of that degree to canonical coordinates.  The
reduction is plain row echelon of the span of {monomial * relation}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import classes
from .arith import GradedPoly, Monomial, monomial_sort_key
from .lattice import rank_mod_p, rref

MIN_N = 6


def split_n(n: int) -> Tuple[int, bool]:
    """Return (m, even) with n = 2m or n = 2m + 1."""
    return n // 2, n % 2 == 0


def monomials_of_degree(deg: int, chi_deg: Optional[int]) -> List[Monomial]:
    """All c1^a c2^b chi^e of the given degree, sorted canonically."""
    out = []
    if deg < 0 or deg % 2:
        return out
    emax = deg // chi_deg if chi_deg else 0
    for e in range(emax + 1):
        rest = deg - e * (chi_deg or 0)
        for b in range(rest // 4 + 1):
            a2 = rest - 4 * b
            out.append((a2 // 2, b, e))
    return sorted(out, key=monomial_sort_key)


def relations(n: int) -> List[GradedPoly]:
    m, even = split_n(n)
    if even:
        c2, chi = GradedPoly.c2(m), GradedPoly.chi(m)
        return [c2 * chi, chi * chi - classes.d(m - 2, m), classes.d(m - 1, m)]
    c2 = GradedPoly.c2()
    return [classes.d(m - 1), c2 * c2 * classes.d(m - 2)]


def canonical_monomials(n: int) -> List[Monomial]:
    """Monomial basis of the localized module structure, sorted by (degree, order)."""
    m, even = split_n(n)
    out: List[Monomial] = []
    if even:
        for a in range(2 * (m - 1)):
            out.append((a, 0, 0))
            out.append((a, 0, 1))
        for i in range(1, m - 1):
            for b in (2 * i - 1, 2 * i):
                out.extend((a, b, 0) for a in range(2 * (m - 1 - i)))
    else:
        for i in range(m - 1):
            for b in (2 * i, 2 * i + 1):
                out.extend((a, b, 0) for a in range(2 * (m - 1 - i)))
    return out


def expected_total_rank(n: int) -> int:
    m, _ = split_n(n)
    return 2 * m * (m - 1)


def _poly_vector(p: GradedPoly, monos: Sequence[Monomial]) -> List[Fraction]:
    index = {mono: i for i, mono in enumerate(monos)}
    vec = [Fraction(0)] * len(monos)
    for mono, c in p.items():
        vec[index[mono]] += c
    return vec


def ideal_span(rels: Sequence[GradedPoly], deg: int, chi_deg: Optional[int]) -> List[GradedPoly]:
    """Spanning set of the degree-``deg`` part of the ideal generated by ``rels``."""
    out = []
    for r in rels:
        rd = r.degrees()
        if not rd:
            continue
        (rdeg,) = rd
        for mono in monomials_of_degree(deg - rdeg, chi_deg):
            out.append(GradedPoly({mono: 1}, r.m) * r)
    return out


def presentation_dims(
    rels: Sequence[GradedPoly], chi_deg: Optional[int], max_deg: int, p: Optional[int] = None
) -> Dict[int, int]:
    """Dimension per degree of (polynomial ring)/(rels) over Q (p=None) or Z/p."""
    dims = {}
    for deg in range(0, max_deg + 1, 2):
        monos = monomials_of_degree(deg, chi_deg)
        rows = [_poly_vector(g, monos) for g in ideal_span(rels, deg, chi_deg)]
        if p is None:
            r = len(rref(rows, len(monos))[1]) if rows else 0
        else:
            for row in rows:
                if any(x.denominator != 1 for x in row):
                    raise ValueError("relations must be integral for a mod-p count")
            r = rank_mod_p([[int(x) for x in row] for row in rows], p, len(monos)) if rows else 0
        dims[deg] = len(monos) - r
    return dims


class QuotientRing:
    """Graded Q-algebra CH(Y_n) (x) Q with canonical bases and normal forms."""

    def __init__(self, n: int):
        if n < MIN_N:
            raise ValueError(f"n must be at least {MIN_N}, got {n}")
        self.n = n
        self.m, self.even = split_n(n)
        self.chi_deg: Optional[int] = 2 * self.m - 4 if self.even else None
        self.relations = relations(n)
        canon = canonical_monomials(n)
        self.basis: Dict[int, List[Monomial]] = {}
        for mono in canon:
            self.basis.setdefault(self.mono_degree(mono), []).append(mono)
        for deg in self.basis:
            self.basis[deg].sort(key=monomial_sort_key)
        self.top_degree = max(self.basis)
        self._index = {deg: {mono: i for i, mono in enumerate(ms)} for deg, ms in self.basis.items()}
        self._reduction: Dict[int, Dict[Monomial, Tuple[Fraction, ...]]] = {}
        for deg in range(0, self.top_degree + 1, 2):
            self._reduction[deg] = self._build_reduction(deg)
        # above the top degree the quotient must vanish; a window of the
        # largest generator degree suffices because every monomial of
        # higher degree is a multiple of one inside the window
        window = max(4, self.chi_deg or 0)
        for deg in range(self.top_degree + 2, self.top_degree + window + 1, 2):
            if self._build_reduction(deg, expect_zero=True):
                raise AssertionError(f"quotient does not vanish in degree {deg}")
        self._prod_cache: Dict[Tuple[Monomial, Monomial], Tuple[int, Tuple[Fraction, ...]]] = {}

    # -- structure ---------------------------------------------------------

    def mono_degree(self, mono: Monomial) -> int:
        a, b, e = mono
        return 2 * a + 4 * b + e * (self.chi_deg or 0)

    def degrees(self) -> List[int]:
        return sorted(self.basis)

    def dim(self, deg: int) -> int:
        return len(self.basis.get(deg, []))

    @property
    def total_rank(self) -> int:
        return sum(len(v) for v in self.basis.values())

    def dims(self) -> Dict[int, int]:
        return {deg: self.dim(deg) for deg in range(0, self.top_degree + 1, 2)}

    def _build_reduction(self, deg: int, expect_zero: bool = False):
        monos = monomials_of_degree(deg, self.chi_deg)
        if not monos:
            return {}
        canon = [] if expect_zero else self.basis.get(deg, [])
        canon_set = set(canon)
        others = [mono for mono in monos if mono not in canon_set]
        order = others + list(canon)
        rows = [_poly_vector(g, order) for g in ideal_span(self.relations, deg, self.chi_deg)]
        ech, piv = rref(rows, len(order)) if rows else ([], [])
        if expect_zero:
            return len(piv) != len(monos)
        if piv != list(range(len(others))):
            raise AssertionError(
                f"degree {deg}: canonical monomials are not a complement of the relation span"
            )
        k = len(others)
        table: Dict[Monomial, Tuple[Fraction, ...]] = {}
        for r, mono in enumerate(others):
            table[mono] = tuple(-x for x in ech[r][k:])
        for i, mono in enumerate(canon):
            table[mono] = tuple(Fraction(int(i == j)) for j in range(len(canon)))
        return table

    # -- elements ----------------------------------------------------------

    def zero(self) -> "RingElem":
        return RingElem(self, {})

    def one(self) -> "RingElem":
        return self.normal_form(GradedPoly.const(1, self.m if self.even else None))

    def basis_element(self, deg: int, i: int) -> "RingElem":
        vec = [Fraction(0)] * self.dim(deg)
        vec[i] = Fraction(1)
        return RingElem(self, {deg: tuple(vec)})

    def reduce_monomial(self, mono: Monomial) -> Tuple[int, Optional[Tuple[Fraction, ...]]]:
        deg = self.mono_degree(mono)
        if mono[2] and not self.even:
            raise ValueError("chi only exists for even n")
        if deg > self.top_degree:
            return deg, None
        return deg, self._reduction[deg][mono]

    def normal_form(self, p: GradedPoly) -> "RingElem":
        if p.has_chi() and not self.even:
            raise ValueError("chi only exists for even n")
        out: Dict[int, List[Fraction]] = {}
        for mono, c in p.items():
            deg, vec = self.reduce_monomial(mono)
            if vec is None:
                continue
            acc = out.setdefault(deg, [Fraction(0)] * len(vec))
            for j, x in enumerate(vec):
                if x:
                    acc[j] += c * x
        return RingElem(self, {deg: tuple(v) for deg, v in out.items()})

    def element(self, p) -> "RingElem":
        if isinstance(p, RingElem):
            return p
        if isinstance(p, GradedPoly):
            return self.normal_form(p)
        return self.normal_form(GradedPoly.const(p))

    def lift(self, x: "RingElem") -> GradedPoly:
        """Canonical polynomial representative."""
        terms = {}
        for deg, vec in x.parts.items():
            for mono, c in zip(self.basis[deg], vec):
                if c:
                    terms[mono] = c
        return GradedPoly(terms, self.m if self.even else None)

    def _mono_product(self, u: Monomial, w: Monomial):
        key = (u, w) if u <= w else (w, u)
        hit = self._prod_cache.get(key)
        if hit is None:
            hit = self.reduce_monomial((u[0] + w[0], u[1] + w[1], u[2] + w[2]))
            self._prod_cache[key] = hit
        return hit

    def mul(self, x: "RingElem", y: "RingElem") -> "RingElem":
        out: Dict[int, List[Fraction]] = {}
        for d1, v1 in x.parts.items():
            b1 = self.basis[d1]
            for d2, v2 in y.parts.items():
                if d1 + d2 > self.top_degree:
                    continue
                b2 = self.basis[d2]
                acc = out.setdefault(d1 + d2, [Fraction(0)] * self.dim(d1 + d2))
                for i, u in enumerate(v1):
                    if not u:
                        continue
                    for j, w in enumerate(v2):
                        if not w:
                            continue
                        _, vec = self._mono_product(b1[i], b2[j])
                        uw = u * w
                        for k, z in enumerate(vec):
                            if z:
                                acc[k] += uw * z
        return RingElem(self, {deg: tuple(v) for deg, v in out.items()})

    # -- named classes ---------------------------------------------------------

    def _ctx(self) -> Optional[int]:
        return self.m if self.even else None

    def c1(self) -> "RingElem":
        return self.normal_form(GradedPoly.c1(self._ctx()))

    def c2(self) -> "RingElem":
        return self.normal_form(GradedPoly.c2(self._ctx()))

    def chi(self) -> "RingElem":
        if not self.even:
            raise ValueError("chi only exists for even n")
        return self.normal_form(GradedPoly.chi(self.m))

    def b(self, k: int) -> "RingElem":
        return self.normal_form(classes.b(k, self._ctx()))

    def d(self, k: int) -> "RingElem":
        return self.normal_form(classes.d(k, self._ctx()))

    def v_class_polys(self) -> List[Tuple[int, GradedPoly]]:
        """(degree, polynomial) for the two half-integral classes, lower degree first."""
        m = self.m
        if self.even:
            chi = GradedPoly.chi(m)
            return [
                (2 * m - 4, (chi - classes.b(m - 2, m)) / 2),
                (2 * m - 2, classes.b(m - 1, m) / 2),
            ]
        return [
            (2 * m - 2, classes.b(m - 1) / 2),
            (2 * m, GradedPoly.c2() * classes.b(m - 2) / 2),
        ]

    def v_classes(self) -> List["RingElem"]:
        return [self.normal_form(p) for _, p in self.v_class_polys()]

    def v_degrees(self) -> List[int]:
        return [deg for deg, _ in self.v_class_polys()]


class RingElem:
    """Element of a QuotientRing in canonical coordinates, stored per degree."""

    __slots__ = ("ring", "parts")

    def __init__(self, ring: QuotientRing, parts: Mapping[int, Sequence[Fraction]]):
        self.ring = ring
        self.parts: Dict[int, Tuple[Fraction, ...]] = {
            deg: tuple(Fraction(x) for x in vec) for deg, vec in parts.items() if any(vec)
        }

    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self) -> List[int]:
        return sorted(self.parts)

    def is_homogeneous(self) -> bool:
        return len(self.parts) <= 1

    def degree(self) -> Optional[int]:
        if not self.parts:
            return None
        if len(self.parts) > 1:
            raise ValueError("inhomogeneous element")
        return next(iter(self.parts))

    def coords(self, deg: int) -> Tuple[Fraction, ...]:
        return self.parts.get(deg, tuple(Fraction(0) for _ in range(self.ring.dim(deg))))

    def _combine(self, other: "RingElem", sign: int) -> "RingElem":
        other = self.ring.element(other)
        out = {deg: list(v) for deg, v in self.parts.items()}
        for deg, vec in other.parts.items():
            acc = out.setdefault(deg, [Fraction(0)] * len(vec))
            for j, x in enumerate(vec):
                acc[j] += sign * x
        return RingElem(self.ring, out)

    def __add__(self, other) -> "RingElem":
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other) -> "RingElem":
        return self._combine(other, -1)

    def __rsub__(self, other) -> "RingElem":
        return self.ring.element(other) - self

    def __neg__(self) -> "RingElem":
        return RingElem(self.ring, {deg: tuple(-x for x in v) for deg, v in self.parts.items()})

    def __mul__(self, other) -> "RingElem":
        if isinstance(other, (int, Fraction)):
            return RingElem(self.ring, {deg: tuple(x * other for x in v) for deg, v in self.parts.items()})
        return self.ring.mul(self, self.ring.element(other))

    def __rmul__(self, other) -> "RingElem":
        if isinstance(other, (int, Fraction)):
            return self * other
        return self.ring.element(other) * self

    def __truediv__(self, c) -> "RingElem":
        return self * (1 / Fraction(c))

    def __pow__(self, k: int) -> "RingElem":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GradedPoly)):
            other = self.ring.element(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ring is other.ring and self.parts == other.parts

    def __hash__(self):
        return hash(tuple(sorted(self.parts.items())))

    def __repr__(self) -> str:
        return f"RingElem({self.ring.lift(self)})"


@lru_cache(maxsize=None)
def build(n: int) -> QuotientRing:
    """Cached QuotientRing for n (instances are read-only after construction)."""
    return QuotientRing(n)


def mod_p_dims(n: int, p: int) -> Dict[int, int]:
    """Per-degree dimensions of the odd-prime presentation over Z/p (also valid rationally for p=None)."""
    R = build(n)
    return presentation_dims(R.relations, R.chi_deg, R.top_degree + 2 * max(4, R.chi_deg or 0), p)


def mod_2_dims(n: int) -> Dict[int, int]:
    """Per-degree dimensions of Z/2[c1,c2]/(b_{m-1}, c2 b_{m-2}) (x) Delta(two v-classes)."""
    m, even = split_n(n)
    c2 = GradedPoly.c2()
    rels = [classes.b(m - 1), c2 * classes.b(m - 2)]
    vdeg = (2 * m - 4, 2 * m - 2) if even else (2 * m - 2, 2 * m)
    shifts = [0, vdeg[0], vdeg[1], vdeg[0] + vdeg[1]]
    top = 8 * m
    poly = presentation_dims(rels, None, top, 2)
    out: Dict[int, int] = {}
    for deg in range(0, top + 1, 2):
        out[deg] = sum(poly.get(deg - s, 0) for s in shifts if deg - s >= 0)
    return out


def tower_module_dims(n: int) -> Dict[int, int]:
    """Per-degree ranks read off the odd-prime module decomposition (towers c1^a on c2^b, chi)."""
    R = build(n)
    out: Dict[int, int] = {}
    for mono in canonical_monomials(n):
        deg = R.mono_degree(mono)
        out[deg] = out.get(deg, 0) + 1
    return out

