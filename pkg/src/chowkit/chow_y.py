"""The integral Chow ring CH(Y_n) as a lattice inside the rational ring.

The lattice A_n is spanned by the monomials c1^a c2^i v^eps
(0 <= i <= m-2, 0 <= a <= m-2-i, eps in {0,1}^2) in the two half-integral
classes.  The integral basis replaces a handful of the monomials
xi = c1^a c2^b v v' by divided elements <xi>/l with l odd; which ones and
the shape of <xi> depend on the parity of n and of m.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, List, Optional, Tuple

from .classes import a
from .lattice import GradedLattice, index_of
from .quotient import (
    QuotientRing,
    RingElem,
    build as build_ring,
    tower_module_dims,
    mod_2_dims,
    mod_p_dims,
)

CASES = {
    (True, True): "n=2m, m even",
    (True, False): "n=2m, m odd",
    (False, True): "n=2m+1, m even",
    (False, False): "n=2m+1, m odd",
}


class ConstructionError(RuntimeError):
    """The divided-element basis failed a structural check."""


@dataclass
class BasisElem:
    exponents: Tuple[int, int, int, int]  # (a, b, e1, e2): c1^a c2^b v^e1 v'^e2
    degree: int
    elem: RingElem
    divisor: int = 1
    family: Optional[str] = None  # "low" for l = 2i+3, "head" for the other family
    param: Optional[int] = None
    numerator: Optional[RingElem] = None

    @property
    def divided(self) -> bool:
        return self.divisor > 1 or self.family is not None

    def monomial_label(self, v_degrees: Tuple[int, int]) -> str:
        a_, b_, e1, e2 = self.exponents
        parts = []
        if a_:
            parts.append("c1" if a_ == 1 else f"c1^{a_}")
        if b_:
            parts.append("c2" if b_ == 1 else f"c2^{b_}")
        if e1:
            parts.append(f"v{v_degrees[0]}")
        if e2:
            parts.append(f"v{v_degrees[1]}")
        return " ".join(parts) or "1"

    def label(self, v_degrees: Tuple[int, int]) -> str:
        mono = self.monomial_label(v_degrees)
        if self.divided:
            return f"<{mono}>/{self.divisor}"
        return mono


def _d_or_zero(R: QuotientRing, k: int) -> RingElem:
    return R.d(k) if k >= 0 else R.zero()


def _b_or_zero(R: QuotientRing, k: int) -> RingElem:
    return R.b(k) if k >= 0 else R.zero()


class Generators:
    """Powers of c1, c2 and the two v-classes, cached for one ring."""

    def __init__(self, R: QuotientRing):
        self.R = R
        self.V1, self.V2 = R.v_classes()
        self.V12 = self.V1 * self.V2
        self._c1 = [R.one()]
        self._c2 = [R.one()]

    def c1(self, k: int) -> RingElem:
        if k < 0:
            raise ValueError("negative power of c1")
        while len(self._c1) <= k:
            self._c1.append(self._c1[-1] * self.R.c1())
        return self._c1[k]

    def c2(self, k: int) -> RingElem:
        if k < 0:
            raise ValueError("negative power of c2")
        while len(self._c2) <= k:
            self._c2.append(self._c2[-1] * self.R.c2())
        return self._c2[k]

    def mono(self, a_: int, b_: int, e1: int = 0, e2: int = 0) -> RingElem:
        x = self.c1(a_) * self.c2(b_)
        if e1:
            x = x * self.V1
        if e2:
            x = x * self.V2
        return x

    def d(self, k: int) -> RingElem:
        return _d_or_zero(self.R, k)

    def b(self, k: int) -> RingElem:
        return _b_or_zero(self.R, k)


# --------------------------------------------------------------------------
# the divided elements


def _tail_sum(G: Generators, g: int, a0: int, b0: int, upper: int) -> RingElem:
    """sum_{mu=1}^{upper} a_{g,mu} c1^(a0-2mu) c2^(b0+mu) v v'."""
    out = G.R.zero()
    for mu in range(1, upper + 1):
        out = out + G.mono(a0 - 2 * mu, b0 + mu, 1, 1) * a(g, mu)
    return out


def _half_coefficient(i: int) -> Fraction:
    return Fraction((-1) ** i * (2 * i + 3) + 1, 2)


def bracket_low(G: Generators, i: int) -> RingElem:
    """<xi> for xi the i-th member of the l = 2i+3 family (xi = c1^(2i+1) c2^{0 or 1} v v')."""
    R = G.R
    m = R.m
    if R.even and m % 2 == 0:
        x = G.mono(2 * i + 1, 1, 1, 1)
        x = x + G.c2(2 * i + 4) * G.d((m - 2 * i - 6) // 2) * G.V1 * (
            (-1) ** ((m + 2 * i + 2) // 2) * _half_coefficient(i)
        )
        return x - _tail_sum(G, 2 * i + 3, 2 * i + 1, 1, i)
    if R.even:
        x = G.mono(2 * i + 1, 1, 1, 1)
        x = x + G.c2(2 * i + 3) * G.d((m - 2 * i - 5) // 2) * G.V2 * (
            (-1) ** ((m + 2 * i + 1) // 2) * _half_coefficient(i)
        )
        return x - _tail_sum(G, 2 * i + 3, 2 * i + 1, 1, i)
    if m % 2 == 0:
        x = G.mono(2 * i + 1, 1, 1, 1)
        x = x + G.c2(2 * i + 4) * G.d((m - 2 * i - 6) // 2) * G.V2 * (
            (-1) ** ((m + 2 * i + 2) // 2) * _half_coefficient(i)
        )
        return x - _tail_sum(G, 2 * i + 3, 2 * i + 1, 1, i)
    x = G.mono(2 * i + 1, 0, 1, 1)
    x = x + G.c2(2 * i + 3) * G.d((m - 2 * i - 5) // 2) * G.V1 * (
        (-1) ** ((m + 2 * i + 3) // 2) * _half_coefficient(i)
    )
    return x - _tail_sum(G, 2 * i + 3, 2 * i + 1, 0, i)


def bracket_head(G: Generators, j: int) -> RingElem:
    """<xi> for the j-th head monomial (c1 exponent plus c2 exponent equal to m-2)."""
    m = G.R.m
    if m % 2 == 0:
        a0, b0, g = m - 2 * j - 3, 2 * j + 1, m - 2 * j - 1
        return G.mono(a0, b0, 1, 1) - _tail_sum(G, g, a0, b0, (m - 2 * j - 4) // 2)
    a0, b0, g = m - 2 * j - 2, 2 * j, m - 2 * j
    return G.mono(a0, b0, 1, 1) - _tail_sum(G, g, a0, b0, (m - 2 * j - 3) // 2)


def replacement_plan(n: int) -> List[Tuple[str, int, Tuple[int, int, int, int], int]]:
    """(family, parameter, replaced exponents, divisor) for every divided element."""
    m, even = n // 2, n % 2 == 0
    plan = []
    if m % 2 == 0:
        b_low = 1
        i_max = m // 2 - 2
        j_max = m // 2 - 2
        for i in range(i_max + 1):
            plan.append(("low", i, (2 * i + 1, b_low, 1, 1), 2 * i + 3))
        for j in range(1, j_max + 1):
            plan.append(("head", j, (m - 2 * j - 3, 2 * j + 1, 1, 1), m - 2 * j - 1))
    else:
        b_low = 1 if even else 0
        i_max = (m - 5) // 2 if even else (m - 3) // 2
        j_max = (m - 3) // 2
        for i in range(i_max + 1):
            plan.append(("low", i, (2 * i + 1, b_low, 1, 1), 2 * i + 3))
        for j in range(1, j_max + 1):
            plan.append(("head", j, (m - 2 * j - 2, 2 * j, 1, 1), m - 2 * j))
    return plan


def index_closed_form(n: int) -> int:
    """Product of squares of odd numbers times the trailing factor, by parity case."""
    m, even = n // 2, n % 2 == 0
    if m % 2 == 0:
        return prod(k * k for k in range(1, m - 2, 2)) * (m - 1)
    squares = prod(k * k for k in range(1, m - 1, 2))
    return squares if even else squares * m


# --------------------------------------------------------------------------


class ChowY:
    """Integral basis, lattices and structure constants of CH(Y_n)."""

    def __init__(self, n: int):
        self.n = n
        self.R = build_ring(n)
        self.m, self.even = self.R.m, self.R.even
        self.case = CASES[(self.even, self.m % 2 == 0)]
        self.gens = Generators(self.R)
        self.v_degrees: Tuple[int, int] = tuple(self.R.v_degrees())
        self.monomials = self._monomial_basis()
        self.An = self._lattice([e.elem for e in self.monomials])
        self.basis = self._divided_basis()
        self.lattice = self._lattice([e.elem for e in self.basis])
        if not self.lattice.contains(self.An):
            raise ConstructionError(f"n={n}: A_n is not contained in the span of the basis")
        self._structure: Optional[Dict[Tuple[int, int], List[int]]] = None

    # -- construction --------------------------------------------------------

    def _monomial_basis(self) -> List[BasisElem]:
        G, m = self.gens, self.m
        out = []
        for e2 in (0, 1):
            for e1 in (0, 1):
                for i in range(m - 1):
                    for a_ in range(m - 1 - i):
                        x = G.mono(a_, i, e1, e2)
                        deg = 2 * a_ + 4 * i + e1 * self.v_degrees[0] + e2 * self.v_degrees[1]
                        if x.degree() != deg:
                            raise ConstructionError(f"degree mismatch for monomial {(a_, i, e1, e2)}")
                        out.append(BasisElem((a_, i, e1, e2), deg, x))
        out.sort(key=lambda e: (e.degree, e.exponents[3], e.exponents[2], e.exponents[1]))
        return out

    def _divided_basis(self) -> List[BasisElem]:
        plan = {exps: (fam, p, l) for fam, p, exps, l in replacement_plan(self.n)}
        out = []
        used = set()
        for e in self.monomials:
            hit = plan.get(e.exponents)
            if hit is None:
                out.append(e)
                continue
            fam, p, l = hit
            num = bracket_low(self.gens, p) if fam == "low" else bracket_head(self.gens, p)
            if num.degree() != e.degree:
                raise ConstructionError(f"<{e.exponents}> is not homogeneous of degree {e.degree}")
            out.append(BasisElem(e.exponents, e.degree, num / l, l, fam, p, num))
            used.add(e.exponents)
        if used != set(plan):
            raise ConstructionError(f"replacement targets outside the monomial basis: {set(plan) - used}")
        return out

    def _lattice(self, elems: List[RingElem]) -> GradedLattice:
        pieces: Dict[int, list] = {}
        for x in elems:
            deg = x.degree()
            if deg is None:
                raise ConstructionError("zero vector in a basis")
            pieces.setdefault(deg, []).append(x.coords(deg))
        try:
            return GradedLattice(pieces, self.R.dims())
        except ValueError as exc:
            raise ConstructionError(f"n={self.n}: {exc}") from exc

    # -- access ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    def labels(self) -> List[str]:
        return [e.label(self.v_degrees) for e in self.basis]

    def by_degree(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for idx, e in enumerate(self.basis):
            out.setdefault(e.degree, []).append(idx)
        return out

    def degree_ranks(self) -> Dict[int, int]:
        return {deg: len(ix) for deg, ix in sorted(self.by_degree().items())}

    def divided(self) -> List[BasisElem]:
        return [e for e in self.basis if e.divided]

    def coords(self, x: RingElem) -> Optional[Dict[int, List[int]]]:
        """Integer coordinates of x in the basis, per degree; None if not integral."""
        out = {}
        for deg, vec in x.parts.items():
            c = self.lattice.coords_in(vec, deg)
            if c is None:
                return None
            out[deg] = c
        return out

    def global_coords(self, x: RingElem) -> Optional[List[int]]:
        per = self.coords(x)
        if per is None:
            return None
        vec = [0] * self.rank
        bd = self.by_degree()
        for deg, c in per.items():
            for idx, val in zip(bd[deg], c):
                vec[idx] = val
        return vec

    def element(self, coords) -> RingElem:
        out = self.R.zero()
        for c, e in zip(coords, self.basis):
            if c:
                out = out + e.elem * c
        return out

    # -- verification --------------------------------------------------------

    def verify_closure(self, check_associativity: int = 50, seed: int = 0) -> Dict[Tuple[int, int], List[int]]:
        """Integer structure constants; raises ConstructionError on a non-integral product."""
        if self._structure is not None:
            return self._structure
        top = self.R.top_degree
        out: Dict[Tuple[int, int], List[int]] = {}
        bd = self.by_degree()
        for i, ei in enumerate(self.basis):
            for j in range(i, self.rank):
                ej = self.basis[j]
                deg = ei.degree + ej.degree
                if deg > top or deg not in bd:
                    continue
                p = ei.elem * ej.elem
                if p.is_zero():
                    continue
                c = self.lattice.coords_in(p.coords(deg), deg)
                if c is None:
                    raise ConstructionError(
                        f"n={self.n}: product {ei.label(self.v_degrees)} * "
                        f"{ej.label(self.v_degrees)} is not integral"
                    )
                vec = [0] * self.rank
                for idx, val in zip(bd[deg], c):
                    vec[idx] = val
                out[(i, j)] = vec
        self._structure = out
        if check_associativity:
            self._check_associativity(check_associativity, seed)
        return out

    def product_coords(self, i: int, j: int) -> List[int]:
        table = self.verify_closure(check_associativity=0)
        key = (i, j) if i <= j else (j, i)
        return table.get(key, [0] * self.rank)

    def _sparse_product(self, i: int, j: int) -> Dict[int, int]:
        vec = self.product_coords(i, j)
        return {k: v for k, v in enumerate(vec) if v}

    def multiply_coords(self, x: List[int], y: List[int]) -> List[int]:
        out = [0] * self.rank
        xs = [(i, v) for i, v in enumerate(x) if v]
        ys = [(j, v) for j, v in enumerate(y) if v]
        for i, xi in xs:
            for j, yj in ys:
                for k, z in self._sparse_product(i, j).items():
                    out[k] += xi * yj * z
        return out

    def _check_associativity(self, trials: int, seed: int) -> None:
        rng = random.Random(seed)
        top = self.R.top_degree
        degs = [e.degree for e in self.basis]
        if self.rank <= 60:
            chosen = (
                (i, j, k)
                for i in range(self.rank)
                for j in range(i, self.rank)
                for k in range(self.rank)
                if degs[i] + degs[j] + degs[k] <= top
            )
        else:
            chosen = [tuple(rng.randrange(self.rank) for _ in range(3)) for _ in range(trials)]
        for i, j, k in chosen:
            lhs: Dict[int, int] = {}
            for t, v in self._sparse_product(i, j).items():
                for s, w in self._sparse_product(t, k).items():
                    lhs[s] = lhs.get(s, 0) + v * w
            rhs: Dict[int, int] = {}
            for t, v in self._sparse_product(j, k).items():
                for s, w in self._sparse_product(i, t).items():
                    rhs[s] = rhs.get(s, 0) + v * w
            if {s: v for s, v in lhs.items() if v} != {s: v for s, v in rhs.items() if v}:
                raise ConstructionError(f"n={self.n}: associativity fails on basis triple {(i, j, k)}")

    def index_vs_An(self) -> int:
        idx = index_of(self.An, self.lattice)
        from_divisors = prod(e.divisor for e in self.basis)
        if idx != from_divisors:
            raise ConstructionError(f"n={self.n}: index {idx} differs from the divisor product {from_divisors}")
        if idx != index_closed_form(self.n):
            raise ConstructionError(f"n={self.n}: index {idx} differs from the closed form {index_closed_form(self.n)}")
        return idx

    def mod_p_structure(self, p: int) -> Dict[str, object]:
        """Per-degree dimension of CH(Y_n) (x) Z/p against the presentation over Z/p."""
        ranks = self.degree_ranks()
        if p == 2:
            expected = mod_2_dims(self.n)
        else:
            expected = mod_p_dims(self.n, p)
        towers = tower_module_dims(self.n)
        degs = sorted(set(ranks) | {d for d, v in expected.items() if v} | set(towers))
        table = {d: (ranks.get(d, 0), expected.get(d, 0)) for d in degs}
        ok = all(r == e for r, e in table.values())
        if p != 2:
            ok = ok and all(ranks.get(d, 0) == towers.get(d, 0) for d in degs)
        return {"p": p, "dims": table, "total": sum(ranks.values()), "ok": ok}

    # -- serialization ---------------------------------------------------------

    def to_json(self, with_products: bool = True) -> Dict[str, object]:
        basis = [
            {"label": e.label(self.v_degrees), "degree": e.degree, "divided": e.divided, "l": e.divisor}
            for e in self.basis
        ]
        out: Dict[str, object] = {
            "n": self.n,
            "case": self.case,
            "rank": self.rank,
            "index": self.index_vs_An(),
            "basis": basis,
        }
        if with_products:
            table = self.verify_closure()
            out["products"] = [
                {"i": i, "j": j, "coords": vec} for (i, j), vec in sorted(table.items())
            ]
        return out


@lru_cache(maxsize=None)
def build_basis(n: int) -> ChowY:
    return ChowY(n)


def build_An(n: int) -> GradedLattice:
    return build_basis(n).An
