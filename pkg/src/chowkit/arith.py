"""Exact polynomial arithmetic used throughout chowkit.

Three coordinate systems appear:

* ``SymPoly`` -- integer polynomials in the two Chern roots alpha, beta,
  required to be symmetric;
* ``GradedPoly`` -- rational polynomials in c1 (degree 2), c2 (degree 4)
  and, for even n, the Euler class chi (degree 2m-4);
* ``UniPoly`` -- dense univariate polynomials in x = beta/alpha, obtained by
  the substitution c1 -> 1 + x, c2 -> x.

Degrees are topological (|c1| = 2) everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

Monomial = Tuple[int, int, int]  # (exponent of c1, exponent of c2, exponent of chi)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``.

    Negative ``n`` follows the generalized definition
    ``n (n-1) ... (n-k+1) / k!`` so that Pascal's rule keeps holding.
    """
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    return (-1) ** k * comb(k - n - 1, k)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


# --------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense polynomial over Q in x; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls, power: int = 1) -> "UniPoly":
        return cls([0] * power + [1])

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        parts = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + " + ".join(parts) + ")"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = _as_fraction(other)
            return UniPoly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power")
        result, base = UniPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other!r} does not divide {self!r}")
        return q

    def __call__(self, value):
        acc = Fraction(0) if not isinstance(value, UniPoly) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc


# --------------------------------------------------------------------------
# graded bivariate (plus chi)


class GradedPoly:
    """Sparse polynomial in c1, c2 (and chi for even n) with rational coefficients.

    ``m`` fixes the degree of chi as ``2m - 4``; it may be ``None`` for
    chi-free polynomials.  Instances are immutable.
    """

    __slots__ = ("_terms", "m")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None, m: Optional[int] = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            a, b, e = mono
            if a < 0 or b < 0 or e < 0:
                raise ValueError(f"negative exponent in {mono}")
            c = _as_fraction(c)
            if c:
                clean[(a, b, e)] = clean.get((a, b, e), 0) + c
        clean = {k: v for k, v in clean.items() if v}
        if m is None and any(e for (_, _, e) in clean):
            raise ValueError("chi requires a context m (n = 2m)")
        self._terms = clean
        self.m = m

    # construction helpers
    @classmethod
    def const(cls, c=1, m: Optional[int] = None) -> "GradedPoly":
        return cls({(0, 0, 0): c}, m)

    @classmethod
    def c1(cls, m: Optional[int] = None) -> "GradedPoly":
        return cls({(1, 0, 0): 1}, m)

    @classmethod
    def c2(cls, m: Optional[int] = None) -> "GradedPoly":
        return cls({(0, 1, 0): 1}, m)

    @classmethod
    def chi(cls, m: int) -> "GradedPoly":
        return cls({(0, 0, 1): 1}, m)

    @classmethod
    def monomial(cls, a: int, b: int, e: int = 0, coeff=1, m: Optional[int] = None) -> "GradedPoly":
        return cls({(a, b, e): coeff}, m)

    # access
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: monomial_sort_key(kv[0])))

    def coefficient(self, a: int, b: int, e: int = 0) -> Fraction:
        return self._terms.get((a, b, e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def has_chi(self) -> bool:
        return any(e for (_, _, e) in self._terms)

    def mono_degree(self, mono: Monomial) -> int:
        a, b, e = mono
        if e and self.m is None:
            raise ValueError("chi degree undefined without m")
        return 2 * a + 4 * b + (e * (2 * self.m - 4) if e else 0)

    def degrees(self):
        return sorted({self.mono_degree(k) for k in self._terms})

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or ds[0] == degree)

    def homogeneous_parts(self) -> Dict[int, "GradedPoly"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, c in self._terms.items():
            parts.setdefault(self.mono_degree(mono), {})[mono] = c
        return {d: GradedPoly(t, self.m) for d, t in sorted(parts.items())}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # arithmetic
    def _context(self, other: "GradedPoly") -> Optional[int]:
        if self.m is None:
            return other.m
        if other.m is None or other.m == self.m:
            return self.m
        raise ValueError(f"incompatible chi contexts m={self.m} and m={other.m}")

    def _coerce(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            return other
        return GradedPoly.const(other, self.m)

    def __add__(self, other) -> "GradedPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return GradedPoly(out, self._context(other))

    __radd__ = __add__

    def __neg__(self) -> "GradedPoly":
        return GradedPoly({k: -v for k, v in self._terms.items()}, self.m)

    def __sub__(self, other) -> "GradedPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "GradedPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            c = _as_fraction(other)
            return GradedPoly({k: c * v for k, v in self._terms.items()}, self.m)
        out: Dict[Monomial, Fraction] = {}
        for (a1, b1, e1), u in self._terms.items():
            for (a2, b2, e2), w in other._terms.items():
                key = (a1 + a2, b1 + b2, e1 + e2)
                out[key] = out.get(key, 0) + u * w
        return GradedPoly(out, self._context(other))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "GradedPoly":
        return self * (1 / _as_fraction(c))

    def __pow__(self, k: int) -> "GradedPoly":
        if k < 0:
            raise ValueError("negative power")
        result = GradedPoly.const(1, self.m)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.const(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"GradedPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for (a, b, e), c in self.items():
            factors = []
            if a:
                factors.append("c1" if a == 1 else f"c1^{a}")
            if b:
                factors.append("c2" if b == 1 else f"c2^{b}")
            if e:
                factors.append("chi" if e == 1 else f"chi^{e}")
            mono = "*".join(factors)
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


def monomial_sort_key(mono: Monomial) -> Tuple[int, int, int]:
    """Lexicographic on (e, b, a): chi-free part first."""
    a, b, e = mono
    return (e, b, a)


# --------------------------------------------------------------------------
# symmetric polynomials in the two roots


class SymPoly:
    """Integer polynomial in alpha, beta, symmetric under alpha <-> beta."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], int]):
        clean = {}
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if c:
                clean[(i, j)] = clean.get((i, j), 0) + c
        clean = {k: v for k, v in clean.items() if v}
        for (i, j), c in clean.items():
            if clean.get((j, i), 0) != c:
                raise ValueError(f"not symmetric: alpha^{i} beta^{j} has no mirror term")
        self._terms = clean

    @property
    def terms(self) -> Dict[Tuple[int, int], int]:
        return dict(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPoly) and self._terms == other._terms

    def __repr__(self) -> str:
        return f"SymPoly({self._terms})"


def sym_to_c(p: SymPoly) -> GradedPoly:
    """Rewrite a symmetric polynomial in c1 = alpha + beta, c2 = alpha*beta.

    Peels off leading terms alpha^i beta^j (i >= j) with c1^(i-j) c2^j, which
    has the same leading term.
    """
    rest = dict(p.terms)
    out: Dict[Monomial, int] = {}
    while rest:
        i, j = max(rest, key=lambda ij: (ij[0] + ij[1], ij[0]))
        c = rest[(i, j)]
        a, b = i - j, j
        out[(a, b, 0)] = out.get((a, b, 0), 0) + c
        # subtract c * (alpha+beta)^a * (alpha beta)^b
        for k in range(a + 1):
            key = (k + b, a - k + b)
            rest[key] = rest.get(key, 0) - c * comb(a, k)
            if rest[key] == 0:
                del rest[key]
    return GradedPoly(out)


def c_to_sym(p: GradedPoly) -> SymPoly:
    """Substitute c1 = alpha + beta, c2 = alpha*beta (integer, chi-free input)."""
    if p.has_chi():
        raise ValueError("chi has no expression in the roots")
    out: Dict[Tuple[int, int], int] = {}
    for (a, b, _), c in p.items():
        if c.denominator != 1:
            raise ValueError("non-integral coefficient")
        for k in range(a + 1):
            key = (k + b, a - k + b)
            out[key] = out.get(key, 0) + int(c) * comb(a, k)
    return SymPoly(out)


def to_inhomogeneous(p: GradedPoly, deg: int) -> UniPoly:
    """Dehomogenize a degree-``deg`` polynomial via c1 -> 1 + x, c2 -> x."""
    if deg % 2:
        raise ValueError("degrees are even")
    if p.has_chi():
        raise ValueError("chi has no inhomogeneous representative")
    if not p.is_homogeneous(deg):
        raise ValueError(f"{p} is not homogeneous of degree {deg}")
    one_plus_x = UniPoly([1, 1])
    out = UniPoly()
    for (a, b, _), c in p.items():
        out = out + (one_plus_x ** a) * UniPoly.x(b) * c
    return out


def from_inhomogeneous(u: UniPoly, deg: int) -> GradedPoly:
    """Inverse of :func:`to_inhomogeneous` on degree ``deg``.

    Writes ``u`` in the basis x^b (1+x)^(k-2b) with k = deg/2; raises when
    ``u`` has no homogeneous preimage of that degree.
    """
    k = deg // 2
    rest = u
    out: Dict[Monomial, Fraction] = {}
    one_plus_x = UniPoly([1, 1])
    # the lowest x-power of x^b (1+x)^(k-2b) is b, so peel from the bottom
    for b in range(k // 2 + 1):
        c = rest.coeffs[b] if b < len(rest.coeffs) else Fraction(0)
        if c:
            out[(k - 2 * b, b, 0)] = c
            rest = rest - UniPoly.x(b) * (one_plus_x ** (k - 2 * b)) * c
    if not rest.is_zero():
        raise ValueError(f"{u!r} is not the image of a degree-{deg} polynomial")
    return GradedPoly(out)
