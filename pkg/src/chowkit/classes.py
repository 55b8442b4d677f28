"""The named polynomial classes b_k, d_k, the integers a_{g,mu} and f_g(x).

    b_k = (-1)^k sum_{i=0}^{k} alpha^i beta^(k-i)
    d_k = (-1)^k sum_{i=0}^{k} alpha^(2i) beta^(2k-2i)

Both are computed from closed forms in c1, c2; the root-sum definitions are
kept alongside as independent checks.
"""

from __future__ import annotations

import threading
from typing import Dict, Optional

from .arith import GradedPoly, SymPoly, UniPoly, binomial, sym_to_c

_lock = threading.Lock()
_b_memo: Dict[int, GradedPoly] = {}
_d_memo: Dict[int, GradedPoly] = {}
_a_memo: Dict[tuple, int] = {}


def _with_context(p: GradedPoly, m: Optional[int]) -> GradedPoly:
    return p if m is None else GradedPoly(p.terms, m)


def b(k: int, m: Optional[int] = None) -> GradedPoly:
    """b_k as a polynomial in c1, c2 (degree 2k)."""
    if k < 0:
        raise ValueError("b_k needs k >= 0")
    with _lock:
        p = _b_memo.get(k)
        if p is None:
            terms = {
                (k - 2 * mu, mu, 0): (-1) ** (k + mu) * binomial(k - mu, mu)
                for mu in range(k // 2 + 1)
            }
            p = _b_memo[k] = GradedPoly(terms)
    return _with_context(p, m)


def d(k: int, m: Optional[int] = None) -> GradedPoly:
    """d_k as a polynomial in c1, c2 (degree 4k)."""
    if k < 0:
        raise ValueError("d_k needs k >= 0")
    with _lock:
        p = _d_memo.get(k)
        if p is None:
            terms = {
                (2 * k - 2 * mu, mu, 0): (-1) ** (k + mu) * binomial(2 * k - mu + 1, mu)
                for mu in range(k + 1)
            }
            p = _d_memo[k] = GradedPoly(terms)
    return _with_context(p, m)


def b_roots(k: int) -> SymPoly:
    return SymPoly({(i, k - i): (-1) ** k for i in range(k + 1)})


def d_roots(k: int) -> SymPoly:
    return SymPoly({(2 * i, 2 * k - 2 * i): (-1) ** k for i in range(k + 1)})


def b_from_roots(k: int) -> GradedPoly:
    return sym_to_c(b_roots(k))


def d_from_roots(k: int) -> GradedPoly:
    return sym_to_c(d_roots(k))


def bar_sign(k: int) -> int:
    """Sign relating the barred class to b_k: bbar_k = bar_sign(k) * b_k."""
    return -1 if k % 2 else 1


def bbar(k: int, m: Optional[int] = None) -> GradedPoly:
    """sum_{i+j=k} alpha^i beta^j, i.e. b_k without its sign."""
    return b(k, m) * bar_sign(k)


def dbar(k: int, m: Optional[int] = None) -> GradedPoly:
    return d(k, m) * bar_sign(k)


def a(g: int, mu: int) -> int:
    """The integers a_{g,mu} with a_{g,0} = -1 and a_{g,-1} = 0.

    For mu >= 1, a_{g,mu} = (-1)^(1+mu) (g/mu) C(g-1-mu, mu-1).
    """
    if g < 1:
        raise ValueError("a_{g,mu} needs g >= 1")
    if mu < -1:
        raise ValueError("a_{g,mu} needs mu >= -1")
    if mu > g // 2:
        raise ValueError(f"a_{{g,mu}} needs mu <= floor(g/2); got g={g}, mu={mu}")
    if mu == -1:
        return 0
    if mu == 0:
        return -1
    with _lock:
        val = _a_memo.get((g, mu))
        if val is None:
            num = g * binomial(g - 1 - mu, mu - 1)
            if num % mu:
                raise ArithmeticError(f"a_{{{g},{mu}}} is not integral")
            val = _a_memo[(g, mu)] = (-1) ** (1 + mu) * (num // mu)
    return val


def a_ext(g: int, mu: int) -> int:
    """a_{g,mu} with the convention that indices outside the defined range give 0.

    Table formulas occasionally reach a_{g,mu} with g <= 0 or mu > g/2 at the
    edge of their summation range; those terms are dropped.
    """
    if g < 1 or mu < -1 or mu > g // 2:
        return 0
    return a(g, mu)


def f(g: int) -> UniPoly:
    """(1+x)^g - (1 + x^g)."""
    if g < 1:
        raise ValueError("f_g needs g >= 1")
    return UniPoly([1, 1]) ** g - (UniPoly.const(1) + UniPoly.x(g))


def check_b_d_identity(h: int) -> bool:
    """sum_{mu=0}^h (-1)^mu c2^(h-mu) b_{2mu} == d_h in Z[c1, c2]."""
    c2 = GradedPoly.c2()
    lhs = GradedPoly()
    for mu in range(h + 1):
        lhs = lhs + (c2 ** (h - mu)) * b(2 * mu) * (-1) ** mu
    return lhs == d(h)


def check_a_reconstruction(g: int) -> bool:
    """(1+x)^g == 1 + x^g + sum_{mu=1}^{g//2} a_{g,mu} x^mu (1+x)^(g-2mu)."""
    one_plus_x = UniPoly([1, 1])
    rhs = UniPoly.const(1) + UniPoly.x(g)
    for mu in range(1, g // 2 + 1):
        rhs = rhs + UniPoly.x(mu) * one_plus_x ** (g - 2 * mu) * a(g, mu)
    return one_plus_x ** g == rhs


def last_a_term(g: int) -> UniPoly:
    """The mu = g//2 summand a_{g,mu} x^mu (1+x)^(g-2mu)."""
    s = g // 2
    return UniPoly.x(s) * UniPoly([1, 1]) ** (g - 2 * s) * a(g, s)


def expected_last_a_term(g: int) -> UniPoly:
    """Closed form of the last summand: (-1)^(s+1) 2 x^s or (-1)^(s+1) (2s+1) x^s (1+x)."""
    s = g // 2
    sign = (-1) ** (s + 1)
    if g % 2 == 0:
        return UniPoly.x(s) * (2 * sign)
    return UniPoly.x(s) * UniPoly([1, 1]) * (sign * (2 * s + 1))


__all__ = [
    "a", "a_ext", "b", "bar_sign", "bbar", "b_from_roots", "b_roots",
    "check_a_reconstruction", "check_b_d_identity", "d", "dbar",
    "d_from_roots", "d_roots", "expected_last_a_term", "f", "last_a_term",
]
