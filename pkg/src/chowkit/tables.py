"""Multiplication-table entries of CH(Y_n), localized at 2.

Each entry reads "left monomial = right side", where the right side is a
combination of c1, c2, b_k, d_k and the two v-classes with rational
coefficients of odd denominator.  Entries are evaluated in the rational
ring and compared exactly.

Entries are labelled ``even-<k>`` (n = 2m) and ``odd-<k>`` (n = 2m + 1),
k = 1..17, in table order; ``even-5r`` is entry 5 rewritten in the
integral basis.  Some entries only exist for one parity of m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .arith import binomial
from .chow_y import ChowY, Generators, bracket_low
from .classes import a
from .quotient import RingElem


class Coefficients:
    """Records the left-hand monomial and every non-integral displayed coefficient of an entry."""

    def __init__(self):
        self.values: List[Fraction] = []
        self.exponents: Optional[Tuple[int, int, int, int]] = None

    def left(self, G: Generators, p: int, q: int, e1: int = 0, e2: int = 0) -> RingElem:
        self.exponents = (p, q, e1, e2)
        return G.mono(p, q) * (G.V1 ** e1) * (G.V2 ** e2)

    def left_label(self, v_degrees: Tuple[int, int]) -> str:
        p, q, e1, e2 = self.exponents
        parts = []
        for name, k in (("c1", p), ("c2", q), (f"v{v_degrees[0]}", e1), (f"v{v_degrees[1]}", e2)):
            if k:
                parts.append(name if k == 1 else f"{name}^{k}")
        return " ".join(parts) or "1"

    def __call__(self, num, den=1) -> Fraction:
        q = Fraction(num, den)
        if q.denominator != 1:
            self.values.append(q)
        return q

    @property
    def two_local(self) -> bool:
        return all(q.denominator % 2 for q in self.values)

    @property
    def integral(self) -> bool:
        return not self.values


def _sum(G: Generators, lo: int, hi: int, term: Callable[[int], RingElem]) -> RingElem:
    out = G.R.zero()
    for mu in range(lo, hi + 1):
        out = out + term(mu)
    return out


def _binom_tower(G: Generators, A: int, B: int, hi: int) -> RingElem:
    """sum_{mu=1}^{hi} (-1)^(1+mu) C(A-mu, mu) c1^(A-2mu) c2^(B+mu)."""
    return _sum(G, 1, hi, lambda mu: G.mono(A - 2 * mu, B + mu) * ((-1) ** (1 + mu) * binomial(A - mu, mu)))


def _a_tower(G: Generators, g: int, A: int, B: int, lo: int, hi: int) -> RingElem:
    """sum_{mu=lo}^{hi} a_{g,mu} c1^(A-2mu) c2^(B+mu)."""
    return _sum(G, lo, hi, lambda mu: G.mono(A - 2 * mu, B + mu) * a(g, mu))


def _mixed(G: Generators, q: Coefficients, i: int, c2_shift: int, drop_minus_one: bool) -> RingElem:
    """2 sum_{mu=-1}^{i-2} (a_{2i-1,mu} + (2i-1)/(2i+1) a_{2i+1,1+mu}) c1^(2i-3-2mu) c2^(c2_shift+mu)."""
    lo = 0 if drop_minus_one else -1
    ratio = q(2 * i - 1, 2 * i + 1)
    return _sum(
        G,
        lo,
        i - 2,
        lambda mu: G.mono(2 * i - 3 - 2 * mu, c2_shift + mu) * (2 * (a(2 * i - 1, mu) + ratio * a(2 * i + 1, 1 + mu))),
    )


@dataclass
class Entry:
    label: str
    n_even: bool
    m_parity: Optional[int]  # None: both parities of m; 0: m even; 1: m odd
    index_name: Optional[str]
    index_range: Callable[[int], range]
    body: Callable[..., Tuple[RingElem, RingElem]]
    uses_mu_minus_one: bool = False

    def applies(self, n: int) -> bool:
        m = n // 2
        return (n % 2 == 0) == self.n_even and (self.m_parity is None or m % 2 == self.m_parity)


def _no_index(m: int) -> range:
    return range(0, 1)


# --------------------------------------------------------------------------
# n = 2m; V1 = v_{2m-4}, V2 = v_{2m-2}


def _e1(G, q, m, _i, alt):
    rhs = _binom_tower(G, m - 1, 0, (m - 1) // 2) + G.V2 * (2 * (-1) ** (m + 1))
    return q.left(G, m - 1, 0), rhs


def _e2(G, q, m, k, alt):
    rhs = _binom_tower(G, m - k - 1, k, (m - k - 1) // 2)
    rhs = rhs + G.c2(1) * G.b(k - 1) * G.V1 * (2 * (-1) ** (m + k))
    rhs = rhs + G.c2(1) * G.b(k - 2) * G.V2 * (2 * (-1) ** (m + k))
    return q.left(G, m - k - 1, k), rhs


def _e3(G, q, m, _i, alt):
    rhs = _binom_tower(G, m - 1, 0, (m - 1) // 2) * G.V1 + G.V12 * (2 * (-1) ** (m + 1))
    return q.left(G, m - 1, 0, 1, 0), rhs


def _e4(G, q, m, i, alt):
    rhs = _binom_tower(G, m - 2 * i - 1, 2 * i, (m - 2 * i - 1) // 2) * G.V1
    rhs = rhs + _a_tower(G, 2 * i - 1, 2 * i - 2, 1, 0, i - 1) * G.V12 * (2 * (-1) ** m)
    return q.left(G, m - 2 * i - 1, 2 * i, 1, 0), rhs


def _e5(G, q, m, i, alt):
    first = G.c2(2 * i + 2) * G.d((m - 2 * i - 4) // 2) * ((-1) ** ((m + 2 * i + 2) // 2) * q(4 * i, 2 * i + 1))
    first = first + _a_tower(G, m - 2 * i - 1, m - 2 * i - 2, 2 * i + 1, 1, (m - 2 * i - 2) // 2)
    rhs = first * G.V1 + _mixed(G, q, i, 2, alt) * G.V12
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 1, 0), rhs


def _e6(G, q, m, i, alt):
    rhs = _binom_tower(G, m - 2 * i - 2, 2 * i + 1, (m - 2 * i - 3) // 2) * G.V1
    rhs = rhs + G.c2(2 * i + 1) * G.d((m - 2 * i - 3) // 2) * G.V2 * (
        (-1) ** ((m + 2 * i + 1) // 2) * q(2, 2 * i + 1)
    )
    rhs = rhs - _mixed(G, q, i, 2, alt) * G.V12
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 1, 0), rhs


def _e7(G, q, m, i, alt):
    rhs = G.c2(2 * i + 2) * G.d((m - 2 * i - 4) // 2) * G.V1 * ((-1) ** ((m + 2 * i) // 2) * q(2, 2 * i + 1))
    rhs = rhs + _binom_tower(G, m - 2 * i - 1, 2 * i, (m - 2 * i - 2) // 2) * G.V2
    rhs = rhs + _mixed(G, q, i, 2, alt) * G.V12
    return q.left(G, m - 2 * i - 1, 2 * i, 0, 1), rhs


def _e8(G, q, m, i, alt):
    first = G.c2(2 * i + 1) * G.d((m - 2 * i - 3) // 2) * ((-1) ** ((m + 2 * i + 3) // 2) * q(4 * i, 2 * i + 1))
    first = first + _a_tower(G, m - 2 * i, m - 2 * i - 1, 2 * i, 1, (m - 2 * i - 1) // 2)
    rhs = first * G.V2 - _mixed(G, q, i, 2, alt) * G.V12
    return q.left(G, m - 2 * i - 1, 2 * i, 0, 1), rhs


def _e9(G, q, m, i, alt):
    rhs = _binom_tower(G, m - 2 * i - 2, 2 * i + 1, (m - 2 * i - 2) // 2) * G.V2
    rhs = rhs + _a_tower(G, 2 * i + 1, 2 * i, 1, 0, i) * G.V12 * (2 * (-1) ** m)
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 0, 1), rhs


def _e10(G, q, m, i, alt):
    g = m - 2 * i - 1
    ratio = q(m - 2 * i + 1, g)
    rhs = _sum(
        G,
        0,
        (m - 2 * i - 4) // 2,
        lambda mu: G.mono(m - 2 * i - 3 - 2 * mu, 2 * i + 1 + mu) * (ratio * a(g, mu) + a(m - 2 * i + 1, 1 + mu)),
    )
    return q.left(G, m - 2 * i - 1, 2 * i, 1, 1), rhs * G.V12


def _e11(G, q, m, i, alt):
    rhs = _a_tower(G, m - 2 * i, m - 2 * i - 1, 2 * i, 1, (m - 2 * i - 1) // 2)
    return q.left(G, m - 2 * i - 1, 2 * i, 1, 1), rhs * G.V12


def _e12(G, q, m, i, alt):
    rhs = _a_tower(G, m - 2 * i - 1, m - 2 * i - 2, 2 * i + 1, 1, (m - 2 * i - 2) // 2)
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 1, 1), rhs * G.V12


def _e13(G, q, m, i, alt):
    g = m - 2 * i - 2
    ratio = q(m - 2 * i, g)
    rhs = _sum(
        G,
        0,
        (m - 2 * i - 5) // 2,
        lambda mu: G.mono(m - 2 * i - 4 - 2 * mu, 2 * i + 2 + mu) * (ratio * a(g, mu) + a(m - 2 * i, 1 + mu)),
    )
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 1, 1), rhs * G.V12


def _e14(G, q, m, _i, alt):
    return q.left(G, 0, 0, 2, 0), G.d((m - 2) // 2) * G.V1 * (-1) ** (m // 2)


def _e15(G, q, m, _i, alt):
    rhs = -(G.b(m - 2) * G.V1) + G.d((m - 3) // 2) * G.V2 * (-1) ** ((m + 3) // 2)
    return q.left(G, 0, 0, 2, 0), rhs


def _e16(G, q, m, _i, alt):
    return q.left(G, 0, 0, 0, 2), G.c2(2) * G.d((m - 4) // 2) * G.V1 * (-1) ** ((m + 2) // 2)


def _e17(G, q, m, _i, alt):
    return q.left(G, 0, 0, 0, 2), G.c2(1) * G.d((m - 3) // 2) * G.V2 * (-1) ** ((m + 1) // 2)


def _e5_rewritten(G, q, m, i, alt):
    first = G.c2(2 * i + 2) * G.d((m - 2 * i - 4) // 2) * (
        (-1) ** ((m + 2 * i + 2) // 2) * ((-1) ** i * (2 * i - 1) + 1)
    )
    first = first + _a_tower(G, m - 2 * i - 1, m - 2 * i - 2, 2 * i + 1, 1, (m - 2 * i - 2) // 2)
    lo = 0 if alt else -1
    mixed = _sum(G, lo, i - 2, lambda mu: G.mono(2 * i - 3 - 2 * mu, 2 + mu) * (2 * a(2 * i - 1, mu)))
    rhs = first * G.V1 + mixed * G.V12 - bracket_low(G, i - 1) * q(4 * i - 2, 2 * i + 1)
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 1, 0), rhs


# --------------------------------------------------------------------------
# n = 2m + 1; V1 = v_{2m-2}, V2 = v_{2m}


def _o1(G, q, m, _i, alt):
    rhs = _binom_tower(G, m - 1, 0, (m - 1) // 2) + G.V1 * (2 * (-1) ** (m + 1))
    return q.left(G, m - 1, 0), rhs


def _o2(G, q, m, k, alt):
    rhs = _binom_tower(G, m - k - 1, k, (m - k - 1) // 2)
    rhs = rhs + G.c2(1) * G.b(k - 2) * G.V1 * (2 * (-1) ** (m + k))
    rhs = rhs + G.b(k - 1) * G.V2 * (2 * (-1) ** (m + k + 1))
    return q.left(G, m - k - 1, k), rhs


def _o3(G, q, m, i, alt):
    rhs = _binom_tower(G, m - 2 * i - 1, 2 * i, (m - 2 * i - 2) // 2) * G.V1
    rhs = rhs + G.c2(2 * i) * G.d((m - 2 * i - 2) // 2) * G.V2 * (
        (-1) ** ((m + 2 * i + 2) // 2) * q(2, 2 * i - 1)
    )
    ratio = q(2 * i + 1, 2 * i - 1)

    def term(mu):
        first = ratio * a(2 * i - 1, mu - 1) if i >= 1 else 0
        return G.mono(2 * i - 1 - 2 * mu, mu) * (2 * (first + a(2 * i + 1, mu)))

    rhs = rhs - _sum(G, 0, i - 1, term) * G.V12
    return q.left(G, m - 2 * i - 1, 2 * i, 1, 0), rhs


def _o4(G, q, m, i, alt):
    first = G.c2(2 * i + 1) * G.d((m - 2 * i - 3) // 2) * ((-1) ** ((m + 2 * i + 3) // 2) * q(4 * i, 2 * i + 1))
    first = first + _a_tower(G, m - 2 * i, m - 2 * i - 1, 2 * i, 1, (m - 2 * i - 1) // 2)
    rhs = first * G.V1 + _mixed(G, q, i, 1, alt) * G.V12
    return q.left(G, m - 2 * i - 1, 2 * i, 1, 0), rhs


def _o5(G, q, m, i, alt):
    rhs = _binom_tower(G, m - 2 * i - 2, 2 * i + 1, (m - 2 * i - 2) // 2) * G.V1
    rhs = rhs + _a_tower(G, 2 * i + 1, 2 * i, 0, 0, i) * G.V12 * (2 * (-1) ** (m + 1))
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 1, 0), rhs


def _o6(G, q, m, _i, alt):
    rhs = _binom_tower(G, m - 1, 0, (m - 1) // 2) * G.V2 + G.V12 * (2 * (-1) ** (m + 1))
    return q.left(G, m - 1, 0, 0, 1), rhs


def _o7(G, q, m, i, alt):
    rhs = _binom_tower(G, m - 2 * i - 1, 2 * i, (m - 2 * i - 1) // 2) * G.V2
    rhs = rhs + _a_tower(G, 2 * i - 1, 2 * i - 2, 1, 0, i - 1) * G.V12 * (2 * (-1) ** m)
    return q.left(G, m - 2 * i - 1, 2 * i, 0, 1), rhs


def _o8(G, q, m, i, alt):
    first = G.c2(2 * i + 2) * G.d((m - 2 * i - 4) // 2) * ((-1) ** ((m + 2 * i + 2) // 2) * q(4 * i, 2 * i + 1))
    first = first + _a_tower(G, m - 2 * i - 1, m - 2 * i - 2, 2 * i + 1, 1, (m - 2 * i - 2) // 2)
    rhs = first * G.V2 + _mixed(G, q, i, 2, alt) * G.V12
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 0, 1), rhs


def _o9(G, q, m, i, alt):
    rhs = G.c2(2 * i + 3) * G.d((m - 2 * i - 5) // 2) * G.V1 * (
        (-1) ** ((m + 2 * i + 3) // 2) * q(2, 2 * i + 3)
    )
    rhs = rhs + _binom_tower(G, m - 2 * i - 2, 2 * i + 1, (m - 2 * i - 3) // 2) * G.V2
    ratio = q(2 * i + 1, 2 * i + 3)
    lo = 0 if alt else -1
    rhs = rhs + _sum(
        G,
        lo,
        i - 1,
        lambda mu: G.mono(2 * i - 1 - 2 * mu, 1 + mu)
        * (2 * (a(2 * i + 1, mu) - a(2 * i + 1, 1 + mu) + ratio * a(2 * i + 3, 1 + mu))),
    ) * G.V12
    return q.left(G, m - 2 * i - 2, 2 * i + 1, 0, 1), rhs


def _o14(G, q, m, _i, alt):
    return q.left(G, 0, 0, 2, 0), G.d((m - 2) // 2) * G.V2 * (-1) ** ((m + 2) // 2)


def _o15(G, q, m, _i, alt):
    return q.left(G, 0, 0, 2, 0), G.c2(1) * G.d((m - 3) // 2) * G.V1 * (-1) ** ((m + 1) // 2)


def _o16(G, q, m, _i, alt):
    return q.left(G, 0, 0, 0, 2), G.c2(2) * G.d((m - 4) // 2) * G.V2 * (-1) ** (m // 2)


def _o17(G, q, m, _i, alt):
    rhs = G.c2(3) * G.d((m - 5) // 2) * G.V1 * ((-1) ** ((m + 1) // 2) * q(1, 3))
    rhs = rhs - G.mono(1, 0, 1, 1) * q(2, 3)
    return q.left(G, 0, 0, 0, 2), rhs


ENTRIES: List[Entry] = [
    Entry("even-1", True, None, None, _no_index, _e1),
    Entry("even-2", True, None, "k", lambda m: range(1, m), _e2),
    Entry("even-3", True, None, None, _no_index, _e3),
    Entry("even-4", True, None, "i", lambda m: range(1, (m - 1) // 2 + 1), _e4),
    Entry("even-5", True, 0, "i", lambda m: range(0, (m - 2) // 2 + 1), _e5, True),
    Entry("even-6", True, 1, "i", lambda m: range(0, (m - 3) // 2 + 1), _e6, True),
    Entry("even-7", True, 0, "i", lambda m: range(0, (m - 2) // 2 + 1), _e7, True),
    Entry("even-8", True, 1, "i", lambda m: range(0, (m - 1) // 2 + 1), _e8, True),
    Entry("even-9", True, None, "i", lambda m: range(0, (m - 2) // 2 + 1), _e9),
    Entry("even-10", True, 0, "i", lambda m: range(0, (m - 2) // 2 + 1), _e10),
    Entry("even-11", True, 1, "i", lambda m: range(0, (m - 1) // 2 + 1), _e11),
    Entry("even-12", True, 0, "i", lambda m: range(0, (m - 2) // 2 + 1), _e12),
    Entry("even-13", True, 1, "i", lambda m: range(0, (m - 3) // 2 + 1), _e13),
    Entry("even-14", True, 0, None, _no_index, _e14),
    Entry("even-15", True, 1, None, _no_index, _e15),
    Entry("even-16", True, 0, None, _no_index, _e16),
    Entry("even-17", True, 1, None, _no_index, _e17),
    Entry("even-5r", True, 0, "i", lambda m: range(1, (m - 2) // 2 + 1), _e5_rewritten, True),
    Entry("odd-1", False, None, None, _no_index, _o1),
    Entry("odd-2", False, None, "k", lambda m: range(1, m), _o2),
    Entry("odd-3", False, 0, "i", lambda m: range(0, (m - 2) // 2 + 1), _o3),
    Entry("odd-4", False, 1, "i", lambda m: range(0, (m - 1) // 2 + 1), _o4, True),
    Entry("odd-5", False, None, "i", lambda m: range(0, (m - 2) // 2 + 1), _o5),
    Entry("odd-6", False, None, None, _no_index, _o6),
    Entry("odd-7", False, None, "i", lambda m: range(1, (m - 1) // 2 + 1), _o7),
    Entry("odd-8", False, 0, "i", lambda m: range(0, (m - 2) // 2 + 1), _o8, True),
    Entry("odd-9", False, 1, "i", lambda m: range(0, (m - 3) // 2 + 1), _o9, True),
    Entry("odd-10", False, 0, "i", lambda m: range(0, (m - 2) // 2 + 1), _e10),
    Entry("odd-11", False, 1, "i", lambda m: range(0, (m - 1) // 2 + 1), _e11),
    Entry("odd-12", False, 0, "i", lambda m: range(0, (m - 2) // 2 + 1), _e12),
    Entry("odd-13", False, 1, "i", lambda m: range(0, (m - 3) // 2 + 1), _e13),
    Entry("odd-14", False, 0, None, _no_index, _o14),
    Entry("odd-15", False, 1, None, _no_index, _o15),
    Entry("odd-16", False, 0, None, _no_index, _o16),
    Entry("odd-17", False, 1, None, _no_index, _o17),
]

ENTRY_BY_LABEL = {e.label: e for e in ENTRIES}


@dataclass
class EntryResult:
    label: str
    index: Optional[int]
    holds: bool
    two_local: bool
    integral: bool
    coefficients: List[Fraction] = field(default_factory=list)
    alternative_holds: Optional[bool] = None  # summation started at mu = 0 instead of -1
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.holds and self.two_local

    def to_json(self) -> Dict[str, object]:
        return {
            "entry": self.label,
            "index": self.index,
            "holds": self.holds,
            "two_local": self.two_local,
            "integral": self.integral,
            "coefficients": [str(c) for c in self.coefficients],
            "alternative_holds": self.alternative_holds,
            "error": self.error,
        }


def evaluate_entry(C: ChowY, entry: Entry, idx: Optional[int]) -> EntryResult:
    G, m = C.gens, C.m
    q = Coefficients()
    try:
        lhs, rhs = entry.body(G, q, m, idx, False)
    except ValueError as exc:  # an index left the domain of a_{g,mu}
        return EntryResult(entry.label, idx, False, False, False, error=str(exc))
    holds = lhs == rhs
    alt = None
    if entry.uses_mu_minus_one:
        try:
            lhs2, rhs2 = entry.body(G, Coefficients(), m, idx, True)
            alt = lhs2 == rhs2
        except ValueError:
            alt = None
    return EntryResult(entry.label, idx, holds, q.two_local, q.integral, list(q.values), alt)


def entries_for(n: int) -> List[Entry]:
    return [e for e in ENTRIES if e.applies(n)]


def verify_tables(C: ChowY, labels: Optional[List[str]] = None) -> List[EntryResult]:
    """Evaluate every applicable entry at every admissible index."""
    out = []
    for entry in entries_for(C.n):
        if labels is not None and entry.label not in labels:
            continue
        indices = list(entry.index_range(C.m)) if entry.index_name else [None]
        for idx in indices:
            out.append(evaluate_entry(C, entry, idx))
    return out
