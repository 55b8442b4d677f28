"""CH(X_n) as the cokernel of multiplication by c1 on CH(Y_n).

X_n is a G_m-bundle over Y_n with first Chern class c1, so

    CH(Y_n) --(.c1)--> CH(Y_n) --> CH(X_n) --> 0

is exact.  Everything here is group-level: per degree, a free rank and a
list of invariant factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Tuple

from .chow_y import ChowY, build_basis
from .lattice import AbelianGroupReport, cokernel, snf
from .quotient import RingElem

MIN_N_CASES = 8


def c1_matrix_family(C: ChowY) -> Dict[int, List[List[int]]]:
    """maps[d] = integer matrix of .c1 from degree d to degree d+2 in the basis of C."""
    c1 = C.R.c1()
    bd = C.by_degree()
    out: Dict[int, List[List[int]]] = {}
    for deg in range(0, C.R.top_degree + 1, 2):
        src = bd.get(deg, [])
        tgt = bd.get(deg + 2, [])
        cols = []
        for idx in src:
            img = c1 * C.basis[idx].elem
            if img.is_zero():
                cols.append([0] * len(tgt))
                continue
            c = C.lattice.coords_in(img.coords(deg + 2), deg + 2) if tgt else None
            if c is None:
                raise ArithmeticError(f"n={C.n}: c1 * basis element {idx} is not integral")
            cols.append(c)
        out[deg] = [list(row) for row in zip(*cols)] if cols and tgt else [[0] * len(src) for _ in tgt]
    return out


def normalize_torsion(orders: List[int]) -> List[int]:
    """Invariant factors (> 1) of a direct sum of cyclic groups of the given orders."""
    if not orders:
        return []
    n = len(orders)
    diag = [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return [f for f in snf(diag).factors if f > 1]


def element_order(M: List[List[int]], x: List[int]) -> Optional[int]:
    """Order of x in Z^k / (column span of M); None for infinite order, 1 for zero."""
    k = len(x)
    if not M or not M[0]:
        return 1 if not any(x) else None
    S = snf(M)
    y = [sum(u * v for u, v in zip(row, x)) for row in S.U]
    order = 1
    for i in range(k):
        if i < len(S.factors):
            d = S.factors[i]
            part = d // gcd(d, y[i])
            order = order * part // gcd(order, part)
        elif y[i]:
            return None
    return order


@dataclass
class ChowXReport:
    n: int
    case: str
    t: int
    group: AbelianGroupReport
    generator_orders: Dict[str, Tuple[int, Optional[int]]] = field(default_factory=dict)

    def to_json(self, expectation: Optional["StructureExpectation"] = None) -> Dict[str, object]:
        degrees = [
            {"deg": deg, "free_rank": fr, "torsion": list(tors)}
            for deg, (fr, tors) in sorted(self.group.degrees.items())
            if fr or tors
        ]
        out: Dict[str, object] = {"n": self.n, "case": self.case, "t": self.t, "degrees": degrees}
        if expectation is None:
            out["matches_expected"] = None
            out["diff"] = []
        else:
            diff = match_reports(self, expectation)
            diff += generator_order_diff(self, expectation)
            out["matches_expected"] = not diff
            out["diff"] = diff
        out["generators"] = {
            name: {"deg": deg, "order": order} for name, (deg, order) in sorted(self.generator_orders.items())
        }
        return out


def _case_of(n: int) -> Tuple[str, int]:
    t, r = divmod(n, 4)
    return ("4t", "4t+1", "4t+2", "4t+3")[r], t


def compute_chow_x(C: ChowY) -> ChowXReport:
    maps = c1_matrix_family(C)
    dims = {deg: len(ix) for deg, ix in C.by_degree().items()}
    group = cokernel(maps, dims)
    case, t = _case_of(C.n)
    report = ChowXReport(C.n, case, t, group)
    if C.n >= MIN_N_CASES:
        for name, (deg, elem, _) in named_generators(C).items():
            report.generator_orders[name] = (deg, _order_in_cokernel(C, maps, deg, elem))
    return report


def _order_in_cokernel(C: ChowY, maps, deg: int, elem: RingElem) -> Optional[int]:
    coords = C.lattice.coords_in(elem.coords(deg), deg)
    if coords is None:
        raise ArithmeticError(f"named generator in degree {deg} is not integral")
    M = maps.get(deg - 2)
    if M is None or not M or not M[0]:
        return 1 if not any(coords) else None
    return element_order(M, coords)


@dataclass
class StructureExpectation:
    n: int
    t: int
    case: str
    free: Dict[int, int]
    torsion: Dict[int, List[int]]
    # name -> (degree, expected order; None = infinite)
    generators: Dict[str, Tuple[int, Optional[int]]]

    def as_group(self) -> AbelianGroupReport:
        degs = sorted(set(self.free) | set(self.torsion))
        rep = AbelianGroupReport()
        for d in degs:
            rep.degrees[d] = (self.free.get(d, 0), normalize_torsion(self.torsion.get(d, [])))
        return rep


def _generator_names(n: int):
    """(name, c2-power, v-exponents, expected order) for every named generator."""
    case, t = _case_of(n)
    if n < MIN_N_CASES:
        raise ValueError(
            f"n={n}: the case formulas need t >= 2 (n >= {MIN_N_CASES}); "
            f"here t={t} and generators such as c2^(t-1) v degenerate"
        )
    out = []
    # (e1, e2) refer to the lower/higher v-class of Y_n
    if case == "4t":
        for k in range(t):
            out.append((k, (0, 0), None))
            out.append((k, (1, 0), None))
            out.append((k, (0, 1), 2))
            out.append((k, (1, 1), 2))
    elif case == "4t+1":
        for k in range(t):
            out.append((k, (0, 0), None))
            out.append((k, (1, 0), 2))
            out.append((k, (1, 1), 2))
        for k in range(t - 1):
            out.append((k, (0, 1), None))
        out.append((t - 1, (0, 1), 2 * t))
    elif case == "4t+2":
        for k in range(t):
            out.append((k, (0, 0), None))
            out.append((k, (0, 1), None))
        out.append((0, (1, 0), None))
        for k in range(t - 1):
            out.append((k + 1, (1, 0), 2))
            out.append((k + 1, (1, 1), 2))
        out.append((0, (1, 1), 4))
    else:
        for k in range(t):
            out.append((k, (0, 0), None))
            out.append((k, (1, 0), None))
            out.append((k, (0, 1), 2))
            out.append((k, (1, 1), 2))
        out.append((t, (1, 0), 2 * t + 1))
    return out


def _gen_name(k: int, eps: Tuple[int, int], vdeg: Tuple[int, int]) -> str:
    parts = []
    if k:
        parts.append("c2" if k == 1 else f"c2^{k}")
    if eps[0]:
        parts.append(f"v{vdeg[0]}")
    if eps[1]:
        parts.append(f"v{vdeg[1]}")
    return " ".join(parts) or "1"


def _v_degrees(n: int) -> Tuple[int, int]:
    m = n // 2
    return (2 * m - 4, 2 * m - 2) if n % 2 == 0 else (2 * m - 2, 2 * m)


def expected_x_structure(n: int) -> StructureExpectation:
    """Literal per-degree expansion of the free and torsion parts of CH(X_n)."""
    case, t = _case_of(n)
    vdeg = _v_degrees(n)
    free: Dict[int, int] = {}
    torsion: Dict[int, List[int]] = {}
    gens: Dict[str, Tuple[int, Optional[int]]] = {}
    for k, eps, order in _generator_names(n):
        deg = 4 * k + eps[0] * vdeg[0] + eps[1] * vdeg[1]
        gens[_gen_name(k, eps, vdeg)] = (deg, order)
        if order is None:
            free[deg] = free.get(deg, 0) + 1
        else:
            torsion.setdefault(deg, []).append(order)
    return StructureExpectation(n, t, case, free, torsion, gens)


def named_generators(C: ChowY) -> Dict[str, Tuple[int, RingElem, Optional[int]]]:
    """Named generators of the expected answer as elements of CH(Y_n)."""
    G = C.gens
    out = {}
    for k, eps, order in _generator_names(C.n):
        elem = G.mono(0, k, *eps)
        deg = 4 * k + eps[0] * C.v_degrees[0] + eps[1] * C.v_degrees[1]
        out[_gen_name(k, eps, C.v_degrees)] = (deg, elem, order)
    return out


def match_reports(actual, expected) -> List[Dict[str, object]]:
    """Per-degree differences in free rank and invariant factors; empty when equal."""
    act = actual.group if isinstance(actual, ChowXReport) else actual
    exp = expected.as_group() if isinstance(expected, StructureExpectation) else expected
    diff = []
    for deg in sorted(set(act.degrees) | set(exp.degrees)):
        fa, ta = act.degrees.get(deg, (0, []))
        fe, te = exp.degrees.get(deg, (0, []))
        if fa != fe:
            diff.append({"deg": deg, "field": "free_rank", "actual": fa, "expected": fe})
        if sorted(ta) != sorted(te):
            diff.append({"deg": deg, "field": "torsion", "actual": sorted(ta), "expected": sorted(te)})
    return diff


def generator_order_diff(actual: ChowXReport, expected: StructureExpectation) -> List[Dict[str, object]]:
    diff = []
    for name, (deg, order) in sorted(expected.generators.items()):
        got = actual.generator_orders.get(name)
        if got is None:
            continue
        if got[1] != order:
            diff.append({"deg": deg, "field": "generator_order", "generator": name, "actual": got[1], "expected": order})
    return diff


def verify_chow_x(n: int) -> Tuple[ChowXReport, Optional[StructureExpectation], List[Dict[str, object]]]:
    C = build_basis(n)
    rep = compute_chow_x(C)
    if n < MIN_N_CASES:
        return rep, None, []
    exp = expected_x_structure(n)
    return rep, exp, match_reports(rep, exp) + generator_order_diff(rep, exp)
