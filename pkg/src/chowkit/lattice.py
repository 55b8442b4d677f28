"""Exact linear algebra over Z and Q.

Hermite and Smith normal forms, graded lattices of full or partial rank
inside a rational ambient space, sublattice indices, membership and
cokernels of graded integer maps.  Everything is exact: Python ints and
``fractions.Fraction``, no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

IntMatrix = List[List[int]]
RatVector = Sequence[Fraction]


# --------------------------------------------------------------------------
# small matrix helpers


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    if any(len(row) != inner for row in A):
        raise ValueError("shape mismatch in matmul")
    Bt = list(zip(*B)) if B else [()] * cols
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def common_denominator(values) -> int:
    den = 1
    for v in values:
        den = _lcm(den, Fraction(v).denominator)
    return den


def det(A: Sequence[Sequence]) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for j in range(n):
        p = next((i for i in range(j, n) if M[i][j]), None)
        if p is None:
            return Fraction(0)
        if p != j:
            M[j], M[p] = M[p], M[j]
            result = -result
        piv = M[j][j]
        result *= piv
        for i in range(j + 1, n):
            if M[i][j]:
                q = M[i][j] / piv
                Mi, Mj = M[i], M[j]
                for k in range(j, n):
                    Mi[k] -= q * Mj[k]
    return result


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        if piv != 1:
            M[r] = [x / piv for x in M[r]]
        pr = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                q = M[i][c]
                Mi = M[i]
                for k in range(c, ncols):
                    if pr[k]:
                        Mi[k] -= q * pr[k]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def rank_mod_p(rows: Sequence[Sequence[int]], p: int, ncols: Optional[int] = None) -> int:
    """Rank over Z/p of an integer matrix."""
    M = [[x % p for x in row] for row in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                q = M[i][c]
                M[i] = [(x - q * y) % p for x, y in zip(M[i], M[r])]
        r += 1
    return r


# --------------------------------------------------------------------------
# Hermite normal form (column style)


def hnf(A: Sequence[Sequence[int]]) -> IntMatrix:
    """Column-style Hermite normal form H = A U with U unimodular.

    H is in column echelon form: pivot rows strictly increase with the
    column index, pivots are positive, the entries of a pivot row lying in
    earlier columns are reduced into ``[0, pivot)``, and zero columns come
    last.  The columns of H span the same Z-module as those of A.
    """
    H = [list(map(int, row)) for row in A]
    rows = len(H)
    cols = len(H[0]) if H else 0
    pivot_col = 0
    pivots: List[Tuple[int, int]] = []
    for r in range(rows):
        if pivot_col >= cols:
            break
        # gcd-combine columns pivot_col.. on row r
        while True:
            nz = [j for j in range(pivot_col, cols) if H[r][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(H[r][j]))
            _swap_cols(H, pivot_col, j0)
            done = True
            for j in range(pivot_col + 1, cols):
                if H[r][j]:
                    q = H[r][j] // H[r][pivot_col]
                    _add_col(H, j, pivot_col, -q)
                    if H[r][j]:
                        done = False
            if done:
                break
        if H[r][pivot_col] == 0:
            continue
        if H[r][pivot_col] < 0:
            for i in range(rows):
                H[i][pivot_col] = -H[i][pivot_col]
        piv = H[r][pivot_col]
        for j in range(pivot_col):
            q = H[r][j] // piv
            if q:
                _add_col(H, j, pivot_col, -q)
        pivots.append((r, pivot_col))
        pivot_col += 1
    return H


def _swap_cols(M: IntMatrix, i: int, j: int) -> None:
    if i != j:
        for row in M:
            row[i], row[j] = row[j], row[i]


def _add_col(M: IntMatrix, dst: int, src: int, q: int) -> None:
    for row in M:
        row[dst] += q * row[src]


# --------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """``U @ A @ V == diag(factors, zeros)`` with U, V unimodular."""

    factors: List[int]
    U: IntMatrix
    V: IntMatrix
    shape: Tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.factors)

    def diagonal_matrix(self) -> IntMatrix:
        D = zeros(*self.shape)
        for i, f in enumerate(self.factors):
            D[i][i] = f
        return D


def snf(A: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with transforms, smallest-|entry| pivoting."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [list(map(int, row)) for row in A]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        M[dst] = [x + q * y for x, y in zip(M[dst], M[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def swap_c(i, j):
        _swap_cols(M, i, j)
        _swap_cols(V, i, j)

    def add_c(dst, src, q):
        _add_col(M, dst, src, q)
        _add_col(V, dst, src, q)

    t = 0
    while t < min(rows, cols):
        entries = [(abs(M[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if M[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_c(t, pj)
        while True:
            piv = M[t][t]
            changed = False
            for i in range(t + 1, rows):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // piv))
                    if M[i][t]:
                        changed = True
            for j in range(t + 1, cols):
                if M[t][j]:
                    add_c(j, t, -(M[t][j] // piv))
                    if M[t][j]:
                        changed = True
            if changed:
                # move the smallest leftover of row/column t into the pivot
                cand = [(abs(M[i][t]), i, t) for i in range(t, rows) if M[i][t]]
                cand += [(abs(M[t][j]), t, j) for j in range(t, cols) if M[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_c(t, j)
                continue
            # row and column are clear; enforce divisibility on the rest
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if M[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    factors = [M[i][i] for i in range(min(rows, cols)) if M[i][i]]
    return SmithForm(factors, U, V, (rows, cols))


def invariant_factors(A: Sequence[Sequence[int]]) -> List[int]:
    return snf(A).factors


# --------------------------------------------------------------------------
# solving against a fixed basis


class BasisSolver:
    """Coordinates of vectors with respect to a fixed set of independent vectors.

    ``basis`` rows live in Q^N.  The inverse map is stored as an integer
    matrix over a common denominator so repeated solves stay in int
    arithmetic.
    """

    def __init__(self, basis: Sequence[RatVector], ambient_dim: int):
        self.k = len(basis)
        self.N = ambient_dim
        rows = [[Fraction(x) for x in v] for v in basis]
        if any(len(v) != ambient_dim for v in rows):
            raise ValueError("basis vector of the wrong length")
        # pivot columns of the echelon form pick k coordinates with an invertible minor
        _, sel = rref(rows, ambient_dim)
        if len(sel) != self.k:
            raise ValueError("basis vectors are linearly dependent")
        minor = [[rows[i][c] for c in sel] for i in range(self.k)]
        inv = _inverse(minor) if self.k else []  # v_sel = x @ minor  =>  x = v_sel @ inv
        den = common_denominator(x for row in inv for x in row)
        self._sel = sel
        self._inv_int = [[int(x * den) for x in row] for row in inv]
        self._den = den
        self._rows = rows

    def solve(self, v: RatVector) -> Optional[List[Fraction]]:
        """Rational coordinates of v, or None when v is outside the span."""
        if len(v) != self.N:
            raise ValueError(f"vector of length {len(v)} in a {self.N}-dimensional ambient space")
        vden = common_denominator(v)
        vi = [int(Fraction(x) * vden) for x in v]
        sel = [vi[c] for c in self._sel]
        k = self.k
        inv = self._inv_int
        num = [sum(sel[r] * inv[r][j] for r in range(k) if sel[r]) for j in range(k)]
        total = self._den * vden
        x = [Fraction(n, total) for n in num]
        if self.k < self.N:
            # check the remaining coordinates
            for c in range(self.N):
                if sum(x[i] * self._rows[i][c] for i in range(k)) != v[c]:
                    return None
        return x

    def solve_int(self, v: RatVector) -> Optional[List[int]]:
        x = self.solve(v)
        if x is None or any(c.denominator != 1 for c in x):
            return None
        return [int(c) for c in x]


def _inverse(A: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    ech, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(ech) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in ech]


def inverse(A: Sequence[Sequence]) -> List[List[Fraction]]:
    return _inverse([[Fraction(x) for x in row] for row in A])


# --------------------------------------------------------------------------
# graded lattices


class NotContained(ValueError):
    pass


class GradedLattice:
    """Free abelian group graded by even degree, given by rational coordinates.

    ``pieces[deg]`` is a list of basis vectors in the ambient space of that
    degree, whose dimension is ``dims[deg]``.
    """

    def __init__(self, pieces: Mapping[int, Sequence[RatVector]], dims: Mapping[int, int]):
        self.dims = dict(dims)
        self.pieces: Dict[int, List[Tuple[Fraction, ...]]] = {}
        self._solvers: Dict[int, BasisSolver] = {}
        for deg, vecs in pieces.items():
            if deg % 2:
                raise ValueError("lattice degrees must be even")
            if deg not in self.dims:
                raise ValueError(f"no ambient dimension for degree {deg}")
            self.pieces[deg] = [tuple(Fraction(x) for x in v) for v in vecs]
        for deg in self.dims:
            self.pieces.setdefault(deg, [])
        for deg, vecs in self.pieces.items():
            self._solvers[deg] = BasisSolver(vecs, self.dims[deg])

    def rank(self, deg: Optional[int] = None) -> int:
        if deg is None:
            return sum(len(v) for v in self.pieces.values())
        return len(self.pieces.get(deg, []))

    def degrees(self) -> List[int]:
        return sorted(self.pieces)

    def coords_in(self, v: RatVector, deg: int) -> Optional[List[int]]:
        """Integer coordinates of v in this lattice, or None if v is not a member."""
        if deg not in self._solvers:
            raise ValueError(f"degree {deg} not part of the ambient space")
        return self._solvers[deg].solve_int(v)

    def rational_coords(self, v: RatVector, deg: int) -> Optional[List[Fraction]]:
        if deg not in self._solvers:
            raise ValueError(f"degree {deg} not part of the ambient space")
        return self._solvers[deg].solve(v)

    def contains(self, other: "GradedLattice") -> bool:
        for deg, vecs in other.pieces.items():
            for v in vecs:
                if self.coords_in(v, deg) is None:
                    return False
        return True


def index_of(sub: GradedLattice, sup: GradedLattice) -> int:
    """[sup : sub] for sub contained in sup with equal ranks in every degree."""
    total = 1
    for deg in sorted(set(sub.pieces) | set(sup.pieces)):
        if sub.rank(deg) != sup.rank(deg):
            raise ValueError(f"rank mismatch in degree {deg}: {sub.rank(deg)} vs {sup.rank(deg)}")
        rows = []
        for v in sub.pieces.get(deg, []):
            c = sup.coords_in(v, deg)
            if c is None:
                raise NotContained(f"sublattice vector in degree {deg} is not in the lattice")
            rows.append(c)
        if rows:
            total *= abs(int(det(rows)))
    return total


# --------------------------------------------------------------------------
# cokernels


@dataclass
class AbelianGroupReport:
    """Per-degree structure of a graded finitely generated abelian group."""

    degrees: Dict[int, Tuple[int, List[int]]] = field(default_factory=dict)
    annotations: Dict[int, List[str]] = field(default_factory=dict)

    def free_rank(self, deg: Optional[int] = None) -> int:
        if deg is None:
            return sum(fr for fr, _ in self.degrees.values())
        return self.degrees.get(deg, (0, []))[0]

    def torsion(self, deg: int) -> List[int]:
        return list(self.degrees.get(deg, (0, []))[1])

    def torsion_order(self) -> int:
        out = 1
        for _, tors in self.degrees.values():
            for t in tors:
                out *= t
        return out

    def nonzero_degrees(self) -> List[int]:
        return sorted(d for d, (fr, tors) in self.degrees.items() if fr or tors)


def cokernel(maps: Mapping[int, Sequence[Sequence[int]]], dims: Mapping[int, int], step: int = 2) -> AbelianGroupReport:
    """Cokernel of a graded map raising degree by ``step``.

    ``maps[d]`` is the ``dims[d+step] x dims[d]`` integer matrix of the map
    on degree-d coordinates (columns are images of basis vectors).
    """
    report = AbelianGroupReport()
    for deg in sorted(dims):
        target = dims[deg]
        src = deg - step
        M = maps.get(src)
        if M is None or dims.get(src, 0) == 0:
            report.degrees[deg] = (target, [])
            continue
        if len(M) != target or any(len(row) != dims[src] for row in M):
            raise ValueError(
                f"map from degree {src} has shape {len(M)}x{len(M[0]) if M else 0}, "
                f"expected {target}x{dims[src]}"
            )
        factors = snf(M).factors
        report.degrees[deg] = (target - len(factors), [f for f in factors if f > 1])
    for src in maps:
        if src + step not in dims and any(any(row) for row in maps[src]):
            raise ValueError(f"map from degree {src} lands outside the graded group")
    return report
