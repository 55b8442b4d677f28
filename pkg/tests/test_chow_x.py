import random

import pytest

from chowkit.chow_x import (
    c1_matrix_family,
    compute_chow_x,
    element_order,
    expected_x_structure,
    match_reports,
    normalize_torsion,
    verify_chow_x,
)
from chowkit.chow_y import build_basis
from chowkit.lattice import AbelianGroupReport, cokernel


def _group(n):
    return compute_chow_x(build_basis(n)).group


def _torsion_by_degree(group):
    return {d: t for d, (_, t) in group.degrees.items() if t}


def _free_by_degree(group):
    return {d: f for d, (f, _) in group.degrees.items() if f}


def test_n8_structure():
    g = _group(8)
    assert _free_by_degree(g) == {0: 1, 4: 2, 8: 1}
    assert g.free_rank() == 4
    assert _torsion_by_degree(g) == {6: [2], 10: [2, 2], 14: [2]}


def test_n9_cyclic_of_order_2t():
    assert 4 in _torsion_by_degree(_group(9))[12]


def test_n10_order_four():
    t = _torsion_by_degree(_group(10))
    assert t[10] == [2] and t[18] == [2] and t[14] == [4]


def test_n11_odd_torsion():
    assert _torsion_by_degree(_group(11))[16] == [5]


@pytest.mark.parametrize("n", range(8, 16))
def test_degree_two_kills_c1(n):
    assert _group(n).degrees[2] == (0, [])


@pytest.mark.parametrize("n", [8, 9, 10, 11, 12, 13, 14, 15])
def test_matches_expected_structure(n):
    rep, exp, diff = verify_chow_x(n)
    assert diff == []
    assert rep.group.torsion_order() == exp.as_group().torsion_order()
    assert all(order == exp.generators[name][1] for name, (_, order) in rep.generator_orders.items())


def test_small_n_has_no_expectation():
    rep, exp, diff = verify_chow_x(7)
    assert exp is None and diff == []
    with pytest.raises(ValueError):
        expected_x_structure(6)


def test_synthetic_perturbation_is_reported():
    rep, exp, _ = verify_chow_x(10)
    broken = AbelianGroupReport({d: (f, list(t)) for d, (f, t) in rep.group.degrees.items()})
    broken.degrees[14] = (broken.degrees[14][0], [])
    diff = match_reports(broken, exp)
    assert diff == [{"deg": 14, "field": "torsion", "actual": [], "expected": [4]}]


def test_normalize_torsion():
    assert normalize_torsion([2, 3]) == [6]
    assert normalize_torsion([2, 2]) == [2, 2]
    assert normalize_torsion([1]) == []


def test_element_order():
    M = [[2, 0], [0, 0]]
    assert element_order(M, [1, 0]) == 2
    assert element_order(M, [2, 0]) == 1
    assert element_order(M, [0, 1]) is None


@pytest.mark.parametrize("n", [8, 11])
def test_c1_matrices_are_multiplication_by_c1(n):
    C = build_basis(n)
    maps = c1_matrix_family(C)
    bd = C.by_degree()
    c1 = C.R.c1()
    rng = random.Random(n)
    for deg, M in maps.items():
        if deg + 2 not in bd or deg not in bd:
            continue
        x = [rng.randint(-3, 3) for _ in bd[deg]]
        full = [0] * C.rank
        for idx, val in zip(bd[deg], x):
            full[idx] = val
        elem = C.element(full)
        image = C.coords(c1 * elem)
        assert image is not None
        expect = image.get(deg + 2, [0] * len(bd[deg + 2]))
        assert [sum(r * v for r, v in zip(row, x)) for row in M] == expect


@pytest.mark.parametrize("n", [9, 10])
def test_basis_order_does_not_matter(n):
    C = build_basis(n)
    maps = c1_matrix_family(C)
    dims = {d: len(ix) for d, ix in C.by_degree().items()}
    rng = random.Random(0)
    perm = {d: rng.sample(range(k), k) for d, k in dims.items()}
    shuffled = {}
    for d, M in maps.items():
        rows = perm.get(d + 2, [])
        cols = perm[d]
        shuffled[d] = [[M[r][c] for c in cols] for r in rows]
    assert cokernel(shuffled, dims).degrees == cokernel(maps, dims).degrees


def test_report_json():
    rep, exp, _ = verify_chow_x(11)
    out = rep.to_json(exp)
    assert out["matches_expected"] is True
    assert out["case"] == "4t+3" and out["t"] == 2
    assert {"deg": 16, "free_rank": 0, "torsion": [5]} in out["degrees"]
