from fractions import Fraction

import pytest

from chowkit.chow_y import build_basis
from chowkit.tables import (
    ENTRIES,
    ENTRY_BY_LABEL,
    Coefficients,
    entries_for,
    evaluate_entry,
    verify_tables,
)


@pytest.mark.parametrize("n", [8, 9, 10, 11, 12, 13, 14, 15])
def test_every_entry_holds(n):
    results = verify_tables(build_basis(n))
    assert results
    bad = [(r.label, r.index) for r in results if not r.ok]
    assert bad == []


def test_entries_split_by_parity():
    even = {e.label for e in entries_for(12)}
    odd = {e.label for e in entries_for(13)}
    assert all(label.startswith("even") for label in even)
    assert all(label.startswith("odd") for label in odd)
    # m parity gates the paired entries
    assert "even-14" in even and "even-15" not in even
    assert "even-15" in {e.label for e in entries_for(14)}
    assert "odd-16" in odd and "odd-17" not in odd


def test_even1_at_n8():
    C = build_basis(8)
    G = C.gens
    # c1^3 = 2 c1 c2 - 2 v6 in CH(Y_8)
    assert G.c1(3) == G.mono(1, 1) * 2 - G.V2 * 2
    r = evaluate_entry(C, ENTRY_BY_LABEL["even-1"], None)
    assert r.holds and r.integral


def test_odd14_at_n9():
    C = build_basis(9)
    G = C.gens
    # v6^2 = -d1 v8 in CH(Y_9)
    assert G.V1 ** 2 == -(G.d(1) * G.V2)
    assert evaluate_entry(C, ENTRY_BY_LABEL["odd-14"], None).holds


def test_rewritten_entry_at_n12():
    C = build_basis(12)
    results = verify_tables(C, labels=["even-5r"])
    assert [r.index for r in results] == [1, 2]
    assert all(r.holds for r in results)


def test_fractional_coefficients_are_two_local():
    r = evaluate_entry(build_basis(12), ENTRY_BY_LABEL["even-5"], 2)
    assert r.holds and r.two_local and not r.integral
    assert r.coefficients == [Fraction(8, 5), Fraction(3, 5)]


def test_coefficient_recorder():
    q = Coefficients()
    assert q(4, 2) == 2 and q.integral
    q(1, 3)
    assert q.two_local and not q.integral
    q(1, 2)
    assert not q.two_local


def test_lower_summation_limit_matters():
    """Dropping the mu = -1 term breaks the mixed sums."""
    for n, label in [(8, "even-5"), (8, "even-7"), (9, "odd-8"), (12, "even-5")]:
        results = verify_tables(build_basis(n), labels=[label])
        assert any(r.alternative_holds is False for r in results)
        assert all(r.holds for r in results)


@pytest.mark.parametrize("n", [10, 11])
def test_perturbed_rhs_is_detected(n):
    C = build_basis(n)
    checked = 0
    for entry in entries_for(n):
        indices = list(entry.index_range(C.m)) if entry.index_name else [None]
        for idx in indices:
            lhs, rhs = entry.body(C.gens, Coefficients(), C.m, idx, False)
            if lhs.is_zero():
                continue
            assert rhs + lhs * 2 != lhs
            checked += 1
    assert checked > 10


def test_left_label():
    C = build_basis(9)
    q = Coefficients()
    q.left(C.gens, 2, 1, 1, 1)
    assert q.left_label(C.v_degrees) == "c1^2 c2 v6 v8"


def test_result_json():
    r = evaluate_entry(build_basis(8), ENTRY_BY_LABEL["even-5"], 1)
    out = r.to_json()
    assert out["entry"] == "even-5" and out["index"] == 1
    assert out["coefficients"] == ["4/3", "1/3"]
    assert out["alternative_holds"] is False


def test_labels_unique():
    assert len({e.label for e in ENTRIES}) == len(ENTRIES)
