import pytest

from chowkit import chow_y
from chowkit.chow_y import ChowY, ConstructionError, build_basis, index_closed_form, replacement_plan


def _elem(C, label):
    return C.basis[C.labels().index(label)].elem


def test_ranks():
    assert build_basis(6).rank == 12
    C = build_basis(9)
    assert C.rank == 24
    assert C.degree_ranks()[0] == 1
    assert C.labels()[0] == "1"


def test_replacements_small_n():
    assert replacement_plan(6) == []
    assert [e.label(build_basis(6).v_degrees) for e in build_basis(6).divided()] == []
    C7 = build_basis(7)
    assert [(e.label(C7.v_degrees), e.divisor) for e in C7.divided()] == [("<c1 v4 v6>/3", 3)]
    C8 = build_basis(8)
    assert [(e.label(C8.v_degrees), e.divisor) for e in C8.divided()] == [("<c1 c2 v4 v6>/3", 3)]


def test_index_examples():
    assert build_basis(8).index_vs_An() == 3
    assert build_basis(11).index_vs_An() == 45
    assert build_basis(13).index_vs_An() == 45
    assert build_basis(6).index_vs_An() == 1


def test_index_closed_form_values():
    # n = 6..24
    expected = [1, 3, 3, 3, 9, 45, 45, 45, 225, 1575, 1575, 1575, 11025, 99225, 99225, 99225, 893025, 9823275, 9823275]
    assert [index_closed_form(n) for n in range(6, 25)] == expected


@pytest.mark.parametrize("n", range(6, 16))
def test_closure_small(n):
    C = build_basis(n)
    table = C.verify_closure()
    assert all(isinstance(x, int) for vec in table.values() for x in vec)


def test_products_n8():
    C = build_basis(8)
    R, G = C.R, C.gens
    v4, v6 = G.V1, G.V2
    assert v6 * v6 == -(R.c2() ** 2 * v4)
    assert v4 * v4 == R.d(1) * v4
    one = _elem(C, "1")
    for e in C.basis:
        assert one * e.elem == e.elem
    # v6^2 = -c2^2 v4 read in integral coordinates
    coords = C.global_coords(v6 * v6)
    assert coords == [-1 if lab == "c2^2 v4" else 0 for lab in C.labels()]


def test_v_degrees():
    assert list(build_basis(8).v_degrees) == [4, 6]
    assert list(build_basis(9).v_degrees) == [6, 8]


@pytest.mark.parametrize("n", [8, 9, 12, 13])
def test_mod_p_structure(n):
    C = build_basis(n)
    for p in (2, 3, 5, 7):
        rep = C.mod_p_structure(p)
        assert rep["ok"], rep
        assert rep["total"] == C.rank


def test_divided_elements_are_not_in_An():
    C = build_basis(12)
    for e in C.divided():
        deg = e.degree
        assert C.An.coords_in(e.elem.coords(deg), deg) is None
        assert C.An.coords_in((e.elem * e.divisor).coords(deg), deg) is not None


@pytest.mark.parametrize("n", [12, 13, 15])
def test_wrong_half_coefficient_breaks_closure(monkeypatch, n):
    original = chow_y._half_coefficient
    monkeypatch.setattr(chow_y, "_half_coefficient", lambda i: -original(i))
    with pytest.raises(ConstructionError):
        ChowY(n).verify_closure()


def test_to_json():
    out = build_basis(8).to_json(with_products=False)
    assert out["n"] == 8 and out["rank"] == 24 and out["index"] == 3
    assert sum(b["divided"] for b in out["basis"]) == 1
    full = build_basis(7).to_json()
    assert all(isinstance(x, int) for row in full["products"] for x in row["coords"])
