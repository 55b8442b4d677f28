import pytest

from chowkit.arith import GradedPoly
from chowkit import classes
from chowkit.chow_y import build_basis
from chowkit.identities import (
    BarredContext,
    FAMILIES,
    _bbar_x,
    _is_integral,
    check_bracket_definitions,
    check_c2_shift,
    check_head_divisibility,
    check_key_formula,
    check_low_divisibility,
    check_proof_identities,
)
from chowkit.quotient import build

# literal readings that are evaluated but known not to hold
INFORMATIONAL = {
    ("head_quotient", "literal"),
    ("even_power", "c1^(2i+1)"),
    ("relation_mixed", "literal"),
    ("relation_head", "literal"),
}


def _ctx(n):
    return BarredContext(build(n))


def test_bbar_x_values():
    assert _bbar_x(-1).is_zero()
    assert list(_bbar_x(2).coeffs) == [1, 1, 1]


def test_barred_classes_match_v_classes():
    ctx = _ctx(13)
    G = build_basis(13).gens
    assert ctx.B * ctx.E == G.V12 * ctx.v_scale
    assert abs(ctx.v_scale) == 4


def test_bracket_definitions_are_polynomial_identities():
    for m in range(3, 12):
        assert all(r.holds for r in check_bracket_definitions(m))


def test_bracket_definition_example():
    # m = 4, i = 0, j = 0: -c2 bbar_2 = c2 bbar_{-1} B - bbar_0 E = -E
    c2 = GradedPoly.c2()
    E = c2 * classes.bbar(2)
    assert -(c2 * classes.bbar(2)) == c2 * GradedPoly() - classes.bbar(0) * E
    r = [x for x in check_bracket_definitions(4) if x.name == "bracket_odd" and x.params == {"m": 4, "i": 0, "j": 0}]
    assert r and r[0].holds


def test_c2_shift_n13():
    ctx = _ctx(13)
    res = {r.params["i"]: r.holds for r in check_c2_shift(ctx)}
    assert res[1]
    lhs = ctx.mono(0, 1) * ctx.B * ctx.E
    # m = 6
    assert lhs == ctx.mono(0, 3) * ctx.bbar(3) * ctx.bbar(4)
    assert lhs != ctx.mono(0, 3) * ctx.bbar(4) * ctx.bbar(4)


def test_key_formula_n13():
    res = check_key_formula(_ctx(13))
    at0 = [r for r in res if r.name == "key_formula" and r.params == {"i": 0, "j": 0}]
    assert at0 and at0[0].holds
    assert all(r.holds for r in res)


@pytest.mark.parametrize("n", [9, 13, 17])
def test_divisibility(n):
    ctx, C = _ctx(n), build_basis(n)
    low = [r for r in check_low_divisibility(ctx, C) if r.name == "low_divisibility"]
    head = [r for r in check_head_divisibility(ctx, C) if r.name == "head_divisibility"]
    assert low and head
    assert all(r.holds for r in low + head)


@pytest.mark.parametrize("n", [9, 13])
def test_divisor_is_sharp(n):
    ctx, C = _ctx(n), build_basis(n)
    BE = ctx.B * ctx.E
    for i in range(0, (ctx.m - 4) // 2 + 1):
        q = ctx.angle_c2(i, ctx.E, BE) / (ctx.v_scale * (2 * i + 3))
        assert _is_integral(C, q)
        for p in (2, 3, 5):
            assert not _is_integral(C, q / p)


@pytest.mark.parametrize("n", [9, 13, 17])
def test_all_asserted_identities_hold(n):
    res = check_proof_identities(n)
    asserted = [r for r in res if (r.name, r.reading) not in INFORMATIONAL]
    assert asserted and all(r.holds for r in asserted)


def test_literal_readings_fail_and_corrections_hold():
    res = check_proof_identities(13)
    by = {}
    for r in res:
        by.setdefault((r.name, r.reading), []).append(r.holds)
    assert not any(by[("head_quotient", "literal")])
    assert all(by[("head_quotient", "from_key_formula")])
    assert not any(by[("even_power", "c1^(2i+1)")])
    assert all(by[("even_power", "c1^(2i+2)")])
    assert not all(by[("relation_mixed", "literal")])
    assert all(by[("relation_low", "literal")])


def test_even_n_runs_only_polynomial_family():
    names = {r.name for r in check_proof_identities(12)}
    assert names == {"bracket_odd", "bracket_even"}


def test_odd_m_skips_m_even_families():
    names = {r.name for r in check_proof_identities(11)}
    assert "low_divisibility" not in names and "key_formula" in names


def test_family_filter():
    res = check_proof_identities(9, families=["c2_shift"])
    assert {r.name for r in res} == {"c2_shift"}
    assert set(FAMILIES) >= {"c2_shift", "key_formula", "relations"}


def test_even_n_context_rejected():
    with pytest.raises(ValueError):
        BarredContext(build(10))


def test_m_odd_divisibility_rejected():
    with pytest.raises(ValueError):
        check_low_divisibility(_ctx(11), build_basis(11))


def test_result_json():
    r = check_c2_shift(_ctx(9))[0]
    assert r.to_json() == {"identity": "c2_shift", "params": {"i": 0}, "holds": True, "reading": "literal", "note": None}
