from fractions import Fraction as F

import pytest

from rclab.coeffsolve import ATable, a2_family_assoc
from rclab.exactcore import QSeries, binom, pochhammer
from rclab.forms import GradedForm, ModularForm
from rclab.nearlyholo import rc_bracket
from rclab.starprod import (
    HbarSeries,
    PoleError,
    StarCoefficients,
    assoc_residual,
    cmz_coeff,
    free_assoc_residual,
    ident_residual,
    rc_series,
    star_product,
)


def test_cmz_low_order_values():
    for kappa in (F(1, 2), F(3, 2), 1, 2, F(7, 3)):
        for k, l in ((1, 1), (2, 3), (5, 2)):
            assert cmz_coeff(kappa, k, l, 0) == 1
            assert cmz_coeff(kappa, k, l, 1) == F(-1, 4)
    assert cmz_coeff(F(1, 2), 1, 1, 2) == F(1, 16)
    assert cmz_coeff(2, 1, 1, 2) == F(1, 15)


def test_cmz_eholzer_reduction():
    # the kappa = 1/2 and 3/2 families collapse to constant coefficients
    for kappa in (F(1, 2), F(3, 2)):
        for n in range(7):
            for k in range(1, 7):
                for l in range(1, 7):
                    assert F(-4) ** n * cmz_coeff(kappa, k, l, n) == 1


def test_cmz_pole_error():
    with pytest.raises(PoleError):
        cmz_coeff(1, F(-1, 2), 1, 2)


def test_coefficient_dispatch():
    eh = StarCoefficients.eholzer()
    assert eh.coefficient(3, 4, 6) == 1
    cm = StarCoefficients.cmz(F(1, 2))
    assert cm.coefficient(1, 4, 6) == F(-4) * F(-1, 4) == 1
    with pytest.raises(PoleError):
        cm.coefficient(1, 0, 6)
    table = ATable.eholzer(3, 10)
    tb = StarCoefficients.from_table(table)
    assert tb.coefficient(2, 4, 6) == 1


def test_star_product_terms(catalogue):
    prec = 20
    f = GradedForm.from_form(catalogue["E4"].truncate(prec))
    g = GradedForm.from_form(catalogue["E6"].truncate(prec))
    eh = StarCoefficients.eholzer()
    s = star_product(f, g, eh, 3)
    assert s.term(0) == GradedForm.from_form(rc_bracket(catalogue["E4"], catalogue["E6"], 0).truncate(prec))
    for n in range(4):
        want = rc_bracket(catalogue["E4"], catalogue["E6"], n).truncate(prec)
        assert s.term(n) == GradedForm.from_form(want)
    cm = star_product(f, g, StarCoefficients.cmz(F(1, 2)), 1)
    assert cm.term(1) == s.term(1)  # t_1 * gauge = 1
    assert cm.term(0) == s.term(0)


def test_brackets_with_constants_vanish(catalogue):
    prec = 12
    const = ModularForm(0, QSeries.constant(3, prec))
    e6 = catalogue["E6"].truncate(prec)
    for n in range(1, 5):
        assert rc_bracket(const, e6, n).is_zero()
        assert rc_bracket(e6, const, n).is_zero()


def test_star_product_allows_constant_parts_outside_cmz(catalogue):
    prec = 12
    const = ModularForm(0, QSeries.constant(1, prec))
    e4 = catalogue["E4"].truncate(prec)
    e6 = catalogue["E6"].truncate(prec)
    f = GradedForm.from_form(const) + GradedForm.from_form(e4)
    g = GradedForm.from_form(e6)
    for coeffs in (
        StarCoefficients.eholzer(),
        StarCoefficients.from_table(ATable.eholzer(3, 30)),
    ):
        s = star_product(f, g, coeffs, 2)
        assert s.term(0) == GradedForm.from_form(e6) + GradedForm.from_form(e4 * e6)
        for n in (1, 2):
            assert s.term(n) == GradedForm.from_form(rc_bracket(e4, e6, n))
    with pytest.raises(PoleError):
        star_product(f, g, StarCoefficients.cmz(F(1, 2)), 1)


def test_rc_series_bilinearity(catalogue):
    prec = 16
    e4 = catalogue["E4"].truncate(prec)
    e6 = catalogue["E6"].truncate(prec)
    f = GradedForm.from_form(e4) + GradedForm.from_form(e6)
    g = GradedForm.from_form(e4)
    s = rc_series(f, g, 2)
    # [E4, E4]_1 vanishes, so the hbar^1 term is pure weight 12
    assert rc_bracket(e4, e4, 1).is_zero()
    assert s.term(1).weights() == [12]
    assert s.term(1).parts[12].series == rc_bracket(e6, e4, 1).series
    assert rc_series(f.scale(5), g, 2) == HbarSeries.make(
        2, [t.scale(5) for t in s.terms]
    )


def test_assoc_residual_order_zero(catalogue):
    prec = 12
    f, g, h = (GradedForm.from_form(catalogue[k].truncate(prec)) for k in ("E4", "E6", "Delta"))
    for coeffs in (StarCoefficients.eholzer(), StarCoefficients.cmz(2)):
        assert assoc_residual(f, g, h, coeffs, 0).is_zero()


def test_assoc_residual_order_one_any_table(catalogue):
    # at first order only A_0 = 1 and A_1 = xy enter, so any table works
    prec = 12
    table = ATable(1, 40, filler=lambda n, x, y: F(999))  # level >= 2 never read
    coeffs = StarCoefficients.from_table(table)
    f, g, h = (GradedForm.from_form(catalogue[k].truncate(prec)) for k in ("E4", "E4", "E6"))
    assert assoc_residual(f, g, h, coeffs, 1).is_zero()


@pytest.mark.parametrize("names", [("E4", "E4", "E6"), ("E4", "E6", "Delta")])
def test_assoc_residual_eholzer_desk_scale(catalogue, names):
    prec = 20
    f, g, h = (GradedForm.from_form(catalogue[k].truncate(prec)) for k in names)
    assert assoc_residual(f, g, h, StarCoefficients.eholzer(), 4).is_zero()


def test_assoc_residual_cmz_concrete(catalogue):
    prec = 14
    f, g, h = (GradedForm.from_form(catalogue[k].truncate(prec)) for k in ("E4", "E6", "Delta"))
    assert assoc_residual(f, g, h, StarCoefficients.cmz(F(5, 2)), 3).is_zero()


def test_ident_residual_degree_zero_and_one():
    table = ATable.eholzer(5, 40)
    for k, l, m in ((1, 1, 1), (2, 3, 1), (4, 2, 4)):
        assert ident_residual(table, k, l, m, 0, 0) == 0
        for p in (0, 1):
            assert ident_residual(table, k, l, m, 1, p) == 0


def test_ident_residual_level_two_family():
    for c in (F(0), F(-5, 2), F(3), F(7, 5)):
        fam = a2_family_assoc(c)
        table = ATable(2, 60, filler=lambda n, x, y, fam=fam: fam(x, y) if n == 2 else None)
        for k in range(1, 5):
            for l in range(1, 5):
                for m in range(1, 5):
                    for p in range(3):
                        assert ident_residual(table, k, l, m, 2, p) == 0


def test_ident_residual_detects_wrong_family():
    # halving the level-2 value breaks the identities: the system is inhomogeneous
    half = ATable(2, 60, filler=lambda n, x, y: pochhammer(x, n) * pochhammer(y, n) / 2)
    assert ident_residual(half, 1, 1, 1, 2, 0) != 0


def test_ident_residual_published_variant_diverges():
    # The same identity written without the interior multinomial factors fails
    # already for the constant-coefficient product; this pins the transcription
    # correction (the corrected form is validated by free_assoc_residual).
    table = ATable.eholzer(2, 40)

    def published(at, k, l, m, n, p):
        x, y, z = 2 * k, 2 * l, 2 * m
        lhs = sum(
            binom(n - r, p)
            * at.get(r, x, y)
            * at.get(n - r, x + y + 2 * r, z)
            / (pochhammer(x + y + 2 * r, n - p - r) * pochhammer(z, p) * pochhammer(x, r))
            for r in range(n - p + 1)
        )
        rhs = sum(
            binom(n - s, n - p)
            * at.get(s, y, z)
            * at.get(n - s, x, y + z + 2 * s)
            / (pochhammer(x, n - p) * pochhammer(y + z + 2 * s, p - s) * pochhammer(z, s))
            for s in range(p + 1)
        )
        return lhs - rhs

    assert published(table, 1, 1, 1, 2, 0) != 0
    assert ident_residual(table, 1, 1, 1, 2, 0) == 0


@pytest.mark.parametrize("kappa", [F(1, 2), F(3, 2), 2, F(5, 2)])
def test_free_model_oracle_for_cmz_family(kappa):
    coeffs = StarCoefficients.cmz(kappa)
    for weights in ((2, 2, 2), (4, 6, 12), (2, 4, 8)):
        assert free_assoc_residual(weights, coeffs, 4) == {}


def test_free_model_oracle_flags_bad_coefficients():
    bad = ATable(3, 40, filler=lambda n, x, y: pochhammer(x, n) * pochhammer(y, n) * (2 if n == 2 else 1))
    resid = free_assoc_residual((2, 2, 2), StarCoefficients.from_table(bad), 3)
    assert resid


def test_hbar_series_shapes(catalogue):
    f = GradedForm.from_form(catalogue["E4"].truncate(8))
    s = HbarSeries.from_graded(f, 2)
    assert s.order == 2 and s.term(0) == f and s.term(2).is_zero()
    with pytest.raises(ValueError):
        HbarSeries.make(2, [f])
