import pytest

from tamerep.chars import TameCharacter
from tamerep.errors import BadResidueChar, BadType
from tamerep.ff import find_generator
from tamerep.groups import closure
from tamerep.induce import (
    FormKind,
    build_residual_rep,
    commutant_dim,
    commutant_dim_of,
    expected_image_order,
    form_kind,
    image_group,
    invariant_forms,
    invariant_forms_of,
)
from tamerep.linalg import Matrix


def test_build_golden_o_type(rep_o_8_19_17):
    rep = rep_o_8_19_17
    assert rep.k == 4
    f = rep.field
    zeta = find_generator(f) ** ((f.q - 1) // 17)
    exps = [1, 2, 4, 8, 16, 15, 13, 9]  # powers of 19 = 2 mod 17
    for i in range(8):
        assert rep.Sigma.rows[i][i] == zeta ** exps[i]
    assert rep.Phi**8 == Matrix.identity(f, 8)
    assert rep.Sigma**17 == Matrix.identity(f, 8)


def test_build_golden_s_type(rep_s_8_19_17):
    rep = rep_s_8_19_17
    f = rep.field
    minus = Matrix.scalar(f, -f.one, 8)
    assert rep.Phi**8 == minus
    # Phi has order 16
    assert rep.Phi**16 == Matrix.identity(f, 8)
    assert all(rep.Phi**e != Matrix.identity(f, 8) for e in range(1, 16))


def test_build_small_dihedral():
    rep = build_residual_rep(TameCharacter(2, 5, 3, 1), 7)
    assert rep.k == 1  # 7 = 1 mod 3
    # zeta = g^((7-1)/3) = 3^2 = 2 for the deterministic generator 3 of F_7
    assert rep.Sigma.rows[0][0] == rep.field.element(2)
    assert rep.Sigma.rows[1][1] == rep.field.element(4)


def test_tame_relation_asserted(rep_o_8_19_17, rep_s_8_19_17):
    for rep in (rep_o_8_19_17, rep_s_8_19_17):
        assert rep.Phi * rep.Sigma * rep.Phi.inverse() == rep.Sigma ** rep.chi.p


def test_build_rejects():
    with pytest.raises(BadType):
        build_residual_rep(TameCharacter(8, 19, 15, 1), 13)
    with pytest.raises(BadResidueChar):
        build_residual_rep(TameCharacter(8, 19, 17, 1), 17)
    with pytest.raises(BadResidueChar):
        build_residual_rep(TameCharacter(8, 19, 17, 1), 19)


def test_invariant_form_o_type(rep_o_8_19_17):
    forms = invariant_forms(rep_o_8_19_17)
    assert len(forms) == 1
    g = forms[0]
    assert form_kind(g) is FormKind.SYMMETRIC
    one, zero = g.field.one, g.field.zero
    for i in range(8):
        for j in range(8):
            assert g.rows[i][j] == (one if (j - i) % 8 == 4 else zero)
    for m in (rep_o_8_19_17.Phi, rep_o_8_19_17.Sigma):
        assert m.transpose() * g * m == g


def test_invariant_form_s_type(rep_s_8_19_17):
    forms = invariant_forms(rep_s_8_19_17)
    assert len(forms) == 1
    g = forms[0]
    assert form_kind(g) is FormKind.ALTERNATING
    for m in (rep_s_8_19_17.Phi, rep_s_8_19_17.Sigma):
        assert m.transpose() * g * m == g


def _trace_average_invariant_dim(rep, cap):
    """Independent oracle: dim of the invariant-form space equals the average
    of tr(g)^2 over the image group (valid since char does not divide the
    order); the average lands in the prime subfield and dim < ell here."""
    grp = closure([rep.Phi, rep.Sigma], cap)
    f = rep.field
    total = f.zero
    for m in grp.elements:
        tr = f.zero
        for i in range(m.nrows):
            tr = tr + m.rows[i][i]
        total = total + tr * tr
    avg = total * f.element(grp.order).inverse()
    assert all(c == 0 for c in avg.coeffs[1:])
    return avg.coeffs[0]


def test_non_self_dual_bundle_has_no_invariant_form():
    # ord_9(19) = 1: the order-9 character is not self-dual, forms dim 0
    chi = TameCharacter(8, 19, 9, 1)
    rep = build_residual_rep(chi, 13, _unchecked=True)
    assert invariant_forms(rep) == []
    assert _trace_average_invariant_dim(rep, 200) == 0


def test_order5_bundle_dimension_with_oracle():
    # ord_5(19) = 2, so the order-5 character is self-dual but inadmissible;
    # the invariant-form space is 4-dimensional (one per odd difference class)
    chi = TameCharacter(8, 19, 5, 1)
    rep = build_residual_rep(chi, 13, _unchecked=True)
    forms = invariant_forms(rep)
    assert len(forms) == 4
    assert _trace_average_invariant_dim(rep, 100) == 4


def test_trace_oracle_agrees_on_golden(rep_o_8_19_17):
    assert _trace_average_invariant_dim(rep_o_8_19_17, 300) == 1


def _trace_pairing_commutant_dim(rep, cap):
    """Independent oracle for the commutant: average of tr(g) tr(g^-1)."""
    grp = closure([rep.Phi, rep.Sigma], cap)
    f = rep.field
    inv = {m: m.inverse() for m in grp.elements}

    def tr(m):
        acc = f.zero
        for i in range(m.nrows):
            acc = acc + m.rows[i][i]
        return acc

    total = f.zero
    for m in grp.elements:
        total = total + tr(m) * tr(inv[m])
    avg = total * f.element(grp.order).inverse()
    assert all(c == 0 for c in avg.coeffs[1:])
    return avg.coeffs[0]


def test_commutant_trace_oracle(rep_o_8_19_17, rep_s_8_19_17):
    assert _trace_pairing_commutant_dim(rep_o_8_19_17, 300) == 1
    assert _trace_pairing_commutant_dim(rep_s_8_19_17, 600) == 1
    # reducible fixture: the order-9 bundle splits into characters
    chi = TameCharacter(8, 19, 9, 1)
    rep = build_residual_rep(chi, 13, _unchecked=True)
    assert _trace_pairing_commutant_dim(rep, 200) == commutant_dim(rep)


def test_form_kind_basics(F3):
    assert form_kind(Matrix.identity(F3, 2)) is FormKind.SYMMETRIC
    assert form_kind(Matrix(F3, [[0, 1], [-1, 0]])) is FormKind.ALTERNATING
    assert form_kind(Matrix(F3, [[0, 1], [0, 0]])) is FormKind.NEITHER


def test_commutant_golden(rep_o_8_19_17):
    assert commutant_dim(rep_o_8_19_17) == 1


def test_commutant_small():
    rep = build_residual_rep(TameCharacter(2, 5, 3, 1), 7)
    assert commutant_dim(rep) == 1


def test_commutant_direct_sum_fixture(F13):
    # two copies of the same 1-dimensional character: full 2x2 commutant
    c = Matrix.diagonal(F13, [3, 3])
    assert commutant_dim_of([c]) == 4


def test_image_group_orders(rep_o_8_19_17, rep_s_8_19_17):
    assert image_group(rep_o_8_19_17, 300).order == 136 == expected_image_order(rep_o_8_19_17)
    assert image_group(rep_s_8_19_17, 600).order == 272 == expected_image_order(rep_s_8_19_17)
    rep = build_residual_rep(TameCharacter(2, 5, 3, 1), 7)
    img = image_group(rep, 20)
    assert img.order == 6


def test_exponent_index_gives_conjugate_data():
    base = build_residual_rep(TameCharacter(8, 19, 17, 1), 13)
    base_diag = sorted(e.coeffs for e in (base.Sigma.rows[i][i] for i in range(8)))
    for idx in (3, 5, 16):
        rep = build_residual_rep(TameCharacter(8, 19, 17, 1, exponent_index=idx), 13)
        diag = sorted(e.coeffs for e in (rep.Sigma.rows[i][i] for i in range(8)))
        assert rep.k == base.k
        forms = invariant_forms(rep)
        assert len(forms) == 1
        assert form_kind(forms[0]) is FormKind.SYMMETRIC
        assert image_group(rep, 300).order == 136
        if idx == 16:
            # 16 = -1 mod 17: the inverse character, same eigenvalue multiset
            assert diag == base_diag
