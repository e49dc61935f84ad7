import pytest

from coalg import build_incidence, matrix_coalgebra, matrix_coalgebra_idempotents
from coalg.comodule import block_comodules, socle
from coalg.frobenius import (
    HypothesisError,
    dual_projective_cover_check,
    frobenius_report,
    is_left_co_frobenius,
    is_right_co_frobenius,
    phi_matching,
    unique_maximal_in_left_injectives,
    verify_integral_bounds,
    witness_is_valid,
)
from coalg.incidence import antichain, chain, e_r_injective, simple_comodule

from corpus import incidence


def test_co_frobenius_examples():
    ac = build_incidence(antichain(3))
    rep = is_right_co_frobenius(ac)
    assert rep.holds and witness_is_valid(ac, rep.witness)

    c2 = build_incidence(chain(2))
    rep = is_right_co_frobenius(c2)
    assert not rep.holds and rep.max_rank < 3 and rep.witness is None

    m = matrix_coalgebra(2)
    for side, check in (("right", is_right_co_frobenius), ("left", is_left_co_frobenius)):
        rep = check(m)
        assert rep.holds and witness_is_valid(m, rep.witness, side)


def test_report_to_dict():
    d = frobenius_report(build_incidence(antichain(2))).to_dict()
    assert d["right_co_frobenius"]["holds"] and d["coradical_dim"] == 2


def test_phi_matching_antichain():
    c = build_incidence(antichain(2))
    phi = phi_matching(c)
    assert phi.mapping == {0: 0, 1: 1}
    assert phi.injective and phi.complete and phi.summand_dims_ok


def test_phi_matching_matrix_coalgebra():
    c = matrix_coalgebra(2)
    phi = phi_matching(c, matrix_coalgebra_idempotents(2))
    assert phi.complete and phi.injective and phi.summand_dims_ok
    for _, _, w in phi.pairs:
        assert w.rank() == 2


def test_phi_matching_rejects_chain():
    with pytest.raises(HypothesisError):
        phi_matching(build_incidence(chain(2)))


def test_unique_maximal():
    assert unique_maximal_in_left_injectives(build_incidence(antichain(3))).passed
    assert unique_maximal_in_left_injectives(matrix_coalgebra(2), matrix_coalgebra_idempotents(2)).passed
    c2 = build_incidence(chain(2))
    with pytest.raises(HypothesisError):
        unique_maximal_in_left_injectives(c2)
    rep = unique_maximal_in_left_injectives(c2, force=True)
    assert not rep.hypothesis_holds
    # E_l(S1) = span{e01, e11} is the second left block
    assert rep.tops[1].top_simple


def test_bounds_matrix_coalgebra():
    c = matrix_coalgebra(2)
    idem = matrix_coalgebra_idempotents(2)
    left = block_comodules(c, "left", idem)
    right = block_comodules(c, "right", idem)
    table = verify_integral_bounds(c, left, right)
    assert table.passed and table.banner is None
    assert all((r.dim_module, r.dim_integrals, r.verdict) == (2, 2, "equality") for r in table.rows)


def test_bounds_chain2_banner():
    p, c = incidence("chain2")
    n = e_r_injective(p, "1", coalgebra=c)
    table = verify_integral_bounds(c, (), [n])
    assert table.banner is not None
    (row,) = table.rows
    assert (row.dim_module, row.dim_integrals) == (1, 2)
    assert row.inequality and row.asserted is None and row.passed


def test_bounds_side_check():
    p, c = incidence("chain2")
    with pytest.raises(ValueError):
        verify_integral_bounds(c, [e_r_injective(p, "0", coalgebra=c)], ())


def test_projective_cover_examples():
    p, c = incidence("chain2")
    s0 = simple_comodule(p, "0", "right", coalgebra=c)
    rep = dual_projective_cover_check(c, s0)
    assert rep.passed and rep.envelope_dim == 2 and rep.kernel_dim == 1
    e0 = e_r_injective(p, "0", coalgebra=c)
    rep = dual_projective_cover_check(c, e0)
    assert rep.passed and rep.kernel_dim == 0


def test_block_socles_are_simple_on_matrix_coalgebra():
    c = matrix_coalgebra(2)
    for b in block_comodules(c, "right", matrix_coalgebra_idempotents(2)):
        assert socle(b).dim == b.dim


@pytest.mark.parametrize("n", [4, 5, 6])
def test_large_antichains_need_many_term_witnesses(n):
    c = build_incidence(antichain(n))
    rep = is_right_co_frobenius(c)
    assert rep.holds and witness_is_valid(c, rep.witness)
