import itertools
import random

import pytest

from coalg import QQ, build_incidence, chain, antichain, matrix_coalgebra, matrix_coalgebra_idempotents
from coalg.coalgebra import Coalgebra
from coalg.comodule import (
    Comodule,
    NotSubcomoduleError,
    ParentMismatchError,
    SideMismatchError,
    block_comodules,
    coefficient_support,
    direct_sum,
    dual_action,
    gamma_iso_check,
    hom_space,
    injective_envelope,
    integrals,
    is_comodule_morphism,
    isomorphic,
    left_integrals,
    radical,
    radical_and_top,
    right_integrals,
    socle,
    validate_comodule,
)
from coalg.exactlin import Matrix, PrimeField, SubspaceBasis
from coalg.incidence import e_r_injective, simple_comodule

from corpus import coalgebras, incidence


@pytest.fixture
def c2():
    p = chain(2)
    return p, build_incidence(p)


def vec(m, *labels):
    v = [m.field.zero] * m.dim
    for lab in labels:
        v[m.index(lab)] = m.field.one
    return tuple(v)


def sub(m, *labels):
    return SubspaceBasis(m.field, m.dim, [vec(m, lab) for lab in labels])


def test_regular_and_injective_validate(c2):
    p, c = c2
    for side in ("left", "right"):
        assert validate_comodule(Comodule.regular(c, side)).passed
    assert validate_comodule(e_r_injective(p, "0", coalgebra=c)).passed


def test_perturbed_coaction_fails(c2):
    p, c = c2
    m = e_r_injective(p, "0", coalgebra=c)
    rho = [dict(t) for t in m.rho]
    rho[1][(1, c.index("e[1,1]"))] = QQ(2)
    bad = Comodule(c, "right", m.labels, rho)
    assert not validate_comodule(bad).passed


def test_dual_action(c2):
    p, c = c2
    m = e_r_injective(p, "0", coalgebra=c)
    e01 = vec(m, "e[0,1]")
    assert dual_action(m, c.counit, e01) == e01
    assert dual_action(m, c.dual_basis("e[1,1]"), e01) == e01
    # ρ(e01) = e00 ⊗ e01 + e01 ⊗ e11, so only e01* sends e01 to e00
    assert dual_action(m, c.dual_basis("e[0,0]"), e01) == (0, 0)
    assert dual_action(m, c.dual_basis("e[0,1]"), e01) == vec(m, "e[0,0]")


def test_subcomodule_must_be_closed(c2):
    _, c = c2
    reg = Comodule.regular(c, "right")
    with pytest.raises(NotSubcomoduleError):
        reg.subcomodule([vec(reg, "e[0,1]")])


def test_socle_examples(c2):
    p, c = c2
    reg = Comodule.regular(c, "right")
    assert socle(reg) == sub(reg, "e[0,0]", "e[1,1]")
    s = simple_comodule(p, "0", "right", coalgebra=c)
    assert socle(s).dim == s.dim
    m = e_r_injective(p, "0", coalgebra=c)
    assert socle(m) == sub(m, "e[0,0]")


def test_radical_and_top(c2):
    p, c = c2
    m = e_r_injective(p, "0", coalgebra=c)
    rep = radical_and_top(m)
    # J·E_r(S0): e01* sends e01 to e00, so the radical is the socle line
    assert rep.radical == sub(m, "e[0,0]")
    assert rep.top_dim == 1 and rep.top_simple and rep.unique_maximal and rep.certified

    reg = Comodule.regular(c, "right")
    rep = radical_and_top(reg)
    assert rep.radical == sub(reg, "e[0,0]")
    assert rep.top_dim == 2 and not rep.unique_maximal


def test_semisimple_top():
    c = build_incidence(antichain(2))
    reg = Comodule.regular(c, "right")
    rep = radical_and_top(reg)
    assert rep.radical.dim == 0 and not rep.unique_maximal


def test_matrix_coalgebra_simple_top_certified():
    c = matrix_coalgebra(2)
    for b in block_comodules(c, "left", matrix_coalgebra_idempotents(2)):
        rep = radical_and_top(b)
        assert rep.top_simple and rep.certified


def test_hom_examples(c2):
    p, c = c2
    e0, e1 = (e_r_injective(p, x, coalgebra=c) for x in "01")
    ident = hom_space(e0, e0)
    assert ident.dim == 1
    assert is_comodule_morphism(Matrix.identity(QQ, 2), e0, e0)
    assert hom_space(e1, e0).dim == 0
    assert hom_space(e0, e1).dim == 1


def test_hom_rejects_mismatch(c2):
    p, c = c2
    with pytest.raises(SideMismatchError):
        hom_space(Comodule.regular(c, "left"), Comodule.regular(c, "right"))
    other = build_incidence(chain(3))
    with pytest.raises(ParentMismatchError):
        hom_space(Comodule.regular(c, "right"), Comodule.regular(other, "right"))


def test_integrals_examples(c2):
    p, c = c2
    assert right_integrals(c, e_r_injective(p, "1", coalgebra=c)).dim == 2
    assert right_integrals(c, e_r_injective(p, "0", coalgebra=c)).dim == 1
    ac = build_incidence(antichain(2))
    assert left_integrals(ac, Comodule.regular(ac, "left")).dim == 2
    line = simple_comodule(antichain(2), "0", "right", coalgebra=ac)
    assert right_integrals(ac, line).dim == 1
    assert integrals(c, Comodule.zero(c, "left")).dim == 0
    with pytest.raises(SideMismatchError):
        left_integrals(c, Comodule.regular(c, "right"))


def test_matrix_coalgebra_left_integrals():
    c = matrix_coalgebra(2)
    for b in block_comodules(c, "left", matrix_coalgebra_idempotents(2)):
        assert left_integrals(c, b).dim == b.dim == 2


def test_gamma(c2):
    p, c = c2
    rep = gamma_iso_check(Comodule.regular(c, "left"))
    assert (rep.hom_dim, rep.comodule_dim) == (3, 3) and rep.isomorphism
    s0 = simple_comodule(p, "0", "left", coalgebra=c)
    assert gamma_iso_check(s0).hom_dim == 1


def test_envelope_examples(c2):
    p, c = c2
    s0 = simple_comodule(p, "0", "right", coalgebra=c)
    env = injective_envelope(s0)
    assert env.blocks == (0,) and env.target.dim == 2
    image = SubspaceBasis(QQ, 2, env.embedding.matrix.columns())
    assert image == socle(env.target)
    assert env.embedding.intertwines()

    reg = Comodule.regular(c, "right")
    env = injective_envelope(reg)
    assert env.target.dim == reg.dim and env.embedding.matrix.rank() == reg.dim


def test_envelope_of_direct_sum():
    p, c = incidence("chain3")
    s = direct_sum([simple_comodule(p, "0", "right", coalgebra=c), simple_comodule(p, "0", "right", coalgebra=c)])
    env = injective_envelope(s)
    assert env.blocks == (0, 0) and env.target.dim == 6


def test_coefficient_support(c2):
    p, c = c2
    m = e_r_injective(p, "0", coalgebra=c)
    sup = coefficient_support(m)
    assert sup.finite and sup.dim == 3
    assert coefficient_support(Comodule.zero(c, "right")).dim == 0
    assert coefficient_support(Comodule.regular(c, "left")).finite


def test_isomorphic_is_label_independent(c2):
    p, c = c2
    m = e_r_injective(p, "0", coalgebra=c)
    swapped = m.subcomodule(SubspaceBasis.full(QQ, 2), vectors=[(0, 1), (1, 0)])
    assert swapped.labels == ("e[0,1]", "e[0,0]")
    assert isomorphic(m, swapped)
    assert hom_space(swapped, swapped).dim == hom_space(m, m).dim


def _permuted(c: Coalgebra, perm):
    """The same coalgebra with basis order permuted."""
    inv = {old: new for new, old in enumerate(perm)}
    delta = [{(inv[j], inv[k]): v for (j, k), v in c.delta[old].items()} for old in perm]
    return Coalgebra(c.field, [c.labels[i] for i in perm], delta, [c.counit[i] for i in perm])


@pytest.mark.parametrize("name", ["chain3", "diamond", "N"])
def test_dimensions_invariant_under_basis_permutation(name):
    c = coalgebras()[name]
    perm = list(range(c.dim))
    random.Random(7).shuffle(perm)
    d = _permuted(c, perm)
    for side in ("left", "right"):
        a, b = Comodule.regular(c, side), Comodule.regular(d, side)
        assert hom_space(a, a).dim == hom_space(b, b).dim
        assert socle(a).dim == socle(b).dim
        assert radical(a).dim == radical(b).dim


def _brute_force_hom_count(m, n):
    """Count every matrix over F_p that intertwines the coactions."""
    F = m.field
    elems = F.elements()
    count = 0
    for entries in itertools.product(elems, repeat=m.dim * n.dim):
        mat = Matrix.from_rows(F, [entries[b * m.dim:(b + 1) * m.dim] for b in range(n.dim)], m.dim)
        count += is_comodule_morphism(mat, m, n)
    return count


@pytest.mark.parametrize("p", [2, 3])
def test_hom_dimension_matches_enumeration(p):
    F = PrimeField(p)
    poset = chain(2)
    c = build_incidence(poset, F)
    mods = [e_r_injective(poset, x, F, c) for x in "01"] + [simple_comodule(poset, x, "right", F, c) for x in "01"]
    for m, n in itertools.product(mods, repeat=2):
        assert _brute_force_hom_count(m, n) == p ** hom_space(m, n).dim


@pytest.mark.parametrize("name", ["chain4", "diamond", "N"])
def test_envelope_of_regular_comodule(name):
    c = coalgebras()[name]
    reg = Comodule.regular(c, "right")
    env = injective_envelope(reg)
    assert env.target.dim == c.dim and env.embedding.matrix.rank() == c.dim
    assert env.embedding.intertwines()
