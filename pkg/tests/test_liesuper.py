"""Superalgebra families: structure constants, forms, weights, roots."""

import pytest

from superlie.errors import NonDiagonalAction, ZeroOnRoot
from superlie.liesuper import (
    SuperAlgebra,
    direct_sum,
    gl,
    hamiltonian,
    hamiltonian_prime,
    po,
    pq,
    psq,
    q,
    sl,
    sq,
)
from superlie.rat import rat


def test_po_dimensions_and_form_parity():
    a4 = po(4)
    assert a4.dim == 16
    assert a4.form_parity == 0
    assert a4.verify() == []
    a3 = po(3)
    assert a3.dim == 8
    assert a3.form_parity == 1
    assert a3.verify() == []


def test_po_bracket_against_grassmann():
    a = po(4)
    # {x1, e1} = -1 lands on the constant monomial
    i_x1, i_e1 = a.index_of("x1"), a.index_of("e1")
    assert a.bracket_basis(i_x1, i_e1) == {0: rat(-1)}
    # the top even Cartan monomial acts nilpotently, not diagonally; the
    # image picks up the pair-sign normalization of the x2*e2 monomial
    top = a.index_of("x1*e1*x2*e2")
    got = a.bracket_basis(top, i_x1)
    assert got == {a.index_of("x1*x2*e2"): rat(1)}


def test_po_torus_vs_full_cartan():
    a = po(4)
    # torus generators act diagonally; the full Cartan does not
    assert set(a.torus_indices) < set(a.cartan_indices)
    assert a.weight_of(a.index_of("x1")) == (rat(1), rat(0))
    bigger = SuperAlgebra(
        "po(0|4) bad torus",
        a.basis_names,
        a.parities,
        a.table,
        cartan_indices=a.cartan_indices,
        torus_indices=[a.index_of("x1*e1*x2*e2")],
    )
    with pytest.raises(NonDiagonalAction):
        bigger.weights()


def test_po_positive_system():
    a3 = po(3)
    pos, neg = a3.positive_system()
    assert set(pos) == {(rat(1),)}
    assert sorted(a3.basis_names[i] for i in pos[(rat(1),)]) == ["x1", "x1*th"]
    a5 = po(5)
    pos5, neg5 = a5.positive_system()
    e1 = (rat(1), rat(0))
    e2 = (rat(0), rat(1))
    e1pe2 = (rat(1), rat(1))
    e1me2 = (rat(1), rat(-1))
    assert set(pos5) == {e1, e2, e1pe2, e1me2}
    sizes = {w: len(ix) for w, ix in pos5.items()}
    assert sizes == {e1: 4, e2: 4, e1pe2: 2, e1me2: 2}
    assert {w: len(ix) for w, ix in neg5.items()} == {
        tuple(-c for c in w): s for w, s in sizes.items()
    }


def test_po_cartan_variable_names():
    a3 = po(3)
    vars3 = sorted(a3.cartan_var_names.values())
    assert vars3 == ["h0", "h1"]
    a5 = po(5)
    vars5 = sorted(a5.cartan_var_names.values())
    assert vars5 == ["h00", "h01", "h10", "h11"]


def test_po_zero_on_root():
    a5 = po(5)
    t1, t2 = a5.torus_indices
    with pytest.raises(ZeroOnRoot):
        a5.positive_system({t1: rat(1), t2: rat(1)})


def test_hamiltonian_quotient():
    h4 = hamiltonian(4)
    assert h4.dim == 15
    assert h4.verify() == []
    assert h4.form is None
    # {x1, e1} = -1 vanishes in the quotient
    assert h4.bracket_basis(h4.index_of("x1"), h4.index_of("e1")) == {}
    hp4 = hamiltonian_prime(4)
    assert hp4.dim == 14
    assert hp4.verify() == []
    hp3 = hamiltonian_prime(3)
    assert hp3.dim == 6
    assert hp3.verify() == []


def test_gl_structure():
    a = gl(2, 1)
    assert a.dim == 9
    assert a.verify() == []
    assert not a.is_form_degenerate()
    e13 = a.index_of("E13")
    assert a.parities[e13] == 1
    # str form: b(E13, E31) = +1, b(E31, E13) = -1
    assert a.form_value(e13, a.index_of("E31")) == 1
    assert a.form_value(a.index_of("E31"), e13) == -1


def test_sl2_structure():
    a = sl(2)
    assert a.dim == 3
    assert a.verify() == []
    e, f, h = a.index_of("E12"), a.index_of("E21"), a.index_of("h1")
    assert a.bracket_basis(e, f) == {h: rat(1)}
    assert a.bracket_basis(h, e) == {e: rat(2)}
    assert a.bracket_basis(h, f) == {f: rat(-2)}
    # alpha takes value 2 on the coroot, so 2*alpha evaluates to 4
    assert a.parse_weight("a") == (rat(2),)
    assert a.parse_weight("2a") == (rat(4),)


def test_sl21_structure():
    a = sl(2, 1)
    assert a.dim == 8
    assert a.verify() == []
    assert not a.is_form_degenerate()
    # coroot at the fermionic junction: h2 = E22 + E33
    h2 = a.index_of("h2")
    e23, e32 = a.index_of("E23"), a.index_of("E32")
    assert a.bracket_basis(e23, e32) == {h2: rat(1)}
    assert a.bracket_basis(h2, e23) == {}
    # positive system from the default splitter
    pos, neg = a.positive_system()
    assert len(pos) == 3 and len(neg) == 3
    parities = {a.parities[ix[0]] for w, ix in pos.items()}
    assert parities == {0, 1}


def test_sl22_center():
    a = sl(2, 2)
    assert a.dim == 15
    assert a.verify() == []
    assert a.is_form_degenerate()
    assert "center" in a.notes


def test_q2_structure():
    a = q(2)
    assert a.dim == 8
    assert a.verify() == []
    assert a.form_parity == 1
    assert not a.is_form_degenerate()
    # odd Cartan part present
    odd_cartan = [i for i in a.cartan_indices if a.parities[i] == 1]
    assert [a.basis_names[i] for i in odd_cartan] == ["y11", "y22"]
    # [y12, y21] = x11 + x22
    got = a.bracket_basis(a.index_of("y12"), a.index_of("y21"))
    assert got == {a.index_of("x11"): rat(1), a.index_of("x22"): rat(1)}
    assert a.parse_weight("a") == (rat(1), rat(-1))


def test_sq2_degenerate_form():
    a = sq(2)
    assert a.dim == 7
    assert a.verify() == []
    rad = a.form_radical()
    assert len(rad) == 1
    assert rad[0] == {a.index_of("x11"): rat(1), a.index_of("x22"): rat(1)}


def test_pq2_section_pairing():
    a = pq(2)
    assert a.dim == 7
    assert a.verify() == []  # invariance not claimed, so not checked
    assert not a.form_invariant
    rad = a.form_radical()
    assert len(rad) == 1
    assert rad[0] == {a.index_of("y11"): rat(1), a.index_of("y22"): rat(1)}
    # the section pairing genuinely fails invariance somewhere
    bad = []
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                lhs = a.form_apply(a.bracket_basis(i, j), {k: rat(1)})
                rhs = a.form_apply({i: rat(1)}, a.bracket_basis(j, k))
                if lhs != rhs:
                    bad.append((i, j, k))
    assert bad


def test_psq2_descended_form():
    a = psq(2)
    assert a.dim == 6
    assert a.verify() == []
    assert not a.is_form_degenerate()
    assert a.form_parity == 1


def test_direct_sum():
    s = direct_sum(sl(2), sl(3))
    assert s.dim == 11
    assert s.verify() == []
    assert not s.is_form_degenerate()
    # blocks do not talk to each other
    assert s.bracket_basis(s.index_of("E12@1"), s.index_of("E12@2")) == {}
    assert s.parse_weight("a@1") == (rat(2), rat(0), rat(0))


def test_weight_parse_errors():
    a = po(5)
    assert a.parse_weight("e1+e2") == (rat(1), rat(1))
    assert a.parse_weight("2*e1 - e2") == (rat(2), rat(-1))
    assert a.parse_weight("3e1") == (rat(3), rat(0))
    with pytest.raises(ValueError):
        a.parse_weight("e9")
    with pytest.raises(ValueError):
        a.parse_weight("e1*e2")
