"""Quadratic/cubic Casimirs, the A operator, and the inverse-Gram identity."""

import pytest

from superlie.casimir import (
    a_map,
    ad_commutes_with_A,
    b_identity_violations,
    c3,
    omega0,
)
from superlie.errors import DegenerateForm, FormParityMismatch
from superlie.liesuper import SuperAlgebra, direct_sum, po, pq, q, sl, sq
from superlie.rat import rat
from superlie.scalars import CartanPoly
from superlie.uea import FiniteContext, UEA


def test_gram_inverse_exact():
    for alg in (po(2), po(4), sl(2), sl(2, 1), q(2)):
        a = alg.gram()
        b = alg.gram_inverse()
        n = alg.dim
        for i in range(n):
            for j in range(n):
                s = sum((a[i][k] * b[k][j] for k in range(n)), rat(0))
                assert s == (1 if i == j else 0)


def test_gram_inverse_parity_blocks():
    # for an even form the inverse pairs equal parities only
    for alg in (po(4), sl(2, 1)):
        b = alg.gram_inverse()
        for i in range(alg.dim):
            for j in range(alg.dim):
                if alg.parities[i] != alg.parities[j]:
                    assert b[i][j] == 0


def test_gram_inverse_identity():
    abelian = SuperAlgebra(
        "abelian2",
        ["p", "q"],
        [0, 0],
        {},
        form={(0, 0): 1, (1, 1): 1},
    )
    assert abelian.gram_inverse() == [[rat(1), rat(0)], [rat(0), rat(1)]]


def test_gram_inverse_degenerate():
    for alg in (pq(2), sq(2), sl(2, 2)):
        with pytest.raises(DegenerateForm):
            alg.gram_inverse()


def test_omega0_sl2():
    a = sl(2)
    om = omega0(a)
    f, h, e = a.index_of("E21"), a.index_of("h1"), a.index_of("E12")
    assert om.element == {
        ((f, 1), (e, 1)): rat(2),
        ((h, 1),): rat(1),
        ((h, 2),): rat("1/2"),
    }
    assert om.table == {(e, f): rat(1), (f, e): rat(1), (h, h): rat("1/2")}
    assert om.is_central()
    u = UEA(FiniteContext(a))
    hp = CartanPoly.variable("h1")
    assert u.hc(om.element) == hp + CartanPoly.constant("1/2") * hp * hp


def test_omega0_central_exhaustive():
    for alg in (po(4), sl(2, 1), direct_sum(sl(2), sl(3))):
        om = omega0(alg)
        assert om.element
        assert om.is_central(), alg.name
        for k, r in om.residuals.items():
            assert r == {}


def test_omega0_form_errors():
    with pytest.raises(FormParityMismatch):
        omega0(po(3))
    with pytest.raises(FormParityMismatch):
        omega0(q(2))
    with pytest.raises(DegenerateForm):
        omega0(sl(2, 2))


def test_b_identity():
    for alg in (sl(2), po(2), po(4), sl(2, 1)):
        assert b_identity_violations(alg) == []


def test_b_identity_detects_faults():
    a = sl(2)
    b = a.gram_inverse()
    b[0][0] = b[0][0] + 1
    assert b_identity_violations(a, b)


def test_a_map_scalars():
    for alg, lam in ((sl(2), 4), (sl(3), 6), (sl(2, 1), 2), (sl(3, 1), 4), (po(4), 0), (po(6), 0)):
        rep = a_map(alg)
        assert rep.scalar, alg.name
        assert rep.lam == lam, alg.name


def test_a_map_po02_not_scalar():
    a = po(2)
    rep = a_map(a)
    assert not rep.scalar
    one = a.index_of("1")
    # the constant element is killed, as is everything of degree 1: the
    # image of a degree-d element has degree d + 2n - 4 = d - 2 here, and
    # there is nothing in degree -1
    assert all(rep.matrix[r][one] == 0 for r in range(a.dim))
    for name in ("x1", "e1"):
        assert all(rep.matrix[r][a.index_of(name)] == 0 for r in range(a.dim))
    # the top element maps to a nonzero constant, so A is nilpotent nonzero
    top = a.index_of("x1*e1")
    col = {r: rep.matrix[r][top] for r in range(a.dim) if rep.matrix[r][top] != 0}
    assert col == {one: rat(2)}


def test_a_map_direct_sum_blockwise():
    a = sl(2)
    b = sl(3)
    s = direct_sum(a, b)
    rep = a_map(s)
    assert not rep.scalar
    blocks = [list(range(a.dim)), list(range(a.dim, s.dim))]
    assert rep.block_lambdas(blocks) == [rat(4), rat(6)]


def test_ad_commutes_with_A():
    for alg in (po(2), po(4), sl(2, 1)):
        assert ad_commutes_with_A(alg) == []


def test_c3_po03():
    a = po(3)
    cub = c3(a)
    assert cub.element
    assert cub.symmetry_violations == []
    assert cub.is_central()
    # top PBW degree exactly 3
    deg = max(sum(e for _, e in m) for m in cub.element)
    assert deg == 3


def test_c3_q2():
    a = q(2)
    cub = c3(a)
    assert cub.element
    assert cub.symmetry_violations == []
    assert cub.is_central()
    assert max(sum(e for _, e in m) for m in cub.element) == 3


def test_c3_form_errors():
    with pytest.raises(FormParityMismatch):
        c3(po(4))
    with pytest.raises(DegenerateForm):
        c3(pq(2))
    with pytest.raises(DegenerateForm):
        c3(sq(2))
