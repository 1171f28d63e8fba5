"""Contravariant forms: Gram matrices, factored determinants, the closed
formula, singular vectors, the integral form, and the screening harness."""

import json
import os

import pytest

from superlie.errors import NotAWeight, OddCartan, OutOfCone
from superlie.liesuper import SuperAlgebra, po, q, sl
from superlie.rat import ONE, rat
from superlie.scalars import CartanPoly, det_bareiss, linear_form
from superlie.shapovalov import (
    FormulaData,
    OddCartanClifford,
    _SpinRep,
    bsh_det,
    bsh_gram,
    conjecture_harness,
    find_singular_vectors,
    formula_data_from_algebra,
    gram_matrix,
    kk_formula,
    partition_count,
    reports_match,
    shapovalov_det,
    write_report,
)
from superlie.uea import UEA, FiniteContext


def osp_like():
    # rank-one algebra with one odd positive root and its even double;
    # small enough that every determinant below is a hand check
    E, H, F, e, f = range(5)
    table = {
        (H, E): {E: rat(2)}, (E, H): {E: rat(-2)},
        (H, F): {F: rat(-2)}, (F, H): {F: rat(2)},
        (E, F): {H: rat(1)}, (F, E): {H: rat(-1)},
        (H, e): {e: rat(1)}, (e, H): {e: rat(-1)},
        (H, f): {f: rat(-1)}, (f, H): {f: rat(1)},
        (e, e): {E: rat(2)}, (f, f): {F: rat(-2)},
        (e, f): {H: rat(1)}, (f, e): {H: rat(1)},
        (E, f): {e: rat(-1)}, (f, E): {e: rat(1)},
        (F, e): {f: rat(-1)}, (e, F): {f: rat(1)},
    }
    return SuperAlgebra(
        "osp-like", ["E", "H", "F", "e", "f"], [0, 0, 0, 1, 1], table,
        cartan_indices=[H], splitter={H: rat(1)},
        weight_symbols={"a": (rat(1),)},
        sigma_basis={E: (F, rat(-1)), F: (E, rat(-1)), H: (H, rat(1)),
                     e: (f, rat(1)), f: (e, rat(1))})


# ----- plain Gram matrices and the closed formula -----


def test_sl2_gram_small_slices():
    a = sl(2)
    g = gram_matrix(a, "a")
    assert [[str(x) for x in r] for r in g.matrix] == [["h1"]]
    g = gram_matrix(a, "2a")
    h = CartanPoly.variable("h1")
    assert det_bareiss(g.matrix) == 2 * h * h - 2 * h


def test_sl2_formula_matches_gram():
    a = sl(2)
    fd = formula_data_from_algebra(a)
    assert fd.positive_roots == (((1,), 0, 1),)
    for m in range(1, 5):
        kk = kk_formula(fd, (m,))
        direct = shapovalov_det(
            gram_matrix(a, fd.chi_weight((m,))), [f for f, _ in kk.factors]
        )
        assert reports_match(direct, kk)


def test_sl21_formula_matches_gram_all_low_slices():
    a = sl(2, 1)
    fd = formula_data_from_algebra(a)
    checked = 0
    for i in range(5):
        for j in range(5 - i):
            chi = (i, j)
            if partition_count(fd.positive_roots, chi) == 0:
                continue
            kk = kk_formula(fd, chi)
            direct = shapovalov_det(
                gram_matrix(a, fd.chi_weight(chi)), [f for f, _ in kk.factors]
            )
            assert reports_match(direct, kk), chi
            checked += 1
    assert checked >= 10


def test_sl21_isotropic_multiplicity_is_alternating():
    # the isotropic root contributes a single linear factor whose exponent
    # is the alternating partition sum; the plain sum would give exponent 2
    fd = formula_data_from_algebra(sl(2, 1))
    kk = kk_formula(fd, (2, 1))
    assert {str(f): m for f, m in kk.factors} == {
        "h2": 1,
        "h1 + h2 + 1": 1,
    }


def test_osp_like_formula_matches_gram():
    a = osp_like()
    assert a.verify() == []
    fd = formula_data_from_algebra(a)
    assert fd.positive_roots == (((1,), 1, 1), ((2,), 0, 1))
    h = CartanPoly.variable("H")
    expected = [
        h,
        -h,
        -h * h + h,
        2 * h * h - 2 * h,
        2 * h**3 - 6 * h * h + 4 * h,
        -6 * h**3 + 18 * h * h - 12 * h,
    ]
    for k in range(1, 7):
        g = gram_matrix(a, (rat(k),))
        assert det_bareiss(g.matrix) == expected[k - 1]
        kk = kk_formula(fd, (k,))
        direct = shapovalov_det(g, [f for f, _ in kk.factors])
        assert reports_match(direct, kk)


def test_formula_data_validation():
    with pytest.raises(ValueError):
        FormulaData(
            cartan_matrix=((2, -1), (-3, 2)),
            d=(1, 1),
            parities=(0, 0),
            coroots=(linear_form({"h1": 1}), linear_form({"h2": 1})),
            positive_roots=(((1, 0), 0, 1),),
        )
    with pytest.raises(ValueError):
        FormulaData(
            cartan_matrix=((2,),),
            d=(1, 1),
            parities=(0,),
            coroots=(linear_form({"h1": 1}),),
            positive_roots=(),
        )


def test_partition_count_oracles():
    sl2 = (((1,), 0, 1),)
    assert [partition_count(sl2, (m,)) for m in range(4)] == [1, 1, 1, 1]
    sl21 = (((1, 0), 1, 1), ((0, 1), 0, 1), ((1, 1), 1, 1))
    assert partition_count(sl21, (1, 1)) == 2
    assert partition_count(sl21, (2, 1)) == 1
    assert partition_count(sl21, (1, 2)) == 2
    assert partition_count(sl21, (2, 2)) == 1
    assert partition_count(sl21, (0, 3)) == 1
    assert partition_count(sl21, (3, 0)) == 0
    doubled = (((1,), 0, 2),)
    assert partition_count(doubled, (2,)) == 3


def test_weight_guards():
    a = sl(2)
    with pytest.raises(NotAWeight):
        gram_matrix(a, (rat(-2),))
    with pytest.raises(NotAWeight):
        gram_matrix(a, (rat(3),))
    fd = formula_data_from_algebra(a)
    with pytest.raises(NotAWeight):
        kk_formula(fd, (-1,))
    with pytest.raises(OddCartan):
        gram_matrix(po(3), (1,))


# ----- singular vectors -----


def test_singular_vectors_sl2():
    a = sl(2)
    fidx = a.index_of("E21")
    for m in range(1, 5):
        vecs = find_singular_vectors(a, {"h1": m - 1}, "%d*a" % m)
        assert len(vecs) == 1
        (vec,) = vecs
        assert set(vec) == {((fidx, m),)}
    assert find_singular_vectors(a, {"h1": rat(7) / 2}, "2a") == []
    assert find_singular_vectors(a, {"h1": 5}, (0,)) == []


def test_singular_vectors_track_determinant_zeros():
    a = sl(2)
    g2 = gram_matrix(a, "2a")
    det2 = det_bareiss(g2.matrix)
    for lam in (rat(0), rat(1), rat(2), rat(1) / 2, rat(-3) / 2):
        vanish = det2.evaluate({"h1": lam}) == 0
        found = any(
            find_singular_vectors(a, {"h1": lam}, "%d*a" % k)
            for k in (1, 2)
        )
        assert vanish == found


def test_singular_vectors_need_even_cartan():
    with pytest.raises(OddCartan):
        find_singular_vectors(po(3), {"h0": 1}, (1,))


# ----- the integral form over an odd Cartan subalgebra -----


def test_trivial_vacuum_degenerates():
    a = po(3)
    g = bsh_gram(a, (0,), vacuum="trivial")
    assert [[str(x) for x in r] for r in g.matrix] == [["0"]]
    g = bsh_gram(a, (1,), vacuum="trivial")
    assert g.size() == 2
    assert all(x.is_zero() for row in g.matrix for x in row)


def test_module_vacuum_chi_zero_pairing_is_unimodular():
    g = bsh_gram(po(3), (0,))
    assert g.size() == 4
    assert det_bareiss(g.matrix) == CartanPoly.constant(1)


def test_bsh_po3_determinants():
    a = po(3)
    h0 = linear_form({"h0": 1})
    half = linear_form({"h1": 1}, rat(-1) / 2)
    one = linear_form({"h1": 1}, -1)
    threehalf = linear_form({"h1": 1}, rat(-3) / 2)
    expected = {
        1: (rat(1), [("h0", 4), ("h1 - 1/2", 4)]),
        2: (rat(16), [("h0", 4), ("h1 - 1/2", 8), ("h1 - 1", 4)]),
        3: (
            rat(20736),
            [("h0", 4), ("h1 - 1/2", 8), ("h1 - 1", 8), ("h1 - 3/2", 4)],
        ),
    }
    for k, (scalar, factors) in expected.items():
        gram = bsh_gram(a, (k,))
        assert gram.size() == 8
        rep = shapovalov_det(gram, [h0, half, one, threehalf])
        assert rep.scalar == scalar
        assert [(str(f), m) for f, m in rep.factors] == factors
        assert rep.cofactor == CartanPoly.constant(1)


def test_bsh_det_agrees_with_direct_gram():
    a3 = po(3)
    u3 = UEA(FiniteContext(a3))
    assert _SpinRep.build(OddCartanClifford(u3.ctx)) is not None
    for k in (1, 2, 3):
        direct = det_bareiss(bsh_gram(a3, (k,)).matrix)
        assert bsh_det(a3, (k,)) == direct
    a5 = po(5)
    u5 = UEA(FiniteContext(a5))
    assert _SpinRep.build(OddCartanClifford(u5.ctx)) is not None
    direct = det_bareiss(bsh_gram(a5, (0, 1)).matrix)
    assert bsh_det(a5, (0, 1)) == direct


def test_bsh_po5_e2_factors():
    det = bsh_det(po(5), (0, 1))
    h11 = linear_form({"h11": 1})
    h10 = linear_form({"h10": 1})
    h01 = linear_form({"h01": 1})
    from superlie.scalars import factor_over_candidates

    rep = factor_over_candidates(det, [h11, h10])
    assert [(str(f), m) for f, m in rep.factors] == [("h11", 32), ("h10", 32)]
    assert rep.cofactor == CartanPoly.constant(1)
    # the root-e1 candidate fails its side condition at this weight and
    # indeed does not divide
    assert det.divide_exact(h01) is None


def test_odd_reorder_flips_at_most_the_sign():
    a = po(3)
    u = UEA(FiniteContext(a))
    order = tuple(u.ctx.odd_cartan_keys())
    for k in (1, 2):
        base = bsh_det(a, (k,))
        flipped = bsh_det(a, (k,), odd_order=tuple(reversed(order)))
        assert flipped == base or flipped == -base


def test_sigma_mode_flips_at_most_the_sign():
    a = po(3)
    for k in (1, 2):
        base = bsh_det(a, (k,))
        twisted = bsh_det(a, (k,), sigma_mode="respect")
        assert twisted == base or twisted == -base
        gram = bsh_gram(a, (k,), sigma_mode="respect")
        assert det_bareiss(gram.matrix) == twisted


def test_bsh_argument_validation():
    with pytest.raises(ValueError):
        bsh_gram(po(3), (1,), vacuum="enormous")
    with pytest.raises(ValueError):
        bsh_gram(po(3), (1,), sigma_mode="maybe")
    with pytest.raises(ValueError):
        bsh_det(po(3), (1,), vacuum="enormous")
    with pytest.raises(ValueError):
        OddCartanClifford(UEA(FiniteContext(po(3))).ctx, order=(4, 4))


def test_clifford_words_and_integral():
    u = UEA(FiniteContext(po(3)))
    cl = OddCartanClifford(u.ctx)
    words = cl.words()
    assert len(words) == 4 and words[0] == ()
    assert str(cl.integral({cl.top: CartanPoly.variable("h0")})) == "h0"
    assert cl.integral(cl.one()).is_zero()


def test_queer_cartan_clifford_square():
    # q(2) also has odd Cartan directions; squares land in the even part
    u = UEA(FiniteContext(q(2)))
    cl = OddCartanClifford(u.ctx)
    assert len(cl.order) == 2
    for g in cl.order:
        sq = cl.mul(cl.mul_gen(cl.one(), g), cl.mul_gen(cl.one(), g))
        assert set(sq) <= {()}


# ----- the screening harness -----


def test_harness_poi03_shape(tmp_path):
    report = conjecture_harness("poi03", [1, 2], out_dir=str(tmp_path))
    assert report["schema"].startswith("superlie.shapovalov.conjecture/")
    assert report["target"] == "poi03"
    assert len(report["results"]) == 2
    first = report["results"][0]
    assert first["basis_size"] == 8
    assert first["slice_dim"] == 2
    assert first["vacuum_dim"] == 4
    assert first["cofactor_trivial"]
    assert first["rejected_divisors"] == []
    assert {f["form"] for f in first["factors"]} == {"h0", "h1 - 1/2"}
    assert all(f["rule"] for f in first["factors"])
    jpath = tmp_path / "poi03.json"
    tpath = tmp_path / "poi03.txt"
    assert jpath.exists() and tpath.exists()
    on_disk = json.loads(jpath.read_text())
    assert on_disk["results"] == report["results"]
    assert "factor (h0)^4" in tpath.read_text()


def test_harness_rejects_weights_outside_the_cone():
    with pytest.raises(OutOfCone):
        conjecture_harness("poi03", [0])
    with pytest.raises(OutOfCone):
        conjecture_harness("poi05", [(-1, 2)])
    with pytest.raises(OutOfCone):
        conjecture_harness("poi05", [(0, 0)])


def test_harness_candidate_audit_po5():
    report = conjecture_harness("poi05", [(0, 1)])
    res = report["results"][0]
    assert res["slice_dim"] == 4
    assert res["vacuum_dim"] == 16
    admitted = {c["form"] for c in res["candidates"] if c["admitted"]}
    rejected = {c["form"] for c in res["candidates"] if not c["admitted"]}
    assert "h01" in rejected
    assert {"h11", "h10"} <= admitted
    assert {f["form"]: f["multiplicity"] for f in res["factors"]} == {
        "h11": 32,
        "h10": 32,
    }
    assert res["cofactor_trivial"]
    assert res["rejected_divisors"] == []


def test_write_report_sanitizes_target_name(tmp_path):
    report = {"target": "loop_poi(2, 1)", "results": []}
    jpath, tpath = write_report(report, str(tmp_path))
    assert os.path.basename(jpath) == "loop_poi_2_1.json"
    assert os.path.exists(tpath)
