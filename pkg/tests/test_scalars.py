"""Polynomial arithmetic, exact division, factorization, determinants."""

import itertools
import random

import pytest

from superlie.rat import rat
from superlie.scalars import (
    CartanPoly,
    det_bareiss,
    factor_over_candidates,
    linear_form,
    monic,
    trial_divide,
)


def x(name):
    return CartanPoly.variable(name)


def rand_poly(rng, names, max_terms=4, max_exp=2, allow_zero=False):
    n = rng.randint(0 if allow_zero else 1, max_terms)
    terms = {}
    for _ in range(n):
        exp = tuple(rng.randint(0, max_exp) for _ in names)
        terms[exp] = rat(rng.randint(-5, 5))
    return CartanPoly(names, terms)


def det_by_permutations(rows):
    # independent oracle: Leibniz expansion with inversion-count signs
    n = len(rows)
    total = CartanPoly.constant(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if perm[i] > perm[j]
        )
        term = CartanPoly.constant(-1 if inv % 2 else 1)
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == rat(1) / 2


def test_constant_and_variable():
    c = CartanPoly.constant("5/3")
    assert c.is_constant() and c.constant_value() == rat("5/3")
    h = x("h0")
    assert h.degree() == 1
    assert str(h) == "h0"
    assert CartanPoly.constant(0).is_zero()


def test_arithmetic_identities():
    a, b = x("a"), x("b")
    assert (a + b) * (a - b) == a * a - b * b
    assert (a + b) ** 2 == a * a + 2 * a * b + b * b
    assert a - a == 0
    assert 3 * a == a + a + a
    assert (1 - a) + (a - 1) == 0


def test_mixed_variable_alignment():
    p = x("h1") + 2
    q = x("h0") * 3
    s = p + q
    assert s.vars == ("h0", "h1")
    assert s.coefficient((1, 0)) == 3
    assert s.coefficient((0, 1)) == 1
    assert s.coefficient((0, 0)) == 2


def test_str_formatting():
    h0, h1 = x("h0"), x("h1")
    p = h0 * h0 - 2 * h0 * h1 + CartanPoly.constant("1/2")
    assert str(p) == "h0^2 - 2*h0*h1 + 1/2"
    assert str(CartanPoly.constant(0)) == "0"
    assert str(-h0) == "-h0"


def test_evaluate():
    h0, h1 = x("h0"), x("h1")
    p = h0**2 * h1 - 3 * h1 + 7
    assert p.evaluate({"h0": 2, "h1": "1/2"}) == rat("15/2")


def test_divide_exact_roundtrip():
    rng = random.Random(11)
    names = ("u", "v", "w")
    for _ in range(40):
        p = rand_poly(rng, names)
        q = rand_poly(rng, names)
        if q.is_zero():
            continue
        prod = p * q
        back = prod.divide_exact(q)
        assert back is not None
        assert back == p


def test_divide_exact_detects_failure():
    rng = random.Random(12)
    names = ("u", "v")
    hits = 0
    for _ in range(40):
        p = rand_poly(rng, names)
        q = rand_poly(rng, names)
        if q.degree() < 1:
            continue
        spoiled = p * q + 1
        hits += 1
        assert spoiled.divide_exact(q) is None
    assert hits > 20


def test_trial_divide_multiplicity():
    h0, h1 = x("h0"), x("h1")
    f = h1 - CartanPoly.constant("1/2")
    p = h0 * h0 * f**3 * 4
    rest, mult = trial_divide(p, f)
    assert mult == 3
    assert rest == 4 * h0 * h0
    with pytest.raises(ValueError):
        trial_divide(p, CartanPoly.constant(2))


def test_linear_form_and_monic():
    f = linear_form({"h0": 2, "h1": -1}, const="1/3")
    assert str(f) == "2*h0 - h1 + 1/3"
    m, lc = monic(f)
    assert lc == 2
    assert str(m) == "h0 - 1/2*h1 + 1/6"


def test_factor_over_candidates_reconstructs():
    h0, h1 = x("h0"), x("h1")
    f1 = h0
    f2 = h1 - 1
    f3 = h0 + h1
    det = 6 * f1**2 * f2 * (h0 * h1 + 5)
    rep = factor_over_candidates(det, [f1, f2, f3, 2 * f1])
    assert rep.reconstruct() == det
    got = {str(f): m for f, m in rep.factors}
    assert got == {"h0": 2, "h1 - 1": 1}
    assert rep.scalar == 6
    assert str(rep.cofactor) == "h0*h1 + 5"
    # cofactor is monic and not divisible by any candidate
    assert rep.cofactor.leading()[1] == 1
    assert rep.cofactor.divide_exact(f3) is None


def test_factor_zero_det():
    rep = factor_over_candidates(CartanPoly.constant(0), [x("h0")])
    assert rep.scalar == 0
    assert rep.factors == []
    assert rep.reconstruct() == 0


def test_det_small_known():
    one = CartanPoly.constant(1)
    m = [[one * 2, one * 3], [one * 4, one * 5]]
    assert det_bareiss(m) == -2
    m3 = [
        [one * 1, one * 2, one * 3],
        [one * 4, one * 5, one * 6],
        [one * 7, one * 8, one * 10],
    ]
    assert det_bareiss(m3) == -3


def test_det_empty_and_singular():
    assert det_bareiss([]) == 1
    one = CartanPoly.constant(1)
    m = [[one, one * 2], [one * 2, one * 4]]
    assert det_bareiss(m).is_zero()


def test_det_random_vs_permanent_expansion():
    rng = random.Random(13)
    for n in (1, 2, 3, 4, 5):
        for _ in range(6):
            m = [
                [CartanPoly.constant(rng.randint(-6, 6)) for _ in range(n)]
                for _ in range(n)
            ]
            assert det_bareiss(m) == det_by_permutations(m)


def test_det_polynomial_vandermonde():
    a, b, c = x("a"), x("b"), x("c")
    one = CartanPoly.constant(1)
    m = [[one, a, a * a], [one, b, b * b], [one, c, c * c]]
    expect = (b - a) * (c - a) * (c - b)
    assert det_bareiss(m) == expect


def test_det_polynomial_random_vs_expansion():
    rng = random.Random(14)
    names = ("a", "b")
    for _ in range(8):
        m = [
            [rand_poly(rng, names, max_terms=2, max_exp=1, allow_zero=True) for _ in range(3)]
            for _ in range(3)
        ]
        assert det_bareiss(m) == det_by_permutations(m)


def test_det_block_structure():
    # a matrix that is block diagonal after a symmetric permutation
    h = x("h")
    z = CartanPoly.constant(0)
    one = CartanPoly.constant(1)
    # indices 0,2 form one block, 1,3 the other
    m = [
        [h, z, one * 2, z],
        [z, one * 3, z, h + 1],
        [one * 5, z, h, z],
        [z, one, z, one * 2],
    ]
    expect = det_by_permutations(m)
    assert det_bareiss(m) == expect
    assert not expect.is_zero()
