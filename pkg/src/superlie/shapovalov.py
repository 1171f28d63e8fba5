"""Contravariant (Shapovalov-type) forms, their determinants, and oracles.

The classical setup: fix a triangular decomposition g = n^- + h + n^+ with h
purely even, and the antiautomorphism sigma swapping n^- and n^+.  On each
weight slice U(n^-)(-chi) the pairing

    (x, y) = HC(sigma(x) y)

takes values in S(h), and its determinant in a PBW basis is a polynomial in
the Cartan variables whose zeros locate degenerate highest weight modules.
``gram_matrix`` builds that matrix and ``shapovalov_det`` factors its
determinant over a caller-supplied candidate list.  ``kk_formula`` evaluates
the closed-form factorization of the same determinant from root data, so the
two can be cross-checked up to a nonzero rational scalar.

When the Cartan subalgebra has odd directions (Poisson and queer families)
the naive pairing is either ill-defined or identically zero.  The repair
implemented here replaces the one-dimensional vacuum by the Clifford-type
module U(h) x_{U(h_0)} C(lambda) over the full Cartan subalgebra, and pairs
slice vectors through a Berezin-style integral: project onto U(h), then read
off the coefficient of the top word in the odd Cartan generators.  That
coefficient is a polynomial in the even Cartan variables.  ``bsh_gram``
builds the resulting block Gram matrix; rows are indexed by (slice monomial,
odd Cartan word) pairs.  The integral is normalized by the choice of top
word, so the determinant is canonical up to sign and a rational scalar,
which is all the factor bookkeeping needs.

``conjecture_harness`` screens candidate factor tables for the Poisson
families against these determinants and writes JSON/text reports.  It never
asserts a conjecture; it reports exact divisions and leftovers.
"""

import json
import os
import re
from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import NotAWeight, OddCartan, OutOfCone
from .liesuper import po
from .loop_km import LoopContext
from .rat import ONE, rat
from .scalars import (
    CartanPoly,
    FactorizationReport,
    det_bareiss,
    factor_over_candidates,
    linear_form,
    monic,
    nullspace,
    solve_exact,
)
from .uea import UEA, FiniteContext

HARNESS_SCHEMA = "superlie.shapovalov.conjecture/1"


# ----- weight slices and the plain Gram matrix -----


@dataclass
class ShapovalovGram:
    """A contravariant Gram matrix on a weight slice.

    basis holds the PBW monomials of the slice; matrix is square over the
    row labels, which are the monomials themselves (kind "hc") or all
    (monomial, odd Cartan word) pairs (kind "integral").
    """

    chi: tuple
    basis: tuple
    matrix: list
    vacuum_words: tuple = ((),)
    kind: str = "hc"

    def labels(self):
        if self.kind == "hc":
            return tuple(self.basis)
        return tuple((m, w) for m in self.basis for w in self.vacuum_words)

    def size(self):
        return len(self.matrix)


def _as_uea(g):
    if isinstance(g, UEA):
        return g
    return UEA(FiniteContext(g))


def _to_weight(u, chi):
    """Coerce chi (weight string or coefficient tuple) to a weight tuple."""
    zero = u.ctx.weight_zero()
    if isinstance(chi, str):
        alg = getattr(u.ctx, "alg", None)
        if alg is None:
            raise ValueError("string weights need an underlying algebra")
        w = alg.parse_weight(chi)
        if len(w) == len(zero) - 1:
            # loop context: an untwisted symbol has no t-degree coordinate
            w = w + (rat(0),)
    else:
        w = tuple(rat(c) for c in chi)
    if len(w) != len(zero):
        raise ValueError(
            "weight has %d coordinates, expected %d" % (len(w), len(zero))
        )
    return w


def _slice_basis(u, chi, max_nodes=2000000):
    try:
        basis = u.weight_basis(chi, max_nodes)
    except OutOfCone:
        raise NotAWeight("chi is not a weight of the positive half")
    if not basis:
        raise NotAWeight("the weight slice of chi is empty")
    return basis


def gram_matrix(g, chi, sigma_mode="ignore"):
    """Shapovalov Gram matrix HC(sigma(x_i) x_j) on the slice of weight chi.

    Requires a purely even Cartan subalgebra; raises OddCartan otherwise
    (use bsh_gram there).  chi may be a weight string or a weight tuple;
    chi = 0 gives the 1x1 matrix [1].
    """
    u = _as_uea(g)
    ctx = u.ctx
    if ctx.odd_cartan_keys():
        raise OddCartan(
            "the Cartan subalgebra has odd directions; use bsh_gram"
        )
    chi = _to_weight(u, chi)
    basis = _slice_basis(u, chi)
    rows = []
    for m in basis:
        sig = u.sigma(u.monomial(m), mode=sigma_mode)
        row = [u.hc(u.mul(sig, u.monomial(m2)), "drop") for m2 in basis]
        rows.append(row)
    return ShapovalovGram(chi=chi, basis=basis, matrix=rows)


def shapovalov_det(gram, candidates=None):
    """Determinant of a Gram matrix, factored over candidate linear forms."""
    det = det_bareiss(gram.matrix)
    return factor_over_candidates(det, list(candidates or []))


def reports_match(a, b):
    """Same monic factor multiset and constant cofactors, scalars ignored."""
    fa = {str(p): m for p, m in a.factors}
    fb = {str(p): m for p, m in b.factors}
    return fa == fb and a.cofactor.is_constant() and b.cofactor.is_constant()


# ----- the integral form over an odd Cartan subalgebra -----


class OddCartanClifford:
    """Multiplication table for U(h) with odd Cartan directions.

    Elements are dicts {word: CartanPoly} where a word is a tuple of odd
    Cartan keys, strictly increasing in the chosen order, and coefficients
    are polynomials in the even Cartan variables.  Requires the even Cartan
    part to be central in h and odd brackets to land in it; both are checked
    on construction.
    """

    def __init__(self, ctx, order=None):
        self.ctx = ctx
        odd = tuple(ctx.odd_cartan_keys())
        if order is None:
            order = odd
        else:
            order = tuple(order)
            if sorted(order, key=str) != sorted(odd, key=str):
                raise ValueError(
                    "order must be a permutation of the odd Cartan keys"
                )
        self.order = order
        self.rank = {k: p for p, k in enumerate(order)}
        self.top = order
        even = tuple(ctx.even_cartan_keys())
        for h in even:
            for t in even + order:
                if ctx.bracket_keys(h, t) or ctx.bracket_keys(t, h):
                    raise ValueError(
                        "the even Cartan part is not central in the Cartan "
                        "subalgebra; the integral form needs that"
                    )
        self._sq = {g: self._bracket_poly(g, g) * (ONE / 2) for g in order}
        self._br = {}
        self._mul_cache = {}
        self._pair_cache = {}

    def _bracket_poly(self, a, b):
        coeffs = {}
        for k, c in self.ctx.bracket_keys(a, b).items():
            if self.ctx.classify(k) != "cartan" or self.ctx.parity(k):
                raise ValueError(
                    "bracket of odd Cartan generators leaves the even "
                    "Cartan part"
                )
            coeffs[self.ctx.var_name(k)] = c
        return linear_form(coeffs)

    def _bracket(self, a, b):
        key = (a, b)
        if key not in self._br:
            self._br[key] = self._bracket_poly(a, b)
        return self._br[key]

    def one(self):
        return {(): CartanPoly.constant(1)}

    def words(self):
        """All strictly increasing odd words, shortest-mask order."""
        n = len(self.order)
        out = []
        for mask in range(1 << n):
            out.append(
                tuple(self.order[b] for b in range(n) if (mask >> b) & 1)
            )
        return tuple(out)

    def _word_mul_gen(self, w, g):
        key = (w, g)
        cached = self._mul_cache.get(key)
        if cached is not None:
            return cached
        if not w:
            res = {(g,): CartanPoly.constant(1)}
            self._mul_cache[key] = res
            return res
        last = w[-1]
        rl, rg = self.rank[last], self.rank[g]
        if rl < rg:
            res = {w + (g,): CartanPoly.constant(1)}
        elif last == g:
            res = {}
            sq = self._sq[g]
            if not sq.is_zero():
                res[w[:-1]] = sq
        else:
            # swap two odd letters: w' last g = -(w' g) last + w' [last, g]
            res = {}
            for w2, p2 in self._word_mul_gen(w[:-1], g).items():
                for w3, p3 in self._word_mul_gen(w2, last).items():
                    add = p2 * p3
                    cur = res.get(w3)
                    nxt = -add if cur is None else cur - add
                    if nxt.is_zero():
                        res.pop(w3, None)
                    else:
                        res[w3] = nxt
            br = self._bracket(last, g)
            if not br.is_zero():
                cur = res.get(w[:-1])
                nxt = br if cur is None else cur + br
                if nxt.is_zero():
                    res.pop(w[:-1], None)
                else:
                    res[w[:-1]] = nxt
        self._mul_cache[key] = res
        return res

    def mul_gen(self, elem, g):
        out = {}
        for w, p in elem.items():
            for w2, p2 in self._word_mul_gen(w, g).items():
                cur = out.get(w2)
                nxt = p * p2 if cur is None else cur + p * p2
                if nxt.is_zero():
                    out.pop(w2, None)
                else:
                    out[w2] = nxt
        return out

    def word_times_word(self, w1, w2):
        key = (w1, w2)
        cached = self._pair_cache.get(key)
        if cached is None:
            elem = {w1: CartanPoly.constant(1)}
            for g in w2:
                elem = self.mul_gen(elem, g)
            self._pair_cache[key] = elem
            cached = elem
        return cached

    def mul(self, a, b):
        out = {}
        for w2, p2 in b.items():
            for w1, p1 in a.items():
                for w, p in self.word_times_word(w1, w2).items():
                    cur = out.get(w)
                    add = p1 * p2 * p
                    nxt = add if cur is None else cur + add
                    if nxt.is_zero():
                        out.pop(w, None)
                    else:
                        out[w] = nxt
        return out

    def from_clifford(self, ce):
        """Convert a CliffordElement (words in context order) to this order."""
        out = {}
        for word, poly in ce.parts.items():
            elem = self.one()
            for g in word:
                elem = self.mul_gen(elem, g)
            for w, p in elem.items():
                cur = out.get(w)
                add = poly * p
                nxt = add if cur is None else cur + add
                if nxt.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = nxt
        return out

    def sigma_word(self, w):
        """Image of a word under the antiautomorphism, as an element."""
        sign = ONE
        letters = []
        for k in reversed(w):
            img, s = self.ctx.sigma_gen(k)
            if self.rank.get(img) is None:
                raise ValueError(
                    "the antiautomorphism does not preserve the odd Cartan "
                    "part"
                )
            sign = sign * s
            letters.append(img)
        elem = {(): CartanPoly.constant(sign)}
        for g in letters:
            elem = self.mul_gen(elem, g)
        return elem

    def top_pair(self, w, t):
        """Coefficient of the top word in (w . t); the integral pairing."""
        return self.word_times_word(w, t).get(self.top)

    def integral(self, elem):
        """Coefficient of the top word: a Berezin-style integral on U(h)."""
        p = elem.get(self.top)
        return CartanPoly.constant(0) if p is None else p


def bsh_gram(g, chi, vacuum="module", sigma_mode="ignore", odd_order=None):
    """Gram matrix of the integral form on a weight slice.

    Rows are pairs (slice monomial, odd Cartan word); the entry at
    ((i, s), (j, t)) is the integral of sigma(c_s) HC(sigma(x_i) x_j) c_t
    over U(h).  vacuum "module" uses all odd Cartan words (the Clifford
    vacuum module); "trivial" keeps only the empty word, which reproduces
    the one-dimensional-vacuum pairing (identically zero in most slices
    when the Cartan subalgebra has two or more odd directions).

    sigma_mode "respect" twists each row by the parity sign of its label;
    odd_order reorders the odd Cartan generators used for words and for the
    top coefficient.  Both are expected to change the determinant by at
    most a sign.
    """
    if vacuum not in ("module", "trivial"):
        raise ValueError("vacuum must be 'module' or 'trivial'")
    if sigma_mode not in ("ignore", "respect"):
        raise ValueError("sigma_mode must be 'ignore' or 'respect'")
    u = _as_uea(g)
    ctx = u.ctx
    chi = _to_weight(u, chi)
    basis = _slice_basis(u, chi)
    cl = OddCartanClifford(ctx, odd_order)
    words = cl.words() if vacuum == "module" else ((),)
    nb, nw = len(basis), len(words)

    # HC middles once per slice pair, then convert to the engine order
    monos = [u.monomial(m) for m in basis]
    sigs = [u.sigma(mono) for mono in monos]
    mids = [
        [
            cl.from_clifford(u.hc(u.mul(sigs[i], monos[j]), "clifford"))
            for j in range(nb)
        ]
        for i in range(nb)
    ]
    lefts = [cl.sigma_word(s) for s in words]

    signs = [ONE] * (nb * nw)
    if sigma_mode == "respect":
        for i, m in enumerate(basis):
            nodd_m = sum(e for k, e in m if ctx.parity(k))
            for s, word in enumerate(words):
                nodd = nodd_m + len(word)
                if (nodd * (nodd - 1) // 2) % 2:
                    signs[i * nw + s] = -ONE

    zero = CartanPoly.constant(0)
    matrix = []
    for i in range(nb):
        for s in range(nw):
            row = []
            for j in range(nb):
                lm = cl.mul(lefts[s], mids[i][j])
                for t in range(nw):
                    total = None
                    for w, p in lm.items():
                        tp = cl.top_pair(w, words[t])
                        if tp is None:
                            continue
                        add = p * tp
                        total = add if total is None else total + add
                    if total is None or total.is_zero():
                        row.append(zero)
                    elif signs[i * nw + s] == ONE:
                        row.append(total)
                    else:
                        row.append(-total)
            matrix.append(row)
    return ShapovalovGram(
        chi=chi,
        basis=basis,
        matrix=matrix,
        vacuum_words=words,
        kind="integral",
    )


# ----- fast determinant of the integral form via the spin representation -----


class _Frac:
    """Exact fraction num / prod(dens) of Cartan polynomials.

    Denominators are kept as a list of polynomial factors; cancellation
    happens by exact trial division, which is all this module needs since
    the denominators that arise are powers of a few linear forms.
    """

    __slots__ = ("num", "dens")

    def __init__(self, num, dens=()):
        self.num = num
        self.dens = list(dens)
        self._cancel()

    def _cancel(self):
        if self.num.is_zero():
            self.dens = []
            return
        kept = []
        for f in self.dens:
            if f.is_constant():
                self.num = self.num * (ONE / f.constant_value())
                continue
            q = self.num.divide_exact(f)
            if q is not None:
                self.num = q
            else:
                kept.append(f)
        self.dens = kept

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return not self.dens

    def __add__(self, other):
        num = self.num
        for f in other.dens:
            num = num * f
        num2 = other.num
        for f in self.dens:
            num2 = num2 * f
        return _Frac(num + num2, self.dens + other.dens)

    def __neg__(self):
        return _Frac(-self.num, self.dens)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, _Frac):
            return _Frac(self.num * other.num, self.dens + other.dens)
        return _Frac(self.num * other, self.dens)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num = CartanPoly.constant(1, self.num.vars)
        for f in self.dens:
            num = num * f
        if self.num.is_constant():
            return _Frac(num * (ONE / self.num.constant_value()))
        return _Frac(num, [self.num])

    def __truediv__(self, other):
        return self * other.inverse()


def _frac_const(c=0):
    return _Frac(CartanPoly.constant(c))


def _fmat_mul(a, b):
    n, mid, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for k in range(mid):
                if a[i][k].is_zero() or b[k][j].is_zero():
                    continue
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(_frac_const() if acc is None else acc)
        out.append(row)
    return out


def _fmat_inverse(mat):
    """Gauss-Jordan inverse of a small matrix of fractions, or None."""
    n = len(mat)
    aug = [
        [mat[i][j] for j in range(n)]
        + [_frac_const(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if not aug[i][col].is_zero():
                piv = i
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [e * inv for e in aug[col]]
        for i in range(n):
            if i == col or aug[i][col].is_zero():
                continue
            c = aug[i][col]
            aug[i] = [a - c * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


class _SpinRep:
    """Spin representation of the odd Cartan Clifford algebra.

    Splits the quadratic form on the odd Cartan space into hyperbolic
    planes over the fraction field of the even Cartan polynomials, then
    realizes the generators as creation/annihilation operators on the
    exterior algebra of the isotropic half.  The regular module is
    2^r copies of this one (r = half the number of odd generators), so
    the determinant of the integral-form Gram matrix is recovered as

        det(vacuum pairing)^K * det(rho(H))^(2^r)

    with H the K x K slice matrix of Harish-Chandra projections.
    Construction fails (returns None from build) when no basis vector of
    the running complement is isotropic; callers then fall back to the
    direct determinant.
    """

    def __init__(self, cl, matrices, dim):
        self.cl = cl
        self.matrices = matrices
        self.dim = dim
        self._word_cache = {(): self._identity()}

    def _identity(self):
        return [
            [_frac_const(1 if i == j else 0) for j in range(self.dim)]
            for i in range(self.dim)
        ]

    @classmethod
    def build(cls, cl):
        gens = cl.order
        n2 = len(gens)
        if n2 == 0 or n2 % 2:
            return None
        r = n2 // 2

        qtab = {}
        for a in gens:
            for b in gens:
                if a == b:
                    qtab[(a, a)] = cl._sq[a]
                else:
                    qtab[(a, b)] = cl._bracket(a, b) * (ONE / 2)

        def qv(x, y):
            acc = _frac_const()
            for a, xa in x.items():
                if xa.is_zero():
                    continue
                for b, yb in y.items():
                    if yb.is_zero():
                        continue
                    q = qtab[(a, b)]
                    if q.is_zero():
                        continue
                    acc = acc + xa * yb * q
            return acc

        remaining = [
            {h: _frac_const(1 if h == g else 0) for h in gens} for g in gens
        ]
        planes = []
        for _ in range(r):
            u = None
            for idx, v in enumerate(remaining):
                if qv(v, v).is_zero():
                    u = v
                    u_idx = idx
                    break
            if u is None:
                return None
            w = None
            for idx, x in enumerate(remaining):
                if idx == u_idx:
                    continue
                if not qv(u, x).is_zero():
                    w = x
                    w_idx = idx
                    break
            if w is None:
                return None
            beta = qv(u, w)
            scale = qv(w, w) / (beta + beta)
            v = {g: w[g] - scale * u[g] for g in gens}
            planes.append((u, v, beta))
            nxt = []
            for idx, x in enumerate(remaining):
                if idx in (u_idx, w_idx):
                    continue
                cu = qv(x, v) / beta
                cv = qv(x, u) / beta
                nxt.append(
                    {g: x[g] - cu * u[g] - cv * v[g] for g in gens}
                )
            remaining = nxt

        # change of basis: columns are u_1..u_r, v_1..v_r over the gens
        cols = [p[0] for p in planes] + [p[1] for p in planes]
        pmat = [[cols[c][g] for c in range(n2)] for g in gens]
        pinv = _fmat_inverse(pmat)
        if pinv is None:
            return None

        dim = 1 << r
        zero = _frac_const()

        def cre(i):
            m = [[zero for _ in range(dim)] for _ in range(dim)]
            bit = 1 << i
            for a in range(dim):
                if a & bit:
                    continue
                sign = 1 if bin(a & (bit - 1)).count("1") % 2 == 0 else -1
                m[a | bit][a] = _frac_const(sign)
            return m

        def ann(i):
            m = [[zero for _ in range(dim)] for _ in range(dim)]
            bit = 1 << i
            for a in range(dim):
                if not a & bit:
                    continue
                sign = 1 if bin(a & (bit - 1)).count("1") % 2 == 0 else -1
                m[a ^ bit][a] = _frac_const(sign)
            return m

        cres = [cre(i) for i in range(r)]
        anns = [ann(i) for i in range(r)]
        matrices = {}
        for k, g in enumerate(gens):
            acc = [[zero for _ in range(dim)] for _ in range(dim)]
            for i in range(r):
                cu = pinv[i][k]
                cv = pinv[r + i][k]
                bscale = planes[i][2] + planes[i][2]
                for a in range(dim):
                    for b in range(dim):
                        term = acc[a][b]
                        if not cu.is_zero() and not cres[i][a][b].is_zero():
                            term = term + cu * cres[i][a][b]
                        if not cv.is_zero() and not anns[i][a][b].is_zero():
                            term = term + cv * bscale * anns[i][a][b]
                        acc[a][b] = term
            matrices[g] = acc

        rep = cls(cl, matrices, dim)
        for a in gens:
            for b in gens:
                lhs = _fmat_add(
                    _fmat_mul(matrices[a], matrices[b]),
                    _fmat_mul(matrices[b], matrices[a]),
                )
                target = qtab[(a, b)] + qtab[(b, a)]
                for p in range(dim):
                    for q in range(dim):
                        want = target if p == q else None
                        got = lhs[p][q]
                        if want is None:
                            if not got.is_zero():
                                return None
                        else:
                            diff = got - _Frac(want)
                            if not diff.is_zero():
                                return None
        return rep

    def word_matrix(self, word):
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        m = _fmat_mul(self.word_matrix(word[:-1]), self.matrices[word[-1]])
        self._word_cache[word] = m
        return m

    def element_matrix(self, elem):
        """Image of a {word: poly} element as a dim x dim fraction matrix."""
        acc = [
            [_frac_const() for _ in range(self.dim)] for _ in range(self.dim)
        ]
        for word, poly in elem.items():
            wm = self.word_matrix(word)
            for a in range(self.dim):
                for b in range(self.dim):
                    if wm[a][b].is_zero():
                        continue
                    acc[a][b] = acc[a][b] + wm[a][b] * poly
        return acc


def _fmat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _vacuum_pairing(cl):
    """Gram matrix of the integral pairing on the odd Cartan words."""
    words = cl.words()
    lefts = [cl.sigma_word(s) for s in words]
    zero = CartanPoly.constant(0)
    matrix = []
    for s in range(len(words)):
        row = []
        for t in range(len(words)):
            total = None
            for w, p in lefts[s].items():
                tp = cl.top_pair(w, words[t])
                if tp is None:
                    continue
                add = p * tp
                total = add if total is None else total + add
            row.append(zero if total is None else total)
        matrix.append(row)
    return matrix


def _respect_sign(u, basis, words):
    """Row-sign product applied by sigma_mode='respect'."""
    ctx = u.ctx
    sign = ONE
    for m in basis:
        nodd_m = sum(e for k, e in m if ctx.parity(k))
        for word in words:
            nodd = nodd_m + len(word)
            if (nodd * (nodd - 1) // 2) % 2:
                sign = -sign
    return sign


def bsh_det(g, chi, vacuum="module", sigma_mode="ignore", odd_order=None):
    """Determinant of ``bsh_gram`` without materializing the full matrix.

    Writes the Gram matrix as (vacuum pairing) x (regular representation
    of the Harish-Chandra slice matrix H over the odd Cartan Clifford
    algebra) and evaluates the regular determinant through the spin
    representation, which is 2^r times smaller than the word basis.  Falls
    back to the direct determinant when the quadratic form does not split
    (it always does for the odd Poisson families).  Exact in all paths.
    """
    if vacuum not in ("module", "trivial"):
        raise ValueError("vacuum must be 'module' or 'trivial'")
    if sigma_mode not in ("ignore", "respect"):
        raise ValueError("sigma_mode must be 'ignore' or 'respect'")
    u = _as_uea(g)
    ctx = u.ctx
    chi = _to_weight(u, chi)
    basis = _slice_basis(u, chi)
    cl = OddCartanClifford(ctx, odd_order)
    if vacuum == "trivial":
        gram = bsh_gram(u, chi, vacuum, sigma_mode, odd_order)
        return det_bareiss(gram.matrix)
    rep = _SpinRep.build(cl)
    if rep is None:
        gram = bsh_gram(u, chi, vacuum, sigma_mode, odd_order)
        return det_bareiss(gram.matrix)

    words = cl.words()
    gdet = det_bareiss(_vacuum_pairing(cl))
    if not gdet.is_constant():
        gram = bsh_gram(u, chi, vacuum, sigma_mode, odd_order)
        return det_bareiss(gram.matrix)
    if gdet.is_zero():
        return CartanPoly.constant(0)

    nb = len(basis)
    monos = [u.monomial(m) for m in basis]
    sigs = [u.sigma(mono) for mono in monos]
    dim = rep.dim
    size = nb * dim
    big = [[None] * size for _ in range(size)]
    for i in range(nb):
        for j in range(nb):
            hij = cl.from_clifford(u.hc(u.mul(sigs[i], monos[j]), "clifford"))
            block = rep.element_matrix(hij)
            for a in range(dim):
                for b in range(dim):
                    big[i * dim + a][j * dim + b] = block[a][b]

    # clear denominators row by row; det(A) = det(cleared) / prod(factors)
    cleared = []
    row_factors = []
    for row in big:
        counts = {}
        for e in row:
            seen = {}
            for f in e.dens:
                key = str(f)
                seen[key] = seen.get(key, 0) + 1
                if seen[key] > counts.get(key, (f, 0))[1]:
                    counts[key] = (f, seen[key])
        factors = []
        for f, c in counts.values():
            factors.extend([f] * c)
        out = []
        for e in row:
            num = e.num
            left = {k: v for k, v in counts.items()}
            for f in e.dens:
                key = str(f)
                fc, cnt = left[key]
                left[key] = (fc, cnt - 1)
            for fc, cnt in left.values():
                for _ in range(cnt):
                    num = num * fc
            out.append(num)
        cleared.append(out)
        row_factors.extend(factors)

    det_big = det_bareiss(cleared)
    reg = _Frac(det_big, row_factors)
    total = _Frac(CartanPoly.constant(1))
    for _ in range(dim):
        total = total * reg
    if not total.is_poly():
        raise ArithmeticError(
            "regular determinant power is not polynomial; "
            "the spin reduction is inconsistent"
        )
    det = total.num * (gdet.constant_value() ** nb)
    if sigma_mode == "respect":
        det = det * _respect_sign(u, basis, words)
    return det


# ----- the closed-form determinant from root data -----


@dataclass
class FormulaData:
    """Symmetrizable root data feeding the closed-form determinant.

    cartan_matrix a_ij = alpha_j(h_i); d symmetrizes it (d_i a_ij = d_j
    a_ji); parities mark odd simple roots; coroots are the h_i as
    polynomials in the Cartan variables; positive_roots lists
    (coordinates over the simple roots, parity, multiplicity).
    """

    cartan_matrix: tuple
    d: tuple
    parities: tuple
    coroots: tuple
    positive_roots: tuple
    simple_weights: tuple = ()

    def __post_init__(self):
        n = len(self.cartan_matrix)
        if not (len(self.d) == len(self.parities) == len(self.coroots) == n):
            raise ValueError("inconsistent root datum sizes")
        for i in range(n):
            for j in range(n):
                if self.b_value(i, j) != self.b_value(j, i):
                    raise ValueError("d does not symmetrize the Cartan matrix")

    def b_value(self, i, j):
        return rat(self.d[i]) * rat(self.cartan_matrix[i][j])

    def pairing(self, g1, g2):
        total = rat(0)
        for i, c1 in enumerate(g1):
            if c1 == 0:
                continue
            for j, c2 in enumerate(g2):
                if c2 == 0:
                    continue
                total += rat(c1) * rat(c2) * self.b_value(i, j)
        return total

    def f_value(self, g):
        """The linear functional with F(alpha_i) = (alpha_i, alpha_i)/2."""
        total = rat(0)
        for i, c in enumerate(g):
            total += rat(c) * self.b_value(i, i) / 2
        return total

    def coroot_form(self, g):
        """h_gamma = sum_i c_i d_i h_i as a polynomial."""
        total = CartanPoly.constant(0)
        for i, c in enumerate(g):
            if c != 0:
                total = total + self.coroots[i] * (rat(c) * rat(self.d[i]))
        return total

    def chi_weight(self, coords):
        """Weight tuple of sum coords_i * alpha_i (needs simple_weights)."""
        if not self.simple_weights:
            raise ValueError("no simple root weights recorded")
        total = [rat(0)] * len(self.simple_weights[0])
        for c, w in zip(coords, self.simple_weights):
            for t, x in enumerate(w):
                total[t] += rat(c) * x
        return tuple(total)


def partition_count(positive_roots, mu):
    """Number of PBW monomials over the negative root vectors of weight mu.

    mu is an integer coordinate tuple over the simple roots; odd root
    vectors contribute exponent at most one, and a root of multiplicity r
    counts as r independent vectors.
    """
    gens = []
    for coords, parity, mult in positive_roots:
        for _ in range(mult):
            gens.append((tuple(int(c) for c in coords), parity))
    memo = {}

    def count(i, rem):
        if all(c == 0 for c in rem):
            return 1
        if i == len(gens):
            return 0
        key = (i, rem)
        cached = memo.get(key)
        if cached is not None:
            return cached
        coords, parity = gens[i]
        top = min(
            (r // c for r, c in zip(rem, coords) if c > 0), default=0
        )
        if parity:
            top = min(top, 1)
        total = 0
        for e in range(top + 1):
            nr = tuple(r - e * c for r, c in zip(rem, coords))
            if all(c >= 0 for c in nr):
                total += count(i + 1, nr)
        memo[key] = total
        return total

    return count(0, tuple(int(c) for c in mu))


def kk_formula(fd, chi):
    """Closed-form factorization of the Shapovalov determinant.

    chi is a coordinate tuple over the simple roots.  Even roots gamma
    contribute (h_gamma + F(gamma) - (m/2)(gamma, gamma)) with exponent
    K(chi - m gamma) for every step m >= 1, odd anisotropic roots the same
    with odd m only, and an even root whose half is also a root is skipped
    (its short partner carries those zeros).  An isotropic odd root gamma
    contributes the single form h_gamma + F(gamma) with the alternating
    multiplicity sum_m (-1)^(m+1) K(chi - m gamma); the plain per-m count
    would overstate the multiplicity whenever consecutive slices are both
    nonempty, as direct Gram determinants show.  Raises NotAWeight when
    the slice of chi is empty.
    """
    chi = tuple(int(c) for c in chi)
    if any(c < 0 for c in chi) or partition_count(fd.positive_roots, chi) == 0:
        raise NotAWeight("chi is not a weight of the positive half")
    root_set = {tuple(int(c) for c in coords) for coords, _, _ in fd.positive_roots}
    factors = []
    index = {}
    scalar = ONE

    def push(form, power):
        nonlocal scalar
        if form.is_zero():
            raise ValueError("degenerate closed-form factor")
        monic_form, lead = monic(form)
        scalar = scalar * lead**power
        key = str(monic_form)
        if key in index:
            factors[index[key]][1] += power
        else:
            index[key] = len(factors)
            factors.append([monic_form, power])

    for coords, parity, _mult in fd.positive_roots:
        coords = tuple(int(c) for c in coords)
        if parity == 0 and all(c % 2 == 0 for c in coords):
            if tuple(c // 2 for c in coords) in root_set:
                continue
        norm = fd.pairing(coords, coords)
        shift = fd.f_value(coords)
        base = fd.coroot_form(coords)
        if parity == 1 and norm == 0:
            power = 0
            sign = 1
            m = 1
            while all(chi[t] - m * coords[t] >= 0 for t in range(len(chi))):
                power += sign * partition_count(
                    fd.positive_roots,
                    tuple(chi[t] - m * coords[t] for t in range(len(chi))),
                )
                sign = -sign
                m += 1
            if power < 0:
                raise ValueError("alternating multiplicity came out negative")
            if power:
                push(base + CartanPoly.constant(shift), power)
            continue
        m = 1
        while all(chi[t] - m * coords[t] >= 0 for t in range(len(chi))):
            power = partition_count(
                fd.positive_roots,
                tuple(chi[t] - m * coords[t] for t in range(len(chi))),
            )
            if power:
                push(base + CartanPoly.constant(shift - rat(m) * norm / 2), power)
            m += 2 if parity else 1
    det = CartanPoly.constant(scalar)
    for form, mult in factors:
        det = det * form**mult
    return FactorizationReport(
        det=det,
        scalar=scalar,
        factors=[(f, m) for f, m in factors],
        cofactor=CartanPoly.constant(1),
    )


def formula_data_from_algebra(alg):
    """Extract FormulaData from a finite algebra whose Cartan is its torus.

    Simple roots are the indecomposable positive roots; each coroot
    h_i = [e_i, f_i] is rescaled so that alpha_i(h_i) = 2 on even roots.
    Raises ValueError when the positive system is not simply generated or
    the Cartan matrix is not symmetrizable.
    """
    if set(alg.cartan_indices) != set(alg.torus_indices):
        raise ValueError(
            "closed-form root data needs a torus Cartan subalgebra"
        )
    pos_sys, neg_sys = alg.positive_system()
    pos_weights = sorted(pos_sys, key=lambda w: (alg.alpha_value(w), str(w)))
    wset = set(pos_weights)
    simple = []
    for w in pos_weights:
        if not any(
            tuple(a - b for a, b in zip(w, w2)) in wset
            for w2 in pos_weights
            if w2 != w
        ):
            simple.append(w)
    n = len(simple)
    tpos = {t: p for p, t in enumerate(alg.torus_indices)}

    def weight_of(h, w):
        # alpha(h) for h a Cartan element {key: coeff} and alpha a weight
        total = rat(0)
        for k, c in h.items():
            total += rat(c) * w[tpos[k]]
        return total

    coroots = []
    amat = []
    parities = []
    for w in simple:
        eidx = pos_sys[w]
        neg_w = tuple(-c for c in w)
        fidx = neg_sys.get(neg_w)
        if len(eidx) != 1 or not fidx or len(fidx) != 1:
            raise ValueError("simple root of multiplicity > 1")
        e, f = eidx[0], fidx[0]
        h = dict(alg.table.get((e, f), {}))
        if not h or any(k not in tpos for k in h):
            raise ValueError("[e, f] does not lie in the torus")
        parities.append(alg.parities[e])
        aii = weight_of(h, w)
        if alg.parities[e] == 0:
            if aii == 0:
                raise ValueError("isotropic even simple root")
            h = {k: 2 * c / aii for k, c in h.items()}
        coroots.append(
            linear_form({alg.cartan_var_names[k]: c for k, c in h.items()})
        )
        amat.append(h)
    a = tuple(
        tuple(weight_of(amat[i], simple[j]) for j in range(n))
        for i in range(n)
    )
    # symmetrize by propagating ratios along nonzero off-diagonal entries
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = rat(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if d[j] is not None or a[i][j] == 0:
                    continue
                if a[j][i] == 0:
                    raise ValueError("Cartan matrix is not symmetrizable")
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    # positive root coordinates over the simple roots
    cols = [[simple[j][t] for j in range(n)] for t in range(len(simple[0]))]
    roots = []
    for w in pos_weights:
        sol = solve_exact(cols, list(w))
        if sol is None or any(c != int(c) or c < 0 for c in sol):
            raise ValueError("positive root outside the simple root lattice")
        idxs = pos_sys[w]
        if len({alg.parities[i] for i in idxs}) != 1:
            raise ValueError("mixed parity root space")
        roots.append(
            (
                tuple(int(c) for c in sol),
                alg.parities[idxs[0]],
                len(idxs),
            )
        )
    return FormulaData(
        cartan_matrix=a,
        d=tuple(d),
        parities=tuple(parities),
        coroots=tuple(coroots),
        positive_roots=tuple(roots),
        simple_weights=tuple(simple),
    )


# ----- singular vectors in Verma modules -----


def find_singular_vectors(g, lam, chi):
    """Basis of singular vectors of weight lam - chi in the Verma module.

    lam maps even Cartan variable names to rational values (missing names
    read as zero).  A vector sum c_m m v_lam is singular when every
    positive root generator kills it; the function returns the solution
    space as a list of {monomial: coefficient} dicts.  chi = 0 returns [].
    """
    u = _as_uea(g)
    ctx = u.ctx
    if ctx.odd_cartan_keys():
        raise OddCartan(
            "singular vectors need a purely even Cartan subalgebra"
        )
    chi = _to_weight(u, chi)
    if chi == ctx.weight_zero():
        return []
    try:
        basis = u.weight_basis(chi)
    except OutOfCone:
        return []
    if not basis:
        return []
    values = {k: rat(v) for k, v in dict(lam).items()}

    def lam_value(key):
        return values.get(ctx.var_name(key), rat(0))

    pos_keys = [k for k in ctx.gens() if ctx.classify(k) == "pos"]
    rows = {}
    for e in pos_keys:
        ev = u.gen(e)
        for i, m in enumerate(basis):
            for mono, c in u.mul(ev, u.monomial(m)).items():
                fpart = []
                val = c
                dead = False
                for k, ex in mono:
                    cls = ctx.classify(k)
                    if cls == "pos":
                        dead = True
                        break
                    if cls == "cartan":
                        val = val * lam_value(k) ** ex
                    else:
                        fpart.append((k, ex))
                if dead or val == 0:
                    continue
                row = rows.setdefault(
                    (e, tuple(fpart)), [rat(0)] * len(basis)
                )
                row[i] += val
    if not rows:
        return [{m: ONE} for m in basis]
    matrix = [rows[k] for k in sorted(rows, key=str)]
    out = []
    for vec in nullspace(matrix):
        out.append(
            {basis[i]: v for i, v in enumerate(vec) if v != 0}
        )
    return out


# ----- conjecture screening harness -----


def _hat_name(npairs, i):
    bits = ["1"] * npairs
    bits[i] = "0"
    return "h" + "".join(bits)


def _hmax_name(npairs):
    return "h" + "1" * npairs


def _root_coeffs(alg):
    """Positive root weights as integer coefficient tuples over the e_i."""
    pos_sys, _ = alg.positive_system()
    units = []
    npairs = len(alg.torus_indices)
    for i in range(npairs):
        units.append(alg.weight_symbols["e%d" % (i + 1)])
    out = []
    for w in sorted(pos_sys, key=str):
        sol = solve_exact(
            [[units[j][t] for j in range(npairs)] for t in range(len(w))],
            list(w),
        )
        if sol is None or any(c != int(c) for c in sol):
            raise ValueError("root outside the epsilon lattice")
        out.append(tuple(int(c) for c in sol))
    return sorted(set(out))


def _poi_candidates(npairs, coeffs):
    """Factor candidates for the odd Poisson Cartan determinants.

    Returns (admitted, rejected) lists of (form, rule) pairs.  For one and
    two pairs the shifted table rows carry their side conditions; in
    general the unshifted root forms and the top form are offered whenever
    chi - gamma stays in the positive cone.
    """
    admitted = []
    rejected = []
    hmax = linear_form({_hmax_name(npairs): 1})

    def hat_form(cs, const=0):
        coeffs_map = {}
        for i, c in enumerate(cs):
            if c != 0:
                coeffs_map[_hat_name(npairs, i)] = c
        return linear_form(coeffs_map, const)

    if npairs == 1:
        (k,) = coeffs
        admitted.append((hat_form((1,)), "root e1"))
        for m in range(1, k + 1):
            admitted.append(
                (
                    hmax + CartanPoly.constant(rat(-m) / 2),
                    "top shifted by -%d/2" % m,
                )
            )
        return admitted, rejected
    if npairs == 2:
        k, l = coeffs
        admitted.append((hmax, "top"))
        rule = "root e1 (needs k >= 1 and k + l >= 1)"
        target = admitted if (k >= 1 and k + l >= 1) else rejected
        target.append((hat_form((1, 0)), rule))
        rule = "root e2 (needs k + l >= 1)"
        target = admitted if k + l >= 1 else rejected
        target.append((hat_form((0, 1)), rule))
        for m in range(1, max(k, 0) + 1):
            admitted.append(
                (
                    hat_form((1, -1), m),
                    "difference shifted by +%d (needs m <= k)" % m,
                )
            )
            rule = "sum shifted by -%d (needs m <= k and 2m <= k + l)" % m
            target = admitted if 2 * m <= k + l else rejected
            target.append((hat_form((1, 1), -m), rule))
        return admitted, rejected
    admitted.append((hmax, "top"))
    alg = po(2 * npairs + 1)
    for gamma in _root_coeffs(alg):
        rule = "root %s (needs chi - gamma >= 0)" % (gamma,)
        ok = all(c - g >= 0 for c, g in zip(coeffs, gamma))
        form = hat_form(gamma)
        if form.is_constant():
            continue
        (admitted if ok else rejected).append((form, rule))
    return admitted, rejected


def _loop_candidates(npairs, coeffs, cutoff):
    """Factor candidates for the loop Poisson determinants."""
    admitted = []
    rejected = []
    base = coeffs[:-1]
    tdeg = coeffs[-1]
    admitted.append((linear_form({_hmax_name(npairs): 1}), "top"))
    alg = po(2 * npairs)
    roots = _root_coeffs(alg)
    zero = tuple(0 for _ in range(npairs))
    for m in range(0, min(tdeg, cutoff) + 1):
        betas = roots if m == 0 else sorted(set(roots) | {zero} | {
            tuple(-c for c in g) for g in roots
        })
        for beta in betas:
            if m == 0 and beta == zero:
                continue
            coeffs_map = {}
            for i, c in enumerate(beta):
                if c != 0:
                    coeffs_map[_hat_name(npairs, i)] = c
            if m != 0:
                coeffs_map["z"] = m
            form = linear_form(coeffs_map)
            if form.is_constant():
                continue
            label = "root %s + %d delta (needs chi - gamma >= 0)" % (beta, m)
            ok = all(c - g >= 0 for c, g in zip(base, beta)) and tdeg - m >= 0
            (admitted if ok else rejected).append((form, label))
    return admitted, rejected


def _dedup_forms(pairs):
    """Monic-dedup candidate (form, rule) pairs, keeping first rules."""
    seen = {}
    order = []
    for form, rule in pairs:
        m, _ = monic(form)
        key = str(m)
        if key in seen:
            continue
        seen[key] = rule
        order.append((m, rule))
    return order


def _parse_target(target):
    t = target.replace(" ", "")
    if t == "poi03":
        return ("poi_odd", 1, None)
    if t == "poi05":
        return ("poi_odd", 2, None)
    m = re.match(r"poi_odd\((\d+)\)$", t)
    if m:
        return ("poi_odd", int(m.group(1)), None)
    m = re.match(r"loop_poi\((\d+),(\d+)\)$", t)
    if m:
        return ("loop_poi", int(m.group(1)), int(m.group(2)))
    raise ValueError("unknown harness target %r" % target)


def _chi_coeffs(item, width):
    if isinstance(item, int):
        item = (item,)
    coeffs = tuple(int(c) for c in item)
    if len(coeffs) != width:
        raise ValueError(
            "chi needs %d coefficients, got %d" % (width, len(coeffs))
        )
    return coeffs


def _chi_string(coeffs, loop=False):
    bits = []
    n = len(coeffs) - 1 if loop else len(coeffs)
    for i in range(n):
        bits.append("%d*e%d" % (coeffs[i], i + 1))
    if loop:
        bits.append("%d*e'" % coeffs[-1])
    return " + ".join(bits)


def _check_cone(kind, npairs, coeffs):
    if kind == "loop_poi":
        if coeffs[-1] < 0 or all(c == 0 for c in coeffs):
            raise OutOfCone("chi lies outside the positive cone")
        return
    if npairs == 1:
        if coeffs[0] < 1:
            raise OutOfCone("chi = k e1 needs k >= 1")
        return
    if npairs == 2:
        k, l = coeffs
        if not (k >= 0 and k + l >= 0 and (k > 0 or l > 0)):
            raise OutOfCone(
                "chi = k e1 + l e2 needs k >= 0, k + l >= 0, one positive"
            )
        return
    if all(c == 0 for c in coeffs):
        raise OutOfCone("chi = 0 is outside the screening range")


def _harness_result(u, alg_name, chi, chi_label, candidates, rejected, bsh):
    forms = [form for form, _ in candidates]
    if bsh:
        # the factored spin-representation determinant avoids materializing
        # the full (slice x words) Gram matrix, which matters for two pairs
        basis = _slice_basis(u, _to_weight(u, chi))
        words = OddCartanClifford(u.ctx).words()
        basis_size = len(basis) * len(words)
        slice_dim, vacuum_dim = len(basis), len(words)
        report = factor_over_candidates(bsh_det(u, chi), forms)
    else:
        gram = gram_matrix(u, chi)
        basis_size = gram.size()
        slice_dim = len(gram.basis)
        vacuum_dim = len(gram.vacuum_words)
        report = shapovalov_det(gram, forms)
    rules = {str(form): rule for form, rule in candidates}
    det = report.det
    rejected_hits = []
    for form, rule in rejected:
        if not det.is_zero() and det.divide_exact(form) is not None:
            rejected_hits.append({"form": str(form), "rule": rule})
    return {
        "algebra": alg_name,
        "chi": chi_label,
        "basis_size": basis_size,
        "slice_dim": slice_dim,
        "vacuum_dim": vacuum_dim,
        "det": str(report.det),
        "scalar": str(report.scalar),
        "factors": [
            {
                "form": str(form),
                "multiplicity": mult,
                "rule": rules.get(str(form)),
            }
            for form, mult in report.factors
        ],
        "cofactor": str(report.cofactor),
        "cofactor_trivial": report.cofactor.is_constant(),
        "candidates": [
            {"form": str(form), "rule": rule, "admitted": True}
            for form, rule in candidates
        ]
        + [
            {"form": str(form), "rule": rule, "admitted": False}
            for form, rule in rejected
        ],
        "rejected_divisors": rejected_hits,
        "oracle_match": None,
    }


def conjecture_harness(target, chi_range, out_dir=None):
    """Screen a factor table against exact determinants for one target.

    target is "poi03", "poi05", "poi_odd(n)" or "loop_poi(n, cutoff)";
    chi_range iterates weight coefficient tuples (plain integers allowed
    when one coefficient suffices).  Raises OutOfCone for weights outside
    the documented positive cone of the target.  Returns the report dict
    and, when out_dir is given, writes <target>.json and <target>.txt.
    """
    kind, npairs, cutoff = _parse_target(target)
    if kind == "poi_odd":
        alg = po(2 * npairs + 1)
        u = UEA(FiniteContext(alg))
        width = npairs
        bsh = True
        alg_name = alg.name
    else:
        alg = po(2 * npairs)
        ctx = LoopContext(alg, -cutoff, cutoff)
        u = UEA(ctx)
        width = npairs + 1
        bsh = False
        alg_name = "loop of %s (window %d)" % (alg.name, cutoff)
    results = []
    for item in chi_range:
        coeffs = _chi_coeffs(item, width)
        _check_cone(kind, npairs, coeffs)
        if kind == "poi_odd":
            admitted, rejected = _poi_candidates(npairs, coeffs)
            chi = alg.parse_weight(_chi_string(coeffs))
            chi_label = _chi_string(coeffs)
        else:
            if coeffs[-1] > cutoff:
                raise ValueError(
                    "t-degree %d exceeds the window cutoff %d"
                    % (coeffs[-1], cutoff)
                )
            admitted, rejected = _loop_candidates(npairs, coeffs, cutoff)
            chi = alg.parse_weight(_chi_string(coeffs[:-1])) + (
                rat(coeffs[-1]),
            )
            chi_label = _chi_string(coeffs, loop=True)
        admitted = _dedup_forms(admitted)
        rejected = [
            (form, rule)
            for form, rule in _dedup_forms(rejected)
            if str(form) not in {str(f) for f, _ in admitted}
        ]
        results.append(
            _harness_result(
                u, alg_name, chi, chi_label, admitted, rejected, bsh
            )
        )
    report = {
        "schema": HARNESS_SCHEMA,
        "target": target,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "results": results,
    }
    if out_dir is not None:
        write_report(report, out_dir)
    return report


def _safe_name(target):
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", target).strip("_")


def write_report(report, out_dir):
    """Write a harness report as <target>.json and a text digest."""
    os.makedirs(out_dir, exist_ok=True)
    stem = _safe_name(report.get("target", "report"))
    jpath = os.path.join(out_dir, stem + ".json")
    with open(jpath, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    lines = ["target: %s" % report.get("target", "?")]
    for res in report.get("results", []):
        lines.append("")
        lines.append(
            "chi = %s  (gram %dx%d)"
            % (res["chi"], res["basis_size"], res["basis_size"])
        )
        for fac in res["factors"]:
            lines.append(
                "  factor (%s)^%d  [%s]"
                % (fac["form"], fac["multiplicity"], fac["rule"])
            )
        lines.append("  scalar %s" % res["scalar"])
        lines.append(
            "  cofactor %s%s"
            % (
                res["cofactor"],
                "" if res["cofactor_trivial"] else "  <-- unexplained part",
            )
        )
        for hit in res["rejected_divisors"]:
            lines.append(
                "  rejected candidate divides: %s  [%s]"
                % (hit["form"], hit["rule"])
            )
    tpath = os.path.join(out_dir, stem + ".txt")
    with open(tpath, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return jpath, tpath
