"""Universal enveloping algebras with ordered (PBW) straightening.

Elements are dicts {monomial: rational}, a monomial being a tuple of
(generator key, exponent) pairs in strictly increasing generator order, with
exponent 1 on odd generators.  Multiplication straightens products into this
normal form using the bracket; results of the single-generator step are
memoized, which is what makes the determinant workloads feasible.

The algebra of generators is abstracted behind a context object so the same
straightening drives both finite-dimensional algebras and loop extensions.
A context provides:

    gens()            ordered generator keys (PBW order)
    pos(key)          sort position of a key
    parity(key)       0 or 1
    bracket_keys(a,b) bracket of two generators as {key: coeff}
    classify(key)     "neg", "cartan", or "pos"
    weight(key)       weight tuple of the key
    alpha(weight)     splitting value of a weight
    negative_keys()   ordered negative keys (for weight slices)
    even_cartan_keys() / odd_cartan_keys()   ordered Cartan keys
    var_name(key)     polynomial variable for an even Cartan key
    sigma_gen(key)    (image key, sign) under the antiautomorphism
"""

from .errors import InfinitePartitions, OutOfCone
from .liesuper import vec_add
from .rat import ONE, rat
from .scalars import CartanPoly


class FiniteContext:
    """Context over a finite-dimensional SuperAlgebra."""

    def __init__(self, alg, splitter=None):
        self.alg = alg
        self.order = tuple(alg.pbw_order(splitter))
        self._pos = {k: p for p, k in enumerate(self.order)}
        pos_sys, neg_sys = alg.positive_system(splitter)
        self._neg = {i for idxs in neg_sys.values() for i in idxs}
        self._posr = {i for idxs in pos_sys.values() for i in idxs}
        self._cartan = set(alg.cartan_indices)

    def gens(self):
        return self.order

    def pos(self, key):
        return self._pos[key]

    def parity(self, key):
        return self.alg.parities[key]

    def bracket_keys(self, a, b):
        return self.alg.table.get((a, b), {})

    def classify(self, key):
        if key in self._cartan:
            return "cartan"
        return "neg" if key in self._neg else "pos"

    def weight(self, key):
        return self.alg.weights()[key]

    def weight_zero(self):
        return self.alg.zero_weight()

    def alpha(self, weight):
        return self.alg.alpha_value(weight)

    def negative_keys(self):
        return [k for k in self.order if k in self._neg]

    def even_cartan_keys(self):
        return [k for k in self.order if k in self._cartan and self.parity(k) == 0]

    def odd_cartan_keys(self):
        return [k for k in self.order if k in self._cartan and self.parity(k) == 1]

    def var_name(self, key):
        return self.alg.cartan_var_names[key]

    def sigma_gen(self, key):
        sb = getattr(self.alg, "sigma_basis", None)
        if sb is None:
            raise ValueError("%s carries no antiautomorphism table" % self.alg.name)
        return sb[key]

    def key_name(self, key):
        return self.alg.basis_names[key]


class CliffordElement:
    """Image of a Cartan-only element: odd Cartan words with polynomial
    coefficients in the even Cartan variables."""

    def __init__(self, parts):
        self.parts = {w: p for w, p in parts.items() if not p.is_zero()}

    def coefficient(self, word):
        return self.parts.get(tuple(word), CartanPoly.constant(0))

    def is_zero(self):
        return not self.parts

    def top_coefficient(self, full_word):
        """Coefficient of the full odd word (the Berezin-style integral)."""
        return self.coefficient(full_word)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.parts == other.parts

    __hash__ = None

    def __str__(self):
        if not self.parts:
            return "0"
        bits = []
        for w in sorted(self.parts, key=lambda w: (len(w), w)):
            poly = self.parts[w]
            word = "*".join(str(k) for k in w) if w else "1"
            bits.append("(%s) %s" % (poly, word))
        return " + ".join(bits)

    def __repr__(self):
        return "CliffordElement(%s)" % self


class UEA:
    """Universal enveloping algebra of a context, in PBW normal form."""

    def __init__(self, ctx):
        self.ctx = ctx
        self._gen_cache = {}

    # ----- construction -----

    def one(self):
        return {(): ONE}

    def gen(self, key):
        return {((key, 1),): ONE}

    def from_algebra(self, elem):
        """Embed an algebra element {key: coeff} as a degree-one element."""
        return {((k, 1),): rat(c) for k, c in elem.items() if rat(c) != 0}

    def monomial(self, pairs, coeff=1):
        m = tuple(pairs)
        last = None
        for k, e in m:
            p = self.ctx.pos(k)
            if last is not None and p <= last:
                raise ValueError("monomial is not in increasing generator order")
            if e < 1 or (self.ctx.parity(k) and e != 1):
                raise ValueError("bad exponent %d on %r" % (e, k))
            last = p
        return {m: rat(coeff)}

    # ----- arithmetic -----

    def scale(self, u, c):
        c = rat(c)
        if c == 0:
            return {}
        return {m: v * c for m, v in u.items()}

    def mul(self, u, v):
        out = {}
        for m2, c2 in v.items():
            letters = []
            for k, e in m2:
                letters.extend([k] * e)
            for m1, c1 in u.items():
                part = {m1: c1 * c2}
                for g in letters:
                    nxt = {}
                    for m, c in part.items():
                        for mm, cc in self._mul_mono_gen(m, g).items():
                            s = nxt.get(mm, 0) + c * cc
                            if s == 0:
                                nxt.pop(mm, None)
                            else:
                                nxt[mm] = s
                    part = nxt
                for m, c in part.items():
                    s = out.get(m, 0) + c
                    if s == 0:
                        out.pop(m, None)
                    else:
                        out[m] = s
        return out

    def _mul_mono_gen(self, m, g):
        key = (m, g)
        cached = self._gen_cache.get(key)
        if cached is not None:
            return cached
        ctx = self.ctx
        if not m:
            res = {((g, 1),): ONE}
            self._gen_cache[key] = res
            return res
        k, e = m[-1]
        pk, pg = ctx.pos(k), ctx.pos(g)
        if pk < pg:
            res = {m + ((g, 1),): ONE}
        elif k == g:
            if ctx.parity(g) == 0:
                res = {m[:-1] + ((g, e + 1),): ONE}
            else:
                # odd square: g*g = [g,g]/2
                prefix = m[:-1]
                res = {}
                for j, cj in ctx.bracket_keys(g, g).items():
                    for mm, cc in self._mul_mono_gen(prefix, j).items():
                        s = res.get(mm, 0) + cj * cc / 2
                        if s == 0:
                            res.pop(mm, None)
                        else:
                            res[mm] = s
        else:
            # swap: m = p*k, m*g = sign (p*g)*k + p*[k,g]
            prefix = m[:-1] if e == 1 else m[:-1] + ((k, e - 1),)
            sign = -1 if (ctx.parity(k) and ctx.parity(g)) else 1
            res = {}
            for m2, c2 in self._mul_mono_gen(prefix, g).items():
                for m3, c3 in self._mul_mono_gen(m2, k).items():
                    s = res.get(m3, 0) + sign * c2 * c3
                    if s == 0:
                        res.pop(m3, None)
                    else:
                        res[m3] = s
            for j, cj in ctx.bracket_keys(k, g).items():
                for m2, c2 in self._mul_mono_gen(prefix, j).items():
                    s = res.get(m2, 0) + cj * c2
                    if s == 0:
                        res.pop(m2, None)
                    else:
                        res[m2] = s
        self._gen_cache[key] = res
        return res

    def commutator(self, u, v):
        """Super commutator u v - (-1)^(pu pv) v u (u, v parity homogeneous)."""
        pu = self.element_parity(u)
        pv = self.element_parity(v)
        sign = -1 if (pu and pv) else 1
        return vec_add(self.mul(u, v), self.mul(v, u), -sign)

    def element_parity(self, u):
        ps = set()
        for m in u:
            p = 0
            for k, e in m:
                p ^= self.ctx.parity(k) & e
            ps.add(p)
        if len(ps) > 1:
            raise ValueError("element has mixed parity")
        return ps.pop() if ps else 0

    # ----- antiautomorphism -----

    def sigma(self, u, mode="ignore"):
        """The transpose-style antiautomorphism, extended to products.

        mode "ignore": plain reversal, sigma(ab) = sigma(b) sigma(a).
        mode "respect": additionally multiplies by the parity sign
        (-1)^(number of odd letter pairs) of the reversed word.
        """
        if mode not in ("ignore", "respect"):
            raise ValueError("mode must be 'ignore' or 'respect'")
        out = {}
        for m, c in u.items():
            letters = []
            for k, e in m:
                letters.extend([k] * e)
            coeff = c
            if mode == "respect":
                nodd = sum(1 for k in letters if self.ctx.parity(k))
                if (nodd * (nodd - 1) // 2) % 2:
                    coeff = -coeff
            part = {(): coeff}
            for k in reversed(letters):
                img, sign = self.ctx.sigma_gen(k)
                piece = self.scale(self.gen(img), sign)
                part = self.mul(part, piece)
            for mm, cc in part.items():
                s = out.get(mm, 0) + cc
                if s == 0:
                    out.pop(mm, None)
                else:
                    out[mm] = s
        return out

    # ----- projections -----

    def cartan_part(self, u):
        """Drop every monomial containing a non-Cartan generator.

        With generators ordered negatives < Cartan < positives, a monomial
        with a negative letter starts with it and one with a positive letter
        ends with it, so this is the projection along n^- U + U n^+.
        """
        out = {}
        for m, c in u.items():
            if all(self.ctx.classify(k) == "cartan" for k, _ in m):
                out[m] = c
        return out

    def hc(self, u, mode="drop"):
        """Project to the Cartan part and rewrite it.

        mode "drop": also kill monomials with odd Cartan letters; returns a
        polynomial in the even Cartan variables.
        mode "clifford": returns a CliffordElement keeping the odd letters.
        """
        if mode not in ("drop", "clifford"):
            raise ValueError("mode must be 'drop' or 'clifford'")
        ctx = self.ctx
        parts = {}
        for m, c in self.cartan_part(u).items():
            poly_vars = []
            odd_word = []
            for k, e in m:
                if ctx.parity(k):
                    odd_word.append(k)
                else:
                    poly_vars.append((ctx.var_name(k), e))
            if mode == "drop" and odd_word:
                continue
            names = tuple(v for v, _ in poly_vars)
            exps = tuple(e for _, e in poly_vars)
            poly = CartanPoly(names, {exps: c})
            key = tuple(odd_word)
            parts[key] = parts.get(key, CartanPoly.constant(0)) + poly
        if mode == "drop":
            return parts.get((), CartanPoly.constant(0))
        return CliffordElement(parts)

    # ----- weights -----

    def mono_weight(self, m):
        total = list(self.ctx.weight_zero())
        for k, e in m:
            w = self.ctx.weight(k)
            for i, c in enumerate(w):
                total[i] = total[i] + e * c
        return tuple(total)

    def weight_basis(self, chi, max_nodes=2000000):
        """PBW monomials in the negative generators of weight -chi.

        chi is a weight tuple in the positive cone.  Returns the monomials in
        a deterministic order.  Raises OutOfCone when the splitting value of
        chi is negative, InfinitePartitions when enumeration exceeds its cap.
        """
        ctx = self.ctx
        chi = tuple(rat(c) for c in chi)
        budget = ctx.alpha(chi)
        if budget < 0:
            raise OutOfCone("weight has negative splitting value")
        gens = ctx.negative_keys()
        # positive root consumed by each generator, and its splitting value
        consume = []
        for g in gens:
            w = ctx.weight(g)
            pw = tuple(-c for c in w)
            consume.append((g, pw, ctx.alpha(pw), ctx.parity(g)))
        out = []
        nodes = 0

        def rec(i, remaining, rem_budget, acc):
            nonlocal nodes
            nodes += 1
            if nodes > max_nodes:
                raise InfinitePartitions(
                    "weight slice enumeration exceeded %d nodes" % max_nodes
                )
            if all(c == 0 for c in remaining):
                out.append(tuple(acc))
                # deeper exponents would overshoot; still allow trailing zeros
                return
            if i == len(consume):
                return
            g, pw, a, par = consume[i]
            top = int(rem_budget / a) if a > 0 else 0
            if par:
                top = min(top, 1)
            for e in range(top, -1, -1):
                if e == 0:
                    rec(i + 1, remaining, rem_budget, acc)
                else:
                    nr = tuple(r - e * c for r, c in zip(remaining, pw))
                    rec(i + 1, nr, rem_budget - e * a, acc + [(g, e)])

        rec(0, chi, budget, [])
        return tuple(out)
