"""Loop superalgebras with central extension and degree derivation.

Generators are keyed ("t", n, i) for t^n e_i, ("u",) for the degree
derivation t d/dt, and ("z",) for the central element, with bracket

    [t^m x, t^n y] = t^(m+n) [x, y] + m delta(m, -n) (x|y) z
    [u, t^n x]     = n t^n x
    [z, anything]  = 0.

A Z/r grading (class per base index) restricts the support: t^n e_i exists
only when n is congruent to the class of e_i mod r.  The quadratic element

    Omega = Omega_0' + 2 sum_(d>=1) slice_d + 2 u z + lambda u

is kept as a table of finite bidegree slices (never materialized as a sum);
slice d pairs t^(-d) with t^(+d), so every stored product is already in Wick
normal order.  Centrality is checked slicewise: for each window generator
the commutator with a truncated Omega is straightened exactly and every
monomial whose letters stay inside the stable window must vanish; the
infinite tail is covered once and for all by the inverse-Gram identity.
"""

from dataclasses import dataclass

from .casimir import a_map, b_identity_violations
from .errors import (
    GradingIncompatible,
    NonScalarA,
    UnsupportedDegree,
    ZeroOnRoot,
)
from .rat import ONE, rat
from .uea import UEA

Z_KEY = ("z",)
U_KEY = ("u",)


def t_key(n, i):
    return ("t", n, i)


def _normalize_classes(alg, twist_r, grading):
    if grading is None:
        classes = [0] * alg.dim
    else:
        classes = [int(grading[i]) % twist_r for i in range(alg.dim)]
    return tuple(classes)


def check_grading(alg, twist_r, classes):
    """Bracket- and form-compatibility of a Z/r grading; raises on failure."""
    for (i, j), br in alg.table.items():
        want = (classes[i] + classes[j]) % twist_r
        for k in br:
            if classes[k] != want:
                raise GradingIncompatible(
                    "bracket [%s, %s] leaves its grading class"
                    % (alg.basis_names[i], alg.basis_names[j])
                )
    if alg.form:
        for (i, j), c in alg.form.items():
            if c != 0 and (classes[i] + classes[j]) % twist_r != 0:
                raise GradingIncompatible(
                    "form pairs classes %d and %d"
                    % (classes[i], classes[j])
                )


class LoopContext:
    """Enveloping-algebra context over the loop extension of a base algebra.

    The window [lo, hi] bounds only the enumerated generators (gens,
    negative_keys and friends); multiplication is exact on arbitrary keys.
    """

    def __init__(self, alg, lo, hi, twist_r=1, grading=None):
        if alg.form is None:
            raise ValueError("loop cocycle needs a bilinear form on %s" % alg.name)
        self.alg = alg
        self.lo = lo
        self.hi = hi
        self.twist_r = twist_r
        self.classes = _normalize_classes(alg, twist_r, grading)
        if twist_r > 1 or grading is not None:
            check_grading(alg, twist_r, self.classes)
        self.z_parity = alg.form_parity
        self._pos_cache = {}
        if alg.splitter:
            cap = max(
                (abs(alg.alpha_value(w)) for w in alg.roots()), default=rat(0)
            )
            self._ct = cap + 1
        else:
            self._ct = rat(1)

    # -- keys --

    def valid_key(self, key):
        if key in (Z_KEY, U_KEY):
            return True
        _, n, i = key
        return n % self.twist_r == self.classes[i]

    def require(self, key):
        if not self.valid_key(key):
            _, n, i = key
            raise UnsupportedDegree(
                "t^%d %s violates the mod-%d support condition"
                % (n, self.alg.basis_names[i], self.twist_r)
            )

    def gens(self):
        out = [Z_KEY]
        for n in range(self.lo, self.hi + 1):
            for i in range(self.alg.dim):
                if n % self.twist_r == self.classes[i]:
                    out.append(t_key(n, i))
        out.append(U_KEY)
        return out

    def pos(self, key):
        # PBW tiers negative < cartan < positive, so that dropping monomials
        # with letters outside the Cartan subalgebra from a normal form is
        # exactly the Harish-Chandra projection; z and u sit with the cartans
        cached = self._pos_cache.get(key)
        if cached is None:
            if key == Z_KEY:
                cached = (1, 0, 0, 0)
            elif key == U_KEY:
                cached = (1, 0, 0, 1)
            else:
                _, n, i = key
                tier = {"neg": 0, "cartan": 1, "pos": 2}[self.classify(key)]
                cached = (tier, 1, n, i)
            self._pos_cache[key] = cached
        return cached

    def parity(self, key):
        if key == Z_KEY:
            return self.z_parity
        if key == U_KEY:
            return 0
        return self.alg.parities[key[2]]

    def bracket_keys(self, a, b):
        if a == Z_KEY or b == Z_KEY:
            return {}
        if a == U_KEY and b == U_KEY:
            return {}
        if a == U_KEY:
            self.require(b)
            return {b: rat(b[1])} if b[1] else {}
        if b == U_KEY:
            self.require(a)
            return {a: rat(-a[1])} if a[1] else {}
        self.require(a)
        self.require(b)
        _, m, i = a
        _, n, j = b
        out = {}
        for k, c in self.alg.table.get((i, j), {}).items():
            out[t_key(m + n, k)] = c
        if m == -n and m != 0:
            c = self.alg.form_value(i, j)
            if c != 0:
                out[Z_KEY] = m * c
        return out

    # -- weights and classification --

    def weight(self, key):
        if key in (Z_KEY, U_KEY):
            return self.weight_zero()
        _, n, i = key
        return self.alg.weights()[i] + (rat(n),)

    def weight_zero(self):
        return self.alg.zero_weight() + (rat(0),)

    def alpha(self, weight):
        base = weight[:-1]
        val = self._ct * weight[-1]
        if self.alg.splitter:
            val = val + self.alg.alpha_value(base)
        return val

    def classify(self, key):
        if key in (Z_KEY, U_KEY):
            return "cartan"
        _, n, i = key
        if n == 0 and i in self.alg.cartan_indices:
            return "cartan"
        a = self.alpha(self.weight(key))
        if a == 0:
            raise ZeroOnRoot(
                "splitting element vanishes on t^%d %s"
                % (n, self.alg.basis_names[i])
            )
        return "pos" if a > 0 else "neg"

    def negative_keys(self):
        return [k for k in self.gens() if self.classify(k) == "neg"]

    def even_cartan_keys(self):
        return [
            k
            for k in self.gens()
            if self.classify(k) == "cartan" and self.parity(k) == 0
        ]

    def odd_cartan_keys(self):
        return [
            k
            for k in self.gens()
            if self.classify(k) == "cartan" and self.parity(k) == 1
        ]

    def var_name(self, key):
        if key == Z_KEY:
            return "z"
        if key == U_KEY:
            return "u"
        _, n, i = key
        base = self.alg.cartan_var_names[i]
        return base if n == 0 else "%s@%d" % (base, n)

    def sigma_gen(self, key):
        if key in (Z_KEY, U_KEY):
            return (key, ONE)
        if self.alg.sigma_basis is None:
            raise ValueError("%s carries no antiautomorphism table" % self.alg.name)
        _, n, i = key
        j, s = self.alg.sigma_basis[i]
        return (t_key(-n, j), s)

    def key_name(self, key):
        if key == Z_KEY:
            return "z"
        if key == U_KEY:
            return "u"
        _, n, i = key
        name = self.alg.basis_names[i]
        return name if n == 0 else "t^%d %s" % (n, name)


def km_bracket(x, y, ctx):
    """Bracket of two loop-algebra elements {key: coeff}, extended bilinearly."""
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for k, c in ctx.bracket_keys(a, b).items():
                s = out.get(k, 0) + ca * cb * c
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
    return out


@dataclass
class GradedQuadratic:
    alg: object
    twist_r: int
    classes: tuple
    lam: object
    b: list

    def pair_table(self, d):
        """Coefficient table {(i, j): c} of the t^(-d) x t^(+d) slice, d >= 0."""
        if d < 0:
            raise ValueError("slice index must be nonnegative")
        r = self.twist_r
        need_i = (-d) % r
        need_j = d % r
        out = {}
        for i in range(self.alg.dim):
            if self.classes[i] != need_i:
                continue
            for j in range(self.alg.dim):
                if self.classes[j] != need_j:
                    continue
                c = self.b[i][j]
                if c == 0:
                    continue
                out[(i, j)] = c if d == 0 else 2 * c
        return out

    def slice_element(self, d, u):
        """The slice as a straightened element of the loop enveloping algebra."""
        out = {}
        for (i, j), c in self.pair_table(d).items():
            prod = u.mul(u.gen(t_key(-d, i)), u.gen(t_key(d, j)))
            for m, v in prod.items():
                s = out.get(m, 0) + c * v
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return out

    def extra_element(self, u):
        """The u z and linear u terms: 2 u z + lambda u."""
        out = u.scale(u.mul(u.gen(Z_KEY), u.gen(U_KEY)), 2)
        for m, v in u.scale(u.gen(U_KEY), self.lam).items():
            s = out.get(m, 0) + v
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return out

    def truncated(self, u, max_d):
        out = self.extra_element(u)
        for d in range(max_d + 1):
            for m, v in self.slice_element(d, u).items():
                s = out.get(m, 0) + v
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return out


def omega_km(alg, twist_r=1, grading=None):
    """Graded quadratic central element; requires a scalar A operator."""
    rep = a_map(alg)
    if not rep.scalar:
        raise NonScalarA(
            "A is not scalar on %s; no Wick-normal quadratic element is built"
            % alg.name
        )
    classes = _normalize_classes(alg, twist_r, grading)
    if twist_r > 1 or grading is not None:
        check_grading(alg, twist_r, classes)
    return GradedQuadratic(alg, twist_r, classes, rep.lam, alg.gram_inverse())


def _stable(mono, window):
    for k, _ in mono:
        if k in (Z_KEY, U_KEY):
            continue
        if abs(k[1]) > window:
            return False
    return True


def verify_km_centrality(alg, twist_r=1, grading=None, degree_window=3):
    """Slicewise-exact centrality check of Omega.

    For every generator t^m e_k with |m| <= degree_window (respecting the
    twisted support), the commutator with the truncated Omega is straightened
    and every monomial whose letters have t-degree within the stable window
    must cancel exactly; [u, .] and [z, .] commutators must vanish entirely.
    The inverse-Gram identity, checked once, covers the unbounded tail.
    """
    om = omega_km(alg, twist_r, grading)
    n_win = degree_window
    stable_win = n_win + 1
    max_d = stable_win + n_win
    ctx = LoopContext(alg, -(max_d + n_win), max_d + n_win, twist_r, grading)
    u = UEA(ctx)
    omega = om.truncated(u, max_d)
    report = {
        "algebra": alg.name,
        "twist_r": twist_r,
        "lambda": str(om.lam),
        "degree_window": n_win,
        "b_identity_violations": len(b_identity_violations(alg, om.b)),
        "checked": 0,
        "failures": [],
        "tail_monomials": 0,
    }
    for x_key in (Z_KEY, U_KEY):
        res = u.commutator(u.gen(x_key), omega)
        report["checked"] += 1
        if res:
            report["failures"].append((ctx.key_name(x_key), len(res)))
    for m in range(-n_win, n_win + 1):
        for k in range(alg.dim):
            key = t_key(m, k)
            if not ctx.valid_key(key):
                continue
            res = u.commutator(u.gen(key), omega)
            bad = {mo: c for mo, c in res.items() if _stable(mo, stable_win)}
            report["checked"] += 1
            report["tail_monomials"] += len(res) - len(bad)
            if bad:
                report["failures"].append((ctx.key_name(key), len(bad)))
    report["ok"] = not report["failures"] and not report["b_identity_violations"]
    return report
