"""Sparse polynomials over the rationals and exact linear algebra on them.

A CartanPoly stores a polynomial as a dict from exponent tuples to nonzero
rational coefficients, plus the tuple of variable names the exponents refer
to.  Binary operations align variable sets on the fly, so polynomials built
with different variables mix freely; hot paths (the determinant routines)
pre-align everything once so the fast same-variables branch is taken.

The module also provides exact division, division by candidate linear forms
with multiplicities, and a fraction-free Bareiss determinant with full
pivoting and a connected-component block decomposition.
"""

from dataclasses import dataclass

from .rat import ONE, rat


def _deglex(exp):
    # monomial order: total degree first, then lexicographic on exponents
    return (sum(exp), exp)


def _embed(terms, old, new):
    """Re-express exponent tuples over variable tuple `old` in terms of `new`."""
    if old == new:
        return dict(terms)
    pos = [new.index(v) for v in old]
    n = len(new)
    out = {}
    for exp, c in terms.items():
        e = [0] * n
        for p, k in zip(pos, exp):
            e[p] = k
        out[tuple(e)] = c
    return out


def _divide_by_linear(terms, divisor, dexp):
    """Synthetic division of a terms dict by a divisor linear in one variable.

    dexp is the divisor's leading exponent (total degree one); the other
    divisor terms must not involve that variable.  Returns the quotient terms
    or None when the division is not exact.  One pass over the dividend per
    divisor term, which is what makes trial division against long candidate
    lists affordable on large determinants.
    """
    v = dexp.index(1)
    dc = divisor[dexp]
    rest = [(e, c) for e, c in divisor.items() if e != dexp]
    layers = {}
    for e, c in terms.items():
        k = e[v]
        layers.setdefault(k, {})[e[:v] + (0,) + e[v + 1 :]] = c
    top = max(layers)
    if top == 0:
        return None
    quo = {}
    carry = layers.get(top, {})
    for k in range(top, 0, -1):
        level = {}
        for e, c in carry.items():
            qc = c / dc
            level[e] = qc
            quo[e[:v] + (k - 1,) + e[v + 1 :]] = qc
        carry = dict(layers.get(k - 1, {}))
        for re_, rc in rest:
            for e, qc in level.items():
                e2 = tuple(x + y for x, y in zip(e, re_))
                s = carry.get(e2, 0) - rc * qc
                if s == 0:
                    carry.pop(e2, None)
                else:
                    carry[e2] = s
    return None if carry else quo


class CartanPoly:
    """Polynomial in commuting variables with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms=None):
        self.vars = tuple(vars)
        self.terms = {}
        if terms:
            n = len(self.vars)
            for exp, c in terms.items():
                c = rat(c)
                if c == 0:
                    continue
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError("exponent length does not match variable count")
                s = self.terms.get(exp, 0) + c
                if s == 0:
                    self.terms.pop(exp, None)
                else:
                    self.terms[exp] = s

    @classmethod
    def _raw(cls, vars, terms):
        # internal: trusted vars/terms, no validation or copying
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c, vars=()):
        c = rat(c)
        vars = tuple(vars)
        if c == 0:
            return cls._raw(vars, {})
        return cls._raw(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, name):
        return cls._raw((name,), {(1,): ONE})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        """The rational value of a constant polynomial."""
        if not self.terms:
            return rat(0)
        ((exp, c),) = self.terms.items()
        if sum(exp) != 0:
            raise ValueError("not a constant polynomial")
        return c

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self):
        """(exponent, coefficient) of the leading term in deglex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_deglex)
        return exp, self.terms[exp]

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), rat(0))

    def _aligned(self, other):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vs = tuple(sorted(set(self.vars) | set(other.vars)))
        return vs, _embed(self.terms, self.vars, vs), _embed(other.terms, other.vars, vs)

    def __add__(self, other):
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        vs, a, b = self._aligned(other)
        out = dict(a)
        for exp, c in b.items():
            s = out.get(exp, 0) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return CartanPoly._raw(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return CartanPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CartanPoly):
            vs, a, b = self._aligned(other)
            out = {}
            if len(a) > len(b):
                a, b = b, a
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    s = out.get(e, 0) + c1 * c2
                    if s == 0:
                        out.pop(e, None)
                    else:
                        out[e] = s
            return CartanPoly._raw(vs, out)
        try:
            c = rat(other)
        except TypeError:
            return NotImplemented
        if c == 0:
            return CartanPoly._raw(self.vars, {})
        return CartanPoly._raw(self.vars, {e: k * c for e, k in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = CartanPoly.constant(1, self.vars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CartanPoly):
            if self.vars == other.vars:
                return self.terms == other.terms
            _, a, b = self._aligned(other)
            return a == b
        try:
            c = rat(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    __hash__ = None

    def divide_exact(self, divisor):
        """Quotient self / divisor, or None when the division is not exact."""
        if not isinstance(divisor, CartanPoly):
            divisor = CartanPoly.constant(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return CartanPoly._raw(self.vars, {})
        vs, a, b = self._aligned(divisor)
        dexp = max(b, key=_deglex)
        if sum(dexp) == 1:
            quo = _divide_by_linear(a, b, dexp)
            return None if quo is None else CartanPoly._raw(vs, quo)
        dc = b[dexp]
        rem = dict(a)
        quo = {}
        while rem:
            rexp = max(rem, key=_deglex)
            step = tuple(x - y for x, y in zip(rexp, dexp))
            if any(x < 0 for x in step):
                return None
            coeff = rem[rexp] / dc
            quo[step] = coeff
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(step, e2))
                s = rem.get(e, 0) - coeff * c2
                if s == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = s
        return CartanPoly._raw(vs, quo)

    def evaluate(self, env):
        """Evaluate at a dict {var: rational}.  Every variable must be given."""
        vals = [rat(env[v]) for v in self.vars]
        total = rat(0)
        for exp, c in self.terms.items():
            t = c
            for v, e in zip(vals, exp):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp in sorted(self.terms, key=_deglex, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                v if e == 1 else "%s^%d" % (v, e)
                for v, e in zip(self.vars, exp)
                if e
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append("%s*%s" % (c, mono))
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return "CartanPoly(%s)" % self


def _coerce(x, vars):
    if isinstance(x, CartanPoly):
        return x
    try:
        return CartanPoly.constant(rat(x), vars)
    except TypeError:
        return NotImplemented


def linear_form(coeffs, const=0):
    """Build const + sum coeffs[v] * v as a polynomial."""
    vs = tuple(sorted(coeffs))
    terms = {}
    for i, v in enumerate(vs):
        c = rat(coeffs[v])
        if c != 0:
            e = [0] * len(vs)
            e[i] = 1
            terms[tuple(e)] = c
    c0 = rat(const)
    if c0 != 0:
        terms[(0,) * len(vs)] = c0
    return CartanPoly._raw(vs, terms)


def monic(p):
    """Scale p to leading coefficient 1.  Returns (monic poly, old leading coeff)."""
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    lc = p.leading()[1]
    if lc == 1:
        return p, lc
    return p * (ONE / lc), lc


def trial_divide(p, f):
    """Divide f out of p as many times as the division stays exact.

    Returns (remaining quotient, multiplicity).  f must be nonconstant.
    """
    if f.degree() < 1:
        raise ValueError("trial divisor must be nonconstant")
    mult = 0
    while not p.is_zero():
        q = p.divide_exact(f)
        if q is None:
            break
        p = q
        mult += 1
    return p, mult


@dataclass
class FactorizationReport:
    """det == scalar * product(form^multiplicity) * cofactor, all exact."""

    det: CartanPoly
    scalar: object
    factors: list
    cofactor: CartanPoly

    def reconstruct(self):
        out = CartanPoly.constant(self.scalar)
        for f, m in self.factors:
            out = out * f**m
        return out * self.cofactor

    def to_dict(self):
        return {
            "determinant": str(self.det),
            "scalar": str(self.scalar),
            "factors": [
                {"form": str(f), "multiplicity": m} for f, m in self.factors
            ],
            "cofactor": str(self.cofactor),
        }


def factor_over_candidates(det, candidates):
    """Pull candidate factors out of det, each to its exact multiplicity.

    Candidates are normalized to be monic and deduplicated; the returned
    report satisfies det == scalar * prod(f^m) * cofactor with every factor
    and the cofactor monic, and the cofactor not divisible by any candidate.
    """
    if det.is_zero():
        return FactorizationReport(det, rat(0), [], CartanPoly.constant(1))
    work = det
    factors = []
    seen = set()
    for cand in candidates:
        if not isinstance(cand, CartanPoly) or cand.degree() < 1:
            raise ValueError("candidates must be nonconstant polynomials")
        mon, _ = monic(cand)
        key = str(mon)
        if key in seen:
            continue
        seen.add(key)
        work, mult = trial_divide(work, mon)
        if mult:
            factors.append((mon, mult))
    if work.is_constant():
        scalar = work.constant_value()
        cofactor = CartanPoly.constant(1, work.vars)
    else:
        cofactor, scalar = monic(work)
    return FactorizationReport(det, scalar, factors, cofactor)


def _rref(rows):
    # reduced row echelon form over the rationals, in place; returns pivot columns
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve_exact(matrix, rhs):
    """One exact solution x of A x = b (free variables 0), or None if inconsistent."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    aug = [[rat(v) for v in row] + [rat(rhs[i])] for i, row in enumerate(matrix)]
    pivots = _rref(aug)
    if n in pivots:
        return None
    x = [rat(0)] * n
    for r, c in enumerate(pivots):
        x[c] = aug[r][n]
    return x


def nullspace(matrix):
    """Basis of the right kernel of A over the rationals."""
    m = len(matrix)
    if m == 0:
        return []
    n = len(matrix[0])
    rows = [[rat(v) for v in row] for row in matrix]
    pivots = _rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [rat(0)] * n
        v[fc] = rat(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][fc]
        basis.append(v)
    return basis


def invert_matrix(matrix):
    """Exact inverse of a square rational matrix, or None if singular."""
    n = len(matrix)
    aug = [
        [rat(v) for v in row] + [ONE if i == j else rat(0) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    pivots = _rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in aug]


def _blocks(M):
    # union-find over indices; i ~ j when M[i][j] or M[j][i] is nonzero
    n = len(M)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if M[i][j].terms or M[j][i].terms:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[r] for r in sorted(groups, key=lambda r: groups[r][0])]


def _bareiss(M):
    # Fraction-free elimination with full pivoting.  Rows whose leading
    # entry is zero at a given step would only be rescaled by the ratio of
    # consecutive pivots; since those ratios telescope, each row instead
    # records the step it is synchronized with and is rescaled lazily the
    # next time a pivot touches it.  That keeps sparse rows cheap: the
    # elimination cost is carried by the rows that actually meet pivots.
    n = len(M)
    vs = M[0][0].vars
    one = CartanPoly.constant(1, vs)
    sign = 1
    pivots = [one]  # pivots[t] is the pivot of step t - 1 (pivots[0] = 1)
    sync = [0] * n  # row i holds the entries of elimination step sync[i]

    def sync_row(i, k):
        # bring row i from step sync[i] to step k: scale by piv_k / piv_s
        s = sync[i]
        if s == k:
            return
        num, den = pivots[k], pivots[s]
        row = M[i]
        for j in range(n):
            if row[j].terms:
                q = (row[j] * num).divide_exact(den)
                assert q is not None, "fraction-free rescale was not exact"
                row[j] = q
        sync[i] = k

    for k in range(n):
        best = None
        col_nnz = [0] * n
        row_nnz = [0] * n
        for i in range(k, n):
            for j in range(k, n):
                if M[i][j].terms:
                    row_nnz[i] += 1
                    col_nnz[j] += 1
        degadj = {}
        for i in range(k, n):
            s = sync[i]
            if s not in degadj:
                degadj[s] = pivots[k].degree() - pivots[s].degree()
            adj = degadj[s]
            for j in range(k, n):
                e = M[i][j]
                if not e.terms:
                    continue
                key = (
                    e.degree() + adj,
                    (row_nnz[i] - 1) * (col_nnz[j] - 1),
                    len(e.terms),
                    i,
                    j,
                )
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            return CartanPoly._raw(vs, {})
        _, pi, pj = best
        if pi != k:
            M[k], M[pi] = M[pi], M[k]
            sync[k], sync[pi] = sync[pi], sync[k]
            sign = -sign
        if pj != k:
            for row in M:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        sync_row(k, k)
        if k == n - 1:
            break
        piv = M[k][k]
        prev = pivots[k]
        for i in range(k + 1, n):
            if not M[i][k].terms:
                continue
            sync_row(i, k)
            lead = M[i][k]
            for j in range(k + 1, n):
                if not M[i][j].terms and not M[k][j].terms:
                    continue
                num = piv * M[i][j] - lead * M[k][j]
                q = num.divide_exact(prev)
                assert q is not None, "fraction-free step was not exact"
                M[i][j] = q
            M[i][k] = CartanPoly._raw(vs, {})
            sync[i] = k + 1
        pivots.append(piv)
    sync_row(n - 1, n - 1)
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def det_bareiss(matrix):
    """Determinant of a square matrix of polynomials (or rationals), exactly.

    Runs a symmetric block decomposition first (indices are grouped when
    either of the two facing entries is nonzero; the determinant is the
    product over groups), then fraction-free Bareiss elimination with full
    pivoting on each block, preferring low-degree few-term pivots.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if n == 0:
        return CartanPoly.constant(1)
    names = set()
    for row in matrix:
        for e in row:
            if isinstance(e, CartanPoly):
                names.update(e.vars)
    vs = tuple(sorted(names))
    M = []
    for row in matrix:
        r = []
        for e in row:
            if isinstance(e, CartanPoly):
                r.append(CartanPoly._raw(vs, _embed(e.terms, e.vars, vs)))
            else:
                r.append(CartanPoly.constant(e, vs))
        M.append(r)
    det = CartanPoly.constant(1, vs)
    for block in _blocks(M):
        sub = [[M[i][j] for j in block] for i in block]
        d = _bareiss(sub)
        if d.is_zero():
            return CartanPoly._raw(vs, {})
        det = det * d
    return det
