"""Quadratic and cubic Casimir elements with symbolic centrality proofs.

Everything here is exact: the inverse Gram matrix is computed over the
rationals, the candidate central elements are straightened into PBW normal
form, and centrality is established by evaluating the commutator with every
basis generator and keeping the residuals as the proof artifact.
"""

from dataclasses import dataclass, field

from .errors import FormParityMismatch
from .rat import rat
from .uea import FiniteContext, UEA


def _inverse_gram(alg, want_parity):
    if alg.form is None:
        raise ValueError("%s carries no bilinear form" % alg.name)
    if alg.form_parity != want_parity:
        raise FormParityMismatch(
            "form on %s is %s, need %s"
            % (
                alg.name,
                "odd" if alg.form_parity else "even",
                "odd" if want_parity else "even",
            )
        )
    return alg.gram_inverse()


def b_identity_violations(alg, b=None):
    """Triples (i, j, k) violating the inverse-Gram bracket identity.

    For an even invariant form with inverse Gram matrix b, invariance gives

        sum_l (b[l][j] c_kl^i + (-1)^(p_i p_k) b[i][l] c_kl^j) = 0

    for all i, j, k, where c_kl^i is the coefficient of e_i in [e_k, e_l].
    This holds on the raw tables, independent of any straightening.
    """
    if b is None:
        b = _inverse_gram(alg, 0)
    d = alg.dim
    p = alg.parities
    bad = []
    for k in range(d):
        for i in range(d):
            for j in range(d):
                total = rat(0)
                for l in range(d):
                    br = alg.table.get((k, l))
                    if not br:
                        continue
                    ci = br.get(i)
                    if ci is not None:
                        total += b[l][j] * ci
                    cj = br.get(j)
                    if cj is not None:
                        s = -cj if (p[i] and p[k]) else cj
                        total += b[i][l] * s
                if total != 0:
                    bad.append((i, j, k))
    return bad


@dataclass
class QuadraticCasimir:
    element: dict
    table: dict
    residuals: dict = field(repr=False)

    def is_central(self):
        return all(not r for r in self.residuals.values())


def omega0(alg):
    """The quadratic element sum_ij b[i][j] e_i e_j in PBW normal form.

    Requires an even nondegenerate invariant form.  The residual commutator
    with every basis generator is computed and stored; each must be the zero
    element.
    """
    b = _inverse_gram(alg, 0)
    u = UEA(FiniteContext(alg))
    elem = {}
    table = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            c = b[i][j]
            if c == 0:
                continue
            table[(i, j)] = c
            for m, v in u.mul(u.gen(i), u.gen(j)).items():
                s = elem.get(m, 0) + c * v
                if s == 0:
                    elem.pop(m, None)
                else:
                    elem[m] = s
    residuals = {k: u.commutator(u.gen(k), elem) for k in range(alg.dim)}
    return QuadraticCasimir(elem, table, residuals)


@dataclass
class AMapReport:
    matrix: list
    scalar: bool
    lam: object

    def block_lambdas(self, blocks):
        """Diagonal value per index block when each block is scalar."""
        out = []
        for idxs in blocks:
            vals = {self.matrix[i][i] for i in idxs}
            off = any(
                self.matrix[i][j] != 0
                for i in idxs
                for j in idxs
                if i != j
            )
            out.append(vals.pop() if len(vals) == 1 and not off else None)
        return out


def _a_apply(alg, b, x):
    """A(x) = sum_ij b[i][j] [[x, e_i], e_j] for an element dict x."""
    out = {}
    for i in range(alg.dim):
        inner = {}
        for s, cs in x.items():
            br = alg.table.get((s, i))
            if not br:
                continue
            for t, c in br.items():
                v = inner.get(t, 0) + cs * c
                if v == 0:
                    inner.pop(t, None)
                else:
                    inner[t] = v
        if not inner:
            continue
        for j in range(alg.dim):
            bij = b[i][j]
            if bij == 0:
                continue
            for t, c in inner.items():
                br = alg.table.get((t, j))
                if not br:
                    continue
                for r, cr in br.items():
                    v = out.get(r, 0) + bij * c * cr
                    if v == 0:
                        out.pop(r, None)
                    else:
                        out[r] = v
    return out


def a_map(alg):
    """Matrix of x -> sum_ij b[i][j] [[x, e_i], e_j] with a scalarity flag."""
    b = _inverse_gram(alg, 0)
    d = alg.dim
    matrix = [[rat(0)] * d for _ in range(d)]
    for s in range(d):
        col = _a_apply(alg, b, {s: rat(1)})
        for r, c in col.items():
            matrix[r][s] = c
    diag = {matrix[i][i] for i in range(d)}
    off = any(matrix[i][j] != 0 for i in range(d) for j in range(d) if i != j)
    scalar = len(diag) == 1 and not off
    return AMapReport(matrix, scalar, diag.pop() if scalar else None)


def ad_commutes_with_A(alg):
    """Check [e_k, A x] = A [e_k, x] on all basis pairs; list violations."""
    b = _inverse_gram(alg, 0)
    bad = []
    images = [_a_apply(alg, b, {s: rat(1)}) for s in range(alg.dim)]
    for k in range(alg.dim):
        for s in range(alg.dim):
            lhs = {}
            for r, c in images[s].items():
                br = alg.table.get((k, r))
                if not br:
                    continue
                for t, ct in br.items():
                    v = lhs.get(t, 0) + c * ct
                    if v == 0:
                        lhs.pop(t, None)
                    else:
                        lhs[t] = v
            rhs = _a_apply(alg, b, alg.table.get((k, s), {}))
            if lhs != rhs:
                bad.append((k, s))
    return bad


@dataclass
class CubicCasimir:
    element: dict
    coefficients: dict
    residuals: dict = field(repr=False)
    symmetry_violations: list = field(default_factory=list)

    def is_central(self):
        return all(not r for r in self.residuals.values())


def c3(alg):
    """The cubic element sum (-1)^p_l c_ij^k b[i][m] b[j][l] e_k e_l e_m.

    Requires an odd nondegenerate invariant supersymmetric form.  Stores the
    coefficient table F(k, l, m), its sign-rule symmetry violations (expected
    none), and the centrality residuals (expected zero).
    """
    b = _inverse_gram(alg, 1)
    d = alg.dim
    p = alg.parities
    F = {}
    for (i, j), br in alg.table.items():
        for k, c in br.items():
            for m in range(d):
                bim = b[i][m]
                if bim == 0:
                    continue
                for l in range(d):
                    bjl = b[j][l]
                    if bjl == 0:
                        continue
                    v = c * bim * bjl
                    if p[l]:
                        v = -v
                    s = F.get((k, l, m), 0) + v
                    if s == 0:
                        F.pop((k, l, m), None)
                    else:
                        F[(k, l, m)] = s
    sym_bad = []
    for (k, l, m), v in F.items():
        swap_kl = F.get((l, k, m), rat(0))
        if v != (-swap_kl if (p[k] and p[l]) else swap_kl):
            sym_bad.append(((k, l, m), "kl"))
        swap_lm = F.get((k, m, l), rat(0))
        if v != (-swap_lm if (p[l] and p[m]) else swap_lm):
            sym_bad.append(((k, l, m), "lm"))
    u = UEA(FiniteContext(alg))
    elem = {}
    for (k, l, m), v in F.items():
        prod = u.mul(u.mul(u.gen(k), u.gen(l)), u.gen(m))
        for mono, c in prod.items():
            s = elem.get(mono, 0) + v * c
            if s == 0:
                elem.pop(mono, None)
            else:
                elem[mono] = s
    residuals = {k: u.commutator(u.gen(k), elem) for k in range(alg.dim)}
    return CubicCasimir(elem, F, residuals, sym_bad)
