"""Finite-dimensional Lie superalgebras over the rationals.

A SuperAlgebra holds a homogeneous basis with parities, the full bracket
table, an optional bilinear form as a sparse Gram matrix, the Cartan and
torus index sets, a default splitting element for positive/negative root
systems, and weight bookkeeping.  Builders construct the Poisson-type
families on Grassmann generators, the general and special linear families,
the queer-type tower q / sq / pq / psq, and direct sums.

Conventions used throughout:

- elements are plain dicts {basis index: rational};
- weights are tuples of eigenvalues on the torus generators, in torus order
  (the torus is the part of the Cartan subalgebra that acts diagonally on
  the chosen basis; for the Poisson families that is the generator products
  x_i*e_i, for the matrix families the even diagonal);
- the Cartan subalgebra may have an odd part (queer families, odd Poisson
  Cartans);
- polynomial variables for determinant work are attached to the even Cartan
  generators through cartan_var_names.
"""

from .errors import DegenerateForm, NonDiagonalAction, ZeroOnRoot
from .grassmann import Grassmann, _merge_sign
from .rat import rat
from .scalars import invert_matrix, nullspace, solve_exact


def vec_add(a, b, factor=1):
    """a + factor * b for sparse element dicts."""
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + factor * c
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(a, c):
    c = rat(c)
    if c == 0:
        return {}
    return {k: v * c for k, v in a.items()}


class SuperAlgebra:
    """A Lie superalgebra given by structure constants on a fixed basis."""

    def __init__(
        self,
        name,
        basis_names,
        parities,
        table,
        cartan_indices=(),
        torus_indices=None,
        form=None,
        form_parity=0,
        form_invariant=True,
        splitter=None,
        weight_symbols=None,
        cartan_var_names=None,
        sigma_basis=None,
        notes="",
    ):
        self.name = name
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        if len(set(self.basis_names)) != self.dim:
            raise ValueError("basis names must be unique")
        self.parities = tuple(int(p) & 1 for p in parities)
        if len(self.parities) != self.dim:
            raise ValueError("parities do not match basis size")
        self.table = {}
        for (i, j), comp in table.items():
            clean = {}
            for k, c in comp.items():
                c = rat(c)
                if c != 0:
                    clean[k] = c
            if clean:
                self.table[(i, j)] = clean
        self.cartan_indices = tuple(cartan_indices)
        if torus_indices is None:
            torus_indices = tuple(
                i for i in self.cartan_indices if self.parities[i] == 0
            )
        self.torus_indices = tuple(torus_indices)
        if not set(self.torus_indices) <= set(self.cartan_indices):
            raise ValueError("torus must be part of the Cartan subalgebra")
        self._torus_pos = {t: p for p, t in enumerate(self.torus_indices)}
        self.form = None
        if form is not None:
            self.form = {}
            for (i, j), c in form.items():
                c = rat(c)
                if c != 0:
                    self.form[(i, j)] = c
        self.form_parity = form_parity & 1
        self.form_invariant = form_invariant
        self.splitter = None
        if splitter is not None:
            self.splitter = {k: rat(c) for k, c in splitter.items() if rat(c) != 0}
            if not set(self.splitter) <= set(self.torus_indices):
                raise ValueError("splitter must be supported on the torus")
        self.weight_symbols = dict(weight_symbols or {})
        self.cartan_var_names = dict(cartan_var_names or {})
        for i in self.cartan_indices:
            if self.parities[i] == 0:
                self.cartan_var_names.setdefault(i, self.basis_names[i])
        self.sigma_basis = None
        if sigma_basis is not None:
            self.sigma_basis = {
                i: (j, rat(s)) for i, (j, s) in sigma_basis.items()
            }
        self.notes = notes
        self._weights = None

    # ----- basic structure -----

    def parity(self, i):
        return self.parities[i]

    def index_of(self, name):
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError("no basis vector named %r in %s" % (name, self.name))

    def bracket_basis(self, i, j):
        return self.table.get((i, j), {})

    def bracket(self, x, y):
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                comp = self.table.get((i, j))
                if not comp:
                    continue
                f = ci * cj
                for k, c in comp.items():
                    s = out.get(k, 0) + f * c
                    if s == 0:
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def sigma_elem(self, x):
        """Apply the antiautomorphism table to an algebra element."""
        if self.sigma_basis is None:
            raise ValueError("%s carries no antiautomorphism table" % self.name)
        out = {}
        for i, c in x.items():
            j, s = self.sigma_basis[i]
            v = out.get(j, 0) + c * s
            if v == 0:
                out.pop(j, None)
            else:
                out[j] = v
        return out

    def element_parity(self, x):
        ps = {self.parities[i] for i in x}
        if len(ps) > 1:
            raise ValueError("element has mixed parity")
        return ps.pop() if ps else 0

    def element_str(self, x):
        if not x:
            return "0"
        pieces = []
        for i in sorted(x):
            c = x[i]
            n = self.basis_names[i]
            if c == 1:
                pieces.append(n)
            elif c == -1:
                pieces.append("-" + n)
            else:
                pieces.append("%s*%s" % (c, n))
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    # ----- bilinear form -----

    def form_value(self, i, j):
        if self.form is None:
            raise ValueError("%s carries no bilinear form" % self.name)
        return self.form.get((i, j), rat(0))

    def form_apply(self, x, y):
        if self.form is None:
            raise ValueError("%s carries no bilinear form" % self.name)
        total = rat(0)
        for i, ci in x.items():
            for j, cj in y.items():
                c = self.form.get((i, j))
                if c is not None:
                    total += ci * cj * c
        return total

    def gram(self):
        return [
            [self.form_value(i, j) for j in range(self.dim)]
            for i in range(self.dim)
        ]

    def form_radical(self):
        """Basis of the radical of the form, as element dicts."""
        vecs = nullspace(self.gram())
        out = []
        for v in vecs:
            out.append({i: c for i, c in enumerate(v) if c != 0})
        return out

    def is_form_degenerate(self):
        return bool(self.form_radical())

    def gram_inverse(self):
        """Exact inverse of the Gram matrix, as a dense list of rows.

        Raises DegenerateForm when the Gram matrix is singular.
        """
        inv = invert_matrix(self.gram())
        if inv is None:
            raise DegenerateForm("the form on %s is degenerate" % self.name)
        return inv

    # ----- weights and roots -----

    def weight_of(self, i):
        w = []
        for t in self.torus_indices:
            br = self.table.get((t, i), {})
            for k in br:
                if k != i:
                    raise NonDiagonalAction(
                        "torus generator %s does not act diagonally on %s"
                        % (self.basis_names[t], self.basis_names[i])
                    )
            w.append(br.get(i, rat(0)))
        return tuple(w)

    def weights(self):
        if self._weights is None:
            self._weights = [self.weight_of(i) for i in range(self.dim)]
        return self._weights

    def zero_weight(self):
        return (rat(0),) * len(self.torus_indices)

    def roots(self):
        """Nonzero weights mapped to the list of basis indices carrying them."""
        out = {}
        zero = self.zero_weight()
        cartan = set(self.cartan_indices)
        for i in range(self.dim):
            w = self.weights()[i]
            if w == zero:
                if i not in cartan:
                    raise ValueError(
                        "basis vector %s has zero weight but is not Cartan"
                        % self.basis_names[i]
                    )
                continue
            out.setdefault(w, []).append(i)
        return out

    def alpha_value(self, weight, splitter=None):
        H = self.splitter if splitter is None else splitter
        if H is None:
            raise ValueError("%s has no splitting element" % self.name)
        total = rat(0)
        for t, c in H.items():
            total += weight[self._torus_pos[t]] * c
        return total

    def positive_system(self, splitter=None):
        """(positive, negative) root dicts split by the splitting element."""
        pos, neg = {}, {}
        for w, idxs in self.roots().items():
            a = self.alpha_value(w, splitter)
            if a == 0:
                raise ZeroOnRoot(
                    "splitting element vanishes on the root of %s"
                    % self.basis_names[idxs[0]]
                )
            (pos if a > 0 else neg)[w] = idxs
        return pos, neg

    def pbw_order(self, splitter=None):
        """Basis indices ordered negatives, Cartan (even then odd), positives."""
        pos, neg = self.positive_system(splitter)
        negatives = []
        for w, idxs in neg.items():
            a = self.alpha_value(w, splitter)
            for i in idxs:
                negatives.append((-a, i))
        negatives = [i for _, i in sorted(negatives)]
        positives = []
        for w, idxs in pos.items():
            a = self.alpha_value(w, splitter)
            for i in idxs:
                positives.append((a, i))
        positives = [i for _, i in sorted(positives)]
        cartan = sorted(
            self.cartan_indices, key=lambda i: (self.parities[i], i)
        )
        return negatives + cartan + positives

    def parse_weight(self, text):
        """Parse '2*e1 - e2' or '2a' into a weight tuple."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty weight expression")
        chunks = []
        start = 0
        for i, ch in enumerate(s):
            if ch in "+-" and i > start:
                chunks.append(s[start:i])
                start = i
        chunks.append(s[start:])
        total = list(self.zero_weight())
        for chunk in chunks:
            sign = rat(1)
            if chunk.startswith("-"):
                sign = rat(-1)
                chunk = chunk[1:]
            elif chunk.startswith("+"):
                chunk = chunk[1:]
            coeff = sign
            symbol = None
            for factor in chunk.split("*"):
                if factor in self.weight_symbols:
                    if symbol is not None:
                        raise ValueError("cannot multiply two weight symbols")
                    symbol = factor
                else:
                    # allow forms like 2a with no explicit *
                    matched = None
                    for name in sorted(self.weight_symbols, key=len, reverse=True):
                        if factor.endswith(name):
                            head = factor[: -len(name)]
                            if head == "":
                                matched = (name, rat(1))
                            else:
                                try:
                                    matched = (name, rat(head))
                                except (ValueError, TypeError):
                                    continue
                            break
                    if matched is not None:
                        if symbol is not None:
                            raise ValueError("cannot multiply two weight symbols")
                        symbol, c = matched
                        coeff = coeff * c
                    else:
                        try:
                            coeff = coeff * rat(factor)
                        except (ValueError, TypeError):
                            raise ValueError(
                                "unknown weight symbol %r for %s (have: %s)"
                                % (factor, self.name, ", ".join(sorted(self.weight_symbols)))
                            )
            if symbol is None:
                raise ValueError("weight term %r names no symbol" % chunk)
            w = self.weight_symbols[symbol]
            for p in range(len(total)):
                total[p] = total[p] + coeff * w[p]
        return tuple(total)

    # ----- structure checks -----

    def verify(self, check_jacobi=True, check_form=True):
        """Return a list of violation messages; empty means all checks pass."""
        bad = []
        names = self.basis_names
        par = self.parities
        for (i, j), comp in self.table.items():
            want = par[i] ^ par[j]
            for k in comp:
                if par[k] != want:
                    bad.append(
                        "bracket [%s,%s] has a component of wrong parity on %s"
                        % (names[i], names[j], names[k])
                    )
        for i in range(self.dim):
            for j in range(self.dim):
                sign = -1 if (par[i] and par[j]) else 1
                lhs = self.table.get((i, j), {})
                rhs = vec_scale(self.table.get((j, i), {}), -sign)
                if lhs != rhs:
                    bad.append(
                        "bracket is not super-skew on (%s,%s)" % (names[i], names[j])
                    )
        if check_jacobi:
            for i in range(self.dim):
                ei = {i: rat(1)}
                for j in range(self.dim):
                    ej = {j: rat(1)}
                    sign = -1 if (par[i] and par[j]) else 1
                    for k in range(self.dim):
                        lhs = self.bracket(ei, self.table.get((j, k), {}))
                        rhs = vec_add(
                            self.bracket(self.table.get((i, j), {}), {k: rat(1)}),
                            self.bracket(ej, self.table.get((i, k), {})),
                            sign,
                        )
                        if lhs != rhs:
                            bad.append(
                                "Jacobi fails on (%s,%s,%s)"
                                % (names[i], names[j], names[k])
                            )
        if check_form and self.form is not None:
            for (i, j), c in self.form.items():
                if (par[i] + par[j]) & 1 != self.form_parity:
                    bad.append(
                        "form pairs %s with %s against its parity"
                        % (names[i], names[j])
                    )
                sign = -1 if (par[i] and par[j]) else 1
                if self.form.get((j, i), rat(0)) != sign * c:
                    bad.append(
                        "form is not supersymmetric on (%s,%s)" % (names[i], names[j])
                    )
            if self.form_invariant:
                for i in range(self.dim):
                    ei = {i: rat(1)}
                    for j in range(self.dim):
                        ej = {j: rat(1)}
                        for k in range(self.dim):
                            lhs = self.form_apply(self.table.get((i, j), {}), {k: rat(1)})
                            rhs = self.form_apply(ei, self.table.get((j, k), {}))
                            if lhs != rhs:
                                bad.append(
                                    "form is not invariant on (%s,%s,%s)"
                                    % (names[i], names[j], names[k])
                                )
        if self.sigma_basis is not None:
            for i in range(self.dim):
                j, s = self.sigma_basis[i]
                if par[j] != par[i]:
                    bad.append("antiautomorphism changes parity of %s" % names[i])
                j2, s2 = self.sigma_basis[j]
                if j2 != i or s * s2 != 1:
                    bad.append("antiautomorphism is not an involution at %s" % names[i])
            for i in self.cartan_indices:
                if self.sigma_basis[i] != (i, rat(1)):
                    bad.append("antiautomorphism moves Cartan element %s" % names[i])
            # sigma([x,y]) = -(-1)^(px py) [sigma x, sigma y]
            for i in range(self.dim):
                ii, si = self.sigma_basis[i]
                for j in range(self.dim):
                    jj, sj = self.sigma_basis[j]
                    sign = -1 if (par[i] and par[j]) else 1
                    lhs = self.sigma_elem(self.table.get((i, j), {}))
                    rhs = vec_scale(
                        self.table.get((ii, jj), {}), -sign * si * sj
                    )
                    if lhs != rhs:
                        bad.append(
                            "antiautomorphism breaks the bracket on (%s,%s)"
                            % (names[i], names[j])
                        )
        try:
            self.weights()
        except NonDiagonalAction as exc:
            bad.append(str(exc))
        else:
            if self.splitter is not None:
                try:
                    self.positive_system()
                except ZeroOnRoot as exc:
                    bad.append(str(exc))
                except ValueError as exc:
                    bad.append(str(exc))
        return bad

    def __repr__(self):
        return "SuperAlgebra(%s, dim %d)" % (self.name, self.dim)


# ----- Poisson-type families -----


def _pair_closed(mask, pairs):
    for i in range(pairs):
        if bool(mask & (1 << (2 * i))) != bool(mask & (1 << (2 * i + 1))):
            return False
    return True


def _pair_sign(mask, pairs):
    # Basis normalization: a monomial carrying j closed xi-eta pairs is
    # rescaled by (-1)^j, so that the torus element for pair i acts on x_i
    # with eigenvalue +1.  Highest weights of the standard Verma-type
    # modules then degenerate at positive half-integers rather than
    # negative ones, matching the usual normalization of the factor tables.
    j = 0
    for i in range(pairs):
        both = (1 << (2 * i)) | (1 << (2 * i + 1))
        if mask & both == both:
            j += 1
    return rat(1) if j % 2 == 0 else rat(-1)


def _po_pieces(m, presentation):
    g = Grassmann(m, presentation)
    nmask = 1 << m
    if presentation == "xi":
        pairs = m // 2
        cartan_masks = [mk for mk in range(nmask) if _pair_closed(mk, pairs)]
        torus_masks = [
            (1 << (2 * i)) | (1 << (2 * i + 1)) for i in range(pairs)
        ]
    else:
        cartan_masks = [0]
        torus_masks = []
    return g, nmask, cartan_masks, torus_masks


def _po_var_name(mask, pairs):
    bits = []
    for i in range(pairs):
        bits.append("1" if mask & (1 << (2 * i)) else "0")
    return "h" + "".join(bits)


def _po_weight_symbols(pairs):
    out = {}
    for i in range(pairs):
        w = [rat(0)] * pairs
        w[i] = rat(1)
        out["e%d" % (i + 1)] = tuple(w)
    return out


def _po_splitter(torus_masks, index_of):
    pairs = len(torus_masks)
    return {
        index_of[torus_masks[i]]: rat(3 ** (pairs - 1 - i))
        for i in range(pairs)
    }


def _grassmann_sigma_mask(g, mask):
    # reverse the word and swap each xi with its eta partner
    pairs = g.m // 2 if g.presentation == "xi" else 0
    letters = [b for b in range(g.m) if mask & (1 << b)]
    prod = g.one()
    for b in reversed(letters):
        img = b ^ 1 if b < 2 * pairs else b
        prod = prod * g.monomial(1 << img)
    ((mk, c),) = prod.terms.items()
    return mk, c


def po(m, presentation="xi"):
    """The Poisson superalgebra on 0|m generators, dimension 2^m."""
    g, nmask, cartan_masks, torus_masks = _po_pieces(m, presentation)
    pairs = m // 2 if presentation == "xi" else 0
    sgn = [_pair_sign(mk, pairs) for mk in range(nmask)]
    names = [g.mask_name(mk) for mk in range(nmask)]
    parities = [bin(mk).count("1") & 1 for mk in range(nmask)]
    table = {}
    for a in range(nmask):
        fa = g.monomial(a)
        for b in range(nmask):
            res = g.poisson(fa, g.monomial(b))
            comp = {
                mk: c * sgn[a] * sgn[b] * sgn[mk] for mk, c in res.terms.items()
            }
            if comp:
                table[(a, b)] = comp
    full = nmask - 1
    form = {}
    for a in range(nmask):
        b = full ^ a
        form[(a, b)] = rat(_merge_sign(a, b)) * sgn[a] * sgn[b]
    var_names = {
        mk: _po_var_name(mk, pairs)
        for mk in cartan_masks
        if bin(mk).count("1") & 1 == 0
    } if presentation == "xi" else None
    splitter = _po_splitter(torus_masks, {mk: mk for mk in range(nmask)}) or None
    sigma = {}
    for mk in range(nmask):
        mk2, c = _grassmann_sigma_mask(g, mk)
        sigma[mk] = (mk2, c * sgn[mk] * sgn[mk2])
    return SuperAlgebra(
        "po(0|%d)" % m,
        names,
        parities,
        table,
        cartan_indices=cartan_masks,
        torus_indices=torus_masks,
        form=form,
        form_parity=m & 1,
        splitter=splitter,
        weight_symbols=_po_weight_symbols(pairs),
        cartan_var_names=var_names,
        sigma_basis=sigma,
    )


def _grassmann_quotient(m, presentation, keep, name, drop_check=None):
    g, nmask, cartan_masks, torus_masks = _po_pieces(m, presentation)
    pairs = m // 2 if presentation == "xi" else 0
    sgn = [_pair_sign(mk, pairs) for mk in range(nmask)]
    masks = [mk for mk in range(nmask) if keep(mk)]
    index = {mk: i for i, mk in enumerate(masks)}
    names = [g.mask_name(mk) for mk in masks]
    parities = [bin(mk).count("1") & 1 for mk in masks]
    table = {}
    for a in masks:
        fa = g.monomial(a)
        for b in masks:
            res = g.poisson(fa, g.monomial(b))
            comp = {}
            for mk, c in res.terms.items():
                if mk in index:
                    comp[index[mk]] = c * sgn[a] * sgn[b] * sgn[mk]
                elif drop_check is not None and not drop_check(mk):
                    raise ValueError(
                        "bracket leaves the subspace: [%s, %s] hits %s"
                        % (g.mask_name(a), g.mask_name(b), g.mask_name(mk))
                    )
            if comp:
                table[(index[a], index[b])] = comp
    cartan = [index[mk] for mk in cartan_masks if mk in index]
    torus = [index[mk] for mk in torus_masks]
    var_names = {
        index[mk]: _po_var_name(mk, pairs)
        for mk in cartan_masks
        if mk in index and bin(mk).count("1") & 1 == 0
    }
    splitter = _po_splitter(torus_masks, index) or None
    sigma = {}
    for mk in masks:
        mk2, c = _grassmann_sigma_mask(g, mk)
        sigma[index[mk]] = (index[mk2], c * sgn[mk] * sgn[mk2])
    return SuperAlgebra(
        name,
        names,
        parities,
        table,
        cartan_indices=cartan,
        torus_indices=torus,
        splitter=splitter,
        weight_symbols=_po_weight_symbols(pairs),
        cartan_var_names=var_names,
        sigma_basis=sigma,
    )


def hamiltonian(m, presentation="xi"):
    """h(0|m): the Poisson algebra modulo constants, dimension 2^m - 1."""
    return _grassmann_quotient(
        m,
        presentation,
        keep=lambda mk: mk != 0,
        name="h(0|%d)" % m,
        drop_check=lambda mk: mk == 0,
    )


def hamiltonian_prime(m, presentation="xi"):
    """h'(0|m): the derived algebra of h(0|m), dimension 2^m - 2."""
    full = (1 << m) - 1
    return _grassmann_quotient(
        m,
        presentation,
        keep=lambda mk: mk != 0 and mk != full,
        name="h'(0|%d)" % m,
        drop_check=lambda mk: mk == 0,
    )


# ----- matrix families -----


def gl(m, n=0):
    """gl(m|n) on matrix units, with the supertrace form."""
    N = m + n
    if N == 0:
        raise ValueError("gl(0|0) is empty")

    def pr(i):
        return 0 if i < m else 1

    def idx(i, j):
        return i * N + j

    names = ["E%d%d" % (i + 1, j + 1) for i in range(N) for j in range(N)]
    parities = [pr(i) ^ pr(j) for i in range(N) for j in range(N)]
    table = {}
    for i in range(N):
        for j in range(N):
            pij = pr(i) ^ pr(j)
            for k in range(N):
                for l in range(N):
                    sign = -1 if (pij and (pr(k) ^ pr(l))) else 1
                    comp = {}
                    if j == k:
                        comp[idx(i, l)] = comp.get(idx(i, l), 0) + 1
                    if l == i:
                        comp[idx(k, j)] = comp.get(idx(k, j), 0) - sign
                    comp = {a: rat(c) for a, c in comp.items() if c != 0}
                    if comp:
                        table[(idx(i, j), idx(k, l))] = comp
    form = {}
    for i in range(N):
        for j in range(N):
            form[(idx(i, j), idx(j, i))] = rat(1 if pr(i) == 0 else -1)
    cartan = [idx(i, i) for i in range(N)]
    splitter = {idx(i, i): rat(N - i) for i in range(N)}
    symbols = {}
    for i in range(N):
        w = [rat(0)] * N
        w[i] = rat(1)
        symbols["e%d" % (i + 1)] = tuple(w)
    name = "gl(%d|%d)" % (m, n) if n else "gl(%d)" % m
    sigma = {idx(i, j): (idx(j, i), rat(1)) for i in range(N) for j in range(N)}
    return SuperAlgebra(
        name,
        names,
        parities,
        table,
        cartan_indices=cartan,
        form=form,
        splitter=splitter,
        weight_symbols=symbols,
        sigma_basis=sigma,
    )


def _str_value(diag, m):
    total = rat(0)
    for i, c in enumerate(diag):
        total += c if i < m else -c
    return total


def sl(m, n=0):
    """sl(m|n): supertraceless matrices, Cartan basis of simple coroots."""
    N = m + n
    if N < 2:
        raise ValueError("need m + n >= 2")

    def pr(i):
        return 0 if i < m else 1

    coroots = []
    for r in range(N - 1):
        v = [rat(0)] * N
        v[r] = rat(1)
        v[r + 1] = rat(1) if (n and r == m - 1) else rat(-1)
        coroots.append(v)
    vmat = [[coroots[r][i] for r in range(N - 1)] for i in range(N)]

    offdiag = [(i, j) for i in range(N) for j in range(N) if i != j]
    names = ["E%d%d" % (i + 1, j + 1) for i, j in offdiag]
    names += ["h%d" % (r + 1) for r in range(N - 1)]
    off_index = {p: k for k, p in enumerate(offdiag)}
    nb = len(offdiag)
    parities = [pr(i) ^ pr(j) for i, j in offdiag] + [0] * (N - 1)

    def to_matrix(index):
        # dense (diag vector, offdiag dict) picture of a basis element
        if index < nb:
            return {offdiag[index]: rat(1)}, [rat(0)] * N
        r = index - nb
        return {}, list(coroots[r])

    def mat_bracket(off1, d1, off2, d2):
        # commutator in gl(N), exploiting sparsity of the inputs
        out_off = {}
        out_diag = [rat(0)] * N

        def add(i, j, c):
            if i == j:
                out_diag[i] += c
            else:
                key = (i, j)
                s = out_off.get(key, 0) + c
                if s == 0:
                    out_off.pop(key, None)
                else:
                    out_off[key] = s

        for (i, j), c1 in off1.items():
            p1 = pr(i) ^ pr(j)
            for (k, l), c2 in off2.items():
                sign = -1 if (p1 and (pr(k) ^ pr(l))) else 1
                if j == k:
                    add(i, l, c1 * c2)
                if l == i:
                    add(k, j, -sign * c1 * c2)
        for (i, j), c1 in off1.items():
            c = c1 * (d2[j] - d2[i])
            if c != 0:
                add(i, j, c)
        for (i, j), c2 in off2.items():
            c = c2 * (d1[i] - d1[j])
            if c != 0:
                add(i, j, c)
        return out_off, out_diag

    def decompose(off, diag):
        out = {}
        for p, c in off.items():
            out[off_index[p]] = c
        if any(c != 0 for c in diag):
            sol = solve_exact(vmat, diag)
            if sol is None:
                raise ValueError("diagonal part is not supertraceless")
            for r, c in enumerate(sol):
                if c != 0:
                    out[nb + r] = c
        return out

    dim = nb + N - 1
    table = {}
    mats = [to_matrix(i) for i in range(dim)]
    for a in range(dim):
        off1, d1 = mats[a]
        for b in range(dim):
            off2, d2 = mats[b]
            br = mat_bracket(off1, d1, off2, d2)
            comp = decompose(*br)
            if comp:
                table[(a, b)] = comp

    def str_pair(a, b):
        # supertrace of the product of two basis elements
        off1, d1 = mats[a]
        off2, d2 = mats[b]
        total = rat(0)
        for (i, j), c1 in off1.items():
            c2 = off2.get((j, i))
            if c2 is not None:
                total += c1 * c2 * (1 if pr(i) == 0 else -1)
        for i in range(N):
            total += d1[i] * d2[i] * (1 if pr(i) == 0 else -1)
        return total

    form = {}
    for a in range(dim):
        for b in range(dim):
            c = str_pair(a, b)
            if c != 0:
                form[(a, b)] = c

    cartan = list(range(nb, dim))
    # splitting diagonal: generic distinct entries, supertraceless
    splitter = None
    if m != n:
        base = [rat(N - i) for i in range(N)]
        shift = _str_value(base, m) / (m - n)
        diag = [c - shift for c in base]
    elif m == 1:
        # sl(1|1): every supertraceless diagonal kills the roots, no splitter
        diag = None
    else:
        diag = [rat(3) ** (N - i) for i in range(N)]
        while True:
            tail = sum(diag[m:-1], rat(0))
            head = sum(diag[:m], rat(0))
            diag[-1] = head - tail
            if len(set(diag)) == N:
                break
            diag[-2] += rat(1, 2)
    if diag is not None:
        sol = solve_exact(vmat, diag)
        if sol is None:
            raise ValueError("internal: splitting diagonal not supertraceless")
        splitter = {nb + r: c for r, c in enumerate(sol) if c != 0}
    symbols = {}
    for i in range(N):
        symbols["e%d" % (i + 1)] = tuple(coroots[r][i] for r in range(N - 1))
    for s in range(N - 1):
        symbols["a%d" % (s + 1)] = tuple(
            coroots[r][s] - coroots[r][s + 1] for r in range(N - 1)
        )
    if N == 2:
        symbols["a"] = symbols["a1"]
    name = "sl(%d|%d)" % (m, n) if n else "sl(%d)" % m
    notes = "contains the one-dimensional center" if m == n else ""
    sigma = {off_index[(i, j)]: (off_index[(j, i)], rat(1)) for i, j in offdiag}
    for r in range(N - 1):
        sigma[nb + r] = (nb + r, rat(1))
    return SuperAlgebra(
        name,
        names,
        parities,
        table,
        cartan_indices=cartan,
        form=form,
        splitter=splitter,
        weight_symbols=symbols,
        sigma_basis=sigma,
        notes=notes,
    )


# ----- queer-type families -----


def q(n):
    """q(n): pairs (A, B) with even part A and odd part B, odd trace form."""
    if n < 1:
        raise ValueError("need n >= 1")

    def xi(i, j):
        return i * n + j

    def yi(i, j):
        return n * n + i * n + j

    names = ["x%d%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
    names += ["y%d%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
    parities = [0] * (n * n) + [1] * (n * n)
    table = {}

    def put(a, b, comp):
        comp = {k: rat(c) for k, c in comp.items() if c != 0}
        if comp:
            table[(a, b)] = comp

    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    comp = {}
                    if j == k:
                        comp[xi(i, l)] = comp.get(xi(i, l), 0) + 1
                    if l == i:
                        comp[xi(k, j)] = comp.get(xi(k, j), 0) - 1
                    put(xi(i, j), xi(k, l), comp)
                    comp = {}
                    if j == k:
                        comp[yi(i, l)] = comp.get(yi(i, l), 0) + 1
                    if l == i:
                        comp[yi(k, j)] = comp.get(yi(k, j), 0) - 1
                    put(xi(i, j), yi(k, l), comp)
                    comp = {}
                    if j == k:
                        comp[yi(i, l)] = comp.get(yi(i, l), 0) + 1
                    if l == i:
                        comp[yi(k, j)] = comp.get(yi(k, j), 0) - 1
                    put(yi(i, j), xi(k, l), comp)
                    comp = {}
                    if j == k:
                        comp[xi(i, l)] = comp.get(xi(i, l), 0) + 1
                    if l == i:
                        comp[xi(k, j)] = comp.get(xi(k, j), 0) + 1
                    put(yi(i, j), yi(k, l), comp)
    form = {}
    for i in range(n):
        for j in range(n):
            form[(xi(i, j), yi(j, i))] = rat(1)
            form[(yi(j, i), xi(i, j))] = rat(1)
    cartan = [xi(i, i) for i in range(n)] + [yi(i, i) for i in range(n)]
    torus = [xi(i, i) for i in range(n)]
    splitter = {xi(i, i): rat(n - i) for i in range(n)}
    symbols = {}
    for i in range(n):
        w = [rat(0)] * n
        w[i] = rat(1)
        symbols["e%d" % (i + 1)] = tuple(w)
    for s in range(n - 1):
        w = [rat(0)] * n
        w[s] = rat(1)
        w[s + 1] = rat(-1)
        symbols["a%d" % (s + 1)] = tuple(w)
    if n == 2:
        symbols["a"] = symbols["a1"]
    sigma = {}
    for i in range(n):
        for j in range(n):
            sigma[xi(i, j)] = (xi(j, i), rat(1))
            sigma[yi(i, j)] = (yi(j, i), rat(1))
    return SuperAlgebra(
        "q(%d)" % n,
        names,
        parities,
        table,
        cartan_indices=cartan,
        torus_indices=torus,
        form=form,
        form_parity=1,
        splitter=splitter,
        weight_symbols=symbols,
        sigma_basis=sigma,
    )


def _make_decomposer(columns, parent_dim):
    # columns: list of dense parent vectors spanning the subspace
    k = len(columns)
    mat = [[columns[c][r] for c in range(k)] for r in range(parent_dim)]
    # gaussian elimination tracking original row indices, to find pivot rows
    probe = [(i, row[:]) for i, row in enumerate(mat)]
    pivot_rows = []
    col = 0
    r = 0
    while col < k and r < len(probe):
        sel = None
        for i in range(r, len(probe)):
            if probe[i][1][col] != 0:
                sel = i
                break
        if sel is None:
            raise ValueError("columns are not independent")
        probe[r], probe[sel] = probe[sel], probe[r]
        pivot_rows.append(probe[r][0])
        pv = probe[r][1][col]
        for i in range(len(probe)):
            if i != r and probe[i][1][col] != 0:
                f = probe[i][1][col] / pv
                probe[i] = (
                    probe[i][0],
                    [a - f * b for a, b in zip(probe[i][1], probe[r][1])],
                )
        r += 1
        col += 1
    square = [[mat[i][c] for c in range(k)] for i in pivot_rows]
    inv = invert_matrix(square)
    if inv is None:
        raise ValueError("internal: pivot rows are singular")

    def decompose(vec_dict):
        rhs = [vec_dict.get(i, rat(0)) for i in pivot_rows]
        coeffs = [
            sum((inv[r][c] * rhs[c] for c in range(k)), rat(0)) for r in range(k)
        ]
        # consistency: the combination must reproduce the full vector
        check = {}
        for c, a in enumerate(coeffs):
            if a == 0:
                continue
            for i, v in enumerate(columns[c]):
                if v != 0:
                    s = check.get(i, 0) + a * v
                    if s == 0:
                        check.pop(i, None)
                    else:
                        check[i] = s
        if check != {i: c for i, c in vec_dict.items() if c != 0}:
            raise ValueError("vector lies outside the spanned subspace")
        return {r: c for r, c in enumerate(coeffs) if c != 0}

    return decompose


def _sub_quotient_algebra(
    parent,
    elems,
    name,
    basis_names=None,
    project=None,
    cartan_positions=(),
    torus_positions=(),
    form=True,
    form_invariant=True,
    splitter=None,
    weight_symbols=None,
    cartan_var_names=None,
    sigma_basis=None,
    notes="",
):
    dense = []
    for e in elems:
        v = [rat(0)] * parent.dim
        for i, c in e.items():
            v[i] = rat(c)
        dense.append(v)
    decompose = _make_decomposer(dense, parent.dim)
    dim = len(elems)
    table = {}
    for a in range(dim):
        for b in range(dim):
            br = parent.bracket(elems[a], elems[b])
            if project is not None:
                br = project(br)
            comp = decompose(br)
            if comp:
                table[(a, b)] = comp
    names = list(basis_names) if basis_names else [parent.element_str(e) for e in elems]
    parities = [parent.element_parity(e) for e in elems]
    fdict = None
    if form and parent.form is not None:
        fdict = {}
        for a in range(dim):
            for b in range(dim):
                c = parent.form_apply(elems[a], elems[b])
                if c != 0:
                    fdict[(a, b)] = c
    return SuperAlgebra(
        name,
        names,
        parities,
        table,
        cartan_indices=tuple(cartan_positions),
        torus_indices=tuple(torus_positions),
        form=fdict,
        form_parity=parent.form_parity if fdict is not None else 0,
        form_invariant=form_invariant,
        splitter=splitter,
        weight_symbols=weight_symbols,
        cartan_var_names=cartan_var_names,
        sigma_basis=sigma_basis,
        notes=notes,
    )


def _queer_members(n, traceless_x, traceless_y):
    # ordered basis of the chosen section inside q(n)
    def xi(i, j):
        return i * n + j

    def yi(i, j):
        return n * n + i * n + j

    elems = []
    kinds = []  # ("x", i, j) style bookkeeping
    for i in range(n):
        for j in range(n):
            if i == j and traceless_x:
                continue
            elems.append({xi(i, j): rat(1)})
            kinds.append(("x", i, j))
    if traceless_x:
        for r in range(n - 1):
            elems.append({xi(r, r): rat(1), xi(r + 1, r + 1): rat(-1)})
            kinds.append(("xd", r, r))
    for i in range(n):
        for j in range(n):
            if i == j and traceless_y:
                continue
            elems.append({yi(i, j): rat(1)})
            kinds.append(("y", i, j))
    if traceless_y:
        for r in range(n - 1):
            elems.append({yi(r, r): rat(1), yi(r + 1, r + 1): rat(-1)})
            kinds.append(("yd", r, r))
    return elems, kinds


def _queer_family(n, traceless_x, traceless_y, project_x, name, form_invariant, notes=""):
    parent = q(n)
    elems, kinds = _queer_members(n, traceless_x, traceless_y)

    def xi(i, j):
        return i * n + j

    project = None
    if project_x:
        def project(br):
            tr = sum((br.get(xi(i, i), rat(0)) for i in range(n)), rat(0))
            if tr == 0:
                return br
            out = dict(br)
            shift = tr / n
            for i in range(n):
                s = out.get(xi(i, i), 0) - shift
                if s == 0:
                    out.pop(xi(i, i), None)
                else:
                    out[xi(i, i)] = s
            return out

    cartan_positions = [
        p for p, k in enumerate(kinds)
        if (k[0] in ("x", "y") and k[1] == k[2]) or k[0] in ("xd", "yd")
    ]
    torus_positions = [
        p for p, k in enumerate(kinds) if (k[0] == "x" and k[1] == k[2]) or k[0] == "xd"
    ]
    ntorus = len(torus_positions)
    if traceless_x:
        # splitting diagonal c_i = (n - i) - mean, realized on differences
        mean = sum((rat(n - i) for i in range(n)), rat(0)) / n
        c = [rat(n - i) - mean for i in range(n)]
        splitter = {}
        for r in range(n - 1):
            a = sum(c[: r + 1], rat(0))
            if a != 0:
                splitter[torus_positions[r]] = a
        symbols = {}
        for i in range(n):
            symbols["e%d" % (i + 1)] = tuple(
                rat((1 if i == r else 0) - (1 if i == r + 1 else 0))
                for r in range(n - 1)
            )
        for s in range(n - 1):
            e_s = symbols["e%d" % (s + 1)]
            e_t = symbols["e%d" % (s + 2)]
            symbols["a%d" % (s + 1)] = tuple(a - b for a, b in zip(e_s, e_t))
        if n == 2:
            symbols["a"] = symbols["a1"]
    else:
        splitter = {torus_positions[i]: rat(n - i) for i in range(n)}
        symbols = {}
        for i in range(n):
            w = [rat(0)] * ntorus
            w[i] = rat(1)
            symbols["e%d" % (i + 1)] = tuple(w)
        for s in range(n - 1):
            w = [rat(0)] * ntorus
            w[s] = rat(1)
            w[s + 1] = rat(-1)
            symbols["a%d" % (s + 1)] = tuple(w)
        if n == 2:
            symbols["a"] = symbols["a1"]
    basis_names = []
    for k in kinds:
        if k[0] == "x" or k[0] == "y":
            basis_names.append("%s%d%d" % (k[0], k[1] + 1, k[2] + 1))
        else:
            basis_names.append("%s%d" % (k[0], k[1] + 1))
    pos_of = {k: p for p, k in enumerate(kinds)}
    sigma = {}
    for p, k in enumerate(kinds):
        if k[0] in ("x", "y"):
            sigma[p] = (pos_of[(k[0], k[2], k[1])], rat(1))
        else:
            sigma[p] = (p, rat(1))
    return _sub_quotient_algebra(
        parent,
        elems,
        name,
        basis_names=basis_names,
        project=project,
        cartan_positions=cartan_positions,
        torus_positions=torus_positions,
        form_invariant=form_invariant,
        splitter=splitter or None,
        weight_symbols=symbols,
        sigma_basis=sigma,
        notes=notes,
    )


def sq(n):
    """sq(n): the subalgebra of q(n) with traceless odd part."""
    if n < 2:
        raise ValueError("need n >= 2")
    return _queer_family(
        n, False, True, False, "sq(%d)" % n, True,
        notes="the form is degenerate: the even identity is in its radical",
    )


def pq(n):
    """pq(n): q(n) modulo its center, on the traceless-even-part section.

    No invariant form descends to this quotient; the section pairing carried
    here is odd and supersymmetric but degenerate and not invariant.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    return _queer_family(
        n, True, False, True, "pq(%d)" % n, False,
        notes="section pairing only: degenerate, not invariant",
    )


def psq(n):
    """psq(n): sq(n) modulo the center, with the descended odd form."""
    if n < 2:
        raise ValueError("need n >= 2")
    return _queer_family(n, True, True, True, "psq(%d)" % n, True)


# ----- direct sums -----


def direct_sum(a, b, name=None):
    """Direct sum with block bracket and block form (when parities agree)."""
    names = [s + "@1" for s in a.basis_names] + [s + "@2" for s in b.basis_names]
    off = a.dim
    parities = list(a.parities) + list(b.parities)
    table = {}
    for (i, j), comp in a.table.items():
        table[(i, j)] = dict(comp)
    for (i, j), comp in b.table.items():
        table[(i + off, j + off)] = {k + off: c for k, c in comp.items()}
    form = None
    form_parity = 0
    form_invariant = True
    if a.form is not None and b.form is not None and a.form_parity == b.form_parity:
        form = {}
        for (i, j), c in a.form.items():
            form[(i, j)] = c
        for (i, j), c in b.form.items():
            form[(i + off, j + off)] = c
        form_parity = a.form_parity
        form_invariant = a.form_invariant and b.form_invariant
    cartan = list(a.cartan_indices) + [i + off for i in b.cartan_indices]
    torus = list(a.torus_indices) + [i + off for i in b.torus_indices]
    splitter = None
    if a.splitter is not None and b.splitter is not None:
        splitter = dict(a.splitter)
        for i, c in b.splitter.items():
            splitter[i + off] = c
    na, nb = len(a.torus_indices), len(b.torus_indices)
    symbols = {}
    for s, w in a.weight_symbols.items():
        symbols[s + "@1"] = tuple(w) + (rat(0),) * nb
    for s, w in b.weight_symbols.items():
        symbols[s + "@2"] = (rat(0),) * na + tuple(w)
    var_names = {}
    for i, v in a.cartan_var_names.items():
        var_names[i] = v + "@1"
    for i, v in b.cartan_var_names.items():
        var_names[i + off] = v + "@2"
    sigma = None
    if a.sigma_basis is not None and b.sigma_basis is not None:
        sigma = dict(a.sigma_basis)
        for i, (j, s) in b.sigma_basis.items():
            sigma[i + off] = (j + off, s)
    return SuperAlgebra(
        name or "%s+%s" % (a.name, b.name),
        names,
        parities,
        table,
        cartan_indices=cartan,
        torus_indices=torus,
        form=form,
        form_parity=form_parity,
        form_invariant=form_invariant,
        splitter=splitter,
        weight_symbols=symbols,
        cartan_var_names=var_names,
        sigma_basis=sigma,
    )
