"""Grassmann algebras over the rationals.

Elements are dicts from bitmasks to coefficients: bit i set means generator i
is present, and the basis monomial for a mask is the product of its
generators in increasing index order.  Two coordinate presentations are
supported for m generators:

  "theta"  generators th1 .. thm, bracket {f, g} = (-1)^p(f) sum_j d_j f d_j g
  "xi"     generators x1, e1, x2, e2, ... (pairs), with a trailing "th" when
           m is odd; the bracket pairs d_{xi} with d_{ei} (hyperbolic form)
           and d_th with itself.

Both brackets make the algebra a Lie superalgebra under its associative
product; quotients of it by scalars give the hamiltonian families elsewhere
in the package.
"""

from .rat import rat


def _merge_sign(a, b):
    # sign of sorting the concatenation (ascending a-word, ascending b-word)
    # into one ascending word; masks must be disjoint
    flips = 0
    t = b
    while t:
        j = (t & -t).bit_length() - 1
        flips += bin(a >> (j + 1)).count("1")
        t &= t - 1
    return -1 if flips & 1 else 1


class Grassmann:
    """The Grassmann algebra on m anticommuting generators."""

    def __init__(self, m, presentation="theta"):
        if m < 0:
            raise ValueError("need m >= 0 generators")
        if presentation not in ("theta", "xi"):
            raise ValueError("presentation must be 'theta' or 'xi'")
        self.m = m
        self.presentation = presentation
        if presentation == "theta":
            self.names = tuple("th%d" % (i + 1) for i in range(m))
        else:
            names = []
            for i in range(m // 2):
                names.append("x%d" % (i + 1))
                names.append("e%d" % (i + 1))
            if m % 2:
                names.append("th")
            self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(self.names)}
        # derivative pairings defining the bracket
        if presentation == "theta":
            self._pairs = tuple((j, j) for j in range(m))
        else:
            pairs = []
            for i in range(m // 2):
                pairs.append((2 * i, 2 * i + 1))
                pairs.append((2 * i + 1, 2 * i))
            if m % 2:
                pairs.append((m - 1, m - 1))
            self._pairs = tuple(pairs)

    def zero(self):
        return GrassmannElement(self, {})

    def one(self):
        return GrassmannElement(self, {0: rat(1)})

    def monomial(self, mask, coeff=1):
        if mask < 0 or mask >> self.m:
            raise ValueError("mask out of range")
        return GrassmannElement(self, {mask: rat(coeff)})

    def gen(self, i):
        """Generator number i (0-based)."""
        return self.monomial(1 << i)

    def gen_named(self, name):
        return self.gen(self._index[name])

    def basis_masks(self):
        return range(1 << self.m)

    def poisson(self, f, g):
        """The bracket; bilinear, computed on parity-homogeneous pieces."""
        if f.alg is not self or g.alg is not self:
            raise ValueError("elements belong to a different algebra")
        out = self.zero()
        for fp in f.split_parity():
            if not fp.terms:
                continue
            sgn = -1 if fp.parity() else 1
            for gp in g.split_parity():
                if not gp.terms:
                    continue
                acc = self.zero()
                for a, b in self._pairs:
                    acc = acc + fp.partial(a) * gp.partial(b)
                out = out + sgn * acc
        return out

    def parse(self, text):
        """Parse '3*x1*e1 - 1/2*th + 2' into an element."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty expression")
        # split into signed chunks
        chunks = []
        start = 0
        for i, ch in enumerate(s):
            if ch in "+-" and i > start:
                chunks.append(s[start:i])
                start = i
            elif ch in "+-" and i == start and i > 0:
                # consecutive signs are malformed
                raise ValueError("malformed expression: %r" % text)
        chunks.append(s[start:])
        total = self.zero()
        for chunk in chunks:
            sign = 1
            if chunk.startswith("-"):
                sign = -1
                chunk = chunk[1:]
            elif chunk.startswith("+"):
                chunk = chunk[1:]
            if not chunk:
                raise ValueError("malformed expression: %r" % text)
            term = self.one() * sign
            for factor in chunk.split("*"):
                base, _, exp = factor.partition("^")
                exp = int(exp) if exp else 1
                if base in self._index:
                    piece = self.gen(self._index[base])
                else:
                    try:
                        piece = self.one() * rat(base)
                    except (ValueError, TypeError):
                        raise ValueError("unknown factor %r in %r" % (base, text))
                for _ in range(exp):
                    term = term * piece
            total = total + term
        return total

    def mask_name(self, mask):
        if mask == 0:
            return "1"
        parts = [self.names[i] for i in range(self.m) if mask & (1 << i)]
        return "*".join(parts)

    def __repr__(self):
        return "Grassmann(%d, %r)" % (self.m, self.presentation)


class GrassmannElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c != 0}

    def coeff(self, mask):
        return self.terms.get(mask, rat(0))

    def is_zero(self):
        return not self.terms

    def parity(self):
        """0 or 1 for homogeneous elements; ValueError when mixed."""
        ps = {bin(m).count("1") & 1 for m in self.terms}
        if len(ps) > 1:
            raise ValueError("element has mixed parity")
        return ps.pop() if ps else 0

    def split_parity(self):
        """(even part, odd part)."""
        ev, od = {}, {}
        for m, c in self.terms.items():
            (od if bin(m).count("1") & 1 else ev)[m] = c
        return GrassmannElement(self.alg, ev), GrassmannElement(self.alg, od)

    def degree(self):
        """Highest number of generators in any term; -1 for zero."""
        if not self.terms:
            return -1
        return max(bin(m).count("1") for m in self.terms)

    def partial(self, j):
        """Left derivative with respect to generator j."""
        out = {}
        bit = 1 << j
        for m, c in self.terms.items():
            if not m & bit:
                continue
            below = bin(m & (bit - 1)).count("1")
            s = -c if below & 1 else c
            key = m ^ bit
            prev = out.get(key, 0) + s
            if prev == 0:
                out.pop(key, None)
            else:
                out[key] = prev
        return GrassmannElement(self.alg, out)

    def berezin(self):
        """Coefficient of the full monomial (all generators, ascending order)."""
        return self.coeff((1 << self.alg.m) - 1)

    def __add__(self, other):
        if isinstance(other, GrassmannElement):
            if other.alg is not self.alg:
                raise ValueError("elements belong to different algebras")
            out = dict(self.terms)
            for m, c in other.terms.items():
                s = out.get(m, 0) + c
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
            return GrassmannElement(self.alg, out)
        return self + self.alg.one() * rat(other)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, GrassmannElement) else -rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            if other.alg is not self.alg:
                raise ValueError("elements belong to different algebras")
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    if m1 & m2:
                        continue
                    m = m1 | m2
                    c = c1 * c2 * _merge_sign(m1, m2)
                    s = out.get(m, 0) + c
                    if s == 0:
                        out.pop(m, None)
                    else:
                        out[m] = s
            return GrassmannElement(self.alg, out)
        c = rat(other)
        return GrassmannElement(self.alg, {m: k * c for m, k in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            return self.alg is other.alg and self.terms == other.terms
        try:
            c = rat(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({0: c} if c != 0 else {})

    __hash__ = None

    def mask_name(self, mask):
        return self.alg.mask_name(mask)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m in sorted(self.terms, key=lambda m: (bin(m).count("1"), m)):
            c = self.terms[m]
            name = self.mask_name(m)
            if m == 0:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(name)
            elif c == -1:
                pieces.append("-" + name)
            else:
                pieces.append("%s*%s" % (c, name))
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return "<%s>" % self
