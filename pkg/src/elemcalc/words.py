"""Symbolic generator alphabet and words over it.

Four letter kinds: linear elementary matrices, symplectic elementary
matrices, and the two transvection families (row type and column type)
relative to an alternating form. Words are ordered products of letters
with inversion flags; evaluation is exact and exploits the fact that
an elementary letter only touches one or two columns.

The coordinate pairing sigma swaps 2i-1 <-> 2i. A symplectic letter
se_ij(z) is a single off-diagonal entry when i = sigma(j) and a
symmetric pair of entries otherwise; the same matrix also equals
se_{sigma(j) sigma(i)}(-(-1)^(i+j) z), which normalization exploits.
"""

from __future__ import annotations

from .errors import BadIndices, NotAlternating, SideConditionViolated
from .matrices import (
    ColumnVector,
    ExactMatrix,
    adjugate_inverse,
    basis_vector,
    col_times_row,
    from_rows,
    identity,
    is_alternating,
    sigma_index,
    standard_symplectic_form,
    zero_vector,
)

sigma = sigma_index


def make_linear_generator(ring, n, i, j, lam):
    """Identity plus lam at position (i, j), i != j."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise BadIndices("bad linear generator indices (%d, %d) at size %d"
                         % (i, j, n))
    m = identity(ring, n).payload_grid()
    m[i - 1][j - 1] = ring.el(lam).payload
    return ExactMatrix(ring, n, n, [ring.wrap(p) for row in m for p in row])


def symplectic_entry_pattern(i, j):
    """Cells of se_ij as ((row, col, sign), ...); sign multiplies z."""
    if i == sigma(j):
        return ((i, j, 1),)
    s2 = -1 if (i + j) % 2 == 0 else 1
    return ((i, j, 1), (sigma(j), sigma(i), s2))


def make_symplectic_generator(ring, n, i, j, z):
    """The symplectic elementary matrix of size 2n; checked symplectic."""
    if not (1 <= i <= 2 * n and 1 <= j <= 2 * n) or i == j:
        raise BadIndices("bad symplectic generator indices (%d, %d) at size %d"
                         % (i, j, 2 * n))
    z = ring.el(z)
    m = identity(ring, 2 * n).payload_grid()
    for r, c, sg in symplectic_entry_pattern(i, j):
        val = z if sg == 1 else -z
        m[r - 1][c - 1] = ring.p_add(m[r - 1][c - 1], val.payload)
    out = ExactMatrix(ring, 2 * n, 2 * n,
                      [ring.wrap(p) for row in m for p in row])
    from .matrices import is_symplectic
    if not is_symplectic(out):
        raise NotAlternating("symplectic generator failed its form check")
    return out


def normalize_symplectic_indices(i, j, param):
    """Prefer the equivalent presentation with an index equal to 1 or 2.

    se_ij(z) = se_{sigma(j) sigma(i)}(-(-1)^(i+j) z) as matrices; choose
    the variant whose index pair is lexicographically smaller, which in
    particular picks an index-1 form whenever one exists.
    """
    alt = (sigma(j), sigma(i))
    if alt < (i, j):
        if (i + j) % 2 == 1:
            return alt[0], alt[1], param
        return alt[0], alt[1], -param
    return i, j, param


class LinLetter:
    """Linear elementary generator E_ij(param) at matrix size n."""

    kind = "E"
    __slots__ = ("size", "i", "j", "param", "cert")
    __hash__ = None

    def __init__(self, size, i, j, param, cert=None):
        if not (1 <= i <= size and 1 <= j <= size) or i == j:
            raise BadIndices("bad letter indices (%d, %d) at size %d"
                             % (i, j, size))
        if cert is not None and cert.value != param:
            raise BadIndices("certificate value does not match parameter")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "param", param)
        object.__setattr__(self, "cert", cert)

    def __setattr__(self, name, value):
        raise AttributeError("letters are immutable")

    @property
    def ring(self):
        return self.param.ring

    def column_ops(self, inverted=False):
        p = -self.param if inverted else self.param
        return ((self.i, self.j, p),)

    def matrix(self, inverted=False):
        p = -self.param if inverted else self.param
        return make_linear_generator(self.ring, self.size, self.i, self.j, p)

    def inverse(self):
        c = -self.cert if self.cert is not None else None
        return LinLetter(self.size, self.i, self.j, -self.param, c)

    def with_param(self, param, cert=None):
        return LinLetter(self.size, self.i, self.j, param, cert)

    def is_index1(self):
        return self.i == 1 or self.j == 1

    def __repr__(self):
        return "E[%d,%d](%r)" % (self.i, self.j, self.param)


class SympLetter:
    """Symplectic elementary generator se_ij(param) at even size."""

    kind = "se"
    __slots__ = ("size", "i", "j", "param", "cert")
    __hash__ = None

    def __init__(self, size, i, j, param, cert=None):
        if size % 2 != 0:
            raise BadIndices("symplectic letters need an even size")
        if not (1 <= i <= size and 1 <= j <= size) or i == j:
            raise BadIndices("bad letter indices (%d, %d) at size %d"
                             % (i, j, size))
        if cert is not None and cert.value != param:
            raise BadIndices("certificate value does not match parameter")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "param", param)
        object.__setattr__(self, "cert", cert)

    def __setattr__(self, name, value):
        raise AttributeError("letters are immutable")

    @property
    def ring(self):
        return self.param.ring

    def column_ops(self, inverted=False):
        p = -self.param if inverted else self.param
        ops = []
        for r, c, sg in symplectic_entry_pattern(self.i, self.j):
            ops.append((r, c, p if sg == 1 else -p))
        return tuple(ops)

    def matrix(self, inverted=False):
        p = -self.param if inverted else self.param
        return make_symplectic_generator(self.ring, self.size // 2,
                                         self.i, self.j, p)

    def inverse(self):
        c = -self.cert if self.cert is not None else None
        return SympLetter(self.size, self.i, self.j, -self.param, c)

    def with_param(self, param, cert=None):
        return SympLetter(self.size, self.i, self.j, param, cert)

    def is_index1(self):
        # se_ij touches index 1 up to sigma iff some index lies in the
        # first coordinate pair: sigma maps 2 to 1 under the swap.
        return self.i in (1, 2) or self.j in (1, 2)

    def normalized(self):
        """Equivalent letter with lexicographically smallest index pair."""
        ni, nj, np_ = normalize_symplectic_indices(self.i, self.j, self.param)
        if (ni, nj) == (self.i, self.j):
            return self
        cert = self.cert
        if cert is not None and np_ != self.param:
            cert = -cert
        return SympLetter(self.size, ni, nj, np_, cert)

    def __repr__(self):
        return "se[%d,%d](%r)" % (self.i, self.j, self.param)


def _transvection_blocks(ring, q, scalar, form, row_kind):
    """Common block assembly for the two transvection letter kinds."""
    n2 = q.length
    size = n2 + 2
    grid = identity(ring, size).payload_grid()
    qf = [ring.zero] * n2
    for ell in range(n2):
        acc = ring.zero
        for k in range(n2):
            acc = acc + q.entry(k + 1) * form.entry(k + 1, ell + 1)
        qf[ell] = acc
    if row_kind:
        grid[1][0] = (-scalar).payload
        for ell in range(n2):
            grid[1][2 + ell] = qf[ell].payload
            grid[2 + ell][0] = (-q.entry(ell + 1)).payload
    else:
        grid[0][1] = scalar.payload
        for ell in range(n2):
            grid[0][2 + ell] = (-qf[ell]).payload
            grid[2 + ell][1] = (-q.entry(ell + 1)).payload
    return ExactMatrix(ring, size, size,
                       [ring.wrap(p) for row in grid for p in row])


class RhoLetter:
    """Row-type transvection relative to an alternating form."""

    kind = "rho"
    __slots__ = ("q", "alpha", "form", "certs", "size")
    __hash__ = None

    def __init__(self, q, alpha, form, certs=None):
        if not is_alternating(form) or form.rows != q.length:
            raise NotAlternating("transvection letters need an alternating "
                                 "form matching the vector length")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "alpha", q.ring.el(alpha))
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "certs", certs)
        object.__setattr__(self, "size", q.length + 2)

    def __setattr__(self, name, value):
        raise AttributeError("letters are immutable")

    @property
    def ring(self):
        return self.q.ring

    def column_ops(self, inverted=False):
        return None

    def matrix(self, inverted=False):
        m = _transvection_blocks(self.ring, self.q, self.alpha, self.form, True)
        if inverted:
            return adjugate_inverse(m)
        return m

    def __repr__(self):
        return "rho(%r, %r)" % (self.q, self.alpha)


class MuLetter:
    """Column-type transvection relative to an alternating form."""

    kind = "mu"
    __slots__ = ("q", "beta", "form", "certs", "size")
    __hash__ = None

    def __init__(self, q, beta, form, certs=None):
        if not is_alternating(form) or form.rows != q.length:
            raise NotAlternating("transvection letters need an alternating "
                                 "form matching the vector length")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "beta", q.ring.el(beta))
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "certs", certs)
        object.__setattr__(self, "size", q.length + 2)

    def __setattr__(self, name, value):
        raise AttributeError("letters are immutable")

    @property
    def ring(self):
        return self.q.ring

    def column_ops(self, inverted=False):
        return None

    def matrix(self, inverted=False):
        m = _transvection_blocks(self.ring, self.q, self.beta, self.form, False)
        if inverted:
            return adjugate_inverse(m)
        return m

    def __repr__(self):
        return "mu(%r, %r)" % (self.q, self.beta)


class Word:
    """Ordered product of letters, each with an inversion flag."""

    __slots__ = ("ring", "size", "letters")
    __hash__ = None

    def __init__(self, ring, size, letters=()):
        letters = tuple(letters)
        for letter, inv in letters:
            if letter.size != size:
                raise BadIndices("letter size %d in word of size %d"
                                 % (letter.size, size))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("words are immutable")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        if isinstance(other, Word):
            if other.size != self.size or other.ring != self.ring:
                raise BadIndices("cannot concatenate words of different shape")
            return Word(self.ring, self.size, self.letters + other.letters)
        return NotImplemented

    def append(self, letter, inverted=False):
        return Word(self.ring, self.size,
                    self.letters + ((letter, inverted),))

    def __iter__(self):
        return iter(self.letters)

    def __repr__(self):
        parts = []
        for letter, inv in self.letters:
            parts.append(repr(letter) + ("^-1" if inv else ""))
        return " . ".join(parts) if parts else "1"


def word(ring, size, *letters):
    """Convenience constructor; bare letters mean uninverted."""
    out = []
    for item in letters:
        if isinstance(item, tuple):
            out.append(item)
        else:
            out.append((item, False))
    return Word(ring, size, out)


def evaluate(w):
    """Exact ordered product of a word's letters."""
    ring = w.ring
    n = w.size
    grid = identity(ring, n).payload_grid()
    p_add, p_mul, p_is_zero = ring.p_add, ring.p_mul, ring.p_is_zero
    for letter, inv in w.letters:
        ops = letter.column_ops(inv)
        if ops is None:
            m = letter.matrix(inv).payload_grid()
            new = []
            for r in range(n):
                grow = grid[r]
                acc = [ring.from_int(0)] * n
                for t in range(n):
                    g = grow[t]
                    if p_is_zero(g):
                        continue
                    mrow = m[t]
                    for c in range(n):
                        if not p_is_zero(mrow[c]):
                            acc[c] = p_add(acc[c], p_mul(g, mrow[c]))
                new.append(acc)
            grid = new
            continue
        for src, dst, coeff in ops:
            cp = coeff.payload
            if p_is_zero(cp):
                continue
            s, d = src - 1, dst - 1
            for r in range(n):
                gs = grid[r][s]
                if not p_is_zero(gs):
                    grid[r][d] = p_add(grid[r][d], p_mul(gs, cp))
    return ExactMatrix(ring, n, n,
                       [ring.wrap(p) for row in grid for p in row])


def invert_word(w):
    """Reverse the word and flip every inversion flag."""
    return Word(w.ring, w.size,
                tuple((letter, not inv) for letter, inv in reversed(w.letters)))


def conjugate_word(g, w):
    """The word g . w . g^-1."""
    return g * w * invert_word(g)


def commutator_word(a, b):
    """The word a . b . a^-1 . b^-1."""
    return a * b * invert_word(a) * invert_word(b)


def _letter_certified(letter, ideal):
    cert = letter.cert
    if cert is None:
        return False
    if cert.ideal != ideal:
        return False
    return cert.check() and cert.value == letter.param


def word_in_E1(w, ideal):
    """All letters linear, index-1, and certified in the given ideal."""
    for letter, inv in w.letters:
        if letter.kind != "E":
            return False
        if not (letter.i == 1 or letter.j == 1):
            return False
        if not _letter_certified(letter, ideal):
            return False
    return True


def word_in_ESp1(w, ideal):
    """All letters symplectic, index-1 up to the sigma identification,
    and certified in the given ideal."""
    for letter, inv in w.letters:
        if letter.kind != "se":
            return False
        if not letter.is_index1():
            return False
        if not _letter_certified(letter, ideal):
            return False
    return True


def word_certified(w, ideal=None):
    """Every letter carries a valid certificate (optionally over ideal)."""
    for letter, inv in w.letters:
        cert = letter.cert
        if cert is None:
            return False
        if ideal is not None and cert.ideal != ideal:
            return False
        if not (cert.check() and cert.value == letter.param):
            return False
    return True


def expand_rho(q, alpha, alpha_cert=None, q_certs=None, form=None):
    """Word of symplectic letters equal to the row-type transvection.

    q has even length 2n; the word lives at size 2n + 2. When the
    optional certificates are supplied they propagate to every letter.
    The expansion is only valid for the standard form.
    """
    ring = q.ring
    n2 = q.length
    if n2 % 2 != 0:
        raise BadIndices("transvection vector length must be even")
    if form is not None and form != standard_symplectic_form(ring, n2 // 2):
        from .errors import NonstandardForm
        raise NonstandardForm("expansion requires the standard form")
    size = n2 + 2
    alpha = ring.el(alpha)
    head = -alpha
    head_cert = None if alpha_cert is None else -alpha_cert
    for k in range(1, n2 // 2 + 1):
        head = head + q.entry(2 * k - 1) * q.entry(2 * k)
        if head_cert is not None:
            head_cert = head_cert + q_certs[2 * k - 1].scale(q.entry(2 * k - 1))
    letters = []
    if not head.is_zero():
        letters.append((SympLetter(size, 2, 1, head, head_cert), False))
    for i in range(3, size + 1):
        p = -q.entry(i - 2)
        if p.is_zero():
            continue
        c = None if q_certs is None else -q_certs[i - 3]
        letters.append((SympLetter(size, i, 1, p, c), False))
    return Word(ring, size, letters)


def expand_mu(q, beta, beta_cert=None, q_certs=None, form=None):
    """Word of symplectic letters equal to the column-type transvection."""
    ring = q.ring
    n2 = q.length
    if n2 % 2 != 0:
        raise BadIndices("transvection vector length must be even")
    if form is not None and form != standard_symplectic_form(ring, n2 // 2):
        from .errors import NonstandardForm
        raise NonstandardForm("expansion requires the standard form")
    size = n2 + 2
    beta = ring.el(beta)
    head = ring.el(beta)
    head_cert = beta_cert
    for k in range(1, n2 // 2 + 1):
        head = head + q.entry(2 * k - 1) * q.entry(2 * k)
        if head_cert is not None:
            head_cert = head_cert + q_certs[2 * k - 1].scale(q.entry(2 * k - 1))
    letters = []
    if not head.is_zero():
        letters.append((SympLetter(size, 1, 2, head, head_cert), False))
    for i in range(3, size + 1):
        sgn = 1 if (i + 1) % 2 == 0 else -1
        qv = q.entry(sigma(i - 2))
        p = qv if sgn == 1 else -qv
        if p.is_zero():
            continue
        c = None
        if q_certs is not None:
            c = q_certs[sigma(i - 2) - 1]
            if sgn == -1:
                c = -c
        letters.append((SympLetter(size, 1, i, p, c), False))
    return Word(ring, size, letters)


_LINEAR_TAG = "linear"
_LONG_TAG = "symplectic-long"
_SHORT_TAG = "symplectic-short"
_MIXED_TAG = "symplectic-mixed"
_DISJOINT_TAG = "symplectic-disjoint"

RELATION_TAGS = (_LINEAR_TAG, _LONG_TAG, _SHORT_TAG, _MIXED_TAG, _DISJOINT_TAG)


def check_relation(tag, ring, n, indices, a, b):
    """Exact two-sided check of one commutator relation family.

    indices supplies the free indices of the family: (i, j, k) for the
    linear, long and short families, (i, j) for the mixed family, and
    (i, j, k, l) for the disjointness family. Side conditions are
    enforced and violations raise SideConditionViolated.
    """
    a = ring.el(a)
    b = ring.el(b)
    if tag == _LINEAR_TAG:
        i, j, k = indices
        if len({i, j, k}) != 3:
            raise SideConditionViolated("linear relation needs distinct indices")
        A = LinLetter(n, i, j, a)
        B = LinLetter(n, j, k, b)
        lhs = evaluate(commutator_word(word(ring, n, A), word(ring, n, B)))
        rhs = evaluate(word(ring, n, LinLetter(n, i, k, a * b)))
        return lhs == rhs
    size = 2 * n
    if tag == _LONG_TAG:
        i, j, k = indices
        if i == j or i == sigma(j):
            raise SideConditionViolated("need i distinct from j and sigma(j)")
        if k in (sigma(i), sigma(j), i, j):
            raise SideConditionViolated("need k clear of i, j and their partners")
        A = SympLetter(size, i, k, a)
        B = SympLetter(size, k, j, b)
        lhs = evaluate(commutator_word(word(ring, size, A), word(ring, size, B)))
        rhs = evaluate(word(ring, size, SympLetter(size, i, j, a * b)))
        return lhs == rhs
    if tag == _SHORT_TAG:
        i, j, k = indices
        if j != sigma(i):
            raise SideConditionViolated("short family needs j = sigma(i)")
        if k in (i, sigma(i)):
            raise SideConditionViolated("need k clear of i and sigma(i)")
        A = SympLetter(size, i, k, a)
        B = SympLetter(size, k, sigma(i), b)
        lhs = evaluate(commutator_word(word(ring, size, A), word(ring, size, B)))
        rhs = evaluate(word(ring, size, SympLetter(size, i, sigma(i), 2 * a * b)))
        return lhs == rhs
    if tag == _MIXED_TAG:
        i, j = indices[:2]
        if i == j or i == sigma(j):
            raise SideConditionViolated("need i distinct from j and sigma(j)")
        A = SympLetter(size, i, sigma(i), a)
        B = SympLetter(size, sigma(i), j, b)
        lhs = evaluate(commutator_word(word(ring, size, A), word(ring, size, B)))
        sgn = 1 if (i + j) % 2 == 0 else -1
        corr = a * b * b if sgn == 1 else -(a * b * b)
        rhs = evaluate(word(ring, size,
                            SympLetter(size, i, j, a * b),
                            SympLetter(size, sigma(j), j, corr)))
        return lhs == rhs
    if tag == _DISJOINT_TAG:
        i, j, k, l = indices
        if i == j or k == l:
            raise SideConditionViolated("degenerate letters")
        if i in (l, sigma(k)) or j in (k, sigma(l)):
            raise SideConditionViolated("supports are not disjoint")
        A = SympLetter(size, i, j, a)
        B = SympLetter(size, k, l, b)
        lhs = evaluate(commutator_word(word(ring, size, A), word(ring, size, B)))
        return lhs.is_identity()
    raise SideConditionViolated("unknown relation tag %r" % (tag,))
