"""Dense exact matrices and column vectors over any tower ring.

Everything here is immutable and index-1-based in the public API,
matching the algebraic conventions of the rest of the package.
Internal storage is 0-based row-major.
"""

from __future__ import annotations

from .errors import (
    CertificateInvalid,
    NotAlternating,
    NotInKernel,
    OddDimension,
)


class ExactMatrix:
    """Immutable dense matrix; entries share one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")
    __hash__ = None

    def __init__(self, ring, rows, cols, entries):
        entries = tuple(ring.el(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    def entry(self, i, j):
        """Entry at row i, column j (1-based)."""
        return self.entries[(i - 1) * self.cols + (j - 1)]

    def row_list(self, i):
        base = (i - 1) * self.cols
        return list(self.entries[base:base + self.cols])

    def col_list(self, j):
        return [self.entries[r * self.cols + (j - 1)] for r in range(self.rows)]

    def column(self, j):
        return ColumnVector(self.ring, self.col_list(j))

    def row_vector(self, i):
        return ExactMatrix(self.ring, 1, self.cols, self.row_list(i))

    def payload_grid(self):
        c = self.cols
        return [[e.payload for e in self.entries[r * c:(r + 1) * c]]
                for r in range(self.rows)]

    def __add__(self, other):
        self._shape_check(other)
        ring = self.ring
        ents = [ring.wrap(ring.p_add(a.payload, b.payload))
                for a, b in zip(self.entries, other.entries)]
        return ExactMatrix(ring, self.rows, self.cols, ents)

    def __sub__(self, other):
        self._shape_check(other)
        ring = self.ring
        ents = [ring.wrap(ring.p_sub(a.payload, b.payload))
                for a, b in zip(self.entries, other.entries)]
        return ExactMatrix(ring, self.rows, self.cols, ents)

    def __neg__(self):
        ring = self.ring
        return ExactMatrix(ring, self.rows, self.cols,
                           [ring.wrap(ring.p_neg(e.payload)) for e in self.entries])

    def _shape_check(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __mul__(self, other):
        if isinstance(other, ColumnVector):
            return self.apply(other)
        if not isinstance(other, ExactMatrix):
            ring = self.ring
            s = ring.el(other)
            return ExactMatrix(ring, self.rows, self.cols,
                               [e * s for e in self.entries])
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        ring = self.ring
        p_add, p_mul, p_is_zero = ring.p_add, ring.p_mul, ring.p_is_zero
        zero = ring.from_int(0)
        a = self.payload_grid()
        b = other.payload_grid()
        n, k, m = self.rows, self.cols, other.cols
        out = []
        for r in range(n):
            arow = a[r]
            acc = [zero] * m
            for t in range(k):
                art = arow[t]
                if p_is_zero(art):
                    continue
                brow = b[t]
                for c in range(m):
                    btc = brow[c]
                    if p_is_zero(btc):
                        continue
                    acc[c] = p_add(acc[c], p_mul(art, btc))
            out.extend(acc)
        return ExactMatrix(ring, n, m, [ring.wrap(p) for p in out])

    def __rmul__(self, other):
        ring = self.ring
        s = ring.el(other)
        return ExactMatrix(ring, self.rows, self.cols,
                           [s * e for e in self.entries])

    def apply(self, v):
        """Matrix times column vector."""
        if self.cols != v.length:
            raise ValueError("inner dimension mismatch")
        ring = self.ring
        out = []
        for r in range(1, self.rows + 1):
            acc = ring.zero
            for t, ve in enumerate(v.entries):
                acc = acc + self.entry(r, t + 1) * ve
            out.append(acc)
        return ColumnVector(ring, out)

    def transpose(self):
        ring = self.ring
        ents = [self.entries[r * self.cols + c]
                for c in range(self.cols) for r in range(self.rows)]
        return ExactMatrix(ring, self.cols, self.rows, ents)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        if self.ring != other.ring:
            return False
        p_eq = self.ring.p_eq
        return all(p_eq(a.payload, b.payload)
                   for a, b in zip(self.entries, other.entries))

    def is_identity(self):
        if self.rows != self.cols:
            return False
        return self == identity(self.ring, self.rows)

    def first_mismatch(self, other):
        """First differing position as (row, col, self entry, other entry)."""
        for i in range(1, self.rows + 1):
            for j in range(1, self.cols + 1):
                if self.entry(i, j) != other.entry(i, j):
                    return (i, j, self.entry(i, j), other.entry(i, j))
        return None

    def delete_row_col(self, i, j):
        """Matrix with row i and column j removed (1-based)."""
        ents = []
        for r in range(1, self.rows + 1):
            if r == i:
                continue
            for c in range(1, self.cols + 1):
                if c == j:
                    continue
                ents.append(self.entry(r, c))
        return ExactMatrix(self.ring, self.rows - 1, self.cols - 1, ents)

    def delete_rows_cols(self, drop):
        keep = [k for k in range(1, self.rows + 1) if k not in drop]
        ents = [self.entry(r, c) for r in keep for c in keep]
        return ExactMatrix(self.ring, len(keep), len(keep), ents)

    def __repr__(self):
        rows = []
        for r in range(1, self.rows + 1):
            rows.append("[" + ", ".join(repr(e) for e in self.row_list(r)) + "]")
        return "[" + ",\n ".join(rows) + "]"


class ColumnVector:
    """Immutable column vector."""

    __slots__ = ("ring", "length", "entries")
    __hash__ = None

    def __init__(self, ring, entries):
        entries = tuple(ring.el(e) for e in entries)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "length", len(entries))
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("vectors are immutable")

    def entry(self, i):
        return self.entries[i - 1]

    def __add__(self, other):
        if self.length != other.length:
            raise ValueError("length mismatch")
        return ColumnVector(self.ring,
                            [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if self.length != other.length:
            raise ValueError("length mismatch")
        return ColumnVector(self.ring,
                            [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return ColumnVector(self.ring, [-a for a in self.entries])

    def scale(self, s):
        s = self.ring.el(s)
        return ColumnVector(self.ring, [s * a for a in self.entries])

    def __eq__(self, other):
        if not isinstance(other, ColumnVector):
            return NotImplemented
        return (self.length == other.length
                and all(a == b for a, b in zip(self.entries, other.entries)))

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def dot(self, other):
        if self.length != other.length:
            raise ValueError("length mismatch")
        acc = self.ring.zero
        for a, b in zip(self.entries, other.entries):
            acc = acc + a * b
        return acc

    def support(self):
        """1-based indices of nonzero coordinates."""
        return [i + 1 for i, e in enumerate(self.entries) if not e.is_zero()]

    def with_entry(self, i, value):
        ents = list(self.entries)
        ents[i - 1] = self.ring.el(value)
        return ColumnVector(self.ring, ents)

    def __repr__(self):
        return "col(%s)" % ", ".join(repr(e) for e in self.entries)


def identity(ring, n):
    ents = [ring.one if r == c else ring.zero
            for r in range(n) for c in range(n)]
    return ExactMatrix(ring, n, n, ents)


def zero_matrix(ring, rows, cols):
    return ExactMatrix(ring, rows, cols, [ring.zero] * (rows * cols))


def zero_vector(ring, n):
    return ColumnVector(ring, [ring.zero] * n)


def basis_vector(ring, n, i):
    """Standard basis column e_i (1-based) of length n."""
    return ColumnVector(ring, [ring.one if k == i - 1 else ring.zero
                               for k in range(n)])


def from_rows(ring, rows):
    ncols = len(rows[0])
    ents = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged rows")
        ents.extend(r)
    return ExactMatrix(ring, len(rows), ncols, ents)


def standard_symplectic_form(ring, n):
    """Block-diagonal sum of n copies of [[0,1],[-1,0]]."""
    m = identity(ring, 2 * n).payload_grid()
    zero = ring.from_int(0)
    one = ring.from_int(1)
    neg_one = ring.p_neg(one)
    for r in range(2 * n):
        m[r][r] = zero
    for t in range(n):
        m[2 * t][2 * t + 1] = one
        m[2 * t + 1][2 * t] = neg_one
    return ExactMatrix(ring, 2 * n, 2 * n,
                       [ring.wrap(p) for row in m for p in row])


def is_alternating(m):
    """Skew-symmetric with zero diagonal, tested exactly."""
    if m.rows != m.cols:
        return False
    for i in range(1, m.rows + 1):
        if not m.entry(i, i).is_zero():
            return False
        for j in range(i + 1, m.cols + 1):
            if m.entry(i, j) != -m.entry(j, i):
                return False
    return True


def is_symplectic(a):
    """Whether a^t psi a = psi for the standard form of matching size."""
    if a.rows != a.cols:
        raise OddDimension("symplectic test needs a square matrix")
    if a.rows % 2 != 0:
        raise OddDimension("symplectic test needs an even size")
    psi = standard_symplectic_form(a.ring, a.rows // 2)
    return a.transpose() * psi * a == psi


def tilde(v):
    """The row vector v^t psi as a 1 x 2n matrix."""
    if v.length % 2 != 0:
        raise OddDimension("tilde needs an even-length vector")
    ring = v.ring
    out = []
    for ell in range(1, v.length + 1):
        partner = v.entry(sigma_index(ell))
        if ell % 2 == 1:
            out.append(-partner)
        else:
            out.append(partner)
    return ExactMatrix(ring, 1, v.length, out)


def sigma_index(i):
    """The coordinate pairing 1<->2, 3<->4, ..."""
    if i < 1:
        raise ValueError("indices are 1-based")
    return i + 1 if i % 2 == 1 else i - 1


def tilde_pair(v, w):
    """The scalar tilde(v) . w, the symplectic pairing of v and w."""
    t = tilde(v)
    acc = v.ring.zero
    for k in range(1, w.length + 1):
        acc = acc + t.entry(1, k) * w.entry(k)
    return acc


def col_times_row(v, r):
    """Outer product: column vector times 1 x m row matrix."""
    ring = v.ring
    ents = []
    for a in v.entries:
        for k in range(1, r.cols + 1):
            ents.append(a * r.entry(1, k))
    return ExactMatrix(ring, v.length, r.cols, ents)


def row_times_col(r, v):
    acc = r.ring.zero
    for k in range(1, v.length + 1):
        acc = acc + r.entry(1, k) * v.entry(k)
    return acc


def pfaffian(phi):
    """Pfaffian of an alternating matrix by first-row expansion."""
    if not is_alternating(phi):
        raise NotAlternating("pfaffian needs an alternating matrix")
    if phi.rows % 2 != 0:
        raise OddDimension("pfaffian needs an even size")
    return _pf(phi)


def _pf(phi):
    n = phi.rows
    if n == 0:
        return phi.ring.one
    if n == 2:
        return phi.entry(1, 2)
    acc = phi.ring.zero
    for j in range(2, n + 1):
        a1j = phi.entry(1, j)
        if a1j.is_zero():
            continue
        sub = _pf(phi.delete_rows_cols({1, j}))
        term = a1j * sub
        if j % 2 == 1:
            term = -term
        acc = acc + term
    return acc


def det(m):
    """Determinant by first-column expansion, memoized on row subsets."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    ring = m.ring
    n = m.rows
    if n == 0:
        return ring.one
    grid = m.payload_grid()
    p_add, p_mul, p_neg, p_is_zero = ring.p_add, ring.p_mul, ring.p_neg, ring.p_is_zero
    memo = {}

    def go(rows, colmask):
        if not rows:
            return ring.from_int(1)
        key = (rows[0], colmask)
        if key in memo:
            return memo[key]
        r = rows[0]
        rest = rows[1:]
        acc = ring.from_int(0)
        sign = 0
        for c in range(n):
            bit = 1 << c
            if not (colmask & bit):
                continue
            a = grid[r][c]
            if not p_is_zero(a):
                sub = go(rest, colmask & ~bit)
                term = p_mul(a, sub)
                if sign % 2 == 1:
                    term = p_neg(term)
                acc = p_add(acc, term)
            sign += 1
        memo[key] = acc
        return acc

    return ring.wrap(go(tuple(range(n)), (1 << n) - 1))


def adjugate_inverse(m):
    """Inverse of a unit-determinant matrix via the adjugate."""
    from .rings import invert_unit
    d = det(m)
    dinv = invert_unit(d)
    n = m.rows
    ents = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            c = det(m.delete_row_col(j, i))
            if (i + j) % 2 == 1:
                c = -c
            ents.append(c * dinv)
    return ExactMatrix(m.ring, n, n, ents)


def kernel_decomposition(c, w, u):
    """Express c in terms of the standard kernel generators of w.

    Given u^t w = 1 and c^t w = 0, returns the map (i, j) -> a_ij
    (1-based, i < j) with c = sum a_ij (w_j e_i - w_i e_j), using
    a_ij = c_i u_j - c_j u_i. The reconstruction is re-checked.
    """
    ring = c.ring
    if u.dot(w) != ring.one:
        raise CertificateInvalid("u^t w must equal 1 exactly")
    if not c.dot(w).is_zero():
        raise NotInKernel("c^t w must vanish exactly")
    n = c.length
    coeffs = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            a = c.entry(i) * u.entry(j) - c.entry(j) * u.entry(i)
            if not a.is_zero():
                coeffs[(i, j)] = a
    recon = zero_vector(ring, n)
    for (i, j), a in coeffs.items():
        term = zero_vector(ring, n)
        term = term.with_entry(i, w.entry(j)).with_entry(j, -w.entry(i))
        recon = recon + term.scale(a)
    if recon != c:
        raise CertificateInvalid("kernel reconstruction failed")
    return coeffs
