"""Conjugation rewriting over polynomial parameters.

Two layers live here. The inclusion primitives turn a single generator
whose parameter is certified in the ideal of pairwise products into a
short word of generators with plain ideal certificates, using nothing
but the commutator relations. The rewriter proper takes a conjugating
word whose parameters carry a power of the variable Y and rewrites the
conjugate of a first-index generator as a product of first-index
generators again, with every parameter divisible by Y; iterating it
trades conjugators for fourth powers of Y.
"""

from __future__ import annotations

from .errors import (
    BadIndices,
    DimensionTooSmall,
    IdealMismatch,
    NotCertified,
    SideConditionViolated,
    UnknownVariable,
    VerificationFailed,
)
from .matrices import identity as identity_matrix
from .matrices import sigma_index as sigma
from .rings import CertifiedElement, PolyRing, half, substitute
from .words import (
    LinLetter,
    SympLetter,
    Word,
    evaluate,
    invert_word,
    word_in_E1,
    word_in_ESp1,
)

_YVAR = "Y"


def _base_parts(p):
    sq = p.ideal
    base = sq.base
    gens = base.generators
    pairs = base.square_pairs()
    return sq, base, gens, pairs


def _single_letter_cert(p, sign=1):
    """Fold a pairwise-product certificate into a plain one."""
    sq, base, gens, pairs = _base_parts(p)
    ring = base.ring
    coeffs = [ring.zero] * len(gens)
    for t, c in enumerate(p.coefficients):
        if c.is_zero():
            continue
        bi, bj = pairs[t]
        add = c * gens[bi]
        if sign == -1:
            add = -add
        coeffs[bj] = coeffs[bj] + add
    return CertifiedElement(base, coeffs)


def _term_factors(p):
    """Split a pairwise-product certificate into (x, y) certified pairs."""
    sq, base, gens, pairs = _base_parts(p)
    ring = base.ring
    out = []
    for t, c in enumerate(p.coefficients):
        if c.is_zero():
            continue
        bi, bj = pairs[t]
        cx = [ring.zero] * len(gens)
        cx[bi] = c
        cy = [ring.zero] * len(gens)
        cy[bj] = ring.one
        out.append((CertifiedElement(base, cx), CertifiedElement(base, cy)))
    return out


def include_I2_linear(n, i, j, p):
    """Word of ideal-certified letters equal to E_ij(p) for p a sum
    of pairwise products of ideal generators.

    When neither index is 1 each product term becomes a four-letter
    commutator through the corner; otherwise one letter suffices.
    """
    sq, base, gens, pairs = _base_parts(p)
    ring = base.ring
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise BadIndices("bad letter indices (%d, %d)" % (i, j))
    if i == 1 or j == 1:
        if p.value.is_zero():
            return Word(ring, n)
        cert = _single_letter_cert(p)
        return Word(ring, n, ((LinLetter(n, i, j, cert.value, cert), False),))
    letters = []
    for x, y in _term_factors(p):
        a = LinLetter(n, i, 1, x.value, x)
        b = LinLetter(n, 1, j, y.value, y)
        letters += [(a, False), (b, False), (a, True), (b, True)]
    return Word(ring, n, letters)


def include_I2_symplectic(n, i, j, p):
    """Word of ideal-certified letters equal to se_ij(p) for p a sum
    of pairwise products of ideal generators.

    Letters touching the first coordinate pair stay single; short
    targets split through the corner with a halved factor, long targets
    through the plain corner commutator. Needs n >= 2 and, for short
    targets, 2 a unit.
    """
    sq, base, gens, pairs = _base_parts(p)
    ring = base.ring
    size = 2 * n
    if n < 2:
        raise DimensionTooSmall("inclusion needs at least two pairs")
    if i == j or not (1 <= i <= size and 1 <= j <= size):
        raise BadIndices("bad letter indices (%d, %d)" % (i, j))
    if i in (1, 2) or j in (1, 2):
        if p.value.is_zero():
            return Word(ring, size)
        cert = _single_letter_cert(p)
        return Word(ring, size,
                    ((SympLetter(size, i, j, cert.value, cert), False),))
    letters = []
    if j == sigma(i):
        h = half(ring)
        for x, y in _term_factors(p):
            yh = y.scale(h)
            a = SympLetter(size, i, 1, x.value, x)
            b = SympLetter(size, 1, sigma(i), yh.value, yh)
            letters += [(a, False), (b, False), (a, True), (b, True)]
    else:
        for x, y in _term_factors(p):
            a = SympLetter(size, i, 1, x.value, x)
            b = SympLetter(size, 1, j, y.value, y)
            letters += [(a, False), (b, False), (a, True), (b, True)]
    return Word(ring, size, letters)


# ---------------------------------------------------------------------------
# Tracked parameters.
#
# Every quantity the rewriter manipulates is a sum of terms of the form
#     coeff * Y^e * atom_1 * ... * atom_k
# where each atom is a certified element whose value does not involve Y
# and coeff is a Y-free ring element (integers, signs, powers of 1/2,
# values of other atoms).  Keeping parameters factored this way is what
# lets a commutator split hand each half its own certificate and its own
# positive power of Y.


class _Term:
    __slots__ = ("ring", "y_exp", "atoms", "coeff", "_value")

    def __init__(self, ring, y_exp, atoms, coeff):
        self.ring = ring
        self.y_exp = y_exp
        self.atoms = tuple(atoms)
        self.coeff = coeff
        self._value = None

    def value(self):
        if self._value is None:
            acc = self.coeff
            y = self.ring.var(_YVAR)
            for _ in range(self.y_exp):
                acc = acc * y
            for a in self.atoms:
                acc = acc * a.value
            self._value = acc
        return self._value

    def cert(self):
        if not self.atoms:
            raise VerificationFailed(
                "parameter term without a certified factor")
        rest = self.coeff
        y = self.ring.var(_YVAR)
        for _ in range(self.y_exp):
            rest = rest * y
        for a in self.atoms[1:]:
            rest = rest * a.value
        return self.atoms[0].scale(rest)

    def times(self, other):
        return _Term(self.ring, self.y_exp + other.y_exp,
                     self.atoms + other.atoms, self.coeff * other.coeff)

    def scaled(self, r):
        return _Term(self.ring, self.y_exp, self.atoms, self.coeff * r)

    def neg(self):
        return self.scaled(-self.ring.one)

    def subst_y4(self, memo):
        ring = self.ring
        y = ring.var(_YVAR)
        y4 = y * y * y * y
        atoms = []
        for a in self.atoms:
            got = memo.get(id(a))
            if got is None:
                got = a.substitute({_YVAR: y4})
                memo[id(a)] = got
            atoms.append(got)
        return _Term(ring, 4 * self.y_exp, atoms,
                     substitute(self.coeff, {_YVAR: y4}))

    def split(self, lo, hi, extra=None):
        """Factor into (left, right) with Y-exponents lo and hi.

        The left factor keeps the coefficient and all atoms but the
        last; the right factor is the last atom alone, optionally
        scaled.  Both halves end up certified and Y-divisible.
        """
        if len(self.atoms) < 2:
            raise VerificationFailed(
                "cannot split a one-factor parameter term")
        if lo < 1 or hi < 1 or lo + hi != self.y_exp:
            raise VerificationFailed(
                "cannot distribute Y-powers %d = %d + %d"
                % (self.y_exp, lo, hi))
        left = _Term(self.ring, lo, self.atoms[:-1], self.coeff)
        rc = self.ring.one if extra is None else extra
        right = _Term(self.ring, hi, self.atoms[-1:], rc)
        return left, right


class _TPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=()):
        merged = {}
        order = []
        for t in terms:
            if t.value().is_zero():
                continue
            key = (t.y_exp, tuple(id(a) for a in t.atoms))
            if key in merged:
                old = merged[key]
                merged[key] = _Term(ring, t.y_exp, t.atoms,
                                    old.coeff + t.coeff)
            else:
                merged[key] = t
                order.append(key)
        self.ring = ring
        self.terms = tuple(merged[k] for k in order
                           if not merged[k].value().is_zero())

    def value(self):
        acc = self.ring.zero
        for t in self.terms:
            acc = acc + t.value()
        return acc

    def cert(self):
        acc = None
        for t in self.terms:
            c = t.cert()
            acc = c if acc is None else acc + c
        return acc

    def is_zero(self):
        return self.value().is_zero()

    def plus(self, other):
        return _TPoly(self.ring, self.terms + other.terms)

    def times(self, other):
        out = []
        for a in self.terms:
            for b in other.terms:
                out.append(a.times(b))
        return _TPoly(self.ring, out)

    def neg(self):
        return _TPoly(self.ring, [t.neg() for t in self.terms])

    def scaled(self, r):
        return _TPoly(self.ring, [t.scaled(r) for t in self.terms])

    def with_extra_y(self, d):
        return _TPoly(self.ring, [_Term(self.ring, t.y_exp + d, t.atoms,
                                        t.coeff) for t in self.terms])

    def subst_y4(self, memo):
        return _TPoly(self.ring,
                      [t.subst_y4(memo) for t in self.terms])

    def min_y(self):
        return min(t.y_exp for t in self.terms)

    def graded(self, nu):
        return _TPoly(self.ring,
                      [t for t in self.terms if t.y_exp == nu])


# ---------------------------------------------------------------------------
# Sparse unipotent residuals.


class _Grid:
    """A unipotent matrix I + sum_{(p,q)} poly_{pq} e_{pq}, cells tracked."""

    __slots__ = ("ring", "size", "cells")

    def __init__(self, ring, size):
        self.ring = ring
        self.size = size
        self.cells = {}

    def add(self, cell, poly):
        old = self.cells.get(cell)
        new = poly if old is None else old.plus(poly)
        if new.is_zero():
            self.cells.pop(cell, None)
        else:
            self.cells[cell] = new

    def _lam(self, pattern, poly, invert):
        lam = {}
        for r, c, sg in pattern:
            p = poly if sg == 1 else poly.neg()
            if invert:
                p = p.neg()
            lam[(r, c)] = p
        return lam

    def mul_letter_left(self, pattern, poly, invert=False):
        """self := (I + Lambda) * self."""
        lam = self._lam(pattern, poly, invert)
        old = dict(self.cells)
        for cell, p in lam.items():
            self.add(cell, p)
        for (r, t), p in lam.items():
            for (t2, q), d in old.items():
                if t == t2:
                    self.add((r, q), p.times(d))

    def mul_letter_right(self, pattern, poly, invert=False):
        """self := self * (I + Lambda)."""
        lam = self._lam(pattern, poly, invert)
        old = dict(self.cells)
        for cell, p in lam.items():
            self.add(cell, p)
        for (r, t), d in old.items():
            for (t2, q), p in lam.items():
                if t == t2:
                    self.add((r, q), d.times(p))

    def prune(self):
        for cell in [c for c, p in self.cells.items() if p.is_zero()]:
            del self.cells[cell]

    def is_identity(self):
        self.prune()
        return not self.cells

    def min_y(self):
        return min(p.min_y() for p in self.cells.values())


# ---------------------------------------------------------------------------
# The two letter alphabets, seen through one interface.


class _LinearSystem:
    kind = "linear"

    def __init__(self, ring, size):
        self.ring = ring
        self.size = size

    def pattern(self, i, j):
        return ((i, j, 1),)

    def literal_index1(self, i, j, poly):
        if i == 1 or j == 1:
            return i, j, poly
        return None

    def make_letter(self, i, j, value, cert=None):
        return LinLetter(self.size, i, j, value, cert)

    def matrix(self, i, j, value):
        from .words import make_linear_generator
        return make_linear_generator(self.ring, self.size, i, j, value)

    def orbit_cells(self, p, q):
        return ((p, q, 1),)

    def split_cell(self, p, q, term):
        lo = max(1, min(term.y_exp - 1, term.y_exp // 2))
        u, v = term.split(lo, term.y_exp - lo)
        return ((p, 1, u), (1, q, v))


class _SymplecticSystem:
    kind = "symplectic"

    def __init__(self, ring, size):
        self.ring = ring
        self.size = size
        self._half = None

    def half(self):
        if self._half is None:
            self._half = half(self.ring)
        return self._half

    def pattern(self, i, j):
        from .words import symplectic_entry_pattern
        return symplectic_entry_pattern(i, j)

    def literal_index1(self, i, j, poly):
        if i == 1 or j == 1:
            return i, j, poly
        if sigma(j) == 1 or sigma(i) == 1:
            swapped = poly if (i + j) % 2 == 1 else poly.neg()
            return sigma(j), sigma(i), swapped
        return None

    def make_letter(self, i, j, value, cert=None):
        return SympLetter(self.size, i, j, value, cert)

    def matrix(self, i, j, value):
        from .words import make_symplectic_generator
        return make_symplectic_generator(self.ring, self.size // 2,
                                         i, j, value)

    def orbit_cells(self, p, q):
        return self.pattern(p, q)

    def split_cell(self, p, q, term):
        lo = max(1, min(term.y_exp - 1, term.y_exp // 2))
        hi = term.y_exp - lo
        if q == sigma(p):
            u, v = term.split(lo, hi, extra=self.half())
            return ((p, 1, u), (1, sigma(p), v))
        u, v = term.split(lo, hi)
        return ((p, 1, u), (1, q, v))


# ---------------------------------------------------------------------------
# Peeling: factor a tracked unipotent residual into first-index letters.
#
# Each round takes the lowest Y-grade of the residual.  That graded
# layer always satisfies the linearized invariance constraints of the
# ambient group, so its off-diagonal part matches generator patterns
# exactly and its diagonal part can be cancelled by inserting pairs of
# opposite first-index letters whose product has a known diagonal tail.
# Splitting a non-first-index generator uses the exact commutator
# relation [x_{p1}(u), x_{1q}(v)] and hands each half one certified
# factor and a positive share of the Y-power.


def _emit_cell(system, p, q, poly, out):
    lit = system.literal_index1(p, q, poly)
    if lit is not None:
        out.append(lit)
        return
    for term in poly.terms:
        (ai, aj, u), (bi, bj, v) = system.split_cell(p, q, term)
        up = _TPoly(system.ring, [u])
        vp = _TPoly(system.ring, [v])
        out.append((ai, aj, up))
        out.append((bi, bj, vp))
        out.append((ai, aj, up.neg()))
        out.append((bi, bj, vp.neg()))


def _insert_comm(first, second, coeff, out):
    """Append the commutator [x_first(u), x_second(v)] with uv = coeff.

    A commutator has no first-order single-letter tail, so inserting it
    cancels a diagonal deficit while only creating terms of strictly
    higher Y-grade; that is what makes the peeling loop terminate.
    """
    ring = coeff.ring
    for term in coeff.terms:
        lo = max(1, min(term.y_exp - 1, term.y_exp // 2))
        u, v = term.split(lo, term.y_exp - lo)
        up = _TPoly(ring, [u])
        vp = _TPoly(ring, [v])
        out.append((first[0], first[1], up))
        out.append((second[0], second[1], vp))
        out.append((first[0], first[1], up.neg()))
        out.append((second[0], second[1], vp.neg()))


def _apply_records(grid, system, records):
    """grid := (product of records)^-1 * grid, one letter at a time.

    (L1 ... Lm)^-1 = Lm^-1 ... L1^-1, and left-multiplying by L1^-1
    first leaves it rightmost, so the records are walked in order.
    """
    for i, j, poly in records:
        if poly.is_zero():
            continue
        grid.mul_letter_left(system.pattern(i, j), poly, invert=True)


def _diag_records_linear(system, comp):
    # [E_d1(u), E_1d(v)] contributes uv (e_dd - e_11); the graded layer
    # is trace free, so clearing every d >= 2 clears position (1, 1) too.
    records = []
    diag = {p: poly for (p, q), poly in comp.items() if p == q}
    total = system.ring.zero
    for poly in diag.values():
        total = total + poly.value()
    if not total.is_zero():
        raise VerificationFailed(
            "diagonal residual layer has nonzero trace")
    for d in sorted(diag):
        if d == 1:
            continue
        _insert_comm((d, 1), (1, d), diag[d], records)
    return records


def _diag_records_symplectic(system, comp):
    # Across one coordinate pair (k, k') and the first pair, the two
    # commutators [se_k1, se_1k] and [se_k'1, se_1k'] contribute
    #   w_A (e_kk + e_22 - e_11 - e_k'k')
    #   w_B (e_k'k' + e_22 - e_11 - e_kk)
    # and the form constraint makes the graded layer antisymmetric per
    # pair, so w_A, w_B solve for any deficit at the cost of a halving.
    records = []
    diag = {p: poly for (p, q), poly in comp.items() if p == q}
    for p, poly in diag.items():
        partner = diag.get(sigma(p))
        if partner is None or partner.value() != poly.neg().value():
            raise VerificationFailed(
                "diagonal residual is not form-compatible at index %d" % p)
    hf = system.half()
    zero = _TPoly(system.ring)
    delta1 = diag.get(1, zero)
    pairs = sorted({(p + 1) // 2 for p in diag if p > 2})
    if not pairs and not delta1.is_zero():
        free = [t for t in range(2, system.size // 2 + 1)]
        if not free:
            raise DimensionTooSmall(
                "no free coordinate pair for a diagonal insertion")
        pairs = [free[0]]
    first = True
    for t in pairs:
        k = 2 * t - 1
        d_k = diag.get(k, zero)
        share = delta1 if first else zero
        first = False
        w_a = d_k.plus(share.neg()).scaled(hf)
        w_b = d_k.plus(share).scaled(hf).neg()
        _insert_comm((k, 1), (1, k), w_a, records)
        _insert_comm((sigma(k), 1), (1, sigma(k)), w_b, records)
    return records


def _peel(system, grid, rounds=500):
    """Factor grid into first-index letter records; empties the grid."""
    out = []
    while not grid.is_identity():
        rounds -= 1
        if rounds < 0:
            raise VerificationFailed(
                "residual failed to terminate while peeling")
        nu = grid.min_y()
        comp = {}
        for cell, poly in grid.cells.items():
            g = poly.graded(nu)
            if not g.is_zero():
                comp[cell] = g
        offdiag = sorted(c for c in comp if c[0] != c[1])
        if offdiag:
            p, q = offdiag[0]
            poly = comp[(p, q)]
            for r, c, sg in system.orbit_cells(p, q):
                if (r, c) == (p, q):
                    continue
                echo = comp.get((r, c))
                want = poly if sg == 1 else poly.neg()
                have = system.ring.zero if echo is None else echo.value()
                if have != want.value():
                    raise VerificationFailed(
                        "residual breaks the generator pattern at "
                        "(%d, %d)" % (r, c))
            records = []
            _emit_cell(system, p, q, poly, records)
        else:
            if system.kind == "linear":
                records = _diag_records_linear(system, comp)
            else:
                records = _diag_records_symplectic(system, comp)
        out.extend(records)
        _apply_records(grid, system, records)
    return out


# ---------------------------------------------------------------------------
# One conjugation step, dispatched through a registry of case handlers.
# Every handler's emission is checked by exact evaluation before it is
# accepted; a wrong case formula surfaces as VerificationFailed, never
# as silent bad output.


def _case_pass(system, g_rec, t_rec, grid):
    return [t_rec]


def _case_peel(system, g_rec, t_rec, grid):
    return _peel(system, grid)


REWRITE_CASES = {
    ("linear", "untouched"): _case_pass,
    ("linear", "overlap"): _case_peel,
    ("linear", "reflection"): _case_peel,
    ("symplectic", "untouched"): _case_pass,
    ("symplectic", "overlap"): _case_peel,
    ("symplectic", "reflection"): _case_peel,
}


def _classify(system, grid, t_rec):
    grid.prune()
    if any(p == q for p, q in grid.cells):
        return "reflection"
    ti, tj, tpoly = t_rec
    expected = {}
    for r, c, sg in system.pattern(ti, tj):
        expected[(r, c)] = tpoly if sg == 1 else tpoly.neg()
    if set(grid.cells) == set(expected):
        same = all(grid.cells[cell].value() == expected[cell].value()
                   for cell in expected)
        if same:
            return "untouched"
    return "overlap"


def _records_word(system, records, with_certs=False):
    letters = []
    for i, j, poly in records:
        value = poly.value()
        if value.is_zero():
            continue
        cert = poly.cert() if with_certs else None
        letters.append((system.make_letter(i, j, value, cert), False))
    return Word(system.ring, system.size, letters)


def _conjugate_one(system, g_rec, t_rec):
    gi, gj, gpoly = g_rec
    ti, tj, tpoly = t_rec
    grid = _Grid(system.ring, system.size)
    for r, c, sg in system.pattern(ti, tj):
        grid.add((r, c), tpoly if sg == 1 else tpoly.neg())
    gpat = system.pattern(gi, gj)
    grid.mul_letter_left(gpat, gpoly)
    grid.mul_letter_right(gpat, gpoly, invert=True)
    shape = _classify(system, grid, t_rec)
    handler = REWRITE_CASES[(system.kind, shape)]
    records = handler(system, g_rec, t_rec, grid)
    lhs = Word(system.ring, system.size, (
        (system.make_letter(gi, gj, gpoly.value()), False),
        (system.make_letter(ti, tj, tpoly.value()), False),
        (system.make_letter(gi, gj, gpoly.value()), True),
    )) if not tpoly.is_zero() else None
    want = evaluate(lhs) if lhs is not None \
        else identity_matrix(system.ring, system.size)
    got = evaluate(_records_word(system, records))
    if want != got:
        raise VerificationFailed(
            "case emission does not reproduce the conjugate "
            "(%s conjugator (%d, %d), target (%d, %d))"
            % (system.kind, gi, gj, ti, tj))
    tag = "%s/%s g=(%d,%d) t=(%d,%d) -> %d letters" % (
        system.kind, shape, gi, gj, ti, tj, len(records))
    return records, tag


# ---------------------------------------------------------------------------
# The rewriter: trade conjugating letters for fourth powers of Y.


def _rewrite_rec(system, gs, i, j, a_tpoly, trace):
    if not gs:
        return [(i, j, a_tpoly.with_extra_y(1))]
    inner = _rewrite_rec(system, gs[1:], i, j, a_tpoly, trace)
    memo = {}
    inner = [(p, q, poly.subst_y4(memo)) for p, q, poly in inner]
    out = []
    for rec in inner:
        records, tag = _conjugate_one(system, gs[0], rec)
        trace.append(tag)
        out.extend(records)
    return out


class RewriteResult:
    """Outcome of a conjugation rewrite.

    output holds the derived word of first-index letters, lhs the word
    it must equal (conjugators, target, inverted conjugators), verified
    records that the exact comparison was made, and case_trace lists
    one line per conjugation step in derivation order.
    """

    __slots__ = ("output", "lhs", "verified", "case_trace")

    def __init__(self, output, lhs, verified, case_trace):
        object.__setattr__(self, "output", output)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "verified", verified)
        object.__setattr__(self, "case_trace", case_trace)

    def __setattr__(self, name, value):
        raise AttributeError("results are immutable")

    @property
    def parameters(self):
        return tuple(letter.param for letter, _ in self.output.letters)

    def __repr__(self):
        return "RewriteResult(%d letters, verified=%r)" % (
            len(self.output), self.verified)


def _require_y_ring(ring):
    if not isinstance(ring, PolyRing) or _YVAR not in ring.variables:
        raise UnknownVariable(
            "rewriting needs a polynomial ring with variable %s" % _YVAR)


def _y_free(value):
    ring = value.ring
    return substitute(value, {_YVAR: ring.zero}) == value


def _check_inputs(eps, i, j, a_poly, size):
    ring = eps.ring
    _require_y_ring(ring)
    if not (1 <= i <= size and 1 <= j <= size) or i == j:
        raise BadIndices("bad target indices (%d, %d)" % (i, j))
    ideal = a_poly.ideal
    if ideal.ring != ring:
        raise IdealMismatch("target certificate lives over the wrong ring")
    if not a_poly.check():
        raise NotCertified("target parameter certificate does not check")
    if not _y_free(a_poly.value):
        raise SideConditionViolated(
            "target parameter must not involve %s" % _YVAR)
    for g in ideal.generators:
        if not _y_free(g):
            raise SideConditionViolated(
                "ideal generators must not involve %s" % _YVAR)
    for letter, _ in eps.letters:
        if not _y_free(letter.param):
            raise SideConditionViolated(
                "conjugator parameters must not involve %s" % _YVAR)
    return ideal


def _g_records(ring, eps):
    out = []
    for letter, inv in eps.letters:
        coeff = -ring.one if inv else ring.one
        out.append((letter.i, letter.j,
                    _TPoly(ring, [_Term(ring, 0, (letter.cert,), coeff)])))
    return out


def _finish(system, eps, i, j, a_poly, ideal):
    ring = system.ring
    a_tpoly = _TPoly(ring, [_Term(ring, 0, (a_poly,), ring.one)])
    trace = []
    records = _rewrite_rec(system, _g_records(ring, eps), i, j,
                           a_tpoly, trace)
    output = _records_word(system, records, with_certs=True)
    for letter, _ in output.letters:
        if not substitute(letter.param, {_YVAR: ring.zero}).is_zero():
            raise VerificationFailed(
                "derived parameter %r is not divisible by %s"
                % (letter.param, _YVAR))
    exp = 4 ** len(eps)
    y_pow = ring.one
    y = ring.var(_YVAR)
    for _ in range(exp):
        y_pow = y_pow * y
    target = system.make_letter(i, j, y_pow * a_poly.value,
                                a_poly.scale(y_pow))
    lhs = eps * Word(ring, system.size, ((target, False),)) \
        * invert_word(eps)
    got = evaluate(output)
    want = evaluate(lhs)
    if got != want:
        raise VerificationFailed(
            "derived word fails the exact comparison at %r"
            % (got.first_mismatch(want),))
    return RewriteResult(output, lhs, True, tuple(trace))


def rewrite_conjugation_linear(eps, i, j, a_poly):
    """Rewrite eps . E_ij(Y^(4^r) a) . eps^-1 as first-index letters.

    eps must be a word of certified first-index linear letters whose
    parameters do not involve Y; the target position (i, j) must have
    a first index itself.  Every parameter of the output is divisible
    by Y and certified in the same ideal as a_poly.
    """
    n = eps.size
    if n < 3:
        raise DimensionTooSmall("linear rewriting needs size at least 3")
    ideal = _check_inputs(eps, i, j, a_poly, n)
    if i != 1 and j != 1:
        raise BadIndices("target generator must be first-index")
    if not word_in_E1(eps, ideal):
        raise NotCertified(
            "conjugator must be certified first-index linear letters")
    return _finish(_LinearSystem(eps.ring, n), eps, i, j, a_poly, ideal)


def rewrite_conjugation_symplectic(eps, i, j, a_poly):
    """Rewrite eps . se_ij(Y^(4^r) a) . eps^-1 as first-index letters.

    Needs 2 invertible.  eps must be a word of certified first-index
    symplectic letters (up to the sigma identification) with Y-free
    parameters, and (i, j) must be first-index up to sigma as well.
    """
    size = eps.size
    if size % 2 != 0 or size < 4:
        raise DimensionTooSmall(
            "symplectic rewriting needs even size at least 4")
    half(eps.ring)
    ideal = _check_inputs(eps, i, j, a_poly, size)
    if 1 not in (i, j, sigma(i), sigma(j)):
        raise BadIndices(
            "target generator must be first-index up to sigma")
    if not word_in_ESp1(eps, ideal):
        raise NotCertified(
            "conjugator must be certified first-index symplectic letters")
    return _finish(_SymplecticSystem(eps.ring, size), eps, i, j,
                   a_poly, ideal)


def specialize_and_check(result, x0, y0):
    """Substitute X := x0, Y := y0 into a verified rewrite and recheck.

    Returns the specialized matrix after comparing both sides of the
    specialized identity exactly.
    """
    ring = result.output.ring
    bindings = {_YVAR: ring.el(y0)}
    if "X" in ring.variables:
        bindings["X"] = ring.el(x0)

    def bind(w):
        letters = []
        for letter, inv in w.letters:
            p = substitute(letter.param, bindings)
            letters.append((letter.with_param(p), inv))
        return Word(ring, w.size, letters)

    got = evaluate(bind(result.output))
    want = evaluate(bind(result.lhs))
    if got != want:
        raise VerificationFailed(
            "specialized sides disagree at %r; the rewrite was corrupted"
            % (got.first_mismatch(want),))
    return got
