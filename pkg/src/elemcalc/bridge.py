"""Dictionaries between transvection words and elementary matrix words.

Two languages describe the same unipotent isometries. Block
transvections shear along a distinguished head coordinate (linear
case) or a distinguished hyperbolic pair (symplectic case), while
elementary words spell the same maps one off-diagonal entry at a
time. This module converts words in both directions, transports
symplectic transvections across a change of alternating form, and
standardizes an alternating form over Z/p^k through recorded
congruence operations.

Every translation is verified by exact evaluation before it is
returned.
"""

from .errors import (BadIndices, FormMismatch, FormRelationFails,
                     IdealMismatch, LengthMismatch, NotAlternating,
                     NotCertified, NotCongruentToStandard, NotLocalRing,
                     NonstandardForm, PfaffianNotOne, VerificationFailed)
from .matrices import (ColumnVector, ExactMatrix, identity, is_alternating,
                       pfaffian, sigma_index as sigma,
                       standard_symplectic_form)
from .rings import ZmodRing, certify, invert_unit
from .words import (LinLetter, MuLetter, RhoLetter, Word, evaluate,
                    expand_mu, expand_rho, invert_word, word_in_E1,
                    word_in_ESp1)


class AlternatingForm:
    """An alternating matrix bundled with its cached Pfaffian."""

    __slots__ = ("matrix", "pfaffian_cache")
    __hash__ = None

    def __init__(self, matrix):
        if not is_alternating(matrix) or matrix.rows % 2 != 0:
            raise NotAlternating("form container needs an alternating "
                                 "matrix of even size")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "pfaffian_cache", pfaffian(matrix))

    def __setattr__(self, name, value):
        raise AttributeError("forms are immutable")

    @property
    def ring(self):
        return self.matrix.ring

    @property
    def size(self):
        return self.matrix.rows

    def entry(self, i, j):
        return self.matrix.entry(i, j)

    def is_standard(self):
        n = self.size // 2
        return self.matrix == standard_symplectic_form(self.ring, n)

    def __eq__(self, other):
        if not isinstance(other, AlternatingForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __repr__(self):
        return "AlternatingForm(%dx%d, pf=%r)" % (
            self.size, self.size, self.pfaffian_cache)


def standard_form(ring, n):
    """The block form with hyperbolic 2x2 cells down the diagonal."""
    return AlternatingForm(standard_symplectic_form(ring, n))


def _hyperbolic_extension(form_matrix):
    # the form on two extra head coordinates followed by the given block
    ring = form_matrix.ring
    n2 = form_matrix.rows
    size = n2 + 2
    grid = [[ring.zero] * size for _ in range(size)]
    grid[0][1] = ring.one
    grid[1][0] = -ring.one
    for r in range(n2):
        for c in range(n2):
            grid[2 + r][2 + c] = form_matrix.entry(r + 1, c + 1)
    return ExactMatrix(ring, size, size, [e for row in grid for e in row])


def _check_isometry(m, form_matrix):
    big = _hyperbolic_extension(form_matrix)
    if m.transpose() * big * m != big:
        raise VerificationFailed("transvection matrix does not preserve "
                                 "the extended form")


def rho_matrix(q, alpha, phi):
    """Row-type transvection matrix for the form phi, isometry-checked."""
    fm = phi.matrix if isinstance(phi, AlternatingForm) else phi
    if q.length != fm.rows:
        raise FormMismatch("vector length %d against form size %d"
                           % (q.length, fm.rows))
    m = RhoLetter(q, alpha, fm).matrix()
    _check_isometry(m, fm)
    return m


def mu_matrix(q, beta, phi):
    """Column-type transvection matrix for the form phi, isometry-checked."""
    fm = phi.matrix if isinstance(phi, AlternatingForm) else phi
    if q.length != fm.rows:
        raise FormMismatch("vector length %d against form size %d"
                           % (q.length, fm.rows))
    m = MuLetter(q, beta, fm).matrix()
    _check_isometry(m, fm)
    return m


def linear_transvection_matrix(kind, vec, n=None):
    """Unipotent block matrix shearing between head and tail.

    kind "lower" sends (a, p) to (a, p + a*vec); kind "upper" sends
    (a, p) to (a + vec.p, p). Size is one more than the vector length.
    """
    if n is not None and n != vec.length:
        raise LengthMismatch("vector length %d against stated rank %d"
                             % (vec.length, n))
    ring = vec.ring
    size = vec.length + 1
    grid = identity(ring, size).payload_grid()
    for idx in range(vec.length):
        p = vec.entry(idx + 1).payload
        if kind == "lower":
            grid[idx + 1][0] = p
        elif kind == "upper":
            grid[0][idx + 1] = p
        else:
            raise BadIndices("unknown transvection kind %r" % (kind,))
    return ExactMatrix(ring, size, size,
                       [ring.wrap(p) for row in grid for p in row])


def _checked_certs(vec, certs):
    if certs is None:
        return None
    certs = tuple(certs)
    if len(certs) != vec.length:
        raise LengthMismatch("%d certificates for %d entries"
                             % (len(certs), vec.length))
    for idx, c in enumerate(certs):
        if c is not None and c.value != vec.entry(idx + 1):
            raise NotCertified("certificate value does not match entry %d"
                               % (idx + 1,))
    return certs


class LowerTransLetter:
    """Tail shear (a, p) -> (a, p + a*vec) as a word letter."""

    kind = "trans-lower"
    __slots__ = ("vec", "certs", "size")
    __hash__ = None

    def __init__(self, vec, certs=None):
        object.__setattr__(self, "vec", vec)
        object.__setattr__(self, "certs", _checked_certs(vec, certs))
        object.__setattr__(self, "size", vec.length + 1)

    def __setattr__(self, name, value):
        raise AttributeError("letters are immutable")

    @property
    def ring(self):
        return self.vec.ring

    def column_ops(self, inverted=False):
        ops = []
        for idx in range(self.vec.length):
            p = self.vec.entry(idx + 1)
            if p.is_zero():
                continue
            ops.append((idx + 2, 1, -p if inverted else p))
        return tuple(ops)

    def matrix(self, inverted=False):
        v = -self.vec if inverted else self.vec
        return linear_transvection_matrix("lower", v)

    def __repr__(self):
        return "shear-lower(%r)" % (self.vec,)


class UpperTransLetter:
    """Head shear (a, p) -> (a + vec.p, p) as a word letter."""

    kind = "trans-upper"
    __slots__ = ("vec", "certs", "size")
    __hash__ = None

    def __init__(self, vec, certs=None):
        object.__setattr__(self, "vec", vec)
        object.__setattr__(self, "certs", _checked_certs(vec, certs))
        object.__setattr__(self, "size", vec.length + 1)

    def __setattr__(self, name, value):
        raise AttributeError("letters are immutable")

    @property
    def ring(self):
        return self.vec.ring

    def column_ops(self, inverted=False):
        ops = []
        for idx in range(self.vec.length):
            p = self.vec.entry(idx + 1)
            if p.is_zero():
                continue
            ops.append((1, idx + 2, -p if inverted else p))
        return tuple(ops)

    def matrix(self, inverted=False):
        v = -self.vec if inverted else self.vec
        return linear_transvection_matrix("upper", v)

    def __repr__(self):
        return "shear-upper(%r)" % (self.vec,)


def etrans_word_to_E1(w):
    """Spell linear shear letters as certified first-index generators."""
    out = []
    for letter, inv in w.letters:
        if letter.kind == "trans-lower":
            place = lambda idx: (idx + 2, 1)
        elif letter.kind == "trans-upper":
            place = lambda idx: (1, idx + 2)
        else:
            raise BadIndices("expected linear shear letters, got %r"
                             % (letter.kind,))
        for idx in range(letter.vec.length):
            p = letter.vec.entry(idx + 1)
            if p.is_zero():
                continue
            c = None if letter.certs is None else letter.certs[idx]
            if c is None:
                raise NotCertified("shear parameters need certificates")
            i, j = place(idx)
            out.append((LinLetter(w.size, i, j, p, c), inv))
    result = Word(w.ring, w.size, out)
    got, want = evaluate(result), evaluate(w)
    if got != want:
        raise VerificationFailed("translated word changed the evaluation "
                                 "at %r" % (got.first_mismatch(want),))
    return result


def E1_to_etrans(w, ideal=None):
    """Group a first-index linear word into maximal shear letters."""
    if ideal is not None and not word_in_E1(w, ideal):
        raise NotCertified("expected a certified first-index linear word")
    ring = w.ring
    n = w.size - 1
    out = []
    state = None  # (direction, values, certs, certs_ok)

    def flush():
        nonlocal state
        if state is None:
            return
        direction, vals, certs, certs_ok = state
        state = None
        if all(v.is_zero() for v in vals):
            return
        vec = ColumnVector(ring, vals)
        packed = None
        if certs_ok:
            some = next((c for c in certs if c is not None), None)
            if some is not None:
                zc = some.ideal.zero_cert()
                packed = tuple(zc if c is None else c for c in certs)
        cls = LowerTransLetter if direction == "lower" else UpperTransLetter
        out.append((cls(vec, packed), False))

    for letter, inv in w.letters:
        if letter.kind != "E":
            raise BadIndices("expected linear letters, got %r"
                             % (letter.kind,))
        if letter.j == 1 and letter.i >= 2:
            direction, idx = "lower", letter.i - 2
        elif letter.i == 1 and letter.j >= 2:
            direction, idx = "upper", letter.j - 2
        else:
            raise BadIndices("letters must touch the first index")
        if state is None or state[0] != direction:
            flush()
            state = (direction, [ring.zero] * n, [None] * n, True)
        p = -letter.param if inv else letter.param
        c = letter.cert
        if c is not None and inv:
            c = -c
        _, vals, certs, certs_ok = state
        vals[idx] = vals[idx] + p
        if c is None:
            certs_ok = False
        elif certs[idx] is None:
            certs[idx] = c
        else:
            certs[idx] = certs[idx] + c
        state = (direction, vals, certs, certs_ok)
    flush()
    result = Word(ring, w.size, out)
    got, want = evaluate(result), evaluate(w)
    if got != want:
        raise VerificationFailed("regrouped word changed the evaluation "
                                 "at %r" % (got.first_mismatch(want),))
    return result


def etranssp_word_to_ESp1(w):
    """Expand standard-form transvection letters into first-index words."""
    std = standard_symplectic_form(w.ring, (w.size - 2) // 2)
    out = Word(w.ring, w.size)
    for letter, inv in w.letters:
        if letter.kind not in ("rho", "mu"):
            raise BadIndices("expected transvection letters, got %r"
                             % (letter.kind,))
        if letter.form != std:
            raise NonstandardForm("expansion requires the standard form")
        sc, qc = (None, None) if letter.certs is None else letter.certs
        if letter.kind == "rho":
            sub = expand_rho(letter.q, letter.alpha, sc, qc, form=letter.form)
        else:
            sub = expand_mu(letter.q, letter.beta, sc, qc, form=letter.form)
        if inv:
            sub = invert_word(sub)
        out = out * sub
    got, want = evaluate(out), evaluate(w)
    if got != want:
        raise VerificationFailed("expanded word changed the evaluation "
                                 "at %r" % (got.first_mismatch(want),))
    return out


class _TransvFold:
    """Accumulate a run of same-direction letters into one transvection.

    The composition rule is exact: appending a letter with vector part
    qhat and scalar part shat turns (q, s) into (q + qhat, s + shat +
    q.form.qhat), which is verified a posteriori by evaluation.
    """

    def __init__(self, ring, n2, form_matrix, direction):
        self.ring = ring
        self.n2 = n2
        self.form = form_matrix
        self.direction = direction
        self.vals = [ring.zero] * n2
        self.scalar = ring.zero
        self.q_certs = [None] * n2
        self.scalar_cert = None
        self.certs_ok = True
        self.touched = False

    def _cross(self, coord):
        # (q^t . form) at the given 1-based coordinate
        acc = self.ring.zero
        for k in range(self.n2):
            v = self.vals[k]
            if not v.is_zero():
                acc = acc + v * self.form.entry(k + 1, coord)
        return acc

    def _add_scalar(self, s, cert):
        self.scalar = self.scalar + s
        if cert is None:
            self.certs_ok = False
        elif self.scalar_cert is None:
            self.scalar_cert = cert
        else:
            self.scalar_cert = self.scalar_cert + cert

    def _add_coord(self, coord, v, cert):
        t = self._cross(coord)
        if not t.is_zero():
            self._add_scalar(t * v, None if cert is None else cert.scale(t))
        elif cert is None:
            self.certs_ok = False
        self.vals[coord - 1] = self.vals[coord - 1] + v
        if cert is None:
            self.certs_ok = False
        elif self.q_certs[coord - 1] is None:
            self.q_certs[coord - 1] = cert
        else:
            self.q_certs[coord - 1] = self.q_certs[coord - 1] + cert

    def feed(self, i, j, p, cert):
        self.touched = True
        if self.direction == "rho":
            if i == 2:
                self._add_scalar(-p, None if cert is None else -cert)
            else:
                self._add_coord(i - 2, -p, None if cert is None else -cert)
        else:
            if j == 2:
                self._add_scalar(p, cert)
            else:
                sgn = 1 if (j + 1) % 2 == 0 else -1
                coord = sigma(j - 2)
                v = p if sgn == 1 else -p
                c = cert
                if c is not None and sgn == -1:
                    c = -c
                self._add_coord(coord, v, c)

    def letter(self):
        if not self.touched:
            return None
        vec = ColumnVector(self.ring, self.vals)
        packed = None
        if self.certs_ok:
            some = self.scalar_cert or next(
                (c for c in self.q_certs if c is not None), None)
            if some is not None:
                zc = some.ideal.zero_cert()
                sc = self.scalar_cert if self.scalar_cert is not None else zc
                qc = tuple(zc if c is None else c for c in self.q_certs)
                packed = (sc, qc)
        cls = RhoLetter if self.direction == "rho" else MuLetter
        return cls(vec, self.scalar, self.form, packed)


def ESp1_to_etranssp(w, ideal=None):
    """Group a first-index symplectic word into transvection letters."""
    if ideal is not None and not word_in_ESp1(w, ideal):
        raise NotCertified("expected a certified first-index symplectic word")
    ring = w.ring
    size = w.size
    n2 = size - 2
    if n2 < 2:
        raise BadIndices("need at least one form coordinate pair")
    std = standard_symplectic_form(ring, n2 // 2)
    out = []
    fold = None

    def flush():
        nonlocal fold
        if fold is not None:
            letter = fold.letter()
            if letter is not None:
                out.append((letter, False))
            fold = None

    for letter, inv in w.letters:
        if letter.kind != "se":
            raise BadIndices("expected symplectic letters, got %r"
                             % (letter.kind,))
        i, j, p, c = letter.i, letter.j, letter.param, letter.cert
        if inv:
            p = -p
            c = None if c is None else -c
        if i != 1 and j != 1:
            ni, nj = sigma(j), sigma(i)
            if ni != 1 and nj != 1:
                raise BadIndices("letters must touch the first index "
                                 "up to the pairing swap")
            if (i + j) % 2 == 0:
                p = -p
                c = None if c is None else -c
            i, j = ni, nj
        direction = "rho" if j == 1 else "mu"
        if fold is None or fold.direction != direction:
            flush()
            fold = _TransvFold(ring, n2, std, direction)
        fold.feed(i, j, p, c)
    flush()
    result = Word(ring, size, out)
    got, want = evaluate(result), evaluate(w)
    if got != want:
        raise VerificationFailed("regrouped word changed the evaluation "
                                 "at %r" % (got.first_mismatch(want),))
    return result


def _one_perp(m):
    ring = m.ring
    size = m.rows + 1
    grid = [[ring.zero] * size for _ in range(size)]
    grid[0][0] = ring.one
    for r in range(m.rows):
        for c in range(m.cols):
            grid[1 + r][1 + c] = m.entry(r + 1, c + 1)
    return ExactMatrix(ring, size, size, [e for row in grid for e in row])


def _two_perp(m):
    return _one_perp(_one_perp(m))


def transport_conjugation(letter, eps, target_form=None):
    """Carry a transvection letter across a change of alternating form.

    eps is a word of linear letters one size below the form block; it
    acts through the embedding fixing the block's first coordinate.
    The result is the same kind of letter for the transformed form,
    with the vector pulled back through the inverse embedding and the
    scalar untouched. The conjugation identity is checked exactly.
    """
    if letter.kind not in ("rho", "mu"):
        raise BadIndices("expected a transvection letter, got %r"
                         % (letter.kind,))
    n2 = letter.q.length
    if eps.size != n2 - 1:
        raise FormMismatch("conjugator word of size %d for a form block "
                           "of size %d" % (eps.size, n2))
    emb = _one_perp(evaluate(eps))
    emb_inv = _one_perp(evaluate(invert_word(eps)))
    phi_new = emb.transpose() * letter.form * emb
    if target_form is not None:
        tm = (target_form.matrix if isinstance(target_form, AlternatingForm)
              else target_form)
        if tm != phi_new:
            raise FormRelationFails("supplied form does not match the "
                                    "transported one")
    q_new = emb_inv.apply(letter.q)
    certs = None
    if letter.certs is not None:
        sc, qc = letter.certs
        if sc is not None and all(c is not None for c in qc):
            moved = []
            for r in range(1, n2 + 1):
                acc = None
                for k in range(1, n2 + 1):
                    coeff = emb_inv.entry(r, k)
                    if coeff.is_zero():
                        continue
                    piece = qc[k - 1].scale(coeff)
                    acc = piece if acc is None else acc + piece
                moved.append(acc if acc is not None else sc.ideal.zero_cert())
            certs = (sc, tuple(moved))
    if letter.kind == "rho":
        new_letter = RhoLetter(q_new, letter.alpha, phi_new, certs)
    else:
        new_letter = MuLetter(q_new, letter.beta, phi_new, certs)
    big = _two_perp(emb)
    big_inv = _two_perp(emb_inv)
    if big_inv * letter.matrix() * big != new_letter.matrix():
        raise VerificationFailed("transported letter does not reproduce "
                                 "the conjugate")
    return new_letter


class StandardizationResult:
    """Recorded congruence word bringing the standard form to the input."""

    __slots__ = ("eps_word", "verified", "relative")
    __hash__ = None

    def __init__(self, eps_word, verified, relative):
        object.__setattr__(self, "eps_word", eps_word)
        object.__setattr__(self, "verified", verified)
        object.__setattr__(self, "relative", relative)

    def __setattr__(self, name, value):
        raise AttributeError("results are immutable")

    def __repr__(self):
        return ("StandardizationResult(%d letters, verified=%r, relative=%r)"
                % (len(self.eps_word), self.verified, self.relative))


def _local_data(ring):
    if not isinstance(ring, ZmodRing):
        raise NotLocalRing("standardization supports Z/p^k rings only")
    m = ring.m
    p = None
    d = 2
    while d * d <= m:
        if m % d == 0:
            p = d
            break
        d += 1
    if p is None:
        p = m
    k = 0
    t = m
    while t % p == 0:
        t //= p
        k += 1
    if t != 1:
        raise NotLocalRing("modulus %d is not a prime power" % (m,))
    return p, k


def _p_val(v, p, k):
    s = 0
    while s < k and v % p == 0:
        v //= p
        s += 1
    return s


def _member_cert(ideal, value, p, k):
    """An ideal certificate for value over Z/p^k, or None."""
    ring = ideal.ring
    v = value.payload
    if v == 0:
        return ideal.zero_cert()
    best = None
    for gi, g in enumerate(ideal.generators):
        gp = g.payload
        if gp == 0:
            continue
        t = _p_val(gp, p, k)
        if best is None or t < best[1]:
            best = (gi, t, gp)
    if best is None:
        return None
    gi, t, gp = best
    s = _p_val(v, p, k)
    if s < t:
        return None
    mod = p ** (k - t)
    c0 = ((v // p ** t) * pow(gp // p ** t, -1, mod)) % mod
    coeffs = [ring.zero] * len(ideal.generators)
    coeffs[gi] = ring.el(c0)
    cert = certify(ideal, coeffs)
    if cert.value != value:
        return None
    return cert


def standardize_alternating(phi, ideal):
    """Recorded congruence operations matching the input to the block form.

    Works over Z/p^k. The form must be alternating with Pfaffian one
    and congruent to the standard block form modulo the ideal. The
    returned word, embedded below one fixed coordinate, conjugates the
    standard form back to the input exactly; the relative flag records
    whether every letter parameter certifies into the ideal.
    """
    fm = phi.matrix
    ring = fm.ring
    if ideal.ring != ring:
        raise IdealMismatch("form and ideal live over different rings")
    p, k = _local_data(ring)
    if phi.pfaffian_cache != ring.one:
        raise PfaffianNotOne("form has Pfaffian %r" % (phi.pfaffian_cache,))
    size = phi.size
    n = size // 2
    std = standard_symplectic_form(ring, n)
    for r in range(1, size + 1):
        for c in range(r + 1, size + 1):
            d = fm.entry(r, c) - std.entry(r, c)
            if _member_cert(ideal, d, p, k) is None:
                raise NotCongruentToStandard(
                    "entry (%d, %d) is not congruent to the standard form"
                    % (r, c))

    W = [[fm.entry(r + 1, c + 1) for c in range(size)] for r in range(size)]
    ops = []

    def apply_op(c, d, lam):
        # congruence op: add lam * (col c) to col d, then same for rows
        if lam.is_zero():
            return
        ops.append((c, d, lam))
        for r in range(size):
            W[r][d - 1] = W[r][d - 1] + lam * W[r][c - 1]
        for cc in range(size):
            W[d - 1][cc] = W[d - 1][cc] + lam * W[c - 1][cc]

    def is_unit(x):
        return x.payload % p != 0

    for t in range(1, n):
        a1, a2 = 2 * t - 1, 2 * t
        trailing = list(range(2 * t + 1, size + 1))

        if not is_unit(W[a1 - 1][a2 - 1]):
            for b in trailing:
                if is_unit(W[a1 - 1][b - 1]):
                    apply_op(b, a2, ring.one)
                    break
            else:
                raise NotCongruentToStandard(
                    "no unit pivot available in row %d" % (a1,))

        def clear_head_row():
            uinv = invert_unit(W[a1 - 1][a2 - 1])
            for b in trailing:
                v = W[a1 - 1][b - 1]
                if not v.is_zero():
                    apply_op(a2, b, -(v * uinv))

        clear_head_row()

        guard = 0
        while True:
            u = W[a1 - 1][a2 - 1]
            gap = u - ring.one
            if gap.is_zero():
                break
            guard += 1
            if guard > 4:
                raise VerificationFailed("pivot normalization failed to "
                                         "stabilize")
            b = trailing[0]
            sq = ideal.square()
            cert2 = _member_cert(sq, gap, p, k)
            if cert2 is not None:
                pairs = ideal.square_pairs()
                for idx, (pi, qi) in enumerate(pairs):
                    cm = cert2.coefficients[idx]
                    gpv = ideal.generators[pi]
                    gqv = ideal.generators[qi]
                    if cm.is_zero() or gpv.is_zero() or gqv.is_zero():
                        continue
                    ucur = W[a1 - 1][a2 - 1]
                    lam2 = -(cm * gqv) * invert_unit(ucur)
                    apply_op(a2, b, gpv)
                    apply_op(b, a2, lam2)
                    apply_op(a2, b, -gpv)
                    res = W[a1 - 1][b - 1]
                    if not res.is_zero():
                        apply_op(a2, b,
                                 -(res * invert_unit(W[a1 - 1][a2 - 1])))
            else:
                lam2 = -gap * invert_unit(u)
                apply_op(a2, b, ring.one)
                apply_op(b, a2, lam2)
                apply_op(a2, b, -ring.one)
                res = W[a1 - 1][b - 1]
                if not res.is_zero():
                    apply_op(a2, b, -(res * invert_unit(W[a1 - 1][a2 - 1])))
            clear_head_row()

        guard = 0
        while True:
            dirty = False
            for b in trailing:
                v = W[a2 - 1][b - 1]
                if v.is_zero():
                    continue
                s = b + 1 if b % 2 == 1 else b - 1
                w_piv = W[s - 1][b - 1]
                if not is_unit(w_piv):
                    raise NotCongruentToStandard(
                        "partner pivot at (%d, %d) is not a unit" % (s, b))
                apply_op(s, a2, -(v * invert_unit(w_piv)))
                dirty = True
            if not dirty:
                break
            guard += 1
            if guard > 4 * k + 8:
                raise VerificationFailed("partner-row clearing failed to "
                                         "stabilize")

    for r in range(size):
        for c in range(size):
            if W[r][c] != std.entry(r + 1, c + 1):
                raise VerificationFailed(
                    "working form did not reach the standard form at "
                    "(%d, %d)" % (r + 1, c + 1))

    relative = True
    letters = []
    for c, d, lam in ops:
        cert = _member_cert(ideal, lam, p, k)
        if cert is None:
            relative = False
        letters.append((LinLetter(size - 1, c - 1, d - 1, lam, cert), False))
    eps_word = invert_word(Word(ring, size - 1, letters))

    emb = _one_perp(evaluate(eps_word))
    if emb.transpose() * std * emb != fm:
        raise VerificationFailed("recorded word does not reconstruct the "
                                 "input form")
    return StandardizationResult(eps_word, True, relative)
