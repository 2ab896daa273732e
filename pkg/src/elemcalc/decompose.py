"""Constructive decomposition of conjugated symplectic generators.

Given a word g over symplectic letters and certified ideal elements
a, b, the top-level entry point writes g . se_ij(a b) . g^-1 as a word
whose every letter carries a certificate into the ideal. The route goes
through a small tower of identities:

* a commutator producing I + ab v vtilde from two pair-supported
  transvections (short_root_pair),
* a commutator producing I + ab (v wtilde + w vtilde) when the two
  vectors pair to zero (long_root_pair),
* a four-factor reduction removing the requirement that w avoid the
  auxiliary pair (long_root_reduce),
* a three-factor split removing the support restriction on v entirely
  (short_root_split),
* a regrouping of a sum of rank-two pieces into a product plus a
  scalar correction (sum_to_product),
* the general rank-two case driven by a unimodularity certificate
  (long_root_unimodular).

Every operation evaluates its output and compares against the closed
form, raising VerificationFailed on any mismatch.
"""

from __future__ import annotations

from .errors import (
    BadIndices,
    DimensionTooSmall,
    PairNotZero,
    PairingNonzero,
    SupportOverlap,
    VerificationFailed,
)
from .matrices import (
    ColumnVector,
    col_times_row,
    identity,
    sigma_index as sigma,
    tilde,
    tilde_pair,
    zero_vector,
)
from .rings import CertifiedElement, half, product_certificate
from .words import SympLetter, Word, evaluate, invert_word


class DecompositionResult:
    """Outcome of the top-level decomposition."""

    __slots__ = ("output", "target", "achieved", "verified", "lemma_trace")

    def __init__(self, output, target, achieved, verified, lemma_trace):
        self.output = output
        self.target = target
        self.achieved = achieved
        self.verified = verified
        self.lemma_trace = tuple(lemma_trace)

    def __repr__(self):
        return "DecompositionResult(verified=%r, letters=%d, trace=%r)" % (
            self.verified, len(self.output), self.lemma_trace)


def sym_outer(v):
    """The matrix v . tilde(v)."""
    return col_times_row(v, tilde(v))


def pair_outer(v, w):
    """The matrix v . tilde(w) + w . tilde(v)."""
    return col_times_row(v, tilde(w)) + col_times_row(w, tilde(v))


def _extend(v, size):
    if v.length == size:
        return v
    return ColumnVector(v.ring, list(v.entries) + [v.ring.zero] * (size - v.length))


def _pair_coords(t):
    return 2 * t - 1, 2 * t


def _resolve_pair(v, auxiliary_pair, check_support=True):
    """Size bookkeeping for an auxiliary pair; embeds when one past the end."""
    n = v.length // 2
    if not (1 <= auxiliary_pair <= n + 1):
        raise BadIndices("auxiliary pair %d out of range for length %d"
                         % (auxiliary_pair, v.length))
    size = max(v.length, 2 * auxiliary_pair)
    v = _extend(v, size)
    p, pbar = _pair_coords(auxiliary_pair)
    if check_support and not (v.entry(p).is_zero() and v.entry(pbar).is_zero()):
        raise SupportOverlap("vector must vanish on the auxiliary pair")
    return v, size, p, pbar


def _pair_transvection_word(ring, size, s, params, target=None, target_cert=None):
    """Word for I + target e_{s,sigma(s)} + sum_k z_k (e_{k,sigma(s)} pattern).

    params maps k (k not in the pair of s) to (z_k, cert-or-None); the
    assembled matrix is I + t e_{s,sbar} + c (v etilde_s + e_s vtilde)
    whenever z_k = (-1)^(s+1) c v_k. The word is one short letter fixing
    the (s, sbar) cell plus one long letter per support coordinate.
    """
    sbar = sigma(s)
    cross = ring.zero
    cross_cert = None
    for k in sorted(params):
        if k % 2 == 0 or sigma(k) not in params:
            continue
        zk, ck = params[k]
        zl, _ = params[sigma(k)]
        sgn = -1 if (k + sbar) % 2 == 0 else 1
        term = zk * zl
        if sgn == -1:
            term = -term
        cross = cross + term
        if ck is not None:
            piece = ck.scale(zl if sgn == 1 else -zl)
            cross_cert = piece if cross_cert is None else cross_cert + piece
    delta = (ring.zero if target is None else target) - cross
    delta_cert = None
    some_cert = target_cert
    if some_cert is None:
        for k in params:
            if params[k][1] is not None:
                some_cert = params[k][1]
                break
    if some_cert is not None:
        delta_cert = some_cert.ideal.zero_cert()
        if target_cert is not None:
            delta_cert = delta_cert + target_cert
        if cross_cert is not None:
            delta_cert = delta_cert - cross_cert
    letters = []
    if not delta.is_zero():
        letters.append((SympLetter(size, s, sbar, delta, delta_cert), False))
    for k in sorted(params):
        zk, ck = params[k]
        if zk.is_zero():
            continue
        letters.append((SympLetter(size, k, sbar, zk, ck), False))
    return Word(ring, size, letters)


def _scaled_params(v, size, skip, factor, cert, cert_factor):
    """z_k = factor * v_k with certificates cert.scale(cert_factor * v_k)."""
    params = {}
    for k in range(1, size + 1):
        if k in skip:
            continue
        vk = v.entry(k)
        if vk.is_zero():
            continue
        z = factor * vk
        c = None if cert is None else cert.scale(cert_factor * vk)
        params[k] = (z, c)
    return params


def _verify(word_out, closed, what):
    got = evaluate(word_out)
    if got != closed:
        mism = got.first_mismatch(closed)
        raise VerificationFailed(
            "%s: evaluation differs from closed form at %r" % (what, mism))
    return word_out


def short_root_pair(v, a, b, auxiliary_pair, trace=None, verify=True):
    """Commutator word equal to I + a b v vtilde, built on a spare pair.

    v must vanish on the auxiliary pair (which may be one past the end
    of v, enlarging the matrix by one pair). Needs 2 to be a unit.
    """
    ring = v.ring
    h = half(ring)
    v, size, p, pbar = _resolve_pair(v, auxiliary_pair)
    if trace is not None:
        trace.append(("short-root-pair",
                      "pair=%d support=%r" % (auxiliary_pair, v.support())))
    av = a.value
    bv = b.value
    w1 = _pair_transvection_word(
        ring, size, p,
        _scaled_params(v, size, (p, pbar), av * h, a, h))
    w2 = _pair_transvection_word(
        ring, size, pbar,
        _scaled_params(v, size, (p, pbar), -bv, b, ring.el(-1)))
    out = w1 * w2 * invert_word(w1) * invert_word(w2)
    if verify:
        closed = identity(ring, size) + sym_outer(v) * (av * bv)
        _verify(out, closed, "short-root-pair")
    return out


def long_root_pair(v, w, a, b, auxiliary_pair, trace=None, verify=True):
    """Commutator word equal to I + a b (v wtilde + w vtilde).

    Requires tilde(w) . v = 0 and both vectors to vanish on the
    auxiliary pair.
    """
    ring = v.ring
    if not tilde_pair(w, v).is_zero():
        raise PairingNonzero("tilde(w) . v must vanish")
    v, size, p, pbar = _resolve_pair(v, auxiliary_pair)
    w, _, _, _ = _resolve_pair(w, auxiliary_pair)
    if trace is not None:
        trace.append(("long-root-pair",
                      "pair=%d supports=%r/%r"
                      % (auxiliary_pair, v.support(), w.support())))
    av = a.value
    bv = b.value
    m1 = _pair_transvection_word(
        ring, size, pbar,
        _scaled_params(v, size, (p, pbar), av, a, ring.one))
    m2 = _pair_transvection_word(
        ring, size, p,
        _scaled_params(w, size, (p, pbar), bv, b, ring.one))
    out = m1 * m2 * invert_word(m1) * invert_word(m2)
    if verify:
        closed = identity(ring, size) + pair_outer(v, w) * (av * bv)
        _verify(out, closed, "long-root-pair")
    return out


def long_root_reduce(v, w, a, b, zero_pair, trace=None, verify=True):
    """Word equal to I + a b (v wtilde + w vtilde) with v off one pair.

    v must vanish on the zero pair; w is unrestricted there. Requires
    tilde(w) . v = 0. Works in place (no embedding).
    """
    ring = v.ring
    p, pbar = _pair_coords(zero_pair)
    if p > v.length:
        raise BadIndices("zero pair out of range")
    if not (v.entry(p).is_zero() and v.entry(pbar).is_zero()):
        raise PairNotZero("v must vanish on the zero pair")
    if not tilde_pair(w, v).is_zero():
        raise PairingNonzero("tilde(w) . v must vanish")
    size = v.length
    if trace is not None:
        trace.append(("long-root-reduce",
                      "pair=%d v-support=%r" % (zero_pair, v.support())))
    av, bv = a.value, b.value
    x = w.entry(p)
    y = w.entry(pbar)
    w_off = w.with_entry(p, 0).with_entry(pbar, 0)
    parts = []
    if not w_off.is_zero():
        parts.append(long_root_pair(v, w_off, a, b, zero_pair,
                                    trace=trace, verify=verify))
    f2 = _pair_transvection_word(
        ring, size, pbar,
        _scaled_params(v, size, (p, pbar), -(av * bv * y), a, -(bv * y)))
    f3 = _pair_transvection_word(
        ring, size, p,
        _scaled_params(v, size, (p, pbar), av * bv * x, a, bv * x))
    parts.append(f2)
    parts.append(f3)
    if not (x * y * av * bv).is_zero():
        parts.append(short_root_pair(v, a.scale(bv * x), b.scale(av * y),
                                     zero_pair, trace=trace, verify=verify))
    out = parts[0]
    for piece in parts[1:]:
        out = out * piece
    if verify:
        closed = identity(ring, size) + pair_outer(v, w) * (av * bv)
        _verify(out, closed, "long-root-reduce")
    return out


def short_root_split(v, a, b, trace=None, verify=True):
    """Word equal to I + a b v vtilde with no support restriction on v.

    Splits v into its last-pair part and the rest; needs at least two
    coordinate pairs and 2 a unit.
    """
    ring = v.ring
    n = v.length // 2
    if n < 2:
        raise DimensionTooSmall("the split needs at least two pairs")
    if trace is not None:
        trace.append(("short-root-split", "support=%r" % (v.support(),)))
    last = n
    p, pbar = _pair_coords(last)
    v_tail = zero_vector(ring, v.length)
    v_tail = v_tail.with_entry(p, v.entry(p)).with_entry(pbar, v.entry(pbar))
    v_head = v.with_entry(p, 0).with_entry(pbar, 0)
    parts = []
    if not v_head.is_zero():
        parts.append(short_root_pair(v_head, a, b, last,
                                     trace=trace, verify=verify))
        if not v_tail.is_zero():
            parts.append(long_root_reduce(v_head, v_tail, a, b, last,
                                          trace=trace, verify=verify))
    if not v_tail.is_zero():
        parts.append(short_root_pair(v_tail, a, b, 1,
                                     trace=trace, verify=verify))
    out = Word(ring, v.length)
    for piece in parts:
        out = out * piece
    if verify:
        closed = identity(ring, v.length) + sym_outer(v) * (a.value * b.value)
        _verify(out, closed, "short-root-split")
    return out


def sum_to_product(us, us_certs, w, trace=None):
    """Regroup I + sum (u_i wtilde + w utilde_i) into product form.

    Each u_i must pair to zero with w and carry coordinatewise
    certificates. Returns (ordering, x) with x a certified element of
    the square ideal such that the product over the ordering times
    I + x w wtilde equals the sum, exactly.
    """
    ring = w.ring
    for u in us:
        if not tilde_pair(u, w).is_zero():
            raise PairingNonzero("each tilde(u_i) . w must vanish")
    if trace is not None:
        trace.append(("sum-to-product", "%d pieces" % len(us)))
    x_cert = None
    for i in range(len(us)):
        for j in range(i + 1, len(us)):
            for ell in range(1, w.length + 1):
                ci = us_certs[i][sigma(ell) - 1]
                cj = us_certs[j][ell - 1]
                if ci.value.is_zero() or cj.value.is_zero():
                    continue
                piece = product_certificate(ci, cj)
                if ell % 2 == 1:
                    piece = -piece
                x_cert = piece if x_cert is None else x_cert + piece
    if x_cert is None:
        ideal = us_certs[0][0].ideal if us_certs and us_certs[0] else None
        if ideal is None:
            raise PairingNonzero("sum_to_product needs at least one piece")
        x_cert = ideal.square().zero_cert()
    else:
        x_cert = -x_cert
    ordering = list(range(len(us)))
    lhs = identity(ring, w.length)
    for u in us:
        lhs = lhs + pair_outer(u, w) * ring.one
    rhs = identity(ring, w.length)
    for i in ordering:
        rhs = rhs * (identity(ring, w.length) + pair_outer(us[i], w))
    rhs = rhs * (identity(ring, w.length) + sym_outer(w) * x_cert.value)
    if lhs != rhs:
        raise VerificationFailed("sum_to_product regrouping identity failed")
    return ordering, x_cert


def long_root_unimodular(v, w, a, b, u, trace=None, verify=True):
    """Word equal to I + a b (v wtilde + w vtilde), w unimodular via u.

    Needs tilde(v) . w = 0, u^t w = 1, and at least three pairs.
    """
    ring = v.ring
    size = v.length
    n = size // 2
    if n < 3:
        raise DimensionTooSmall("the unimodular case needs three pairs")
    if not tilde_pair(v, w).is_zero():
        raise PairingNonzero("tilde(v) . w must vanish")
    if trace is not None:
        trace.append(("long-root-unimodular", "v-support=%r" % (v.support(),)))
    av, bv = a.value, b.value
    from .matrices import kernel_decomposition
    c_vec = ColumnVector(ring, [tilde(v).entry(1, ell)
                                for ell in range(1, size + 1)])
    coeffs = kernel_decomposition(c_vec, w, u)
    if trace is not None:
        trace.append(("kernel-decomposition", "%d pieces" % len(coeffs)))
    pieces = []
    raw_pieces = []
    piece_certs = []
    piece_pairs = []
    for (i, j) in sorted(coeffs):
        aij = coeffs[(i, j)]
        vec = zero_vector(ring, size)
        si, sj = sigma(i), sigma(j)
        ci = aij * w.entry(j)
        if i % 2 == 1:
            ci = -ci
        cj = aij * w.entry(i)
        if j % 2 == 0:
            cj = -cj
        vec = vec.with_entry(si, vec.entry(si) + ci)
        vec = vec.with_entry(sj, vec.entry(sj) + cj)
        certs = []
        for ell in range(1, size + 1):
            certs.append(a.scale(bv * vec.entry(ell)))
        pieces.append(vec.scale(av * bv))
        raw_pieces.append(vec)
        piece_certs.append(certs)
        piece_pairs.append((i, j))
    recon = zero_vector(ring, size)
    for vec in pieces:
        recon = recon + vec
    if recon != v.scale(av * bv):
        raise VerificationFailed("kernel pieces do not rebuild a b v")
    ordering, x_cert = sum_to_product(pieces, piece_certs, w, trace=trace)
    out = Word(ring, size)
    for idx in ordering:
        i, j = piece_pairs[idx]
        used = {(i + 1) // 2, (j + 1) // 2}
        free = None
        for t in range(1, n + 1):
            if t not in used:
                free = t
                break
        if free is None:
            raise DimensionTooSmall("no free pair for kernel piece")
        piece_word = long_root_reduce(raw_pieces[idx], w, a, b, free,
                                      trace=trace, verify=verify)
        out = out * piece_word
    sq = x_cert.ideal
    base = sq.base
    pairs = base.square_pairs()
    for t, coeff in enumerate(x_cert.coefficients):
        if coeff.is_zero():
            continue
        bi, bj = pairs[t]
        ca = [ring.zero] * len(base.generators)
        ca[bi] = coeff
        cb = [ring.zero] * len(base.generators)
        cb[bj] = ring.one
        a_term = CertifiedElement(base, ca)
        b_term = CertifiedElement(base, cb)
        out = out * short_root_split(w, a_term, b_term,
                                     trace=trace, verify=verify)
    if verify:
        closed = identity(ring, size) + pair_outer(v, w) * (av * bv)
        _verify(out, closed, "long-root-unimodular")
    return out


def decompose_conjugate(g, i, j, a, b, trace=None):
    """Rewrite g . se_ij(a b) . g^-1 over certified ideal generators.

    g is a word of symplectic letters at size 2n, n >= 3; a and b are
    certified in the same ideal. The result is verified exactly.
    """
    ring = g.ring
    size = g.size
    n = size // 2
    half(ring)
    if n < 3:
        raise DimensionTooSmall("decomposition needs at least three pairs")
    if i == j or not (1 <= i <= size and 1 <= j <= size):
        raise BadIndices("bad target indices (%d, %d)" % (i, j))
    lemma_trace = [] if trace is None else trace
    ab = a.value * b.value
    target = evaluate(g * Word(ring, size, ((SympLetter(size, i, j, ab), False),))
                      * invert_word(g))
    if len(g) == 0:
        from .rewrite import include_I2_symplectic
        lemma_trace.append(("include-square", "empty conjugator"))
        out = include_I2_symplectic(n, i, j, product_certificate(a, b))
    else:
        G = evaluate(g)
        if j == sigma(i):
            v = G.column(i)
            a_eff = a if i % 2 == 1 else -a
            lemma_trace.append(("conjugated-short-root",
                                "column %d extracted" % i))
            out = short_root_split(v, a_eff, b, trace=lemma_trace)
        else:
            Ginv = evaluate(invert_word(g))
            v = G.column(i)
            w = G.column(sigma(j))
            sj = sigma(j)
            if sj % 2 == 0:
                v = -v
            u = ColumnVector(ring, Ginv.row_list(sj))
            lemma_trace.append(("conjugated-long-root",
                                "columns %d and %d extracted" % (i, sigma(j))))
            out = long_root_unimodular(v, w, a, b, u, trace=lemma_trace)
    achieved = evaluate(out)
    verified = achieved == target
    if not verified:
        raise VerificationFailed(
            "decomposition does not reproduce the conjugate: %r"
            % (achieved.first_mismatch(target),))
    return DecompositionResult(out, target, achieved, verified, lemma_trace)
