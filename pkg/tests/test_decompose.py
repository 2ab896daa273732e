import pytest

from elemcalc import (
    BadIndices,
    CertificateInvalid,
    DimensionTooSmall,
    IdealPresentation,
    PairNotZero,
    PairingNonzero,
    SupportOverlap,
    SympLetter,
    TwoNotInvertible,
    Word,
    ZmodRing,
    certify,
    decompose_conjugate,
    evaluate,
    from_rows,
    invert_word,
    long_root_pair,
    long_root_reduce,
    long_root_unimodular,
    short_root_pair,
    short_root_split,
    sigma_index,
    sum_to_product,
    word,
    word_certified,
)
from elemcalc.matrices import ColumnVector, zero_vector

Z27 = ZmodRing(27)
Z8 = ZmodRing(8)
I3 = IdealPresentation(Z27, (Z27.el(3),))


def vec(ring, *entries):
    return ColumnVector(ring, [ring.el(e) for e in entries])


def tilde_entries(v):
    """Row vector tilde(v): entry c is +v_{sigma(c)} for even c, else -."""
    out = []
    for c in range(1, v.length + 1):
        s = v.entry(sigma_index(c))
        out.append(s if c % 2 == 0 else -s)
    return out


def closed_short(v, coeff):
    """I + coeff * v vtilde, assembled entrywise."""
    ring = v.ring
    tl = tilde_entries(v)
    rows = []
    for r in range(1, v.length + 1):
        row = []
        for c in range(1, v.length + 1):
            val = v.entry(r) * tl[c - 1] * coeff
            if r == c:
                val = val + ring.one
            row.append(val)
        rows.append(row)
    return from_rows(ring, rows)


def closed_long(v, w, coeff):
    """I + coeff * (v wtilde + w vtilde), assembled entrywise."""
    ring = v.ring
    tv = tilde_entries(v)
    tw = tilde_entries(w)
    rows = []
    for r in range(1, v.length + 1):
        row = []
        for c in range(1, v.length + 1):
            val = (v.entry(r) * tw[c - 1] + w.entry(r) * tv[c - 1]) * coeff
            if r == c:
                val = val + ring.one
            row.append(val)
        rows.append(row)
    return from_rows(ring, rows)


def test_short_root_pair():
    v = vec(Z27, 3, 6, 0, 0)
    a = certify(I3, [Z27.el(1)])
    b = certify(I3, [Z27.el(2)])
    trace = []
    out = short_root_pair(v, a, b, 2, trace=trace)
    assert evaluate(out) == closed_short(v, a.value * b.value)
    assert word_certified(out, I3)
    assert trace and trace[0][0] == "short-root-pair"


def test_short_root_pair_embedding():
    v = vec(Z27, 3, 6, 9, 12)
    a = certify(I3, [Z27.el(1)])
    b = certify(I3, [Z27.el(4)])
    out = short_root_pair(v, a, b, 3)
    assert out.size == 6
    ext = vec(Z27, 3, 6, 9, 12, 0, 0)
    assert evaluate(out) == closed_short(ext, a.value * b.value)


def test_short_root_pair_errors():
    a = certify(I3, [Z27.el(1)])
    b = certify(I3, [Z27.el(2)])
    with pytest.raises(SupportOverlap):
        short_root_pair(vec(Z27, 3, 6, 0, 0), a, b, 1)
    I8 = IdealPresentation(Z8, (Z8.el(2),))
    a8 = certify(I8, [Z8.el(1)])
    with pytest.raises(TwoNotInvertible):
        short_root_pair(vec(Z8, 2, 0, 0, 0), a8, a8, 2)


def test_long_root_pair():
    v = vec(Z27, 3, 0, 0, 0, 0, 0)
    w = vec(Z27, 0, 0, 6, 0, 0, 0)
    a = certify(I3, [Z27.el(1)])
    b = certify(I3, [Z27.el(2)])
    out = long_root_pair(v, w, a, b, 3)
    assert evaluate(out) == closed_long(v, w, a.value * b.value)
    assert word_certified(out, I3)


def test_long_root_pair_errors():
    a = certify(I3, [Z27.el(1)])
    with pytest.raises(PairingNonzero):
        long_root_pair(vec(Z27, 3, 0, 0, 0), vec(Z27, 0, 3, 0, 0), a, a, 2)
    with pytest.raises(SupportOverlap):
        long_root_pair(vec(Z27, 3, 0, 0, 0), vec(Z27, 0, 0, 3, 0), a, a, 2)


def test_long_root_reduce():
    v = vec(Z27, 3, 6, 0, 0, 0, 0)
    w = vec(Z27, 0, 0, 12, 0, 9, 3)
    a = certify(I3, [Z27.el(1)])
    b = certify(I3, [Z27.el(2)])
    trace = []
    out = long_root_reduce(v, w, a, b, 3, trace=trace)
    assert out.size == 6
    assert evaluate(out) == closed_long(v, w, a.value * b.value)
    assert word_certified(out, I3)
    assert trace[0][0] == "long-root-reduce"


def test_long_root_reduce_errors():
    a = certify(I3, [Z27.el(1)])
    with pytest.raises(PairNotZero):
        long_root_reduce(vec(Z27, 3, 0, 0, 3), vec(Z27, 0, 0, 3, 0), a, a, 2)
    with pytest.raises(PairingNonzero):
        long_root_reduce(vec(Z27, 3, 0, 0, 0), vec(Z27, 0, 3, 0, 0), a, a, 2)
    with pytest.raises(BadIndices):
        long_root_reduce(vec(Z27, 3, 0, 0, 0), vec(Z27, 0, 0, 3, 0), a, a, 5)


def test_short_root_split():
    v = vec(Z27, 3, 6, 9, 12)
    a = certify(I3, [Z27.el(2)])
    b = certify(I3, [Z27.el(3)])
    trace = []
    out = short_root_split(v, a, b, trace=trace)
    assert evaluate(out) == closed_short(v, a.value * b.value)
    assert word_certified(out, I3)
    tags = {t for t, _ in trace}
    assert "short-root-split" in tags


def test_short_root_split_small_dimension():
    a = certify(I3, [Z27.el(1)])
    with pytest.raises(DimensionTooSmall):
        short_root_split(vec(Z27, 3, 6), a, a)


def test_sum_to_product():
    w = vec(Z27, 5, 0, 0, 0, 0, 0)
    u1 = vec(Z27, 3, 0, 6, 0, 0, 0)
    u2 = vec(Z27, 0, 0, 0, 3, 9, 0)
    us = [u1, u2]
    certs = []
    for u in us:
        certs.append([certify(I3, [Z27.el(u.entry(k).payload // 3)])
                      for k in range(1, 7)])
    ordering, x = sum_to_product(us, certs, w)
    assert sorted(ordering) == [0, 1]
    assert x.ideal == I3.square()
    assert x.check()
    lhs = closed_long(u1, w, Z27.one) + closed_long(u2, w, Z27.one) \
        - from_rows(Z27, [[1 if r == c else 0 for c in range(6)]
                          for r in range(6)])
    rhs = from_rows(Z27, [[1 if r == c else 0 for c in range(6)]
                          for r in range(6)])
    for idx in ordering:
        rhs = rhs * closed_long(us[idx], w, Z27.one)
    rhs = rhs * closed_short(w, x.value)
    assert lhs == rhs


def test_sum_to_product_errors():
    w = vec(Z27, 5, 0, 0, 0)
    bad = vec(Z27, 0, 3, 0, 0)
    c = [certify(I3, [Z27.el(0)])] * 4
    with pytest.raises(PairingNonzero):
        sum_to_product([bad], [c], w)
    with pytest.raises(PairingNonzero):
        sum_to_product([], [], w)


def test_long_root_unimodular():
    v = vec(Z27, 3, 0, 6, 0, 15, 0)
    w = vec(Z27, 5, 0, 0, 2, 0, 1)
    u = zero_vector(Z27, 6).with_entry(6, 1)
    a = certify(I3, [Z27.el(1)])
    b = certify(I3, [Z27.el(2)])
    pairing = Z27.zero
    for c in range(6):
        pairing = pairing + tilde_entries(v)[c] * w.entry(c + 1)
    assert pairing.is_zero()
    trace = []
    out = long_root_unimodular(v, w, a, b, u, trace=trace)
    assert evaluate(out) == closed_long(v, w, a.value * b.value)
    assert word_certified(out, I3)
    tags = {t for t, _ in trace}
    assert "long-root-unimodular" in tags and "kernel-decomposition" in tags


def test_long_root_unimodular_errors():
    a = certify(I3, [Z27.el(1)])
    v = vec(Z27, 3, 0, 0, 0)
    w = vec(Z27, 1, 0, 0, 0)
    u = vec(Z27, 1, 0, 0, 0)
    with pytest.raises(DimensionTooSmall):
        long_root_unimodular(v, w, a, a, u)
    v6 = vec(Z27, 0, 3, 0, 0, 0, 0)
    w6 = vec(Z27, 1, 0, 0, 0, 0, 0)
    u6 = vec(Z27, 1, 0, 0, 0, 0, 0)
    with pytest.raises(PairingNonzero):
        long_root_unimodular(v6, w6, a, a, u6)
    ok_v = vec(Z27, 3, 0, 0, 0, 0, 0)
    bad_u = vec(Z27, 0, 1, 0, 0, 0, 0)
    with pytest.raises(CertificateInvalid):
        long_root_unimodular(ok_v, w6, a, a, bad_u)


def conjugate_oracle(g, i, j, ab):
    ring = g.ring
    size = g.size
    mid = word(ring, size, SympLetter(size, i, j, ab))
    full = g * mid * invert_word(g)
    acc = None
    for letter, inv in full.letters:
        m = letter.matrix(inv)
        acc = m if acc is None else acc * m
    return acc


def test_decompose_short_case():
    a = certify(I3, [Z27.el(1)])
    b = certify(I3, [Z27.el(2)])
    g = word(Z27, 6,
             SympLetter(6, 1, 3, Z27.el(4)),
             (SympLetter(6, 5, 2, Z27.el(7)), True),
             SympLetter(6, 2, 1, Z27.el(11)))
    res = decompose_conjugate(g, 1, 2, a, b)
    assert res.verified
    assert res.achieved == res.target
    assert res.target == conjugate_oracle(g, 1, 2, a.value * b.value)
    assert word_certified(res.output, I3)
    tags = {t for t, _ in res.lemma_trace}
    assert "conjugated-short-root" in tags


def test_decompose_long_case():
    a = certify(I3, [Z27.el(2)])
    b = certify(I3, [Z27.el(1)])
    g = word(Z27, 6,
             SympLetter(6, 3, 1, Z27.el(5)),
             SympLetter(6, 4, 6, Z27.el(8)))
    res = decompose_conjugate(g, 1, 4, a, b)
    assert res.verified
    assert res.target == conjugate_oracle(g, 1, 4, a.value * b.value)
    assert word_certified(res.output, I3)
    tags = {t for t, _ in res.lemma_trace}
    assert "conjugated-long-root" in tags
    assert "long-root-unimodular" in tags


def test_decompose_empty_conjugator():
    a = certify(I3, [Z27.el(1)])
    b = certify(I3, [Z27.el(2)])
    g = Word(Z27, 6, ())
    res = decompose_conjugate(g, 2, 5, a, b)
    assert res.verified
    assert res.target == evaluate(word(
        Z27, 6, SympLetter(6, 2, 5, a.value * b.value)))
    assert word_certified(res.output, I3)
    assert res.lemma_trace[0][0] == "include-square"


def test_decompose_errors():
    a = certify(I3, [Z27.el(1)])
    g4 = Word(Z27, 4, ())
    with pytest.raises(DimensionTooSmall):
        decompose_conjugate(g4, 1, 2, a, a)
    g6 = Word(Z27, 6, ())
    with pytest.raises(BadIndices):
        decompose_conjugate(g6, 3, 3, a, a)
    I8 = IdealPresentation(Z8, (Z8.el(2),))
    a8 = certify(I8, [Z8.el(1)])
    g8 = Word(Z8, 6, ())
    with pytest.raises(TwoNotInvertible):
        decompose_conjugate(g8, 1, 2, a8, a8)
