"""Randomized verification suites behind the command line interface.

Each suite repeats one self-contained trial: draw inputs from the
documented distributions, run the construction under test, and rely on
the library's own exact re-verification plus explicit cross-checks.
A trial failure records the per-trial seed together with digests of
the inputs, the expected outcome, and the achieved outcome, so any
failure can be replayed in isolation.
"""

from __future__ import annotations

import hashlib
import time

from .bridge import (
    AlternatingForm,
    E1_to_etrans,
    ESp1_to_etranssp,
    LowerTransLetter,
    UpperTransLetter,
    etrans_word_to_E1,
    etranssp_word_to_ESp1,
    rho_matrix,
    mu_matrix,
    standardize_alternating,
)
from .decompose import (
    decompose_conjugate,
    long_root_pair,
    long_root_reduce,
    long_root_unimodular,
    short_root_pair,
    short_root_split,
    sum_to_product,
)
from .errors import NotAUnit, UnknownSuite
from .matrices import (
    ColumnVector,
    basis_vector,
    det,
    pfaffian,
    sigma_index,
    standard_symplectic_form,
    tilde_pair,
)
from .rewrite import (
    rewrite_conjugation_linear,
    rewrite_conjugation_symplectic,
    specialize_and_check,
)
from .rings import (
    IdealPresentation,
    PolyRing,
    ZmodRing,
    invert_unit,
    substitute,
)
from .sampling import (
    MODULI,
    prime_of,
    sample_alternating,
    sample_certified,
    sample_element,
    sample_index1_linear_word,
    sample_index1_symplectic,
    sample_index1_symplectic_word,
    sample_linear_index1,
    sample_relation_ring,
    sample_relative_form,
    sample_symplectic_word,
    sample_vector,
    sample_zmod,
    trial_seed,
    trial_rng,
)
from .words import (
    LinLetter,
    MuLetter,
    RELATION_TAGS,
    RhoLetter,
    Word,
    check_relation,
    evaluate,
    expand_mu,
    expand_rho,
    word_certified,
    word_in_E1,
    word_in_ESp1,
)


def _digest(text):
    return hashlib.sha256(str(text).encode("utf-8")).hexdigest()[:16]


def _z27_setup():
    ring = ZmodRing(27)
    return ring, IdealPresentation(ring, (ring.el(3),))


def _fix_pairing(rng, ring, w, v, forbidden=()):
    """Adjust one coordinate of w so that tilde(w) . v vanishes.

    Returns the adjusted vector, or None when no coordinate outside
    the forbidden set sees a unit of v through the pairing.
    """
    c = tilde_pair(w, v)
    if c.is_zero():
        return w
    order = list(range(1, v.length + 1))
    rng.shuffle(order)
    for m in order:
        if m in forbidden:
            continue
        s = tilde_pair(basis_vector(ring, v.length, m), v)
        try:
            inv = invert_unit(s)
        except NotAUnit:
            continue
        return w.with_entry(m, w.entry(m) - c * inv)
    return None


def _off_pair(rng, ring, size, t):
    v = sample_vector(rng, ring, size)
    if 2 * t <= size:
        v = v.with_entry(2 * t - 1, ring.zero).with_entry(2 * t, ring.zero)
    return v


# ---------------------------------------------------------------------------
# individual suites: each runs one trial and returns None on success or
# an (inputs, expected, achieved) triple of description strings


def _suite_relations(rng):
    ring, cap = sample_relation_ring(rng)
    for tag in RELATION_TAGS:
        if tag == "linear":
            n = rng.choice((3, 4))
            indices = tuple(rng.sample(range(1, n + 1), 3))
        elif tag == "symplectic-long":
            n = 3
            while True:
                i, j = rng.sample(range(1, 2 * n + 1), 2)
                if i == sigma_index(j):
                    continue
                free = [k for k in range(1, 2 * n + 1)
                        if k not in (i, j, sigma_index(i), sigma_index(j))]
                if free:
                    indices = (i, j, rng.choice(free))
                    break
        elif tag == "symplectic-short":
            n = rng.choice((2, 3))
            i = rng.randrange(1, 2 * n + 1)
            free = [k for k in range(1, 2 * n + 1)
                    if k not in (i, sigma_index(i))]
            indices = (i, sigma_index(i), rng.choice(free))
        elif tag == "symplectic-mixed":
            n = rng.choice((2, 3))
            while True:
                i, j = rng.sample(range(1, 2 * n + 1), 2)
                if i != sigma_index(j):
                    indices = (i, j)
                    break
        else:
            n = rng.choice((2, 3))
            while True:
                i, j = rng.sample(range(1, 2 * n + 1), 2)
                k, l = rng.sample(range(1, 2 * n + 1), 2)
                if i in (l, sigma_index(k)) or j in (k, sigma_index(l)):
                    continue
                indices = (i, j, k, l)
                break
        a = sample_element(rng, ring, cap)
        b = sample_element(rng, ring, cap)
        desc = "%s over %r n=%d idx=%r a=%r b=%r" % (
            tag, ring, n, indices, a, b)
        try:
            ok = check_relation(tag, ring, n, indices, a, b)
        except Exception as e:
            return (desc, "relation holds", "raised %s: %s"
                    % (type(e).__name__, e))
        if not ok:
            return (desc, "relation holds", "two sides differ")
    return None


def _suite_short_root(rng):
    ring, ideal = _z27_setup()
    n = rng.choice((2, 3))
    t = rng.randrange(1, n + 2)
    v = _off_pair(rng, ring, 2 * n, t)
    a = sample_certified(rng, ideal)
    b = sample_certified(rng, ideal)
    desc = "short-root v=%r pair=%d a=%r b=%r" % (v, t, a.value, b.value)
    try:
        short_root_pair(v, a, b, t)
    except Exception as e:
        return (desc, "verified word", "raised %s: %s" % (type(e).__name__, e))
    return None


def _long_root_vectors(rng, ring, size, t, forbidden):
    for _ in range(40):
        v = _off_pair(rng, ring, size, t)
        w = _off_pair(rng, ring, size, t)
        w = _fix_pairing(rng, ring, w, v, forbidden)
        if w is not None:
            return v, w
    raise NotAUnit("could not arrange a vanishing pairing")


def _suite_long_root(rng):
    ring, ideal = _z27_setup()
    n = rng.choice((2, 3))
    t = rng.randrange(1, n + 2)
    forbidden = (2 * t - 1, 2 * t)
    v, w = _long_root_vectors(rng, ring, 2 * n, t, forbidden)
    a = sample_certified(rng, ideal)
    b = sample_certified(rng, ideal)
    desc = "long-root v=%r w=%r pair=%d" % (v, w, t)
    try:
        long_root_pair(v, w, a, b, t)
    except Exception as e:
        return (desc, "verified word", "raised %s: %s" % (type(e).__name__, e))
    return None


def _suite_reduce(rng):
    ring, ideal = _z27_setup()
    n = rng.choice((2, 3))
    t = rng.randrange(1, n + 1)
    for _ in range(40):
        v = _off_pair(rng, ring, 2 * n, t)
        w = sample_vector(rng, ring, 2 * n)
        w = _fix_pairing(rng, ring, w, v)
        if w is not None:
            break
    else:
        return ("reduce setup", "vectors found", "no unit coordinate")
    a = sample_certified(rng, ideal)
    b = sample_certified(rng, ideal)
    desc = "reduce v=%r w=%r pair=%d" % (v, w, t)
    try:
        long_root_reduce(v, w, a, b, t)
    except Exception as e:
        return (desc, "verified word", "raised %s: %s" % (type(e).__name__, e))
    return None


def _suite_split(rng):
    ring, ideal = _z27_setup()
    n = rng.choice((2, 3))
    v = sample_vector(rng, ring, 2 * n)
    a = sample_certified(rng, ideal)
    b = sample_certified(rng, ideal)
    desc = "split v=%r a=%r b=%r" % (v, a.value, b.value)
    try:
        short_root_split(v, a, b)
    except Exception as e:
        return (desc, "verified word", "raised %s: %s" % (type(e).__name__, e))
    return None


def _suite_sum_to_product(rng):
    ring, ideal = _z27_setup()
    n = rng.choice((2, 3))
    size = 2 * n
    k = rng.randrange(1, size + 1)
    w = basis_vector(ring, size, k).scale(
        ring.el(rng.choice((1, 2, 4, 5, 7, 8))))
    pieces = rng.randint(1, 3)
    us, us_certs = [], []
    for _ in range(pieces):
        certs = []
        for coord in range(1, size + 1):
            if coord == sigma_index(k):
                certs.append(ideal.zero_cert())
            else:
                certs.append(sample_certified(rng, ideal))
        us_certs.append(certs)
        us.append(ColumnVector(ring, tuple(c.value for c in certs)))
    desc = "sum-to-product w=%r pieces=%d" % (w, pieces)
    try:
        ordering, x_cert = sum_to_product(us, us_certs, w)
    except Exception as e:
        return (desc, "regrouped product", "raised %s: %s"
                % (type(e).__name__, e))
    if not x_cert.check():
        return (desc, "valid square-ideal certificate", "certificate invalid")
    return None


def _suite_unimodular(rng):
    ring, ideal = _z27_setup()
    size = 6
    for _ in range(40):
        w = sample_vector(rng, ring, size)
        units = []
        for m in range(1, size + 1):
            try:
                units.append((m, invert_unit(w.entry(m))))
            except NotAUnit:
                continue
        if units:
            break
    else:
        return ("unimodular setup", "unit coordinate", "none found")
    m0, inv0 = rng.choice(units)
    u = basis_vector(ring, size, m0).scale(inv0)
    v = sample_vector(rng, ring, size)
    v = _fix_pairing(rng, ring, v, w)
    if v is None:
        return ("unimodular setup", "pairing fixed", "no unit through pairing")
    a = sample_certified(rng, ideal)
    b = sample_certified(rng, ideal)
    desc = "unimodular v=%r w=%r u=%r" % (v, w, u)
    try:
        long_root_unimodular(v, w, a, b, u)
    except Exception as e:
        return (desc, "verified word", "raised %s: %s" % (type(e).__name__, e))
    return None


def _suite_decompose(rng):
    ring, ideal = _z27_setup()
    size = 6
    g = sample_symplectic_word(rng, ring, size, rng.randint(0, 6))
    i = rng.randrange(1, size + 1)
    j = rng.randrange(1, size + 1)
    while j == i:
        j = rng.randrange(1, size + 1)
    a = sample_certified(rng, ideal)
    b = sample_certified(rng, ideal)
    desc = "decompose g=%r target=(%d,%d) a=%r b=%r" % (
        g, i, j, a.value, b.value)
    try:
        res = decompose_conjugate(g, i, j, a, b)
    except Exception as e:
        return (desc, "verified decomposition", "raised %s: %s"
                % (type(e).__name__, e))
    if not res.verified:
        return (desc, "verified decomposition", "verification flag unset")
    if not word_certified(res.output, ideal):
        return (desc, "all letters certified", "uncertified letter")
    return None


def _rewrite_setup(rng):
    m = rng.choice(MODULI)
    base = ZmodRing(m)
    ring = PolyRing(base, ("X", "Y"))
    p = prime_of(m)
    ideal = IdealPresentation(
        ring, (ring.el(p), ring.el(p) * ring.var("X")))
    return ring, ideal, m


def _check_rewrite(res, ideal, linear):
    ring = res.output.ring
    member = word_in_E1 if linear else word_in_ESp1
    if not res.verified:
        return "verification flag unset"
    if not member(res.output, ideal):
        return "output letter outside the certified first-index family"
    for letter, _ in res.output.letters:
        if not substitute(letter.param, {"Y": ring.zero}).is_zero():
            return "parameter not divisible by Y"
    return None


def _suite_rewrite_linear(rng):
    ring, ideal, m = _rewrite_setup(rng)
    r = rng.choice((1, 2, 3))
    n = 3
    eps = sample_index1_linear_word(rng, ideal, n, r, variables=("X",))
    i, j = sample_linear_index1(rng, n)
    a = sample_certified(rng, ideal, max_degree=1, variables=("X",))
    desc = "rewrite-linear mod %d r=%d eps=%r target=(%d,%d) a=%r" % (
        m, r, eps, i, j, a.value)
    try:
        res = rewrite_conjugation_linear(eps, i, j, a)
        bad = _check_rewrite(res, ideal, True)
        if bad is None:
            specialize_and_check(res, rng.randrange(m), rng.randrange(m))
    except Exception as e:
        return (desc, "verified rewrite", "raised %s: %s"
                % (type(e).__name__, e))
    if bad is not None:
        return (desc, "verified rewrite", bad)
    return None


def _suite_rewrite_symplectic(rng):
    ring, ideal, m = _rewrite_setup(rng)
    r = rng.choice((1, 2, 3))
    size = 6
    eps = sample_index1_symplectic_word(rng, ideal, size, r,
                                        variables=("X",))
    i, j = sample_index1_symplectic(rng, size)
    a = sample_certified(rng, ideal, max_degree=1, variables=("X",))
    desc = "rewrite-symplectic mod %d r=%d eps=%r target=(%d,%d) a=%r" % (
        m, r, eps, i, j, a.value)
    try:
        res = rewrite_conjugation_symplectic(eps, i, j, a)
        bad = _check_rewrite(res, ideal, False)
        if bad is None:
            specialize_and_check(res, rng.randrange(m), rng.randrange(m))
    except Exception as e:
        return (desc, "verified rewrite", "raised %s: %s"
                % (type(e).__name__, e))
    if bad is not None:
        return (desc, "verified rewrite", bad)
    return None


def _sample_etrans_word(rng, ring, ideal, nvec, letters):
    out = Word(ring, nvec + 1)
    for _ in range(letters):
        certs = tuple(sample_certified(rng, ideal) for _ in range(nvec))
        vec = ColumnVector(ring, tuple(c.value for c in certs))
        cls = LowerTransLetter if rng.random() < 0.5 else UpperTransLetter
        out = out.append(cls(vec, certs), inverted=rng.random() < 0.3)
    return out


def _sample_transvection_word(rng, ring, ideal, nq, letters):
    form = standard_symplectic_form(ring, nq)
    out = Word(ring, 2 * nq + 2)
    for _ in range(letters):
        qcs = tuple(sample_certified(rng, ideal) for _ in range(2 * nq))
        q = ColumnVector(ring, tuple(c.value for c in qcs))
        sc = sample_certified(rng, ideal)
        cls = RhoLetter if rng.random() < 0.5 else MuLetter
        out = out.append(cls(q, sc.value, form, (sc, qcs)),
                         inverted=rng.random() < 0.3)
    return out


def _suite_dictionaries(rng):
    ring, ideal = _z27_setup()
    nvec = rng.choice((2, 3))
    w = _sample_etrans_word(rng, ring, ideal, nvec, rng.randint(1, 3))
    desc = "dictionary linear w=%r" % (w,)
    try:
        e1 = etrans_word_to_E1(w)
        if evaluate(e1) != evaluate(w):
            return (desc, "same evaluation", "forward image differs")
        back = E1_to_etrans(e1, ideal=ideal)
        if evaluate(back) != evaluate(w):
            return (desc, "same evaluation", "round trip differs")
    except Exception as e:
        return (desc, "round trip", "raised %s: %s" % (type(e).__name__, e))
    nq = rng.choice((1, 2))
    sw = _sample_transvection_word(rng, ring, ideal, nq, rng.randint(1, 3))
    desc = "dictionary symplectic w=%r" % (sw,)
    try:
        esp = etranssp_word_to_ESp1(sw)
        if evaluate(esp) != evaluate(sw):
            return (desc, "same evaluation", "forward image differs")
        back2 = ESp1_to_etranssp(esp, ideal=ideal)
        if evaluate(back2) != evaluate(sw):
            return (desc, "same evaluation", "round trip differs")
    except Exception as e:
        return (desc, "round trip", "raised %s: %s" % (type(e).__name__, e))
    # expansion versus the block matrix picture
    qcs = tuple(sample_certified(rng, ideal) for _ in range(2 * nq))
    q = ColumnVector(ring, tuple(c.value for c in qcs))
    sc = sample_certified(rng, ideal)
    form = standard_symplectic_form(ring, nq)
    desc = "expansion q=%r s=%r" % (q, sc.value)
    try:
        if evaluate(expand_rho(q, sc.value, sc, list(qcs))) \
                != rho_matrix(q, sc.value, form):
            return (desc, "expansion matches blocks", "rho expansion differs")
        if evaluate(expand_mu(q, sc.value, sc, list(qcs))) \
                != mu_matrix(q, sc.value, form):
            return (desc, "expansion matches blocks", "mu expansion differs")
    except Exception as e:
        return (desc, "expansion matches blocks", "raised %s: %s"
                % (type(e).__name__, e))
    return None


def _suite_standardize(rng):
    ring, ideal = _z27_setup()
    n = rng.choice((2, 3))
    phi, eps0 = sample_relative_form(rng, ring, n, ideal,
                                     letters=rng.randint(1, 4))
    desc = "standardize n=%d eps0=%r" % (n, eps0)
    try:
        form = AlternatingForm(phi)
        if form.pfaffian_cache != ring.one:
            return (desc, "Pfaffian one", repr(form.pfaffian_cache))
        res = standardize_alternating(form, ideal)
    except Exception as e:
        return (desc, "standardized", "raised %s: %s" % (type(e).__name__, e))
    if not res.verified:
        return (desc, "standardized", "verification flag unset")
    if not res.relative:
        return (desc, "relative congruence", "letters left the ideal")
    return None


def _suite_pfaffian(rng):
    ring = sample_zmod(rng)
    n = rng.randint(1, 4)
    psi = standard_symplectic_form(ring, n)
    desc = "pfaffian over %r n=%d" % (ring, n)
    if pfaffian(psi) != ring.one:
        return (desc, "Pf of standard form is 1", repr(pfaffian(psi)))
    size = rng.choice((4, 6))
    A = sample_alternating(rng, ring, size)
    if pfaffian(A) * pfaffian(A) != det(A):
        return ("pfaffian square A=%r" % (A,), "Pf^2 = det", "differs")
    phi = sample_alternating(rng, ring, 4)
    w = Word(ring, 4)
    for _ in range(rng.randint(1, 4)):
        i, j = rng.sample(range(1, 5), 2)
        w = w.append(LinLetter(4, i, j, sample_element(rng, ring)),
                     inverted=rng.random() < 0.3)
    B = evaluate(w)
    if pfaffian(B.transpose() * phi * B) != det(B) * pfaffian(phi):
        return ("pfaffian congruence B=%r phi=%r" % (B, phi),
                "Pf(B^t phi B) = det(B) Pf(phi)", "differs")
    return None


SUITES = {
    "relations": _suite_relations,
    "short-root": _suite_short_root,
    "long-root": _suite_long_root,
    "reduce": _suite_reduce,
    "split": _suite_split,
    "sum-to-product": _suite_sum_to_product,
    "unimodular": _suite_unimodular,
    "decompose": _suite_decompose,
    "rewrite-linear": _suite_rewrite_linear,
    "rewrite-symplectic": _suite_rewrite_symplectic,
    "dictionaries": _suite_dictionaries,
    "standardize": _suite_standardize,
    "pfaffian": _suite_pfaffian,
}

SUITE_NAMES = tuple(SUITES)


class SuiteReport:
    """Result of one suite run.

    failures holds (trial seed, input digest, expected digest,
    achieved digest) tuples sorted by seed; it is empty exactly when
    the run passed.
    """

    __slots__ = ("suite", "trials", "failures", "elapsed")

    def __init__(self, suite, trials, failures, elapsed):
        object.__setattr__(self, "suite", suite)
        object.__setattr__(self, "trials", trials)
        object.__setattr__(self, "failures", tuple(failures))
        object.__setattr__(self, "elapsed", elapsed)

    def __setattr__(self, name, value):
        raise AttributeError("reports are immutable")

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        state = "ok" if self.ok else "%d FAILED" % len(self.failures)
        return "%-18s %4d trials  %8.3fs  %s" % (
            self.suite, self.trials, self.elapsed, state)

    def __repr__(self):
        return "SuiteReport(%r, trials=%d, failures=%d)" % (
            self.suite, self.trials, len(self.failures))


def run_suite(suite, trials, seed):
    """Run `trials` independent trials of one suite.

    Every trial draws from its own Random((seed << 20) ^ index)
    stream. Failures never stop the run; they are collected in the
    report, sorted by trial seed.
    """
    if suite not in SUITES:
        raise UnknownSuite("no suite named %r (know %s)"
                           % (suite, ", ".join(SUITE_NAMES)))
    fn = SUITES[suite]
    t0 = time.perf_counter()
    failures = []
    for index in range(trials):
        ts = trial_seed(seed, index)
        rng = trial_rng(seed, index)
        try:
            bad = fn(rng)
        except Exception as e:
            bad = ("trial %d setup" % index, "completed trial",
                   "raised %s: %s" % (type(e).__name__, e))
        if bad is not None:
            failures.append((ts, _digest(bad[0]), _digest(bad[1]),
                             _digest(bad[2])))
    failures.sort(key=lambda f: f[0])
    return SuiteReport(suite, trials, failures, time.perf_counter() - t0)


def run_all(trials, seed):
    """Run every suite; returns the list of reports in listed order."""
    return [run_suite(name, trials, seed) for name in SUITE_NAMES]


__all__ = ["SUITES", "SUITE_NAMES", "SuiteReport", "run_suite", "run_all"]
