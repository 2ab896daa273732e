"""Seeded random generation for the verification suites and the CLI.

Every trial owns an independent generator, derived from the run seed
and the trial index as Random((seed << 20) ^ index), so a reported
failure replays from its trial seed alone.

Distributions, also summarized in the CLI help text:

  * moduli come from {25, 27, 121}; the attached prime is the smallest
    prime factor;
  * ideal generators are drawn among {p, p * unit};
  * polynomial draws use at most three monomials of total degree at
    most two, with coefficients drawn from the base ring;
  * vectors and matrices draw each entry independently.
"""

from __future__ import annotations

import random

from .errors import NotAUnit
from .matrices import (
    ColumnVector,
    from_rows,
    sigma_index,
    standard_symplectic_form,
)
from .rings import (
    IdealPresentation,
    PolyRing,
    ZmodRing,
    certify,
    invert_unit,
)
from .words import LinLetter, SympLetter, Word, evaluate

MODULI = (25, 27, 121)


def trial_seed(seed, index):
    """Derive the per-trial seed from a run seed and trial index."""
    return (seed << 20) ^ index


def trial_rng(seed, index):
    """Independent Random stream for one trial of a suite run."""
    return random.Random(trial_seed(seed, index))


def prime_of(m):
    """Smallest prime factor of m."""
    d = 2
    while d * d <= m:
        if m % d == 0:
            return d
        d += 1
    return m


def sample_modulus(rng):
    return rng.choice(MODULI)


def sample_zmod(rng):
    return ZmodRing(sample_modulus(rng))


def sample_relation_ring(rng):
    """Ring for relation checks: a supported Z/m or (Z/27)[X].

    Returns (ring, degree cap for parameter draws).
    """
    pick = rng.randrange(4)
    if pick < 3:
        return ZmodRing(MODULI[pick]), 0
    return PolyRing(ZmodRing(27), ("X",)), 1


def _monomial(rng, variables, max_degree):
    total = rng.randint(0, max_degree)
    exps = [0] * len(variables)
    for _ in range(total):
        exps[rng.randrange(len(variables))] += 1
    return tuple(exps)


def sample_element(rng, ring, max_degree=2, variables=None, terms=3):
    """Random element; polynomial draws stay sparse and low degree.

    variables restricts which polynomial variables may occur (by
    name); the default allows all of them.
    """
    if isinstance(ring, ZmodRing):
        return ring.el(rng.randrange(ring.m))
    if isinstance(ring, PolyRing):
        allowed = ring.variables if variables is None else tuple(variables)
        out = ring.zero
        for _ in range(rng.randint(1, terms)):
            exps = _monomial(rng, allowed, max_degree)
            mono = ring.one
            for name, e in zip(allowed, exps):
                for _ in range(e):
                    mono = mono * ring.var(name)
            coeff = sample_element(rng, ring.base, max_degree)
            out = out + mono * ring.el(coeff)
        return out
    # localization: numerator over a small denominator power
    num = sample_element(rng, ring.base, max_degree)
    return ring.wrap((num.payload, rng.randrange(2)))


def sample_unit(rng, ring, tries=64):
    for _ in range(tries):
        x = sample_element(rng, ring, max_degree=0)
        try:
            invert_unit(x)
            return x
        except NotAUnit:
            continue
    return ring.one


def sample_ideal(rng, ring):
    """Ideal of a Z/m ring: generated by p, or by p and p * unit."""
    p = prime_of(ring.m)
    gens = [ring.el(p)]
    if rng.random() < 0.5:
        gens.append(ring.el(p) * sample_unit(rng, ring))
    return IdealPresentation(ring, tuple(gens))


def sample_certified(rng, ideal, max_degree=2, variables=None):
    """Random certified element: random coefficient per generator."""
    coeffs = [sample_element(rng, ideal.ring, max_degree, variables)
              for _ in ideal.generators]
    return certify(ideal, coeffs)


def sample_vector(rng, ring, length, max_degree=2):
    return ColumnVector(ring, tuple(
        sample_element(rng, ring, max_degree) for _ in range(length)))


def sample_alternating(rng, ring, size, max_degree=2):
    """Random alternating matrix: zero diagonal, skew off-diagonal."""
    grid = [[ring.zero] * size for _ in range(size)]
    for r in range(size):
        for c in range(r + 1, size):
            x = sample_element(rng, ring, max_degree)
            grid[r][c] = x
            grid[c][r] = -x
    return from_rows(ring, [tuple(row) for row in grid])


def sample_linear_index1(rng, n):
    other = rng.randrange(2, n + 1)
    return (1, other) if rng.random() < 0.5 else (other, 1)


def sample_index1_symplectic(rng, size):
    a = rng.choice((1, 2))
    b = rng.randrange(1, size + 1)
    while b == a:
        b = rng.randrange(1, size + 1)
    return (a, b) if rng.random() < 0.5 else (b, a)


def sample_symplectic_word(rng, ring, size, letters, max_degree=1):
    """Word of random symplectic generators, some inverted."""
    out = Word(ring, size)
    for _ in range(letters):
        i = rng.randrange(1, size + 1)
        j = rng.randrange(1, size + 1)
        while j == i:
            j = rng.randrange(1, size + 1)
        z = sample_element(rng, ring, max_degree)
        out = out.append(SympLetter(size, i, j, z),
                         inverted=rng.random() < 0.3)
    return out


def sample_index1_linear_word(rng, ideal, n, letters, variables=None):
    """Certified first-index linear word over the given ideal."""
    ring = ideal.ring
    out = Word(ring, n)
    for _ in range(letters):
        i, j = sample_linear_index1(rng, n)
        cert = sample_certified(rng, ideal, max_degree=1,
                                variables=variables)
        out = out.append(LinLetter(n, i, j, cert.value, cert=cert),
                         inverted=rng.random() < 0.3)
    return out


def sample_index1_symplectic_word(rng, ideal, size, letters,
                                  variables=None):
    """Certified first-index symplectic word over the given ideal."""
    ring = ideal.ring
    out = Word(ring, size)
    for _ in range(letters):
        i, j = sample_index1_symplectic(rng, size)
        cert = sample_certified(rng, ideal, max_degree=1,
                                variables=variables)
        out = out.append(SympLetter(size, i, j, cert.value, cert=cert),
                         inverted=rng.random() < 0.3)
    return out


def sample_relative_form(rng, ring, n, ideal, letters=3):
    """Alternating form congruent to the standard one by 1 perp eps.

    Draws a certified word eps0 in the lower right block, applies the
    congruence to the standard form, and returns (form, eps0 word).
    """
    size = 2 * n
    inner = size - 1
    eps0 = Word(ring, inner)
    for _ in range(letters):
        i = rng.randrange(1, inner + 1)
        j = rng.randrange(1, inner + 1)
        while j == i:
            j = rng.randrange(1, inner + 1)
        cert = sample_certified(rng, ideal, max_degree=0)
        eps0 = eps0.append(LinLetter(inner, i, j, cert.value, cert=cert),
                           inverted=rng.random() < 0.3)
    m = evaluate(eps0)
    emb_rows = []
    for r in range(size):
        row = []
        for c in range(size):
            if r == 0 or c == 0:
                row.append(ring.one if r == c else ring.zero)
            else:
                row.append(m.entry(r, c))
        emb_rows.append(tuple(row))
    emb = from_rows(ring, emb_rows)
    psi = standard_symplectic_form(ring, n)
    return emb.transpose() * psi * emb, eps0


def sample_pair_avoiding(rng, size, avoid):
    """Coordinate pair index whose two coordinates avoid the set."""
    n = size // 2
    choices = [t for t in range(1, n + 1)
               if (2 * t - 1) not in avoid and (2 * t) not in avoid]
    return rng.choice(choices)


def vector_off_pair(rng, ring, size, t, max_degree=2):
    """Random vector vanishing on coordinate pair t."""
    v = sample_vector(rng, ring, size, max_degree)
    v = v.with_entry(2 * t - 1, ring.zero)
    return v.with_entry(2 * t, ring.zero)


__all__ = [n for n in dir() if not n.startswith("_")]
