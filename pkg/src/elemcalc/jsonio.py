"""JSON codecs for every machine-facing type, plus canonical dumping.

Descriptors are self-describing ({"kind": "zmod", "m": 27} and so on)
while elements, vectors, matrices, words and certificates are encoded
relative to a ring or ideal that the surrounding document supplies.
Serialization is canonical: keys are sorted, polynomial monomials are
listed in sorted exponent order, and dumps() emits one fixed byte
stream for one value, so identical requests produce identical output.
"""

from __future__ import annotations

import json

from .bridge import AlternatingForm, StandardizationResult
from .decompose import DecompositionResult
from .errors import DescriptorMismatch
from .matrices import ColumnVector, ExactMatrix, from_rows
from .rewrite import RewriteResult
from .rings import (
    CertifiedElement,
    IdealPresentation,
    LocRing,
    PolyRing,
    RingElement,
    ZmodRing,
    certify,
)
from .words import LinLetter, MuLetter, RhoLetter, SympLetter, Word


def _need(data, key, what):
    if not isinstance(data, dict) or key not in data:
        raise DescriptorMismatch("%s is missing field %r" % (what, key))
    return data[key]


# ---------------------------------------------------------------------------
# rings


def ring_to_json(ring):
    if isinstance(ring, ZmodRing):
        return {"kind": "zmod", "m": ring.m}
    if isinstance(ring, PolyRing):
        return {"kind": "poly", "base": ring_to_json(ring.base),
                "vars": list(ring.variables)}
    if isinstance(ring, LocRing):
        return {"kind": "loc", "base": ring_to_json(ring.base),
                "denom": element_to_json(ring.denom)}
    raise DescriptorMismatch("cannot describe ring %r" % (ring,))


def ring_from_json(data):
    kind = _need(data, "kind", "ring descriptor")
    if kind == "zmod":
        m = _need(data, "m", "zmod descriptor")
        if not isinstance(m, int) or m < 2:
            raise DescriptorMismatch("zmod modulus must be an integer >= 2")
        return ZmodRing(m)
    if kind == "poly":
        base = ring_from_json(_need(data, "base", "poly descriptor"))
        variables = _need(data, "vars", "poly descriptor")
        if (not isinstance(variables, list) or not variables
                or not all(isinstance(v, str) for v in variables)):
            raise DescriptorMismatch("poly vars must be a list of names")
        return PolyRing(base, tuple(variables))
    if kind == "loc":
        base = ring_from_json(_need(data, "base", "loc descriptor"))
        denom = element_from_json(base, _need(data, "denom",
                                              "loc descriptor"))
        return LocRing(base, denom)
    raise DescriptorMismatch("unknown ring kind %r" % (kind,))


# ---------------------------------------------------------------------------
# elements


def element_to_json(x):
    ring = x.ring
    if isinstance(ring, ZmodRing):
        return x.payload
    if isinstance(ring, PolyRing):
        out = []
        for exps in sorted(x.payload):
            coeff = ring.base.wrap(x.payload[exps])
            named = {name: e for name, e in zip(ring.variables, exps) if e}
            out.append([named, element_to_json(coeff)])
        return out
    if isinstance(ring, LocRing):
        num, exp = x.payload
        return {"num": element_to_json(ring.base.wrap(num)), "exp": exp}
    raise DescriptorMismatch("cannot encode element of %r" % (ring,))


def element_from_json(ring, data):
    if isinstance(ring, ZmodRing):
        if not isinstance(data, int):
            raise DescriptorMismatch("zmod element must be an integer")
        return ring.el(data)
    if isinstance(ring, PolyRing):
        if not isinstance(data, list):
            raise DescriptorMismatch(
                "polynomial element must be a monomial list")
        out = ring.zero
        for item in data:
            if not (isinstance(item, list) and len(item) == 2
                    and isinstance(item[0], dict)):
                raise DescriptorMismatch(
                    "polynomial monomial must be [exponents, coefficient]")
            named, coeff_data = item
            mono = ring.one
            for name, e in named.items():
                if name not in ring.variables:
                    raise DescriptorMismatch("unknown variable %r" % (name,))
                if not isinstance(e, int) or e < 0:
                    raise DescriptorMismatch("bad exponent for %r" % (name,))
                v = ring.var(name)
                for _ in range(e):
                    mono = mono * v
            coeff = element_from_json(ring.base, coeff_data)
            out = out + mono * ring.el(coeff)
        return out
    if isinstance(ring, LocRing):
        num = element_from_json(ring.base, _need(data, "num", "loc element"))
        exp = _need(data, "exp", "loc element")
        if not isinstance(exp, int) or exp < 0:
            raise DescriptorMismatch("loc exponent must be a non-negative "
                                     "integer")
        return ring.wrap((num.payload, exp))
    raise DescriptorMismatch("cannot decode element of %r" % (ring,))


# ---------------------------------------------------------------------------
# ideals and certificates


def ideal_to_json(ideal):
    return [element_to_json(g) for g in ideal.generators]


def ideal_from_json(ring, data):
    if isinstance(data, dict):
        data = _need(data, "generators", "ideal")
    if not isinstance(data, list) or not data:
        raise DescriptorMismatch("ideal must be a non-empty generator list")
    gens = tuple(element_from_json(ring, g) for g in data)
    return IdealPresentation(ring, gens)


def certified_to_json(cert):
    return [element_to_json(c) for c in cert.coefficients]


def certified_from_json(ideal, data):
    if not isinstance(data, list):
        raise DescriptorMismatch(
            "certificate must be a coefficient list")
    if len(data) != len(ideal.generators):
        raise DescriptorMismatch(
            "certificate has %d coefficients for %d generators"
            % (len(data), len(ideal.generators)))
    coeffs = [element_from_json(ideal.ring, c) for c in data]
    return certify(ideal, coeffs)


# ---------------------------------------------------------------------------
# vectors and matrices


def vector_to_json(v):
    return [element_to_json(v.entry(i)) for i in range(1, v.length + 1)]


def vector_from_json(ring, data):
    if not isinstance(data, list):
        raise DescriptorMismatch("vector must be a list")
    return ColumnVector(ring, tuple(element_from_json(ring, e)
                                    for e in data))


def matrix_to_json(m):
    return [[element_to_json(m.entry(r, c))
             for c in range(1, m.cols + 1)]
            for r in range(1, m.rows + 1)]


def matrix_from_json(ring, data):
    if (not isinstance(data, list) or not data
            or not all(isinstance(row, list) for row in data)):
        raise DescriptorMismatch("matrix must be a list of rows")
    width = len(data[0])
    if any(len(row) != width for row in data):
        raise DescriptorMismatch("matrix rows have uneven lengths")
    rows = [[element_from_json(ring, e) for e in row] for row in data]
    return from_rows(ring, rows)


# ---------------------------------------------------------------------------
# words


def _cert_or_none(cert):
    return None if cert is None else certified_to_json(cert)


def letter_to_json(letter, inv):
    if isinstance(letter, (LinLetter, SympLetter)):
        gen = "E" if isinstance(letter, LinLetter) else "se"
        return {"gen": gen, "i": letter.i, "j": letter.j,
                "param": element_to_json(letter.param),
                "inv": bool(inv), "cert": _cert_or_none(letter.cert)}
    if isinstance(letter, (RhoLetter, MuLetter)):
        rho = isinstance(letter, RhoLetter)
        scalar = letter.alpha if rho else letter.beta
        out = {"gen": "rho" if rho else "mu",
               "q": vector_to_json(letter.q),
               ("alpha" if rho else "beta"): element_to_json(scalar),
               "form": matrix_to_json(letter.form),
               "inv": bool(inv)}
        if letter.certs is None:
            out["cert"] = None
        else:
            sc, qcs = letter.certs
            out["cert"] = {"scalar": certified_to_json(sc),
                           "q": [certified_to_json(c) for c in qcs]}
        return out
    raise DescriptorMismatch("cannot encode letter %r" % (letter,))


def letter_from_json(ring, size, data, ideal=None):
    gen = _need(data, "gen", "letter")
    inv = bool(data.get("inv", False))
    if gen in ("E", "se"):
        i = _need(data, "i", "letter")
        j = _need(data, "j", "letter")
        if not (isinstance(i, int) and isinstance(j, int)):
            raise DescriptorMismatch("letter indices must be integers")
        param = element_from_json(ring, _need(data, "param", "letter"))
        cert_data = data.get("cert")
        cert = None
        if cert_data is not None:
            if ideal is None:
                raise DescriptorMismatch(
                    "certificate supplied without an ideal in context")
            cert = certified_from_json(ideal, cert_data)
            if cert.value != param:
                raise DescriptorMismatch(
                    "certificate does not reproduce the parameter")
        cls = LinLetter if gen == "E" else SympLetter
        return cls(size, i, j, param, cert), inv
    if gen in ("rho", "mu"):
        q = vector_from_json(ring, _need(data, "q", "transvection letter"))
        key = "alpha" if gen == "rho" else "beta"
        scalar = element_from_json(ring, _need(data, key,
                                               "transvection letter"))
        form = matrix_from_json(ring, _need(data, "form",
                                            "transvection letter"))
        cert_data = data.get("cert")
        certs = None
        if cert_data is not None:
            if ideal is None:
                raise DescriptorMismatch(
                    "certificate supplied without an ideal in context")
            sc = certified_from_json(
                ideal, _need(cert_data, "scalar", "transvection certificate"))
            qcs = tuple(
                certified_from_json(ideal, item)
                for item in _need(cert_data, "q", "transvection certificate"))
            if sc.value != scalar or len(qcs) != q.length \
                    or any(c.value != q.entry(t + 1)
                           for t, c in enumerate(qcs)):
                raise DescriptorMismatch(
                    "certificates do not reproduce the letter data")
            certs = (sc, qcs)
        cls = RhoLetter if gen == "rho" else MuLetter
        return cls(q, scalar, form, certs), inv
    raise DescriptorMismatch("unknown generator tag %r" % (gen,))


def word_to_json(w):
    return [letter_to_json(letter, inv) for letter, inv in w.letters]


def word_from_json(ring, size, data, ideal=None):
    if not isinstance(data, list):
        raise DescriptorMismatch("word must be a list of letters")
    letters = [letter_from_json(ring, size, item, ideal) for item in data]
    return Word(ring, size, letters)


# ---------------------------------------------------------------------------
# results


def trace_to_json(trace):
    return [[tag, detail] for tag, detail in trace]


def decomposition_to_json(res):
    return {
        "verified": bool(res.verified),
        "output": word_to_json(res.output),
        "target": matrix_to_json(res.target),
        "achieved": matrix_to_json(res.achieved),
        "lemma_trace": trace_to_json(res.lemma_trace),
    }


def rewrite_to_json(res):
    return {
        "verified": bool(res.verified),
        "output": word_to_json(res.output),
        "lhs": word_to_json(res.lhs),
        "case_trace": list(res.case_trace),
    }


def standardization_to_json(res):
    return {
        "verified": bool(res.verified),
        "relative": bool(res.relative),
        "eps_word": word_to_json(res.eps_word),
    }


def form_to_json(form):
    if isinstance(form, AlternatingForm):
        return matrix_to_json(form.matrix)
    return matrix_to_json(form)


def report_to_json(rep):
    """Suite report as JSON; timing is left out to keep output stable."""
    return {
        "suite": rep.suite,
        "trials": rep.trials,
        "failures": [
            {"seed": seed, "inputs": i, "expected": e, "achieved": a}
            for seed, i, e, a in rep.failures
        ],
    }


def dumps(data):
    """Canonical serialization: sorted keys, compact, newline-ended."""
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except ValueError as e:
        raise DescriptorMismatch("input is not valid JSON: %s" % (e,))


__all__ = [n for n in dir() if not n.startswith("_") and n not in (
    "annotations", "json")]
