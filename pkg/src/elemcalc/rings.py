"""Exact arithmetic for a small tower of commutative rings.

Three ring kinds are provided:

* integers mod m (m >= 2),
* multivariate polynomials over any ring of the tower,
* localization of a ring at a declared non-zero-divisor.

Elements are immutable wrappers around a ring-specific payload. All
arithmetic is exact; equality is structural for Z/m and polynomials
(payloads are kept canonical) and cross-multiplicative for localized
fractions.

Ideals are finitely generated presentations. Membership is never
decided, only certified: a CertifiedElement stores coefficients that
multiply out to its value, exactly.
"""

from __future__ import annotations

from .errors import (
    DescriptorMismatch,
    IdealMismatch,
    LengthMismatch,
    NotAUnit,
    TwoNotInvertible,
    UnknownVariable,
)


class RingElement:
    """Immutable element of a Ring; payload format is ring-specific."""

    __slots__ = ("ring", "payload")
    __hash__ = None

    def __init__(self, ring, payload):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("ring elements are immutable")

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring == self.ring:
                return other
            lifted = self.ring.try_lift(other)
            if lifted is not None:
                return lifted
            raise DescriptorMismatch(
                "cannot combine %r and %r" % (self.ring, other.ring))
        if isinstance(other, int):
            return self.ring.el(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.p_add(self.payload, o.payload))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.p_sub(self.payload, o.payload))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.p_sub(o.payload, self.payload))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.p_mul(self.payload, o.payload))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.p_neg(self.payload))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (RingElement, int)):
            o = self._coerce(other)
            if o is NotImplemented:
                return NotImplemented
            return self.ring.p_eq(self.payload, o.payload)
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        if r is NotImplemented:
            return r
        return not r

    def is_zero(self):
        return self.ring.p_is_zero(self.payload)

    def __repr__(self):
        return self.ring.p_repr(self.payload)


class Ring:
    """Base class; subclasses provide payload-level arithmetic."""

    kind = None

    def __init__(self):
        self._zero = None
        self._one = None

    @property
    def zero(self):
        if self._zero is None:
            self._zero = RingElement(self, self.from_int(0))
        return self._zero

    @property
    def one(self):
        if self._one is None:
            self._one = RingElement(self, self.from_int(1))
        return self._one

    def wrap(self, payload):
        return RingElement(self, payload)

    def el(self, x):
        """Coerce an int or a liftable element into this ring."""
        if isinstance(x, int):
            return RingElement(self, self.from_int(x))
        if isinstance(x, RingElement):
            if x.ring == self:
                return x
            lifted = self.try_lift(x)
            if lifted is not None:
                return lifted
            raise DescriptorMismatch(
                "cannot coerce element of %r into %r" % (x.ring, self))
        raise DescriptorMismatch("cannot coerce %r" % (x,))

    def try_lift(self, x):
        """Lift an element of a base ring into this ring, or None."""
        return None

    def p_sub(self, a, b):
        return self.p_add(a, self.p_neg(b))

    def p_eq(self, a, b):
        if self.structural:
            return a == b
        return self.p_is_zero(self.p_sub(a, b))

    # subclasses: from_int, p_add, p_neg, p_mul, p_is_zero, p_invert,
    # p_repr, structural, __eq__, __hash__


class ZmodRing(Ring):
    """Integers modulo m, m >= 2; payloads are ints in [0, m)."""

    kind = "zmod"
    structural = True

    def __init__(self, m):
        if not isinstance(m, int) or m < 2:
            raise ValueError("modulus must be an integer >= 2")
        super().__init__()
        self.m = m

    def __eq__(self, other):
        return isinstance(other, ZmodRing) and other.m == self.m

    def __hash__(self):
        return hash(("zmod", self.m))

    def __repr__(self):
        return "Z/%d" % self.m

    def from_int(self, n):
        return n % self.m

    def p_add(self, a, b):
        return (a + b) % self.m

    def p_neg(self, a):
        return (-a) % self.m

    def p_mul(self, a, b):
        return (a * b) % self.m

    def p_is_zero(self, a):
        return a == 0

    def p_invert(self, a):
        try:
            return pow(a, -1, self.m)
        except ValueError:
            raise NotAUnit("%d is not a unit mod %d" % (a, self.m))

    def p_repr(self, a):
        return str(a)


class PolyRing(Ring):
    """Multivariate polynomials over a base ring.

    Payloads are dicts mapping exponent tuples (one slot per variable)
    to nonzero base payloads. The empty dict is zero. Pruning keeps the
    form canonical, so equality over a structural base is dict equality.
    """

    kind = "poly"

    def __init__(self, base, variables):
        variables = tuple(variables)
        if len(set(variables)) != len(variables) or not variables:
            raise ValueError("variable names must be distinct and nonempty")
        if any((not v) for v in variables):
            raise ValueError("variable names must be nonempty")
        super().__init__()
        self.base = base
        self.variables = variables
        self.nvars = len(variables)
        self.structural = base.structural

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.variables == self.variables
                and other.base == self.base)

    def __hash__(self):
        return hash(("poly", self.variables, self.base))

    def __repr__(self):
        return "%r[%s]" % (self.base, ",".join(self.variables))

    def try_lift(self, x):
        if isinstance(x, RingElement):
            if x.ring == self.base:
                return self.wrap(self._embed(x.payload))
            inner = self.base.try_lift(x) if hasattr(self.base, "try_lift") else None
            if inner is not None:
                return self.wrap(self._embed(inner.payload))
        return None

    def _embed(self, base_payload):
        if self.base.p_is_zero(base_payload):
            return {}
        return {(0,) * self.nvars: base_payload}

    def from_int(self, n):
        return self._embed(self.base.from_int(n))

    def var(self, name):
        if name not in self.variables:
            raise UnknownVariable("no variable %r in %r" % (name, self))
        exps = tuple(1 if v == name else 0 for v in self.variables)
        return self.wrap({exps: self.base.from_int(1)})

    def monomial(self, exps, coeff_payload):
        if self.base.p_is_zero(coeff_payload):
            return {}
        return {tuple(exps): coeff_payload}

    def p_add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        out = dict(a)
        badd = self.base.p_add
        bzero = self.base.p_is_zero
        for exps, c in b.items():
            if exps in out:
                s = badd(out[exps], c)
                if bzero(s):
                    del out[exps]
                else:
                    out[exps] = s
            else:
                out[exps] = c
        return out

    def p_neg(self, a):
        bneg = self.base.p_neg
        return {exps: bneg(c) for exps, c in a.items()}

    def p_mul(self, a, b):
        if not a or not b:
            return {}
        out = {}
        badd = self.base.p_add
        bmul = self.base.p_mul
        bzero = self.base.p_is_zero
        for ea, ca in a.items():
            for eb, cb in b.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                prod = bmul(ca, cb)
                if exps in out:
                    s = badd(out[exps], prod)
                    if bzero(s):
                        del out[exps]
                    else:
                        out[exps] = s
                elif not bzero(prod):
                    out[exps] = prod
        return out

    def p_is_zero(self, a):
        if self.structural:
            return not a
        return all(self.base.p_is_zero(c) for c in a.values())

    def p_invert(self, a):
        const = None
        for exps, c in a.items():
            if any(exps):
                raise NotAUnit("only constant polynomials are inverted")
            const = c
        if const is None:
            raise NotAUnit("zero is not a unit")
        return self._embed(self.base.p_invert(const))

    def p_substitute(self, a, bindings):
        """bindings: variable name -> payload of this ring."""
        positions = {}
        for name in bindings:
            if name not in self.variables:
                raise UnknownVariable("no variable %r in %r" % (name, self))
            positions[self.variables.index(name)] = bindings[name]
        out = {}
        for exps, c in a.items():
            term = self._embed(c)
            rest = list(exps)
            for pos, val in positions.items():
                e = exps[pos]
                rest[pos] = 0
                for _ in range(e):
                    term = self.p_mul(term, val)
            term = self.p_mul(term, {tuple(rest): self.base.from_int(1)})
            out = self.p_add(out, term)
        return out

    def p_repr(self, a):
        if not a:
            return "0"
        parts = []
        for exps in sorted(a):
            c = a[exps]
            mono = "*".join(
                v if e == 1 else "%s^%d" % (v, e)
                for v, e in zip(self.variables, exps) if e)
            cs = self.base.p_repr(c)
            if mono:
                parts.append("%s*%s" % (cs, mono) if cs != "1" else mono)
            else:
                parts.append(cs)
        return " + ".join(parts)


class LocRing(Ring):
    """Localization of a base ring at a declared non-zero-divisor a.

    Payloads are pairs (numerator payload, exponent): num / a^exp.
    Equality is by cross-multiplication, valid because a is asserted
    to be a non-zero-divisor.
    """

    kind = "loc"
    structural = False

    def __init__(self, base, denominator):
        super().__init__()
        self.base = base
        self.denom = base.el(denominator)
        if self.denom.is_zero():
            raise ValueError("denominator must be nonzero")

    def __eq__(self, other):
        return (isinstance(other, LocRing) and other.base == self.base
                and self.base.p_eq(other.denom.payload, self.denom.payload))

    def __hash__(self):
        return hash(("loc", self.base))

    def __repr__(self):
        return "%r localized at %r" % (self.base, self.denom)

    def try_lift(self, x):
        if isinstance(x, RingElement):
            if x.ring == self.base:
                return self.wrap((x.payload, 0))
            inner = self.base.try_lift(x) if hasattr(self.base, "try_lift") else None
            if inner is not None:
                return self.wrap((inner.payload, 0))
        return None

    def from_int(self, n):
        return (self.base.from_int(n), 0)

    def _denom_pow(self, k):
        p = self.base.from_int(1)
        for _ in range(k):
            p = self.base.p_mul(p, self.denom.payload)
        return p

    def p_add(self, a, b):
        (na, ea), (nb, eb) = a, b
        e = max(ea, eb)
        na2 = self.base.p_mul(na, self._denom_pow(e - ea))
        nb2 = self.base.p_mul(nb, self._denom_pow(e - eb))
        return (self.base.p_add(na2, nb2), e)

    def p_neg(self, a):
        return (self.base.p_neg(a[0]), a[1])

    def p_mul(self, a, b):
        return (self.base.p_mul(a[0], b[0]), a[1] + b[1])

    def p_eq(self, a, b):
        left = self.base.p_mul(a[0], self._denom_pow(b[1]))
        right = self.base.p_mul(b[0], self._denom_pow(a[1]))
        return self.base.p_eq(left, right)

    def p_is_zero(self, a):
        return self.base.p_is_zero(a[0])

    def p_invert(self, a):
        num, e = a
        inv = self.base.p_invert(num)
        return (self.base.p_mul(self._denom_pow(e), inv), 0)

    def p_repr(self, a):
        num, e = a
        if e == 0:
            return self.base.p_repr(num)
        return "(%s)/(%s)^%d" % (self.base.p_repr(num),
                                 self.base.p_repr(self.denom.payload), e)


def ring_arith(op, x, y=None):
    """Dispatch add/sub/mul/neg through the element operators."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ValueError("unknown op %r" % (op,))


def invert_unit(x):
    """Multiplicative inverse of a unit; NotAUnit otherwise."""
    return x.ring.wrap(x.ring.p_invert(x.payload))


def half(ring):
    """The element 1/2; TwoNotInvertible when 2 is not a unit."""
    try:
        return invert_unit(ring.el(2))
    except NotAUnit:
        raise TwoNotInvertible("2 is not a unit in %r" % (ring,))


def substitute(p, bindings):
    """Evaluate a polynomial element at the given variable bindings."""
    ring = p.ring
    if not isinstance(ring, PolyRing):
        raise UnknownVariable("substitute needs a polynomial element")
    pay = {}
    for name, val in bindings.items():
        pay[name] = ring.el(val).payload
    return ring.wrap(ring.p_substitute(p.payload, pay))


class IdealPresentation:
    """A finitely generated ideal, given by an ordered generator list."""

    __slots__ = ("ring", "generators")
    __hash__ = None

    def __init__(self, ring, generators):
        gens = tuple(ring.el(g) for g in generators)
        if not gens:
            raise ValueError("ideal presentation needs at least one generator")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)

    def __setattr__(self, name, value):
        raise AttributeError("ideal presentations are immutable")

    def __eq__(self, other):
        if not isinstance(other, IdealPresentation):
            return NotImplemented
        return (self.ring == other.ring
                and len(self.generators) == len(other.generators)
                and all(a == b for a, b in zip(self.generators, other.generators)))

    def __repr__(self):
        return "(%s)" % ", ".join(repr(g) for g in self.generators)

    def square_pairs(self):
        """Ordered index pairs (i, j), i <= j, one per square generator."""
        k = len(self.generators)
        return tuple((i, j) for i in range(k) for j in range(i, k))

    def square(self):
        """Presentation of the square ideal by pairwise products."""
        gens = [self.generators[i] * self.generators[j]
                for i, j in self.square_pairs()]
        return PairwiseSquare(self.ring, gens, self)

    def zero_cert(self):
        return CertifiedElement(self, (self.ring.zero,) * len(self.generators))

    def principal_cert(self, coeffs_or_value):
        """Certificate from an explicit coefficient list."""
        return certify(self, coeffs_or_value)


class PairwiseSquare(IdealPresentation):
    """Square-ideal presentation remembering its base factorization."""

    __slots__ = ("base",)

    def __init__(self, ring, generators, base):
        super().__init__(ring, generators)
        object.__setattr__(self, "base", base)


class CertifiedElement:
    """An ideal element together with coefficients witnessing membership."""

    __slots__ = ("ideal", "coefficients", "value")

    def __init__(self, ideal, coefficients, value=None):
        coefficients = tuple(ideal.ring.el(c) for c in coefficients)
        if len(coefficients) != len(ideal.generators):
            raise LengthMismatch(
                "%d coefficients for %d generators"
                % (len(coefficients), len(ideal.generators)))
        if value is None:
            value = ideal.ring.zero
            for c, g in zip(coefficients, ideal.generators):
                value = value + c * g
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("certified elements are immutable")

    def check(self):
        acc = self.ideal.ring.zero
        for c, g in zip(self.coefficients, self.ideal.generators):
            acc = acc + c * g
        return acc == self.value

    def __add__(self, other):
        if not isinstance(other, CertifiedElement):
            return NotImplemented
        if self.ideal != other.ideal:
            raise IdealMismatch("certificates over different presentations")
        coeffs = tuple(a + b for a, b in
                       zip(self.coefficients, other.coefficients))
        return CertifiedElement(self.ideal, coeffs, self.value + other.value)

    def __neg__(self):
        return CertifiedElement(self.ideal,
                                tuple(-c for c in self.coefficients),
                                -self.value)

    def __sub__(self, other):
        neg = -other
        return self + neg

    def scale(self, r):
        """Multiply by an arbitrary ring element (ideals absorb products)."""
        r = self.ideal.ring.el(r)
        coeffs = tuple(r * c for c in self.coefficients)
        return CertifiedElement(self.ideal, coeffs, r * self.value)

    def is_zero(self):
        return self.value.is_zero()

    def substitute(self, bindings):
        """Apply a polynomial substitution fixing every generator."""
        ring = self.ideal.ring
        for g in self.ideal.generators:
            if substitute(g, bindings) != g:
                raise IdealMismatch(
                    "substitution moves ideal generator %r" % (g,))
        coeffs = tuple(substitute(c, bindings) for c in self.coefficients)
        return CertifiedElement(self.ideal, coeffs,
                                substitute(self.value, bindings))

    def __repr__(self):
        return "cert(%r = %s)" % (
            self.value,
            " + ".join("%r*%r" % (c, g) for c, g in
                       zip(self.coefficients, self.ideal.generators)))


def certify(ideal, coefficients):
    """Build a CertifiedElement, computing its value exactly."""
    return CertifiedElement(ideal, coefficients)


def product_certificate(a, b):
    """Certificate for a.value * b.value over the square presentation."""
    if not isinstance(a, CertifiedElement) or not isinstance(b, CertifiedElement):
        raise IdealMismatch("product_certificate needs two certified elements")
    if a.ideal != b.ideal:
        raise IdealMismatch("certificates over different ideals")
    sq = a.ideal.square()
    ca, cb = a.coefficients, b.coefficients
    coeffs = []
    for i, j in a.ideal.square_pairs():
        if i == j:
            coeffs.append(ca[i] * cb[i])
        else:
            coeffs.append(ca[i] * cb[j] + ca[j] * cb[i])
    return CertifiedElement(sq, tuple(coeffs), a.value * b.value)


def lift_ideal(ideal, ring):
    """Reinterpret an ideal presentation inside an extension ring."""
    return IdealPresentation(ring, [ring.el(g) for g in ideal.generators])


def lift_certificate(cert, target_ideal):
    """Reinterpret a certificate inside an extension ring's presentation."""
    ring = target_ideal.ring
    coeffs = tuple(ring.el(c) for c in cert.coefficients)
    return CertifiedElement(target_ideal, coeffs, ring.el(cert.value))
