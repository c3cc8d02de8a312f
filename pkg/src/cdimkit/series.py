"""Exact arithmetic in k[t] and truncated arithmetic in k((t)).

Two concrete types carry the arithmetic:

``LaurentPoly``
    finitely supported sum ``sum c_k t^k`` with ``k`` any integer, exact.
``TruncSeries``
    a Laurent series known modulo ``t^prec`` (absolute precision).

Valuations are additive (``ord_t``).  The exact zero has valuation
``ORD_INF``; a truncated series whose known coefficients all vanish has an
undetermined valuation and ``ord_t`` raises ``IndeterminateValuation``.

Coefficients are ``fractions.Fraction`` by default.  Any field type with
the usual operators works (see ``GF`` for the prime-field oracle mode).
"""

import math
from fractions import Fraction
from numbers import Rational

from .errors import (
    DomainError,
    IndeterminateValuation,
    InsufficientPrecision,
    NegativeValuation,
    ZeroScale,
)
from .textfmt import format_terms, parse_terms

ORD_INF = math.inf


def to_scalar(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to a canonical Fraction."""
    if isinstance(x, (Fraction, GF)):
        return x
    if isinstance(x, str):
        from .textfmt import parse_scalar

        return parse_scalar(x)
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class GF:
    """Element of the prime field F_p.

    Only used by brute-force oracles.  The library proper works in
    characteristic zero; results in this mode only cross-check finite
    enumerations.
    """

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GF(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GF(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GF(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GF(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        return GF(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return GF(-self.v, self.p)

    def __pow__(self, k):
        if k < 0:
            return GF(pow(self.v, -1, self.p), self.p) ** (-k)
        return GF(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def field_elements(p):
    return [GF(v, p) for v in range(p)]


# ---------------------------------------------------------------------------
# LaurentPoly


class LaurentPoly:
    """Exact element of k[t, 1/t] with sparse support."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                if c:
                    clean[int(k)] = clean.get(int(k), 0) + c
            clean = {k: c for k, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c):
        c = to_scalar(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, k, c=1):
        c = to_scalar(c)
        return cls._raw({int(k): c} if c else {})

    @classmethod
    def from_coeffs(cls, coeffs, start=0):
        """Build ``sum coeffs[i] t^(start+i)``."""
        return cls((start + i, to_scalar(c)) for i, c in enumerate(coeffs))

    @classmethod
    def parse(cls, text, var="t"):
        out = {}
        for c, (k,) in parse_terms(text, (var,), allow_negative=True):
            out[k] = out.get(k, 0) + c
        return cls(out)

    # -- inspection ------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, k):
        return self._terms.get(k, 0)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def ord(self):
        return min(self._terms) if self._terms else ORD_INF

    def degree(self):
        return max(self._terms) if self._terms else -ORD_INF

    def is_polynomial(self):
        return not self._terms or min(self._terms) >= 0

    def is_constant(self):
        return not self._terms or set(self._terms) == {0}

    def leading_coeff(self):
        return self._terms[max(self._terms)] if self._terms else 0

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, TruncSeries):
            return NotImplemented
        try:
            return LaurentPoly.constant(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = {}
        for i, a in self._terms.items():
            for j, b in o._terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (k, c), = self._terms.items()
            return LaurentPoly._raw({k * n: c**n})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        c = to_scalar(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly._raw({k: v * c for k, v in self._terms.items()})

    def shift(self, n):
        """Multiply by ``t^n``."""
        return LaurentPoly._raw({k + n: c for k, c in self._terms.items()})

    def derivative(self):
        return LaurentPoly((k - 1, k * c) for k, c in self._terms.items() if k)

    def __call__(self, x):
        """Evaluate at a scalar or at another ring element (composition)."""
        acc = 0
        for k, c in self._terms.items():
            acc = acc + c * x**k
        return acc

    def divmod(self, other):
        """Euclidean division in k[t]; both operands must be polynomials."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not (self.is_polynomial() and other.is_polynomial()):
            raise ValueError("divmod needs polynomials in k[t]")
        r = dict(self._terms)
        q = {}
        dg = other.degree()
        lc = other._terms[dg]
        while r and max(r) >= dg:
            k = max(r)
            f = r[k] / lc
            q[k - dg] = f
            for j, c in other._terms.items():
                v = r.get(j + k - dg, 0) - f * c
                if v:
                    r[j + k - dg] = v
                else:
                    r.pop(j + k - dg, None)
        return LaurentPoly._raw(q), LaurentPoly._raw(r)

    def exact_div(self, other):
        """Division known to be exact (Laurent monomial or polynomial divisor)."""
        if len(other._terms) == 1:
            (k, c), = other._terms.items()
            return LaurentPoly._raw({j - k: v / c for j, v in self._terms.items()})
        a, b = self, other
        sa = min(0, a.ord()) if a else 0
        sb = min(0, b.ord())
        a, b = a.shift(-sa), b.shift(-sb)
        q, r = a.divmod(b)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q.shift(sa - sb)

    def monic(self):
        return self.scale(1 / self.leading_coeff()) if self else self

    # -- comparison / printing ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, TruncSeries):
            return NotImplemented
        try:
            return self._terms == LaurentPoly.constant(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_str(self, var="t"):
        return format_terms([(c, (k,)) for k, c in self.items()], (var,))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()!r})"


T = LaurentPoly.monomial(1)


def poly_gcd(a, b):
    """Monic gcd in k[t] (Euclid)."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_content(values):
    """Monic gcd in k[t] of a sequence of polynomials (0 if all vanish)."""
    g = LaurentPoly()
    for v in values:
        g = poly_gcd(g, v) if g else v.monic()
        if g.is_constant() and g:
            return g
    return g


# ---------------------------------------------------------------------------
# TruncSeries


class TruncSeries:
    """Laurent series known modulo ``t^prec``.

    ``start`` is the index of the first stored coefficient.  After
    normalisation the first stored coefficient is nonzero, so ``start`` is
    the valuation; a series with no stored coefficients is zero to its
    precision and has no determinate valuation.
    """

    __slots__ = ("start", "coeffs", "prec")

    def __init__(self, coeffs, start=0, prec=None):
        coeffs = list(coeffs)
        if prec is None:
            prec = start + len(coeffs)
        coeffs = coeffs[: max(0, prec - start)]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        coeffs = coeffs[i:]
        start += i
        if not coeffs:
            start = prec
        else:
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        self.start = start
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @classmethod
    def from_poly(cls, p, prec):
        """Truncate an exact LaurentPoly at absolute precision ``prec``."""
        p = _as_laurent(p)
        if not p:
            return cls([], prec, prec)
        lo = p.ord()
        hi = min(prec, p.degree() + 1)
        if lo >= prec:
            return cls([], prec, prec)
        return cls([p.coeff(k) for k in range(lo, hi)], lo, prec)

    @classmethod
    def zero(cls, prec):
        return cls([], prec, prec)

    # -- inspection ------------------------------------------------------
    def is_zero_to_precision(self):
        return not self.coeffs

    def ord(self):
        if not self.coeffs:
            raise IndeterminateValuation(
                f"series is zero to precision O(t^{self.prec})"
            )
        return self.start

    def ord_lower_bound(self):
        return self.start

    def coeff(self, k):
        if k >= self.prec:
            raise InsufficientPrecision(f"coefficient of t^{k} unknown (prec {self.prec})")
        j = k - self.start
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def to_poly(self):
        """The known part as an exact LaurentPoly (drops the O-term)."""
        return LaurentPoly.from_coeffs(self.coeffs, self.start)

    def truncate(self, prec):
        if prec > self.prec:
            raise InsufficientPrecision("cannot raise precision")
        return TruncSeries(self.coeffs, self.start, prec)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            return other
        try:
            p = _as_laurent(other)
        except TypeError:
            return NotImplemented
        return TruncSeries.from_poly(p, self.prec) if p else TruncSeries.zero(self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prec = min(self.prec, o.prec)
        lo = min(self.start, o.start)
        if lo >= prec:
            return TruncSeries.zero(prec)
        out = [0] * (prec - lo)
        for s in (self, o):
            for i, c in enumerate(s.coeffs):
                k = s.start + i - lo
                if k < len(out):
                    out[k] = out[k] + c
        return TruncSeries(out, lo, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.start, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            o = other
        else:
            try:
                p = _as_laurent(other)
            except TypeError:
                return NotImplemented
            # exact factor: precision shifts by its valuation only
            if not p:
                return LaurentPoly()
            out = TruncSeries.zero(self.prec + p.ord())
            for k, c in p.items():
                out = out + TruncSeries(
                    [c * a for a in self.coeffs], self.start + k, self.prec + k
                )
            return out.truncate(self.prec + p.ord())
        prec = min(self.prec + o.start, o.prec + self.start)
        lo = self.start + o.start
        if lo >= prec:
            return TruncSeries.zero(prec)
        n = prec - lo
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if i >= n:
                break
            for j, b in enumerate(o.coeffs):
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + a * b
        return TruncSeries(out, lo, prec)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return invert_series(self) ** (-n)
        if n == 0:
            return TruncSeries.from_poly(LaurentPoly.constant(1), self.prec - self.start)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self):
        """Formal d/dt; precision drops by one."""
        out = [(self.start + i) * c for i, c in enumerate(self.coeffs)]
        return TruncSeries(out, self.start - 1, self.prec - 1)

    def __eq__(self, other):
        """Equality of the stored data (valuation, coefficients, precision)."""
        if isinstance(other, TruncSeries):
            return (self.start, self.coeffs, self.prec) == (other.start, other.coeffs, other.prec)
        return NotImplemented

    def __hash__(self):
        return hash((self.start, self.coeffs, self.prec))

    def agrees_with(self, other, upto=None):
        """True iff the two series coincide below ``upto`` (default: common precision)."""
        o = self._coerce(other)
        prec = min(self.prec, o.prec) if upto is None else upto
        if prec > min(self.prec, o.prec):
            raise InsufficientPrecision("comparison beyond known precision")
        return (self - o).truncate(prec).is_zero_to_precision()

    def __str__(self):
        body = self.to_poly().to_str() if self.coeffs else "0"
        return f"{body} + O(t^{self.prec})"

    def __repr__(self):
        return f"TruncSeries({self})"


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.constant(x)


def ord_t(a):
    """t-adic valuation; ``ORD_INF`` for the exact zero."""
    if isinstance(a, (LaurentPoly, TruncSeries)):
        return a.ord()
    return ORD_INF if to_scalar(a) == 0 else 0


# ---------------------------------------------------------------------------
# residue classes


class ResidueClass:
    """Element of O_K / (t^e) with canonical representative of degree < e."""

    __slots__ = ("modulus_exponent", "rep")

    def __init__(self, rep, e):
        if e < 1:
            raise ValueError("modulus exponent must be >= 1")
        rep = _as_laurent(rep)
        if rep and rep.ord() < 0:
            raise NegativeValuation("representative has negative valuation")
        self.modulus_exponent = e
        self.rep = LaurentPoly({k: c for k, c in rep.terms.items() if k < e})

    def _check(self, other):
        if not isinstance(other, ResidueClass):
            other = ResidueClass(other, self.modulus_exponent)
        if other.modulus_exponent != self.modulus_exponent:
            raise ValueError("mismatched moduli")
        return other

    def __add__(self, other):
        o = self._check(other)
        return ResidueClass(self.rep + o.rep, self.modulus_exponent)

    def __sub__(self, other):
        o = self._check(other)
        return ResidueClass(self.rep - o.rep, self.modulus_exponent)

    def __mul__(self, other):
        o = self._check(other)
        return ResidueClass(self.rep * o.rep, self.modulus_exponent)

    def __neg__(self):
        return ResidueClass(-self.rep, self.modulus_exponent)

    def __eq__(self, other):
        if isinstance(other, ResidueClass):
            return (self.modulus_exponent, self.rep) == (other.modulus_exponent, other.rep)
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus_exponent, self.rep))

    def coeffs(self):
        return tuple(self.rep.coeff(k) for k in range(self.modulus_exponent))

    def __repr__(self):
        return f"ResidueClass({self.rep} mod t^{self.modulus_exponent})"


def residue_truncate(a, e):
    """Reduce ``a`` (ord_t >= 0) modulo ``t^e``."""
    if e < 1:
        raise ValueError("e must be >= 1")
    if isinstance(a, TruncSeries):
        if a.prec < e:
            raise InsufficientPrecision(f"need precision >= {e}, have {a.prec}")
        if a.coeffs and a.start < 0:
            raise NegativeValuation("negative valuation")
        return ResidueClass(a.to_poly(), e)
    a = _as_laurent(a)
    if a and a.ord() < 0:
        raise NegativeValuation("negative valuation")
    return ResidueClass(a, e)


# ---------------------------------------------------------------------------
# series functions


def invert_series(a):
    """Multiplicative inverse; output precision is ``prec - 2*ord``."""
    if isinstance(a, LaurentPoly):
        raise TypeError("invert a TruncSeries; LaurentPoly inverses are not polynomials")
    v = a.ord()
    rel = a.prec - v
    u = a.coeffs
    inv = [0] * rel
    inv[0] = 1 / u[0] if isinstance(u[0], GF) else Fraction(1) / u[0]
    for n in range(1, rel):
        acc = 0
        for k in range(1, min(n, len(u) - 1) + 1):
            acc = acc + u[k] * inv[n - k]
        inv[n] = -acc * inv[0]
    return TruncSeries(inv, -v, rel - v)


def exp_series(z, prec):
    """``sum z^i / i!`` modulo ``t^prec`` for ``ord_t(z) >= 1``."""
    if isinstance(z, TruncSeries):
        if z.is_zero_to_precision():
            # exp(O(t^p)) = 1 + O(t^p)
            p = min(prec, z.prec)
            return TruncSeries.from_poly(LaurentPoly.constant(1), p)
        zp = z
        prec = min(prec, z.prec)
    else:
        z = _as_laurent(z)
        if not z:
            return TruncSeries.from_poly(LaurentPoly.constant(1), prec)
        zp = TruncSeries.from_poly(z, prec)
    if zp.ord() <= 0:
        raise DomainError("exp_series needs ord_t(z) >= 1 over an exact base field")
    out = TruncSeries.from_poly(LaurentPoly.constant(1), prec)
    term = TruncSeries.from_poly(LaurentPoly.constant(1), prec)
    i = 1
    while i * zp.start < prec:
        term = (term * zp) * Fraction(1, i)
        term = term.truncate(min(term.prec, prec)) if term.prec > prec else term
        out = out + term
        i += 1
    return out.truncate(min(out.prec, prec))


def coeff_scale(a, lam):
    """The substitution ``t -> lam * t``: coefficient ``a_j`` becomes ``lam^j a_j``."""
    lam = to_scalar(lam)
    if not lam:
        raise ZeroScale("scale factor must be nonzero")
    if isinstance(a, TruncSeries):
        return TruncSeries(
            [c * lam ** (a.start + i) for i, c in enumerate(a.coeffs)], a.start, a.prec
        )
    a = _as_laurent(a)
    return LaurentPoly._raw({k: c * lam**k for k, c in a.terms.items()})
