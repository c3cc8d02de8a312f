"""Sparse multivariate polynomials over Q with grevlex-ordered terms."""

from fractions import Fraction

from .errors import ArityMismatch, ZeroPolynomial
from .monomials import grevlex_key
from .series import to_scalar
from .textfmt import format_terms, parse_terms


def default_names(n):
    return tuple(f"x{i}" for i in range(n))


class MultiPoly:
    """Polynomial in ``arity`` variables; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity, terms=None):
        self.arity = arity
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = tuple(e)
                if len(e) != arity:
                    raise ArityMismatch(f"exponent {e} in arity {arity}")
                c = to_scalar(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, arity, terms):
        obj = cls.__new__(cls)
        obj.arity = arity
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, arity, c):
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def var(cls, arity, i, power=1):
        e = [0] * arity
        e[i] = power
        return cls._raw(arity, {tuple(e): Fraction(1)})

    @classmethod
    def gens(cls, arity):
        return [cls.var(arity, i) for i in range(arity)]

    @classmethod
    def parse(cls, text, variables=None, arity=None):
        """Parse e.g. ``"y - x^2"`` with ``variables=("x", "y")``."""
        if variables is None:
            terms = parse_terms(text, default_names(10))
            used = max((i for _, e in terms for i, k in enumerate(e) if k), default=-1)
            n = arity if arity is not None else max(used + 1, 1)
            if used >= n:
                raise ArityMismatch(f"x{used} used in a ring of arity {n}")
            return cls(n, [(e[:n], c) for c, e in terms])
        terms = parse_terms(text, tuple(variables))
        return cls(len(variables), [(e, c) for c, e in terms])

    # -- inspection ------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def sorted_terms(self):
        """Terms in grevlex-descending order."""
        return sorted(self._terms.items(), key=lambda ec: grevlex_key(ec[0]), reverse=True)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def leading_term(self):
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self._terms, key=grevlex_key)
        return e, self._terms[e]

    def leading_monomial(self):
        return self.leading_term()[0]

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self._terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.arity, Fraction(0))

    def variables_used(self):
        return {i for e in self._terms for i, k in enumerate(e) if k}

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.arity != self.arity:
                raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
            return other
        try:
            return MultiPoly.constant(self.arity, to_scalar(other))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.arity, {e: -c for e, c in self._terms.items()})

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
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.arity, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MultiPoly.constant(self.arity, 1)
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
            return MultiPoly(self.arity)
        return MultiPoly._raw(self.arity, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, mono, c=1):
        return MultiPoly._raw(
            self.arity,
            {tuple(a + b for a, b in zip(e, mono)): v * c for e, v in self._terms.items()},
        )

    def monic(self):
        if not self._terms:
            return self
        return self.scale(1 / self.leading_term()[1])

    def derivative(self, i):
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly._raw(self.arity, out)

    def evaluate(self, point):
        """Evaluate at a tuple of ring elements (scalars, LaurentPoly, TruncSeries, MultiPoly)."""
        if len(point) != self.arity:
            raise ArityMismatch(f"expected {self.arity} values, got {len(point)}")
        cache = [{0: 1} for _ in point]

        def power(i, k):
            c = cache[i]
            if k not in c:
                c[k] = point[i] ** k
            return c[k]

        acc = None
        for e, c in self.sorted_terms():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = power(i, k) * term
            acc = term if acc is None else acc + term
        return acc if acc is not None else 0

    __call__ = evaluate

    def extend(self, new_arity, positions=None):
        """Embed into a ring with more variables (``positions[i]`` = new index of variable i)."""
        if positions is None:
            positions = list(range(self.arity))
        out = {}
        for e, c in self._terms.items():
            f = [0] * new_arity
            for i, k in enumerate(e):
                f[positions[i]] += k
            out[tuple(f)] = c
        return MultiPoly._raw(new_arity, out)

    # -- comparison / printing ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.arity == other.arity and self._terms == other._terms
        try:
            return self == MultiPoly.constant(self.arity, to_scalar(other))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def to_str(self, variables=None):
        variables = variables or default_names(self.arity)
        return format_terms([(c, e) for e, c in self.sorted_terms()], variables)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.arity}, {self.to_str()!r})"


def poly_eval_series(F, point):
    """Value of F at a tuple of LaurentPoly/TruncSeries/scalars."""
    return F.evaluate(tuple(point))
