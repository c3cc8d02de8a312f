"""Buchberger's algorithm, leading-term ideals, Hilbert functions and dimension.

All arithmetic is exact over Q.  The default monomial order is the grevlex
variant of ``monomials.grevlex_key``; ``block_order(k)`` compares the first
``k`` variables before the rest (used to treat trailing variables as
parameters).
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    NonPolynomialRange,
    NotGroebner,
    NotHomogeneous,
    ZeroHilbert,
    ZeroPolynomial,
)
from .monomials import ExponentSet, count_atmost, enumerate_grevlex, grevlex_key
from .polys import MultiPoly

DEFAULT_PAIR_BUDGET = 100_000


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a sort key; ``block`` is None for plain grevlex."""

    block: int = None

    def key(self, e):
        if self.block is None:
            return grevlex_key(e)
        return grevlex_key(e[: self.block]), grevlex_key(e[self.block :])

    @property
    def name(self):
        return "grevlex" if self.block is None else f"block({self.block})"


GREVLEX = MonomialOrder()


def block_order(k):
    return MonomialOrder(block=k)


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple
    is_groebner: bool = False
    is_homogeneous: bool = False
    order: MonomialOrder = GREVLEX

    @classmethod
    def of(cls, gens, order=GREVLEX):
        gens = tuple(g for g in gens if g)
        arities = {g.arity for g in gens}
        if len(arities) > 1:
            raise ArityMismatch(f"generators of arities {sorted(arities)}")
        return cls(gens, False, all(g.is_homogeneous() for g in gens), order)

    @property
    def arity(self):
        return self.generators[0].arity if self.generators else None

    def leading_exponents(self):
        return [_lm(g._terms, self.order.key) for g in self.generators]

    def is_unit(self):
        return any(g.is_constant() and g for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


# ---------------------------------------------------------------------------
# low-level helpers on term dicts


def _lm(terms, key):
    return max(terms, key=key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_mul(f, g, mono, c):
    """f -= c * mono * g in place (g a term dict)."""
    for e, v in g.items():
        e2 = tuple(x + y for x, y in zip(e, mono))
        w = f.get(e2, 0) - c * v
        if w:
            f[e2] = w
        else:
            del f[e2]


def _normal_form(f, basis, key, full=True):
    """Remainder of f (term dict) on division by monic basis [(lm, terms)]."""
    f = dict(f)
    rem = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                _sub_mul(f, g, tuple(x - y for x, y in zip(lm, glm)), c)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[lm] = c
            del f[lm]
    return rem


def _monic(terms, key):
    lm = _lm(terms, key)
    c = terms[lm]
    if c == 1:
        return lm, terms
    inv = 1 / c
    return lm, {e: v * inv for e, v in terms.items()}


# ---------------------------------------------------------------------------
# public operations


def leading_term(p, order=GREVLEX):
    """(exponent, coefficient) of the order-maximal term."""
    if not p:
        raise ZeroPolynomial("zero polynomial has no leading term")
    e = _lm(p._terms, order.key)
    return e, p._terms[e]


def s_polynomial(p, q, order=GREVLEX):
    if not p or not q:
        raise ZeroPolynomial("S-polynomial of a zero polynomial")
    if p.arity != q.arity:
        raise ArityMismatch(f"{p.arity} vs {q.arity}")
    ep, cp = leading_term(p, order)
    eq, cq = leading_term(q, order)
    L = _lcm(ep, eq)
    f = {}
    _sub_mul(f, p._terms, tuple(x - y for x, y in zip(L, ep)), -1 / cp)
    _sub_mul(f, q._terms, tuple(x - y for x, y in zip(L, eq)), 1 / cq)
    return MultiPoly._raw(p.arity, f)


def reduce_poly(p, basis):
    """Full remainder of p modulo a Groebner basis."""
    key = basis.order.key
    G = [_monic(dict(g._terms), key) for g in basis.generators]
    return MultiPoly._raw(p.arity, _normal_form(p._terms, G, key))


def ideal_contains(basis, p):
    if not basis.is_groebner:
        raise NotGroebner("membership test needs a Groebner basis")
    return not reduce_poly(p, basis)


def buchberger(basis, budget=DEFAULT_PAIR_BUDGET, order=None):
    """Reduced Groebner basis (monic, sorted by leading monomial).

    Uses the coprime-leading-monomial criterion and the chain criterion,
    picks pairs by ascending lcm degree, and raises ``BudgetExceeded``
    once more than ``budget`` pairs have been reduced.
    """
    if not isinstance(basis, IdealBasis):
        basis = IdealBasis.of(basis)
    order = order or basis.order
    key = order.key
    arity = basis.arity
    gens = [dict(g._terms) for g in basis.generators if g]
    if not gens:
        return IdealBasis((), True, True, order)
    homogeneous = all(MultiPoly._raw(arity, g).is_homogeneous() for g in gens)

    G = []
    for g in gens:
        r = _normal_form(g, G, key)
        if r:
            G.append(_monic(r, key))
    pairs = set(itertools.combinations(range(len(G)), 2))
    reductions = 0

    def pair_key(ij):
        i, j = ij
        L = _lcm(G[i][0], G[j][0])
        return (sum(L), key(L), j, i)

    while pairs:
        if any(not any(lm) for lm, _ in G):
            break
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        i, j = ij
        lmi, gi = G[i]
        lmj, gj = G[j]
        L = _lcm(lmi, lmj)
        # criterion 1: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        # criterion 2: chain through a third element
        skip = False
        for k in range(len(G)):
            if k in ij:
                continue
            if (
                _divides(G[k][0], L)
                and (min(i, k), max(i, k)) not in pairs
                and (min(j, k), max(j, k)) not in pairs
            ):
                skip = True
                break
        if skip:
            continue
        reductions += 1
        if reductions > budget:
            raise BudgetExceeded(f"pair budget {budget} exhausted")
        s = {}
        _sub_mul(s, gi, tuple(x - y for x, y in zip(L, lmi)), -1)
        _sub_mul(s, gj, tuple(x - y for x, y in zip(L, lmj)), 1)
        r = _normal_form(s, G, key)
        if r:
            G.append(_monic(r, key))
            n = len(G) - 1
            pairs.update((k, n) for k in range(n))

    return IdealBasis(
        tuple(_reduce_basis(G, key, arity)), True, homogeneous, order
    )


def _reduce_basis(G, key, arity):
    if any(not any(lm) for lm, _ in G):
        return [MultiPoly.constant(arity, 1)]
    # minimalise
    G = sorted(G, key=lambda g: key(g[0]))
    minimal = []
    for lm, g in G:
        if not any(_divides(h, lm) for h, _ in minimal):
            minimal = [(h, gh) for h, gh in minimal if not _divides(lm, h)]
            minimal.append((lm, g))
    # interreduce
    out = []
    for idx, (lm, g) in enumerate(minimal):
        others = [m for k, m in enumerate(minimal) if k != idx]
        tail = {e: c for e, c in g.items() if e != lm}
        r = _normal_form(tail, others, key)
        r[lm] = Fraction(1)
        out.append((lm, r))
    out.sort(key=lambda g: key(g[0]))
    return [MultiPoly._raw(arity, r) for _, r in out]


def is_groebner_basis(gens, order=GREVLEX):
    """Check every S-polynomial reduces to zero (exhaustive)."""
    key = order.key
    G = [_monic(dict(g._terms), key) for g in gens if g]
    for (li, gi), (lj, gj) in itertools.combinations(G, 2):
        L = _lcm(li, lj)
        s = {}
        _sub_mul(s, gi, tuple(x - y for x, y in zip(L, li)), -1)
        _sub_mul(s, gj, tuple(x - y for x, y in zip(L, lj)), 1)
        if _normal_form(s, G, key):
            return False
    return True


def _require_gb(gb):
    if not isinstance(gb, IdealBasis) or not gb.is_groebner:
        raise NotGroebner("operation needs a Groebner basis (run buchberger first)")


def standard_monomials(gb, r, arity=None):
    """Degree-r exponents outside LT(I), grevlex-ascending."""
    _require_gb(gb)
    n = gb.arity if gb.arity is not None else arity
    if n is None:
        raise ArityMismatch("arity unknown for the zero ideal; pass arity=")
    lead = gb.leading_exponents()
    return ExponentSet(
        n,
        tuple(a for a in enumerate_grevlex(n, r, "exact") if not any(_divides(l, a) for l in lead)),
    )


@dataclass(frozen=True)
class HilbertRecord:
    r: int
    H: int
    sigma: tuple

    def identity_holds(self):
        return self.r * self.H == sum(self.sigma)


def hilbert_fn(gb, r, arity=None):
    """H_I(r) and the exponent sums sigma_{I,i}(r) over standard monomials."""
    _require_gb(gb)
    if not gb.is_homogeneous:
        raise NotHomogeneous("Hilbert function needs a homogeneous ideal")
    mons = standard_monomials(gb, r, arity)
    rec = HilbertRecord(r=r, H=len(mons), sigma=mons.totals())
    assert rec.identity_holds()
    return rec


@dataclass(frozen=True)
class HilbertPolyReport:
    r_min: int
    r_max: int
    values: tuple
    leading_coefficient: Fraction
    constant: Fraction
    expected_degree: int
    degree_matches: bool


def hilbert_poly_check(gb, r_min, r_max, degree=None, arity=None):
    """Fit H_I(r) on [r_min, r_max] by a linear polynomial (curves in P^2).

    ``degree`` defaults to the degree of the generator for a principal ideal.
    """
    _require_gb(gb)
    if r_max - r_min < 1:
        raise ValueError("need at least two sample points")
    vals = tuple(hilbert_fn(gb, r, arity).H for r in range(r_min, r_max + 1))
    diffs = {b - a for a, b in zip(vals, vals[1:])}
    if len(diffs) != 1:
        raise NonPolynomialRange(f"successive differences {sorted(diffs)} are not constant")
    lead = Fraction(diffs.pop())
    const = vals[0] - lead * r_min
    if degree is None and len(gb.generators) == 1:
        degree = gb.generators[0].total_degree()
    return HilbertPolyReport(
        r_min, r_max, vals, lead, const, degree, degree is not None and lead == degree
    )


def a_estimate(gb, i, r, arity=None):
    """sigma_{I,i}(r) / (r H_I(r)) as an exact rational."""
    if r < 1:
        raise ValueError("r must be >= 1")
    rec = hilbert_fn(gb, r, arity)
    if rec.H == 0:
        raise ZeroHilbert(f"H_I({r}) = 0")
    return Fraction(rec.sigma[i], r * rec.H)


def variety_dimension(basis, budget=DEFAULT_PAIR_BUDGET, arity=None):
    """Krull dimension of the affine variety; -1 for the unit ideal.

    Largest set S of variables such that no leading monomial of the
    grevlex Groebner basis involves only variables from S.
    """
    if isinstance(basis, IdealBasis) and basis.is_groebner:
        gb = basis
    else:
        gb = buchberger(basis, budget=budget)
    n = gb.arity if gb.arity is not None else arity
    if n is None:
        raise ArityMismatch("arity unknown for the zero ideal; pass arity=")
    if gb.is_unit():
        return -1
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in gb.leading_exponents()]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            S = frozenset(S)
            if not any(sup <= S for sup in supports):
                return size
    return 0


def homogenize(F, degree=None):
    """x0^d F(x1/x0, ..., xn/x0): the closure under (x1..xn) -> (1:x1:..:xn)."""
    d = F.total_degree() if degree is None else degree
    out = {}
    for e, c in F._terms.items():
        out[(d - sum(e),) + e] = c
    return MultiPoly(F.arity + 1, out)


def hilbert_series_principal(d, r):
    """H(r) = D_2(r) - D_2(r - d) for a degree-d plane curve."""
    return count_atmost(2, r) - count_atmost(2, r - d)


def _substitute(p, v, expr):
    """Replace variable v in p by the polynomial expr (which does not involve v)."""
    if not p.degree_in(v) > 0:
        return p
    out = MultiPoly(p.arity)
    powers = {0: MultiPoly.constant(p.arity, 1)}
    for e, c in p._terms.items():
        k = e[v]
        if k not in powers:
            powers[k] = expr**k
        mono = list(e)
        mono[v] = 0
        out = out + powers[k].mul_monomial(tuple(mono), c)
    return out


def eliminate_linear(gens, allowed=None):
    """Remove variables that some generator solves linearly.

    A generator ``c*v + h`` with constant ``c != 0`` and ``v`` absent from
    ``h`` lets ``v`` be replaced by ``-h/c`` everywhere; the quotient rings
    before and after are isomorphic.  Returns ``(remaining_gens,
    eliminated)`` where ``eliminated`` lists ``(v, expression)`` pairs in
    elimination order.  ``allowed`` restricts which variables may go.
    """
    gens = [g for g in gens if g]
    eliminated = []
    while True:
        found = None
        for gi, g in enumerate(gens):
            for v in sorted(g.variables_used(), reverse=True):
                if allowed is not None and v not in allowed:
                    continue
                lin = [(e, c) for e, c in g._terms.items() if e[v]]
                if len(lin) == 1 and lin[0][0][v] == 1 and sum(lin[0][0]) == 1:
                    found = (gi, v, lin[0][1])
                    break
            if found:
                break
        if not found:
            return gens, eliminated
        gi, v, c = found
        g = gens.pop(gi)
        unit = [0] * g.arity
        unit[v] = 1
        expr = (g - MultiPoly(g.arity, {tuple(unit): c})).scale(-1 / c)
        gens = [h for h in (_substitute(h, v, expr) for h in gens) if h]
        eliminated = [(w, _substitute(x, v, expr)) for w, x in eliminated]
        eliminated.append((v, expr))


def dimension_after_elimination(gens, arity, budget=DEFAULT_PAIR_BUDGET):
    """variety_dimension computed on the linearly-eliminated system."""
    rest, gone = eliminate_linear(gens)
    if any(g.is_constant() for g in rest):
        return -1
    if not rest:
        return arity - len(gone)
    return variety_dimension(IdealBasis.of(rest), budget=budget) - len(gone)
