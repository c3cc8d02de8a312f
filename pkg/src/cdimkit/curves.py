"""Desk-scale curves, bounded-height coefficient varieties and witness checks.

A point of height at most ``s`` on a plane curve is a pair of polynomials
``x = sum a_i t^i``, ``y = sum b_j t^j`` of degree ``< s``.  For an
algebraic curve ``F(x, y) = 0`` the coefficient vectors form the variety
cut out by the t-coefficients of ``F(x, y)``; ``xs_ideal`` builds it.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from .errors import (
    Inconclusive,
    PrecisionGap,
    UnsupportedMap,
    ZeroPolynomial,
)
from .groebner import (
    DEFAULT_PAIR_BUDGET,
    IdealBasis,
    block_order,
    buchberger,
    dimension_after_elimination,
    eliminate_linear,
    reduce_poly,
)
from .polys import MultiPoly
from .series import (
    T,
    LaurentPoly,
    ResidueClass,
    TruncSeries,
    coeff_scale,
    exp_series,
    residue_truncate,
    to_scalar,
)

XY = ("x", "y")


# ---------------------------------------------------------------------------
# specifications


@dataclass(frozen=True)
class AdversarialParams:
    """Outer exponents N_0 < N_1 < ..., values F(N_n) and how many outer terms to keep."""

    N_seq: tuple
    F_vals: tuple
    truncation: int

    def __post_init__(self):
        object.__setattr__(self, "N_seq", tuple(int(n) for n in self.N_seq))
        object.__setattr__(self, "F_vals", tuple(int(f) for f in self.F_vals))
        if len(self.N_seq) != len(self.F_vals):
            raise ValueError("N_seq and F_vals must have equal length")
        if any(b <= a for a, b in zip(self.N_seq, self.N_seq[1:])):
            raise ValueError("N_seq must be strictly increasing")
        if any(v < 1 for v in self.N_seq + self.F_vals):
            raise ValueError("all N_n and F(N_n) must be >= 1")
        if not 1 <= self.truncation <= len(self.N_seq):
            raise ValueError("truncation must lie in 1..len(N_seq)")


@dataclass(frozen=True)
class CurveSpec:
    """``kind`` is ``"algebraic"``, ``"series_graph"`` or ``"adversarial"``."""

    kind: str
    poly: MultiPoly = None
    generator: str = None
    min_ord: int = 1
    params: AdversarialParams = None

    def __post_init__(self):
        if self.kind == "algebraic":
            if self.poly is None or self.poly.arity != 2 or self.poly.is_constant():
                raise ValueError("algebraic curve needs a non-constant F(x, y)")
        elif self.kind == "series_graph":
            if self.generator != "exp":
                raise ValueError(f"unknown series generator {self.generator!r}")
            if self.min_ord < 1:
                raise ValueError("exp is only defined on t*k[[t]] here (min_ord >= 1)")
        elif self.kind == "adversarial":
            if self.params is None:
                raise ValueError("adversarial curve needs params")
        else:
            raise ValueError(f"unknown curve kind {self.kind!r}")

    @classmethod
    def algebraic(cls, F):
        if isinstance(F, str):
            F = MultiPoly.parse(F, XY)
        return cls("algebraic", poly=F)

    @classmethod
    def exp_graph(cls):
        return cls("series_graph", generator="exp", min_ord=1)

    @classmethod
    def adversarial(cls, N_seq, F_vals, truncation=None):
        trunc = len(N_seq) if truncation is None else truncation
        return cls("adversarial", params=AdversarialParams(N_seq, F_vals, trunc))

    @classmethod
    def from_dict(cls, d):
        kind = d.get("kind")
        if kind == "algebraic":
            names = tuple(d.get("variables", XY))
            return cls.algebraic(MultiPoly.parse(d["poly"], names))
        if kind == "series_graph":
            return cls("series_graph", generator=d.get("generator", "exp"),
                       min_ord=int(d.get("min_ord", 1)))
        if kind == "adversarial":
            return cls.adversarial(d["N"], d["F"], d.get("truncation"))
        raise ValueError(f"unknown curve kind {kind!r}")

    def to_dict(self):
        if self.kind == "algebraic":
            return {"kind": "algebraic", "poly": self.poly.to_str(XY), "variables": list(XY)}
        if self.kind == "series_graph":
            return {"kind": "series_graph", "generator": self.generator, "min_ord": self.min_ord}
        p = self.params
        return {"kind": "adversarial", "N": list(p.N_seq), "F": list(p.F_vals),
                "truncation": p.truncation}

    def contains(self, x, y):
        """Exact membership test for a point with polynomial coordinates."""
        if self.kind == "algebraic":
            return not self.poly.evaluate((x, y))
        if self.kind == "adversarial":
            return adversarial_eval(self.params, x) == y
        raise UnsupportedMap("membership on a series graph is not decidable exactly")


@dataclass(frozen=True)
class WitnessMap:
    """Polynomial map (x, y) -> O_K^d with rational coefficients."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        for c in comps:
            if not isinstance(c, MultiPoly) or c.arity != 2:
                raise UnsupportedMap("witness components must be polynomials in x, y")
        if not comps:
            raise UnsupportedMap("witness map needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def projection(cls, coordinate=0):
        return cls((MultiPoly.var(2, coordinate),))

    @classmethod
    def from_dict(cls, d):
        kind = d.get("kind", "projection")
        if kind == "projection":
            return cls.projection(int(d.get("coordinate", 0)))
        if kind == "polynomial":
            return cls(tuple(MultiPoly.parse(c, XY) for c in d["components"]))
        raise UnsupportedMap(f"unsupported witness map kind {kind!r}")

    @property
    def d(self):
        return len(self.components)

    def describe(self):
        return "(" + ", ".join(c.to_str(XY) for c in self.components) + ")"

    def __call__(self, x, y):
        return tuple(c.evaluate((x, y)) for c in self.components)


# ---------------------------------------------------------------------------
# X_s


@dataclass(frozen=True)
class XsIdeal:
    s: int
    vars: tuple
    basis: IdealBasis

    def point_to_pair(self, values):
        """Coefficient vector (a_0..a_{s-1}, b_0..b_{s-1}) -> (x, y)."""
        s = self.s
        return (LaurentPoly.from_coeffs(values[:s]), LaurentPoly.from_coeffs(values[s:]))


def coefficient_vars(s):
    return tuple(f"a{i}" for i in range(s)) + tuple(f"b{j}" for j in range(s))


def _generic_point(s, extra=0):
    """x and y with symbolic coefficients in the ring (t, a_0.., b_0.., extra...)."""
    n = 1 + 2 * s + extra
    t = MultiPoly.var(n, 0)
    X = MultiPoly(n)
    Y = MultiPoly(n)
    for i in range(s):
        X = X + MultiPoly.var(n, 1 + i) * t**i
        Y = Y + MultiPoly.var(n, 1 + s + i) * t**i
    return X, Y


def _t_coefficients(V, arity):
    """Split a polynomial in (t, rest...) into its t-coefficients."""
    by = {}
    for e, c in V.terms.items():
        by.setdefault(e[0], {})[e[1:]] = c
    return {k: MultiPoly(arity, by[k]) for k in sorted(by)}


def xs_ideal(curve, s):
    """One generator per t-coefficient of F(sum a_i t^i, sum b_j t^j)."""
    if curve.kind != "algebraic":
        raise UnsupportedMap("X_s ideals exist for algebraic curves only")
    if s < 1:
        raise ValueError("s must be >= 1")
    X, Y = _generic_point(s)
    V = curve.poly.evaluate((X, Y))
    coeffs = _t_coefficients(V, 2 * s)
    gens = tuple(coeffs[k] for k in sorted(coeffs) if coeffs[k])
    return XsIdeal(s, coefficient_vars(s), IdealBasis.of(gens))


def xs_dimension(curve, s, budget=DEFAULT_PAIR_BUDGET):
    """Zariski dimension of X_s (via Groebner after exact linear elimination)."""
    X = xs_ideal(curve, s)
    return dimension_after_elimination(list(X.basis.generators), 2 * s, budget=budget)


# ---------------------------------------------------------------------------
# counting-dimension witnesses


@dataclass
class CDimWitnessReport:
    s: int
    map_spec: str
    d: int
    e: int
    status: str  # "finite", "infinite" or "undetermined"
    max_finite_fiber: int = None
    infinite: bool = False
    infinite_fiber_point: tuple = None
    probes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "s": self.s,
            "map_spec": self.map_spec,
            "d": self.d,
            "e": self.e,
            "status": self.status,
            "max_finite_fiber": self.max_finite_fiber,
            "infinite": self.infinite,
            "infinite_fiber_point": None
            if self.infinite_fiber_point is None
            else [[str(c) for c in rc.coeffs()] for rc in self.infinite_fiber_point],
            "probes": self.probes,
        }


def _fiber_equations(curve, s, wmap, e, extra):
    """Generators of X_s together with (map_i)_k - c_{i,k} for k < e.

    Ring layout: a_0.., b_0.. (2s variables) followed by ``extra``
    parameter slots c_{i,k} (i-th component, k-th coefficient).
    """
    n = 2 * s + extra
    X, Y = _generic_point(s, extra)
    gens = [g for g in _t_coefficients(curve.poly.evaluate((X, Y)), n).values() if g]
    fiber = []
    for comp in wmap.components:
        coeffs = _t_coefficients(comp.evaluate((X, Y)), n)
        fiber.append([coeffs.get(k, MultiPoly(n)) for k in range(e)])
    return gens, fiber


def _nilpotent_closure(gens, order, candidates, max_power=16, budget=DEFAULT_PAIR_BUDGET):
    """Add variables lying in the radical (v^k in I); returns the GB."""
    gens = list(gens)
    while True:
        gb = buchberger(IdealBasis.of(gens, order), budget=budget)
        if gb.is_unit():
            return gb
        added = False
        n = gb.arity
        for v in candidates:
            lin = MultiPoly.var(n, v)
            if not reduce_poly(lin, gb):
                continue
            if any(not reduce_poly(MultiPoly.var(n, v, k), gb) for k in range(2, max_power + 1)):
                gens.append(lin)
                added = True
        if not added:
            return gb


def _standard_count(lead, variables):
    """Number of monomials in ``variables`` outside the monomial ideal ``lead``.

    ``lead`` must contain a pure power of every variable; otherwise None.
    """
    pure = {}
    for m in lead:
        sup = [i for i in variables if m[i]]
        others = [i for i, k in enumerate(m) if k and i not in variables]
        if len(sup) == 1 and not others:
            v = sup[0]
            pure[v] = min(pure.get(v, m[v]), m[v])
    if any(v not in pure for v in variables):
        return None
    count = 0

    def rec(idx, mono):
        nonlocal count
        if idx == len(variables):
            if not any(all(m[i] <= mono.get(i, 0) for i in range(len(m)) if m[i]) for m in lead):
                count += 1
            return
        v = variables[idx]
        for k in range(pure[v]):
            mono[v] = k
            rec(idx + 1, mono)
        mono.pop(v, None)

    rec(0, {})
    return count


def _concrete_fiber_dimension(gens, fiber, s, point, budget):
    n = 2 * s
    eqs = list(gens)
    for comp, vals in zip(fiber, point):
        for g, c in zip(comp, vals):
            eqs.append(g - c)
    return dimension_after_elimination(eqs, n, budget=budget)


def cdim_witness_check(curve, s, map_spec=None, e=1, fiber=None, probes=2, seed=0,
                       budget=DEFAULT_PAIR_BUDGET):
    """Fibres of X_s -> (O_K / t^e)^d for a polynomial witness map.

    All fibres are certified finite (with a uniform size bound) when the
    parametric fibre ideal, in a block order putting the coefficient
    variables first, contains a pure power of every remaining coefficient
    variable with constant leading coefficient.  Otherwise concrete
    residue classes (``fiber`` if given, the zero class, then ``probes``
    seeded random classes) are tested; a positive-dimensional fibre sets
    the infinite flag.
    """
    if curve.kind != "algebraic":
        raise UnsupportedMap("counting-dimension witness checks need an algebraic curve")
    wmap = map_spec if isinstance(map_spec, WitnessMap) else (
        WitnessMap.projection(0) if map_spec is None else WitnessMap.from_dict(map_spec))
    if e < 1:
        raise ValueError("e must be >= 1")
    d = wmap.d
    n_fib = 2 * s
    n_par = d * e
    report = CDimWitnessReport(s=s, map_spec=wmap.describe(), d=d, e=e, status="undetermined")

    # parametric fibre
    gens, fib = _fiber_equations(curve, s, wmap, e, n_par)
    eqs = list(gens)
    for i, comp in enumerate(fib):
        for k, g in enumerate(comp):
            eqs.append(g - MultiPoly.var(n_fib + n_par, n_fib + i * e + k))
    rest, gone = eliminate_linear(eqs, allowed=set(range(n_fib)))
    remaining = [v for v in range(n_fib) if v not in {w for w, _ in gone}]
    if any(g.is_constant() for g in rest):
        report.status, report.max_finite_fiber = "finite", 0
        return report
    if not rest:
        bound = 1 if not remaining else None
    else:
        gb = _nilpotent_closure(rest, block_order(n_fib), remaining, budget=budget)
        if gb.is_unit():
            bound = 0
        else:
            lead = [m for m in gb.leading_exponents() if not any(m[n_fib:])]
            bound = _standard_count(lead, remaining) if remaining else 1
    if bound is not None:
        report.status, report.max_finite_fiber = "finite", bound
        return report

    # concrete fibres
    rng = random.Random(seed)
    points = []
    if fiber is not None:
        points.append(tuple(tuple(to_scalar(c) for c in comp) for comp in fiber))
    points.append(tuple(tuple(Fraction(0) for _ in range(e)) for _ in range(d)))
    for _ in range(probes):
        points.append(tuple(tuple(Fraction(rng.randint(-3, 3)) for _ in range(e))
                            for _ in range(d)))
    for pt in points:
        gens_c, fib_c = _fiber_equations(curve, s, wmap, e, 0)
        dim = _concrete_fiber_dimension(gens_c, fib_c, s, pt, budget)
        report.probes.append({"fiber": [[str(c) for c in comp] for comp in pt], "dimension": dim})
        if dim >= 1:
            report.status = "infinite"
            report.infinite = True
            report.infinite_fiber_point = tuple(
                ResidueClass(LaurentPoly.from_coeffs(comp), e) for comp in pt)
            return report
    return report


def cdim_combine(w1, w2=None, mode="union", N_pullback=None):
    """Bounds (N, d, e) for unions, products and pullbacks."""
    N1, d1, e1 = w1
    if mode == "union":
        N2, d2, e2 = w2
        return (N1 + N2, max(d1, d2), max(e1, e2))
    if mode == "product":
        N2, d2, e2 = w2
        return (N1 * N2, d1 + d2, max(e1, e2))
    if mode == "pullback":
        if N_pullback is None:
            raise ValueError("pullback needs the fibre bound N''")
        return (N_pullback * N1, d1, e1)
    raise ValueError(f"unknown combination mode {mode!r}")


# ---------------------------------------------------------------------------
# the adversarial construction


def adversarial_terms(params, x):
    """The individual outer terms t^N x^N prod (x - i - j t^l), n < truncation."""
    x = x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x)
    out = []
    for n in range(params.truncation):
        N, F = params.N_seq[n], params.F_vals[n]
        factors = [x - i - T.shift(ell - 1).scale(j)
                   for i in range(1, N + 1) for ell in range(1, N + 1) for j in range(1, F + 1)]
        if not x or not all(factors):
            out.append(LaurentPoly())
            continue
        term = T**N * x**N
        for fac in factors:
            term = term * fac
        out.append(term)
    return out


def adversarial_eval(params, x):
    """Exact value of the truncated adversarial series at x in k[t]."""
    total = LaurentPoly()
    for term in adversarial_terms(params, x):
        total = total + term
    return total


def vanishing_tail_from(params, i, j, ell):
    """First outer index whose term vanishes at i + j t^l (and all later ones do)."""
    for n, (N, F) in enumerate(zip(params.N_seq, params.F_vals)):
        if i <= N and ell <= N and j <= F:
            return n
    return None


@dataclass
class CollapseReport:
    n: int
    s: int
    e: int
    precondition_ok: bool
    points: list
    max_degree: int
    degree_bound_proof: int
    degree_bound_coarse: int
    in_Cs: bool
    collapsed: bool
    fiber_size: int

    def to_dict(self):
        return {
            "n": self.n, "s": self.s, "e": self.e,
            "precondition_ok": self.precondition_ok,
            "points": [[str(x), str(y)] for x, y in self.points],
            "max_degree": self.max_degree,
            "degree_bound_proof": self.degree_bound_proof,
            "degree_bound_coarse": self.degree_bound_coarse,
            "in_Cs": self.in_Cs, "collapsed": self.collapsed,
            "fiber_size": self.fiber_size,
        }


def adversarial_collapse_check(params, n, s=None, e=1, wmap=None):
    """Check that S = {(N_n + j t^N_n, f(..)) : j <= F(N_n)} sits in C_s and in one fibre.

    ``s=None`` uses the smallest admissible height.  The witness map
    defaults to the projection onto x.
    """
    if not 0 <= n < params.truncation:
        raise ValueError("index n must be covered by the truncation")
    N, F = params.N_seq[n], params.F_vals[n]
    wmap = wmap or WitnessMap.projection(0)
    points = []
    for j in range(1, F + 1):
        x = N + T.shift(N - 1).scale(j)
        points.append((x, adversarial_eval(params, x)))
    degs = [max(x.degree(), y.degree()) for x, y in points]
    max_deg = int(max(degs))
    if n >= 1:
        Np, Fp = params.N_seq[n - 1], params.F_vals[n - 1]
        proof_bound = Np + N * Np + N * Np**2 * Fp
        coarse = 3 * N * Np**2 * Fp
    else:
        proof_bound = coarse = None
    if s is None:
        s = max_deg + 1
    in_Cs = max_deg < s
    if not in_Cs:
        raise PrecisionGap(
            f"deg_t of a point of S is {max_deg} >= s = {s}; parameters violate the growth condition"
        )
    pre = e <= N
    images = {tuple(residue_truncate(v, e) for v in wmap(x, y)) for x, y in points}
    return CollapseReport(
        n=n, s=s, e=e, precondition_ok=pre, points=points, max_degree=max_deg,
        degree_bound_proof=proof_bound, degree_bound_coarse=coarse,
        in_Cs=in_Cs, collapsed=len(images) == 1, fiber_size=len(set(points)),
    )


# ---------------------------------------------------------------------------
# the exponential graph


@dataclass
class ExpGraphReport:
    s: int
    prec: int
    certificates: list

    def to_dict(self):
        return {"s": self.s, "prec": self.prec, "certificates": self.certificates}


def exp_graph_check(s, prec, samples, scalings=()):
    """Certify exp(x) has a nonzero coefficient in degrees [s, prec).

    ``x = 0`` is reported as the height-one point (0, 1).  For every
    ``lam`` in ``scalings`` the commutation exp(tau(x)) = tau(exp(x)) of
    the coefficient scaling ``tau: t -> lam t`` is checked as well.
    """
    if prec <= s:
        raise ValueError("need prec > s")
    certs = []
    for x in samples:
        x = x if isinstance(x, LaurentPoly) else LaurentPoly.parse(str(x))
        E = exp_series(x, prec)
        entry = {"x": str(x)}
        if not x:
            entry.update(in_C1=True, value=str(E.to_poly()), witness_degree=None)
        else:
            if x.ord() < 1 or x.degree() >= s:
                raise ValueError(f"sample {x} must have ord >= 1 and degree < s")
            wd = next((k for k in range(s, prec) if E.coeff(k)), None)
            if wd is None:
                raise Inconclusive(f"no nonzero coefficient of exp({x}) in [{s}, {prec}); raise prec")
            entry.update(in_C1=False, witness_degree=wd, witness_coeff=str(E.coeff(wd)))
        entry["scaling_commutes"] = all(
            exp_series(coeff_scale(x, lam), prec) == coeff_scale(E, lam) for lam in scalings
        )
        certs.append(entry)
    return ExpGraphReport(s, prec, certs)


# ---------------------------------------------------------------------------
# transcendence reduction for the exponential


def _y_coefficients(f):
    """f = sum_i f_i(x) y^i; returns [f_0, ..., f_d] as polynomials in (x, y) with y-degree 0."""
    d = f.degree_in(1)
    out = [dict() for _ in range(d + 1)]
    for (a, b), c in f.terms.items():
        out[b][(a, 0)] = c
    return [MultiPoly(2, o) for o in out]


def transcendence_reduction_step(f):
    """g = sum_{i<=d} f_i' y^i + sum_{i<d} (i - d) f_i y^i for f = sum f_i(x) y^i."""
    if not f:
        raise ZeroPolynomial("reduction step needs f != 0")
    fs = _y_coefficients(f)
    d = len(fs) - 1
    y = MultiPoly.var(2, 1)
    g = MultiPoly(2)
    for i, fi in enumerate(fs):
        g = g + fi.derivative(0) * y**i
        if i < d:
            g = g + fi.scale(i - d) * y**i
    return g


def _bidegree(f):
    """(y-degree, x-degree of the top y-coefficient); (-1, -1) for zero."""
    if not f:
        return (-1, -1)
    fs = _y_coefficients(f)
    return (len(fs) - 1, fs[-1].degree_in(0))


@dataclass
class ReductionReport:
    f: str
    g: str
    bidegree_f: tuple
    bidegree_g: tuple
    strictly_smaller: bool
    terminal: bool
    identity_order: int
    identity_holds: bool

    def to_dict(self):
        return dict(self.__dict__)


def reduction_identity_holds(f, g, order):
    """g(x, exp x) = d/dx f(x, exp x) - d f(x, exp x) modulo x^(order)."""
    x = TruncSeries.from_poly(T, order + 1)
    E = exp_series(T, order + 1)
    d = f.degree_in(1)
    F = f.evaluate((x, E))
    lhs = g.evaluate((x, E))
    if not isinstance(lhs, TruncSeries):
        lhs = TruncSeries.from_poly(LaurentPoly.constant(lhs) if not isinstance(lhs, LaurentPoly) else lhs, order)
    if not isinstance(F, TruncSeries):
        F = TruncSeries.from_poly(LaurentPoly.constant(F) if not isinstance(F, LaurentPoly) else F, order + 1)
    rhs = F.derivative() - F * d
    return lhs.truncate(order).agrees_with(rhs.truncate(order))


def reduction_report(f, order=8):
    g = transcendence_reduction_step(f)
    bf, bg = _bidegree(f), _bidegree(g)
    return ReductionReport(
        f=f.to_str(XY), g=g.to_str(XY), bidegree_f=bf, bidegree_g=bg,
        strictly_smaller=bg < bf, terminal=not g,
        identity_order=order, identity_holds=reduction_identity_holds(f, g, order),
    )


def reduction_chain(f, max_steps=50):
    """Iterate the reduction step until it reaches zero."""
    chain = [f]
    while chain[-1] and len(chain) <= max_steps:
        chain.append(transcendence_reduction_step(chain[-1]))
    return chain


__all__ = [
    "AdversarialParams", "CurveSpec", "WitnessMap", "XsIdeal", "CDimWitnessReport",
    "xs_ideal", "xs_dimension", "cdim_witness_check", "cdim_combine",
    "adversarial_eval", "adversarial_terms", "adversarial_collapse_check",
    "exp_graph_check", "transcendence_reduction_step", "reduction_report",
    "reduction_chain", "vanishing_tail_from",
]
