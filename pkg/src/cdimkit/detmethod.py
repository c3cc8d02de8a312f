"""Monomial-evaluation matrices at points over k[t], their determinants, and kernels.

Matrix entries are exact ``LaurentPoly`` values; determinants use
fraction-free (Bareiss) elimination so every intermediate stays in k[t].
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    ArityMismatch,
    DomainError,
    EmptyInput,
    FullRank,
    InsufficientPrecision,
    NegativeValuation,
    NotSquare,
    UnsupportedMap,
    ZeroScale,
)
from .groebner import IdealBasis, buchberger, homogenize, standard_monomials
from .monomials import ExponentSet
from .polys import MultiPoly
from .series import (
    ORD_INF,
    T,
    LaurentPoly,
    TruncSeries,
    exp_series,
    poly_content,
    to_scalar,
)


def _lp(x):
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.constant(to_scalar(x))


def _monomial_value(point, exp, cache):
    acc = LaurentPoly.constant(1)
    for i, k in enumerate(exp):
        if k:
            key = (i, k)
            if key not in cache:
                cache[key] = point[i] ** k
            acc = acc * cache[key]
    return acc


@dataclass(frozen=True)
class PointMatrix:
    points: tuple
    exponents: ExponentSet
    entries: tuple

    @property
    def shape(self):
        return (len(self.entries), len(self.exponents))

    def rows(self):
        return [list(r) for r in self.entries]


def build_matrix(points, exponents):
    """Row i, column j holds ``prod_k point_i[k] ** exponents[j][k]``."""
    points = [tuple(_lp(c) for c in p) for p in points]
    if not points or len(exponents) == 0:
        raise EmptyInput("need at least one point and one exponent")
    if not isinstance(exponents, ExponentSet):
        exponents = ExponentSet(len(points[0]), tuple(exponents))
    for p in points:
        if len(p) != exponents.m:
            raise ArityMismatch(f"point of arity {len(p)} vs exponents of arity {exponents.m}")
        for c in p:
            if c and c.ord() < 0:
                raise NegativeValuation(f"coordinate {c} has negative valuation")
    rows = []
    for p in points:
        cache = {}
        rows.append(tuple(_monomial_value(p, a, cache) for a in exponents))
    return PointMatrix(tuple(points), exponents, tuple(rows))


# ---------------------------------------------------------------------------
# fraction-free elimination


def _bareiss(rows, ncols):
    """Fraction-free row echelon form.

    Returns ``(pivot_cols, pivot_rows, last_pivot, sign)`` where
    ``pivot_rows`` are indices into the original row list and
    ``last_pivot`` is the final Bareiss pivot (the determinant up to
    ``sign`` when the matrix is square and nonsingular).
    """
    A = [list(r) for r in rows]
    order = list(range(len(A)))
    prev = LaurentPoly.constant(1)
    sign = 1
    pivot_cols = []
    k = 0
    for col in range(ncols):
        if k == len(A):
            break
        piv = next((i for i in range(k, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            order[k], order[piv] = order[piv], order[k]
            sign = -sign
        pk = A[k][col]
        for i in range(k + 1, len(A)):
            a_ic = A[i][col]
            for j in range(col + 1, ncols):
                v = pk * A[i][j] - a_ic * A[k][j]
                A[i][j] = v.exact_div(prev) if v else v
            A[i][col] = LaurentPoly()
        prev = pk
        pivot_cols.append(col)
        k += 1
    return pivot_cols, order[: len(pivot_cols)], prev, sign


def determinant(rows):
    """Exact determinant of a square matrix over k[t]."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"matrix is {n}x{len(rows[0]) if rows else 0}")
    if n == 0:
        return LaurentPoly.constant(1)
    rows = [[_lp(x) for x in r] for r in rows]
    cols, _, last, sign = _bareiss(rows, n)
    if len(cols) < n:
        return LaurentPoly()
    return last if sign > 0 else -last


def matrix_rank(rows, ncols=None):
    rows = [[_lp(x) for x in r] for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    return len(_bareiss(rows, ncols)[0])


@dataclass
class DetReport:
    det: LaurentPoly
    ord: object
    deg: object
    V: int
    lower_bound_ok: bool = None
    upper_bound: int = None

    def to_dict(self):
        return {
            "det": str(self.det),
            "ord": "inf" if self.ord == ORD_INF else self.ord,
            "deg": "-inf" if self.deg == -ORD_INF else self.deg,
            "V": self.V,
            "lower_bound_ok": self.lower_bound_ok,
            "upper_bound": self.upper_bound,
        }


def det_fraction_free(M, rho=None, e=None, s=None):
    """Determinant of a square PointMatrix with its t-adic order and degree.

    With ``rho`` and ``e`` the report records whether ``ord >= rho*e``;
    with ``s`` it records the degree ceiling ``(s-1) * V`` where V is the
    total degree of the exponent set.
    """
    nr, nc = M.shape
    if nr != nc:
        raise NotSquare(f"{nr} points against {nc} exponents")
    det = determinant(M.rows())
    V = sum(sum(a) for a in M.exponents)
    rep = DetReport(
        det=det,
        ord=det.ord() if det else ORD_INF,
        deg=det.degree() if det else -ORD_INF,
        V=V,
    )
    if rho is not None and e is not None:
        rep.lower_bound_ok = rep.ord >= rho * e
    if s is not None:
        rep.upper_bound = (s - 1) * V
    return rep


def degree_budget(points, exponents):
    """Ceiling on deg_t of the determinant: sum over exponents of sum_i j_i * max deg of coordinate i."""
    points = [tuple(_lp(c) for c in p) for p in points]
    m = len(points[0])
    top = [max((p[i].degree() if p[i] else 0) for p in points) for i in range(m)]
    return sum(sum(j * d for j, d in zip(a, top)) for a in exponents)


@dataclass(frozen=True)
class BoundsVerdict:
    verdict: str  # "forced_zero", "consistent" or "violation"
    rho_e: int
    degree_budget: int
    lower_bound_ok: bool
    upper_bound_ok: bool
    reason: str = ""

    def to_dict(self):
        return dict(self.__dict__)


def certify_bounds(report, rho, e, s=None, degree_budget=None):
    """Compare ord_t(det) >= rho*e against deg_t(det) <= degree_budget.

    When ``rho*e`` exceeds the budget a nonzero determinant is impossible,
    so the verdict is ``forced_zero`` exactly when the determinant is 0 (a
    nonzero one is a ``violation``).  Without an explicit budget,
    ``(s-1) * V`` is used.
    """
    if degree_budget is None:
        if s is None:
            raise ValueError("need s or an explicit degree_budget")
        degree_budget = (s - 1) * report.V
    target = rho * e
    low_ok = report.ord >= target
    up_ok = report.deg <= degree_budget
    if target > degree_budget:
        if not report.det:
            return BoundsVerdict("forced_zero", target, degree_budget, True, True,
                                 "rho*e exceeds the degree budget and det = 0")
        return BoundsVerdict("violation", target, degree_budget, low_ok, up_ok,
                             "rho*e exceeds the degree budget but det != 0")
    if low_ok and up_ok:
        return BoundsVerdict("consistent", target, degree_budget, True, True)
    why = []
    if not low_ok:
        why.append(f"ord {report.ord} < rho*e = {target}")
    if not up_ok:
        why.append(f"deg {report.deg} > budget {degree_budget}")
    return BoundsVerdict("violation", target, degree_budget, low_ok, up_ok, "; ".join(why))


# ---------------------------------------------------------------------------
# kernels and hypersurfaces


@dataclass(frozen=True)
class Hypersurface:
    """``sum_j coeffs[j] * X^exponents[j] = 0`` with coefficients in k[t]."""

    exponents: ExponentSet
    coeffs: tuple

    @property
    def degree(self):
        return max(sum(a) for a, c in zip(self.exponents, self.coeffs) if c)

    def support(self):
        return [a for a, c in zip(self.exponents, self.coeffs) if c]

    def evaluate(self, point):
        if len(point) != self.exponents.m:
            raise ArityMismatch(f"point of arity {len(point)} vs {self.exponents.m}")
        point = tuple(_lp(c) for c in point)
        cache = {}
        acc = LaurentPoly()
        for a, c in zip(self.exponents, self.coeffs):
            if c:
                acc = acc + c * _monomial_value(point, a, cache)
        return acc

    def constant_coefficients(self):
        """The equation as a MultiPoly when every coefficient is a constant."""
        if not all(c.is_constant() for c in self.coeffs):
            return None
        return MultiPoly(self.exponents.m, {a: c.coeff(0) for a, c in zip(self.exponents, self.coeffs) if c})

    def to_dict(self):
        return {
            "exponents": [list(a) for a in self.exponents],
            "coeffs": [str(c) for c in self.coeffs],
            "degree": self.degree,
        }


def kernel_vector(rows, ncols):
    """A nonzero k[t]-vector v with rows . v = 0, or None when the columns are independent."""
    rows = [[_lp(x) for x in r] for r in rows]
    if not rows:
        v = [LaurentPoly()] * ncols
        v[0] = LaurentPoly.constant(1)
        return v
    cols, prow, _, _ = _bareiss(rows, ncols)
    if len(cols) == ncols:
        return None
    free = next(j for j in range(ncols) if j not in cols)
    sub = [rows[i] for i in prow]
    v = [LaurentPoly()] * ncols
    v[free] = determinant([[r[c] for c in cols] for r in sub])
    for k, pc in enumerate(cols):
        minor = [[r[free] if c == pc else r[c] for c in cols] for r in sub]
        v[pc] = -determinant(minor)
    return v


def _normalise(v):
    g = poly_content([c for c in v if c])
    v = [c.exact_div(g) if c else c for c in v]
    lead = next(c for c in v if c)
    lc = lead.coeff(lead.ord())
    return [c.scale(1 / lc) for c in v]


def kernel_hypersurface(M):
    """Content-free kernel element of the point matrix, as a hypersurface.

    Normalised so that the first nonzero coefficient has lowest t-term
    with coefficient 1.  Raises FullRank when the columns are independent.
    """
    nr, nc = M.shape
    v = kernel_vector(M.rows(), nc)
    if v is None:
        raise FullRank(f"rank {nc}: no hypersurface through these points with these monomials")
    return Hypersurface(M.exponents, tuple(_normalise(v)))


def verify_vanishing(H, points):
    return all(not H.evaluate(p) for p in points)


def has_kernel(M):
    return matrix_rank(M.rows(), M.shape[1]) < M.shape[1]


def bezout_bound(d1, d2):
    if d1 < 1 or d2 < 1:
        raise ValueError("degrees must be >= 1")
    return d1 * d2


def resultant_y(F, G):
    """Res_y(F, G) for F, G in Q[x, y], returned as a polynomial in x (written in t)."""
    def ycoeffs(P):
        n = P.degree_in(1)
        out = [LaurentPoly() for _ in range(n + 1)]
        for (a, b), c in P.terms.items():
            out[b] = out[b] + LaurentPoly.monomial(a, c)
        return out[::-1]

    f, g = ycoeffs(F), ycoeffs(G)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return LaurentPoly()
    size = m + n
    if size == 0:
        return LaurentPoly.constant(1)
    rows = []
    for i in range(n):
        rows.append([LaurentPoly()] * i + f + [LaurentPoly()] * (size - m - 1 - i))
    for i in range(m):
        rows.append([LaurentPoly()] * i + g + [LaurentPoly()] * (size - n - 1 - i))
    return determinant(rows)


def standard_exponents(F, delta):
    """Exponents (in x, y) of the degree-delta standard monomials of the homogenised curve."""
    gb = buchberger(IdealBasis.of([homogenize(F)]))
    mons = standard_monomials(gb, delta)
    return ExponentSet.from_iterable(F.arity, [a[1:] for a in mons])


# ---------------------------------------------------------------------------
# maps with Taylor data


class PolyMap:
    """x -> sum_k c_k x^k with coefficients c_k in k[t]."""

    def __init__(self, coeffs):
        coeffs = [_lp(c) for c in coeffs]
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = coeffs or [LaurentPoly()]

    def __repr__(self):
        return "PolyMap(" + ", ".join(str(c) for c in self.coeffs) + ")"

    def value(self, x):
        acc = LaurentPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = value

    def taylor(self, y, r):
        """[psi^(k)(y) / k! for k < r], exact."""
        out = []
        for k in range(r):
            acc = LaurentPoly()
            for i in range(len(self.coeffs) - 1, k - 1, -1):
                acc = acc * y + self.coeffs[i] * comb(i, k)
            out.append(acc)
        return out


class ExpMap:
    """exp on t*k[[t]], values known modulo t^prec."""

    def __init__(self, prec):
        self.prec = prec

    def __repr__(self):
        return f"ExpMap(prec={self.prec})"

    def _check(self, x):
        lp = x.to_poly() if isinstance(x, TruncSeries) else _lp(x)
        if lp and lp.ord() < 1:
            raise DomainError("exp is evaluated on t*k[[t]] only")

    def value(self, x):
        self._check(x)
        return exp_series(x, self.prec)

    __call__ = value

    def taylor(self, y, r):
        E = self.value(y)
        out, fact = [], 1
        for k in range(r):
            if k:
                fact *= k
            out.append(E * Fraction(1, fact))
        return out


def _hpoly_mul(a, b, r):
    out = [0] * r
    for i, x in enumerate(a):
        if i >= r:
            break
        for j, y in enumerate(b):
            if i + j >= r:
                break
            out[i + j] = out[i + j] + x * y
    return out


class ComposedMap:
    """outer(inner(y)); Taylor data through substitution of truncated expansions."""

    def __init__(self, outer, inner):
        self.outer, self.inner = outer, inner

    def __repr__(self):
        return f"ComposedMap({self.outer!r}, {self.inner!r})"

    def value(self, y):
        return self.outer.value(self.inner.value(y))

    __call__ = value

    def taylor(self, y, r):
        inner = self.inner.taylor(y, r)
        outer = self.outer.taylor(inner[0], r)
        incr = [0] + list(inner[1:])  # inner(y + h) - inner(y) as a series in h
        out = [0] * r
        power = [1] + [0] * (r - 1)
        for k in range(r):
            out = [o + outer[k] * p for o, p in zip(out, power)]
            power = _hpoly_mul(power, incr, r)
        return out


def compose(outer, inner):
    if isinstance(outer, PolyMap) and isinstance(inner, PolyMap):
        acc = [LaurentPoly()]
        for c in reversed(outer.coeffs):
            prod = [LaurentPoly()] * (len(acc) + len(inner.coeffs) - 1)
            for i, a in enumerate(acc):
                for j, b in enumerate(inner.coeffs):
                    prod[i + j] = prod[i + j] + a * b
            prod[0] = prod[0] + c
            acc = prod
        return PolyMap(acc)
    return ComposedMap(outer, inner)


def power_substitution(a, j, c, b, r):
    """y -> a t^j (y - c)^r + b as a PolyMap."""
    a = to_scalar(a)
    if not a:
        raise ZeroScale("a must be a unit")
    if j < 0 or r < 1:
        raise ValueError("need j >= 0 and r >= 1")
    c, b = _lp(c), _lp(b)
    lead = T ** j * a
    coeffs = [lead * comb(r, k) * (-c) ** (r - k) for k in range(r + 1)]
    coeffs[0] = coeffs[0] + b
    return PolyMap(coeffs)


def _ord_of(v):
    """(order, exact) for a LaurentPoly or TruncSeries difference."""
    if isinstance(v, TruncSeries):
        if v.is_zero_to_precision():
            return v.prec, False
        return v.ord(), True
    v = _lp(v)
    return (v.ord(), True) if v else (ORD_INF, True)


@dataclass
class TrCheckReport:
    r: int
    samples: list
    margins: list = field(default_factory=list)
    worst_margin: object = ORD_INF
    passed: bool = True

    @property
    def pass_(self):
        return self.passed

    def to_dict(self):
        return {
            "r": self.r,
            "samples": [[str(x), str(y)] for x, y in self.samples],
            "margins": ["inf" if m == ORD_INF else m for m in self.margins],
            "worst_margin": "inf" if self.worst_margin == ORD_INF else self.worst_margin,
            "pass": self.passed,
        }


def tr_check(psi, pairs, r, taylor_order=None):
    """Margins ord(psi(x) - T_y(x)) - r * ord(x - y) over sample pairs.

    ``taylor_order`` truncates the Taylor polynomial to fewer than r terms
    (a deliberately weakened approximation).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if not hasattr(psi, "taylor") or not hasattr(psi, "value"):
        raise UnsupportedMap("psi must provide value() and taylor()")
    n_terms = r if taylor_order is None else min(r, taylor_order + 1)
    rep = TrCheckReport(r=r, samples=[(x, y) for x, y in pairs])
    for x, y in pairs:
        x, y = _lp(x) if not isinstance(x, TruncSeries) else x, _lp(y) if not isinstance(y, TruncSeries) else y
        h = x - y
        oh = _ord_of(h)[0]
        if oh == ORD_INF:
            rep.margins.append(ORD_INF)
            continue
        coeffs = psi.taylor(y, n_terms)
        approx = 0
        hp = 1
        for ck in coeffs:
            approx = approx + ck * hp
            hp = hp * h
        diff = psi.value(x) - approx
        o, exact = _ord_of(diff)
        margin = o - r * oh
        if not exact and margin < 0:
            raise InsufficientPrecision(
                f"difference vanishes to precision {o}; need more than {r * oh} to decide"
            )
        rep.margins.append(margin)
    rep.worst_margin = min(rep.margins, default=ORD_INF)
    rep.passed = rep.worst_margin >= 0
    return rep


# ---------------------------------------------------------------------------
# sampling points in one fibre


DEFAULT_COEFF_SET = tuple(Fraction(v) for v in ("-2", "-1", "-1/2", "1/3", "1/2", "1", "2", "3"))


def graph_function(curve, exp_terms=6):
    """PolyMap g with the curve equal to the graph y = g(x).

    Algebraic curves must have the form ``c*y - h(x)`` with c constant;
    the exponential graph uses its truncation sum_{i<exp_terms} x^i/i!.
    """
    if curve.kind == "series_graph":
        fact, coeffs = 1, []
        for i in range(exp_terms):
            if i:
                fact *= i
            coeffs.append(Fraction(1, fact))
        return PolyMap(coeffs)
    if curve.kind != "algebraic":
        raise UnsupportedMap("only graphs y = g(x) are sampled")
    F = curve.poly
    ylin = [(e, c) for e, c in F.terms.items() if e[1]]
    if len(ylin) != 1 or ylin[0][0] != (0, 1):
        raise UnsupportedMap("curve is not a graph y = g(x)")
    c = ylin[0][1]
    coeffs = [Fraction(0)] * (F.degree_in(0) + 1)
    for (a, b), v in F.terms.items():
        if not b:
            coeffs[a] -= v / c
    return PolyMap(coeffs)


def sample_fiber(g, count, rho, rng, coeff_set=DEFAULT_COEFF_SET, u_degree=0, center=None):
    """``count`` points (x, g(x)) with x = a + t^rho u, all sharing a = x mod t^rho.

    ``a`` has zero constant term (so the points lie in t*k[t], the domain
    of exp) and degree < rho; each u has degree <= u_degree.  The fibre
    condition holds by construction.
    """
    if center is None:
        center = LaurentPoly.from_coeffs([0] + [rng.choice(coeff_set) for _ in range(1, rho)])
    pts = []
    for _ in range(count):
        u = LaurentPoly.from_coeffs([rng.choice(coeff_set) for _ in range(u_degree + 1)])
        x = center + u.shift(rho)
        pts.append((x, g.value(x)))
    return center, pts


def seeded_rng(seed):
    return random.Random(seed)
