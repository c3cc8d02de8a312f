"""The release-gate battery: ten checks, each returning a pass/fail record.

Shared by ``cdimkit verify`` and the test suite so both run the same code.
"""

import functools
import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import oracles
from .curves import (
    CurveSpec,
    adversarial_collapse_check,
    adversarial_eval,
    cdim_combine,
    cdim_witness_check,
    reduction_report,
    transcendence_reduction_step,
    xs_dimension,
)
from .detmethod import (
    build_matrix,
    certify_bounds,
    degree_budget,
    det_fraction_free,
    graph_function,
    kernel_hypersurface,
    sample_fiber,
    verify_vanishing,
)
from .errors import BudgetExceeded
from .groebner import (
    IdealBasis,
    a_estimate,
    buchberger,
    hilbert_fn,
    hilbert_series_principal,
    homogenize,
    standard_monomials,
)
from .monomials import dm_parameters, enumerate_grevlex, first_d_below
from .polys import MultiPoly
from .series import T

RATIO_TARGET = Fraction(1, 10)
# smallest d with V/e < 1/10 for (n, m) = (2, 1)
RECORDED_D = 24


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    skipped: int = 0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(number, name):
    def wrap(fn):
        @functools.wraps(fn)
        def run(**kw):
            t0 = time.perf_counter()
            passed, detail, *rest = fn(**kw)
            res = CriterionResult(number, name, passed, detail, time.perf_counter() - t0)
            if rest:
                res.skipped = rest[0]
            return res

        run.number = number
        run.title = name
        return run

    return wrap


@_timed(1, "parameter formulas")
def criterion_parameters():
    rows = [dm_parameters(2, 1, d) for d in range(1, 31)]
    closed = all(p.e == p.mu * (p.mu - 1) // 2 and p.r == p.mu for p in rows)
    ratios = [p.ratio for p in rows]
    decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
    d_star = first_d_below(2, 1, RATIO_TARGET)
    ok = closed and decreasing and d_star == RECORDED_D
    return ok, f"e = mu(mu-1)/2: {closed}, V/e decreasing: {decreasing}, first d with V/e < 1/10: {d_star}"


def _det_trial(rng, curve_kind, rho, d):
    if curve_kind == "parabola":
        g = graph_function(CurveSpec.algebraic("y - x^2"))
    else:
        g = graph_function(CurveSpec.exp_graph(), exp_terms=rng.choice((4, 5, 6)))
    p = dm_parameters(2, 1, d)
    _, pts = sample_fiber(g, p.mu, rho, rng, u_degree=rng.choice((0, 1)))
    M = build_matrix(pts, enumerate_grevlex(2, d))
    return p, pts, M, det_fraction_free(M, rho, p.e)


@_timed(2, "determinant estimate")
def criterion_determinant(trials=200, seed=2024):
    rng = random.Random(seed)
    bad = 0
    zeros = 0
    for k in range(trials):
        kind = ("parabola", "exp")[k % 2]
        rho = 1 + (k // 2) % 3
        d = 1 + (k // 6) % 2
        _, _, _, rep = _det_trial(rng, kind, rho, d)
        bad += not rep.lower_bound_ok
        zeros += not rep.det
    return bad == 0, f"{trials} trials, ord >= rho*e violated in {bad}, exact zero determinants {zeros}"


@_timed(3, "hypersurface capture")
def criterion_hypersurface(trials=100, seed=7):
    rng = random.Random(seed)
    forced = captured = violations = 0
    for k in range(trials):
        kind = ("parabola", "exp")[k % 2]
        rho = 1 + (k // 2) % 3
        d = (1, 2, 3)[(k // 6) % 3] if kind == "parabola" else (1, 2)[(k // 6) % 2]
        p, pts, M, rep = _det_trial(rng, kind, rho, d)
        verdict = certify_bounds(rep, rho, p.e, degree_budget=degree_budget(pts, M.exponents))
        if verdict.verdict == "violation":
            violations += 1
        if verdict.verdict != "forced_zero":
            continue
        forced += 1
        H = kernel_hypersurface(M)
        if verify_vanishing(H, pts) and H.degree <= d:
            captured += 1
    ok = forced > 0 and captured == forced and violations == 0
    return ok, f"{trials} trials, forced_zero {forced}, captured {captured}, violations {violations}"


def _random_plane_curve(rng, d):
    while True:
        terms = {}
        for a in range(d + 1):
            for b in range(d + 1 - a):
                if rng.random() < 0.6 or a + b == d:
                    c = rng.randint(-3, 3)
                    if c:
                        terms[(a, b)] = c
        F = MultiPoly(2, terms)
        if F.total_degree() == d:
            return F


@_timed(4, "Hilbert identities")
def criterion_hilbert(seed=11, per_degree=3, r_max=12):
    rng = random.Random(seed)
    checks = failures = 0
    for d in (1, 2, 3):
        for _ in range(per_degree):
            gb = buchberger(IdealBasis.of([homogenize(_random_plane_curve(rng, d))]))
            for r in range(0, r_max + 1):
                rec = hilbert_fn(gb, r)
                checks += 1
                ok = rec.identity_holds() and rec.H == hilbert_series_principal(d, r)
                if r >= 1:
                    ok = ok and sum(a_estimate(gb, i, r) for i in range(3)) == 1
                failures += not ok
    return failures == 0, f"{checks} (ideal, r) checks, failures {failures}"


def random_ideal(rng):
    """Random generators for the oracle comparison: (n, gens as dicts, homogeneous?)."""
    homog = rng.random() < 0.7
    n = rng.randint(1, 3) if homog else rng.randint(1, 2)
    gens = []
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(1, 3)
        mons = [a for a in itertools.product(range(deg + 1), repeat=n)
                if (sum(a) == deg if homog else sum(a) <= deg)]
        terms = {}
        for a in rng.sample(mons, min(len(mons), rng.randint(2, 4))):
            terms[a] = Fraction(rng.choice((-3, -2, -1, 1, 2, 3)))
        gens.append(terms)
    return n, gens, homog


@_timed(5, "Groebner oracle equivalence")
def criterion_oracle(ideals=25, seed=5, r_max=6, slack=4):
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(ideals):
        n, gens, homog = random_ideal(rng)
        gb = buchberger(IdealBasis.of([MultiPoly(n, g) for g in gens]))
        for r in range(r_max + 1):
            ours = list(standard_monomials(gb, r, n))
            ref = oracles.macaulay_standard_monomials(gens, n, r, 0 if homog else slack)
            mismatches += ours != ref
    return mismatches == 0, f"{ideals} ideals x degrees 0..{r_max}, mismatches {mismatches}"


@_timed(6, "X_s dimension law")
def criterion_xs_dimension(budget=20_000):
    good = skipped = wrong = 0
    for d in (1, 2, 3):
        curve = CurveSpec.algebraic(f"y - x^{d}")
        for s in range(1, 7):
            try:
                dim = xs_dimension(curve, s, budget=budget)
            except BudgetExceeded:
                skipped += 1
                continue
            if dim == (s - 1) // d + 1:
                good += 1
            else:
                wrong += 1
    return good >= 15 and wrong == 0, f"{good}/18 cells match, {wrong} wrong, {skipped} over budget", skipped


@_timed(7, "optimality example")
def criterion_optimality():
    curve = CurveSpec.algebraic("y - x^2")
    problems = []
    for s in (1, 2, 3):
        sp = 2 * s + 1
        for e in range(1, s + 1):
            rep = cdim_witness_check(curve, sp, None, e)
            if not rep.infinite:
                problems.append(f"s'={sp}, e={e} not infinite")
        e = -(-sp // 2)
        rep = cdim_witness_check(curve, sp, None, e)
        if rep.infinite or rep.max_finite_fiber != 1:
            problems.append(f"s'={sp}, e={e} gave {rep.status}/{rep.max_finite_fiber}")
    return not problems, "; ".join(problems) or "infinite fibre for e <= s, fibres of size 1 at e = s+1"


@_timed(8, "adversarial collapse")
def criterion_adversarial():
    curve = CurveSpec.adversarial((1, 7), (2, 3), 2)
    P = curve.params
    integral = True
    for n, (N, F) in enumerate(zip(P.N_seq, P.F_vals)):
        for i in range(1, N + 1):
            for ell in range(1, N + 1):
                for j in range(1, F + 1):
                    v = adversarial_eval(P, i + T.shift(ell - 1).scale(j))
                    integral = integral and v.is_polynomial()
    reports = [adversarial_collapse_check(P, 1, None, e) for e in range(1, 8)]
    s = reports[0].s
    ok = (
        integral
        and all(r.fiber_size == P.F_vals[1] and r.in_Cs and r.collapsed for r in reports)
        and reports[0].max_degree <= reports[0].degree_bound_coarse
    )
    return ok, f"values in Q[t]: {integral}, |S| = {reports[0].fiber_size}, s = {s}, collapse for e = 1..7: {all(r.collapsed for r in reports)}"


@_timed(9, "transcendence reduction")
def criterion_transcendence():
    f = MultiPoly.parse("y - x", ("x", "y"))
    g = transcendence_reduction_step(f)
    rep = reduction_report(f, order=8)
    ok = g == MultiPoly.parse("x - 1", ("x", "y")) and rep.identity_holds
    return ok, f"g = {rep.g}, identity to order 8: {rep.identity_holds}"


# toy instances over F_5: curves as {exponent: int}, maps as lists of components
_F5_CURVES = {
    "y=x^2": {(0, 1): 1, (2, 0): -1},
    "xy=0": {(1, 1): 1},
    "y=x^3+x": {(0, 1): 1, (3, 0): -1, (1, 0): -1},
    "x^2+y^2=1": {(2, 0): 1, (0, 2): 1, (0, 0): -1},
}
_PROJ_X = [{(1, 0): 1}]
_SUM = [{(1, 0): 1, (0, 1): 1}]


def brute_combinator_checks(p=5, s=2):
    """Compare cdim_combine bounds with exhaustive fibre counts; returns failure messages."""
    failures = []
    pts = {k: oracles.fp_curve_points(F, s, p) for k, F in _F5_CURVES.items()}
    names = sorted(pts)
    maps = {"x": _PROJ_X, "x+y": _SUM}
    for a, b in itertools.combinations(names, 2):
        for mname, comps in maps.items():
            for e1, e2 in ((1, 1), (1, 2), (2, 1)):
                N1 = oracles.fp_max_fiber(pts[a], comps, e1, p)
                N2 = oracles.fp_max_fiber(pts[b], comps, e2, p)
                N, d, e = cdim_combine((N1, 1, e1), (N2, 1, e2), "union")
                union = list(set(pts[a]) | set(pts[b]))
                got = oracles.fp_max_fiber(union, comps, e, p)
                if got > N:
                    failures.append(f"union {a},{b},{mname},{e1},{e2}: {got} > {N}")
        e1, e2 = 1, 2
        N1 = oracles.fp_max_fiber(pts[a], _PROJ_X, e1, p)
        N2 = oracles.fp_max_fiber(pts[b], _PROJ_X, e2, p)
        N, d, e = cdim_combine((N1, 1, e1), (N2, 1, e2), "product")
        prod = [u + v for u in pts[a] for v in pts[b]]
        comps = [{(1, 0, 0, 0): 1}, {(0, 0, 1, 0): 1}]
        got = oracles.fp_max_fiber(prod, comps, e, p)
        if d != 2 or got > N:
            failures.append(f"product {a},{b}: {got} > {N}")
    # pullback along g(u, v) = (u, v^2) from the curves onto their images
    g = [{(1, 0): 1}, {(0, 2): 1}]
    for a in names:
        for e1 in (1, 2):
            Npp = oracles.fp_max_preimage(pts[a], g, p)
            images = list({tuple(oracles.fp_eval(c, pt, p) for c in g) for pt in pts[a]})
            N1 = oracles.fp_max_fiber(images, _SUM, e1, p)
            N, d, e = cdim_combine((N1, 1, e1), None, "pullback", Npp)
            fib = {}
            for pt in pts[a]:
                img = tuple(oracles.fp_eval(c, pt, p) for c in g)
                key = tuple(oracles.fp_residue(oracles.fp_eval(c, img, p), e) for c in _SUM)
                fib[key] = fib.get(key, 0) + 1
            got = max(fib.values())
            if got > N:
                failures.append(f"pullback {a}, e={e1}: {got} > {N}")
    return failures


@_timed(10, "combinators")
def criterion_combinators():
    table = [
        (((1, 1, 1), (1, 1, 1), "union", None), (2, 1, 1)),
        (((2, 1, 3), (3, 2, 1), "product", None), (6, 3, 3)),
        (((2, 1, 5), None, "pullback", 4), (8, 1, 5)),
    ]
    tab_ok = all(cdim_combine(*args) == want for args, want in table)
    failures = brute_combinator_checks()
    return tab_ok and not failures, f"tabulated rules: {tab_ok}, brute-force F_5 violations: {len(failures)}"


CRITERIA = [
    criterion_parameters,
    criterion_determinant,
    criterion_hypersurface,
    criterion_hilbert,
    criterion_oracle,
    criterion_xs_dimension,
    criterion_optimality,
    criterion_adversarial,
    criterion_transcendence,
    criterion_combinators,
]


def run_all(strict=False, stream=None):
    results = []
    for crit in CRITERIA:
        res = crit()
        results.append(res)
        if stream is not None:
            print(res.line(), file=stream, flush=True)
        if strict and not res.passed:
            break
    return results


__all__ = ["CRITERIA", "CriterionResult", "run_all", "brute_combinator_checks", "RECORDED_D"]
