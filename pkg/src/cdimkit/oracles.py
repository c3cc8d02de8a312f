"""Independent reference computations used to cross-check the main algorithms.

None of these share code paths with the Groebner or determinant engines:
standard monomials come from plain row reduction of Macaulay matrices,
determinants from cofactor expansion, and fibre counts over F_p from full
enumeration with integer arithmetic mod p.
"""

import itertools
from fractions import Fraction

from .monomials import grevlex_key


# ---------------------------------------------------------------------------
# standard monomials by linear algebra


def _monomials_of_degree(n, k):
    return [a for a in itertools.product(range(k + 1), repeat=n) if sum(a) == k]


def _monomials_upto(n, k):
    return [a for j in range(k + 1) for a in _monomials_of_degree(n, j)]


def _row_echelon_leads(rows, columns):
    """Leading columns after Gaussian elimination (columns given largest first)."""
    index = {c: i for i, c in enumerate(columns)}
    dense = []
    for r in rows:
        v = [Fraction(0)] * len(columns)
        for e, c in r.items():
            v[index[e]] += c
        dense.append(v)
    leads = []
    pivots = {}
    for v in dense:
        for col, pv in pivots.items():
            if v[col]:
                f = v[col] / pv[col]
                v = [a - f * b for a, b in zip(v, pv)]
        lead = next((i for i, a in enumerate(v) if a), None)
        if lead is None:
            continue
        # keep pivots fully reduced against the new row
        for col in list(pivots):
            pv = pivots[col]
            if pv[lead]:
                f = pv[lead] / v[lead]
                pivots[col] = [a - f * b for a, b in zip(pv, v)]
        pivots[lead] = v
        leads.append(columns[lead])
    return set(leads)


def macaulay_standard_monomials(gens, n, r, slack=0):
    """Degree-r standard monomials of the ideal generated by ``gens``.

    ``gens`` are dicts {exponent tuple: Fraction}.  All products m*g with
    total degree <= r + slack span a subspace of I; its grevlex leading
    monomials of degree r approximate LT(I)_r from below and are exact for
    homogeneous generators (slack 0) or for large enough slack.
    """
    top = r + slack
    rows = []
    for g in gens:
        dg = max(sum(e) for e in g)
        for k in range(top - dg + 1):
            for m in _monomials_of_degree(n, k):
                rows.append({tuple(a + b for a, b in zip(e, m)): c for e, c in g.items()})
    columns = sorted(_monomials_upto(n, top), key=grevlex_key, reverse=True)
    leads = _row_echelon_leads(rows, columns)
    return sorted((a for a in _monomials_of_degree(n, r) if a not in leads), key=grevlex_key)


# ---------------------------------------------------------------------------
# determinants


def cofactor_det(rows):
    """Laplace expansion along the first row; works for any commutative ring values."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    acc = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


# ---------------------------------------------------------------------------
# polynomials over F_p in t, as coefficient tuples


def fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return fp_trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return fp_trim(out)


def fp_eval(poly, point, p):
    """poly is {exponent tuple: int}; point is a tuple of F_p[t] elements."""
    acc = ()
    for e, c in poly.items():
        term = (c % p,)
        for x, k in zip(point, e):
            for _ in range(k):
                term = fp_mul(term, x, p)
        acc = fp_add(acc, term, p)
    return acc


def fp_elements(s, p):
    """All polynomials of degree < s over F_p."""
    return [fp_trim(c) for c in itertools.product(range(p), repeat=s)]


def fp_curve_points(F, s, p):
    """Pairs (x, y) of height < s with F(x, y) = 0 in F_p[t]."""
    elems = fp_elements(s, p)
    return [(x, y) for x in elems for y in elems if not fp_eval(F, (x, y), p)]


def fp_residue(a, e):
    return tuple(a[i] if i < len(a) else 0 for i in range(e))


def fp_max_fiber(points, components, e, p):
    """Largest fibre of points -> (F_p[t]/t^e)^d for polynomial components {exp: int}."""
    fibres = {}
    for pt in points:
        key = tuple(fp_residue(fp_eval(c, pt, p), e) for c in components)
        fibres[key] = fibres.get(key, 0) + 1
    return max(fibres.values(), default=0)


def fp_max_preimage(points, g, p):
    """Largest fibre of the polynomial map g (tuple of components) on ``points``."""
    fibres = {}
    for pt in points:
        key = tuple(fp_eval(c, pt, p) for c in g)
        fibres[key] = fibres.get(key, 0) + 1
    return max(fibres.values(), default=0)
