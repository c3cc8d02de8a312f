"""Monomial exponent sets, the grevlex order, and determinant-method parameters."""

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import comb

from .errors import ArityMismatch, InvalidArity


def _check_arity(m):
    if not isinstance(m, int) or m < 1:
        raise InvalidArity(f"arity must be a positive integer, got {m!r}")


def count_exact(m, k):
    """L_m(k): number of monomials of degree exactly k in m variables."""
    _check_arity(m)
    if k < 0:
        return 0
    return comb(k + m - 1, m - 1)


def count_atmost(m, k):
    """D_m(k): number of monomials of degree at most k; 0 for k < 0."""
    _check_arity(m)
    if k < 0:
        return 0
    return comb(k + m, m)


def grevlex_key(alpha):
    """Sort key realising the order on exponents.

    ``alpha < beta`` iff ``|alpha| < |beta|``, or the degrees agree and at the
    first index where they differ ``alpha`` has the larger entry.
    """
    return (sum(alpha), tuple(-a for a in alpha))


def grevlex_cmp(alpha, beta):
    """Three-way comparison: -1, 0 or 1."""
    if len(alpha) != len(beta):
        raise ArityMismatch(f"{len(alpha)} vs {len(beta)}")
    ka, kb = grevlex_key(alpha), grevlex_key(beta)
    return (ka > kb) - (ka < kb)


def _compositions(m, k):
    """All alpha in N^m with |alpha| = k."""
    if m == 1:
        yield (k,)
        return
    for a in range(k, -1, -1):
        for rest in _compositions(m - 1, k - a):
            yield (a,) + rest


@dataclass(frozen=True)
class ExponentSet:
    """Duplicate-free exponents of a common arity, grevlex-ascending."""

    m: int
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(tuple(a) for a in self.members))
        for a in self.members:
            if len(a) != self.m:
                raise ArityMismatch(f"exponent {a} does not have arity {self.m}")

    @classmethod
    def from_iterable(cls, m, exps):
        return cls(m, tuple(sorted(set(map(tuple, exps)), key=grevlex_key)))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def max_degree(self):
        return max((sum(a) for a in self.members), default=-1)

    def totals(self):
        """Componentwise sums of the members (the sigma vector)."""
        return tuple(sum(a[i] for a in self.members) for i in range(self.m))


def enumerate_grevlex(m, k, mode="atmost"):
    """Lambda_m(k) (``mode="exact"``) or Delta_m(k) (``"atmost"``), sorted."""
    _check_arity(m)
    if k < 0:
        return ExponentSet(m, ())
    if mode == "exact":
        degrees = [k]
    elif mode == "atmost":
        degrees = range(k + 1)
    else:
        raise ValueError(f"mode must be 'exact' or 'atmost', got {mode!r}")
    members = []
    for j in degrees:
        members.extend(sorted(_compositions(m, j), key=grevlex_key))
    return ExponentSet(m, tuple(members))


def sort_grevlex(exps, reverse=False):
    return sorted(exps, key=cmp_to_key(grevlex_cmp), reverse=reverse)


@dataclass(frozen=True)
class DmParameters:
    n: int
    m: int
    d: int
    mu: int
    r: int
    V: int
    e: int

    @property
    def ratio(self):
        return Fraction(self.V, self.e)


def dm_parameters(n, m, d):
    """The integers (mu, r, V, e) attached to (n, m, d) with m < n.

    mu = D_n(d), r is the x with D_m(x-1) <= mu < D_m(x),
    V = sum_{k<=d} k L_n(k) and
    e = sum_{k=1}^{r-1} k L_m(k) + r (mu - D_m(r-1)).
    """
    _check_arity(m)
    _check_arity(n)
    if m >= n:
        raise InvalidArity(f"need m < n, got m={m}, n={n}")
    if d < 1:
        raise ValueError("d must be >= 1")
    mu = count_atmost(n, d)
    r = 0
    while not (count_atmost(m, r - 1) <= mu < count_atmost(m, r)):
        r += 1
    V = sum(k * count_exact(n, k) for k in range(d + 1))
    e = sum(k * count_exact(m, k) for k in range(1, r)) + r * (mu - count_atmost(m, r - 1))
    return DmParameters(n=n, m=m, d=d, mu=mu, r=r, V=V, e=e)


def ve_ratio_table(n, m, d_max):
    """Rows ``(d, V, e, V/e)`` for d = 1..d_max, ratios exact."""
    rows = []
    for d in range(1, d_max + 1):
        p = dm_parameters(n, m, d)
        rows.append((d, p.V, p.e, Fraction(p.V, p.e)))
    return rows


def first_d_below(n, m, eps, d_max=1000):
    """Smallest d with V/e < eps, or None if not reached by d_max."""
    eps = Fraction(eps)
    for d in range(1, d_max + 1):
        if dm_parameters(n, m, d).ratio < eps:
            return d
    return None


def ve_table_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "V", "e", "ratio_num", "ratio_den"])
    for d, V, e, q in rows:
        w.writerow([d, V, e, q.numerator, q.denominator])
    return buf.getvalue()
