"""Fixed-point solver for the packaged local-curve series over the plane.

The packaged series G(e, ms) collects, for a total circle degree e >= 1 and a
multiset ms of plane degrees of square markings, all rooted trees with those
labels.  It is characterized by a functional equation in auxiliary variables:
a formal variable q grades by total plane degree (a circle of degree e weighs
q^(3e), a marking of plane degree m weighs q^m p_m), and

    1 + sum over nonempty partitions rho of
        (-1)^(#rho) q^(3 #rho) y^(9 c(rho)) exp( B_rho(X) )
    = exp(X_H),

where X_H has coefficient -G(e, ms)/prod(mult!) on q^(3e+sum ms) p_ms,
X = X_H - sum_m q^m p_m, and B_rho multiplies the coefficient of any monomial
of q-degree a by  sum over boxes of content c of
(2 y^(3ca) - y^(3(c+1)a) - y^(3(c-1)a)).

Grading by q-degree makes the unknown G at degree a appear linearly on the
right and only lower-degree data on the left, so the solve is a single sweep.
All arithmetic is exact; after the sweep the defining equation is rechecked
identically (zero residual, not small residual).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import NonPolynomialContributionError
from .exactalg import GR_ONE, HalfLaurent, RatFun
from .gvdata import GVTable, local_series
from .partitions import content_sum, contents, partitions_of

SURFACE_K2 = 9          # canonical self-intersection of the plane
CURVE_WEIGHT = 3        # q-degree of one circle unit

GKey = tuple[int, tuple[int, ...]]


def _mult_factor(ms: tuple[int, ...]) -> int:
    f = 1
    for m in set(ms):
        f *= factorial(ms.count(m))
    return f


class FormalSeries:
    """Truncated series with keys (q-degree, marking multiset) and Laurent coefficients."""

    __slots__ = ("bound", "c")

    def __init__(self, bound: int, coeffs: dict | None = None):
        self.bound = bound
        self.c: dict[GKey, HalfLaurent] = {}
        if coeffs:
            for (a, ms), v in coeffs.items():
                if a <= bound and not v.is_zero():
                    self.c[(a, tuple(ms))] = v

    def copy(self) -> "FormalSeries":
        s = FormalSeries(self.bound)
        s.c = dict(self.c)
        return s

    def truncate(self, bound: int) -> "FormalSeries":
        return FormalSeries(min(bound, self.bound),
                            {k: v for k, v in self.c.items() if k[0] <= bound})

    def get(self, a: int, ms: tuple[int, ...]) -> HalfLaurent:
        return self.c.get((a, tuple(ms)), HalfLaurent.zero())

    def set(self, a: int, ms: tuple[int, ...], v: HalfLaurent):
        key = (a, tuple(ms))
        if v.is_zero():
            self.c.pop(key, None)
        else:
            self.c[key] = v

    def add(self, other: "FormalSeries") -> "FormalSeries":
        bound = min(self.bound, other.bound)
        out = FormalSeries(bound, {k: v for k, v in self.c.items() if k[0] <= bound})
        for k, v in other.c.items():
            if k[0] > bound:
                continue
            w = out.c.get(k, HalfLaurent.zero()) + v
            if w.is_zero():
                out.c.pop(k, None)
            else:
                out.c[k] = w
        return out

    def sub(self, other: "FormalSeries") -> "FormalSeries":
        return self.add(other.neg())

    def neg(self) -> "FormalSeries":
        return FormalSeries(self.bound, {k: -v for k, v in self.c.items()})

    def mul(self, other: "FormalSeries") -> "FormalSeries":
        bound = min(self.bound, other.bound)
        out: dict[GKey, HalfLaurent] = {}
        for (a1, ms1), v1 in self.c.items():
            if a1 > bound:
                continue
            for (a2, ms2), v2 in other.c.items():
                a = a1 + a2
                if a > bound:
                    continue
                key = (a, tuple(sorted(ms1 + ms2)))
                w = out.get(key, HalfLaurent.zero()) + v1 * v2
                if w.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = w
        res = FormalSeries(bound)
        res.c = out
        return res

    def exp(self) -> "FormalSeries":
        """exp of a series with positive minimal q-degree."""
        if any(a == 0 for (a, _ms) in self.c):
            raise ValueError("exp needs positive valuation")
        out = FormalSeries(self.bound, {(0, ()): HalfLaurent.one()})
        power = FormalSeries(self.bound, {(0, ()): HalfLaurent.one()})
        nfact = 1
        for n in range(1, self.bound + 1):
            power = power.mul(self)
            if not power.c:
                break
            nfact *= n
            scaled = FormalSeries(self.bound,
                                  {k: v.scale(Fraction(1, nfact)) for k, v in power.c.items()})
            out = out.add(scaled)
        return out

    def weight_by_degree(self, weight) -> "FormalSeries":
        """Multiply the coefficient at q-degree a by weight(a)."""
        out = FormalSeries(self.bound)
        for (a, ms), v in self.c.items():
            w = v * weight(a)
            if not w.is_zero():
                out.c[(a, ms)] = w
        return out

    def shift_q(self, delta: int) -> "FormalSeries":
        out = FormalSeries(self.bound)
        for (a, ms), v in self.c.items():
            if a + delta <= self.bound:
                out.c[(a + delta, ms)] = v
        return out

    def scale_coeff(self, h: HalfLaurent) -> "FormalSeries":
        out = FormalSeries(self.bound)
        for k, v in self.c.items():
            w = v * h
            if not w.is_zero():
                out.c[k] = w
        return out


def _box_weight(rho, a: int) -> HalfLaurent:
    """Per-degree multiplier collected over all boxes of the diagram."""
    h = HalfLaurent.zero()
    for c in contents(rho):
        h = h + HalfLaurent({6 * c * a: 2, 6 * (c + 1) * a: -1, 6 * (c - 1) * a: -1})
    return h


def _marking_log(bound: int) -> FormalSeries:
    """log of the pure marking factor: sum_m q^m p_m."""
    return FormalSeries(bound, {(m, (m,)): HalfLaurent.one()
                                for m in range(1, bound + 1)})


def _lhs(x_i: FormalSeries) -> FormalSeries:
    """Left side of the defining equation, from the log of the inner series."""
    bound = x_i.bound
    total = FormalSeries(bound, {(0, ()): HalfLaurent.one()})
    for size in range(1, bound // CURVE_WEIGHT + 1):
        for rho in partitions_of(size):
            weighted = x_i.weight_by_degree(lambda a, r=rho: _box_weight(r, a))
            block = weighted.exp().shift_q(CURVE_WEIGHT * size)
            sign = -1 if size % 2 else 1
            front = HalfLaurent.monomial(2 * SURFACE_K2 * content_sum(rho), sign)
            total = total.add(block.scale_coeff(front))
    return total


@lru_cache(maxsize=None)
def solve_packaged(dmax: int) -> dict[GKey, HalfLaurent]:
    """All packaged series G(e, ms) with 3e + sum(ms) <= dmax."""
    if dmax < 1:
        raise ValueError("solve_packaged needs dmax >= 1")
    x_h = FormalSeries(dmax)
    x_l = _marking_log(dmax)
    solved: dict[GKey, HalfLaurent] = {}
    for a in range(1, dmax + 1):
        known = x_h.truncate(a).exp()
        lhs = _lhs(x_h.truncate(a).sub(x_l.truncate(a)))
        for key in _keys_at_degree(a):
            e = (a - sum(key[1])) // CURVE_WEIGHT
            coeff = lhs.get(a, key[1]) - known.get(a, key[1])
            x_h.set(a, key[1], coeff)
            solved[(e, key[1])] = coeff.scale(-_mult_factor(key[1]))
    return solved


def _keys_at_degree(a: int):
    keys = []
    for e in range(1, a // CURVE_WEIGHT + 1):
        rest = a - CURVE_WEIGHT * e
        for ms in partitions_of(rest):
            keys.append((a, tuple(sorted(ms))))
    return keys


def residual_is_zero(dmax: int) -> bool:
    """Recheck the defining equation identically with the solved values."""
    solved = solve_packaged(dmax)
    x_h = FormalSeries(dmax)
    for (e, ms), g in solved.items():
        a = CURVE_WEIGHT * e + sum(ms)
        x_h.set(a, ms, g.scale(Fraction(-1, _mult_factor(ms))))
    lhs = _lhs(x_h.sub(_marking_log(dmax)))
    rhs = x_h.exp()
    return lhs.sub(rhs).c == {}


def degree_bound_ok(e: int, ms, value: HalfLaurent) -> bool:
    """Two-sided y-degree bound for a packaged series with e >= 2."""
    if e < 2:
        raise ValueError("degree bound applies to circle degree >= 2")
    if value.is_zero():
        return True
    half_bound = SURFACE_K2 * (e - 1) * (e - 2) + 2 * CURVE_WEIGHT * (e - 1) * sum(ms)
    return -half_bound <= value.min_halfexp() and value.max_halfexp() <= half_bound


def functional_sum(d: int, gv: GVTable, gmap: dict[GKey, HalfLaurent] | None = None) -> HalfLaurent:
    """Assembled right side at plane degree d from packaged series and local series."""
    if gmap is None:
        gmap = solve_packaged(d)
    acc = RatFun(HalfLaurent.zero())
    for (e, ms), g in gmap.items():
        if CURVE_WEIGHT * e + sum(ms) != d:
            continue
        term = RatFun(g.scale(Fraction(1, _mult_factor(ms))))
        for m in ms:
            term = term * local_series(m, gv)
        acc = acc + term
    if not acc.is_laurent():
        raise NonPolynomialContributionError(f"functional sum at degree {d} kept a pole")
    out = acc.num
    if not (out.is_real() and out.has_integer_exponents()):
        raise NonPolynomialContributionError(f"functional sum at degree {d} is not rational Laurent")
    return out
