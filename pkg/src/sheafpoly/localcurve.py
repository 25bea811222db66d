"""Twisted local-elliptic-curve generating series.

The disconnected series for degree d_e with marking values m_1, ..., m_n over
a surface with canonical self-intersection k is the exact Laurent polynomial

    sum over partitions rho of d_e of
        (-1)^(k*d_e) * y^(k*c(rho)) * prod_i ( i * m_i * w(rho, m_i) )

where c(rho) is the total box content and w is the stationary weight sum from
the partitions module.  Connected series follow by inclusion-exclusion over
multisets of components, each component carrying positive degree; identical
components (equal degree, no markings) contribute a 1/mult! symmetry factor.
That symmetry convention is pinned by the requirement that reassembling the
disconnected series from connected ones is an exact round trip.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import NotDivisibleError
from .exactalg import GR_I, HalfLaurent, RatFun, sqrt_diff
from .partitions import content_sum, partitions_of, stationary_weight

Markings = tuple[int, ...]


def _canon(markings) -> Markings:
    ms = tuple(sorted(int(m) for m in markings))
    if any(m < 1 for m in ms):
        raise ValueError("marking values must be positive")
    return ms


@lru_cache(maxsize=None)
def disconnected_series(d_e: int, markings: Markings, k: int) -> HalfLaurent:
    """Disconnected degree-d_e series with the given marking multiset."""
    if d_e < 1:
        raise ValueError("disconnected_series needs d_e >= 1")
    ms = _canon(markings)
    sign = -1 if (k * d_e) % 2 else 1
    total = HalfLaurent.zero()
    for rho in partitions_of(d_e):
        term = HalfLaurent.monomial(2 * k * content_sum(rho), sign)
        for m in ms:
            term = term * stationary_weight(rho, m).scale(GR_I * m)
        total = total + term
    return total


def set_partitions(n: int, max_blocks: int | None = None):
    """Set partitions of range(n) as tuples of index tuples; empty for n = 0."""
    if n == 0:
        yield ()
        return

    def rec(i: int, blocks: list[list[int]]):
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        if max_blocks is None or len(blocks) < max_blocks:
            blocks.append([i])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def _degree_vectors(total: int, blocks: int):
    """All ways to give each of `blocks` slots a degree >= 1 summing <= total."""
    if blocks == 0:
        yield (), total
        return

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == blocks:
            yield prefix, remaining
            return
        minimum_rest = blocks - i - 1
        for d in range(1, remaining - minimum_rest + 1):
            yield from rec(i + 1, remaining - d, prefix + (d,))

    yield from rec(0, total, ())


def _structures(d: int, ms: Markings, min_components: int):
    """Component structures of total degree d on the labeled marking slots.

    Yields (components, weight) where components is a tuple of (degree,
    marking multiset) pairs and weight is the rational symmetry factor for
    indistinguishable unmarked components of equal degree.
    """
    n = len(ms)
    for blocks in set_partitions(n, max_blocks=d):
        s = len(blocks)
        for degs, rest in _degree_vectors(d, s):
            marked = tuple((degs[j], _canon(ms[i] for i in blocks[j]))
                           for j in range(s))
            for lam in partitions_of(rest):
                if 0 in lam:
                    continue
                comps = marked + tuple((p, ()) for p in lam)
                if len(comps) < min_components:
                    continue
                w = Fraction(1)
                for p in set(lam):
                    w /= factorial(lam.count(p))
                yield comps, w


@lru_cache(maxsize=None)
def _connected_positive(d_e: int, ms: Markings, k: int) -> HalfLaurent:
    disc = disconnected_series(d_e, ms, k)
    correction = HalfLaurent.zero()
    for comps, w in _structures(d_e, ms, min_components=2):
        prod = HalfLaurent.const(w)
        for deg, sub in comps:
            prod = prod * _connected_positive(deg, sub, k)
        correction = correction + prod
    return disc - correction


def connected_series(d_e: int, markings, k: int) -> RatFun:
    """Connected series; degree zero is the closed single-marking form."""
    ms = _canon(markings)
    if d_e == 0:
        if len(ms) == 0:
            raise ValueError("connected series undefined at degree 0 with no markings")
        if len(ms) > 1:
            return RatFun(HalfLaurent.zero())
        m = ms[0]
        return RatFun(HalfLaurent.const(GR_I * m), sqrt_diff(m))
    return RatFun(_connected_positive(d_e, ms, k))


def assemble_disconnected(d_e: int, markings, k: int) -> HalfLaurent:
    """Rebuild the disconnected series from connected pieces (oracle route)."""
    if d_e < 1:
        raise ValueError("assemble_disconnected needs d_e >= 1")
    ms = _canon(markings)
    total = HalfLaurent.zero()
    for comps, w in _structures(d_e, ms, min_components=1):
        prod = HalfLaurent.const(w)
        for deg, sub in comps:
            prod = prod * _connected_positive(deg, sub, k)
        total = total + prod
    return total


def check_sin_divisibility(d_e: int, markings, k: int) -> bool:
    """Whether the disconnected series lies in the expected principal ideal.

    The ideal is generated by the product over markings of
    (y^(m/2) - y^(-m/2)) / i, with quotient a rational Laurent polynomial in
    integer powers of y.
    """
    ms = _canon(markings)
    q = disconnected_series(d_e, ms, k)
    try:
        for m in ms:
            q = q.exact_div(sqrt_diff(m)).scale(GR_I)
    except NotDivisibleError:
        return False
    return q.is_real() and q.has_integer_exponents()
