"""Integer partitions, box contents, and the stationary weight sum.

A partition is a weakly decreasing tuple of positive integers.  The weight sum
attached to a partition rho and a nonzero integer m is the finite Laurent
polynomial

    sum_i ( y^(m*(rho_i - i + 1/2)) - y^(m*(1/2 - i)) )

over the nonzero rows; rows beyond the length of rho cancel exactly, so the
closed finite sum equals the stabilized infinite one.
"""

from __future__ import annotations

from functools import lru_cache

from .exactalg import GR_ONE, GaussRat, HalfLaurent

Partition = tuple[int, ...]


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in lexicographically decreasing order."""
    if n < 0:
        raise ValueError("partitions_of needs n >= 0")
    if n == 0:
        return ((),)
    out: list[Partition] = []

    def rec(remaining: int, maxpart: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for p in range(min(maxpart, remaining), 0, -1):
            rec(remaining - p, p, prefix + (p,))

    rec(n, n, ())
    return tuple(out)


def conjugate(rho: Partition) -> Partition:
    if not rho:
        return ()
    return tuple(sum(1 for p in rho if p > i) for i in range(rho[0]))


def content_sum(rho: Partition) -> int:
    """Sum of j - i over boxes (i, j) of the diagram, 1-based positions."""
    # Row i contributes sum_{j=1..rho_i} (j - i).
    return sum(p * (p + 1) // 2 - i * p for i, p in enumerate(rho, start=1))


def contents(rho: Partition) -> list[int]:
    return [j - i for i, p in enumerate(rho, start=1) for j in range(1, p + 1)]


def stationary_weight(rho: Partition, m: int) -> HalfLaurent:
    """The stabilized row sum evaluated at argument m; zero for the empty rho."""
    if m == 0:
        raise ValueError("stationary_weight needs m != 0")
    coeffs: dict[int, GaussRat] = {}

    def bump(halfexp: int, delta: int):
        g = coeffs.get(halfexp)
        s = (g + delta) if g is not None else GaussRat(delta)
        if s:
            coeffs[halfexp] = s
        else:
            coeffs.pop(halfexp, None)

    for i, p in enumerate(rho, start=1):
        if p <= 0:
            break
        bump(m * (2 * p - 2 * i + 1), 1)
        bump(m * (1 - 2 * i), -1)
    return HalfLaurent(coeffs)


def box_weight_identity_rhs(rho: Partition, m: int) -> HalfLaurent:
    """Box form of stationary_weight(rho, m) * (y^(m/2) - y^(-m/2)).

    Equals the sum over boxes of y^(m(c+1)) - 2 y^(mc) + y^(m(c-1)), where c
    is the box content.  Used as an independent oracle in tests and as the
    per-box weight in the functional-equation solver.
    """
    acc = HalfLaurent.zero()
    for c in contents(rho):
        acc = acc + HalfLaurent({2 * m * (c + 1): GR_ONE,
                                 2 * m * c: GaussRat(-2),
                                 2 * m * (c - 1): GR_ONE})
    return acc
