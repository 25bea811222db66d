"""Labeled rooted trees over the plane and their exact contributions.

A tree has circle vertices carrying a positive elliptic degree and square
leaves carrying a positive plane-curve degree.  The class of the edge above a
subtree always equals the subtree's total degree, where a circle of degree e
weighs 3e and a square of degree c weighs c.  Trees are generated directly in
canonical form (children sorted by encoding), so isomorphic trees coincide.

The contribution of a tree multiplies, over all edges, the factor
two_sin(3c)/(3c) for edge class c, over all circles the negated connected
local-curve series with marking values 3 * (child edge classes), and over all
squares the local multiple-cover series.  The total clears to an exact Laurent
polynomial; a surviving pole aborts the run since it falsifies the identity
the pipeline rests on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial

from .errors import NonPolynomialContributionError
from .exactalg import HalfLaurent, RatFun, two_sin
from .gvdata import GVTable, local_series
from .localcurve import connected_series

ANTICANONICAL_DEGREE = 3  # a plane curve of degree c meets the cubic in 3c points


@dataclass(frozen=True)
class RootedTree:
    """Canonical labeled rooted tree; kind is "c" (circle) or "s" (square)."""

    kind: str
    deg: int
    children: tuple["RootedTree", ...] = ()
    total: int = field(init=False)

    def __post_init__(self):
        if self.kind == "s":
            if self.children:
                raise ValueError("squares are leaves")
            total = self.deg
        elif self.kind == "c":
            total = ANTICANONICAL_DEGREE * self.deg + sum(c.total for c in self.children)
        else:
            raise ValueError(f"unknown vertex kind {self.kind!r}")
        object.__setattr__(self, "total", total)

    def key(self):
        if self.kind == "s":
            return (0, self.deg)
        return (1, self.deg, tuple(c.key() for c in self.children))

    def circle_count(self) -> int:
        if self.kind == "s":
            return 0
        return 1 + sum(c.circle_count() for c in self.children)

    def square_degrees(self) -> list[int]:
        if self.kind == "s":
            return [self.deg]
        return sorted(d for c in self.children for d in c.square_degrees())

    def to_text(self) -> str:
        """Stable nested-parenthesis dump for golden tests."""
        if self.kind == "s":
            return f"[{self.deg}]"
        inner = " ".join(c.to_text() for c in self.children)
        return f"({self.deg}{' ' + inner if inner else ''})"


def _child_multisets(total: int, options) -> list[tuple[RootedTree, ...]]:
    """All multisets of subtrees with the given total degree.

    ``options[c]`` lists the canonical subtrees of degree c.  Each multiset is
    returned sorted by encoding, so identical results cannot arise twice.
    """
    out: list[tuple[RootedTree, ...]] = []

    def rec(remaining: int, maxdeg: int, chosen: tuple[RootedTree, ...]):
        if remaining == 0:
            out.append(chosen)
            return
        for c in range(min(maxdeg, remaining), 0, -1):
            maxmult = remaining // c
            opts = options(c)
            for mult in range(maxmult, 0, -1):
                for picks in combinations_with_replacement(opts, mult):
                    rec(remaining - c * mult, c - 1, chosen + picks)

    rec(total, total, ())
    return [tuple(sorted(ms, key=lambda t: t.key())) for ms in out]


@lru_cache(maxsize=None)
def _subtrees(degree: int) -> tuple[RootedTree, ...]:
    """Canonical subtrees hanging below an edge of class ``degree``."""
    found = [RootedTree("s", degree)]
    for e in range(1, degree // ANTICANONICAL_DEGREE + 1):
        rest = degree - ANTICANONICAL_DEGREE * e
        for children in _child_multisets(rest, _subtrees):
            found.append(RootedTree("c", e, children))
    return tuple(sorted(found, key=lambda t: t.key()))


@lru_cache(maxsize=None)
def enumerate_trees(d: int) -> tuple[RootedTree, ...]:
    """One representative per isomorphism class of degree-d trees with a circle.

    Empty below degree 3: the root is a circle and already weighs at least 3.
    """
    if d < 1:
        raise ValueError("enumerate_trees needs d >= 1")
    found = []
    for e in range(1, d // ANTICANONICAL_DEGREE + 1):
        rest = d - ANTICANONICAL_DEGREE * e
        for children in _child_multisets(rest, _subtrees):
            found.append(RootedTree("c", e, children))
    return tuple(sorted(found, key=lambda t: t.key()))


def aut_order(tree: RootedTree) -> int:
    """Order of the label-preserving automorphism group fixing the root."""
    order = 1
    mult = 1
    prev = None
    for child in tree.children:
        order *= aut_order(child)
        k = child.key()
        if k == prev:
            mult += 1
        else:
            mult = 1
        prev = k
        order *= mult  # running product of multiplicities builds mult!
    return order


def _edge_factor(edge_class: int) -> HalfLaurent:
    m = ANTICANONICAL_DEGREE * edge_class
    return two_sin(m).scale(Fraction(1, m))


def _vertex_product(tree: RootedTree, gv: GVTable) -> RatFun:
    """Product of all vertex and below-edge factors of the subtree."""
    if tree.kind == "s":
        return local_series(tree.deg, gv)
    marks = tuple(sorted(ANTICANONICAL_DEGREE * c.total for c in tree.children))
    acc = -connected_series(tree.deg, marks, ANTICANONICAL_DEGREE ** 2)
    for child in tree.children:
        acc = acc * _edge_factor(child.total)
        acc = acc * _vertex_product(child, gv)
    return acc


def contribution(tree: RootedTree, gv: GVTable) -> HalfLaurent:
    """Exact cleared contribution of one tree; poles must cancel."""
    value = _vertex_product(tree, gv) * RatFun(HalfLaurent.const(Fraction(1, aut_order(tree))))
    if not value.is_laurent():
        raise NonPolynomialContributionError(
            f"tree {tree.to_text()} left denominator {value.den.to_str()}")
    out = value.num
    if not out.is_real():
        raise NonPolynomialContributionError(
            f"tree {tree.to_text()} produced an imaginary part")
    return out


def tree_sum(d: int, gv: GVTable) -> HalfLaurent:
    """Sum of all tree contributions in degree d; zero below degree 3."""
    total = HalfLaurent.zero()
    for tree in enumerate_trees(d):
        total = total + contribution(tree, gv)
    if not (total.is_real() and total.has_integer_exponents()):
        raise NonPolynomialContributionError(f"tree sum at degree {d} is not rational Laurent")
    return total
