"""Main pipeline between BPS tables and shifted Poincare polynomials.

Forward mode solves, degree by degree, the identity

    sum over divisors kappa of d of
        -1/(kappa (y^(kappa/2)-y^(-kappa/2))^2) * (
            3(d/kappa) (-1)^((d/kappa)^2+1) Omega(d/kappa)(y^(kappa/2))
                / [3d/kappa]_(y^kappa)
            - genus_series(d/kappa)(y^kappa) )
    = tree/functional sum at degree d,

isolating the kappa = 1 term.  Here Omega(d) is the shifted Poincare
polynomial, [m] the quantum integer, and the right side comes from either the
tree enumeration or the functional-equation solver (both must agree).

Inverse mode runs the same identity backwards: from known shifted polynomials
it isolates the genus series and peels it in the triangular basis
(y^(1/2)-y^(-1/2))^(2g) to recover integer invariants.

Input tables are untrusted: every property the theory guarantees (exact
divisibility, palindromy, nonnegative integer coefficients, support bounds)
is asserted at runtime and failure aborts with a structured error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NegativeCoefficientError, NonIntegerGVError, NotDivisibleError
from .exactalg import HalfLaurent, quantum_integer, sqrt_diff
from .funceq import functional_sum, solve_packaged
from .gvdata import GVTable, genus_bound, genus_series, local_series  # noqa: F401 (re-export)
from .treesum import tree_sum

WEIGHT = 3  # a degree-d curve meets the anticanonical cubic in 3d points

_S2 = sqrt_diff(1) * sqrt_diff(1)


@dataclass(frozen=True)
class PoincareRecord:
    """One solved degree: shifted polynomial, its quantum quotient, reduced row."""

    d: int
    shifted: HalfLaurent            # palindromic, support +-(d^2+1) half-units
    quotient: HalfLaurent           # shifted / [3d], support +-g(d) integer powers
    reduced: tuple[int, ...]        # y^g(d) * quotient, ascending coefficients

    def euler(self) -> int:
        val = self.shifted.eval_at_one()
        return int(val.re)


def reduced_to_quotient(d: int, coeffs) -> HalfLaurent:
    g = genus_bound(d)
    if len(coeffs) != 2 * g + 1:
        raise ValueError(f"degree {d} reduced row needs {2 * g + 1} coefficients")
    return HalfLaurent.from_y_coeffs(coeffs, low_halfexp=-2 * g)


def record_from_reduced(d: int, coeffs) -> PoincareRecord:
    q = reduced_to_quotient(d, coeffs)
    return PoincareRecord(d, q * quantum_integer(WEIGHT * d), q, tuple(int(c) for c in coeffs))


def _record_from_quotient(d: int, q: HalfLaurent) -> PoincareRecord:
    g = genus_bound(d)
    shifted = q * quantum_integer(WEIGHT * d)
    if not q.is_real():
        raise NegativeCoefficientError(f"degree {d}: quotient has imaginary coefficients")
    if not q.has_integer_exponents():
        raise NotDivisibleError(f"degree {d}: quotient has half-integer exponents")
    if not q.is_integral():
        raise NotDivisibleError(f"degree {d}: quotient has non-integer coefficients")
    if not q.is_palindromic():
        raise NegativeCoefficientError(f"degree {d}: quotient is not palindromic")
    if not q.is_zero() and q.max_halfexp() > 2 * g:
        raise NegativeCoefficientError(f"degree {d}: quotient exceeds genus support {g}")
    reduced = tuple(int(q.y_coeff(j - g).re) for j in range(2 * g + 1))
    if reduced[0] != 1:
        raise NegativeCoefficientError(f"degree {d}: reduced constant term is {reduced[0]}, not 1")
    if any(c < 0 for c in reduced):
        raise NegativeCoefficientError(f"degree {d}: negative reduced coefficient")
    if shifted.max_halfexp() != d * d + 1:
        raise NegativeCoefficientError(
            f"degree {d}: shifted support {shifted.max_halfexp()} != {d * d + 1}")
    return PoincareRecord(d, shifted, q, reduced)


def make_rhs(gv: GVTable, dmax: int, method: str = "functional"):
    """Right-side evaluator for degrees up to dmax under the chosen route."""
    if method not in ("functional", "trees", "both"):
        raise ValueError(f"unknown method {method!r}")
    gmap = solve_packaged(dmax) if method in ("functional", "both") else None

    def rhs(d: int) -> HalfLaurent:
        if d < WEIGHT:
            return HalfLaurent.zero()
        if method == "trees":
            return tree_sum(d, gv)
        value = functional_sum(d, gv, gmap)
        if method == "both":
            other = tree_sum(d, gv)
            if other != value:
                raise NegativeCoefficientError(
                    f"degree {d}: tree route and functional route disagree")
        return value

    return rhs


def _divisor_brackets(d: int, gv: GVTable,
                      quotients: dict[int, HalfLaurent]) -> HalfLaurent:
    """Sum over proper divisor levels kappa > 1 of the multiple-cover bracket."""
    acc = HalfLaurent.zero()
    for kappa in range(2, d + 1):
        if d % kappa:
            continue
        dk = d // kappa
        sign = 1 if dk % 2 else -1      # (-1)^(dk^2+1) == (-1)^(dk+1); squares keep parity
        inner = (quotients[dk].substitute_power(kappa).scale(sign * WEIGHT * dk)
                 - genus_series(dk, gv).substitute_power(kappa))
        den = (sqrt_diff(kappa) * sqrt_diff(kappa)).scale(kappa)
        acc = acc + (-inner).exact_div(den)
    return acc


def compute_table(gv: GVTable, dmax: int, method: str = "functional") -> dict[int, PoincareRecord]:
    """Solve all degrees 1..dmax; raises if the table falsifies an identity."""
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    rhs = make_rhs(gv, dmax, method)
    records: dict[int, PoincareRecord] = {}
    quotients: dict[int, HalfLaurent] = {}
    for d in range(1, dmax + 1):
        gv.require_degree(d)
        bracket_rest = _divisor_brackets(d, gv, quotients)
        numer = genus_series(d, gv) - _S2 * (rhs(d) - bracket_rest)
        sign = 1 if d % 2 else -1       # (-1)^(d^2+1) == (-1)^(d+1)
        q = numer.scale(Fraction(sign, WEIGHT * d))
        rec = _record_from_quotient(d, q)
        records[d] = rec
        quotients[d] = rec.quotient
    return records


def invert_table(reduced_rows: dict[int, tuple[int, ...]],
                 method: str = "functional") -> GVTable:
    """Recover the integer invariant table from reduced polynomial rows 1..D."""
    if not reduced_rows:
        raise ValueError("no reduced rows supplied")
    dmax = max(reduced_rows)
    if sorted(reduced_rows) != list(range(1, dmax + 1)):
        raise ValueError("reduced rows must cover degrees 1..D without gaps")
    gv = GVTable()
    quotients = {d: reduced_to_quotient(d, reduced_rows[d]) for d in reduced_rows}
    rhs = make_rhs(gv, dmax, method)
    for d in range(1, dmax + 1):
        sign = 1 if d % 2 else -1
        bracket_rest = _divisor_brackets(d, gv, quotients)
        f = quotients[d].scale(sign * WEIGHT * d) + _S2 * (rhs(d) - bracket_rest)
        for g, n in _peel_genus_rows(d, f):
            gv.set(g, d, n)
    return gv


def _peel_genus_rows(d: int, f: HalfLaurent):
    """Expand a genus series in the basis (y^(1/2)-y^(-1/2))^(2g)."""
    if not f.is_real():
        raise NonIntegerGVError(f"degree {d}: genus series is not real")
    rows = []
    while not f.is_zero():
        top = f.max_halfexp()
        if top < 0 or top % 2:
            raise NonIntegerGVError(f"degree {d}: stray support at half-exponent {top}")
        g = top // 2
        if g > genus_bound(d):
            raise NonIntegerGVError(f"degree {d}: support beyond genus bound {genus_bound(d)}")
        c = f.y_coeff(g)
        if not c.is_integer():
            raise NonIntegerGVError(f"degree {d}: non-integer invariant at genus {g}: {c!r}")
        n = int(c.re) * (1 if g % 2 == 0 else -1)
        rows.append((g, n))
        f = f - (_S2 ** g).scale(n if g % 2 == 0 else -n)
    return rows


def bracket_is_integral(d: int, gv: GVTable, quotient: HalfLaurent) -> bool:
    """Integer-polynomial test for the degree-d multiple-cover bracket."""
    sign = 1 if d % 2 else -1
    inner = quotient.scale(sign * WEIGHT * d) - genus_series(d, gv)
    try:
        b = (-inner).exact_div(_S2)
    except NotDivisibleError:
        return False
    return b.is_real() and b.has_integer_exponents() and b.is_integral()
