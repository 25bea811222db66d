"""Exact arithmetic foundation.

Everything downstream runs on four carriers:

* ``GaussRat``     -- Gaussian rationals a + b*i with Fraction components.
* ``HalfLaurent``  -- Laurent polynomials in y^(1/2); exponents are stored in
  half-units, so the integer key n stands for y^(n/2).
* ``RatFun``       -- reduced quotients of two HalfLaurent values.
* ``TwoVarSeries`` -- power series in y or in (q, t), truncated by total degree.

No floats appear anywhere; all equality checks are bit-exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import NotDivisibleError

Scalar = int | Fraction


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class GaussRat:
    """Gaussian rational a + b*i; immutable, hashable, exact."""

    __slots__ = ("re", "im")

    def __init__(self, re: Scalar = 0, im: Scalar = 0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def _coerce(x) -> "GaussRat | None":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat((self.re * o.re + self.im * o.im) / n,
                        (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def __repr__(self):
        if self.im == 0:
            return f"GaussRat({self.re})"
        return f"GaussRat({self.re}, {self.im})"


GR_ZERO = GaussRat(0)
GR_ONE = GaussRat(1)
GR_I = GaussRat(0, 1)
GR_MINUS_I = GaussRat(0, -1)


def _coeff(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    return GaussRat(_frac(x))


class HalfLaurent:
    """Laurent polynomial in y^(1/2) over the Gaussian rationals.

    The coefficient map sends an integer half-exponent n to the coefficient of
    y^(n/2).  Canonical form stores no zero coefficients, so equality is plain
    map equality.  Instances are immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: dict | None = None):
        c: dict[int, GaussRat] = {}
        if coeffs:
            for n, v in coeffs.items():
                g = _coeff(v)
                if g:
                    c[int(n)] = g
        object.__setattr__(self, "_c", c)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("HalfLaurent is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "HalfLaurent":
        return HalfLaurent()

    @staticmethod
    def one() -> "HalfLaurent":
        return HalfLaurent({0: GR_ONE})

    @staticmethod
    def const(x) -> "HalfLaurent":
        return HalfLaurent({0: _coeff(x)})

    @staticmethod
    def monomial(halfexp: int, coeff=1) -> "HalfLaurent":
        return HalfLaurent({halfexp: _coeff(coeff)})

    @staticmethod
    def from_y_coeffs(coeffs, low_halfexp: int = 0) -> "HalfLaurent":
        """Build sum_j coeffs[j] * y^((low_halfexp + 2j)/2)."""
        return HalfLaurent({low_halfexp + 2 * j: _coeff(c)
                            for j, c in enumerate(coeffs)})

    # -- inspection --------------------------------------------------------

    def coeff(self, halfexp: int) -> GaussRat:
        return self._c.get(halfexp, GR_ZERO)

    def terms(self) -> list[tuple[int, GaussRat]]:
        return sorted(self._c.items())

    def support(self) -> list[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_halfexp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no support")
        return min(self._c)

    def max_halfexp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no support")
        return max(self._c)

    def is_real(self) -> bool:
        return all(v.im == 0 for v in self._c.values())

    def is_integral(self) -> bool:
        return all(v.is_integer() for v in self._c.values())

    def has_integer_exponents(self) -> bool:
        return all(n % 2 == 0 for n in self._c)

    def is_palindromic(self) -> bool:
        """True iff invariant under y -> 1/y."""
        return all(self._c.get(-n, GR_ZERO) == v for n, v in self._c.items())

    def eval_at_one(self) -> GaussRat:
        s = GR_ZERO
        for v in self._c.values():
            s = s + v
        return s

    def y_coeff(self, e: int) -> GaussRat:
        """Coefficient of the integer power y^e."""
        return self.coeff(2 * e)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _as_poly(x) -> "HalfLaurent | None":
        if isinstance(x, HalfLaurent):
            return x
        if isinstance(x, (int, Fraction, GaussRat)):
            return HalfLaurent.const(x)
        return None

    def __add__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for n, v in o._c.items():
            w = c.get(n, GR_ZERO) + v
            if w:
                c[n] = w
            else:
                c.pop(n, None)
        return HalfLaurent(c) if c else HalfLaurent()

    __radd__ = __add__

    def __sub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return HalfLaurent({n: -v for n, v in self._c.items()})

    def __mul__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return HalfLaurent()
        c: dict[int, GaussRat] = {}
        for n1, v1 in self._c.items():
            for n2, v2 in o._c.items():
                n = n1 + n2
                w = c.get(n, GR_ZERO) + v1 * v2
                if w:
                    c[n] = w
                else:
                    c.pop(n, None)
        return HalfLaurent(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a HalfLaurent")
        r = HalfLaurent.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def scale(self, x) -> "HalfLaurent":
        g = _coeff(x)
        if not g:
            return HalfLaurent()
        return HalfLaurent({n: v * g for n, v in self._c.items()})

    def shift(self, halfexp: int) -> "HalfLaurent":
        """Multiply by y^(halfexp/2)."""
        return HalfLaurent({n + halfexp: v for n, v in self._c.items()})

    def substitute_power(self, k: int) -> "HalfLaurent":
        """Replace y^(1/2) by y^(k/2); every exponent scales by k."""
        if k < 1:
            raise ValueError("substitute_power needs k >= 1")
        return HalfLaurent({n * k: v for n, v in self._c.items()})

    def mirror(self) -> "HalfLaurent":
        """Apply y -> 1/y."""
        return HalfLaurent({-n: v for n, v in self._c.items()})

    def exact_div(self, other: "HalfLaurent") -> "HalfLaurent":
        """Return q with self == q * other, or raise NotDivisibleError."""
        o = self._as_poly(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("division by zero HalfLaurent")
        if self.is_zero():
            return HalfLaurent()
        btop = o.max_halfexp()
        bc = o._c[btop]
        qmin = self.min_halfexp() - o.min_halfexp()
        rem = dict(self._c)
        q: dict[int, GaussRat] = {}
        while rem:
            rtop = max(rem)
            e = rtop - btop
            if e < qmin:
                raise NotDivisibleError("nonzero remainder in exact division")
            c = rem[rtop] / bc
            q[e] = c
            for n, v in o._c.items():
                m = n + e
                w = rem.get(m, GR_ZERO) - c * v
                if w:
                    rem[m] = w
                else:
                    rem.pop(m, None)
        return HalfLaurent(q)

    def divisible_by(self, other: "HalfLaurent") -> bool:
        try:
            self.exact_div(other)
            return True
        except NotDivisibleError:
            return False

    # -- misc --------------------------------------------------------------

    def __eq__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"HalfLaurent({self.to_str()})"

    def to_str(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for n, v in self.terms():
            if v.im == 0:
                cs = str(v.re)
            elif v.re == 0:
                cs = f"{v.im}*i"
            else:
                cs = f"({v.re}{'+' if v.im > 0 else ''}{v.im}*i)"
            if n == 0:
                parts.append(cs)
            else:
                e = f"y^{n // 2}" if n % 2 == 0 else f"y^({n}/2)"
                parts.append(e if cs == "1" else f"{cs}*{e}")
        return " + ".join(parts)


def two_sin(m: int) -> HalfLaurent:
    """Laurent form of 2*sin(m*h/2) after y = exp(i*h).

    Satisfies two_sin(m) * i == y^(m/2) - y^(-m/2) and two_sin(-m) == -two_sin(m).
    """
    if m == 0:
        raise ValueError("two_sin(0) is identically zero and not allowed")
    return HalfLaurent({m: GR_MINUS_I, -m: GR_I})


def sqrt_diff(m: int) -> HalfLaurent:
    """y^(m/2) - y^(-m/2)."""
    if m == 0:
        raise ValueError("sqrt_diff(0) is zero")
    return HalfLaurent({m: GR_ONE, -m: GaussRat(-1)})


def quantum_integer(m: int) -> HalfLaurent:
    """(y^(m/2) - y^(-m/2)) / (y^(1/2) - y^(-1/2)); m palindromic unit terms."""
    if m < 1:
        raise ValueError("quantum_integer needs m >= 1")
    return HalfLaurent({2 * j - m + 1: GR_ONE for j in range(m)})


def is_palindromic(h: HalfLaurent) -> bool:
    return h.is_palindromic()


def laurent_gcd(a: HalfLaurent, b: HalfLaurent) -> HalfLaurent:
    """Monic gcd over the Gaussian rationals, up to a monomial shift.

    The result is normalized with minimal exponent 0 and top coefficient 1.
    """
    if a.is_zero():
        return _unit_normalize(b)
    if b.is_zero():
        return _unit_normalize(a)
    x = _unit_normalize(a)
    y = _unit_normalize(b)
    while not y.is_zero():
        x, y = y, _poly_mod(x, y)
        if not y.is_zero():
            y = _unit_normalize(y)
    return _unit_normalize(x)


def _unit_normalize(p: HalfLaurent) -> HalfLaurent:
    if p.is_zero():
        return p
    p = p.shift(-p.min_halfexp())
    top = p.coeff(p.max_halfexp())
    return p.scale(GR_ONE / top)


def _poly_mod(a: HalfLaurent, b: HalfLaurent) -> HalfLaurent:
    btop = b.max_halfexp()
    bc = b.coeff(btop)
    rem = a
    while not rem.is_zero() and rem.max_halfexp() >= btop:
        e = rem.max_halfexp() - btop
        c = rem.coeff(rem.max_halfexp()) / bc
        rem = rem - b.shift(e).scale(c)
    return rem


class RatFun:
    """Reduced quotient of two HalfLaurent values.

    Canonical form: numerator and denominator are coprime, the denominator has
    minimal exponent 0 and lowest coefficient 1.  Equality is field equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: HalfLaurent, den: HalfLaurent | None = None):
        if den is None:
            den = HalfLaurent.one()
        if den.is_zero():
            raise ZeroDivisionError("RatFun with zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", HalfLaurent.zero())
            object.__setattr__(self, "den", HalfLaurent.one())
            return
        g = laurent_gcd(num, den)
        num = num.exact_div(g)
        den = den.exact_div(g)
        s = den.min_halfexp()
        num = num.shift(-s)
        den = den.shift(-s)
        c = den.coeff(0)
        num = num.scale(GR_ONE / c)
        den = den.scale(GR_ONE / c)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def _as_ratfun(x) -> "RatFun | None":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, HalfLaurent):
            return RatFun(x)
        if isinstance(x, (int, Fraction, GaussRat)):
            return RatFun(HalfLaurent.const(x))
        return None

    def __add__(self, other):
        o = self._as_ratfun(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._as_ratfun(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._as_ratfun(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        r = RatFun.__new__(RatFun)
        object.__setattr__(r, "num", -self.num)
        object.__setattr__(r, "den", self.den)
        return r

    def __mul__(self, other):
        o = self._as_ratfun(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._as_ratfun(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero RatFun")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._as_ratfun(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._as_ratfun(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == HalfLaurent.one()

    def to_laurent(self) -> HalfLaurent:
        """Clear the denominator; raises NotDivisibleError on a true pole."""
        if self.is_laurent():
            return self.num
        return self.num.exact_div(self.den)

    def __repr__(self):
        if self.is_laurent():
            return f"RatFun({self.num.to_str()})"
        return f"RatFun(({self.num.to_str()}) / ({self.den.to_str()}))"


class TwoVarSeries:
    """Truncated power series in ("y",) or ("q", "t"), by total degree.

    Coefficients are plain Fractions; exponent keys are tuples matching the
    variable list.  Arithmetic re-truncates to the stored order.
    """

    __slots__ = ("vars", "order", "_c")

    def __init__(self, variables, order: int, coeffs: dict | None = None):
        variables = tuple(variables)
        if variables not in (("y",), ("q", "t")):
            raise ValueError(f"unsupported variable set {variables}")
        if order < 0:
            raise ValueError("order must be nonnegative")
        c: dict[tuple[int, ...], Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                k = tuple(int(e) for e in k)
                if len(k) != len(variables) or any(e < 0 for e in k):
                    raise ValueError(f"bad exponent vector {k}")
                if sum(k) > order:
                    continue
                f = _frac(v)
                if f:
                    c[k] = f
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("TwoVarSeries is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(variables, order: int) -> "TwoVarSeries":
        return TwoVarSeries(variables, order)

    @staticmethod
    def one(variables, order: int) -> "TwoVarSeries":
        zero_key = (0,) * len(tuple(variables))
        return TwoVarSeries(variables, order, {zero_key: 1})

    @staticmethod
    def monomial(variables, order: int, exps, coeff=1) -> "TwoVarSeries":
        return TwoVarSeries(variables, order, {tuple(exps): coeff})

    @staticmethod
    def y_series(order: int, coeffs) -> "TwoVarSeries":
        """One-variable series from a coefficient iterable starting at y^0."""
        return TwoVarSeries(("y",), order,
                            {(j,): c for j, c in enumerate(coeffs)})

    # -- inspection --------------------------------------------------------

    def coeff(self, exps) -> Fraction:
        return self._c.get(tuple(exps), Fraction(0))

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def y_coeffs(self, upto: int | None = None) -> list[Fraction]:
        if self.vars != ("y",):
            raise ValueError("y_coeffs only for one-variable series")
        n = self.order if upto is None else min(upto, self.order)
        return [self._c.get((j,), Fraction(0)) for j in range(n + 1)]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "TwoVarSeries"):
        if self.vars != other.vars:
            raise ValueError("variable mismatch")

    @staticmethod
    def _as_series(x, like: "TwoVarSeries") -> "TwoVarSeries | None":
        if isinstance(x, TwoVarSeries):
            return x
        if isinstance(x, (int, Fraction)):
            key = (0,) * len(like.vars)
            return TwoVarSeries(like.vars, like.order, {key: x})
        return None

    def __add__(self, other):
        o = self._as_series(other, self)
        if o is None:
            return NotImplemented
        self._check(o)
        order = min(self.order, o.order)
        c = {k: v for k, v in self._c.items() if sum(k) <= order}
        for k, v in o._c.items():
            if sum(k) > order:
                continue
            w = c.get(k, Fraction(0)) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        return TwoVarSeries(self.vars, order, c)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._as_series(other, self)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._as_series(other, self)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return TwoVarSeries(self.vars, self.order,
                            {k: -v for k, v in self._c.items()})

    def __mul__(self, other):
        o = self._as_series(other, self)
        if o is None:
            return NotImplemented
        self._check(o)
        order = min(self.order, o.order)
        c: dict[tuple[int, ...], Fraction] = {}
        for k1, v1 in self._c.items():
            d1 = sum(k1)
            if d1 > order:
                continue
            for k2, v2 in o._c.items():
                if d1 + sum(k2) > order:
                    continue
                k = tuple(a + b for a, b in zip(k1, k2))
                w = c.get(k, Fraction(0)) + v1 * v2
                if w:
                    c[k] = w
                else:
                    c.pop(k, None)
        return TwoVarSeries(self.vars, order, c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power; use inverse() first")
        r = TwoVarSeries.one(self.vars, self.order)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def scale(self, x) -> "TwoVarSeries":
        f = _frac(x)
        return TwoVarSeries(self.vars, self.order,
                            {k: v * f for k, v in self._c.items()})

    def truncate(self, order: int) -> "TwoVarSeries":
        return TwoVarSeries(self.vars, min(order, self.order),
                            {k: v for k, v in self._c.items() if sum(k) <= order})

    def adams(self, j: int) -> "TwoVarSeries":
        """Substitute every variable x by x^j (exponents scale by j)."""
        if j < 1:
            raise ValueError("adams needs j >= 1")
        c = {}
        for k, v in self._c.items():
            k2 = tuple(e * j for e in k)
            if sum(k2) <= self.order:
                c[k2] = v
        return TwoVarSeries(self.vars, self.order, c)

    def inverse(self) -> "TwoVarSeries":
        """Reciprocal of a series with nonzero constant term."""
        zero_key = (0,) * len(self.vars)
        c0 = self._c.get(zero_key, Fraction(0))
        if not c0:
            raise ZeroDivisionError("series has zero constant term")
        # 1/a = (1/c0) * sum_n r^n  with  r = 1 - a/c0 (positive valuation).
        r = TwoVarSeries.one(self.vars, self.order) - self.scale(Fraction(1, 1) / c0)
        acc = TwoVarSeries.one(self.vars, self.order)
        p = TwoVarSeries.one(self.vars, self.order)
        for _ in range(self.order):
            p = p * r
            if p.is_zero():
                break
            acc = acc + p
        return acc.scale(Fraction(1, 1) / c0)

    # -- specialization ----------------------------------------------------

    def specialize_sqrt(self) -> "TwoVarSeries":
        """Substitute q = t = y^(1/2) into a (q, t) series.

        Every monomial q^i t^j must have i + j even; the result is a series
        in y of order floor(order / 2).
        """
        if self.vars != ("q", "t"):
            raise ValueError("specialize_sqrt applies to (q, t) series")
        c: dict[tuple[int, ...], Fraction] = {}
        for (i, j), v in self._c.items():
            if (i + j) % 2:
                raise ValueError(f"odd total degree {i + j} cannot land on y")
            k = ((i + j) // 2,)
            w = c.get(k, Fraction(0)) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        return TwoVarSeries(("y",), self.order // 2, c)

    # -- misc ----------------------------------------------------------------

    def first_difference(self, other: "TwoVarSeries", through: int) -> tuple | None:
        """Smallest-degree exponent where the two series differ, if any.

        Only total degrees <= through are examined (must fit both orders).
        """
        self._check(other)
        if through > min(self.order, other.order):
            raise ValueError("comparison beyond truncation order")
        keys = set(self._c) | set(other._c)
        bad = [k for k in keys
               if sum(k) <= through and self._c.get(k) != other._c.get(k)]
        return min(bad, key=lambda k: (sum(k), k)) if bad else None

    def __eq__(self, other):
        o = self._as_series(other, self)
        if o is None:
            return NotImplemented
        return (self.vars == o.vars and self.order == o.order
                and self._c == o._c)

    def __hash__(self):
        return hash((self.vars, self.order, frozenset(self._c.items())))

    def __repr__(self):
        names = self.vars
        parts = []
        for k, v in self.terms()[:12]:
            mono = "*".join(f"{n}^{e}" for n, e in zip(names, k) if e)
            parts.append(f"{v}" + (f"*{mono}" if mono else ""))
        tail = " + ..." if len(self._c) > 12 else ""
        return f"TwoVarSeries({' + '.join(parts) or '0'}{tail}; O^{self.order + 1})"


def product_expand(factors, order: int, variables=("y",)) -> TwoVarSeries:
    """Expand a product of factors (1 - x^v)^e to the given order.

    Each factor is a pair (exponent vector, integer power); one-variable
    exponents may be given as plain integers.  Monomials of degree zero are
    rejected; factors whose monomial degree exceeds the order are skipped.
    """
    variables = tuple(variables)
    result = TwoVarSeries.one(variables, order)
    for vec, power in factors:
        if isinstance(vec, int):
            vec = (vec,)
        vec = tuple(int(e) for e in vec)
        deg = sum(vec)
        if deg == 0:
            raise ValueError("factor monomial must have positive degree")
        if deg > order or power == 0:
            continue
        jmax = order // deg
        if power > 0:
            coeffs = {tuple(e * j for e in vec): Fraction((-1) ** j * comb(power, j))
                      for j in range(0, min(power, jmax) + 1)}
        else:
            e = -power
            coeffs = {tuple(v * j for v in vec): Fraction(comb(j + e - 1, e - 1))
                      for j in range(0, jmax + 1)}
        result = result * TwoVarSeries(variables, order, coeffs)
    return result


def geometric_series(vec, order: int, variables=("y",)) -> TwoVarSeries:
    """1 / (1 - x^v) as a truncated series."""
    return product_expand([(vec, -1)], order, variables)
