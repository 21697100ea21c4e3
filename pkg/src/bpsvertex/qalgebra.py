"""Exact arithmetic in x = q^(1/2) over the Gaussian rationals.

Everything here is exact. Polynomials with Gaussian-rational coefficients
are stored as pairs ``(re, im)`` of ``flint.fmpq_poly``; the common case in
the vertex pipeline is a numerator that is a Gaussian scalar times a real
polynomial over a real denominator, which reduces with a single real gcd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_poly


# --------------------------------------------------------------------------
# Scalars


def _fq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    c = Fraction(c)
    return fmpq(c.numerator, c.denominator)


def _frac(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


@dataclass(frozen=True)
class GaussRational:
    """re + im*i with arbitrary-precision rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, fmpq):
            return cls(_frac(value))
        if isinstance(value, complex):
            raise TypeError("floating point complex values are not accepted")
        if isinstance(value, (int, Rational, str)):
            return cls(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"({self.re}{sign}{'' if mag == 1 else str(mag) + '*'}i)"

    def __repr__(self):
        return f"GaussRational({self.re!s}, {self.im!s})"


def _coerce_or_none(value):
    try:
        return GaussRational.coerce(value)
    except TypeError:
        return None


ZERO = GaussRational(0, 0)
ONE = GaussRational(1, 0)
I = GaussRational(0, 1)


def i_power(n: int) -> GaussRational:
    """sqrt(-1)**n for any integer n."""
    return (ONE, I, -ONE, -I)[n % 4]


# --------------------------------------------------------------------------
# Gaussian polynomial helpers: a pair (re, im) of fmpq_poly

_P0 = fmpq_poly([])
_P1 = fmpq_poly([1])


def _valuation(p: fmpq_poly) -> int:
    if p.is_zero():
        return 10**9
    for j, c in enumerate(p.coeffs()):
        if c != 0:
            return j
    raise AssertionError


def _inflate(p: fmpq_poly, k: int) -> fmpq_poly:
    if k == 1 or p.is_zero():
        return p
    coeffs = p.coeffs()
    out = [0] * ((len(coeffs) - 1) * k + 1)
    for j, c in enumerate(coeffs):
        out[j * k] = c
    return fmpq_poly(out)


def _reverse(p: fmpq_poly, degree: int) -> fmpq_poly:
    """x^degree * p(1/x)."""
    coeffs = p.coeffs()
    coeffs = coeffs + [0] * (degree + 1 - len(coeffs))
    return fmpq_poly(coeffs[::-1])


def _negate_x(p: fmpq_poly) -> fmpq_poly:
    return fmpq_poly([c if j % 2 == 0 else -c for j, c in enumerate(p.coeffs())])


def _gmul(a, b):
    ar, ai = a
    br, bi = b
    if ai.is_zero() and bi.is_zero():
        return ar * br, _P0
    if ai.is_zero():
        return ar * br, ar * bi
    if bi.is_zero():
        return ar * br, ai * br
    return ar * br - ai * bi, ar * bi + ai * br


def _gscale(a, c: GaussRational):
    cr, ci = _fq(c.re), _fq(c.im)
    ar, ai = a
    if ci == 0:
        return ar * cr, ai * cr
    return ar * cr - ai * ci, ar * ci + ai * cr


def _phase_split(a):
    """Return (c, real_poly) with a == c * real_poly, or None if no such split."""
    ar, ai = a
    if ai.is_zero():
        return ONE, ar
    if ar.is_zero():
        return I, ai
    # pick the first index where the coefficient is nonzero
    cr_list, ci_list = ar.coeffs(), ai.coeffs()
    for j in range(max(len(cr_list), len(ci_list))):
        cr = cr_list[j] if j < len(cr_list) else fmpq(0)
        ci = ci_list[j] if j < len(ci_list) else fmpq(0)
        if cr != 0 or ci != 0:
            break
    if not (ai * cr - ar * ci).is_zero():
        return None
    c = GaussRational(_frac(cr), _frac(ci))
    n = cr * cr + ci * ci
    return c, (ar * cr + ai * ci) / n


def _glead(a) -> GaussRational:
    ar, ai = a
    deg = max(ar.degree(), ai.degree())
    return GaussRational(_frac(ar[deg]), _frac(ai[deg]))


def _gdeg(a) -> int:
    return max(a[0].degree(), a[1].degree())


def _gis_zero(a) -> bool:
    return a[0].is_zero() and a[1].is_zero()


def _gdivmod(a, b):
    """Long division over Q(i)."""
    if _gis_zero(b):
        raise ZeroDivisionError("polynomial division by zero")
    inv = _glead(b).inverse()
    qr, qi = _P0, _P0
    rr, ri = a
    db = _gdeg(b)
    while not (rr.is_zero() and ri.is_zero()) and _gdeg((rr, ri)) >= db:
        dr = _gdeg((rr, ri))
        c = _glead((rr, ri)) * inv
        mono = fmpq_poly([0] * (dr - db) + [1])
        tr, ti = _gscale((mono, _P0), c)
        qr, qi = qr + tr, qi + ti
        pr, pi = _gmul((tr, ti), b)
        rr, ri = rr - pr, ri - pi
    return (qr, qi), (rr, ri)


def _gmonic(a):
    return _gscale(a, _glead(a).inverse())


def _ggcd(a, b):
    """Monic gcd over Q(i), using a real gcd whenever both inputs split."""
    sa, sb = _phase_split(a), _phase_split(b)
    if sa is not None and sb is not None:
        g = sa[1].gcd(sb[1])
        return g, _P0
    while not _gis_zero(b):
        _, r = _gdivmod(a, b)
        a, b = b, r
    return _gmonic(a)


def _gexact_div(a, g):
    gr, gi = g
    if gi.is_zero():
        return a[0] // gr, a[1] // gr
    q, r = _gdivmod(a, g)
    assert _gis_zero(r), "inexact polynomial division"
    return q


# --------------------------------------------------------------------------
# Laurent polynomials in x


class HalfLaurent:
    """Finitely supported Laurent polynomial in x = q^(1/2), Gaussian coefficients.

    Stored as x**val * (re + i*im) with re, im polynomials whose constant
    terms are not both zero.
    """

    __slots__ = ("val", "re", "im", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        coeffs = {int(k): GaussRational.coerce(v) for k, v in (coeffs or {}).items()}
        coeffs = {k: v for k, v in coeffs.items() if v}
        if not coeffs:
            self._set(0, _P0, _P0)
            return
        lo, hi = min(coeffs), max(coeffs)
        re = [0] * (hi - lo + 1)
        im = [0] * (hi - lo + 1)
        for k, v in coeffs.items():
            re[k - lo] = _fq(v.re)
            im[k - lo] = _fq(v.im)
        self._set(lo, fmpq_poly(re), fmpq_poly(im))

    def _set(self, val, re, im):
        self.val, self.re, self.im = val, re, im
        self._hash = None

    @classmethod
    def _raw(cls, val: int, re: fmpq_poly, im: fmpq_poly) -> "HalfLaurent":
        out = cls.__new__(cls)
        v = min(_valuation(re), _valuation(im))
        if v >= 10**9:
            out._set(0, _P0, _P0)
        elif v:
            out._set(val + v, re.right_shift(v), im.right_shift(v))
        else:
            out._set(val, re, im)
        return out

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "HalfLaurent":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c) -> "HalfLaurent":
        return cls({0: c})

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def coeffs(self) -> dict[int, GaussRational]:
        re, im = self.re.coeffs(), self.im.coeffs()
        out = {}
        for j in range(max(len(re), len(im))):
            c = GaussRational(
                _frac(re[j]) if j < len(re) else 0, _frac(im[j]) if j < len(im) else 0
            )
            if c:
                out[self.val + j] = c
        return out

    def min_exponent(self) -> int:
        return self.val

    def max_exponent(self) -> int:
        return self.val + max(self.re.degree(), self.im.degree())

    def is_real(self) -> bool:
        return self.im.is_zero()

    def __add__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        v = min(self.val, other.val)
        a, b = self.val - v, other.val - v
        return HalfLaurent._raw(
            v,
            self.re.left_shift(a) + other.re.left_shift(b),
            self.im.left_shift(a) + other.im.left_shift(b),
        )

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent._raw(self.val, -self.re, -self.im)

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        re, im = _gmul((self.re, self.im), (other.re, other.im))
        return HalfLaurent._raw(self.val + other.val, re, im)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial are rational functions")
        out = HalfLaurent.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "HalfLaurent":
        re, im = _gscale((self.re, self.im), GaussRational.coerce(c))
        return HalfLaurent._raw(self.val, re, im)

    def substitute_power(self, k: int) -> "HalfLaurent":
        if k < 1:
            raise ValueError("k must be positive")
        return HalfLaurent._raw(self.val * k, _inflate(self.re, k), _inflate(self.im, k))

    def invert(self) -> "HalfLaurent":
        """x -> 1/x."""
        if self.is_zero():
            return self
        d = max(self.re.degree(), self.im.degree())
        return HalfLaurent._raw(-self.val - d, _reverse(self.re, d), _reverse(self.im, d))

    def negate_x(self) -> "HalfLaurent":
        """x -> -x."""
        s = -1 if self.val % 2 else 1
        return HalfLaurent._raw(self.val, _negate_x(self.re) * s, _negate_x(self.im) * s)

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self.val == other.val and self.re == other.re and self.im == other.im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.coeffs().items())))
        return self._hash

    def __str__(self):
        return _render_laurent(self.coeffs())

    def __repr__(self):
        return f"HalfLaurent({self})"

    def __reduce__(self):
        # flint polynomials do not pickle; ship plain integers instead
        return (_rebuild_laurent, (self.val, _plain(self.re), _plain(self.im)))


def _as_laurent(value) -> HalfLaurent | None:
    if isinstance(value, HalfLaurent):
        return value
    c = _coerce_or_none(value)
    return None if c is None else HalfLaurent.constant(c)


def _render_term(c: GaussRational, n: int) -> str:
    if n == 0:
        return str(c)
    mono = "x" if n == 1 else f"x^{n}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _render_laurent(coeffs: Mapping[int, GaussRational]) -> str:
    if not coeffs:
        return "0"
    out = ""
    for n in sorted(coeffs, reverse=True):
        term = _render_term(coeffs[n], n)
        if not out:
            out = term
        elif term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


# --------------------------------------------------------------------------
# Rational functions in x


class RatFuncQ:
    """Exact rational function in x = q^(1/2) with Gaussian-rational coefficients.

    Canonical form: ``num / den`` where ``den`` is a monic polynomial with a
    nonzero constant term, ``num`` is a Laurent polynomial, and the two are
    coprime over Q(i).  Equality and hashing are therefore structural.
    """

    __slots__ = ("nval", "nre", "nim", "dre", "dim", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_laurent(num)
        den = _as_laurent(den)
        if num is None or den is None:
            raise TypeError("RatFuncQ expects Laurent polynomials or scalars")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._canon(num.val - den.val, num.re, num.im, den.re, den.im)

    @classmethod
    def _make(cls, nval, nre, nim, dre, dim) -> "RatFuncQ":
        out = cls.__new__(cls)
        out._canon(nval, nre, nim, dre, dim)
        return out

    @classmethod
    def _trusted(cls, nval, nre, nim, dre, dim=_P0) -> "RatFuncQ":
        out = cls.__new__(cls)
        out.nval, out.nre, out.nim, out.dre, out.dim = nval, nre, nim, dre, dim
        out._hash = None
        return out

    def _canon(self, nval, nre, nim, dre, dim):
        self._hash = None
        if nre.is_zero() and nim.is_zero():
            self.nval, self.nre, self.nim, self.dre, self.dim = 0, _P0, _P0, _P1, _P0
            return
        vn = min(_valuation(nre), _valuation(nim))
        if vn:
            nre, nim = nre.right_shift(vn), nim.right_shift(vn)
        vd = min(_valuation(dre), _valuation(dim))
        if vd:
            dre, dim = dre.right_shift(vd), dim.right_shift(vd)
        nval += vn - vd
        if not dim.is_zero():
            split = _phase_split((dre, dim))
            if split is not None:
                c, dre = split
                dim = _P0
                nre, nim = _gscale((nre, nim), c.inverse())
        if dre.degree() > 0 or not dim.is_zero():
            g = _ggcd((nre, nim), (dre, dim))
            if _gdeg(g) > 0:
                nre, nim = _gexact_div((nre, nim), g)
                dre, dim = _gexact_div((dre, dim), g)
        lead = _glead((dre, dim))
        if lead != ONE:
            inv = lead.inverse()
            nre, nim = _gscale((nre, nim), inv)
            dre, dim = _gscale((dre, dim), inv)
        self.nval, self.nre, self.nim, self.dre, self.dim = nval, nre, nim, dre, dim

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c) -> "RatFuncQ":
        return cls(HalfLaurent.constant(c))

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "RatFuncQ":
        return cls(HalfLaurent.monomial(exponent, coeff))

    # -- accessors --------------------------------------------------------

    @property
    def num(self) -> HalfLaurent:
        return HalfLaurent._raw(self.nval, self.nre, self.nim)

    @property
    def den(self) -> HalfLaurent:
        return HalfLaurent._raw(0, self.dre, self.dim)

    def is_zero(self) -> bool:
        return self.nre.is_zero() and self.nim.is_zero()

    def is_laurent(self) -> bool:
        return self.dre.degree() == 0 and self.dim.is_zero()

    def is_real(self) -> bool:
        return self.nim.is_zero() and self.dim.is_zero()

    def is_constant(self) -> bool:
        return self.is_laurent() and (self.is_zero() or (
            self.nval == 0 and self.nre.degree() <= 0 and self.nim.degree() <= 0))

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return GaussRational(_frac(self.nre[0]), _frac(self.nim[0]))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        v = min(self.nval, other.nval)
        a, b = self.nval - v, other.nval - v
        an = (self.nre.left_shift(a), self.nim.left_shift(a))
        bn = (other.nre.left_shift(b), other.nim.left_shift(b))
        if self.dim.is_zero() and other.dim.is_zero():
            if self.dre == other.dre:
                return RatFuncQ._make(v, an[0] + bn[0], an[1] + bn[1], self.dre, _P0)
            g = self.dre.gcd(other.dre)
            da, db = self.dre // g, other.dre // g
            nre = an[0] * db + bn[0] * da
            nim = an[1] * db + bn[1] * da
            return RatFuncQ._make(v, nre, nim, da * other.dre, _P0)
        ad, bd = (self.dre, self.dim), (other.dre, other.dim)
        x = _gmul(an, bd)
        y = _gmul(bn, ad)
        d = _gmul(ad, bd)
        return RatFuncQ._make(v, x[0] + y[0], x[1] + y[1], d[0], d[1])

    __radd__ = __add__

    def __neg__(self):
        return RatFuncQ._trusted(self.nval, -self.nre, -self.nim, self.dre, self.dim)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO_R
        n = _gmul((self.nre, self.nim), (other.nre, other.nim))
        d = _gmul((self.dre, self.dim), (other.dre, other.dim))
        return RatFuncQ._make(self.nval + other.nval, n[0], n[1], d[0], d[1])

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncQ":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFuncQ._make(-self.nval, self.dre, self.dim, self.nre, self.nim)

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE_R, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "RatFuncQ":
        c = GaussRational.coerce(c)
        if not c:
            return ZERO_R
        nre, nim = _gscale((self.nre, self.nim), c)
        return RatFuncQ._trusted(self.nval, nre, nim, self.dre, self.dim)

    def shift(self, exponent: int) -> "RatFuncQ":
        """Multiply by x**exponent."""
        if self.is_zero():
            return self
        return RatFuncQ._trusted(self.nval + exponent, self.nre, self.nim, self.dre, self.dim)

    # -- substitutions ------------------------------------------------------

    def substitute_power(self, k: int) -> "RatFuncQ":
        """R(q) -> R(q^k), i.e. x -> x^k."""
        if k < 1:
            raise ValueError("k must be a positive integer")
        if k == 1:
            return self
        # inflation preserves coprimality and monicity
        return RatFuncQ._trusted(
            self.nval * k,
            _inflate(self.nre, k),
            _inflate(self.nim, k),
            _inflate(self.dre, k),
            _inflate(self.dim, k),
        )

    def invert_q(self) -> "RatFuncQ":
        """R(q) -> R(1/q), i.e. x -> 1/x."""
        n, d = self.num.invert(), self.den.invert()
        return RatFuncQ._make(n.val - d.val, n.re, n.im, d.re, d.im)

    def negate_x(self) -> "RatFuncQ":
        """x -> -x; R is a function of q iff R.negate_x() == R."""
        n, d = self.num.negate_x(), self.den.negate_x()
        return RatFuncQ._make(n.val - d.val, n.re, n.im, d.re, d.im)

    def conjugate_coefficients(self) -> "RatFuncQ":
        return RatFuncQ._trusted(self.nval, self.nre, -self.nim, self.dre, -self.dim)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, x) -> GaussRational:
        """Exact value at a rational (or Gaussian rational) point x."""
        x = GaussRational.coerce(x)
        den = _eval_gpoly(self.dre, self.dim, x)
        if not den:
            raise ZeroDivisionError(f"pole at x = {x}")
        return _eval_gpoly(self.nre, self.nim, x) * x**self.nval / den

    def expand_at_infinity(self, lowest: int) -> dict[int, GaussRational]:
        """Laurent expansion in 1/x, keeping exponents >= lowest."""
        if self.is_zero():
            return {}
        num = self.num.coeffs()
        den = self.den.coeffs()
        dtop = max(den)
        inv = den[dtop].inverse()
        rem = dict(num)
        out: dict[int, GaussRational] = {}
        top = max(rem) - dtop
        for e in range(top, lowest - 1, -1):
            c = rem.pop(e + dtop, ZERO) * inv
            if not c:
                continue
            out[e] = c
            for k, dc in den.items():
                if k == dtop:
                    continue
                key = e + k
                rem[key] = rem.get(key, ZERO) - c * dc
        return out

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return (
            self.nval == other.nval
            and self.nre == other.nre
            and self.nim == other.nim
            and self.dre == other.dre
            and self.dim == other.dim
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((hash(self.num), hash(self.den)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        # numerator shown as a polynomial with nonzero constant term; any
        # power of x is moved into the denominator
        num = HalfLaurent._raw(0, self.nre, self.nim)
        den = HalfLaurent._raw(-self.nval, self.dre, self.dim)
        ns = str(num)
        if den == HalfLaurent.constant(1):
            return ns
        if len(num.coeffs()) > 1 or (len(num.coeffs()) == 1 and " " in ns):
            ns = f"({ns})"
        return f"{ns}/({den})"

    def __repr__(self):
        return f"RatFuncQ({self})"

    def __reduce__(self):
        return (_rebuild_ratfunc, (self.nval, _plain(self.nre), _plain(self.nim),
                                   _plain(self.dre), _plain(self.dim)))


def _plain(p: fmpq_poly) -> list[tuple[int, int]]:
    return [(int(c.p), int(c.q)) for c in p.coeffs()]


def _unplain(data) -> fmpq_poly:
    return fmpq_poly([fmpq(a, b) for a, b in data])


def _rebuild_laurent(val, re, im) -> HalfLaurent:
    return HalfLaurent._raw(val, _unplain(re), _unplain(im))


def _rebuild_ratfunc(nval, nre, nim, dre, dim) -> RatFuncQ:
    return RatFuncQ._trusted(nval, _unplain(nre), _unplain(nim), _unplain(dre), _unplain(dim))


def _eval_gpoly(re: fmpq_poly, im: fmpq_poly, x: GaussRational) -> GaussRational:
    out = ZERO
    rc, ic = re.coeffs(), im.coeffs()
    for j in range(max(len(rc), len(ic)) - 1, -1, -1):
        c = GaussRational(_frac(rc[j]) if j < len(rc) else 0, _frac(ic[j]) if j < len(ic) else 0)
        out = out * x + c
    return out


def _as_ratfunc(value) -> RatFuncQ | None:
    if isinstance(value, RatFuncQ):
        return value
    lau = _as_laurent(value)
    return None if lau is None else RatFuncQ(lau)


ZERO_R = RatFuncQ(0)
ONE_R = RatFuncQ(1)


# --------------------------------------------------------------------------
# q-brackets


def bracket(a: int) -> HalfLaurent:
    """[a] = q^(a/2) - q^(-a/2) = x^a - x^-a."""
    if a < 1:
        raise ValueError(f"[a] is only defined for a >= 1 (got {a}); [0] vanishes")
    return HalfLaurent({a: 1, -a: -1})


def bracket_partition(lam: Sequence[int]) -> HalfLaurent:
    out = HalfLaurent.constant(1)
    for part in lam:
        out = out * bracket(part)
    return out


def t_variable() -> RatFuncQ:
    """t = q + 1/q - 2 = [1]^2."""
    return RatFuncQ(HalfLaurent({2: 1, 0: -2, -2: 1}))


def substitute_power(r: RatFuncQ, k: int) -> RatFuncQ:
    return _as_ratfunc(r).substitute_power(k)


def invert_q(r: RatFuncQ) -> RatFuncQ:
    return _as_ratfunc(r).invert_q()


# --------------------------------------------------------------------------
# The variable t = q + 1/q - 2


class AsymmetricInput(ValueError):
    """Input is not invariant under q -> 1/q."""


class NonRealCoefficients(ValueError):
    """Input has a surviving imaginary part."""


class NotAFunctionOfQ(AsymmetricInput):
    """Input involves odd powers of x = q^(1/2), so it has no expression in t."""


class TPoly:
    """Polynomial in t with rational coefficients."""

    __slots__ = ("poly",)

    def __init__(self, coeffs: Iterable | fmpq_poly = ()):
        self.poly = coeffs if isinstance(coeffs, fmpq_poly) else fmpq_poly([_fq(c) for c in coeffs])

    def coeffs(self) -> list[Fraction]:
        return [_frac(c) for c in self.poly.coeffs()]

    def coefficient(self, k: int) -> Fraction:
        return _frac(self.poly[k]) if k >= 0 else Fraction(0)

    @property
    def degree(self) -> int:
        return self.poly.degree()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_integral(self) -> bool:
        return self.poly.denom() == 1

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs()))

    def __call__(self, t):
        return _frac(self.poly(_fq(t)))

    def __str__(self):
        return _render_tpoly(self.coeffs())

    def __repr__(self):
        return f"TPoly({self})"


def _render_tpoly(coeffs: Sequence[Fraction]) -> str:
    terms = {k: GaussRational(c) for k, c in enumerate(coeffs) if c}
    if not terms:
        return "0"
    return _render_laurent(terms).replace("x", "t")


@dataclass(frozen=True, eq=False)
class TRational:
    """a(t)/b(t) in lowest terms over Q with b monic."""

    num: TPoly
    den: TPoly

    @classmethod
    def make(cls, num: fmpq_poly, den: fmpq_poly) -> "TRational":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if g.degree() > 0:
            num, den = num // g, den // g
        lead = den.leading_coefficient()
        return cls(TPoly(num / lead), TPoly(den / lead))

    @classmethod
    def from_tpoly(cls, p: TPoly) -> "TRational":
        return cls(p, TPoly([1]))

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def times_t(self) -> "TRational":
        return TRational.make(self.num.poly * fmpq_poly([0, 1]), self.den.poly)

    def negate_t(self) -> "TRational":
        """t -> -t."""
        return TRational.make(_negate_x(self.num.poly), _negate_x(self.den.poly))

    def __neg__(self):
        return TRational(TPoly(-self.num.poly), self.den)

    def evaluate(self, t) -> Fraction:
        d = self.den(t)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {t}")
        return self.num(t) / d

    def __eq__(self, other):
        if isinstance(other, TRational):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        num = str(self.num)
        if " " in num:
            num = f"({num})"
        return f"{num}/({self.den})"


def _symmetric_even_to_t(p: HalfLaurent) -> fmpq_poly:
    """Convert a real Laurent polynomial symmetric in x <-> 1/x with only even
    exponents into a polynomial in t, via p_m = (t+2) p_{m-1} - p_{m-2}."""
    coeffs = p.coeffs()
    if not coeffs:
        return _P0
    top = max(coeffs) // 2
    t2 = fmpq_poly([2, 1])
    pm_prev, pm = fmpq_poly([2]), t2  # q^0 + q^0, q + 1/q
    out = fmpq_poly([_fq(coeffs.get(0, ZERO).re)])
    for m in range(1, top + 1):
        if m > 1:
            pm_prev, pm = pm, t2 * pm - pm_prev
        c = coeffs.get(2 * m, ZERO).re
        if c:
            out += pm * _fq(c)
    return out


def to_t(r: RatFuncQ) -> TRational:
    """Rewrite a real rational function symmetric under q <-> 1/q in t = q + 1/q - 2."""
    r = _as_ratfunc(r)
    if not r.is_real():
        raise NonRealCoefficients(f"imaginary part survives in {r}")
    if r.invert_q() != r:
        raise AsymmetricInput(f"not symmetric under q -> 1/q: {r}")
    if r.negate_x() != r:
        raise NotAFunctionOfQ(f"half-integer powers of q survive in {r}")
    if r.is_zero():
        return TRational(TPoly([]), TPoly([1]))
    num, den = r.num, r.den
    # den(x) den(1/x) den(-x) den(-1/x) is symmetric and even
    sym = den * den.invert()
    sym = sym * sym.negate_x()
    cofactor = den.invert() * den.negate_x() * den.negate_x().invert()
    top = num * cofactor
    return TRational.make(_symmetric_even_to_t(top), _symmetric_even_to_t(sym))


def from_t(p: TRational) -> RatFuncQ:
    """Lift a rational function of t back to x via t = x^2 - 2 + x^-2."""
    t = t_variable()

    def lift(poly: TPoly) -> RatFuncQ:
        out = ZERO_R
        for c in reversed(poly.coeffs()):
            out = out * t + RatFuncQ.constant(c)
        return out

    return lift(p.num) / lift(p.den)


@dataclass(frozen=True)
class LtVerdict:
    in_lt: bool
    witness: str | None = None

    def __bool__(self):
        return self.in_lt


def lt_class_test(r: TRational) -> LtVerdict:
    """Membership in {a/b : a in Z[t], b monic in Z[t]}.

    ``r`` is already reduced with monic denominator, so membership is exactly
    integrality of both coefficient lists.
    """
    for label, poly in (("numerator", r.num), ("denominator", r.den)):
        for k, c in enumerate(poly.coeffs()):
            if c.denominator != 1:
                return LtVerdict(False, f"{label} coefficient of t^{k} is {c}")
    return LtVerdict(True)
