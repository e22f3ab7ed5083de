"""Exact arithmetic over the real quadratic field Q(sqrt(D)).

Provides four layers, each built on the previous one:

* :class:`QuadElem` -- numbers a + b*sqrt(D) with rational a, b, including
  exact sign determination and square roots inside the field.
* :class:`ScalarPoly` -- commutative polynomials in the formal symbols
  ``a2``, ``a3`` and an involution ``e`` (with e^2 = 1) over Q(sqrt(D)).
* :class:`Poly` -- dense univariate polynomials over Q(sqrt(D)).
* :class:`RatFunc` -- reduced rational functions num/den with monic
  denominator, supporting exact pole orders at z = 0.

Everything here is immutable and hashable, so values can be used as
dictionary keys throughout the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Optional, Union

DEFAULT_D = 13

#: Exponents of a2/a3 in a ScalarPoly must stay below this bound.  The cap
#: keeps runaway symbolic products from silently eating memory.
EXPONENT_LIMIT = 1 << 16

Rat = Union[int, Fraction]
Scalar = Union[int, Fraction, "QuadElem"]


class MixedFieldError(ValueError):
    """Raised when values from different quadratic fields are combined."""


class ExponentOverflowError(OverflowError):
    """Raised when a symbolic exponent exceeds ``EXPONENT_LIMIT``."""


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadElem:
    """An element a + b*sqrt(D) of the field Q(sqrt(D))."""

    a: Fraction
    b: Fraction
    D: int = DEFAULT_D

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.D <= 1 or isqrt(self.D) ** 2 == self.D:
            raise ValueError(f"D must be a non-square integer > 1, got {self.D}")

    # -- construction -------------------------------------------------

    @classmethod
    def of(cls, x: Scalar, D: int = DEFAULT_D) -> "QuadElem":
        if isinstance(x, QuadElem):
            return x
        return cls(Fraction(x), Fraction(0), D)

    @classmethod
    def sqrt_d(cls, D: int = DEFAULT_D) -> "QuadElem":
        return cls(Fraction(0), Fraction(1), D)

    # -- predicates ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.a and not self.b

    @property
    def is_rational(self) -> bool:
        return not self.b

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> Optional["QuadElem"]:
        if isinstance(other, QuadElem):
            if other.D != self.D:
                raise MixedFieldError(f"sqrt({self.D}) vs sqrt({other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "QuadElem":
        return QuadElem(-self.a, -self.b, self.D)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a * o.a + self.D * self.b * o.b,
                        self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def inv(self) -> "QuadElem":
        norm = self.a * self.a - self.D * self.b * self.b
        if not norm:
            if self.is_zero:
                raise ZeroDivisionError("inverse of zero")
            raise ValueError("norm vanished for a nonzero element; D is square?")
        return QuadElem(self.a / norm, -self.b / norm, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int) -> "QuadElem":
        if n < 0:
            return self.inv() ** (-n)
        result = QuadElem.of(1, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self) -> "QuadElem":
        """Galois conjugate a - b*sqrt(D)."""
        return QuadElem(self.a, -self.b, self.D)

    # -- order ----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign under the embedding sqrt(D) > 0."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: |a| vs |b|*sqrt(D) decided by squaring
        lhs, rhs = self.a * self.a, self.D * self.b * self.b
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __abs__(self) -> "QuadElem":
        return -self if self.sign() < 0 else self

    def field_sqrt(self) -> Optional["QuadElem"]:
        """A square root within Q(sqrt(D)) for rational inputs, else None.

        Finds r with r^2 == self when self is rational and either a
        rational square or D times one.  Irrational inputs are not
        supported and return None.
        """
        if not self.is_rational:
            return None
        if not self.a:
            return QuadElem.of(0, self.D)
        r = _rational_sqrt(self.a)
        if r is not None:
            return QuadElem(r, Fraction(0), self.D)
        r = _rational_sqrt(self.a / self.D)
        if r is not None:
            return QuadElem(Fraction(0), r, self.D)
        return None

    def sort_key(self) -> tuple:
        return (self.a, self.b)

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        root = f"{abs(self.b)}*sqrt({self.D})"
        if not self.a:
            return root if self.b > 0 else "-" + root
        return f"{self.a}{'+' if self.b > 0 else '-'}{root}"

    def __repr__(self) -> str:
        return f"QuadElem({self})"


_MonoKey = tuple  # (exp_a2, exp_a3, exp_e) with exp_e in {0, 1}


class ScalarPoly:
    """Polynomial in the symbols a2, a3, e over Q(sqrt(D)), with e^2 = 1.

    Instances are canonical: terms are kept sorted with nonzero
    coefficients, so ``==`` and ``hash`` reflect mathematical equality.
    """

    __slots__ = ("_terms", "D")

    def __init__(self, terms: Mapping[_MonoKey, QuadElem], D: int = DEFAULT_D):
        cleaned = {}
        for key, coeff in terms.items():
            i2, i3, ie = key
            if i2 < 0 or i3 < 0:
                raise ValueError("negative symbolic exponent")
            if max(i2, i3) >= EXPONENT_LIMIT:
                raise ExponentOverflowError(
                    f"exponent {max(i2, i3)} exceeds limit {EXPONENT_LIMIT}")
            coeff = QuadElem.of(coeff, D)
            if coeff.D != D:
                raise MixedFieldError(f"sqrt({D}) vs sqrt({coeff.D})")
            key = (i2, i3, ie & 1)
            if key in cleaned:
                coeff = cleaned[key] + coeff
            if coeff.is_zero:
                cleaned.pop(key, None)
            else:
                cleaned[key] = coeff
        object.__setattr__(self, "_terms", tuple(sorted(cleaned.items())))
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("ScalarPoly is immutable")

    # -- construction ---------------------------------------------------

    @classmethod
    def const(cls, x: Scalar, D: int = DEFAULT_D) -> "ScalarPoly":
        x = QuadElem.of(x, D)
        return cls({(0, 0, 0): x}, x.D)

    @classmethod
    def alpha2(cls, D: int = DEFAULT_D) -> "ScalarPoly":
        return cls({(1, 0, 0): QuadElem.of(1, D)}, D)

    @classmethod
    def alpha3(cls, D: int = DEFAULT_D) -> "ScalarPoly":
        return cls({(0, 1, 0): QuadElem.of(1, D)}, D)

    @classmethod
    def eps(cls, D: int = DEFAULT_D) -> "ScalarPoly":
        return cls({(0, 0, 1): QuadElem.of(1, D)}, D)

    # -- inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def as_const(self) -> Optional[QuadElem]:
        """The value as a plain field element, or None if symbols occur."""
        if not self._terms:
            return QuadElem.of(0, self.D)
        if len(self._terms) == 1 and self._terms[0][0] == (0, 0, 0):
            return self._terms[0][1]
        return None

    def terms(self) -> Iterable[tuple]:
        return self._terms

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Optional["ScalarPoly"]:
        if isinstance(other, ScalarPoly):
            if other.D != self.D:
                raise MixedFieldError(f"sqrt({self.D}) vs sqrt({other.D})")
            return other
        if isinstance(other, (int, Fraction, QuadElem)):
            return ScalarPoly.const(other, self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for key, coeff in o._terms:
            acc[key] = acc.get(key, QuadElem.of(0, self.D)) + coeff
        return ScalarPoly(acc, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly({k: -c for k, c in self._terms}, self.D)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict = {}
        for (i2, i3, ie), c in self._terms:
            for (j2, j3, je), d in o._terms:
                key = (i2 + j2, i3 + j3, (ie + je) & 1)
                if max(key[0], key[1]) >= EXPONENT_LIMIT:
                    raise ExponentOverflowError(
                        f"exponent {max(key[0], key[1])} exceeds limit "
                        f"{EXPONENT_LIMIT}")
                prod = c * d
                if key in acc:
                    acc[key] = acc[key] + prod
                else:
                    acc[key] = prod
        return ScalarPoly(acc, self.D)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ScalarPoly":
        if n < 0:
            raise ValueError("negative powers of symbolic scalars")
        result = ScalarPoly.const(1, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- evaluation ---------------------------------------------------------

    def instantiate(self, alpha2: Scalar, alpha3: Scalar, eps: int) -> QuadElem:
        """Evaluate at concrete values, with eps = +1 or -1."""
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        a2 = QuadElem.of(alpha2, self.D)
        a3 = QuadElem.of(alpha3, self.D)
        total = QuadElem.of(0, self.D)
        for (i2, i3, ie), coeff in self._terms:
            val = coeff * a2 ** i2 * a3 ** i3
            if ie and eps == -1:
                val = -val
            total = total + val
        return total

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            other = ScalarPoly.const(other, self.D)
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.D == other.D and self._terms == other._terms

    def __hash__(self):
        return hash((self.D, self._terms))

    # -- text ------------------------------------------------------------------

    @staticmethod
    def _mono_str(key: _MonoKey) -> str:
        i2, i3, ie = key
        parts = []
        if ie:
            parts.append("e")
        if i2:
            parts.append("a2" if i2 == 1 else f"a2^{i2}")
        if i3:
            parts.append("a3" if i3 == 1 else f"a3^{i3}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for key, coeff in reversed(self._terms):
            neg = coeff.sign() < 0
            mag = -coeff if neg else coeff
            mono = self._mono_str(key)
            text = str(mag)
            if mag.a and mag.b:
                text = f"({text})"
            if mono:
                text = mono if mag == QuadElem.of(1, self.D) else f"{text}*{mono}"
            chunks.append(("-" if neg else "+", text))
        first_sign, first = chunks[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in chunks[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"ScalarPoly({self})"


class Poly:
    """Dense univariate polynomial over Q(sqrt(D)), low degree first."""

    __slots__ = ("coeffs", "D")

    def __init__(self, coeffs: Iterable[QuadElem], D: int = DEFAULT_D):
        cs = [QuadElem.of(c, D) for c in coeffs]
        for c in cs:
            if c.D != D:
                raise MixedFieldError(f"sqrt({D}) vs sqrt({c.D})")
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("Poly is immutable")

    # -- construction -------------------------------------------------------

    @classmethod
    def of(cls, coeffs: Iterable[Scalar], D: Optional[int] = None) -> "Poly":
        coeffs = list(coeffs)
        if D is None:
            D = next((c.D for c in coeffs if isinstance(c, QuadElem)), DEFAULT_D)
        return cls([QuadElem.of(c, D) for c in coeffs], D)

    @classmethod
    def zero(cls, D: int = DEFAULT_D) -> "Poly":
        return cls([], D)

    @classmethod
    def one(cls, D: int = DEFAULT_D) -> "Poly":
        return cls([QuadElem.of(1, D)], D)

    @classmethod
    def z(cls, D: int = DEFAULT_D) -> "Poly":
        return cls([QuadElem.of(0, D), QuadElem.of(1, D)], D)

    # -- inspection ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    def leading(self) -> QuadElem:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def valuation_at_zero(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no valuation")
        return next(i for i, c in enumerate(self.coeffs) if not c.is_zero)

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            if other.D != self.D:
                raise MixedFieldError(f"sqrt({self.D}) vs sqrt({other.D})")
            return other
        if isinstance(other, (int, Fraction, QuadElem)):
            return Poly([QuadElem.of(other, self.D)], self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        zero = QuadElem.of(0, self.D)
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        b = list(o.coeffs) + [zero] * (n - len(o.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.D)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return Poly.zero(self.D)
        zero = QuadElem.of(0, self.D)
        out = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            for j, d in enumerate(o.coeffs):
                out[i + j] = out[i + j] + c * d
        return Poly(out, self.D)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        zero = QuadElem.of(0, self.D)
        rem = list(self.coeffs)
        quo = [zero] * max(len(rem) - len(o.coeffs) + 1, 0)
        lead_inv = o.leading().inv()
        for i in range(len(rem) - len(o.coeffs), -1, -1):
            factor = rem[i + len(o.coeffs) - 1] * lead_inv
            if factor.is_zero:
                continue
            quo[i] = factor
            for j, d in enumerate(o.coeffs):
                rem[i + j] = rem[i + j] - factor * d
        return Poly(quo, self.D), Poly(rem, self.D)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        inv = self.leading().inv()
        return Poly([c * inv for c in self.coeffs], self.D)

    @staticmethod
    def gcd(f: "Poly", g: "Poly") -> "Poly":
        while not g.is_zero:
            f, g = g, f % g
        return f.monic()

    def eval_at(self, x: Scalar) -> QuadElem:
        x = QuadElem.of(x, self.D)
        total = QuadElem.of(0, self.D)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.D == other.D and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.D, self.coeffs))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if i == 0:
                parts.append(f"({c})")
            elif i == 1:
                parts.append(f"({c})*z")
            else:
                parts.append(f"({c})*z^{i}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


class RatFunc:
    """Reduced rational function num/den over Q(sqrt(D)).

    The stored pair is canonical: gcd(num, den) = 1 and den is monic, so
    ``==`` and ``hash`` reflect mathematical equality.
    """

    __slots__ = ("num", "den", "D")

    def __init__(self, num: Poly, den: Poly):
        if num.D != den.D:
            raise MixedFieldError(f"sqrt({num.D}) vs sqrt({den.D})")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            num, den = Poly.zero(num.D), Poly.one(num.D)
        else:
            g = Poly.gcd(num, den)
            num, den = num // g, den // g
            inv = den.leading().inv()
            num = Poly([c * inv for c in num.coeffs], num.D)
            den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "D", num.D)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("RatFunc is immutable")

    # -- construction --------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar, D: int = DEFAULT_D) -> "RatFunc":
        c = QuadElem.of(c, D)
        return cls(Poly([c], c.D), Poly.one(c.D))

    @classmethod
    def z(cls, D: int = DEFAULT_D) -> "RatFunc":
        return cls(Poly.z(D), Poly.one(D))

    @classmethod
    def z_power(cls, n: int, D: int = DEFAULT_D) -> "RatFunc":
        if n >= 0:
            return cls(Poly.z(D) ** n, Poly.one(D))
        return cls(Poly.one(D), Poly.z(D) ** (-n))

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.D))

    # -- inspection ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def pole_order_at_zero(self) -> int:
        """Order of the pole at z = 0 (0 when there is no pole)."""
        if self.is_zero:
            return 0
        return max(self.den.valuation_at_zero() - self.num.valuation_at_zero(), 0)

    def order_at_zero(self) -> int:
        """Valuation at z = 0: negative for a pole, positive for a zero."""
        if self.is_zero:
            raise ValueError("zero function has no order")
        return self.num.valuation_at_zero() - self.den.valuation_at_zero()

    def leading_coeff_at_zero(self) -> QuadElem:
        """Coefficient of the lowest-order term of the expansion at z = 0."""
        if self.is_zero:
            raise ValueError("zero function has no leading coefficient")
        vn = self.num.valuation_at_zero()
        vd = self.den.valuation_at_zero()
        return self.num.coeffs[vn] / self.den.coeffs[vd]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Optional["RatFunc"]:
        if isinstance(other, RatFunc):
            if other.D != self.D:
                raise MixedFieldError(f"sqrt({self.D}) vs sqrt({other.D})")
            return other
        if isinstance(other, (int, Fraction, QuadElem)):
            return RatFunc.const(other, self.D)
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inv() ** (-n)
        result = RatFunc.const(1, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def eval_at(self, x: Scalar) -> QuadElem:
        x = QuadElem.of(x, self.D)
        dv = self.den.eval_at(x)
        if dv.is_zero:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num.eval_at(x) / dv

    # -- identity --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadElem, Poly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.D == other.D and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.D, self.num, self.den))

    def __str__(self) -> str:
        if self.den == Poly.one(self.D):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"
