"""Exact 2x2 matrices over Q(sqrt(D)) and their projective classes.

:class:`Mat2` is a plain matrix with exact entries.  :class:`ProjMat` is the
class of a matrix modulo nonzero scalar multiples, restricted to positive
determinant (scaling by r multiplies the determinant by r^2 > 0, so the sign
is an invariant of the class).  ProjMat instances are canonicalized -- the
first nonzero entry in row-major order is scaled to 1 -- which makes equality
and hashing structural.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence, Tuple, Union

from .exactnum import DEFAULT_D, QuadElem, Scalar

MatrixLike = Union["Mat2", "ProjMat", Sequence]


@dataclass(frozen=True)
class Mat2:
    """An exact 2x2 matrix [[a, b], [c, d]] over Q(sqrt(D))."""

    a: QuadElem
    b: QuadElem
    c: QuadElem
    d: QuadElem

    @property
    def D(self) -> int:
        return self.a.D

    # -- construction ----------------------------------------------------

    @classmethod
    def of(cls, rows: MatrixLike, D: int = DEFAULT_D) -> "Mat2":
        if isinstance(rows, Mat2):
            return rows
        if isinstance(rows, ProjMat):
            return rows.mat
        flat = list(rows)
        if len(flat) == 2:
            flat = list(flat[0]) + list(flat[1])
        if len(flat) != 4:
            raise ValueError("expected 2x2 matrix data")
        entries = [QuadElem.of(x, D) for x in flat]
        D = entries[0].D
        return cls(*[QuadElem.of(x, D) for x in entries])

    @classmethod
    def identity(cls, D: int = DEFAULT_D) -> "Mat2":
        return cls.of([[1, 0], [0, 1]], D)

    @classmethod
    def diag(cls, x: Scalar, y: Scalar, D: int = DEFAULT_D) -> "Mat2":
        x = QuadElem.of(x, D)
        return cls.of([[x, 0], [0, QuadElem.of(y, x.D)]], x.D)

    # -- inspection ---------------------------------------------------------

    def entries(self) -> Tuple[QuadElem, QuadElem, QuadElem, QuadElem]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> QuadElem:
        return self.a * self.d - self.b * self.c

    def trace(self) -> QuadElem:
        return self.a + self.d

    @property
    def is_identity(self) -> bool:
        return self == Mat2.identity(self.D)

    # -- arithmetic -----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(self.a * other.a + self.b * other.c,
                        self.a * other.b + self.b * other.d,
                        self.c * other.a + self.d * other.c,
                        self.c * other.b + self.d * other.d)
        if isinstance(other, (int, Fraction, QuadElem)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            return self.scale(other)
        return NotImplemented

    def scale(self, r: Scalar) -> "Mat2":
        r = QuadElem.of(r, self.D)
        return Mat2(r * self.a, r * self.b, r * self.c, r * self.d)

    def __neg__(self) -> "Mat2":
        return self.scale(-1)

    def adj(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inv(self) -> "Mat2":
        det = self.det()
        if det.is_zero:
            raise ZeroDivisionError("singular matrix")
        return self.adj().scale(det.inv())

    def __pow__(self, n: int) -> "Mat2":
        if n < 0:
            return self.inv() ** (-n)
        result = Mat2.identity(self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- text -----------------------------------------------------------------

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def __repr__(self) -> str:
        return f"Mat2({self})"


class MatClass(enum.Enum):
    """Conjugation-invariant type of a projective matrix class."""

    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


def _primitive(entries: Tuple[QuadElem, ...]) -> Tuple[QuadElem, ...]:
    """Rescale so all rational components are coprime integers."""
    fracs = [f for e in entries for f in (e.a, e.b)]
    denom = lcm(*(f.denominator for f in fracs))
    nums = [abs(f.numerator * (denom // f.denominator)) for f in fracs]
    common = gcd(*nums)
    scale = Fraction(denom, common) if common else Fraction(denom)
    return tuple(e * scale for e in entries)


class ProjMat:
    """A positive-determinant 2x2 matrix up to nonzero scalar multiples."""

    __slots__ = ("_entries", "D")

    def __init__(self, entries: Sequence[QuadElem], D: Optional[int] = None):
        entries = tuple(entries)
        if len(entries) != 4:
            raise ValueError("expected 4 entries")
        if D is None:
            D = entries[0].D
        entries = tuple(QuadElem.of(x, D) for x in entries)
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if det.sign() <= 0:
            raise ValueError(
                f"projective class requires positive determinant, got {det} "
                f"for [[{entries[0]},{entries[1]}],[{entries[2]},{entries[3]}]]")
        first = next(e for e in entries if not e.is_zero)
        inv = first.inv()
        object.__setattr__(self, "_entries", tuple(inv * e for e in entries))
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("ProjMat is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def of(cls, rows: MatrixLike, D: int = DEFAULT_D) -> "ProjMat":
        if isinstance(rows, ProjMat):
            return rows
        m = Mat2.of(rows, D)
        return cls(m.entries(), m.D)

    @classmethod
    def identity(cls, D: int = DEFAULT_D) -> "ProjMat":
        return cls.of(Mat2.identity(D))

    # -- inspection -----------------------------------------------------------

    @property
    def entries(self) -> Tuple[QuadElem, QuadElem, QuadElem, QuadElem]:
        return self._entries

    @property
    def mat(self) -> Mat2:
        """The canonical representative as a plain matrix."""
        return Mat2(*self._entries)

    @property
    def is_identity(self) -> bool:
        return self == ProjMat.identity(self.D)

    def primitive_entries(self) -> Tuple[QuadElem, QuadElem, QuadElem, QuadElem]:
        """The representative with coprime integer components."""
        return _primitive(self._entries)

    def sort_key(self) -> tuple:
        return tuple(e.sort_key() for e in self._entries)

    # -- group structure ----------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, ProjMat):
            return NotImplemented
        return ProjMat.of(self.mat * other.mat)

    def inv(self) -> "ProjMat":
        # the adjugate represents the same class as the inverse
        return ProjMat.of(self.mat.adj())

    def __pow__(self, n: int) -> "ProjMat":
        if n < 0:
            return self.inv() ** (-n)
        return ProjMat.of(self.mat ** n)

    # -- invariants -------------------------------------------------------------

    def classify(self) -> MatClass:
        m = self.mat
        disc = m.trace() ** 2 - 4 * m.det()
        s = disc.sign()
        if s < 0:
            return MatClass.ELLIPTIC
        if s == 0:
            return MatClass.PARABOLIC
        return MatClass.HYPERBOLIC

    def elliptic_order(self, max_order: int = 12) -> Optional[int]:
        """Smallest n <= max_order with the n-th power projectively trivial."""
        power = self
        for n in range(1, max_order + 1):
            if power.is_identity:
                return n
            power = power * self
        return None

    def conjugate_by_h(self, N: int) -> "ProjMat":
        """The class of H M H^-1 for H = [[0, -1], [N, 0]]."""
        a, b, c, d = self._entries
        return ProjMat.of([[d, -c / N], [-N * b, a]], self.D)

    # -- identity -----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ProjMat):
            return NotImplemented
        return self.D == other.D and self._entries == other._entries

    def __hash__(self):
        return hash((self.D, self._entries))

    def __str__(self) -> str:
        a, b, c, d = self.primitive_entries()
        return f"[[{a},{b}],[{c},{d}]]"

    def __repr__(self) -> str:
        return f"ProjMat({self})"


def diagonalize(m: Mat2) -> Tuple[Mat2, Tuple[QuadElem, QuadElem]]:
    """Exact diagonalization over Q(sqrt(D)).

    Returns (A, (lam1, lam2)) with lam1 > lam2, det(A) > 0 and
    A^-1 * m * A == diag(lam1, lam2) verified exactly.  Raises ValueError
    when the characteristic roots are outside the field or coincide.
    """
    tr, det = m.trace(), m.det()
    disc = tr * tr - 4 * det
    s = disc.field_sqrt() if disc.is_rational else None
    if s is None:
        raise ValueError(f"characteristic roots of {m} are not in Q(sqrt({m.D}))")
    if s.is_zero:
        raise ValueError(f"{m} has a repeated characteristic root")
    two = QuadElem.of(2, m.D)
    lam1, lam2 = (tr + s) / two, (tr - s) / two

    def eigvec(lam: QuadElem) -> Tuple[QuadElem, QuadElem]:
        if not m.b.is_zero:
            return (m.b, lam - m.a)
        if not m.c.is_zero:
            return (lam - m.d, m.c)
        one, zero = QuadElem.of(1, m.D), QuadElem.of(0, m.D)
        return (one, zero) if lam == m.a else (zero, one)

    v1, v2 = eigvec(lam1), eigvec(lam2)
    basis = Mat2(v1[0], v2[0], v1[1], v2[1])
    if basis.det().sign() < 0:
        basis = Mat2(basis.a, -basis.b, basis.c, -basis.d)
    if basis.inv() * m * basis != Mat2.diag(lam1, lam2, m.D):
        raise RuntimeError(f"diagonalization of {m} failed self-check")
    return basis, (lam1, lam2)
