"""High-precision evaluation of exact q-expansions on the upper half-plane.

Evaluation is binary floating point at a configured precision (mpmath),
but everything that decides *where* to evaluate is exact: sample points
are rational, images under matrix classes are computed in Q(sqrt 13), and
the minimum-imaginary-part audit compares field elements by exact sign.
Truncation error is bounded rigorously from the crude coefficient growth
bound |a_n| <= n^k:

    sum_{n >= M} n^k x^n  <=  M^k x^M / (1 - rho x),   rho = (1 + 1/M)^k,

with x = e^{-2 pi Im z} and M the first exponent beyond the truncation;
a bound above the configured tolerance raises instead of degrading.

Congruences are tested pointwise through the weight-k stroke action
f|M = det(M)^{k/2} (cz+d)^{-k} f(Mz), which is invariant under rescaling
M for even k, so any representative of a projective class may be used.
The symbols in a congruence are instantiated from the form: the Hecke
scalars as p^{1-k/2} a_p and the inversion sign as the carried +-1.

The two commuting hyperbolic generators stretch by (2+sqrt13)/3 and
(7-sqrt13)/6 along the same axes; ``lambda_compute`` returns the exponent
tying them together and ``density_search`` realizes targets as lattice
powers, via an Ostrowski-style continued-fraction descent with a brute
scan fallback.  Irrationality of the stretch and the exponent is assumed,
not proved here: ``lambda_rational_exclusion`` checks exactly that no
rational exponent with small denominator works, and callers surface that
caveat in reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from mpmath import exp, mp, mpc, mpf, pi

from .certificate import Certificate, Congruence
from .exactnum import QuadElem
from .groupring import RingElem
from .level13 import build_f_certificate, f_context
from .projmat import Mat2, ProjMat
from .qseries import QSeries, hecke_check, hecke_stroke_identity


class ConfigurationError(ValueError):
    """A sample point or an image point violates the evaluation config."""


class PrecisionError(ArithmeticError):
    """The rigorous tail bound exceeds the configured tolerance."""


class DensityError(RuntimeError):
    """The lattice search exhausted its bound without reaching the target."""


#: Larger diagonal stretch of the first commuting generator: (2+sqrt13)/3.
STRETCH_BASE = QuadElem(Fraction(2, 3), Fraction(1, 3))

#: Smaller diagonal stretch of the second generator: (7-sqrt13)/6.
H3_EIGENVALUE = QuadElem(Fraction(7, 6), Fraction(-1, 6))

DEFAULT_POINTS: Tuple[Tuple[Fraction, Fraction], ...] = tuple(
    (Fraction(x), Fraction(y)) for x, y in (
        (0, 1), (Fraction(1, 3), Fraction(9, 10)),
        (Fraction(-1, 2), Fraction(4, 5)), (Fraction(2, 7), Fraction(6, 5)),
        (Fraction(-2, 5), 1), (Fraction(1, 2), Fraction(11, 10)),
        (Fraction(-1, 4), Fraction(17, 20)), (Fraction(3, 8), Fraction(5, 4)),
    ))

#: Points on the circle |z| = 1/sqrt(13), which the level-13 inversion
#: maps to itself, so both the points and their images keep Im >= 2/13.
FRICKE_POINTS_13: Tuple[Tuple[Fraction, Fraction], ...] = (
    (Fraction(2, 13), Fraction(3, 13)), (Fraction(-2, 13), Fraction(3, 13)),
    (Fraction(3, 13), Fraction(2, 13)), (Fraction(-3, 13), Fraction(2, 13)),
)


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation settings.  ``points=None`` means: auto-tune sample
    points per congruence instead of using a fixed set."""

    precision: int = 256
    points: Optional[Tuple[Tuple[Fraction, Fraction], ...]] = DEFAULT_POINTS
    y_min: Fraction = Fraction(3, 20)
    tolerance: Fraction = Fraction(1, 10 ** 20)

    def __post_init__(self) -> None:
        if self.points is not None:
            pts = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
            if any(y <= 0 for _, y in pts):
                raise ValueError("sample points must lie in the upper half-plane")
            object.__setattr__(self, "points", pts)
        object.__setattr__(self, "y_min", Fraction(self.y_min))
        object.__setattr__(self, "tolerance", Fraction(self.tolerance))
        if self.tolerance <= 0 or self.y_min <= 0:
            raise ValueError("tolerance and y_min must be positive")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class FormData:
    series: QSeries
    weight: int
    level: int
    sign: int

    def __post_init__(self) -> None:
        if not isinstance(self.weight, int) or self.weight < 2 or self.weight % 2:
            raise ValueError(f"weight must be a positive even integer, "
                             f"got {self.weight}")
        if self.level < 1:
            raise ValueError(f"level must be a positive integer, got {self.level}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")


class EvalResult(NamedTuple):
    value: mpc
    tail_bound: mpf


def _to_mpf(x) -> mpf:
    if isinstance(x, QuadElem):
        return _to_mpf(x.a) + _to_mpf(x.b) * mp.sqrt(x.D)
    q = Fraction(x)
    return mpf(q.numerator) / q.denominator


def _exact_im_sign(value, floor: Fraction) -> int:
    """Exact sign of value - floor for Fraction or QuadElem value."""
    if isinstance(value, QuadElem):
        return (value - floor).sign()
    diff = Fraction(value) - floor
    return (diff > 0) - (diff < 0)


def _series_value(series: QSeries, zre: mpf, zim: mpf) -> mpc:
    z = mpc(zre, zim)
    qz = exp(mpc(0, 2) * pi * z)
    acc = mpc(0)
    for c in reversed(series.coeffs):
        acc = acc * qz + (c if isinstance(c, int) else _to_mpf(c))
    return acc * exp(mpc(0, 2) * pi * _to_mpf(series.offset) * z)


def _tail_bound(weight: int, series: QSeries, zim: mpf) -> mpf:
    first = _to_mpf(series.offset) + series.length + 1
    x = exp(-2 * pi * zim)
    rho = (1 + 1 / first) ** weight
    if rho * x >= 1:
        raise PrecisionError(
            f"cannot bound the series tail at Im z = {mp.nstr(zim, 8)}; "
            f"increase the truncation length or move the point up")
    return first ** weight * x ** first / (1 - rho * x)


def eval_form(form: FormData, z, cfg: Optional[EvalConfig] = None) -> EvalResult:
    """Evaluate the truncated expansion at a point of the upper half-plane,
    returning the value together with its rigorous tail bound."""
    cfg = cfg or DEFAULT_CONFIG
    with mp.workprec(cfg.precision):
        if isinstance(z, tuple):
            xe, ye = z
            if _exact_im_sign(ye, cfg.y_min) < 0:
                raise ConfigurationError(
                    f"point has imaginary part {ye} below the floor {cfg.y_min}")
            zre, zim = _to_mpf(xe), _to_mpf(ye)
        else:
            w = mpc(z)
            zre, zim = w.real, w.imag
            if zim < _to_mpf(cfg.y_min):
                raise ConfigurationError(
                    f"point has imaginary part {mp.nstr(zim, 8)} below the "
                    f"floor {cfg.y_min}")
        tail = _tail_bound(form.weight, form.series, zim)
        if tail > _to_mpf(cfg.tolerance):
            raise PrecisionError(
                f"tail bound {mp.nstr(tail, 5)} exceeds the tolerance "
                f"{float(cfg.tolerance):.1e}")
        return EvalResult(_series_value(form.series, zre, zim), tail)


def _matrix_of(matrix) -> Mat2:
    if isinstance(matrix, ProjMat):
        return matrix.mat
    if isinstance(matrix, Mat2):
        return matrix
    return Mat2.of(matrix)


def stroke_value(form: FormData, matrix, z,
                 cfg: Optional[EvalConfig] = None) -> mpc:
    """The weight-k stroke det^{k/2} (cz+d)^{-k} f(Mz), evaluated
    numerically; requires positive determinant."""
    cfg = cfg or DEFAULT_CONFIG
    m = _matrix_of(matrix)
    det = m.det()
    if det.sign() <= 0:
        raise ValueError("stroke needs a positive-determinant matrix")
    a, b, c, d = m.entries()
    with mp.workprec(cfg.precision):
        w = mpc(z)
        av, bv, cv, dv = (_to_mpf(e) for e in (a, b, c, d))
        denom = cv * w + dv
        image = (av * w + bv) / denom
        factor = _to_mpf(det) ** (form.weight // 2) * denom ** -form.weight
        return factor * eval_form(form, image, cfg).value


# -- congruence residuals -------------------------------------------------------


def _hecke_scalar(form: FormData, p: int) -> Fraction:
    return Fraction(p) ** (1 - form.weight // 2) * Fraction(
        form.series.coefficient(p))


def _poly_value(poly, form: FormData) -> QuadElem:
    total = QuadElem.of(0)
    for (e2, e3, ee), coeff in poly.terms():
        scale = Fraction(1)
        if e2:
            scale *= _hecke_scalar(form, 2) ** e2
        if e3:
            scale *= _hecke_scalar(form, 3) ** e3
        if ee % 2:
            scale *= form.sign
        total = total + coeff * scale
    return total


def _exact_image(mat: ProjMat, x, y):
    """Image of the exact point x + iy under the class, as a pair of
    field elements (real part, imaginary part)."""
    a, b, c, d = mat.entries
    xq, yq = QuadElem.of(x), QuadElem.of(y)
    den = c * xq + d
    q = den * den + (c * yq) * (c * yq)
    det = a * d - b * c
    xi = ((a * xq + b) * den + a * c * yq * yq) / q
    yi = det * yq / q
    return xi, yi


def _signed_terms(congruence: Congruence) -> List[Tuple[int, ProjMat, object]]:
    items: List[Tuple[int, ProjMat, object]] = []
    for sign, side in ((1, congruence.lhs), (-1, congruence.rhs)):
        for mat, poly in side.terms():
            items.append((sign, mat, poly))
    return items


def _audit_points(items, points, y_min: Fraction, label: str) -> None:
    for x, y in points:
        if Fraction(y) < y_min:
            raise ConfigurationError(
                f"{label}: sample point ({x}, {y}) is below y_min={y_min}")
        for _, mat, _ in items:
            _, yi = _exact_image(mat, x, y)
            if _exact_im_sign(yi, y_min) < 0:
                raise ConfigurationError(
                    f"{label}: image of ({x}, {y}) under {mat} has "
                    f"imaginary part below y_min={y_min}")


def _residual(form: FormData, congruence: Congruence,
              points, cfg: EvalConfig, cache: Dict) -> mpf:
    items = _signed_terms(congruence)
    _audit_points(items, points, cfg.y_min, congruence.id)
    k = form.weight
    tol = _to_mpf(cfg.tolerance)
    worst = mpf(0)
    for x, y in points:
        total = mpc(0)
        for sign, mat, poly in items:
            scalar = _poly_value(poly, form)
            if scalar.is_zero:
                continue
            xi, yi = _exact_image(mat, x, y)
            key = (xi, yi)
            if key not in cache:
                zre, zim = _to_mpf(xi), _to_mpf(yi)
                tail = _tail_bound(k, form.series, zim)
                if tail > tol:
                    raise PrecisionError(
                        f"{congruence.id}: tail bound {mp.nstr(tail, 5)} at "
                        f"image Im = {mp.nstr(zim, 8)} exceeds the tolerance")
                cache[key] = _series_value(form.series, zre, zim)
            a, b, c, d = mat.entries
            det = a * d - b * c
            denom = mpc(_to_mpf(c * QuadElem.of(x) + d), _to_mpf(c * QuadElem.of(y)))
            factor = _to_mpf(det) ** (k // 2) * denom ** -k
            total += sign * _to_mpf(scalar) * factor * cache[key]
        worst = max(worst, abs(total))
    return worst


def congruence_residual(form: FormData, congruence: Congruence,
                        cfg: Optional[EvalConfig] = None) -> mpf:
    """Max over the configured sample points of |f|lhs - f|rhs|, with the
    congruence symbols instantiated from the form."""
    cfg = cfg or DEFAULT_CONFIG
    points = cfg.points
    if points is None:
        points = suggest_points(congruence, cfg.y_min)
    with mp.workprec(cfg.precision):
        return _residual(form, congruence, points, cfg, {})


_SUGGEST_HEIGHTS = (Fraction(1), Fraction(4, 5), Fraction(1, 2),
                    Fraction(1, 4), Fraction(1, 5))


def suggest_points(congruence: Congruence,
                   y_min: Fraction = Fraction(3, 20),
                   ) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Two exact sample points keeping every image of every class in the
    congruence at imaginary part >= y_min, found by centering candidates
    on the classes' isometric circles and auditing exactly."""
    mats = {mat for _, mat, _ in _signed_terms(congruence)}
    centers = {Fraction(0)}
    for mat in mats:
        _, _, c, d = mat.entries
        if not c.is_zero:
            ratio = d / c
            if ratio.is_rational:
                centers.add(Fraction(-ratio.a))
    best = None
    for y0 in _SUGGEST_HEIGHTS:
        for x0 in sorted(centers):
            pts = ((x0, y0), (x0 + y0 / 8, y0 * Fraction(9, 10)))
            score = None
            for x, y in pts:
                worst_here = QuadElem.of(y)
                for mat in mats:
                    _, yi = _exact_image(mat, x, y)
                    if (yi - worst_here).sign() < 0:
                        worst_here = yi
                if score is None or (worst_here - score).sign() < 0:
                    score = worst_here
            if best is None or (score - best[0]).sign() > 0:
                best = (score, pts)
    if best is None or (best[0] - y_min).sign() < 0:
        raise ConfigurationError(
            f"no candidate points keep all images of {congruence.id} above "
            f"y_min={y_min}")
    return best[1]


# -- the stretch exponent and the power lattice ---------------------------------


def lambda_compute(cfg: Optional[EvalConfig] = None) -> mpf:
    """The exponent tying the two diagonal stretches together:
    STRETCH_BASE ** lambda = H3_EIGENVALUE, both inputs exact."""
    cfg = cfg or DEFAULT_CONFIG
    with mp.workprec(cfg.precision):
        return mp.log(_to_mpf(H3_EIGENVALUE)) / mp.log(_to_mpf(STRETCH_BASE))


def lambda_rational_exclusion(max_denominator: int = 50) -> bool:
    """Exactly exclude rational exponents p/q with |q| <= max_denominator:
    powering in the quadratic field, STRETCH_BASE^p never equals
    H3_EIGENVALUE^q.  (A bounded check; irrationality itself is assumed.)"""
    with mp.workprec(128):
        lam = float(lambda_compute())
    for q in range(1, max_denominator + 1):
        t = lam * q
        for p in {math.floor(t), math.ceil(t), round(t)}:
            if STRETCH_BASE ** p == H3_EIGENVALUE ** q:
                return False
    return True


class DensityResult(NamedTuple):
    m: int
    n: int
    error: mpf


def _convergents(theta: mpf, bound: int) -> List[Tuple[int, mpf]]:
    """Continued-fraction denominators q of theta with the signed errors
    q*theta - p, largest q last, q capped by the bound."""
    out: List[Tuple[int, mpf]] = []
    p0, q0, p1, q1 = 1, 0, 0, 1
    x = theta
    for _ in range(64):
        d = q1 * theta - p1
        if q1 > bound or abs(d) < mpf(10) ** -70:
            break
        if q1 > 0:
            out.append((q1, d))
        if x == 0:
            break
        a = int(mp.floor(1 / x))
        if a < 1:
            break
        x = 1 / x - a
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
    return out


def density_search(X, tol, bound: int) -> DensityResult:
    """Integers |m|, |n| <= bound with |STRETCH_BASE^(2m + n*lambda) - X|
    <= tol, via Ostrowski-style continued-fraction descent on the target
    exponent with a brute scan fallback; failure is explicit."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    with mp.workprec(256):
        xv = _to_mpf(X) if isinstance(X, (Fraction, QuadElem)) else mpf(X)
        if xv <= 0:
            raise ValueError("the target must be positive")
        tolv = _to_mpf(Fraction(tol)) if isinstance(tol, Fraction) else mpf(tol)
        if tolv <= 0:
            raise ValueError("the tolerance must be positive")
        y = _to_mpf(STRETCH_BASE)
        lam = mp.log(_to_mpf(H3_EIGENVALUE)) / mp.log(y)
        t = mp.log(xv) / mp.log(y)

        def attempt(n: int) -> Optional[DensityResult]:
            if abs(n) > bound:
                return None
            m = int(mp.nint((t - n * lam) / 2))
            if abs(m) > bound:
                return None
            err = abs(y ** (2 * m + n * lam) - xv)
            if err <= tolv:
                return DensityResult(m, n, err)
            return None

        hit = attempt(0)
        if hit:
            return hit

        # Ostrowski-style greedy descent on u = t/2 - m - n*(lam/2).
        eta = lam / 2
        theta = eta - mp.floor(eta)
        ladder = _convergents(theta, bound)
        target = t / 2
        u = target - mp.nint(target)
        n = 0
        for q, d in reversed(ladder):
            room = (bound - abs(n)) // q
            if room == 0:
                continue
            c = int(mp.nint(u / d))
            c = max(-room, min(room, c))
            n += c * q
            u -= c * d
        for candidate in (n, -n):
            hit = attempt(candidate)
            if hit:
                return hit

        # Brute scan, cheap float screening before exact recomputation.
        lam_f, t_f = float(lam), float(t)
        screen = float(tolv / (xv * mp.log(y))) * 1.5 + 1e-12
        for absn in range(1, bound + 1):
            for cand in (absn, -absn):
                r = (t_f - cand * lam_f) / 2
                if 2 * abs(r - round(r)) <= screen:
                    hit = attempt(cand)
                    if hit:
                        return hit
        raise DensityError(
            f"no exponent pair with |m|, |n| <= {bound} reaches the target "
            f"within {mp.nstr(tolv, 5)}")


# -- decay at the cusps ----------------------------------------------------------


class CuspDecayVerdict(NamedTuple):
    ok: bool
    failures: Tuple[Tuple[str, int], ...]


def cusp_decay_check(form: FormData,
                     cfg: Optional[EvalConfig] = None) -> CuspDecayVerdict:
    """Check |f(iy)| <= 2|a_1| e^{-2 pi y} for y in {2, 4, 8} and the same
    for the inversion image.  The image expansion is the carried sign
    times the expansion itself (that is what the sign means; the relation
    is verified separately by the inversion residual), so direct
    evaluation near 0 -- where no truncated series could certify
    anything -- is never needed."""
    cfg = cfg or DEFAULT_CONFIG
    series = form.series
    shift = 1 - Fraction(series.offset)
    if shift.denominator == 1 and 0 <= shift <= series.length:
        lead = series.coefficient(1)
    else:
        lead = series.coeffs[0]
    failures: List[Tuple[str, int]] = []
    with mp.workprec(cfg.precision):
        for yv in (2, 4, 8):
            value = abs(_series_value(series, mpf(0), mpf(yv)))
            tail = _tail_bound(form.weight, series, mpf(yv))
            limit = 2 * abs(_to_mpf(lead)) * exp(-2 * pi * yv) + tail
            if value > limit:
                failures.append(("infinity", yv))
            if abs(form.sign) * value > limit:
                failures.append(("zero", yv))
    return CuspDecayVerdict(not failures, tuple(failures))


# -- the battery -----------------------------------------------------------------


_HEADLINE_STEPS = ("W", "HT2", "HT3", "g2", "R3", "S3", "delta1",
                   "H4", "H5", "H6", "H7", "delta3")


@dataclass(frozen=True)
class FormcheckReport:
    rows: Tuple[Tuple, ...]
    ok: bool
    max_residual: mpf

    def lines(self) -> List[str]:
        out = []
        for row in self.rows:
            kind = row[0]
            if kind == "CONG":
                _, cid, residual, passed = row
                out.append(f"CONG {cid} max_residual={float(residual):.2e} "
                           f"verdict={'PASS' if passed else 'FAIL'}")
            elif kind == "HECKE":
                _, p, rec_ok, stroke_ok = row
                out.append(f"HECKE p={p} "
                           f"recursion={'PASS' if rec_ok else 'FAIL'} "
                           f"stroke={'PASS' if stroke_ok else 'FAIL'}")
            else:
                _, passed = row
                out.append(f"CUSP decay verdict={'PASS' if passed else 'FAIL'}")
        out.append("FORMCHECK OK" if self.ok else "FORMCHECK FAIL")
        return out


def _battery(form: FormData) -> List[Congruence]:
    context = f_context(form.level)
    congruences = [context.axiom(a) for a in ("ax:P", "ax:H", "ax:T2", "ax:T3")]
    certificate = build_f_certificate(form.level)
    wanted = _HEADLINE_STEPS + (("delta2",) if form.level == 13 else ())
    by_id = {step.id: step.result for step in certificate.steps}
    congruences.extend(by_id[i] for i in wanted if i in by_id)
    return congruences


def run_formcheck(form: FormData, cfg: Optional[EvalConfig] = None,
                  residual_tol: Fraction = Fraction(1, 10 ** 15),
                  ) -> FormcheckReport:
    """Full numeric battery: Hecke recursion and stroke identity at p = 2
    and 3, stroke residuals for the context axioms and the certificate's
    headline congruences, and cusp decay.  Forms whose expansion does not
    start at exponent 1 are rejected."""
    if Fraction(form.series.offset) != 1:
        raise ValueError(
            f"the battery needs an expansion with leading exponent 1, "
            f"got {form.series.offset}; fractional-offset forms are rejected")
    work = cfg or DEFAULT_CONFIG
    floor = work.y_min if cfg is not None else (
        Fraction(3, 20) if form.level == 1 else Fraction(1, 52))
    fixed = work.points if cfg is not None else None
    rows: List[Tuple] = []
    ok = True
    worst = mpf(0)
    with mp.workprec(work.precision):
        tol_v = _to_mpf(Fraction(residual_tol))
        cache: Dict = {}
        for congruence in _battery(form):
            points = fixed if fixed is not None else suggest_points(
                congruence, floor)
            local = EvalConfig(precision=work.precision, points=points,
                               y_min=floor, tolerance=work.tolerance)
            residual = _residual(form, congruence, points, local, cache)
            passed = residual < tol_v
            ok = ok and passed
            worst = max(worst, residual)
            rows.append(("CONG", congruence.id, residual, passed))
        for p in (2, 3):
            ap = form.series.coefficient(p)
            rec = hecke_check(form.series, p, form.weight, ap)
            stroke = hecke_stroke_identity(form.series, p, form.weight, ap)
            ok = ok and rec.ok and stroke.ok
            rows.append(("HECKE", p, rec.ok, stroke.ok))
        decay = cusp_decay_check(form, work)
        ok = ok and decay.ok
        rows.append(("CUSP", decay.ok))
    return FormcheckReport(tuple(rows), ok, worst)


def certificate_residual_sweep(form: FormData, certificate: Certificate,
                               cfg: Optional[EvalConfig] = None) -> mpf:
    """Max stroke residual of the form over every congruence the
    certificate establishes; the numeric soundness bridge for the
    symbolic layer."""
    work = cfg or DEFAULT_CONFIG
    floor = work.y_min if cfg is not None else Fraction(3, 20)
    fixed = work.points if cfg is not None else None
    worst = mpf(0)
    with mp.workprec(work.precision):
        cache: Dict = {}
        for step in certificate.steps:
            points = fixed if fixed is not None else suggest_points(
                step.result, floor)
            local = EvalConfig(precision=work.precision, points=points,
                               y_min=floor, tolerance=work.tolerance)
            worst = max(worst, _residual(form, step.result, points, local,
                                         cache))
    return worst
