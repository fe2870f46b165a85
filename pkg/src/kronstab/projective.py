"""CP^1 arithmetic, the integer Moebius symmetry, and the removed-set geometry.

The map from the glued quotient to CP^1 sends a chart-k point w to

    [a_k e^w - a_{k+1} : a_{k-1} e^w - a_k],

which is the chart-0 image [1 : e^w] moved by the inverse k-th power of the
integer matrix G_n = (0, 1; -1, n).  Matrices act by
[z0 : z1] -> [a z0 + b z1 : c z0 + d z1]; this convention is fixed by
requiring G_n^{-k} . [1 : e^w] to reproduce the displayed chart image, and
the verifying computation lives in the test suite.

Distances on CP^1 are chordal: d(p, q) = |p0 q1 - p1 q0| / (|p| |q|),
ranging over [0, 1].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .atlas import QuotientPoint, _mexp, in_strip
from .ksequence import a_pair, a_seq, ratio_limits

_MAX_RAY_SCAN = 2_000_000


@dataclass(frozen=True)
class ProjPoint:
    """Point [z0 : z1] of CP^1, stored with the larger coordinate set to 1."""

    z0: complex
    z1: complex

    def __post_init__(self):
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "z1", complex(self.z1))
        if self.z0 == 0 and self.z1 == 0:
            raise ValueError("[0 : 0] is not a point of CP^1")
        if abs(self.z0) >= abs(self.z1):
            object.__setattr__(self, "z1", self.z1 / self.z0)
            object.__setattr__(self, "z0", complex(1.0))
        else:
            object.__setattr__(self, "z0", self.z0 / self.z1)
            object.__setattr__(self, "z1", complex(1.0))

    @classmethod
    def from_affine(cls, lam: complex) -> "ProjPoint":
        return cls(complex(1.0), complex(lam))

    def affine(self) -> complex | None:
        """z1/z0, or None for the point at infinity [0 : 1]."""
        if self.z0 == 0:
            return None
        return self.z1 / self.z0

    def norm(self) -> float:
        return math.hypot(abs(self.z0), abs(self.z1))

    def isclose(self, other: "ProjPoint", tol: float = 1e-9) -> bool:
        return chordal(self, other) <= tol


def chordal(p: ProjPoint, q: ProjPoint) -> float:
    """Chordal (Fubini-Study) distance in [0, 1]."""
    return abs(p.z0 * q.z1 - p.z1 * q.z0) / (p.norm() * q.norm())


@dataclass(frozen=True)
class MobiusPSL2:
    """Integer matrix (a, b; c, d) with ad - bc = 1, modulo overall sign.

    Acts on CP^1 by [z0 : z1] -> [a z0 + b z1 : c z0 + d z1].
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")
        for entry in (self.a, self.b, self.c, self.d):
            if entry > 0:
                break
            if entry < 0:
                object.__setattr__(self, "a", -self.a)
                object.__setattr__(self, "b", -self.b)
                object.__setattr__(self, "c", -self.c)
                object.__setattr__(self, "d", -self.d)
                break

    def __matmul__(self, other: "MobiusPSL2") -> "MobiusPSL2":
        return MobiusPSL2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusPSL2":
        return MobiusPSL2(self.d, -self.b, -self.c, self.a)

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(
            self.a * p.z0 + self.b * p.z1, self.c * p.z0 + self.d * p.z1
        )

    @classmethod
    def identity(cls) -> "MobiusPSL2":
        return cls(1, 0, 0, 1)


def g_matrix(n: int) -> MobiusPSL2:
    """The generator G_n = (0, 1; -1, n)."""
    return MobiusPSL2(0, 1, -1, n)


def g_power(n: int, k: int) -> MobiusPSL2:
    """G_n^k = (-a_{k-1}, a_k; -a_k, a_{k+1}), exactly in integers."""
    akm1, ak = a_pair(n, k)
    return MobiusPSL2(-akm1, ak, -ak, a_seq(n, k + 1))


def chi_hom(n: int, k: int, w: complex) -> tuple[complex, complex]:
    """Unnormalized homogeneous coordinates of the chart-k image.

    Works at the precision of the operand (complex, or mpmath types for
    extended-precision identity checks; the integer coefficients grow like
    lam^k, so double precision loses about 2k log10(lam) digits here).
    """
    if w.imag <= 0.0:
        raise ValueError(f"chi needs Im w > 0, got {w.imag}")
    akm1, ak = a_pair(n, k)
    ak1 = a_seq(n, k + 1)
    u = _mexp(w)
    return ak * u - ak1, akm1 * u - ak


def chi(n: int, k: int, w: complex) -> ProjPoint:
    """Image in CP^1 of the chart-k quotient coordinate w (any Im w > 0)."""
    return ProjPoint(*chi_hom(n, k, complex(w)))


def chi_point(pt: QuotientPoint) -> ProjPoint:
    return chi(pt.n, pt.k, pt.w)


def fixed_points(n: int) -> list[ProjPoint]:
    """Fixed points of G_n: [1 : lam] with lam^2 - n lam + 1 = 0.

    Two real points for n > 2, the single [1 : 1] for n = 2, and a complex
    conjugate pair for n = 1 (diagnostic only; not part of any removed set).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 2:
        return [ProjPoint.from_affine(1.0)]
    if n == 1:
        root = cmath.sqrt(complex(n * n - 4))
        return [ProjPoint.from_affine((n - root) / 2), ProjPoint.from_affine((n + root) / 2)]
    lo, hi = ratio_limits(n)
    return [ProjPoint.from_affine(lo), ProjPoint.from_affine(hi)]


@lru_cache(maxsize=64)
def exceptional_rays(n: int, tol: float) -> list[tuple[int, ProjPoint]]:
    """Removed ray points [a_k : a_{k+1}], scanned until they sink into the limit.

    For n = 1 the sequence is periodic and only k in {0, 1, 2} occur.  For
    n >= 2 the scan in each direction stops once consecutive points are
    within tol of each other (they then lie within tol of the limiting
    fixed point, which the band / fixed-point checks take over).  The pairs
    (a_k, a_{k+1}) are advanced incrementally, so the scan is linear in its
    own length.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if n == 1:
        return [(k, ProjPoint(a_seq(1, k), a_seq(1, k + 1))) for k in range(3)]
    rays = []
    for direction in (1, -1):
        k = 0 if direction == 1 else -1
        lo, hi = a_pair(n, k + 1)  # (a_k, a_{k+1})
        prev = None
        for _ in range(_MAX_RAY_SCAN):
            p = ProjPoint(lo, hi)
            rays.append((k, p))
            if prev is not None and chordal(prev, p) < tol:
                break
            prev = p
            k += direction
            if direction == 1:
                lo, hi = hi, n * hi - lo
            else:
                lo, hi = n * lo - hi, lo
    return rays


class VerdictKind(Enum):
    REGULAR = "Regular"
    EXCEPTIONAL_RAY = "ExceptionalRay"
    LIMIT_BAND = "LimitBand"
    FIXED_POINT = "FixedPoint"


@dataclass(frozen=True)
class RemovedSetVerdict:
    """Classification of a CP^1 point against the removed set of chi_n."""

    kind: VerdictKind
    detail: int | float | None = None

    @property
    def removed(self) -> bool:
        return self.kind is not VerdictKind.REGULAR


def _band_distance(n: int, p: ProjPoint) -> float:
    """Chordal-scale distance from p to the real arc [1 : lam], lam in the limits."""
    lam = p.affine()
    if lam is None:
        return 1.0
    lo, hi = ratio_limits(n)
    x = min(max(lam.real, lo), hi)
    return chordal(p, ProjPoint.from_affine(x))


def classify(n: int, p: ProjPoint, tol: float = 1e-9) -> RemovedSetVerdict:
    """One verdict per point: fixed point, nearest removed ray, band, or Regular.

    Fixed points win over rays: the rays accumulate at the fixed points
    geometrically fast, so within tol of a fixed point arbitrarily deep ray
    indices would match and the fixed-point verdict is the meaningful one.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if n == 2 and chordal(p, ProjPoint.from_affine(1.0)) < tol:
        return RemovedSetVerdict(VerdictKind.FIXED_POINT, 1.0)
    if n > 2:
        for lam in ratio_limits(n):
            if chordal(p, ProjPoint.from_affine(lam)) < tol:
                return RemovedSetVerdict(VerdictKind.FIXED_POINT, lam)
    best_k, best_d = None, math.inf
    for k, ray in exceptional_rays(n, tol):
        d = chordal(p, ray)
        if d < best_d:
            best_k, best_d = k, d
    if best_d < tol:
        return RemovedSetVerdict(VerdictKind.EXCEPTIONAL_RAY, best_k)
    if n > 2 and _band_distance(n, p) < tol:
        return RemovedSetVerdict(VerdictKind.LIMIT_BAND, p.affine().real)
    return RemovedSetVerdict(VerdictKind.REGULAR)


def removed_distance(n: int, p: ProjPoint, scan_tol: float = 1e-6) -> float:
    """Chordal distance from p to the removed set (scan resolution scan_tol)."""
    d = min(chordal(p, ray) for _, ray in exceptional_rays(n, scan_tol))
    if n == 2:
        d = min(d, chordal(p, ProjPoint.from_affine(1.0)))
    elif n > 2:
        d = min(d, _band_distance(n, p))
    return d


def fiber(
    n: int, p: ProjPoint, im_max: float, k_max: int
) -> list[QuotientPoint]:
    """All chart preimages of a Regular point with 0 < Im w <= im_max, |k| <= k_max.

    Per chart the affine equation is linear in u = e^w, so the solutions are
    w = Log u + 2 pi i m; overlap-strip solutions are canonicalized to chart 0
    and deduplicated across charts.
    """
    if im_max <= 0.0:
        raise ValueError(f"im_max must be positive, got {im_max}")
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    if classify(n, p).removed:
        raise ValueError("fiber enumeration requires a Regular point")
    charts = range(3) if n == 1 else range(-k_max, k_max + 1)
    seen: set[tuple[int, complex]] = set()
    out: list[QuotientPoint] = []
    for k in charts:
        u = chart_solve(n, k, p)
        base = cmath.log(u)
        m = 0
        while True:
            w = base + 2j * math.pi * m
            if w.imag > im_max:
                break
            if w.imag > 0.0:
                q = QuotientPoint(n, k, w)
                key = (q.k, complex(round(q.w.real, 9), round(q.w.imag, 9)))
                if key not in seen:
                    seen.add(key)
                    out.append(q)
            m += 1
    out.sort(key=lambda q: (q.k, q.w.imag, q.w.real))
    return out


def chart_solve(n: int, k: int, p: ProjPoint) -> complex:
    """Solve chi(n, k, w) = p for u = e^w; finite and nonzero off the removed set."""
    akm1, ak = a_pair(n, k)
    ak1 = a_seq(n, k + 1)
    den = ak * p.z1 - akm1 * p.z0
    if den == 0:
        raise ZeroDivisionError(f"point sits on the puncture of chart {k}")
    return (ak1 * p.z1 - ak * p.z0) / den
