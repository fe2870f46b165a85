"""Chart coordinates, transition maps, the C-action, and phases on the overlap.

A chart point (k, z, w) with Im w > 0 encodes the stability condition with

    Z(S_k) = e^z,  Z(S_{k+1}) = e^{z+w},
    phase(S_k) = Im z / pi,  phase(S_{k+1}) = (Im z + Im w) / pi.

Charts overlap exactly on the strip 0 < Im w < pi, where the transition maps
phi_k (full coordinates) and psi_k (C-quotient) are Moebius in u = e^w with
integer matrices of determinant 1.  All logarithms are principal-branch: on
the strip the Moebius arguments stay off the negative real axis (they lie in
the open upper or lower half plane except for the chart-0 constants), so the
principal branch is the continuous choice, and the strip maps into itself.

Note on the strip height: the overlap corresponds to the phase gap
phase(S_{k+1}) - phase(S_k) < 1, i.e. Im w < pi in these coordinates, since
phases carry a factor 1/pi.  We use the bound pi uniformly.  The upper edge
Im w = pi (phase gap exactly 1) is treated as non-overlap.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .ksequence import a_pair, a_seq

_TWO_PI = 2.0 * math.pi


def _mexp(z):
    """exp that follows the operand's precision (complex or mpmath)."""
    if isinstance(z, (complex, float, int)):
        return cmath.exp(z)
    import mpmath

    return mpmath.exp(z)


def _mlog(z):
    """Principal log that follows the operand's precision."""
    if isinstance(z, (complex, float, int)):
        return cmath.log(z)
    import mpmath

    return mpmath.log(z)


def in_strip(w: complex) -> bool:
    """True when w lies in the open overlap strip 0 < Im w < pi."""
    return 0.0 < w.imag < math.pi


def _require_strip(w: complex, who: str) -> None:
    if not in_strip(w):
        raise ValueError(f"{who} needs 0 < Im w < pi, got Im w = {w.imag}")


@dataclass(frozen=True)
class ChartPoint:
    """Point (k, z, w) of the chart around the stable pair (S_k, S_{k+1}).

    For n = 1 the chart index is canonical mod 3: S_{k+3} = S_k[1], and a
    wrap of three charts advances z by i*pi.
    """

    n: int
    k: int
    z: complex
    w: complex

    def __post_init__(self):
        if self.w.imag <= 0.0:
            raise ValueError(f"chart point needs Im w > 0, got {self.w.imag}")
        if self.n == 1:
            wraps, idx = divmod(self.k, 3)
            if wraps:
                object.__setattr__(self, "k", idx)
                object.__setattr__(self, "z", self.z + 1j * math.pi * wraps)

    def charges(self) -> tuple[complex, complex]:
        """(Z(S_k), Z(S_{k+1})) of the encoded stability condition."""
        return cmath.exp(self.z), cmath.exp(self.z + self.w)

    def quotient(self) -> "QuotientPoint":
        return QuotientPoint(self.n, self.k, self.w)


@dataclass(frozen=True)
class QuotientPoint:
    """C-orbit of a chart point: (k, w) with Im w > 0, canonicalized.

    Points in the overlap strip are re-expressed in chart 0, so equal orbits
    have equal canonical coordinates no matter which chart produced them.
    """

    n: int
    k: int
    w: complex

    def __post_init__(self):
        if self.w.imag <= 0.0:
            raise ValueError(f"quotient point needs Im w > 0, got {self.w.imag}")
        k = self.k % 3 if self.n == 1 else self.k
        w = self.w
        if k != 0 and in_strip(w):
            w = psi_k_inv(self.n, k, w)
            k = 0
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "w", w)


def phi_k(n: int, k: int, z: complex, w: complex) -> tuple[complex, complex]:
    """Chart transition on the overlap strip: chart-0 (z, w) to chart-k coordinates."""
    _require_strip(w, "phi_k")
    akm1, ak = a_pair(n, k)
    ak1 = a_seq(n, k + 1)
    u = _mexp(w)
    den = ak * u - akm1
    z_new = z + _mlog(den)
    w_new = _mlog((ak1 * u - ak) / den)
    assert in_strip(w_new), "transition left the overlap strip"
    return z_new, w_new


def psi_k(n: int, k: int, w: complex) -> complex:
    """Quotient-level transition: chart-0 strip coordinate to chart k."""
    _require_strip(w, "psi_k")
    akm1, ak = a_pair(n, k)
    ak1 = a_seq(n, k + 1)
    u = _mexp(w)
    out = _mlog((ak1 * u - ak) / (ak * u - akm1))
    assert in_strip(out), "transition left the overlap strip"
    return out


def psi_k_inv(n: int, k: int, w: complex) -> complex:
    """Inverse of psi_k: chart-k strip coordinate back to chart 0.

    The inverse Moebius matrix (det 1) gives
    log((a_k - a_{k-1} e^w) / (a_{k+1} - a_k e^w)).
    """
    _require_strip(w, "psi_k_inv")
    akm1, ak = a_pair(n, k)
    ak1 = a_seq(n, k + 1)
    u = _mexp(w)
    out = _mlog((ak - akm1 * u) / (ak1 - ak * u))
    assert in_strip(out), "transition left the overlap strip"
    return out


def chart_to_zero(n: int, k: int, z: complex, w: complex) -> tuple[complex, complex]:
    """Inverse of phi_k on the overlap strip: chart-k to chart-0 coordinates."""
    _require_strip(w, "chart_to_zero")
    w0 = psi_k_inv(n, k, w)
    akm1, ak = a_pair(n, k)
    z0 = z - _mlog(ak * _mexp(w0) - akm1)
    return z0, w0


def c_action(zp: complex, pt: ChartPoint) -> ChartPoint:
    """Translation part of the C-action: charges scale by e^zp, w untouched."""
    return ChartPoint(pt.n, pt.k, pt.z + zp, pt.w)


def g_k(n: int, k: int, z: complex, w: complex) -> tuple[complex, complex]:
    """Central charge (Z(S_0), Z(S_1)) of the chart-k point (z, w).

    The raw formula divides by a_{k-1} a_{k+1} - a_k^2, which is exactly -1,
    so this is (a_{k+1} e^z - a_k e^{z+w}, a_k e^z - a_{k-1} e^{z+w}).
    """
    if w.imag <= 0.0:
        raise ValueError(f"g_k needs Im w > 0, got {w.imag}")
    akm1, ak = a_pair(n, k)
    ak1 = a_seq(n, k + 1)
    ez = _mexp(z)
    ezw = _mexp(z + w)
    return ak1 * ez - ak * ezw, ak * ez - akm1 * ezw


def exceptional_phase(n: int, j: int, pt: ChartPoint) -> float:
    """Phase of S_j at a chart-0 overlap point; strictly increasing in j.

    Z(S_j) = e^z (a_j e^w - a_{j-1}) and for n >= 2 the parenthesis has
    imaginary part of the sign of a_j, so its principal argument is the
    phase correction: in (0, pi) for j >= 1 and (-pi, 0] for j <= 0.  For
    n = 1 the sequence is periodic and the principal branch would wrap, so
    the index is folded via S_{j+3} = S_j[1] (each wrap adds 1 to the phase).
    """
    if pt.k != 0:
        raise ValueError("exceptional_phase expects a chart-0 point")
    _require_strip(pt.w, "exceptional_phase")
    wraps = 0
    if n == 1:
        wraps, j = divmod(j, 3)
    ajm1, aj = a_pair(n, j)
    arg = cmath.phase(aj * cmath.exp(pt.w) - ajm1)
    return pt.z.imag / math.pi + arg / math.pi + wraps
