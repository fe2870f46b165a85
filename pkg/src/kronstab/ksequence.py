"""Integer sequence a_k, K-theory classes, Euler form, and slit parameters.

Everything downstream (transition maps, Moebius matrices, central charges)
is controlled by the sequence

    a_0 = 0,  a_1 = 1,  a_k = n*a_{k-1} - a_{k-2},  a_{-k} = -a_k,

computed here in exact integer arithmetic.  a_k grows like
((n + sqrt(n^2-4))/2)^k, so 64-bit arithmetic would overflow around
k ~ 40 already for n = 3; Python ints make all the determinant-type
identities exact at any index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def a_seq(n: int, k: int) -> int:
    """Exact a_k for any integer k (antisymmetric continuation for k < 0)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 0:
        return -a_seq(n, -k)
    prev, cur = 0, 1  # a_0, a_1
    if k == 0:
        return 0
    for _ in range(k - 1):
        prev, cur = cur, n * cur - prev
    return cur


def a_pair(n: int, k: int) -> tuple[int, int]:
    """(a_{k-1}, a_k) in one pass; the pair every chart formula consumes."""
    return a_seq(n, k - 1), a_seq(n, k)


def closed_form(n: int, k: int) -> float:
    """Binet-style evaluation (lam_+^k - lam_-^k)/sqrt(n^2-4), n > 2 only."""
    if n <= 2:
        raise ValueError(f"closed form degenerates for n <= 2, got n={n}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    root = math.sqrt(n * n - 4)
    lam_hi = (n + root) / 2.0
    lam_lo = (n - root) / 2.0
    return (lam_hi**k - lam_lo**k) / root


def ratio_limits(n: int) -> tuple[float, float]:
    """Limits (a_k/a_{k+1}, a_{k+1}/a_k) as k -> inf; both 1 when n = 2."""
    if n < 2:
        raise ValueError(f"ratio limits need n >= 2, got {n}")
    root = math.sqrt(n * n - 4)
    return (n - root) / 2.0, (n + root) / 2.0


@dataclass(frozen=True)
class KClass:
    """Element of the rank-2 Grothendieck lattice in the basis ([S_0], [S_1]).

    Negation is the class of the shift by [1].
    """

    c0: int
    c1: int

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self) -> "KClass":
        return KClass(-self.c0, -self.c1)

    def __rmul__(self, m: int) -> "KClass":
        return KClass(m * self.c0, m * self.c1)

    def charge(self, z0: complex, z1: complex) -> complex:
        """Value of the central charge determined by Z(S_0)=z0, Z(S_1)=z1."""
        return self.c0 * z0 + self.c1 * z1


def kclass_of(n: int, k: int, shift: int = 0) -> KClass:
    """Class of S_k[shift]: (-1)^shift * (-a_{k-1}, a_k)."""
    akm1, ak = a_pair(n, k)
    sign = -1 if shift % 2 else 1
    return KClass(sign * -akm1, sign * ak)


def central_charge(n: int, k: int, z0: complex, z1: complex) -> complex:
    """Z(S_k) = a_k z1 - a_{k-1} z0 for the charge with Z(S_0)=z0, Z(S_1)=z1."""
    akm1, ak = a_pair(n, k)
    return ak * z1 - akm1 * z0


def euler_form(n: int, x: KClass, y: KClass) -> int:
    """Euler pairing chi(x, y) with Gram matrix (1, n; 0, 1).

    The Gram matrix encodes hom(S_0,S_0)=hom(S_1,S_1)=C in degree 0 and the
    n-dimensional degree-0 hom from S_0 to S_1; it is validated by the
    invariant chi([S_k],[S_{k+1}]) = n rather than assumed.
    """
    return x.c0 * y.c0 + x.c1 * y.c1 + n * x.c0 * y.c1


@dataclass(frozen=True)
class SlitParams:
    """Slit abscissae of the quotient-space picture, natural-log units.

    x maps k >= 1 to log(a_k/a_{k+1}) < 0 and -k to its negative; the slits
    accumulate at the band endpoints b = log((n-sqrt(n^2-4))/2) and c = -b,
    which are populated only for n > 2.
    """

    n: int
    x: dict[int, float]
    b: float | None
    c: float | None


def slit_params(n: int, kmax: int) -> SlitParams:
    """Slit abscissae x_k for 1 <= |k| <= kmax plus band endpoints."""
    if n < 2:
        raise ValueError(f"slit parameters need n >= 2, got {n}")
    if kmax < 1:
        raise ValueError(f"kmax must be >= 1, got {kmax}")
    x: dict[int, float] = {}
    for k in range(1, kmax + 1):
        xk = math.log(a_seq(n, k) / a_seq(n, k + 1))
        x[k] = xk
        x[-k] = -xk
    if n > 2:
        b = math.log(ratio_limits(n)[0])
        return SlitParams(n, x, b, -b)
    return SlitParams(n, x, None, None)
