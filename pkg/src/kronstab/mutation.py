"""Exceptional objects as labels, left/right mutations, and chart inequalities.

Objects are tracked as labels S_k[s] (index k, shift s) rather than as
representation-level data: mutation of adjacent pairs acts on indices, the
shift rider travels with the mutated slot, and all class-level computations
go through the Euler form.

Shift transport: the defining triangles give R_{F[q]}(E[p]) = (R_F E)[p] and
L_{E[p]}(F[q]) = (L_E F)[q].  This convention is a derivation (validated by
the n=1 identity R^3(S_0,S_1) = (S_0[1],S_1[1])), not a quoted rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ksequence import KClass, euler_form, kclass_of

Infinity = math.inf


@dataclass(frozen=True)
class ExcLabel:
    """Label S_index[shift] for an exceptional object."""

    index: int
    shift: int = 0

    def canonical(self, n: int) -> "ExcLabel":
        """For n = 1 fold index into {0,1,2}; S_{k+3} = S_k[1]."""
        if n != 1:
            return self
        wraps, idx = divmod(self.index, 3)
        return ExcLabel(idx, self.shift + wraps)

    def shifted(self, s: int) -> "ExcLabel":
        return ExcLabel(self.index, self.shift + s)

    def kclass(self, n: int) -> KClass:
        return kclass_of(n, self.index, self.shift)

    def __str__(self) -> str:
        return f"S_{self.index}" + (f"[{self.shift}]" if self.shift else "")


@dataclass(frozen=True)
class ExcCollection:
    """Ordered exceptional collection; for P_n a chain of adjacent indices."""

    items: tuple[ExcLabel, ...]

    def __post_init__(self):
        if len(self.items) < 2:
            raise ValueError("collection needs at least 2 objects")
        for a, b in zip(self.items, self.items[1:]):
            if b.index != a.index + 1:
                raise ValueError(
                    f"indices must increase by 1 along the chain: {a}, {b}"
                )


def _check_adjacent(pair: tuple[ExcLabel, ExcLabel]) -> None:
    a, b = pair
    if b.index != a.index + 1:
        raise ValueError(f"pair must be adjacent (S_k, S_{{k+1}}): got {a}, {b}")


def right_mutation_pair(
    pair: tuple[ExcLabel, ExcLabel]
) -> tuple[ExcLabel, ExcLabel]:
    """(S_k[p], S_{k+1}[q]) -> (S_{k+1}[q], S_{k+2}[p])."""
    _check_adjacent(pair)
    a, b = pair
    return b, ExcLabel(a.index + 2, a.shift)


def left_mutation_pair(
    pair: tuple[ExcLabel, ExcLabel]
) -> tuple[ExcLabel, ExcLabel]:
    """(S_k[p], S_{k+1}[q]) -> (S_{k-1}[q], S_k[p]); inverse of the right mutation."""
    _check_adjacent(pair)
    a, b = pair
    return ExcLabel(b.index - 2, b.shift), a


def class_mutation(
    side: str, i: int, cs: list[KClass], n: int
) -> list[KClass]:
    """Mutation at class level on a list of K-classes; i is the 1-based left slot.

    Right replaces (x, y) by (y, chi(x,y) y - x); left by (chi(x,y) x - y, x).
    These are formal operations defined for arbitrary class lists; the
    categorical identities (inverse pair, braid relations) hold when the list
    consists of classes of a genuine exceptional chain.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not 1 <= i < len(cs):
        raise IndexError(f"slot {i} out of range for list of length {len(cs)}")
    out = list(cs)
    x, y = out[i - 1], out[i]
    c = euler_form(n, x, y)
    if side == "right":
        out[i - 1], out[i] = y, c * y - x
    else:
        out[i - 1], out[i] = c * x - y, x
    return out


@dataclass(frozen=True)
class HomProfile:
    """Minimal nonvanishing hom degree between two labels, with its dimension.

    degree is +inf when all homs vanish.
    """

    degree: float
    dim: int


def hom_profile(n: int, a: ExcLabel, b: ExcLabel) -> HomProfile:
    """Hom profile of (a, b), hard-coding the known hom spaces of the chain.

    With zero shifts: forward homs (i < j) sit in degree 0, backward homs
    (i > j) in degree 1, self-homs are one-dimensional in degree 0; the
    dimensions come from the Euler form.  Shifts move the degree by
    a.shift - b.shift.
    """
    a = a.canonical(n)
    b = b.canonical(n)
    base = a.shift - b.shift
    if a.index == b.index:
        return HomProfile(base, 1)
    val = euler_form(n, kclass_of(n, a.index), kclass_of(n, b.index))
    if a.index < b.index:
        if val == 0:
            return HomProfile(Infinity, 0)
        return HomProfile(base, val)
    if val == 0:
        return HomProfile(Infinity, 0)
    return HomProfile(base + 1, -val)


def ext_shift_choice(
    pair: tuple[ExcLabel, ExcLabel], eps: tuple[int, int] = (0, 0)
) -> tuple[int, int]:
    """Shifts (p, q) = (2 - eps0, -eps1) making the shifted pair Ext-exceptional.

    The forward hom then sits in degree p - q >= 1 and there is no backward
    hom at all, so hom^{<=0} vanishes between the two shifted objects.
    """
    _check_adjacent(pair)
    e0, e1 = eps
    return 2 - e0, -e1


def ext_exceptional_violations(
    n: int, pair: tuple[ExcLabel, ExcLabel]
) -> list[str]:
    """Why the (already shifted) adjacent pair fails to be Ext-exceptional.

    Empty list means the pair generates a finite-length heart.
    """
    _check_adjacent((ExcLabel(pair[0].index), ExcLabel(pair[1].index)))
    fwd = hom_profile(n, pair[0], pair[1])
    problems = []
    if fwd.dim > 0 and fwd.degree <= 0:
        problems.append(
            f"hom({pair[0]}, {pair[1]}) nonzero in degree {fwd.degree} <= 0"
        )
    bwd = hom_profile(n, pair[1], pair[0])
    if bwd.dim > 0 and bwd.degree <= 0:
        problems.append(
            f"hom({pair[1]}, {pair[0]}) nonzero in degree {bwd.degree} <= 0"
        )
    return problems


def alpha_coeffs(
    degrees: dict[tuple[int, int], float], s: int
) -> list[float]:
    """Chart-inequality coefficients alpha_1..alpha_s from minimal hom degrees.

    alpha_s = 0 and, going backward,
    alpha_i = min_{j>i} (k_{i,j} + alpha_j) - (s - i - 1), with +inf
    propagating.  degrees maps (i, j), 1-based with i < j <= s, to k_{i,j}.
    """
    if s < 2:
        raise ValueError(f"collection length must be >= 2, got {s}")
    alpha = [0.0] * (s + 1)  # 1-based; alpha[s] = 0
    for i in range(s - 1, 0, -1):
        best = min(degrees[(i, j)] + alpha[j] for j in range(i + 1, s + 1))
        alpha[i] = best - (s - i - 1) if best != Infinity else Infinity
    return alpha[1:]
