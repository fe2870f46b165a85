"""Concrete stability conditions from Ext-exceptional pairs.

A record stores a heart generated by a shifted adjacent pair together with
the two central-charge values, both constrained to the closed upper sector
H = {r e^{i pi phi} : r > 0, 0 < phi <= 1}.  The constructor realizes any
nonzero charge vector (Z(S_0), Z(S_1)) by one of three hearts, following the
constructive surjectivity argument: shift each object so its charge lands in
H, using the pair (S_0, S_1), (S_1, S_2), or (S_{-1}, S_0) according to
which coordinates vanish.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .atlas import ChartPoint
from .ksequence import central_charge
from .mutation import ExcLabel, ext_exceptional_violations


def in_sector(c: complex) -> bool:
    """Membership in H: open upper half plane plus the negative real axis."""
    return c.imag > 0.0 or (c.imag == 0.0 and c.real < 0.0)


def sector_phase(c: complex) -> float:
    """Phase in (0, 1] of a charge in H (Arg/pi with Arg(-1) = pi)."""
    phi = cmath.phase(c) / math.pi
    return 1.0 if phi == -1.0 else phi


@dataclass(frozen=True)
class StabilityRecord:
    """Heart (e1, e2) = shifted adjacent pair, with charges Z(e1), Z(e2)."""

    n: int
    heart: tuple[ExcLabel, ExcLabel]
    charge1: complex
    charge2: complex

    @property
    def phases(self) -> tuple[float, float]:
        """Phases of the heart simples, each in (0, 1]."""
        return sector_phase(self.charge1), sector_phase(self.charge2)

    def charge_vector(self) -> tuple[complex, complex]:
        """Reconstruct (Z(S_0), Z(S_1)) from the heart data.

        The classes of the heart simples form a basis of the lattice with
        determinant +-1, so the 2x2 solve is exact up to rounding.
        """
        c1 = self.heart[0].kclass(self.n)
        c2 = self.heart[1].kclass(self.n)
        det = c1.c0 * c2.c1 - c1.c1 * c2.c0
        z0 = (c2.c1 * self.charge1 - c1.c1 * self.charge2) / det
        z1 = (c1.c0 * self.charge2 - c2.c0 * self.charge1) / det
        return z0, z1

    def object_phase(self, which: int) -> float:
        """Phase of the underlying unshifted S_k for heart slot which (0 or 1)."""
        label = self.heart[which]
        return self.phases[which] - label.shift

    def chart_point(self) -> ChartPoint | None:
        """Chart coordinates (k, z, w) when the two phases are strict.

        The chart index is the smaller object index of the heart pair; None
        when the phases coincide (anti-proportional charges), since chart
        membership requires the strict inequality.
        """
        k = self.heart[0].index
        lo = self.object_phase(0)
        hi = self.object_phase(1)
        if hi <= lo:
            return None
        z = math.log(abs(self.charge1)) + 1j * math.pi * lo
        w = math.log(abs(self.charge2 / self.charge1)) + 1j * math.pi * (hi - lo)
        return ChartPoint(self.n, k, z, w)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "heart": [
                {"index": e.index, "shift": e.shift} for e in self.heart
            ],
            "charges": [
                [self.charge1.real, self.charge1.imag],
                [self.charge2.real, self.charge2.imag],
            ],
            "phases": list(self.phases),
        }

    @classmethod
    def from_json(cls, data: dict) -> "StabilityRecord":
        heart = tuple(ExcLabel(e["index"], e["shift"]) for e in data["heart"])
        (r1, i1), (r2, i2) = data["charges"]
        return cls(data["n"], heart, complex(r1, i1), complex(r2, i2))


def _eps(c: complex) -> int:
    return 0 if in_sector(c) else 1


def construct(n: int, z0: complex, z1: complex) -> StabilityRecord:
    """Stability condition with Z(S_0) = z0, Z(S_1) = z1, any (z0, z1) != (0, 0)."""
    z0 = complex(z0)
    z1 = complex(z1)
    if z0 == 0 and z1 == 0:
        raise ValueError("(0, 0) is not in the image of the central charge")
    if z0 != 0 and z1 != 0:
        e0, e1 = _eps(z0), _eps(z1)
        heart = (ExcLabel(0, 2 - e0), ExcLabel(1, -e1))
        charges = ((-1) ** e0 * z0, (-1) ** e1 * z1)
    elif z0 == 0:
        e = _eps(z1)
        heart = (ExcLabel(1, 2 - e), ExcLabel(2, -e))
        charges = ((-1) ** e * z1, (-1) ** e * n * z1)
    else:
        e = _eps(z0)
        heart = (ExcLabel(-1, 2 - e), ExcLabel(0, -e))
        charges = ((-1) ** e * n * z0, (-1) ** e * z0)
    return StabilityRecord(n, heart, charges[0], charges[1])


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations)}


def validate(rec: StabilityRecord, cone_samples: int = 16) -> ValidationReport:
    """Check the stability-function axioms on the record; never raises.

    Charges must lie in H, the shifted heart pair must be Ext-exceptional,
    and sampled points of the positive cone of charges must stay in H (the
    Harder-Narasimhan property is automatic for this finite-length heart).
    """
    problems: list[str] = []
    for name, c in (("charge1", rec.charge1), ("charge2", rec.charge2)):
        if c == 0:
            problems.append(f"{name} vanishes")
        elif not in_sector(c):
            problems.append(
                f"{name} = {c} outside H (phase must be in (0, 1])"
            )
    e1, e2 = rec.heart
    if e2.index - e1.index != 1:
        problems.append(f"heart pair ({e1}, {e2}) is not adjacent")
    else:
        problems.extend(ext_exceptional_violations(rec.n, rec.heart))
    if not problems:
        for i in range(1, cone_samples + 1):
            t = i / (cone_samples + 1)
            c = t * rec.charge1 + (1.0 - t) * rec.charge2
            if not in_sector(c):
                problems.append(f"positive-cone sample {c} escapes H")
                break
    return ValidationReport(tuple(problems))


@dataclass(frozen=True)
class HNResult:
    """Harder-Narasimhan factors: (phase, summands) with phases strictly down."""

    factors: tuple[tuple[float, tuple[tuple[ExcLabel, int], ...]], ...]

    @property
    def phi_plus(self) -> float:
        return self.factors[0][0]

    @property
    def phi_minus(self) -> float:
        return self.factors[-1][0]


def hn_direct_sum(
    rec: StabilityRecord, parts: list[tuple[ExcLabel, int]]
) -> HNResult:
    """HN decomposition of a direct sum of shifted heart simples.

    Each part must be a shift of one of the two heart simples; a shift by
    [s] moves the phase by s.  Parts of equal phase merge into one
    semistable factor.
    """
    if not parts:
        raise ValueError("empty direct sum has no HN filtration")
    simples = {
        e.canonical(rec.n).index: (e.canonical(rec.n), rec.phases[i])
        for i, e in enumerate(rec.heart)
    }
    buckets: dict[float, list[tuple[ExcLabel, int]]] = {}
    for label, mult in parts:
        if mult <= 0:
            raise ValueError(f"multiplicity must be positive, got {mult}")
        canon = label.canonical(rec.n)
        if canon.index not in simples:
            raise ValueError(f"{label} is not generated by the heart simples")
        simple, phi = simples[canon.index]
        phase = phi + (canon.shift - simple.shift)
        buckets.setdefault(phase, []).append((label, mult))
    factors = tuple(
        (phase, tuple(buckets[phase])) for phase in sorted(buckets, reverse=True)
    )
    return HNResult(factors)


def sigma_minus1(n: int) -> StabilityRecord:
    """The basepoint common to all chart overlaps: Z(S_0[1]) = -1, Z(S_1) = 1 + i."""
    rec = StabilityRecord(n, (ExcLabel(0, 1), ExcLabel(1, 0)), -1.0 + 0j, 1.0 + 1j)
    assert abs(central_charge(n, 0, *rec.charge_vector()) - 1.0) < 1e-12
    return rec
