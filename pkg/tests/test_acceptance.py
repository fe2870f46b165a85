"""Acceptance suite: one test per release criterion, one pass/fail line each.

Run with -s (or read the -v test lines) to see the per-criterion verdicts.
The gluing identities of criterion 3 are conditioned like a_k^2, which is
beyond double precision at |k| = 8; they are checked at 40 digits through
the same library code paths (the maps accept mpmath operands).
"""

import cmath
import json
import math
import random
import time

import mpmath

from kronstab import (
    ChartPoint,
    MobiusPSL2,
    PathSample,
    ProjPoint,
    QuotientPoint,
    RemovedPointOnPath,
    a_seq,
    chordal,
    circle_path,
    closed_form,
    construct,
    exceptional_phase,
    fixed_points,
    g_matrix,
    g_power,
    lift_quotient,
    lift_total,
    monodromy,
    phi_k,
    psi_k,
    puncture_start,
    ratio_limits,
    sigma_minus1,
    validate,
)
from kronstab.atlas import g_k, in_strip
from kronstab.ksequence import slit_params
from kronstab.lifting import LiftError
from kronstab.projective import chart_solve, chi, chi_hom, classify, removed_distance
from kronstab.cli import main as cli_main


def _verdict(num, label, failures):
    status = "PASS" if not failures else "FAIL"
    print(f"[{status}] criterion {num}: {label}")
    assert not failures, f"criterion {num} ({label}): " + "; ".join(failures[:5])


def test_criterion_1_sequence_exactness():
    failures = []
    t0 = time.monotonic()
    for n in range(1, 7):
        prev, cur = a_seq(n, -201), a_seq(n, -200)
        for k in range(-200, 201):
            nxt = n * cur - prev
            if cur * cur - nxt * prev != 1:
                failures.append(f"determinant identity fails at n={n}, k={k}")
            prev, cur = cur, nxt
    for n in range(3, 11):
        for k in range(41):
            exact = a_seq(n, k)
            approx = closed_form(n, k)
            if exact and abs(approx - exact) / exact >= 1e-10:
                failures.append(f"closed form off at n={n}, k={k}")
            if not exact and abs(approx) >= 1e-10:
                failures.append(f"closed form off at n={n}, k={k}")
    lo, hi = ratio_limits(3)
    ratios = [a_seq(3, k + 1) / a_seq(3, k) for k in range(1, 62)]
    # monotone decrease from above until the limit saturates in doubles
    for a, b in zip(ratios, ratios[1:]):
        if b >= a and a - hi > 1e-13:
            failures.append("forward ratios not monotone above saturation")
            break
    if any(r < hi - 1e-13 for r in ratios):
        failures.append("forward ratios crossed their limit")
    if abs(ratios[59] - hi) >= 1e-8:
        failures.append(f"ratio at k=60 off by {abs(ratios[59] - hi)}")
    inv = [1.0 / r for r in ratios]
    for a, b in zip(inv, inv[1:]):
        if b <= a and lo - a > 1e-13:
            failures.append("inverse ratios not monotone below saturation")
            break
    if abs(inv[59] - lo) >= 1e-8:
        failures.append("inverse ratio at k=60 off")
    elapsed = time.monotonic() - t0
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s exceeds 1s")
    _verdict(1, "exact sequence identities and ratio limits", failures)


def test_criterion_2_n1_specialization():
    rng = random.Random(2024)
    failures = []
    worst = 0.0
    for _ in range(200):
        z = complex(rng.uniform(-2, 2), rng.uniform(-3, 3))
        w = complex(rng.uniform(-2, 2), rng.uniform(1e-3, math.pi - 1e-3))
        # chart-1 and chart-2 transitions in their special n=1 form
        s1 = (z + w, cmath.log(1.0 - cmath.exp(-w)))
        lg = cmath.log(cmath.exp(w) - 1.0)
        s2 = (z + lg, 1j * math.pi - lg)
        g1 = phi_k(1, 1, z, w)
        g2 = phi_k(1, 2, z, w)
        worst = max(
            worst,
            abs(g1[0] - s1[0]),
            abs(g1[1] - s1[1]),
            abs(g2[0] - s2[0]),
            abs(g2[1] - s2[1]),
        )
    if worst >= 1e-12:
        failures.append(f"max deviation {worst}")
    _verdict(2, "general transition specializes to the n=1 formulas", failures)


def test_criterion_3_gluing_coherence():
    mpmath.mp.dps = 40
    rng = random.Random(3)
    failures = []
    worst_chi = worst_g = 0.0
    for _ in range(500):
        n = rng.choice([1, 2, 3, 5])
        k = rng.randint(-8, 8)
        z = mpmath.mpc(rng.uniform(-1, 1), rng.uniform(-3, 3))
        w = mpmath.mpc(rng.uniform(-2, 2), rng.uniform(0.01, math.pi - 0.01))
        p = chi_hom(n, k, psi_k(n, k, w))
        q = chi_hom(n, 0, w)
        cross = abs(p[0] * q[1] - p[1] * q[0])
        norm = mpmath.sqrt(abs(p[0]) ** 2 + abs(p[1]) ** 2)
        norm *= mpmath.sqrt(abs(q[0]) ** 2 + abs(q[1]) ** 2)
        worst_chi = max(worst_chi, float(cross / norm))
        zk, wk = phi_k(n, k, z, w)
        c0, c1 = g_k(n, k, zk, wk)
        worst_g = max(
            worst_g,
            float(abs(c0 - mpmath.exp(z))),
            float(abs(c1 - mpmath.exp(z + w))),
        )
    if worst_chi >= 1e-11:
        failures.append(f"chi gluing error {worst_chi}")
    if worst_g >= 1e-11:
        failures.append(f"charge reconstruction error {worst_g}")
    _verdict(3, "chart gluing and charge reconstruction identities", failures)


def test_criterion_4_mobius_structure():
    failures = []
    for n in (1, 2, 3, 5, 9):
        g = g_matrix(n)
        acc = MobiusPSL2.identity()
        inv = MobiusPSL2.identity()
        for k in range(51):
            if g_power(n, k) != acc or g_power(n, -k) != inv:
                failures.append(f"power formula fails at n={n}, k={k}")
                break
            acc = g @ acc
            inv = g.inverse() @ inv
    if g_power(1, 3) != MobiusPSL2.identity():
        failures.append("G_1 does not have order 3")
    for n in (2, 3, 5):
        for p in fixed_points(n):
            if chordal(g_matrix(n).apply(p), p) >= 1e-12:
                failures.append(f"fixed point moves for n={n}")
    for n in (2, 3, 5):
        for k in range(-20, 21):
            m = g_power(n, -k)
            col = (m.a, m.c)
            want = (a_seq(n, k + 1), a_seq(n, k))
            if col != want and col != (-want[0], -want[1]):
                failures.append(f"puncture image wrong at n={n}, k={k}")
    _verdict(4, "integer Moebius powers, order, fixed and puncture points", failures)


def test_criterion_5_surjectivity_construction():
    rng = random.Random(5)
    failures = []
    cases = {"generic": 0, "z0_zero": 0, "z1_zero": 0}
    for i in range(10_000):
        n = rng.choice([1, 2, 3, 5, 8])
        draw = rng.random()
        if draw < 0.01:
            z0, z1 = 0.0 + 0j, complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if z1 == 0:
                continue
            cases["z0_zero"] += 1
        elif draw < 0.02:
            z0, z1 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3)), 0.0 + 0j
            if z0 == 0:
                continue
            cases["z1_zero"] += 1
        else:
            z0 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            z1 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            cases["generic"] += 1
        rec = construct(n, z0, z1)
        report = validate(rec)
        if not report.ok:
            failures.append(f"validate failed at draw {i}: {report.violations[0]}")
            break
        r0, r1 = rec.charge_vector()
        err = max(abs(r0 - z0), abs(r1 - z1))
        if err >= 1e-12:
            failures.append(f"reconstruction error {err} at draw {i}")
            break
    if min(cases.values()) == 0:
        failures.append(f"proof cases not all exercised: {cases}")
    _verdict(5, "random charges realized and validated", failures)


def test_criterion_6_sigma_minus1_consistency():
    failures = []
    for n in (1, 2, 3):
        pt = sigma_minus1(n).chart_point()
        if not in_strip(pt.w):
            failures.append(f"basepoint not in the overlap strip for n={n}")
            continue
        base = QuotientPoint(n, 0, pt.w)
        for k in range(-5, 6):
            _, wk = phi_k(n, k, pt.z, pt.w)
            q = QuotientPoint(n, k, wk)
            if q.k != base.k:
                failures.append(f"chart {k} canonicalizes to chart {q.k} (n={n})")
            elif abs(q.w - base.w) >= 1e-11:
                failures.append(
                    f"canonical coordinate differs by {abs(q.w - base.w)} "
                    f"at n={n}, k={k}"
                )
    _verdict(6, "basepoint has one canonical coordinate in every chart", failures)


def _chart0_start(n, p):
    w = cmath.log(chart_solve(n, 0, p))
    if w.imag <= 0.0:
        w += 2j * math.pi
    return QuotientPoint(n, 0, w)


def test_criterion_7_covering_behavior():
    rng = random.Random(7)
    failures = []
    t0 = time.monotonic()

    removed_cases = [
        (1, ProjPoint(1, 1), 1, 0.1),
        (2, ProjPoint(2, 3), 2, 0.03),
    ]
    for n, center, ray_k, radius in removed_cases:
        start = puncture_start(n, ray_k, circle_path(center, radius, 192).points[0])
        res = monodromy(n, center, radius, start, 192)
        if res.closed_up or res.displacement <= 1e-3:
            failures.append(f"loop around removed point closed for n={n}")

    band_center = ProjPoint.from_affine(1.0)  # inside the n=3 band
    loop = circle_path(band_center, 0.05, 64)
    try:
        lift_quotient(3, loop, _chart0_start(3, loop.points[0]))
        failures.append("band-point circle was not rejected")
    except RemovedPointOnPath:
        pass
    except LiftError as exc:
        failures.append(f"band-point circle rejected for the wrong reason: {exc}")

    radius = 0.02
    done = 0
    while done < 20:
        n = rng.choice([1, 2, 3, 5])
        p = ProjPoint(
            complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
            complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
        )
        if removed_distance(n, p) <= 4 * radius:
            continue
        done += 1
        start = _chart0_start(n, circle_path(p, radius, 160).points[0])
        res = monodromy(n, p, radius, start, 160)
        if not res.closed_up or res.displacement >= 1e-8:
            failures.append(f"regular loop failed to close (n={n}, p={p})")

    n = 2
    z0, z1 = 1 + 1j, -0.5 + 2j
    samples = 160
    pts = tuple(
        (
            cmath.exp(2j * math.pi * i / samples) * z0,
            cmath.exp(2j * math.pi * i / samples) * z1,
        )
        for i in range(samples + 1)
    )
    cp = construct(n, z0, z1).chart_point()
    rep = lift_total(n, PathSample(pts, closed=True), (cp.k, cp.z, cp.w))
    _, z_end, w_end = rep.trace[-1]
    if abs(z_end - cp.z - 2j * math.pi) >= 1e-10:
        failures.append("orbit loop did not add 2 pi i to z")
    if abs(w_end - cp.w) >= 1e-11:
        failures.append("orbit loop moved w")

    elapsed = time.monotonic() - t0
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.1f}s exceeds 10s")
    _verdict(7, "monodromy detects removed points, trivial elsewhere", failures)


def test_criterion_8_phase_monotonicity():
    rng = random.Random(8)
    failures = []
    worst = math.inf
    for _ in range(100):
        n = rng.choice([1, 2])
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        w = complex(rng.uniform(-2, 2), rng.uniform(0.05, math.pi - 0.05))
        pt = ChartPoint(n, 0, z, w)
        phases = [exceptional_phase(n, j, pt) for j in range(-15, 16)]
        worst = min(worst, min(b - a for a, b in zip(phases, phases[1:])))
    if worst <= 1e-12:
        failures.append(f"minimal phase margin {worst}")
    _verdict(8, "object phases strictly increase along the chain", failures)


def _render_csv(tmp_path, *argv):
    out = tmp_path / "fig.csv"
    code = cli_main(list(argv) + ["--format", "csv", "--out", str(out)])
    assert code == 0
    return out.read_text().strip().splitlines()


def test_criterion_9_figure_reproduction(tmp_path):
    failures = []
    for n in (2, 3):
        lines = _render_csv(tmp_path, "render", "--figure", "cn", "-n", str(n))
        params = slit_params(n, 3)
        got = {
            int(f[1]): float(f[2])
            for f in (line.split(",") for line in lines)
            if f[0] == "slit"
        }
        for k, x in params.x.items():
            if abs(got[k] - x) >= 1e-9:
                failures.append(f"slit {k} off for n={n}")
        bands = [line for line in lines if line.startswith("band,")]
        if n == 2 and bands:
            failures.append("n=2 shows a band")
        if n == 3:
            b, c = (float(v) for v in bands[0].split(",")[1:3])
            lo, hi = ratio_limits(3)
            if abs(b - math.log(lo)) >= 1e-9 or abs(c + math.log(lo)) >= 1e-9:
                failures.append("n=3 band endpoints off")

    expected_punctures = {
        1: [ProjPoint(0, 1), ProjPoint(1, 1), ProjPoint(1, 0)],
        2: [ProjPoint(k, k + 1) for k in range(-3, 4)] + [ProjPoint(1, 1)],
        3: [ProjPoint(a_seq(3, k), a_seq(3, k + 1)) for k in range(-3, 4)]
        + [ProjPoint.from_affine(lam) for lam in ratio_limits(3)],
    }
    for n in (1, 2, 3):
        lines = _render_csv(tmp_path, "render", "--figure", "chi", "-n", str(n))
        curves = []
        marks = []
        for line in lines[1:]:
            f = line.split(",")
            if f[0] == "curve":
                curves.append(f)
            elif f[0] == "puncture":
                marks.append(
                    ProjPoint(
                        complex(float(f[4]), float(f[5])),
                        complex(float(f[6]), float(f[7])),
                    )
                )
        for p in expected_punctures[n]:
            if not any(chordal(p, q) < 1e-9 for q in marks):
                failures.append(f"puncture {p} missing for n={n}")
        for q in marks:
            if not classify(n, q, 1e-6).removed:
                failures.append(f"spurious puncture {q} for n={n}")
        for f in curves:
            k, x0, t = int(f[1]), float(f[2]), float(f[3])
            p = ProjPoint(
                complex(float(f[4]), float(f[5])), complex(float(f[6]), float(f[7]))
            )
            if chordal(p, chi(n, k, complex(x0, t))) >= 1e-9:
                failures.append(f"chi curve sample off at n={n}, k={k}")

        lines = _render_csv(tmp_path, "render", "--figure", "psi", "-n", str(n))
        for line in lines[1:]:
            f = line.split(",")
            if f[0] != "curve":
                continue
            k, x0, t = int(f[1]), float(f[2]), float(f[3])
            w = complex(float(f[4]), float(f[5]))
            expect = complex(x0, t)
            if k != 0:
                expect = psi_k(n, k, expect)
            if abs(w - expect) >= 1e-9:
                failures.append(f"psi curve sample off at n={n}, k={k}")
    _verdict(9, "figure data reproduces slits, punctures, and curves", failures)
