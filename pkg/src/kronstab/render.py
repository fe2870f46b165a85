"""Figure reproduction: slit-plane diagrams, quotient-map images of grid
lines, and CP^1 images with puncture marks.

Figures are produced as data first (JSON- and CSV-serializable sample
tables whose points satisfy the defining equations exactly as computed) and
then, optionally, wrapped into an SVG.  The SVG embeds the full CSV table in
a <metadata> element, so the plotted samples can be re-checked against the
transition maps without re-running the renderer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .ksequence import ratio_limits, slit_params
from .projective import ProjPoint, chi, exceptional_rays, fixed_points
from .atlas import psi_k

FIGURES = ("cn", "psi", "chi")


@dataclass(frozen=True)
class RenderSpec:
    n: int
    figure: str = "cn"
    charts: int = 3
    grid: tuple[int, int] = (7, 40)
    out: str | None = None
    fmt: str = "svg"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.figure not in FIGURES:
            raise ValueError(f"figure must be one of {FIGURES}, got {self.figure!r}")
        if self.grid[0] < 2 or self.grid[1] < 2:
            raise ValueError(f"grid counts must be >= 2, got {self.grid}")
        if self.fmt not in ("svg", "csv", "json"):
            raise ValueError(f"format must be svg/csv/json, got {self.fmt!r}")


def figure_data(spec: RenderSpec) -> dict:
    if spec.figure == "cn":
        return _cn_data(spec)
    if spec.figure == "psi":
        return _psi_data(spec)
    return _chi_data(spec)


def _cn_data(spec: RenderSpec) -> dict:
    """Slit abscissae of the glued quotient surface, plus the band for n > 2."""
    if spec.n == 1:
        return {"figure": "cn", "n": 1, "slits": [{"k": 0, "x": 0.0}], "band": None}
    params = slit_params(spec.n, max(spec.charts, 1))
    slits = [{"k": k, "x": x} for k, x in sorted(params.x.items())]
    band = [params.b, params.c] if params.b is not None else None
    return {"figure": "cn", "n": spec.n, "slits": slits, "band": band}


def _grid_lines(spec: RenderSpec) -> list[float]:
    m = spec.grid[0]
    return [-2.0 + 4.0 * i / (m - 1) for i in range(m)]


def _psi_data(spec: RenderSpec) -> dict:
    """Images in each chart of vertical lines of the chart-0 overlap strip."""
    charts = range(3) if spec.n == 1 else range(-spec.charts, spec.charts + 1)
    m = spec.grid[1]
    curves = []
    for k in charts:
        for x0 in _grid_lines(spec):
            samples = []
            for j in range(1, m + 1):
                t = math.pi * j / (m + 1)
                w = psi_k(spec.n, k, complex(x0, t)) if k else complex(x0, t)
                samples.append({"t": t, "w": [w.real, w.imag]})
            curves.append({"k": k, "x0": x0, "samples": samples})
    return {"figure": "psi", "n": spec.n, "curves": curves}


def _chi_data(spec: RenderSpec) -> dict:
    """CP^1 images of vertical grid lines of each chart, with puncture marks."""
    charts = range(3) if spec.n == 1 else range(-spec.charts, spec.charts + 1)
    m = spec.grid[1]
    t_max = 3.0 * math.pi
    curves = []
    for k in charts:
        for x0 in _grid_lines(spec):
            samples = []
            for j in range(1, m + 1):
                t = t_max * j / (m + 1)
                p = chi(spec.n, k, complex(x0, t))
                samples.append(
                    {
                        "t": t,
                        "z0": [p.z0.real, p.z0.imag],
                        "z1": [p.z1.real, p.z1.imag],
                    }
                )
            curves.append({"k": k, "x0": x0, "samples": samples})
    punctures = []
    for k, ray in exceptional_rays(spec.n, 1e-9):
        if abs(k) <= spec.charts or spec.n == 1:
            punctures.append(_puncture(f"ray:{k}", ray))
    if spec.n == 2:
        punctures.append(_puncture("fixed", ProjPoint.from_affine(1.0)))
    elif spec.n > 2:
        for tag, p in zip(("band_lo", "band_hi"), fixed_points(spec.n)):
            punctures.append(_puncture(tag, p))
    band = None if spec.n <= 2 else list(ratio_limits(spec.n))
    return {
        "figure": "chi",
        "n": spec.n,
        "curves": curves,
        "punctures": punctures,
        "band": band,
    }


def _puncture(label: str, p: ProjPoint) -> dict:
    return {
        "label": label,
        "z0": [p.z0.real, p.z0.imag],
        "z1": [p.z1.real, p.z1.imag],
    }


def to_csv(data: dict) -> str:
    """Flatten a figure-data dict into the embedded CSV table."""
    rows = []
    if data["figure"] == "cn":
        rows.append("record,k,x")
        for s in data["slits"]:
            rows.append(f"slit,{s['k']},{s['x']!r}")
        if data["band"]:
            rows.append(f"band,{data['band'][0]!r},{data['band'][1]!r}")
    elif data["figure"] == "psi":
        rows.append("record,k,x0,t,w_re,w_im")
        for c in data["curves"]:
            for s in c["samples"]:
                rows.append(
                    f"curve,{c['k']},{c['x0']!r},{s['t']!r},"
                    f"{s['w'][0]!r},{s['w'][1]!r}"
                )
    else:
        rows.append("record,k,x0,t,z0_re,z0_im,z1_re,z1_im")
        for c in data["curves"]:
            for s in c["samples"]:
                rows.append(
                    f"curve,{c['k']},{c['x0']!r},{s['t']!r},"
                    f"{s['z0'][0]!r},{s['z0'][1]!r},{s['z1'][0]!r},{s['z1'][1]!r}"
                )
        for p in data["punctures"]:
            rows.append(
                f"puncture,{p['label']},,,"
                f"{p['z0'][0]!r},{p['z0'][1]!r},{p['z1'][0]!r},{p['z1'][1]!r}"
            )
    return "\n".join(rows) + "\n"


def _svg_polyline(points: list[tuple[float, float]], color: str) -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{coords}"/>'


_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def to_svg(data: dict) -> str:
    """Fixed-viewport SVG rendering with the CSV table embedded in metadata."""
    width, height = 900, 300
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<metadata id=\"dataset\">",
        to_csv(data),
        "</metadata>",
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]

    def tx(x, y, xlim=(-4.0, 4.0), ylim=(-2.0, 4.0)):
        px = (x - xlim[0]) / (xlim[1] - xlim[0]) * width
        py = height - (y - ylim[0]) / (ylim[1] - ylim[0]) * height
        return px, py

    if data["figure"] == "cn":
        parts.append(_svg_polyline([tx(-4, 0), tx(4, 0)], "#888888"))
        for s in data["slits"]:
            parts.append(_svg_polyline([tx(s["x"], 0), tx(s["x"], -2)], "#d62728"))
        if data["band"]:
            b, c = data["band"]
            x0, y0 = tx(b, 0)
            x1, y1 = tx(c, -2)
            parts.append(
                f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{x1 - x0:.2f}" '
                f'height="{y1 - y0:.2f}" fill="#d6272833"/>'
            )
    elif data["figure"] == "psi":
        for c in data["curves"]:
            pts = [tx(s["w"][0], s["w"][1]) for s in c["samples"]]
            parts.append(_svg_polyline(pts, _COLORS[c["k"] % len(_COLORS)]))
    else:
        for c in data["curves"]:
            pts = []
            for s in c["samples"]:
                z0 = complex(*s["z0"])
                z1 = complex(*s["z1"])
                if abs(z0) < 1e-6:
                    continue
                lam = z1 / z0
                if abs(lam) > 6:
                    continue
                pts.append(tx(lam.real, lam.imag, (-4, 4), (-3, 3)))
            if len(pts) >= 2:
                parts.append(_svg_polyline(pts, _COLORS[c["k"] % len(_COLORS)]))
        for p in data.get("punctures", []):
            z0 = complex(*p["z0"])
            z1 = complex(*p["z1"])
            if abs(z0) < 1e-6:
                continue
            lam = z1 / z0
            if abs(lam) > 6:
                continue
            px, py = tx(lam.real, lam.imag, (-4, 4), (-3, 3))
            parts.append(
                f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="none" stroke="black"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def render(spec: RenderSpec) -> str:
    """Figure output in the requested format as a string."""
    data = figure_data(spec)
    if spec.fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if spec.fmt == "csv":
        return to_csv(data)
    return to_svg(data)


def extract_csv_from_svg(svg: str) -> str:
    """Pull the embedded CSV table back out of a rendered SVG."""
    start = svg.index('<metadata id="dataset">') + len('<metadata id="dataset">')
    end = svg.index("</metadata>")
    return svg[start:end].strip() + "\n"
