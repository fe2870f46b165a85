import cmath
import json
import math

import pytest

from kronstab import ProjPoint, chi, chordal, psi_k
from kronstab.ksequence import slit_params
from kronstab.render import (
    RenderSpec,
    extract_csv_from_svg,
    figure_data,
    render,
    to_csv,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        RenderSpec(n=0)
    with pytest.raises(ValueError):
        RenderSpec(n=2, figure="nope")
    with pytest.raises(ValueError):
        RenderSpec(n=2, grid=(1, 10))
    with pytest.raises(ValueError):
        RenderSpec(n=2, fmt="png")


def test_cn_slits_match_parameters():
    data = figure_data(RenderSpec(n=2, figure="cn", charts=4))
    params = slit_params(2, 4)
    got = {s["k"]: s["x"] for s in data["slits"]}
    assert got.keys() == params.x.keys()
    for k in got:
        assert abs(got[k] - params.x[k]) < 1e-12
    assert data["band"] is None


def test_cn_band_n3():
    data = figure_data(RenderSpec(n=3, figure="cn"))
    b, c = data["band"]
    assert abs(b + 0.9624236501192069) < 1e-9
    assert abs(c - 0.9624236501192069) < 1e-9


def test_cn_n1_single_slit():
    data = figure_data(RenderSpec(n=1, figure="cn"))
    assert data["slits"] == [{"k": 0, "x": 0.0}]


def test_psi_samples_resubstitute():
    data = figure_data(RenderSpec(n=2, figure="psi", charts=2, grid=(3, 6)))
    for curve in data["curves"]:
        k, x0 = curve["k"], curve["x0"]
        for s in curve["samples"]:
            w = complex(*s["w"])
            expect = complex(x0, s["t"])
            if k != 0:
                expect = psi_k(2, k, expect)
            assert abs(w - expect) < 1e-12


def test_chi_samples_resubstitute():
    data = figure_data(RenderSpec(n=3, figure="chi", charts=2, grid=(3, 6)))
    for curve in data["curves"]:
        k, x0 = curve["k"], curve["x0"]
        for s in curve["samples"]:
            p = ProjPoint(complex(*s["z0"]), complex(*s["z1"]))
            assert chordal(p, chi(3, k, complex(x0, s["t"]))) < 1e-12


def test_chi_punctures_n1():
    data = figure_data(RenderSpec(n=1, figure="chi", grid=(2, 2)))
    pts = [ProjPoint(complex(*p["z0"]), complex(*p["z1"])) for p in data["punctures"]]
    assert len(pts) == 3
    for expect in (ProjPoint(0, 1), ProjPoint(1, 1), ProjPoint(1, 0)):
        assert any(chordal(p, expect) < 1e-12 for p in pts)


def test_chi_punctures_n2_include_fixed_point():
    data = figure_data(RenderSpec(n=2, figure="chi", charts=2, grid=(2, 2)))
    labels = {p["label"] for p in data["punctures"]}
    assert "fixed" in labels
    assert "ray:0" in labels and "ray:-1" in labels


def test_chi_band_marks_n3():
    data = figure_data(RenderSpec(n=3, figure="chi", charts=1, grid=(2, 2)))
    lo, hi = data["band"]
    assert abs(lo * hi - 1.0) < 1e-12
    labels = {p["label"] for p in data["punctures"]}
    assert {"band_lo", "band_hi"} <= labels


def test_csv_round_trip_through_svg():
    spec = RenderSpec(n=2, figure="psi", charts=1, grid=(2, 3), fmt="svg")
    svg = render(spec)
    assert svg.startswith("<svg")
    embedded = extract_csv_from_svg(svg)
    assert embedded == to_csv(figure_data(spec))
    header = embedded.splitlines()[0]
    assert header == "record,k,x0,t,w_re,w_im"


def test_csv_rows_parse_back():
    spec = RenderSpec(n=3, figure="chi", charts=1, grid=(2, 3), fmt="csv")
    out = render(spec)
    lines = out.strip().splitlines()
    for line in lines[1:]:
        fields = line.split(",")
        if fields[0] == "curve":
            k = int(fields[1])
            x0, t = float(fields[2]), float(fields[3])
            p = ProjPoint(
                complex(float(fields[4]), float(fields[5])),
                complex(float(fields[6]), float(fields[7])),
            )
            assert chordal(p, chi(3, k, complex(x0, t))) < 1e-9


def test_json_format_parses():
    spec = RenderSpec(n=1, figure="cn", fmt="json")
    data = json.loads(render(spec))
    assert data["figure"] == "cn" and data["n"] == 1
