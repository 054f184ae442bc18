import csv

import numpy as np
import pytest

from flatcollapse.config import MetricConfig
from flatcollapse.errors import RadiusTooSmall
from flatcollapse.ghmetric import (
    conjugation_consistency,
    diameter_s,
    flat_distance,
    flat_metric,
    sample_pairs,
    scaled_form,
    scaling_map,
    verify_collapse_metric,
    write_report_csv,
)
from flatcollapse.latgeo import RatSubspace

from conftest import span

SCALES = [1.0, 0.5, 0.25, 0.125, 0.0625]


@pytest.fixture
def cfg():
    return MetricConfig(pair_count=64)


# ---------- Distances ----------

def test_torus_distances(t2, e1, cfg):
    assert flat_distance(t2, None, 1.0, [0, 0], [0.5, 0], cfg) == pytest.approx(0.5)
    assert flat_distance(t2, e1, 0.5, [0, 0], [0.5, 0], cfg) == pytest.approx(0.25)
    assert flat_distance(t2, None, 1.0, [0.1, 0.1], [0.9, 0.9], cfg) == pytest.approx(np.sqrt(0.08))


def test_klein_bottle_distances(kb, cfg):
    # (0.5, 0) is the glide image of the origin
    assert flat_distance(kb, None, 1.0, [0, 0], [0.5, 0], cfg) == pytest.approx(0.0, abs=1e-12)
    assert flat_distance(kb, None, 1.0, [0, 0], [0.25, 0], cfg) == pytest.approx(0.25)
    assert flat_distance(kb, None, 1.0, [0, 0], [0, 0.5], cfg) == pytest.approx(0.5)


def test_scaled_form(t2, e1):
    assert np.allclose(scaled_form(t2.gram, e1, 0.5), np.diag([0.25, 1.0]))
    assert np.allclose(scaling_map(t2.gram, e1, 0.5), np.diag([0.5, 1.0]))


def test_metric_axioms_on_samples(bieberbach_groups, cfg):
    rng = np.random.default_rng(1)
    for g in bieberbach_groups.values():
        w = RatSubspace.span([RatSubspace.full(g.n).vectors()[0]], g.n)
        metric = flat_metric(g, w, 0.5, cfg)
        for _ in range(20):
            x, y, z = rng.random((3, g.n))
            dxy, dyx = metric.distance(x, y), metric.distance(y, x)
            assert dxy == pytest.approx(dyx, abs=1e-9)
            assert dxy <= metric.distance(x, z) + metric.distance(z, y) + 1e-9
            assert metric.distance(x, x) == pytest.approx(0.0, abs=1e-9)


def test_distances_grow_with_scale(kb, e1, cfg):
    metrics = [flat_metric(kb, e1, s, cfg) for s in sorted(SCALES)]
    for x, y in sample_pairs(2, cfg):
        values = [m.distance(x, y) for m in metrics]
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))


def test_small_radius_is_detected(t2):
    metric = flat_metric(t2, None, 1.0, MetricConfig(enum_radius=0.01))
    with pytest.raises(RadiusTooSmall):
        metric.distance([0, 0], [0.5, 0.5])


# ---------- Diameters ----------

def test_diameter_of_square_torus(t2, cfg):
    assert diameter_s(t2.gram, RatSubspace.full(2), None, 1.0, cfg) == pytest.approx(np.sqrt(2) / 2, abs=1e-9)


@pytest.mark.parametrize("s", SCALES)
def test_diameter_of_collapsing_circle(t2, e1, cfg, s):
    assert diameter_s(t2.gram, e1, e1, s, cfg) == pytest.approx(s / 2, abs=1e-9)


def test_diameter_shrinks_for_rational_directions(bieberbach_groups, cfg):
    for g in bieberbach_groups.values():
        w = span(*[[1 if j == 0 else 0 for j in range(g.n)]])
        d1 = diameter_s(g.gram, w, w, 1.0, cfg)
        assert diameter_s(g.gram, w, w, 1 / 16, cfg) < 0.1 * d1


def test_diameter_decreases_along_irrational_line(t2, line_irr, cfg):
    full = RatSubspace.full(2)
    values = [diameter_s(t2.gram, full, line_irr, s, cfg) for s in (1.0, 0.5, 0.25, 0.1)]
    assert all(b <= a + 1e-3 for a, b in zip(values, values[1:]))
    assert values[-1] < values[0]


# ---------- Collapse verification ----------

@pytest.mark.parametrize("name,basis", [("KB", [[0, 1]]), ("KB", [[1, 0]]), ("T2", [[1, 0]]), ("HW", [[1, 0, 0]])])
def test_collapse_chain_holds(bieberbach_groups, cfg, name, basis):
    g = bieberbach_groups[name]
    report = verify_collapse_metric(g, span(*basis), cfg.with_overrides(s_values=SCALES))
    assert report.passed
    assert len(report.records) == len(SCALES)
    assert report.records[-1].d_s < 0.1 * report.records[0].d_s
    for record in report.records:
        assert record.max_approx_defect <= cfg.tol


def test_torus_chain_is_tight(t2, e1, cfg):
    report = verify_collapse_metric(t2, e1, cfg.with_overrides(s_values=[1.0, 0.5, 0.25, 0.125]))
    assert max(r.max_chain_violation for r in report.records) <= 1e-9


def test_irrational_collapse_to_a_point(t2, line_irr, cfg):
    report = verify_collapse_metric(t2, line_irr, cfg.with_overrides(s_values=[1.0, 0.25], pair_count=16))
    assert report.passed


@pytest.mark.parametrize("s", [0.5, 0.25])
@pytest.mark.parametrize("name,basis", [("T2", [[1, 0]]), ("T2", [[0, 1]]), ("KB", [[0, 1]]), ("KB", [[1, 0]])])
def test_conjugated_group_is_isometric(bieberbach_groups, cfg, name, basis, s):
    g = bieberbach_groups[name]
    assert cfg.pair_count == 64
    assert conjugation_consistency(g, span(*basis), s, cfg) <= 1e-6


def test_report_csv(kb, e2, cfg, tmp_path):
    report = verify_collapse_metric(kb, e2, cfg.with_overrides(s_values=[1.0, 0.5], pair_count=8))
    path = tmp_path / "report.csv"
    assert write_report_csv(report, str(path)) == 2
    with open(path) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["s", "d_s", "max_chain_violation", "max_approx_defect"]
    assert [float(r[0]) for r in rows[1:]] == [1.0, 0.5]
    assert report.to_document()["pass"] is True


def test_reports_are_reproducible(kb, e1, cfg):
    small = cfg.with_overrides(s_values=[0.5], pair_count=8)
    assert verify_collapse_metric(kb, e1, small).to_document() == verify_collapse_metric(kb, e1, small).to_document()
