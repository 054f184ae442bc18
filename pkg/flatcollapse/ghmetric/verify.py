"""
Numeric check of the collapse: for sampled pairs (x, y)

    δ(Φx, Φy) ≤ ρ̂ˢ(x, y) ≤ ρˢ(x, y) ≤ δ(Φx, Φy) + 2·d(s)

where ρˢ scales W, ρ̂ˢ scales the collapsed subspace Ŵ, δ is the flat distance
of the exact collapsed group and Φ sends a point to the chart coordinates of
its projection to Ŵ⊥.
"""

import csv
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..collapse import CollapsedGroup, collapse
from ..config import MetricConfig
from ..crysgroup import CrystGroup, check_invariant
from .diameter import diameter_s
from .distances import Subspace, as_float, conjugated_group, flat_metric, scaling_map

log = logging.getLogger("ghmetric")

CSV_COLUMNS = ["s", "d_s", "max_chain_violation", "max_approx_defect"]


@dataclass(frozen=True)
class MetricRecord:
    s: float
    d_s: float
    max_chain_violation: float
    max_approx_defect: float

    def row(self) -> List[str]:
        return [repr(float(v)) for v in (self.s, self.d_s, self.max_chain_violation, self.max_approx_defect)]


@dataclass(frozen=True)
class MetricReport:
    records: List[MetricRecord] = field(default_factory=list)
    tol: float = 1e-6

    @property
    def passed(self) -> bool:
        return all(r.max_chain_violation <= self.tol and r.max_approx_defect <= self.tol for r in self.records)

    def to_document(self) -> dict:
        return {
            "records": [
                {
                    "s": r.s,
                    "d_s": r.d_s,
                    "max_chain_violation": r.max_chain_violation,
                    "max_approx_defect": r.max_approx_defect,
                }
                for r in self.records
            ],
            "pass": self.passed,
        }


def sample_pairs(n: int, cfg: MetricConfig) -> np.ndarray:
    """pair_count pairs of points of the unit cell, shape (pairs, 2, n)."""
    return np.random.default_rng(cfg.seed).random((cfg.pair_count, 2, n))


class _LeafSpace:
    """Φ and δ for one collapsed group."""

    def __init__(self, cg: CollapsedGroup, cfg: MetricConfig):
        self.dim = cg.dim
        if self.dim == 0:
            return
        n = cg.parent.n
        chart = as_float(cg.chart).reshape(self.dim, n)
        gram = as_float(cg.parent.gram.matrix).reshape(n, n)
        to_chart = np.linalg.solve(chart @ gram @ chart.T, chart @ gram)
        self._phi = to_chart @ as_float(cg.perp_projector).reshape(n, n)
        self._metric = flat_metric(cg.group, None, 1.0, cfg)

    def delta(self, x: np.ndarray, y: np.ndarray) -> float:
        if self.dim == 0:
            return 0.0
        return self._metric.distance(self._phi @ x, self._phi @ y)


def verify_collapse_metric(g: CrystGroup, w: Subspace, cfg: MetricConfig) -> MetricReport:
    cg = collapse(g, w)
    w_hat = cg.w
    leaf_space = _LeafSpace(cg, cfg)
    pairs = sample_pairs(g.n, cfg)
    deltas = [leaf_space.delta(x, y) for x, y in pairs]

    records = []
    for s in cfg.s_values:
        rho = flat_metric(g, w, s, cfg)
        rho_hat = flat_metric(g, w_hat, s, cfg)
        d = diameter_s(g.gram, w_hat, w, s, cfg)
        chain, defect = -np.inf, -np.inf
        for (x, y), delta in zip(pairs, deltas):
            r = rho.distance(x, y)
            r_hat = rho_hat.distance(x, y)
            chain = max(chain, delta - r_hat, r_hat - r, r - (delta + 2 * d))
            defect = max(defect, abs(r - delta) - 2 * d)
        records.append(MetricRecord(s=s, d_s=d, max_chain_violation=float(chain), max_approx_defect=float(defect)))
        log.info(f"s={s}: d={d:.6g}, chain violation {chain:.3g}, approximation defect {defect:.3g}")

    report = MetricReport(records=records, tol=cfg.tol)
    if not report.passed:
        log.warning(f"collapse metric check failed at tol {cfg.tol}")
    return report


def conjugation_consistency(g: CrystGroup, w: Subspace, s: float, cfg: MetricConfig) -> float:
    """max |ρˢ_π(x, y) − ρ¹_{π_s}(A_s x, A_s y)| over the sampled pairs."""
    check_invariant(g, w)
    scaled = flat_metric(g, w, s, cfg)
    conjugated = conjugated_group(g, w, s, cfg)
    a_s = scaling_map(g.gram, w, s)
    deviation = 0.0
    for x, y in sample_pairs(g.n, cfg):
        deviation = max(deviation, abs(scaled.distance(x, y) - conjugated.distance(a_s @ x, a_s @ y)))
    log.info(f"conjugated group at s={s} deviates by {deviation:.3g}")
    return deviation


def write_report_csv(report: MetricReport, path: str) -> int:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for record in report.records:
            writer.writerow(record.row())
    return len(report.records)
