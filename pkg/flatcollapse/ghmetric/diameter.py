"""
Diameter of the torus Ŵ/(ℤⁿ ∩ Ŵ) under ρˢ, estimated from below on a grid.
"""

import itertools
import logging

import numpy as np

from ..config import MetricConfig
from ..latgeo import GramForm, RatSubspace, subspace_lattice
from .distances import Subspace, as_float, box_half_widths, scaled_form

log = logging.getLogger("ghmetric")

MAX_GRID_POINTS = 50_000
CHUNK = 2048


def _cell_samples(k: int, per_axis: int, extra: int, rng: np.random.Generator) -> np.ndarray:
    grid = np.array(list(itertools.product(np.arange(per_axis) / per_axis, repeat=k)), dtype=float)
    return np.vstack([grid, rng.random((extra, k))])


def _max_min_distance(points: np.ndarray, form: np.ndarray) -> float:
    """max over points t of min over k ∈ ℤ^dim of ‖t − k‖ in the given form."""
    corner = 0.5 * np.sqrt(np.abs(form).sum())
    h = np.ceil(box_half_widths(form, corner)).astype(int)
    offsets = np.array(list(itertools.product(*[range(-w, w + 2) for w in h])), dtype=float)
    worst = 0.0
    for start in range(0, len(points), CHUNK):
        chunk = points[start:start + CHUNK]
        diff = chunk[:, None, :] - offsets[None, :, :]
        dist_sq = np.einsum("pij,jk,pik->pi", diff, form, diff)
        worst = max(worst, float(np.sqrt(dist_sq.min(axis=1)).max()))
    return worst


def diameter_s(gram: GramForm, torus: RatSubspace, w: Subspace, s: float, cfg: MetricConfig) -> float:
    """
    diam(Ŵ/L̂, ρˢ) where ρˢ shrinks the directions of W by s. Grids with an
    even number of points per axis are doubled until the estimate moves by
    less than tol or the refinement limit is reached.
    """
    lattice, _ = subspace_lattice(torus)
    k = lattice.rank
    if k == 0:
        return 0.0
    basis = as_float(lattice.basis_matrix()).reshape(k, gram.n)
    form = basis @ scaled_form(gram, w, s) @ basis.T

    rng = np.random.default_rng(cfg.seed)
    per_axis = 2
    while per_axis ** k < cfg.grid.min_points:
        per_axis += 2
    estimate = _max_min_distance(_cell_samples(k, per_axis, cfg.grid.min_points, rng), form)
    for _ in range(cfg.grid.max_refinements):
        if (2 * per_axis) ** k > MAX_GRID_POINTS:
            break
        per_axis *= 2
        refined = _max_min_distance(_cell_samples(k, per_axis, cfg.grid.min_points, rng), form)
        stable = abs(refined - estimate) <= cfg.tol
        estimate = max(estimate, refined)
        if stable:
            break
    log.debug(f"d({s}) ≈ {estimate} on a torus of dim {k}")
    return estimate
