"""
Floating-point flat distances under the scaled metrics g^s_W.

‖z‖_s² = s²·q_G(P_W z) + q_G(P_{W⊥} z), and the distance between orbits is
the minimum of ‖x − (A y + v̄_A + ℓ)‖_s over the point group and over lattice
vectors ℓ inside a box derived from the Cholesky factor of the form.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import MetricConfig
from ..crysgroup import CrystGroup
from ..errors import RadiusTooSmall
from ..latgeo import AlgSubspace, GramForm, RatSubspace

log = logging.getLogger("ghmetric")

Subspace = Union[RatSubspace, AlgSubspace, None]


def as_float(m) -> np.ndarray:
    return np.array(m.tolist(), dtype=float)


def subspace_projector(w: Subspace, gram: GramForm) -> np.ndarray:
    """Float G-orthogonal projector onto W."""
    n = gram.n
    if w is None or w.dim == 0:
        return np.zeros((n, n))
    b = w.float_basis()
    g = as_float(gram.matrix)
    return b.T @ np.linalg.solve(b @ g @ b.T, b @ g)


def scaled_form(gram: GramForm, w: Subspace, s: float) -> np.ndarray:
    """Matrix Q_s with zᵀ Q_s z = s²·q(P_W z) + q(P_{W⊥} z)."""
    g = as_float(gram.matrix)
    p = subspace_projector(w, gram)
    return g - (1.0 - s * s) * (p.T @ g @ p)


def box_half_widths(q: np.ndarray, radius: float) -> np.ndarray:
    """Per-axis bounds of the ellipsoid zᵀ q z ≤ radius², from the Cholesky factor of q."""
    chol = np.linalg.cholesky(q)
    inv = np.linalg.inv(chol)
    return radius * np.sqrt((inv * inv).sum(axis=0))


@dataclass
class FlatMetric:
    """
    Orbit distance for a crystallographic group given by float data.
    Lattice vectors are lattice @ k for k ∈ ℤⁿ.
    """

    elements: List[Tuple[np.ndarray, np.ndarray]]
    form: np.ndarray
    lattice: np.ndarray
    radius: float
    tol: float

    def __post_init__(self):
        self._lattice_inv = np.linalg.inv(self.lattice) if self.lattice.size else self.lattice
        self._reduced_form = self.lattice.T @ self.form @ self.lattice

    @property
    def n(self) -> int:
        return self.form.shape[0]

    def _nearest(self, d: np.ndarray, radius: float) -> float:
        """min over k ∈ ℤⁿ with ‖d − k‖ ≤ radius of ‖d − k‖ in the reduced form."""
        if self.n == 0:
            return 0.0
        h = box_half_widths(self._reduced_form, radius)
        ranges = [np.arange(np.ceil(c - w), np.floor(c + w) + 1) for c, w in zip(d, h)]
        if any(len(r) == 0 for r in ranges):
            return np.inf
        pts = np.array(list(itertools.product(*ranges)), dtype=float)
        diff = d - pts
        return float(np.sqrt(np.einsum("ij,jk,ik->i", diff, self._reduced_form, diff).min()))

    def _orbit_minimum(self, x: np.ndarray, y: np.ndarray, radius: float) -> Tuple[float, bool]:
        best, clipped = np.inf, False
        for a, v in self.elements:
            d = self._lattice_inv @ (x - (a @ y + v))
            rounded = d - np.round(d)
            upper = float(np.sqrt(rounded @ self._reduced_form @ rounded))
            if upper > radius:
                clipped = True
            best = min(best, self._nearest(d, min(upper, radius) + 1e-12))
        return best, clipped

    def distance(self, x: Sequence[float], y: Sequence[float]) -> float:
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        best, clipped = self._orbit_minimum(x, y, self.radius)
        if clipped:
            padded, _ = self._orbit_minimum(x, y, self.radius + 1.0)
            if abs(padded - best) > self.tol:
                raise RadiusTooSmall(f"radius {self.radius} misses a closer orbit point ({best} vs {padded})")
            best = padded
        return best


def group_elements(g: CrystGroup, transform: Optional[np.ndarray] = None) -> List[Tuple[np.ndarray, np.ndarray]]:
    out = []
    for a, v in g.elements():
        vf = as_float(v).reshape(-1)
        if transform is not None:
            vf = transform @ vf
        out.append((as_float(a).reshape(g.n, g.n), vf))
    return out


def flat_metric(g: CrystGroup, w: Subspace, s: float, cfg: MetricConfig) -> FlatMetric:
    return FlatMetric(
        elements=group_elements(g),
        form=scaled_form(g.gram, w, s),
        lattice=np.eye(g.n),
        radius=cfg.enum_radius,
        tol=cfg.tol,
    )


def flat_distance(g: CrystGroup, w: Subspace, s: float, x, y, cfg: MetricConfig) -> float:
    return flat_metric(g, w, s, cfg).distance(x, y)


def scaling_map(gram: GramForm, w: Subspace, s: float) -> np.ndarray:
    """A_s = s·P_W + P_{W⊥}."""
    p = subspace_projector(w, gram)
    return s * p + (np.eye(gram.n) - p)


def conjugated_group(g: CrystGroup, w: Subspace, s: float, cfg: MetricConfig) -> FlatMetric:
    """π_s = A_s π A_s⁻¹ with the unscaled form: elements (A, A_s v̄_A), lattice A_s ℤⁿ."""
    a_s = scaling_map(g.gram, w, s)
    return FlatMetric(
        elements=group_elements(g, transform=a_s),
        form=as_float(g.gram.matrix).reshape(g.n, g.n),
        lattice=a_s,
        radius=cfg.enum_radius,
        tol=cfg.tol,
    )
