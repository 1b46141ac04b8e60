"""Synthetic imbalanced datasets from hypersphere scenes.

A scene is a set of hyperspheres inside the box Omega = [0, box_side]^M.
Two flavors are generated from one scene:

  * EI (extreme imbalance): the majority class is packed inside the spheres,
    the minority occupies the complement,
  * DI (divergent imbalance): the minority is packed inside the spheres, the
    majority occupies the complement.

Both regions are sampled uniformly via rejection. Sphere overlap and
protrusion beyond Omega are allowed, but every emitted point lies in Omega.
All randomness flows through explicit numpy Generators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .core import Dataset
from .errors import RejectionBudgetError, ShapeMismatchError

REJECTION_BUDGET_FACTOR = 10_000


class Flavor(enum.Enum):
    EI = "ei"
    DI = "di"

    @classmethod
    def from_string(cls, text: str) -> "Flavor":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"flavor must be 'ei' or 'di', got {text!r}") from None


@dataclass(frozen=True, eq=False)
class HypersphereScene:
    """Sphere centers/radii plus the bounding box they live in."""

    dim: int
    box_side: float
    centers: np.ndarray
    radii: np.ndarray
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "centers", np.asarray(self.centers, dtype=float))
        object.__setattr__(self, "radii", np.asarray(self.radii, dtype=float))
        if self.dim < 2:
            raise ValueError(f"dim must be >= 2, got {self.dim}")
        if not self.box_side > 0.0:
            raise ValueError(f"box_side must be positive, got {self.box_side}")
        if self.centers.ndim != 2 or self.centers.shape[1] != self.dim or self.centers.shape[0] < 1:
            raise ShapeMismatchError(f"centers must be K x {self.dim} with K >= 1, got {self.centers.shape}")
        if self.radii.shape != (self.centers.shape[0],):
            raise ShapeMismatchError("radii length must match sphere count")
        if np.any(self.centers < 0.0) or np.any(self.centers > self.box_side):
            raise ValueError("all centers must lie inside the box")
        if np.any(self.radii <= 0.0) or np.any(self.radii > 1.0):
            raise ValueError("radii must lie in (0, 1]")

    @property
    def sphere_count(self) -> int:
        return self.centers.shape[0]

    def containment_counts(self, points: np.ndarray) -> np.ndarray:
        """Number of (closed) spheres containing each point."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        sq = cdist(pts, self.centers, "sqeuclidean")
        return np.count_nonzero(sq <= self.radii[np.newaxis, :] ** 2, axis=1)

    def inside_union(self, points: np.ndarray) -> np.ndarray:
        return self.containment_counts(points) > 0


@dataclass(frozen=True)
class ImbalanceSpec:
    """Total sample count and minority-to-majority ratio in (0, 1]."""

    total: int
    ratio: float
    flavor: Flavor

    def __post_init__(self):
        if self.total < 2:
            raise ValueError(f"total must be >= 2, got {self.total}")
        if not (0.0 < self.ratio <= 1.0):
            raise ValueError(f"ratio must be in (0, 1], got {self.ratio}")

    def counts(self) -> tuple[int, int]:
        """(minority, majority) counts; round half up, both clamped >= 1."""
        majority = int(np.floor(self.total / (1.0 + self.ratio) + 0.5))
        majority = min(max(majority, 1), self.total - 1)
        return self.total - majority, majority


def random_scene(dim: int, box_side: float, sphere_count: int, seed: int) -> HypersphereScene:
    """Scene with centers uniform in the box and radii uniform in (0, 1].

    Two spheres match the published 2-D setup, three the higher-dimensional
    ones, but any count >= 1 is accepted.
    """
    if sphere_count < 1:
        raise ValueError(f"sphere_count must be >= 1, got {sphere_count}")
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    rng = np.random.default_rng(seed)
    centers = rng.uniform(0.0, box_side, size=(sphere_count, dim))
    radii = 1.0 - rng.random(sphere_count)  # uniform over (0, 1]
    return HypersphereScene(dim=dim, box_side=box_side, centers=centers, radii=radii, seed=seed)


def _empty(dim: int) -> np.ndarray:
    return np.empty((0, dim))


def sample_inside(scene: HypersphereScene, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform draws from (union of spheres) intersected with the box.

    Proposal: pick a sphere with probability proportional to its volume,
    draw uniformly inside it, then keep the point only if it lies in the box
    AND passes the 1/(spheres containing it) thinning. The thinning undoes
    the multiple counting of overlap regions, leaving the union uniform.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return _empty(scene.dim)
    volume_weights = scene.radii ** scene.dim
    volume_weights = volume_weights / volume_weights.sum()
    budget = REJECTION_BUDGET_FACTOR * count
    attempts = 0
    accepted: list[np.ndarray] = []
    n_accepted = 0
    while n_accepted < count:
        chunk = min(max(2 * (count - n_accepted), 64), budget - attempts)
        if chunk <= 0:
            raise RejectionBudgetError(
                f"sample_inside: {n_accepted}/{count} accepted after {attempts} attempts"
            )
        which = rng.choice(scene.sphere_count, size=chunk, p=volume_weights)
        direction = rng.standard_normal((chunk, scene.dim))
        direction /= np.linalg.norm(direction, axis=1, keepdims=True)
        radial = scene.radii[which] * rng.random(chunk) ** (1.0 / scene.dim)
        pts = scene.centers[which] + direction * radial[:, np.newaxis]
        thin = rng.random(chunk)
        in_box = np.all((pts >= 0.0) & (pts <= scene.box_side), axis=1)
        keep = in_box & (thin * scene.containment_counts(pts) < 1.0)
        accepted.append(pts[keep])
        n_accepted += int(np.count_nonzero(keep))
        attempts += chunk
    return np.vstack(accepted)[:count]


def sample_outside(scene: HypersphereScene, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform draws from the box minus the sphere union, by plain rejection."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return _empty(scene.dim)
    budget = REJECTION_BUDGET_FACTOR * count
    attempts = 0
    accepted: list[np.ndarray] = []
    n_accepted = 0
    while n_accepted < count:
        chunk = min(max(2 * (count - n_accepted), 64), budget - attempts)
        if chunk <= 0:
            raise RejectionBudgetError(
                f"sample_outside: {n_accepted}/{count} accepted after {attempts} attempts"
            )
        pts = rng.uniform(0.0, scene.box_side, size=(chunk, scene.dim))
        keep = ~scene.inside_union(pts)
        accepted.append(pts[keep])
        n_accepted += int(np.count_nonzero(keep))
        attempts += chunk
    return np.vstack(accepted)[:count]


def _region_labels(flavor: Flavor) -> tuple[int, int]:
    """(label of the in-sphere region, label of the complement)."""
    if flavor is Flavor.EI:
        return -1, 1  # dense spheres hold the majority
    return 1, -1  # DI: dense spheres hold the minority


def generate(scene: HypersphereScene, spec: ImbalanceSpec, rng: np.random.Generator) -> Dataset:
    """Imbalanced training set: counts from the spec, regions from the flavor."""
    minority, majority = spec.counts()
    inside_label, outside_label = _region_labels(spec.flavor)
    n_inside = majority if inside_label == -1 else minority
    n_outside = spec.total - n_inside
    inside = sample_inside(scene, n_inside, rng)
    outside = sample_outside(scene, n_outside, rng)
    features = np.vstack([inside, outside])
    labels = np.concatenate([
        np.full(n_inside, inside_label, dtype=np.int64),
        np.full(n_outside, outside_label, dtype=np.int64),
    ])
    return Dataset(features=features, labels=labels)


def generate_balanced_test(
    scene: HypersphereScene,
    flavor: Flavor,
    per_class: int,
    rng: np.random.Generator,
) -> Dataset:
    """Evaluation set with per_class fresh points from each true region."""
    if per_class < 1:
        raise ValueError(f"per_class must be >= 1, got {per_class}")
    inside_label, outside_label = _region_labels(flavor)
    inside = sample_inside(scene, per_class, rng)
    outside = sample_outside(scene, per_class, rng)
    features = np.vstack([inside, outside])
    labels = np.concatenate([
        np.full(per_class, inside_label, dtype=np.int64),
        np.full(per_class, outside_label, dtype=np.int64),
    ])
    return Dataset(features=features, labels=labels)
