"""Three mutually intersecting unit circles and the angle bound search.

Three unit circles whose pairs each meet in two points define, at every
center c_i, two angles between an intersection point with one neighbour
and an intersection point with the other.  The claim under test is that
the six angles can never all be pushed below pi/3 at once, whichever of
the two intersection points of each pair plays the role of x_ij.

``lemma_search`` attacks the claim numerically: random configurations
(vectorized) plus Nelder-Mead descent from the best finds, minimizing

    min over the 8 x/y labelings of (max of the six angles).

A counterexample is reported only if that value drops below
pi/3 - 1e-9; the slack matters because equilateral center layouts attain
exactly pi/3 in the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.optimize import minimize

ANGLE_FLOOR_SLACK = 1e-9

_PAIRS = ((0, 1), (0, 2), (1, 2))


def _intersect_unit(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two intersection points of unit circles centered at a and b.

    Inputs are (..., 2) arrays with pairwise distance in (0, 2); the
    caller filters validity.
    """
    delta = b - a
    d = np.linalg.norm(delta, axis=-1, keepdims=True)
    mid = (a + b) / 2.0
    h = np.sqrt(np.clip(1.0 - (d / 2.0) ** 2, 0.0, None))
    normal = np.stack([-delta[..., 1], delta[..., 0]], axis=-1) / d
    return mid + h * normal, mid - h * normal


def _fold(angle: np.ndarray) -> np.ndarray:
    """Absolute angular difference folded into [0, pi]."""
    a = np.abs(np.mod(angle, 2.0 * math.pi))
    return np.minimum(a, 2.0 * math.pi - a)


def _six_angles(centers: np.ndarray) -> np.ndarray:
    """All six angles for every labeling; shape (..., 8, 6).

    ``centers`` has shape (..., 3, 2).  For each labeling (a sign choice
    per circle pair) the six entries are the angles at each center
    between x with one neighbour and y with the other.
    """
    # dirs[p][s][i] = direction, from each endpoint center, of
    # intersection s of pair p; stored per (pair, sign, endpoint)
    dirs = {}
    for p, (i, j) in enumerate(_PAIRS):
        plus, minus = _intersect_unit(centers[..., i, :], centers[..., j, :])
        for s, pt in enumerate((plus, minus)):
            for e in (i, j):
                rel = pt - centers[..., e, :]
                dirs[(p, s, e)] = np.arctan2(rel[..., 1], rel[..., 0])

    pair_of = {frozenset(p): idx for idx, p in enumerate(_PAIRS)}
    labelings = list(product((0, 1), repeat=3))
    out = []
    for bits in labelings:
        angles = []
        for i in range(3):
            j, k = [m for m in range(3) if m != i]
            for jj, kk in ((j, k), (k, j)):
                pj = pair_of[frozenset((i, jj))]
                pk = pair_of[frozenset((i, kk))]
                x_dir = dirs[(pj, bits[pj], i)]
                y_dir = dirs[(pk, 1 - bits[pk], i)]
                angles.append(_fold(x_dir - y_dir))
        out.append(np.stack(angles, axis=-1))
    return np.stack(out, axis=-2)


@dataclass(frozen=True)
class TripleCircleConfig:
    """Three unit-circle centers with derived intersections and angles."""

    centers: tuple[tuple[float, float], ...]
    intersections: tuple[tuple[tuple[float, float], tuple[float, float]], ...]
    angles: tuple[float, ...]  # six angles, best labeling, in [0, pi]
    max_angle: float  # min over labelings of the max of the six

    def to_dict(self) -> dict:
        return {
            "centers": [list(c) for c in self.centers],
            "intersections": [[list(p) for p in pair] for pair in self.intersections],
            "angles": list(self.angles),
            "max_angle": self.max_angle,
        }


def _pairwise_distances(centers) -> list[float]:
    return [math.dist(centers[i], centers[j]) for i, j in _PAIRS]


def triple_config_angles(c1, c2, c3) -> TripleCircleConfig:
    """Intersections and the six angles for three unit-circle centers.

    Rejects center layouts where some pair of circles is tangent,
    disjoint or coincident (pair distance outside (0, 2)).
    """
    centers = tuple(
        (float(getattr(c, "x", c[0])), float(getattr(c, "y", c[1])))
        for c in (c1, c2, c3)
    )
    for d in _pairwise_distances(centers):
        if not 0.0 < d < 2.0:
            raise ValueError("each pair of circles must meet in 2 distinct points")
    arr = np.array(centers, dtype=float)
    inter = []
    for i, j in _PAIRS:
        plus, minus = _intersect_unit(arr[i], arr[j])
        inter.append((tuple(plus.tolist()), tuple(minus.tolist())))
    table = _six_angles(arr)  # (8, 6)
    best = int(np.argmin(table.max(axis=-1)))
    return TripleCircleConfig(
        centers=centers,
        intersections=tuple(inter),
        angles=tuple(float(a) for a in table[best]),
        max_angle=float(table[best].max()),
    )


def _max_pair_arc(config: TripleCircleConfig) -> float:
    """Widest angle, at any center, between two of its intersection points.

    Emitted as a report statistic: it probes the proof's side claim that
    such an arc never exceeds 2*pi/3, whose precise endpoints are
    figure-bound and therefore not asserted as a hard test.
    """
    worst = 0.0
    for i in range(3):
        cx, cy = config.centers[i]
        pts = []
        for p, (a, b) in enumerate(_PAIRS):
            if i in (a, b):
                pts.extend(config.intersections[p])
        dirs = [math.atan2(py - cy, px - cx) for px, py in pts]
        for a_idx in range(len(dirs)):
            for b_idx in range(a_idx + 1, len(dirs)):
                d = abs(dirs[a_idx] - dirs[b_idx]) % (2.0 * math.pi)
                worst = max(worst, min(d, 2.0 * math.pi - d))
    return worst


def _objective(params: np.ndarray) -> float:
    """min-over-labelings max angle; invalid layouts score pi."""
    d, x, y = params
    centers = [(0.0, 0.0), (float(d), 0.0), (float(x), float(y))]
    for dist in _pairwise_distances(centers):
        if not 1e-3 < dist < 2.0 - 1e-3:
            return math.pi
    table = _six_angles(np.array(centers))
    return float(table.max(axis=-1).min())


def _sample_batch(rng: np.random.Generator, size: int) -> np.ndarray:
    """Valid (d, x, y) parameter rows; rejection-sampled."""
    rows = []
    while len(rows) < size:
        d = rng.uniform(0.05, 1.95, size)
        x = rng.uniform(-2.0, 4.0, size)
        y = rng.uniform(0.01, 1.95, size)
        d13 = np.hypot(x, y)
        d23 = np.hypot(x - d, y)
        ok = (d13 > 0.05) & (d13 < 1.95) & (d23 > 0.05) & (d23 < 1.95)
        rows.extend(np.column_stack([d, x, y])[ok])
    return np.array(rows[:size])


def lemma_search(samples: int, seed: int, refine: int = 12) -> dict:
    """Random plus local search for a six-small-angles configuration.

    Returns a report with the smallest max-angle seen; a counterexample
    is attached only when it beats pi/3 - 1e-9 (expected: never).
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    batch = _sample_batch(rng, samples)
    centers = np.zeros((samples, 3, 2))
    centers[:, 1, 0] = batch[:, 0]
    centers[:, 2, 0] = batch[:, 1]
    centers[:, 2, 1] = batch[:, 2]
    values = _six_angles(centers).max(axis=-1).min(axis=-1)

    order = np.argsort(values)
    best_params = batch[order[0]]
    best_value = float(values[order[0]])
    for idx in order[:refine]:
        res = minimize(
            _objective,
            batch[idx],
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 2000},
        )
        if res.fun < best_value:
            best_value = float(res.fun)
            best_params = np.asarray(res.x)

    d, x, y = (float(v) for v in best_params)
    config = triple_config_angles((0.0, 0.0), (d, 0.0), (x, y))
    threshold = math.pi / 3.0 - ANGLE_FLOOR_SLACK
    return {
        "samples": int(samples),
        "seed": int(seed),
        "min_over_samples_of_max_angle": best_value,
        "threshold": threshold,
        "counterexample": config.to_dict() if best_value < threshold else None,
        "best_config": config.to_dict(),
        "max_pair_arc": _max_pair_arc(config),
    }
