"""Planar model for the pentagon game.

Every direction the game cares about is a rational multiple of pi plus an
integer number of theta/2 steps, where theta = t*pi for a fixed irrational
t < 1/9.  Those directions are tracked symbolically (ExactAngle) so that
coincidence questions are decided by arithmetic rather than by comparing
floats; coordinates themselves stay ordinary floats for all metric work.

Congruent-copy detection anchors candidate rigid motions on point pairs
matching a known chord of the goal set, then validates each candidate with
the same pairwise-distance test a naive 5-subset scan would apply, so the
fast path and the brute-force oracle agree exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

import numpy as np
from scipy.spatial import cKDTree

DEFAULT_T = math.sqrt(2) / 16  # irrational and < 1/9
EPS_EXACT = 1e-9  # tolerance for machine-generated coordinates
EPS_HUMAN = 1e-6  # snap tolerance for human-entered coordinates

# Half-theta offsets of the five goal points: angles 0, theta, 3*theta/2,
# 2*theta, 3*theta in canonical order g1, g2, g5, g3, g4 around the circle.
GOAL_K2_OFFSETS = (0, 2, 3, 4, 6)

# Mirror image of the goal set across its bisector permutes canonical slots
# 0<->4 and 1<->3 and fixes slot 2, so reflected placements coincide with
# direct placements of the relabelled point set.
_MIRROR_SLOT = (4, 3, 2, 1, 0)


@dataclass(frozen=True, eq=False)
class ExactAngle:
    """The direction (base + k2*t/2)*pi with base rational.

    Equality compares (base mod 2, k2).  Because t is irrational no
    rational shift can absorb a half-theta step, so distinct keys really
    are distinct directions.
    """

    base: Fraction = Fraction(0)
    k2: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))

    def radians(self, t: float = DEFAULT_T) -> float:
        return (float(self.base) + self.k2 * t / 2.0) * math.pi

    def shifted(self, dk2: int) -> "ExactAngle":
        return ExactAngle(self.base, self.k2 + dk2)

    def _key(self):
        return (self.base % 2, self.k2)

    def __eq__(self, other):
        if not isinstance(other, ExactAngle):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ExactAngle({self.base!s}, k2={self.k2})"


@dataclass(frozen=True)
class OnCircle:
    """Provenance of a point known to sit on a unit circle.

    ``inexact`` marks human-entered points that were snapped onto the
    circle; their base angle is a rational approximation, so the exact
    ledger treats them as approximate witnesses only.
    """

    circle_id: str
    angle: ExactAngle
    inexact: bool = False


@dataclass(frozen=True)
class PlanarPoint:
    x: float
    y: float
    on: OnCircle | None = None

    def xy(self) -> tuple[float, float]:
        return (self.x, self.y)

    def dist(self, other: "PlanarPoint") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def to_dict(self) -> dict:
        on = None
        if self.on is not None:
            on = {
                "circle": self.on.circle_id,
                "base": [self.on.angle.base.numerator, self.on.angle.base.denominator],
                "k2": self.on.angle.k2,
            }
            if self.on.inexact:
                on["inexact"] = True
        return {"x": self.x, "y": self.y, "on": on}

    @staticmethod
    def from_dict(data: dict) -> "PlanarPoint":
        on = None
        raw = data.get("on")
        if raw is not None:
            num, den = raw["base"]
            on = OnCircle(
                raw["circle"],
                ExactAngle(Fraction(num, den), raw["k2"]),
                bool(raw.get("inexact", False)),
            )
        return PlanarPoint(float(data["x"]), float(data["y"]), on)


@dataclass(frozen=True)
class Circle:
    """A unit circle; no other radius occurs in this game."""

    id: str
    center: PlanarPoint
    radius: float = 1.0

    def __post_init__(self):
        if self.radius != 1.0:
            raise ValueError("only unit circles are supported")

    def point_at(self, angle: ExactAngle, t: float = DEFAULT_T) -> PlanarPoint:
        a = angle.radians(t)
        return PlanarPoint(
            self.center.x + math.cos(a),
            self.center.y + math.sin(a),
            OnCircle(self.id, angle),
        )


@dataclass(frozen=True)
class GoalSet:
    """The five-point goal on a unit circle.

    The points sit at angles base + orientation * {0, theta, 3*theta/2,
    2*theta, 3*theta} about the center, theta = t*pi.
    """

    t: float = DEFAULT_T
    offsets: tuple[int, ...] = GOAL_K2_OFFSETS

    def __post_init__(self):
        if not 0.0 < self.t < 1.0 / 9.0:
            raise ValueError("t must lie strictly between 0 and 1/9")

    @property
    def theta(self) -> float:
        return self.t * math.pi

    def chord(self, k2_gap: int) -> float:
        """Distance between unit-circle points k2_gap half-theta steps apart."""
        return 2.0 * math.sin(abs(k2_gap) * self.theta / 4.0)

    def canonical_complex(self) -> np.ndarray:
        """The five points about the origin with base 0, as complex numbers."""
        angles = np.array(self.offsets, dtype=float) * (self.theta / 2.0)
        return np.exp(1j * angles)

    def points_at(
        self,
        center: "PlanarPoint | tuple[float, float]" = (0.0, 0.0),
        base: float = 0.0,
        orientation: int = 1,
    ) -> tuple[PlanarPoint, ...]:
        if isinstance(center, PlanarPoint):
            cx, cy = center.x, center.y
        else:
            cx, cy = center
        pts = []
        for off in self.offsets:
            a = base + orientation * off * self.theta / 2.0
            pts.append(PlanarPoint(cx + math.cos(a), cy + math.sin(a)))
        return tuple(pts)


@dataclass(frozen=True)
class CopyOfG:
    """A congruent placement of the goal set.

    Points are in canonical slot order.  Reflected placements are folded
    into orientation +1: the goal set is mirror symmetric, so the mirror
    image of any placement is itself a direct placement of the same point
    set.  ``indices`` locate each point in the searched list (-1 for a
    synthesized point, e.g. a threat's free spot).
    """

    center: PlanarPoint
    base: float
    orientation: int
    points: tuple[PlanarPoint, ...]
    indices: tuple[int, ...] = ()
    tags: tuple[str, ...] = ("free",) * 5


@dataclass(frozen=True)
class Threat:
    """An unblocked copy with exactly one point still free."""

    copy: CopyOfG
    owner: str
    missing: int  # canonical slot index of the free point

    @property
    def missing_point(self) -> PlanarPoint:
        return self.copy.points[self.missing]


def goal_points(
    goal: GoalSet,
    center: "PlanarPoint | tuple[float, float]",
    base: float,
    orientation: int = 1,
) -> tuple[PlanarPoint, ...]:
    return goal.points_at(center, base, orientation)


def rotate_about(
    center: PlanarPoint, point: PlanarPoint, k2: int, t: float = DEFAULT_T
) -> PlanarPoint:
    """Rotate ``point`` by k2 half-theta steps about ``center``.

    When the point carries circle provenance and sits at unit distance
    from the pivot, the rotation stays on that circle, so the exact angle
    ledger advances by k2.
    """
    a = k2 * t * math.pi / 2.0
    dx, dy = point.x - center.x, point.y - center.y
    c, s = math.cos(a), math.sin(a)
    moved_x = center.x + c * dx - s * dy
    moved_y = center.y + s * dx + c * dy
    on = point.on
    if on is not None and abs(math.hypot(dx, dy) - 1.0) <= EPS_EXACT:
        on = OnCircle(on.circle_id, on.angle.shifted(k2), on.inexact)
    return PlanarPoint(moved_x, moved_y, on)


def _circle_id(x: float, y: float) -> str:
    return f"uc({x:.12g},{y:.12g})"


def unit_circles_through(
    p: PlanarPoint, q: PlanarPoint, eps: float = EPS_EXACT
) -> list[Circle]:
    """All unit circles through both points: 2, 1 (diameter) or 0 (too far)."""
    d = p.dist(q)
    if d <= eps:
        raise ValueError("coincident points determine no finite circle family")
    mx, my = (p.x + q.x) / 2.0, (p.y + q.y) / 2.0
    if d > 2.0 + eps:
        return []
    if d >= 2.0 - eps:
        return [Circle(_circle_id(mx, my), PlanarPoint(mx, my))]
    h = math.sqrt(1.0 - (d / 2.0) ** 2)
    # unit normal to the segment pq
    nx, ny = (q.y - p.y) / d, -(q.x - p.x) / d
    centers = ((mx + h * nx, my + h * ny), (mx - h * nx, my - h * ny))
    return [Circle(_circle_id(x, y), PlanarPoint(x, y)) for x, y in centers]


# ---------------------------------------------------------------------------
# congruent-copy search


def _coords(points) -> np.ndarray:
    return np.array([(p.x, p.y) for p in points], dtype=float).reshape(-1, 2)


def _pairs_near(tree: cKDTree, coords: np.ndarray, d: float, window: float) -> np.ndarray:
    """Index pairs whose distance lies within ``window`` of ``d``."""
    close = tree.query_pairs(d + window, output_type="ndarray")
    if len(close) == 0:
        return close
    dd = np.linalg.norm(coords[close[:, 0]] - coords[close[:, 1]], axis=1)
    return close[np.abs(dd - d) <= window]


def _slot_candidates(tree: cKDTree, slots: np.ndarray, tol: float) -> list[list[int]]:
    out = []
    for sx, sy in slots:
        hits = tree.query_ball_point((sx, sy), tol)
        if not hits:
            return []
        out.append(hits)
    return out


def _assignments(cands: list[list[int]], limit: int = 64):
    """Distinct-index choices, one per slot; capped to guard degenerate input."""
    count = 0
    for combo in product(*cands):
        if len(set(combo)) == len(combo):
            yield combo
            count += 1
            if count >= limit:
                return


def _pairwise_ok(sub: np.ndarray, canon: np.ndarray, eps: float) -> bool:
    for i, j in combinations(range(len(sub)), 2):
        d = math.dist(sub[i], sub[j])
        g = math.dist(canon[i], canon[j])
        if abs(d - g) > eps:
            return False
    return True


def _fit_transform(zc: np.ndarray, canonz: np.ndarray) -> tuple[complex, complex]:
    """Least-squares rotation u and translation v with placed = u*canon + v."""
    zm, cm = zc.mean(), canonz.mean()
    u = np.sum((zc - zm) * np.conj(canonz - cm))
    u /= abs(u)
    return u, zm - u * cm


def find_copies(points, goal: GoalSet, eps: float = EPS_EXACT) -> list[CopyOfG]:
    """Every 5-subset of ``points`` congruent to the goal set.

    Congruence is within ``eps`` on all pairwise distances and includes
    reflections (which the goal set's mirror symmetry folds back into
    direct placements).  Each copy is reported once with a fitted center,
    base rotation and canonical point order.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if len(points) < 5:
        return []
    coords = _coords(points)
    canonz = goal.canonical_complex()
    canon = np.column_stack([canonz.real, canonz.imag])
    tree = cKDTree(coords)
    z = coords[:, 0] + 1j * coords[:, 1]
    # anchor on the short chord (gap 1: slots g2-g5 and g5-g3)
    anchor_pairs = _pairs_near(tree, coords, goal.chord(1), 8.0 * eps)
    slot_tol = max(256.0 * eps, 1e-12)
    found: dict[frozenset, CopyOfG] = {}
    for a, b in anchor_pairs:
        for ia, ib in ((a, b), (b, a)):
            for sp, sq in ((1, 2), (2, 1), (2, 3), (3, 2)):
                u = (z[ib] - z[ia]) / (canonz[sq] - canonz[sp])
                v = z[ia] - u * canonz[sp]
                slots = u * canonz + v
                cands = _slot_candidates(
                    tree, np.column_stack([slots.real, slots.imag]), slot_tol
                )
                if not cands:
                    continue
                for idxs in _assignments(cands):
                    key = frozenset(idxs)
                    if key in found:
                        continue
                    if not _pairwise_ok(coords[list(idxs)], canon, eps):
                        continue
                    uf, vf = _fit_transform(z[list(idxs)], canonz)
                    found[key] = CopyOfG(
                        center=PlanarPoint(float(vf.real), float(vf.imag)),
                        base=math.atan2(uf.imag, uf.real) % (2.0 * math.pi),
                        orientation=1,
                        points=tuple(points[i] for i in idxs),
                        indices=tuple(idxs),
                    )
    return list(found.values())


def find_threats(
    p_points, o_points, goal: GoalSet, eps: float = EPS_EXACT, owner: str = "P1"
) -> list[Threat]:
    """Copies with exactly 4 points in ``p_points`` and a free 5th spot.

    The missing spot must not be within ``eps`` of any point of either
    player.  The same anchoring-plus-validation scheme as find_copies is
    used on each 4-slot pattern; candidate transforms are scored in bulk
    with one nearest-neighbor query per slot assignment.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if len(p_points) < 4:
        return []
    coords = _coords(p_points)
    all_coords = (
        np.vstack([coords, _coords(o_points)]) if len(o_points) else coords
    )
    all_tree = cKDTree(all_coords)
    canonz = goal.canonical_complex()
    tree = cKDTree(coords)
    z = coords[:, 0] + 1j * coords[:, 1]
    slot_tol = max(256.0 * eps, 1e-12)
    n = len(p_points)
    found: dict[frozenset, Threat] = {}
    seen: set[tuple] = set()  # (missing, 4-set) combos already examined
    gap_pairs: dict[int, np.ndarray] = {}
    for missing in range(5):
        rem = [i for i in range(5) if i != missing]
        gaps = {
            abs(goal.offsets[i] - goal.offsets[j]) for i, j in combinations(rem, 2)
        }
        anchor_gap = min(gaps)
        pairs = [
            (i, j)
            for i in rem
            for j in rem
            if i != j and abs(goal.offsets[i] - goal.offsets[j]) == anchor_gap
        ]
        canon_rem = np.column_stack([canonz[rem].real, canonz[rem].imag])
        if anchor_gap not in gap_pairs:
            gap_pairs[anchor_gap] = _pairs_near(
                tree, coords, goal.chord(anchor_gap), 8.0 * eps
            )
        anchors = gap_pairs[anchor_gap]
        if len(anchors) == 0:
            continue
        ordered = np.vstack([anchors, anchors[:, ::-1]])
        za, zb = z[ordered[:, 0]], z[ordered[:, 1]]
        for sp, sq in pairs:
            u = (zb - za) / (canonz[sq] - canonz[sp])
            v = za - u * canonz[sp]
            slots = u[:, None] * canonz[rem][None, :] + v[:, None]
            flat = np.column_stack([slots.real.ravel(), slots.imag.ravel()])
            dist, idx = tree.query(flat, k=1, distance_upper_bound=slot_tol)
            idx = idx.reshape(len(u), 4)
            ok_rows = np.nonzero((idx < n).all(axis=1))[0]
            for row in ok_rows:
                idxs = idx[row]
                if len(set(idxs)) != 4:
                    continue
                key = frozenset(int(i) for i in idxs)
                if key in found or (missing, key) in seen:
                    continue
                seen.add((missing, key))
                if not _pairwise_ok(coords[idxs], canon_rem, eps):
                    continue
                uf, vf = _fit_transform(z[idxs], canonz[rem])
                spot = uf * canonz[missing] + vf
                near = all_tree.query_ball_point((spot.real, spot.imag), eps)
                if near:
                    continue
                free_pt = PlanarPoint(float(spot.real), float(spot.imag))
                copy_points = []
                copy_indices = []
                copy_tags = []
                it = iter(idxs)
                for slot in range(5):
                    if slot == missing:
                        copy_points.append(free_pt)
                        copy_indices.append(-1)
                        copy_tags.append("free")
                    else:
                        i = int(next(it))
                        copy_points.append(p_points[i])
                        copy_indices.append(i)
                        copy_tags.append(owner)
                found[key] = Threat(
                    copy=CopyOfG(
                        center=PlanarPoint(float(vf.real), float(vf.imag)),
                        base=math.atan2(uf.imag, uf.real) % (2.0 * math.pi),
                        orientation=1,
                        points=tuple(copy_points),
                        indices=tuple(copy_indices),
                        tags=tuple(copy_tags),
                    ),
                    owner=owner,
                    missing=missing,
                )
    return list(found.values())


# ---------------------------------------------------------------------------
# safety predicates


def min_enclosing_radius(points) -> float:
    """Smallest enclosing circle radius for 1 to 3 points (exact formulas)."""
    pts = [(p.x, p.y) if isinstance(p, PlanarPoint) else tuple(p) for p in points]
    if not pts:
        raise ValueError("no points")
    if len(pts) > 3:
        raise ValueError("at most 3 points supported")
    if len(pts) == 1:
        return 0.0
    if len(pts) == 2:
        return math.dist(pts[0], pts[1]) / 2.0
    a = math.dist(pts[1], pts[2])
    b = math.dist(pts[0], pts[2])
    c = math.dist(pts[0], pts[1])
    sides = sorted((a, b, c))
    # obtuse or degenerate: the longest side is a diameter
    if sides[0] ** 2 + sides[1] ** 2 <= sides[2] ** 2:
        return sides[2] / 2.0
    area = 0.5 * abs(
        (pts[1][0] - pts[0][0]) * (pts[2][1] - pts[0][1])
        - (pts[2][0] - pts[0][0]) * (pts[1][1] - pts[0][1])
    )
    return (a * b * c) / (4.0 * area)


def safety_check(h1: PlanarPoint, p1_points, p2_points, radius: float = 10.0) -> bool:
    """The retreat precondition for the drawing strategy.

    True iff h1 is at least ``radius`` away from every opponent point and
    no opponent triple fits in a closed ball of that radius.  The second
    player's own points never obstruct (they are passed for interface
    symmetry only).
    """
    del p2_points
    pts = list(p1_points)
    if any(h1.dist(p) < radius for p in pts):
        return False
    if len(pts) < 3:
        return True
    coords = _coords(pts)
    tree = cKDTree(coords)
    # a triple inside a radius-r ball has pairwise distances <= 2r
    for i in range(len(pts)):
        near = [j for j in tree.query_ball_point(coords[i], 2.0 * radius) if j > i]
        for j, k in combinations(near, 2):
            if math.dist(coords[j], coords[k]) > 2.0 * radius:
                continue
            if min_enclosing_radius([pts[i], pts[j], pts[k]]) <= radius:
                return False
    return True
