"""Player 2's drawing strategy as a deterministic phase machine.

The bot cycles Retreat -> Build -> Force.  It retreats until it owns a
point far from all opponent points, builds a theta-spaced trio h1,h2,h3
on a unit circle C about a designated center, then forces: each further
point extends the progression by one theta step and leaves exactly one
unblocked 4-point threat whose completion is a middle point.  A pending
opponent threat (4 points of an unblocked copy of G) interrupts any
phase and is blocked on the spot.

Angles on C are tracked on the exact ledger: the circle's angular origin
is the direction of h1 from the center, so every bot point on C carries
an ExactAngle with base 0 and an even k2.  The bot plays for a draw only
and never occupies a fifth point of its own copies.

Scripted Player 1 adversaries instantiate the proof's case analysis:
CircleSquatter camps on C, ThreatGreedy manufactures 4-point threats,
ForcingMimic runs the mirror forcing sequence on his own circle, Random
covers unstructured play.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations

from scipy.spatial import cKDTree

from .geometry import (
    EPS_EXACT,
    EPS_HUMAN,
    ExactAngle,
    GoalSet,
    OnCircle,
    PlanarPoint,
    find_copies,
    find_threats,
    min_enclosing_radius,
    safety_check,
    unit_circles_through,
    _coords,
    _pairs_near,
)

RETREAT_MARGIN = 31.0  # > the proof's "at least 30 units away"
CENTER_CLEAR_BALL = 8.0  # (*): at most one opponent point within 8 of c
THREE_POINT_CLEAR = 5.0  # (**): no other opponent points within 5 of a trio
N_CENTER_RAYS = 64
MIDDLE_HORIZON = 20  # forced middle points examined per candidate direction

ADVERSARY_KINDS = ("Random", "ThreatGreedy", "CircleSquatter", "ForcingMimic")


class LedgerError(Exception):
    """The point sets do not match the bot's recorded construction."""


@dataclass(frozen=True)
class BotState:
    """Pure state of the drawing bot; bot_move returns a fresh copy.

    ``ks`` are the even k2 positions of the bot's points on the active
    circle, in placement order; the angular origin of the ledger is
    ``zero_dir`` (the direction of h1 from the center).  ``violations``
    collects monitored-invariant failures, which the tests treat as
    errors rather than fallback behavior.
    """

    goal: GoalSet = field(default_factory=GoalSet)
    phase: str = "retreat"  # retreat | build | force
    stage: int = 0  # build progress: number of h points placed
    circle_seq: int = 0
    circle_id: str = ""
    center: PlanarPoint | None = None
    zero_dir: float = 0.0
    direction: int = 0
    ks: tuple[int, ...] = ()
    watch_center: tuple[float, float] | None = None  # P1's forcing circle C1
    violations: tuple[str, ...] = ()

    def lattice_point(self, k2: int) -> PlanarPoint:
        a = self.zero_dir + k2 * self.goal.theta / 2.0
        return PlanarPoint(
            self.center.x + math.cos(a),
            self.center.y + math.sin(a),
            OnCircle(self.circle_id, ExactAngle(Fraction(0), k2)),
        )


def _occupied(point: PlanarPoint, taken, eps: float = EPS_EXACT) -> bool:
    return any(point.dist(q) <= eps for q in taken)


def _retreat_point(state: BotState, p1_points, p2_points) -> PlanarPoint:
    """A fresh point at least 30 units from every opponent point."""
    coords = [abs(v) for p in (*p1_points, *p2_points) for v in (p.x, p.y)]
    radius = RETREAT_MARGIN + (max(coords) if coords else 0.0)
    for i in range(N_CENTER_RAYS):
        a = 2.0 * math.pi * i / N_CENTER_RAYS
        cand = PlanarPoint(radius * math.cos(a), radius * math.sin(a))
        if not _occupied(cand, (*p1_points, *p2_points)):
            return cand
    raise LedgerError("no free retreat point on the retreat ring")


def _designate_center(h1: PlanarPoint, p1_points) -> PlanarPoint:
    """Pick c at unit distance from h1 maximizing clearance from P1.

    Prefers rays whose circle C stays at least 2 units from every
    opponent point; ties break toward the lowest ray index, so the
    choice is deterministic.
    """
    best = None
    for i in range(N_CENTER_RAYS):
        a = 2.0 * math.pi * i / N_CENTER_RAYS
        cand = PlanarPoint(h1.x + math.cos(a), h1.y + math.sin(a))
        if p1_points:
            clearance = min(cand.dist(p) for p in p1_points)
            circle_clear = min(abs(cand.dist(p) - 1.0) for p in p1_points)
        else:
            clearance = circle_clear = math.inf
        key = (circle_clear >= 2.0, clearance, -i)
        if best is None or key > best[0]:
            best = (key, cand)
    return best[1]


def _lattice_taints(state: BotState, p1_points) -> set[int]:
    """Direction signs on which P1 sits at a half-theta multiple from h1."""
    taints = set()
    half = state.goal.theta / 2.0
    for p in p1_points:
        if abs(p.dist(state.center) - 1.0) > EPS_HUMAN:
            continue
        rel = math.atan2(p.y - state.center.y, p.x - state.center.x) - state.zero_dir
        rel = (rel + math.pi) % (2.0 * math.pi) - math.pi
        k = rel / half
        if abs(k - round(k)) * half <= 1e-6 and round(k) != 0:
            taints.add(1 if round(k) > 0 else -1)
    return taints


def _direction_danger(state: BotState, p1_points, direction: int) -> bool:
    """Case 3 guard: can P1 finish a copy of G out of forced middles?

    The forced middle points in ``direction`` sit at odd k2 = 3, 5, 7...
    A direction is dangerous when some congruent copy of G lies entirely
    inside P1's points plus those middles and actually uses a middle.
    """
    middles = [
        state.lattice_point(direction * (2 * m + 3)) for m in range(MIDDLE_HORIZON)
    ]
    pool = list(p1_points) + middles
    n1 = len(p1_points)
    for copy in find_copies(pool, state.goal, EPS_EXACT):
        if any(i >= n1 for i in copy.indices) and sum(
            i < n1 for i in copy.indices
        ) >= 1:
            return True
    return False


def three_point_copies(p1_points, p2_points, goal: GoalSet, eps: float = EPS_EXACT):
    """Unblocked copies of G holding exactly 3 of ``p1_points``.

    Anchors candidate rigid motions on P1 point pairs matching any goal
    chord, then counts slot occupancies; copies containing any opponent
    point are blocked and skipped.  Used to verify the (**) precondition.
    """
    if len(p1_points) < 3:
        return []
    coords = _coords(p1_points)
    tree = cKDTree(coords)
    o_tree = cKDTree(_coords(p2_points)) if len(p2_points) else None
    canonz = goal.canonical_complex()
    z = coords[:, 0] + 1j * coords[:, 1]
    slot_tol = max(256.0 * eps, 1e-12)
    chords = {}
    for sp, sq in combinations(range(5), 2):
        chords.setdefault(round(abs(canonz[sp] - canonz[sq]), 12), []).append((sp, sq))
    found = {}
    for chord, assignments in chords.items():
        for a, b in _pairs_near(tree, coords, chord, 8.0 * eps):
            for ia, ib in ((a, b), (b, a)):
                for sp, sq in assignments:
                    u = (z[ib] - z[ia]) / (canonz[sq] - canonz[sp])
                    v = z[ia] - u * canonz[sp]
                    slots = u * canonz + v
                    holders = []
                    blocked = False
                    for s in slots:
                        spot = (s.real, s.imag)
                        if o_tree is not None and o_tree.query_ball_point(spot, eps):
                            blocked = True
                            break
                        hit = tree.query_ball_point(spot, slot_tol)
                        holders.append(hit[0] if hit else None)
                    if blocked or sum(h is not None for h in holders) != 3:
                        continue
                    idxs = frozenset(h for h in holders if h is not None)
                    key = (idxs, round(v.real, 6), round(v.imag, 6))
                    if key not in found:
                        pts = tuple(coords[i] for i in sorted(idxs))
                        found[key] = (idxs, pts)
    return list(found.values())


def star_conditions(state: BotState, p1_points, p2_points) -> bool:
    """The (*) and (**) preconditions, re-verified before leaving Build.

    (*): no pending P1 threat (handled upstream) and at most one P1
    point within 8 units of c.  (**): at most one unblocked copy where
    P1 has 3 points and, if it exists, no other P1 point within 5 units
    of its trio.  The 10-unit distance conditions belong to the start of
    Build, not here: by now P1 has had moves to approach, which is
    exactly the Case 3 situation.
    """
    near_c = sum(p.dist(state.center) <= CENTER_CLEAR_BALL for p in p1_points)
    if near_c > 1:
        return False
    trios = three_point_copies(p1_points, p2_points, state.goal)
    if len(trios) > 1:
        return False
    if trios:
        idxs, pts = trios[0]
        for i, p in enumerate(p1_points):
            if i in idxs:
                continue
            if any(math.dist((p.x, p.y), q) < THREE_POINT_CLEAR for q in pts):
                return False
    return True


def _block_threat(state: BotState, threats) -> tuple[PlanarPoint, BotState]:
    threats = sorted(threats, key=lambda t: (t.missing_point.x, t.missing_point.y))
    violations = state.violations
    if len(threats) > 1:
        violations += ("multiple simultaneous opponent threats",)
    th = threats[0]
    # the single-circle confinement claim applies once (*) holds, i.e.
    # after the bot's construction is complete
    if state.phase == "force":
        c1 = (round(th.copy.center.x, 6), round(th.copy.center.y, 6))
        if state.watch_center is not None and state.watch_center != c1:
            violations += ("opponent threat left the forcing circle C1",)
        state = replace(state, watch_center=c1)
    return th.missing_point, replace(state, violations=violations)


def _enter_build(state: BotState, p1_points, p2_points) -> tuple[PlanarPoint, BotState]:
    """Retreat move: place a far h1 and designate the center."""
    h1 = _retreat_point(state, p1_points, p2_points)
    center = _designate_center(h1, p1_points)
    seq = state.circle_seq + 1
    new = replace(
        state,
        phase="build",
        stage=1,
        circle_seq=seq,
        circle_id=f"C{seq}",
        center=center,
        zero_dir=math.atan2(h1.y - center.y, h1.x - center.x),
        direction=0,
        ks=(0,),
        watch_center=None,
    )
    return replace(h1, on=OnCircle(new.circle_id, ExactAngle(Fraction(0), 0))), new


def _switch_circle(state: BotState, p1_points) -> BotState:
    """Move the designation to the second circle through h1 and h2.

    Triggered when P1's reply lands on C; the circles meet only at h1
    and h2, so the new circle is free of that reply.
    """
    h1 = state.lattice_point(0)
    h2 = state.lattice_point(state.direction * 2)
    others = [
        c
        for c in unit_circles_through(h1, h2)
        if c.center.dist(state.center) > EPS_HUMAN
    ]
    if not others:
        raise LedgerError("no alternative circle through h1 and h2")
    center = others[0].center
    zero = math.atan2(h1.y - center.y, h1.x - center.x)
    a2 = math.atan2(h2.y - center.y, h2.x - center.x)
    rel = (a2 - zero + math.pi) % (2.0 * math.pi) - math.pi
    direction = 1 if rel > 0 else -1
    seq = state.circle_seq + 1
    return replace(
        state,
        circle_seq=seq,
        circle_id=f"C{seq}",
        center=center,
        zero_dir=zero,
        direction=direction,
        ks=(0, direction * 2),
    )


def bot_move(state: BotState, p1_points, p2_points) -> tuple[PlanarPoint, BotState]:
    """One drawing-strategy move; a pure function of state and the board.

    Priority: block a pending opponent threat, else advance the phase
    machine (retreat far, build the theta trio, extend the forcing
    progression).
    """
    goal = state.goal
    threats = find_threats(p1_points, p2_points, goal, EPS_EXACT)
    if threats:
        return _block_threat(state, threats)

    if state.phase == "retreat":
        return _enter_build(state, p1_points, p2_points)

    if state.phase == "build":
        if state.stage == 1:
            if not safety_check(state.lattice_point(0), p1_points, p2_points) or sum(
                p.dist(state.center) <= CENTER_CLEAR_BALL for p in p1_points
            ) > 1:
                return _enter_build(state, p1_points, p2_points)
            # the direction stays provisional until Force entry; P1 is
            # still 10+ away from h1, so either side works for h2
            direction = state.direction or 1
            k2 = direction * 2
            new = replace(state, stage=2, direction=direction, ks=state.ks + (k2,))
            return new.lattice_point(k2), new
        if state.stage == 2:
            if any(abs(p.dist(state.center) - 1.0) <= EPS_HUMAN for p in p1_points):
                state = _switch_circle(state, p1_points)
            if not star_conditions(state, p1_points, p2_points):
                return _enter_build(state, p1_points, p2_points)
            # commit the forcing direction now: continue past h2, or flip
            # and grow past h1 instead.  Prefer a side where P1 holds no
            # half-theta lattice point and no copy threatens the future
            # middles.
            cur = state.direction
            taints = _lattice_taints(state, p1_points)
            candidates = [d for d in (cur, -cur) if d not in taints] or [cur, -cur]
            direction = None
            for d in candidates:
                if not _direction_danger(state, p1_points, d):
                    direction = d
                    break
            if direction is None:
                direction = candidates[0]
                state = replace(
                    state,
                    violations=state.violations
                    + ("both forcing directions endangered (contradicts the angle bound)",),
                )
            k2 = cur * 4 if direction == cur else -cur * 2
            new = replace(
                state, phase="force", stage=3, direction=direction, ks=state.ks + (k2,)
            )
            return new.lattice_point(k2), new
        raise LedgerError(f"unknown build stage {state.stage}")

    if state.phase == "force":
        taken = list(p1_points) + list(p2_points)
        lo, hi = min(state.ks), max(state.ks)
        first = hi + 2 if state.direction > 0 else lo - 2
        second = lo - 2 if state.direction > 0 else hi + 2
        for k2, direction in ((first, state.direction), (second, -state.direction)):
            spot = state.lattice_point(k2)
            if not _occupied(spot, taken, EPS_HUMAN):
                new = replace(state, direction=direction, ks=state.ks + (k2,))
                return spot, new
        # both frontiers camped (only possible against an opponent who
        # ignores losing threats): restart the construction elsewhere
        return _enter_build(state, p1_points, p2_points)

    raise LedgerError(f"unknown phase {state.phase}")


# ---------------------------------------------------------------------------
# scripted adversaries


def _move_rng(seed: int, p1_points, p2_points) -> random.Random:
    return random.Random(f"{seed}:{len(p1_points)}:{len(p2_points)}")


def _free_spot(point: PlanarPoint, taken) -> bool:
    return not _occupied(point, taken, EPS_EXACT)


def _block_bot_threat(p1_points, p2_points, goal: GoalSet) -> PlanarPoint | None:
    threats = find_threats(p2_points, p1_points, goal, EPS_EXACT, owner="P2")
    if not threats:
        return None
    th = min(threats, key=lambda t: (t.missing_point.x, t.missing_point.y))
    return PlanarPoint(th.missing_point.x, th.missing_point.y)


def _bot_circle(p2_points):
    """Infer the bot's active circle from provenance-tagged points."""
    groups: dict[str, list[PlanarPoint]] = {}
    for p in p2_points:
        if p.on is not None:
            groups.setdefault(p.on.circle_id, []).append(p)
    if not groups:
        return None
    cid = max(groups, key=lambda k: (len(groups[k]), k))
    pts = groups[cid]
    if len(pts) < 3:
        return None
    (x1, y1), (x2, y2), (x3, y3) = (p.xy() for p in pts[:3])
    d = 2.0 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2))
    if abs(d) < 1e-12:
        return None
    s1, s2, s3 = x1 * x1 + y1 * y1, x2 * x2 + y2 * y2, x3 * x3 + y3 * y3
    cx = (s1 * (y2 - y3) + s2 * (y3 - y1) + s3 * (y1 - y2)) / d
    cy = (s1 * (x3 - x2) + s2 * (x1 - x3) + s3 * (x2 - x1)) / d
    return PlanarPoint(cx, cy), pts


def adversary_move(kind: str, p1_points, p2_points, goal: GoalSet, seed: int) -> PlanarPoint:
    """A deterministic Player 1 move under the named policy."""
    if kind not in ADVERSARY_KINDS:
        raise ValueError(f"unknown adversary {kind!r}")
    rng = _move_rng(seed, p1_points, p2_points)
    taken = list(p1_points) + list(p2_points)

    if kind == "Random":
        while True:
            cand = PlanarPoint(rng.uniform(-20, 20), rng.uniform(-20, 20))
            if _free_spot(cand, taken):
                return cand

    if kind == "ThreatGreedy":
        # build fresh 4-point threats, one target copy after another,
        # always leaving the middle slot for last
        block = _block_bot_threat(p1_points, p2_points, goal)
        if block is not None and _free_spot(block, taken):
            return block
        base_rng = random.Random(f"greedy:{seed}")
        origin = PlanarPoint(base_rng.uniform(-5, 5), base_rng.uniform(-5, 5))
        target = 0
        while True:
            center = PlanarPoint(origin.x + 10.0 * target, origin.y)
            pts = goal.points_at(center, base_rng.uniform(0, 2 * math.pi) + 0.1 * target)
            for slot in (0, 1, 3, 4, 2):  # middle last
                if _free_spot(pts[slot], taken):
                    return pts[slot]
            target += 1

    if kind == "CircleSquatter":
        block = _block_bot_threat(p1_points, p2_points, goal)
        if block is not None and _free_spot(block, taken):
            return block
        inferred = _bot_circle(p2_points)
        if inferred is not None:
            center, pts = inferred
            angles = sorted(
                math.atan2(p.y - center.y, p.x - center.x) for p in pts
            )
            # camp the next extension spot one theta past the frontier
            a = angles[-1] + goal.theta
            while True:
                cand = PlanarPoint(center.x + math.cos(a), center.y + math.sin(a))
                if _free_spot(cand, taken):
                    return cand
                a += goal.theta
        # no circle to camp yet: spread out (clustered play would pin the
        # bot in retreat and never reach the on-circle case)
        n = len(p1_points) + 1
        while True:
            cand = PlanarPoint(50.0 * n, -30.0 * n)
            if _free_spot(cand, taken):
                return cand
            n += 1

    # ForcingMimic: replay the forcing sequence on a private far circle
    block = _block_bot_threat(p1_points, p2_points, goal)
    if block is not None and _free_spot(block, taken):
        return block
    center = PlanarPoint(500.0 + 7.0 * (seed % 97), -500.0)
    base = 2.0 * math.pi * (seed % 31) / 31.0
    k2 = 0
    while True:
        a = base + k2 * goal.theta / 2.0
        cand = PlanarPoint(center.x + math.cos(a), center.y + math.sin(a))
        if _free_spot(cand, taken):
            return cand
        k2 += 2


def simulate(kind: str, max_moves: int, seed: int, goal: GoalSet | None = None) -> dict:
    """Alternating play from the empty board: P1 adversary, P2 bot.

    Halts at ``max_moves`` or on a P1 completion (a bot failure).  The
    verdict aggregates the safety record; ``threats_unblocked`` counts
    bot moves after which an unblocked P1 4-point threat survived.
    """
    if max_moves < 1:
        raise ValueError("max_moves must be positive")
    goal = goal or GoalSet()
    state = BotState(goal=goal)
    p1_points: list[PlanarPoint] = []
    p2_points: list[PlanarPoint] = []
    transcript = []
    p1_completed = False
    threats_unblocked = 0
    moves = 0
    for i in range(1, max_moves + 1):
        if i % 2 == 1:
            pt = adversary_move(kind, p1_points, p2_points, goal, seed)
            p1_points.append(pt)
            phase = "adversary"
        else:
            pt, state = bot_move(state, p1_points, p2_points)
            p2_points.append(pt)
            # construction moves carry circle provenance; a bare point is
            # a threat block
            phase = state.phase if pt.on is not None else "block"
            if find_threats(p1_points, p2_points, goal, EPS_EXACT):
                threats_unblocked += 1
        row = {
            "i": i,
            "player": 1 if i % 2 == 1 else 2,
            "x": pt.x,
            "y": pt.y,
            "phase": phase,
        }
        if i % 2 == 0 and pt.on is not None:
            row["circle"] = pt.on.circle_id
            row["k2"] = pt.on.angle.k2
        transcript.append(row)
        moves = i
        if i % 2 == 1 and find_copies(p1_points, goal, EPS_EXACT):
            p1_completed = True
            break
    return {
        "transcript": transcript,
        "verdict": {
            "p1_completed": p1_completed,
            "threats_unblocked": threats_unblocked,
            "moves": moves,
        },
        "violations": list(state.violations),
    }
