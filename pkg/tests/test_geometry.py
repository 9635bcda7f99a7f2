import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from pentagame.geometry import (
    DEFAULT_T,
    ExactAngle,
    GoalSet,
    OnCircle,
    PlanarPoint,
    Circle,
    find_copies,
    find_threats,
    goal_points,
    min_enclosing_radius,
    rotate_about,
    safety_check,
    unit_circles_through,
)

from .oracles import naive_find_copies

GOAL = GoalSet()


def random_rigid(rng):
    return (rng.uniform(-50, 50), rng.uniform(-50, 50)), rng.uniform(0, 2 * math.pi)


class TestExactAngle:
    def test_equality_is_mod_two_on_base(self):
        assert ExactAngle(Fraction(1, 3), 5) == ExactAngle(Fraction(7, 3), 5)
        assert ExactAngle(Fraction(1, 3), 5) != ExactAngle(Fraction(1, 3), 4)
        assert ExactAngle(Fraction(1, 3), 5) != ExactAngle(Fraction(2, 3), 5)
        assert hash(ExactAngle(Fraction(1, 3), 5)) == hash(ExactAngle(Fraction(7, 3), 5))

    def test_equal_angles_are_numerically_close(self):
        a = ExactAngle(Fraction(5, 7), -3)
        b = ExactAngle(Fraction(5, 7) + 4, -3)
        assert abs(a.radians() - (b.radians() - 4 * math.pi)) < 1e-12

    def test_distinct_angles_are_numerically_separated(self):
        # typical ledger values; adversarial continued-fraction pairs can
        # get closer, but the game only produces small bases and k2 counts
        rng = random.Random(11)
        for _ in range(300):
            a = ExactAngle(Fraction(rng.randint(-50, 50), rng.randint(1, 50)), rng.randint(-100, 100))
            b = ExactAngle(Fraction(rng.randint(-50, 50), rng.randint(1, 50)), rng.randint(-100, 100))
            if a == b:
                continue
            diff = abs(a.radians() - b.radians()) % (2 * math.pi)
            diff = min(diff, 2 * math.pi - diff)
            assert diff > 1e-9

    def test_shifted(self):
        assert ExactAngle(Fraction(0), 2).shifted(3) == ExactAngle(Fraction(0), 5)


class TestRotation:
    def test_identity(self):
        p = rotate_about(PlanarPoint(0, 0), PlanarPoint(1, 0), 0)
        assert p.xy() == (1.0, 0.0)

    def test_single_theta_step(self):
        theta = DEFAULT_T * math.pi
        p = rotate_about(PlanarPoint(0, 0), PlanarPoint(1, 0), 2)
        assert math.isclose(p.x, math.cos(theta), abs_tol=1e-12)
        assert math.isclose(p.y, math.sin(theta), abs_tol=1e-12)

    def test_inverse_composition(self):
        start = PlanarPoint(0.3, -1.7)
        back = rotate_about(PlanarPoint(2, 1), rotate_about(PlanarPoint(2, 1), start, 4), -4)
        assert start.dist(back) < 1e-12

    def test_provenance_advances_on_circle(self):
        c = Circle("C", PlanarPoint(0, 0))
        p = c.point_at(ExactAngle(Fraction(0), 0))
        q = rotate_about(c.center, p, 6)
        assert q.on == OnCircle("C", ExactAngle(Fraction(0), 6))

    def test_provenance_kept_but_not_advanced_off_center(self):
        c = Circle("C", PlanarPoint(0, 0))
        p = c.point_at(ExactAngle(Fraction(1, 2), 0))
        q = rotate_about(PlanarPoint(5, 5), p, 2)
        assert q.on == p.on


class TestGoalSet:
    def test_canonical_layout(self):
        theta = GOAL.theta
        pts = goal_points(GOAL, (0.0, 0.0), 0.0, 1)
        expected = [0.0, theta, 1.5 * theta, 2 * theta, 3 * theta]
        for p, a in zip(pts, expected):
            assert math.isclose(p.x, math.cos(a), abs_tol=1e-12)
            assert math.isclose(p.y, math.sin(a), abs_tol=1e-12)

    def test_mirror_orientation(self):
        up = goal_points(GOAL, (0.0, 0.0), 0.0, 1)
        down = goal_points(GOAL, (0.0, 0.0), 0.0, -1)
        for p, q in zip(up, down):
            assert math.isclose(p.x, q.x, abs_tol=1e-12)
            assert math.isclose(p.y, -q.y, abs_tol=1e-12)

    def test_first_chord(self):
        pts = GOAL.points_at()
        assert math.isclose(pts[0].dist(pts[1]), 2 * math.sin(GOAL.theta / 2), abs_tol=1e-12)

    def test_t_bound_enforced(self):
        with pytest.raises(ValueError):
            GoalSet(t=0.2)


class TestUnitCircles:
    def test_diameter_case(self):
        cs = unit_circles_through(PlanarPoint(0, 0), PlanarPoint(2, 0))
        assert len(cs) == 1
        assert cs[0].center.dist(PlanarPoint(1, 0)) < 1e-12

    def test_two_circle_case(self):
        cs = unit_circles_through(PlanarPoint(0, 0), PlanarPoint(math.sqrt(2), 0))
        got = sorted((round(c.center.x, 9), round(c.center.y, 9)) for c in cs)
        r = round(math.sqrt(2) / 2, 9)
        assert got == [(r, -r), (r, r)]

    def test_too_far(self):
        assert unit_circles_through(PlanarPoint(0, 0), PlanarPoint(3, 0)) == []

    def test_coincident_rejected(self):
        with pytest.raises(ValueError):
            unit_circles_through(PlanarPoint(1, 1), PlanarPoint(1, 1))

    def test_circles_contain_inputs_and_meet_only_there(self):
        rng = random.Random(5)
        for _ in range(100):
            p = PlanarPoint(rng.uniform(-3, 3), rng.uniform(-3, 3))
            q = PlanarPoint(p.x + rng.uniform(0.05, 1.9), p.y)
            circles = unit_circles_through(p, q)
            for c in circles:
                assert abs(c.center.dist(p) - 1) < 1e-12
                assert abs(c.center.dist(q) - 1) < 1e-12
            if len(circles) == 2:
                a, b = (c.center for c in circles)
                d = a.dist(b)
                # the two centers' circles intersect exactly at p and q
                assert d < 2 + 1e-12
                for pt in (p, q):
                    assert abs(a.dist(pt) - 1) < 1e-12 and abs(b.dist(pt) - 1) < 1e-12


class TestFindCopies:
    def test_round_trip_recovers_placement(self):
        pts = list(goal_points(GOAL, (5.0, 3.0), 1.234, 1))
        copies = find_copies(pts, GOAL, 1e-9)
        assert len(copies) == 1
        c = copies[0]
        assert c.center.dist(PlanarPoint(5.0, 3.0)) < 1e-9
        d = (c.base - 1.234) % (2 * math.pi)
        assert min(d, 2 * math.pi - d) < 1e-9
        assert c.indices == (0, 1, 2, 3, 4)

    def test_perturbation_rejection(self):
        pts = list(goal_points(GOAL, (5.0, 3.0), 1.234, 1))
        pts[2] = PlanarPoint(pts[2].x + 1e-3, pts[2].y)
        assert find_copies(pts, GOAL, 1e-9) == []

    def test_two_disjoint_copies(self):
        pts = list(GOAL.points_at((0, 0), 0.4)) + list(GOAL.points_at((100, 0), 2.0))
        fast = {frozenset(c.indices) for c in find_copies(pts, GOAL, 1e-9)}
        assert fast == naive_find_copies(pts, GOAL, 1e-9)
        assert len(fast) == 2

    def test_reflected_copy_is_detected(self):
        pts = list(GOAL.points_at((2, 2), 0.7, orientation=-1))
        copies = find_copies(pts, GOAL, 1e-9)
        assert len(copies) == 1

    def test_matches_oracle_on_random_sets(self):
        rng = random.Random(17)
        for _ in range(40):
            pts = []
            if rng.random() < 0.7:
                center, base = random_rigid(rng)
                pts += list(GOAL.points_at(center, base, rng.choice((1, -1))))
            pts += [
                PlanarPoint(rng.uniform(-50, 50), rng.uniform(-50, 50))
                for _ in range(rng.randint(0, 6))
            ]
            rng.shuffle(pts)
            fast = {frozenset(c.indices) for c in find_copies(pts, GOAL, 1e-9)}
            assert fast == naive_find_copies(pts, GOAL, 1e-9)

    def test_eps_scaling(self):
        rng = random.Random(23)
        eps = 1e-9
        for _ in range(50):
            center, base = random_rigid(rng)
            clean = list(GOAL.points_at(center, base))
            # jitter well below eps keeps the copy; well above removes it
            small = [
                PlanarPoint(p.x + rng.uniform(-1, 1) * eps / 40, p.y + rng.uniform(-1, 1) * eps / 40)
                for p in clean
            ]
            assert len(find_copies(small, GOAL, eps)) == 1
            big = [
                PlanarPoint(p.x + rng.choice((-1, 1)) * 20 * eps, p.y + rng.choice((-1, 1)) * 20 * eps)
                for p in clean
            ]
            assert find_copies(big, GOAL, eps) == []

    def test_bad_eps(self):
        with pytest.raises(ValueError):
            find_copies([], GOAL, 0.0)


class TestFindThreats:
    def planted(self, missing):
        pts = list(GOAL.points_at((1.0, -2.0), 0.9))
        held = [p for i, p in enumerate(pts) if i != missing]
        return pts, held

    def test_missing_each_slot(self):
        for missing in range(5):
            pts, held = self.planted(missing)
            threats = find_threats(held, [], GOAL, 1e-9)
            assert len(threats) == 1
            th = threats[0]
            assert th.missing_point.dist(pts[missing]) < 1e-9
            assert th.copy.tags.count("free") == 1

    def test_blocked_by_opponent(self):
        pts, held = self.planted(2)
        assert find_threats(held, [pts[2]], GOAL, 1e-9) == []

    def test_blocked_by_own_fifth_point(self):
        pts, _ = self.planted(2)
        # all five held is a completed copy, not a threat
        assert find_threats(pts, [], GOAL, 1e-9) == []

    def test_three_points_no_threat(self):
        pts, held = self.planted(4)
        assert find_threats(held[:3], [], GOAL, 1e-9) == []

    def test_threats_match_bruteforce(self):
        rng = random.Random(31)
        for _ in range(25):
            center, base = random_rigid(rng)
            pts = list(GOAL.points_at(center, base, rng.choice((1, -1))))
            missing = rng.randrange(5)
            held = [p for i, p in enumerate(pts) if i != missing]
            held += [PlanarPoint(rng.uniform(-50, 50), rng.uniform(-50, 50)) for _ in range(4)]
            rng.shuffle(held)
            threats = find_threats(held, [], GOAL, 1e-9)
            spots = [t.missing_point for t in threats]
            assert any(s.dist(pts[missing]) < 1e-8 for s in spots)
            # every reported threat completes to a genuine copy
            for t in threats:
                full = list(t.copy.points)
                assert len(find_copies(full, GOAL, 1e-8)) == 1


class TestCircleIntersectionFact:
    def test_copy_off_center_meets_circle_in_at_most_two_points(self):
        # scaled-down version; the acceptance suite runs 10^4 placements
        rng = random.Random(41)
        for _ in range(500):
            cx, cy = rng.uniform(-3, 3), rng.uniform(-3, 3)
            if math.hypot(cx, cy) < 1e-6:
                continue
            pts = GOAL.points_at((cx, cy), rng.uniform(0, 2 * math.pi), rng.choice((1, -1)))
            on_c = sum(abs(math.hypot(p.x, p.y) - 1.0) <= 1e-9 for p in pts)
            assert on_c <= 2


class TestSafety:
    def test_min_enclosing_radius_cases(self):
        assert min_enclosing_radius([PlanarPoint(3, 4)]) == 0.0
        assert min_enclosing_radius([PlanarPoint(0, 0), PlanarPoint(6, 0)]) == 3.0
        eq = [PlanarPoint(0, 0), PlanarPoint(20, 0), PlanarPoint(10, 10 * math.sqrt(3))]
        assert math.isclose(min_enclosing_radius(eq), 20 / math.sqrt(3), rel_tol=1e-12)
        obtuse = [PlanarPoint(0, 0), PlanarPoint(10, 0), PlanarPoint(5, 0.1)]
        assert math.isclose(min_enclosing_radius(obtuse), 5.0, abs_tol=1e-3)
        with pytest.raises(ValueError):
            min_enclosing_radius([])

    def test_safety_check_basic(self):
        assert safety_check(PlanarPoint(100, 0), [PlanarPoint(0, 0)], [])
        assert not safety_check(PlanarPoint(5, 0), [PlanarPoint(0, 0)], [])

    def test_safety_check_tight_triple(self):
        tight = [PlanarPoint(0, 0), PlanarPoint(1, 0), PlanarPoint(0, 1)]
        assert not safety_check(PlanarPoint(100, 100), tight, [])

    def test_safety_check_wide_triple_is_fine(self):
        # circumradius 20/sqrt(3) > 10, so this triple fits in no radius-10 ball
        wide = [PlanarPoint(0, 0), PlanarPoint(20, 0), PlanarPoint(10, 10 * math.sqrt(3))]
        assert safety_check(PlanarPoint(100, 100), wide, [])


class TestPointJson:
    def test_round_trip(self):
        p = PlanarPoint(1.5, -0.25, OnCircle("C1", ExactAngle(Fraction(3, 8), -2)))
        assert PlanarPoint.from_dict(p.to_dict()) == p
        free = PlanarPoint(0.1, 0.2)
        assert free.to_dict()["on"] is None
        assert PlanarPoint.from_dict(free.to_dict()) == free
