"""Exhaustive optimal-play solver for achievement-game win types.

Classifies which win types Player 1 can force on a finite hypergraph by
backwards labeling of the game tree, accelerated by memoization on
(p1-bitset, p2-bitset) keys.  Also provides the classical
potential-function blocker and best-move extraction.

Win-type predicates on a complete play (moves are 1-based, P1 moves odd,
P2 moves even; turn k = moves 2k-1 and 2k):

* weak:        P1 eventually owns a full edge.
* strong:      P1's first completing move precedes P2's (absent = +inf).
* fair:        P1's first completing TURN precedes P2's.
* early:       fair, and at no point while P1 was incomplete did P2 hold
               all-but-one vertex of an edge carrying no P1 vertex
               (checked after each P2 move).
* humiliating: early, and P2 never held all-but-one vertex of ANY edge
               (blocked or not) before P1 completed.

The stronger predicates are defined conjunctively on top of the weaker
ones, which makes the humiliating => early => fair => strong => weak
chain hold by construction on every play, including degenerate boards
with singleton edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .hypergraph import (
    P1,
    P2,
    CapacityError,
    GameError,
    Hypergraph,
    Occupancy,
    Transcript,
)


class WinCriterion(Enum):
    WEAK = "weak"
    STRONG = "strong"
    FAIR = "fair"
    EARLY = "early"
    HUMILIATING = "humiliating"


# strongest first; each implies the next on the same play
CRITERION_ORDER = [
    WinCriterion.HUMILIATING,
    WinCriterion.EARLY,
    WinCriterion.FAIR,
    WinCriterion.STRONG,
    WinCriterion.WEAK,
]


@dataclass
class WinReport:
    """Per-criterion forced-win booleans for Player 1, plus search stats."""

    weak: bool
    strong: bool
    fair: bool
    early: bool
    humiliating: bool
    nodes: int = 0
    table_size: int = 0

    def __getitem__(self, criterion: WinCriterion) -> bool:
        return getattr(self, criterion.value)

    def is_monotone(self) -> bool:
        vals = [self[c] for c in CRITERION_ORDER]
        return all(not a or b for a, b in zip(vals, vals[1:]))

    def to_dict(self) -> dict:
        return {
            "weak": self.weak,
            "strong": self.strong,
            "fair": self.fair,
            "early": self.early,
            "humiliating": self.humiliating,
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class PlayEvents:
    """Event log of a (possibly partial) play, in 1-based move indices."""

    p1_done_move: Optional[int]  # first move after which P1 owns an edge
    p2_done_move: Optional[int]
    early_violated: bool  # unblocked P2 near-miss seen while P1 incomplete
    p2_nearmiss_move: Optional[int]  # first P2 move leaving P2 with >= |f|-1 of some f
    moves: int


def _turn(move_index: int) -> int:
    """1-based turn of a 1-based move index."""
    return (move_index + 1) // 2


def scan_play(transcript: Transcript, hypergraph: Hypergraph) -> PlayEvents:
    """Replay a transcript and record completion / near-miss events."""
    idx = {v: i for i, v in enumerate(hypergraph.vertices)}
    masks = hypergraph.edge_masks()
    sizes = [m.bit_count() for m in masks]
    p1 = p2 = 0
    p1_done = p2_done = nearmiss = None
    early_violated = False
    # an empty edge is complete for both sides before any move
    if any(m == 0 for m in masks):
        p1_done = p2_done = 0
    for k, (player, v) in enumerate(transcript.moves, start=1):
        bit = 1 << idx[v]
        if player == P1:
            p1 |= bit
            if p1_done is None and any(m & ~p1 == 0 for m in masks):
                p1_done = k
        else:
            p2 |= bit
            if p2_done is None and any(m & ~p2 == 0 for m in masks):
                p2_done = k
            # near-miss states are only evaluated after P2's own moves
            nm_any = False
            nm_unblocked = False
            for m, size in zip(masks, sizes):
                if (m & p2).bit_count() >= size - 1:
                    nm_any = True
                    if m & p1 == 0:
                        nm_unblocked = True
                        break
            if nm_any and nearmiss is None:
                nearmiss = k
            if nm_unblocked and (p1_done is None or k < p1_done):
                early_violated = True
    return PlayEvents(p1_done, p2_done, early_violated, nearmiss, len(transcript))


def play_outcome(transcript: Transcript, hypergraph: Hypergraph, criterion: WinCriterion) -> bool:
    """Evaluate a win-type predicate on a complete play."""
    if len(transcript) != hypergraph.n_vertices:
        raise GameError("play_outcome requires a complete transcript")
    ev = scan_play(transcript, hypergraph)
    return _events_outcome(ev, criterion)


def _events_outcome(ev: PlayEvents, criterion: WinCriterion) -> bool:
    weak = ev.p1_done_move is not None
    strong = weak and (ev.p2_done_move is None or ev.p1_done_move < ev.p2_done_move)
    fair = weak and (ev.p2_done_move is None or _turn(ev.p1_done_move) < _turn(ev.p2_done_move))
    if ev.p1_done_move == 0:  # empty edge: simultaneous "completion", no precedence
        strong = fair = False
    early = fair and strong and not ev.early_violated
    humiliating = early and (ev.p2_nearmiss_move is None or ev.p1_done_move < ev.p2_nearmiss_move)
    return {
        WinCriterion.WEAK: weak,
        WinCriterion.STRONG: strong,
        WinCriterion.FAIR: fair,
        WinCriterion.EARLY: early,
        WinCriterion.HUMILIATING: humiliating,
    }[criterion]


class _Search:
    """Memoized minimax over occupancy bitsets for one criterion.

    Interior (recursive) states are always criterion-undecided, which for
    every criterion below pins the relevant event flags, so (p1, p2) is a
    sound transposition key; mover parity is derived from popcounts.
    """

    def __init__(self, hypergraph: Hypergraph, criterion: WinCriterion, hero: int = P1):
        hypergraph.check_solver_capacity()
        if hero == P2 and criterion is not WinCriterion.STRONG:
            raise ValueError("second-player solving is supported for the strong criterion only")
        self.h = hypergraph
        self.criterion = criterion
        self.hero = hero
        self.n = hypergraph.n_vertices
        self.full = (1 << self.n) - 1
        self.masks = hypergraph.edge_masks()
        self.sizes = [m.bit_count() for m in self.masks]
        self.memo: dict[tuple[int, int], bool] = {}
        self.nodes = 0

    # -- predicate helpers on bitsets ------------------------------------

    def _complete(self, bits: int) -> bool:
        return any(m & ~bits == 0 for m in self.masks)

    def _immediate_completion_exists(self, own: int, opp: int) -> bool:
        """Can `own` complete some edge with a single move right now?"""
        for m in self.masks:
            if m & opp:
                continue
            if (m & ~own).bit_count() == 1:
                return True
        return False

    def _unblocked_nearmiss(self, p1: int, p2: int) -> bool:
        for m, size in zip(self.masks, self.sizes):
            if m & p1 == 0 and (m & p2).bit_count() >= size - 1:
                return True
        return False

    def _any_nearmiss(self, p2: int) -> bool:
        for m, size in zip(self.masks, self.sizes):
            if (m & p2).bit_count() >= size - 1:
                return True
        return False

    # -- search -----------------------------------------------------------

    def value(self, p1: int = 0, p2: int = 0) -> bool:
        if any(m == 0 for m in self.masks):
            # empty edge: both sides complete from the start
            return self.criterion is WinCriterion.WEAK and self.hero == P1
        return self._rec(p1, p2)

    def _rec(self, p1: int, p2: int) -> bool:
        key = (p1, p2)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        occupied = p1 | p2
        mover = P1 if p1.bit_count() == p2.bit_count() else P2
        if occupied == self.full:
            val = False  # undecided at exhaustion means the win never happened
        else:
            hero_moves = mover == self.hero
            best = None
            free = self.full & ~occupied
            bits = free
            while bits:
                bit = bits & -bits
                bits &= bits - 1
                child = self._step(p1, p2, mover, bit)
                if child is UNDECIDED:
                    child = self._rec(p1 | bit if mover == P1 else p1, p2 | bit if mover == P2 else p2)
                if hero_moves and child:
                    best = True
                    break
                if not hero_moves and not child:
                    best = False
                    break
                best = child
            val = bool(best)
        self.memo[key] = val
        return val

    def _step(self, p1: int, p2: int, mover: int, bit: int):
        """Terminal value of the move, or UNDECIDED to recurse."""
        crit = self.criterion
        np1, np2 = (p1 | bit, p2) if mover == P1 else (p1, p2 | bit)
        if crit is WinCriterion.WEAK:
            if mover == P1 and self._complete(np1):
                return True
            return UNDECIDED
        if crit is WinCriterion.STRONG:
            hero_bits, villain_bits = (np1, np2) if self.hero == P1 else (np2, np1)
            mover_is_hero = mover == self.hero
            if mover_is_hero and self._complete(hero_bits):
                return True
            if not mover_is_hero and self._complete(villain_bits):
                return False
            return UNDECIDED
        # fair / early / humiliating (hero is P1)
        if mover == P1:
            if self._complete(np1):
                # decided after P2's reply: fair fails only if P2 can
                # complete within the same turn.  Post-completion P2
                # near-misses are outside the early/humiliating windows.
                return not self._immediate_completion_exists(np2, np1)
            return UNDECIDED
        # P2 move while P1 is incomplete
        if self._complete(np2):
            return False
        if crit is WinCriterion.EARLY and self._unblocked_nearmiss(np1, np2):
            return False
        if crit is WinCriterion.HUMILIATING and (
            self._any_nearmiss(np2) or self._unblocked_nearmiss(np1, np2)
        ):
            return False
        return UNDECIDED


UNDECIDED = object()


def solve(
    hypergraph: Hypergraph,
    criterion: WinCriterion,
    hero: int = P1,
    _stats: Optional[dict] = None,
) -> bool:
    """True iff `hero` can force the criterion against optimal resistance."""
    s = _Search(hypergraph, criterion, hero)
    val = s.value()
    if _stats is not None:
        _stats["nodes"] = _stats.get("nodes", 0) + s.nodes
        _stats["table"] = _stats.get("table", 0) + len(s.memo)
    return val


def classify(hypergraph: Hypergraph) -> WinReport:
    """Solve all five criteria for Player 1."""
    stats: dict = {}
    vals = {c: solve(hypergraph, c, _stats=stats) for c in WinCriterion}
    report = WinReport(
        weak=vals[WinCriterion.WEAK],
        strong=vals[WinCriterion.STRONG],
        fair=vals[WinCriterion.FAIR],
        early=vals[WinCriterion.EARLY],
        humiliating=vals[WinCriterion.HUMILIATING],
        nodes=stats.get("nodes", 0),
        table_size=stats.get("table", 0),
    )
    return report


# ---------------------------------------------------------------------------
# mid-game evaluation and move extraction


def position_value(transcript: Transcript, hypergraph: Hypergraph, criterion: WinCriterion) -> bool:
    """Minimax value of the criterion from an arbitrary legal position."""
    hypergraph.check_solver_capacity()
    ev = scan_play(transcript, hypergraph)
    decided = _decide_from_events(ev, hypergraph, transcript, criterion)
    if decided is not None:
        return decided
    occ = Occupancy.from_transcript(transcript)
    idx = {v: i for i, v in enumerate(hypergraph.vertices)}
    p1 = sum(1 << idx[v] for v in occ.p1)
    p2 = sum(1 << idx[v] for v in occ.p2)
    s = _Search(hypergraph, criterion)
    return s.value(p1, p2)


def _decide_from_events(
    ev: PlayEvents, h: Hypergraph, transcript: Transcript, criterion: WinCriterion
) -> Optional[bool]:
    """Resolve the criterion if the play prefix already determines it."""
    exhausted = ev.moves == h.n_vertices
    if exhausted:
        return _events_outcome(ev, criterion)
    if ev.p1_done_move == 0:  # empty edge: complete for both sides at move 0
        return criterion is WinCriterion.WEAK
    if criterion is WinCriterion.WEAK:
        return True if ev.p1_done_move is not None else None
    if criterion is WinCriterion.STRONG:
        if ev.p1_done_move is not None:
            return ev.p2_done_move is None or ev.p1_done_move < ev.p2_done_move
        if ev.p2_done_move is not None:
            return False
        return None
    # fair / early / humiliating
    if criterion is WinCriterion.EARLY and ev.early_violated:
        return False
    if criterion is WinCriterion.HUMILIATING and (
        ev.early_violated
        or (ev.p2_nearmiss_move is not None and (ev.p1_done_move is None or ev.p2_nearmiss_move < ev.p1_done_move))
    ):
        return False
    if ev.p2_done_move is not None and (ev.p1_done_move is None or ev.p2_done_move < ev.p1_done_move):
        return False
    if ev.p1_done_move is not None:
        n1 = _turn(ev.p1_done_move)
        if ev.p2_done_move is not None:
            return n1 < _turn(ev.p2_done_move)
        if ev.moves >= 2 * n1:
            return True  # P2's reply in the completing turn has passed
        # transient: P2 moves next within the completing turn
        occ = Occupancy.from_transcript(transcript)
        idx = {v: i for i, v in enumerate(h.vertices)}
        p1 = sum(1 << idx[v] for v in occ.p1)
        p2 = sum(1 << idx[v] for v in occ.p2)
        s = _Search(h, criterion)
        return not s._immediate_completion_exists(p2, p1)
    return None


def best_move(transcript: Transcript, hypergraph: Hypergraph, criterion: WinCriterion) -> str:
    """A move preserving the solved minimax value for the mover.

    Ties break by vertex index order.  The mover optimizes the criterion
    from Player 1's perspective: P1 seeks value True, P2 value False.
    """
    hypergraph.check_solver_capacity()
    if len(transcript) >= hypergraph.n_vertices:
        raise GameError("game over")
    chosen = transcript.chosen()
    mover = transcript.next_player
    want = mover == P1
    from .hypergraph import apply_move

    fallback = None
    for v in hypergraph.vertices:
        if v in chosen:
            continue
        if fallback is None:
            fallback = v
        child = position_value(apply_move(transcript, hypergraph, v), hypergraph, criterion)
        if child == want:
            return v
    return fallback  # value not preservable; lowest-indexed legal move


# ---------------------------------------------------------------------------
# Erdos-Selfridge potential blocker


def es_potential(occupancy: Occupancy, hypergraph: Hypergraph, maker: int = P1) -> float:
    """Danger potential: sum over blocker-free edges of 2^-(unclaimed by maker)."""
    maker_set = occupancy.held(maker)
    blocker_set = occupancy.opponent_of(maker)
    total = 0.0
    for e in hypergraph.edges:
        if e & blocker_set:
            continue
        total += 2.0 ** -(len(e) - len(e & maker_set))
    return total


def es_blocker_move(occupancy: Occupancy, hypergraph: Hypergraph, maker: int = P1) -> str:
    """Greedy potential blocker: claim the unchosen vertex of maximal danger.

    The vertex score is the summed current contribution of the live edges
    through it (equivalently, the potential drop achieved by blocking
    them).  Ties break by vertex order.
    """
    maker_set = occupancy.held(maker)
    blocker_set = occupancy.opponent_of(maker)
    taken = maker_set | blocker_set
    best_v, best_score = None, -1.0
    for v in hypergraph.vertices:
        if v in taken:
            continue
        score = 0.0
        for e in hypergraph.edges:
            if v in e and not (e & blocker_set):
                score += 2.0 ** -(len(e) - len(e & maker_set))
        if score > best_score:
            best_v, best_score = v, score
    if best_v is None:
        raise GameError("no unchosen vertex remains")
    return best_v
