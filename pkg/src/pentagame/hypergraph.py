"""Hypergraph and game-position data model for achievement games.

A finite achievement game is played on a hypergraph: two players alternate
claiming vertices, each trying to own every vertex of some edge.  This
module holds the immutable board/transcript types, move application,
completion and near-miss queries, and builders for the example boards
used throughout the test suite (binary-tree paths, the two-row family
F_n, and clique games).

All types are immutable values; "mutation" always returns a new value.
Vertex ids are opaque strings in the file formats and are mapped to dense
indices internally so the solver can work on bitsets.  The solver path is
capped at 64 vertices; the data model itself accepts larger hypergraphs.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

SOLVER_VERTEX_CAP = 64

P1 = 1
P2 = 2


class GameError(Exception):
    """Base class for game-rule violations."""


class IllegalMoveError(GameError):
    """A move targets an occupied vertex or breaks alternation."""


class UnknownVertexError(GameError):
    """A vertex id is not part of the hypergraph."""


class CapacityError(GameError):
    """The hypergraph exceeds a documented solver limit."""


@dataclass(frozen=True)
class Hypergraph:
    """An ordered vertex list plus a family of edges (vertex-id sets).

    Edges are stored as frozensets; duplicates are rejected at
    construction (file loading dedups with a warning instead, see
    :func:`load_hypergraph`).
    """

    vertices: tuple[str, ...]
    edges: tuple[frozenset[str], ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        vset = set(self.vertices)
        seen = set()
        for e in self.edges:
            if not e:
                # Empty edges are allowed: they arise from vertex removal
                # (see strategy_steal.restrict) and count as trivially
                # complete for either player.
                pass
            if not e <= vset:
                raise UnknownVertexError(f"edge {sorted(e)} not a subset of the vertex set")
            if e in seen:
                raise ValueError(f"duplicate edge {sorted(e)}")
            seen.add(e)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def index_of(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise UnknownVertexError(vertex) from None

    def edge_masks(self) -> list[int]:
        """Edges as bitmasks over vertex indices (solver representation)."""
        masks = []
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << self._index[v]
            masks.append(m)
        return masks

    def check_solver_capacity(self) -> None:
        if self.n_vertices > SOLVER_VERTEX_CAP:
            raise CapacityError(
                f"{self.n_vertices} vertices exceeds the {SOLVER_VERTEX_CAP}-vertex solver cap"
            )


def make_hypergraph(vertices: Iterable[str], edges: Iterable[Iterable[str]]) -> Hypergraph:
    return Hypergraph(tuple(vertices), tuple(frozenset(e) for e in edges))


@dataclass(frozen=True)
class Transcript:
    """Alternating move history: (player, vertex id) pairs, P1 first."""

    moves: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        seen = set()
        for i, (player, v) in enumerate(self.moves):
            expected = P1 if i % 2 == 0 else P2
            if player != expected:
                raise IllegalMoveError(f"move {i}: expected P{expected}, got P{player}")
            if v in seen:
                raise IllegalMoveError(f"vertex {v!r} chosen twice")
            seen.add(v)

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def next_player(self) -> int:
        return P1 if len(self.moves) % 2 == 0 else P2

    def chosen(self) -> frozenset[str]:
        return frozenset(v for _, v in self.moves)


@dataclass(frozen=True)
class Occupancy:
    """Both players' vertex sets.

    Transcript-derived occupancies always satisfy |p1| - |p2| in {0, 1};
    ad-hoc analytic occupancies (e.g. potential queries) may not, so only
    disjointness is enforced here.
    """

    p1: frozenset[str] = frozenset()
    p2: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.p1 & self.p2:
            raise IllegalMoveError("players share a vertex")

    @classmethod
    def from_transcript(cls, transcript: Transcript) -> "Occupancy":
        p1 = frozenset(v for p, v in transcript.moves if p == P1)
        p2 = frozenset(v for p, v in transcript.moves if p == P2)
        return cls(p1, p2)

    def held(self, player: int) -> frozenset[str]:
        return self.p1 if player == P1 else self.p2

    def opponent_of(self, player: int) -> frozenset[str]:
        return self.p2 if player == P1 else self.p1


def apply_move(transcript: Transcript, hypergraph: Hypergraph, vertex: str) -> Transcript:
    """Extend a transcript by one legal move (the mover is implied)."""
    hypergraph.index_of(vertex)  # raises UnknownVertexError
    if vertex in transcript.chosen():
        raise IllegalMoveError(f"vertex {vertex!r} already chosen")
    if len(transcript) >= hypergraph.n_vertices:
        raise IllegalMoveError("board exhausted")
    return Transcript(transcript.moves + ((transcript.next_player, vertex),))


def completed_edges(occupancy: Occupancy, hypergraph: Hypergraph, player: int) -> list[frozenset[str]]:
    """Edges fully contained in the player's vertex set."""
    own = occupancy.held(player)
    return [e for e in hypergraph.edges if e <= own]


def near_miss_edges(
    occupancy: Occupancy,
    hypergraph: Hypergraph,
    player: int,
    unblocked_only: bool,
) -> list[frozenset[str]]:
    """Edges where the player owns exactly |e|-1 vertices.

    With unblocked_only, the opponent must own none of the edge (the
    early-win predicate); otherwise blocked edges count too (the
    humiliating-win predicate).
    """
    own = occupancy.held(player)
    opp = occupancy.opponent_of(player)
    out = []
    for e in hypergraph.edges:
        if len(e & own) == len(e) - 1:
            if unblocked_only and e & opp:
                continue
            out.append(e)
    return out


# ---------------------------------------------------------------------------
# builders


def build_ht(depth: int) -> Hypergraph:
    """Root-to-leaf path hypergraph of the balanced binary tree of `depth`.

    Vertices are the 2^(depth+1)-1 tree nodes (heap-indexed, ids "t1"..);
    edges are the 2^depth root-to-leaf paths, each of size depth+1.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1 (a single-vertex tree has no directed arc)")
    n_nodes = 2 ** (depth + 1) - 1
    vertices = tuple(f"t{i}" for i in range(1, n_nodes + 1))
    edges = []
    for leaf in range(2 ** depth, 2 ** (depth + 1)):
        path = []
        node = leaf
        while node >= 1:
            path.append(f"t{node}")
            node //= 2
        edges.append(frozenset(path))
    return Hypergraph(vertices, tuple(edges))


def build_fn(n: int) -> Hypergraph:
    """Two-row hypergraph on [n] x {0,1}.

    Type 1 edges pick one of (m,0)/(m,1) per column with (1,0) mandatory
    (2^(n-1) of them, size n); Type 2 edges are the n column pairs.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    vid = lambda m, z: f"v{m}_{z}"
    vertices = tuple(vid(m, z) for m in range(1, n + 1) for z in (0, 1))
    edges: list[frozenset[str]] = []
    for bits in range(2 ** (n - 1)):
        e = [vid(1, 0)]
        for m in range(2, n + 1):
            z = (bits >> (m - 2)) & 1
            e.append(vid(m, z))
        edges.append(frozenset(e))
    for m in range(1, n + 1):
        edges.append(frozenset({vid(m, 0), vid(m, 1)}))
    # n=1: the Type 1 edge {(1,0)} and the Type 2 edge are distinct.
    return Hypergraph(vertices, tuple(dict.fromkeys(edges)))


def build_clique_game(board_n: int, goal_k: int) -> Hypergraph:
    """Clique achievement game: vertices are K_board_n edges, goals are k-cliques."""
    if not 2 <= goal_k <= board_n:
        raise ValueError("need 2 <= goal_k <= board_n")
    n_pairs = board_n * (board_n - 1) // 2
    if n_pairs > SOLVER_VERTEX_CAP:
        raise CapacityError(f"C({board_n},2)={n_pairs} exceeds the {SOLVER_VERTEX_CAP}-vertex cap")
    pid = lambda a, b: f"e{a}_{b}"
    vertices = tuple(pid(a, b) for a, b in combinations(range(1, board_n + 1), 2))
    edges = tuple(
        frozenset(pid(a, b) for a, b in combinations(clique, 2))
        for clique in combinations(range(1, board_n + 1), goal_k)
    )
    return Hypergraph(vertices, edges)


# ---------------------------------------------------------------------------
# file formats


def load_hypergraph(path) -> Hypergraph:
    """Read the hypergraph JSON format; duplicate edges dedup with a warning."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    vertices = list(data["vertices"])
    raw_edges = [frozenset(e) for e in data["edges"]]
    edges = list(dict.fromkeys(raw_edges))
    if len(edges) != len(raw_edges):
        log.warning("%s: %d duplicate edge(s) removed", path, len(raw_edges) - len(edges))
    return Hypergraph(tuple(vertices), tuple(edges))


def dump_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump({"vertices": list(h.vertices), "edges": [sorted(e) for e in h.edges]}, f)


def load_transcript(path) -> Transcript:
    """Read transcript JSONL: one `{"i","player","vertex"}` object per line."""
    moves = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            moves.append((rec["i"], rec["player"], rec["vertex"]))
    moves.sort(key=lambda r: r[0])
    return Transcript(tuple((p, v) for _, p, v in moves))


def dump_transcript(t: Transcript, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for i, (p, v) in enumerate(t.moves):
            f.write(json.dumps({"i": i, "player": p, "vertex": v}) + "\n")
