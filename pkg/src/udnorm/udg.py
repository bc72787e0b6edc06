"""Decorated unit-distance graphs: build them exactly from a point sequence
and a polygonal norm, verify realizations, and prune color classes to a
proper edge coloring.

Vertices are 1-based. Edges are stored sorted; an edge's color is the index
of its canonical direction in the lexicographically sorted distinct
direction list, and its sign records which endpoint order realizes that
canonical direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import kernels
from .norms import NormOracle, SymmetricPolygon
from .pointsets import PointSeq
from .ratlin import Vec2

Edge = tuple[int, int]


def canonical_direction(v: Vec2) -> tuple[Vec2, int]:
    """(u, s) with u = s·v in the closed upper halfplane minus the negative
    x-axis; rejects the zero vector."""
    if v.is_zero():
        raise ValueError("zero vector has no canonical direction")
    if v.y > 0 or (v.y == 0 and v.x > 0):
        return v, 1
    return -v, -1


@dataclass(frozen=True)
class DecoratedUDG:
    """Graph on [n] with edge colors, signs, and (optionally) the direction list.

    An abstract decorated graph carries directions=None; graphs built from a
    realization carry the sorted distinct canonical directions, and color i
    refers to directions[i−1].
    """

    n: int
    edges: tuple[Edge, ...]
    colors: tuple[int, ...]
    signs: tuple[int, ...]
    directions: Optional[tuple[Vec2, ...]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        if not (len(self.edges) == len(self.colors) == len(self.signs)):
            raise ValueError("edge decoration lengths differ")
        prev = None
        for (a, b) in self.edges:
            if not (1 <= a < b <= self.n):
                raise ValueError(f"bad edge ({a},{b})")
            if prev is not None and not (prev < (a, b)):
                raise ValueError("edges must be sorted and distinct")
            prev = (a, b)
        for c in self.colors:
            if not (1 <= c <= self.k):
                raise ValueError("color out of range")
        for s in self.signs:
            if s not in (-1, 1):
                raise ValueError("signs must be ±1")
        if self.directions is not None:
            if len(self.directions) != self.k:
                raise ValueError("need one direction per color")
            for u, v in zip(self.directions, self.directions[1:]):
                if not (u.as_tuple() < v.as_tuple()):
                    raise ValueError("directions must be strictly increasing")

    @property
    def k(self) -> int:
        return max(self.colors, default=0)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def color_of(self, edge: Edge) -> int:
        return self.colors[self.edges.index(edge)]

    def sign_of(self, edge: Edge) -> int:
        return self.signs[self.edges.index(edge)]

    def decoration(self) -> dict[Edge, tuple[int, int]]:
        return {e: (c, s) for e, c, s in zip(self.edges, self.colors, self.signs)}

    def without_directions(self) -> "DecoratedUDG":
        return DecoratedUDG(self.n, self.edges, self.colors, self.signs, None)

    def color_classes(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {}
        for e, c in zip(self.edges, self.colors):
            out.setdefault(c, []).append(e)
        return out

    def max_color_degree(self) -> int:
        """Largest number of equal-colored edges at a single vertex."""
        deg: dict[tuple[int, int], int] = {}
        for (a, b), c in zip(self.edges, self.colors):
            deg[(a, c)] = deg.get((a, c), 0) + 1
            deg[(b, c)] = deg.get((b, c), 0) + 1
        return max(deg.values(), default=0)


def build_udg(P: PointSeq, B: SymmetricPolygon) -> DecoratedUDG:
    """The decorated unit-distance graph of P under the polygonal norm B.

    The edge test gauge(p_b − p_a) == 1 is exact; the O(n²) scan runs on the
    active kernel backend over integer-scaled coordinates.
    """
    constraints = list(zip(B.normals, B.offsets))
    pairs = kernels.unit_pair_indices(list(P), constraints)
    edges = []
    decorated = []
    for i, j in pairs:
        a, b = i + 1, j + 1
        u, s = canonical_direction(P[j] - P[i])
        edges.append((a, b))
        decorated.append((u, s))
    directions = sorted(set(u.as_tuple() for u, _ in decorated))
    index = {t: pos + 1 for pos, t in enumerate(directions)}
    colors = tuple(index[u.as_tuple()] for u, _ in decorated)
    signs = tuple(s for _, s in decorated)
    G = DecoratedUDG(
        n=len(P),
        edges=tuple(edges),
        colors=colors,
        signs=signs,
        directions=tuple(Vec2(x, y) for x, y in directions),
    )
    assert G.max_color_degree() <= 2, "geometry bounds color degree by two"
    return G


def count_unit_distances(P: PointSeq, B: SymmetricPolygon) -> int:
    """Number of pairs at exact polygonal distance 1 (brute-force O(n²) scan)."""
    constraints = list(zip(B.normals, B.offsets))
    return len(kernels.unit_pair_indices(list(P), constraints))


def count_unit_distances_oracle(P: PointSeq, oracle: NormOracle) -> int:
    """Unit-pair count under a norm oracle.

    Polygonal and euclidean tests are exact; p-norms use the documented
    float tolerance and are for experiments only.
    """
    if oracle.kind == "polygon":
        return count_unit_distances(P, oracle.polygon)
    pts = list(P)
    count = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if oracle.is_unit(pts[j] - pts[i]):
                count += 1
    return count


def verify_realization(G: DecoratedUDG, P: PointSeq, B: SymmetricPolygon) -> bool:
    """True iff the decorated graph of P under B equals G (directions too,
    when G carries them). Equality, not isomorphism."""
    built = build_udg(P, B)
    if (built.n, built.edges, built.colors, built.signs) != (
        G.n, G.edges, G.colors, G.signs
    ):
        return False
    if G.directions is not None and built.directions != G.directions:
        return False
    return True


class PruneError(ValueError):
    """A color class has a vertex of color-degree ≥ 3, so G is unrealizable."""


def prune_to_proper(G: DecoratedUDG) -> DecoratedUDG:
    """Keep an alternating matching inside every color class (paths keep
    ⌈e/2⌉ edges, cycles ⌊e/2⌋), yielding a proper coloring with ≥ |E|/3 of
    the edges."""
    keep: set[Edge] = set()
    for color, class_edges in G.color_classes().items():
        adj: dict[int, list[int]] = {}
        for a, b in class_edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        for v, nbrs in adj.items():
            if len(nbrs) > 2:
                raise PruneError(
                    f"color {color} has {len(nbrs)} edges at vertex {v}")
        visited: set[int] = set()
        # path components: walk from the smallest degree-1 endpoint,
        # keep edges at even walk positions (⌈e/2⌉ of them)
        for start in sorted(adj):
            if start in visited or len(adj[start]) != 1:
                continue
            walk = _walk_path(adj, start, visited)
            for idx in range(0, len(walk) - 1, 2):
                keep.add(_norm_edge(walk[idx], walk[idx + 1]))
        # everything left is a cycle: keep ⌊e/2⌋ alternating edges
        for start in sorted(adj):
            if start in visited:
                continue
            walk = _walk_cycle(adj, start, visited)
            e = len(walk)
            stop = e - 1 if e % 2 else e
            for idx in range(0, stop, 2):
                keep.add(_norm_edge(walk[idx], walk[(idx + 1) % e]))
    kept = [
        (e, c, s) for e, c, s in zip(G.edges, G.colors, G.signs) if e in keep
    ]
    return DecoratedUDG(
        n=G.n,
        edges=tuple(e for e, _, _ in kept),
        colors=tuple(c for _, c, _ in kept),
        signs=tuple(s for _, _, s in kept),
        directions=G.directions,
    )


def _norm_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def _walk_path(adj: dict[int, list[int]], start: int, visited: set[int]) -> list[int]:
    walk = [start]
    visited.add(start)
    prev, cur = None, start
    while True:
        nxt = [u for u in adj[cur] if u != prev]
        if not nxt:
            return walk
        prev, cur = cur, min(nxt)
        visited.add(cur)
        walk.append(cur)


def _walk_cycle(adj: dict[int, list[int]], start: int, visited: set[int]) -> list[int]:
    walk = [start]
    visited.add(start)
    prev, cur = None, start
    while True:
        step = min(u for u in adj[cur] if u != prev)
        if step == start:
            return walk
        visited.add(step)
        walk.append(step)
        prev, cur = cur, step
