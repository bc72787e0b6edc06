"""Edge-colored graph machinery: average-degree core, cut-robust vertex
sets, and the greedy connected color cover, each with an independently
verifiable output contract.

Every threshold comparison Δ < r·log₂(imb) is decided exactly: for rational
r = p/q it reduces to the integer comparison 2^(Δq)·min^p < |W|^p. The only
place a logarithm is *computed* (rationalizing r = C·q·log₂log₂ n) uses a
certified dyadic upper bound, and the final contract never depends on it.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import kernels
from .ratlin import RationalLike, log2_interval, rat
from .udg import DecoratedUDG

Edge = tuple[int, int]

DEFAULT_EXHAUSTIVE_CAP = 18


def exhaustive_cap(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("UDNORM_EXHAUSTIVE_CAP")
    return int(env) if env else DEFAULT_EXHAUSTIVE_CAP


class GraphError(ValueError):
    pass


class CoverFailure(RuntimeError):
    """A search step could not meet its contract; carries the trace."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class EdgeColoredGraph:
    """Simple undirected graph on [n] with an edge coloring."""

    n: int
    edges: tuple[Edge, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("need at least one vertex")
        if len(self.edges) != len(self.colors):
            raise GraphError("one color per edge required")
        seen = set()
        for a, b in self.edges:
            if not (1 <= a < b <= self.n):
                raise GraphError(f"bad edge ({a},{b})")
            if (a, b) in seen:
                raise GraphError(f"duplicate edge ({a},{b})")
            seen.add((a, b))

    @staticmethod
    def from_udg(G: DecoratedUDG) -> "EdgeColoredGraph":
        return EdgeColoredGraph(G.n, G.edges, G.colors)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n + 1)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_proper(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for (a, b), c in zip(self.edges, self.colors):
            if (a, c) in seen or (b, c) in seen:
                return False
            seen.add((a, c))
            seen.add((b, c))
        return True

    def induced_edges(self, W: Sequence[int]) -> list[tuple[Edge, int]]:
        wset = set(W)
        return [
            ((a, b), c)
            for (a, b), c in zip(self.edges, self.colors)
            if a in wset and b in wset
        ]

    def colors_on(self, W: Sequence[int]) -> set[int]:
        return {c for _, c in self.induced_edges(W)}


# --- exact threshold comparisons ----------------------------------------------


def delta_below_r_log_imb(delta: int, r: Fraction, total: int, min_side: int) -> bool:
    """Exact test Δ < r·log₂(imb) with imb = total/min_side.

    Equivalent integer comparison: 2^(Δ·q)·min^p < total^p for r = p/q.
    """
    p, q = r.numerator, r.denominator
    return (1 << (delta * q)) * min_side**p < total**p


def weak_delta_table(w: int, r: Fraction) -> list[int]:
    """thr[s] = largest Δ with Δ < r·log₂(w/s) for min-side size s (−1: none)."""
    thr = [-1] * (w // 2 + 1)
    for s in range(1, w // 2 + 1):
        d = -1
        while delta_below_r_log_imb(d + 1, r, w, s):
            d += 1
        thr[s] = d
    return thr


def degree_at_least_r_log(deg: int, r: Fraction, value: Fraction) -> bool:
    """Exact test deg ≥ r·log₂(value) for rational value > 0."""
    if value <= 1:
        return True
    p, q = r.numerator, r.denominator
    num, den = value.numerator, value.denominator
    # deg ≥ r·log₂(num/den)  ⟺  2^(deg·q)·den^p ≥ num^p
    return (1 << (deg * q)) * den**p >= num**p


# --- average-degree core -------------------------------------------------------


def min_degree_core(G: EdgeColoredGraph) -> tuple[int, ...]:
    """Vertices surviving repeated deletion of degree < δ/2 (δ = average
    degree of the original graph); nonempty with min degree ≥ δ/2."""
    if G.edge_count == 0:
        raise GraphError("graph has no edges")
    threshold = Fraction(2 * G.edge_count, G.n) / 2
    adj = G.adjacency()
    alive = set(range(1, G.n + 1))
    deg = {v: len(adj[v]) for v in alive}
    queue = sorted(v for v in alive if deg[v] < threshold)
    while queue:
        v = queue.pop(0)
        if v not in alive or deg[v] >= threshold:
            continue
        alive.remove(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
                if deg[u] < threshold:
                    queue.append(u)
    assert alive, "averaging argument guarantees a nonempty core"
    return tuple(sorted(alive))


# --- weak cuts and the robust core --------------------------------------------


@dataclass(frozen=True)
class WeakCut:
    A: tuple[int, ...]
    B: tuple[int, ...]
    delta: int


def _restricted_masks(G: EdgeColoredGraph, W: Sequence[int]) -> list[int]:
    order = list(W)
    pos = {v: i for i, v in enumerate(order)}
    adj = G.adjacency()
    masks = []
    for v in order:
        m = 0
        for u in adj[v]:
            if u in pos:
                m |= 1 << pos[u]
        masks.append(m)
    return masks


def _mask_to_cut(W: Sequence[int], mask: int, delta: int) -> WeakCut:
    A = tuple(v for i, v in enumerate(W) if (mask >> i) & 1)
    B = tuple(v for i, v in enumerate(W) if not (mask >> i) & 1)
    return WeakCut(A, B, delta)


def find_weak_cut(G: EdgeColoredGraph, W: Sequence[int], r: RationalLike,
                  cap: Optional[int] = None, seed: int = 0) -> Optional[WeakCut]:
    """A bipartition (A, B) of W with Δ(A,B) < r·log₂ imb(A,B), or None.

    Exhaustive over all 2^(|W|−1)−1 cuts when |W| ≤ the exhaustive cap
    (returning the minimum-Δ weak cut, ties to the earliest in canonical
    order); otherwise a heuristic search over singleton cuts, BFS-ball cuts
    from every vertex at every radius, and a seeded local-search pass.
    """
    W = tuple(sorted(W))
    if len(W) < 2:
        raise GraphError("need at least two vertices")
    r = rat(r)
    masks = _restricted_masks(G, W)
    w = len(W)
    if w <= exhaustive_cap(cap):
        thr = weak_delta_table(w, r)
        hit = kernels.min_weak_cut(masks, thr)
        if hit is None:
            return None
        mask, delta = hit
        return _mask_to_cut(W, mask, delta)
    return _heuristic_weak_cut(W, masks, r, seed)


def _heuristic_weak_cut(W: tuple[int, ...], masks: list[int], r: Fraction,
                        seed: int) -> Optional[WeakCut]:
    w = len(W)
    thr = weak_delta_table(w, r)
    full = (1 << w) - 1
    candidates: set[int] = set()

    def add(mask: int):
        if mask & 1:
            mask ^= full  # canonical side: vertex 0 stays in B
        if mask not in (0, full):
            candidates.add(mask)

    for i in range(w):
        add(1 << i)
    # BFS balls from every vertex at every radius
    for src in range(w):
        ball = 1 << src
        frontier = 1 << src
        while True:
            nxt = 0
            for v in range(w):
                if (frontier >> v) & 1:
                    nxt |= masks[v]
            nxt &= ~ball & full
            if not nxt:
                break
            ball |= nxt
            frontier = nxt
            if ball != full:
                add(ball)
    # seeded local search: flip vertices to reduce Δ
    rng = random.Random(seed)
    for _ in range(8):
        mask = 0
        for v in range(w):
            if rng.random() < 0.5:
                mask |= 1 << v
        if mask in (0, full):
            continue
        for _ in range(2 * w):
            add(mask)
            cur = kernels.cut_max_degree(masks, mask)
            best_v, best_d = -1, cur
            for v in range(w):
                flip = mask ^ (1 << v)
                if flip in (0, full):
                    continue
                d = kernels.cut_max_degree(masks, flip)
                if d < best_d:
                    best_v, best_d = v, d
            if best_v < 0:
                break
            mask ^= 1 << best_v
    best: Optional[tuple[int, int]] = None  # (delta, mask)
    for mask in sorted(candidates):
        pc = mask.bit_count()
        mn = min(pc, w - pc)
        delta = kernels.cut_max_degree(masks, mask)
        if thr[mn] >= 0 and delta <= thr[mn]:
            if best is None or (delta, mask) < best:
                best = (delta, mask)
    if best is None:
        return None
    return _mask_to_cut(W, best[1], best[0])


@dataclass(frozen=True)
class RobustCoreResult:
    W: tuple[int, ...]
    trace: tuple[WeakCut, ...]
    hypothesis_met: bool  # min degree ≥ r·log₂ n


def robust_core(G: EdgeColoredGraph, r: RationalLike,
                cap: Optional[int] = None, seed: int = 0) -> RobustCoreResult:
    """Shrink V by descending into the smaller side of weak cuts (ties to A)
    until no weak cut is found; |W| ≥ 2 guaranteed when the minimum-degree
    hypothesis holds and the search is exhaustive."""
    r = rat(r)
    deg = G.degrees()
    hypothesis = all(
        degree_at_least_r_log(deg[v], r, Fraction(G.n))
        for v in range(1, G.n + 1)
    )
    W = tuple(range(1, G.n + 1))
    trace = []
    while len(W) >= 2:
        cut = find_weak_cut(G, W, r, cap=cap, seed=seed)
        if cut is None:
            return RobustCoreResult(W, tuple(trace), hypothesis)
        trace.append(cut)
        W = cut.A if len(cut.A) <= len(cut.B) else cut.B
    raise CoverFailure(
        "cut descent reached a single vertex (hypothesis unmet or heuristic miss)",
        trace=tuple(trace),
    )


def verify_no_weak_cut(G: EdgeColoredGraph, W: Sequence[int],
                       r: RationalLike) -> bool:
    """Exhaustive check that every cut (A,B) of W has Δ(A,B) ≥ r·log₂ imb."""
    W = tuple(sorted(W))
    if len(W) < 2:
        return False
    masks = _restricted_masks(G, W)
    thr = weak_delta_table(len(W), rat(r))
    return kernels.min_weak_cut(masks, thr) is None


# --- greedy color cover ---------------------------------------------------------


class _DSU:
    def __init__(self, items):
        self.parent = {v: v for v in items}
        self.count = len(self.parent)

    def find(self, v):
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.count -= 1
        return True


def _merges_if_added(dsu: _DSU, edges: list[Edge]) -> int:
    """Union count if these edges were added, without mutating the DSU."""
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    merges = 0
    for a, b in edges:
        ra, rb = find(dsu.find(a)), find(dsu.find(b))
        if ra != rb:
            parent[rb] = ra
            merges += 1
    return merges


@dataclass(frozen=True)
class GreedyTrace:
    colors_chosen: tuple[int, ...]
    component_counts: tuple[int, ...]  # m₀ = |W| down to 1

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.colors_chosen, self.component_counts[1:]))


def greedy_color_cover(G: EdgeColoredGraph, W: Sequence[int]) -> tuple[tuple[int, ...], GreedyTrace]:
    """Colors I chosen greedily (component-count-minimizing, ties to the
    smallest color id) until G[I, W] is connected; m strictly decreases.

    Runs on any coloring; properness (needed for the color-count contract)
    is enforced by color_cover, not here.
    """
    W = tuple(sorted(W))
    induced = G.induced_edges(W)
    by_color: dict[int, list[Edge]] = {}
    for e, c in induced:
        by_color.setdefault(c, []).append(e)
    dsu = _DSU(W)
    chosen: list[int] = []
    counts = [len(W)]
    while dsu.count > 1:
        best_color, best_merges = -1, 0
        for c in sorted(by_color):
            if c in chosen:
                continue
            m = _merges_if_added(dsu, by_color[c])
            if m > best_merges:
                best_color, best_merges = c, m
        if best_color < 0:
            raise CoverFailure(
                "no color reduces the component count (G[W] disconnected)",
                trace=GreedyTrace(tuple(chosen), tuple(counts)),
            )
        for a, b in by_color[best_color]:
            dsu.union(a, b)
        chosen.append(best_color)
        counts.append(dsu.count)
    return tuple(chosen), GreedyTrace(tuple(chosen), tuple(counts))


# --- the combined cover search ---------------------------------------------------


@dataclass(frozen=True)
class CutParams:
    r: Fraction
    q: Fraction
    C: Fraction


@dataclass(frozen=True)
class CoverResult:
    W: tuple[int, ...]
    I: tuple[int, ...]
    colors_in_W: int
    trace: GreedyTrace
    robust: RobustCoreResult
    params: CutParams
    edge_hypothesis_met: bool


def rationalized_r(n: int, q: Fraction, C: Fraction) -> Fraction:
    """Upper bound for C·q·log₂ log₂ n with denominator ≤ 256.

    The small denominator keeps the exact power comparisons 2^(Δ·den)
    cheap; rounding up only strengthens the robustness requirement, and the
    cover contract is verified independently of r.
    """
    inner = log2_interval(Fraction(n)).hi
    if inner <= 1:
        r = C * q  # log₂ log₂ n ≤ 0 would make r nonpositive; clamp
    else:
        r = C * q * log2_interval(inner).hi
    num = -((-r.numerator * 256) // r.denominator)  # ceil(r·256)
    return Fraction(num, 256)


def edge_hypothesis_met(G: EdgeColoredGraph, q: Fraction, C: Fraction) -> bool:
    """|E| ≥ C·q·n·log₂ n·log₂ log₂ n, decided against the certified upper bound."""
    lg = log2_interval(Fraction(G.n)).hi
    if lg <= 1:
        return True
    lglg = log2_interval(lg).hi
    return Fraction(G.edge_count) >= C * q * G.n * lg * lglg


def verify_cover(G: EdgeColoredGraph, W: Sequence[int], I: Sequence[int],
                 q: RationalLike) -> bool:
    """Independent contract check: G[I, W] connected and ≥ q·|I| colors on G[W]."""
    W = tuple(sorted(W))
    if len(W) < 2:
        return False
    iset = set(I)
    adj: dict[int, set[int]] = {v: set() for v in W}
    for (a, b), c in G.induced_edges(W):
        if c in iset:
            adj[a].add(b)
            adj[b].add(a)
    seen = {W[0]}
    stack = [W[0]]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != len(W):
        return False
    return Fraction(len(G.colors_on(W))) >= rat(q) * len(I)


def color_cover(G: EdgeColoredGraph, q: RationalLike, C: RationalLike = 1,
                cap: Optional[int] = None, seed: int = 0) -> CoverResult:
    """Pipeline min_degree_core → robust_core (r = C·q·log₂log₂ n) → greedy
    cover, with the output contract verified before returning.

    Raises CoverFailure when any stage or the final contract check fails —
    a legitimate outcome below the density hypothesis.
    """
    q, C = rat(q), rat(C)
    if G.n < 4:
        raise GraphError("need n >= 4")
    if not G.is_proper():
        raise GraphError("edge coloring must be proper")
    r = rationalized_r(G.n, q, C)
    core = min_degree_core(G)
    core_graph = _induced_subgraph(G, core)
    robust_rel = robust_core(core_graph, r, cap=cap, seed=seed)
    robust = _relabel_robust(robust_rel, core)
    W = robust.W
    I, trace = greedy_color_cover(G, W)
    result = CoverResult(
        W=W,
        I=tuple(sorted(I)),
        colors_in_W=len(G.colors_on(W)),
        trace=trace,
        robust=robust,
        params=CutParams(r=r, q=q, C=C),
        edge_hypothesis_met=edge_hypothesis_met(G, q, C),
    )
    if not verify_cover(G, W, I, q):
        raise CoverFailure(
            f"cover contract not met: {result.colors_in_W} colors on G[W] "
            f"vs q·|I| = {q * len(I)}",
            trace=result,
        )
    return result


def _induced_subgraph(G: EdgeColoredGraph, W: Sequence[int]) -> EdgeColoredGraph:
    """Subgraph induced by W, relabeled to [|W|] preserving vertex order."""
    order = tuple(sorted(W))
    pos = {v: i + 1 for i, v in enumerate(order)}
    kept = sorted(
        ((min(pos[a], pos[b]), max(pos[a], pos[b])), c)
        for (a, b), c in G.induced_edges(order)
    )
    return EdgeColoredGraph(
        n=len(order),
        edges=tuple(e for e, _ in kept),
        colors=tuple(c for _, c in kept),
    )


def _relabel_robust(res: RobustCoreResult, order: Sequence[int]) -> RobustCoreResult:
    """Map a robust-core result on relabeled vertices back to original ids."""
    back = {i + 1: v for i, v in enumerate(sorted(order))}
    return RobustCoreResult(
        W=tuple(sorted(back[v] for v in res.W)),
        trace=tuple(
            WeakCut(
                tuple(sorted(back[v] for v in cut.A)),
                tuple(sorted(back[v] for v in cut.B)),
                cut.delta,
            )
            for cut in res.trace
        ),
        hypothesis_met=res.hypothesis_met,
    )
