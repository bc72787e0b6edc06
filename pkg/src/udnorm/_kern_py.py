"""Pure-Python kernels: exact big-integer reference implementations.

These mirror the compiled kernels in `_kern_cy` operation for operation and
iteration order for iteration order, so both backends return identical
results. This module has no magnitude limits (Python ints), while the
compiled path is only dispatched when an a-priori bound proves int64 safe.
"""

from __future__ import annotations


def unit_pairs(vals: list[list[int]], bounds: list[int]) -> list[tuple[int, int]]:
    """Indices (i, j), i < j, whose row difference has max |Δv_c|/d_c == 1.

    vals[i][c] is the c-th constraint functional at point i; bounds[c] = d_c.
    A pair qualifies iff |Δv_c| ≤ d_c for every c with equality for some c.
    """
    n = len(vals)
    m = len(bounds)
    out = []
    for i in range(n):
        vi = vals[i]
        for j in range(i + 1, n):
            vj = vals[j]
            tight = False
            ok = True
            for c in range(m):
                dv = vj[c] - vi[c]
                if dv < 0:
                    dv = -dv
                d = bounds[c]
                if dv > d:
                    ok = False
                    break
                if dv == d:
                    tight = True
            if ok and tight:
                out.append((i, j))
    return out


def min_weak_cut(adj: list[int], w: int, thr: list[int]):
    """Weak cut of minimum Δ over all 2^(w−1)−1 bipartitions, or None.

    adj[v] is the neighborhood bitmask of vertex v inside the w-vertex set;
    thr[s] is the largest Δ that still counts as weak for min-side size s
    (thr[s] < 0 means no Δ qualifies). Cuts are enumerated as subsets A not
    containing vertex 0; ties keep the earliest mask.

    Returns (mask_of_A, delta) or None.
    """
    best_mask = -1
    best_delta = -1
    full = (1 << w) - 1
    for a in range(1, 1 << (w - 1)):
        mask = a << 1
        pc = mask.bit_count()
        mn = pc if pc * 2 <= w else w - pc
        t = thr[mn]
        if t < 0:
            continue
        limit = t if best_delta < 0 else min(t, best_delta - 1)
        if limit < 0:
            continue
        other = full ^ mask
        delta = 0
        for v in range(w):
            side = other if (mask >> v) & 1 else mask
            d = (adj[v] & side).bit_count()
            if d > delta:
                delta = d
                if delta > limit:
                    break
        else:
            if best_delta < 0 or delta < best_delta:
                best_mask = mask
                best_delta = delta
    if best_mask < 0:
        return None
    return best_mask, best_delta


def cut_max_degree(adj: list[int], w: int, mask: int) -> int:
    """Δ(A, B) for the bipartition given by mask (A) within a w-vertex set."""
    full = (1 << w) - 1
    other = full ^ mask
    delta = 0
    for v in range(w):
        side = other if (mask >> v) & 1 else mask
        d = (adj[v] & side).bit_count()
        if d > delta:
            delta = d
    return delta
