"""Backend dispatch for the hot kernels.

At import time the compiled extension is preferred; the pure-Python
reference is used when the extension is missing, when the environment
variable UDNORM_FORCE_PY_KERNELS is set, or when an input's magnitude bound
does not provably fit in int64 (exactness is never traded for speed).
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Optional, Sequence

from . import _kern_py
from .ratlin import Vec2

try:  # pragma: no cover - depends on build environment
    from . import _kern_cy  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover
    _kern_cy = None

_FORCE_PY = bool(os.environ.get("UDNORM_FORCE_PY_KERNELS"))

_INT64_SAFE = 2**62


def active_backend() -> str:
    """'cython' when the compiled extension is in use, else 'python'."""
    return "python" if (_kern_cy is None or _FORCE_PY) else "cython"


def _impl(force_python: bool = False):
    if force_python or _kern_cy is None or _FORCE_PY:
        return _kern_py
    return _kern_cy


def scaled_unit_pair_input(
    points: Sequence[Vec2],
    constraints: Sequence[tuple[Vec2, Fraction]],
) -> tuple[list[list[int]], list[int], int]:
    """Integer-scale the exact unit-pair test.

    gauge(p_j − p_i) == 1 under constraints {|⟨n_c, z⟩| ≤ c_c} is equivalent
    to: every scaled |Δv_c| ≤ d_c and some |Δv_c| = d_c, where v_c and d_c
    are the integers returned here. Also returns the largest possible |Δv|
    so the dispatcher can prove int64 safety.
    """
    D = math.lcm(*(q.denominator for p in points for q in (p.x, p.y)))
    qx = [int(p.x * D) for p in points]
    qy = [int(p.y * D) for p in points]
    rows = []
    bounds = []
    for n, c in constraints:
        t = c * D
        M = math.lcm(n.x.denominator, n.y.denominator, t.denominator)
        ax, ay, d = int(n.x * M), int(n.y * M), int(t * M)
        rows.append((ax, ay))
        bounds.append(d)
    vals = [[ax * x + ay * y for (ax, ay) in rows] for x, y in zip(qx, qy)]
    max_dv = 0
    for c in range(len(bounds)):
        col = [v[c] for v in vals]
        span = max(col) - min(col)
        max_dv = max(max_dv, span, bounds[c])
    return vals, bounds, max_dv


def unit_pair_indices(
    points: Sequence[Vec2],
    constraints: Sequence[tuple[Vec2, Fraction]],
    force_python: bool = False,
) -> list[tuple[int, int]]:
    """All 0-based index pairs (i < j) at exact gauge distance 1."""
    vals, bounds, max_dv = scaled_unit_pair_input(points, constraints)
    impl = _impl(force_python or max_dv >= _INT64_SAFE)
    return impl.unit_pairs(vals, bounds)


def min_weak_cut(
    adj_masks: Sequence[int],
    thresholds: Sequence[int],
    force_python: bool = False,
) -> Optional[tuple[int, int]]:
    """Minimum-Δ weak bipartition of a ≤ cap vertex set, or None.

    adj_masks[v] = neighborhood bitmask among the set's vertices;
    thresholds[s] = largest weak Δ for min-side size s (−1: none).
    Enumerates all subsets not containing vertex 0, ascending mask order.
    """
    w = len(adj_masks)
    if w < 2:
        return None
    impl = _impl(force_python or w > 63)
    return impl.min_weak_cut(list(adj_masks), w, list(thresholds))


def cut_max_degree(adj_masks: Sequence[int], mask: int) -> int:
    """Δ(A, B) for the bipartition A = mask over the given vertex set."""
    return _kern_py.cut_max_degree(list(adj_masks), len(adj_masks), mask)
