"""Perturbation certificates: enumerate admissible side assignments, build
each over-determined linear system, shrink the offset box until every
assignment's system is provably unsolvable (a sign-definite left-null
functional), and wrap the result in a witness polygon sandwich.

A finished certificate states: for every symmetric convex body within δ of
the witness polygon B, no η-separated realization of the source graph
exists whose directions satisfy the dependence system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .dependence import DependenceSystem
from .norms import (
    AngleBound,
    OffsetVector,
    SymmetricPolygon,
    eta_separated,
    offset_polygon,
)
from .ratlin import Mat, RatInterval, RationalLike, Vec2, left_null_basis, rat, solve, sqrt_interval

# re-exported here because the angle machinery is part of this module's surface
__all__ = [
    "AngleBound",
    "eta_separated",
    "AdmissibleAssignment",
    "enumerate_admissible",
    "OffsetBox",
    "AffineForm",
    "KillRecord",
    "NormCertificate",
    "build_system",
    "kill_assignment",
    "certify_box",
    "witness_norm",
    "sample_verify",
    "VerifyReport",
    "CertifierError",
]


class CertifierError(RuntimeError):
    pass


@dataclass(frozen=True)
class AdmissibleAssignment:
    """Injective map of the 2ℓ+1 directions onto sides (0-based side ids in
    [0, 2m)), no two values in the same opposite pair."""

    alpha: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.alpha)

    def __getitem__(self, i: int) -> int:
        return self.alpha[i]

    @staticmethod
    def is_admissible(alpha: Sequence[int], m: int) -> bool:
        if any(not 0 <= a < 2 * m for a in alpha):
            return False
        classes = [a % m for a in alpha]
        return len(set(classes)) == len(classes)


def enumerate_admissible(ell: int, m: int) -> Iterator[AdmissibleAssignment]:
    """All admissible assignments of 2ℓ+1 items to 2m sides, in lexicographic
    order of the α tuple; empty when 2ℓ+1 > m."""
    count = 2 * ell + 1
    if count > m:
        return
    used = [False] * m
    alpha: list[int] = []

    def rec():
        if len(alpha) == count:
            yield AdmissibleAssignment(tuple(alpha))
            return
        for side in range(2 * m):
            cls = side % m
            if used[cls]:
                continue
            used[cls] = True
            alpha.append(side)
            yield from rec()
            alpha.pop()
            used[cls] = False

    yield from rec()


def admissible_count(ell: int, m: int) -> int:
    count = 2 * ell + 1
    if count > m:
        return 0
    total = 1
    for i in range(count):
        total *= m - i
    return total << count


@dataclass(frozen=True)
class OffsetBox:
    """Product of closed offset intervals [loᵢ, hiᵢ] with nonempty interior."""

    lo: OffsetVector
    hi: OffsetVector

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("box bounds must have equal length")
        for a, b in zip(self.lo, self.hi):
            if not a < b:
                raise ValueError("box must have nonempty interior")

    @staticmethod
    def symmetric(delta0: RationalLike, m: int) -> "OffsetBox":
        d = rat(delta0)
        if d <= 0:
            raise ValueError("delta0 must be positive")
        return OffsetBox(OffsetVector.uniform(-d, m), OffsetVector.uniform(d, m))

    @property
    def m(self) -> int:
        return len(self.lo)

    def center(self) -> OffsetVector:
        return OffsetVector(tuple((a + b) / 2 for a, b in zip(self.lo, self.hi)))

    def interval(self, i: int) -> RatInterval:
        return RatInterval(self.lo[i], self.hi[i])

    def contains(self, t: Sequence[Fraction]) -> bool:
        return all(a <= v <= b for a, v, b in zip(self.lo, t, self.hi))


@dataclass(frozen=True)
class AffineForm:
    """t ↦ const + Σ coeffs[i]·tᵢ over the m offset coordinates."""

    const: Fraction
    coeffs: tuple[Fraction, ...]

    def eval(self, t: Sequence[Fraction]) -> Fraction:
        return self.const + sum(
            (c * v for c, v in zip(self.coeffs, t)), Fraction(0)
        )

    def interval_on(self, box: OffsetBox) -> RatInterval:
        lo = hi = self.const
        for c, a, b in zip(self.coeffs, box.lo, box.hi):
            if c > 0:
                lo, hi = lo + c * a, hi + c * b
            elif c < 0:
                lo, hi = lo + c * b, hi + c * a
        return RatInterval(lo, hi)

    def is_zero(self) -> bool:
        return self.const == 0 and all(c == 0 for c in self.coeffs)


def build_system(S: DependenceSystem, B1: SymmetricPolygon,
                 alpha: AdmissibleAssignment) -> tuple[Mat, tuple[AffineForm, ...]]:
    """The (2ℓ+1)×2ℓ system A·x = b(t) pinning each direction to its
    assigned side line; x concatenates the ℓ base directions, and each
    b-component is a nonconstant affine function of a distinct t-coordinate.
    """
    ell, m = S.ell, B1.m
    if 2 * ell + 1 > m:
        raise CertifierError("assignment needs 2ℓ+1 ≤ m")
    rows = []
    bforms = []

    def side_row(side: int, weights: Sequence[Fraction]):
        n, o = B1.side_line(side)
        row = []
        for s in range(ell):
            w = weights[s]
            row.extend((w * n.x, w * n.y))
        sign = Fraction(1) if side < m else Fraction(-1)
        coeffs = [Fraction(0)] * m
        coeffs[side % m] = sign
        rows.append(row)
        bforms.append(AffineForm(o, tuple(coeffs)))

    for i in range(ell):
        weights = [Fraction(1 if s == i else 0) for s in range(ell)]
        side_row(alpha[i], weights)
    for j in range(ell + 1):
        weights = [rat(c) for c in S.coeffs[j]]
        side_row(alpha[ell + j], weights)
    return Mat.from_rows(rows), tuple(bforms)


def offset_coefficient_matrix(bforms: Sequence[AffineForm]) -> Mat:
    """The (2ℓ+1)×m matrix of t ↦ b(t) − b(0); full row rank certifies that
    b is surjective onto the space the left-null functionals live in."""
    return Mat.from_rows([list(bf.coeffs) for bf in bforms])


@dataclass(frozen=True)
class KillRecord:
    """Unsolvability witness for one assignment: yᵀA = 0 while h = yᵀb(t)
    keeps a fixed sign on the certified box."""

    alpha: AdmissibleAssignment
    y: tuple[Fraction, ...]
    h: AffineForm
    sign: int


def _null_functional(A: Mat, bforms: Sequence[AffineForm]):
    for y in left_null_basis(A):
        const = sum((yi * bf.const for yi, bf in zip(y, bforms)), Fraction(0))
        coeffs = tuple(
            sum((yi * bf.coeffs[j] for yi, bf in zip(y, bforms)), Fraction(0))
            for j in range(len(bforms[0].coeffs))
        )
        h = AffineForm(const, coeffs)
        if not h.is_zero():
            return y, h
    raise CertifierError("every left-null functional vanished identically "
                         "(b-surjectivity violated)")


def kill_assignment(A: Mat, bforms: Sequence[AffineForm],
                    box: OffsetBox) -> tuple[OffsetBox, tuple[Fraction, ...], AffineForm, int]:
    """Sub-box on which some left-null functional h = yᵀb is sign-definite.

    Already sign-definite boxes pass through unchanged. Otherwise each
    coordinate appearing in h keeps its favorable portion
    [center + width/8, hi] (or the mirror image), which makes h sign-definite
    in one pass and keeps at least 3/8 of each shrunk coordinate's width.
    """
    y, h = _null_functional(A, bforms)
    iv = h.interval_on(box)
    if iv.excludes_zero():
        return box, y, h, (1 if iv.lo > 0 else -1)
    center = box.center()
    sign = 1 if h.eval(center) >= 0 else -1
    lo = list(box.lo)
    hi = list(box.hi)
    for j, c in enumerate(h.coeffs):
        if c == 0:
            continue
        width = hi[j] - lo[j]
        mid = center[j]
        if (c > 0) == (sign > 0):
            lo[j] = mid + width / 8
        else:
            hi[j] = mid - width / 8
    sub = OffsetBox(OffsetVector(tuple(lo)), OffsetVector(tuple(hi)))
    iv2 = h.interval_on(sub)
    if not iv2.excludes_zero() or (iv2.lo > 0) != (sign > 0):
        raise CertifierError("shrink rule failed to make h sign-definite")
    return sub, y, h, sign


@dataclass(frozen=True)
class NormCertificate:
    polygon: SymmetricPolygon
    box: OffsetBox
    kills: tuple[KillRecord, ...]
    system: DependenceSystem
    eta: AngleBound
    degenerate: bool = False  # no admissible assignment existed
    witness_in: Optional[SymmetricPolygon] = None
    witness_mid: Optional[SymmetricPolygon] = None
    witness_out: Optional[SymmetricPolygon] = None
    delta: Optional[Fraction] = None

    def has_witness(self) -> bool:
        return self.delta is not None


def certify_box(S: DependenceSystem, B1: SymmetricPolygon,
                delta0: RationalLike, eta: AngleBound) -> NormCertificate:
    """Kill every admissible assignment in turn, shrinking the offset box;
    the final box carries a sign-definite functional per assignment."""
    if not B1.is_eta_short(eta):
        raise CertifierError("polygon sides are not η-short")
    box = OffsetBox.symmetric(delta0, B1.m)
    kills = []
    degenerate = True
    for alpha in enumerate_admissible(S.ell, B1.m):
        degenerate = False
        A, bforms = build_system(S, B1, alpha)
        box, y, h, sign = kill_assignment(A, bforms, box)
        kills.append(KillRecord(alpha, tuple(y), h, sign))
    cert = NormCertificate(
        polygon=B1, box=box, kills=tuple(kills), system=S, eta=eta,
        degenerate=degenerate,
    )
    for rec in cert.kills:
        iv = rec.h.interval_on(cert.box)
        assert iv.excludes_zero() and (iv.lo > 0) == (rec.sign > 0)
    return cert


def witness_norm(cert: NormCertificate) -> NormCertificate:
    """Fill the witness sandwich B_in ⊆ B ⊆ B_out and the margin δ: any
    symmetric convex body within Hausdorff δ of B stays inside the sandwich."""
    B1, box = cert.polygon, cert.box
    b_in = offset_polygon(B1, box.lo)
    b_mid = offset_polygon(B1, box.center())
    b_out = offset_polygon(B1, box.hi)
    delta = None
    for i, n in enumerate(B1.normals):
        gap = box.hi[i] - box.lo[i]
        upper = sqrt_interval(n.norm_sq()).hi
        cand = gap / (2 * upper)
        delta = cand if delta is None else min(delta, cand)
    assert delta is not None and delta > 0
    assert b_out.contains_polygon(b_mid) and b_mid.contains_polygon(b_in)
    return replace(cert, witness_in=b_in, witness_mid=b_mid,
                   witness_out=b_out, delta=delta)


# --- trapezoid decomposition of B_out ∖ B_in ----------------------------------


def trapezoid_corners(cert: NormCertificate, side: int) -> tuple[Vec2, Vec2, Vec2, Vec2]:
    """Corners of the region of B_out ∖ B_in over the given side:
    (inner start, inner end, outer end, outer start)."""
    a_in, b_in = cert.witness_in.side_segment(side)
    a_out, b_out = cert.witness_out.side_segment(side)
    return (a_in, b_in, b_out, a_out)


def point_in_trapezoid(corners: Sequence[Vec2], p: Vec2) -> bool:
    """Exact convex-quad membership (boundary counts as inside)."""
    sign = 0
    for a, b in zip(corners, tuple(corners[1:]) + (corners[0],)):
        c = (b - a).cross(p - a)
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def trapezoid_index(cert: NormCertificate, p: Vec2) -> Optional[int]:
    """Smallest side index whose trapezoid contains p (border ties resolved
    by that rule), or None when p is outside the sandwich annulus."""
    for side in range(2 * cert.polygon.m):
        if point_in_trapezoid(trapezoid_corners(cert, side), p):
            return side
    return None


def side_offset_of_point(B1: SymmetricPolygon, side: int, p: Vec2) -> Fraction:
    """The unique t with p on side `side`'s translated line ⟨n,z⟩ = ±(c+t)."""
    n, _ = B1.side_line(side)
    c = B1.offsets[side % B1.m]
    if side < B1.m:
        return n.dot(p) - c
    return -n.dot(p) - c


# --- randomized + directed refutation ------------------------------------------


@dataclass(frozen=True)
class RefutationHit:
    """A t in the box whose system is solvable (algebraic violation), plus
    the geometric status of the solved directions."""

    alpha: AdmissibleAssignment
    t: tuple[Fraction, ...]
    directions: tuple[Vec2, ...]
    in_trapezoids: bool
    eta_separated: bool
    source: str  # "random" | "directed"


@dataclass(frozen=True)
class VerifyReport:
    trials: int
    alphas_checked: int
    sweep_ok: bool
    hits: tuple[RefutationHit, ...]

    @property
    def counterexample_found(self) -> bool:
        return bool(self.hits)


def _root_in_box(h: AffineForm, box: OffsetBox,
                 center: OffsetVector) -> Optional[tuple[Fraction, ...]]:
    """A t in the box with h(t) = 0, or None when h is sign-definite there.

    Starting at the center, each coordinate absorbs as much of the residual
    value as its half-width allows; the residual reaches zero exactly when
    the interval evaluation straddles zero.
    """
    value = h.eval(center)
    t = list(center)
    for j, c in enumerate(h.coeffs):
        if value == 0:
            break
        if c == 0:
            continue
        half = (box.hi[j] - box.lo[j]) / 2
        reach = abs(c) * half
        desired = -value
        shift = max(-reach, min(reach, desired))
        t[j] = center[j] + shift / c
        value += shift
    if value != 0:
        return None
    return tuple(t)


def _solved_directions(S: DependenceSystem, x: Sequence[Fraction]) -> tuple[Vec2, ...]:
    base = [Vec2(x[2 * s], x[2 * s + 1]) for s in range(S.ell)]
    dep = []
    for row in S.coeffs:
        acc = Vec2(Fraction(0), Fraction(0))
        for s, c in enumerate(row):
            acc = acc + base[s].scale(rat(c))
        dep.append(acc)
    return tuple(base + dep)


def _geometric_status(cert: NormCertificate, alpha: AdmissibleAssignment,
                      us: tuple[Vec2, ...]) -> tuple[bool, bool]:
    in_traps = True
    if cert.has_witness():
        for i, u in enumerate(us):
            corners = trapezoid_corners(cert, alpha[i])
            if not point_in_trapezoid(corners, u):
                in_traps = False
                break
    else:
        in_traps = False
    separated = True
    for i in range(len(us)):
        if us[i].is_zero():
            separated = False
            break
        for j in range(i + 1, len(us)):
            if us[j].is_zero() or not eta_separated(us[i], us[j], cert.eta):
                separated = False
                break
        if not separated:
            break
    return in_traps, separated


def sample_verify(cert: NormCertificate, trials: int, seed: int = 0) -> VerifyReport:
    """Randomized + directed refutation oracle.

    Random pass: sample t in the box (so B′ = B₁(t) is a sandwich norm) and
    check every admissible assignment's system is unsolvable. Directed pass:
    per assignment, search the box for a root of each left-null functional —
    the only place a solvable system can hide. Also asserts the sweep
    property: each trapezoid lies between its side's two offset lines.
    Any solvable system inside the box is reported as a hit (certificate
    bug); zero hits is the expected outcome.
    """
    if trials == 0:
        return VerifyReport(0, 0, True, ())
    B1, box, S = cert.polygon, cert.box, cert.system
    sweep_ok = True
    if cert.has_witness():
        for side in range(2 * B1.m):
            iv = box.interval(side % B1.m)
            for corner in trapezoid_corners(cert, side):
                if not iv.contains(side_offset_of_point(B1, side, corner)):
                    sweep_ok = False
    systems = []
    for alpha in enumerate_admissible(S.ell, B1.m):
        A, bforms = build_system(S, B1, alpha)
        basis = left_null_basis(A)
        hforms = []
        for y in basis:
            const = sum((yi * bf.const for yi, bf in zip(y, bforms)), Fraction(0))
            coeffs = tuple(
                sum((yi * bf.coeffs[j] for yi, bf in zip(y, bforms)), Fraction(0))
                for j in range(B1.m)
            )
            hforms.append(AffineForm(const, coeffs))
        systems.append((alpha, A, bforms, hforms))
    hits: list[RefutationHit] = []

    def try_solve(alpha, A, bforms, t, source):
        b = [bf.eval(t) for bf in bforms]
        x = solve(A, b)
        if x is None:
            return
        us = _solved_directions(S, x)
        in_traps, separated = _geometric_status(cert, alpha, us)
        hits.append(RefutationHit(alpha, tuple(t), us, in_traps, separated, source))

    # directed pass: construct a root of each null functional inside the box
    # whenever its interval straddles zero (complete for 1-dim null spaces;
    # with several independent functionals a root of one must still zero the
    # others before the system can be solvable)
    center = box.center()
    for alpha, A, bforms, hforms in systems:
        for h in hforms:
            if h.is_zero():
                try_solve(alpha, A, bforms, tuple(center), "directed")
                continue
            root = _root_in_box(h, box, center)
            if root is not None and all(hf.eval(root) == 0 for hf in hforms):
                try_solve(alpha, A, bforms, root, "directed")
    # random pass
    rng = random.Random(seed)
    GRID = 1 << 30
    for _ in range(trials):
        t = tuple(
            lo + (hi - lo) * Fraction(rng.randrange(GRID + 1), GRID)
            for lo, hi in zip(box.lo, box.hi)
        )
        for alpha, A, bforms, hforms in systems:
            if all(hf.eval(t) == 0 for hf in hforms):
                try_solve(alpha, A, bforms, t, "random")
    return VerifyReport(trials, len(systems), sweep_ok, tuple(hits))
