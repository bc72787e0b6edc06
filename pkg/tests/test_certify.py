import dataclasses
import itertools
import random
from fractions import Fraction

import pytest

from conftest import octagon
from udnorm.certify import (
    AdmissibleAssignment,
    AffineForm,
    CertifierError,
    NormCertificate,
    OffsetBox,
    build_system,
    certify_box,
    enumerate_admissible,
    kill_assignment,
    offset_coefficient_matrix,
    point_in_trapezoid,
    sample_verify,
    side_offset_of_point,
    trapezoid_corners,
    witness_norm,
)
from udnorm.dependence import DependenceSystem
from udnorm.norms import AngleBound, OffsetVector, hausdorff, offset_polygon, square
from udnorm.ratlin import Mat, Vec2, rank, solve

TOY = DependenceSystem(ell=1, indices=(1, 2, 3), coeffs=((2,), (-1,)))
ETA_OCT = AngleBound.of(Fraction(5, 9))


def brute_admissible(ell, m):
    count = 2 * ell + 1
    out = []
    for alpha in itertools.product(range(2 * m), repeat=count):
        classes = [a % m for a in alpha]
        if len(set(classes)) == count:
            out.append(alpha)
    return out


class TestEnumerateAdmissible:
    @pytest.mark.parametrize("ell,m,expected", [
        (1, 2, 0), (1, 3, 48), (2, 5, 3840),
    ])
    def test_counts(self, ell, m, expected):
        got = list(enumerate_admissible(ell, m))
        assert len(got) == expected

    @pytest.mark.parametrize("ell,m", [(1, 3), (1, 4), (2, 5), (2, 6)])
    def test_matches_brute_force(self, ell, m):
        got = [a.alpha for a in enumerate_admissible(ell, m)]
        brute = brute_admissible(ell, m)
        assert sorted(got) == sorted(brute)
        assert got == sorted(got)  # lexicographic emission order

    def test_no_opposite_pairs(self):
        for a in enumerate_admissible(1, 4):
            classes = [v % 4 for v in a.alpha]
            assert len(set(classes)) == 3


class TestBuildSystem:
    def test_shape(self, octagon):
        alpha = next(enumerate_admissible(1, 4))
        A, bforms = build_system(TOY, octagon, alpha)
        assert (A.rows, A.cols) == (3, 2)
        assert len(bforms) == 3

    def test_b_components_single_coordinate(self, octagon):
        for alpha in list(enumerate_admissible(1, 4))[:20]:
            _, bforms = build_system(TOY, octagon, alpha)
            coords = []
            for bf in bforms:
                nz = [j for j, c in enumerate(bf.coeffs) if c != 0]
                assert len(nz) == 1
                assert abs(bf.coeffs[nz[0]]) == 1
                coords.append(nz[0])
            assert len(set(coords)) == 3  # admissibility: distinct mod m

    def test_b_surjectivity_witness(self, octagon):
        for alpha in list(enumerate_admissible(1, 4))[:20]:
            _, bforms = build_system(TOY, octagon, alpha)
            assert rank(offset_coefficient_matrix(bforms)) == 3

    def test_rows_encode_side_membership(self, octagon):
        # u2 = 2·u1, u3 = u1; alpha = (side x=1, side y=1, side x=-1):
        # octagon side ids 0 ((1,0) normal), 2 ((0,1) normal), 4 (= -side 0)
        S = DependenceSystem(ell=1, indices=(1, 2, 3), coeffs=((2,), (1,)))
        alpha = AdmissibleAssignment((0, 2, 4))
        A, bforms = build_system(S, octagon, alpha)
        u1 = Vec2.of(1, Fraction(1, 3))
        t = (Fraction(1, 10), Fraction(-1, 20), Fraction(0), Fraction(0))
        lhs = A.mul_vec((u1.x, u1.y))
        # row 0: <(1,0), u1> = 1 + t_0 ; row 1: <(0,1), 2 u1> = 1 + t_2;
        # row 2: <(1,0), u1> = -(1 + t_0)
        assert lhs[0] == u1.x
        assert lhs[1] == 2 * u1.y
        assert lhs[2] == u1.x
        assert bforms[0].eval(t) == 1 + t[0]
        assert bforms[1].eval(t) == 1 + t[2]
        assert bforms[2].eval(t) == -(1 + t[0])


class TestKillAssignment:
    def test_constant_nonzero_unchanged(self):
        A = Mat.from_rows([[1], [1]])
        b = (AffineForm(Fraction(1), (Fraction(0),)),
             AffineForm(Fraction(0), (Fraction(0),)))
        box = OffsetBox.symmetric(1, 1)
        sub, y, h, sign = kill_assignment(A, b, box)
        assert sub == box
        assert sign == 1

    def test_center_shift_rule(self):
        # h(t) = t1 on [-1,1] shrinks to [1/4, 1]
        A = Mat.from_rows([[1], [1]])
        b = (AffineForm(Fraction(0), (Fraction(1), Fraction(0))),
             AffineForm(Fraction(0), (Fraction(0), Fraction(0))))
        box = OffsetBox.symmetric(1, 2)
        sub, y, h, sign = kill_assignment(A, b, box)
        assert (sub.lo[0], sub.hi[0]) == (Fraction(1, 4), Fraction(1))
        assert (sub.lo[1], sub.hi[1]) == (Fraction(-1), Fraction(1))
        assert sign == 1
        assert h.interval_on(sub).excludes_zero()

    def test_volume_factor(self):
        # every shrunk coordinate keeps at least 1/4 of its width
        rng = random.Random(3)
        for _ in range(50):
            m = rng.randint(1, 4)
            A = Mat.from_rows([[1], [1]])
            coeffs = tuple(Fraction(rng.randint(-3, 3)) for _ in range(m))
            b = (AffineForm(Fraction(rng.randint(-2, 2), 4), coeffs),
                 AffineForm(Fraction(0), (Fraction(0),) * m))
            box = OffsetBox.symmetric(1, m)
            try:
                sub, _, h, _ = kill_assignment(A, b, box)
            except CertifierError:
                continue  # h identically zero
            for j in range(m):
                assert sub.hi[j] - sub.lo[j] >= Fraction(1, 4) * 2

    def test_unsolvable_downstream(self, octagon):
        rng = random.Random(4)
        alpha = list(enumerate_admissible(1, 4))[17]
        A, bforms = build_system(TOY, octagon, alpha)
        box = OffsetBox.symmetric(Fraction(1, 100), 4)
        sub, y, h, sign = kill_assignment(A, bforms, box)
        for _ in range(100):
            t = tuple(
                lo + (hi - lo) * Fraction(rng.randrange(1024), 1024)
                for lo, hi in zip(sub.lo, sub.hi)
            )
            assert solve(A, [bf.eval(t) for bf in bforms]) is None


def _toy_certificate(polygon, eta, with_witness=True):
    cert = certify_box(TOY, polygon, Fraction(1, 100), eta)
    return witness_norm(cert) if with_witness else cert


class TestCertifyBox:
    def test_octagon(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT, with_witness=False)
        assert len(cert.kills) == 192
        assert not cert.degenerate
        for rec in cert.kills:
            iv = rec.h.interval_on(cert.box)
            assert iv.excludes_zero()
            assert (iv.lo > 0) == (rec.sign > 0)

    def test_degenerate_when_m_too_small(self, octagon):
        # 2ℓ+1 = 5 > m = 4: no admissible assignment exists
        wide = DependenceSystem(ell=2, indices=(1, 2, 3, 4, 5),
                                coeffs=((1, 1), (1, -1), (2, 1)))
        cert = certify_box(wide, octagon, Fraction(1, 100), ETA_OCT)
        assert cert.degenerate
        assert cert.kills == ()

    def test_idempotent(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT, with_witness=False)
        again = certify_box(TOY, octagon, Fraction(1, 100), ETA_OCT)
        # the box was never shrunk past sign-definiteness: rerunning from
        # the final box leaves it unchanged
        assert again.box == cert.box
        for rec in cert.kills:
            assert rec.h.interval_on(again.box).excludes_zero()

    def test_requires_eta_short(self, octagon):
        with pytest.raises(CertifierError):
            certify_box(TOY, octagon, Fraction(1, 100), AngleBound.of(Fraction(1, 4)))


class TestWitness:
    def test_square_margin_rule(self):
        # T̃ = [1/8, 1/4] uniform on the square: B_in = 9/8, B_out = 5/4,
        # δ = 1/16 (unit normals make the bound exact)
        box = OffsetBox(OffsetVector.of([Fraction(1, 8), Fraction(1, 8)]),
                        OffsetVector.of([Fraction(1, 4), Fraction(1, 4)]))
        cert = NormCertificate(polygon=square(), box=box, kills=(),
                               system=TOY, eta=AngleBound.of(1),
                               degenerate=True)
        cert = witness_norm(cert)
        assert cert.witness_in == square(Fraction(9, 8))
        assert cert.witness_out == square(Fraction(5, 4))
        assert cert.witness_mid == square(Fraction(19, 16))
        assert cert.delta == Fraction(1, 16)

    def test_sandwich_containment_under_jitter(self):
        box = OffsetBox(OffsetVector.of([Fraction(1, 8), Fraction(1, 8)]),
                        OffsetVector.of([Fraction(1, 4), Fraction(1, 4)]))
        cert = witness_norm(NormCertificate(
            polygon=square(), box=box, kills=(), system=TOY,
            eta=AngleBound.of(1), degenerate=True))
        rng = random.Random(5)
        B = cert.witness_mid
        for _ in range(100):
            jittered = []
            for v in B.vertices()[: 2]:
                dx = Fraction(rng.randint(-1000, 1000), 10**5)
                dy = Fraction(rng.randint(-1000, 1000), 10**5)
                jittered.append(Vec2(v.x + dx, v.y + dy))
            sym = jittered + [-p for p in jittered]
            from udnorm.norms import polygon_from_hull
            Bp = polygon_from_hull(sym)
            # jitter of 0.01 < δ = 1/16: the sandwich must hold
            assert hausdorff(Bp, B).hi < cert.delta
            assert cert.witness_out.contains_polygon(Bp)
            assert Bp.contains_polygon(cert.witness_in)

    def test_full_toy_witness(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT)
        assert cert.delta > 0
        assert cert.witness_out.contains_polygon(cert.witness_mid)
        assert cert.witness_mid.contains_polygon(cert.witness_in)
        for t in (cert.box.lo, cert.box.center(), cert.box.hi):
            Bt = offset_polygon(octagon, t)
            assert cert.witness_out.contains_polygon(Bt)
            assert Bt.contains_polygon(cert.witness_in)


class TestTrapezoids:
    def test_tiling_area(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT)
        total = Fraction(0)
        for side in range(2 * octagon.m):
            quad = trapezoid_corners(cert, side)
            acc = Fraction(0)
            for p, q in zip(quad, quad[1:] + quad[:1]):
                acc += p.cross(q)
            total += abs(acc) / 2
        annulus = cert.witness_out.area() - cert.witness_in.area()
        assert total == annulus

    def test_membership_and_tie_rule(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT)
        # a point clearly inside trapezoid 0
        n, _ = octagon.side_line(0)
        mid_t = (cert.box.lo[0] + cert.box.hi[0]) / 2
        p = n.scale((octagon.offsets[0] + mid_t) / n.norm_sq())
        assert point_in_trapezoid(trapezoid_corners(cert, 0), p)

    def test_sweep_offsets_in_range(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT)
        for side in range(2 * octagon.m):
            iv = cert.box.interval(side % octagon.m)
            for corner in trapezoid_corners(cert, side):
                t = side_offset_of_point(octagon, side, corner)
                assert iv.lo <= t <= iv.hi


class TestBoxUnsolvability:
    def test_all_assignments_unsolvable_at_random_t(self, octagon):
        # invariant: 100 random t in the certified box, every admissible
        # assignment, full exact solve comes back inconsistent
        cert = _toy_certificate(octagon, ETA_OCT, with_witness=False)
        systems = [
            (alpha, *build_system(TOY, octagon, alpha))
            for alpha in enumerate_admissible(1, 4)
        ]
        rng = random.Random(0)
        for _ in range(100):
            t = tuple(
                lo + (hi - lo) * Fraction(rng.randrange(4096), 4096)
                for lo, hi in zip(cert.box.lo, cert.box.hi)
            )
            for alpha, A, bforms in systems:
                assert solve(A, [bf.eval(t) for bf in bforms]) is None


class TestSampleVerify:
    def test_toy_zero_hits(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT)
        rep = sample_verify(cert, 200, seed=0)
        assert rep.trials == 200
        assert rep.alphas_checked == 192
        assert rep.sweep_ok
        assert not rep.counterexample_found

    def test_empty_report(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT)
        rep = sample_verify(cert, 0, seed=0)
        assert rep.trials == 0
        assert rep.hits == ()

    def test_mutation_found(self, octagon):
        cert = _toy_certificate(octagon, ETA_OCT)
        for factor in (2, 4, 8, 16, 32):
            wide = OffsetBox(
                OffsetVector(tuple(v * factor for v in cert.box.lo)),
                OffsetVector(tuple(v * factor for v in cert.box.hi)),
            )
            if any(not rec.h.interval_on(wide).excludes_zero()
                   for rec in cert.kills):
                break
        bad = dataclasses.replace(cert, box=wide)
        rep = sample_verify(bad, 100, seed=0)
        assert rep.counterexample_found
        assert any(h.source == "directed" for h in rep.hits)
        # every reported hit is a genuine solvable system inside the box
        for hit in rep.hits[:5]:
            A, bforms = build_system(TOY, octagon, hit.alpha)
            assert bad.box.contains(hit.t)
            assert solve(A, [bf.eval(hit.t) for bf in bforms]) is not None
