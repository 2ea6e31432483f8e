import cmath

import numpy as np
import pytest

from qstarlike import (
    DEGENERATE_KERNEL,
    JanowskiParams,
    LambdaConvention,
    MembershipVerdict,
    NormalizedMember,
    QContext,
    SamplingSpec,
    SchwarzPoly,
    TruncSeries,
    VerdictKind,
    boundary_sample_test,
    convolution_kernel,
    convolution_test,
    corollary_reduction,
    janowski_value,
    q_number,
    ratio,
    schwarz_to_member,
    sufficiency_test,
    verdict_to_json,
)
from qstarlike.classify import subordination_modulus

CTX = QContext(1, 0.5, 0.0)
JP = JanowskiParams(1.0, -1.0)


def member(ctx, tail):
    return NormalizedMember(ctx, TruncSeries(ctx.p, [1.0] + list(tail)))


class TestJanowskiParams:
    def test_accepts_boundary_values(self):
        JanowskiParams(1.0, -1.0)
        JanowskiParams(0.5, -0.5)

    @pytest.mark.parametrize("a,b", [(1.0, 1.0), (-1.0, 1.0), (0.0, 0.5), (1.2, 0.0), (0.5, -1.5)])
    def test_rejects_bad_pairs(self, a, b):
        with pytest.raises(ValueError):
            JanowskiParams(a, b)


class TestJanowskiValue:
    def test_at_origin(self):
        assert janowski_value(0.0, JP) == 1.0

    def test_half_plane_map(self):
        assert janowski_value(0.5, JP) == pytest.approx(3.0)

    def test_linear_case(self):
        assert janowski_value(0.5j, JanowskiParams(1.0, 0.0)) == pytest.approx(1 + 0.5j)

    def test_pole(self):
        # the pole sits at z = -1/B, on the unit circle for B = -1
        with pytest.raises(ZeroDivisionError):
            janowski_value(1.0, JP)


class TestSufficiency:
    def test_monomial_passes_with_full_margin(self):
        v = sufficiency_test(member(CTX, []), JP)
        assert v.kind is VerdictKind.SUFFICIENCY_PASS
        assert v.margin == pytest.approx(q_number(1, 0.5) * 2.0)
        assert v.witness is None

    def test_pass_example(self):
        v = sufficiency_test(member(CTX, [0.5]), JP)
        assert v.kind is VerdictKind.SUFFICIENCY_PASS
        # weight [2,q](1-B) - [1,q](1-A) = 3, so lhs = 1.5 against rhs = 2
        assert v.margin == pytest.approx(0.5)

    def test_fail_example_carries_witness_index(self):
        v = sufficiency_test(member(CTX, [1.0]), JP)
        assert v.kind is VerdictKind.SUFFICIENCY_FAIL
        assert v.margin == pytest.approx(-1.0)
        assert v.witness == 1

    def test_margin_sign_matches_kind(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            tail = 0.8 * (rng.standard_normal(4) + 1j * rng.standard_normal(4))
            v = sufficiency_test(member(CTX, tail), JP)
            if v.kind is VerdictKind.SUFFICIENCY_FAIL:
                assert v.margin < 0 and v.witness is not None
            else:
                assert v.margin >= 0


class TestCorollaryReduction:
    def test_z_passes(self):
        v = corollary_reduction(member(CTX, []), JP)
        assert v.kind is VerdictKind.SUFFICIENCY_PASS

    def test_margin_example(self):
        v = corollary_reduction(member(CTX, [0.5]), JP)
        assert v.margin == pytest.approx(0.5)

    def test_agrees_with_general_criterion(self):
        rng = np.random.default_rng(31)
        for _ in range(300):
            tail = rng.standard_normal(6) + 1j * rng.standard_normal(6)
            f = member(CTX, 0.6 * tail)
            a = sufficiency_test(f, JP)
            b = corollary_reduction(f, JP)
            assert a.kind == b.kind
            assert abs(a.margin - b.margin) <= 1e-12

    def test_rejects_wrong_parameters(self):
        with pytest.raises(ValueError):
            corollary_reduction(member(QContext(2, 0.5, 0.0), []), JP)
        with pytest.raises(ValueError):
            corollary_reduction(member(QContext(1, 0.5, 1.0), []), JP)
        lit = QContext(1, 0.5, 0.0, LambdaConvention.PAPER_LITERAL)
        with pytest.raises(ValueError):
            corollary_reduction(member(lit, []), JP)

    def test_silverman_style_limit(self):
        # at q -> 1- with A = 1 - 2*alpha, B = -1 the criterion becomes
        # sum (n - alpha) |a_n| <= 1 - alpha after halving
        q = 1.0 - 1e-6
        ctx = QContext(1, q, 0.0)
        rng = np.random.default_rng(8)
        for alpha in (0.125, 0.25, 0.4):
            jp = JanowskiParams(1.0 - 2 * alpha, -1.0)
            for _ in range(30):
                tail = 0.3 * (rng.standard_normal(5) + 1j * rng.standard_normal(5))
                f = member(ctx, tail)
                v = corollary_reduction(f, jp)
                silverman = (1 - alpha) - sum(
                    (n - alpha) * abs(a) for n, a in enumerate(tail, start=2)
                )
                assert v.margin / 2.0 == pytest.approx(silverman, abs=1e-4)


class TestBoundary:
    def test_monomial_passes_every_radius(self):
        for p in (1, 2, 3):
            ctx = QContext(p, 0.5, 0.0)
            v = boundary_sample_test(member(ctx, []), JP, r=0.9, m=144)
            assert v.kind is VerdictKind.BOUNDARY_PASS

    def test_monomial_modulus_identically_zero(self):
        zs = 0.9 * np.exp(2j * np.pi * np.arange(32) / 32)
        mods = subordination_modulus(member(CTX, []), JP, zs)
        assert np.max(mods) <= 1e-14

    def test_oracle_member_passes_at_default_radius(self):
        ctx = QContext(1, 0.9, 0.0)
        w = SchwarzPoly((0.25 + 0.1j, 0.15))
        f = schwarz_to_member(w, ctx, JP, order=64)
        v = boundary_sample_test(f, JP, r=0.9, m=720)
        assert v.kind is VerdictKind.BOUNDARY_PASS

    def test_crafted_non_member_fails_with_large_witness_modulus(self):
        f = member(CTX, [5.0] + [0.0] * 7)
        v = boundary_sample_test(f, JP, r=0.9, m=720)
        assert v.kind is VerdictKind.BOUNDARY_FAIL
        assert v.margin < 0
        assert abs(float(subordination_modulus(f, JP, v.witness, h_order=72))) >= 1.0

    def test_rotation_invariance(self):
        # f(z) -> e^(-ip phi) f(e^(i phi) z) preserves the class; with phi a
        # multiple of the sample spacing the verdict and margin are identical
        ctx = QContext(1, 0.9, 0.0)
        f = schwarz_to_member(SchwarzPoly((0.3, 0.1j)), ctx, JP, order=48)
        m_count = 360
        base = boundary_sample_test(f, JP, r=0.8, m=m_count)
        phi = 2 * np.pi * 5 / m_count
        rot = f.series.coeffs * np.exp(1j * np.arange(49) * phi)
        rot[0] = 1.0
        g = NormalizedMember(ctx, TruncSeries(1, rot))
        after = boundary_sample_test(g, JP, r=0.8, m=m_count)
        assert after.kind == base.kind
        assert after.margin == pytest.approx(base.margin, abs=1e-10)

    def test_rejects_bad_radius(self):
        with pytest.raises(ValueError):
            boundary_sample_test(member(CTX, []), JP, r=1.0)


class TestConvolutionKernel:
    def test_first_pair_vanishes_at_p1(self):
        for theta in (0.0, 1.0, 3.0):
            en, _ = convolution_kernel(theta, JP, CTX)
            assert en == 0.0

    def test_p1_values(self):
        en, el = convolution_kernel(0.0, JP, CTX)
        assert el == pytest.approx(1.0)

    def test_p2_values(self):
        en, el = convolution_kernel(0.0, JanowskiParams(1.0, 0.0), QContext(2, 0.5, 0.0))
        assert en == pytest.approx(1.0 / 3.0)
        assert el == pytest.approx(5.0 / 3.0)

    def test_degenerate_pair_constant(self):
        assert DEGENERATE_KERNEL == (0.0, 1.0)

    def test_undefined_kernel(self):
        # [p,q] A = B is reachable for negative A
        ctx = QContext(2, 0.5, 0.0)  # [2,q] = 1.5
        jp = JanowskiParams(-0.5, -0.75)
        with pytest.raises(ValueError):
            convolution_kernel(0.0, jp, ctx)


def test_starlike_kernel_coefficient_identity():
    # z^p/((1-z)(1-qz)) carries [k-p+1, q] at z^k; this is the identity the
    # convolution criterion's z-derivative rewrite rests on
    for p in (1, 2, 3):
        for q in (0.3, 0.5, 0.9):
            numer = TruncSeries(p, [1.0] + [0.0] * 8)
            denom = TruncSeries(0, [1.0, -(1.0 + q), q] + [0.0] * 6)
            series = ratio(numer, denom)
            for k in range(p, p + 9):
                want = q_number(k - p + 1, q)
                assert series.coeff(k) == pytest.approx(want, rel=1e-12)


def test_kernel_weights_match_subordination_only_at_p1():
    # the scan's weight at offset n is (N+1)[n+1,q] - qL[n,q]; membership
    # logic needs it proportional to (1+B e^(i theta))[n+p,q] - [p,q](1+A e^(i theta)).
    # The two agree identically for p = 1 and genuinely diverge for p >= 2,
    # so the scan is a membership criterion only in the univalent case.
    def spread(p, theta=0.7, q=0.5, A=1.0, B=-1.0):
        ctx = QContext(p, q, 0.0)
        en, el = convolution_kernel(theta, JanowskiParams(A, B), ctx)
        K = np.array([(en + 1) * q_number(n + 1, q) - q * el * q_number(n, q) for n in range(6)])
        S = np.array(
            [
                (1 + B * cmath.exp(1j * theta)) * q_number(n + p, q)
                - q_number(p, q) * (1 + A * cmath.exp(1j * theta))
                for n in range(6)
            ]
        )
        ratios = K / S
        return np.abs(ratios - ratios[0]).max()

    assert spread(1) <= 1e-12
    assert spread(2) > 1e-3
    assert spread(3) > 1e-3


class TestConvolutionTest:
    def test_monomial_passes(self):
        for p in (1, 2):
            ctx = QContext(p, 0.5, 0.0)
            v = convolution_test(member(ctx, []), JP, theta_grid=16)
            assert v.kind is VerdictKind.CONVOLUTION_PASS
            assert v.margin > 0

    def test_oracle_member_passes_on_example_grid(self):
        ctx = QContext(1, 0.9, 0.0)
        f = schwarz_to_member(SchwarzPoly((0.25 + 0.1j, 0.15)), ctx, JP, order=64)
        v = convolution_test(f, JP, theta_grid=64, zspec=SamplingSpec((0.3, 0.6, 0.9), 360))
        assert v.kind is VerdictKind.CONVOLUTION_PASS

    def test_crafted_non_member_yields_zero_hit(self):
        f = member(CTX, [5.0] + [0.0] * 7)
        v = convolution_test(f, JP)
        assert v.kind is VerdictKind.CONVOLUTION_FAIL
        assert v.margin < 0
        # the degenerate pair reduces the scan to f itself; its root is -1/5
        assert v.witness == pytest.approx(-0.2, abs=1e-9)

    def test_sampling_spec_validation(self):
        with pytest.raises(ValueError):
            SamplingSpec(radii=(0.5, 1.0))
        with pytest.raises(ValueError):
            SamplingSpec(angles=2)


class TestVerdictPlumbing:
    def test_json_complex_witness(self):
        v = MembershipVerdict(VerdictKind.BOUNDARY_FAIL, -0.25, 0.3 + 0.4j)
        assert verdict_to_json(v) == {
            "kind": "BoundaryFail",
            "margin": -0.25,
            "witness": [0.3, 0.4],
        }

    def test_json_index_witness(self):
        v = MembershipVerdict(VerdictKind.SUFFICIENCY_FAIL, -1.0, 2)
        assert verdict_to_json(v)["witness"] == 2

    def test_json_no_witness(self):
        v = MembershipVerdict(VerdictKind.CONVOLUTION_PASS, 0.5, None)
        assert verdict_to_json(v)["witness"] is None

    def test_passed_property(self):
        assert MembershipVerdict(VerdictKind.BOUNDARY_PASS, 0.1).passed
        assert not MembershipVerdict(VerdictKind.BOUNDARY_FAIL, -0.1, 0j).passed


def test_verdict_coherence_on_small_corpus(small_corpus):
    # the weaker tests may never contradict a sufficiency pass
    specs = SamplingSpec(radii=tuple(np.arange(1, 10) * 0.1), angles=60)
    for p, q, mu, (a, b) in [
        (1, 0.5, 0.0, (1.0, -1.0)),
        (2, 0.7, 1.0, (1.0, 0.0)),
        (3, 0.9, 2.5, (0.5, -0.5)),
    ]:
        ctx = QContext(p, q, mu)
        jp = JanowskiParams(a, b)
        for _, w in small_corpus:
            f = schwarz_to_member(w, ctx, jp, order=8)
            s = sufficiency_test(f, jp)
            bd = boundary_sample_test(f, jp, r=0.3, m=180)
            cv = convolution_test(f, jp, theta_grid=8, zspec=specs)
            if s.passed:
                assert bd.passed and cv.passed
            if bd.passed:
                assert cv.passed
