import json

import mpmath
import numpy as np
import pytest

from discfrac.errors import (
    IncompatibleGridError,
    InputError,
    KernelConstructionError,
    NonInvertibleKernelError,
)
from discfrac.kernels import (
    Family,
    Kernel,
    KernelSpec,
    build_kernel,
    invert_kernel,
    random_kernel,
    verify_inverse_pair,
)
from discfrac.special_fns import falling, gamma, rising

ALPHAS = [0.1, 0.25, 0.5, 0.75, 0.9]
PAIRS = [(Family.DELTA_SUM, Family.DELTA_DIFF), (Family.NABLA_SUM, Family.NABLA_DIFF)]


def table(values, base=0.0):
    spec = KernelSpec(Family.TABLE, anchor=base, table=tuple(values))
    return build_kernel(spec, len(values))


def mp_pair_convolution(alpha, n, family):
    """(p*q)[1..n-1] at 30 digits straight from the Gamma-function forms."""
    mpmath.mp.dps = 30
    a = mpmath.mpf(alpha)
    g = mpmath.gamma
    if family is Family.DELTA_SUM:
        p = [g(j + a) / g(j + 1) / g(a) for j in range(n)]
        q = [g(j - a + 1) / g(j + 1) / g(1 - a) for j in range(n)]
    else:
        p = [g(j + a) / g(j + 1) / g(a) for j in range(n)]
        q = [g(j + 1 - a) / g(j + 1) / g(1 - a) for j in range(n)]
    return [sum(p[m - 1 - k] * q[k] for k in range(m)) for m in range(1, n)]


class TestKernelSpec:
    def test_json_round_trip(self):
        spec = KernelSpec.from_json('{"family": "delta_sum", "alpha": 0.5, "anchor": 0.3}')
        assert spec.family is Family.DELTA_SUM
        assert KernelSpec.from_dict(spec.to_dict()) == spec

    def test_unknown_field_rejected(self):
        with pytest.raises(InputError, match="unknown"):
            KernelSpec.from_json('{"family": "delta_sum", "alpha": 0.5, "order": 2}')

    @pytest.mark.parametrize(
        "text",
        [
            '{"family": "tempered", "alpha": 0.5}',
            '{"family": "delta_sum"}',
            '{"family": "delta_sum", "alpha": 2}',
            '{"family": "delta_sum", "alpha": -0.5}',
            '{"family": "delta_sum", "alpha": "0.5"}',
            '{"family": "table"}',
            '{"family": "table", "table": [1, "x"]}',
            '{"alpha": 0.5}',
            "[1, 2]",
            "{not json",
        ],
    )
    def test_invalid(self, text):
        with pytest.raises(InputError):
            KernelSpec.from_json(text)

    def test_bases(self):
        assert KernelSpec(Family.DELTA_SUM, 0.5, 2.0).base == 1.5
        assert KernelSpec(Family.DELTA_DIFF, 0.25, 0.0).base == -0.75
        assert KernelSpec(Family.NABLA_DIFF, 0.25, 0.3).base == 0.3


class TestBuildKernel:
    def test_delta_sum_leading_sample(self):
        k = build_kernel(KernelSpec(Family.DELTA_SUM, 0.5), 4)
        assert k.samples[0] == pytest.approx(1.0, rel=1e-15)

    def test_nabla_diff_leading_sample(self):
        k = build_kernel(KernelSpec(Family.NABLA_DIFF, 0.5), 4)
        assert k.samples[0] == pytest.approx(1.0, rel=1e-15)

    def test_samples_against_oracle(self):
        # frozen from mpmath (30 digits)
        np.testing.assert_allclose(
            build_kernel(KernelSpec(Family.DELTA_DIFF, 0.5), 4).samples,
            [1.0, 0.5, 0.375, 0.3125], rtol=1e-14,
        )
        np.testing.assert_allclose(
            build_kernel(KernelSpec(Family.NABLA_SUM, 0.3), 4).samples,
            [1.0, 0.3, 0.195, 0.1495], rtol=1e-14,
        )
        np.testing.assert_allclose(
            build_kernel(KernelSpec(Family.NABLA_DIFF, 0.3), 4).samples,
            [1.0, 0.7, 0.595, 0.5355], rtol=1e-14,
        )

    def test_samples_follow_family_formula(self):
        a = 0.37
        n = 10
        ks = {f: build_kernel(KernelSpec(f, a, 1.1), n).samples for f in Family if f is not Family.TABLE}
        for j in range(n):
            assert ks[Family.DELTA_SUM][j] == pytest.approx(falling(j + a - 1, a - 1) / gamma(a))
            assert ks[Family.DELTA_DIFF][j] == pytest.approx(falling(j - a, -a) / gamma(1 - a))
            assert ks[Family.NABLA_SUM][j] == pytest.approx(rising(j + 1, a - 1) / gamma(a))
            assert ks[Family.NABLA_DIFF][j] == pytest.approx(rising(j + 1, -a) / gamma(1 - a))

    def test_example_and_bullet_delta_diff_coincide(self):
        # q(t) = (t - a + 1 - 2 alpha)^(-alpha) on base a + alpha - 1 versus
        # q(t) = (t - a)^(-alpha) on base a - alpha: same index sequence
        a, alpha = 0.3, 0.4
        g = 1 / gamma(1 - alpha)
        for j in range(12):
            t1 = a + alpha - 1 + j
            t2 = a - alpha + j
            v1 = falling(t1 - a + 1 - 2 * alpha, -alpha) * g
            v2 = falling(t2 - a, -alpha) * g
            assert v1 == pytest.approx(v2, rel=1e-13)

    def test_anchor_independent(self):
        for fam in (Family.DELTA_SUM, Family.NABLA_DIFF):
            k1 = build_kernel(KernelSpec(fam, 0.4, 0.0), 20)
            k2 = build_kernel(KernelSpec(fam, 0.4, -1.7), 20)
            assert np.array_equal(k1.samples, k2.samples)
            assert k1.base != k2.base

    def test_table_echo_and_padding(self):
        assert table([1, 0, 0]).samples.tolist() == [1, 0, 0]
        spec = KernelSpec(Family.TABLE, table=(1.0, 1.0))
        assert build_kernel(spec, 3).samples.tolist() == [1, 1, 0]
        assert build_kernel(spec, 1).samples.tolist() == [1]

    def test_alpha_above_one(self):
        k = build_kernel(KernelSpec(Family.DELTA_DIFF, 1.5), 8)
        assert np.all(np.isfinite(k.samples))

    def test_construction_error_names_index(self, monkeypatch):
        import discfrac.kernels as mod

        monkeypatch.setattr(mod, "falling", lambda x, y: None if x > 2 else 1.0)
        with pytest.raises(KernelConstructionError, match="index 3"):
            build_kernel(KernelSpec(Family.DELTA_SUM, 0.5), 8)


class TestVerifyPair:
    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize("fams", PAIRS)
    def test_classical_pairs(self, alpha, fams):
        p = build_kernel(KernelSpec(fams[0], alpha, 0.3), 128)
        q = build_kernel(KernelSpec(fams[1], alpha, 0.3), 128)
        report = verify_inverse_pair(p, q, 1e-9)
        assert report.is_member
        assert report.residuals.size == 127
        assert report.first_failure is None

    @pytest.mark.parametrize("fams", PAIRS)
    def test_oracle_convolution(self, fams):
        # high-precision convolution is 1 to 30 digits; float path to 1e-13
        n = 24
        exact = mp_pair_convolution(0.3, n, fams[0])
        assert max(abs(float(v) - 1) for v in exact) < 1e-25
        p = build_kernel(KernelSpec(fams[0], 0.3), n)
        q = build_kernel(KernelSpec(fams[1], 0.3), n)
        assert verify_inverse_pair(p, q).max_residual < 1e-13

    def test_first_term_is_one(self):
        p = build_kernel(KernelSpec(Family.DELTA_SUM, 0.5), 2)
        q = build_kernel(KernelSpec(Family.DELTA_DIFF, 0.5), 2)
        assert p.samples[0] * q.samples[0] == pytest.approx(1.0, abs=1e-15)

    def test_impulse_and_ones(self):
        r = verify_inverse_pair(table([1, 0, 0, 0, 0]), table([1] * 5))
        assert r.is_member
        assert np.all(r.residuals == 0)

    def test_mismatched_alphas_fail(self):
        p = build_kernel(KernelSpec(Family.DELTA_SUM, 0.5), 32)
        q = build_kernel(KernelSpec(Family.DELTA_DIFF, 0.3), 32)
        r = verify_inverse_pair(p, q)
        assert not r.is_member
        assert r.first_failure == 2

    def test_length_mismatch(self):
        with pytest.raises(IncompatibleGridError):
            verify_inverse_pair(table([1, 0]), table([1, 1, 1]))


class TestInvert:
    def test_impulse_gives_ones(self):
        q = invert_kernel(table([1, 0, 0, 0, 0, 0]))
        assert q.samples.tolist() == [1.0] * 6
        assert q.spec.family is Family.TABLE

    def test_ones_gives_impulse(self):
        q = invert_kernel(table([1] * 6))
        assert q.samples.tolist() == [1, 0, 0, 0, 0, 0]

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_delta_sum_inverse_is_delta_diff(self, alpha):
        p = build_kernel(KernelSpec(Family.DELTA_SUM, alpha), 64)
        q = build_kernel(KernelSpec(Family.DELTA_DIFF, alpha), 64)
        assert np.max(np.abs(invert_kernel(p).samples - q.samples)) <= 1e-10

    def test_zero_lead(self):
        with pytest.raises(NonInvertibleKernelError):
            invert_kernel(table([0.0, 1.0]))

    def test_truncated_length(self):
        q = invert_kernel(table([2.0, 1.0, 0.5]), 2)
        assert len(q) == 2
        assert q.base == 0.0

    def test_left_and_right_inverse_for_dominant_lead(self):
        # sum |p[j]| over j >= 1 is below |p[0]|, so the inverse stays bounded
        rng = np.random.default_rng(9)
        for _ in range(10):
            v = rng.uniform(-1, 1, 64) * (0.5 / 63)
            v[0] = rng.choice([-1, 1]) * rng.uniform(0.5, 1)
            p = table(v)
            q = invert_kernel(p)
            assert verify_inverse_pair(p, q).is_member
            assert verify_inverse_pair(q, p).is_member

    def test_random_kernel_lead(self):
        for seed in range(30):
            p = random_kernel(16, seed)
            assert abs(p.samples[0]) >= 0.1
            assert np.all(np.abs(p.samples) <= 1)
