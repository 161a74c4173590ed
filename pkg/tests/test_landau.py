import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from magbounds.constants import rho_hom, semiclassical_constant
from magbounds.errors import PreconditionError
from magbounds.landau import (
    LandauSpectrum,
    landau_ids,
    landau_ratio,
    landau_ratio_scan,
    landau_ratio_sup,
    landau_riesz_sum,
)
from magbounds.search import golden_max, scan_argmax


class TestSpectrum:
    def test_levels(self):
        s = LandauSpectrum(2.0)
        assert [s.level(k) for k in (1, 2, 3)] == [2.0, 6.0, 10.0]
        assert s.degeneracy_density == 2.0 / (2 * math.pi)

    def test_levels_below_strict(self):
        assert LandauSpectrum(1.0).levels_below(3.0).tolist() == [1.0]

    def test_invalid(self):
        with pytest.raises(PreconditionError):
            LandauSpectrum(0.0)
        with pytest.raises(PreconditionError):
            LandauSpectrum(1.0).level(0)


class TestRieszSum:
    def test_counting(self):
        assert landau_riesz_sum(1, 3.5, 0) == pytest.approx(1 / math.pi, rel=1e-15)

    def test_single_term(self):
        assert landau_riesz_sum(1, 1.5, 0.5) == pytest.approx(math.sqrt(0.5) / (2 * math.pi), rel=1e-15)

    def test_midpoint_identity(self):
        # lambda / B even: the sum is an exact midpoint rule for a linear integrand
        assert landau_riesz_sum(0.01, 1.0, 1.0) == pytest.approx(semiclassical_constant(1, 2), rel=1e-12)

    def test_empty(self):
        assert landau_riesz_sum(1.0, 0.9, 1.0) == 0.0

    @given(B=st.floats(0.05, 20.0), lam=st.floats(0.0, 100.0), gamma=st.floats(0.0, 3.0))
    def test_scaling(self, B, lam, gamma):
        lhs = landau_riesz_sum(B, lam, gamma)
        rhs = B ** (gamma + 1) * landau_riesz_sum(1.0, lam / B, gamma)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)

    @given(B=st.floats(0.05, 20.0), lam=st.floats(0.01, 200.0), gamma=st.floats(1.0, 3.0))
    def test_mean_value_bound(self, B, lam, gamma):
        # convex phi: the Landau average never exceeds the phase-space integral
        assert landau_riesz_sum(B, lam, gamma) <= semiclassical_constant(gamma, 2) * lam ** (gamma + 1) * (1 + 1e-12)

    def test_semiclassical_limit(self):
        devs = [abs(landau_ratio(B, 0.97, 1.5) - 1.0) for B in (0.1, 0.05, 0.01)]
        assert devs[0] > devs[1] > devs[2]

    def test_negative_gamma(self):
        with pytest.raises(PreconditionError):
            landau_riesz_sum(1.0, 2.0, -0.5)


class TestIDS:
    def test_values(self):
        assert landau_ids(1, 3.5) == pytest.approx(0.318310, abs=1e-6)
        assert landau_ids(1, 0.5) == 0.0
        assert landau_ids(0.01, 1.0) == pytest.approx(1 / (4 * math.pi), rel=1e-12)


class TestSupremum:
    def test_half(self):
        res = landau_ratio_sup(1.0, 0.5, 1e-6)
        assert res.sup == pytest.approx(1.154701, abs=1e-6)
        assert res.argmax_lambda == pytest.approx(1.5, abs=1e-6)
        assert res.kind == "attained"

    def test_scale_invariance(self):
        a = landau_ratio_sup(1.0, 0.5, 1e-6)
        b = landau_ratio_sup(2.0, 0.5, 1e-6)
        assert b.argmax_lambda == pytest.approx(3.0, abs=1e-5)
        assert a.sup == pytest.approx(b.sup, abs=1e-9)

    def test_gamma_zero_limit(self):
        res = landau_ratio_sup(1.0, 0.0, 1e-6)
        assert res.sup == pytest.approx(2.0, abs=1e-6)
        assert res.argmax_lambda == 1.0
        assert res.kind == "limit"

    @pytest.mark.parametrize("gamma", [1.0, 1.5, 2.0])
    def test_asymptotic(self, gamma):
        res = landau_ratio_sup(3.0, gamma, 1e-6)
        assert res.kind == "asymptotic"
        assert res.argmax_lambda == "asymptotic"
        assert res.sup == pytest.approx(1.0, abs=1e-6)

    def test_scan_shape(self):
        lams, ratios = landau_ratio_scan(1.0, 0.5)
        assert lams.size == ratios.size == 2000
        assert ratios.max() <= rho_hom(0.5) + 1e-12

    def test_invalid(self):
        with pytest.raises(PreconditionError):
            landau_ratio_sup(-1.0, 0.5)
        with pytest.raises(PreconditionError):
            landau_ratio_sup(1.0, 0.5, tol=0.0)


class TestSearch:
    def test_golden_quadratic(self):
        x, fx = golden_max(lambda t: -(t - 0.3) ** 2, -1.0, 2.0, tol=1e-10)
        assert x == pytest.approx(0.3, abs=1e-8)
        assert fx == pytest.approx(0.0, abs=1e-15)

    def test_golden_reversed_bracket(self):
        x, _ = golden_max(lambda t: math.sin(t), 2.5, 0.5, tol=1e-10)
        # a flat maximum limits x to about sqrt(machine eps)
        assert x == pytest.approx(math.pi / 2, abs=1e-7)

    def test_argmax_tie_break(self):
        assert scan_argmax(np.array([1.0, 3.0, 3.0, 2.0])) == 1
