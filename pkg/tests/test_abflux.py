import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from magbounds.abflux import (
    ab_asymptotic,
    ab_constant,
    ab_series,
    ab_series_many,
    ab_series_point,
    flux_density,
    reduce_flux,
)
from magbounds.errors import DomainError, PreconditionError


def _half_flux_oracle(s: float) -> float:
    # (2/pi) int_0^1 Si(2 sqrt(mu) s) dmu, substituting mu = u^2
    f = lambda u: 2.0 * u * special.sici(2.0 * u * s)[0]
    val, _ = integrate.quad(f, 0.0, 1.0, limit=400, epsabs=1e-13, epsrel=1e-13)
    return 2.0 / math.pi * val


def _direct_oracle(gamma: float, a: float, s: float) -> float:
    # brute force: scipy Bessel sum under adaptive quadrature in u
    m = int(s + 10 * s ** (1 / 3) + 20)
    orders = np.abs(np.arange(-m, m + 1) - a)
    f = lambda u: 2 * u * (1 + u) ** gamma * np.sum(special.jv(orders, u * s) ** 2)
    # (1 - u)^gamma goes into the quadrature weight
    val, _ = integrate.quad(f, 0.0, 1.0, weight="alg", wvar=(0.0, gamma), limit=400,
                            epsabs=1e-13, epsrel=1e-13)
    return val


class TestFluxDensity:
    @pytest.mark.parametrize("t", [0.5, 1.0, 5.0, 20.0])
    def test_half_flux_identity(self, t):
        assert flux_density(0.5, t)[0] == pytest.approx(2 / math.pi * special.sici(2 * t)[0], abs=1e-12)

    def test_integer_flux_is_one(self):
        assert np.allclose(flux_density(3.0, [0.1, 7.0, 150.0]), 1.0, atol=1e-13)

    @given(a=st.floats(0.0, 3.0), t=st.floats(0.01, 150.0))
    def test_symmetry(self, a, t):
        assert flux_density(a, t)[0] == pytest.approx(flux_density(1.0 - a, t)[0], abs=1e-12)

    def test_reduce(self):
        assert reduce_flux(2.25) == pytest.approx(0.25)
        assert reduce_flux(-0.25) == pytest.approx(0.25)
        assert reduce_flux(0.75) == pytest.approx(0.25)
        assert reduce_flux(5.0) == 0.0


class TestSeries:
    def test_zero_radius(self):
        assert ab_series(1.0, 0.3, 0.0) == 0.0
        assert ab_series(1.0, 0.0, 0.0) == 0.5

    @pytest.mark.parametrize("s", [0.7, 3.0, 11.5, 40.0])
    def test_half_flux_si_identity(self, s):
        assert ab_series(0.0, 0.5, s) == pytest.approx(_half_flux_oracle(s), abs=1e-8)

    @pytest.mark.parametrize("gamma,a,s", [(0.0, 0.2, 4.3), (1.0, 0.35, 9.0), (0.5, 0.1, 17.2),
                                           (-0.5, 0.4, 6.6), (2.0, 0.5, 25.0)])
    def test_brute_force(self, gamma, a, s):
        assert ab_series(gamma, a, s) == pytest.approx(_direct_oracle(gamma, a, s), abs=1e-8)

    def test_integer_flux(self):
        assert ab_series(1.0, 2.0, 13.0) == 0.5

    @given(a=st.floats(0.01, 0.99), s=st.floats(0.0, 60.0))
    def test_flux_symmetry(self, a, s):
        assert ab_series(1.0, a, s) == pytest.approx(ab_series(1.0, 1.0 - a, s), abs=1e-10)

    @given(gamma=st.floats(0.0, 2.0), a=st.floats(0.0, 1.0), s=st.floats(0.0, 100.0))
    def test_bounded(self, gamma, a, s):
        v = ab_series(gamma, a, s)
        assert 0.0 <= v <= 1.2 / (gamma + 1)

    def test_many_matches_single(self):
        s = np.array([0.0, 0.3, 5.0, 12.25, 33.0])
        many = ab_series_many(0.5, 0.3, s)
        assert many == pytest.approx([ab_series(0.5, 0.3, x) for x in s], abs=1e-15)

    def test_large_s_limit(self):
        s = 150.0
        env = math.gamma(2.0) * math.sin(0.3 * math.pi) / (math.pi * s**3)
        assert abs(ab_series(1.0, 0.3, s) - 0.5) <= env * 1.05

    def test_point_metadata(self):
        p = ab_series_point(1.0, 0.25, 30.0)
        assert p.truncation_order >= 30
        assert p.quadrature_nodes == 30 * 64
        assert 0 < p.error_estimate < 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            ab_series(1.0, 0.5, 201.0)
        with pytest.raises(DomainError):
            ab_series(-1.0, 0.5, 1.0)


class TestAsymptotic:
    def test_zero_of_second_term(self):
        s = (math.pi + 0.5 * math.pi) / 2  # sin(2s - pi/2) = 0 at gamma = 1
        assert ab_asymptotic(1.0, 0.3, s) == pytest.approx(0.5, abs=1e-15)

    def test_half_flux_amplitude(self):
        s = 10.0 + math.pi / 4  # sin(2s) = sin(20 + pi/2)
        lead = 1.0 - ab_asymptotic(0.0, 0.5, s)
        assert lead == pytest.approx(math.sin(2 * s) / (math.pi * s**2), rel=1e-12)

    @pytest.mark.parametrize("gamma", [0.0, 1.0])
    def test_remainder_slope(self, gamma):
        s = np.linspace(20.0, 80.0, 401)
        diff = np.abs(ab_series_many(gamma, 0.25, s) - [ab_asymptotic(gamma, 0.25, x) for x in s])
        slope = np.polyfit(np.log(s), np.log(diff), 1)[0]
        assert slope == pytest.approx(-(3 + gamma), abs=0.4)

    def test_domain(self):
        with pytest.raises(DomainError):
            ab_asymptotic(0.0, 0.5, 0.0)


class TestConstant:
    def test_integer_flux(self):
        assert ab_constant(1.0, 0.0).value == 1.0
        assert ab_constant(0.0, 3.0).value == 1.0

    def test_half_flux_values(self):
        r0 = ab_constant(0.0, 0.5)
        assert 1.0 < r0.value <= 1.054
        assert 1.0 < ab_constant(2.0, 0.5).value <= 1.011
        # the reported argmax reproduces the value
        assert r0.value == pytest.approx(ab_series(0.0, 0.5, r0.argmax_s), abs=1e-12)
        d = r0.as_dict()
        assert set(d) == {"R", "argmax_s", "s_max", "truncation", "error_bound"}

    def test_monotone_in_gamma(self):
        vals = [ab_constant(g, 0.5).value for g in (0.0, 0.5, 1.0, 1.5, 2.0)]
        assert all(b <= a + 1e-6 for a, b in zip(vals, vals[1:]))

    def test_periodic_and_symmetric(self):
        a = ab_constant(1.0, 0.3).value
        assert ab_constant(1.0, 1.3).value == pytest.approx(a, abs=1e-8)
        assert ab_constant(1.0, 0.7).value == pytest.approx(a, abs=1e-8)

    def test_no_boundary_warning(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            ab_constant(1.0, 0.1)

    def test_negative_gamma_rejected(self):
        with pytest.raises(PreconditionError):
            ab_constant(-0.5, 0.5)
