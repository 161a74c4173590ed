import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magbounds.eig import eigenvalues
from magbounds.errors import DomainError, FluxWarning, PreconditionError
from magbounds.lattice import (
    GaugeField,
    assemble_magnetic,
    build_domain,
    dirichlet_square_eigenvalues,
)


class TestDomain:
    def test_small_square(self):
        d = build_domain("square", 4)
        assert d.count == 9
        assert d.area == pytest.approx(9 / 16)

    @pytest.mark.parametrize("n", [4, 7, 16])
    def test_counts(self, n):
        assert build_domain("square", n).count == (n - 1) ** 2
        assert build_domain("square", n, bc="neumann").count == (n + 1) ** 2
        assert build_domain("rectangle", n, aspect=2.0).count == (2 * n - 1) * (n - 1)

    def test_disk_area(self):
        d = build_domain("disk", 64)
        assert abs(d.area - math.pi / 4) < 4 / 64

    def test_lshape_area(self):
        d = build_domain("lshape", 32, bc="neumann")
        assert abs(d.area - 0.75) < 4 / 32
        # the re-entrant quarter is empty
        x, y = d.coordinates()
        assert not np.any((x > 0.5 + 1e-12) & (y > 0.5 + 1e-12))

    def test_index_map_roundtrip(self):
        d = build_domain("disk", 12)
        idx = d.index_map()
        assert sorted(idx[d.mask].tolist()) == list(range(d.count))
        assert np.all(idx[~d.mask] == -1)

    def test_digest_distinguishes(self):
        assert build_domain("square", 8).digest() != build_domain("square", 8, bc="neumann").digest()
        assert build_domain("square", 8).digest() == build_domain("square", 8).digest()

    @pytest.mark.parametrize("kwargs,err", [
        ({"shape": "hexagon", "n": 8}, DomainError),
        ({"shape": "square", "n": 3}, PreconditionError),
        ({"shape": "square", "n": 8, "bc": "robin"}, DomainError),
        ({"shape": "rectangle", "n": 8, "aspect": 1.3}, PreconditionError),
    ])
    def test_invalid(self, kwargs, err):
        with pytest.raises(err):
            build_domain(**kwargs)


class TestGauge:
    @pytest.mark.parametrize("kind", ["homogeneous_symmetric", "homogeneous_landau"])
    def test_plaquette_flux(self, kind):
        d = build_domain("rectangle", 10)
        g = GaugeField(kind, B=37.0)
        assert np.allclose(g.plaquette_fluxes(d), 37.0 * d.spacing**2, atol=1e-14)

    @given(flux=st.floats(-2.0, 2.0))
    @settings(max_examples=20)
    def test_ab_single_plaquette(self, flux):
        d = build_domain("square", 9)
        g = GaugeField("ab_plaquette", flux=flux)
        phi = g.plaquette_fluxes(d)
        i0, j0 = g.marked_plaquette(d)
        assert phi[i0, j0] == pytest.approx(2 * math.pi * flux, abs=1e-12)
        phi[i0, j0] = 0.0
        assert np.all(phi == 0.0)

    def test_marked_plaquette_near_centre(self):
        d = build_domain("square", 16)
        i0, j0 = GaugeField("ab_plaquette", flux=0.5).marked_plaquette(d)
        assert (i0, j0) == (8, 8)

    def test_is_zero(self):
        assert GaugeField().is_zero
        assert GaugeField("homogeneous_symmetric", B=0.0).is_zero
        assert GaugeField("ab_plaquette", flux=2.0).is_zero
        assert not GaugeField("ab_plaquette", flux=0.5).is_zero

    def test_invalid(self):
        with pytest.raises(DomainError):
            GaugeField("radial", B=1.0)
        with pytest.raises(DomainError):
            GaugeField("homogeneous_landau", B=-1.0)


class TestAssembly:
    def test_zero_gauge_stencil(self):
        d = build_domain("square", 6)
        op = assemble_magnetic(d)
        H = op.matrix
        assert H.dtype == float
        idx = d.index_map()
        row = H[idx[3, 3]] * d.spacing**2
        assert sorted(row[row != 0].tolist()) == [-1, -1, -1, -1, 4]

    def test_read_only(self):
        op = assemble_magnetic(build_domain("square", 5))
        with pytest.raises(ValueError):
            op.matrix[0, 0] = 1.0

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    @pytest.mark.parametrize("shape", ["square", "disk", "lshape"])
    def test_hermitian_and_diagonal(self, shape, bc):
        d = build_domain(shape, 12, bc=bc)
        op = assemble_magnetic(d, GaugeField("homogeneous_symmetric", B=12.0))
        H = op.matrix
        assert np.max(np.abs(H - H.conj().T)) <= 1e-14 * np.max(np.abs(H))
        h2 = d.spacing**2
        if bc == "dirichlet":
            assert np.allclose(op.diagonal, 4 / h2)
        else:
            neighbours = np.sum(H != 0, axis=1) - 1
            assert np.allclose(op.diagonal, neighbours / h2)
        assert op.bc == bc
        assert op.provenance == (d.digest(), op.gauge.digest())

    def test_flux_warning(self):
        d = build_domain("square", 8)
        with pytest.warns(FluxWarning):
            assemble_magnetic(d, GaugeField("homogeneous_landau", B=10.0))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assemble_magnetic(d, GaugeField("homogeneous_landau", B=6.0))

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    def test_gauge_invariance(self, bc):
        d = build_domain("lshape", 16, bc=bc)
        a = eigenvalues(assemble_magnetic(d, GaugeField("homogeneous_symmetric", B=25.0)).matrix)
        b = eigenvalues(assemble_magnetic(d, GaugeField("homogeneous_landau", B=25.0)).matrix)
        assert np.max(np.abs(a.values - b.values)) < 1e-9

    def test_ab_integer_flux_is_trivial(self):
        d = build_domain("square", 12)
        a = eigenvalues(assemble_magnetic(d, GaugeField("ab_plaquette", flux=1.0)).matrix)
        b = eigenvalues(assemble_magnetic(d).matrix)
        assert np.max(np.abs(a.values - b.values)) < 1e-9

    def test_ab_flux_symmetry(self):
        # alpha and 1 - alpha are complex conjugate operators
        d = build_domain("disk", 14)
        a = eigenvalues(assemble_magnetic(d, GaugeField("ab_plaquette", flux=0.3)).matrix)
        b = eigenvalues(assemble_magnetic(d, GaugeField("ab_plaquette", flux=0.7)).matrix)
        assert np.max(np.abs(a.values - b.values)) < 1e-9

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    @pytest.mark.parametrize("gauge", [GaugeField("homogeneous_symmetric", B=24.0),
                                       GaugeField("ab_plaquette", flux=0.5)])
    def test_diamagnetic_ground_state(self, bc, gauge):
        d = build_domain("square", 16, bc=bc)
        lo_mag = eigenvalues(assemble_magnetic(d, gauge).matrix).lowest
        lo_free = eigenvalues(assemble_magnetic(d).matrix).lowest
        assert lo_mag >= lo_free - 1e-9

    def test_neumann_below_dirichlet(self):
        g = GaugeField("homogeneous_symmetric", B=18.0)
        dn = eigenvalues(assemble_magnetic(build_domain("square", 14, bc="neumann"), g).matrix).values
        dd = eigenvalues(assemble_magnetic(build_domain("square", 14), g).matrix).values
        assert np.all(dn[: dd.size] <= dd + 1e-9)


class TestClosedForm:
    def test_discrete_eigenvalues(self):
        n = 20
        spec = eigenvalues(assemble_magnetic(build_domain("square", n)).matrix)
        assert np.max(np.abs(spec.values - dirichlet_square_eigenvalues(n))) < 1e-10 * spec.values[-1]

    def test_continuum_limit(self):
        exact = math.pi**2 * 2
        errs = [abs(dirichlet_square_eigenvalues(n)[0] - exact) for n in (8, 16, 32)]
        assert errs[0] > errs[1] > errs[2]
        # second order: halving h quarters the error
        assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.05)
