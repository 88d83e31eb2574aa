import cmath
import math

import numpy as np
import pytest

from invdist.bergman import (
    annulus_monomial_norm_sq,
    bergman_distance,
    bergman_field,
    bergman_kernel,
    bergman_kernel_pair,
    bergman_metric,
    integrate_metric,
    shortest_path_length,
)
from invdist.bounds import bg_reproducing_residual
from invdist.conformal import mobius_disc_automorphism
from invdist.distances import (
    caratheodory,
    kobayashi_field,
    kobayashi_metric,
    poincare_distance,
)
from invdist.annulus import annulus_kobayashi_distance
from invdist.domains import Annulus, Disc, UnitDisc
from invdist.errors import UnsupportedDomain

ROOT2 = math.sqrt(2.0)


def monomial_series_kernel(z, terms=4000):
    """Independent disc-kernel oracle: sum (n+1) |z|^{2n} / pi over the
    orthonormal monomial basis with ||z^n||^2 = pi / (n + 1)."""
    s, a = 0.0, abs(z) ** 2
    for n in range(terms):
        s += (n + 1) * a ** n / math.pi
    return s


class TestDiscKernel:
    def test_center_value_against_monomial_sum(self):
        assert bergman_kernel(UnitDisc(), 0j) == pytest.approx(1.0 / math.pi, abs=1e-15)
        for z in (0.3 + 0.2j, 0.6j, -0.5 + 0.1j):
            assert bergman_kernel(UnitDisc(), z) == \
                pytest.approx(monomial_series_kernel(z), rel=1e-12)

    def test_scaled_disc_transport(self):
        big = Disc(0j, 2.0)
        # K scales by the squared derivative of the normalization
        assert bergman_kernel(big, 0j) == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-12)

    def test_metric_closed_form(self):
        assert bergman_metric(UnitDisc(), 0j) == pytest.approx(ROOT2, abs=1e-14)
        assert bergman_metric(UnitDisc(), 0.5 + 0j) == pytest.approx(ROOT2 / 0.75, rel=1e-12)

    def test_metric_to_kobayashi_ratio(self, rng):
        for _ in range(20):
            z = complex(0.95 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()))
            ratio = bergman_metric(UnitDisc(), z) / kobayashi_metric(UnitDisc(), z)
            assert ratio == pytest.approx(ROOT2, abs=1e-9)


class TestAnnulusKernel:
    def test_monomial_norms_closed_form(self):
        assert annulus_monomial_norm_sq(2.0, 0) == pytest.approx(math.pi * 3.75, rel=1e-14)
        assert annulus_monomial_norm_sq(2.0, -1) == \
            pytest.approx(4.0 * math.pi * math.log(2.0), rel=1e-14)

    def test_monomial_norms_quadrature_oracle(self):
        nodes, wts = np.polynomial.legendre.leggauss(64)
        rho = 0.5 * (2.0 + 0.5) / 2 + 0.5 * (2.0 - 0.5) / 2 * nodes + 0  # map to [0.5, 2]
        rho = 1.25 + 0.75 * nodes
        ww = 0.75 * wts
        for n in (-3, -1, 0, 2, 5):
            val = 2.0 * math.pi * np.sum(ww * rho ** (2 * n + 1))
            assert annulus_monomial_norm_sq(2.0, n) == pytest.approx(float(val), rel=1e-12)

    def test_kernel_positive_and_symmetric(self):
        dom = Annulus(2.0)
        for z, w in [(1.2 + 0.3j, 0.7 - 0.5j), (0.6 + 0.1j, 1.8 - 0.2j)]:
            k = bergman_kernel_pair(dom, z, w)
            assert bergman_kernel_pair(dom, w, z) == pytest.approx(k.conjugate(), abs=1e-14)
        assert bergman_kernel(dom, 1.0 + 0j) > 0

    def test_reproducing_property(self):
        residual = bg_reproducing_residual(2.0, 1.2 + 0.4j, range(-5, 6))
        assert residual < 1e-6

    def test_metric_matches_log_kernel_hessian_fd(self):
        dom = Annulus(2.0)
        z0, h = 1.0, 1e-4
        logk = lambda z: math.log(bergman_kernel(dom, z))
        lap = (logk(z0 + h) + logk(z0 - h) + logk(complex(z0, h)) + logk(complex(z0, -h))
               - 4.0 * logk(z0 + 0j)) / (h * h)
        assert bergman_metric(dom, 1.0 + 0j) == pytest.approx(math.sqrt(lap / 4.0), abs=1e-4)


class TestDiscBergmanDistance:
    def test_radial_value(self):
        v = bergman_distance(UnitDisc(), 0j, 0.5 + 0j)
        assert v.value == pytest.approx(ROOT2 * math.atanh(0.5), abs=1e-12)

    def test_equals_root2_caratheodory(self, rng):
        dom = UnitDisc()
        for _ in range(20):
            z = complex(0.9 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()))
            w = complex(0.9 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()))
            assert bergman_distance(dom, z, w).value == \
                pytest.approx(ROOT2 * caratheodory(dom, z, w).value, abs=1e-9)

    def test_kernel_pipeline_geodesic_integral(self, rng):
        # integrate the kernel-model metric along the hyperbolic geodesic
        dom = UnitDisc()
        field = bergman_field(dom)
        for _ in range(5):
            z = complex(0.8 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()))
            w = complex(0.8 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()))
            if abs(z - w) < 1e-3:
                continue
            m = mobius_disc_automorphism(z)
            u = complex(m.evaluate(w))

            def path(t):
                return m.inverse(t * u)

            def dpath(t):
                return u * (1.0 - abs(z) ** 2) / (1.0 + z.conjugate() * t * u) ** 2

            val = integrate_metric(field, path, dpath, n_panels=24)
            assert val == pytest.approx(ROOT2 * poincare_distance(z, w), abs=1e-9)

    def test_ellipse_transport(self, ellipse):
        v = bergman_distance(ellipse, 0j, 1.0 + 0j)
        c = caratheodory(ellipse, 0j, 1.0 + 0j)
        assert v.value == pytest.approx(ROOT2 * c.value, abs=1e-9)

    def test_unsupported_ball(self):
        from invdist.domains import Ball
        with pytest.raises(UnsupportedDomain):
            bergman_distance(Ball((0j, 0j), 1.0), np.array([0j, 0j]), np.array([0.5, 0j]))


class TestAnnulusBergmanDistance:
    def test_shortest_path_recovers_covering_kobayashi(self):
        dom = Annulus(2.0)
        field = kobayashi_field(dom)
        for z, w in [(1.0 + 0j, 1.5 + 0j), (0.6 + 0j, 1.9j)]:
            sp = shortest_path_length(field, 2.0, z, w, 48, 192)
            k = annulus_kobayashi_distance(2.0, z, w)
            assert abs(sp - k) < 5e-3

    def test_interval_and_rotation_invariance(self):
        dom = Annulus(2.0)
        v = bergman_distance(dom, 1.0 + 0j, 1.5 + 0j)
        assert v.method == "interval"
        assert v.hi >= v.lo
        rot = cmath.exp(0.9j)
        v2 = bergman_distance(dom, rot, 1.5 * rot)
        assert abs(v.value - v2.value) < 5e-3

    def test_comparison_k_le_4b(self):
        dom = Annulus(2.0)
        z, w = 1.0 + 0j, 1.5 + 0j
        k = annulus_kobayashi_distance(2.0, z, w)
        b = bergman_distance(dom, z, w)
        assert k <= 4.0 * b.hi + 1e-6

    def test_bergman_metric_vectorized_guard(self):
        dom = Annulus(2.0)
        vals = bergman_metric(dom, np.array([1.0 + 0j, 3.0 + 0j]), 1.0)
        assert math.isfinite(vals[0])
        assert math.isinf(vals[1])
