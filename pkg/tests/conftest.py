import numpy as np
import pytest

from invdist.domains import Annulus, UnitDisc, ellipse_domain, lens_domain


@pytest.fixture(scope="session")
def ellipse():
    return ellipse_domain(2.0, 1.0)


@pytest.fixture(scope="session")
def lens():
    return lens_domain(0.75)


@pytest.fixture(scope="session")
def annulus2():
    return Annulus(2.0)


@pytest.fixture(scope="session")
def unit_disc():
    return UnitDisc()


@pytest.fixture()
def rng():
    return np.random.default_rng(42)


def random_disc_point(rng, rmax=0.97):
    return complex(rmax * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
