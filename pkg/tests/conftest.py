import pytest

import singular_forge as sf


@pytest.fixture(scope="session")
def l6a1_braid():
    return sf.square_parametrisation(sf.lemniscate(4, 3, 1))


@pytest.fixture(scope="session")
def l6a1_tuned(l6a1_braid):
    """Tuned construction for the squared (4,3,1) braid, shared by the
    slower certification tests."""
    lam, p, certs = sf.tune_lambda(l6a1_braid, 1, 0, 0, 1.0)
    return lam, p, certs


@pytest.fixture(scope="session")
def hopf_poly():
    b = sf.square_parametrisation(sf.lemniscate(2, 1, 1))
    g = sf.expand_g(b)
    return b, sf.homogenize(g, 1.0, 1.0, 1, 0, 0)
