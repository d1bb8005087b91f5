import pytest

from grperiod.targets import BlowUpSpec, normalize_blowup


@pytest.fixture(scope="session")
def p4_112():
    """Blow-up of P^4 in a (1,1,2) complete intersection, default twist."""
    return normalize_blowup(BlowUpSpec(4, (1, 1, 2)))


@pytest.fixture(scope="session")
def p6_122():
    """Blow-up of P^6 in a (1,2,2) complete intersection, twist level 2."""
    return normalize_blowup(BlowUpSpec(6, (1, 2, 2)), twist_k=2)


@pytest.fixture(scope="session")
def blpt_p2():
    """Blow-up of P^2 in a point (two hyperplanes)."""
    return normalize_blowup(BlowUpSpec(2, (1, 1)))
