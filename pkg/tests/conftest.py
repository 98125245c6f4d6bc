import pytest

from newton_strata.root_datum import build_classical
from newton_strata.witt import galois_ring


@pytest.fixture
def gl3():
    return build_classical("GL", 3)


@pytest.fixture
def gl4():
    return build_classical("GL", 4)


@pytest.fixture
def u3():
    """The unramified unitary group in three variables."""
    return build_classical("U", 3)


@pytest.fixture
def gsp4():
    return build_classical("GSp", 4)


@pytest.fixture
def gsp6():
    return build_classical("GSp", 6)


@pytest.fixture
def ring():
    """W(F_3)/3^40."""
    return galois_ring(3, 40)


@pytest.fixture
def ring9():
    """W(F_9)/3^20."""
    return galois_ring(3, 20, 2)
