import pytest

from acphase.dirac import build_dirac, build_phase_operator
from acphase.kemmer import build_betas, build_spin_operators
from acphase.proca import build_projections


@pytest.fixture(scope="session")
def dirac_alg():
    return build_dirac()


@pytest.fixture(scope="session")
def phase_op(dirac_alg):
    return build_phase_operator(dirac_alg)


@pytest.fixture(scope="session")
def kemmer_alg():
    return build_betas()


@pytest.fixture(scope="session")
def spin_ops(kemmer_alg):
    return build_spin_operators(kemmer_alg)


@pytest.fixture(scope="session")
def projections(kemmer_alg):
    return build_projections(kemmer_alg)
