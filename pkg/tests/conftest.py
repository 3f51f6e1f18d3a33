import pytest

from permlin import CovarianceMatrix, LinearRegimeParams, construct_covariance, helmert_q


@pytest.fixture(scope="session")
def paper_matrix() -> CovarianceMatrix:
    """The worked construction with (gamma, a, v) = (0.5, 0.5, 0.2), n = 3."""
    return construct_covariance(
        LinearRegimeParams(gamma=0.5, a=0.5, v=0.2, q=helmert_q(3)))
