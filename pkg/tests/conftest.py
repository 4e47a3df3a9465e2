import pytest

from oracle_cases import oracle_instances


@pytest.fixture(scope="session")
def oracle_cases():
    return oracle_instances()
