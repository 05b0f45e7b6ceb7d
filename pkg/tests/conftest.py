import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611, help="seed for the randomized corpora")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")
