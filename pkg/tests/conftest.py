import pytest


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="run the slow acceptance paths (A3 enumerations)")


@pytest.fixture
def slow_enabled(request):
    return request.config.getoption("--slow")
