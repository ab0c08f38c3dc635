import shutil

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--monte_carlo",
        action="store_true",
        default=False,
        dest="monte_carlo",
        help="Option to run the Monte Carlo tests at their full sizes",
    )


@pytest.fixture(scope="session")
def save_path(tmpdir_factory):
    dir = tmpdir_factory.mktemp("temp_data", numbered=False)
    path = str(dir)
    yield path + "/"
    shutil.rmtree(path, ignore_errors=True)


@pytest.fixture(scope="session")
def monte_carlo(request):
    return request.config.getoption("--monte_carlo")
