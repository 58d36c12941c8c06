import pytest

from _host_http import running_host
from model_host.config import HostConfig


@pytest.fixture(scope="session")
def host_url():
    with running_host(HostConfig(port=0, seed=11)) as url:
        yield url


@pytest.fixture(scope="session")
def tokened_host_url():
    with running_host(HostConfig(port=0, seed=11, token="sesame")) as url:
        yield url
