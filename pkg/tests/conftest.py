"""
pytest 公共夹具
环境变量必须在导入 infra.config 之前设置
"""

import os

os.environ.setdefault("ADSCAUSAL_LOG_FILE", "false")
os.environ.setdefault("LOG_LEVEL", "WARNING")
os.environ.setdefault("APP_ENV", "testing")

import numpy as np
import pytest

from services.lie_core import get_algebra
from services.reductive import canonical_bases


@pytest.fixture(scope="session")
def alg2():
    return get_algebra(2)


@pytest.fixture(scope="session")
def alg3():
    return get_algebra(3)


@pytest.fixture(scope="session")
def alg4():
    return get_algebra(4)


@pytest.fixture(scope="session")
def alg5():
    return get_algebra(5)


@pytest.fixture(params=[2, 3, 4], ids=lambda n: f"n={n}")
def alg(request):
    return get_algebra(request.param)


@pytest.fixture
def bases(alg):
    return canonical_bases(alg)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
