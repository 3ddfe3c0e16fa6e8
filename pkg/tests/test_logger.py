"""loguru 包装函数"""

import pytest

from infra.logger import log_checks, log_performance, logger, warning
from schema.report import CheckResult


@pytest.fixture
def records():
    captured = []
    sink_id = logger.add(lambda msg: captured.append(msg.record), level="DEBUG")
    yield captured
    logger.remove(sink_id)


def _check(name, passed):
    return CheckResult(suite="structure", name=name, n=3, passed=passed)


def test_log_checks_warns_on_failure(records):
    log_checks("structure", [_check("jacobi", True), _check("antisymmetry", False)], n_max=3)
    record = records[-1]
    assert record["level"].name == "WARNING"
    assert "antisymmetry@n=3" in record["message"]
    assert record["extra"]["failed"] == 1
    assert record["extra"]["n_max"] == 3


def test_log_checks_passing_is_debug(records):
    log_checks("reductive", [_check("ad_square", True)])
    assert records[-1]["level"].name == "DEBUG"
    assert records[-1]["extra"]["total"] == 1


def test_slow_operation_is_warning(records):
    log_performance("verify_structure", 2500.0, n_max=8)
    assert records[-1]["level"].name == "WARNING"
    log_performance("canonical_bases", 3.0)
    assert records[-1]["level"].name == "DEBUG"


def test_context_is_bound(records):
    warning("网格偏小 {grid}", grid=9)
    assert records[-1]["extra"]["grid"] == 9
    assert records[-1]["message"] == "网格偏小 {grid}"
