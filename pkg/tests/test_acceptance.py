"""Acceptance criteria at full instance counts; one PASS/FAIL line per criterion."""
import pytest

from eckardt.acceptance import CRITERIA, SuiteConfig

CONFIG = SuiteConfig.suite("fast")
# collected here and echoed by the terminal summary hook in conftest.py
LINES: list[str] = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.__name__ for c in CRITERIA])
def test_criterion(criterion):
    result = criterion(CONFIG)
    line = f"{result.line()}  [{result.seconds:.1f}s]"
    LINES.append(line)
    print(line)
    assert result.passed, result.detail
