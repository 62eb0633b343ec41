import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = []


def record_criterion(number, description, passed):
    _criteria.append((number, description, passed))
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {description}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed in sorted(_criteria):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {description}")
