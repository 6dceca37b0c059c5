import pytest

ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption(
        "--regen-golden",
        action="store_true",
        default=False,
        help="rewrite tests/golden/* from the current CLI output instead of comparing",
    )


@pytest.fixture
def regen_golden(request):
    return request.config.getoption("--regen-golden")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
