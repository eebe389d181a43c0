import contextlib
from pathlib import Path

import pytest

CORPUS_DIR = Path(__file__).parent / "corpus"

ACCEPTANCE_RESULTS: "list[str]" = []


@contextlib.contextmanager
def acceptance(number: int, slug: str):
    """Record and print one PASS/FAIL line per acceptance criterion."""
    try:
        yield
    except BaseException:
        _report(f"ACCEPTANCE {number} {slug}: FAIL")
        raise
    else:
        _report(f"ACCEPTANCE {number} {slug}: PASS")


def _report(line: str) -> None:
    ACCEPTANCE_RESULTS.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # repeat the lines outside capture so a plain `pytest -v` shows them
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)

WEB_STATS_JSON = {"title": "Web Stats", "visitors": {"mozilla": 802}}
WEB_STATS_TN = "title Web Stats\nvisitors\n mozilla 802"
POINT_JSONTL = "o\n s dsl yrt\n n ma 902"
POINT_VALUE = {"dsl": "yrt", "ma": 902}
CITIES_MAPTL = "dsl Domain Specific Language\nsf San Francisco"
CITIES_VALUE = {"dsl": "Domain Specific Language", "sf": "San Francisco"}


@pytest.fixture(scope="session")
def corpus_files() -> "list[Path]":
    files = sorted(CORPUS_DIR.glob("*.tn"))
    assert len(files) == 20, "corpus must hold exactly 20 documents"
    return files
