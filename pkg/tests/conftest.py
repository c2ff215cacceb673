import json
import os
from pathlib import Path

import pytest

from evalmine import load_csv, recode_table

from synth import synthetic_raw, write_csv

REPO_ROOT = Path(__file__).resolve().parents[1]
DATASET_ENV = "EVALMINE_DATASET"
DEFAULT_DATASET = REPO_ROOT / "data" / "turkiye-student-evaluation_generic.csv"
FIXTURES_PATH = Path(__file__).parent / "fixtures" / "uci_expected.json"


def load_pins() -> dict | None:
    """Frozen dataset-derived expectations, when they have been pinned."""
    if FIXTURES_PATH.is_file():
        return json.loads(FIXTURES_PATH.read_text())
    return None


def dataset_path() -> Path:
    override = os.environ.get(DATASET_ENV)
    return Path(override) if override else DEFAULT_DATASET


def require_dataset() -> Path:
    path = dataset_path()
    if not path.is_file():
        pytest.skip(
            f"evaluation dataset not found at {path} "
            f"(fetch it per data/README.md or set ${DATASET_ENV})"
        )
    return path


@pytest.fixture(scope="session")
def uci_raw():
    return load_csv(require_dataset())


@pytest.fixture(scope="session")
def uci_recoded(uci_raw):
    return recode_table(uci_raw)


@pytest.fixture(scope="session")
def synth_raw():
    return synthetic_raw(n=400, seed=7)


@pytest.fixture(scope="session")
def synth_recoded(synth_raw):
    return recode_table(synth_raw)


@pytest.fixture()
def synth_csv(tmp_path):
    return write_csv(tmp_path / "synthetic.csv", n=300, seed=7)


# ---------------------------------------------------------------------------
# acceptance-criterion reporting: one pass/fail line per criterion at the end

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(ident): marks a test as one acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    ident = str(marker.args[0])
    if report.when == "setup" and report.skipped:
        _ACCEPTANCE_RESULTS[ident] = "SKIP"
    elif report.when == "call":
        if report.passed:
            _ACCEPTANCE_RESULTS[ident] = "PASS"
        elif report.skipped:
            _ACCEPTANCE_RESULTS[ident] = "SKIP"
        else:
            _ACCEPTANCE_RESULTS[ident] = "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    key = lambda ident: (int("".join(ch for ch in ident if ch.isdigit())), ident)
    for ident in sorted(_ACCEPTANCE_RESULTS, key=key):
        terminalreporter.write_line(
            f"criterion {ident}: {_ACCEPTANCE_RESULTS[ident]}"
        )
