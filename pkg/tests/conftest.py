import json
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from fockcb.laurent import format_poly

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def as_label(mp):
    return tuple(tuple(p) for p in mp)


@pytest.fixture(scope="session")
def golden():
    return json.loads((DATA / "golden_tables.json").read_text())


def table_mismatches(matrix, table, rows=None, cols=None):
    """Label-keyed comparison of a computed matrix with a transcribed table.

    ``table["rows"][i][j]`` is the text of the entry or None for zero.
    """
    rows = rows if rows is not None else [as_label(mp) for mp in table["labels"]]
    cols = cols if cols is not None else rows
    bad = []
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            want = table["rows"][i][j] or "0"
            got = format_poly(matrix[(r, c)])
            if got != want:
                bad.append((r, c, want, got))
    return bad


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda x: int(x.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
