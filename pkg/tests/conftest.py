import os

import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, print_blob=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    order = lambda k: (int(k.rstrip("ab")), k)
    for k in sorted(ACCEPTANCE, key=order):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {status}  {detail}")
