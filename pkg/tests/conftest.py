import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, title = RESULTS[k]
        terminalreporter.write_line(f"ACCEPTANCE {k:>2} {'PASS' if ok else 'FAIL'} {title}")
