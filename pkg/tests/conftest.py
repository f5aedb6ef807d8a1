import pytest

from mysticum.hexagon import HexScene, general_hex_scene
from mysticum.octagon import OctScene
from mysticum.scene import oct_scene


@pytest.fixture(scope="session")
def hexs() -> HexScene:
    return HexScene(general_hex_scene(7))


@pytest.fixture(scope="session")
def octs() -> OctScene:
    return OctScene(oct_scene(3))


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in order."""
    from tests import test_acceptance as acc  # noqa: PLC0415
    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acc.RESULTS):
        ok, title, note = acc.RESULTS[n]
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}"
        terminalreporter.write_line(line + (f" [{note}]" if note else ""))
