import pytest

from quditenc.formats import load_bundled
from quditenc.encoder import synthesize_encoder
from quditenc.gatesets import preset


@pytest.fixture(scope="session")
def code513():
    return load_bundled("513_d3")


@pytest.fixture(scope="session")
def encoders513(code513):
    return {name: synthesize_encoder(code513, preset(name)) for name in ("d3-sec3-4", "d3-proposed-4")}


_LINES = pytest.StashKey[list]()
_NOTES = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one summary line per acceptance criterion."""
    lines = request.config.stash.setdefault(_LINES, [])

    def record(num, ok, detail):
        lines.append(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
        print(lines[-1])
        return ok

    return record


@pytest.fixture
def note(request):
    """Record an informational line that is not a pass/fail gate."""
    lines = request.config.stash.setdefault(_NOTES, [])

    def record(detail):
        lines.append(f"report: {detail}")
        print(lines[-1])

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines or config.stash.get(_NOTES, []):
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
    for line in config.stash.get(_NOTES, []):
        terminalreporter.write_line(line)
