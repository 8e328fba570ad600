import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("ci")


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False,
                     help="run long cases (symmetric 3x3 minors)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def record(request):
    """Store a PASS/FAIL line for the terminal summary of the acceptance run."""
    store = request.config.stash.setdefault(_ACCEPTANCE, {})

    def _record(key, title, ok, detail=""):
        store[key] = (title, ok, detail)
        print(f"ACCEPTANCE {key} {title}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_ACCEPTANCE, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(store):
        title, ok, detail = store[key]
        line = f"{key} {title}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(f"{line}  ({detail})" if detail else line)
