import functools

import pytest

from quiverhh.extension import extension_for
from quiverhh.field import Field
from quiverhh.fixtures import load
from quiverhh.hochschild import ExtensionComplexes

# every finite fixture (the loop quiver is infinite on purpose)
FIXTURES = ["core_C", "core_C_prime", "extension_B", "A2", "A3", "A3_zero", "cycle3_B"]
CORES = ["core_C", "core_C_prime", "A2", "A3", "A3_zero"]


@functools.lru_cache(maxsize=None)
def ext_of(name, p=0):
    return extension_for(load(name, Field(p)))


@functools.lru_cache(maxsize=None)
def complexes_of(name, p=0):
    return ExtensionComplexes(ext_of(name, p))


@pytest.fixture
def ext():
    return ext_of


@pytest.fixture
def cx():
    return complexes_of


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({secs:.2f} s) {detail}")
