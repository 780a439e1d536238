import pytest

from app.solver.quiver import build_quiver
from app.solver.rootsys import Variant, build_root_system
from app.storage.jobs import clear_jobs

A5_WORD = (3, 1, 2, 5, 4, 3)
C4_WORD = (3, 4, 1, 2, 3, 4)
E6_WORD = (5, 4, 2, 1, 3, 4, 5, 6)


@pytest.fixture
def a5():
    return build_root_system("A", 5)


@pytest.fixture
def c4():
    return build_root_system("C", 4)


@pytest.fixture
def e6():
    return build_root_system("E", 6)


@pytest.fixture
def a5_quiver(a5):
    return build_quiver(a5, A5_WORD, 3, Variant.MINUSCULE)


@pytest.fixture
def c4_quiver(c4):
    return build_quiver(c4, C4_WORD, 4, Variant.COMINUSCULE)


@pytest.fixture
def e6_quiver(e6):
    return build_quiver(e6, E6_WORD, 6, Variant.MINUSCULE)


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("QFACT_MAX_WORD_LENGTH", "QFACT_MAX_RANK", "QFACT_MAX_PEAKS",
                 "QFACT_SAMPLES", "QFACT_SEED", "QFACT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    yield
    clear_jobs()
