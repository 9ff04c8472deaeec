import numpy as np
import pytest

from weierstrass_entropy import _backend, _fallback
from weierstrass_entropy.kernel import make_params

try:
    from weierstrass_entropy import _kernels
except ImportError:  # pragma: no cover - fallback-only install
    _kernels = None

BACKENDS = ["python"] + (["compiled"] if _kernels is not None else [])
_KERNEL_NAMES = ("phase_table", "cos_series", "cospi", "sinpi", "pairwise_chebyshev")

# acceptance criteria outcomes, printed in the terminal summary
CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Route every hot kernel through one implementation."""
    impl = _fallback if request.param == "python" else _kernels
    for name in _KERNEL_NAMES:
        monkeypatch.setattr(_backend, name, getattr(impl, name))
    return request.param


@pytest.fixture
def p53():
    return make_params(0.5, 3)


@pytest.fixture
def p92():
    return make_params(0.9, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
