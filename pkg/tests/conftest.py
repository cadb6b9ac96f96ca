import numpy as np
import pytest

from mubkit.spin import SpinIndex, spin_matrix

SIGMA = {
    "0": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_acceptance = {}


def pauli_string(word: str, iy: bool = True) -> np.ndarray:
    """Kronecker product of Pauli letters; with ``iy`` the letter y means i*sigma_y."""
    out = np.ones((1, 1), dtype=complex)
    for ch in word:
        m = SIGMA[ch] * (1j if (ch == "y" and iy) else 1)
        out = np.kron(out, m)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def dense_S(d, j, k):
    return spin_matrix(SpinIndex(d, j, k))


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        # parametrized cases roll up into one line per criterion
        name = report.nodeid.split("::")[-1].split("[")[0]
        if _acceptance.get(name, "passed") == "passed":
            _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
