import numpy as np
import pytest

from qcdm import validate


def random_density(rng, dims, rank=None):
    d = int(np.prod(dims))
    rank = d if rank is None else rank
    w = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = w @ w.conj().T
    return validate(rho / np.trace(rho).real, dims)


def random_hermitian(rng, d, scale=1.0):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * (x + x.conj().T) / 2


def random_unitary(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(x)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_psd_effect(rng, d):
    """Positive operator with spectrum inside [0, 1]."""
    u = random_unitary(rng, d)
    return (u * rng.uniform(0.05, 1.0, size=d)) @ u.conj().T


def ptrace_oracle(mat, dims, keep):
    """Partial trace by reshaping to a tensor and contracting with einsum."""
    n = len(dims)
    t = np.asarray(mat).reshape(tuple(dims) * 2)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    d = int(np.prod([dims[i] for i in keep]))
    return np.einsum("".join(row) + "".join(col) + "->" + out, t).reshape(d, d)


SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)
SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


BELL_KETS = {
    "psi_minus": np.array([0, 1, -1, 0]) / np.sqrt(2),
    "psi_plus": np.array([0, 1, 1, 0]) / np.sqrt(2),
    "phi_minus": np.array([1, 0, 0, -1]) / np.sqrt(2),
    "phi_plus": np.array([1, 0, 0, 1]) / np.sqrt(2),
}


def swap_oracle(bell):
    """Project photons 2-3 of two singlets onto ``bell`` at the level of kets.

    Returns (probability, normalized 1-4 ket); no density matrices involved.
    """
    s = SINGLET.reshape(2, 2)
    psi = np.einsum("ab,cd->abcd", s, s)
    b = np.asarray(bell, dtype=complex).reshape(2, 2)
    phi = np.einsum("bc,abcd->ad", b.conj(), psi).reshape(4)
    p = float(np.vdot(phi, phi).real)
    return p, phi / np.sqrt(p)


def trine_effects():
    """(2/3)|phi_k><phi_k| with real kets 60 degrees apart (120 on the Bloch sphere)."""
    out = []
    for k in range(3):
        phi = np.array([np.cos(k * np.pi / 3), np.sin(k * np.pi / 3)])
        out.append(2 / 3 * np.outer(phi, phi).astype(complex))
    return out


_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, text, ok, detail)`` and assert ``ok``."""

    def record(number, text, ok, detail=""):
        _CRITERIA.append((number, text, bool(ok), detail))
        assert ok, f"criterion {number} failed: {text} ({detail})"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {text}: {detail}")
