import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esdlab import qlinalg
from esdlab.errors import NumericalError, SizeError
from esdlab.qlinalg import apply_kraus, apply_local, eigvals_4x4, ket, partial_trace, projector, tensor

from oracles import (
    charpoly_4x4,
    damping_kraus_oracle,
    embed_oracle,
    kron_oracle,
    partial_trace_oracle,
    quartic_roots,
    random_density,
)


def test_tensor_identity():
    np.testing.assert_array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_msb_convention():
    out = tensor(projector(ket("1")), projector(ket("0")))
    expected = np.zeros((4, 4))
    expected[2, 2] = 1
    np.testing.assert_array_equal(out, expected)


def test_tensor_damping_on_11():
    g = 0.3
    e0, e1 = damping_kraus_oracle(g)
    out = tensor(e1, e0) @ ket("11")
    # hand multiplication: E1|1> = sqrt(g)|0>, E0|1> = sqrt(1-g)|1>
    np.testing.assert_allclose(out, np.sqrt(g) * np.sqrt(1 - g) * ket("01"), atol=1e-15)


def test_tensor_matches_index_oracle(rng):
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    np.testing.assert_allclose(tensor(a, b), kron_oracle(a, b), atol=1e-15)


def test_tensor_associative(rng):
    for _ in range(20):
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        assert np.abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))).max() <= 1e-14


def test_tensor_size_error():
    big = np.zeros((2**9, 1))
    with pytest.raises(SizeError):
        tensor(big, big)


def test_apply_local_identity(rng, backend):
    rho = random_density(rng, 3)
    np.testing.assert_allclose(apply_local(np.eye(2), 1, rho, backend=backend), rho, atol=1e-15)


def test_apply_local_full_decay(backend):
    rho = projector(ket("110"))
    e0, e1 = damping_kraus_oracle(1.0)
    jumped = apply_local(e1, 0, rho, backend=backend)
    np.testing.assert_allclose(jumped, projector(ket("010")), atol=1e-15)
    total = jumped + apply_local(e0, 0, rho, backend=backend)
    assert np.trace(total).real == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("target", [0, 1, 2])
def test_apply_local_matches_kronecker(rng, backend, target):
    rho = random_density(rng, 3)
    op = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    f = embed_oracle(op, target, 3)
    np.testing.assert_allclose(apply_local(op, target, rho, backend=backend), f @ rho @ f.conj().T, atol=1e-13)


def test_apply_local_bad_target(rng):
    with pytest.raises(IndexError):
        apply_local(np.eye(2), 3, random_density(rng, 3))


@pytest.mark.parametrize("first", [0, 1, 2, 3, 4])
def test_apply_kraus_block_matches_dense(rng, backend, first):
    rho = random_density(rng, 6)
    ops = [rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(3)]
    ops[1][rng.random((4, 4)) < 0.6] = 0
    expected = np.zeros_like(rho)
    for k in ops:
        f = np.kron(np.kron(np.eye(2**first), k), np.eye(2 ** (6 - first - 2)))
        expected += f @ rho @ f.conj().T
    np.testing.assert_allclose(apply_kraus(rho, ops, first, backend=backend), expected, atol=1e-12)


def test_local_channel_on_all_qubits_preserves_trace(rng, backend):
    rho = random_density(rng, 4)
    for q in range(4):
        rho = apply_kraus(rho, damping_kraus_oracle(0.37), q, backend=backend)
    assert abs(np.trace(rho) - 1) <= 1e-12


def test_partial_trace_bell():
    bell = (ket("00") + ket("11")) / np.sqrt(2)
    np.testing.assert_allclose(partial_trace(projector(bell), [0]), np.eye(2) / 2, atol=1e-15)


def test_partial_trace_product(rng):
    for _ in range(10):
        ra, rb = random_density(rng, 1), random_density(rng, 2)
        np.testing.assert_allclose(partial_trace(np.kron(ra, rb), [0]), ra, atol=1e-12)
        np.testing.assert_allclose(partial_trace(np.kron(ra, rb), [1, 2]), rb, atol=1e-12)


def test_partial_trace_matches_index_oracle(rng):
    rho = random_density(rng, 3)
    for keep in ([0], [1], [2], [0, 2], [1, 2]):
        np.testing.assert_allclose(partial_trace(rho, keep), partial_trace_oracle(rho, keep, 3), atol=1e-14)


def test_partial_trace_keeps_trace(rng):
    rho = random_density(rng, 2)
    assert abs(np.trace(partial_trace(rho, [1])) - np.trace(rho)) <= 1e-12


@pytest.mark.parametrize("keep", [[], [5], [-1]])
def test_partial_trace_bad_keep(rng, keep):
    with pytest.raises(ValueError):
        partial_trace(random_density(rng, 2), keep)


def test_eigvals_diagonal_and_identity():
    np.testing.assert_allclose(np.sort(eigvals_4x4(np.diag([1.0, 2, 3, 4])).real), [1, 2, 3, 4])
    np.testing.assert_allclose(eigvals_4x4(np.eye(4)), np.ones(4))


def test_eigvals_match_quartic_oracle(rng):
    for _ in range(25):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = a + a.conj().T
        got = np.sort(eigvals_4x4(h).real)
        ref = np.sort(quartic_roots(charpoly_4x4(h)).real)
        np.testing.assert_allclose(got, ref, atol=1e-9)


def test_eigvals_charpoly_residual(rng):
    for _ in range(50):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        coeffs = charpoly_4x4(m)
        norm = np.linalg.norm(m, 2)
        for z in eigvals_4x4(m):
            assert abs(np.polyval(coeffs, z)) / max(1.0, norm) ** 4 < 1e-8


def test_eigvals_rejects_nonfinite():
    m = np.eye(4)
    m[0, 0] = np.nan
    with pytest.raises(NumericalError):
        eigvals_4x4(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 4))
def test_tensor_trace_multiplicative(seed, n):
    r = np.random.default_rng(seed)
    a, b = random_density(r, 1), random_density(r, n)
    assert abs(np.trace(tensor(a, b)) - np.trace(a) * np.trace(b)) < 1e-12


def test_backend_selection_reports_known_name():
    assert qlinalg.BACKEND in qlinalg.available_backends()
    assert "python" in qlinalg.available_backends()
