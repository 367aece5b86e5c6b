import numpy as np
import pytest

from blochvar import (
    HermitianMatrix,
    basis_for,
    build_basis,
    max_algebra_residual,
    structure_d,
    structure_f,
    verify_algebra,
)
from blochvar.sun_basis import GeneratorBasis

PAULIS = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def f_oracle(gens, j, k, l):
    """Direct trace formula Tr([g_j, g_k] g_l) / (4i) on the matrices."""
    a, b, c = gens[j - 1].array, gens[k - 1].array, gens[l - 1].array
    return float((np.trace((a @ b - b @ a) @ c) / 4j).real)


def d_oracle(gens, j, k, l):
    a, b, c = gens[j - 1].array, gens[k - 1].array, gens[l - 1].array
    return float((np.trace((a @ b + b @ a) @ c) / 4).real)


def test_qubit_basis_is_the_pauli_triple(basis2):
    assert len(basis2.generators) == 3
    for got, expected in zip(basis2.generators, PAULIS):
        assert np.allclose(got.array, expected, atol=1e-15)


def test_qubit_d_tensor_empty(basis2):
    assert dict(basis2.d_tensor) == {}
    for j in range(1, 4):
        for k in range(1, 4):
            for l in range(1, 4):
                assert structure_d(basis2, j, k, l) == 0.0


def test_qubit_f123(basis2):
    assert structure_f(basis2, 1, 2, 3) == pytest.approx(1.0, abs=1e-14)
    assert structure_f(basis2, 1, 2, 3) == pytest.approx(
        f_oracle(basis2.generators, 1, 2, 3), abs=1e-14
    )


def test_qutrit_generators_orthonormal(basis3):
    gens = basis3.generators
    assert len(gens) == 8
    for j in range(8):
        assert abs(np.trace(gens[j].array)) < 1e-13
        for k in range(8):
            got = np.trace(gens[j].array @ gens[k].array)
            expected = 2.0 if j == k else 0.0
            assert abs(got - expected) < 1e-12


def test_qutrit_spot_constants(basis3):
    # Frozen from the trace-formula oracle on the constructed generators.
    assert structure_f(basis3, 1, 2, 3) == pytest.approx(1.0, abs=1e-12)
    assert structure_d(basis3, 1, 1, 8) == pytest.approx(0.5773502691896258, abs=1e-12)
    assert structure_d(basis3, 1, 1, 8) == pytest.approx(
        d_oracle(basis3.generators, 1, 1, 8), abs=1e-13
    )


def test_structure_constants_match_trace_oracle(basis3):
    gens = basis3.generators
    for j in range(1, 9):
        for k in range(1, 9):
            for l in range(1, 9):
                assert structure_f(basis3, j, k, l) == pytest.approx(
                    f_oracle(gens, j, k, l), abs=1e-12
                )
                assert structure_d(basis3, j, k, l) == pytest.approx(
                    d_oracle(gens, j, k, l), abs=1e-12
                )


def test_f_antisymmetry_and_d_symmetry_as_stored(basis4):
    n = basis4.n_generators
    rng = np.random.default_rng(7)
    for _ in range(200):
        j, k, l = rng.integers(1, n + 1, size=3)
        f = structure_f(basis4, j, k, l)
        assert structure_f(basis4, k, j, l) == -f
        assert structure_f(basis4, j, l, k) == -f
        d = structure_d(basis4, j, k, l)
        assert structure_d(basis4, k, j, l) == d
        assert structure_d(basis4, j, l, k) == d


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_algebra_closure(n):
    basis = basis_for(n)
    assert verify_algebra(basis)
    total = sum(abs(np.trace(g.array)) for g in basis.generators)
    assert total < 1e-12


def test_corrupted_basis_detected(basis3):
    bad_gens = list(basis3.generators)
    bad_gens[0] = HermitianMatrix(1.01 * bad_gens[0].array)
    corrupted = GeneratorBasis(
        basis3.dim,
        tuple(bad_gens),
        dict(basis3.f_tensor),
        dict(basis3.d_tensor),
        np.stack([g.array for g in bad_gens]),
        basis3._d_ordered,
    )
    assert not verify_algebra(corrupted)
    assert max_algebra_residual(corrupted) > 1e-3


def test_build_basis_rejects_small_dims():
    with pytest.raises(ValueError):
        build_basis(1)


def test_index_range_errors(basis2):
    with pytest.raises(IndexError):
        structure_f(basis2, 0, 1, 2)
    with pytest.raises(IndexError):
        structure_d(basis2, 1, 2, 4)


def test_d_contract_matches_brute_force(basis3):
    rng = np.random.default_rng(11)
    a = rng.normal(size=8)
    brute = np.zeros(8)
    for l in range(1, 9):
        for j in range(1, 9):
            for k in range(1, 9):
                brute[l - 1] += a[j - 1] * a[k - 1] * structure_d(basis3, j, k, l)
    assert np.abs(basis3.d_contract(a) - brute).max() < 1e-12
