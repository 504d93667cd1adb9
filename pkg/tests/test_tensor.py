import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grt.catalog import ghz, hexagonal_type1, pentagonal_isolated, isolated_pair_matrix
from grt.errors import DegenerateTensorError, DimensionError
from grt.tensor import (
    Bipartition,
    DenseTensor,
    as_operator,
    contract,
    load_tensor,
    proportional_to_identity,
    reduce,
    save_tensor,
    tensor_from_json,
    tensor_to_json,
)


def random_tensor(rng, dims, labels=None):
    data = rng.normal(size=dims) + 1j * rng.normal(size=dims)
    return DenseTensor(data, labels)


def test_row_major_layout():
    T = DenseTensor.from_flat(np.arange(8), (2, 2, 2))
    assert T.data[1, 0, 1] == 5
    assert T.local_dims == (2, 2, 2)
    assert T.labels == (1, 2, 3)


def test_flat_length_mismatch_raises():
    with pytest.raises(DimensionError):
        DenseTensor.from_flat(np.arange(7), (2, 2, 2))


def test_ghz_single_site_reduction():
    rho = reduce(ghz(3), [1])
    assert np.allclose(rho.entries, np.eye(2))


def test_product_state_reduction():
    data = np.zeros((2, 2))
    data[0, 0] = 1
    rho = reduce(DenseTensor(data), [1])
    assert np.allclose(rho.entries, np.diag([1, 0]))


def test_isolated_pentagon_pair_reduction():
    rho = reduce(pentagonal_isolated().tensor, [1, 3])
    scaled = rho.entries * 4 / rho.trace
    assert np.max(np.abs(scaled - isolated_pair_matrix())) < 1e-12


def test_identity_tensor_operator():
    V = as_operator(DenseTensor(np.eye(3)), [1])
    assert np.allclose(V, np.eye(3))


def test_swap_operator_is_unitary():
    swap = np.zeros((2, 2, 2, 2))
    for a in range(2):
        for b in range(2):
            swap[a, b, b, a] = 1
    V = as_operator(DenseTensor(swap), Bipartition.of(DenseTensor(swap), [1, 2]))
    assert np.allclose(V @ V.conj().T, np.eye(4))


def test_type1_operator_isometry():
    T = hexagonal_type1(0.05).tensor
    V = as_operator(T, [0, 1, 2])
    M = V @ V.conj().T
    assert np.max(np.abs(M / (np.trace(M) / 8) - np.eye(8))) < 1e-12


def test_bipartition_complement():
    T = ghz(4)
    b = Bipartition.of(T, [3, 1])
    assert b.kept == (1, 3) and b.traced == (2, 4)


def test_bad_label_raises():
    with pytest.raises(DimensionError):
        reduce(ghz(3), [4])


@pytest.mark.parametrize(
    "M, flag, const",
    [(np.eye(4), True, 1.0), (2 * np.eye(4), True, 2.0), (isolated_pair_matrix(), False, 1.0)],
)
def test_proportional_to_identity(M, flag, const):
    f, c, _ = proportional_to_identity(M, 1e-12)
    assert f is flag
    assert c == pytest.approx(const, abs=1e-15)


def test_zero_trace_is_degenerate():
    with pytest.raises(DegenerateTensorError):
        proportional_to_identity(np.zeros((2, 2)))


def test_contract_full_self_pairing_gives_norm():
    rng = np.random.default_rng(0)
    T = random_tensor(rng, (2, 3, 2))
    conj = DenseTensor(T.data.conj())
    s = contract(T, conj, [(1, 1), (2, 2), (3, 3)])
    assert s.data.reshape(-1)[0] == pytest.approx(T.norm2())


def test_contract_ghz_pair_single_sites():
    T = contract(ghz(3), ghz(3), [(3, 1)])
    assert T.order == 4
    for leg in T.labels:
        assert proportional_to_identity(reduce(T, [leg]), 1e-12)[0]


def test_contract_order_of_remaining_legs():
    rng = np.random.default_rng(1)
    A = random_tensor(rng, (2, 3, 4))
    B = random_tensor(rng, (3, 5))
    C = contract(A, B, [(2, 1)])
    assert C.local_dims == (2, 4, 5)
    assert np.allclose(C.data, np.einsum("abc,be->ace", A.data, B.data))


def test_contract_rejects_mismatch_and_duplicates():
    A, B = ghz(3), ghz(2, 3)
    with pytest.raises(DimensionError):
        contract(A, B, [(1, 1)])
    with pytest.raises(DimensionError):
        contract(ghz(3), ghz(3), [(1, 1), (1, 2)])


def test_json_round_trip_is_exact(tmp_path):
    rng = np.random.default_rng(2)
    T = random_tensor(rng, (2, 2, 3), labels=(0, 1, 2))
    doc = json.loads(json.dumps(tensor_to_json(T)))
    assert np.array_equal(tensor_from_json(doc).data, T.data)
    path = tmp_path / "t.json"
    save_tensor(T, path)
    U = load_tensor(path)
    assert np.array_equal(U.data, T.data) and U.labels == T.labels


def test_node_style_contraction_shape():
    T = hexagonal_type1(0.05).tensor
    conj = DenseTensor(T.data.conj(), T.labels)
    N = contract(T, conj, [(0, 0), (2, 2), (4, 4), (5, 5), (6, 6)])
    assert N.local_dims == (2, 2, 2, 2)


dims_strategy = st.lists(st.integers(1, 3), min_size=2, max_size=5)


@settings(max_examples=40, deadline=None)
@given(dims=dims_strategy, seed=st.integers(0, 2**32 - 1), data=st.data())
def test_schmidt_symmetry(dims, seed, data):
    rng = np.random.default_rng(seed)
    T = random_tensor(rng, tuple(dims))
    n = len(dims)
    k = data.draw(st.integers(1, n - 1))
    kept = data.draw(st.permutations(range(1, n + 1)))[:k]
    b = Bipartition.of(T, kept)
    a = np.sort(np.linalg.eigvalsh(reduce(T, b.kept).entries))[::-1]
    c = np.sort(np.linalg.eigvalsh(reduce(T, b.traced).entries))[::-1]
    m = min(len(a), len(c))
    assert np.allclose(a[:m], c[:m], atol=1e-10 * T.norm2())
    assert np.all(np.abs(a[m:]) < 1e-10 * T.norm2()) and np.all(np.abs(c[m:]) < 1e-10 * T.norm2())


@settings(max_examples=100, deadline=None)
@given(dims=dims_strategy, seed=st.integers(0, 2**32 - 1), data=st.data())
def test_operator_reduction_consistency(dims, seed, data):
    rng = np.random.default_rng(seed)
    T = random_tensor(rng, tuple(dims))
    n = len(dims)
    kept = data.draw(st.lists(st.integers(1, n), min_size=1, max_size=n - 1, unique=True))
    V = as_operator(T, kept)
    rho = reduce(T, kept)
    assert np.max(np.abs(V @ V.conj().T - rho.entries)) <= 1e-14 * max(1.0, np.abs(rho.entries).max()) * 10
    assert rho.trace == pytest.approx(T.norm2(), rel=1e-12)
    assert np.max(np.abs(rho.entries - rho.entries.conj().T)) <= 1e-12 * rho.trace
    assert np.linalg.eigvalsh(rho.entries).min() >= -1e-10 * rho.trace


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), alpha=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_contract_bilinear(seed, alpha):
    rng = np.random.default_rng(seed)
    A = random_tensor(rng, (2, 3, 2))
    B = random_tensor(rng, (3, 2))
    lhs = contract(A.scaled(alpha), B, [(2, 1)]).data
    rhs = alpha * contract(A, B, [(2, 1)]).data
    assert np.allclose(lhs, rhs, atol=1e-12 * (1 + abs(alpha)) * 10)
