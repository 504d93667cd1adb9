import numpy as np
import pytest

from grt.catalog import (
    hexagonal_p2,
    hexagonal_type1,
    hexagonal_type3,
    pentagon_components,
    pentagonal_ame,
    pentagonal_isolated,
)
from grt.catalog.hexagon import hexagon_components
from grt.constraints import ConstraintGraph, check_graph_constrained
from grt.errors import BudgetError, ConstraintError, DimensionError
from grt.symmetry import (
    SymmetrySpec,
    apply_local_rotation,
    constraint_equations,
    expand,
    hexagon_full,
    hexagon_rotation,
    orbits,
    pentagon_rotation,
    restrict,
    rotation_matrix,
    symmetry_defect,
)
from grt.tensor import DenseTensor


@pytest.mark.parametrize(
    "spec, count", [(pentagon_rotation, 8), (hexagon_rotation, 28), (hexagon_full, 13)]
)
def test_orbit_counts(spec, count):
    table = orbits(spec(), 2)
    assert len(table) == count
    assert table.orbit_sizes().sum() == 2 ** spec().n


@pytest.mark.parametrize(
    "spec, clique, count",
    [(pentagon_rotation, (1, 2), 7), (hexagon_rotation, (0, 1, 2), 33), (hexagon_full, (0, 1, 2), 14)],
)
def test_equation_counts(spec, clique, count):
    n, system = constraint_equations(spec(), clique)
    assert n == count == len(system)


def test_representatives_are_lexicographic_minima():
    table = orbits(hexagon_full(), 2)
    for flat, orbit in enumerate(table.orbit_of):
        member = np.unravel_index(flat, table.shape)
        assert table.representatives[orbit] <= tuple(int(v) for v in member)


def test_pentagon_representatives():
    reps = ["".join(map(str, r)) for r in orbits(pentagon_rotation(), 2).representatives]
    assert reps == ["00000", "00001", "00011", "00101", "00111", "01011", "01111", "11111"]


def test_expand_restrict_round_trip():
    table = orbits(hexagon_full(), 2)
    T = hexagonal_type1(0.05).tensor
    assert symmetry_defect(T, table) == 0.0
    assert np.array_equal(expand(restrict(T, table), table).data, T.data)


def test_expand_from_mapping_and_missing():
    table = orbits(pentagon_rotation(), 2)
    values = {r: float(i) for i, r in enumerate(table.representatives)}
    T = expand(values, table)
    assert T.data[(1, 0, 0, 0, 0)] == values[(0, 0, 0, 0, 1)]
    values.pop((1, 1, 1, 1, 1))
    with pytest.raises(ConstraintError):
        expand(values, table)
    with pytest.raises(DimensionError):
        expand([1.0] * 7, table)


def test_zero_values_give_zero_tensor():
    table = orbits(pentagon_rotation(), 2)
    assert expand([0.0] * 8, table).norm2() == 0.0


def test_pentagon_quarter_turn_entries():
    T = pentagonal_ame(np.pi / 4).tensor
    assert np.allclose(np.abs(T.data), 1 / np.sqrt(2))
    assert check_graph_constrained(T, ConstraintGraph.complete(5), 1e-12).passed


def _permuted(T, perm, flip):
    data = np.transpose(T.data, np.argsort(perm))
    if flip:
        data = data[(slice(None, None, -1),) * T.order]
    return data


@pytest.mark.parametrize("rec", [hexagonal_type1(0.05), hexagonal_type3(0.02), hexagonal_p2("B")])
def test_hexagonal_symmetries_exact(rec):
    T = rec.tensor
    for perm, flip in hexagon_full().generators:
        assert np.array_equal(_permuted(T, perm, flip), T.data)


def test_pentagon_reflection_holds_for_catalog():
    # only rotation is imposed; reflection is checked and happens to hold
    reflect = (0, 4, 3, 2, 1)
    for rec in (pentagonal_ame(0.3), pentagonal_isolated()):
        assert np.allclose(_permuted(rec.tensor, reflect, False), rec.tensor.data, atol=1e-15)


def test_group_order_guard():
    n = 8
    gens = tuple(((*range(1, k), 0, *range(k, n)), False) for k in range(2, n + 1))
    with pytest.raises(BudgetError):
        SymmetrySpec(tuple(range(n)), gens).elements()


def test_invalid_generator():
    with pytest.raises(ConstraintError):
        SymmetrySpec((1, 2, 3), (((0, 0, 1), False),))


def test_rotation_identity_and_form():
    T = pentagonal_isolated().tensor
    assert np.array_equal(apply_local_rotation(T, 0.0).data, T.data)
    assert np.allclose(rotation_matrix(0.3), [[np.cos(0.3), np.sin(0.3)], [-np.sin(0.3), np.cos(0.3)]])


@pytest.mark.parametrize("phi", [0.1, 1.0, 2.5])
def test_rotation_keeps_ame(phi):
    T = apply_local_rotation(pentagonal_ame(0.4).tensor, phi)
    assert check_graph_constrained(T, ConstraintGraph.complete(5), 1e-12).passed


def test_rotation_rejects_non_qubit():
    with pytest.raises(DimensionError):
        apply_local_rotation(DenseTensor(np.ones((3, 2))), 0.1)


@pytest.mark.parametrize(
    "spec, clique, rec",
    [
        (pentagon_rotation, (1, 2), pentagonal_isolated()),
        (pentagon_rotation, (1, 2), pentagonal_ame(1.1)),
        (hexagon_full, (0, 1, 2), hexagonal_type1(0.07, 1, 1)),
        (hexagon_full, (0, 1, 2), hexagonal_type3(-0.1)),
    ],
)
def test_residuals_vanish_on_catalog(spec, clique, rec):
    _, system = constraint_equations(spec(), clique)
    x = restrict(rec.tensor, system.table).real
    assert np.max(np.abs(system(x, normalize=True))) <= 1e-12


def test_residuals_nonzero_off_solution():
    _, system = constraint_equations(hexagon_full(), (0, 1, 2))
    x = np.random.default_rng(0).uniform(-1, 1, 13)
    assert np.max(np.abs(system(x, normalize=True))) > 1e-3


def test_jacobian_matches_differences():
    _, system = constraint_equations(hexagon_full(), (0, 1, 2))
    x = np.random.default_rng(1).uniform(-1, 1, 13)
    J = system.jacobian(x)
    h = 1e-6
    for i in range(13):
        e = np.zeros(13)
        e[i] = h
        fd = (system(x + e) - system(x - e)) / (2 * h)
        assert np.allclose(J[:, i], fd, atol=1e-8)


def test_component_helpers_round_trip():
    rec = pentagonal_isolated()
    assert np.allclose(pentagon_components(rec.tensor), rec.components)
    rec = hexagonal_type1(0.03)
    assert np.allclose(hexagon_components(rec.tensor), rec.components)
