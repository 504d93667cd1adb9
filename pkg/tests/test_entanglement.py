import numpy as np
import pytest

from grt.catalog import hexagonal_p2, hexagonal_type1, hexagonal_type3, type1_ds013
from grt.entanglement import PROFILE_KEYS, entropy_profile, purity_delta
from grt.errors import DimensionError
from grt.symmetry import apply_local_rotation
from grt.tensor import DenseTensor


def test_imposed_isometry_gives_zero():
    assert abs(purity_delta(hexagonal_type1(0.05).tensor, (0, 1, 2))) <= 1e-13


def test_type1_profile():
    p = entropy_profile(hexagonal_type1(0.05).tensor)
    assert p.ds014 == pytest.approx(3 / 32, abs=1e-12)
    assert p.ds013 == pytest.approx(float(type1_ds013(0.05)), abs=1e-12)


def test_type3_profile():
    assert abs(entropy_profile(hexagonal_type3(0.01).tensor).ds013) <= 1e-12


def test_p2b_profile():
    p = entropy_profile(hexagonal_p2("B").tensor)
    assert (p.ds013, p.ds014) == pytest.approx((53 / 6400, 19 / 160), abs=1e-12)


def test_profile_range_and_keys():
    p = entropy_profile(hexagonal_type1(0.02, 1, 0).tensor)
    assert list(PROFILE_KEYS) == ["ds013", "ds014", "ds123", "ds124", "ds135"]
    assert all(0 <= v <= 7 / 8 for v in p.as_tuple())
    assert set(p.to_dict()) == set(PROFILE_KEYS) | {"norm"}


def test_scale_invariance():
    T = hexagonal_type1(0.05).tensor
    assert entropy_profile(T.scaled(3.7)).as_tuple() == pytest.approx(entropy_profile(T).as_tuple(), abs=1e-14)


def test_rotated_kept_sets_agree():
    T = hexagonal_type1(0.04).tensor
    base = purity_delta(T, (0, 1, 3))
    for s in range(6):
        kept = (0, s + 1, (s + 2) % 6 + 1)
        assert purity_delta(T, kept) == pytest.approx(base, abs=1e-13)


def test_local_rotation_on_all_legs_preserves_purity():
    T = hexagonal_type1(0.05).tensor
    base = entropy_profile(T).as_tuple()
    rng = np.random.default_rng(5)
    for phi in rng.uniform(0, 2 * np.pi, 10):
        R = apply_local_rotation(T, phi)
        assert entropy_profile(R).as_tuple() == pytest.approx(base, abs=1e-10)


def test_rejects_wrong_order():
    with pytest.raises(DimensionError):
        entropy_profile(DenseTensor(np.ones((2,) * 5)))


def test_rejects_non_symmetric_tensor():
    data = np.random.default_rng(0).normal(size=(2,) * 7)
    with pytest.raises(DimensionError):
        entropy_profile(DenseTensor(data, tuple(range(7))))
