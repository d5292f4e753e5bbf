import pytest

from fibresense import (FiberSpec, MountingConfig, ReflectorProfile, SILVER_TAPE,
                        full_scale_k_v)


@pytest.fixture
def linear_profile():
    """1 to 5 mm ramp over 120 deg with silver tape."""
    return ReflectorProfile.linear(1.0, 5.0, 120.0, SILVER_TAPE)


@pytest.fixture
def default_mount(linear_profile):
    return MountingConfig.default_for(linear_profile)


@pytest.fixture
def fiber():
    return FiberSpec()


@pytest.fixture
def scaled_fiber(linear_profile):
    """Gain pinned so the closest approach (1 mm gap) reads full scale."""
    base = FiberSpec()
    return FiberSpec(k_v=full_scale_k_v(base, 1.0, linear_profile.surface))
