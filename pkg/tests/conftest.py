import pytest

from riscap import SceneConfig

# 60 GHz indoor setup used throughout: half-wavelength spacings, 5 m wall
# separation, RIS midway, nominal midpoint heights 2.5 m / 1.3 m.
BASE = dict(
    wavelength=0.005,
    s_t=0.0025,
    s_r=0.0025,
    s_ris=0.0025,
    d_wall=5.0,
    d_ris=2.5,
    h_t=2.5,
    h_r=1.3,
    h_t_mean=2.5,
    h_r_mean=1.3,
)


@pytest.fixture
def scene():
    "Factory for SceneConfig instances on the reference indoor geometry."

    def make(n_t=1, n_r=1, n_ris=1, **overrides):
        params = dict(BASE, n_t=n_t, n_r=n_r, n_ris=n_ris)
        params.update(overrides)
        return SceneConfig(**params)

    return make
