"""Closed-form approximation of the RIS-only coherent gain.

Far from the arrays, each RIS element sees both ULAs under essentially one
angle, so the element's double antenna sum collapses to a product of two
uniform-array factors |sin(N*x)/sin(x)|. Summing the products over the
elements (and rescaling by the channel normalization) approximates the
exact co-phased gain without touching the steering matrices. Valid when the
array lengths are much smaller than the array-to-RIS distances.
"""

import numpy as np

from .channel import normalization_constant
from .geometry import SceneConfig, ScenePositions

# |sin(x)| below this counts as a main-lobe center; the ratio limit is N.
_SINGULAR_EPS = 1e-9


def aux_g(n: int, x):
    """Uniform-array factor magnitude |sin(n*x)/sin(x)|.

    Returns the limit value ``n`` at x = 0 mod pi (lobe centers), where the
    raw ratio is 0/0. Vectorized over ``x``; scalar in, scalar out. Bounded
    by ``0 <= g <= n`` everywhere and even and pi-periodic in ``x``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    x = np.asarray(x, dtype=float)
    sin_x = np.sin(x)
    singular = np.abs(sin_x) < _SINGULAR_EPS
    ratio = np.abs(np.sin(n * x) / np.where(singular, 1.0, sin_x))
    out = np.where(singular, float(n), ratio)
    return float(out) if out.ndim == 0 else out


def approx_gain(pos: ScenePositions, cfg: SceneConfig) -> float:
    """Approximate RIS-only coherent gain from midpoint angles only.

    Per element l the double antenna sum magnitude is approximated by
    ``g(n_t, pi*s_t*cos_theta_t[l]/wavelength) * g(n_r, ...)``; the gains
    add across elements after co-phasing, scaled by the normalization
    constant so the value is directly comparable to the exact solver's.
    """
    x_t = np.pi * cfg.s_t * pos.cos_theta_t / cfg.wavelength
    x_r = np.pi * cfg.s_r * pos.cos_theta_r / cfg.wavelength
    per_element = aux_g(cfg.n_t, x_t) * aux_g(cfg.n_r, x_r)
    return float(normalization_constant(pos, cfg) * np.sum(per_element))
