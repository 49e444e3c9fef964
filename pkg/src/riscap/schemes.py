"""Phase-only transmission schemes and their single-stream capacities.

Four schemes share the same receive-side sum combiner and the capacity map
``C = log2(1 + gain^2 / (n_t*n_r) * es_over_n0)``; they differ in which
phases they are allowed to adjust:

* RIS-only: adjusts the RIS phases, all-ones transmit precoder.
* Joint: adjusts the RIS phases by global co-phasing, then a transmit
  phase precoder on the resulting channel.
* Co-phasing MIMO (benchmark): transmit/receive phase precoding only, the
  RIS phases stay fixed.
* Basic MIMO (benchmark): no phase adjustment anywhere.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .channel import CascadeChannel, assemble_h, element_sums, principal_angle
from .geometry import SceneConfig


@dataclass(frozen=True)
class SnrPoint:
    "Symbol-energy to noise-density ratio, stored linear."

    es_over_n0: float

    def __post_init__(self):
        if not self.es_over_n0 > 0:
            raise ValueError(f"es_over_n0 must be positive, got {self.es_over_n0}")

    @classmethod
    def from_db(cls, snr_db: float) -> "SnrPoint":
        return cls(es_over_n0=10.0 ** (snr_db / 10.0))

    @property
    def db(self) -> float:
        return 10.0 * math.log10(self.es_over_n0)


@dataclass(frozen=True)
class RisOnlySolution:
    "Optimal RIS phases and the resulting coherent sum gain."

    phi: NDArray[np.float64]
    b_gain: float


@dataclass(frozen=True)
class JointSolution:
    """RIS phases from global co-phasing plus transmit precoder phases.

    ``degenerate`` lists RIS elements whose receive-side column summed to
    exactly zero, where the co-phasing average is undefined and the phase
    was pinned to 0.
    """

    phi: NDArray[np.float64]
    beta: NDArray[np.float64]
    degenerate: tuple[int, ...] = ()


@dataclass(frozen=True)
class CoPhasingSolution:
    "Receive (alpha) and transmit (gamma) precoder phases."

    alpha: NDArray[np.float64]
    gamma: NDArray[np.float64]


def capacity_from_gain(gain: float, n_t: int, n_r: int, snr: SnrPoint) -> float:
    "Single-stream capacity in bits for a coherent-sum gain value."
    return math.log2(1.0 + gain**2 / (n_t * n_r) * snr.es_over_n0)


# ---------------------------------------------------------------------------
# RIS-only scheme
# ---------------------------------------------------------------------------

def solve_ris_only(ch: CascadeChannel) -> RisOnlySolution:
    """Co-phase every RIS element's double antenna sum.

    Each element's phase rotates its summed contribution onto the positive
    real axis, so the magnitudes add: ``b_gain = k * sum_l |c_l|`` where
    ``c_l`` is the element's double sum. An exactly zero ``c_l`` gets phase
    0; it contributes nothing either way.
    """
    c = element_sums(ch)
    phi = -principal_angle(c)
    b_gain = float(ch.k_norm * np.sum(np.abs(c)))
    return RisOnlySolution(phi=phi, b_gain=b_gain)


def capacity_ris_only(sol: RisOnlySolution, cfg: SceneConfig, snr: SnrPoint) -> float:
    "Capacity of the RIS-only scheme in bits."
    return capacity_from_gain(sol.b_gain, cfg.n_t, cfg.n_r, snr)


# ---------------------------------------------------------------------------
# Joint scheme: global co-phasing at the RIS, then transmit phase precoding
# ---------------------------------------------------------------------------

def solve_joint(ch: CascadeChannel) -> JointSolution:
    """One-pass joint solution.

    Step 1 sets each RIS phase to the negative mean of the phase deviations
    of the transmit-antenna terms it influences (global co-phasing, target
    phase 0). Step 2 assembles the resulting channel and co-phases the
    per-transmit-antenna receive sums with precoder phases beta.

    The raw deviations satisfy ``sum_t(delta[t, l] + phi[l]) == 0`` per
    element by construction.
    """
    v_col = ch.v_mat.sum(axis=0)  # (n_ris,)
    terms = v_col[:, np.newaxis] * ch.u_mat  # (n_ris, n_t)
    degenerate = tuple(int(l) for l in np.flatnonzero(v_col == 0))

    delta = principal_angle(terms)
    phi = -delta.mean(axis=1)
    if degenerate:
        phi = phi.copy()
        phi[list(degenerate)] = 0.0

    h = assemble_h(ch, phi)
    beta = -principal_angle(h.sum(axis=0))
    return JointSolution(phi=phi, beta=beta, degenerate=degenerate)


def capacity_joint(sol: JointSolution, ch: CascadeChannel, cfg: SceneConfig,
                   snr: SnrPoint) -> float:
    "Capacity of the joint scheme in bits."
    return capacity_from_gain(joint_gain(sol, ch), cfg.n_t, cfg.n_r, snr)


def joint_gain(sol: JointSolution, ch: CascadeChannel) -> float:
    "Coherent sum |sum_{r,t} H(r,t) exp(j*beta_t)| on the solved channel."
    h = assemble_h(ch, sol.phi)
    return float(np.abs(np.sum(h.sum(axis=0) * np.exp(1j * sol.beta))))


# ---------------------------------------------------------------------------
# Benchmarks: co-phasing MIMO and basic MIMO on a fixed channel
# ---------------------------------------------------------------------------

def solve_cophasing_mimo(h: NDArray[np.complex128]) -> CoPhasingSolution:
    """Phase precoders for a channel with fixed (non-optimized) RIS phases.

    Transmit phases gamma come first, by global co-phasing over the raw
    channel entries; receive phases alpha then exactly co-phase each row's
    product with the realized transmit vector.
    """
    gamma = -principal_angle(h).sum(axis=0) / h.shape[1]
    t_vec = np.exp(1j * gamma)
    alpha = -principal_angle(h @ t_vec)
    return CoPhasingSolution(alpha=alpha, gamma=gamma)


def cophasing_gain(sol: CoPhasingSolution, h: NDArray[np.complex128]) -> float:
    "Precoded coherent sum |r^T H t|."
    r_vec = np.exp(1j * sol.alpha)
    t_vec = np.exp(1j * sol.gamma)
    return float(np.abs(r_vec @ h @ t_vec))


def capacity_cophasing(sol: CoPhasingSolution, h: NDArray[np.complex128],
                       cfg: SceneConfig, snr: SnrPoint) -> float:
    "Capacity of the co-phasing MIMO benchmark in bits."
    return capacity_from_gain(cophasing_gain(sol, h), cfg.n_t, cfg.n_r, snr)


def capacity_basic(h: NDArray[np.complex128], cfg: SceneConfig, snr: SnrPoint) -> float:
    "Capacity of the basic MIMO benchmark (plain entry sum) in bits."
    gain = float(np.abs(h.sum()))
    return capacity_from_gain(gain, cfg.n_t, cfg.n_r, snr)
