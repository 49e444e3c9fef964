"""Cascade channel through the RIS: steering matrices, normalization, assembly.

The normalized channel is a product k * V * diag(exp(j*phi)) * U of
unit-modulus steering matrices, where k rescales the common free-space
amplitude to the reference center path. The unnormalized variant keeps the
per-path free-space amplitudes and exists for cross-validation only.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .geometry import SceneConfig, ScenePositions, normalization_reference


@dataclass(frozen=True)
class CascadeChannel:
    """Steering matrices and amplitude normalization of one scene.

    ``u_mat[l, t] = exp(-j*2*pi*d2[l, t]/wavelength)`` covers the transmit
    leg, ``v_mat[r, l]`` the receive leg, and ``k_norm`` is the ratio of the
    center reference path product to the element-(1,1) path product.
    """

    u_mat: NDArray[np.complex128]
    v_mat: NDArray[np.complex128]
    k_norm: float

    @property
    def n_ris(self) -> int:
        return self.u_mat.shape[0]

    @property
    def n_t(self) -> int:
        return self.u_mat.shape[1]

    @property
    def n_r(self) -> int:
        return self.v_mat.shape[0]


def wrap_phase(phi) -> NDArray[np.float64]:
    "Wrap phases (radians) to the canonical interval (-pi, pi]."
    phi = np.asarray(phi, dtype=float)
    return phi - 2.0 * np.pi * np.ceil((phi - np.pi) / (2.0 * np.pi))


def principal_angle(z) -> NDArray[np.float64]:
    "Argument of a complex number in (-pi, pi], with arg(0) defined as 0."
    return wrap_phase(np.angle(z))


def normalization_constant(pos: ScenePositions, cfg: SceneConfig) -> float:
    """Amplitude normalization k: center reference over the element-(1,1) path.

    The reference element pairing is literal: the first RIS element with the
    lowest transmit and receive antennas.
    """
    d1_c, d2_c = normalization_reference(cfg)
    return float(d1_c * d2_c / (pos.d1[0, 0] * pos.d2[0, 0]))


def build_cascade(pos: ScenePositions, cfg: SceneConfig) -> CascadeChannel:
    "Populate the steering matrices and the normalization constant."
    u_mat = np.exp(-2j * np.pi * pos.d2 / cfg.wavelength)
    v_mat = np.exp(-2j * np.pi * pos.d1 / cfg.wavelength)
    return CascadeChannel(
        u_mat=u_mat,
        v_mat=v_mat,
        k_norm=normalization_constant(pos, cfg),
    )


def element_sums(ch: CascadeChannel) -> NDArray[np.complex128]:
    """Per-RIS-element sum over all antenna pairs, before any phase shift.

    Entry l is ``(sum_r V[r, l]) * (sum_t U[l, t])``; the double sum over
    antennas factorizes because the element couples the two legs
    multiplicatively. Unscaled by the normalization constant.
    """
    return ch.v_mat.sum(axis=0) * ch.u_mat.sum(axis=1)


def assemble_h(ch: CascadeChannel, phi) -> NDArray[np.complex128]:
    """Normalized channel matrix for a given RIS phase vector.

    Parameters
    ----------
    ch : CascadeChannel
    phi : array_like, shape (n_ris,)
        RIS element phase shifts in radians.

    Returns
    -------
    ndarray, shape (n_r, n_t), complex
    """
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (ch.n_ris,):
        raise ValueError(
            f"phase vector has shape {phi.shape}, expected ({ch.n_ris},)"
        )
    return ch.k_norm * (ch.v_mat * np.exp(1j * phi)) @ ch.u_mat


def unnormalized_h(pos: ScenePositions, cfg: SceneConfig, phi) -> NDArray[np.complex128]:
    """Channel matrix with exact per-path free-space amplitudes.

    Each RIS element contributes amplitude
    ``wavelength^2 / (16*pi^2 * d1[r, l] * d2[l, t])`` at the phase set by
    its total path length and phase shift. Kept for validating the
    normalized model; capacity computations consume the normalized form.
    """
    phi = np.asarray(phi, dtype=float)
    n_ris = pos.ris_pos.shape[0]
    if phi.shape != (n_ris,):
        raise ValueError(f"phase vector has shape {phi.shape}, expected ({n_ris},)")
    # axes: (r, l, t)
    d1 = pos.d1[:, :, np.newaxis]
    d2 = pos.d2[np.newaxis, :, :]
    amplitude = cfg.wavelength**2 / (16.0 * np.pi**2 * d1 * d2)
    phase = -2.0 * np.pi * (d1 + d2) / cfg.wavelength + phi[np.newaxis, :, np.newaxis]
    return np.sum(amplitude * np.exp(1j * phase), axis=1)
