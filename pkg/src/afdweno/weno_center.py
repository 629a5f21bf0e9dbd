"""Zone-centered WENO interpolation with adaptive order.

A large centered stencil of the target order is nonlinearly hybridized
with three robust third-order stencils (left, center, right).  The
hybridized polynomial supplies the two interface values of a zone and
the first derivative at the zone center.

Input windows carry the node axis first: ``window[w]`` is the value at
offset ``w - hw`` from the zone center, with half-width hw = 2, 2, 3, 4
for orders 3, 5, 7, 9.  Trailing axes are free batch dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .legendre import (
    FIT_MATRICES,
    ModalPolynomial,
    SMOOTHNESS_GRAM,
    deriv_row,
)

__all__ = ["WenoConfig", "CenterInterpolation", "nonlinear_weights",
           "interp_center", "window_halfwidth"]

_MODE_BY_ORDER = {3: "ao3", 5: "ao53", 7: "ao73", 9: "ao93"}
_HALFWIDTH = {3: 2, 5: 2, 7: 3, 9: 4}
_LARGE_STENCIL = {5: "CENTER_C5", 7: "CENTER_C7", 9: "CENTER_C9"}


@dataclass(frozen=True)
class WenoConfig:
    """Tunable parameters of the adaptive-order hybridization.

    gamma_hi weights the large stencil, gamma_lo the centered small one
    among the three third-order stencils, and gamma_avg the intermediate
    fifth-order stencil where a three-level mode is used.  Sensible
    values live in [0.8, 0.95]; epsilon only guards divisions.
    """

    order: int = 5
    gamma_hi: float = 0.85
    gamma_avg: float = 0.85
    gamma_lo: float = 0.85
    epsilon: float = 1e-12
    mode: str = "auto"

    def __post_init__(self):
        if self.order not in (3, 5, 7, 9):
            raise ValueError(f"order must be 3, 5, 7 or 9, got {self.order}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        mode = self.mode if self.mode != "auto" else _MODE_BY_ORDER[self.order]
        allowed = {3: ("ao3",), 5: ("ao53",), 7: ("ao73", "ao753"),
                   9: ("ao93",)}[self.order]
        if mode not in allowed:
            raise ValueError(f"mode {mode!r} invalid for order {self.order}")
        object.__setattr__(self, "mode", mode)


@dataclass(frozen=True)
class CenterInterpolation:
    """Hybridized zone polynomial and its interface/derivative values."""

    poly: ModalPolynomial
    u_left: np.ndarray     # value at xi = -1/2
    u_right: np.ndarray    # value at xi = +1/2
    du_center: np.ndarray  # d/dxi at xi = 0


def window_halfwidth(order: int) -> int:
    return _HALFWIDTH[order]


def nonlinear_weights(gammas, betas, epsilon: float = 1e-12,
                      tau_exp: int = 2, ref: int = 0) -> np.ndarray:
    """Normalized adaptive weights from smoothness indicators.

    tau is the mean absolute deviation of the reference stencil's beta
    (index ``ref``, the largest stencil) from the others; each linear
    weight is boosted by 1 + tau^tau_exp / (beta + epsilon)^2 and the
    set renormalized.  Equal betas return the linear weights.
    """
    betas = np.asarray(betas, dtype=float)
    k = betas.shape[0]
    gam = np.asarray(gammas, dtype=float).reshape((k,) + (1,) * (betas.ndim - 1))
    others = [i for i in range(k) if i != ref]
    tau = sum(np.abs(betas[ref] - betas[i]) for i in others) / len(others)
    w = gam * (1.0 + tau**tau_exp / (betas + epsilon) ** 2)
    return w / w.sum(axis=0)


def _fit(stencil_id, values):
    return np.tensordot(FIT_MATRICES[stencil_id], values, axes=(1, 0))


def _beta(coeffs):
    d = coeffs.shape[0] - 1
    return np.einsum("i...,ij,j...->...", coeffs, SMOOTHNESS_GRAM[d], coeffs)


def _pad(coeffs, nmodes):
    pad = [(0, nmodes - coeffs.shape[0])] + [(0, 0)] * (coeffs.ndim - 1)
    return np.pad(coeffs, pad)


def interp_center(config: WenoConfig, window) -> CenterInterpolation:
    """Hybridized interpolation of one zone from its centered window.

    Returns the adaptive-order polynomial together with its values at
    the two zone faces and its first derivative at the center, all
    evaluated from the same coefficients.
    """
    win = np.asarray(window, dtype=float)
    hw = _HALFWIDTH[config.order]
    if win.shape[0] != 2 * hw + 1:
        raise ValueError(
            f"order {config.order} needs a window of {2 * hw + 1} values, "
            f"got {win.shape[0]}")

    c = hw  # index of the anchor zone in the window
    small = [_fit("CENTER_L3", win[c - 2:c + 1]),
             _fit("CENTER_C3", win[c - 1:c + 2]),
             _fit("CENTER_R3", win[c:c + 3])]
    beta_small = [_beta(s) for s in small]
    glo = config.gamma_lo
    small_lin = np.array([(1 - glo) / 2, glo, (1 - glo) / 2])

    if config.mode == "ao3":
        gam = small_lin
        wbar = nonlinear_weights(gam, np.stack(beta_small),
                                 config.epsilon, tau_exp=2, ref=1)
        coeffs = sum(wbar[k] * small[k] for k in range(3))
    elif config.mode == "ao753":
        big = _fit("CENTER_C7", win)
        mid = _fit("CENTER_C5", win[c - 2:c + 3])
        ghi, gav = config.gamma_hi, config.gamma_avg
        gam = np.concatenate(([ghi, (1 - ghi) * gav],
                              (1 - ghi) * (1 - gav) * small_lin))
        betas = np.stack([_beta(big), _beta(mid)] + beta_small)
        wbar = nonlinear_weights(gam, betas, config.epsilon, tau_exp=3, ref=0)
        nm = big.shape[0]
        coeffs = big - gam[1] * _pad(mid, nm)
        for k in range(3):
            coeffs = coeffs - gam[2 + k] * _pad(small[k], nm)
        coeffs = (wbar[0] / gam[0]) * coeffs + wbar[1] * _pad(mid, nm)
        for k in range(3):
            coeffs = coeffs + wbar[2 + k] * _pad(small[k], nm)
    else:  # ao53, ao73, ao93
        big = _fit(_LARGE_STENCIL[config.order], win)
        ghi = config.gamma_hi
        gam = np.concatenate(([ghi], (1 - ghi) * small_lin))
        betas = np.stack([_beta(big)] + beta_small)
        wbar = nonlinear_weights(gam, betas, config.epsilon, tau_exp=2, ref=0)
        nm = big.shape[0]
        coeffs = big
        for k in range(3):
            coeffs = coeffs - gam[1 + k] * _pad(small[k], nm)
        coeffs = (wbar[0] / gam[0]) * coeffs
        for k in range(3):
            coeffs = coeffs + wbar[1 + k] * _pad(small[k], nm)

    nm = coeffs.shape[0]
    u_left = np.tensordot(deriv_row(nm, 0, -0.5), coeffs, axes=(0, 0))
    u_right = np.tensordot(deriv_row(nm, 0, 0.5), coeffs, axes=(0, 0))
    du = np.tensordot(deriv_row(nm, 1, 0.0), coeffs, axes=(0, 0))
    return CenterInterpolation(ModalPolynomial(coeffs), u_left, u_right, du)
