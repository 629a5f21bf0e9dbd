"""Zone-boundary WENO interpolation of flux-gradient derivatives.

Takes zone-centered values of w = A (dU/dxi) around a boundary and
returns a nonlinearly hybridized polynomial anchored at the boundary,
from which the odd derivatives entering the corrected numerical flux
are read off.  Two third-order stencils straddle every boundary; large
centered stencils of order 4, 6 or 8 are blended in as the scheme order
rises.

Window layout: ``window[w]`` is the value in zone ``lo + w`` counted
relative to the zone immediately left of the boundary, with
(lo, hi) = (-1, 2), (-1, 2), (-2, 3), (-3, 4) for orders 3, 5, 7, 9.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .legendre import FIT_MATRICES, ModalPolynomial, SMOOTHNESS_GRAM, deriv_row
from .weno_center import WenoConfig, nonlinear_weights

__all__ = ["BoundaryDerivativeStack", "interp_boundary",
           "boundary_derivatives", "window_range"]

_WINDOW = {3: (-1, 2), 5: (-1, 2), 7: (-2, 3), 9: (-3, 4)}


@dataclass(frozen=True)
class BoundaryDerivativeStack:
    """Odd xi-derivatives of w at a boundary, zero beyond the order's need."""

    d1: np.ndarray
    d3: np.ndarray
    d5: np.ndarray
    d7: np.ndarray


def window_range(order: int) -> tuple[int, int]:
    """Inclusive zone-offset range of the input window for a scheme order."""
    return _WINDOW[order]


def _fit(stencil_id, values):
    return np.tensordot(FIT_MATRICES[stencil_id], values, axes=(1, 0))


def _beta(coeffs):
    d = coeffs.shape[0] - 1
    return np.einsum("i...,ij,j...->...", coeffs, SMOOTHNESS_GRAM[d], coeffs)


def _pad(coeffs, nmodes):
    pad = [(0, nmodes - coeffs.shape[0])] + [(0, 0)] * (coeffs.ndim - 1)
    return np.pad(coeffs, pad)


def interp_boundary(config: WenoConfig, window) -> ModalPolynomial:
    """Hybridized boundary polynomial of the w field around one boundary."""
    win = np.asarray(window, dtype=float)
    lo, hi = _WINDOW[config.order]
    n = hi - lo + 1
    if win.shape[0] != n:
        raise ValueError(
            f"order {config.order} needs a window of {n} values, "
            f"got {win.shape[0]}")

    z = -lo  # window index of zone 0 (left of the boundary)
    left = _fit("ZB_L3", win[z - 1:z + 2])
    right = _fit("ZB_R3", win[z:z + 3])
    beta_l, beta_r = _beta(left), _beta(right)
    eps = config.epsilon

    if config.order == 3:
        # two stencils, equal linear weights
        wbar = nonlinear_weights([0.5, 0.5], np.stack([beta_l, beta_r]),
                                 eps, tau_exp=2, ref=0)
        return ModalPolynomial(wbar[0] * left + wbar[1] * right)

    ghi = config.gamma_hi
    if config.order in (5, 7):
        big_id = "ZB_C4" if config.order == 5 else "ZB_C6"
        big = _fit(big_id, win)
        gam = np.array([ghi, (1 - ghi) / 2, (1 - ghi) / 2])
        betas = np.stack([_beta(big), beta_l, beta_r])
        wbar = nonlinear_weights(gam, betas, eps, tau_exp=2, ref=0)
        nm = big.shape[0]
        coeffs = big - gam[1] * _pad(left, nm) - gam[2] * _pad(right, nm)
        coeffs = ((wbar[0] / gam[0]) * coeffs
                  + wbar[1] * _pad(left, nm) + wbar[2] * _pad(right, nm))
        return ModalPolynomial(coeffs)

    # order 9: four stencils with the sixth-order one as intermediate level
    gav = config.gamma_avg
    big = _fit("ZB_C8", win)
    mid = _fit("ZB_C6", win[z - 2:z + 4])
    gam = np.array([ghi, (1 - ghi) * gav,
                    (1 - ghi) * (1 - gav) / 2, (1 - ghi) * (1 - gav) / 2])
    betas = np.stack([_beta(big), _beta(mid), beta_l, beta_r])
    wbar = nonlinear_weights(gam, betas, eps, tau_exp=4, ref=0)
    nm = big.shape[0]
    coeffs = (big - gam[1] * _pad(mid, nm)
              - gam[2] * _pad(left, nm) - gam[3] * _pad(right, nm))
    coeffs = ((wbar[0] / gam[0]) * coeffs + wbar[1] * _pad(mid, nm)
              + wbar[2] * _pad(left, nm) + wbar[3] * _pad(right, nm))
    return ModalPolynomial(coeffs)


def boundary_derivatives(p: ModalPolynomial, order: int) -> BoundaryDerivativeStack:
    """Read the odd boundary derivatives required at a scheme order."""
    nm = p.coeffs.shape[0]
    batch = p.coeffs.shape[1:]

    def level(n, needed):
        if not needed or n > p.degree:
            return np.zeros(batch) if batch else 0.0
        out = np.tensordot(deriv_row(nm, n, 0.0), p.coeffs, axes=(0, 0))
        return out if batch else float(out)

    return BoundaryDerivativeStack(
        d1=level(1, True),
        d3=level(3, order >= 5),
        d5=level(5, order >= 7),
        d7=level(7, order >= 9),
    )
