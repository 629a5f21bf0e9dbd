"""Pointwise interface fluxes: local Lax-Friedrichs and HLL.

Both take left/right conserved states with the component axis last and
are vectorized over leading axes.  Any solver of signature
``(system, UL, UR, axis) -> RiemannResult`` plugs into the scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["RiemannResult", "llf_flux", "hll_flux", "SOLVERS"]


@dataclass(frozen=True)
class RiemannResult:
    flux: np.ndarray
    s_left: np.ndarray
    s_right: np.ndarray
    u_star: np.ndarray


def llf_flux(system, UL, UR, axis: int = 0) -> RiemannResult:
    """F* = (F_L + F_R)/2 - s_max (U_R - U_L)/2 with the Davis bound."""
    UL = np.asarray(UL, dtype=float)
    UR = np.asarray(UR, dtype=float)
    fl = system.flux(UL, axis)
    fr = system.flux(UR, axis)
    sl, sr = system.signal_speeds(UL, UR, axis)
    smax = np.maximum(np.abs(sl), np.abs(sr))[..., None]
    flux = 0.5 * (fl + fr) - 0.5 * smax * (UR - UL)
    return RiemannResult(flux, sl, sr, 0.5 * (UL + UR))


def hll_flux(system, UL, UR, axis: int = 0) -> RiemannResult:
    """Two-wave HLL flux; degenerate fans fall back to LLF."""
    UL = np.asarray(UL, dtype=float)
    UR = np.asarray(UR, dtype=float)
    fl = system.flux(UL, axis)
    fr = system.flux(UR, axis)
    sl, sr = system.signal_speeds(UL, UR, axis)

    gap = sr - sl
    degenerate = gap < 1e-12
    gap = np.where(degenerate, 1.0, gap)
    slc, src = sl[..., None], sr[..., None]
    gapc = gap[..., None]

    f_mid = (src * fl - slc * fr + slc * src * (UR - UL)) / gapc
    u_star = (src * UR - slc * UL - (fr - fl)) / gapc
    flux = np.where(slc >= 0, fl, np.where(src <= 0, fr, f_mid))
    u_star = np.where(slc >= 0, UL, np.where(src <= 0, UR, u_star))

    if degenerate.any():
        llf = llf_flux(system, UL, UR, axis)
        mask = degenerate[..., None]
        flux = np.where(mask, llf.flux, flux)
        u_star = np.where(mask, llf.u_star, u_star)
    return RiemannResult(flux, sl, sr, u_star)


SOLVERS = {"llf": llf_flux, "hll": hll_flux}
