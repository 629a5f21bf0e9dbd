"""Legendre-basis polynomials on the unit zone and exact stencil fits.

Everything here works in the dimensionless local coordinate xi in
[-1/2, 1/2] with unit zone width.  Interpolants are stored as modal
coefficients c_0..c_d multiplying the (non-normalized) Legendre basis
L_0..L_d that spans the unit interval.  All stencil-fit coefficients are
exact rationals evaluated to double precision at import time.

Modal coefficient arrays always carry the mode axis FIRST, so one
``ModalPolynomial`` can hold an entire grid of interpolants: ``coeffs``
of shape ``(degree+1, nx, ncomp)`` is a polynomial per zone and
component.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "LEGENDRE_COEFFS",
    "MAX_DEGREE",
    "ModalPolynomial",
    "StencilSpec",
    "STENCILS",
    "eval_legendre",
    "eval_poly",
    "fit_stencil",
    "smoothness_indicator",
]

MAX_DEGREE = 8

# Power-basis coefficients of L_0..L_8 (constant term first), exact.
LEGENDRE_COEFFS: list[list[Fraction]] = [
    [Fraction(1)],
    [Fraction(0), Fraction(1)],
    [Fraction(-1, 12), Fraction(0), Fraction(1)],
    [Fraction(0), Fraction(-3, 20), Fraction(0), Fraction(1)],
    [Fraction(3, 560), Fraction(0), Fraction(-3, 14), Fraction(0), Fraction(1)],
    [Fraction(0), Fraction(5, 336), Fraction(0), Fraction(-5, 18), Fraction(0),
     Fraction(1)],
    [Fraction(-5, 14784), Fraction(0), Fraction(5, 176), Fraction(0),
     Fraction(-15, 44), Fraction(0), Fraction(1)],
    [Fraction(0), Fraction(-35, 27456), Fraction(0), Fraction(105, 2288),
     Fraction(0), Fraction(-21, 52), Fraction(0), Fraction(1)],
    [Fraction(7, 329472), Fraction(0), Fraction(-7, 2288), Fraction(0),
     Fraction(7, 104), Fraction(0), Fraction(-7, 15), Fraction(0), Fraction(1)],
]


def _poly_derivative(power_coeffs: Sequence[Fraction], n: int) -> list[Fraction]:
    c = list(power_coeffs)
    for _ in range(n):
        c = [c[i] * i for i in range(1, len(c))]
    return c if c else [Fraction(0)]


def eval_legendre(k: int, xi: float) -> float:
    """Evaluate the basis polynomial L_k at xi.

    Parameters
    ----------
    k : int
        Basis index, 0 <= k <= 8.
    xi : float or ndarray
        Local coordinate(s), nominally in [-1/2, 1/2].
    """
    if not 0 <= k <= MAX_DEGREE:
        raise ValueError(f"basis index k={k} outside 0..{MAX_DEGREE}")
    c = np.array([float(f) for f in LEGENDRE_COEFFS[k]])
    xi = np.asarray(xi, dtype=float)
    out = np.zeros_like(xi)
    for a in c[::-1]:
        out = out * xi + a
    return out if out.ndim else float(out)


_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ModalPolynomial:
    """Polynomial in the unit-interval Legendre basis.

    ``coeffs`` has the mode axis first; trailing axes are free batch
    dimensions (zones, components, ...).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape[0] > MAX_DEGREE + 1:
            raise ValueError(f"degree {c.shape[0] - 1} exceeds {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1


def deriv_row(nmodes: int, n: int, xi: float) -> np.ndarray:
    """Row vector r with r @ coeffs = d^n P/dxi^n (xi) for nmodes modes."""
    return np.array([
        np.polyval([float(a) for a in _poly_derivative(LEGENDRE_COEFFS[k], n)][::-1], xi)
        for k in range(nmodes)
    ])


def eval_poly(p: ModalPolynomial, n: int, xi: float):
    """n-th xi-derivative of p at xi (n=0 is the value).

    n beyond the degree returns 0.  Batched polynomials return arrays of
    the batch shape.
    """
    if n < 0:
        raise ValueError("derivative order must be >= 0")
    c = p.coeffs
    if n > p.degree:
        return np.zeros(c.shape[1:]) if c.ndim > 1 else 0.0
    out = np.tensordot(deriv_row(c.shape[0], n, xi), c, axes=(0, 0))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class StencilSpec:
    """A contiguous interpolation stencil in anchor-centered coordinates.

    CENTER_* stencils anchor at a zone center with nodes at integer
    offsets; ZB_* stencils anchor at a zone boundary with zone j sitting
    at xi = j - 1/2 (f_0 left of the boundary, f_1 right of it).
    """

    id: str
    offsets: tuple[int, ...]
    nodes: tuple[Fraction, ...]


def _center(idname, lo, hi):
    offs = tuple(range(lo, hi + 1))
    return StencilSpec(idname, offs, tuple(Fraction(o) for o in offs))


def _zb(idname, lo, hi):
    offs = tuple(range(lo, hi + 1))
    return StencilSpec(idname, offs, tuple(Fraction(2 * o - 1, 2) for o in offs))


STENCILS: dict[str, StencilSpec] = {
    s.id: s
    for s in (
        _center("CENTER_L3", -2, 0),
        _center("CENTER_C3", -1, 1),
        _center("CENTER_R3", 0, 2),
        _center("CENTER_C5", -2, 2),
        _center("CENTER_C7", -3, 3),
        _center("CENTER_C9", -4, 4),
        _zb("ZB_L3", -1, 1),
        _zb("ZB_R3", 0, 2),
        _zb("ZB_C4", -1, 2),
        _zb("ZB_C6", -2, 3),
        _zb("ZB_C8", -3, 4),
    )
}

# Exact fit tables transcribed from the closed forms: rows are modal
# coefficients, columns the stencil values in node order.
_FIT_TABLES_EXACT: dict[str, tuple[list[list[int]], list[int]]] = {
    "CENTER_L3": ([[1, -2, 25], [1, -4, 3], [1, -2, 1]], [24, 2, 2]),
    "CENTER_C3": ([[1, 22, 1], [-1, 0, 1], [1, -2, 1]], [24, 2, 2]),
    "CENTER_R3": ([[25, -2, 1], [-3, 4, -1], [1, -2, 1]], [24, 2, 2]),
    "CENTER_C5": (
        [[-17, 308, 5178, 308, -17],
         [17, -154, 0, 154, -17],
         [-11, 212, -402, 212, -11],
         [-1, 2, 0, -2, 1],
         [1, -4, 6, -4, 1]],
        [5760, 240, 336, 12, 24],
    ),
    "CENTER_C7": (
        [[367, -5058, 57249, 862564, 57249, -5058, 367],
         [-367, 3372, -19083, 0, 19083, -3372, 367],
         [111, -1546, 18625, -34380, 18625, -1546, 111],
         [17, -140, 229, 0, -229, 140, -17],
         [-41, 510, -1671, 2404, -1671, 510, -41],
         [-1, 4, -5, 0, 5, -4, 1],
         [1, -6, 15, -20, 15, -6, 1]],
        [967680, 26880, 26880, 864, 6336, 240, 720],
    ),
    "CENTER_C9": (
        [[-27859, 399032, -3207892, 29039624, 412080590,
          29039624, -3207892, 399032, -27859],
         [27859, -299274, 1603946, -7259906, 0,
          7259906, -1603946, 299274, -27859],
         [-13789, 198224, -1610524, 15523184, -28194190,
          15523184, -1610524, 198224, -13789],
         [-10223, 106218, -512722, 747682, 0,
          -747682, 512722, -106218, 10223],
         [7243, -100584, 733204, -2143448, 3007170,
          -2143448, 733204, -100584, 7243],
         [101, -918, 2662, -2974, 0, 2974, -2662, 918, -101],
         [-29, 352, -1532, 3424, -4430, 3424, -1532, 352, -29],
         [-1, 6, -14, 14, 0, -14, 14, -6, 1],
         [1, -8, 28, -56, 70, -56, 28, -8, 1]],
        [464486400, 9676800, 21288960, 2280960, 6589440,
         74880, 86400, 10080, 40320],
    ),
    "ZB_L3": ([[-1, 8, 5], [0, -1, 1], [1, -2, 1]], [12, 1, 2]),
    "ZB_R3": ([[5, 8, -1], [-1, 1, 0], [1, -2, 1]], [12, 1, 2]),
    "ZB_C4": (
        [[-1, 13, 13, -1], [1, -63, 63, -1], [1, -1, -1, 1], [-1, 3, -3, 1]],
        [24, 60, 4, 6],
    ),
    "ZB_C6": (
        [[11, -93, 802, 802, -93, 11],
         [-3, 43, -1794, 1794, -43, 3],
         [-4, 33, -29, -29, 33, -4],
         [1, -14, 37, -37, 14, -1],
         [1, -3, 2, 2, -3, 1],
         [-1, 5, -10, 10, -5, 1]],
        [1440, 1680, 84, 54, 48, 120],
    ),
    "ZB_C8": (
        [[-191, 1879, -9531, 68323, 68323, -9531, 1879, -191],
         [79, -1093, 9399, -325685, 325685, -9399, 1093, -79],
         [67, -655, 3243, -2655, -2655, 3243, -655, 67],
         [-391, 5377, -45171, 111365, -111365, 45171, -5377, 391],
         [-37, 317, -729, 449, 449, -729, 317, -37],
         [31, -373, 1431, -2645, 2645, -1431, 373, -31],
         [1, -5, 9, -5, -5, 9, -5, 1],
         [-1, 7, -21, 35, -35, 21, -7, 1]],
        [120960, 302400, 6720, 142560, 6336, 18720, 1440, 5040],
    ),
}


def fit_table(stencil_id: str) -> np.ndarray:
    """Float fit matrix M with coeffs = M @ values for the named stencil."""
    nums, dens = _FIT_TABLES_EXACT[stencil_id]
    return np.array([[n / d for n in row] for row, d in zip(nums, dens)])


FIT_MATRICES = {sid: fit_table(sid) for sid in _FIT_TABLES_EXACT}


def fit_stencil(spec: StencilSpec | str, values) -> ModalPolynomial:
    """Fit the pointwise-interpolating polynomial of a stencil.

    ``values`` carries the node axis first (matching ``spec.offsets``)
    and may have arbitrary trailing batch axes.
    """
    sid = spec if isinstance(spec, str) else spec.id
    if sid not in FIT_MATRICES:
        raise ValueError(f"unknown stencil {sid!r}")
    vals = np.asarray(values, dtype=float)
    n = len(STENCILS[sid].offsets)
    if vals.shape[0] != n:
        raise ValueError(
            f"stencil {sid} expects {n} values, got {vals.shape[0]}")
    return ModalPolynomial(np.tensordot(FIT_MATRICES[sid], vals, axes=(1, 0)))


# Smoothness Gram matrices: beta = c^T Q c with
# Q[j,k] = sum_{m>=1} \int_{-1/2}^{1/2} L_j^(m) L_k^(m) dxi.
def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _integrate_unit(power_coeffs) -> Fraction:
    s = Fraction(0)
    for i, c in enumerate(power_coeffs):
        if i % 2 == 0:
            s += c * 2 * _HALF ** (i + 1) / (i + 1)
    return s


def _gram(degree: int) -> np.ndarray:
    q = [[Fraction(0)] * (degree + 1) for _ in range(degree + 1)]
    for m in range(1, degree + 1):
        d = [_poly_derivative(LEGENDRE_COEFFS[k], m) if m <= k else [Fraction(0)]
             for k in range(degree + 1)]
        for j in range(degree + 1):
            for k in range(j, degree + 1):
                v = _integrate_unit(_poly_mul(d[j], d[k]))
                q[j][k] += v
                if k != j:
                    q[k][j] += v
    return np.array([[float(x) for x in row] for row in q])


SMOOTHNESS_GRAM = {d: _gram(d) for d in range(1, MAX_DEGREE + 1)}


def smoothness_indicator(p: ModalPolynomial):
    """Sum over m >= 1 of the integral of (d^m p / dxi^m)^2 over the zone.

    Reduces to the closed perfect-square forms of the interpolation
    stencils; zero exactly for constants.
    """
    d = p.degree
    if d < 1:
        like = p.coeffs[0]
        return np.zeros_like(like) if isinstance(like, np.ndarray) else 0.0
    q = SMOOTHNESS_GRAM[d]
    c = p.coeffs
    out = np.einsum("i...,ij,j...->...", c, q, c)
    return out if out.ndim else float(out)
