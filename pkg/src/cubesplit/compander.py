"""Bijections between the initial cells of the Grassmannian and the unit cube.

For a line in cell ``i_star`` (the coordinate of largest modulus), the local
coordinates are the ratios ``t = v / v[i_star]`` with the ``i_star`` entry
removed.  The companders send ``t`` to cube coordinates ``a`` with uniform
marginals under a uniform source:

* real:    a = (2/pi) atan(t) + 1/2, one coordinate per ratio;
* complex: |t|^2 is mapped to a Rayleigh radius |w| and the two cube
  coordinates are the normal CDF of Re(w) and Im(w).

Cell indices are 1-based.  All functions accept a single vector or a batch
(one vector per row); batched calls take an array of cell indices.
"""

from __future__ import annotations

import numpy as np

from .core import DimensionError, OutsideCellError
from .normal import std_normal_cdf, std_normal_cdf_inv

CELL_TOL = 1e-12
# complex boundary inputs are pulled this far inside the unit disk so w stays finite
_COMPLEX_EDGE = 1.0 - 1e-15


def _batched(v):
    v = np.asarray(v)
    single = v.ndim == 1
    return np.atleast_2d(v), single


def _cells(i_star, n: int, m: int) -> np.ndarray:
    cells = np.broadcast_to(np.asarray(i_star, dtype=np.int64), (n,))
    if np.any((cells < 1) | (cells > m)):
        raise DimensionError(f"cell index must lie in [1, {m}]")
    return cells


def local_coordinates(v, cells) -> np.ndarray:
    """Ratios to the pivot entry, pivot column dropped, order preserved.

    ``v`` is a batch (n, d); ``cells`` holds 1-based pivot indices.
    """
    v = np.asarray(v)
    n, d = v.shape
    cells = _cells(cells, n, d)
    rows = np.arange(n)
    pivot = v[rows, cells - 1]
    if np.any(pivot == 0):
        raise OutsideCellError("pivot coordinate is zero")
    keep = np.ones((n, d), dtype=bool)
    keep[rows, cells - 1] = False
    return (v / pivot[:, None])[keep].reshape(n, d - 1)


def _insert_pivot(u: np.ndarray, cells: np.ndarray) -> np.ndarray:
    """Place a 1 at the pivot slot and ``u`` elsewhere, then normalize."""
    n, k = u.shape
    rows = np.arange(n)
    keep = np.ones((n, k + 1), dtype=bool)
    keep[rows, cells - 1] = False
    out = np.ones((n, k + 1), dtype=u.dtype)
    out[keep] = u.ravel()
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def _check_open_cube(a: np.ndarray) -> None:
    if np.any(~((a > 0.0) & (a < 1.0))):
        raise OutsideCellError("cube coordinates must lie strictly inside (0, 1)")


def real_map(y, i_star) -> np.ndarray:
    """Cube coordinates in [0, 1]^(d-1) of real line(s) ``y`` in cell ``i_star``."""
    y, single = _batched(y)
    cells = _cells(i_star, y.shape[0], y.shape[1])
    t = local_coordinates(y.astype(np.float64), cells)
    if np.any(np.abs(t) > 1.0 + CELL_TOL):
        raise OutsideCellError("line lies outside the requested cell")
    t = np.clip(t, -1.0, 1.0)
    a = np.clip((2.0 / np.pi) * np.arctan(t) + 0.5, 0.0, 1.0)
    return a[0] if single else a


def real_unmap(a, i_star, d: int) -> np.ndarray:
    """Unit vector(s) of G(R^d, 1) in cell ``i_star`` with cube coordinates ``a``."""
    a, single = _batched(np.asarray(a, dtype=np.float64))
    if a.shape[1] != d - 1:
        raise DimensionError(f"expected {d - 1} cube coordinates, got {a.shape[1]}")
    _check_open_cube(a)
    cells = _cells(i_star, a.shape[0], d)
    u = np.tan((np.pi / 2.0) * (a - 0.5))
    out = _insert_pivot(u, cells)
    return out[0] if single else out


def rayleigh_radius_sq(r: np.ndarray) -> np.ndarray:
    """|w|^2 = 2 log((1 + r^2) / (1 - r^2)) for moduli r = |t| in [0, 1)."""
    r2 = r * r
    one_minus = np.where(r > 0.9, (1.0 - r) * (1.0 + r), 1.0 - r2)
    return 2.0 * (np.log1p(r2) - np.log(one_minus))


def complex_map(x, i_star) -> np.ndarray:
    """Cube coordinates in [0, 1]^(2D-2) of complex line(s) ``x`` in cell ``i_star``.

    Coordinates come in (Re, Im) pairs: ``a[2i]`` and ``a[2i+1]`` (0-based)
    belong to the i-th local coordinate.
    """
    x, single = _batched(x)
    cells = _cells(i_star, x.shape[0], x.shape[1])
    t = local_coordinates(x.astype(np.complex128), cells)
    r = np.abs(t)
    if np.any(r > 1.0 + CELL_TOL):
        raise OutsideCellError("line lies outside the requested cell")
    r_c = np.minimum(r, _COMPLEX_EDGE)
    radius = np.sqrt(rayleigh_radius_sq(r_c))
    phase = np.divide(t, r, out=np.zeros_like(t), where=r > 0)
    w = radius * phase
    a = np.empty(t.shape[:1] + (2 * t.shape[1],))
    a[:, 0::2] = std_normal_cdf(w.real)
    a[:, 1::2] = std_normal_cdf(w.imag)
    return a[0] if single else a


def complex_unmap(a, i_star, D: int) -> np.ndarray:
    """Unit vector(s) of G(C^D, 1) in cell ``i_star`` with cube coordinates ``a``."""
    a, single = _batched(np.asarray(a, dtype=np.float64))
    if a.shape[1] != 2 * D - 2:
        raise DimensionError(f"expected {2 * D - 2} cube coordinates, got {a.shape[1]}")
    _check_open_cube(a)
    cells = _cells(i_star, a.shape[0], D)
    w = std_normal_cdf_inv(a[:, 0::2]) + 1j * std_normal_cdf_inv(a[:, 1::2])
    radius = np.abs(w)
    # sqrt((1 - e^-s) / (1 + e^-s)) with s = |w|^2 / 2 equals sqrt(tanh(s / 2))
    modulus = np.sqrt(np.tanh(radius * radius / 4.0))
    z = np.divide(w, radius, out=np.zeros_like(w), where=radius > 0) * modulus
    out = _insert_pivot(z, cells)
    return out[0] if single else out
