"""Reference quantizers and high-resolution distortion bounds.

* exhaustive nearest-codeword search over an explicit codebook;
* DFT (Fourier) codebooks, entry n = (exp(2j pi k n / N))_k / sqrt(D);
* a phase-normalized per-component scalar quantizer;
* random unstructured codebooks;
* the high-resolution sandwich on the best codebook with 2^B entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CubeSplitError, DimensionError, sample_uniform_complex, sample_uniform_real

_CHUNK_ELEMS = 1 << 22
# gains this close to the maximum count as ties, resolved to the lowest index
TIE_RTOL = 1e-13


def _as_codebook(cb) -> np.ndarray:
    cb = np.atleast_2d(np.asarray(cb))
    if cb.shape[0] == 0 or cb.size == 0:
        raise CubeSplitError("codebook is empty")
    return cb


def exhaustive_encode(x, codebook):
    """Index (0-based) of the codeword at minimum chordal distance from ``x``.

    Maximizing |<c, x>|^2 is equivalent to minimizing the chordal distance;
    ties (up to ``TIE_RTOL``) resolve to the lowest index.  ``x`` may be a batch.
    """
    cb = _as_codebook(codebook)
    x = np.asarray(x)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    if x.shape[1] != cb.shape[1]:
        raise DimensionError(f"dimension mismatch: {x.shape[1]} vs codebook {cb.shape[1]}")
    cbh = np.conj(cb).T
    rows = max(1, _CHUNK_ELEMS // cb.shape[0])
    out = np.empty(x.shape[0], dtype=np.int64)
    for start in range(0, x.shape[0], rows):
        ip = np.abs(x[start:start + rows] @ cbh) ** 2
        best = ip.max(axis=1, keepdims=True)
        out[start:start + rows] = np.argmax(ip >= best * (1.0 - TIE_RTOL), axis=1)
    return int(out[0]) if single else out


def fourier_codebook(D: int, N: int) -> np.ndarray:
    if N < 1:
        raise ValueError("Fourier codebook needs N >= 1")
    if D < 2:
        raise DimensionError("D must be >= 2")
    k = np.arange(D)
    n = np.arange(N)
    return np.exp(2j * np.pi * np.outer(n, k) / N) / math.sqrt(D)


def _fourier_gain(x: np.ndarray, idx: np.ndarray, N: int) -> np.ndarray:
    """|<f_idx, x>|^2 for each row of ``x`` against Fourier entries ``idx`` (n, c)."""
    k = np.arange(x.shape[1])
    phase = np.exp(-2j * np.pi * (idx[..., None] * k) / N)
    return np.abs(np.einsum("ncd,nd->nc", phase, x)) ** 2 / x.shape[1]


def fourier_encode(x, N: int):
    """Nearest Fourier codeword without enumerating the codebook.

    The gain |<f(theta), x>|^2 is a trigonometric polynomial of degree D - 1 in
    theta; the best grid point theta_n = 2 pi n / N is a grid neighbour of one
    of its local maxima.  Critical points come from the roots of a degree
    2D - 2 polynomial, so the cost does not depend on N.  The result matches
    :func:`exhaustive_encode` on :func:`fourier_codebook` up to exact ties.
    """
    x = np.asarray(x, dtype=np.complex128)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    n, D = x.shape
    # autocorrelation r_m = sum_k conj(x_k) x_{k-m}, m = -(D-1)..D-1
    lags = np.arange(-(D - 1), D)
    r = np.zeros((n, lags.size), dtype=np.complex128)
    for j, m in enumerate(lags):
        if m >= 0:
            r[:, j] = np.sum(np.conj(x[:, m:]) * x[:, :D - m], axis=1)
        else:
            r[:, j] = np.sum(np.conj(x[:, :D + m]) * x[:, -m:], axis=1)
    # z^(D-1) * d/dtheta gain, coefficients from highest degree down
    coeffs = (1j * lags * r)[:, ::-1]

    angles = np.zeros((n, 2 * D - 2))
    lead = np.abs(coeffs[:, 0])
    scale = np.max(np.abs(coeffs), axis=1)
    regular = lead > 1e-9 * np.maximum(scale, 1e-300)
    if np.any(regular):
        c = coeffs[regular]
        comp = np.zeros((c.shape[0], 2 * D - 2, 2 * D - 2), dtype=np.complex128)
        comp[:, 0, :] = -c[:, 1:] / c[:, :1]
        comp[:, np.arange(1, 2 * D - 2), np.arange(2 * D - 3)] = 1.0
        angles[regular] = np.angle(np.linalg.eigvals(comp))
    for i in np.flatnonzero(~regular):
        if scale[i] > 0:
            roots = np.roots(coeffs[i])
            angles[i, :roots.size] = np.angle(roots)

    base = np.floor(np.mod(angles, 2 * np.pi) * N / (2 * np.pi)).astype(np.int64)
    cand = (base[..., None] + np.arange(-1, 3)).reshape(n, -1) % N
    cand = np.concatenate([np.zeros((n, 1), dtype=np.int64), cand], axis=1)
    gain = _fourier_gain(x, cand, N)
    best = gain.max(axis=1, keepdims=True)
    tied = gain >= best * (1.0 - TIE_RTOL)
    out = np.where(tied, cand, N).min(axis=1)
    return int(out[0]) if single else out


def scalar_baseline(x, B_per_component: int) -> np.ndarray:
    """Rotate x_1 onto the positive real axis, quantize the 2D - 1 free real
    components uniformly over [-1, 1] with midpoint reconstruction, renormalize."""
    if B_per_component < 1:
        raise ValueError("scalar baseline needs at least one bit per component")
    x = np.asarray(x, dtype=np.complex128)
    xr = x * np.exp(-1j * np.angle(x[..., :1]))
    levels = 2 ** B_per_component
    step = 2.0 / levels

    def q(v):
        idx = np.clip(np.floor((v + 1.0) / step), 0, levels - 1)
        return -1.0 + (idx + 0.5) * step

    out = q(xr.real) + 0j
    out[..., 1:] += 1j * q(xr[..., 1:].imag)
    return out / np.linalg.norm(out, axis=-1, keepdims=True)


def random_codebook(D: int, N: int, rng, complex_: bool = True) -> np.ndarray:
    if N < 1:
        raise ValueError("codebook needs N >= 1")
    if complex_:
        return sample_uniform_complex(D, rng, size=N)
    return sample_uniform_real(D, rng, size=N)


@dataclass(frozen=True)
class BoundsResult:
    lower: float
    upper: float
    d: int
    B: int


def distortion_bounds(d: int, B: int) -> BoundsResult:
    """High-resolution bounds on the best mean squared chordal distortion
    achievable with 2^B codewords; ``d`` is the complex dimension."""
    if d < 2:
        raise DimensionError("bounds need d >= 2")
    if B < 1:
        raise ValueError("bounds need B >= 1")
    scale = 2.0 ** (-B / (d - 1))
    return BoundsResult(lower=(d - 1) / d * scale,
                        upper=math.gamma(d / (d - 1)) * scale, d=d, B=B)


# -- quantizer objects for the Monte Carlo harness ----------------------------

class CodebookQuantizer:
    def __init__(self, codebook, label: str = "codebook"):
        self.codebook = _as_codebook(codebook)
        self.label = label
        self.dim = self.codebook.shape[1]
        self.is_complex = np.iscomplexobj(self.codebook)
        self.total_bits = max(1, math.ceil(math.log2(self.codebook.shape[0])))

    def quantize(self, x):
        return self.codebook[exhaustive_encode(np.atleast_2d(x), self.codebook)]


class FourierQuantizer:
    def __init__(self, D: int, N: int):
        if N < 1:
            raise ValueError("Fourier codebook needs N >= 1")
        self.D, self.N = D, N
        self.label = "fourier"
        self.dim = D
        self.is_complex = True
        self.total_bits = max(1, math.ceil(math.log2(N)))

    def quantize(self, x):
        idx = fourier_encode(np.atleast_2d(x), self.N)
        k = np.arange(self.D)
        return np.exp(2j * np.pi * np.outer(idx, k) / self.N) / math.sqrt(self.D)


class ScalarQuantizer:
    def __init__(self, D: int, B_per_component: int):
        self.B = B_per_component
        self.label = "scalar"
        self.dim = D
        self.is_complex = True
        self.total_bits = (2 * D - 1) * B_per_component

    def quantize(self, x):
        return scalar_baseline(x, self.B)
