"""Cube-split quantizers for G(R^d, 1) and G(C^D, 1).

A codeword is a fixed-length bit string: the header holds ``i_star - 1`` on
``ceil(log2 m)`` bits (``m`` initial cells), followed by one MSB-first field of
``B_i`` bits per cube coordinate.  Three schemes are provided:

``REAL``
    cube-split on G(R^d, 1), ``m = d`` cells, ``d - 1`` coordinates.
``COMPLEX_SCHEME1``
    rotate so the first entry is real and non-negative, view the result as a
    real line of dimension ``2D - 1`` and run the real quantizer on it.
``COMPLEX_SCHEME2``
    complex cells ``m = D`` and the Rayleigh/normal complex compander,
    ``2D - 2`` coordinates.

The scalar rule is ``n = min(floor(2^B a), 2^B - 1)`` and reconstruction sits
at the cell midpoint ``2^-B (n + 1/2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .compander import complex_map, complex_unmap, real_map, real_unmap
from .core import DimensionError, MalformedCodewordError

MAX_FIELD_BITS = 52


class Scheme(enum.Enum):
    REAL = "real"
    COMPLEX_SCHEME1 = "cs1"
    COMPLEX_SCHEME2 = "cs2"

    @property
    def is_complex(self) -> bool:
        return self is not Scheme.REAL


@dataclass(frozen=True)
class QuantizerConfig:
    """Scheme, dimension (``d`` for REAL, ``D`` otherwise) and bits per coordinate."""

    scheme: Scheme
    dim: int
    alloc: tuple[int, ...]

    def __post_init__(self):
        scheme = Scheme(self.scheme)
        object.__setattr__(self, "scheme", scheme)
        object.__setattr__(self, "alloc", tuple(int(b) for b in self.alloc))
        if self.dim < 2:
            raise DimensionError(f"dimension must be >= 2, got {self.dim}")
        if len(self.alloc) != self.n_coords:
            raise DimensionError(
                f"{scheme.value} with dim={self.dim} needs {self.n_coords} bit counts, "
                f"got {len(self.alloc)}")
        if any(b < 0 or b > MAX_FIELD_BITS for b in self.alloc):
            raise ValueError(f"bits per coordinate must lie in [0, {MAX_FIELD_BITS}]")

    @classmethod
    def uniform(cls, scheme, dim: int, bits: int) -> "QuantizerConfig":
        """Same number of bits on every coordinate."""
        scheme = Scheme(scheme)
        k = dim - 1 if scheme is Scheme.REAL else 2 * dim - 2
        return cls(scheme, dim, (bits,) * k)

    @property
    def n_coords(self) -> int:
        return self.dim - 1 if self.scheme is Scheme.REAL else 2 * self.dim - 2

    @property
    def n_cells(self) -> int:
        if self.scheme is Scheme.COMPLEX_SCHEME1:
            return 2 * self.dim - 1
        return self.dim

    @property
    def header_bits(self) -> int:
        return math.ceil(math.log2(self.n_cells))

    @property
    def total_bits(self) -> int:
        return self.header_bits + sum(self.alloc)

    @property
    def real_dim(self) -> int:
        """Dimension of the real line actually quantized (``2D - 1`` for scheme 1)."""
        return 2 * self.dim - 1 if self.scheme is Scheme.COMPLEX_SCHEME1 else self.dim

    @property
    def label(self) -> str:
        return self.scheme.value

    def real_config(self) -> "QuantizerConfig":
        """REAL config run underneath scheme 1."""
        if self.scheme is not Scheme.COMPLEX_SCHEME1:
            raise ValueError("only scheme 1 delegates to the real quantizer")
        return QuantizerConfig(Scheme.REAL, 2 * self.dim - 1, self.alloc)


def codebook_size(cfg: QuantizerConfig) -> int:
    return cfg.n_cells * 2 ** sum(cfg.alloc)


def bits_per_dimension(cfg: QuantizerConfig) -> float:
    return cfg.total_bits / cfg.dim


# -- cells and scalar quantization --------------------------------------------

def cell_index_real(y):
    """1-based index of the largest |y_i|; ties go to the lowest index."""
    idx = np.argmax(np.abs(np.asarray(y)), axis=-1) + 1
    return int(idx) if np.ndim(idx) == 0 else idx


cell_index_complex = cell_index_real


def scalar_quantize(a, B):
    """Index of the uniform cell of [0, 1] holding ``a`` with ``B`` bits."""
    a = np.asarray(a, dtype=np.float64)
    B = np.asarray(B, dtype=np.int64)
    if np.any(~((a >= 0.0) & (a <= 1.0))):
        raise ValueError("scalar quantizer input must lie in [0, 1]")
    if np.any((B < 0) | (B > MAX_FIELD_BITS)):
        raise ValueError(f"B must lie in [0, {MAX_FIELD_BITS}]")
    top = np.ldexp(1.0, B) - 1.0
    n = np.minimum(np.floor(np.ldexp(a, B)), top).astype(np.int64)
    return int(n) if n.ndim == 0 else n


def scalar_dequantize(n, B):
    """Midpoint ``2^-B (n + 1/2)`` of quantization cell ``n``; exact in float64."""
    n = np.asarray(n, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if np.any((n < 0) | (n >= np.left_shift(np.int64(1), B))):
        raise ValueError("quantization index out of range for B")
    a = np.ldexp(n.astype(np.float64) + 0.5, -B)
    return float(a) if a.ndim == 0 else a


# -- bit layout ---------------------------------------------------------------

def pack_codeword(header: int, codes: Sequence[int], cfg: QuantizerConfig) -> str:
    """Header then fields, MSB first, as a '0'/'1' string."""
    parts = [format(int(header), f"0{cfg.header_bits}b")]
    for n, b in zip(codes, cfg.alloc):
        if b:
            parts.append(format(int(n), f"0{b}b"))
    return "".join(parts)


def unpack_codeword(bits: str, cfg: QuantizerConfig) -> tuple[int, list[int]]:
    """Inverse of :func:`pack_codeword`; fields are popped from the tail."""
    if len(bits) != cfg.total_bits:
        raise MalformedCodewordError(
            f"codeword has {len(bits)} bits, expected {cfg.total_bits}")
    if bits.strip("01"):
        raise MalformedCodewordError("codeword may only contain '0' and '1'")
    codes = [0] * cfg.n_coords
    end = len(bits)
    for i in range(cfg.n_coords - 1, -1, -1):
        b = cfg.alloc[i]
        if b:
            codes[i] = int(bits[end - b:end], 2)
            end -= b
    header = int(bits[:cfg.header_bits], 2)
    if header >= cfg.n_cells:
        raise MalformedCodewordError(
            f"header value {header} exceeds the {cfg.n_cells} available cells")
    return header, codes


def codeword_to_bytes(bits: str) -> bytes:
    """Pack a '0'/'1' string MSB-first into bytes, zero-padded at the tail."""
    pad = (-len(bits)) % 8
    padded = bits + "0" * pad
    return bytes(int(padded[i:i + 8], 2) for i in range(0, len(padded), 8))


def codeword_from_bytes(data: bytes, cfg: QuantizerConfig) -> str:
    nbits = cfg.total_bits
    if len(data) != (nbits + 7) // 8:
        raise MalformedCodewordError(f"expected {(nbits + 7) // 8} bytes, got {len(data)}")
    return "".join(format(byte, "08b") for byte in data)[:nbits]


# -- scheme 1 real representative ---------------------------------------------

def real_representative(x) -> np.ndarray:
    """Real line of dimension 2D - 1 obtained after rotating x_1 onto the real axis."""
    x = np.asarray(x, dtype=np.complex128)
    phase = np.exp(-1j * np.angle(x[..., :1]))
    xr = x * phase
    return np.concatenate([xr.real, xr[..., 1:].imag], axis=-1)


def complex_from_real(y) -> np.ndarray:
    """Inverse of :func:`real_representative` (up to the removed phase)."""
    y = np.asarray(y, dtype=np.float64)
    d = y.shape[-1]
    if d % 2 == 0:
        raise DimensionError("real representatives have odd dimension 2D - 1")
    D = (d + 1) // 2
    x = y[..., :D].astype(np.complex128)
    x[..., 1:] += 1j * y[..., D:]
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


# -- batch encode / decode ----------------------------------------------------

def _check_dim(x: np.ndarray, cfg: QuantizerConfig) -> None:
    if x.shape[-1] != cfg.dim:
        raise DimensionError(f"expected vectors of dimension {cfg.dim}, got {x.shape[-1]}")


def encode_batch(x, cfg: QuantizerConfig) -> tuple[np.ndarray, np.ndarray]:
    """Headers (``i_star - 1``) and integer fields for a batch of lines."""
    x = np.atleast_2d(np.asarray(x))
    _check_dim(x, cfg)
    if cfg.scheme is Scheme.COMPLEX_SCHEME1:
        x = real_representative(x)
    elif cfg.scheme is Scheme.REAL and np.iscomplexobj(x):
        raise TypeError("REAL scheme quantizes real lines")
    cells = np.argmax(np.abs(x), axis=1) + 1
    if cfg.scheme is Scheme.COMPLEX_SCHEME2:
        a = complex_map(x, cells)
    else:
        a = real_map(x, cells)
    codes = scalar_quantize(a, np.asarray(cfg.alloc))
    return cells - 1, np.atleast_2d(codes)


def decode_batch(headers, codes, cfg: QuantizerConfig) -> np.ndarray:
    headers = np.atleast_1d(np.asarray(headers, dtype=np.int64))
    if np.any((headers < 0) | (headers >= cfg.n_cells)):
        raise MalformedCodewordError("header value outside the available cells")
    codes = np.asarray(codes, dtype=np.int64).reshape(len(headers), cfg.n_coords)
    a = scalar_dequantize(codes, np.asarray(cfg.alloc))
    a = np.atleast_2d(a)
    cells = headers + 1
    if cfg.scheme is Scheme.COMPLEX_SCHEME2:
        return complex_unmap(a, cells, cfg.dim)
    y = real_unmap(a, cells, cfg.real_dim)
    if cfg.scheme is Scheme.COMPLEX_SCHEME1:
        return complex_from_real(y)
    return y


def quantize(x, cfg: QuantizerConfig) -> np.ndarray:
    """Reconstruction Q(x) for a batch, skipping the text representation."""
    headers, codes = encode_batch(x, cfg)
    return decode_batch(headers, codes, cfg)


# -- single-vector encoders ---------------------------------------------------

def _require(cfg: QuantizerConfig, scheme: Scheme) -> None:
    if cfg.scheme is not scheme:
        raise ValueError(f"config is for {cfg.scheme.value}, not {scheme.value}")


def encode(x, cfg: QuantizerConfig) -> str:
    """Codeword string of a single line under any scheme."""
    x = np.asarray(x)
    if x.ndim != 1:
        raise DimensionError("encode takes a single vector; use encode_batch for batches")
    headers, codes = encode_batch(x, cfg)
    return pack_codeword(headers[0], codes[0], cfg)


def decode(bits: str, cfg: QuantizerConfig) -> np.ndarray:
    """Reconstructed unit vector for a codeword string."""
    header, codes = unpack_codeword(bits, cfg)
    return decode_batch([header], [codes], cfg)[0]


def encode_real(y, cfg: QuantizerConfig) -> str:
    _require(cfg, Scheme.REAL)
    return encode(y, cfg)


def decode_real(bits: str, cfg: QuantizerConfig) -> np.ndarray:
    _require(cfg, Scheme.REAL)
    return decode(bits, cfg)


def encode_scheme1(x, cfg: QuantizerConfig) -> str:
    _require(cfg, Scheme.COMPLEX_SCHEME1)
    return encode(x, cfg)


def decode_scheme1(bits: str, cfg: QuantizerConfig) -> np.ndarray:
    _require(cfg, Scheme.COMPLEX_SCHEME1)
    return decode(bits, cfg)


def encode_scheme2(x, cfg: QuantizerConfig) -> str:
    _require(cfg, Scheme.COMPLEX_SCHEME2)
    return encode(x, cfg)


def decode_scheme2(bits: str, cfg: QuantizerConfig) -> np.ndarray:
    _require(cfg, Scheme.COMPLEX_SCHEME2)
    return decode(bits, cfg)


class CubeSplitQuantizer:
    """Batch quantizer object used by the Monte Carlo harness."""

    def __init__(self, cfg: QuantizerConfig):
        self.cfg = cfg
        self.label = cfg.label
        self.dim = cfg.dim
        self.is_complex = cfg.scheme.is_complex
        self.total_bits = cfg.total_bits

    def __repr__(self):
        return f"CubeSplitQuantizer({self.cfg!r})"

    def quantize(self, x) -> np.ndarray:
        return quantize(x, self.cfg)
