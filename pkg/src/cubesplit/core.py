"""Lines on real and complex Grassmannians: validation, chordal distance,
uniform sampling and the plain-text vector format.

A line is represented by any unit-norm spanning vector, stored as a 1-D numpy
array (float64 for real lines, complex128 for complex lines).  Batches are 2-D
arrays with one line per row; every function here works on the last axis.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Iterator, TextIO

import numpy as np

NORM_TOL = 1e-12


class CubeSplitError(ValueError):
    """Base class for data errors raised by this package."""


class DimensionError(CubeSplitError):
    pass


class OutsideCellError(CubeSplitError):
    pass


class MalformedCodewordError(CubeSplitError):
    pass


class SeededRng:
    """Reproducible random stream identified by ``(seed, stream_id)``.

    Backed by the counter-based Philox generator, keyed through a
    ``SeedSequence`` whose spawn key is the stream id, so distinct streams are
    independent and every stream is identical across platforms.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        if not (0 <= seed < 2**64 and 0 <= stream_id < 2**64):
            raise ValueError("seed and stream_id must be 64-bit unsigned integers")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.Philox(ss))

    def __repr__(self):
        return f"SeededRng(seed={self.seed}, stream_id={self.stream_id})"

    def standard_normal(self, size) -> np.ndarray:
        return self.generator.standard_normal(size)


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, SeededRng):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected SeededRng or numpy Generator, got {type(rng).__name__}")


def as_real_line(v, normalize: bool = False) -> np.ndarray:
    """Validate ``v`` as a real line (or batch of lines) and return it as float64."""
    v = np.asarray(v)
    if np.iscomplexobj(v):
        raise TypeError("real line expected, got complex values")
    v = v.astype(np.float64)
    return _check_line(v, normalize)


def as_complex_line(v, normalize: bool = False) -> np.ndarray:
    """Validate ``v`` as a complex line (or batch of lines) and return it as complex128."""
    v = np.asarray(v).astype(np.complex128)
    return _check_line(v, normalize)


def _check_line(v: np.ndarray, normalize: bool) -> np.ndarray:
    if v.ndim not in (1, 2):
        raise DimensionError(f"expected a vector or a batch of vectors, got shape {v.shape}")
    if v.shape[-1] < 2:
        raise DimensionError(f"lines need dimension >= 2, got {v.shape[-1]}")
    norms = np.linalg.norm(v, axis=-1)
    if normalize:
        if np.any(norms == 0) or not np.all(np.isfinite(norms)):
            raise CubeSplitError("cannot normalize a zero or non-finite vector")
        return v / norms[..., None]
    if np.any(np.abs(norms - 1.0) > NORM_TOL):
        raise CubeSplitError("line representatives must have unit Euclidean norm")
    return v


def _inner_sq(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape[-1] != y.shape[-1]:
        raise DimensionError(f"dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    return np.abs(np.sum(np.conj(x) * y, axis=-1)) ** 2


def chordal_distance_real(x, y):
    """sqrt(1 - (x.y)^2); the radicand is clamped at zero."""
    x = np.asarray(x)
    y = np.asarray(y)
    if np.iscomplexobj(x) or np.iscomplexobj(y):
        raise TypeError("use chordal_distance_complex for complex lines")
    return np.sqrt(np.maximum(1.0 - _inner_sq(x, y), 0.0))


def chordal_distance_complex(x, y):
    """sqrt(1 - |x^H y|^2); the radicand is clamped at zero."""
    return np.sqrt(np.maximum(1.0 - _inner_sq(x, y), 0.0))


def chordal_distance_sq(x, y):
    """Squared chordal distance for real or complex lines, clamped to [0, 1]."""
    return np.clip(1.0 - _inner_sq(x, y), 0.0, 1.0)


def sample_uniform_real(d: int, rng, size: int | None = None) -> np.ndarray:
    """Uniform line(s) on G(R^d, 1): normalized standard Gaussian vectors."""
    if d < 2:
        raise DimensionError(f"d must be >= 2, got {d}")
    gen = _as_generator(rng)
    shape = (d,) if size is None else (size, d)
    g = gen.standard_normal(shape)
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def sample_uniform_complex(D: int, rng, size: int | None = None) -> np.ndarray:
    """Uniform line(s) on G(C^D, 1): normalized circular complex Gaussian vectors."""
    if D < 2:
        raise DimensionError(f"D must be >= 2, got {D}")
    gen = _as_generator(rng)
    shape = (D,) if size is None else (size, D)
    g = gen.standard_normal(shape + (2,)) * np.sqrt(0.5)
    z = g[..., 0] + 1j * g[..., 1]
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


# -- text format -------------------------------------------------------------

def format_vector(v) -> str:
    """One text line: reals as decimals, complex numbers as ``re im`` pairs."""
    v = np.asarray(v)
    if np.iscomplexobj(v):
        parts = []
        for c in v:
            parts.append(f"{c.real:.17g}")
            parts.append(f"{c.imag:.17g}")
        return " ".join(parts)
    return " ".join(f"{float(c):.17g}" for c in v)


def parse_vector(line: str, complex_: bool = False) -> np.ndarray:
    fields = line.split()
    try:
        values = np.array([float(f) for f in fields], dtype=np.float64)
    except ValueError as exc:
        raise CubeSplitError(f"cannot parse vector line: {line.strip()!r}") from exc
    if complex_:
        if len(values) % 2:
            raise CubeSplitError("complex vectors need an even number of fields (re im pairs)")
        return values[0::2] + 1j * values[1::2]
    return values


def read_vectors(stream: TextIO | Iterable[str], complex_: bool = False) -> Iterator[np.ndarray]:
    """Yield one vector per non-blank line."""
    for line in stream:
        if line.strip():
            yield parse_vector(line, complex_)


def write_vectors(vectors, stream: TextIO) -> None:
    for v in vectors:
        stream.write(format_vector(v) + "\n")


def renormalize_input(v: np.ndarray, strict_tol: float = 1e-6, loose_tol: float = 1e-3) -> np.ndarray:
    """Normalize user-supplied vectors, warning when the norm is off by more than
    ``strict_tol`` and refusing beyond ``loose_tol``."""
    n = float(np.linalg.norm(v))
    if n == 0.0 or not np.isfinite(n):
        raise CubeSplitError("zero or non-finite vector")
    err = abs(n - 1.0)
    if err > loose_tol:
        raise CubeSplitError(f"vector norm {n:.6g} is not 1 (tolerance {loose_tol:g})")
    if err > strict_tol:
        warnings.warn(f"renormalizing vector with norm {n:.9g}", stacklevel=2)
    return v / n
