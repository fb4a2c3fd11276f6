"""Monte Carlo distortion estimates, KS uniformity checks and CSV reports."""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .baselines import distortion_bounds
from .compander import complex_map, local_coordinates, rayleigh_radius_sq, real_map
from .core import SeededRng, chordal_distance_sq, sample_uniform_complex, sample_uniform_real
from .quantizer import CubeSplitQuantizer, QuantizerConfig, Scheme, real_representative

# Samples are drawn in fixed-size chunks; chunk c always comes from stream c,
# so results depend on (seed, n_samples) only, never on the worker count.
CHUNK = 8192

CSV_HEADER = ("scheme,D,total_bits,bits_per_dim,samples,distortion,distortion_db,"
              "stderr,lower_bound,upper_bound,seed")


def _fmt(v: float) -> str:
    return f"{v:.17g}"


@dataclass(frozen=True)
class DistortionReport:
    scheme: str
    D: int
    total_bits: int
    bits_per_dim: float
    samples: int
    distortion: float
    distortion_db: float
    stderr: float
    lower_bound: float
    upper_bound: float
    seed: int

    def csv_row(self) -> str:
        return ",".join([
            self.scheme, str(self.D), str(self.total_bits), _fmt(self.bits_per_dim),
            str(self.samples), _fmt(self.distortion), _fmt(self.distortion_db),
            _fmt(self.stderr), _fmt(self.lower_bound), _fmt(self.upper_bound),
            str(self.seed),
        ])


def sample_sources(D: int, n_samples: int, seed: int, complex_: bool = True,
                   workers: int = 1) -> np.ndarray:
    """``n_samples`` uniform lines, reproducible from ``seed`` alone."""
    return np.concatenate(list(_map_chunks(
        lambda x: x, D, n_samples, seed, complex_, workers)))


def _map_chunks(fn: Callable[[np.ndarray], np.ndarray], D: int, n_samples: int,
                seed: int, complex_: bool, workers: int):
    sampler = sample_uniform_complex if complex_ else sample_uniform_real
    n_chunks = math.ceil(n_samples / CHUNK)

    def run(c):
        size = min(CHUNK, n_samples - c * CHUNK)
        return fn(sampler(D, SeededRng(seed, c), size=size))

    if workers <= 1 or n_chunks <= 1:
        return [run(c) for c in range(n_chunks)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, range(n_chunks)))


def squared_errors(quantizer, n_samples: int, seed: int, workers: int = 1) -> np.ndarray:
    """Per-sample squared chordal error, in sample order."""
    def err(x):
        return chordal_distance_sq(x, quantizer.quantize(x))
    parts = _map_chunks(err, quantizer.dim, n_samples, seed, quantizer.is_complex, workers)
    return np.concatenate(parts)


def estimate_distortion(quantizer, D: int, n_samples: int, seed: int,
                        workers: int = 1) -> DistortionReport:
    """Mean squared chordal error of ``quantizer`` on a uniform source.

    ``quantizer`` needs ``quantize(batch)``, ``dim``, ``is_complex``,
    ``total_bits`` and ``label``; a :class:`QuantizerConfig` is wrapped
    automatically.
    """
    if isinstance(quantizer, QuantizerConfig):
        quantizer = CubeSplitQuantizer(quantizer)
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if quantizer.dim != D:
        raise ValueError(f"quantizer dimension {quantizer.dim} does not match D={D}")
    err = squared_errors(quantizer, n_samples, seed, workers)
    # np.sum on a contiguous array is a fixed-order pairwise reduction
    dist = float(np.sum(err) / n_samples)
    stderr = float(np.std(err, ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    bounds = distortion_bounds(D, quantizer.total_bits)
    return DistortionReport(
        scheme=quantizer.label, D=D, total_bits=quantizer.total_bits,
        bits_per_dim=quantizer.total_bits / D, samples=n_samples,
        distortion=dist,
        distortion_db=10.0 * math.log10(dist) if dist > 0 else -math.inf,
        stderr=stderr, lower_bound=bounds.lower, upper_bound=bounds.upper, seed=seed)


def sweep(configs: Iterable, n_samples: int, seed: int, workers: int = 1) -> str:
    """CSV table with one report per config, in the given order."""
    lines = [CSV_HEADER]
    for cfg in configs:
        q = CubeSplitQuantizer(cfg) if isinstance(cfg, QuantizerConfig) else cfg
        lines.append(estimate_distortion(q, q.dim, n_samples, seed, workers).csv_row())
    return "\n".join(lines) + "\n"


def read_csv(text: str) -> list[dict]:
    import csv
    return list(csv.DictReader(io.StringIO(text)))


# -- KS uniformity ------------------------------------------------------------

@dataclass(frozen=True)
class KsReport:
    coordinate: int
    n: int
    statistic: float
    critical_001: float

    @property
    def passed(self) -> bool:
        return self.statistic < self.critical_001


def ks_statistic(samples, cdf: Callable[[np.ndarray], np.ndarray] | None = None) -> float:
    """One-sample Kolmogorov-Smirnov statistic against ``cdf`` (uniform by default)."""
    s = np.sort(np.asarray(samples, dtype=np.float64).ravel())
    n = s.size
    if n == 0:
        raise ValueError("KS statistic needs at least one sample")
    f = s if cdf is None else np.asarray(cdf(s), dtype=np.float64)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_critical_001(n: int) -> float:
    """Asymptotic one-sample KS critical value at level 0.01."""
    return 1.628 / math.sqrt(n)


def ks_uniformity(samples, coordinate: int = 0) -> KsReport:
    s = np.asarray(samples, dtype=np.float64).ravel()
    return KsReport(coordinate=coordinate, n=s.size, statistic=ks_statistic(s),
                    critical_001=ks_critical_001(s.size))


def cube_coordinates(x: np.ndarray, scheme: Scheme) -> np.ndarray:
    """Companded cube coordinates of a batch, each line in its own cell."""
    scheme = Scheme(scheme)
    if scheme is Scheme.COMPLEX_SCHEME1:
        x = real_representative(x)
    cells = np.argmax(np.abs(x), axis=1) + 1
    if scheme is Scheme.COMPLEX_SCHEME2:
        return complex_map(x, cells)
    return real_map(x, cells)


def uniformity(scheme, dim: int, n_samples: int, seed: int) -> list[KsReport]:
    """KS report for every cube coordinate of a uniform source."""
    scheme = Scheme(scheme)
    x = sample_sources(dim, n_samples, seed, complex_=scheme.is_complex)
    a = cube_coordinates(x, scheme)
    return [ks_uniformity(a[:, j], coordinate=j + 1) for j in range(a.shape[1])]


def complex_radial_laws(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(|t_i|^2, |w_i|) for a batch of complex lines, all local coordinates pooled
    per column; under a uniform source these follow 2x/(x+1) on [0, 1] and the
    unit Rayleigh law."""
    cells = np.argmax(np.abs(x), axis=1) + 1
    r = np.abs(local_coordinates(x, cells))
    return r * r, np.sqrt(rayleigh_radius_sq(np.minimum(r, 1.0 - 1e-15)))


def fisher22_truncated_cdf(x):
    return 2.0 * x / (x + 1.0)


def rayleigh_cdf(r):
    return -np.expm1(-0.5 * np.asarray(r) ** 2)


def format_ks_reports(reports: Sequence[KsReport]) -> str:
    lines = ["coordinate,n,statistic,critical_001,pass"]
    for r in reports:
        lines.append(f"{r.coordinate},{r.n},{_fmt(r.statistic)},{_fmt(r.critical_001)},"
                     f"{'yes' if r.passed else 'no'}")
    return "\n".join(lines) + "\n"
