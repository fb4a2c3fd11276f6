"""Fast consistency checks run by ``cubesplit selftest``."""

from __future__ import annotations

import numpy as np

from . import bench
from .compander import complex_map, complex_unmap, real_map, real_unmap
from .core import SeededRng
from .quantizer import QuantizerConfig, Scheme, codebook_size, decode_batch, encode_batch


def _checks(samples: int, seed: int):
    cfg = QuantizerConfig(Scheme.REAL, 3, (3, 3))
    yield "codebook size REAL d=3 B=(3,3) is 192", codebook_size(cfg) == 192

    gen = SeededRng(seed, 0).generator
    a = gen.uniform(1e-6, 1 - 1e-6, size=(1000, 7))
    cells = gen.integers(1, 9, size=1000)
    err = np.max(np.abs(real_map(real_unmap(a, cells, 8), cells) - a))
    yield f"real map/unmap inverse (max err {err:.2e} < 1e-10)", err < 1e-10

    a = gen.uniform(1e-6, 1 - 1e-6, size=(1000, 14))
    err = np.max(np.abs(complex_map(complex_unmap(a, cells, 8), cells) - a))
    yield f"complex map/unmap inverse (max err {err:.2e} < 1e-8)", err < 1e-8

    for scheme in Scheme:
        cfg = QuantizerConfig.uniform(scheme, 4, 4)
        x = bench.sample_sources(4, 2000, seed, complex_=scheme.is_complex)
        h, c = encode_batch(x, cfg)
        xh = decode_batch(h, c, cfg)
        h2, c2 = encode_batch(xh, cfg)
        same = np.mean((h == h2) & np.all(c == c2, axis=1))
        yield f"{scheme.value} re-encoding is idempotent ({same:.4f})", same >= 0.999

    # the uniform-marginal property is exact in dimension 2
    for scheme in (Scheme.REAL, Scheme.COMPLEX_SCHEME2):
        reps = bench.uniformity(scheme, 2, samples, seed)
        worst = max(r.statistic / r.critical_001 for r in reps)
        yield f"{scheme.value} dim 2 cube coordinates pass KS (worst ratio {worst:.2f})", worst < 1

    r1 = bench.estimate_distortion(QuantizerConfig.uniform("cs2", 4, 3), 4, 4096, seed)
    r2 = bench.estimate_distortion(QuantizerConfig.uniform("cs2", 4, 3), 4, 4096, seed, workers=2)
    yield "distortion estimate independent of worker count", r1 == r2


def run_selftest(out, samples: int = 20_000, seed: int = 0) -> bool:
    ok = True
    for name, passed in _checks(samples, seed):
        ok &= bool(passed)
        out.write(f"{'PASS' if passed else 'FAIL'}  {name}\n")
    return ok
