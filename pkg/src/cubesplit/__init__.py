"""Cube-split structured quantizers on the Grassmannian of lines."""

from .baselines import (
    BoundsResult, distortion_bounds, exhaustive_encode, fourier_codebook, fourier_encode,
    random_codebook, scalar_baseline,
)
from .bench import DistortionReport, KsReport, estimate_distortion, ks_uniformity, sweep
from .compander import complex_map, complex_unmap, real_map, real_unmap
from .core import (
    CubeSplitError, DimensionError, MalformedCodewordError, OutsideCellError, SeededRng,
    chordal_distance_complex, chordal_distance_real, sample_uniform_complex, sample_uniform_real,
)
from .normal import std_normal_cdf, std_normal_cdf_inv
from .quantizer import (
    QuantizerConfig, Scheme, bits_per_dimension, cell_index_complex, cell_index_real,
    codebook_size, complex_from_real, decode, decode_real, decode_scheme1, decode_scheme2,
    encode, encode_real, encode_scheme1, encode_scheme2, quantize, real_representative,
    scalar_dequantize, scalar_quantize,
)

__version__ = "0.1.0"
