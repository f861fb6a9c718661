"""Fast Hankel and block Hankel tensor products, Tucker decompositions and
exponential data fitting."""

from ._core import (
    DegenerateError,
    DimensionError,
    anti_circulant_spectrum,
    bhhb_dense,
    bhhb_tvp,
    degree_of_freedom,
    estimate_poles_1d,
    estimate_poles_2d,
    hankel_dense,
    hankel_tvp,
    hooi,
    hooi_square_hankel,
    mode1_singular_values,
    synth_1d,
    synth_2d,
    tls_solve,
    two_peak_poles,
)

__all__ = [
    "DegenerateError",
    "DimensionError",
    "anti_circulant_spectrum",
    "bhhb_dense",
    "bhhb_tvp",
    "degree_of_freedom",
    "estimate_poles_1d",
    "estimate_poles_2d",
    "hankel_dense",
    "hankel_tvp",
    "hooi",
    "hooi_square_hankel",
    "mode1_singular_values",
    "synth_1d",
    "synth_2d",
    "tls_solve",
    "two_peak_poles",
]
