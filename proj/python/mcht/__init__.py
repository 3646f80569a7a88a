# SPDX-License-Identifier: Apache-2.0
"""Massive MIMO channel hardening synthesis and analysis.

Thin re-export of the compiled extension. Everything user-facing lives in
:mod:`mcht._mcht`; see the individual docstrings there.
"""

from ._mcht import (
    ArrayGeometry,
    ChannelTensor,
    DataError,
    HardeningCurve,
    InvariantError,
    UsageError,
    __version__,
    build_cylindrical,
    build_linear,
    build_planar,
    cv_squared_closed,
    default_indoor_config_json,
    exponential_reference_cdf_db,
    gain_cdf,
    gain_map,
    gen_finite_scatterer,
    gen_gscm,
    gen_iid_gaussian,
    gen_keyhole,
    hardening_curve,
    order_antennas,
    pol_ratio_stats,
    read_tensor,
    std_surface,
    write_tensor,
)

__all__ = [
    "ArrayGeometry",
    "ChannelTensor",
    "DataError",
    "HardeningCurve",
    "InvariantError",
    "UsageError",
    "__version__",
    "build_cylindrical",
    "build_linear",
    "build_planar",
    "cv_squared_closed",
    "default_indoor_config_json",
    "exponential_reference_cdf_db",
    "gain_cdf",
    "gain_map",
    "gen_finite_scatterer",
    "gen_gscm",
    "gen_iid_gaussian",
    "gen_keyhole",
    "hardening_curve",
    "order_antennas",
    "pol_ratio_stats",
    "read_tensor",
    "std_surface",
    "write_tensor",
]
