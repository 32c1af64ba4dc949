# SPDX-License-Identifier: Apache-2.0
"""Passive-beamforming simulator: geometry, channels, scattering synthesis.

Thin Python face over the compiled core. The heavy lifting (Monte-Carlo
experiments, file outputs, gates) lives in the ``bdris-sim`` command-line
tool; this package exposes the building blocks for interactive use.
"""

from ._core import (
    ArrayGeometry,
    CavReport,
    Grouping,
    __version__,
    active_array_weights,
    beam_pattern_summary,
    bs_ris_channel,
    build_geometry,
    cav,
    circuit_complexity,
    configure_bdris,
    configure_dris,
    gain_ceiling_db,
    gain_floor_db,
    make_grouping,
    sample_user_channel,
    steering_vector,
)

__all__ = [
    "ArrayGeometry",
    "CavReport",
    "Grouping",
    "__version__",
    "active_array_weights",
    "beam_pattern_summary",
    "bs_ris_channel",
    "build_geometry",
    "cav",
    "circuit_complexity",
    "configure_bdris",
    "configure_dris",
    "gain_ceiling_db",
    "gain_floor_db",
    "make_grouping",
    "sample_user_channel",
    "steering_vector",
]
