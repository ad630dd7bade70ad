"""Nonuniform quantized SC/SCL decoding of polar codes."""

from .channel import ChannelParams, UniformGrid, design_uniform_grid, ebn0_to_sigma, grid_distribution
from .construction import CodeConfig, construct_info_set, encode, polar_transform
from .decoders import f_fn, g_fn, hard_decision, pm_update, sc_decode, scl_decode
from .density_evolution import (
    LutSet,
    build_node_luts,
    f_output_distribution,
    g_output_distribution,
    run_quantized_de,
)
from .errors import ConfigError, ParameterError, PolarQuantError, TableFormatError
from .quantized import qsc_decode, qscl_decode, quantize_channel_llrs, uniform_baseline_decode
from .quantizer import (
    DiscreteDistribution,
    Quantizer,
    apply_quantizer,
    brute_force_quantizer,
    centroid,
    design_min_distortion_quantizer,
    design_symmetric_quantizer,
    design_uniform_quantizer,
    merge_duplicates,
    partial_distortion,
)
from .sim import BlerPoint, SimConfig, run_bler_point, run_sweep
from .tables_io import export_tables, import_tables

__all__ = [
    "BlerPoint", "ChannelParams", "CodeConfig", "ConfigError", "DiscreteDistribution", "LutSet",
    "ParameterError", "PolarQuantError", "Quantizer", "SimConfig", "TableFormatError", "UniformGrid",
    "apply_quantizer", "brute_force_quantizer", "build_node_luts", "centroid", "construct_info_set",
    "design_min_distortion_quantizer", "design_symmetric_quantizer", "design_uniform_grid",
    "design_uniform_quantizer", "ebn0_to_sigma", "encode", "export_tables", "f_fn",
    "f_output_distribution", "g_fn", "g_output_distribution", "grid_distribution", "hard_decision",
    "import_tables", "merge_duplicates", "partial_distortion", "pm_update", "polar_transform",
    "qsc_decode", "qscl_decode", "quantize_channel_llrs", "run_bler_point", "run_quantized_de",
    "run_sweep", "sc_decode", "scl_decode", "uniform_baseline_decode",
]
