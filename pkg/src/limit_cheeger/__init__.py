"""Cheeger constants, spectra and co-area identities for graphons and graphings."""
from .cheeger import (
    CheegerReport,
    DegenerateCutError,
    FractionalPartition,
    azuma_lower_bound,
    doubling_demo,
    fractional_cheeger,
    graphon_cheeger,
    grid_oracle,
    integral_cheeger,
    ratio_fractional,
    ratio_h_graphon,
    ratio_lower_bound,
    symmetric_cheeger,
)
from .coarea import CoareaReport, coarea_graphon, superlevel
from .graphing import (
    Graphing,
    cheeger_atomic,
    coarea_graphing,
    e_graphing,
    graphing_from_graph,
    lambda_atomic,
    ratio_h_graphing,
    rotation_cut,
    rotation_graphing,
    rotation_lambda_upper,
    symmetry_audit,
    vol_graphing,
)
from .graphon import StepGraphon, StepKernel, WeightedGraph, cut_norm, ew, from_graph, vol
from .intervals import InputError, IntervalSet, StepFunction, normalize, parse_interval_set
from .spectral import lambda_graph, lambda_graphon, rayleigh, verify_sandwich

__version__ = "0.1.0"
