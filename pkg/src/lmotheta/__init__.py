"""Exact two-loop surgery formulas from Seifert matrices."""
from .bandtwist import BandTwistData, assemble_seifert, theta_delta_twist, z_matrix
from .iota import OpenDiagram, casson_pipeline, iota
from .ncmatrix import NCMatrix, nc_inverse
from .ncseries import K, KP, NCSeries, Truncation
from .oneloop import MultiWheel, OneLoop, psi_log, psi_power, wheel_trace
from .scalars import LaurentPoly, TaylorSeries, a2_coefficient, laurent_to_taylor
from .seifert import Component, SeifertData, alexander_matrix, alexander_polynomial, validate
from .surgery import casson_delta, theta_delta, theta_delta_fast, theta_delta_oracle, w_matrix
from .twoloop import TwoLoop, pair_strut, specialize_k0

__version__ = "0.1.0"

__all__ = [
    "BandTwistData",
    "Component",
    "K",
    "KP",
    "LaurentPoly",
    "MultiWheel",
    "NCMatrix",
    "NCSeries",
    "OneLoop",
    "OpenDiagram",
    "SeifertData",
    "TaylorSeries",
    "Truncation",
    "TwoLoop",
    "a2_coefficient",
    "alexander_matrix",
    "alexander_polynomial",
    "assemble_seifert",
    "casson_delta",
    "casson_pipeline",
    "iota",
    "laurent_to_taylor",
    "nc_inverse",
    "pair_strut",
    "psi_log",
    "psi_power",
    "specialize_k0",
    "theta_delta",
    "theta_delta_fast",
    "theta_delta_oracle",
    "theta_delta_twist",
    "validate",
    "w_matrix",
    "wheel_trace",
    "z_matrix",
]
