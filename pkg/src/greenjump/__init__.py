"""Exact Green's pairings on reduction graphs of semistable curves,
height-jumping coefficients, boundary extension classes, and a floating
point theta harness for the degeneration slope of the canonical pairing."""

from .blocks import (
    Block,
    BlockDecomposition,
    BridgeType,
    additivity_sum,
    bridge_type,
    canonical_pair,
    decompose,
    pushforward,
)
from .graphs import (
    Divisor,
    MarkedGraph,
    MultiGraph,
    canonical_divisor,
    cycle_graph,
    genus,
    laplacian,
)
from .green import (
    AdmissibleInput,
    admissible_pairing,
    green,
    phi,
    pseudo_inverse,
    resistance,
    resistance_pairing,
)
from .jumping import (
    bridge_counts,
    jump,
    jump_decomposed,
    reduction_divisor,
)
from .moduli import (
    PicClass,
    a_coeff,
    a_coeff_zero,
    convert_to_kappa_psi,
    deligne_self_pairing_expansion,
    lear_class_deligne_basis,
    lear_class_kappa_psi,
)
from .ratmat import RationalMatrix
from .theta import (
    PeriodFamily,
    PeriodPoint,
    SectionPath,
    SlopeReport,
    cycle_family,
    eta_norm,
    im_inverse,
    period,
    predicted_cycle_slope,
    slope_check,
    theta,
    theta_norm,
)

__version__ = "0.1.0"
