"""Abel generating series, Toeplitz affine feedback, and the Hopf algebra of their coordinates."""
from .abelfeed import (
    Realization,
    abel_four_ways,
    check_grading_preservation,
    devlin,
    feedback_product,
    ferfera,
    realization_inverse,
)
from .compose import (
    DeltaPowers,
    ToeplitzSeries,
    group_inverse,
    group_product,
    mixed_compose,
    pre_lie,
    toeplitz_shuffle,
    toeplitz_shuffle_inverse,
)
from .hopf import CoordGen, HopfAlgebra, Tensor, eval_coord
from .polyring import CPoly, Symbol, UPoly
from .report import Report
from .series import NCSeries, graded_component, shuffle, shuffle_inverse, shuffle_power

__all__ = [
    "CPoly",
    "CoordGen",
    "DeltaPowers",
    "HopfAlgebra",
    "NCSeries",
    "Realization",
    "Report",
    "Symbol",
    "Tensor",
    "ToeplitzSeries",
    "UPoly",
    "abel_four_ways",
    "check_grading_preservation",
    "devlin",
    "eval_coord",
    "feedback_product",
    "ferfera",
    "graded_component",
    "group_inverse",
    "group_product",
    "mixed_compose",
    "pre_lie",
    "realization_inverse",
    "shuffle",
    "shuffle_inverse",
    "shuffle_power",
    "toeplitz_shuffle",
    "toeplitz_shuffle_inverse",
]
