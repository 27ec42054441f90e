"""Enumeration and verification of monomial bases for B2^(1) and A1^(1) modules."""

from .algebra import Color, FiniteWeight, Part, color_weight, lower, sl2_lower
from .characters import A1_AFFINE, B2_AFFINE, AffineDatum, graded_dims, weight_multiplicities
from .counts import WeightedCount
from .partitions import (
    ColoredPartition,
    DominantWeight,
    SemiInfiniteMonomial,
    Sl2Partition,
    enumerate_admissible,
    enumerate_sl2,
    find_leading_term_divisor,
    satisfies_dc,
    satisfies_ic,
    semi_infinite_multiplicities,
)
from .presentation import (
    GradedPolynomial,
    IdealTruncation,
    graded_quotient_dims,
    ideal_generators_A1,
    ideal_generators_B2,
    normal_form,
)
from .verify import CheckReport

__version__ = "0.1.0"
