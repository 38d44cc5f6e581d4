"""Exact intersection numbers on powers of a curve and the discriminant of
tautological bundles on its symmetric products."""

from .chow import (
    AmbientError,
    ChowClass,
    Configuration,
    config,
    configurations,
    diagonal,
    eta,
    fundamental,
    integrate,
    multiply,
    point,
    power,
    pullback_insert_first,
    pushforward_forget_first,
    symmetric_classes,
)
from .poly import MissingSymbolError, RatPoly
from .stability import (
    StabilityVerdict,
    Verdict,
    bogomolov_gap,
    classify_bundle,
    classify_slope,
    moduli_expected_dim,
)
from .taut import (
    BundleSpec,
    GradedClass,
    c1_taut_closed,
    ch_taut,
    discriminant,
    integral_c1sq,
    integral_ch2,
)

__version__ = "0.1.0"
