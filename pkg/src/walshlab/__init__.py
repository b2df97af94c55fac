"""Dyadic harmonic analysis at finite resolution: Walsh and Walsh-Kaczmarz
transforms, T and Norlund means, maximal operators, martingale Hardy norms
and the lacunary divergence construction."""

from .dyadic import (
    DyadicInterval,
    DyadicPoint,
    GridFunction,
    integrate,
    lp_norm,
    weak_lp_quasinorm,
    xor_add,
)
from .systems import (
    SpectralCoeffs,
    SystemKind,
    fourier_coeffs,
    fwht,
    kaczmarz,
    kaczmarz_function,
    kaczmarz_index_map,
    msb,
    rademacher,
    synthesize,
    walsh,
    walsh_function,
)
from .weights import BUILTIN_FAMILIES, MeanFamily, Monotonicity, Orientation, WeightSequence, k_plus_1, make_weights
from .summability import (
    dirichlet_kernel,
    fejer_kernel,
    fejer_majorant,
    maximal_operator,
    norlund_mean,
    partial_sum,
    t_kernel,
    t_mean,
    weight_diagnostics,
)
from .hardy import condexp, hardy_norm, is_p_atom, maximal_function
from .counterexample import (
    CounterexampleSpec,
    build_counterexample,
    divergence_experiment,
    validate_alphas,
)

__version__ = "0.1.0"
