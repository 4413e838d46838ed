"""Exact free-subgroup counting sequences for lifts of the inhomogeneous
modular group and of the q=4 Hecke group, their closed-form rational
approximants, and their behaviour modulo prime powers.

All arithmetic is exact (big integers, rationals, Z/p^alpha); every value is
immutable after construction, so everything here is safe to use from
concurrent tasks.
"""

from .exact import ModElem, ModRingCtx, mod_inverse, mod_reduce, pochhammer, vp_rational
from .groups import (
    GroupFamily,
    SubgroupSeries,
    free_subgroup_numbers,
    hecke4_invariants,
    params_for,
)
from .poly import (
    Factorization,
    Poly,
    Series,
    ext_gcd_coprime,
    factor_mod_p,
    hensel_lift,
    series_div,
)
from .periods import PeriodReport, analyze, detect_period, order_bound, predicted_period
from .reduce import (
    ModSeries,
    RationalFormModPA,
    ReduceConfig,
    denominator_base,
    emit,
    expand_form,
    pade_route,
    partial_fractions,
    rational_form,
    reduce_series,
)
from .riccati import (
    PadePair,
    RiccatiParams,
    build_pade,
    pade_coeff_p,
    pade_coeff_q,
    pade_oracle,
    pade_pair,
    residual_constant,
    riccati_series,
    verify_gosper,
    verify_identity,
)
from .valuations import (
    ValuationCase,
    lemma_divisibility,
    legendre_vp_sum,
    qnk_transformed,
    vp_pochhammer_ratio,
)

__version__ = "0.1.0"
