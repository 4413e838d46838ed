"""Eventual-period detection for the reduced counting sequences, with the
classical predicted values and a certified order bound.

detect_period scans candidate periods T in increasing order and, for each,
finds the minimal preperiod on the available window; a candidate is accepted
only when the window covers at least three full periods past the preperiod.
When a certified bound is supplied (a known multiple of the true period,
derived from the rational form), only its divisors need testing, which keeps
very long horizons tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import HorizonTooShort
from .exact import ModRingCtx
from .groups import MODULAR3, GroupFamily
from .reduce import (
    ModSeries,
    RationalFormModPA,
    ReduceConfig,
    expand_form,
    rational_form,
    reduce_series,
)

# safety margin: a period T is confirmed only if the window past the
# preperiod spans at least MARGIN * T coefficients
_MARGIN = 3

# horizons up to this length use the direct recurrence; longer ones expand
# the (already verified) rational form, which costs O(length * degree)
_DIRECT_LIMIT = 40_000


@dataclass(frozen=True)
class PeriodReport:
    ctx: ModRingCtx
    preperiod: int
    period: int
    verified_horizon: int
    certificate: int | None = None  # order bound the period must divide


def _min_preperiod(coeffs, T: int) -> int:
    """Smallest mu with a[i] == a[i+T] for all i in [mu, len-T)."""
    n = len(coeffs)
    i = n - T - 1
    while i >= 0 and coeffs[i] == coeffs[i + T]:
        i -= 1
    return i + 1


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def detect_period(series: ModSeries, certificate_bound: int | None = None) -> PeriodReport:
    """Minimal (preperiod, period) of the window, exhaustively or over the
    divisors of a certified bound.  Raises HorizonTooShort when nothing is
    confirmed with the safety margin."""
    coeffs = series.coeffs
    n = len(coeffs)
    if certificate_bound is not None:
        candidates = [t for t in _divisors(certificate_bound) if _MARGIN * t <= n]
    else:
        candidates = range(1, n // _MARGIN + 1)
    for T in candidates:
        # cheap prefilter before the full backward scan
        if coeffs[n - T : n] != coeffs[n - 2 * T : n - T]:
            continue
        mu = _min_preperiod(coeffs, T)
        if n - mu >= _MARGIN * T:
            return PeriodReport(series.ctx, mu, T, n, certificate_bound)
    raise HorizonTooShort(
        f"no period confirmed with margin {_MARGIN} in {n} terms"
    )


def predicted_period(family: GroupFamily, p: int, alpha: int) -> int | None:
    """Known minimal periods; None where no classical value is recorded."""
    if family.kind != MODULAR3:
        return None
    if p == 7:
        return 6 * 7 ** (alpha - 1)
    if p == 11:
        return 11 ** (alpha - 1)
    if p == 13:
        return 12 * 13 ** (alpha - 1)
    if p == 17 and alpha <= 3:
        return {1: 6 * 16, 2: 18 * 16 * 17, 3: 102 * 16 * 17**2}[alpha]
    return None


def _ceil_log(p: int, x: int) -> int:
    """Smallest e >= 0 with p^e >= x."""
    e = 0
    v = 1
    while v < x:
        v *= p
        e += 1
    return e


def order_bound(form: RationalFormModPA) -> int:
    """A certified multiple of the eventual period of the expanded form.

    Per irreducible factor of degree d' the coefficient stream of
    residue/factor^s is periodic with period dividing
    (p^d' - 1) * p^(alpha - 1 + ceil(log_p(alpha * d'))); the bounds combine
    by lcm.  The detected period must divide the result.
    """
    if form.d < 1:
        raise ValueError("order bound needs at least one denominator factor")
    p, alpha = form.ctx.p, form.ctx.alpha
    bound = 1
    seen = set()
    for t in form.fractions:
        if t.factor in seen:
            continue
        seen.add(t.factor)
        dp = t.factor.degree
        b = (p**dp - 1) * p ** (alpha - 1 + _ceil_log(p, alpha * dp))
        bound = bound * b // gcd(bound, b)
    return bound


@dataclass(frozen=True)
class PeriodAnalysis:
    report: PeriodReport
    predicted: int | None
    match: bool | None
    order_bound: int | None
    form: RationalFormModPA


def analyze(
    family: GroupFamily,
    ctx: ModRingCtx,
    horizon: int | None = None,
    config: ReduceConfig = ReduceConfig(),
) -> PeriodAnalysis:
    """Full pipeline: rational form, order bound, horizon policy, series,
    detection, and comparison against the predicted value.

    The horizon defaults to the polynomial-part degree plus four times the
    predicted period (or the order bound when no prediction exists).
    """
    form = rational_form(family, ctx, config)
    bound = order_bound(form) if form.d >= 1 else None
    predicted = predicted_period(family, ctx.p, ctx.alpha)
    if horizon is None:
        t_est = predicted or bound or 1
        horizon = form.poly_part.degree + 1 + (_MARGIN + 1) * t_est + 16
    if horizon <= _DIRECT_LIMIT:
        series = reduce_series(family, ctx, horizon)
    else:
        series = expand_form(form, horizon)
        checked = reduce_series(family, ctx, 200)
        assert series.coeffs[:200] == checked.coeffs
    use_bound = bound if (bound is not None and horizon > _DIRECT_LIMIT) else None
    report = detect_period(series, use_bound)
    if bound is not None:
        assert bound % report.period == 0
    match = None if predicted is None else report.period == predicted
    return PeriodAnalysis(report, predicted, match, bound, form)


PERIOD_SCHEMA = {
    "type": "object",
    "properties": {
        "p": {"type": "integer"},
        "alpha": {"type": "integer"},
        "preperiod": {"type": "integer", "minimum": 0},
        "period": {"type": "integer", "minimum": 1},
        "verified_horizon": {"type": "integer"},
        "order_bound": {"type": ["integer", "null"]},
        "predicted": {"type": ["integer", "null"]},
        "match": {"type": ["boolean", "null"]},
    },
    "required": [
        "p",
        "alpha",
        "preperiod",
        "period",
        "verified_horizon",
        "order_bound",
        "predicted",
        "match",
    ],
    "additionalProperties": False,
}


def analysis_json_dict(a: PeriodAnalysis) -> dict:
    return {
        "p": a.report.ctx.p,
        "alpha": a.report.ctx.alpha,
        "preperiod": a.report.preperiod,
        "period": a.report.period,
        "verified_horizon": a.report.verified_horizon,
        "order_bound": a.order_bound,
        "predicted": a.predicted,
        "match": a.match,
    }
