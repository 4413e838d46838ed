"""Reduction of the counting series mod p^alpha to a closed rational form.

For an odd prime p not dividing the relevant torsion, the series reduced mod
p^alpha equals a polynomial plus a proper fraction whose denominator is the
alpha-th power of a fixed polynomial of degree d (d from the congruence
class of p; d = 0 when p | m, in which case the series is eventually a
polynomial).  The pipeline here is:

  1. the stable denominator mod p is the degree-d approximant denominator
     Q_d with the family's parameters (an exact integer polynomial);
  2. its irreducible factors mod p are rewritten with constant term 1 and
     balanced coefficients in (-p/2, p/2); the product D of these small
     integer polynomials is the working denominator (any lift of the mod-p
     denominator serves, and this one matches the classical displays);
  3. multiply the reduced series by D^alpha, find where the coefficients
     become identically zero (a verified zero-run), divide back and check
     against the series again, then split into polynomial part plus partial
     fractions over the factor powers.

A second, independent route reduces the explicit approximant P_n/Q_n for an
n chosen so the residual constant vanishes mod p^alpha; by uniqueness of the
series solution both routes must agree, which the tests exercise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    DegenerateParameters,
    DegreeBoundExceeded,
    UnsupportedPrime,
)
from .exact import ModRingCtx, vp_int
from .groups import HECKE4, MODULAR3, GroupFamily, params_for
from .poly import Factorization, Poly, Series, factor_mod_p, hensel_lift, series_div
from .riccati import pade_pair, pair_series, riccati_series
from .valuations import congruence_classes

# window on which the direct mod-p^alpha recurrence is cross-checked against
# reduction of the exact integer series
_EXACT_CHECK_WINDOW = 50


@dataclass(frozen=True)
class ModSeries:
    """Coefficients of the reduced series, canonical residues, explicit length."""

    ctx: ModRingCtx
    coeffs: tuple

    @property
    def length(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class FractionTerm:
    """residue / factor^exponent with deg(residue) < deg(factor).

    The factor is kept as a small integer polynomial (constant term 1,
    balanced coefficients); the residue as canonical values in [0, p^alpha).
    """

    factor: Poly
    exponent: int
    residue: Poly


@dataclass(frozen=True)
class RationalFormModPA:
    ctx: ModRingCtx
    family: GroupFamily
    d: int
    q_base: Poly  # exact integer denominator of degree d
    poly_part: Poly  # over the mod ring
    fractions: tuple  # of FractionTerm, every exponent 1..alpha per factor


@dataclass(frozen=True)
class ReduceConfig:
    """Search-window knobs for the numerator hunt.

    length/window of None mean the defaults L = alpha*d + 2*p*alpha + 64 and
    W = alpha*d + 32; on a failed zero-run the length doubles up to
    max_doublings times before DegreeBoundExceeded propagates.
    """

    length: int | None = None
    window: int | None = None
    max_doublings: int = 6
    seed: int = 0


def denominator_base(family: GroupFamily, p: int) -> tuple[int, Poly]:
    """Degree d and the exact integer stable denominator Q_d.

    d is (p-1)/6 or (p-5)/6 for modular3 (by p mod 6), (p-1)/4 or (p-3)/4
    for hecke4 (by p mod 4), and 0 when p divides m.
    """
    if family.kind == MODULAR3 and p < 5:
        raise UnsupportedPrime("modular3 reduction needs p >= 5")
    if family.kind == HECKE4 and p < 3:
        raise UnsupportedPrime("hecke4 reduction needs p >= 3")
    if family.kind == MODULAR3:
        d = (p - 1) // 6 if p % 6 == 1 else (p - 5) // 6
    else:
        d = (p - 1) // 4 if p % 4 == 1 else (p - 3) // 4
    if family.m % p == 0 or d == 0:
        return 0, Poly.one()
    params = params_for(family)
    pair = pade_pair(params, d)
    assert all(c.denominator == 1 for c in pair.q.coeffs)
    return d, Poly([int(c) for c in pair.q.coeffs])


def reduce_series(family: GroupFamily, ctx: ModRingCtx, length: int) -> ModSeries:
    """The counting series (constant term included) reduced mod p^alpha,
    computed directly by the monic recurrence over Z/p^alpha."""
    params = params_for(family)
    s = riccati_series(params, length, ctx)
    w = min(length, _EXACT_CHECK_WINDOW)
    exact = riccati_series(params, w)
    assert all(int(exact.coeffs[i]) % ctx.modulus == s.coeffs[i] for i in range(w))
    return ModSeries(ctx, s.coeffs)


def _balanced(v: int, p: int) -> int:
    v %= p
    return v if v <= p // 2 else v - p


def _display_factors(q_base: Poly, p: int, seed: int) -> tuple[list[Poly], Factorization]:
    """Irreducible factors of q_base mod p as small integer polynomials with
    constant term 1 and balanced coefficients."""
    fp = ModRingCtx(p, 1)
    fact = factor_mod_p(q_base.map_ring(fp), seed=seed)
    out = []
    for g, mult in fact.factors:
        if mult != 1:
            raise DegenerateParameters("stable denominator is not squarefree mod p")
        c0 = g.coeff(0)
        inv = pow(c0, -1, p)
        out.append(Poly([_balanced(inv * c, p) for c in g.coeffs]))
    return out, fact


def _factor_order_key(g: Poly, p: int):
    return (g.degree, tuple(c % p for c in g.coeffs[1:]))


def rational_form(
    family: GroupFamily, ctx: ModRingCtx, config: ReduceConfig = ReduceConfig()
) -> RationalFormModPA:
    """Compute the full rational form of the series mod p^alpha."""
    p, alpha = ctx.p, ctx.alpha
    d, q_base = denominator_base(family, p)

    if d == 0:
        poly_part = _polynomial_tail(family, ctx, config)
        return RationalFormModPA(ctx, family, 0, q_base, poly_part, ())

    gs, mod_p_factors = _display_factors(q_base, p, config.seed)
    gs.sort(key=lambda g: _factor_order_key(g, p))
    den = Poly.one()
    for g in gs:
        den = den * g
    den_mod = den.map_ring(ctx)
    # the lifting kernel must reproduce these factors exactly (they are an
    # exact coprime factorization of den already); run it as a cross-check
    lifted = hensel_lift([f for f, _ in mod_p_factors.factors], den_mod)
    lifted_display = {
        Poly([(pow(g.coeff(0), -1, ctx.modulus) * c) % ctx.modulus for c in g.coeffs], ctx)
        for g, _ in lifted.factors
    }
    assert lifted_display == {g.map_ring(ctx) for g in gs}

    den_alpha = den_mod**alpha
    numerator = _bounded_numerator(family, ctx, den_alpha, config)
    poly_part, proper = divmod(numerator, den_alpha)
    fractions = _partial_fractions_over(proper, gs, ctx, alpha)
    return RationalFormModPA(ctx, family, d, q_base, poly_part, tuple(fractions))


def _search_plan(d: int, ctx: ModRingCtx, config: ReduceConfig) -> tuple[int, int]:
    length = config.length or ctx.alpha * d + 2 * ctx.p * ctx.alpha + 64
    window = config.window or ctx.alpha * d + 32
    return length, window


def _bounded_numerator(
    family: GroupFamily, ctx: ModRingCtx, den_alpha: Poly, config: ReduceConfig
) -> Poly:
    """Multiply the series by the denominator power and certify that the
    result is a polynomial: a zero-run of the configured width must follow
    the last nonzero coefficient, and dividing back must reproduce the
    series on a doubled horizon."""
    d = den_alpha.degree // ctx.alpha if ctx.alpha else den_alpha.degree
    length, window = _search_plan(d, ctx, config)
    for _ in range(config.max_doublings + 1):
        series = reduce_series(family, ctx, length)
        num = Series.of(series.coeffs, ctx).mul(den_alpha)
        last = max((i for i, c in enumerate(num.coeffs) if c), default=-1)
        if length - 1 - last >= window:
            numerator = Poly(num.coeffs[: last + 1], ctx)
            check = series_div(numerator, den_alpha, 2 * length)
            again = reduce_series(family, ctx, 2 * length)
            assert check.coeffs == again.coeffs
            return numerator
        length *= 2
    raise DegreeBoundExceeded(
        f"no zero-run of width {window} within {length} terms; "
        "raise the search length (config length / --length)"
    )


def _polynomial_tail(family: GroupFamily, ctx: ModRingCtx, config: ReduceConfig) -> Poly:
    """d = 0 case: the reduced series itself must terminate."""
    length, window = _search_plan(0, ctx, config)
    for _ in range(config.max_doublings + 1):
        series = reduce_series(family, ctx, length)
        last = max((i for i, c in enumerate(series.coeffs) if c), default=-1)
        if length - 1 - last >= window:
            return Poly(series.coeffs[: last + 1], ctx)
        length *= 2
    raise DegreeBoundExceeded(
        f"no zero-run of width {window} within {length} terms; "
        "raise the search length (config length / --length)"
    )


def _partial_fractions_over(
    proper: Poly, gs: list[Poly], ctx: ModRingCtx, alpha: int
) -> list[FractionTerm]:
    """Split proper/(prod g^alpha) into residue/g^s terms, s = 1..alpha.

    Works factor by factor through Bezout inverses; zero residues are kept
    so every (factor, exponent) slot up to alpha is present.
    """
    from .poly import ext_gcd_coprime

    out: list[FractionTerm] = []
    full = Poly.one(ctx)
    for g in gs:
        full = full * (g.map_ring(ctx) ** alpha)
    recombined = Poly.zero(ctx)
    for g in gs:
        g_mod = g.map_ring(ctx)
        g_alpha = g_mod**alpha
        others = full // g_alpha
        u, _ = ext_gcd_coprime(others, g_alpha, ctx)
        part = (proper * u) % g_alpha
        recombined = recombined + part * others
        digits = []
        rest = part
        for _ in range(alpha):
            rest, digit = divmod(rest, g_mod)
            digits.append(digit)
        assert rest.is_zero()
        for s in range(1, alpha + 1):
            out.append(FractionTerm(g, s, digits[alpha - s]))
    assert (recombined % full) == (proper % full)
    return out


def partial_fractions(
    numerator: Poly, q_base: Poly, ctx: ModRingCtx, alpha: int, seed: int = 0
) -> list[FractionTerm]:
    """Partial fractions of numerator/(D^alpha) where D is the product of
    the balanced constant-term-1 factors of q_base mod p."""
    gs, _ = _display_factors(q_base, ctx.p, seed)
    gs.sort(key=lambda g: _factor_order_key(g, ctx.p))
    degsum = sum(g.degree for g in gs)
    if numerator.degree >= alpha * degsum:
        raise ValueError("numerator must be a proper fraction numerator")
    return _partial_fractions_over(numerator, gs, ctx, alpha)


def expand_form(form: RationalFormModPA, length: int) -> ModSeries:
    """Series expansion of poly_part + sum residue/factor^s to `length`
    terms; the linear recurrences involved make this cheap even for very
    long horizons."""
    ctx = form.ctx
    acc = [0] * length
    for i, c in enumerate(form.poly_part.coeffs[:length]):
        acc[i] = c
    for term in form.fractions:
        if term.residue.is_zero():
            continue
        den = term.factor.map_ring(ctx) ** term.exponent
        piece = series_div(term.residue, den, length)
        for i, c in enumerate(piece.coeffs):
            acc[i] = (acc[i] + c) % ctx.modulus
    return ModSeries(ctx, tuple(acc))


# ---------------------------------------------------------------------------
# the closed-form route
# ---------------------------------------------------------------------------


def pade_route(family: GroupFamily, ctx: ModRingCtx, length: int = 100) -> ModSeries:
    """Reduce the explicit approximant P_n/Q_n instead of the recurrence.

    n is the smallest index in the stable congruence class of p whose
    residual constant has p-adic valuation >= alpha; valuations accumulate
    factor by factor (individual factors can carry valuation > 1).
    """
    p, alpha = ctx.p, ctx.alpha
    m = family.m
    if family.kind == MODULAR3 and (6 * m) % p == 0:
        raise ValueError("needs p coprime to 6m")
    if family.kind == HECKE4 and (2 * m) % p == 0:
        raise ValueError("needs p coprime to 2m")
    params = params_for(family)
    a, b, c, d_ = (int(params.a), int(params.b), int(params.c), int(params.d))
    target = congruence_classes(family, p)[0]
    head = a + c + d_
    acc = vp_int(head, p) if head else alpha
    n = 0
    while True:
        n += 1
        factor = n * a * b + a * c + c * d_ + n * n * b * b + 2 * n * b * c + c * c
        acc += vp_int(factor, p) if factor else alpha
        if n % p == target and acc >= alpha:
            break
    pair = pade_pair(params, n)
    return ModSeries(ctx, pair_series(pair, length, ctx).coeffs)


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------

JSON_SCHEMA = {
    "type": "object",
    "properties": {
        "family": {"type": "string", "enum": [MODULAR3, HECKE4]},
        "m": {"type": "integer", "minimum": 1},
        "p": {"type": "integer", "minimum": 2},
        "alpha": {"type": "integer", "minimum": 1},
        "d": {"type": "integer", "minimum": 0},
        "q_base": {"type": "array", "items": {"type": "integer"}},
        "poly_part": {"type": "array", "items": {"type": "integer"}},
        "fractions": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "factor": {"type": "array", "items": {"type": "integer"}},
                    "exponent": {"type": "integer", "minimum": 1},
                    "residue": {"type": "array", "items": {"type": "integer"}},
                },
                "required": ["factor", "exponent", "residue"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["family", "m", "p", "alpha", "d", "q_base", "poly_part", "fractions"],
    "additionalProperties": False,
}


def to_json_dict(form: RationalFormModPA) -> dict:
    return {
        "family": form.family.kind,
        "m": form.family.m,
        "p": form.ctx.p,
        "alpha": form.ctx.alpha,
        "d": form.d,
        "q_base": [int(c) for c in form.q_base.coeffs],
        "poly_part": [int(c) for c in form.poly_part.coeffs],
        "fractions": [
            {
                "factor": [int(c) for c in t.factor.coeffs],
                "exponent": t.exponent,
                "residue": [int(c) for c in t.residue.coeffs],
            }
            for t in form.fractions
        ],
    }


def from_json_dict(data: dict) -> RationalFormModPA:
    ctx = ModRingCtx(data["p"], data["alpha"])
    family = GroupFamily(data["family"], data["m"])
    return RationalFormModPA(
        ctx,
        family,
        data["d"],
        Poly(data["q_base"]),
        Poly(data["poly_part"], ctx),
        tuple(
            FractionTerm(Poly(t["factor"]), t["exponent"], Poly(t["residue"], ctx))
            for t in data["fractions"]
        ),
    )


def _poly_str(p: Poly, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*{var}")
        else:
            parts.append(f"{c}*{var}^{i}")
    return " + ".join(parts)


def _latex_power(e: int) -> str:
    return str(e) if e < 10 else "{" + str(e) + "}"


def _latex_factor(g: Poly) -> str:
    terms = []
    for i, c in enumerate(g.coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            var = "z" if i == 1 else f"z^{_latex_power(i)}"
            terms.append(("-" if c < 0 else "+") + mag + var)
    return "".join(terms)


def _latex_poly_desc(p: Poly) -> list[str]:
    out = []
    for i in range(p.degree, -1, -1):
        c = p.coeff(i)
        if c == 0:
            continue
        if i == 0:
            out.append(str(c))
        elif i == 1:
            out.append(f"{c} z")
        else:
            out.append(f"{c} z^{_latex_power(i)}")
    return out


def emit_latex(form: RationalFormModPA) -> str:
    """Classical display: polynomial part in descending powers, then the
    fractions in ascending exponent per factor; zero residues are omitted;
    factors are rendered with constant term 1 and balanced coefficients."""
    pieces = _latex_poly_desc(form.poly_part)
    for t in form.fractions:
        if t.residue.is_zero():
            continue
        num = _latex_factor(t.residue) if t.residue.degree >= 1 else str(t.residue.coeff(0))
        base = _latex_factor(t.factor)
        den = base if t.exponent == 1 else f"({base})^{_latex_power(t.exponent)}"
        pieces.append(rf"\frac{{{num}}}{{{den}}}")
    body = " + ".join(pieces) if pieces else "0"
    return body + rf"  \pmod{{{form.ctx.p}^{form.ctx.alpha}}}"


def emit_text(form: RationalFormModPA) -> str:
    lines = [
        f"family={form.family.kind} m={form.family.m} "
        f"p={form.ctx.p} alpha={form.ctx.alpha} d={form.d}",
        f"q_base: {_poly_str(form.q_base)}",
        f"poly_part: {_poly_str(form.poly_part)}",
    ]
    for t in form.fractions:
        lines.append(
            f"fraction: ({_latex_factor(t.factor)})^{t.exponent} "
            f"residue {_poly_str(t.residue)}"
        )
    if form.d == 0:
        lines.append("note: polynomial form; the reduced sequence is eventually 0")
    return "\n".join(lines)


def emit(form: RationalFormModPA, format: str = "text") -> str:
    if format == "text":
        return emit_text(form)
    if format == "json":
        return json.dumps(to_json_dict(form), indent=None, sort_keys=False)
    if format == "latex":
        return emit_latex(form)
    raise ValueError(f"unknown format {format!r}")
