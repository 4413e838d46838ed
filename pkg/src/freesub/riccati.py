"""Formal power-series solutions of the quadratic first-order ODE

    (1 - A z) F(z) - B z^2 F'(z) - C z F(z)^2 - 1 - D z = 0

and its order-n rational approximants P_n/Q_n, both via closed-form
coefficient formulas (parameterized by E with E^2 = A^2 - 4CD) and via an
independent linear-algebra route that never touches E.

Comparing coefficients of z^m in the ODE gives a recurrence that is monic in
the new coefficient, so the series exists over the rationals and over any
Z/p^alpha alike:

    f_m = (A + (m-1) B) f_{m-1} + C * sum_{i+j=m-1} f_i f_j + D [m = 1].

The approximant pair (P_n, Q_n) has constant terms 1 and satisfies

    (1-Az) P Q - B z^2 (P'Q - PQ') - C z P^2 - (1+Dz) Q^2 = -r z^(2n+1)

for a scalar r (`residual_const`), which factors as

    r = (A+C+D) * prod_{l=1..n} (l A B + A C + C D + l^2 B^2 + 2 l B C + C^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .errors import DegenerateParameters, IntegralityViolation, SingularPadeSystem
from .exact import ModRingCtx, pochhammer
from .poly import Poly, Series, series_div


def _rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class RiccatiParams:
    """The four ODE constants plus the square root E of the discriminant
    A^2 - 4CD.  Either sign of E describes the same instance; every public
    result is invariant under E -> -E.  E may be None when the discriminant
    is not a rational square, in which case only the linear-algebra route
    is available.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction | None = None

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.b == 0:
            raise ValueError("B must be nonzero")
        if self.e is not None:
            object.__setattr__(self, "e", Fraction(self.e))
            if self.e * self.e != self.a * self.a - 4 * self.c * self.d:
                raise ValueError("E^2 must equal A^2 - 4CD")

    @classmethod
    def of(cls, a, b, c, d, e=None) -> "RiccatiParams":
        """Build params; when e is omitted it is derived from the
        discriminant if that is a perfect rational square."""
        if e is None:
            e = _rational_sqrt(Fraction(a) * a - 4 * Fraction(c) * d)
        return cls(Fraction(a), Fraction(b), Fraction(c), Fraction(d), e)

    def is_integral(self) -> bool:
        vals = [self.a, self.b, self.c, self.d]
        if self.e is not None:
            vals.append(self.e)
        return all(v.denominator == 1 for v in vals)


@dataclass(frozen=True)
class PadePair:
    """Order-n approximant: P, Q of degree <= n, P(0) = Q(0) = 1."""

    n: int
    p: Poly
    q: Poly
    residual_const: Fraction


def riccati_series(params: RiccatiParams, length: int, ctx: ModRingCtx | None = None) -> Series:
    """The unique solution series with F(0) = 1, to `length` coefficients.

    Over Z/p^alpha the same recurrence is run on reduced parameters; this is
    well-defined because the recurrence never divides.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    if ctx is not None:
        from .exact import mod_reduce

        m_ = ctx.modulus
        a = mod_reduce(params.a, ctx).value
        b = mod_reduce(params.b, ctx).value
        c = mod_reduce(params.c, ctx).value
        d = mod_reduce(params.d, ctx).value
        f = [1]
        for m in range(1, length):
            acc = (a + b * (m - 1)) * f[m - 1]
            if m == 1:
                acc += d
            # convolution sum_{i+j=m-1} f_i f_j, folded by symmetry
            pairs = m // 2
            conv = 2 * sum(map(int.__mul__, f[:pairs], f[m - 1 : m - 1 - pairs : -1]))
            if m % 2 == 1:
                mid = f[(m - 1) // 2]
                conv += mid * mid
            f.append((acc + c * conv) % m_)
        return Series.of(f, ctx)
    integral = params.a.denominator == params.b.denominator == 1 and (
        params.c.denominator == params.d.denominator == 1
    )
    if integral:
        a, b, c, d = (int(params.a), int(params.b), int(params.c), int(params.d))
        f: list = [1]
    else:
        a, b, c, d = params.a, params.b, params.c, params.d
        f = [Fraction(1)]
    for m in range(1, length):
        acc = (a + b * (m - 1)) * f[m - 1]
        if m == 1:
            acc += d
        conv = sum(f[i] * f[m - 1 - i] for i in range(m))
        f.append(acc + c * conv)
    return Series.of(f)


def residual_constant(params: RiccatiParams, n: int) -> Fraction:
    """The scalar multiplying -z^(2n+1) in the defining identity."""
    a, b, c, d = params.a, params.b, params.c, params.d
    out = a + c + d
    for l in range(1, n + 1):
        out *= l * a * b + a * c + c * d + l * l * b * b + 2 * l * b * c + c * c
    return out


def _require_closed_form(params: RiccatiParams, n: int, need_c: bool) -> Fraction:
    """Validate the preconditions of the explicit coefficient formulas and
    return E/B."""
    if params.e is None:
        raise DegenerateParameters("E is not available")
    if params.e == 0:
        raise DegenerateParameters("E = 0")
    if need_c and params.c == 0:
        raise DegenerateParameters("C = 0")
    x = params.e / params.b
    if x.denominator == 1 and abs(x.numerator) <= n:
        raise DegenerateParameters(f"E/B = {x} collides with the index range")
    return x


def _coeff_sums(params: RiccatiParams, n: int, kp: int, brackets: bool):
    """The two j-sums shared by the numerator and denominator formulas.

    `kp` is the internal index (the coefficient produced is the one of
    z^(n - kp)).  With brackets=True each summand carries the extra linear
    form needed for the numerator coefficients; at j = 0 that form
    degenerates to A -/+ E.
    """
    a, b, e = params.a, params.b, params.e
    x = e / b
    ap = (a + 2 * params.c + e) / (2 * b)
    am = (a + 2 * params.c - e) / (2 * b)
    s1 = Fraction(0)
    s2 = Fraction(0)
    for j in range(kp + 1):
        w = comb(kp + j, kp) * comb(n - j, kp - j)
        t1 = w * pochhammer(-x + j + 1, kp - j) * pochhammer(am, j)
        t2 = w * pochhammer(x + j + 1, kp - j) * pochhammer(ap, j)
        if brackets:
            if j == 0:
                t1 *= a - e
                t2 *= a + e
            else:
                base = a + Fraction(2 * kp * j, kp + j) * b
                off = Fraction(kp - j, kp + j) * e
                t1 *= base - off
                t2 *= base + off
        s1 += t1
        s2 += t2
    return pochhammer(ap, n + 1) * s1 - pochhammer(am, n + 1) * s2


def _assert_integral(params: RiccatiParams, value: Fraction) -> Fraction:
    if params.is_integral() and value.denominator != 1:
        raise IntegralityViolation(f"expected an integer, got {value}")
    return value


def pade_coeff_q(params: RiccatiParams, n: int, k: int) -> Fraction:
    """Coefficient of z^k in Q_n, from the closed form."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    kp = n - k
    x = _require_closed_form(params, kp, need_c=False)
    denom = pochhammer(x - kp, 2 * kp + 1)
    val = (
        (-1) ** n
        * params.b**k
        * _coeff_sums(params, n, kp, brackets=False)
        / denom
    )
    return _assert_integral(params, val)


def pade_coeff_p(params: RiccatiParams, n: int, k: int) -> Fraction:
    """Coefficient of z^k in P_n, from the closed form."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    kp = n - k
    x = _require_closed_form(params, kp, need_c=True)
    denom = 2 * params.c * pochhammer(x - kp, 2 * kp + 1)
    val = (
        (-1) ** (n + 1)
        * params.b**k
        * _coeff_sums(params, n, kp, brackets=True)
        / denom
    )
    return _assert_integral(params, val)


def pade_pair(params: RiccatiParams, n: int) -> PadePair:
    """Assemble (P_n, Q_n) from the closed form.

    Raises DegenerateParameters when the formulas are undefined (C = 0,
    E = 0 or unavailable, or E/B an integer in [-n, n]); callers wanting a
    transparent fallback should use build_pade.
    """
    _require_closed_form(params, n, need_c=True)
    p = Poly([pade_coeff_p(params, n, k) for k in range(n + 1)])
    q = Poly([pade_coeff_q(params, n, k) for k in range(n + 1)])
    return PadePair(n, p, q, residual_constant(params, n))


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over Fraction.  Consistent singular systems are
    resolved by zeroing free variables; inconsistent ones raise."""
    n = len(rhs)
    m = len(rows[0]) if rows else 0
    aug = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(n):
            if i != r and aug[i][col] != 0:
                fac = aug[i][col] / aug[r][col]
                for j in range(col, m + 1):
                    aug[i][j] -= fac * aug[r][j]
        piv_cols.append(col)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][m] != 0:
            raise SingularPadeSystem("inconsistent linear system")
    x = [Fraction(0)] * m
    for i, col in enumerate(piv_cols):
        x[col] = aug[i][m] / aug[i][col]
    return x


def pade_oracle(params: RiccatiParams, n: int) -> PadePair:
    """Order-n approximant from the series alone: solve F*Q - P = O(z^(2n+1))
    with Q(0) = 1.  Uses no closed form and never needs E."""
    f = riccati_series(params, 2 * n + 1).coeffs
    f = [Fraction(c) for c in f]
    # rows m = n+1 .. 2n:  sum_{j=1..n} q_j f_{m-j} = -f_m
    rows = [[f[m - j] for j in range(1, n + 1)] for m in range(n + 1, 2 * n + 1)]
    rhs = [-f[m] for m in range(n + 1, 2 * n + 1)]
    qs = [Fraction(1)] + _solve_exact(rows, rhs)
    ps = [sum(qs[j] * f[k - j] for j in range(min(k, n) + 1)) for k in range(n + 1)]
    p, q = Poly(ps), Poly(qs)
    lhs = _identity_lhs(PadePair(n, p, q, Fraction(0)), params)
    for k in range(2 * n + 1):
        if lhs.coeff(k) != 0:
            raise SingularPadeSystem("solution does not satisfy the identity")
    return PadePair(n, p, q, -Fraction(lhs.coeff(2 * n + 1)))


def build_pade(params: RiccatiParams, n: int, allow_fallback: bool = True):
    """Public pair construction: closed form when defined, otherwise the
    linear-algebra route.  Returns (pair, route)."""
    try:
        return pade_pair(params, n), "closed-form"
    except DegenerateParameters:
        if not allow_fallback:
            raise
        return pade_oracle(params, n), "oracle"


def _identity_lhs(pair: PadePair, params: RiccatiParams) -> Poly:
    a, b, c, d = params.a, params.b, params.c, params.d
    p, q = pair.p, pair.q
    one_minus_az = Poly([1, -a])
    z = Poly([0, 1])
    z2 = Poly([0, 0, 1])
    wronskian = p.derivative() * q - p * q.derivative()
    return (
        one_minus_az * p * q
        - z2.scale(b) * wronskian
        - z.scale(c) * p * p
        - Poly([1, d]) * q * q
    )


def verify_identity(pair: PadePair, params: RiccatiParams) -> bool:
    """Exact polynomial check of the defining identity against the stored
    residual constant."""
    lhs = _identity_lhs(pair, params)
    expected = Poly([0] * (2 * pair.n + 1) + [-pair.residual_const])
    return lhs == expected


def _gosper_certificate(params: RiccatiParams, n: int, j: int) -> Fraction:
    a, b, c, e = params.a, params.b, params.c, params.e
    x = e / b
    am = (a + 2 * c - e) / (2 * b)
    return (
        (2 * n + 1)
        * Fraction((-1) ** n)
        / (c * b**n * pochhammer(x - n, 2 * n + 1))
        * comb(n + j - 1, n)
        * pochhammer(-x + j, n - j + 1)
        * pochhammer(am, j)
    )


def verify_gosper(params: RiccatiParams, n: int, certificate=None) -> bool:
    """Check the telescoping identity behind the constant-term comparison:
    the explicit certificate G must satisfy term(j) = G(j+1) - G(j) for
    every j, and the telescoped sum must equal the closed-form right side.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if params.e is None or params.b == 0 or params.c == 0:
        raise DegenerateParameters("needs C != 0 and an explicit E")
    a, b, c, e = params.a, params.b, params.c, params.e
    x = e / b
    if x.denominator == 1 and abs(x.numerator) <= n:
        raise DegenerateParameters(f"E/B = {x} collides with the index range")
    am = (a + 2 * c - e) / (2 * b)
    cert = certificate or (lambda nn, jj: _gosper_certificate(params, nn, jj))

    pref = (2 * n + 1) * Fraction((-1) ** n) / (2 * c * b ** (n + 1) * pochhammer(x - n, 2 * n + 1))
    total = Fraction(0)
    for j in range(n + 1):
        if j == 0:
            bracket = 2 * c + a - e
        else:
            bracket = (
                2 * c
                + a
                + Fraction(2 * n * j, n + j) * b
                - Fraction(n - j, n + j) * e
            )
        term = (
            pref
            * comb(n + j, n)
            * pochhammer(-x + j + 1, n - j)
            * pochhammer(am, j)
            * bracket
        )
        if term != cert(n, j + 1) - cert(n, j):
            return False
        total += term
    rhs = (
        (2 * n + 1)
        * comb(2 * n, n)
        * Fraction((-1) ** n)
        * pochhammer(am, n + 1)
        / (c * b**n * pochhammer(x - n, 2 * n + 1))
    )
    return total == rhs


def pair_series(pair: PadePair, length: int, ctx: ModRingCtx | None = None) -> Series:
    """Series expansion of P/Q, exactly or reduced into Z/p^alpha."""
    if ctx is None:
        return series_div(pair.p, pair.q, length)
    from .exact import mod_reduce

    p = Poly([mod_reduce(c, ctx).value for c in pair.p.coeffs], ctx)
    q = Poly([mod_reduce(c, ctx).value for c in pair.q.coeffs], ctx)
    return series_div(p, q, length)
