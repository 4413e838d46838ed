"""Group families whose free-subgroup counting sequences this package
computes.

Only the parameter tuples matter here: the amalgams C_2m *_Cm C_3m (lifts of
the inhomogeneous modular group, index 6m*lambda) and C_2m *_Cm C_4m (lifts
of the q=4 Hecke group, index 4m*lambda) both have counting generating
functions solving the quadratic ODE handled in `riccati`, with

    modular3:  A = 6m-2, B = 6m, C = 1, D = 1-6m+5m^2, E = 4m
    hecke4:    A = 4m-2, B = 4m, C = 1, D = 1-4m+3m^2, E = 2m
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegralityViolation
from .riccati import RiccatiParams, riccati_series

MODULAR3 = "modular3"
HECKE4 = "hecke4"
KINDS = (MODULAR3, HECKE4)


@dataclass(frozen=True)
class GroupFamily:
    kind: str
    m: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.m < 1:
            raise ValueError("m must be >= 1")


@dataclass(frozen=True)
class SubgroupSeries:
    """Exact counts f_1..f_L; the implicit value at index 0 is 1."""

    family: GroupFamily
    values: tuple


@dataclass(frozen=True)
class Hecke4Invariants:
    m_gamma: int
    chi: Fraction
    mu: int
    a0: int
    a1: int
    a2: int


def params_for(family: GroupFamily) -> RiccatiParams:
    m = family.m
    if family.kind == MODULAR3:
        p = RiccatiParams.of(6 * m - 2, 6 * m, 1, 1 - 6 * m + 5 * m * m, 4 * m)
    else:
        p = RiccatiParams.of(4 * m - 2, 4 * m, 1, 1 - 4 * m + 3 * m * m, 2 * m)
    assert p.e * p.e == p.a * p.a - 4 * p.c * p.d
    return p


def free_subgroup_numbers(family: GroupFamily, length: int) -> SubgroupSeries:
    """f_1..f_length, exact."""
    if length < 1:
        raise ValueError("length must be >= 1")
    coeffs = riccati_series(params_for(family), length + 1).coeffs[1:]
    vals = []
    for c in coeffs:
        n = int(c)
        if n != c or n < 0:
            raise IntegralityViolation(f"non-integral or negative count {c}")
        vals.append(n)
    return SubgroupSeries(family, tuple(vals))


def hecke4_invariants(m: int) -> Hecke4Invariants:
    """Structural invariants of the m-th lift of the q=4 Hecke group."""
    if m < 1:
        raise ValueError("m must be >= 1")
    m_gamma = 4 * m
    chi = Fraction(1, 2 * m) + Fraction(1, 4 * m) - Fraction(1, m)
    mu = 1 - m_gamma * chi
    assert chi == Fraction(-1, 4 * m) and mu == 2
    return Hecke4Invariants(m_gamma, chi, int(mu), 3 * m * m, 32 * m * m, 16 * m * m)
