"""
branching.py — Interlacing branching and closed-form zero-weight dimensions

GL_{n+1} -> GL_n and SO_5 -> SO_4 restriction is multiplicity free with
interlacing highest weights, so the zero-weight dimension of a GL weight can
be counted recursively over trace-zero branches (Gelfand-Tsetlin style).

Closed forms:
  GL3   piecewise linear in lambda, split on lambda_2 = 0
  SO5   quadratic, one formula per parity of lambda_1 + lambda_2
  GL4   four cubic polynomials p1..p4 on the regions R1..R4

p1..p4 accept exact rationals or sympy expressions so the same code serves
evaluation and polynomial identity checks.

Usage (as library):
    from branching import GLWeight, zero_dim_gl, gl4_closed_form
    zero_dim_gl(GLWeight((2, 1, -1, -2)))     # 7

Created: 2026-10-05
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product

from errors import WeightError
from rootsys import SimpleType, Weight, build_root_system

log = logging.getLogger(__name__)


# =============================================================================
# WEIGHT TYPES
# =============================================================================

@dataclass(frozen=True)
class GLWeight:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise WeightError(f"GL weight {parts} is not weakly decreasing")

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return str(self.parts)


@dataclass(frozen=True)
class SOWeight:
    parts: tuple[int, ...]
    kind: str = "odd"           # odd: SO_{2n+1}, even: SO_{2n}

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if self.kind not in ("odd", "even"):
            raise WeightError(f"SO weight kind must be 'odd' or 'even', got {self.kind!r}")
        if not parts:
            raise WeightError("SO weight needs at least one part")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise WeightError(f"SO weight {parts} is not weakly decreasing")
        if self.kind == "odd" and parts[-1] < 0:
            raise WeightError(f"SO_(2n+1) weight {parts} needs a non-negative last part")
        if self.kind == "even" and len(parts) >= 2 and parts[-2] < abs(parts[-1]):
            raise WeightError(f"SO_(2n) weight {parts} needs lambda_(n-1) >= |lambda_n|")


class GL4Region(Enum):
    R1 = "R1"       # lambda_2 <= 0
    R2 = "R2"       # lambda_3 >= 0
    R3 = "R3"       # lambda_2 > 0, lambda_3 < 0, lambda_1 + lambda_4 >= 0
    R4 = "R4"       # lambda_2 > 0, lambda_3 < 0, lambda_1 + lambda_4 <= 0


def _require_trace_zero(lam: GLWeight) -> None:
    if lam.total != 0:
        raise WeightError(
            f"GL weight {lam.parts} has total {lam.total}; a zero weight space "
            f"needs trivial central character (total 0)"
        )


def _require_parts(lam: GLWeight, n: int) -> None:
    if lam.n != n:
        raise WeightError(f"expected a GL{n} weight, got {lam.n} parts")


# =============================================================================
# GL BRANCHING
# =============================================================================

def branch_gl(lam: GLWeight) -> list[GLWeight]:
    """Highest weights of GL_n occurring in the restriction of V(lam) of GL_{n+1}.

    Exactly the mu with lam_1 >= mu_1 >= lam_2 >= ... >= mu_n >= lam_{n+1},
    each once.
    """
    p = lam.parts
    ranges = [range(p[i + 1], p[i] + 1) for i in range(len(p) - 1)]
    return [GLWeight(mu) for mu in product(*ranges)]


def _trace_zero_branches(parts: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Interlacing mu with sum(mu) == 0, pruned on the reachable sum range."""
    n = len(parts) - 1
    lows = [parts[i + 1] for i in range(n)]
    highs = [parts[i] for i in range(n)]
    suffix_low = [0] * (n + 1)
    suffix_high = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_low[i] = suffix_low[i + 1] + lows[i]
        suffix_high[i] = suffix_high[i + 1] + highs[i]

    found: list[tuple[int, ...]] = []

    def extend(i: int, prefix: list[int], acc: int) -> None:
        if i == n:
            if acc == 0:
                found.append(tuple(prefix))
            return
        rest_low, rest_high = suffix_low[i + 1], suffix_high[i + 1]
        lo = max(lows[i], -acc - rest_high)
        hi = min(highs[i], -acc - rest_low)
        for v in range(lo, hi + 1):
            prefix.append(v)
            extend(i + 1, prefix, acc + v)
            prefix.pop()

    extend(0, [], 0)
    return found


@lru_cache(maxsize=None)
def _zero_dim_gl(parts: tuple[int, ...]) -> int:
    if len(parts) == 1:
        return 1 if parts[0] == 0 else 0
    if len(parts) == 2:
        return 1 if parts[0] + parts[1] == 0 else 0
    return sum(_zero_dim_gl(mu) for mu in _trace_zero_branches(parts))


def zero_dim_gl(lam: GLWeight) -> int:
    """Zero-weight dimension of the GL_n representation V(lam), by branching."""
    _require_trace_zero(lam)
    if lam.n == 0:
        return 1
    return _zero_dim_gl(lam.parts)


def dual_gl(lam: GLWeight) -> GLWeight:
    """Highest weight of the dual representation: (-lam_n, ..., -lam_1)."""
    return GLWeight(tuple(-p for p in reversed(lam.parts)))


# =============================================================================
# SO BRANCHING
# =============================================================================

def zero_dim_so5(lam: SOWeight) -> int:
    """Zero-weight dimension of V(lam) for SO_5, via SO_5 -> SO_4.

    SO_4 summands (mu_1, mu_2) with lam_1 >= mu_1 >= lam_2 >= |mu_2| each
    contribute 1 when mu_1 + mu_2 is even, and 0 otherwise.
    """
    if lam.kind != "odd" or len(lam.parts) != 2:
        raise WeightError(f"expected an SO5 weight (odd kind, 2 parts), got {lam}")
    l1, l2 = lam.parts
    return sum(
        1
        for m1 in range(l2, l1 + 1)
        for m2 in range(-l2, l2 + 1)
        if (m1 + m2) % 2 == 0
    )


# =============================================================================
# CLOSED FORMS
# =============================================================================

def gl3_closed_form(lam: GLWeight) -> int:
    _require_parts(lam, 3)
    _require_trace_zero(lam)
    l1, l2, l3 = lam.parts
    if l2 >= 0:
        return l1 - l2 + 1
    return l2 - l3 + 1


def so5_closed_form(lam: SOWeight) -> int:
    if lam.kind != "odd" or len(lam.parts) != 2:
        raise WeightError(f"expected an SO5 weight (odd kind, 2 parts), got {lam}")
    l1, l2 = lam.parts
    value = (l1 - l2) * l2 + Fraction(l1 + l2, 2)
    value += 1 if (l1 + l2) % 2 == 0 else Fraction(1, 2)
    if value.denominator != 1:
        raise ArithmeticError(f"SO5 closed form is not integral at {lam.parts}: {value}")
    return value.numerator


def p1(l1, l2, l3, l4):
    return (l2 - l3 + 1) * (l3 - l4 + 1) * (l2 - l4 + 2) / 2


def p2(l1, l2, l3, l4):
    return (l1 - l2 + 1) * (l2 - l3 + 1) * (l1 - l3 + 2) / 2


def p3(l1, l2, l3, l4):
    return -(l1 + l2 + 2 * l3 + 1) * (
        -l1 * l2 + 2 * l2 ** 2 + l1 * l3 + l2 * l3 + l3 ** 2 - l1 + l3 - 2
    ) / 2


def p4(l1, l2, l3, l4):
    return (-l1 + l2 - 1) * (
        -l1 * l2 + l1 * l3 + l2 * l3 + 3 * l3 ** 2 - l1 - 2 * l2 - l3 - 2
    ) / 2


GL4_POLYNOMIALS = {
    GL4Region.R1: p1,
    GL4Region.R2: p2,
    GL4Region.R3: p3,
    GL4Region.R4: p4,
}


def gl4_region(lam: GLWeight) -> GL4Region:
    """Region tag; on walls the first matching tag in R1 < R2 < R3 < R4 wins."""
    _require_parts(lam, 4)
    _require_trace_zero(lam)
    l1, l2, l3, l4 = lam.parts
    if l2 <= 0:
        return GL4Region.R1
    if l3 >= 0:
        return GL4Region.R2
    if l1 + l4 >= 0:
        return GL4Region.R3
    return GL4Region.R4


def gl4_closed_form(lam: GLWeight) -> int:
    region = gl4_region(lam)
    value = GL4_POLYNOMIALS[region](*(Fraction(p) for p in lam.parts))
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"{region.value} polynomial gives {value} at {lam.parts}")
    return value.numerator


# =============================================================================
# ROOT-SYSTEM COORDINATES
# =============================================================================

def gl_to_root_weight(lam: GLWeight) -> Weight:
    """Trace-zero GL_n weight as a weight of A_{n-1} (epsilon coordinates)."""
    _require_trace_zero(lam)
    if lam.n < 2:
        raise WeightError("GL weights need at least 2 parts to map into A_(n-1)")
    rs = build_root_system(SimpleType('A', lam.n - 1))
    return rs.from_epsilon(lam.parts)


def so5_to_root_weight(lam: SOWeight) -> Weight:
    """SO_5 weight as a weight of B2 (epsilon coordinates)."""
    if lam.kind != "odd" or len(lam.parts) != 2:
        raise WeightError(f"expected an SO5 weight (odd kind, 2 parts), got {lam}")
    rs = build_root_system(SimpleType('B', 2))
    return rs.from_epsilon(lam.parts)
