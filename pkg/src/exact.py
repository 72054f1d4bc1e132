"""
exact.py — Exact rational helpers shared by every module

Canonical "p/q" strings for JSON, parsing of user-supplied rationals,
conversion from sympy numbers, and primitive integer vectors.

Created: 2026-10-02
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy

Vector = tuple[Fraction, ...]


def frac(value) -> Fraction:
    """Exact Fraction from int, Fraction, str ("3/4") or sympy Rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, sympy.Basic):
        if not value.is_Rational:
            raise ValueError(f"not an exact rational: {value}")
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def vec(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def rational_str(value) -> str:
    """Canonical string: "n" for integers, "p/q" otherwise (q > 0, reduced)."""
    q = frac(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_sympy(value) -> sympy.Rational:
    q = frac(value)
    return sympy.Rational(q.numerator, q.denominator)


def is_integral(values: Iterable[Fraction]) -> bool:
    return all(frac(v).denominator == 1 for v in values)


def as_ints(values: Iterable[Fraction]) -> tuple[int, ...]:
    out = []
    for v in values:
        q = frac(v)
        if q.denominator != 1:
            raise ValueError(f"{rational_str(q)} is not an integer")
        out.append(q.numerator)
    return tuple(out)


def primitive(values: Sequence) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to a primitive integer vector.

    The zero vector maps to itself.
    """
    qs = [frac(v) for v in values]
    denom = lcm(*(q.denominator for q in qs)) if qs else 1
    ints = [int(q * denom) for q in qs]
    g = 0
    for n in ints:
        g = gcd(g, n)
    if g == 0:
        return tuple(ints)
    return tuple(n // g for n in ints)


def sign_normalized(values: Sequence[int]) -> tuple[int, ...]:
    """Flip sign so the first nonzero entry is positive."""
    for v in values:
        if v != 0:
            return tuple(values) if v > 0 else tuple(-x for x in values)
    return tuple(values)


def sign(value) -> int:
    q = frac(value)
    return (q > 0) - (q < 0)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((frac(x) * frac(y) for x, y in zip(a, b)), Fraction(0))


def mat_vec(matrix: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in matrix)


def sympy_matrix(rows: Sequence[Sequence]) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in row] for row in rows])


def from_sympy_matrix(m: sympy.Matrix) -> tuple[Vector, ...]:
    return tuple(tuple(frac(m[i, j]) for j in range(m.cols)) for i in range(m.rows))
