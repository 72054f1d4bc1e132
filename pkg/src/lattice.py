"""
lattice.py — Descent lattices Gamma_G inside the root lattice Q

The table per simple type (Bourbaki indexing):

  A_l          Q
  B_l (l>=3)   2Q
  B_2          Z a1 + Z 2a2          (the C_2 entry moved through B2 = C2)
  C_l          Z 2a1 + ... + Z 2a_{l-1} + Z a_l
  D_4          n1 a1 + 2 n2 a2 + n3 a3 + n4 a4,   n1 + n3 + n4 even
  D_l (l>=5)   2n1 a1 + ... + 2n_{l-2} a_{l-2} + n_{l-1} a_{l-1} + n_l a_l,
               n_{l-1} + n_l even
  G2           Z 6a1 + Z 2a2
  F4           Z 6a1 + Z 6a2 + Z 12a3 + Z 12a4
  E6, E7       6 and 12 times the fundamental-weight lattice
  E8           60Q

Reduction mod Gamma uses the Hermite normal form of the basis, so a coset is
represented by the unique vector with 0 <= c_i < H_ii.

Usage (as library):
    from lattice import gamma_lattice, reduce
    gamma = gamma_lattice(parse_type("G2"))
    gamma.index                              # 12

Created: 2026-10-08
"""

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice, product
from typing import Iterator, Sequence

import sympy
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_form
from sympy.polys.domains import ZZ

from errors import LatticeError
from exact import as_ints, is_integral
from rootsys import SimpleType, Weight, build_root_system

log = logging.getLogger(__name__)

LISTED_COSETS_CAP = 1024


@dataclass(frozen=True, order=True)
class CosetRep:
    coords: tuple[int, ...]

    def as_weight(self) -> Weight:
        return Weight.of(self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class GammaLattice:
    type: SimpleType
    generators: tuple[tuple[int, ...], ...]     # each generator in root coordinates
    hnf: tuple[tuple[int, ...], ...]            # upper-triangular column HNF, rows
    index: int

    @property
    def basis(self) -> sympy.Matrix:
        """Generators as the columns of an integer matrix."""
        return sympy.Matrix(self.generators).T

    @property
    def rank(self) -> int:
        return self.type.rank

    def to_dict(self) -> dict:
        return {
            "type": str(self.type),
            "basis": [list(g) for g in self.generators],
            "index": self.index,
            "invariant_factors": list(invariant_factors(self)),
            "hnf_diagonal": [self.hnf[i][i] for i in range(self.rank)],
            "coset_reps": [list(c.coords) for c in islice(coset_reps(self), LISTED_COSETS_CAP)],
            "coset_reps_truncated": self.index > LISTED_COSETS_CAP,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# =============================================================================
# TABLE
# =============================================================================

def _diag(values: Sequence[int]) -> list[tuple[int, ...]]:
    n = len(values)
    return [tuple(v if j == i else 0 for j in range(n)) for i, v in enumerate(values)]


def _generators(simple_type: SimpleType) -> list[tuple[int, ...]]:
    family, l = simple_type.family, simple_type.rank
    if family == 'A':
        return _diag([1] * l)
    if family == 'B':
        return _diag([1, 2]) if l == 2 else _diag([2] * l)
    if family == 'C':
        return _diag([2] * (l - 1) + [1])
    if family == 'D':
        if l == 4:
            return [(2, 0, 0, 0), (0, 2, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)]
        gens = _diag([2] * (l - 2) + [0, 2])
        paired = [0] * l
        paired[l - 2] = paired[l - 1] = 1
        gens[l - 2] = tuple(paired)
        return gens
    if family == 'G':
        return _diag([6, 2])
    if family == 'F':
        return _diag([6, 6, 12, 12])
    if family == 'E':
        if l == 8:
            return _diag([60] * 8)
        scale = 6 if l == 6 else 12
        inv = build_root_system(simple_type).cartan_inverse
        columns = [tuple(scale * inv[r][i] for r in range(l)) for i in range(l)]
        if not all(is_integral(c) for c in columns):
            raise LatticeError(f"{scale} x fundamental weights of {simple_type} are not in Q")
        return [as_ints(c) for c in columns]
    raise LatticeError(f"no descent lattice for {simple_type}")


def set_builder_membership(simple_type: SimpleType, coords: Sequence[int]) -> bool:
    """Set-builder membership for the parity-constrained D lattices."""
    if simple_type.family != 'D':
        raise LatticeError("set-builder membership is only defined for type D")
    c = list(coords)
    l = simple_type.rank
    if len(c) != l:
        raise LatticeError(f"{simple_type} vectors have {l} entries, got {len(c)}")
    if l == 4:
        return c[1] % 2 == 0 and (c[0] + c[2] + c[3]) % 2 == 0
    return all(x % 2 == 0 for x in c[: l - 2]) and (c[l - 2] + c[l - 1]) % 2 == 0


def _upper_hnf(basis: sympy.Matrix) -> list[list[int]]:
    """Column HNF, normalized to an upper-triangular matrix with positive diagonal."""
    h = hermite_normal_form(basis)
    n = basis.rows
    rows = [[int(h[i, j]) for j in range(h.cols)] for i in range(h.rows)]
    if h.cols != n or h.rows != n:
        raise LatticeError(f"basis matrix is not of full rank {n}")
    lower = all(rows[i][j] == 0 for i in range(n) for j in range(i + 1, n))
    upper = all(rows[i][j] == 0 for i in range(n) for j in range(i))
    if not upper and lower:
        # lower-triangular convention: redo on reversed coordinates
        rev = sympy.Matrix(n, n, lambda i, j: basis[n - 1 - i, n - 1 - j])
        h = hermite_normal_form(rev)
        rows = [[int(h[n - 1 - i, n - 1 - j]) for j in range(n)] for i in range(n)]
        upper = all(rows[i][j] == 0 for i in range(n) for j in range(i))
    if not upper:
        raise LatticeError("Hermite normal form is not triangular")
    for j in range(n):
        if rows[j][j] < 0:
            for i in range(n):
                rows[i][j] = -rows[i][j]
    return rows


@lru_cache(maxsize=None)
def gamma_lattice(simple_type: SimpleType) -> GammaLattice:
    gens = tuple(_generators(simple_type))
    basis = sympy.Matrix(gens).T
    det = basis.det()
    if det == 0:
        raise LatticeError(f"{simple_type}: descent lattice basis is singular")
    hnf = _upper_hnf(basis)
    index = 1
    for i in range(simple_type.rank):
        index *= hnf[i][i]
    if index != abs(int(det)):
        raise LatticeError(f"{simple_type}: HNF diagonal product {index} != |det| {abs(int(det))}")
    log.debug("gamma_lattice: %s index %d", simple_type, index)
    return GammaLattice(simple_type, gens, tuple(tuple(r) for r in hnf), index)


# =============================================================================
# COSETS
# =============================================================================

def reduce(gamma: GammaLattice, weight: Weight) -> CosetRep:
    """Canonical representative of weight + Gamma."""
    if weight.rank != gamma.rank:
        raise LatticeError(f"weight has rank {weight.rank}, lattice has rank {gamma.rank}")
    if not weight.in_root_lattice():
        raise LatticeError(f"{weight} is not in the root lattice Q")
    v = list(weight.root_ints())
    h = gamma.hnf
    for i in range(gamma.rank - 1, -1, -1):
        q = v[i] // h[i][i]
        if q:
            for r in range(i + 1):
                v[r] -= q * h[r][i]
    return CosetRep(tuple(v))


def lift(coset: CosetRep) -> Weight:
    return coset.as_weight()


def contains(gamma: GammaLattice, weight: Weight) -> bool:
    return reduce(gamma, weight).is_zero


def coset_reps(gamma: GammaLattice) -> Iterator[CosetRep]:
    """All index-many representatives, lexicographically ordered, generated lazily.

    E7 and E8 have millions of cosets; take a slice with itertools.islice.
    """
    ranges = [range(gamma.hnf[i][i]) for i in range(gamma.rank)]
    return (CosetRep(tuple(c)) for c in product(*ranges))


def invariant_factors(gamma: GammaLattice) -> tuple[int, ...]:
    """Invariant factors of Q / Gamma from the Smith normal form, 1s dropped."""
    snf = smith_normal_form(gamma.basis, domain=ZZ)
    factors = sorted(abs(int(snf[i, i])) for i in range(gamma.rank))
    return tuple(f for f in factors if f != 1)
