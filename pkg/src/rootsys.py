"""
rootsys.py — Exact root systems and Weyl groups for simple types

Bourbaki (Planches I-IX) Cartan data for A_l, B_l, C_l, D_l, E6-E8, F4, G2
with everything kept in exact rationals:

  - root coordinates    c  (coefficients over the simple roots, the lattice Q)
  - fundamental coords  z  (Dynkin labels, z_i = <lambda, alpha_i^vee>)
  - epsilon coordinates    (classical families and G2 only)

Cartan convention: cartan[i][j] = <alpha_j, alpha_i^vee>, so z = cartan . c
and the fundamental weight omega_i is column i of the inverse Cartan matrix.

The dual basis x_1..x_l of the Cartan subalgebra (alpha_i(x_j) = delta_ij) is
stored in coroot coordinates.

Usage (as library):
    from rootsys import parse_type, build_root_system
    rs = build_root_system(parse_type("A3"))
    rs.fundamental_coords(rs.highest_root())    # (1, 0, 1)

Created: 2026-10-03
"""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from config import get_settings
from errors import RootSystemError, WeightError, WeylGroupCapError
from exact import Vector, as_ints, dot, from_sympy_matrix, frac, is_integral, mat_vec, rational_str, sympy_matrix, vec

log = logging.getLogger(__name__)

# =============================================================================
# SIMPLE TYPES
# =============================================================================

MIN_RANK: dict[str, int] = {'A': 1, 'B': 2, 'C': 2, 'D': 4, 'E': 6, 'F': 4, 'G': 2}
MAX_RANK: dict[str, int | None] = {'A': None, 'B': None, 'C': None, 'D': None, 'E': 8, 'F': 4, 'G': 2}

EXCEPTIONAL_WEYL_ORDER: dict[tuple[str, int], int] = {
    ('E', 6): 51_840,
    ('E', 7): 2_903_040,
    ('E', 8): 696_729_600,
    ('F', 4): 1_152,
    ('G', 2): 12,
}


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in MIN_RANK:
            raise RootSystemError(f"unknown family {self.family!r}; expected one of ABCDEFG")
        lo, hi = MIN_RANK[self.family], MAX_RANK[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            bound = f"{lo}..{hi}" if hi is not None else f">= {lo}"
            raise RootSystemError(
                f"unsupported rank {self.rank} for family {self.family} (rank {bound})"
            )

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def is_classical(self) -> bool:
        return self.family in "ABCD"

    def weyl_order(self) -> int:
        l = self.rank
        if self.family == 'A':
            return factorial(l + 1)
        if self.family in "BC":
            return 2 ** l * factorial(l)
        if self.family == 'D':
            return 2 ** (l - 1) * factorial(l)
        return EXCEPTIONAL_WEYL_ORDER[(self.family, l)]

    def positive_root_count(self) -> int:
        l = self.rank
        if self.family == 'A':
            return l * (l + 1) // 2
        if self.family in "BC":
            return l * l
        if self.family == 'D':
            return l * (l - 1)
        return {('E', 6): 36, ('E', 7): 63, ('E', 8): 120, ('F', 4): 24, ('G', 2): 6}[(self.family, l)]


_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def parse_type(text: str) -> SimpleType:
    """Parse 'A3', 'b2', 'E_8' into a SimpleType."""
    m = _TYPE_RE.match(text)
    if not m:
        raise RootSystemError(f"cannot parse root system type {text!r} (expected e.g. A3, G2)")
    return SimpleType(m.group(1).upper(), int(m.group(2)))


# =============================================================================
# WEIGHTS
# =============================================================================

@dataclass(frozen=True, order=True)
class Weight:
    """A weight stored by its root coordinates (exact rationals).

    Fundamental and epsilon coordinates are obtained through the owning
    RootSystem, since they depend on the Cartan data.
    """

    root: Vector

    @classmethod
    def of(cls, coords: Iterable) -> "Weight":
        return cls(vec(coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.root)

    def in_root_lattice(self) -> bool:
        return is_integral(self.root)

    def root_ints(self) -> tuple[int, ...]:
        if not self.in_root_lattice():
            raise WeightError(f"{self} is not in the root lattice Q")
        return as_ints(self.root)

    def _check(self, other: "Weight") -> None:
        if other.rank != self.rank:
            raise RootSystemError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.root, other.root)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.root, other.root)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.root))

    def scaled(self, k) -> "Weight":
        k = frac(k)
        return Weight(tuple(k * a for a in self.root))

    def __str__(self) -> str:
        return "(" + ", ".join(rational_str(c) for c in self.root) + ")"


# =============================================================================
# CARTAN DATA
# =============================================================================

def _cartan_matrix(family: str, rank: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def join(i: int, j: int) -> None:
        a[i][j] = a[j][i] = -1

    if family in "ABC":
        for i in range(rank - 1):
            join(i, i + 1)
        if family == 'B':
            a[rank - 1][rank - 2] = -2
        elif family == 'C':
            a[rank - 2][rank - 1] = -2
    elif family == 'D':
        for i in range(rank - 2):
            join(i, i + 1)
        join(rank - 3, rank - 1)
    elif family == 'E':
        join(0, 2)
        join(1, 3)
        for i in range(2, rank - 1):
            join(i, i + 1)
    elif family == 'F':
        join(0, 1)
        join(1, 2)
        join(2, 3)
        a[2][1] = -2
    elif family == 'G':
        a[0][1] = -3
        a[1][0] = -1
    return a


def _symmetrizer(cartan: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    """d_i = (alpha_i, alpha_i)/2, normalized so the short roots have d = 1."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                queue.append(j)
    smallest = min(d)
    return tuple(x / smallest for x in d)


def _epsilon_embedding(family: str, rank: int) -> tuple[tuple[int, ...], ...] | None:
    """Simple roots written in epsilon coordinates (one tuple per root)."""
    if family == 'G':
        return ((1, -1, 0), (-2, 1, 1))
    if family not in "ABCD":
        return None
    n = rank + 1 if family == 'A' else rank
    roots = []
    for i in range(rank):
        e = [0] * n
        if family == 'A' or i < rank - 1:
            e[i], e[i + 1] = 1, -1
        elif family == 'B':
            e[i] = 1
        elif family == 'C':
            e[i] = 2
        else:
            e[i - 1], e[i] = 1, 1
        roots.append(tuple(e))
    return tuple(roots)


# =============================================================================
# ROOT SYSTEM
# =============================================================================

@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as an integer matrix on root coordinates.

    `word` lists simple reflection indices; the element is the product
    s_word[0] s_word[1] ... (rightmost acts first).
    """

    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] = ()

    def apply(self, weight: Weight) -> Weight:
        return Weight(mat_vec(self.matrix, weight.root))

    def compose(self, other: "WeylElement") -> "WeylElement":
        n = len(self.matrix)
        product = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return WeylElement(product, self.word + other.word)

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True, eq=False)
class RootSystem:
    type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    cartan_inverse: tuple[Vector, ...]
    symmetrizer: tuple[Fraction, ...]
    invariant_form: tuple[Vector, ...]
    simple_roots: tuple[Weight, ...]
    fundamental_weights: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    dual_basis_x: tuple[Vector, ...]
    epsilon_basis: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)
    _epsilon_solve: tuple[Vector, ...] | None = field(default=None, repr=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and other.type == self.type

    def __hash__(self) -> int:
        return hash(("RootSystem", self.type))

    def __reduce__(self):
        return (build_root_system, (self.type,))

    @property
    def rank(self) -> int:
        return self.type.rank

    def _check_rank(self, v: Sequence, what: str = "vector") -> None:
        if len(v) != self.rank:
            raise RootSystemError(f"{what} has {len(v)} entries, {self.type} has rank {self.rank}")

    # -------------------------------------------------------------------------
    # coordinates
    # -------------------------------------------------------------------------

    def weight(self, root_coords: Iterable) -> Weight:
        w = Weight.of(root_coords)
        self._check_rank(w.root, "weight")
        return w

    def fundamental_coords(self, weight: Weight) -> Vector:
        """Dynkin labels z_i = <lambda, alpha_i^vee>."""
        self._check_rank(weight.root, "weight")
        return mat_vec(self.cartan, weight.root)

    def from_fundamental(self, z: Iterable) -> Weight:
        z = vec(z)
        self._check_rank(z, "fundamental coordinates")
        return Weight(mat_vec(self.cartan_inverse, z))

    def has_epsilon(self) -> bool:
        return self.epsilon_basis is not None

    def epsilon_coords(self, weight: Weight) -> Vector:
        if self.epsilon_basis is None:
            raise RootSystemError(f"epsilon coordinates are not provided for {self.type}")
        self._check_rank(weight.root, "weight")
        n = len(self.epsilon_basis[0])
        return tuple(
            sum((c * root[k] for c, root in zip(weight.root, self.epsilon_basis)), Fraction(0))
            for k in range(n)
        )

    def from_epsilon(self, eps: Iterable) -> Weight:
        if self.epsilon_basis is None:
            raise RootSystemError(f"epsilon coordinates are not provided for {self.type}")
        eps = vec(eps)
        n = len(self.epsilon_basis[0])
        if len(eps) != n:
            raise RootSystemError(f"{self.type} epsilon vectors have {n} entries, got {len(eps)}")
        weight = Weight(mat_vec(self._epsilon_solve, eps))
        if self.epsilon_coords(weight) != eps:
            raise WeightError(
                f"{tuple(rational_str(e) for e in eps)} is not in the span of the roots of {self.type}"
            )
        return weight

    def height(self, weight: Weight) -> Fraction:
        return sum(weight.root, Fraction(0))

    def is_dominant(self, weight: Weight) -> bool:
        return all(z >= 0 for z in self.fundamental_coords(weight))

    # -------------------------------------------------------------------------
    # form, pairing, reflections
    # -------------------------------------------------------------------------

    def inner(self, a: Weight, b: Weight) -> Fraction:
        """W-invariant form (short roots have squared length 2)."""
        self._check_rank(a.root, "weight")
        self._check_rank(b.root, "weight")
        return dot(a.root, mat_vec(self.invariant_form, b.root))

    def pairing(self, weight: Weight, x: Sequence) -> Fraction:
        """lambda(x) for x in the Cartan subalgebra, given in coroot coordinates."""
        x = vec(x)
        self._check_rank(x, "Cartan element")
        self._check_rank(weight.root, "weight")
        return dot(self.fundamental_coords(weight), x)

    def simple_reflection(self, weight: Weight, i: int) -> Weight:
        z_i = dot(self.cartan[i], weight.root)
        root = list(weight.root)
        root[i] -= z_i
        return Weight(tuple(root))

    def dominant_conjugate(self, weight: Weight) -> tuple[Weight, tuple[int, ...]]:
        """Dominant W-conjugate and the reflection word applied (first applied first)."""
        word: list[int] = []
        current = weight
        while True:
            z = self.fundamental_coords(current)
            negative = next((i for i, zi in enumerate(z) if zi < 0), None)
            if negative is None:
                return current, tuple(word)
            current = self.simple_reflection(current, negative)
            word.append(negative)

    def all_roots(self) -> tuple[Weight, ...]:
        return self.positive_roots + tuple(-b for b in self.positive_roots)

    def highest_root(self) -> Weight:
        return max(self.positive_roots, key=lambda b: (self.height(b), b.root))

    def rho(self) -> Weight:
        return self.from_fundamental([1] * self.rank)

    def reflection_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(
            tuple((1 if r == c else 0) - (self.cartan[i][c] if r == i else 0) for c in range(n))
            for r in range(n)
        )


# =============================================================================
# CONSTRUCTION
# =============================================================================

def _positive_roots(cartan: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Close the simple roots under simple reflections, keeping positive vectors."""
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            z_i = sum(cartan[i][k] * beta[k] for k in range(n))
            image = list(beta)
            image[i] -= z_i
            image = tuple(image)
            if all(c >= 0 for c in image) and any(image) and image not in seen:
                seen.add(image)
                queue.append(image)
    return sorted(seen, key=lambda b: (sum(b), b))


@lru_cache(maxsize=None)
def build_root_system(simple_type: SimpleType) -> RootSystem:
    """Build the exact root system of a simple type."""
    family, rank = simple_type.family, simple_type.rank
    cartan = tuple(tuple(row) for row in _cartan_matrix(family, rank))
    a = sympy_matrix(cartan)
    cartan_inverse = from_sympy_matrix(a.inv())
    d = _symmetrizer(cartan)
    form = tuple(tuple(d[i] * cartan[i][j] for j in range(rank)) for i in range(rank))
    if any(form[i][j] != form[j][i] for i in range(rank) for j in range(rank)):
        raise RootSystemError(f"Cartan matrix of {simple_type} is not symmetrizable")

    unit = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    simple_roots = tuple(Weight.of(e) for e in unit)
    fundamental = tuple(Weight(tuple(cartan_inverse[r][i] for r in range(rank))) for i in range(rank))
    positive = tuple(Weight.of(b) for b in _positive_roots(cartan))
    if len(positive) != simple_type.positive_root_count():
        raise RootSystemError(
            f"{simple_type}: found {len(positive)} positive roots, "
            f"expected {simple_type.positive_root_count()}"
        )
    # x_j = A^{-T} e_j in coroot coordinates
    dual = from_sympy_matrix(a.T.inv())
    dual_basis_x = tuple(tuple(dual[r][j] for r in range(rank)) for j in range(rank))

    eps_basis = _epsilon_embedding(family, rank)
    eps_solve = None
    if eps_basis is not None:
        e = sympy_matrix(eps_basis).T
        eps_solve = from_sympy_matrix((e.T * e).inv() * e.T)

    rs = RootSystem(
        type=simple_type,
        cartan=cartan,
        cartan_inverse=cartan_inverse,
        symmetrizer=d,
        invariant_form=form,
        simple_roots=simple_roots,
        fundamental_weights=fundamental,
        positive_roots=positive,
        dual_basis_x=dual_basis_x,
        epsilon_basis=eps_basis,
        _epsilon_solve=eps_solve,
    )
    for i, alpha in enumerate(simple_roots):
        for j, x in enumerate(dual_basis_x):
            if rs.pairing(alpha, x) != (1 if i == j else 0):
                raise RootSystemError(f"{simple_type}: dual basis check failed at ({i}, {j})")
    log.debug("build_root_system: %s with %d positive roots", simple_type, len(positive))
    return rs


# =============================================================================
# WEYL GROUP
# =============================================================================

def weyl_group(rs: RootSystem, cap: int | None = None) -> list[WeylElement]:
    """Enumerate W by BFS over left multiplication by simple reflections.

    Elements come out in order of word length; each word is reduced.
    """
    cap = cap if cap is not None else get_settings().weyl_cap
    order = rs.type.weyl_order()
    if order > cap:
        raise WeylGroupCapError(str(rs.type), order, cap)
    n = rs.rank
    identity = WeylElement(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))
    generators = [WeylElement(rs.reflection_matrix(i), (i,)) for i in range(n)]
    seen = {identity.matrix: identity}
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        for s in generators:
            image = s.compose(w)
            if image.matrix not in seen:
                seen[image.matrix] = image
                queue.append(image)
    if len(seen) != order:
        raise RootSystemError(f"{rs.type}: enumerated {len(seen)} Weyl elements, expected {order}")
    log.info("weyl_group: %s has %d elements", rs.type, len(seen))
    return list(seen.values())


def weyl_orbit(rs: RootSystem, v: Weight) -> set[Weight]:
    """W-orbit of v, closed under all simple reflections."""
    orbit = {v}
    queue = deque([v])
    while queue:
        w = queue.popleft()
        for i in range(rs.rank):
            image = rs.simple_reflection(w, i)
            if image not in orbit:
                orbit.add(image)
                queue.append(image)
    return orbit


def pairing(rs: RootSystem, weight: Weight, x: Sequence) -> Fraction:
    """Module-level alias of RootSystem.pairing."""
    return rs.pairing(weight, x)
