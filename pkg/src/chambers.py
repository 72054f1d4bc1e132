"""
chambers.py — Chambers of the open dominant cone cut by the walls H_{w,i}

A wall is the functional lambda -> lambda(w x_i) written in Dynkin labels z.
Only walls that vanish somewhere with all z_i > 0 matter. The chambers are the
connected components of the open dominant cone minus these walls; each is
identified by its sign vector over the sorted wall list.

Enumeration: seed from a generic interior point, then BFS over single-sign
flips, deciding each flipped system with exact Fourier-Motzkin elimination.
The chamber adjacency graph is a networkx Graph.

Usage (as library):
    from chambers import enumerate_chambers, classify
    atlas = enumerate_chambers(rs)
    classify(atlas, weight).interior         # chamber id like '-++'

Created: 2026-10-07
"""

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import networkx as nx

from config import get_settings
from errors import ChamberError, WeightError
from exact import Vector, dot, primitive, rational_str, sign, sign_normalized, vec
from rootsys import RootSystem, SimpleType, Weight, build_root_system, weyl_group

log = logging.getLogger(__name__)

SIGN_CHARS = {1: "+", -1: "-"}


# =============================================================================
# FOURIER-MOTZKIN FEASIBILITY
# =============================================================================

@dataclass(frozen=True)
class Constraint:
    """coeffs . z + const > 0 (strict) or >= 0."""
    coeffs: Vector
    const: Fraction = Fraction(0)
    strict: bool = True

    @classmethod
    def of(cls, coeffs: Sequence, const=0, strict: bool = True) -> "Constraint":
        return cls(vec(coeffs), Fraction(const), strict)

    def holds(self, z: Sequence) -> bool:
        value = dot(self.coeffs, z) + self.const
        return value > 0 if self.strict else value >= 0


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Vector | None = None


def _canonical(c: Constraint) -> tuple[tuple[int, ...], bool]:
    return primitive(c.coeffs + (c.const,)), c.strict


def _dedupe(constraints: list[Constraint]) -> list[Constraint]:
    best: dict[tuple[int, ...], bool] = {}
    for c in constraints:
        key, strict = _canonical(c)
        best[key] = best.get(key, False) or strict
    return [
        Constraint(vec(key[:-1]), Fraction(key[-1]), strict)
        for key, strict in sorted(best.items())
    ]


def _bounds(constraints: list[Constraint], k: int, z: list[Fraction]):
    """Tightest lower/upper bound on z_k given z_0..z_{k-1}."""
    lower: tuple[Fraction, bool] | None = None
    upper: tuple[Fraction, bool] | None = None
    for c in constraints:
        a = c.coeffs[k]
        rest = c.const + sum((c.coeffs[j] * z[j] for j in range(k)), Fraction(0))
        if a > 0:
            bound = -rest / a
            if lower is None or bound > lower[0] or (bound == lower[0] and c.strict):
                lower = (bound, c.strict)
        elif a < 0:
            bound = -rest / a
            if upper is None or bound < upper[0] or (bound == upper[0] and c.strict):
                upper = (bound, c.strict)
    return lower, upper


def wall_feasibility(constraints: Sequence[Constraint]) -> Feasibility:
    """Decide a finite system of strict/weak linear inequalities exactly.

    Variables are eliminated from last to first; a witness is rebuilt by
    back-substitution. For homogeneous systems the witness is scaled to a
    primitive integer vector.
    """
    constraints = list(constraints)
    if not constraints:
        return Feasibility(True, ())
    n = len(constraints[0].coeffs)
    if any(len(c.coeffs) != n for c in constraints):
        raise ValueError("constraints have different numbers of variables")

    levels: list[list[Constraint]] = []
    current = _dedupe(constraints)
    for k in range(n - 1, -1, -1):
        levels.append(current)
        pos = [c for c in current if c.coeffs[k] > 0]
        neg = [c for c in current if c.coeffs[k] < 0]
        nxt = [c for c in current if c.coeffs[k] == 0]
        for p in pos:
            for q in neg:
                sp, sq = 1 / p.coeffs[k], -1 / q.coeffs[k]
                coeffs = tuple(sp * a + sq * b for a, b in zip(p.coeffs, q.coeffs))
                nxt.append(Constraint(coeffs, sp * p.const + sq * q.const, p.strict or q.strict))
        current = _dedupe(nxt)

    for c in current:
        if c.const < 0 or (c.strict and c.const == 0):
            return Feasibility(False)

    levels.reverse()
    z: list[Fraction] = []
    for k in range(n):
        lower, upper = _bounds(levels[k], k, z)
        if lower and upper:
            if lower[0] == upper[0]:
                value = lower[0]
            else:
                value = (lower[0] + upper[0]) / 2
        elif lower:
            value = lower[0] + 1
        elif upper:
            value = upper[0] - 1
        else:
            value = Fraction(0)
        z.append(value)

    witness = tuple(z)
    if all(c.const == 0 for c in constraints) and any(witness):
        witness = vec(primitive(witness))
    if not all(c.holds(witness) for c in constraints):
        raise ArithmeticError("Fourier-Motzkin back-substitution produced an invalid witness")
    return Feasibility(True, witness)


# =============================================================================
# WALLS
# =============================================================================

@dataclass(frozen=True)
class WallForm:
    normal: tuple[int, ...]
    orbit_tag: tuple[tuple[int, ...], int]      # (word of w, i) with lambda(w x_i)

    def evaluate(self, z: Sequence) -> Fraction:
        return dot(self.normal, z)

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.normal):
            if a == 0:
                continue
            coeff = "" if abs(a) == 1 else str(abs(a))
            op = "-" if a < 0 else ("+" if terms else "")
            terms.append(f"{op}{coeff}z{i + 1}")
        return "".join(terms)


def _positive_orthant(rank: int) -> list[Constraint]:
    return [
        Constraint.of([1 if j == i else 0 for j in range(rank)])
        for i in range(rank)
    ]


def _meets_open_cone(normal: Sequence[int]) -> bool:
    rank = len(normal)
    system = _positive_orthant(rank) + [
        Constraint.of(normal, strict=False),
        Constraint.of([-a for a in normal], strict=False),
    ]
    return wall_feasibility(system).feasible


def interior_wall_forms(rs: RootSystem) -> list[WallForm]:
    """All lambda(w x_i) up to sign and scale that vanish inside the dominant cone."""
    n = rs.rank
    inv = rs.cartan_inverse
    found: dict[tuple[int, ...], WallForm] = {}
    for w in weyl_group(rs):
        # root coordinate i of w^{-1} lambda; w runs over all of W
        for i in range(n):
            row = tuple(sum((w.matrix[i][k] * inv[k][j] for k in range(n)), Fraction(0)) for j in range(n))
            normal = sign_normalized(primitive(row))
            if normal in found:
                continue
            tag = (tuple(reversed(w.word)), i)
            found[normal] = WallForm(normal, tag)
    walls = [found[nm] for nm in sorted(found) if _meets_open_cone(nm)]
    log.info("interior_wall_forms: %s has %d distinct forms, %d interior walls",
             rs.type, len(found), len(walls))
    return walls


# =============================================================================
# ATLAS
# =============================================================================

@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    witness: Vector

    @property
    def id(self) -> str:
        return "".join(SIGN_CHARS[s] for s in self.signs) if self.signs else "*"


@dataclass(frozen=True)
class ChamberAtlas:
    root_system: RootSystem
    walls: tuple[WallForm, ...]
    chambers: tuple[Chamber, ...]
    graph: nx.Graph = field(compare=False, repr=False)

    def chamber(self, chamber_id: str) -> Chamber:
        for c in self.chambers:
            if c.id == chamber_id:
                return c
        raise ChamberError(f"{self.root_system.type} has no chamber {chamber_id!r}")

    def signs_at(self, z: Sequence) -> tuple[int, ...]:
        return tuple(sign(w.evaluate(z)) for w in self.walls)

    def to_dict(self) -> dict:
        return {
            "type": str(self.root_system.type),
            "rank": self.root_system.rank,
            "walls": [list(w.normal) for w in self.walls],
            "chambers": [
                {"id": c.id, "witness": [rational_str(x) for x in c.witness]}
                for c in self.chambers
            ],
            "adjacency": sorted(
                [sorted([a, b]) + [d["wall"]] for a, b, d in self.graph.edges(data=True)],
                key=lambda e: (e[0], e[1]),
            ),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _chamber_system(rank: int, walls: Sequence[WallForm], signs: Sequence[int]) -> list[Constraint]:
    system = _positive_orthant(rank)
    for w, s in zip(walls, signs):
        system.append(Constraint.of([s * a for a in w.normal]))
    return system


def _generic_point(rank: int, walls: Sequence[WallForm]) -> tuple[int, ...]:
    t = 2
    while True:
        z = tuple(t ** i for i in range(rank))
        if all(w.evaluate(z) != 0 for w in walls):
            return z
        t += 1


def _adjacency(chambers: Sequence[Chamber]) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(c.id for c in chambers)
    for i, a in enumerate(chambers):
        for b in chambers[i + 1:]:
            diff = [k for k, (x, y) in enumerate(zip(a.signs, b.signs)) if x != y]
            if len(diff) == 1:
                g.add_edge(a.id, b.id, wall=diff[0])
    return g


def enumerate_chambers(rs: RootSystem, rank_cap: int | None = None) -> ChamberAtlas:
    """Every realizable sign vector, each with a verified interior witness."""
    rank_cap = rank_cap if rank_cap is not None else get_settings().rank_cap
    if rs.rank > rank_cap:
        raise ChamberError(
            f"{rs.type} has rank {rs.rank} above the chamber rank cap {rank_cap} "
            f"(set ZEROWEIGHT_RANK_CAP to raise it)"
        )
    walls = tuple(interior_wall_forms(rs))
    seed_point = _generic_point(rs.rank, walls)
    seed = Chamber(tuple(sign(w.evaluate(seed_point)) for w in walls), vec(seed_point))

    found: dict[tuple[int, ...], Chamber] = {seed.signs: seed}
    queue = deque([seed])
    while queue:
        chamber = queue.popleft()
        for k in range(len(walls)):
            flipped = list(chamber.signs)
            flipped[k] = -flipped[k]
            flipped = tuple(flipped)
            if flipped in found:
                continue
            result = wall_feasibility(_chamber_system(rs.rank, walls, flipped))
            if result.feasible:
                nxt = Chamber(flipped, result.witness)
                found[flipped] = nxt
                queue.append(nxt)

    chambers = tuple(sorted(found.values(), key=lambda c: tuple(-s for s in c.signs)))
    for c in chambers:
        if not all(x > 0 for x in c.witness) or tuple(sign(w.evaluate(c.witness)) for w in walls) != c.signs:
            raise ArithmeticError(f"witness of chamber {c.id} does not realize its signs")
    graph = _adjacency(chambers)
    if not nx.is_connected(graph):
        raise ChamberError(f"{rs.type}: chamber adjacency graph is not connected")
    log.info("enumerate_chambers: %s has %d walls, %d chambers", rs.type, len(walls), len(chambers))
    return ChamberAtlas(rs, walls, chambers, graph)


@lru_cache(maxsize=None)
def atlas_for(simple_type: SimpleType) -> ChamberAtlas:
    """Process-wide cached atlas."""
    return enumerate_chambers(build_root_system(simple_type))


# =============================================================================
# CLASSIFICATION
# =============================================================================

@dataclass(frozen=True)
class Classification:
    signs: tuple[int, ...]
    interior: str | None                    # chamber id when lambda is interior
    walls: tuple[int, ...]                  # indices of walls through lambda
    closure: tuple[str, ...]                # chambers whose closure contains lambda

    @property
    def on_boundary(self) -> bool:
        return self.interior is None


def classify(atlas: ChamberAtlas, weight: Weight) -> Classification:
    rs = atlas.root_system
    z = rs.fundamental_coords(weight)
    if any(x < 0 for x in z):
        raise WeightError(f"{weight} is not dominant in {rs.type}")
    signs = atlas.signs_at(z)
    zero_walls = tuple(k for k, s in enumerate(signs) if s == 0)
    closure = tuple(
        c.id for c in atlas.chambers
        if all(s == 0 or s == cs for s, cs in zip(signs, c.signs))
    )
    interior = None
    if not zero_walls and all(x > 0 for x in z):
        interior = closure[0]
    return Classification(signs, interior, zero_walls, closure)


def chamber_of(atlas: ChamberAtlas, weight: Weight) -> str:
    """Chamber id for a point of the open cone off all walls."""
    result = classify(atlas, weight)
    if result.interior is None:
        raise ChamberError(f"{weight} lies on a wall or on the cone boundary")
    return result.interior
