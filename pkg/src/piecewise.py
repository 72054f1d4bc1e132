"""
piecewise.py — Exact polynomial certificates per (chamber, coset)

For every chamber C of the dominant cone and every coset mu + Gamma of the
descent lattice in Q, mu_0 restricted to closure(C) and the coset is a
polynomial in the Dynkin labels z of degree at most |R+| - rank. This module
fits that polynomial from oracle values at lattice points and checks it on
held-out interior points and on boundary points of the closure.

Sampling: integer z-grids scanned outward from the chamber witness (L-inf
distance, then sum, then lexicographic). Fit points are the nearest ones,
extended by further points until their monomial rows span the whole basis.
A coset can be sparse in some direction (G2 fixes z1 mod 6), so the nearest
points alone often leave monomials undetermined. The radius doubles until
the fit set has full rank and the hold-out set is complete.

Fitting: exact rref of the interpolation system (sympy). Inconsistent systems
give a failed certificate.

Usage (as library):
    from piecewise import full_atlas_fit
    certs = full_atlas_fit(parse_type("A3"))
    certs[0].polynomial.to_sympy()

Created: 2026-10-10
"""

import json
import logging
import pickle
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import product
from math import ceil, comb
from typing import Callable, Sequence

import sympy

from chambers import Chamber, ChamberAtlas, atlas_for
from config import get_settings
from errors import FitError, SamplingError
from exact import as_ints, frac, primitive, rational_str, sympy_matrix
from lattice import CosetRep, coset_reps, gamma_lattice, reduce
from multiplicity import zero_weight_dim
from rootsys import RootSystem, SimpleType, Weight, build_root_system

log = logging.getLogger(__name__)

Exponents = tuple[int, ...]
Oracle = Callable[[Weight], int]

VERIFIED = "verified"
FAILED = "failed"


# =============================================================================
# POLYNOMIALS
# =============================================================================

def graded_lex_key(exponents: Exponents):
    return (sum(exponents), tuple(-e for e in exponents))


def monomial_basis(rank: int, degree: int) -> list[Exponents]:
    """All exponent vectors of total degree <= degree, graded-lex ordered."""
    if degree < 0:
        raise ValueError(f"degree bound must be non-negative, got {degree}")
    basis = [e for e in product(range(degree + 1), repeat=rank) if sum(e) <= degree]
    basis.sort(key=graded_lex_key)
    return basis


def z_symbols(rank: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"z1:{rank + 1}")


@dataclass(frozen=True)
class ExactPolynomial:
    nvars: int
    terms: tuple[tuple[Exponents, Fraction], ...]

    @classmethod
    def from_terms(cls, nvars: int, terms: dict[Exponents, Fraction]) -> "ExactPolynomial":
        kept = sorted(
            ((tuple(e), frac(c)) for e, c in terms.items() if c != 0),
            key=lambda t: graded_lex_key(t[0]),
        )
        for e, _ in kept:
            if len(e) != nvars:
                raise ValueError(f"exponent vector {e} does not have {nvars} entries")
        return cls(nvars, tuple(kept))

    @classmethod
    def from_sympy(cls, expr, symbols: Sequence[sympy.Symbol]) -> "ExactPolynomial":
        poly = sympy.Poly(sympy.expand(expr), *symbols)
        return cls.from_terms(len(symbols), {tuple(m): frac(c) for m, c in poly.terms()})

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def coefficient(self, exponents: Exponents) -> Fraction:
        return dict(self.terms).get(tuple(exponents), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, z: Sequence) -> Fraction:
        z = [frac(x) for x in z]
        if len(z) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(z)}")
        total = Fraction(0)
        for e, c in self.terms:
            term = c
            for x, k in zip(z, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        diff = dict(self.terms)
        for e, c in other.terms:
            diff[e] = diff.get(e, Fraction(0)) - c
        return ExactPolynomial.from_terms(self.nvars, diff)

    def permuted(self, perm: Sequence[int]) -> "ExactPolynomial":
        """Rename variables: variable i becomes variable perm[i]."""
        out: dict[Exponents, Fraction] = {}
        for e, c in self.terms:
            new = [0] * self.nvars
            for i, k in enumerate(e):
                new[perm[i]] = k
            out[tuple(new)] = c
        return ExactPolynomial.from_terms(self.nvars, out)

    def to_sympy(self, symbols: Sequence[sympy.Symbol] | None = None):
        symbols = symbols or z_symbols(self.nvars)
        expr = sympy.Integer(0)
        for e, c in self.terms:
            term = sympy.Rational(c.numerator, c.denominator)
            for s, k in zip(symbols, e):
                term *= s ** k
            expr += term
        return expr

    def substitute_linear(self, matrix: Sequence[Sequence]) -> "ExactPolynomial":
        """Polynomial in y after the substitution z = matrix . y."""
        n_new = len(matrix[0])
        ys = sympy.symbols(f"y1:{n_new + 1}")
        m = sympy_matrix(matrix)
        zs = m * sympy.Matrix(ys)
        expr = self.to_sympy(z_symbols(self.nvars)).subs(
            dict(zip(z_symbols(self.nvars), list(zs))), simultaneous=True
        )
        return ExactPolynomial.from_sympy(expr, ys)

    def to_dicts(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": rational_str(c)} for e, c in self.terms]

    def __str__(self) -> str:
        return str(sympy.expand(self.to_sympy())) if self.terms else "0"


def epsilon_in_z(rs: RootSystem, symbols: Sequence[sympy.Symbol] | None = None) -> list:
    """Epsilon coordinates of a weight as linear expressions in its Dynkin labels."""
    symbols = symbols or z_symbols(rs.rank)
    n = rs.rank
    inv = rs.cartan_inverse
    roots = [
        sum((sympy.Rational(inv[i][j].numerator, inv[i][j].denominator) * symbols[j] for j in range(n)),
            sympy.Integer(0))
        for i in range(n)
    ]
    basis = rs.epsilon_basis
    if basis is None:
        raise ValueError(f"{rs.type} has no epsilon coordinates")
    width = len(basis[0])
    return [sympy.expand(sum((basis[i][k] * roots[i] for i in range(n)), sympy.Integer(0))) for k in range(width)]


def polynomial_from_epsilon(rs: RootSystem, f: Callable) -> ExactPolynomial:
    """A closed form f(eps_1, ..., eps_n) rewritten as a polynomial in z."""
    zs = z_symbols(rs.rank)
    return ExactPolynomial.from_sympy(f(*epsilon_in_z(rs, zs)), zs)


# =============================================================================
# SAMPLING
# =============================================================================

@dataclass(frozen=True)
class FitConfig:
    oversample: int = 2
    holdout: Fraction = Fraction(1, 4)
    wall_points: int | None = None          # defaults to the hold-out count
    radius: int | None = None
    radius_cap: int | None = None

    def radii(self) -> tuple[int, int]:
        settings = get_settings()
        r = self.radius or settings.search_radius
        cap = self.radius_cap or settings.search_radius_cap
        return r, max(r, cap)


def degree_bound(rs: RootSystem) -> int:
    return len(rs.positive_roots) - rs.rank


def _grid(center: Sequence[int], radius: int) -> list[tuple[int, ...]]:
    ranges = [range(max(0, c - radius), c + radius + 1) for c in center]
    points = list(product(*ranges))
    points.sort(key=lambda z: (max(abs(a - b) for a, b in zip(z, center)), sum(z), z))
    return points


def _scan(atlas: ChamberAtlas, chamber: Chamber, coset: CosetRep, radius: int, interior: bool) -> list[Weight]:
    rs = atlas.root_system
    gamma = gamma_lattice(rs.type)
    center = primitive(chamber.witness)
    found = []
    for z in _grid(center, radius):
        signs = atlas.signs_at(z)
        if not all(s == 0 or s == cs for s, cs in zip(signs, chamber.signs)):
            continue
        is_interior = all(x > 0 for x in z) and all(s != 0 for s in signs)
        if is_interior != interior:
            continue
        weight = rs.from_fundamental(z)
        if not weight.in_root_lattice() or reduce(gamma, weight) != coset:
            continue
        found.append(weight)
    return found


def sample_lattice_points(
    atlas: ChamberAtlas,
    chamber: Chamber,
    coset: CosetRep,
    count: int,
    config: FitConfig | None = None,
) -> list[Weight]:
    """`count` distinct interior lattice points of the chamber in the coset."""
    rs = atlas.root_system
    needed = comb(rs.rank + degree_bound(rs), rs.rank)
    if count < needed:
        raise SamplingError(f"asked for {count} points, the monomial basis needs at least {needed}")
    radius, cap = (config or FitConfig()).radii()
    while True:
        points = _scan(atlas, chamber, coset, radius, interior=True)
        if len(points) >= count:
            return points[:count]
        if radius >= cap:
            raise SamplingError(
                f"{rs.type} chamber {chamber.id} coset {coset}: only {len(points)} of "
                f"{count} points within radius {cap}"
            )
        log.warning("sample_lattice_points: %s chamber %s coset %s: %d/%d at radius %d, doubling",
                    rs.type, chamber.id, coset, len(points), count, radius)
        radius = min(2 * radius, cap)


def monomial_row(basis: Sequence[Exponents], z: Sequence[int]) -> list[int]:
    row = []
    for e in basis:
        term = 1
        for x, k in zip(z, e):
            term *= x ** k
        row.append(term)
    return row


class RowSpan:
    """Row echelon form over Q, grown one row at a time."""

    def __init__(self):
        self._rows: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, row: Sequence) -> bool:
        """Keep the row if it is independent of the span so far."""
        r = [Fraction(x) for x in row]
        # stored rows vanish on the pivots of earlier rows, so one pass suffices
        for p, base in self._rows:
            if r[p]:
                f = r[p]
                r = [a - f * b for a, b in zip(r, base)]
        pivot = next((j for j, x in enumerate(r) if x), None)
        if pivot is None:
            return False
        lead = r[pivot]
        self._rows.append((pivot, [x / lead for x in r]))
        return True


def sample_fit_points(
    atlas: ChamberAtlas,
    chamber: Chamber,
    coset: CosetRep,
    basis: Sequence[Exponents],
    n_fit: int,
    n_hold: int,
    config: FitConfig | None = None,
) -> tuple[list[Weight], list[Weight]]:
    """Fit and hold-out points in the chamber interior and the coset.

    The fit points are the `n_fit` nearest to the witness plus every later
    point that raises the rank of their monomial rows, until that rank is
    len(basis). The hold-out points are the nearest `n_hold` of the others.
    """
    rs = atlas.root_system
    full = len(basis)
    radius, cap = (config or FitConfig()).radii()
    while True:
        span = RowSpan()
        fit_points: list[Weight] = []
        rest: list[Weight] = []
        for w in _scan(atlas, chamber, coset, radius, interior=True):
            independent = span.rank < full and span.add(monomial_row(basis, as_ints(rs.fundamental_coords(w))))
            if independent or len(fit_points) < n_fit:
                fit_points.append(w)
            else:
                rest.append(w)
            if span.rank == full and len(fit_points) >= n_fit and len(rest) >= n_hold:
                return fit_points, rest[:n_hold]
        if radius >= cap:
            raise SamplingError(
                f"{rs.type} chamber {chamber.id} coset {coset}: fit points reach rank {span.rank} "
                f"of {full} and {len(rest)} of {n_hold} hold-out points within radius {cap}"
            )
        log.warning("sample_fit_points: %s chamber %s coset %s: rank %d/%d, %d/%d hold-out at radius %d, doubling",
                    rs.type, chamber.id, coset, span.rank, full, len(rest), n_hold, radius)
        radius = min(2 * radius, cap)


def sample_wall_points(
    atlas: ChamberAtlas,
    chamber: Chamber,
    coset: CosetRep,
    count: int,
    config: FitConfig | None = None,
) -> list[Weight]:
    """Up to `count` boundary points of the chamber closure in the coset.

    Boundary means on an interior wall or on a face z_i = 0. Some cosets have
    no such points near the witness, so fewer than `count` may come back.
    """
    radius, _ = (config or FitConfig()).radii()
    return _scan(atlas, chamber, coset, radius, interior=False)[:count]


# =============================================================================
# CERTIFICATES
# =============================================================================

@dataclass(frozen=True)
class PiecewiseCertificate:
    type: SimpleType
    chamber_id: str
    wall_normals: tuple[tuple[int, ...], ...]
    coset: CosetRep
    degree_bound: int
    polynomial: ExactPolynomial
    fit_points: tuple[tuple[Weight, int], ...]
    validation_points: tuple[tuple[Weight, int], ...]
    status: str
    free_monomials: tuple[Exponents, ...] = ()
    counterexample: tuple[Weight, int, Fraction] | None = field(default=None)

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def value_at(self, rs: RootSystem, weight: Weight) -> Fraction:
        return self.polynomial.evaluate(rs.fundamental_coords(weight))

    def to_dict(self) -> dict:
        def points(pairs):
            return [{"root": [rational_str(c) for c in w.root], "value": v} for w, v in pairs]

        data = {
            "type": str(self.type),
            "rank": self.type.rank,
            "chamber_id": self.chamber_id,
            "wall_normals": [list(n) for n in self.wall_normals],
            "coset": list(self.coset.coords),
            "degree_bound": self.degree_bound,
            "terms": self.polynomial.to_dicts(),
            "fit_points": points(self.fit_points),
            "validation_points": points(self.validation_points),
            "free_monomials": [list(e) for e in self.free_monomials],
            "status": self.status,
        }
        if self.counterexample is not None:
            w, expected, got = self.counterexample
            data["counterexample"] = {
                "root": [rational_str(c) for c in w.root],
                "oracle": expected,
                "polynomial": rational_str(got),
            }
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _solve(basis: list[Exponents], points: list[tuple[Sequence[int], int]]):
    """Exact least-pivot solution; None when the system is inconsistent."""
    rows = [monomial_row(basis, z) + [value] for z, value in points]
    reduced, pivots = sympy.Matrix(rows).rref()
    m = len(basis)
    if m in pivots:
        return None, ()
    coeffs: dict[Exponents, Fraction] = {}
    for r, p in enumerate(pivots):
        coeffs[basis[p]] = frac(reduced[r, m])
    free = tuple(basis[j] for j in range(m) if j not in pivots)
    return coeffs, free


def _first_mismatch(rs: RootSystem, poly: ExactPolynomial, pairs):
    for w, value in pairs:
        got = poly.evaluate(rs.fundamental_coords(w))
        if got != value:
            return (w, value, got)
    return None


def fit(
    rs: RootSystem,
    atlas: ChamberAtlas,
    chamber: Chamber,
    coset: CosetRep,
    oracle: Oracle,
    config: FitConfig | None = None,
) -> PiecewiseCertificate:
    config = config or FitConfig()
    degree = degree_bound(rs)
    basis = monomial_basis(rs.rank, degree)
    n_fit = config.oversample * len(basis)
    n_hold = ceil(n_fit * config.holdout)
    n_wall = config.wall_points if config.wall_points is not None else n_hold

    fit_points, held = sample_fit_points(atlas, chamber, coset, basis, n_fit, n_hold, config)
    walls = sample_wall_points(atlas, chamber, coset, n_wall, config)
    fit_pairs = tuple((w, oracle(w)) for w in fit_points)
    check_pairs = tuple((w, oracle(w)) for w in held + walls)

    coeffs, free = _solve(basis, [(as_ints(rs.fundamental_coords(w)), v) for w, v in fit_pairs])
    common = dict(
        type=rs.type,
        chamber_id=chamber.id,
        wall_normals=tuple(w.normal for w in atlas.walls),
        coset=coset,
        degree_bound=degree,
        fit_points=fit_pairs,
        validation_points=check_pairs,
    )
    if coeffs is None:
        log.error("fit: %s chamber %s coset %s: interpolation system is inconsistent",
                  rs.type, chamber.id, coset)
        return PiecewiseCertificate(polynomial=ExactPolynomial(rs.rank, ()), status=FAILED, **common)

    poly = ExactPolynomial.from_terms(rs.rank, coeffs)
    bad = _first_mismatch(rs, poly, fit_pairs + check_pairs)
    status = FAILED if bad else VERIFIED
    if bad:
        log.error("fit: %s chamber %s coset %s fails at %s (oracle %d, polynomial %s)",
                  rs.type, chamber.id, coset, bad[0], bad[1], rational_str(bad[2]))
    else:
        log.info("fit: %s chamber %s coset %s: degree %d, %d fit + %d check points",
                 rs.type, chamber.id, coset, poly.degree, len(fit_pairs), len(check_pairs))
    return PiecewiseCertificate(
        polynomial=poly, status=status, free_monomials=free, counterexample=bad, **common
    )


@dataclass(frozen=True)
class VerificationResult:
    verified: bool
    checked: int
    counterexample: tuple[Weight, int, Fraction] | None = None


def verify_certificate(
    cert: PiecewiseCertificate,
    oracle: Oracle,
    extra_count: int,
    atlas: ChamberAtlas | None = None,
    config: FitConfig | None = None,
) -> VerificationResult:
    """Re-check a certificate at fresh points of closure(C) in its coset.

    Boundary points come first, then interior points further out.
    """
    atlas = atlas or atlas_for(cert.type)
    rs = atlas.root_system
    chamber = atlas.chamber(cert.chamber_id)
    used = {w for w, _ in cert.fit_points + cert.validation_points}
    budget = len(used) + extra_count
    needed = comb(rs.rank + degree_bound(rs), rs.rank)
    walls = [w for w in sample_wall_points(atlas, chamber, cert.coset, budget, config) if w not in used]
    interior = [
        w for w in sample_lattice_points(atlas, chamber, cert.coset, max(budget, needed), config)
        if w not in used
    ]
    fresh = (walls[: (extra_count + 1) // 2] + interior)[:extra_count]
    bad = _first_mismatch(rs, cert.polynomial, [(w, oracle(w)) for w in fresh])
    return VerificationResult(bad is None, len(fresh), bad)


# =============================================================================
# FULL ATLAS
# =============================================================================

def _fit_job(simple_type: SimpleType, chamber_id: str, coset: CosetRep, oracle: Oracle,
             config: FitConfig | None) -> PiecewiseCertificate:
    atlas = atlas_for(simple_type)
    return fit(atlas.root_system, atlas, atlas.chamber(chamber_id), coset, oracle, config)


def _picklable(obj) -> bool:
    try:
        pickle.dumps(obj)
    except (pickle.PicklingError, AttributeError, TypeError):
        return False
    return True


def default_oracle(simple_type: SimpleType) -> Oracle:
    return partial(zero_weight_dim, build_root_system(simple_type))


def full_atlas_fit(
    simple_type: SimpleType,
    oracle: Oracle | None = None,
    jobs: int = 1,
    config: FitConfig | None = None,
    strict: bool = True,
) -> list[PiecewiseCertificate]:
    """One certificate per (chamber, coset), ordered by chamber then coset.

    With jobs > 1 the oracle is sent to worker processes, so it must be
    picklable (a module-level function or a functools.partial of one). A
    lambda or closure falls back to fitting in this process.
    """
    atlas = atlas_for(simple_type)
    oracle = oracle or default_oracle(simple_type)
    if jobs > 1 and not _picklable(oracle):
        log.warning("full_atlas_fit: oracle %r cannot be pickled, fitting serially", oracle)
        jobs = 1
    cosets = list(coset_reps(gamma_lattice(simple_type)))
    tasks = [(c.id, k) for c in atlas.chambers for k in cosets]
    log.info("full_atlas_fit: %s, %d chambers x %d cosets, jobs=%d",
             simple_type, len(atlas.chambers), len(cosets), jobs)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_fit_job, simple_type, cid, k, oracle, config) for cid, k in tasks]
            certs = [f.result() for f in futures]
    else:
        certs = [_fit_job(simple_type, cid, k, oracle, config) for cid, k in tasks]

    order = {c.id: i for i, c in enumerate(atlas.chambers)}
    certs.sort(key=lambda c: (order[c.chamber_id], c.coset))
    failed = [c for c in certs if not c.verified]
    if failed and strict:
        first = failed[0]
        raise FitError(
            f"{len(failed)} of {len(certs)} certificates failed for {simple_type} "
            f"(first: chamber {first.chamber_id}, coset {first.coset})",
            first,
        )
    return certs


@dataclass(frozen=True)
class CertificateGroup:
    coset: CosetRep
    polynomial: ExactPolynomial
    chamber_ids: tuple[str, ...]


def group_equal_certificates(certs: Sequence[PiecewiseCertificate]) -> list[CertificateGroup]:
    """Group chambers whose certificates carry the same polynomial within a coset."""
    groups: dict[tuple[CosetRep, ExactPolynomial], list[str]] = {}
    for c in certs:
        groups.setdefault((c.coset, c.polynomial), []).append(c.chamber_id)
    return [
        CertificateGroup(coset, poly, tuple(ids))
        for (coset, poly), ids in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[1]))
    ]


def wall_disagreements(
    atlas: ChamberAtlas,
    certs: Sequence[PiecewiseCertificate],
    count: int = 20,
    config: FitConfig | None = None,
) -> list[tuple[str, str, Weight]]:
    """Points of a shared wall where two adjacent chambers' certificates differ."""
    rs = atlas.root_system
    by_key = {(c.chamber_id, c.coset): c for c in certs}
    problems = []
    for a, b in sorted(atlas.graph.edges()):
        for coset in sorted({c.coset for c in certs}):
            ca, cb = by_key.get((a, coset)), by_key.get((b, coset))
            if ca is None or cb is None:
                continue
            chamber_b = atlas.chamber(b)
            for w in sample_wall_points(atlas, atlas.chamber(a), coset, count, config):
                signs = atlas.signs_at(rs.fundamental_coords(w))
                if not all(s == 0 or s == cs for s, cs in zip(signs, chamber_b.signs)):
                    continue
                if ca.value_at(rs, w) != cb.value_at(rs, w):
                    problems.append((a, b, w))
    return problems
