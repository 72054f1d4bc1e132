"""
multiplicity.py — Weight multiplicities by Freudenthal's recursion

Computes dim V(lambda)_mu exactly, and in particular the zero-weight dimension
mu_0(lambda) = dim V(lambda)_0, which every other module uses as its oracle.

Internally everything runs on integer Dynkin labels with an integer-scaled
copy of the invariant form:

    m(mu) * [(lam+rho, lam+rho) - (mu+rho, mu+rho)]
        = 2 * sum_{beta > 0} sum_{k >= 1} m(mu + k beta) * (mu + k beta, beta)

Only dominant weights are stored; other weights are looked up through their
dominant conjugate. Dominant weights are visited by increasing depth
(height of lambda - mu), ties broken by root coordinates.

Usage (as library):
    from multiplicity import zero_weight_dim
    zero_weight_dim(rs, rs.highest_root())    # = rank

Created: 2026-10-04
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from pathlib import Path

from errors import WeightError
from exact import as_ints, is_integral, rational_str
from report import write_csv
from rootsys import RootSystem, Weight

log = logging.getLogger(__name__)

Labels = tuple[int, ...]

CSV_HEADERS = ["weight_root_coords", "multiplicity", "orbit_size"]


# =============================================================================
# INTEGER KERNEL
# =============================================================================

@dataclass(frozen=True)
class _Kernel:
    """Integer data for fast recursion on Dynkin labels."""
    cartan: tuple[tuple[int, ...], ...]
    form: tuple[tuple[int, ...], ...]           # scaled form on Dynkin labels
    positive: tuple[Labels, ...]                # positive roots as Dynkin labels
    height: tuple[Fraction, ...]                # height(mu) = sum_j height[j] * z_j


@lru_cache(maxsize=None)
def _kernel(rs: RootSystem) -> _Kernel:
    n = rs.rank
    inv = rs.cartan_inverse
    d = rs.symmetrizer
    # (lambda, mu) = z^T G z' with G[i][j] = inv[j][i] * d_j
    g = [[inv[j][i] * d[j] for j in range(n)] for i in range(n)]
    scale = lcm(*(x.denominator for row in g for x in row))
    form = tuple(tuple(int(x * scale) for x in row) for row in g)
    positive = tuple(as_ints(rs.fundamental_coords(b)) for b in rs.positive_roots)
    height = tuple(sum((inv[i][j] for i in range(n)), Fraction(0)) for j in range(n))
    return _Kernel(rs.cartan, form, positive, height)


def _ip(k: _Kernel, a: Labels, b: Labels) -> int:
    n = len(a)
    return sum(a[i] * k.form[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j])


def _dominant(k: _Kernel, z: Labels) -> Labels:
    z = list(z)
    n = len(z)
    while True:
        for i in range(n):
            zi = z[i]
            if zi < 0:
                for j in range(n):
                    z[j] -= zi * k.cartan[j][i]
                break
        else:
            return tuple(z)


def _orbit_size(k: _Kernel, z: Labels) -> int:
    seen = {z}
    queue = deque([z])
    n = len(z)
    while queue:
        w = queue.popleft()
        for i in range(n):
            if w[i] == 0:
                continue
            image = tuple(w[j] - w[i] * k.cartan[j][i] for j in range(n))
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return len(seen)


def _depth(k: _Kernel, top: Labels, mu: Labels) -> int:
    h = sum((k.height[j] * (top[j] - mu[j]) for j in range(len(top))), Fraction(0))
    return int(h)


def _dominant_below(k: _Kernel, top: Labels) -> list[Labels]:
    """Dominant mu <= top, by subtracting positive roots from dominant weights."""
    seen = {top}
    queue = deque([top])
    while queue:
        mu = queue.popleft()
        for beta in k.positive:
            nu = tuple(m - b for m, b in zip(mu, beta))
            if nu not in seen and all(c >= 0 for c in nu):
                seen.add(nu)
                queue.append(nu)
    return list(seen)


@lru_cache(maxsize=512)
def _freudenthal(rs: RootSystem, top: Labels) -> tuple[tuple[Labels, int], ...]:
    k = _kernel(rs)
    n = len(top)
    inv = rs.cartan_inverse

    def order_key(mu: Labels):
        root = tuple(sum((inv[i][j] * mu[j] for j in range(n)), Fraction(0)) for i in range(n))
        return (_depth(k, top, mu), root)

    weights = sorted(_dominant_below(k, top), key=order_key)
    rho = (1,) * n
    top_rho = tuple(t + 1 for t in top)
    target = _ip(k, top_rho, top_rho)

    mult: dict[Labels, int] = {top: 1}
    for mu in weights[1:]:
        total = 0
        for beta in k.positive:
            step = 1
            while True:
                nu = tuple(m + step * b for m, b in zip(mu, beta))
                m_nu = mult.get(_dominant(k, nu))
                if m_nu is None:
                    break
                total += m_nu * _ip(k, nu, beta)
                step += 1
        mu_rho = tuple(m + r for m, r in zip(mu, rho))
        denom = target - _ip(k, mu_rho, mu_rho)
        numer = 2 * total
        if denom <= 0 or numer % denom:
            raise ArithmeticError(
                f"Freudenthal recursion for {rs.type} {top} produced non-integral "
                f"multiplicity {numer}/{denom} at {mu}"
            )
        m = numer // denom
        if m > 0:
            mult[mu] = m
    log.debug("_freudenthal: %s %s -> %d dominant weights", rs.type, top, len(mult))
    return tuple((mu, mult[mu]) for mu in weights if mu in mult)


# =============================================================================
# PUBLIC API
# =============================================================================

def _dominant_labels(rs: RootSystem, lam: Weight) -> Labels:
    z = rs.fundamental_coords(lam)
    if not is_integral(z):
        raise WeightError(f"{lam} is not an integral weight of {rs.type}")
    labels = as_ints(z)
    if any(c < 0 for c in labels):
        raise WeightError(f"{lam} is not dominant (Dynkin labels {labels})")
    return labels


def _require_root_lattice(lam: Weight) -> None:
    if not lam.in_root_lattice():
        raise WeightError(
            f"{lam} is not in the root lattice Q; the adjoint group only has weights in Q"
        )


@dataclass(frozen=True)
class MultiplicityTable:
    highest_weight: Weight
    entries: dict[Weight, int]
    orbit_sizes: dict[Weight, int]

    def multiplicity(self, mu: Weight) -> int:
        return self.entries.get(mu, 0)

    def total_dimension(self) -> int:
        return sum(m * self.orbit_sizes[mu] for mu, m in self.entries.items())

    def rows(self) -> list[tuple[str, int, int]]:
        return [
            (";".join(rational_str(c) for c in mu.root), m, self.orbit_sizes[mu])
            for mu, m in self.entries.items()
        ]

    def to_csv(self, path: Path) -> Path:
        """Write root coords (semicolon-joined), multiplicity and orbit size per row."""
        return write_csv(path, self.rows(), CSV_HEADERS)


def multiplicity_table(rs: RootSystem, lam: Weight) -> MultiplicityTable:
    """Freudenthal table for any integral dominant highest weight."""
    top = _dominant_labels(rs, lam)
    k = _kernel(rs)
    entries: dict[Weight, int] = {}
    orbits: dict[Weight, int] = {}
    for labels, m in _freudenthal(rs, top):
        mu = rs.from_fundamental(labels)
        entries[mu] = m
        orbits[mu] = _orbit_size(k, labels)
    return MultiplicityTable(lam, entries, orbits)


def weight_multiplicity(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    """dim V(lam)_mu for lam dominant in Q."""
    top = _dominant_labels(rs, lam)
    _require_root_lattice(lam)
    if not (lam - mu).in_root_lattice():
        return 0
    z = rs.fundamental_coords(mu)
    if not is_integral(z):
        return 0
    k = _kernel(rs)
    target = _dominant(k, as_ints(z))
    return dict(_freudenthal(rs, top)).get(target, 0)


def zero_weight_dim(rs: RootSystem, lam: Weight) -> int:
    """mu_0(lam) = dim V(lam)_0."""
    return weight_multiplicity(rs, lam, Weight.zero(rs.rank))


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """Weyl dimension formula: prod over beta > 0 of (lam+rho, beta) / (rho, beta)."""
    top = _dominant_labels(rs, lam)
    k = _kernel(rs)
    rho = (1,) * rs.rank
    top_rho = tuple(t + 1 for t in top)
    value = Fraction(1)
    for beta in k.positive:
        value *= Fraction(_ip(k, top_rho, beta), _ip(k, rho, beta))
    if value.denominator != 1:
        raise ArithmeticError(f"Weyl dimension of {lam} in {rs.type} is not an integer: {value}")
    return value.numerator


def dominant_weights_below(rs: RootSystem, lam: Weight) -> list[Weight]:
    """All dominant mu with lam - mu a non-negative integer combination of simple roots.

    Ordered by depth below lam, then root coordinates.
    """
    top = _dominant_labels(rs, lam)
    k = _kernel(rs)
    labels = _dominant_below(k, top)
    weights = [rs.from_fundamental(z) for z in labels]
    return sorted(weights, key=lambda mu: (rs.height(lam - mu), mu.root))
