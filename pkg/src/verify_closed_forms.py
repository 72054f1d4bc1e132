#!/usr/bin/env python3
"""
verify_closed_forms.py — Closed-form verification suite

Cross-checks every closed form against two independent oracles (branching
recursion and Freudenthal) on full grids, plus the polynomial identities and
boundary behaviour of the GL4 formulas.

Sections:
  3   descent lattice table and fitted certificates vs closed forms
  5   GL3 and SO5 grids, B2 coset parity vs the SO5 parity split
  6   GL4 grid, duality, p3 - p4 identity, wall agreements, chamber regions

Run:
  python src/verify_closed_forms.py                 # all sections
  python src/verify_closed_forms.py --section 5

Created: 2026-10-12
"""

import argparse
import logging
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Iterator

import sympy

sys.path.insert(0, str(Path(__file__).parent))

from branching import (
    GL4Region, GLWeight, SOWeight, dual_gl, gl3_closed_form, gl4_closed_form, gl4_region,
    gl_to_root_weight, p1, p2, p3, p4, so5_closed_form, so5_to_root_weight, zero_dim_gl,
    zero_dim_so5,
)
from chambers import atlas_for, classify
from lattice import coset_reps, gamma_lattice, set_builder_membership, reduce
from multiplicity import zero_weight_dim
from piecewise import ExactPolynomial, full_atlas_fit, polynomial_from_epsilon
from report import print_table
from rootsys import SimpleType, Weight, build_root_system, parse_type

log = logging.getLogger(__name__)

SECTIONS = ("3", "5", "6")

# chamber sign string over the sorted A3 walls (-4l2, -2(l2+l3), -4l3) -> region
A3_CHAMBER_REGIONS = {
    "+++": GL4Region.R1,
    "---": GL4Region.R2,
    "-++": GL4Region.R3,
    "--+": GL4Region.R4,
}


@dataclass
class CheckResult:
    name: str
    checked: int
    passed: bool
    counterexample: str | None = None

    @property
    def status(self) -> str:
        return "ok" if self.passed else "FAILED"


def _run(name: str, cases: Iterable, check: Callable) -> CheckResult:
    """check(case) returns None when the case passes, else a description."""
    n = 0
    for case in cases:
        n += 1
        problem = check(case)
        if problem is not None:
            log.error("%s: counterexample %s", name, problem)
            return CheckResult(name, n, False, problem)
    log.info("%s: %d cases ok", name, n)
    return CheckResult(name, n, True)


# =============================================================================
# GRIDS
# =============================================================================

def gl3_weights(max_first: int) -> Iterator[GLWeight]:
    for l1 in range(max_first + 1):
        for l2 in range(-l1, l1 + 1):
            l3 = -l1 - l2
            if l2 >= l3:
                yield GLWeight((l1, l2, l3))


def gl4_weights(max_first: int) -> Iterator[GLWeight]:
    for l1 in range(max_first + 1):
        for l2 in range(-l1, l1 + 1):
            for l3 in range(-(l1 + l2) - 1, l2 + 1):
                l4 = -(l1 + l2 + l3)
                if l4 <= l3:
                    yield GLWeight((l1, l2, l3, l4))


def so5_weights(max_first: int) -> Iterator[SOWeight]:
    for l1 in range(max_first + 1):
        for l2 in range(l1 + 1):
            yield SOWeight((l1, l2))


def generic_rationals(count: int, width: int, seed: int = 61) -> list[tuple[Fraction, ...]]:
    rng = random.Random(seed)
    return [
        tuple(Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(width))
        for _ in range(count)
    ]


# =============================================================================
# SECTION 5: GL3 AND SO5
# =============================================================================

def check_gl3(max_first: int = 20) -> CheckResult:
    a2 = build_root_system(SimpleType('A', 2))

    def check(lam):
        values = (gl3_closed_form(lam), zero_dim_gl(lam), zero_weight_dim(a2, gl_to_root_weight(lam)))
        if len(set(values)) != 1:
            return f"{lam}: closed form {values[0]}, branching {values[1]}, Freudenthal {values[2]}"
        return None

    return _run("GL3 closed form = branching = Freudenthal", gl3_weights(max_first), check)


def check_so5(max_first: int = 20) -> CheckResult:
    b2 = build_root_system(SimpleType('B', 2))

    def check(lam):
        values = (so5_closed_form(lam), zero_dim_so5(lam), zero_weight_dim(b2, so5_to_root_weight(lam)))
        if len(set(values)) != 1:
            return f"{lam.parts}: closed form {values[0]}, branching {values[1]}, Freudenthal {values[2]}"
        return None

    return _run("SO5 closed form = branching = Freudenthal", so5_weights(max_first), check)


def check_b2_parity(max_first: int = 20) -> CheckResult:
    gamma = gamma_lattice(SimpleType('B', 2))
    even = next(coset_reps(gamma))

    def check(lam):
        in_even = reduce(gamma, so5_to_root_weight(lam)) == even
        if in_even != (sum(lam.parts) % 2 == 0):
            return f"{lam.parts}: coset parity disagrees with lambda_1 + lambda_2"
        return None

    return _run("B2 coset = parity of lambda_1 + lambda_2", so5_weights(max_first), check)


def section_5() -> list[CheckResult]:
    return [check_gl3(), check_so5(), check_b2_parity()]


# =============================================================================
# SECTION 6: GL4
# =============================================================================

def check_gl4(max_first: int = 12) -> CheckResult:
    a3 = build_root_system(SimpleType('A', 3))

    def check(lam):
        values = (gl4_closed_form(lam), zero_dim_gl(lam), zero_weight_dim(a3, gl_to_root_weight(lam)))
        if len(set(values)) != 1:
            return (f"{lam} ({gl4_region(lam).value}): closed form {values[0]}, "
                    f"branching {values[1]}, Freudenthal {values[2]}")
        return None

    return _run("GL4 closed form = branching = Freudenthal", gl4_weights(max_first), check)


def check_duality(max_first: int = 12) -> CheckResult:
    def check(lam):
        a, b = zero_dim_gl(lam), zero_dim_gl(dual_gl(lam))
        return None if a == b else f"{lam}: {a} but dual {dual_gl(lam)} gives {b}"

    return _run("GL4 duality d(lambda) = d(lambda*)", gl4_weights(max_first), check)


def check_p3_p4_identity(points: int = 24) -> CheckResult:
    def check(pt):
        s = pt[1] + pt[2]
        lhs = p3(*pt) - p4(*pt)
        rhs = s - s ** 3
        return None if lhs == rhs else f"{pt}: p3 - p4 = {lhs}, expected {rhs}"

    pts = [(a, b, c, -(a + b + c)) for a, b, c in generic_rationals(points, 3)]
    return _run("p3 - p4 = (l2+l3) - (l2+l3)^3", pts, check)


def _on_wall(points: int, zero_index: int, seed: int) -> list[tuple[Fraction, ...]]:
    out = []
    for a, b in generic_rationals(points, 2, seed):
        free = [a, b]
        lam = []
        for i in range(3):
            lam.append(Fraction(0) if i == zero_index else free.pop(0))
        lam.append(-sum(lam))
        out.append(tuple(lam))
    return out


def check_wall_agreement(points: int = 24) -> list[CheckResult]:
    def agree(f, g):
        def check(pt):
            return None if f(*pt) == g(*pt) else f"{pt}: {f.__name__}={f(*pt)}, {g.__name__}={g(*pt)}"
        return check

    # p2 and p3 only meet on the face lambda_2 = lambda_3 = 0 of the closure of R3;
    # across the whole of lambda_3 = 0 the R2 polynomial continues R4
    face = [(a, Fraction(0), Fraction(0), -a) for a, _ in generic_rationals(points, 2, 13)]
    return [
        _run("p1 = p3 on lambda_2 = 0", _on_wall(points, 1, 7), agree(p1, p3)),
        _run("p2 = p4 on lambda_3 = 0", _on_wall(points, 2, 11), agree(p2, p4)),
        _run("p2 = p3 on lambda_2 = lambda_3 = 0", face, agree(p2, p3)),
    ]


def check_boundary_witness() -> CheckResult:
    pt = tuple(Fraction(x) for x in (2, 1, 0, -3))
    differs = p1(*pt) != p3(*pt)
    detail = None if differs else f"{pt}: p1 and p3 agree, expected a difference on lambda_3 = 0"
    return CheckResult("p1 != p3 somewhere on lambda_3 = 0", 1, differs, detail)


def check_chamber_regions(max_first: int = 12) -> CheckResult:
    atlas = atlas_for(SimpleType('A', 3))

    def cases():
        for lam in gl4_weights(max_first):
            result = classify(atlas, gl_to_root_weight(lam))
            if result.interior is not None:
                yield lam, result.interior

    def check(case):
        lam, chamber_id = case
        expected = A3_CHAMBER_REGIONS[chamber_id]
        got = gl4_region(lam)
        return None if got == expected else f"{lam}: chamber {chamber_id} but region {got.value}"

    return _run("A3 chambers = GL4 regions", cases(), check)


def section_6() -> list[CheckResult]:
    return [
        check_gl4(),
        check_duality(),
        check_p3_p4_identity(),
        *check_wall_agreement(),
        check_boundary_witness(),
        check_chamber_regions(),
    ]


# =============================================================================
# SECTION 3: DESCENT LATTICES AND CERTIFICATES
# =============================================================================

EXPECTED_INDEX = {"A1": 1, "A3": 1, "B2": 2, "C2": 2, "C3": 4, "G2": 12, "F4": 5184, "D4": 4, "D5": 16, "B3": 8}


def _so5_even(l1, l2):
    return (l1 - l2) * l2 + (l1 + l2) / 2 + 1


def _so5_odd(l1, l2):
    return (l1 - l2) * l2 + (l1 + l2) / 2 + sympy.Rational(1, 2)


def reference_polynomials(simple_type: SimpleType) -> dict[tuple[str, tuple[int, ...]], ExactPolynomial]:
    """Closed forms in Dynkin labels, keyed by (chamber id, coset coordinates)."""
    name = str(simple_type)
    if name == "A2":
        rs = build_root_system(simple_type)
        return {
            ("+", (0, 0)): polynomial_from_epsilon(rs, lambda l1, l2, l3: l2 - l3 + 1),
            ("-", (0, 0)): polynomial_from_epsilon(rs, lambda l1, l2, l3: l1 - l2 + 1),
        }
    if name == "B2":
        rs = build_root_system(simple_type)
        return {
            ("*", (0, 0)): polynomial_from_epsilon(rs, _so5_even),
            ("*", (0, 1)): polynomial_from_epsilon(rs, _so5_odd),
        }
    if name == "C2":
        b2 = reference_polynomials(SimpleType('B', 2))
        # B2 = C2 swaps the two simple roots
        return {
            ("*", (0, 0)): b2[("*", (0, 0))].permuted((1, 0)),
            ("*", (1, 0)): b2[("*", (0, 1))].permuted((1, 0)),
        }
    if name == "A3":
        rs = build_root_system(simple_type)
        forms = {GL4Region.R1: p1, GL4Region.R2: p2, GL4Region.R3: p3, GL4Region.R4: p4}
        return {
            (cid, (0, 0, 0)): polynomial_from_epsilon(rs, forms[region])
            for cid, region in A3_CHAMBER_REGIONS.items()
        }
    raise ValueError(f"no closed forms recorded for {simple_type}")


def check_lattice_table() -> list[CheckResult]:
    def index_check(name):
        gamma = gamma_lattice(parse_type(name))
        reps = list(coset_reps(gamma))
        if gamma.index != EXPECTED_INDEX[name] or len(reps) != gamma.index:
            return f"{name}: index {gamma.index}, {len(reps)} reps, expected {EXPECTED_INDEX[name]}"
        return None

    rng = random.Random(5)

    def membership_cases():
        for name in ("D4", "D5", "D6"):
            for _ in range(200):
                yield name, tuple(rng.randint(-9, 9) for _ in range(int(name[1])))

    def membership_check(case):
        name, coords = case
        t = parse_type(name)
        ours = reduce(gamma_lattice(t), Weight.of(coords)).is_zero
        if ours != set_builder_membership(t, coords):
            return f"{name} {coords}: basis membership {ours}, set-builder {not ours}"
        return None

    return [
        _run("Gamma index table", sorted(EXPECTED_INDEX), index_check),
        _run("D4/D5/D6 basis = set-builder membership", membership_cases(), membership_check),
    ]


def check_certificates(names: Iterable[str] = ("A2", "B2", "C2", "A3")) -> list[CheckResult]:
    results = []
    for name in names:
        t = SimpleType(name[0], int(name[1:]))
        certs = full_atlas_fit(t, strict=False)
        refs = reference_polynomials(t)

        def check(cert, refs=refs):
            if not cert.verified:
                w, expected, got = cert.counterexample or (None, None, None)
                return f"chamber {cert.chamber_id} coset {cert.coset}: failed at {w} ({expected} vs {got})"
            if cert.coset.is_zero and cert.polynomial.constant_term != 1:
                return f"chamber {cert.chamber_id}: constant term {cert.polynomial.constant_term}"
            if cert.polynomial.degree > cert.degree_bound:
                return f"chamber {cert.chamber_id}: degree {cert.polynomial.degree} > {cert.degree_bound}"
            ref = refs.get((cert.chamber_id, cert.coset.coords))
            if ref is None or ref != cert.polynomial:
                return f"chamber {cert.chamber_id} coset {cert.coset}: fitted {cert.polynomial}, closed form {ref}"
            return None

        results.append(_run(f"{name} certificates = closed forms", certs, check))
    return results


def section_3() -> list[CheckResult]:
    return [*check_lattice_table(), *check_certificates()]


# =============================================================================
# DRIVER
# =============================================================================

SECTION_RUNNERS = {"3": section_3, "5": section_5, "6": section_6}


def run_sections(section: str = "all") -> list[CheckResult]:
    wanted = SECTIONS if section == "all" else (section,)
    results: list[CheckResult] = []
    for s in wanted:
        log.info("verify: section %s", s)
        results.extend(SECTION_RUNNERS[s]())
    return results


def print_results(results: list[CheckResult]) -> None:
    rows = [(r.name, r.checked, r.status) for r in results]
    print_table("CLOSED-FORM VERIFICATION", rows, ["check", "cases", "status"])
    for r in results:
        if not r.passed:
            print(f"\nCOUNTEREXAMPLE ({r.name}): {r.counterexample}")


def main() -> int:
    parser = argparse.ArgumentParser(description="Verify closed-form zero-weight results.")
    parser.add_argument("--section", choices=[*SECTIONS, "all"], default="all")
    args = parser.parse_args()
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S",
    )
    results = run_sections(args.section)
    print_results(results)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
