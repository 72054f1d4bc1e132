import json
from dataclasses import replace
from fractions import Fraction

import pytest
import sympy

from branching import GL4_POLYNOMIALS, GL4Region, GLWeight, gl_to_root_weight
from chambers import atlas_for
from errors import FitError, SamplingError
from lattice import CosetRep, gamma_lattice, reduce
from multiplicity import zero_weight_dim
from piecewise import (
    ExactPolynomial, FitConfig, RowSpan, _solve, default_oracle, degree_bound, fit, full_atlas_fit,
    group_equal_certificates, monomial_basis, monomial_row, polynomial_from_epsilon, sample_fit_points,
    sample_lattice_points, sample_wall_points, verify_certificate, wall_disagreements,
)
from rootsys import SimpleType

A2 = SimpleType('A', 2)
A3 = SimpleType('A', 3)
B2 = SimpleType('B', 2)
G2 = SimpleType('G', 2)

A3_REGIONS = {"+++": GL4Region.R1, "---": GL4Region.R2, "-++": GL4Region.R3, "--+": GL4Region.R4}

B2_EVEN = ExactPolynomial.from_terms(2, {
    (1, 1): Fraction(1, 2), (1, 0): Fraction(1, 2), (0, 1): Fraction(1, 2), (0, 0): Fraction(1),
})
B2_ODD = ExactPolynomial.from_terms(2, {
    (1, 1): Fraction(1, 2), (1, 0): Fraction(1, 2), (0, 1): Fraction(1, 2), (0, 0): Fraction(1, 2),
})


def height_squared(weight):
    return int(sum(weight.root)) ** 2


@pytest.fixture(scope="module")
def a3_certs():
    return full_atlas_fit(A3)


@pytest.fixture(scope="module")
def g2_zero_cert():
    atlas = atlas_for(G2)
    return fit(atlas.root_system, atlas, atlas.chamber("*"), CosetRep((0, 0)), default_oracle(G2))


# =============================================================================
# POLYNOMIALS
# =============================================================================

def test_monomial_basis():
    assert monomial_basis(2, 1) == [(0, 0), (1, 0), (0, 1)]
    assert len(monomial_basis(3, 3)) == 20
    assert monomial_basis(2, 2)[3:] == [(2, 0), (1, 1), (0, 2)]
    with pytest.raises(ValueError):
        monomial_basis(2, -1)


def test_degree_bound(a2, a3, b2, g2):
    assert [degree_bound(rs) for rs in (a2, a3, b2, g2)] == [1, 3, 2, 4]


def test_polynomial_arithmetic():
    p = ExactPolynomial.from_terms(2, {(0, 0): 1, (1, 1): Fraction(1, 2), (2, 0): 0})
    assert p.degree == 2
    assert p.terms == (((0, 0), Fraction(1)), ((1, 1), Fraction(1, 2)))
    assert p.evaluate([2, 3]) == 4
    assert p.constant_term == 1
    assert (p - p).is_zero()
    assert p.permuted([1, 0]) == p
    q = ExactPolynomial.from_terms(2, {(1, 0): 1})
    assert q.permuted([1, 0]).coefficient((0, 1)) == 1


def test_polynomial_sympy_round_trip():
    z1, z2 = sympy.symbols("z1:3")
    p = ExactPolynomial.from_sympy(z1 * z2 / 2 + (z1 + z2) / 2 + 1, (z1, z2))
    assert p == B2_EVEN
    assert sympy.expand(p.to_sympy() - (z1 * z2 / 2 + (z1 + z2) / 2 + 1)) == 0


def test_substitute_linear():
    # z = (y1, y1 + y2): 1 + z2 becomes 1 + y1 + y2
    p = ExactPolynomial.from_terms(2, {(0, 0): 1, (0, 1): 1})
    assert p.substitute_linear([[1, 0], [1, 1]]) == ExactPolynomial.from_terms(
        2, {(0, 0): 1, (1, 0): 1, (0, 1): 1}
    )


def test_polynomial_from_epsilon(b2):
    def so5(l1, l2):
        return (l1 - l2) * l2 + (l1 + l2) / 2 + 1

    assert polynomial_from_epsilon(b2, so5) == B2_EVEN


def test_certificate_json_keeps_exact_coefficients():
    assert B2_ODD.to_dicts()[0] == {"exponents": [0, 0], "coeff": "1/2"}


# =============================================================================
# SAMPLING
# =============================================================================

def test_interior_samples_respect_chamber_and_coset(a2):
    atlas = atlas_for(A2)
    chamber = atlas.chamber("-")
    gamma = gamma_lattice(A2)
    points = sample_lattice_points(atlas, chamber, CosetRep((0, 0)), 12)
    assert len(points) == len(set(points)) == 12
    for w in points:
        z1, z2 = a2.fundamental_coords(w)
        assert 0 < z1 < z2
        assert reduce(gamma, w).is_zero


def test_wall_samples_lie_on_boundary(a2):
    atlas = atlas_for(A2)
    points = sample_wall_points(atlas, atlas.chamber("-"), CosetRep((0, 0)), 10)
    assert points
    assert a2.highest_root() in points
    for w in points:
        z = a2.fundamental_coords(w)
        assert z[0] == z[1] or 0 in z


def test_b2_odd_coset_samples(b2):
    atlas = atlas_for(B2)
    gamma = gamma_lattice(B2)
    odd = CosetRep((0, 1))
    for w in sample_lattice_points(atlas, atlas.chamber("*"), odd, 15):
        assert reduce(gamma, w) == odd
        l1, l2 = b2.epsilon_coords(w)
        assert (l1 + l2) % 2 == 1


def test_too_few_points_requested():
    atlas = atlas_for(A2)
    with pytest.raises(SamplingError):
        sample_lattice_points(atlas, atlas.chamber("+"), CosetRep((0, 0)), 2)


def test_radius_cap_exhausted():
    atlas = atlas_for(A2)
    config = FitConfig(radius=1, radius_cap=2)
    with pytest.raises(SamplingError):
        sample_lattice_points(atlas, atlas.chamber("+"), CosetRep((0, 0)), 50, config)


def test_row_span_rank():
    span = RowSpan()
    assert span.add([1, 2, 3])
    assert not span.add([2, 4, 6])
    assert span.add([0, 1, 1])
    assert not span.add([1, 3, 4])
    assert span.add([Fraction(1, 2), 0, 0])
    assert span.rank == 3
    assert not span.add([7, -1, 5])


def test_g2_fit_points_span_basis(g2):
    # the zero coset has z1 = 0 mod 6, so a degree 4 fit needs five z1 values
    atlas = atlas_for(G2)
    basis = monomial_basis(2, 4)
    fit_points, held = sample_fit_points(atlas, atlas.chamber("*"), CosetRep((0, 0)), basis, 30, 8)
    labels = [g2.fundamental_coords(w) for w in fit_points]
    assert all(z1 % 6 == 0 and z2 % 2 == 0 for z1, z2 in labels)
    assert len({z1 for z1, _ in labels}) >= 5
    span = RowSpan()
    for z in labels:
        span.add(monomial_row(basis, [int(x) for x in z]))
    assert span.rank == len(basis)
    assert len(fit_points) >= 30
    assert len(held) == 8
    assert not set(held) & set(fit_points)


def test_g2_rank_shortfall_raises():
    atlas = atlas_for(G2)
    config = FitConfig(radius=2, radius_cap=4)
    with pytest.raises(SamplingError, match="rank"):
        sample_fit_points(atlas, atlas.chamber("*"), CosetRep((0, 0)), monomial_basis(2, 4), 30, 8, config)


# =============================================================================
# FITTING
# =============================================================================

def test_solve_underdetermined():
    coeffs, free = _solve(monomial_basis(2, 1), [((1, 1), 3)])
    assert coeffs == {(0, 0): 3}
    assert free == ((1, 0), (0, 1))


def test_solve_inconsistent():
    assert _solve([(0, 0)], [((1, 1), 1), ((2, 2), 2)]) == (None, ())


def test_a2_certificates():
    certs = full_atlas_fit(A2)
    by_id = {c.chamber_id: c for c in certs}
    assert set(by_id) == {"+", "-"}
    assert by_id["+"].polynomial == ExactPolynomial.from_terms(2, {(0, 0): 1, (0, 1): 1})
    assert by_id["-"].polynomial == ExactPolynomial.from_terms(2, {(0, 0): 1, (1, 0): 1})
    for c in certs:
        assert c.verified
        assert c.degree_bound == 1
        assert len(c.fit_points) == 6
        assert c.free_monomials == ()


def test_b2_certificates_by_parity():
    certs = full_atlas_fit(B2)
    assert [(c.chamber_id, c.coset.coords) for c in certs] == [("*", (0, 0)), ("*", (0, 1))]
    assert certs[0].polynomial == B2_EVEN
    assert certs[1].polynomial == B2_ODD


def test_c2_certificates_are_b2_transported():
    certs = full_atlas_fit(SimpleType('C', 2))
    assert [c.coset.coords for c in certs] == [(0, 0), (1, 0)]
    assert certs[0].polynomial == B2_EVEN.permuted([1, 0])
    assert certs[1].polynomial == B2_ODD.permuted([1, 0])


def test_inconsistent_oracle_gives_failed_certificate(a2):
    atlas = atlas_for(A2)
    cert = fit(a2, atlas, atlas.chamber("+"), CosetRep((0, 0)), height_squared)
    assert not cert.verified
    assert cert.to_dict()["status"] == "failed"


def test_strict_full_fit_raises():
    with pytest.raises(FitError) as info:
        full_atlas_fit(A2, oracle=height_squared)
    assert info.value.certificate is not None
    certs = full_atlas_fit(A2, oracle=height_squared, strict=False)
    assert not any(c.verified for c in certs)


def test_certificate_json_is_deterministic():
    cert = full_atlas_fit(A2)[0]
    assert cert.to_json() == cert.to_json()
    data = json.loads(cert.to_json())
    assert data["chamber_id"] == "+"
    assert data["wall_normals"] == [[1, -1]]
    assert data["status"] == "verified"
    assert len(data["fit_points"]) == 6


def test_verify_certificate_on_fresh_points(a2):
    cert = full_atlas_fit(A2)[1]
    result = verify_certificate(cert, lambda w: zero_weight_dim(a2, w), 10)
    assert result.verified
    assert result.checked == 10


def test_verify_certificate_catches_wrong_polynomial(a2):
    good = full_atlas_fit(A2)[1]
    bad = replace(good, polynomial=ExactPolynomial.from_terms(2, {(0, 0): 1, (0, 1): 1}))
    result = verify_certificate(bad, lambda w: zero_weight_dim(a2, w), 10)
    assert not result.verified
    assert result.counterexample is not None


# =============================================================================
# A3
# =============================================================================

def test_a3_certificates_match_region_polynomials(a3, a3_certs):
    assert len(a3_certs) == 4
    for cert in a3_certs:
        assert cert.verified
        expected = polynomial_from_epsilon(a3, GL4_POLYNOMIALS[A3_REGIONS[cert.chamber_id]])
        assert cert.polynomial == expected, cert.chamber_id


def test_a3_certificates_have_no_free_monomials(a3_certs):
    assert all(c.free_monomials == () for c in a3_certs)


def test_a3_first_chamber_far_from_witness(a3, a3_certs):
    # lambda_2 <= 0 chamber, far along z1 where a thin sample used to go wrong
    r1 = next(c for c in a3_certs if c.chamber_id == "+++")
    lam = a3.from_fundamental((17, 2, 1))
    assert zero_weight_dim(a3, lam) == 15
    assert r1.value_at(a3, lam) == 15


def test_a3_adjoint_value(a3, a3_certs):
    r2 = next(c for c in a3_certs if c.chamber_id == "---")
    assert r2.value_at(a3, a3.highest_root()) == 3


def test_a3_walls_agree(a3_certs):
    assert wall_disagreements(atlas_for(A3), a3_certs) == []


def test_a3_boundary_is_not_a_wall(a3, a3_certs):
    # lambda_3 = 0 bounds the region of p2 but the lambda_2 <= 0 chamber polynomial is wrong there
    lam = gl_to_root_weight(GLWeight((2, 1, 0, -3)))
    r1 = next(c for c in a3_certs if c.chamber_id == "+++")
    assert r1.value_at(a3, lam) == 24
    assert zero_weight_dim(a3, lam) == 8


def test_a3_no_chambers_merge(a3_certs):
    groups = group_equal_certificates(a3_certs)
    assert len(groups) == 4
    assert all(len(g.chamber_ids) == 1 for g in groups)


# =============================================================================
# G2
# =============================================================================

def test_g2_zero_coset_certificate(g2_zero_cert):
    assert g2_zero_cert.verified
    assert g2_zero_cert.free_monomials == ()
    assert g2_zero_cert.polynomial.constant_term == 1
    assert g2_zero_cert.polynomial.degree <= 4


def test_g2_zero_coset_beyond_the_sample(g2, g2_zero_cert):
    lam = g2.from_fundamental((36, 2))
    assert g2_zero_cert.value_at(g2, lam) == zero_weight_dim(g2, lam)


def test_g2_sparse_coset(g2):
    atlas = atlas_for(G2)
    lam = g2.from_fundamental((20, 1))
    coset = reduce(gamma_lattice(G2), lam)
    assert not coset.is_zero
    cert = fit(g2, atlas, atlas.chamber("*"), coset, default_oracle(G2))
    assert cert.verified
    assert cert.free_monomials == ()
    assert cert.value_at(g2, lam) == zero_weight_dim(g2, lam)


def test_parallel_fit_with_unpicklable_oracle(a2, caplog):
    certs = full_atlas_fit(A2, oracle=lambda w: zero_weight_dim(a2, w), jobs=2)
    assert [c.chamber_id for c in certs] == ["+", "-"]
    assert all(c.verified for c in certs)
    assert "fitting serially" in caplog.text


@pytest.mark.slow
def test_g2_twelve_cosets():
    certs = full_atlas_fit(SimpleType('G', 2), jobs=2)
    assert len(certs) == 12
    assert all(c.verified for c in certs)
    assert all(c.polynomial.degree <= 4 for c in certs)
