import random
from fractions import Fraction

import pytest

from errors import RootSystemError, WeightError, WeylGroupCapError
from rootsys import SimpleType, Weight, build_root_system, parse_type, weyl_group, weyl_orbit

ALL_TYPES = ["A1", "A2", "A3", "A5", "B2", "B3", "B4", "C2", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"]
EPSILON_TYPES = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "D5", "G2"]


def rs_of(name):
    return build_root_system(parse_type(name))


def test_a2_cartan(a2):
    assert a2.cartan == ((2, -1), (-1, 2))


def test_g2_cartan_has_short_first_root(g2):
    assert g2.cartan == ((2, -3), (-1, 2))
    assert g2.inner(g2.simple_roots[0], g2.simple_roots[0]) == 2
    assert g2.inner(g2.simple_roots[1], g2.simple_roots[1]) == 6


@pytest.mark.parametrize("name", ALL_TYPES)
def test_positive_root_count(name):
    t = parse_type(name)
    rs = build_root_system(t)
    assert len(rs.positive_roots) == t.positive_root_count()
    for beta in rs.positive_roots:
        assert beta.in_root_lattice()
        assert all(c >= 0 for c in beta.root)


@pytest.mark.parametrize("name,count", [("A3", 6), ("G2", 6), ("F4", 24), ("B3", 9), ("D4", 12)])
def test_standard_positive_root_counts(name, count):
    assert len(rs_of(name).positive_roots) == count


@pytest.mark.parametrize("name", ALL_TYPES)
def test_dual_basis_is_dual_to_simple_roots(name):
    rs = rs_of(name)
    for i, alpha in enumerate(rs.simple_roots):
        for j, x in enumerate(rs.dual_basis_x):
            assert rs.pairing(alpha, x) == (1 if i == j else 0)


@pytest.mark.parametrize("name", ALL_TYPES)
def test_fundamental_weights_dual_to_coroots(name):
    rs = rs_of(name)
    for i, omega in enumerate(rs.fundamental_weights):
        z = rs.fundamental_coords(omega)
        assert z == tuple(Fraction(1 if k == i else 0) for k in range(rs.rank))


def test_pairing_examples(a2):
    alpha1 = a2.simple_roots[0]
    assert a2.pairing(alpha1, a2.dual_basis_x[0]) == 1
    assert a2.pairing(Weight.zero(2), a2.dual_basis_x[1]) == 0
    # omega1 + omega2 = alpha1 + alpha2, and lambda(x_j) is the j-th root coordinate
    lam = a2.fundamental_weights[0] + a2.fundamental_weights[1]
    assert lam == a2.weight([1, 1])
    assert a2.pairing(lam, a2.dual_basis_x[0]) == 1


def test_pairing_rank_mismatch(a2):
    with pytest.raises(RootSystemError):
        a2.pairing(a2.simple_roots[0], [1, 0, 0])


@pytest.mark.parametrize("name", ALL_TYPES)
def test_fundamental_round_trip(name):
    rs = rs_of(name)
    rng = random.Random(name)
    for _ in range(20):
        z = tuple(Fraction(rng.randint(-9, 9)) for _ in range(rs.rank))
        assert rs.fundamental_coords(rs.from_fundamental(z)) == z
        c = rs.weight([rng.randint(-9, 9) for _ in range(rs.rank)])
        assert rs.from_fundamental(rs.fundamental_coords(c)) == c


@pytest.mark.parametrize("name", EPSILON_TYPES)
def test_epsilon_round_trip(name):
    rs = rs_of(name)
    rng = random.Random(name)
    for _ in range(20):
        w = rs.weight([rng.randint(-9, 9) for _ in range(rs.rank)])
        assert rs.from_epsilon(rs.epsilon_coords(w)) == w


def test_epsilon_examples(a2, b2):
    assert a2.from_epsilon([1, 0, -1]) == a2.highest_root()
    # B2: lambda = c1 eps1 + (c2 - c1) eps2
    assert b2.from_epsilon([1, 1]) == b2.weight([1, 2])
    assert b2.fundamental_coords(b2.from_epsilon([3, 1])) == (2, 2)


def test_epsilon_outside_root_span(a2, g2):
    with pytest.raises(WeightError):
        a2.from_epsilon([1, 0, 0])
    with pytest.raises(WeightError):
        g2.from_epsilon([1, 1, 1])


def test_epsilon_missing_for_exceptional():
    with pytest.raises(RootSystemError):
        rs_of("F4").epsilon_coords(Weight.zero(4))


@pytest.mark.parametrize("name,order", [("A2", 6), ("B2", 8), ("A3", 24), ("G2", 12), ("F4", 1152)])
def test_weyl_group_order(name, order):
    group = weyl_group(rs_of(name))
    assert len(group) == order
    assert group[0].length == 0


def test_weyl_group_cap():
    with pytest.raises(WeylGroupCapError):
        weyl_group(rs_of("E7"))
    with pytest.raises(WeylGroupCapError):
        weyl_group(rs_of("A3"), cap=10)


@pytest.mark.parametrize("name", ["A2", "B2", "A3", "G2", "C3"])
def test_weyl_group_permutes_roots_and_preserves_form(name):
    rs = rs_of(name)
    roots = set(rs.all_roots())
    for w in weyl_group(rs):
        assert {w.apply(b) for b in roots} == roots
        for a in rs.simple_roots:
            for b in rs.simple_roots:
                assert rs.inner(w.apply(a), w.apply(b)) == rs.inner(a, b)


def test_weyl_words_reproduce_matrices(a3):
    for w in weyl_group(a3):
        v = a3.weight([3, -1, 2])
        image = v
        for i in reversed(w.word):
            image = a3.simple_reflection(image, i)
        assert image == w.apply(v)


def test_weyl_orbit_sizes(a2, a3):
    assert len(weyl_orbit(a2, a2.fundamental_weights[0])) == 3
    assert len(weyl_orbit(a3, a3.fundamental_weights[1])) == 6
    assert weyl_orbit(a3, Weight.zero(3)) == {Weight.zero(3)}


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_orbit_has_one_dominant_element(name):
    rs = rs_of(name)
    v = rs.from_fundamental([1, 0] + [2] * (rs.rank - 2))
    orbit = weyl_orbit(rs, v)
    assert sum(1 for w in orbit if rs.is_dominant(w)) == 1
    dom, word = rs.dominant_conjugate(next(iter(orbit)))
    assert dom == v


@pytest.mark.parametrize("text,expected", [("A3", ("A", 3)), ("g2", ("G", 2)), ("E_8", ("E", 8))])
def test_parse_type(text, expected):
    t = parse_type(text)
    assert (t.family, t.rank) == expected
    assert str(t) == f"{expected[0]}{expected[1]}"


@pytest.mark.parametrize("family,rank", [("D", 3), ("E", 9), ("G", 3), ("B", 1), ("F", 5), ("A", 0), ("X", 2)])
def test_invalid_types(family, rank):
    with pytest.raises(RootSystemError):
        SimpleType(family, rank)


def test_parse_type_rejects_garbage():
    with pytest.raises(RootSystemError):
        parse_type("sl3")


def test_highest_roots(a2, g2):
    assert a2.fundamental_coords(a2.highest_root()) == (1, 1)
    assert g2.highest_root() == g2.weight([3, 2])
    assert g2.fundamental_coords(g2.highest_root()) == (0, 1)
