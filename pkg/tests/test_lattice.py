import random
from itertools import islice, product

import pytest

from errors import LatticeError
from lattice import (
    CosetRep, contains, coset_reps, gamma_lattice, invariant_factors, lift, set_builder_membership, reduce,
)
from rootsys import SimpleType, Weight, build_root_system, parse_type


@pytest.mark.parametrize("name,index", [
    ("A1", 1), ("A3", 1), ("B2", 2), ("B3", 8), ("C2", 2), ("C3", 4), ("D4", 4), ("D5", 16),
    ("G2", 12), ("F4", 5184), ("E6", 6 ** 6 // 3), ("E7", 12 ** 7 // 2), ("E8", 60 ** 8),
])
def test_index(name, index):
    assert gamma_lattice(parse_type(name)).index == index


@pytest.mark.parametrize("name", ["A2", "B2", "B3", "C3", "D4", "D5", "G2", "F4"])
def test_coset_count_matches_index(name):
    gamma = gamma_lattice(parse_type(name))
    reps = list(coset_reps(gamma))
    assert len(reps) == gamma.index == len(set(reps))
    assert reps[0].is_zero
    for rep in reps:
        assert reduce(gamma, lift(rep)) == rep


def test_coset_reps_are_generated_lazily():
    e8 = gamma_lattice(parse_type("E8"))
    first = list(islice(coset_reps(e8), 3))
    assert [r.coords for r in first] == [(0,) * 7 + (k,) for k in range(3)]


def test_json_caps_listed_cosets():
    data = gamma_lattice(parse_type("E8")).to_dict()
    assert data["hnf_diagonal"] == [60] * 8
    assert len(data["coset_reps"]) == 1024
    assert data["coset_reps_truncated"] is True


def test_g2_generators():
    gamma = gamma_lattice(SimpleType('G', 2))
    assert gamma.generators == ((6, 0), (0, 2))
    assert invariant_factors(gamma) == (2, 6)


def test_c2_cosets():
    gamma = gamma_lattice(SimpleType('C', 2))
    assert [r.coords for r in coset_reps(gamma)] == [(0, 0), (1, 0)]
    assert reduce(gamma, Weight.of([1, 0])) == CosetRep((1, 0))
    assert reduce(gamma, Weight.of([3, 0])) == CosetRep((1, 0))
    assert reduce(gamma, Weight.of([-1, 7])) == CosetRep((1, 0))


def test_b2_cosets_are_parity_of_second_coordinate():
    gamma = gamma_lattice(SimpleType('B', 2))
    assert [r.coords for r in coset_reps(gamma)] == [(0, 0), (0, 1)]
    b2 = build_root_system(SimpleType('B', 2))
    for l1 in range(21):
        for l2 in range(l1 + 1):
            rep = reduce(gamma, b2.from_epsilon([l1, l2]))
            assert rep.is_zero == ((l1 + l2) % 2 == 0)


def test_reduce_examples():
    g2 = gamma_lattice(SimpleType('G', 2))
    assert reduce(g2, Weight.of([6, 2])).is_zero
    assert reduce(g2, Weight.of([-1, 0])) == CosetRep((5, 0))
    a3 = gamma_lattice(SimpleType('A', 3))
    assert reduce(a3, Weight.of([5, -2, 9])).is_zero


@pytest.mark.parametrize("name", ["B2", "C3", "D4", "G2", "F4", "E6"])
def test_reduction_is_canonical(name):
    gamma = gamma_lattice(parse_type(name))
    rng = random.Random(name)
    for _ in range(30):
        v = [rng.randint(-40, 40) for _ in range(gamma.rank)]
        g = [rng.randint(-3, 3) for _ in range(gamma.rank)]
        shift = [sum(g[k] * gamma.generators[k][i] for k in range(gamma.rank)) for i in range(gamma.rank)]
        rep = reduce(gamma, Weight.of(v))
        assert reduce(gamma, Weight.of([a + b for a, b in zip(v, shift)])) == rep
        assert all(0 <= rep.coords[i] < gamma.hnf[i][i] for i in range(gamma.rank))
        assert contains(gamma, Weight.of(v) - lift(rep))


@pytest.mark.parametrize("rank", [4, 5, 6])
def test_d_membership_matches_set_builder(rank):
    t = SimpleType('D', rank)
    gamma = gamma_lattice(t)
    for c in product(range(-2, 3), repeat=rank) if rank < 6 else product(range(-1, 2), repeat=rank):
        assert contains(gamma, Weight.of(c)) == set_builder_membership(t, c), c


def test_d4_invariant_factors():
    assert invariant_factors(gamma_lattice(SimpleType('D', 4))) == (2, 2)
    assert invariant_factors(gamma_lattice(SimpleType('A', 3))) == ()


def test_set_builder_only_for_d():
    with pytest.raises(LatticeError):
        set_builder_membership(SimpleType('B', 3), (0, 0, 0))


def test_reduce_rejects_weights_outside_q(a2):
    gamma = gamma_lattice(SimpleType('A', 2))
    with pytest.raises(LatticeError):
        reduce(gamma, a2.fundamental_weights[0])
    with pytest.raises(LatticeError):
        reduce(gamma, Weight.of([1, 2, 3]))


def test_hnf_is_upper_triangular():
    for name in ["D4", "D5", "E6", "E7"]:
        h = gamma_lattice(parse_type(name)).hnf
        n = len(h)
        assert all(h[i][j] == 0 for i in range(n) for j in range(i))
        assert all(h[i][i] > 0 for i in range(n))


def test_json_lists_cosets():
    data = gamma_lattice(SimpleType('C', 2)).to_dict()
    assert data["index"] == 2
    assert data["coset_reps"] == [[0, 0], [1, 0]]
    assert data["coset_reps_truncated"] is False
    assert data["hnf_diagonal"] == [2, 1]
    assert data["invariant_factors"] == [2]
