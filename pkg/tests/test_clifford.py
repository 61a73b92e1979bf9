from fractions import Fraction

import pytest

from adinkralab import formats as fm
from adinkralab.adinkra import is_valise, restrict_colors
from adinkralab.clifford import CliffordAction, clifford_action, division_algebra, irreducible_dim, is_irreducible
from adinkralab.complexes import MatrixFactorization, valise_mf
from adinkralab.exactalg import VariableSet

from test_complexes import M

F0, F1 = Fraction(0), Fraction(1)


def _product(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


def test_n4_generators(bundled):
    act = clifford_action(valise_mf(bundled("n4_valise")))
    assert len(act.generators) == 4 and act.size == 8
    assert act.ok()


def test_single_line():
    s = VariableSet.euclidean(1)
    act = clifford_action(MatrixFactorization(s, M(s, "l1"), M(s, "l1")))
    assert act.generators == ([[F0, F1], [F1, F0]],)


def test_split_signature(bundled):
    act = clifford_action(valise_mf(bundled("q_pq_1_1")))
    f_l, f_m = act.generators
    n = act.size
    one = [[F1 if i == j else F0 for j in range(n)] for i in range(n)]
    assert _product(f_l, f_l) == one
    assert _product(f_m, f_m) == [[-x for x in r] for r in one]
    anti = [[x + y for x, y in zip(r, t)] for r, t in zip(_product(f_l, f_m), _product(f_m, f_l))]
    assert all(x == 0 for r in anti for x in r)


def test_relation_failures_are_reported():
    s = VariableSet.euclidean(2)
    e = [[F0, F1], [F1, F0]]
    # f_1 = f_2 squares correctly but the pair does not anticommute
    act = CliffordAction(s, (e, e))
    assert act.squares_ok()
    assert act.relation_failures() == [(0, 1)]
    assert not act.ok()


@pytest.mark.parametrize("N, want", [(1, (1, 1)), (2, (2, 1)), (3, (4, 1)), (4, (4, 2)),
                                     (5, (8, 1)), (7, (8, 1)), (8, (8, 2)), (9, (16, 1)),
                                     (12, (64, 2)), (16, (128, 2))])
def test_irreducible_dims(N, want):
    assert irreducible_dim(N) == want


def test_irreducible_dims_follow_the_mod_8_rule():
    for N in range(1, 25):
        d, nu = irreducible_dim(N)
        d8, nu8 = irreducible_dim(N + 8)
        assert (d8, nu8) == (16 * d, nu)


def test_division_algebras():
    assert [division_algebra(N) for N in range(1, 9)] == ["R", "C", "H", "H+H", "H", "C", "R", "R+R"]


def test_is_irreducible(bundled):
    assert is_irreducible(valise_mf(bundled("n4_valise")))
    assert not is_irreducible(valise_mf(bundled("n4_koszul_valise")))
    assert is_irreducible(valise_mf(bundled("n7_valise")))
    assert is_irreducible(valise_mf(bundled("n8_valise")))
    with pytest.raises(ValueError):
        is_irreducible(valise_mf(bundled("q_pq_1_1")))


def test_restricted_valises_are_irreducible_up_to_n8(bundled):
    V = bundled("n8_valise")
    for N in range(5, 9):
        assert is_irreducible(valise_mf(restrict_colors(V, range(1, N + 1))))


def test_every_bundled_valise_satisfies_clifford(bundled):
    count = 0
    for name in fm.bundled_names():
        A = bundled(name)
        if len(set(A.heights())) == 2 and is_valise(A):
            assert clifford_action(valise_mf(A)).ok(), name
            count += 1
    assert count >= 5
