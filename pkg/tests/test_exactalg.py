from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from adinkralab.exactalg import (Poly, PolyMatrix, Ring, VariableSet, bareiss_rank, graded_component,
                                 involution_b, kernel_basis, monomial_basis, monomial_count,
                                 multiplication_slice, normal_form, polar_form, quadratic_form,
                                 quotient_dim, rank, solve)
from adinkralab.formats import parse_poly


def P(sig, text):
    return parse_poly(sig, text)


def test_quadratic_forms():
    assert quadratic_form(VariableSet(2, 0, 0)) == P(VariableSet(2, 0, 0), "l1^2 + l2^2")
    assert quadratic_form(VariableSet(0, 1, 0)) == P(VariableSet(0, 1, 0), "-m1^2")
    assert quadratic_form(VariableSet(0, 0, 1)) == P(VariableSet(0, 0, 1), "r1*r1*")


def test_variable_set_counts():
    s = VariableSet(1, 2, 3)
    assert (s.n_vars, s.n_colors) == (9, 6)
    assert s.variable_names() == ["l1", "m1", "m2", "r1", "r1*", "r2", "r2*", "r3", "r3*"]
    assert s.color_variable(4) == 3 and s.color_variable(4, starred=True) == 4
    with pytest.raises(ValueError):
        VariableSet(-1, 0, 0)


def test_involution_b():
    s = VariableSet(1, 1, 1)
    assert involution_b(s, P(s, "l1")) == P(s, "l1")
    assert involution_b(s, P(s, "m1")) == P(s, "-m1")
    sym = P(s, "r1 + r1*")
    assert involution_b(s, sym) == sym
    # b preserves q
    assert involution_b(s, quadratic_form(s)) == quadratic_form(s)


def test_polar_form_is_twice_the_diagonal():
    s = VariableSet(1, 1, 1)
    e = [[1 if k == i else 0 for k in range(4)] for i in range(4)]
    assert polar_form(s, e[0], e[0]) == 2
    assert polar_form(s, e[1], e[1]) == -2
    assert polar_form(s, e[2], e[3]) == 1
    assert polar_form(s, e[0], e[1]) == 0


@pytest.mark.parametrize("m, want", [
    ([[1, 2], [2, 4]], 1),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
    ([[0] * 5, [0] * 5], 0),
    ([[Fraction(1, 2), Fraction(1, 3)], [3, 2]], 1),
])
def test_rank_examples(m, want):
    assert rank(m) == want
    assert bareiss_rank(m) == want


@pytest.mark.parametrize("sig, d, want", [
    (VariableSet(4, 0, 0), 2, 10),
    (VariableSet(0, 0, 2), 1, 4),
    (VariableSet(3, 1, 0), 0, 1),
    (VariableSet(0, 0, 1), 0, 1),
])
def test_monomial_count(sig, d, want):
    assert monomial_count(sig, d) == want
    assert len(monomial_basis(sig, d)) == want


def test_monomial_basis_against_enumeration():
    for n in range(1, 5):
        for d in range(5):
            brute = {tuple(c.count(i) for i in range(n)) for c in combinations_with_replacement(range(n), d)}
            assert set(monomial_basis(n, d)) == brute


@pytest.mark.parametrize("sig, d, want", [
    (VariableSet(4, 0, 0), 2, 9),
    (VariableSet(5, 0, 0), 0, 1),
    (VariableSet(6, 0, 0), 1, 6),
])
def test_quotient_dim(sig, d, want):
    assert quotient_dim(sig, d) == want


def test_quotient_dim_matches_multiplication_rank():
    # dim R_d - rank(q : R_{d-2} -> R_d), computed independently of the closed form
    for sig in (VariableSet(4, 0, 0), VariableSet(1, 1, 1), VariableSet(0, 0, 2)):
        ring = Ring(sig)
        for d in range(2, 6):
            s = multiplication_slice(ring, quadratic_form(sig), d)
            assert quotient_dim(sig, d) == monomial_count(sig, d) - rank(s)
            assert Ring(sig, True).dim(d) == quotient_dim(sig, d)


def test_normal_form_kills_q():
    for sig in (VariableSet(3, 0, 0), VariableSet(1, 2, 0), VariableSet(0, 0, 2)):
        q = quadratic_form(sig)
        assert normal_form(sig, q).is_zero()
        x = Poly.var(sig.n_vars, 0)
        assert normal_form(sig, x * q + x).to_str() == x.to_str()


def test_graded_component_examples():
    s1 = VariableSet(1, 0, 0)
    m = PolyMatrix(1, [[Poly.var(1, 0)]])
    g = graded_component(m, (0,), (1,), 1, sig=s1)
    assert g.to_dense() == [[1]]
    s2 = VariableSet(2, 0, 0)
    row = PolyMatrix(2, [[Poly.var(2, 0), Poly.var(2, 1)]])
    g = graded_component(row, (0,), (1, 1), 1, sig=s2)
    assert g.shape == (2, 2) and rank(g) == 2
    z = graded_component(PolyMatrix.zeros(2, 2, 3), (0, 0), (1, 1, 1), 2, sig=s2)
    assert not z.entries


def test_graded_component_composes():
    # slices of a product are products of slices
    s = VariableSet(2, 0, 0)
    l1, l2 = Poly.var(2, 0), Poly.var(2, 1)
    a = PolyMatrix(2, [[l1, l2]])
    b = PolyMatrix(2, [[-l2], [l1]])
    for d in range(4):
        ga = graded_component(a, (0,), (1, 1), d, sig=s)
        gb = graded_component(b, (1, 1), (2,), d, sig=s)
        gab = graded_component(a @ b, (0,), (2,), d, sig=s)
        assert ga.compose(gb).entries == gab.entries


def test_solve_and_kernel():
    m = [[1, 2, 3], [2, 4, 6]]
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    x = solve([[2, 0], [0, 3]], [[4], [9]])
    assert x == [[2], [3]]
    assert solve([[1, 1], [1, 1]], [[0], [1]]) is None


def test_polymatrix_product_and_scalar():
    s = VariableSet(2, 0, 0)
    l1, l2 = Poly.var(2, 0), Poly.var(2, 1)
    d = PolyMatrix(2, [[l1, l2], [-l2, l1]])
    assert (d @ d.T).is_scalar(quadratic_form(s))
    assert (d - d).is_zero()
    with pytest.raises(ValueError):
        d @ PolyMatrix.zeros(2, 3, 1)


def test_empty_signature_has_no_ring():
    with pytest.raises(ValueError):
        Ring(VariableSet(0, 0, 0))
