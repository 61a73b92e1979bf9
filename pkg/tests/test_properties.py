from dataclasses import replace
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from adinkralab import formats as fm
from adinkralab.adinkra import Adinkra, raisable_vertices, raise_vertex, validate, validate_any
from adinkralab.codes import BinaryCode, coset_weights, coset_weights_bfs
from adinkralab.cohomology import hilbert_profile, random_basis_change
from adinkralab.complexes import check_laplacian, complex_of
from adinkralab.exactalg import Poly, VariableSet, bareiss_rank, rank

from conftest import isomorphic

SLOW = settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])

SIG = VariableSet(2, 1, 1)


@st.composite
def polys(draw):
    n = SIG.n_vars
    mono = st.tuples(*[st.integers(0, 3)] * n)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
    return Poly(n, draw(st.dictionaries(mono, coeff, max_size=5)))


@given(polys())
def test_poly_text_round_trip(p):
    assert fm.parse_poly(SIG, fm.format_poly(SIG, p)) == p


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_agrees_with_bareiss(m):
    assert rank(m) == bareiss_rank(m)
    assert rank([[Fraction(x, 2) for x in r] for r in m]) == bareiss_rank(m)


@SLOW
@given(st.integers(0, 10 ** 6))
def test_basis_change_keeps_the_profile(seed):
    C = complex_of(fm.load_bundled("n4_3_4_1"))
    D = random_basis_change(C, seed)
    assert D.is_complex()
    assert hilbert_profile(D, 3) == hilbert_profile(C, 3)


@SLOW
@given(st.sampled_from(["n4_valise", "n3_valise", "q_pq_1_1", "n2_valise"]), st.data())
def test_random_raises_keep_the_identities(name, data):
    A = fm.load_bundled(name)
    for _ in range(data.draw(st.integers(1, 3))):
        choices = raisable_vertices(A)
        if not choices:
            break
        A = raise_vertex(A, data.draw(st.sampled_from(choices)))
        assert validate_any(A).ok
        assert check_laplacian(complex_of(A)).ok


@st.composite
def codes(draw):
    n = draw(st.integers(1, 9))
    rows, span = [], {0}
    for r in draw(st.lists(st.integers(1, (1 << n) - 1), max_size=3)):
        if r not in span:
            rows.append(r)
            span |= {w ^ r for w in span}
    return BinaryCode(n, tuple(rows))


@given(codes())
def test_coset_enumeration_agrees_with_bfs(code):
    assert coset_weights(code) == coset_weights_bfs(code)


def _switch(A, vertices):
    flip = set(vertices)
    edges = tuple(replace(e, dash=-e.dash) if (e.u in flip) != (e.v in flip) else e for e in A.edges)
    return Adinkra(A.vertices, edges, A.signature, A.name)


@SLOW
@given(st.sampled_from(["n4_valise", "n4_3_4_1", "n3_koszul", "n6_a2"]), st.data())
def test_vertex_switching(name, data):
    A = fm.load_bundled(name)
    ids = [v.id for v in A.vertices]
    B = _switch(A, data.draw(st.sets(st.sampled_from(ids))))
    assert validate(B).ok
    assert isomorphic(A, B)
    assert hilbert_profile(complex_of(B), 2, warn=False) == hilbert_profile(complex_of(A), 2, warn=False)
