"""The thirteen acceptance criteria, one test each, with a PASS/FAIL line per criterion."""

import time

import pytest

from adinkralab import formats as fm
from adinkralab.adinkra import (enumerate_rank_sequences, koszul_adinkra, rainbow, raisable_vertices,
                                raise_vertex, rank_sequence, restrict_colors, validate, validate_q)
from adinkralab.clifford import clifford_action, is_irreducible
from adinkralab.codes import builtin, coset_rank_sequence
from adinkralab.cohomology import (BettiTable, aligned_sum, betti_consistency, betti_linear,
                                   hilb_closed_form_coefficient, hilb_formula, hilbert_profile,
                                   line_bundle_module)
from adinkralab.complexes import (annihilator_check, check_chain_map, check_laplacian, complex_of,
                                  cone, cone_of_raise, embed_into_koszul, injectivity_failures,
                                  knorrer, unroll, valise_mf)
from adinkralab.exactalg import VariableSet, quadratic_form, quotient_dim

from conftest import isomorphic
from test_exactalg import P

D = 8


@pytest.fixture
def verdict(capsys):
    def say(number, ok, detail=""):
        with capsys.disabled():
            print(f"\n{number} {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok
    return say


def test_1_identities(verdict):
    bad = []
    names = fm.bundled_names()
    for name in names:
        C = complex_of(fm.load_bundled(name))
        if not (C.is_complex() and check_laplacian(C).ok):
            bad.append(name)
    assert verdict(1, not bad, f"d^2 = 0 and Laplacian = q id on {len(names)} Adinkras {bad or ''}")
    assert len(names) >= 15


CODE_TABLE = {
    "d4": (1, 4, 3), "t1+d4": (1, 5, 7, 3), "d6": (1, 6, 7, 2), "e7": (1, 7, 7, 1),
    "e8": (1, 8, 7), "t1+e8": (1, 9, 15, 7), "d10": (1, 10, 21, 20, 10, 2),
    "t2+e8": (1, 10, 24, 22, 7), "e16": (1, 16, 57, 112, 70), "e8+e8": (1, 16, 78, 112, 49),
}


def test_2_code_table(verdict):
    t = time.perf_counter()
    got = {name: coset_rank_sequence(builtin(name)).ranks for name in CODE_TABLE}
    elapsed = time.perf_counter() - t
    ok = got == CODE_TABLE and elapsed < 60
    assert verdict(2, ok, f"{len(CODE_TABLE)} codes in {elapsed:.1f}s")


def test_3_raising_chain(verdict):
    A = fm.load_bundled("n4_raising_valise")
    seqs = [rank_sequence(A).ranks]
    valid = True
    for vid in ("v0_4", "v0_3", "v0_2"):
        A = raise_vertex(A, vid)
        valid &= validate(A).ok
        seqs.append(rank_sequence(A).ranks)
    chain4 = seqs == [(4, 4), (3, 4, 1), (2, 4, 2), (1, 4, 3)] and valid
    # N=8 valise -> (1,8,7) -> forget color 8 -> raise the orphaned fermion -> (1,7,7,1)
    B = fm.load_bundled("n8_valise")
    route = [rank_sequence(B).ranks]
    for k in range(2, 9):
        B = raise_vertex(B, f"v0_{k}")
    route.append(rank_sequence(B).ranks)
    B = raise_vertex(restrict_colors(B, range(1, 8)), "v1_8")
    route.append(rank_sequence(B).ranks)
    chain8 = (route == [(8, 8), (1, 8, 7), (1, 7, 7, 1)] and validate(B).ok
              and isomorphic(B, fm.load_bundled("n7_1771")))
    assert verdict(3, chain4 and chain8, f"{seqs} and {route}")


def test_4_cone_theorem(verdict):
    checked, bad = 0, []
    for name in fm.bundled_names():
        A = fm.load_bundled(name)
        if A.signature.n_colors > 6 or not validate_q(A).ok:
            continue
        for vid in raisable_vertices(A):
            res = cone_of_raise(A, vid, certify=True, max_degree=D)
            checked += 1
            if not res.certificate.ok:
                bad.append((name, vid))
    assert verdict(4, checked > 0 and not bad, f"{checked} raisable vertices, D={D} {bad or ''}")


def test_5_n6_counterexample(verdict):
    p1 = hilbert_profile(complex_of(fm.load_bundled("n6_a1")), D)
    p2 = hilbert_profile(complex_of(fm.load_bundled("n6_a2")), 3)
    differ = all(any(p1.get(n, d) != p2.get(n, d) for d in range(4)) for n in (0, -1))
    base = p1.first_nonzero(-1)
    s6 = VariableSet.euclidean(6)
    twice = [2 * quotient_dim(s6, d - base) if d >= base else 0 for d in range(D + 1)]
    ok = differ and p1.row(-1) == twice
    assert verdict(5, ok, f"H^-1(A1) = {p1.row(-1)}")


def test_6_n7_bookkeeping(verdict):
    A = fm.load_bundled("n7_1771")
    p = hilbert_profile(complex_of(A), D)
    claim = BettiTable((14, 34, 35, 21, 7, 1), p.first_nonzero(-1))
    consistent = betti_consistency(p.series(-1), claim, 7, D)
    resolution = tuple(reversed(claim.betti))
    total = aligned_sum((rank_sequence(A).ranks, 4), (resolution, 0))
    adds_up = tuple(total) == rank_sequence(koszul_adinkra(7)).ranks
    assert verdict(6, consistent and adds_up, f"betti {claim.betti}; {total}")


def test_7_koszul_embedding(verdict):
    ok = True
    for name in ("code_d4", "code_d6", "n7_1771"):
        f = embed_into_koszul(fm.load_bundled(name))
        ok &= check_chain_map(f).ok and injectivity_failures(f, D) == []
    try:
        embed_into_koszul(fm.load_bundled("n4_valise"))
        rejected = False
    except ValueError as exc:
        rejected = "4 zero modes" in str(exc)
    assert verdict(7, ok and rejected, "(1,4,3) (1,6,7,2) (1,7,7,1) embed; N=4 valise rejected")


def _clifford_layer():
    valises = [name for name in fm.bundled_names()
               if len(fm.load_bundled(name).heights()) == 2 and
               not fm.load_bundled(name).signature.n_rho]
    relations = all(clifford_action(valise_mf(fm.load_bundled(n))).ok() for n in valises)
    table = (is_irreducible(valise_mf(fm.load_bundled("n4_valise"))),
             is_irreducible(valise_mf(fm.load_bundled("n4_koszul_valise"))),
             is_irreducible(valise_mf(fm.load_bundled("n7_valise"))),
             is_irreducible(valise_mf(fm.load_bundled("n8_valise"))))
    V = valise_mf(fm.load_bundled("n4_valise"))
    k = knorrer(V, V)
    factorizes = (k.psi @ k.phi).is_scalar(quadratic_form(VariableSet.euclidean(8)))
    return relations, table, k.rank, factorizes


def test_8_clifford_relations_and_table():
    relations, table, rank, factorizes = _clifford_layer()
    assert relations
    assert table == (True, False, True, True)
    # the tensor of two rank-4 factorizations has rank 2*4*4
    assert factorizes and rank == 32


@pytest.mark.xfail(strict=True, reason="a graded tensor of two rank-4 factorizations has rank 32, not 8")
def test_8_clifford_layer(verdict):
    relations, table, rank, factorizes = _clifford_layer()
    ok = relations and table == (True, False, True, True) and factorizes and rank == 8
    verdict(8, ok, f"knorrer(N4, N4) has rank {rank}, criterion asks for 8; relations and table hold")
    assert ok


def test_9_rainbow(verdict):
    left, right = fm.load_bundled("n4_disjoint_left"), fm.load_bundled("n4_disjoint_right")
    rl, rr = rainbow(left), rainbow(right)
    sl, sr = rl.boson_signs(left), rr.boson_signs(right)
    opposite = rl.closes and rr.closes and len(sl) == len(sr) == 1 and sl == {-s for s in sr}
    connected_fails = not rainbow(fm.load_bundled("n4_koszul_valise")).closes
    assert verdict(9, opposite and connected_fails, f"signs {sl} / {sr}")


def test_10_n4_projective(verdict):
    betti = all(betti_linear(line_bundle_module(n)).betti == (n + 1, 2 * n, n - 1) for n in range(1, 6))
    hilb = all(hilb_formula(n, d) == hilb_closed_form_coefficient(n, d) == line_bundle_module(n).dim(d)
               for n in range(6) for d in range(D + 1))
    assert verdict(10, betti and hilb, "n = 1..5, d <= 8")


def test_11_q_adinkras(verdict):
    rho = VariableSet(0, 0, 2)
    q_ok = quadratic_form(rho) == P(rho, "r1*r1* + r2*r2*")
    docs = ("q_chiral", "q_antichiral", "q_twisted_chiral", "q_twisted_antichiral")
    valid = all(validate_q(fm.load_bundled(n)).ok for n in docs)
    ideal = [P(rho, g) for g in ("r1*r1* + r2*r2*", "r1*r1* - r2*r2*", "r1*r2* + r2*r1*", "r1*r1* + r2*r1*")]
    chiral = annihilator_check(complex_of(fm.load_bundled("q_chiral")), ideal, D)
    twisted = annihilator_check(complex_of(fm.load_bundled("q_twisted_chiral")), ideal, D)
    assert verdict(11, q_ok and valid and chiral and not twisted, "chiral annihilated; twisted chiral not")


def test_12_extension_classes(verdict):
    ok, ranks = True, []
    for name in ("ext_n4", "ext_n3"):
        f = fm.load_bundled_chain_map(name)
        c = cone(f)
        sums = all(c.rank(n) == f.target.rank(n) + f.source.rank(n + 1 - f.shift) for n in c.degrees())
        ok &= check_chain_map(f).ok and c.is_complex() and sums
        ranks.append(tuple(c.rank(n) for n in sorted(c.degrees())))
    ok &= ranks == [(4, 8, 4), (3, 8, 5)]
    assert verdict(12, ok, f"cone ranks {ranks}")


def test_13_property_suite(verdict):
    bad = []
    count = 0
    for name in fm.bundled_names():
        A = fm.load_bundled(name)
        if A.signature.n_colors > 5:
            continue
        count += 1
        res = unroll(complex_of(A), D)
        if not (res.d_hat_squared_ok and res.certificate.ok):
            bad.append(name)
    fours = {s.ranks for s in enumerate_rank_sequences(fm.load_bundled("n7_valise"), 4) if len(s) == 4}
    ok = not bad and fours == {(1, 7, 7, 1)}
    assert verdict(13, ok, f"{count} unroll certificates ok {bad or ''}; length-four at N=7: {sorted(fours)}")
