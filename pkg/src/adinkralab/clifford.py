"""Clifford-module structure carried by a linear matrix factorization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import MatrixFactorization
from .exactalg import PolyMatrix, VariableSet, polar_form, quadratic_form

Matrix = list[list[Fraction]]


def _specialize(m: PolyMatrix, index: int) -> Matrix:
    point = [0] * m.nvars
    point[index] = 1
    out = []
    for i in range(m.rows):
        row = []
        for j in range(m.cols):
            value = Fraction(0)
            for mono, c in m[i, j].items():
                term = c
                for k, e in enumerate(mono):
                    if e and not point[k]:
                        term = 0
                        break
                value += term
            row.append(value)
        out.append(row)
    return out


def _mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def _add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _scalar(n: int, c) -> Matrix:
    return [[Fraction(c) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class CliffordAction:
    """``f_v = [[0, phi(e_v)], [psi(e_v), 0]]`` on ``k^n + k^n``, one per variable."""

    sig: VariableSet
    generators: tuple[Matrix, ...]

    @property
    def size(self) -> int:
        return len(self.generators[0]) if self.generators else 0

    def relation_failures(self) -> list[tuple[int, int]]:
        """Pairs ``(u, v)`` with ``f_u f_v + f_v f_u != B(e_u, e_v) id``."""
        n = self.sig.n_vars
        failures = []
        for u in range(n):
            for v in range(u, n):
                eu = [1 if k == u else 0 for k in range(n)]
                ev = [1 if k == v else 0 for k in range(n)]
                fu, fv = self.generators[u], self.generators[v]
                anti = _add(_mul(fu, fv), _mul(fv, fu))
                if anti != _scalar(self.size, polar_form(self.sig, eu, ev)):
                    failures.append((u, v))
        return failures

    def squares_ok(self) -> bool:
        q = quadratic_form(self.sig)
        for v, f in enumerate(self.generators):
            mono = tuple(2 if k == v else 0 for k in range(self.sig.n_vars))
            if _mul(f, f) != _scalar(self.size, q.coefficient(mono)):
                return False
        return True

    def ok(self) -> bool:
        return self.squares_ok() and not self.relation_failures()


def clifford_action(mf: MatrixFactorization) -> CliffordAction:
    n = mf.rank
    gens = []
    zero = [[Fraction(0)] * n for _ in range(n)]
    for v in range(mf.sig.n_vars):
        psi, phi = _specialize(mf.psi, v), _specialize(mf.phi, v)
        top = [z + p for z, p in zip(zero, phi)]
        bottom = [p + z for p, z in zip(psi, zero)]
        gens.append(top + bottom)
    action = CliffordAction(mf.sig, tuple(gens))
    if not action.ok():
        raise ValueError(f"Clifford relations fail for pairs {action.relation_failures()[:3]}")
    return action


# d_R(N) for N = 1..8; the table repeats with a factor 16 every 8 steps
_DIMS = (1, 2, 4, 4, 8, 8, 8, 8)
_ALGEBRAS = {1: "R", 7: "R", 2: "C", 6: "C", 3: "H", 5: "H", 0: "R+R", 4: "H+H"}


def irreducible_dim(N: int) -> tuple[int, int]:
    """``(d_R, nu)``: dimension of an irreducible real module and the number of them."""
    if N < 1:
        raise ValueError("N must be at least 1")
    period, r = divmod(N - 1, 8)
    nu = 2 if N % 8 in (0, 4) else 1
    return _DIMS[r] * 16 ** period, nu


def division_algebra(N: int) -> str:
    return _ALGEBRAS[N % 8]


def is_irreducible(mf: MatrixFactorization, N: int | None = None) -> bool:
    sig = mf.sig
    if sig.n_mu or sig.n_rho:
        raise ValueError("irreducibility is tabulated for pure-lambda signatures")
    N = sig.n_lambda if N is None else N
    return mf.rank == irreducible_dim(N)[0]

