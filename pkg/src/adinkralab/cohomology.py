"""Hilbert functions of cohomology, Betti bookkeeping and the N=4 line-bundle modules."""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .exactalg import DEFAULT_MAX_DEGREE, monomial_count, rank


@dataclass
class HilbertProfile:
    """``dims[(n, d)] = dim H^n(C)_d`` for internal degrees ``min_degree..max_degree``."""

    dims: dict[tuple[int, int], int]
    max_degree: int
    min_degree: int = 0
    ring: str = "R"
    chain_dims: dict[tuple[int, int], int] = field(default_factory=dict)

    def get(self, n: int, d: int) -> int:
        return self.dims.get((n, d), 0)

    def degrees(self) -> list[int]:
        return sorted({n for n, _ in self.dims})

    def row(self, n: int) -> list[int]:
        return [self.get(n, d) for d in range(self.min_degree, self.max_degree + 1)]

    def series(self, n: int) -> dict[int, int]:
        return {d: self.get(n, d) for d in range(self.min_degree, self.max_degree + 1)}

    def first_nonzero(self, n: int) -> int | None:
        return next((d for d in range(self.min_degree, self.max_degree + 1) if self.get(n, d)), None)

    def is_zero(self, n: int) -> bool:
        return not any(self.row(n))

    def euler(self, d: int) -> int:
        return sum((-1) ** (n % 2) * self.get(n, d) for n in self.degrees())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree"] + [str(d) for d in range(self.min_degree, self.max_degree + 1)])
        for n in sorted(self.degrees(), reverse=True):
            w.writerow([str(n)] + [str(x) for x in self.row(n)])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "ring": self.ring,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "cohomology": {str(n): self.row(n) for n in sorted(self.degrees(), reverse=True)},
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "HilbertProfile":
        raw = json.loads(text)
        lo = raw["min_degree"]
        dims = {}
        for n, row in raw["cohomology"].items():
            for k, v in enumerate(row):
                dims[(int(n), lo + k)] = v
        return cls(dims, raw["max_degree"], lo, raw.get("ring", "R"))

    def __eq__(self, other):
        if not isinstance(other, HilbertProfile):
            return NotImplemented
        keys = set(self.dims) | set(other.dims)
        return all(self.dims.get(k, 0) == other.dims.get(k, 0) for k in keys)


def hilbert_profile(C, max_degree: int = DEFAULT_MAX_DEGREE, warn: bool = True) -> HilbertProfile:
    """Exact ``dim H^n(C)_d``: kernel dimension minus incoming rank, per degree."""
    if warn and max_degree < C.max_shift():
        warnings.warn(f"max degree {max_degree} is below the largest shift {C.max_shift()}; "
                      "the profile is truncated", stacklevel=2)
    lo = min(0, C.min_shift())
    ranks: dict[tuple[int, int], int] = {}

    def slice_rank(n: int, d: int) -> int:
        key = (n, d)
        if key not in ranks:
            if n in C.shifts and n + 1 in C.shifts:
                ranks[key] = rank(C.slice(n, d))
            else:
                ranks[key] = 0
        return ranks[key]

    dims, chain = {}, {}
    for d in range(lo, max_degree + 1):
        euler_chain = 0
        euler_h = 0
        for n in C.degrees():
            size = C.module_dim(n, d)
            h = size - slice_rank(n, d) - slice_rank(n - 1, d)
            if h < 0:
                raise ArithmeticError(f"negative cohomology at ({n}, {d}): not a complex")
            dims[(n, d)] = h
            chain[(n, d)] = size
            sign = -1 if n % 2 else 1
            euler_chain += sign * size
            euler_h += sign * h
        if euler_chain != euler_h:
            raise ArithmeticError(f"Euler characteristic mismatch at internal degree {d}")
    return HilbertProfile(dims, max_degree, lo, C.ring_tag, chain)


# ---------------------------------------------------------------------------
# Betti numbers of linear resolutions


@dataclass(frozen=True)
class BettiTable:
    betti: tuple[int, ...]
    base: int = 0

    def __post_init__(self):
        object.__setattr__(self, "betti", tuple(self.betti))
        if any(b < 0 for b in self.betti):
            raise ValueError("Betti numbers are nonnegative")

    def predicted(self, nvars: int, d: int) -> int:
        """Hilbert function of a module with this linear resolution."""
        return sum((-1) ** i * b * monomial_count(nvars, d - self.base - i) for i, b in enumerate(self.betti))


def betti_consistency(hf: Mapping[int, int], claim: BettiTable, nvars: int,
                      max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    """``HF(M)_d = sum (-1)^i b_i dim R_{d-base-i}`` for every listed ``d <= max_degree``."""
    return all(claim.predicted(nvars, d) == v for d, v in hf.items() if d <= max_degree)


def aligned_sum(*sequences: tuple[Sequence[int], int]) -> list[int]:
    """Add integer sequences placed at the given offsets."""
    length = max(off + len(s) for s, off in sequences)
    out = [0] * length
    for s, off in sequences:
        for k, v in enumerate(s):
            out[off + k] += v
    return out


# ---------------------------------------------------------------------------
# line bundles on P1 x P1 inside the N=4 quadric

SEGRE = ((0, 0), (0, 1), (1, 0), (1, 1))


def _binary_exponents(total: int) -> list[tuple[int, int]]:
    return [(total - k, k) for k in range(total + 1)]


@dataclass(frozen=True)
class BigradedModule:
    """``sum_d H^0(O(n+d, d))`` with the four Segre variables ``X_ab = s_a t_b``.

    The degree-``d`` basis is ``s^alpha t^beta`` with ``|alpha| = n+d, |beta| = d``.
    """

    n: int
    max_degree: int

    def basis(self, d: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        if d < 0:
            return []
        return [(a, b) for a in _binary_exponents(self.n + d) for b in _binary_exponents(d)]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def bidegree_dim(self, a: int, b: int) -> int:
        return (a + 1) * (b + 1)

    def index(self, d: int) -> dict:
        return {m: k for k, m in enumerate(self.basis(d))}

    def action(self, var: int, d: int) -> list[list[int]]:
        """Matrix of ``X_var : M_d -> M_{d+1}`` (rows index ``M_{d+1}``)."""
        a, b = SEGRE[var]
        target = self.index(d + 1)
        out = [[0] * self.dim(d) for _ in range(self.dim(d + 1))]
        for c, (alpha, beta) in enumerate(self.basis(d)):
            al = list(alpha)
            be = list(beta)
            al[a] += 1
            be[b] += 1
            out[target[(tuple(al), tuple(be))]][c] = 1
        return out


def line_bundle_module(n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> BigradedModule:
    if n < 0:
        raise ValueError("n must be nonnegative (negative twists are shifts of these)")
    return BigradedModule(n, max_degree)


def koszul_homology_dim(M: BigradedModule, i: int, d: int) -> int:
    """``dim H(wedge^{i+1} V (x) M_{d-1} -> wedge^i V (x) M_d -> wedge^{i-1} V (x) M_{d+1})``."""

    def koszul_map(k: int, deg: int) -> list[list[int]]:
        # wedge^k V (x) M_deg -> wedge^{k-1} V (x) M_{deg+1}
        src = [(S, j) for S in combinations(range(4), k) for j in range(M.dim(deg))]
        tgt_sets = list(combinations(range(4), k - 1))
        tgt_pos = {S: t for t, S in enumerate(tgt_sets)}
        width = M.dim(deg + 1)
        acts = [M.action(v, deg) for v in range(4)]
        out = [[0] * len(src) for _ in range(len(tgt_sets) * width)]
        for c, (S, j) in enumerate(src):
            for pos, v in enumerate(S):
                sign = -1 if pos % 2 else 1
                rest = S[:pos] + S[pos + 1:]
                base = tgt_pos[rest] * width
                col = acts[v]
                for r in range(width):
                    if col[r][j]:
                        out[base + r][c] += sign * col[r][j]
        return out

    if i < 0 or i > 4:
        return 0
    size = comb(4, i) * M.dim(d)
    out_rank = rank(koszul_map(i, d)) if i >= 1 and M.dim(d + 1) and size else 0
    in_rank = rank(koszul_map(i + 1, d - 1)) if i + 1 <= 4 and M.dim(d - 1) else 0
    return size - out_rank - in_rank


def betti_linear(M: BigradedModule) -> BettiTable:
    """Linear strand ``b_i = dim Tor_i(M, k)_i`` for ``i = 0, 1, 2``."""
    return BettiTable(tuple(koszul_homology_dim(M, i, 0) for i in range(3)), 0)


def tor_table(M: BigradedModule, max_degree: int = 4) -> dict[tuple[int, int], int]:
    return {(i, d): koszul_homology_dim(M, i, d) for i in range(5) for d in range(max_degree + 1)
            if koszul_homology_dim(M, i, d)}


def hilb_formula(n: int, d: int) -> int:
    if n < 0 or d < 0:
        raise ValueError("n and d must be nonnegative")
    return (n + 1 + d) * (d + 1)


def hilb_closed_form_coefficient(n: int, d: int) -> int:
    """Coefficient of ``t^d`` in ``((n+1) - 2n t + (n-1) t^2) / (1-t)^4``."""
    numerator = (n + 1, -2 * n, n - 1)
    return sum(c * comb(d - k + 3, 3) for k, c in enumerate(numerator) if d - k >= 0)


# ---------------------------------------------------------------------------
# basis independence


def random_basis_change(C, seed: int = 0, spread: int = 3):
    """Conjugate every ``C^n`` by a random degree-0 automorphism.

    The change of basis is unipotent and only mixes generators of equal shift,
    so it is homogeneous and exactly invertible over the integers.
    """
    import random

    from .complexes import FreeComplex
    from .exactalg import PolyMatrix

    rng = random.Random(seed)
    nv = C.sig.n_vars
    forward, backward = {}, {}
    for n in C.degrees():
        sh = C.shifts[n]
        size = len(sh)
        lower = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
        for i in range(size):
            for j in range(i):
                if sh[i] == sh[j]:
                    lower[i][j] = rng.randint(-spread, spread)
        inverse = _unipotent_inverse(lower)
        forward[n] = PolyMatrix(nv, lower, size, size)
        backward[n] = PolyMatrix(nv, inverse, size, size)
    diffs = {n: forward[n + 1] @ C.d(n) @ backward[n] for n in C.diffs if n + 1 in forward}
    return FreeComplex(C.sig, C.shifts, diffs, C.labels, C.quotient, C.name)


def _unipotent_inverse(L: list[list[int]]) -> list[list[int]]:
    n = len(L)
    inv = [[0] * n for _ in range(n)]
    for col in range(n):
        for i in range(n):
            s = 1 if i == col else 0
            s -= sum(L[i][k] * inv[k][col] for k in range(i))
            inv[i][col] = s
    return inv
