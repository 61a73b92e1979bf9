"""Linear complexes attached to Adinkras, their adjoints, cones and unrollings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .adinkra import (Adinkra, AdinkraError, PreconditionError, Violation, combine_signatures,
                      koszul_adinkra, raise_vertex, validate_any, zero_mode_vertices)
from .exactalg import (DEFAULT_MAX_DEGREE, Poly, PolyMatrix, Ring, VariableSet,
                       graded_component, involution_b, kernel_basis, quadratic_form, rank, solve)


@dataclass(frozen=True)
class FreeComplex:
    """Cochain complex of graded free modules with polynomial differentials.

    ``shifts[n]`` lists the internal degree of each basis element of ``C^n``;
    ``diffs[n]`` is ``d^n : C^n -> C^{n+1}`` with rows indexed by ``C^{n+1}``.
    """

    sig: VariableSet
    shifts: Mapping[int, tuple[int, ...]]
    diffs: Mapping[int, PolyMatrix]
    labels: Mapping[int, tuple[str, ...]] = field(default_factory=dict)
    quotient: bool = False
    name: str = ""

    def __post_init__(self):
        shifts = {n: tuple(s) for n, s in self.shifts.items() if len(s)}
        object.__setattr__(self, "shifts", shifts)
        labels = {n: tuple(self.labels.get(n, ())) or tuple(f"e{n}_{k}" for k in range(len(s)))
                  for n, s in shifts.items()}
        object.__setattr__(self, "labels", labels)
        for n, m in self.diffs.items():
            if m.shape != (self.rank(n + 1), self.rank(n)):
                raise ValueError(f"d^{n} has shape {m.shape}, expected ({self.rank(n + 1)}, {self.rank(n)})")

    @property
    def ring(self) -> Ring:
        return Ring(self.sig, self.quotient)

    @property
    def ring_tag(self) -> str:
        return "RmodQ" if self.quotient else "R"

    def degrees(self) -> list[int]:
        return sorted(self.shifts)

    def rank(self, n: int) -> int:
        return len(self.shifts.get(n, ()))

    def ranks(self) -> dict[int, int]:
        return {n: self.rank(n) for n in self.degrees()}

    def d(self, n: int) -> PolyMatrix:
        m = self.diffs.get(n)
        if m is None:
            return PolyMatrix.zeros(self.sig.n_vars, self.rank(n + 1), self.rank(n))
        return m

    def slice(self, n: int, d: int):
        return graded_component(self.d(n), self.shifts.get(n + 1, ()), self.shifts.get(n, ()), d,
                                self.ring)

    def module_dim(self, n: int, d: int) -> int:
        ring = self.ring
        return sum(ring.dim(d - s) for s in self.shifts.get(n, ()))

    def max_shift(self) -> int:
        return max((max(s) for s in self.shifts.values()), default=0)

    def min_shift(self) -> int:
        return min((min(s) for s in self.shifts.values()), default=0)

    def d_squared_failure(self) -> tuple[int, tuple[int, int]] | None:
        """First ``(n, entry)`` where ``d^{n+1} d^n`` is nonzero (mod q over R/q)."""
        for n in self.degrees():
            prod = self.d(n + 1) @ self.d(n)
            prod = prod.reduce(self.ring)
            if not prod.is_zero():
                return n, next((i, j) for i in range(prod.rows) for j in range(prod.cols) if prod[i, j])
        return None

    def is_complex(self) -> bool:
        return self.d_squared_failure() is None

    def homogeneity_failure(self) -> str | None:
        for n in self.degrees():
            m = self.d(n)
            rows, cols = self.shifts.get(n + 1, ()), self.shifts.get(n, ())
            for i in range(m.rows):
                for j in range(m.cols):
                    e = m[i, j]
                    if not e:
                        continue
                    if not e.is_homogeneous() or e.homogeneous_degree() != cols[j] - rows[i]:
                        return f"d^{n} entry ({i}, {j})"
        return None


# ---------------------------------------------------------------------------
# complexes of Adinkras


def _complex_of(A: Adinkra) -> FreeComplex:
    sig = A.signature
    n = sig.n_vars
    heights = A.heights()
    levels = {h: A.level(h) for h in heights}
    pos = {h: {v.id: k for k, v in enumerate(vs)} for h, vs in levels.items()}
    grids = {h: [[Poly.zero(n)] * len(levels[h]) for _ in levels.get(h - 1, ())] for h in heights}
    for e in A.edges:
        src, tgt = A.source(e), A.target(e)
        h = A.height(src)
        if A.height(tgt) != h - 1 or h - 1 not in pos:
            continue
        grids[h][pos[h - 1][tgt]][pos[h][src]] = A.edge_variable(e) * e.dash
    shifts = {-h: tuple(v.height for v in levels[h]) for h in heights}
    labels = {-h: tuple(v.id for v in levels[h]) for h in heights}
    diffs = {}
    for h in heights:
        if h - 1 in levels:
            diffs[-h] = PolyMatrix(n, grids[h], len(levels[h - 1]), len(levels[h]))
    return FreeComplex(sig, shifts, diffs, labels, name=A.name)


def complex_of(A: Adinkra, check: bool = True) -> FreeComplex:
    """``C(A)``: one summand per vertex, homological degree minus the height."""
    if A.signature.n_vars == 0:
        raise PreconditionError("the empty signature has no complex")
    if check:
        report = validate_any(A)
        if not report.ok:
            raise AdinkraError(f"invalid Adinkra: {report.violations[0]}")
    return _complex_of(A)


def b_transpose(sig: VariableSet, m: PolyMatrix) -> PolyMatrix:
    return m.transpose().map(lambda p: involution_b(sig, p))


def adjoint_of(C: FreeComplex) -> dict[int, PolyMatrix]:
    """``d^dagger`` per degree: ``adj[n] : C^n -> C^{n-1}``."""
    return {n + 1: b_transpose(C.sig, m) for n, m in C.diffs.items()}


def adjoint(C: FreeComplex, n: int) -> PolyMatrix:
    adj = adjoint_of(C)
    if n in adj:
        return adj[n]
    return PolyMatrix.zeros(C.sig.n_vars, C.rank(n - 1), C.rank(n))


@dataclass
class LaplacianReport:
    ok: bool
    failures: list[tuple[int, tuple[int, int], str, str]]

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "Laplacian = q*id on every degree"
        n, (i, j), got, want = self.failures[0]
        return f"Laplacian fails at C^{n} entry ({i}, {j}): got {got}, expected {want}"


def check_laplacian(C: FreeComplex) -> LaplacianReport:
    sig = C.sig
    q = quadratic_form(sig)
    names = sig.variable_names()
    failures = []
    adj = adjoint_of(C)
    nv = sig.n_vars
    for n in C.degrees():
        r = C.rank(n)
        lap = PolyMatrix.zeros(nv, r, r)
        if n in adj:
            lap = lap + C.d(n - 1) @ adj[n]
        if n + 1 in adj:
            lap = lap + adj[n + 1] @ C.d(n)
        want = PolyMatrix.scalar(nv, r, q)
        bad = lap.first_mismatch(want)
        if bad is not None:
            failures.append((n, bad, lap[bad].to_str(names), want[bad].to_str(names)))
    return LaplacianReport(not failures, failures)


def algebraic_violations(A: Adinkra) -> list[Violation]:
    """The axioms restated as ``d^2 = 0`` and ``(d + d^dagger)^2 = q``."""
    C = _complex_of(A)
    out = []
    bad = C.d_squared_failure()
    if bad is not None:
        n, (i, j) = bad
        out.append(Violation("d-squared", f"{C.labels[n][j]} -> {C.labels[n + 2][i]}",
                             "d o d is nonzero"))
    lap = check_laplacian(C)
    for n, (i, j), got, want in lap.failures:
        out.append(Violation("laplacian", f"{C.labels[n][i]}, {C.labels[n][j]}",
                             f"Laplacian entry is {got}, expected {want}"))
    return out


# ---------------------------------------------------------------------------
# matrix factorizations


@dataclass(frozen=True)
class MatrixFactorization:
    """Square linear matrices with ``psi phi = phi psi = q id``."""

    sig: VariableSet
    psi: PolyMatrix
    phi: PolyMatrix

    def __post_init__(self):
        if self.sig.n_vars == 0:
            raise PreconditionError("matrix factorizations need at least one variable")
        n = self.psi.rows
        if self.psi.shape != (n, n) or self.phi.shape != (n, n):
            raise ValueError("a matrix factorization needs two square matrices of equal size")
        q = quadratic_form(self.sig)
        for name, prod in (("psi*phi", self.psi @ self.phi), ("phi*psi", self.phi @ self.psi)):
            bad = prod.first_mismatch(PolyMatrix.scalar(self.sig.n_vars, n, q))
            if bad is not None:
                raise ValueError(f"{name} differs from q*id at entry {bad}")

    @property
    def rank(self) -> int:
        return self.psi.rows

    def swapped(self) -> "MatrixFactorization":
        return MatrixFactorization(self.sig, self.phi, self.psi)


def valise_mf(A: Adinkra) -> MatrixFactorization:
    hs = A.heights()
    if len(hs) != 2 or hs[1] != hs[0] + 1:
        raise PreconditionError(f"not a valise: vertices sit at heights {hs}")
    C = complex_of(A)
    psi = C.d(-hs[1])
    phi = adjoint(C, -hs[0])
    if psi.rows != psi.cols:
        raise PreconditionError(f"valise levels have sizes {psi.rows} and {psi.cols}")
    return MatrixFactorization(A.signature, psi, phi)


def _embed(m: PolyMatrix, images: Sequence[Poly]) -> PolyMatrix:
    nv = images[0].nvars
    return PolyMatrix(nv, [[p.substitute(images) for p in row] for row in m.entries()], m.rows, m.cols)


def knorrer(mf1: MatrixFactorization, mf2: MatrixFactorization) -> MatrixFactorization:
    """Graded tensor product; a factorization of ``q1 + q2`` of rank ``2 n m``."""
    s1, s2 = mf1.sig, mf2.sig
    if s1.n_vars == 0 or s2.n_vars == 0:
        raise PreconditionError("both factors need at least one variable")
    sig, _, v1, _, v2 = combine_signatures(s1, s2)
    nv = sig.n_vars
    im1 = [Poly.var(nv, v1[i]) for i in range(s1.n_vars)]
    im2 = [Poly.var(nv, v2[i]) for i in range(s2.n_vars)]
    psi1, phi1 = _embed(mf1.psi, im1), _embed(mf1.phi, im1)
    psi2, phi2 = _embed(mf2.psi, im2), _embed(mf2.phi, im2)
    n, m = mf1.rank, mf2.rank
    tau = PolyMatrix.blocks(nv, [[psi2.kron_identity_left(n), psi1.kron_identity_right(m)],
                                 [phi1.kron_identity_right(m), -phi2.kron_identity_left(n)]])
    tau_p = PolyMatrix.blocks(nv, [[phi2.kron_identity_left(n), psi1.kron_identity_right(m)],
                                   [phi1.kron_identity_right(m), -psi2.kron_identity_left(n)]])
    return MatrixFactorization(sig, tau, tau_p)


# ---------------------------------------------------------------------------
# chain maps and cones


@dataclass(frozen=True)
class ChainMap:
    """``maps[n] : X^n -> Y^{n+shift}`` (rows indexed by the target)."""

    source: FreeComplex
    target: FreeComplex
    shift: int
    maps: Mapping[int, PolyMatrix]
    name: str = ""

    def f(self, n: int) -> PolyMatrix:
        m = self.maps.get(n)
        if m is None:
            return PolyMatrix.zeros(self.source.sig.n_vars, self.target.rank(n + self.shift),
                                    self.source.rank(n))
        return m


@dataclass
class ChainMapReport:
    ok: bool
    problems: list[str]

    def __bool__(self):
        return self.ok


def check_chain_map(f: ChainMap) -> ChainMapReport:
    X, Y, s = f.source, f.target, f.shift
    problems = []
    if X.sig != Y.sig:
        problems.append("source and target have different signatures")
        return ChainMapReport(False, problems)
    ring = Ring(X.sig, X.quotient or Y.quotient)
    for n, m in f.maps.items():
        if m.shape != (Y.rank(n + s), X.rank(n)):
            problems.append(f"f^{n} has shape {m.shape}, expected ({Y.rank(n + s)}, {X.rank(n)})")
    if problems:
        return ChainMapReport(False, problems)
    for n, m in f.maps.items():
        rs, cs = Y.shifts.get(n + s, ()), X.shifts.get(n, ())
        for i in range(m.rows):
            for j in range(m.cols):
                e = m[i, j]
                if e and (not e.is_homogeneous() or e.homogeneous_degree() != cs[j] - rs[i]):
                    problems.append(f"f^{n} entry ({i}, {j}) is not of degree {cs[j] - rs[i]}")
    degrees = sorted(set(X.degrees()) | {n - s for n in Y.degrees()})
    for n in degrees:
        lhs = (Y.d(n + s) @ f.f(n)).reduce(ring)
        rhs = (f.f(n + 1) @ X.d(n)).reduce(ring)
        bad = lhs.first_mismatch(rhs)
        if bad is not None:
            problems.append(f"d_Y f^{n} != f^{n + 1} d_X at entry {bad}")
    return ChainMapReport(not problems, problems)


def verify_chain_map(f: ChainMap) -> bool:
    return check_chain_map(f).ok


def cone(f: ChainMap, name: str = "") -> FreeComplex:
    """``Cone(f)^n = Y^n + X^{n+1-s}`` with differential ``[[d_Y, f], [0, -d_X]]``."""
    X, Y, s = f.source, f.target, f.shift
    nv = X.sig.n_vars
    degrees = sorted(set(Y.degrees()) | {n - 1 + s for n in X.degrees()})
    shifts, labels = {}, {}
    for n in degrees:
        k = n + 1 - s
        shifts[n] = Y.shifts.get(n, ()) + X.shifts.get(k, ())
        labels[n] = tuple(f"Y:{x}" for x in Y.labels.get(n, ())) + \
            tuple(f"X:{x}" for x in X.labels.get(k, ()))
    diffs = {}
    for n in degrees:
        if n + 1 not in shifts:
            continue
        k = n + 1 - s
        top = [Y.d(n), f.f(k)]
        bottom = [PolyMatrix.zeros(nv, X.rank(k + 1), Y.rank(n)), -X.d(k)]
        grid = [row for row in (top, bottom) if row[0].rows]
        grid = [[b for b in row] for row in grid]
        if not grid:
            continue
        diffs[n] = _hstack_rows(nv, grid, Y.rank(n), X.rank(k))
    return FreeComplex(X.sig, shifts, diffs, labels, X.quotient or Y.quotient, name=name)


def _hstack_rows(nv: int, grid, left: int, right: int) -> PolyMatrix:
    rows = []
    for a, b in grid:
        for i in range(a.rows):
            rows.append(list(a.row(i)) + list(b.row(i)))
    return PolyMatrix(nv, rows, len(rows), left + right)


@dataclass
class Certificate:
    ok: bool
    max_degree: int
    mismatches: list[tuple[int, int, int, int]]
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return f"profiles agree for all internal degrees <= {self.max_degree}"
        n, d, a, b = self.mismatches[0]
        return f"profiles differ at H^{n}, degree {d}: {a} vs {b}"


def compare_profiles(C1: FreeComplex, C2: FreeComplex, D: int) -> Certificate:
    from .cohomology import hilbert_profile

    p1, p2 = hilbert_profile(C1, D, warn=False), hilbert_profile(C2, D, warn=False)
    keys = set(p1.dims) | set(p2.dims)
    bad = sorted((n, d, p1.get(n, d), p2.get(n, d)) for n, d in keys if p1.get(n, d) != p2.get(n, d))
    return Certificate(not bad, D, bad)


@dataclass
class ConeResult:
    complex: FreeComplex
    map: ChainMap
    certificate: Certificate | None


def raise_map(A: Adinkra, vid: str) -> ChainMap:
    """``j : (R --q--> R) -> C(A)`` sending the generators to ``v`` and ``d^dagger v``."""
    if vid not in zero_mode_vertices(A):
        raise PreconditionError(f"vertex {vid} is not raisable (some edge goes down from it)")
    C = complex_of(A)
    sig = C.sig
    nv = sig.n_vars
    h = A.height(vid)
    q = quadratic_form(sig)
    X = FreeComplex(sig, {-h - 1: (h + 2,), -h: (h,)}, {-h - 1: PolyMatrix(nv, [[q]])},
                    {-h - 1: (f"{vid}'",), -h: (vid,)}, name=f"R/q[{h}]")
    k = C.labels[-h].index(vid)
    top = PolyMatrix(nv, [[1 if i == k else 0] for i in range(C.rank(-h))])
    maps = {-h: top}
    if C.rank(-h - 1):
        maps[-h - 1] = adjoint(C, -h).select(range(C.rank(-h - 1)), [k])
    return ChainMap(X, C, 0, maps, name=f"j[{vid}]")


def cone_of_raise(A: Adinkra, vid: str, certify: bool = True,
                  max_degree: int = DEFAULT_MAX_DEGREE) -> ConeResult:
    j = raise_map(A, vid)
    report = check_chain_map(j)
    if not report.ok:
        raise AdinkraError(f"j is not a chain map: {report.problems[0]}")
    cn = cone(j, name=f"cone[{vid}]")
    cert = None
    if certify:
        cert = compare_profiles(cn, complex_of(raise_vertex(A, vid)), max_degree)
    return ConeResult(cn, j, cert)


# ---------------------------------------------------------------------------
# unrolling over R/q


@dataclass
class UnrolledComplex:
    complex: FreeComplex
    copies: int
    certificate: Certificate
    d_hat_squared_ok: bool


def unroll_complex(C: FreeComplex, D: int) -> FreeComplex:
    """Copies ``C_j`` (shifts raised by ``2j``) glued by ``d^dagger`` from copy j to j-1."""
    if C.quotient:
        raise PreconditionError("unroll expects a complex over R")
    nv = C.sig.n_vars
    adj = adjoint_of(C)
    copies = max(0, (D - C.min_shift()) // 2) + 1
    # homological degree -l collects C^{-i} from copy j with i + 2j = l
    pieces: dict[int, list[tuple[int, int]]] = {}
    for j in range(copies):
        for n in C.degrees():
            pieces.setdefault(n - 2 * j, []).append((j, n))
    shifts, labels, offsets = {}, {}, {}
    for m, parts in pieces.items():
        parts.sort()
        sh, lab, off, pos = [], [], {}, 0
        for j, n in parts:
            off[(j, n)] = pos
            pos += C.rank(n)
            sh += [s + 2 * j for s in C.shifts[n]]
            lab += [f"{x}#{j}" for x in C.labels[n]]
        shifts[m], labels[m], offsets[m] = tuple(sh), tuple(lab), off
    diffs = {}
    for m, parts in pieces.items():
        if m + 1 not in pieces:
            continue
        grid = [[Poly.zero(nv)] * len(shifts[m]) for _ in shifts[m + 1]]

        def place(block: PolyMatrix, r0: int, c0: int):
            for i in range(block.rows):
                for k in range(block.cols):
                    e = block[i, k]
                    if e:
                        grid[r0 + i][c0 + k] = e

        for j, n in parts:
            c0 = offsets[m][(j, n)]
            if (j, n + 1) in offsets[m + 1]:
                place(C.d(n), offsets[m + 1][(j, n + 1)], c0)
            if j >= 1 and n in adj and (j - 1, n - 1) in offsets[m + 1]:
                place(adj[n], offsets[m + 1][(j - 1, n - 1)], c0)
        diffs[m] = PolyMatrix(nv, grid, len(shifts[m + 1]), len(shifts[m])).reduce(Ring(C.sig, True))
    return FreeComplex(C.sig, shifts, diffs, labels, quotient=True, name=f"unrolled {C.name}".strip())


def unroll(C: FreeComplex, max_degree: int = DEFAULT_MAX_DEGREE) -> UnrolledComplex:
    lap = check_laplacian(C)
    if not lap.ok:
        raise PreconditionError(f"unroll needs (d + d^dagger)^2 = q: {lap.summary()}")
    U = unroll_complex(C, max_degree)
    squared_ok = U.is_complex()
    cert = compare_profiles(U, C, max_degree)
    if not squared_ok:
        cert.ok = False
        cert.notes.append("d-hat squared is not zero mod q")
    copies = max(0, (max_degree - C.min_shift()) // 2) + 1
    return UnrolledComplex(U, copies, cert, squared_ok)


def unrolling_lemma_check(C: FreeComplex, max_degree: int) -> list[tuple[int, int]]:
    """Cocycles of the unrolled complex whose copy-0 part is killed by d^dagger.

    Returns the ``(degree, internal degree)`` pairs where such a cocycle is not
    a coboundary; the lemma says the list is empty.
    """
    U = unroll_complex(C, max_degree)
    ring = Ring(C.sig, True)
    adj = adjoint_of(C)
    failures = []
    for m in U.degrees():
        n_top = m
        if n_top not in C.shifts:
            continue
        # copy 0 comes first among the pieces of degree m
        width = C.rank(n_top)
        for d in range(0, max_degree + 1):
            dhat = U.slice(m, d)
            if not dhat.shape[1]:
                continue
            rows = [row for row in dhat.to_dense()]
            if n_top in adj:
                restricted = PolyMatrix(C.sig.n_vars, [[adj[n_top][i, k] if k < width else Poly.zero(C.sig.n_vars)
                                                        for k in range(len(U.shifts[m]))]
                                                       for i in range(C.rank(n_top - 1))],
                                        C.rank(n_top - 1), len(U.shifts[m]))
                # d^dagger out of copy 0 lands where a copy -1 would sit
                below = tuple(s - 2 for s in C.shifts[n_top - 1])
                extra = graded_component(restricted.reduce(ring), below, U.shifts[m], d, ring)
                rows += extra.to_dense()
            if not rows:
                rows = [[Fraction(0)] * dhat.shape[1]]
            cocycles = kernel_basis(rows, dhat.shape[1])
            if not cocycles:
                continue
            image = U.slice(m - 1, d)
            base = rank(image)
            stacked = image.to_dense()
            augmented = [list(r) + [c[i] for c in cocycles] for i, r in enumerate(stacked)]
            if rank(augmented) != base:
                failures.append((m, d))
    return failures


# ---------------------------------------------------------------------------
# embedding into the Koszul complex


def embed_into_koszul(A: Adinkra) -> ChainMap:
    """Injective chain map ``C(A) -> C(Koszul(N))`` for a fully extended Adinkra."""
    sig = A.signature
    if sig.n_mu or sig.n_rho:
        raise PreconditionError("the Koszul embedding is implemented for pure-lambda Adinkras")
    modes = zero_mode_vertices(A)
    lo = min(v.height for v in A.vertices)
    if len(modes) != 1 or A.height(modes[0]) != lo:
        raise PreconditionError(f"not fully extended: {len(modes)} zero modes")
    aligned = A.with_heights({v.id: v.height - lo for v in A.vertices})
    C = complex_of(aligned)
    N = sig.n_colors
    K = complex_of(koszul_adinkra(N))
    nv = sig.n_vars
    maps = {0: PolyMatrix(nv, [[1]])}
    top = max(v.height for v in aligned.vertices)
    for i in range(1, top + 1):
        if i > N:
            raise PreconditionError(f"height {i} exceeds the Koszul length {N}")
        prev = maps[-i + 1]
        target = prev @ C.d(-i)
        dk = K.d(-i)
        # coefficients of the linear forms: rows (generator, variable)
        lhs = [[dk[r, c].coefficient(_unit(nv, x)) for c in range(dk.cols)]
               for r in range(dk.rows) for x in range(nv)]
        rhs = [[target[r, w].coefficient(_unit(nv, x)) for w in range(target.cols)]
               for r in range(target.rows) for x in range(nv)]
        sol = solve(lhs, rhs)
        if sol is None:
            raise AdinkraError(f"no lift at height {i}")
        maps[-i] = PolyMatrix(nv, [[Poly.constant(nv, sol[r][w]) for w in range(target.cols)]
                                   for r in range(comb(N, i))], comb(N, i), target.cols)
    f = ChainMap(C, K, 0, maps, name=f"iota[{A.name}]")
    report = check_chain_map(f)
    if not report.ok:
        raise AdinkraError(f"lift is not a chain map: {report.problems[0]}")
    return f


def _unit(n: int, i: int) -> tuple[int, ...]:
    m = [0] * n
    m[i] = 1
    return tuple(m)


def injectivity_failures(f: ChainMap, max_degree: int = DEFAULT_MAX_DEGREE) -> list[tuple[int, int]]:
    X, Y = f.source, f.target
    ring = X.ring
    out = []
    for n in X.degrees():
        for d in range(max_degree + 1):
            s = graded_component(f.f(n), Y.shifts.get(n + f.shift, ()), X.shifts[n], d, ring)
            if s.shape[1] and rank(s) != s.shape[1]:
                out.append((n, d))
    return out


# ---------------------------------------------------------------------------
# annihilators of the top cohomology


@dataclass
class AnnihilatorReport:
    ok: bool
    failures: list[tuple[str, str]]


def _cocycle_failures(C: FreeComplex, n: int, g: Poly, max_degree: int) -> list[int]:
    """Internal degrees ``d`` where ``g`` maps some cocycle of ``C^n_d`` outside the image."""
    nv = C.sig.n_vars
    deg = g.homogeneous_degree() or 0
    shifts = C.shifts[n]
    mult = PolyMatrix.scalar(nv, len(shifts), g)
    out = []
    for d in range(max_degree - deg + 1):
        if not C.module_dim(n, d):
            continue
        if n + 1 in C.shifts:
            cocycles = kernel_basis(C.slice(n, d).to_dense(), C.module_dim(n, d))
        else:
            cocycles = kernel_basis([], C.module_dim(n, d))
        if not cocycles:
            continue
        gm = graded_component(mult, shifts, tuple(s + deg for s in shifts), d + deg, C.ring).to_dense()
        moved = [[sum(row[k] * z[k] for k in range(len(z))) for z in cocycles] for row in gm]
        if n - 1 in C.shifts:
            image = C.slice(n - 1, d + deg).to_dense()
        else:
            image = [[] for _ in moved]
        base = rank(image) if image and image[0] else 0
        augmented = [list(image[i]) + moved[i] for i in range(len(moved))]
        if rank(augmented) != base:
            out.append(d)
    return out


def annihilator_report(C: FreeComplex, gens: Sequence[Poly],
                       max_degree: int = DEFAULT_MAX_DEGREE) -> AnnihilatorReport:
    """Which generators fail to kill ``H^*(C)``.

    The top degree is a cokernel, so checking ``g`` on its generators settles
    every internal degree.  Lower degrees are checked cocycle by cocycle up to
    ``max_degree``.
    """
    from .cohomology import hilbert_profile

    top = max(C.degrees())
    prof = hilbert_profile(C, max_degree, warn=False)
    lower = sorted({n for (n, d), v in prof.dims.items() if v and n != top})
    names = C.sig.variable_names()
    nv = C.sig.n_vars
    shifts = C.shifts[top]
    incoming = C.d(top - 1) if (top - 1) in C.shifts else PolyMatrix.zeros(nv, len(shifts), 0)
    in_shifts = C.shifts.get(top - 1, ())
    failures = []
    for g in gens:
        deg = g.homogeneous_degree() or 0
        for k, s in enumerate(shifts):
            d = s + deg
            if d > max_degree:
                continue
            im = graded_component(incoming, shifts, in_shifts, d, C.ring)
            vec = graded_component(PolyMatrix(nv, [[g if i == k else 0] for i in range(len(shifts))]),
                                   shifts, (d,), d, C.ring)
            base = rank(im)
            dense = im.to_dense()
            col = vec.to_dense()
            augmented = [dense[i] + [col[i][0]] for i in range(len(dense))]
            if rank(augmented) != base:
                failures.append((g.to_str(names), C.labels[top][k]))
        for n in lower:
            for d in _cocycle_failures(C, n, g, max_degree):
                failures.append((g.to_str(names), f"H^{n} in degree {d}"))
    return AnnihilatorReport(not failures, failures)


def annihilator_check(C: FreeComplex, gens: Sequence[Poly],
                      max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    """Does every ``g`` annihilate the cohomology of ``C`` (through ``max_degree``)?"""
    return annihilator_report(C, gens, max_degree).ok
