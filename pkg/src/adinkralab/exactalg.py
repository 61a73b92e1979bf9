"""Exact graded linear algebra over polynomial rings with rational coefficients.

Polynomials live in ``k[lambda_1.., mu_1.., rho_1, rho_1*, ..]`` with ``k = QQ``.
Exponent vectors are tuples, coefficients are :class:`fractions.Fraction`
(always reduced, positive denominator), and monomials of a fixed degree are
listed in graded-lex order.  Everything here is immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Rational = Fraction
Monomial = tuple[int, ...]

DEFAULT_MAX_DEGREE = 8


class HomogeneityError(ValueError):
    """A matrix entry has the wrong degree for the requested graded slice."""


# ---------------------------------------------------------------------------
# variables and signatures


@dataclass(frozen=True)
class VariableSet:
    """Signature ``(n_lambda, n_mu, n_rho)`` of a quadratic form.

    Variables are ordered ``lambda_1..lambda_a, mu_1..mu_b`` followed by the
    pairs ``rho_k, rho_k*``.  Colors are numbered from 1 in the same order,
    one color per pair.
    """

    n_lambda: int = 0
    n_mu: int = 0
    n_rho: int = 0

    def __post_init__(self):
        for name in ("n_lambda", "n_mu", "n_rho"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative int, got {value!r}")

    @classmethod
    def euclidean(cls, n: int) -> "VariableSet":
        return cls(n, 0, 0)

    @property
    def n_vars(self) -> int:
        return self.n_lambda + self.n_mu + 2 * self.n_rho

    @property
    def n_colors(self) -> int:
        return self.n_lambda + self.n_mu + self.n_rho

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_lambda, self.n_mu, self.n_rho)

    def color_kind(self, color: int) -> str:
        self._check_color(color)
        if color <= self.n_lambda:
            return "lambda"
        if color <= self.n_lambda + self.n_mu:
            return "mu"
        return "rho"

    def color_variable(self, color: int, starred: bool = False) -> int:
        """Index of the variable carried by ``color`` (the star picks rho*)."""
        kind = self.color_kind(color)
        if kind != "rho":
            return color - 1
        k = color - self.n_lambda - self.n_mu - 1
        return self.n_lambda + self.n_mu + 2 * k + (1 if starred else 0)

    def variable_color(self, index: int) -> int:
        if not 0 <= index < self.n_vars:
            raise IndexError(f"variable index {index} out of range")
        base = self.n_lambda + self.n_mu
        if index < base:
            return index + 1
        return base + (index - base) // 2 + 1

    def variable_names(self) -> list[str]:
        names = [f"l{i}" for i in range(1, self.n_lambda + 1)]
        names += [f"m{j}" for j in range(1, self.n_mu + 1)]
        for k in range(1, self.n_rho + 1):
            names += [f"r{k}", f"r{k}*"]
        return names

    def b_image(self, index: int) -> tuple[int, int]:
        """Image of variable ``index`` under the involution, as (sign, index)."""
        if index < self.n_lambda:
            return 1, index
        if index < self.n_lambda + self.n_mu:
            return -1, index
        offset = index - self.n_lambda - self.n_mu
        return 1, index + (1 if offset % 2 == 0 else -1)

    def _check_color(self, color: int):
        if not 1 <= color <= self.n_colors:
            raise IndexError(f"color {color} out of range 1..{self.n_colors}")


# ---------------------------------------------------------------------------
# polynomials


def _clean(terms: Mapping[Monomial, Fraction]) -> dict[Monomial, Fraction]:
    return {m: c for m, c in terms.items() if c != 0}


class Poly:
    """Sparse polynomial: a map from exponent tuples to nonzero rationals."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction | int] | None = None):
        self.nvars = nvars
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has wrong length for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, index: int, coeff=1) -> "Poly":
        m = [0] * nvars
        m[index] = 1
        return cls(nvars, {tuple(m): coeff})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {sum(m) for m in self._terms}

    def homogeneous_degree(self) -> int | None:
        """Degree if homogeneous and nonzero, ``None`` for zero; raises otherwise."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise HomogeneityError(f"polynomial {self} is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {m: c * v for m, v in self._terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw(self.nvars, _clean(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == Poly.constant(self.nvars, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Ring map sending variable ``i`` to ``images[i]``."""
        out = Poly.zero(images[0].nvars if images else self.nvars)
        for m, c in self._terms.items():
            term = Poly.constant(out.nvars, c)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        index = monomial_index(self.nvars, None)
        parts = []
        for m in sorted(self._terms, key=index):
            c = self._terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_str()})"


def monomial_index(nvars: int, _unused=None) -> Callable[[Monomial], tuple]:
    """Sort key putting monomials in graded-lex order (largest first)."""

    def key(m: Monomial):
        return (-sum(m), tuple(-e for e in m))

    return key


def linear_form(sig: VariableSet, coefficients: Mapping[int, Fraction | int]) -> Poly:
    n = sig.n_vars
    out = Poly.zero(n)
    for i, c in coefficients.items():
        out = out + Poly.var(n, i, c)
    return out


LinearForm = Poly


def variable(sig: VariableSet, index: int) -> Poly:
    return Poly.var(sig.n_vars, index)


def quadratic_form(sig: VariableSet) -> Poly:
    n = sig.n_vars
    terms: dict[Monomial, Fraction] = {}
    for i in range(sig.n_lambda + sig.n_mu):
        m = [0] * n
        m[i] = 2
        terms[tuple(m)] = Fraction(1 if i < sig.n_lambda else -1)
    base = sig.n_lambda + sig.n_mu
    for k in range(sig.n_rho):
        m = [0] * n
        m[base + 2 * k] = m[base + 2 * k + 1] = 1
        terms[tuple(m)] = Fraction(1)
    return Poly(n, terms)


def involution_b(sig: VariableSet, form: Poly) -> Poly:
    """Apply the involution fixing lambda, negating mu and swapping rho with rho*."""
    n = sig.n_vars
    out: dict[Monomial, Fraction] = {}
    for m, c in form.items():
        image = [0] * n
        sign = 1
        for i, e in enumerate(m):
            if e:
                s, j = sig.b_image(i)
                image[j] += e
                if s < 0 and e % 2:
                    sign = -sign
        out[tuple(image)] = sign * c
    return Poly._raw(n, out)


def polar_form(sig: VariableSet, x: Sequence, y: Sequence) -> Fraction:
    """``B(x, y) = q(x + y) - q(x) - q(y)`` for coordinate vectors x, y."""
    q = quadratic_form(sig)

    def value(v):
        total = Fraction(0)
        for m, c in q.items():
            term = c
            for i, e in enumerate(m):
                term *= Fraction(v[i]) ** e
            total += term
        return total

    s = [Fraction(a) + Fraction(b) for a, b in zip(x, y)]
    return value(s) - value(x) - value(y)


# ---------------------------------------------------------------------------
# monomial bases


def monomial_count(sig: VariableSet | int, d: int) -> int:
    n = sig if isinstance(sig, int) else sig.n_vars
    if d < 0:
        return 0
    return comb(d + n - 1, n - 1)


@lru_cache(maxsize=None)
def _basis(nvars: int, d: int) -> tuple[Monomial, ...]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return tuple(out)


@lru_cache(maxsize=None)
def _basis_index(nvars: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_basis(nvars, d))}


def monomial_basis(sig: VariableSet | int, d: int) -> tuple[Monomial, ...]:
    """All monomials of degree ``d`` in graded-lex order."""
    n = sig if isinstance(sig, int) else sig.n_vars
    if d < 0:
        return ()
    return _basis(n, d)


def quotient_dim(sig: VariableSet, d: int) -> int:
    """``dim (R/<q>)_d``; q is a nonzerodivisor of degree 2."""
    if d < 0:
        return 0
    return monomial_count(sig, d) - monomial_count(sig, d - 2)


# ---------------------------------------------------------------------------
# coefficient rings: R itself or R/<q>


@dataclass(frozen=True)
class Ring:
    """Either the polynomial ring of ``sig`` or its quotient by the quadric."""

    sig: VariableSet
    quotient: bool = False

    def __post_init__(self):
        if self.sig.n_vars < 1:
            raise ValueError("the empty signature has no coefficient ring")

    @property
    def tag(self) -> str:
        return "RmodQ" if self.quotient else "R"

    def basis(self, d: int) -> tuple[Monomial, ...]:
        if not self.quotient:
            return monomial_basis(self.sig, d)
        return _standard_basis(self.sig, d)

    def dim(self, d: int) -> int:
        return quotient_dim(self.sig, d) if self.quotient else monomial_count(self.sig, d)

    def basis_index(self, d: int) -> dict[Monomial, int]:
        if not self.quotient:
            return _basis_index(self.sig.n_vars, d) if d >= 0 else {}
        return _standard_index(self.sig, d)

    def reduce(self, p: Poly) -> Poly:
        return normal_form(self.sig, p) if self.quotient else p


def _leading(sig: VariableSet) -> tuple[Monomial, Fraction, Poly]:
    q = quadratic_form(sig)
    lead = sorted(q.terms, key=monomial_index(sig.n_vars))[0]
    c = q.terms[lead]
    tail = q - Poly(sig.n_vars, {lead: c})
    return lead, c, tail


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def _standard_basis(sig: VariableSet, d: int) -> tuple[Monomial, ...]:
    lead = _leading(sig)[0]
    return tuple(m for m in monomial_basis(sig, d) if not _divides(lead, m))


@lru_cache(maxsize=None)
def _standard_index(sig: VariableSet, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_standard_basis(sig, d))}


@lru_cache(maxsize=None)
def _monomial_normal_form(sig: VariableSet, m: Monomial) -> tuple[tuple[Monomial, Fraction], ...]:
    lead, c, tail = _leading(sig)
    if not _divides(lead, m):
        return ((m, Fraction(1)),)
    rest = tuple(a - b for a, b in zip(m, lead))
    # m = rest * lead, and lead == -(tail)/c modulo q
    out: dict[Monomial, Fraction] = {}
    for tm, tc in tail.items():
        mono = tuple(a + b for a, b in zip(rest, tm))
        for nm, nc in _monomial_normal_form(sig, mono):
            out[nm] = out.get(nm, 0) - tc / c * nc
    return tuple((k, v) for k, v in out.items() if v)


def normal_form(sig: VariableSet, p: Poly) -> Poly:
    """Remainder of ``p`` modulo the quadric; standard monomials only."""
    out: dict[Monomial, Fraction] = {}
    for m, c in p.items():
        for nm, nc in _monomial_normal_form(sig, m):
            out[nm] = out.get(nm, 0) + c * nc
    return Poly._raw(sig.n_vars, _clean(out))


# ---------------------------------------------------------------------------
# polynomial matrices


class PolyMatrix:
    """Dense matrix of polynomials over a fixed number of variables."""

    __slots__ = ("nvars", "rows", "cols", "_entries")

    def __init__(self, nvars: int, entries: Sequence[Sequence[Poly | int]], rows: int | None = None,
                 cols: int | None = None):
        self.nvars = nvars
        grid = [list(r) for r in entries]
        self.rows = len(grid) if rows is None else rows
        if cols is None:
            cols = len(grid[0]) if grid else 0
        self.cols = cols
        if len(grid) != self.rows or any(len(r) != cols for r in grid):
            raise ValueError("ragged or mis-sized polynomial matrix")
        self._entries = tuple(
            tuple(e if isinstance(e, Poly) else Poly.constant(nvars, e) for e in r) for r in grid
        )
        for r in self._entries:
            for e in r:
                if e.nvars != nvars:
                    raise ValueError("entry over a different variable set")

    @classmethod
    def zeros(cls, nvars: int, rows: int, cols: int) -> "PolyMatrix":
        z = Poly.zero(nvars)
        return cls(nvars, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def scalar(cls, nvars: int, n: int, p: Poly | int) -> "PolyMatrix":
        p = p if isinstance(p, Poly) else Poly.constant(nvars, p)
        z = Poly.zero(nvars)
        return cls(nvars, [[p if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def identity(cls, nvars: int, n: int) -> "PolyMatrix":
        return cls.scalar(nvars, n, 1)

    @classmethod
    def blocks(cls, nvars: int, grid: Sequence[Sequence["PolyMatrix"]]) -> "PolyMatrix":
        rows = []
        for block_row in grid:
            height = block_row[0].rows
            if any(b.rows != height for b in block_row):
                raise ValueError("block row heights disagree")
            for i in range(height):
                rows.append([e for b in block_row for e in b._entries[i]])
        total_cols = sum(b.cols for b in grid[0]) if grid else 0
        return cls(nvars, rows, len(rows), total_cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self._entries[i][j]

    def row(self, i: int) -> tuple[Poly, ...]:
        return self._entries[i]

    def entries(self) -> tuple[tuple[Poly, ...], ...]:
        return self._entries

    def map(self, fn: Callable[[Poly], Poly]) -> "PolyMatrix":
        return PolyMatrix(self.nvars, [[fn(e) for e in r] for r in self._entries], self.rows, self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.nvars, [[self._entries[i][j] for i in range(self.rows)]
                                       for j in range(self.cols)], self.cols, self.rows)

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = Poly.zero(self.nvars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self._entries[i][k]
                    if a:
                        b = other._entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.nvars, out, self.rows, other.cols)

    def _binary(self, other: "PolyMatrix", op) -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix(self.nvars, [[op(a, b) for a, b in zip(r1, r2)]
                                       for r1, r2 in zip(self._entries, other._entries)],
                          self.rows, self.cols)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map(lambda e: -e)

    def scale(self, p) -> "PolyMatrix":
        return self.map(lambda e: e * p)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.shape == other.shape and \
            self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def is_zero(self) -> bool:
        return all(not e for r in self._entries for e in r)

    def first_mismatch(self, other: "PolyMatrix") -> tuple[int, int] | None:
        for i in range(self.rows):
            for j in range(self.cols):
                if self._entries[i][j] != other._entries[i][j]:
                    return (i, j)
        return None

    def is_scalar(self, p: Poly) -> bool:
        return self.rows == self.cols and self == PolyMatrix.scalar(self.nvars, self.rows, p)

    def reduce(self, ring: Ring) -> "PolyMatrix":
        return self.map(ring.reduce) if ring.quotient else self

    def kron_identity_left(self, n: int) -> "PolyMatrix":
        """``id_n (x) self`` in block form."""
        z = PolyMatrix.zeros(self.nvars, self.rows, self.cols)
        return PolyMatrix.blocks(self.nvars, [[self if i == j else z for j in range(n)] for i in range(n)])

    def kron_identity_right(self, m: int) -> "PolyMatrix":
        """``self (x) id_m`` in block form."""
        grid = [[PolyMatrix.scalar(self.nvars, m, self._entries[i][j]) for j in range(self.cols)]
                for i in range(self.rows)]
        if not grid:
            return PolyMatrix.zeros(self.nvars, 0, self.cols * m)
        return PolyMatrix.blocks(self.nvars, grid)

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.nvars, [[self._entries[i][j] for j in cols] for i in rows],
                          len(rows), len(cols))

    def to_text(self, names: Sequence[str] | None = None) -> str:
        cells = [[e.to_str(names) for e in r] for r in self._entries]
        if not cells:
            return f"[] ({self.rows}x{self.cols})"
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


def poly_matrix(sig: VariableSet, rows: Sequence[Sequence[Mapping[int, int] | int]]) -> PolyMatrix:
    """Build a matrix of linear forms from ``{variable index: coefficient}`` dicts."""
    n = sig.n_vars
    grid = []
    for r in rows:
        grid.append([linear_form(sig, e) if isinstance(e, Mapping) else Poly.constant(n, e) for e in r])
    return PolyMatrix(n, grid, len(grid), len(grid[0]) if grid else 0)


# ---------------------------------------------------------------------------
# graded slices


@dataclass(frozen=True)
class GradedSlice:
    """Degree-``d`` component of a map between shifted free modules.

    ``entries`` is sparse: ``{(row, col): value}`` with nonzero rationals.
    ``row_basis[r] = (generator, monomial)`` and likewise for columns.
    """

    degree: int
    row_basis: tuple[tuple[int, Monomial], ...]
    col_basis: tuple[tuple[int, Monomial], ...]
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_basis), len(self.col_basis))

    def to_dense(self) -> list[list[Fraction]]:
        r, c = self.shape
        out = [[Fraction(0)] * c for _ in range(r)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def compose(self, other: "GradedSlice") -> "GradedSlice":
        """``self o other`` (other is applied first)."""
        if self.col_basis != other.row_basis:
            raise ValueError("slice bases are not composable")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(k, []).append((i, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (k, j), v in other.entries.items():
            for i, w in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + w * v
        return GradedSlice(self.degree, self.row_basis, other.col_basis, _clean(out))


def module_basis(ring: Ring, shifts: Sequence[int], d: int) -> tuple[tuple[int, Monomial], ...]:
    """Basis of ``(+)_j R(-shift_j)`` in internal degree ``d``."""
    out = []
    for j, s in enumerate(shifts):
        out.extend((j, m) for m in ring.basis(d - s))
    return tuple(out)


def graded_component(matrix: PolyMatrix, row_shifts: Sequence[int], col_shifts: Sequence[int], d: int,
                     ring: Ring | None = None, sig: VariableSet | None = None) -> GradedSlice:
    """Degree-``d`` piece of the map ``(+) R(-col_shift) -> (+) R(-row_shift)``.

    Entry ``(i, j)`` must be homogeneous of degree ``col_shift[j] - row_shift[i]``.
    """
    if ring is None:
        if sig is None:
            raise ValueError("need a ring or a signature")
        ring = Ring(sig)
    if matrix.shape != (len(row_shifts), len(col_shifts)):
        raise ValueError(f"matrix shape {matrix.shape} disagrees with shifts "
                         f"({len(row_shifts)}, {len(col_shifts)})")
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            e = matrix[i, j]
            deg = e.homogeneous_degree() if e.is_homogeneous() else "mixed"
            want = col_shifts[j] - row_shifts[i]
            if deg is not None and deg != want:
                raise HomogeneityError(f"entry ({i}, {j}) has degree {deg}, expected {want}")
    row_basis = module_basis(ring, row_shifts, d)
    col_basis = module_basis(ring, col_shifts, d)
    row_offset = {}
    pos = 0
    for i, s in enumerate(row_shifts):
        row_offset[i] = pos
        pos += ring.dim(d - s)
    entries: dict[tuple[int, int], Fraction] = {}
    nonzero_by_col = [[(i, matrix[i, j]) for i in range(matrix.rows) if matrix[i, j]]
                      for j in range(matrix.cols)]
    for c, (j, m) in enumerate(col_basis):
        for i, e in nonzero_by_col[j]:
            index = ring.basis_index(d - row_shifts[i])
            for em, ec in e.items():
                prod = tuple(a + b for a, b in zip(em, m))
                if ring.quotient:
                    images = _monomial_normal_form(ring.sig, prod)
                else:
                    images = ((prod, Fraction(1)),)
                for nm, nc in images:
                    r = row_offset[i] + index[nm]
                    v = entries.get((r, c), 0) + ec * nc
                    if v:
                        entries[(r, c)] = v
                    else:
                        entries.pop((r, c), None)
    return GradedSlice(d, row_basis, col_basis, entries)


def multiplication_slice(ring: Ring, p: Poly, d: int) -> GradedSlice:
    """Multiplication by homogeneous ``p`` into degree ``d`` of a rank-one module."""
    deg = p.homogeneous_degree() or 0
    return graded_component(PolyMatrix(ring.sig.n_vars, [[p]]), [0], [deg], d, ring)


# ---------------------------------------------------------------------------
# exact rank


def _integer_rows(entries: Iterable[tuple[tuple[int, int], Fraction]]) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, Fraction]] = {}
    for (i, j), v in entries:
        rows.setdefault(i, {})[j] = Fraction(v)
    out = {}
    for i, row in rows.items():
        lcm = 1
        for v in row.values():
            lcm = lcm * v.denominator // _gcd(lcm, v.denominator)
        out[i] = {j: int(v * lcm) for j, v in row.items()}
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _components(rows: dict[int, dict[int, int]]) -> list[list[int]]:
    """Group rows that share columns (union-find); rank is additive over groups."""
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for i, row in rows.items():
        parent[i] = i
        for j in row:
            if j in owner:
                a, b = find(i), find(owner[j])
                if a != b:
                    parent[a] = b
            else:
                owner[j] = i
    groups: dict[int, list[int]] = {}
    for i in rows:
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _sparse_rank(rows: list[dict[int, int]]) -> int:
    """Fraction-free elimination on sparse integer rows.

    Unit pivots are preferred (those keep the arithmetic division-free); other
    pivots use the cross-multiplication update followed by content removal.
    """
    active = [dict(r) for r in rows if r]
    rank = 0
    while active:
        best = None
        for idx, row in enumerate(active):
            for j, v in row.items():
                score = (abs(v) != 1, len(row))
                if best is None or score < best[0]:
                    best = (score, idx, j)
            if best is not None and best[0] == (False, 1):
                break
        _, idx, col = best
        pivot_row = active.pop(idx)
        p = pivot_row[col]
        rank += 1
        survivors = []
        for row in active:
            a = row.get(col)
            if a is None:
                survivors.append(row)
                continue
            if abs(p) == 1:
                factor = a * p
                new = dict(row)
                for j, v in pivot_row.items():
                    w = new.get(j, 0) - factor * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
            else:
                new = {}
                for j in set(row) | set(pivot_row):
                    w = p * row.get(j, 0) - a * pivot_row.get(j, 0)
                    if w:
                        new[j] = w
                g = 0
                for w in new.values():
                    g = _gcd(g, w)
                    if g == 1:
                        break
                if g > 1:
                    new = {j: w // g for j, w in new.items()}
            if new:
                survivors.append(new)
        active = survivors
    return rank


def bareiss_rank(matrix: Sequence[Sequence[Fraction | int]]) -> int:
    """Dense fraction-free (Bareiss) rank; the reference implementation."""
    if not matrix or not matrix[0]:
        return 0
    denoms = 1
    for row in matrix:
        for v in row:
            den = Fraction(v).denominator
            denoms = denoms * den // _gcd(denoms, den)
    a = [[int(Fraction(v) * denoms) for v in row] for row in matrix]
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        if rank == m:
            break
        pivot = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, m):
            for c in range(col + 1, n):
                a[r][c] = (p * a[r][c] - a[r][col] * a[rank][c]) // prev
            a[r][col] = 0
        prev = p
        rank += 1
    return rank


def rank(slice_or_matrix: GradedSlice | Sequence[Sequence[Fraction | int]]) -> int:
    """Exact rank over QQ."""
    if isinstance(slice_or_matrix, GradedSlice):
        items = slice_or_matrix.entries.items()
    else:
        items = (((i, j), v) for i, row in enumerate(slice_or_matrix)
                 for j, v in enumerate(row) if v)
    rows = _integer_rows(items)
    total = 0
    for group in _components(rows):
        total += _sparse_rank([rows[i] for i in group])
    return total


def nullity(s: GradedSlice) -> int:
    return s.shape[1] - rank(s)


# ---------------------------------------------------------------------------
# exact linear solves (dense, small systems)


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]
          ) -> list[list[Fraction]] | None:
    """One solution X of ``matrix @ X = rhs`` over QQ, or ``None``."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    k = len(rhs[0]) if rhs else 0
    aug = [[Fraction(v) for v in matrix[i]] + [Fraction(v) for v in rhs[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if any(aug[i][n:]):
            return None
    x = [[Fraction(0)] * k for _ in range(n)]
    for i, c in enumerate(pivots):
        x[c] = aug[i][n:]
    return x


def kernel_basis(matrix: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel over QQ (reduced row echelon)."""
    m = len(matrix)
    n = ncols if ncols is not None else (len(matrix[0]) if m else 0)
    a = [[Fraction(v) for v in row] for row in matrix]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][f]
        basis.append(v)
    return basis


def iter_degrees(max_degree: int) -> Iterator[int]:
    return iter(range(max_degree + 1))
