"""Doubly-even binary codes, coset gradings and the Adinkras they index.

A vector of length N is an int whose bit ``i`` is coordinate ``i + 1``; bit
strings are written with coordinate 1 first.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path

from .adinkra import DASHED, SOLID, Adinkra, AdinkraError, Edge, Parity, RankSequence, Vertex, validate
from .exactalg import VariableSet

ENUMERATION_LIMIT = 20
ADINKRA_LIMIT = 12


class CodeError(ValueError):
    pass


class GuardError(CodeError):
    """A size guard refused the request."""


def weight(x: int) -> int:
    return bin(x).count("1")


def to_bits(x: int, n: int) -> str:
    return "".join("1" if x >> i & 1 else "0" for i in range(n))


def from_bits(s: str) -> int:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise CodeError(f"not a bit string: {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def _echelon(rows) -> dict[int, int]:
    """Reduced basis keyed by pivot (lowest set bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        r = _reduce(r, basis)
        if not r:
            raise CodeError("generator rows are dependent over GF(2)")
        p = r & -r
        for k in list(basis):
            if basis[k] & p:
                basis[k] ^= r
        basis[p] = r
    return basis


def _reduce(x: int, basis: dict[int, int]) -> int:
    for p, r in basis.items():
        if x & p:
            x ^= r
    return x


@dataclass(frozen=True)
class BinaryCode:
    length: int
    rows: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.length < 0:
            raise CodeError("length must be nonnegative")
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r >> self.length:
                raise CodeError(f"row {bin(r)} is longer than {self.length}")
        object.__setattr__(self, "_basis", _echelon(self.rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, x: int) -> int:
        """Canonical representative of ``x`` modulo the code."""
        return _reduce(x, self._basis)

    def codewords(self):
        words = [0]
        for r in self.rows:
            words += [w ^ r for w in words]
        return words

    def bit_rows(self) -> list[str]:
        return [to_bits(r, self.length) for r in self.rows]

    def __add__(self, other: "BinaryCode") -> "BinaryCode":
        rows = self.rows + tuple(r << self.length for r in other.rows)
        return BinaryCode(self.length + other.length, rows, f"{self.name}+{other.name}")


def is_doubly_even(code: BinaryCode) -> bool:
    if code.dim <= ENUMERATION_LIMIT:
        return all(weight(w) % 4 == 0 for w in code.codewords())
    # generators of weight 0 mod 4 with even pairwise overlaps span a doubly-even code
    return all(weight(r) % 4 == 0 for r in code.rows) and \
        all(weight(a & b) % 2 == 0 for a, b in combinations(code.rows, 2))


def coset_weights(code: BinaryCode) -> dict[int, int]:
    """Minimal weight in each coset, keyed by canonical representative."""
    if code.length > ENUMERATION_LIMIT:
        raise GuardError(f"length {code.length} exceeds the enumeration guard {ENUMERATION_LIMIT}")
    best: dict[int, int] = {}
    for x in range(1 << code.length):
        c = code.reduce(x)
        w = weight(x)
        if w < best.get(c, code.length + 1):
            best[c] = w
    return best


def coset_weights_bfs(code: BinaryCode) -> dict[int, int]:
    """Same data by breadth-first search on the quotient cube."""
    start = code.reduce(0)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for i in range(code.length):
            nb = code.reduce(c ^ (1 << i))
            if nb not in dist:
                dist[nb] = dist[c] + 1
                queue.append(nb)
    return dist


def _sequence(weights: dict[int, int]) -> RankSequence:
    top = max(weights.values())
    counts = [0] * (top + 1)
    for w in weights.values():
        counts[w] += 1
    return RankSequence(tuple(counts), 0)


def coset_rank_sequence(code: BinaryCode, method: str = "enumerate") -> RankSequence:
    if not is_doubly_even(code):
        raise CodeError(f"{code.name or 'code'} is not doubly even")
    if method == "enumerate":
        return _sequence(coset_weights(code))
    if method == "bfs":
        return _sequence(coset_weights_bfs(code))
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# code -> Adinkra


def _solve_gf2(equations: list[tuple[int, int]], nvars: int) -> int | None:
    """Solve ``<row, x> = rhs`` over GF(2); rows are bitmasks.  Free variables are 0."""
    pivots: dict[int, tuple[int, int]] = {}
    for row, rhs in equations:
        for p, (prow, prhs) in pivots.items():
            if row >> p & 1:
                row ^= prow
                rhs ^= prhs
        if not row:
            if rhs:
                return None
            continue
        p = (row & -row).bit_length() - 1
        for k, (krow, krhs) in list(pivots.items()):
            if krow >> p & 1:
                pivots[k] = (krow ^ row, krhs ^ rhs)
        pivots[p] = (row, rhs)
    x = 0
    for p, (row, rhs) in pivots.items():
        if rhs:
            x |= 1 << p
    return x


def code_to_adinkra(code: BinaryCode, max_length: int = ADINKRA_LIMIT) -> Adinkra:
    """Quotient cube graded by minimal coset weight, dashed by a GF(2) solve."""
    N = code.length
    if N > max_length:
        raise GuardError(f"length {N} exceeds the guard {max_length}")
    if N < 1:
        raise CodeError("need at least one coordinate")
    if not is_doubly_even(code):
        raise CodeError(f"{code.name or 'code'} is not doubly even")
    weights = coset_weights_bfs(code)
    order = sorted(weights, key=lambda c: (weights[c], to_bits(c, N)[::-1]))
    ids = {c: to_bits(c, N) for c in order}
    vertices = tuple(Vertex(ids[c], Parity(weights[c] % 2), weights[c]) for c in order)
    edge_index: dict[tuple[int, int], int] = {}
    raw = []
    for c in order:
        for i in range(N):
            nb = code.reduce(c ^ (1 << i))
            key = (min(c, nb), max(c, nb))
            if (key, i) in edge_index:
                continue
            edge_index[(key, i)] = len(raw)
            low, high = (c, nb) if weights[c] < weights[nb] else (nb, c)
            raw.append((high, low, i + 1))
    equations = []
    seen = set()
    for c in order:
        for i, j in combinations(range(N), 2):
            cyc = [c, code.reduce(c ^ (1 << i)), code.reduce(c ^ (1 << i) ^ (1 << j)),
                   code.reduce(c ^ (1 << j))]
            key = (frozenset(cyc), i, j)
            if key in seen:
                continue
            seen.add(key)
            row = 0
            for (a, b), col in ((cyc[0:2], i), (cyc[1:3], j), ((cyc[2], cyc[3]), i), ((cyc[3], cyc[0]), j)):
                row ^= 1 << edge_index[((min(a, b), max(a, b)), col)]
            equations.append((row, 1))
    solution = _solve_gf2(equations, len(raw))
    if solution is None:
        raise AdinkraError("no dashing satisfies the 4-cycle constraints")
    edges = tuple(Edge(ids[h], ids[lo], color, DASHED if solution >> k & 1 else SOLID)
                  for k, (h, lo, color) in enumerate(raw))
    A = Adinkra(vertices, edges, VariableSet.euclidean(N), name=f"code:{code.name}")
    report = validate(A)
    if not report.ok:
        raise AdinkraError(f"dashing failed validation: {report.violations[0]}")
    return A


# ---------------------------------------------------------------------------
# named codes and the text format


def _builtin_rows(token: str) -> list[str] | None:
    p = resources.files("adinkralab") / "data" / f"{token}.code"
    if not p.is_file():
        return None
    return [r for r in (line.split("#", 1)[0].strip() for line in p.read_text().splitlines()) if r]


def trivial_code(k: int) -> BinaryCode:
    return BinaryCode(k, (), f"t{k}")


def _named(token: str) -> BinaryCode:
    token = token.strip().lower()
    m = re.fullmatch(r"t(\d+)", token)
    if m:
        return trivial_code(int(m.group(1)))
    rows = _builtin_rows(token)
    if rows is None:
        raise CodeError(f"unknown code {token!r}; known: t<k>, {', '.join(BUILTIN_NAMES[1:])}")
    code = BinaryCode(len(rows[0]), tuple(from_bits(r) for r in rows), token)
    if not is_doubly_even(code):
        raise CodeError(f"built-in {token} is not doubly even")
    return code


def builtin(name: str) -> BinaryCode:
    """``d4``, ``e8``, ``t1`` or sums such as ``t1+e8`` (``⊕`` also accepted)."""
    parts = re.split(r"\+|⊕", name)
    code = _named(parts[0])
    for p in parts[1:]:
        code = code + _named(p)
    code = BinaryCode(code.length, code.rows, name)
    return code


BUILTIN_NAMES = ("t1", "d4", "d6", "d10", "e7", "e8", "e16")


def parse_code(text: str, name: str = "", length: int | None = None) -> BinaryCode:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip().replace(" ", "")
        if line:
            rows.append(line)
    if rows and len({len(r) for r in rows}) != 1:
        raise CodeError("generator rows have different lengths")
    if not rows:
        if length is None:
            raise CodeError("an empty code file needs an explicit length")
        return BinaryCode(length, (), name)
    return BinaryCode(len(rows[0]), tuple(from_bits(r) for r in rows), name)


def read_code(path: str | Path) -> BinaryCode:
    p = Path(path)
    return parse_code(p.read_text(), p.stem)


def format_code(code: BinaryCode) -> str:
    head = f"# {code.name}\n" if code.name else ""
    return head + "".join(r + "\n" for r in code.bit_rows())
