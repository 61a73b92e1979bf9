"""Decorated bipartite graphs (Adinkras and q-Adinkras) and their graph moves."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import IntEnum
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exactalg import Poly, PolyMatrix, VariableSet

SOLID, DASHED = 1, -1
UP, DOWN = 1, -1


class Parity(IntEnum):
    BOSON = 0
    FERMION = 1

    @classmethod
    def parse(cls, value) -> "Parity":
        if isinstance(value, Parity):
            return value
        if isinstance(value, str):
            try:
                return cls[value.upper()]
            except KeyError as exc:
                raise ValueError(f"unknown parity {value!r}") from exc
        return cls(int(value) % 2)

    def flip(self) -> "Parity":
        return Parity(1 - self)

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Vertex:
    id: str
    parity: Parity
    height: int


@dataclass(frozen=True)
class Edge:
    """Undirected colored edge; ``dash`` is +1 (solid) or -1 (dashed).

    ``arrow`` is only meaningful on waved (rho) colors; +1 points up.
    """

    u: str
    v: str
    color: int
    dash: int = SOLID
    arrow: int = UP

    def other(self, vid: str) -> str:
        return self.v if vid == self.u else self.u


class AdinkraError(ValueError):
    pass


class PreconditionError(AdinkraError):
    pass


@dataclass(frozen=True)
class Adinkra:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    signature: VariableSet
    name: str = ""
    paper_figure: str = ""
    _index: Mapping[str, int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        index = {}
        for i, v in enumerate(self.vertices):
            index.setdefault(v.id, i)
        object.__setattr__(self, "_index", index)

    # -- lookups -----------------------------------------------------------

    @property
    def n_colors(self) -> int:
        return self.signature.n_colors

    def vertex(self, vid: str) -> Vertex:
        try:
            return self.vertices[self._index[vid]]
        except KeyError as exc:
            raise KeyError(f"no vertex {vid!r}") from exc

    def has_vertex(self, vid: str) -> bool:
        return vid in self._index

    def height(self, vid: str) -> int:
        return self.vertex(vid).height

    def incident(self, vid: str) -> list[Edge]:
        return [e for e in self.edges if vid in (e.u, e.v)]

    def source(self, e: Edge) -> str:
        """Higher endpoint."""
        return e.u if self.height(e.u) > self.height(e.v) else e.v

    def target(self, e: Edge) -> str:
        """Lower endpoint."""
        return e.v if self.height(e.u) > self.height(e.v) else e.u

    def heights(self) -> list[int]:
        return sorted({v.height for v in self.vertices})

    def level(self, h: int) -> list[Vertex]:
        """Vertices of height ``h`` in insertion order."""
        return [v for v in self.vertices if v.height == h]

    def with_heights(self, heights: Mapping[str, int]) -> "Adinkra":
        verts = tuple(replace(v, height=heights.get(v.id, v.height)) for v in self.vertices)
        return replace(self, vertices=verts)

    def moved(self, heights: Mapping[str, int]) -> "Adinkra":
        """New heights, applying b to every edge whose direction flips.

        Flipping a mu edge negates its dash and flipping a rho edge reverses
        its stored arrow; lambda edges are unchanged.
        """
        new = {v.id: heights.get(v.id, v.height) for v in self.vertices}
        edges = []
        for e in self.edges:
            before = self.height(e.u) - self.height(e.v)
            after = new[e.u] - new[e.v]
            if before * after < 0:
                kind = self.signature.color_kind(e.color)
                if kind == "mu":
                    e = replace(e, dash=-e.dash)
                elif kind == "rho":
                    e = replace(e, arrow=-e.arrow)
            edges.append(e)
        return replace(self.with_heights(new), edges=tuple(edges))

    def renamed(self, name: str) -> "Adinkra":
        return replace(self, name=name)

    def edge_variable(self, e: Edge) -> Poly:
        """Variable carried by ``e`` in the differential (source to target)."""
        sig = self.signature
        kind = sig.color_kind(e.color)
        if kind != "rho":
            return Poly.var(sig.n_vars, sig.color_variable(e.color))
        # the down traversal agrees with the arrow when the arrow points down
        starred = e.arrow != DOWN
        return Poly.var(sig.n_vars, sig.color_variable(e.color, starred))


# ---------------------------------------------------------------------------
# validation


@dataclass
class Violation:
    kind: str
    location: str
    message: str

    def __str__(self):
        return f"[{self.kind}] {self.location}: {self.message}"


@dataclass
class ValidationReport:
    ok: bool
    violations: list[Violation]

    def __bool__(self):
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "invalid:\n" + "\n".join(f"  {v}" for v in self.violations)


def _structural(A: Adinkra, q_mode: bool) -> list[Violation]:
    out: list[Violation] = []
    seen_ids = set()
    for v in A.vertices:
        if v.id in seen_ids:
            out.append(Violation("duplicate-vertex", v.id, "vertex id used twice"))
        seen_ids.add(v.id)
    sig = A.signature
    pairs: dict[frozenset, int] = {}
    good_edges = []
    for k, e in enumerate(A.edges):
        loc = f"edge #{k} {e.u}-{e.v} color {e.color}"
        bad = False
        for end in (e.u, e.v):
            if end not in seen_ids:
                out.append(Violation("unknown-vertex", loc, f"endpoint {end!r} is not a vertex"))
                bad = True
        if e.u == e.v:
            out.append(Violation("loop", loc, "endpoints coincide"))
            bad = True
        if not 1 <= e.color <= sig.n_colors:
            out.append(Violation("color-range", loc, f"color outside 1..{sig.n_colors}"))
            bad = True
        if e.dash not in (SOLID, DASHED):
            out.append(Violation("dash-value", loc, f"dash must be +1 or -1, got {e.dash}"))
            bad = True
        if e.arrow not in (UP, DOWN):
            out.append(Violation("arrow-value", loc, f"arrow must be +1 or -1, got {e.arrow}"))
            bad = True
        elif not bad and sig.color_kind(e.color) != "rho" and e.arrow != UP:
            out.append(Violation("arrow", loc, "only waved colors may carry a down arrow"))
        key = frozenset((e.u, e.v))
        if key in pairs and not bad:
            out.append(Violation("duplicate-edge", loc, f"same endpoints as edge #{pairs[key]}"))
            bad = True
        pairs.setdefault(key, k)
        if not bad:
            good_edges.append(e)
    if not q_mode and (sig.n_mu or sig.n_rho):
        out.append(Violation("signature", str(sig.as_tuple()),
                             "signature has mu/rho colors; check it as a q-Adinkra"))
    for e in good_edges:
        a, b = A.vertex(e.u), A.vertex(e.v)
        loc = f"edge {e.u}-{e.v} color {e.color}"
        if a.parity == b.parity:
            out.append(Violation("bipartite", loc, "endpoints have the same parity"))
        if abs(a.height - b.height) != 1:
            out.append(Violation("height", loc, f"heights {a.height} and {b.height} are not adjacent"))
    colors_at: dict[str, dict[int, int]] = {v.id: {} for v in A.vertices}
    for e in good_edges:
        for end in (e.u, e.v):
            colors_at[end][e.color] = colors_at[end].get(e.color, 0) + 1
    for vid, counts in colors_at.items():
        for c in range(1, sig.n_colors + 1):
            n = counts.get(c, 0)
            if n != 1:
                out.append(Violation("regularity", vid, f"{n} edges of color {c} (expected 1)"))
    return out


def two_color_cycles(A: Adinkra) -> tuple[list[tuple[tuple[int, int], list[Edge]]], list[Violation]]:
    """Components of each two-color subgraph; they must be 4-cycles."""
    cycles = []
    problems = []
    by_color: dict[int, dict[str, Edge]] = {}
    for e in A.edges:
        by_color.setdefault(e.color, {})
        by_color[e.color][e.u] = e
        by_color[e.color][e.v] = e
    for i, j in combinations(range(1, A.n_colors + 1), 2):
        seen = set()
        for start in A.vertices:
            if start.id in seen:
                continue
            path = []
            cur = start.id
            use = i
            ok = True
            while True:
                seen.add(cur)
                e = by_color.get(use, {}).get(cur)
                if e is None:
                    ok = False
                    break
                path.append(e)
                cur = e.other(cur)
                use = j if use == i else i
                if cur == start.id and use == i:
                    break
                if len(path) > 2 * len(A.vertices):
                    ok = False
                    break
            if not ok:
                continue
            if len(path) != 4:
                problems.append(Violation("four-cycle", f"colors ({i},{j}) at {start.id}",
                                          f"two-color component has length {len(path)}"))
            else:
                cycles.append(((i, j), path))
    return cycles, problems


def _cycle_dash_violations(A: Adinkra, cycles) -> list[Violation]:
    out = []
    for (i, j), path in cycles:
        dashed = sum(1 for e in path if e.dash == DASHED)
        if dashed % 2 == 0:
            names = "-".join(_walk(path)[:4])
            out.append(Violation("dashing", f"cycle {names} colors ({i},{j})",
                                 f"{dashed} dashed edges; the count must be odd"))
    return out


def _walk(path: list[Edge]) -> list[str]:
    first = path[0]
    start = first.u if first.u in (path[-1].u, path[-1].v) else first.v
    names = [start]
    cur = start
    for e in path:
        cur = e.other(cur)
        names.append(cur)
    return names


def _validate(A: Adinkra, q_mode: bool) -> ValidationReport:
    violations = _structural(A, q_mode)
    if violations:
        return ValidationReport(False, violations)
    cycles, cycle_problems = two_color_cycles(A)
    if cycle_problems:
        return ValidationReport(False, cycle_problems)
    from .complexes import algebraic_violations

    algebra = algebraic_violations(A)
    if algebra:
        sig = A.signature
        # for pure lambda the failing cycles are the readable diagnosis
        per_cycle = [] if (sig.n_mu or sig.n_rho) else _cycle_dash_violations(A, cycles)
        violations = per_cycle or algebra
    return ValidationReport(not violations, violations)


def validate(A: Adinkra) -> ValidationReport:
    """Check the Adinkra axioms for a pure-lambda signature."""
    return _validate(A, q_mode=False)


def validate_q(A: Adinkra) -> ValidationReport:
    """Check the q-Adinkra axioms (any signature)."""
    return _validate(A, q_mode=True)


def validate_any(A: Adinkra) -> ValidationReport:
    sig = A.signature
    return validate_q(A) if (sig.n_mu or sig.n_rho) else validate(A)


def require_valid(A: Adinkra) -> None:
    report = validate_any(A)
    if not report.ok:
        raise AdinkraError(f"{A.name or 'adinkra'} is not valid: {report.violations[0]}")


# ---------------------------------------------------------------------------
# invariants of the height assignment


@dataclass(frozen=True)
class RankSequence:
    ranks: tuple[int, ...]
    base: int = 0

    def __str__(self):
        return "(" + ",".join(map(str, self.ranks)) + ")"

    def __len__(self):
        return len(self.ranks)

    def __iter__(self):
        return iter(self.ranks)

    def __eq__(self, other):
        if isinstance(other, RankSequence):
            return self.ranks == other.ranks
        if isinstance(other, (tuple, list)):
            return self.ranks == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.ranks)

    @property
    def total(self) -> int:
        return sum(self.ranks)

    def even_odd(self) -> tuple[int, int]:
        even = sum(r for k, r in enumerate(self.ranks) if (self.base + k) % 2 == 0)
        return even, self.total - even


def rank_sequence(A: Adinkra) -> RankSequence:
    hs = [v.height for v in A.vertices]
    lo, hi = min(hs), max(hs)
    counts = [0] * (hi - lo + 1)
    for h in hs:
        counts[h - lo] += 1
    return RankSequence(tuple(counts), lo)


def valise_of(A: Adinkra) -> Adinkra:
    return A.moved({v.id: v.height % 2 for v in A.vertices})


def is_valise(A: Adinkra) -> bool:
    hs = A.heights()
    return len(hs) == 2 and hs[1] == hs[0] + 1


def _blocking(A: Adinkra, vid: str, direction: int) -> Edge | None:
    h = A.height(vid)
    for e in A.incident(vid):
        if A.height(e.other(vid)) - h != direction:
            return e
    return None


def raisable_vertices(A: Adinkra) -> list[str]:
    """Vertices whose neighbours all sit one level higher (sources of no edge)."""
    return [v.id for v in A.vertices if _blocking(A, v.id, +1) is None]


def lowerable_vertices(A: Adinkra) -> list[str]:
    return [v.id for v in A.vertices if _blocking(A, v.id, -1) is None]


def raise_vertex(A: Adinkra, vid: str) -> Adinkra:
    e = _blocking(A, vid, +1)
    if e is not None:
        raise PreconditionError(f"cannot raise {vid}: edge {e.u}-{e.v} (color {e.color}) goes down")
    return A.moved({vid: A.height(vid) + 2})


def lower_vertex(A: Adinkra, vid: str) -> Adinkra:
    e = _blocking(A, vid, -1)
    if e is not None:
        raise PreconditionError(f"cannot lower {vid}: edge {e.u}-{e.v} (color {e.color}) goes up")
    return A.moved({vid: A.height(vid) - 2})


def zero_mode_vertices(A: Adinkra) -> list[str]:
    """Vertices all of whose edges go up."""
    return raisable_vertices(A)


def zero_modes(A: Adinkra) -> int:
    return len(zero_mode_vertices(A))


def enumerate_rank_sequences(A: Adinkra, height_cap: int) -> set[RankSequence]:
    """Rank sequences reachable by raise/lower moves with height spread <= cap."""
    if height_cap < 2:
        raise ValueError("height_cap must be at least 2")
    ids = [v.id for v in A.vertices]
    nbrs = {vid: [e.other(vid) for e in A.incident(vid)] for vid in ids}
    slot = {vid: k for k, vid in enumerate(ids)}

    def norm(hs):
        lo = min(hs)
        return tuple(h - lo for h in hs)

    start = norm([A.height(v) for v in ids])
    seen = {start}
    queue = deque([start])
    found = set()
    while queue:
        hs = queue.popleft()
        counts = [0] * (max(hs) + 1)
        for h in hs:
            counts[h] += 1
        found.add(RankSequence(tuple(counts), 0))
        for vid in ids:
            k = slot[vid]
            around = [hs[slot[w]] for w in nbrs[vid]]
            for step in (2, -2):
                if all(h == hs[k] + step // 2 for h in around):
                    new = list(hs)
                    new[k] += step
                    new = norm(new)
                    if max(new) <= height_cap and new not in seen:
                        seen.add(new)
                        queue.append(new)
    return found


# ---------------------------------------------------------------------------
# constructions


def _parity_for(height: int, bottom: int, bottom_parity: Parity) -> Parity:
    return Parity((int(bottom_parity) + height - bottom) % 2)


def subset_id(subset: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(subset))) + "}"


def koszul_adinkra(N: int) -> Adinkra:
    if N < 1:
        raise ValueError("N must be at least 1")
    verts = []
    subsets = []
    for k in range(N + 1):
        for S in combinations(range(1, N + 1), k):
            subsets.append(S)
            verts.append(Vertex(subset_id(S), Parity(k % 2), k))
    edges = []
    for S in subsets:
        for i in range(1, N + 1):
            if i in S:
                continue
            below = sum(1 for j in S if j < i)
            edges.append(Edge(subset_id(S), subset_id(tuple(sorted(S + (i,)))), i,
                              DASHED if below % 2 else SOLID))
    return Adinkra(tuple(verts), tuple(edges), VariableSet.euclidean(N), name=f"koszul-{N}")


def combine_signatures(s1: VariableSet, s2: VariableSet
                       ) -> tuple[VariableSet, dict[int, int], dict[int, int], dict[int, int], dict[int, int]]:
    """Concatenate signatures; returns the new one with color and variable maps."""
    sig = VariableSet(s1.n_lambda + s2.n_lambda, s1.n_mu + s2.n_mu, s1.n_rho + s2.n_rho)

    def maps(s, lam_off, mu_off, rho_off):
        colors, variables = {}, {}
        for c in range(1, s.n_colors + 1):
            kind = s.color_kind(c)
            if kind == "lambda":
                nc = c + lam_off
            elif kind == "mu":
                nc = sig.n_lambda + (c - s.n_lambda) + mu_off
            else:
                nc = sig.n_lambda + sig.n_mu + (c - s.n_lambda - s.n_mu) + rho_off
            colors[c] = nc
            if kind == "rho":
                variables[s.color_variable(c)] = sig.color_variable(nc)
                variables[s.color_variable(c, True)] = sig.color_variable(nc, True)
            else:
                variables[s.color_variable(c)] = sig.color_variable(nc)
        return colors, variables

    c1, v1 = maps(s1, 0, 0, 0)
    c2, v2 = maps(s2, s1.n_lambda, s1.n_mu, s1.n_rho)
    return sig, c1, v1, c2, v2


def point_adinkra() -> Adinkra:
    """One bosonic vertex with no colors: the unit for graph tensor products."""
    return Adinkra((Vertex("pt", Parity.BOSON, 0),), (), VariableSet(0, 0, 0), name="point")


def graph_tensor(A1: Adinkra, A2: Adinkra) -> Adinkra:
    """Product graph; colors of ``A2`` follow those of ``A1``.

    Edges of the second factor pick up the sign ``(-1)^{|v1|}``.
    """
    if A2.signature.n_vars == 0 and len(A2.vertices) == 1:
        return A1
    if A1.signature.n_vars == 0 and len(A1.vertices) == 1:
        return A2
    sig, cmap1, _, cmap2, _ = combine_signatures(A1.signature, A2.signature)

    def pid(a, b):
        return f"{a}|{b}"

    verts = [Vertex(pid(a.id, b.id), Parity((a.parity + b.parity) % 2), a.height + b.height)
             for a in A1.vertices for b in A2.vertices]
    edges = []
    for b in A2.vertices:
        for e in A1.edges:
            edges.append(Edge(pid(e.u, b.id), pid(e.v, b.id), cmap1[e.color], e.dash, e.arrow))
    for a in A1.vertices:
        sign = -1 if a.parity == Parity.FERMION else 1
        for e in A2.edges:
            edges.append(Edge(pid(a.id, e.u), pid(a.id, e.v), cmap2[e.color], e.dash * sign, e.arrow))
    return Adinkra(tuple(verts), tuple(edges), sig, name=f"{A1.name}*{A2.name}".strip("*"))


def restrict_colors(A: Adinkra, keep: Sequence[int]) -> Adinkra:
    """Drop all colors outside ``keep`` (pure-lambda only); colors are renumbered."""
    sig = A.signature
    if sig.n_mu or sig.n_rho:
        raise AdinkraError("color restriction is only implemented for pure-lambda signatures")
    keep = sorted(set(keep))
    renumber = {c: k + 1 for k, c in enumerate(keep)}
    edges = tuple(replace(e, color=renumber[e.color]) for e in A.edges if e.color in renumber)
    return Adinkra(A.vertices, edges, VariableSet.euclidean(len(keep)), name=f"{A.name}|{len(keep)}")


def disjoint_union(A1: Adinkra, A2: Adinkra, name: str = "") -> Adinkra:
    if A1.signature != A2.signature:
        raise AdinkraError("disjoint union needs equal signatures")
    clash = {v.id for v in A1.vertices} & {v.id for v in A2.vertices}
    if clash:
        raise AdinkraError(f"vertex ids clash: {sorted(clash)[:3]}")
    return Adinkra(A1.vertices + A2.vertices, A1.edges + A2.edges, A1.signature, name=name)


def adinkra_from_matrices(sig: VariableSet, matrices: Sequence[PolyMatrix], base_height: int = 0,
                          bottom_parity: Parity = Parity.BOSON,
                          level_ids: Sequence[Sequence[str]] | None = None, name: str = "",
                          paper_figure: str = "") -> Adinkra:
    """Read an Adinkra off its differentials.

    ``matrices[k]`` maps level ``base_height + k + 1`` to level ``base_height + k``
    (rows are the lower vertices).  Every nonzero entry must be a signed variable.
    """
    if not matrices:
        raise AdinkraError("need at least one differential")
    sizes = [matrices[0].rows] + [m.cols for m in matrices]
    for k in range(1, len(matrices)):
        if matrices[k].rows != matrices[k - 1].cols:
            raise AdinkraError(f"differential {k} has {matrices[k].rows} rows, expected "
                               f"{matrices[k - 1].cols}")
    if level_ids is None:
        level_ids = [[f"v{base_height + k}_{i + 1}" for i in range(n)] for k, n in enumerate(sizes)]
    verts = []
    for k, ids in enumerate(level_ids):
        if len(ids) != sizes[k]:
            raise AdinkraError(f"level {k} has {sizes[k]} vertices but {len(ids)} ids were given")
        for vid in ids:
            verts.append(Vertex(vid, _parity_for(base_height + k, base_height, bottom_parity),
                                base_height + k))
    edges = []
    for k, m in enumerate(matrices):
        for i in range(m.rows):
            for j in range(m.cols):
                entry = m[i, j]
                if not entry:
                    continue
                color, dash, arrow = _decode_entry(sig, entry, (k, i, j))
                edges.append(Edge(level_ids[k + 1][j], level_ids[k][i], color, dash, arrow))
    return Adinkra(tuple(verts), tuple(edges), sig, name=name, paper_figure=paper_figure)


def _decode_entry(sig: VariableSet, entry: Poly, where) -> tuple[int, int, int]:
    items = list(entry.items())
    if len(items) != 1 or sum(items[0][0]) != 1 or abs(items[0][1]) != 1:
        raise AdinkraError(f"entry {where} = {entry.to_str(sig.variable_names())} is not a signed variable")
    mono, coeff = items[0]
    index = mono.index(1)
    color = sig.variable_color(index)
    dash = SOLID if coeff > 0 else DASHED
    arrow = UP
    if sig.color_kind(color) == "rho":
        arrow = UP if index == sig.color_variable(color, True) else DOWN
    return color, dash, arrow


# ---------------------------------------------------------------------------
# field multiplet action over k[H]


@dataclass(frozen=True)
class MultipletAction:
    """``Q_i`` matrices over k[H] on the vertex basis (column convention)."""

    order: tuple[str, ...]
    Q: Mapping[int, PolyMatrix]

    def q(self, color: int) -> PolyMatrix:
        return self.Q[color]

    @property
    def H(self) -> Poly:
        return Poly.var(1, 0)


def multiplet_action(A: Adinkra) -> MultipletAction:
    sig = A.signature
    if sig.n_mu or sig.n_rho:
        raise AdinkraError("the multiplet action is defined for pure-lambda Adinkras")
    order = tuple(v.id for v in A.vertices)
    pos = {vid: k for k, vid in enumerate(order)}
    n = len(order)
    H = Poly.var(1, 0)
    Q = {}
    for c in range(1, sig.n_colors + 1):
        grid = [[Poly.zero(1)] * n for _ in range(n)]
        for e in A.edges:
            if e.color != c:
                continue
            low, high = A.target(e), A.source(e)
            # Q low = dash * high, Q high = dash * low * H
            grid[pos[high]][pos[low]] = Poly.constant(1, e.dash)
            grid[pos[low]][pos[high]] = H * e.dash
        Q[c] = PolyMatrix(1, grid, n, n)
    return MultipletAction(order, Q)


@dataclass(frozen=True)
class RainbowResult:
    closes: bool
    eigenvalues: Mapping[str, int] | None
    gamma: PolyMatrix

    def boson_signs(self, A: Adinkra) -> set[int]:
        if not self.eigenvalues:
            return set()
        return {s for vid, s in self.eigenvalues.items() if A.vertex(vid).parity == Parity.BOSON}


def rainbow(A: Adinkra) -> RainbowResult:
    N = A.n_colors
    if N % 2:
        raise PreconditionError("the rainbow product needs an even number of colors")
    action = multiplet_action(A)
    n = len(action.order)
    gamma = PolyMatrix.identity(1, n)
    for c in range(1, N + 1):
        gamma = action.q(c) @ gamma
    power = (N // 2,)
    signs = {}
    for k, vid in enumerate(action.order):
        for j in range(n):
            entry = gamma[j, k]
            if j != k and entry:
                return RainbowResult(False, None, gamma)
        diag = gamma[k, k]
        items = list(diag.items())
        if len(items) != 1 or items[0][0] != power or abs(items[0][1]) != 1:
            return RainbowResult(False, None, gamma)
        signs[vid] = int(items[0][1])
    return RainbowResult(True, signs, gamma)
