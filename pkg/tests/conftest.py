from collections import deque

import pytest

from adinkralab import formats as fm


def _adjacency(A):
    adj = {v.id: {} for v in A.vertices}
    for e in A.edges:
        adj[e.u][e.color] = (e.v, e)
        adj[e.v][e.color] = (e.u, e)
    return adj


def _switching_ok(A, B, phi, adjA, adjB):
    """Is the dash ratio along matched edges a vertex coboundary?"""
    sign = {}
    for start in phi:
        if start in sign:
            continue
        sign[start] = 1
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for c, (w, e) in adjA[u].items():
                f = adjB[phi[u]][c][1]
                want = sign[u] * e.dash * f.dash
                if w not in sign:
                    sign[w] = want
                    queue.append(w)
                elif sign[w] != want:
                    return False
    return True


def isomorphic(A, B, switching=True):
    """Brute-force decorated-graph isomorphism with colors held fixed.

    Heights, parities and colored adjacency must match; dashes must agree up
    to flipping all edges at a set of vertices (or exactly, if not ``switching``).
    """
    if A.signature != B.signature or len(A.vertices) != len(B.vertices) or len(A.edges) != len(B.edges):
        return False
    adjA, adjB = _adjacency(A), _adjacency(B)
    lo_a, lo_b = min(A.heights()), min(B.heights())
    key = lambda G, lo, v: (v.height - lo, v.parity, tuple(sorted(
        (c, G.height(w) - v.height) for c, (w, _) in (adjA if G is A else adjB)[v.id].items())))
    keysB = {v.id: key(B, lo_b, v) for v in B.vertices}
    order = []
    seen = set()
    for v in A.vertices:
        if v.id in seen:
            continue
        seen.add(v.id)
        queue = deque([v.id])
        while queue:
            u = queue.popleft()
            order.append(u)
            for _, (w, _) in sorted(adjA[u].items()):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    keysA = {v.id: key(A, lo_a, v) for v in A.vertices}
    phi, used = {}, set()

    def consistent(u, x):
        for c, (w, e) in adjA[u].items():
            if c not in adjB[x]:
                return False
            y, f = adjB[x][c]
            if w in phi:
                if phi[w] != y:
                    return False
                if not switching and e.dash != f.dash:
                    return False
            if e.arrow != f.arrow and A.signature.color_kind(c) == "rho":
                return False
        return True

    def extend(k):
        if k == len(order):
            return not switching or _switching_ok(A, B, phi, adjA, adjB)
        u = order[k]
        for x in adjB:
            if x in used or keysB[x] != keysA[u] or not consistent(u, x):
                continue
            phi[u] = x
            used.add(x)
            if extend(k + 1):
                return True
            del phi[u]
            used.discard(x)
        return False

    return extend(0)


@pytest.fixture
def bundled():
    return fm.load_bundled
