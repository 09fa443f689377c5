"""Auxiliary bipartite pair graph of two injections and its component census.

For injections f, g the pair graph links each vertex pair e of the domain
side to its images f(e) and g(e) on the range side.  Because an injection
sends distinct pairs to distinct pairs, every Vertex of this graph has degree
at most 2, so its connected components are paths and cycles.  The census of
components by (left size j, right size k) factorizes the probability that
both maps match two independent random graphs simultaneously:

    E J_f J_g  =  prod over components  tau_{j,k},

with tau_{j,k} the probability that j + k linked edge indicators agree.
Capitalised Vertex/Edge in docstrings refers to this derived graph, whose
Vertices are themselves vertex pairs of the underlying graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidMapError, ParameterError, StructuralError
from .isosearch import Injection, PartialInjection
from .thresholds import ModelParams

EMBEDDING = "embedding"
COMMON = "common"

Pair = tuple[int, int]


@dataclass(frozen=True)
class EdgeGraph:
    """Bipartite pair graph: left/right Vertices are sorted vertex pairs.

    Overlap statistics of the generating maps ride along so that the census
    can relate component counts to them:

    * d: common domain vertices, r: common range vertices;
    * ell: domain vertices where the two maps agree pointwise;
    * zcal: domain pairs mapped to the same range pair by both maps.
    """

    left: tuple[Pair, ...]
    right: tuple[Pair, ...]
    edges: tuple[tuple[int, int], ...]
    d: int
    r: int
    ell: int
    zcal: int
    total: bool  # built from total injections (domain = whole pattern side)
    m: int


@dataclass(frozen=True)
class ComponentProfile:
    """Census of connected components of an EdgeGraph.

    c maps (j, k) -> number of components with j left and k right Vertices;
    cycles and j == k paths are tallied separately in c_cycles / c_paths_jj.
    """

    c: dict[Pair, int]
    c_cycles: dict[int, int]
    c_paths_jj: dict[int, int]
    d: int
    r: int
    ell: int
    zcal: int
    n_components: int
    total: bool
    m: int

    def census_signature(self) -> tuple[tuple[int, int, int], ...]:
        """Canonical hashable form of c, for caching moment evaluations."""
        return tuple(sorted((j, k, cnt) for (j, k), cnt in self.c.items()))


def _sorted_pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


def build_embedding_edge_graph(f: Injection, g: Injection, m: int, n: int) -> EdgeGraph:
    """Pair graph of two total injections on the same (m, n).

    Left Vertices are all pairs of the pattern side; right Vertices are the
    images under f and g, deduplicated; Edges {e, f(e)} and {e, g(e)} collapse
    to one when f(e) = g(e).
    """
    if f.m != m or g.m != m or f.n != n or g.n != n:
        raise InvalidMapError("injections do not match the stated sizes")
    fi, gi = f.image, g.image
    left: list[Pair] = []
    right: list[Pair] = []
    right_index: dict[Pair, int] = {}
    edges: list[tuple[int, int]] = []
    ell = sum(1 for u in range(m) if fi[u] == gi[u])
    zcal = 0
    for a in range(m):
        for b in range(a + 1, m):
            li = len(left)
            left.append((a, b))
            ef = _sorted_pair(fi[a], fi[b])
            eg = _sorted_pair(gi[a], gi[b])
            for e in (ef, eg) if ef != eg else (ef,):
                ri = right_index.get(e)
                if ri is None:
                    ri = len(right)
                    right_index[e] = ri
                    right.append(e)
                edges.append((li, ri))
            if ef == eg:
                zcal += 1
    r = len(set(fi) & set(gi))
    return EdgeGraph(tuple(left), tuple(right), tuple(edges), m, r, ell, zcal, True, m)


def build_common_edge_graph(f: PartialInjection, g: PartialInjection) -> EdgeGraph:
    """Pair graph of two partial injections with equal domain sizes."""
    if f.m != g.m:
        raise InvalidMapError("partial injections must have equal domain sizes")
    m = f.m
    left: list[Pair] = []
    left_index: dict[Pair, int] = {}
    right: list[Pair] = []
    right_index: dict[Pair, int] = {}
    edge_set: set[tuple[int, int]] = set()
    for h in (f, g):
        dom, img = h.domain, h.image
        for a in range(m):
            for b in range(a + 1, m):
                e = _sorted_pair(dom[a], dom[b])
                li = left_index.get(e)
                if li is None:
                    li = len(left)
                    left_index[e] = li
                    left.append(e)
                e2 = _sorted_pair(img[a], img[b])
                ri = right_index.get(e2)
                if ri is None:
                    ri = len(right)
                    right_index[e2] = ri
                    right.append(e2)
                edge_set.add((li, ri))
    fmap = dict(zip(f.domain, f.image))
    gmap = dict(zip(g.domain, g.image))
    common_dom = [u for u in f.domain if u in gmap]
    d = len(common_dom)
    r = len(set(f.image) & set(g.image))
    ell = sum(1 for u in common_dom if fmap[u] == gmap[u])
    zcal = 0
    for i in range(d):
        for j in range(i + 1, d):
            a, b = common_dom[i], common_dom[j]
            if _sorted_pair(fmap[a], fmap[b]) == _sorted_pair(gmap[a], gmap[b]):
                zcal += 1
    return EdgeGraph(tuple(left), tuple(right), tuple(edge_set), d, r, ell, zcal, False, m)


def classify_components(t: EdgeGraph) -> ComponentProfile:
    """Census of t's components via union-find, tagging paths and cycles.

    A component with v Vertices is a cycle iff it has v Edges (equivalently,
    every Degree is 2), otherwise a path.
    """
    nl, nr = len(t.left), len(t.right)
    size = nl + nr
    parent = list(range(size))

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    degree = [0] * size
    edge_count: dict[int, int] = {}
    for li, ri in t.edges:
        a, b = li, nl + ri
        if not 0 <= li < nl or not 0 <= ri < nr:
            raise StructuralError("edge references a missing Vertex")
        degree[a] += 1
        degree[b] += 1
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    if any(dv == 0 for dv in degree):
        raise StructuralError("isolated Vertex: constructors never produce one")
    if any(dv > 2 for dv in degree):
        raise StructuralError("Vertex of Degree > 2: not a valid pair graph")

    members: dict[int, tuple[int, int, int]] = {}  # root -> (j, k, edges)
    for v in range(size):
        root = find(v)
        j, k, e = members.get(root, (0, 0, 0))
        if v < nl:
            j += 1
        else:
            k += 1
        members[root] = (j, k, e)
    for li, ri in t.edges:
        root = find(li)
        j, k, e = members[root]
        members[root] = (j, k, e + 1)

    c: dict[Pair, int] = {}
    c_cycles: dict[int, int] = {}
    c_paths_jj: dict[int, int] = {}
    for j, k, e in members.values():
        c[(j, k)] = c.get((j, k), 0) + 1
        if j == k:
            if e == j + k:
                c_cycles[j] = c_cycles.get(j, 0) + 1
            else:
                c_paths_jj[j] = c_paths_jj.get(j, 0) + 1
        elif e != j + k - 1:
            raise StructuralError("unbalanced component that is not a path")
    return ComponentProfile(
        c, c_cycles, c_paths_jj, t.d, t.r, t.ell, t.zcal, len(members), t.total, t.m
    )


def pair_moment(profile: ComponentProfile, params: ModelParams, variant: str = COMMON) -> float:
    """Probability that both generating maps match the two random graphs.

    Product over the census of tau_{j,k}^count, evaluated in the log domain.
    The embedding variant requires q = 1/2 (the host graph's law).
    """
    if variant not in (EMBEDDING, COMMON):
        raise ParameterError(f"unknown variant {variant!r}")
    if variant == EMBEDDING and params.q != 0.5:
        raise ParameterError("embedding moments are defined for q = 1/2")
    log_total = 0.0
    for (j, k), cnt in profile.c.items():
        log_total += cnt * math.log(params.tau_jk(j, k))
    return math.exp(log_total)


def pair_moment_exact(profile: ComponentProfile, p, q):
    """Exact-rational pair moment for tiny-scale cross-checks.

    p and q should be fractions.Fraction (or exact ints 0/1 excluded by use);
    returns a Fraction.
    """
    total = 1
    for (j, k), cnt in profile.c.items():
        tau = p**j * q**k + (1 - p) ** j * (1 - q) ** k
        total *= tau**cnt
    return total


def dump_edge_graph(t: EdgeGraph) -> str:
    """Text dump (left list, right list, edge list) for fixture tests."""
    lines = [f"left {len(t.left)}"]
    lines.extend(f"{a} {b}" for a, b in t.left)
    lines.append(f"right {len(t.right)}")
    lines.extend(f"{a} {b}" for a, b in t.right)
    lines.append(f"edges {len(t.edges)}")
    lines.extend(f"{li} {ri}" for li, ri in sorted(t.edges))
    return "\n".join(lines) + "\n"
