"""Independent brute-force oracles for the test suite.

Everything here recomputes quantities from first principles - enumerating
graphs, injections or subset pairs directly - and never touches the pair
graph census, the closed-form cardinalities, or the solvers' pruning logic,
so agreement with the library is meaningful evidence.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np


def pair_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def graph_weights(n_pairs: int, p: float) -> np.ndarray:
    """Probability of each of the 2^n_pairs graphs under edge probability p."""
    codes = np.arange(1 << n_pairs, dtype=np.uint32)
    pop = np.zeros(1 << n_pairs, dtype=np.int32)
    for b in range(n_pairs):
        pop += ((codes >> b) & 1).astype(np.int32)
    return (p**pop) * ((1.0 - p) ** (n_pairs - pop))


def _bit_gather(codes: np.ndarray, positions: list[int]) -> np.ndarray:
    out = np.zeros(codes.shape, dtype=np.uint32)
    for t, pos in enumerate(positions):
        out |= (((codes >> pos) & 1) << t).astype(np.uint32)
    return out


@lru_cache(maxsize=None)
def common_count_matrix(n: int, m: int) -> np.ndarray:
    """N[X, Y] = number of size-m partial injections matching graphs X and Y.

    Graphs are encoded as edge bitmaps over the lexicographic pair order.
    """
    pairs = pair_positions(n)
    index = {pair: k for k, pair in enumerate(pairs)}
    G = 1 << len(pairs)
    codes = np.arange(G, dtype=np.uint32)
    doms = list(combinations(range(n), m))
    imgs = list(permutations(range(n), m))
    ycodes = {}
    for img in imgs:
        pos = []
        for a in range(m):
            for b in range(a + 1, m):
                u, v = img[a], img[b]
                pos.append(index[(u, v) if u < v else (v, u)])
        ycodes[img] = _bit_gather(codes, pos)
    N = np.zeros((G, G), dtype=np.int32)
    for dom in doms:
        pos = [index[(dom[a], dom[b])] for a in range(m) for b in range(a + 1, m)]
        xcode = _bit_gather(codes, pos)
        for img in imgs:
            N += xcode[:, None] == ycodes[img][None, :]
    return N


@lru_cache(maxsize=None)
def embed_count_matrix(m: int, n: int) -> np.ndarray:
    """N[X, Y] = number of injections embedding pattern X into host Y."""
    host_pairs = pair_positions(n)
    index = {pair: k for k, pair in enumerate(host_pairs)}
    GX = 1 << (m * (m - 1) // 2)
    GY = 1 << len(host_pairs)
    ycodes_all = np.arange(GY, dtype=np.uint32)
    xcode = np.arange(GX, dtype=np.uint32)  # pattern pairs in lex order are the bits
    N = np.zeros((GX, GY), dtype=np.int32)
    for img in permutations(range(n), m):
        pos = []
        for a in range(m):
            for b in range(a + 1, m):
                u, v = img[a], img[b]
                pos.append(index[(u, v) if u < v else (v, u)])
        ycode = _bit_gather(ycodes_all, pos)
        N += xcode[:, None] == ycode[None, :]
    return N


def first_moment(N: np.ndarray, wx: np.ndarray, wy: np.ndarray) -> float:
    return float(wx @ N.astype(np.float64) @ wy)


def second_moment(N: np.ndarray, wx: np.ndarray, wy: np.ndarray) -> float:
    Nf = N.astype(np.float64)
    return float(wx @ (Nf * Nf) @ wy)


# ---------------------------------------------------------------------------
# overlap histograms over map pairs (for the cardinality identities)

@lru_cache(maxsize=None)
def overlap_histogram_embedding(n: int, m: int) -> dict[tuple[int, int], int]:
    """(r, ell) -> number of ordered pairs of total injections."""
    imgs = list(permutations(range(n), m))
    masks = np.array([sum(1 << v for v in img) for img in imgs], dtype=np.int64)
    F = np.array(imgs, dtype=np.int16) if m else np.zeros((len(imgs), 0), np.int16)
    pop = np.array([bin(x).count("1") for x in range(1 << n)], dtype=np.int8)
    r_mat = pop[(masks[:, None] & masks[None, :])]
    ell_mat = (F[:, None, :] == F[None, :, :]).sum(axis=2).astype(np.int16)
    key = r_mat.astype(np.int32) * (m + 1) + ell_mat
    counts = np.bincount(key.ravel(), minlength=(m + 1) * (m + 1))
    hist = {}
    for r in range(m + 1):
        for ell in range(m + 1):
            c = int(counts[r * (m + 1) + ell])
            if c:
                hist[(r, ell)] = c
    return hist


@lru_cache(maxsize=None)
def overlap_histogram_common(n: int, m: int) -> dict[tuple[int, int, int], int]:
    """(d, r, ell) -> number of ordered pairs of partial injections."""
    maps = [
        (dom, img)
        for dom in combinations(range(n), m)
        for img in permutations(range(n), m)
    ]
    M = len(maps)
    dmask = np.zeros(M, dtype=np.int64)
    rmask = np.zeros(M, dtype=np.int64)
    F = np.full((M, n), -1, dtype=np.int16)
    for k, (dom, img) in enumerate(maps):
        dmask[k] = sum(1 << u for u in dom)
        rmask[k] = sum(1 << v for v in img)
        for u, v in zip(dom, img):
            F[k, u] = v
    pop = np.array([bin(x).count("1") for x in range(1 << n)], dtype=np.int8)
    d_mat = pop[(dmask[:, None] & dmask[None, :])]
    r_mat = pop[(rmask[:, None] & rmask[None, :])]
    eq = (F[:, None, :] == F[None, :, :]) & (F[:, None, :] >= 0)
    ell_mat = eq.sum(axis=2).astype(np.int16)
    base = m + 1
    key = (d_mat.astype(np.int32) * base + r_mat) * base + ell_mat
    counts = np.bincount(key.ravel(), minlength=base**3)
    hist = {}
    for d in range(base):
        for r in range(base):
            for ell in range(base):
                c = int(counts[(d * base + r) * base + ell])
                if c:
                    hist[(d, r, ell)] = c
    return hist


# ---------------------------------------------------------------------------
# plain per-graph brute force (slow, tiny instances only)

def brute_embed_count(x, y) -> int:
    count = 0
    for img in permutations(range(y.n), x.n):
        ok = True
        for a in range(x.n):
            for b in range(a + 1, x.n):
                if x.has_edge(a, b) != y.has_edge(img[a], img[b]):
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def brute_common_count(x, y, m: int) -> int:
    count = 0
    for dom in combinations(range(x.n), m):
        for img in permutations(range(y.n), m):
            ok = True
            for a in range(m):
                for b in range(a + 1, m):
                    if x.has_edge(dom[a], dom[b]) != y.has_edge(img[a], img[b]):
                        ok = False
                        break
                if not ok:
                    break
            count += ok
    return count


def brute_max_common(x, y) -> int:
    """Largest m admitting a common induced subgraph, by subset-pair scan."""
    for m in range(x.n, 0, -1):
        for sub_x in combinations(range(x.n), m):
            for sub_y in combinations(range(y.n), m):
                for perm in permutations(sub_y):
                    ok = True
                    for a in range(m):
                        for b in range(a + 1, m):
                            if x.has_edge(sub_x[a], sub_x[b]) != y.has_edge(perm[a], perm[b]):
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        return m
    return 0
