"""Forbidden all-one submatrices and even cycles in bipartite graphs.

The two edge-count bounds used throughout the complexity arguments: the
Zarankiewicz bound s^(1/t) * n^(2-1/t) for matrices with no all-one t x s
submatrix, and the even-cycle bound 2k * n^(1+1/k) for bipartite graphs
without 2k-cycles.  Both come with desk-scale exhaustive verifiers.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidOrderError, TooLargeError
from .fields import seeded_rng


@dataclass(frozen=True)
class BitMatrix:
    """Square 0/1 matrix stored as row bitmasks."""

    n: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("row count must equal n")
        if any(r < 0 or r >> self.n for r in self.rows):
            raise ValueError("row mask out of range")

    @classmethod
    def from_lists(cls, entries) -> "BitMatrix":
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            rows.append(sum(1 << c for c, v in enumerate(row) if v))
        return cls(n, tuple(rows))

    def entry(self, r: int, c: int) -> int:
        return (self.rows[r] >> c) & 1

    def ones(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def to_lists(self):
        return [[self.entry(r, c) for c in range(self.n)] for r in range(self.n)]


def random_bitmatrix(n: int, density: float = 0.5, seed: int = 0) -> BitMatrix:
    rng = seeded_rng("bitmatrix", seed)
    rows = tuple(
        sum(1 << c for c in range(n) if rng.random() < density) for _ in range(n)
    )
    return BitMatrix(n, rows)


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph on left/right vertex sets {0..n_left-1}, {0..n_right-1}."""

    n_left: int
    n_right: int
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n_left and 0 <= v < self.n_right):
                raise ValueError(f"edge ({u},{v}) out of range")

    @classmethod
    def from_edges(cls, n_left, n_right, edges) -> "BipartiteGraph":
        return cls(n_left, n_right, frozenset((u, v) for u, v in edges))

    @classmethod
    def from_bitmatrix(cls, M: BitMatrix) -> "BipartiteGraph":
        edges = [
            (r, c) for r in range(M.n) for c in range(M.n) if M.entry(r, c)
        ]
        return cls.from_edges(M.n, M.n, edges)

    def edge_count(self) -> int:
        return len(self.edges)


def find_allone_submatrix(M: BitMatrix, t: int, s: int):
    """A t-row by s-column all-one submatrix of M, or None.

    Scans t-row combinations and intersects their column masks; row and
    column index sets need not be contiguous.
    """
    if t > 4 or s > 4:
        raise TooLargeError("submatrix search capped at t, s <= 4")
    if t < 1 or s < 1 or t > M.n or s > M.n:
        return None
    for rows in combinations(range(M.n), t):
        common = M.rows[rows[0]]
        for r in rows[1:]:
            common &= M.rows[r]
            if common.bit_count() < s:
                break
        if common.bit_count() >= s:
            cols = [c for c in range(M.n) if (common >> c) & 1][:s]
            return rows, tuple(cols)
    return None


def zarankiewicz_formula(n: int, s: int, t: int) -> float:
    """The bound s^(1/t) * n^(2 - 1/t) on the maximum number of ones."""
    if t < 2 or s < t:
        raise InvalidOrderError("need 2 <= t <= s (bound depends on the smaller side)")
    return s ** (1 / t) * n ** (2 - 1 / t)


def max_ones_exhaustive(n: int, s: int, t: int):
    """Maximum ones in an n x n matrix with no all-one t x s submatrix.

    Branch and bound over rows in non-increasing mask order (a canonical
    form under row permutations), pruning each new row against every
    (t-1)-subset of previous rows.  Returns (count, witness matrix).
    """
    if n > 5:
        raise TooLargeError("exhaustive search capped at n <= 5")
    if t < 1 or s < 1:
        raise ValueError("submatrix dimensions must be positive")
    masks = sorted(range(1 << n), key=lambda m: (-m.bit_count(), m))
    best_count = -1
    best_rows = None

    def compatible(rows, new):
        if t == 1:
            return new.bit_count() < s
        if len(rows) < t - 1:
            return True
        for prev in combinations(rows, t - 1):
            common = new
            for r in prev:
                common &= r
            if common.bit_count() >= s:
                return False
        return True

    def extend(rows, ones, bound_mask):
        nonlocal best_count, best_rows
        if len(rows) == n:
            if ones > best_count:
                best_count = ones
                best_rows = tuple(rows)
            return
        remaining = n - len(rows)
        if ones + remaining * n <= best_count:
            return
        for m in masks:
            if m > bound_mask:
                continue
            if compatible(rows, m):
                rows.append(m)
                extend(rows, ones + m.bit_count(), m)
                rows.pop()

    extend([], 0, (1 << n) - 1)
    return best_count, BitMatrix(n, best_rows)


def find_cycle_2k(G: BipartiteGraph, k: int):
    """A closed walk of length 2k with no repeated edges, or None.

    Alternating left/right depth-bounded search from every left vertex;
    the returned cycle lists 2k vertices in cyclic order as ("L", u) /
    ("R", v) pairs.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if max(G.n_left, G.n_right) > 64:
        raise TooLargeError("cycle search capped at 64 vertices per side")
    adj_l = [[] for _ in range(G.n_left)]
    adj_r = [[] for _ in range(G.n_right)]
    for u, v in sorted(G.edges):
        adj_l[u].append(v)
        adj_r[v].append(u)

    target = 2 * k

    def dfs(start, side, vertex, depth, used, path):
        if depth == target:
            return path if side == "L" and vertex == start else None
        if side == "L":
            for v in adj_l[vertex]:
                e = (vertex, v)
                if e in used:
                    continue
                used.add(e)
                found = dfs(start, "R", v, depth + 1, used, path + [("R", v)])
                if found:
                    return found
                used.discard(e)
        else:
            for u in adj_r[vertex]:
                e = (u, vertex)
                if e in used:
                    continue
                used.add(e)
                found = dfs(start, "L", u, depth + 1, used, path + [("L", u)])
                if found:
                    return found
                used.discard(e)
        return None

    for start in range(G.n_left):
        found = dfs(start, "L", start, 0, set(), [("L", start)])
        if found:
            return found[:-1]  # drop the repeated start vertex
    return None


def naor_verstraete_formula(n: int, k: int) -> float:
    """The bound 2k * n^(1+1/k) on edges of a 2k-cycle-free bipartite graph."""
    if k < 2:
        raise ValueError("need k >= 2")
    return 2 * k * n ** (1 + 1 / k)
