"""Small simple graphs stored as adjacency bitsets.

Vertices are ``0..n-1``; ``adj[i]`` is an int whose bit ``j`` is set when
``i`` and ``j`` are adjacent.  Everything here is a pure function of its
inputs and returns new :class:`Graph` values.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 16
MAX_GENERATED = 8


class InvalidGraph6(ValueError):
    pass


class UnsupportedSize(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise UnsupportedSize(f"n={self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full or (row >> i) & 1:
                raise ValueError(f"bad adjacency row {i}")
            for j in bits(row):
                if not (self.adj[j] >> i) & 1:
                    raise ValueError(f"asymmetric adjacency at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError("loops are not allowed")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i]) if i < j]

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def neighbors(self, i: int) -> list[int]:
        return list(bits(self.adj[i]))

    def closed_nbhd(self, i: int) -> int:
        return self.adj[i] | (1 << i)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self) -> str:
        return f"Graph({encode_graph6(self)!r})" if self.n else "Graph(n=0)"


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- graph6 -----------------------------------------------------------------


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise InvalidGraph6("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise InvalidGraph6(f"byte out of range in {text!r}")
    n = codes[0]
    if n == 63:
        raise InvalidGraph6(f"n > 62 is unsupported ({text!r})")
    if n > MAX_VERTICES:
        raise InvalidGraph6(f"n={n} exceeds the {MAX_VERTICES}-vertex cap")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = codes[1:]
    if len(body) != nbytes:
        raise InvalidGraph6(f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def encode_graph6(g: Graph) -> str:
    if not 1 <= g.n <= MAX_VERTICES:
        raise UnsupportedSize(f"cannot encode n={g.n}")
    out = [chr(g.n + 63)]
    word = width = 0
    for j in range(1, g.n):
        for i in range(j):
            word = (word << 1) | ((g.adj[i] >> j) & 1)
            width += 1
            if width == 6:
                out.append(chr(word + 63))
                word = width = 0
    if width:
        out.append(chr((word << (6 - width)) + 63))
    return "".join(out)


def read_graph_list(path: str | Path) -> list[Graph]:
    """Read newline-delimited graph6, skipping blank and ``#`` comment lines."""
    graphs = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            graphs.append(decode_graph6(line))
    return graphs


def write_graph_list(path: str | Path, graphs: Iterable[Graph]) -> None:
    Path(path).write_text("".join(encode_graph6(g) + "\n" for g in graphs))


# -- basic operations --------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.adj)))


def components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph on ``vertices``, relabelled ``0..k-1`` in the given order."""
    pos = {v: k for k, v in enumerate(vertices)}
    adj = []
    for v in vertices:
        row = 0
        for u in bits(g.adj[v]):
            if u in pos:
                row |= 1 << pos[u]
        adj.append(row)
    return Graph(len(vertices), tuple(adj))


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    adj = [0] * g.n
    for v in range(g.n):
        row = 0
        for u in bits(g.adj[v]):
            row |= 1 << perm[u]
        adj[perm[v]] = row
    return Graph(g.n, tuple(adj))


def disjoint_union(*gs: Graph) -> Graph:
    adj: list[int] = []
    offset = 0
    for g in gs:
        adj.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph(offset, tuple(adj))


def join(*gs: Graph) -> Graph:
    return complement(disjoint_union(*(complement(g) for g in gs)))


def add_vertex(g: Graph, nbhd: int) -> Graph:
    """Append vertex ``n`` adjacent to the vertex set ``nbhd``."""
    adj = [row | (((nbhd >> i) & 1) << g.n) for i, row in enumerate(g.adj)]
    adj.append(nbhd)
    return Graph(g.n + 1, tuple(adj))


def remove_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def dominating_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if g.degree(v) == g.n - 1]


def isolated_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if g.adj[v] == 0]


def are_twins(g: Graph, u: int, v: int) -> bool:
    if u == v:
        return True
    return g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u)


def twin_partition(g: Graph) -> list[list[int]]:
    """Twin classes, each sorted, listed by smallest vertex.

    Twinhood (adjacent or not) is transitive, so comparing against each
    class's first vertex suffices.
    """
    classes: list[list[int]] = []
    for v in range(g.n):
        for cls in classes:
            if are_twins(g, cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    return classes


# -- canonical forms ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Graph invariant: vertex count plus the minimal upper-triangle code.

    ``bits`` is the column-major upper-triangle bitstring (graph6 order)
    read as a binary number, first pair most significant.
    """

    n: int
    bits: int

    def to_graph(self) -> Graph:
        adj = [0] * self.n
        k = self.n * (self.n - 1) // 2
        for j in range(1, self.n):
            for i in range(j):
                k -= 1
                if (self.bits >> k) & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return Graph(self.n, tuple(adj))

    def graph6(self) -> str:
        return encode_graph6(self.to_graph()) if self.n else ""


def _refined_colors(g: Graph) -> list[int]:
    """Isomorphism-invariant vertex colouring by iterated degree refinement."""
    colors = [0] * g.n
    ncolors = 1
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))
                for v in range(g.n)]
        ranking = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colors = [ranking[s] for s in sigs]
        if len(ranking) == ncolors:
            return colors
        ncolors = len(ranking)


def _canonical_search(g: Graph) -> tuple[CanonicalForm, tuple[int, ...]]:
    """Minimal upper-triangle code over colour-respecting vertex orders.

    Vertices are first split into refinement colour classes; position ``k``
    of every candidate order must hold a vertex of the ``k``-th colour in
    sorted colour order.  Within that constraint the code is minimised
    exactly by a breadth-first branch and bound: each placed vertex fixes
    one column of the upper triangle, so only orders achieving the
    minimal column so far survive.  Two survivors that placed the same
    vertices and look identical from every unplaced vertex have identical
    continuations, so only one of them is kept.
    """
    n = g.n
    if n <= 1:
        return CanonicalForm(n, 0), tuple(range(n))
    colors = _refined_colors(g)
    slots = sorted(colors)
    adj = g.adj
    # state: (order, placed mask, column of every vertex against order)
    frontier: list[tuple[tuple[int, ...], int, tuple[int, ...]]] = [((), 0, (0,) * n)]
    code = 0
    for k in range(n):
        want = slots[k]
        best = min(cols[v] for _, used, cols in frontier for v in range(n)
                   if colors[v] == want and not (used >> v) & 1)
        nxt: dict[tuple, tuple] = {}
        for order, used, cols in frontier:
            for v in range(n):
                if cols[v] != best or colors[v] != want or (used >> v) & 1:
                    continue
                mask = used | (1 << v)
                row = adj[v]
                grown = tuple((c << 1) | ((row >> w) & 1) for w, c in enumerate(cols))
                view = (mask,) + tuple(c for w, c in enumerate(grown) if not (mask >> w) & 1)
                if view not in nxt:
                    nxt[view] = (order + (v,), mask, grown)
        frontier = list(nxt.values())
        code = (code << k) | best
    return CanonicalForm(n, code), frontier[0][0]


def canonical_form(g: Graph) -> CanonicalForm:
    return _canonical_search(g)[0]


def canonical_labeling(g: Graph) -> tuple[CanonicalForm, list[int]]:
    """Canonical form plus ``perm`` with ``permute(g, perm) == form.to_graph()``."""
    form, order = _canonical_search(g)
    perm = [0] * g.n
    for k, v in enumerate(order):
        perm[v] = k
    return form, perm


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g).to_graph()


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)


# -- generation --------------------------------------------------------------


class GraphFilter(enum.Enum):
    ALL = "all"
    CONNECTED_COCONNECTED = "cc"


@lru_cache(maxsize=None)
def _all_forms(n: int) -> tuple[CanonicalForm, ...]:
    if n == 1:
        return (CanonicalForm(1, 0),)
    found = set()
    for form in _all_forms(n - 1):
        parent = form.to_graph()
        for nbhd in range(1 << (n - 1)):
            found.add(canonical_form(add_vertex(parent, nbhd)))
    return tuple(sorted(found))


def generate_all(n: int, filter: GraphFilter | str = GraphFilter.ALL) -> list[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    With ``CONNECTED_COCONNECTED`` only graphs whose complement is also
    connected are kept, and of each complementary pair only the member
    with the smaller canonical form.
    """
    filter = GraphFilter(filter)
    if not 1 <= n <= MAX_GENERATED:
        raise UnsupportedSize(f"generation supports 1 <= n <= {MAX_GENERATED}, got {n}")
    forms = _all_forms(n)
    if filter is GraphFilter.ALL:
        return [f.to_graph() for f in forms]
    return [pair_representative_graph(f.to_graph()) for f in _cc_pair_forms(n)]


@lru_cache(maxsize=None)
def _cc_pair_forms(n: int) -> tuple[CanonicalForm, ...]:
    keep = set()
    for form in _all_forms(n):
        g = form.to_graph()
        if not is_connected(g):
            continue
        gc = complement(g)
        if not is_connected(gc):
            continue
        keep.add(min(form, canonical_form(gc)))
    return tuple(sorted(keep))


def pair_representative(g: Graph) -> CanonicalForm:
    return min(canonical_form(g), canonical_form(complement(g)))


def pair_representative_graph(g: Graph) -> Graph:
    return pair_representative(g).to_graph()


def dedup_pairs(graphs: Iterable[Graph]) -> list[Graph]:
    """Collapse an external list to connected/co-connected pair representatives."""
    keep = set()
    for g in graphs:
        if is_connected(g) and is_connected(complement(g)):
            keep.add(pair_representative(g))
    return [f.to_graph() for f in sorted(keep)]


def labeled_graphs(n: int) -> Iterator[Graph]:
    """All ``2**(n(n-1)/2)`` labelled graphs on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (p for k, p in enumerate(pairs) if (mask >> k) & 1))
