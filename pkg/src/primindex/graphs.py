"""Labeled graphs over a rank-N basis: folding, cores, covers, spanning
trees with dual bases, loop rewriting, circle graphs, principal quotients,
cover censuses, and the explicit blocking/forcing path constructions.

Vertices are 0..V-1 with a distinguished base vertex.  Each stored edge is a
positively labeled triple (origin, terminus, gen); a directed edge is the
signed 1-based index +j / -j for edge j-1 traversed forward / backward.
"""
from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import (
    InvalidInputError,
    NoSuchPathError,
    ResourceGuardError,
    UnsupportedInputError,
)
from .words import (
    CyclicWord,
    Word,
    alphabet,
    cyclic_reduce,
    enumerate_reduced,
    free_reduce,
)


@dataclass(frozen=True, slots=True)
class AGraph:
    rank: int
    num_vertices: int
    base: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 1:
            raise InvalidInputError("graph needs at least one vertex")
        if not 0 <= self.base < self.num_vertices:
            raise InvalidInputError("base vertex out of range")
        for o, t, g in self.edges:
            if not (0 <= o < self.num_vertices and 0 <= t < self.num_vertices):
                raise InvalidInputError("edge endpoint out of range")
            if not 1 <= g <= self.rank:
                raise InvalidInputError(f"edge label {g} out of range")

    def origin(self, e: int) -> int:
        o, t, _ = self.edges[abs(e) - 1]
        return o if e > 0 else t

    def terminus(self, e: int) -> int:
        o, t, _ = self.edges[abs(e) - 1]
        return t if e > 0 else o

    def label(self, e: int) -> int:
        g = self.edges[abs(e) - 1][2]
        return g if e > 0 else -g


@dataclass(frozen=True, slots=True)
class EdgePath:
    """A sequence of consecutive directed edges starting at a vertex."""

    start: int
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class SpanningData:
    """A maximal tree plus the ordered positive complement edges.

    Dual letter i (1-based) corresponds to complement[i-1]; parent_edge[v]
    is the directed tree edge into v from its parent (None at the root).
    """

    tree_edges: frozenset[int]
    complement: tuple[int, ...]
    parent_edge: tuple[int | None, ...]
    depth: tuple[int, ...]

    @property
    def dual_rank(self) -> int:
        return len(self.complement)


# -- basic structure ---------------------------------------------------------

@lru_cache(maxsize=65536)
def out_map(g: AGraph) -> dict[tuple[int, int], int]:
    """(vertex, signed letter) -> directed edge. Raises if g is not folded."""
    out: dict[tuple[int, int], int] = {}
    for j, (o, t, gen) in enumerate(g.edges):
        for v, letter, e in ((o, gen, j + 1), (t, -gen, -(j + 1))):
            key = (v, letter)
            if key in out:
                raise InvalidInputError(
                    f"graph not folded: two edges labeled {letter} at vertex {v}"
                )
            out[key] = e
    return out


def is_folded(g: AGraph) -> bool:
    try:
        out_map(g)
        return True
    except InvalidInputError:
        return False


def adjacency(g: AGraph) -> dict[int, list[int]]:
    """vertex -> directed edges out of it, in edge-index order."""
    adj: dict[int, list[int]] = {v: [] for v in range(g.num_vertices)}
    for j, (o, t, _) in enumerate(g.edges):
        adj[o].append(j + 1)
        adj[t].append(-(j + 1))
    return adj


def is_connected(g: AGraph) -> bool:
    adj = adjacency(g)
    seen = {g.base}
    queue = deque([g.base])
    while queue:
        v = queue.popleft()
        for e in adj[v]:
            w = g.terminus(e)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.num_vertices


def degree(g: AGraph, v: int) -> int:
    return sum(1 for o, t, _ in g.edges for x in (o, t) if x == v)


def is_cover(g: AGraph, rank: int | None = None) -> bool:
    """True iff every vertex has exactly one in- and out-edge per generator."""
    rank = g.rank if rank is None else rank
    if not is_folded(g):
        return False
    om = out_map(g)
    return all(
        (v, x) in om for v in range(g.num_vertices) for x in alphabet(rank)
    )


def cover_degree(g: AGraph) -> int:
    return g.num_vertices


# -- folding ----------------------------------------------------------------

def fold_with_map(g: AGraph) -> tuple[AGraph, tuple[int, ...]]:
    """Stallings folding via a worklist with union-find vertex merging.

    Returns the folded graph and the induced vertex map.
    """
    parent = list(range(g.num_vertices))

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    halves: list[tuple[int, int, int]] = []
    for o, t, gen in g.edges:
        halves.append((o, gen, t))
        halves.append((t, -gen, o))
    queue = deque(range(len(halves)))
    slot: dict[tuple[int, int], int] = {}
    keys_at: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.num_vertices)}

    while queue:
        h = queue.popleft()
        o, x, t = halves[h]
        ro = find(o)
        key = (ro, x)
        other = slot.get(key)
        if other is None:
            slot[key] = h
            keys_at[ro].append(key)
            continue
        rt, rt2 = find(t), find(halves[other][2])
        if rt == rt2:
            continue  # parallel duplicate
        loser, winner = (rt, rt2) if len(keys_at[rt]) <= len(keys_at[rt2]) else (rt2, rt)
        parent[loser] = winner
        for k in keys_at[loser]:
            stale = slot.pop(k, None)
            if stale is not None:
                queue.append(stale)
        keys_at[loser] = []
        queue.append(h)

    new_id: dict[int, int] = {}
    vertex_map = []
    for v in range(g.num_vertices):
        r = find(v)
        if r not in new_id:
            new_id[r] = len(new_id)
        vertex_map.append(new_id[r])
    edges = sorted(
        {(vertex_map[o], vertex_map[t], gen) for o, t, gen in g.edges}
    )
    folded = AGraph(
        rank=g.rank,
        num_vertices=len(new_id),
        base=vertex_map[g.base],
        edges=tuple(edges),
    )
    return folded, tuple(vertex_map)


def fold(g: AGraph) -> AGraph:
    """Fold until no two edges share an origin and a label."""
    if not is_connected(g):
        raise InvalidInputError("fold expects a connected graph")
    return fold_with_map(g)[0]


def core(g: AGraph) -> AGraph:
    """Strip vertices not on any reduced loop through the base."""
    if not is_folded(g) or not is_connected(g):
        raise InvalidInputError("core expects a folded connected graph")
    alive_edges = set(range(len(g.edges)))
    deg = [0] * g.num_vertices
    for o, t, _ in g.edges:
        deg[o] += 1
        deg[t] += 1
    changed = True
    while changed:
        changed = False
        for j in list(alive_edges):
            o, t, _ = g.edges[j]
            for v, w in ((o, t), (t, o)):
                if deg[v] == 1 and v != g.base:
                    alive_edges.discard(j)
                    deg[v] -= 1
                    deg[w] -= 1
                    changed = True
                    break
    keep = sorted(
        {g.base}
        | {v for j in alive_edges for v in g.edges[j][:2]}
    )
    remap = {v: i for i, v in enumerate(keep)}
    edges = tuple(
        sorted((remap[o], remap[t], gen) for j in sorted(alive_edges) for o, t, gen in [g.edges[j]])
    )
    return AGraph(g.rank, len(keep), remap[g.base], edges)


# -- tracing and paths --------------------------------------------------------

def trace_path(g: AGraph, start: int, letters: Sequence[int] | Word) -> EdgePath:
    """The unique path from start reading the given letters.

    Total on covers; on other folded graphs raises NoSuchPathError at the
    first missing edge.
    """
    ls = letters.letters if isinstance(letters, (Word, CyclicWord)) else tuple(letters)
    om = out_map(g)
    edges = []
    v = start
    for i, x in enumerate(ls):
        e = om.get((v, x))
        if e is None:
            raise NoSuchPathError(vertex=v, letter=x, position=i)
        edges.append(e)
        v = g.terminus(e)
    return EdgePath(start, tuple(edges))


def path_terminus(g: AGraph, p: EdgePath) -> int:
    return g.terminus(p.edges[-1]) if p.edges else p.start


def path_letters(g: AGraph, p: EdgePath) -> tuple[int, ...]:
    return tuple(g.label(e) for e in p.edges)


def path_is_reduced(p: EdgePath) -> bool:
    return all(a != -b for a, b in zip(p.edges, p.edges[1:]))


def _edge_token_string(edges: Sequence[int]) -> str:
    return "," + ",".join(str(e) for e in edges) + "," if edges else ","


def path_contains(hay: EdgePath, needle: EdgePath) -> bool:
    """Does needle's directed edge sequence occur contiguously in hay's?"""
    if not needle.edges:
        return True
    return _edge_token_string(needle.edges) in _edge_token_string(hay.edges)


def concat_paths(g: AGraph, *paths: EdgePath) -> EdgePath:
    edges: list[int] = []
    start = paths[0].start
    v = start
    for p in paths:
        if p.start != v:
            raise InvalidInputError("paths are not consecutive")
        edges.extend(p.edges)
        v = path_terminus(g, p)
    return EdgePath(start, tuple(edges))


# -- covers -------------------------------------------------------------------

def complete_to_cover(g: AGraph) -> AGraph:
    """Add edges (never vertices) until every vertex is full for every
    generator; missing out/in vertices are paired in ascending id order."""
    if not is_folded(g):
        raise InvalidInputError("complete_to_cover expects a folded graph")
    edges = list(g.edges)
    for gen in range(1, g.rank + 1):
        have_out = {o for o, _, x in edges if x == gen}
        have_in = {t for _, t, x in edges if x == gen}
        missing_out = [v for v in range(g.num_vertices) if v not in have_out]
        missing_in = [v for v in range(g.num_vertices) if v not in have_in]
        assert len(missing_out) == len(missing_in)
        edges.extend((o, t, gen) for o, t in zip(missing_out, missing_in))
    return AGraph(g.rank, g.num_vertices, g.base, tuple(edges))


def enumerate_covers(rank: int, degree: int, dedup: bool = True) -> Iterator[AGraph]:
    """Connected based covers of the given degree, one per N-tuple of
    permutations of the vertex set; dedup keeps one per based-isomorphism
    class (canonical breadth-first relabeling from the base)."""
    if degree < 1:
        raise InvalidInputError("degree must be >= 1")
    seen: set[tuple] = set()
    for perms in itertools.product(
        itertools.permutations(range(degree)), repeat=rank
    ):
        edges = tuple(
            (j, perm[j], i + 1)
            for i, perm in enumerate(perms)
            for j in range(degree)
        )
        g = AGraph(rank, degree, 0, edges)
        if not is_connected(g):
            continue
        if dedup:
            key = canonical_key(g)
            if key in seen:
                continue
            seen.add(key)
        yield g


@lru_cache(maxsize=None)
def cover_census(rank: int, degree: int) -> tuple[AGraph, ...]:
    """All based covers of exact degree, deduplicated, in canonical order."""
    return tuple(enumerate_covers(rank, degree, dedup=True))


def covers_up_to(rank: int, max_degree: int, cap: int | None = None) -> list[AGraph]:
    out: list[AGraph] = []
    for d in range(1, max_degree + 1):
        out.extend(cover_census(rank, d))
        if cap is not None and len(out) > cap:
            raise ResourceGuardError(
                f"cover census of degree <= {max_degree} exceeds cap {cap}"
            )
    return out


def rose(rank: int) -> AGraph:
    return AGraph(rank, 1, 0, tuple((0, 0, g) for g in range(1, rank + 1)))


# -- canonical forms -----------------------------------------------------------

def canonical_form(g: AGraph) -> AGraph:
    """Relabel vertices by breadth-first discovery from the base, edges
    explored in display-letter order. Folded connected graphs only."""
    om = out_map(g)
    order: dict[int, int] = {g.base: 0}
    queue = deque([g.base])
    letters = alphabet(g.rank)
    while queue:
        v = queue.popleft()
        for x in letters:
            e = om.get((v, x))
            if e is None:
                continue
            w = g.terminus(e)
            if w not in order:
                order[w] = len(order)
                queue.append(w)
    if len(order) != g.num_vertices:
        raise InvalidInputError("canonical_form expects a connected graph")
    edges = tuple(sorted((order[o], order[t], gen) for o, t, gen in g.edges))
    return AGraph(g.rank, g.num_vertices, 0, edges)


def canonical_key(g: AGraph) -> tuple:
    c = canonical_form(g)
    return (c.rank, c.num_vertices, c.edges)


# -- circle graphs and principal quotients -------------------------------------

def circle_graph(w: CyclicWord) -> AGraph:
    """The based simplicial circle reading w once around from vertex 0."""
    n = len(w)
    if n == 0:
        raise InvalidInputError("circle graph needs a nonempty word")
    edges = []
    for j, x in enumerate(w.letters):
        o, t = j, (j + 1) % n
        edges.append((o, t, x) if x > 0 else (t, o, -x))
    return AGraph(w.rank, n, 0, tuple(edges))


def set_partitions_with_blocks(n: int, k: int) -> Iterator[list[list[int]]]:
    """Set partitions of range(n) into exactly k blocks, via restricted
    growth strings; blocks are ordered by their minimal element."""
    if not 1 <= k <= n:
        return
    rgs = [0] * n

    def rec(i: int, used: int):
        if i == n:
            if used == k:
                blocks: list[list[int]] = [[] for _ in range(k)]
                for j, b in enumerate(rgs):
                    blocks[b].append(j)
                yield blocks
            return
        for b in range(min(used + 1, k)):
            new_used = used + (1 if b == used else 0)
            if new_used + (n - i - 1) < k:
                continue
            rgs[i] = b
            yield from rec(i + 1, new_used)

    yield from rec(1, 1)


def set_partitions(n: int) -> Iterator[list[list[int]]]:
    """All set partitions of range(n), by ascending block count."""
    for k in range(1, n + 1):
        yield from set_partitions_with_blocks(n, k)


def collapse_vertices(
    g: AGraph, blocks: Sequence[Sequence[int]]
) -> tuple[AGraph, tuple[int, ...]]:
    """Collapse each block to one vertex (no folding). Blocks must
    partition the vertex set; block order fixes the new ids."""
    vmap = [-1] * g.num_vertices
    for b, block in enumerate(blocks):
        for v in block:
            vmap[v] = b
    if any(b < 0 for b in vmap):
        raise InvalidInputError("blocks do not cover the vertex set")
    edges = tuple((vmap[o], vmap[t], gen) for o, t, gen in g.edges)
    return AGraph(g.rank, len(blocks), vmap[g.base], edges), tuple(vmap)


def principal_quotients(
    w: CyclicWord, max_partitions: int | None = None
) -> Iterator[tuple[AGraph, tuple[int, ...]]]:
    """Folded collapses of the circle graph of w, one per set partition of
    its vertices (ascending block count), with the composed vertex map."""
    if len(w) == 0:
        raise InvalidInputError("need a nonempty cyclic word")
    cw = circle_graph(w)
    count = 0
    for blocks in set_partitions(len(w)):
        count += 1
        if max_partitions is not None and count > max_partitions:
            raise ResourceGuardError(
                f"partition enumeration exceeded cap {max_partitions}"
            )
        collapsed, vmap = collapse_vertices(cw, blocks)
        folded, fmap = fold_with_map(collapsed)
        yield folded, tuple(fmap[b] for b in vmap)


# -- spanning data and rewriting ------------------------------------------------

def spanning_data(g: AGraph, tree_edges: Sequence[int] | None = None) -> SpanningData:
    """Choose a maximal tree (breadth-first from the base, letters in
    display order) or validate a provided one, and order the complement."""
    om = out_map(g)
    letters = alphabet(g.rank)
    parent_edge: list[int | None] = [None] * g.num_vertices
    depth = [0] * g.num_vertices
    tree: set[int] = set()
    seen = {g.base}
    queue = deque([g.base])
    if tree_edges is None:
        while queue:
            v = queue.popleft()
            for x in letters:
                e = om.get((v, x))
                if e is None:
                    continue
                w = g.terminus(e)
                if w not in seen:
                    seen.add(w)
                    tree.add(abs(e) - 1)
                    parent_edge[w] = e
                    depth[w] = depth[v] + 1
                    queue.append(w)
    else:
        tree = {int(j) for j in tree_edges}
        if len(tree) != g.num_vertices - 1:
            raise InvalidInputError("tree edge set has wrong size")
        incident: dict[int, list[int]] = {v: [] for v in range(g.num_vertices)}
        for j in sorted(tree):
            o, t, _ = g.edges[j]
            incident[o].append(j + 1)
            incident[t].append(-(j + 1))
        while queue:
            v = queue.popleft()
            for e in incident[v]:
                w = g.terminus(e)
                if w not in seen:
                    seen.add(w)
                    parent_edge[w] = e
                    depth[w] = depth[v] + 1
                    queue.append(w)
        if len(seen) != g.num_vertices:
            raise InvalidInputError("given edges do not span the graph")
    if len(seen) != g.num_vertices:
        raise InvalidInputError("graph is not connected")
    complement = tuple(j + 1 for j in range(len(g.edges)) if j not in tree)
    return SpanningData(
        tree_edges=frozenset(tree),
        complement=complement,
        parent_edge=tuple(parent_edge),
        depth=tuple(depth),
    )


def tree_path(g: AGraph, sd: SpanningData, u: int, v: int) -> tuple[int, ...]:
    """Directed edges of the unique reduced tree path u -> v."""
    up: list[int] = []
    down: list[int] = []
    a, b = u, v
    while sd.depth[a] > sd.depth[b]:
        e = sd.parent_edge[a]
        up.append(-e)  # type: ignore[operator]
        a = g.origin(e)  # type: ignore[arg-type]
    while sd.depth[b] > sd.depth[a]:
        e = sd.parent_edge[b]
        down.append(e)  # type: ignore[arg-type]
        b = g.origin(e)  # type: ignore[arg-type]
    while a != b:
        e1, e2 = sd.parent_edge[a], sd.parent_edge[b]
        up.append(-e1)  # type: ignore[operator]
        down.append(e2)  # type: ignore[arg-type]
        a, b = g.origin(e1), g.origin(e2)  # type: ignore[arg-type]
    return tuple(up) + tuple(reversed(down))


def dual_basis_loop(g: AGraph, sd: SpanningData, i: int) -> EdgePath:
    """The loop at the base for dual letter i (1-based)."""
    e = sd.complement[i - 1]
    edges = (
        tree_path(g, sd, g.base, g.origin(e))
        + (e,)
        + tree_path(g, sd, g.terminus(e), g.base)
    )
    return EdgePath(g.base, edges)


def rewrite_loop(g: AGraph, sd: SpanningData, p: EdgePath) -> Word:
    """Rewrite a reduced base loop as a freely reduced word over the dual
    basis: drop tree edges, map complement edges to dual letters."""
    if p.start != g.base or path_terminus(g, p) != g.base:
        raise InvalidInputError("rewrite_loop expects a loop at the base vertex")
    index = {e: i + 1 for i, e in enumerate(sd.complement)}
    letters = []
    for e in p.edges:
        j = abs(e)
        if j - 1 in sd.tree_edges:
            continue
        letters.append(index[j] if e > 0 else -index[j])
    return free_reduce(letters, len(sd.complement))


def rewrite_loop_cyclic(g: AGraph, sd: SpanningData, p: EdgePath) -> CyclicWord:
    """Rewrite the cyclically reduced form of a loop over the dual basis."""
    edges = list(p.edges)
    while len(edges) >= 2 and edges[0] == -edges[-1]:
        edges = edges[1:-1]
    index = {e: i + 1 for i, e in enumerate(sd.complement)}
    letters = []
    for e in edges:
        j = abs(e)
        if j - 1 in sd.tree_edges:
            continue
        letters.append(index[j] if e > 0 else -index[j])
    w = free_reduce(letters, len(sd.complement))
    return cyclic_reduce(w)[1]


# -- explicit path constructions -------------------------------------------------

def delta_path(g: AGraph, sd: SpanningData, u: Word) -> EdgePath:
    """The reduced base loop realizing a dual-basis word: complement edges
    joined by tree paths."""
    if len(u) == 0:
        raise InvalidInputError("need a nonempty dual word")
    if u.rank != sd.dual_rank:
        raise InvalidInputError("dual word rank does not match the complement")
    edges: list[int] = []
    v = g.base
    for y in u.letters:
        e = sd.complement[abs(y) - 1] * (1 if y > 0 else -1)
        edges.extend(tree_path(g, sd, v, g.origin(e)))
        edges.append(e)
        v = g.terminus(e)
    edges.extend(tree_path(g, sd, v, g.base))
    p = EdgePath(g.base, tuple(edges))
    assert path_is_reduced(p)
    return p


def _alpha_word(r: int) -> Word:
    letters = [r, r]
    for i in range(1, r + 1):
        letters.extend((i, i))
    return Word(tuple(letters), r)


def alpha_path(g: AGraph, sd: SpanningData) -> EdgePath:
    """Loop representing b_r^2 b_1^2 ... b_r^2 over the dual basis; any
    cyclically reduced circuit containing it rewrites to a word with the
    square-chain pattern, hence is not simple."""
    r = sd.dual_rank
    if r < 1:
        raise UnsupportedInputError("graph has trivial fundamental group")
    return delta_path(g, sd, _alpha_word(r))


def universal_three_word(r: int) -> Word:
    """A freely reduced word over rank r containing every freely reduced
    length-3 word as a factor; length <= 4L-1 for L = 2r(2r-1)^2."""
    if r < 2:
        raise UnsupportedInputError("need dual rank >= 2")
    triples = [w.letters for w in enumerate_reduced(3, r)]
    letters: list[int] = list(triples[0])
    for nxt in triples[1:]:
        if letters[-1] == -nxt[0]:
            for y in alphabet(r):
                if y != -letters[-1] and y != -nxt[0]:
                    letters.append(y)
                    break
        letters.extend(nxt)
    return Word(tuple(letters), r)


def beta_path(g: AGraph, sd: SpanningData) -> EdgePath:
    """Loop realizing the universal length-3 word over the dual basis; any
    cyclically reduced circuit containing it rewrites to a word whose cyclic
    factors include every reduced 3-word, hence is filling."""
    return delta_path(g, sd, universal_three_word(sd.dual_rank))


def cycle_rank(g: AGraph) -> int:
    return len(g.edges) - g.num_vertices + 1


def connector_path(g: AGraph, e1: int, e2: int) -> EdgePath:
    """Shortest reduced path starting with directed edge e1 and ending with
    e2; on a core graph of rank >= 2 its length is at most 3·#V."""
    if cycle_rank(g) < 2:
        raise UnsupportedInputError("connector needs fundamental group rank >= 2")
    if e1 == e2:
        return EdgePath(g.origin(e1), (e1,))
    adj = adjacency(g)
    prev: dict[int, int] = {e1: 0}
    queue = deque([e1])
    while queue:
        e = queue.popleft()
        if e == e2:
            break
        for f in adj[g.terminus(e)]:
            if f != -e and f not in prev:
                prev[f] = e
                queue.append(f)
    if e2 not in prev:
        raise InvalidInputError("no reduced connector exists")
    edges = [e2]
    while edges[-1] != e1:
        edges.append(prev[edges[-1]])
    edges.reverse()
    if len(edges) > 3 * g.num_vertices:
        warnings.warn(
            f"connector of length {len(edges)} exceeds 3·#V = {3 * g.num_vertices}"
        )
    return EdgePath(g.origin(e1), tuple(edges))


# -- Euler circuits and coverage words -------------------------------------------

def _euler_circuit_positive(g: AGraph, start: int) -> list[int]:
    """Hierholzer's algorithm on the positively labeled directed edges."""
    out: dict[int, deque[int]] = {v: deque() for v in range(g.num_vertices)}
    order = sorted(range(len(g.edges)), key=lambda j: (g.edges[j][2], j))
    for j in order:
        out[g.edges[j][0]].append(j + 1)
    stack_v = [start]
    stack_e: list[int] = []
    circuit: list[int] = []
    while stack_v:
        v = stack_v[-1]
        if out[v]:
            e = out[v].popleft()
            stack_v.append(g.terminus(e))
            stack_e.append(e)
        else:
            stack_v.pop()
            if stack_e:
                circuit.append(stack_e.pop())
    circuit.reverse()
    if len(circuit) != len(g.edges):
        raise InvalidInputError("graph has no Euler circuit over positive edges")
    return circuit


def euler_word(g: AGraph, start: int | None = None) -> Word:
    """Positive word of length rank·degree labeling an Euler circuit over
    the positive edges of a connected cover."""
    if not is_cover(g):
        raise InvalidInputError("euler_word expects a cover")
    start = g.base if start is None else start
    circuit = _euler_circuit_positive(g, start)
    return Word(tuple(g.label(e) for e in circuit), g.rank)


def coverage_word(g: AGraph) -> Word:
    """Positive word v with |v| = rank·degree² whose trace from every vertex
    passes through every topological edge at least once."""
    if not is_cover(g):
        raise InvalidInputError("coverage_word expects a cover")
    d = g.num_vertices
    order = [g.base] + [v for v in range(d) if v != g.base]
    pieces = [euler_word(g, g.base).letters]
    for i in range(1, d):
        sofar = tuple(itertools.chain.from_iterable(pieces))
        end = path_terminus(g, trace_path(g, order[i], sofar))
        pieces.append(euler_word(g, end).letters)
    return Word(tuple(itertools.chain.from_iterable(pieces)), g.rank)


def trace_covers_all_edges(g: AGraph, start: int, w: Word) -> bool:
    p = trace_path(g, start, w)
    return {abs(e) - 1 for e in p.edges} == set(range(len(g.edges)))


# -- serialization -----------------------------------------------------------

def graph_to_json(g: AGraph) -> dict:
    return {
        "vertices": list(range(g.num_vertices)),
        "base": g.base,
        "edges": [
            {"from": o, "to": t, "gen": gen, "sign": 1} for o, t, gen in g.edges
        ],
    }


def graph_from_json(data: dict, rank: int) -> AGraph:
    edges = []
    for e in data["edges"]:
        o, t, gen, sign = e["from"], e["to"], e["gen"], e.get("sign", 1)
        edges.append((o, t, gen) if sign > 0 else (t, o, gen))
    return AGraph(rank, len(data["vertices"]), data["base"], tuple(edges))


def graph_to_dot(g: AGraph, name: str = "agraph") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(g.num_vertices):
        shape = ' shape=doublecircle' if v == g.base else ""
        lines.append(f'  v{v} [label="{v}"{shape}];')
    for o, t, gen in g.edges:
        lines.append(f'  v{o} -> v{t} [label="a{gen}"];')
    lines.append("}")
    return "\n".join(lines)
