"""Simple undirected graphs and the path/contraction primitives built on them.

Vertices are the integers ``0 .. n-1``.  Paths are plain tuples of vertex ids.
Graphs are immutable; every operation returns a new object.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError, InternalInvariantError, NoPathError, WitnessError

VertexPath = tuple  # ordered tuple of distinct vertex ids


class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``.

    Neighbor lists are sorted and duplicate-free.  Duplicate edges in the input
    are merged; loops and out-of-range endpoints raise :class:`InputError`.
    """

    __slots__ = ("_n", "_adj", "_nbr", "_m")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if int(n) != n or n < 0:
            raise InputError(f"vertex count must be a non-negative integer, got {n!r}")
        n = int(n)
        nbr: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            if len(e) != 2:
                raise InputError(f"edge must have two endpoints, got {e!r}")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {e!r} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            nbr[u].add(v)
            nbr[v].add(u)
        self._n = n
        self._adj = tuple(tuple(sorted(s)) for s in nbr)
        self._nbr = tuple(frozenset(s) for s in nbr)
        self._m = sum(len(s) for s in nbr) // 2

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    def __len__(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return self._m

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in self._adj[u] if u < v]

    def check_vertex(self, v: int) -> int:
        if not isinstance(v, int) or not 0 <= v < self._n:
            raise InputError(f"vertex id {v!r} outside 0..{self._n - 1}")
        return v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {"n": self._n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Graph":
        try:
            return cls(data["n"], data["edges"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed graph JSON: {exc}") from exc

    def dumps(self) -> str:
        return canonical_json(self.to_dict())

    def sha256(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  {v} [label="{v}"];' for v in range(self._n)]
        lines += [f"  {u} -- {v};" for u, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- small constructors used across tests and generators --------------------
def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def hypercube_graph(d: int) -> Graph:
    n = 1 << d
    return Graph(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


# -- path predicates ---------------------------------------------------------
def _check_ids(g: Graph, p: Sequence[int]) -> None:
    for v in p:
        g.check_vertex(v)


def is_path(g: Graph, p: Sequence[int]) -> bool:
    """True iff ``p`` has distinct vertices with consecutive ones adjacent."""
    _check_ids(g, p)
    if len(set(p)) != len(p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def is_induced_path(g: Graph, p: Sequence[int]) -> bool:
    """True iff ``p`` is a path of ``g`` whose vertices induce no chord."""
    if not is_path(g, p):
        return False
    pos = {v: i for i, v in enumerate(p)}
    for i, v in enumerate(p):
        for w in g.neighbors(v):
            j = pos.get(w)
            if j is not None and abs(i - j) != 1:
                return False
    return True


def is_hamiltonian_path(g: Graph, p: Sequence[int]) -> bool:
    return len(p) == g.n and is_path(g, p)


def check_hamiltonian(g: Graph, p: Sequence[int]) -> VertexPath:
    """Return ``p`` as a tuple, raising :class:`WitnessError` if not Hamiltonian."""
    try:
        ok = is_hamiltonian_path(g, p)
    except InputError as exc:
        raise WitnessError(f"Hamiltonian witness invalid: {exc}") from exc
    if not ok:
        raise WitnessError("Hamiltonian witness invalid: not a path through every vertex")
    return tuple(p)


# -- traversal ----------------------------------------------------------------
def bfs(g: Graph, source: int, allowed: frozenset[int] | set[int] | None = None) -> dict[int, int]:
    """Breadth-first search returning ``parent`` for every reached vertex.

    Neighbors are explored in ascending id and a parent is fixed the first
    time a vertex is discovered.  ``allowed`` restricts the search to an
    induced subgraph.
    """
    parent = {source: -1}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in parent and (allowed is None or y in allowed):
                parent[y] = x
                queue.append(y)
    return parent


def _walk_back(parent: Mapping[int, int], target: int) -> VertexPath:
    out = []
    while target != -1:
        out.append(target)
        target = parent[target]
    return tuple(reversed(out))


def shortest_path(g: Graph, u: int, v: int, allowed=None) -> VertexPath:
    """Breadth-first shortest ``u``-``v`` path (always an induced path)."""
    g.check_vertex(u)
    g.check_vertex(v)
    parent = bfs(g, u, allowed)
    if v not in parent:
        raise NoPathError(f"no path between {u} and {v}")
    return _walk_back(parent, v)


def eccentric_shortest_path(g: Graph, u: int) -> VertexPath:
    """Shortest path from ``u`` to the least-id vertex farthest from ``u``."""
    g.check_vertex(u)
    dist = {u: 0}
    parent = {u: -1}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)
    if len(dist) != g.n:
        missing = min(v for v in range(g.n) if v not in dist)
        comp = sorted(bfs(g, missing))
        raise NoPathError(f"graph is disconnected; component {comp} unreachable from {u}")
    far = max(dist.values())
    target = min(v for v, d in dist.items() if d == far)
    return _walk_back(parent, target)


def connected_components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in range(g.n):
        if s not in seen:
            comp = sorted(bfs(g, s))
            seen.update(comp)
            comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(bfs(g, 0)) == g.n


def split_by_removal(g: Graph, p: Sequence[int], x: Iterable[int]) -> list[VertexPath]:
    """Maximal segments of the Hamiltonian path ``p`` avoiding ``x``.

    Segments are returned longest first; equal lengths keep path order.
    """
    check_hamiltonian(g, p)
    xs = set(x)
    if not xs:
        raise InputError("removal set must be nonempty")
    for v in xs:
        g.check_vertex(v)
    segments: list[VertexPath] = []
    run: list[int] = []
    for v in p:
        if v in xs:
            if run:
                segments.append(tuple(run))
            run = []
        else:
            run.append(v)
    if run:
        segments.append(tuple(run))
    segments.sort(key=len, reverse=True)
    return segments


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """``G[s]`` relabelled to ``0 .. |s|-1`` in ascending old id, plus old->new map."""
    keep = sorted(set(s))
    for v in keep:
        g.check_vertex(v)
    idx = {v: i for i, v in enumerate(keep)}
    edges = [(idx[u], idx[w]) for u in keep for w in g.neighbors(u) if u < w and w in idx]
    return Graph(len(keep), edges), idx


# -- contraction ---------------------------------------------------------------
@dataclass(frozen=True)
class ContractionMap:
    """Record of edge contractions applied to a graph on ``original_n`` vertices.

    ``steps`` lists ``(survivor, absorbed)`` merges in order; ids are original
    vertex ids and the survivor keeps its id.  ``branch_sets`` maps each live
    super-vertex to the original vertices merged into it.  A contracted graph
    is emitted with compact ids: super-vertex ``survivors[i]`` becomes ``i``.
    """

    original_n: int
    steps: tuple[tuple[int, int], ...] = ()
    branch_sets: Mapping[int, frozenset[int]] = field(default=None, compare=False)  # type: ignore[assignment]

    def __post_init__(self):
        if self.branch_sets is None:
            sets = {v: {v} for v in range(self.original_n)}
            for u, v in self.steps:
                sets[u] |= sets.pop(v)
            object.__setattr__(self, "branch_sets", {k: frozenset(s) for k, s in sets.items()})

    @classmethod
    def identity(cls, n: int) -> "ContractionMap":
        return cls(n)

    @property
    def survivors(self) -> tuple[int, ...]:
        return tuple(sorted(self.branch_sets))

    def owner(self) -> dict[int, int]:
        """Original vertex -> surviving super-vertex id."""
        return {v: s for s, bs in self.branch_sets.items() for v in bs}

    def compact(self) -> dict[int, int]:
        return {s: i for i, s in enumerate(self.survivors)}

    def quotient(self, g: Graph) -> Graph:
        """The contracted graph, with compact ids."""
        own = self.owner()
        idx = self.compact()
        edges = set()
        for a, b in g.edges():
            x, y = idx[own[a]], idx[own[b]]
            if x != y:
                edges.add((min(x, y), max(x, y)))
        return Graph(len(idx), edges)


def _sets_adjacent(g: Graph, a: Iterable[int], owner: Mapping[int, int], target: int) -> bool:
    return any(owner[w] == target for x in a for w in g.neighbors(x))


def contract_path_edge(g: Graph, m: ContractionMap, u: int, v: int) -> tuple[Graph, ContractionMap]:
    """Contract the edge between super-vertices ``u`` and ``v`` of ``g / m``.

    ``g`` is the original graph; ``u`` and ``v`` are surviving super-vertex
    ids (original labels).  ``u`` survives.  Returns the compact quotient and
    the extended map.
    """
    if g.n != m.original_n:
        raise InputError("contraction map does not belong to this graph")
    if u == v or u not in m.branch_sets or v not in m.branch_sets:
        raise InputError(f"({u}, {v}) are not two distinct live super-vertices")
    owner = m.owner()
    if not _sets_adjacent(g, m.branch_sets[u], owner, v):
        raise InputError(f"({u}, {v}) is not an edge of the contracted graph")
    sets = dict(m.branch_sets)
    sets[u] = sets[u] | sets.pop(v)
    m2 = ContractionMap(m.original_n, m.steps + ((u, v),), sets)
    return m2.quotient(g), m2


def absorb_outside(g: Graph, ham: Sequence[int], keep: Iterable[int]) -> tuple[Graph, ContractionMap, VertexPath]:
    """Contract every Hamiltonian-path edge with an endpoint outside ``keep``.

    Each maximal run of non-kept vertices merges into the kept vertex on its
    left along ``ham`` (on its right for a leading run).  Returns the
    contracted graph, the map, and the image of ``ham`` in compact ids.
    """
    keep = set(keep)
    if not keep:
        raise InputError("nothing to keep")
    steps: list[tuple[int, int]] = []
    sets: dict[int, set[int]] = {}
    order: list[int] = []
    lead: list[int] = []
    cur = None
    for v in ham:
        if v in keep:
            cur = v
            sets[v] = {v}
            order.append(v)
            if lead:
                for w in reversed(lead):
                    steps.append((v, w))
                    sets[v].add(w)
                lead = []
        elif cur is None:
            lead.append(v)
        else:
            steps.append((cur, v))
            sets[cur].add(v)
    m = ContractionMap(g.n, tuple(steps), {s: frozenset(b) for s, b in sets.items()})
    idx = m.compact()
    return m.quotient(g), m, tuple(idx[v] for v in order)


def lift_induced_path(g_original: Graph, m: ContractionMap, p: Sequence[int]) -> VertexPath:
    """Lift an induced path of ``g_original / m`` (compact ids) to ``g_original``.

    Contractions are undone one at a time.  When the merged vertex ``z`` lies
    on the path with path-neighbors ``p1``/``p2``, it is replaced by ``u`` if
    both neighbors see ``u``, else by ``v`` if both see ``v``, else by the
    edge ``u v`` oriented so ``p1 ~ u`` and ``p2 ~ v``.  Every replacement is
    re-checked locally and the final path is checked globally.
    """
    if g_original.n != m.original_n:
        raise InputError("contraction map does not belong to this graph")
    survivors = m.survivors
    for c in p:
        if not isinstance(c, int) or not 0 <= c < len(survivors):
            raise InputError(f"vertex id {c!r} outside the contracted graph")

    # replay forward to recover each absorbed branch set
    sets: dict[int, set[int]] = {v: {v} for v in range(m.original_n)}
    snaps: list[frozenset[int]] = []
    for u, v in m.steps:
        snaps.append(frozenset(sets[v]))
        sets[u] |= sets.pop(v)
    owner = {x: s for s, bs in sets.items() for x in bs}

    path = [survivors[c] for c in p]
    on_path = set(path)

    def _adj_small(src: set[int], target: int) -> bool:
        return any(owner[w] == target for a in src for w in g_original.neighbors(a))

    def adjacent(x: int, y: int) -> bool:
        if len(sets[x]) <= len(sets[y]):
            return _adj_small(sets[x], y)
        return _adj_small(sets[y], x)

    for (u, v), bv in zip(reversed(m.steps), reversed(snaps)):
        sets[u] -= bv
        sets[v] = set(bv)
        for x in bv:
            owner[x] = v
        if u not in on_path:
            continue
        i = path.index(u)
        p1 = path[i - 1] if i > 0 else None
        p2 = path[i + 1] if i + 1 < len(path) else None
        nbrs = [w for w in (p1, p2) if w is not None]
        if all(adjacent(u, w) for w in nbrs):
            repl = [u]
        elif all(adjacent(v, w) for w in nbrs):
            repl = [v]
        elif len(nbrs) == 2 and adjacent(u, p1) and adjacent(v, p2):
            repl = [u, v]
        elif len(nbrs) == 2 and adjacent(v, p1) and adjacent(u, p2):
            repl = [v, u]
        else:
            raise InternalInvariantError(f"cannot lift through contraction step ({u}, {v})")
        path[i:i + 1] = repl
        on_path.discard(u)
        on_path.update(repl)
        # local re-verification: new vertices see exactly their path-neighbors
        for j in range(i, i + len(repl)):
            x = path[j]
            for k, y in enumerate(path):
                if k != j and adjacent(x, y) != (abs(k - j) == 1):
                    raise InternalInvariantError(f"lift step ({u}, {v}) broke inducedness")

    out = tuple(path)
    if len(out) < len(p) or not is_induced_path(g_original, out):
        raise InternalInvariantError("lifted path failed verification")
    return out
