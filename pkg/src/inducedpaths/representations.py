"""Tree, path and cycle representations of graphs.

A representation is a host graph (tree, path or cycle, on nodes ``0..m-1``)
plus a *model* per graph vertex: a connected set of host nodes, such that the
models of adjacent vertices intersect.  The bag at a node is the set of
vertices whose model contains it.  Bags, width, adhesion and the varied flag
are computed eagerly when a representation is built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError, ValidationError
from .graph import Graph, canonical_json

MAX_WEIGHT_HOST_CAP = 10_000


def _connected(nodes: frozenset[int], host_adj: Sequence[Sequence[int]]) -> bool:
    if not nodes:
        return False
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in host_adj[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def _norm_edges(num_nodes: int, edges: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    out = set()
    for e in edges:
        a, b = int(e[0]), int(e[1])
        if not (0 <= a < num_nodes and 0 <= b < num_nodes) or a == b:
            raise ValidationError(f"host edge {tuple(e)} invalid for {num_nodes} nodes", witness=tuple(e))
        out.add((min(a, b), max(a, b)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class RepresentationStats:
    width: int
    adhesion: int
    varied: bool


class TreeRepresentation:
    """Host tree plus one connected, nonempty model per graph vertex."""

    kind = "tree"

    def __init__(self, num_nodes: int, host_edges: Iterable[Sequence[int]], models: Sequence[Iterable[int]]):
        if num_nodes < 1:
            raise ValidationError("host must have at least one node")
        self.num_nodes = int(num_nodes)
        self.host_edges = _norm_edges(self.num_nodes, host_edges)
        adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for a, b in self.host_edges:
            adj[a].append(b)
            adj[b].append(a)
        self.host_adj = tuple(tuple(sorted(a)) for a in adj)
        self._check_host()
        self.models = tuple(frozenset(int(t) for t in mdl) for mdl in models)
        bags: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for v, mdl in enumerate(self.models):
            if not mdl:
                raise ValidationError(f"model of vertex {v} is empty", witness=v)
            for t in mdl:
                if not 0 <= t < self.num_nodes:
                    raise ValidationError(f"model of vertex {v} uses unknown node {t}", witness=v)
            if not _connected(mdl, self.host_adj):
                raise ValidationError(f"model of vertex {v} is disconnected", witness=v)
        for v, mdl in enumerate(self.models):
            for t in mdl:
                bags[t].append(v)
        self.bags = tuple(tuple(b) for b in bags)
        self._bag_sets = tuple(frozenset(b) for b in bags)
        self.stats = self._compute_stats()

    # -- structure checks -------------------------------------------------
    def _check_host(self) -> None:
        if len(self.host_edges) != self.num_nodes - 1 or not _connected(frozenset(range(self.num_nodes)), self.host_adj):
            raise ValidationError("host is not a tree", witness=self.host_edges)

    def _compute_stats(self) -> RepresentationStats:
        width = max(len(b) for b in self.bags) - 1
        adhesion = max((len(self.adhesion_set(a, b)) for a, b in self.host_edges), default=0)
        return RepresentationStats(width, adhesion, self._is_varied())

    def _is_varied(self) -> bool:
        if self.num_nodes == 1:
            return bool(self.bags[0]) or self.n == 0
        for a, b in self.host_edges:
            sa, sb = self._bag_sets[a], self._bag_sets[b]
            if sa <= sb or sb <= sa:
                return False
        return True

    # -- accessors ---------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.models)

    @property
    def width(self) -> int:
        return self.stats.width

    @property
    def adhesion(self) -> int:
        return self.stats.adhesion

    @property
    def varied(self) -> bool:
        return self.stats.varied

    def bag(self, t: int) -> tuple[int, ...]:
        if not 0 <= t < self.num_nodes:
            raise InputError(f"host node {t} outside 0..{self.num_nodes - 1}")
        return self.bags[t]

    def bag_set(self, t: int) -> frozenset[int]:
        return self._bag_sets[t]

    def adhesion_set(self, t: int, t2: int) -> frozenset[int]:
        if t2 not in self.host_adj[t]:
            raise InputError(f"({t}, {t2}) is not a host edge")
        return self._bag_sets[t] & self._bag_sets[t2]

    def leaves(self) -> list[int]:
        return [t for t in range(self.num_nodes) if len(self.host_adj[t]) <= 1]

    def is_host_path(self, nodes: Sequence[int]) -> bool:
        if not nodes or len(set(nodes)) != len(nodes):
            return False
        return all(b in self.host_adj[a] for a, b in zip(nodes, nodes[1:]))

    def validate(self, g: Graph) -> "TreeRepresentation":
        """Check this is a representation of ``g``; raise with a witness otherwise."""
        if g.n != self.n:
            raise ValidationError(f"representation has {self.n} models but graph has {g.n} vertices")
        for u, v in g.edges():
            if not self.models[u] & self.models[v]:
                raise ValidationError(f"edge ({u}, {v}) is not covered by any bag", witness=(u, v))
        return self

    def with_models(self, num_nodes: int, host_edges, models) -> "TreeRepresentation":
        return TreeRepresentation(num_nodes, host_edges, models)

    # -- serialization -------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "host": {"nodes": self.num_nodes, "edges": [list(e) for e in self.host_edges]},
            "bags": [list(b) for b in self.bags],
        }

    def dumps(self) -> str:
        return canonical_json(self.to_dict())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeRepresentation):
            return NotImplemented
        return self.kind == other.kind and self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(nodes={self.num_nodes}, n={self.n}, width={self.width})"


class PathRepresentation(TreeRepresentation):
    """Tree representation whose host is the path ``0 - 1 - ... - (m-1)``."""

    kind = "path"

    def __init__(self, num_nodes: int, models: Sequence[Iterable[int]], host_edges=None):
        path_edges = [(i, i + 1) for i in range(num_nodes - 1)]
        if host_edges is not None and _norm_edges(num_nodes, host_edges) != tuple(path_edges):
            raise ValidationError("path host must list nodes in path order", witness=host_edges)
        super().__init__(num_nodes, path_edges, models)

    def interval(self, v: int) -> tuple[int, int]:
        mdl = self.models[v]
        return min(mdl), max(mdl)

    def with_models(self, num_nodes: int, host_edges, models) -> "PathRepresentation":
        return PathRepresentation(num_nodes, models)


class CycleRepresentation:
    """Cycle host ``0 - 1 - ... - (m-1) - 0`` with arc models for a subset of vertices.

    Vertices that appear in no bag are outside the represented subgraph.
    ``cycle_vertices[i]``, when given, is the graph vertex sitting at node ``i``
    of the facial cycle (vortex form); each such vertex's model must contain
    its own node.
    """

    kind = "cycle"

    def __init__(self, num_nodes: int, models: Mapping[int, Iterable[int]], cycle_vertices: Sequence[int] | None = None):
        if num_nodes < 3:
            raise ValidationError("cycle host needs at least 3 nodes")
        self.num_nodes = int(num_nodes)
        m = self.num_nodes
        self.host_edges = tuple(sorted((min(i, (i + 1) % m), max(i, (i + 1) % m)) for i in range(m)))
        self.host_adj = tuple(tuple(sorted({(i - 1) % m, (i + 1) % m})) for i in range(m))
        self.models = {int(v): frozenset(int(t) for t in mdl) for v, mdl in models.items()}
        bags: list[list[int]] = [[] for _ in range(m)]
        for v in sorted(self.models):
            mdl = self.models[v]
            if not mdl or not all(0 <= t < m for t in mdl) or not _connected(mdl, self.host_adj):
                raise ValidationError(f"model of vertex {v} is not a nonempty arc", witness=v)
            for t in mdl:
                bags[t].append(v)
        self.bags = tuple(tuple(b) for b in bags)
        self.cycle_vertices = tuple(cycle_vertices) if cycle_vertices is not None else None
        if self.cycle_vertices is not None:
            if len(self.cycle_vertices) != m or len(set(self.cycle_vertices)) != m:
                raise ValidationError("cycle_vertices must name one distinct vertex per node")
            for i, v in enumerate(self.cycle_vertices):
                if i not in self.models.get(v, ()):
                    raise ValidationError(f"cycle vertex {v} does not contain its own node {i}", witness=v)
        self.width = max(len(b) for b in self.bags) - 1

    @property
    def vertices(self) -> list[int]:
        return sorted(self.models)

    def bag(self, t: int) -> tuple[int, ...]:
        return self.bags[t]

    def validate(self, g: Graph) -> "CycleRepresentation":
        for v in self.models:
            g.check_vertex(v)
        covered = set(self.models)
        for u, v in g.edges():
            if u in covered and v in covered and not self.models[u] & self.models[v]:
                raise ValidationError(f"edge ({u}, {v}) is not covered by any bag", witness=(u, v))
        if self.cycle_vertices is not None:
            cv = self.cycle_vertices
            for i in range(self.num_nodes):
                a, b = cv[i], cv[(i + 1) % self.num_nodes]
                if not g.has_edge(a, b):
                    raise ValidationError(f"facial cycle edge ({a}, {b}) missing from graph", witness=(a, b))
        return self

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "host": {"nodes": self.num_nodes, "edges": [list(e) for e in self.host_edges]},
            "bags": [list(b) for b in self.bags],
        }
        if self.cycle_vertices is not None:
            d["cycle_vertices"] = list(self.cycle_vertices)
        return d

    def dumps(self) -> str:
        return canonical_json(self.to_dict())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycleRepresentation):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f"CycleRepresentation(nodes={self.num_nodes}, width={self.width})"


# -- construction ---------------------------------------------------------------
def _models_from_bags(bags: Sequence[Iterable[int]], n: int) -> list[set[int]]:
    models: list[set[int]] = [set() for _ in range(n)]
    for t, b in enumerate(bags):
        for v in b:
            v = int(v)
            if not 0 <= v < n:
                raise ValidationError(f"bag {t} names vertex {v} outside 0..{n - 1}", witness=t)
            models[v].add(t)
    for v, mdl in enumerate(models):
        if not mdl:
            raise ValidationError(f"vertex {v} appears in no bag", witness=v)
    return models


def from_bags(host_edges: Iterable[Sequence[int]], bags: Sequence[Iterable[int]], g: Graph | None = None,
              *, kind: str = "tree", n: int | None = None):
    """Build and validate a representation from a host and its bags.

    ``kind`` is ``"tree"``, ``"path"`` or ``"cycle"``.  When ``g`` is given
    the result is also checked to cover every edge of ``g``.
    """
    bags = [list(b) for b in bags]
    num_nodes = len(bags)
    if n is None:
        n = g.n if g is not None else 1 + max((v for b in bags for v in b), default=-1)
    host_edges = list(host_edges)
    if kind == "tree":
        rep = TreeRepresentation(num_nodes, host_edges, _models_from_bags(bags, n))
    elif kind == "path":
        rep = PathRepresentation(num_nodes, _models_from_bags(bags, n), host_edges=host_edges)
    elif kind == "cycle":
        models: dict[int, set[int]] = {}
        for t, b in enumerate(bags):
            for v in b:
                models.setdefault(int(v), set()).add(t)
        rep = CycleRepresentation(num_nodes, models)
        if rep.host_edges != _norm_edges(num_nodes, host_edges):
            raise ValidationError("cycle host must list nodes in cycle order", witness=host_edges)
    else:
        raise InputError(f"unknown representation kind {kind!r}")
    if g is not None:
        rep.validate(g)
    return rep


def rep_from_dict(data: Mapping, g: Graph | None = None):
    """Inverse of ``rep.to_dict()``; validates against ``g`` when given."""
    try:
        kind = data.get("kind", "tree")
        host = data["host"]
        bags = data["bags"]
        if len(bags) != host["nodes"]:
            raise ValidationError("number of bags differs from number of host nodes")
        if kind == "cycle":
            models: dict[int, set[int]] = {}
            for t, b in enumerate(bags):
                for v in b:
                    models.setdefault(int(v), set()).add(t)
            rep = CycleRepresentation(host["nodes"], models, data.get("cycle_vertices"))
            if rep.host_edges != _norm_edges(host["nodes"], host["edges"]):
                raise ValidationError("cycle host must list nodes in cycle order")
            if g is not None:
                rep.validate(g)
            return rep
        return from_bags(host["edges"], bags, g, kind=kind)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed representation JSON: {exc}") from exc


def single_bag(n: int) -> PathRepresentation:
    """One host node holding every vertex."""
    return PathRepresentation(1, [{0}] * n)


# -- operations ------------------------------------------------------------------
def bag(rep, t: int) -> tuple[int, ...]:
    return rep.bag(t)


def adhesion_set(rep: TreeRepresentation, t: int, t2: int) -> frozenset[int]:
    return rep.adhesion_set(t, t2)


def torso(rep: TreeRepresentation, g: Graph, t: int) -> Graph:
    """Torso at ``t``: ``G[bag(t)]`` plus a clique on each incident adhesion set.

    Vertex ``i`` of the result is ``rep.bag(t)[i]``.
    """
    members = rep.bag(t)
    idx = {v: i for i, v in enumerate(members)}
    edges = {(idx[u], idx[w]) for u in members for w in g.neighbors(u) if w in idx and u < w}
    for t2 in rep.host_adj[t]:
        adh = sorted(rep.adhesion_set(t, t2))
        edges.update((idx[a], idx[b]) for i, a in enumerate(adh) for b in adh[i + 1:])
    return Graph(len(members), edges)


def make_varied(rep: TreeRepresentation) -> tuple[TreeRepresentation, dict[int, int]]:
    """Contract host edges ``tt'`` with ``bag(t) ⊆ bag(t')`` until none remain.

    Returns the varied representation and a map old node -> new node.  New
    nodes are numbered by the least old node they contain, so a path host
    stays in path order and a varied input comes back unchanged.
    """
    m = rep.num_nodes
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    nbrs = [set(a) for a in rep.host_adj]
    bagset = list(rep._bag_sets)
    queue = deque(rep.host_edges)
    while queue:
        a, b = queue.popleft()
        a, b = find(a), find(b)
        if a == b or b not in nbrs[a]:
            continue
        if bagset[a] <= bagset[b]:
            small, big = a, b
        elif bagset[b] <= bagset[a]:
            small, big = b, a
        else:
            continue
        parent[small] = big
        nbrs[big].discard(small)
        for s in nbrs[small]:
            if s != big:
                nbrs[s].discard(small)
                nbrs[s].add(big)
                nbrs[big].add(s)
                queue.append((big, s))
        nbrs[small] = set()

    first: dict[int, int] = {}
    for t in range(m):
        first.setdefault(find(t), t)
    roots = sorted(first, key=first.get)
    new_id = {r: i for i, r in enumerate(roots)}
    node_map = {t: new_id[find(t)] for t in range(m)}
    edges = {(min(new_id[r], new_id[s]), max(new_id[r], new_id[s])) for r in roots for s in nbrs[r]}
    models = [{node_map[t] for t in mdl} for mdl in rep.models]
    return rep.with_models(len(roots), sorted(edges), models), node_map


def path_weight(rep: TreeRepresentation, p: Sequence[int]) -> int:
    """Number of vertices whose model meets the host path ``p``."""
    if not rep.is_host_path(p):
        raise InputError(f"{list(p)} is not a path of the host")
    seen: set[int] = set()
    for t in p:
        seen.update(rep.bag_set(t))
    return len(seen)


def _adh_size(rep: TreeRepresentation, a: int, b: int) -> int:
    return len(rep.bag_set(a) & rep.bag_set(b))


def _weights_from(rep: TreeRepresentation, root: int) -> list[int]:
    """Weight of the host path from ``root`` to every node.

    Models are subtrees, so a vertex meets a host path in a subpath and the
    weight telescopes into bag sizes minus adhesion sizes along the path.
    """
    acc = [0] * rep.num_nodes
    acc[root] = len(rep.bags[root])
    seen = [False] * rep.num_nodes
    seen[root] = True
    stack = [root]
    while stack:
        x = stack.pop()
        for y in rep.host_adj[x]:
            if not seen[y]:
                seen[y] = True
                acc[y] = acc[x] + len(rep.bags[y]) - _adh_size(rep, x, y)
                stack.append(y)
    return acc


def _farthest_weights(rep: TreeRepresentation) -> list[int]:
    """For every node, the maximum weight of a host path starting there (rerooting DP)."""
    m = rep.num_nodes
    size = [len(b) for b in rep.bags]
    order = [0]
    par = [-1] * m
    seen = [False] * m
    seen[0] = True
    for x in order:
        for y in rep.host_adj[x]:
            if not seen[y]:
                seen[y] = True
                par[y] = x
                order.append(y)
    adh = [0] * m  # adhesion size with the parent
    for y in range(1, m):
        adh[y] = _adh_size(rep, y, par[y]) if par[y] >= 0 else 0
    down = size[:]
    for y in reversed(order):
        p = par[y]
        if p >= 0:
            down[p] = max(down[p], size[p] + down[y] - adh[y])
    up_gain = [0] * m  # best gain from continuing to the parent side, excluding own subtree
    for x in order:
        gains = [(down[c] - adh[c], c) for c in rep.host_adj[x] if par[c] == x]
        if par[x] >= 0:
            gains.append((up_gain[x], -1))
        gains.sort(reverse=True)
        for c in rep.host_adj[x]:
            if par[c] != x:
                continue
            best = 0
            for gval, who in gains:
                if who != c:
                    best = max(best, gval)
                    break
            up_gain[c] = size[x] + best - adh[c]
    return [size[x] + max([0, up_gain[x] if par[x] >= 0 else 0] +
                          [down[c] - adh[c] for c in rep.host_adj[x] if par[c] == x]) for x in range(m)]


def node_weight(rep: TreeRepresentation, x: int) -> int:
    """Max weight of a host path from ``x`` to a leaf, minus ``|bag(x)|``."""
    acc = _weights_from(rep, x)
    return max(acc[t] for t in rep.leaves()) - len(rep.bags[x])


def node_weights(rep: TreeRepresentation) -> list[int]:
    far = _farthest_weights(rep)
    return [far[x] - len(rep.bags[x]) for x in range(rep.num_nodes)]


def _host_path_between(rep: TreeRepresentation, a: int, b: int) -> list[int]:
    parent = {a: -1}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in rep.host_adj[x]:
            if y not in parent:
                parent[y] = x
                stack.append(y)
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    return out[::-1]


def max_weight_path(rep: TreeRepresentation) -> tuple[list[int], int]:
    """A maximum-weight host path, as the lexicographically least leaf pair.

    Weight never drops when a path is extended, so some optimum runs leaf to
    leaf.  A leaf belongs to an optimal pair iff the farthest weight from it
    equals the optimum.
    """
    if rep.num_nodes > MAX_WEIGHT_HOST_CAP:
        raise InputError(f"host has {rep.num_nodes} nodes; cap is {MAX_WEIGHT_HOST_CAP}")
    if rep.num_nodes == 1:
        return [0], len(rep.bags[0])
    far = _farthest_weights(rep)
    best = max(far)
    leaves = rep.leaves()
    l1 = min(t for t in leaves if far[t] == best)
    acc = _weights_from(rep, l1)
    l2 = min(t for t in leaves if t != l1 and acc[t] == best)
    return _host_path_between(rep, l1, l2), best


def restrict_to_path(rep: TreeRepresentation, g: Graph, p: Sequence[int]) -> PathRepresentation:
    """Clip every model to the host path ``p`` (renumbered ``0..len(p)-1``)."""
    if not rep.is_host_path(p):
        raise InputError(f"{list(p)} is not a path of the host")
    pos = {t: i for i, t in enumerate(p)}
    models = []
    for v, mdl in enumerate(rep.models):
        clipped = {pos[t] for t in mdl if t in pos}
        if not clipped:
            raise ValidationError(f"model of vertex {v} misses the host path", witness=v)
        models.append(clipped)
    return PathRepresentation(len(p), models).validate(g)


def host_diameter_path(rep: TreeRepresentation) -> list[int]:
    """A maximum-order host path via double BFS (ties: least node id)."""
    def far_from(s: int) -> tuple[int, dict[int, int]]:
        dist = {s: 0}
        q = deque([s])
        while q:
            x = q.popleft()
            for y in rep.host_adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        d = max(dist.values())
        return min(t for t, dt in dist.items() if dt == d), dist

    a, _ = far_from(0)
    b, _ = far_from(a)
    return _host_path_between(rep, a, b)
