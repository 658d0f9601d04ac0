"""Instance generators, each emitting a verified Hamiltonian path and a validated representation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InputError, ParameterError
from .graph import Graph, VertexPath, canonical_json, check_hamiltonian
from .representations import from_bags, rep_from_dict


@dataclass(frozen=True)
class GeneratedInstance:
    graph: Graph
    ham: VertexPath
    rep: object = None
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "ham", check_hamiltonian(self.graph, self.ham))
        if self.rep is not None:
            self.rep.validate(self.graph)

    @property
    def n(self) -> int:
        return self.graph.n

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "ham": list(self.ham),
            "rep": None if self.rep is None else self.rep.to_dict(),
            "meta": dict(self.meta),
        }

    def dumps(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "GeneratedInstance":
        try:
            g = Graph.from_dict(data["graph"])
            rep = data.get("rep")
            rep = None if rep is None else rep_from_dict(rep, g)
            return cls(g, tuple(data["ham"]), rep, dict(data.get("meta", {})))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed instance JSON: {exc}") from exc


def _relabel(g: Graph, ham, bags, perm: list[int]):
    edges = [(perm[u], perm[v]) for u, v in g.edges()]
    return Graph(g.n, edges), tuple(perm[v] for v in ham), [[perm[v] for v in b] for b in bags]


# -- worst-case interval graphs -------------------------------------------------------
def worstcase_q(n: int, k: int) -> int:
    """floor(n^(2/k) + 1), i.e. the largest q with (q-1)^k <= n^2."""
    lo, hi = 0, n * n + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** k <= n * n:
            lo = mid
        else:
            hi = mid
    return lo + 1


def _path_instance(n: int) -> tuple[list[tuple[int, int]], list[int], list[list[int]], int]:
    edges = [(i, i + 1) for i in range(n - 1)]
    bags = [[i, i + 1] for i in range(n - 1)] if n > 1 else [[0]]
    return edges, list(range(n)), bags, n


def _worstcase(n: int, k: int, meta: dict) -> tuple[list[tuple[int, int]], list[int], list[list[int]], int]:
    """Returns (edges, ham, bags of a path representation, vertex count)."""
    if k == n:
        meta.setdefault("case", "clique")
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
        return edges, list(range(n)), [list(range(n))], n
    if k == 2:
        meta.setdefault("case", "path")
        return _path_instance(n)
    q = worstcase_q(n, k)
    meta.setdefault("q", q)
    if k == 3:
        meta.setdefault("case", "k3")
        return _worstcase3(q)
    if q >= n:
        meta.setdefault("case", "long-path")
        return _path_instance(q)
    n1 = -(-(n - q) // (q - 1))
    meta.setdefault("case", "spine")
    meta.setdefault("n_prime", n1)
    # the sub-construction needs k-2 <= n'; pad n' up when the rounding leaves it short
    sub_e, sub_ham, sub_bags, sub_n = _worstcase(max(n1, k - 2), k - 2, {})
    total = q + (q - 1) * sub_n
    edges = [(i, i + 1) for i in range(q - 1)]
    ham: list[int] = []
    bags: list[list[int]] = []
    for i in range(q - 1):
        off = q + i * sub_n
        edges += [(a + off, b + off) for a, b in sub_e]
        edges += [(i, off + x) for x in range(sub_n)]
        edges += [(i + 1, off + x) for x in range(sub_n)]
        ham.append(i)
        ham += [x + off for x in sub_ham]
        for b in sub_bags:
            bags.append(sorted([i, i + 1] + [x + off for x in b]))
    ham.append(q - 1)
    return edges, ham, bags, total


def _worstcase3(q: int):
    """Paths P_1..P_q, P_i of order i with endpoint u_i joined to all of P_{i+1}.

    Ids: P_1, P_2, ... in turn, u_i first then along P_i.  Interval layout:
    block i (the rest of P_i) starts at s_i = i(i-1)/2 with unit-overlap
    intervals running towards u_i, and u_i spans from the end of its block
    to just past the start of u_{i+1}.
    """
    first = [0] * (q + 2)
    for i in range(1, q + 1):
        first[i + 1] = first[i] + i
    s = [0] * (q + 2)
    for i in range(1, q + 1):
        s[i + 1] = s[i] + i
    total = first[q + 1]
    edges = []
    models: list[tuple[int, int]] = [(0, 0)] * total
    for i in range(1, q + 1):
        ids = list(range(first[i], first[i] + i))  # ids[0] = u_i
        edges += [(ids[j], ids[j + 1]) for j in range(i - 1)]
        if i < q:
            edges += [(ids[0], first[i + 1] + j) for j in range(i + 1)]
        # p_{i,j} (j >= 2, 1-based) at [s_i + i - j, s_i + i - j + 1]
        for j in range(2, i + 1):
            lo = s[i] + i - j
            models[ids[j - 1]] = (lo, lo + 1)
        lo = s[i] + i - 1
        models[ids[0]] = (lo, s[i + 1] + i) if i < q else (lo, lo)
    m = s[q] + q
    bags: list[list[int]] = [[] for _ in range(m)]
    for v, (lo, hi) in enumerate(models):
        for t in range(lo, hi + 1):
            bags[t].append(v)
    ham = []
    for i in range(q, 0, -1):
        ham += list(range(first[i], first[i] + i))
    return edges, ham, bags, total


def gen_worstcase_interval(n: int, k: int) -> GeneratedInstance:
    """Interval graph of order >= n, clique number <= k, all induced paths of order <= n^(2/k) + 1."""
    if not (2 <= k <= n):
        raise ParameterError(f"need 2 <= k <= n, got n={n}, k={k}")
    meta = {"construction": "worstcase", "n": n, "k": k}
    edges, ham, bags, total = _worstcase(n, k, meta)
    g = Graph(total, edges)
    rep = from_bags([(i, i + 1) for i in range(len(bags) - 1)], bags, g, kind="path")
    return GeneratedInstance(g, tuple(ham), rep, meta)


# -- outerplanar family -------------------------------------------------------------
def gen_outerplanar_family(i: int) -> GeneratedInstance:
    """O_1 = triangle; O_{j+1} stacks a new vertex on every outer edge of O_j."""
    if i < 1:
        raise ParameterError(f"generation must be >= 1, got {i}")
    cycle = [0, 1, 2]
    edges = {(0, 1), (1, 2), (0, 2)}
    bags = [[0, 1, 2]]
    host = []
    owner = {(0, 1): 0, (1, 2): 0, (0, 2): 0}
    nxt = 3
    for _ in range(i - 1):
        new_cycle = []
        for j, a in enumerate(cycle):
            b = cycle[(j + 1) % len(cycle)]
            w = nxt
            nxt += 1
            edges.update({(min(a, w), max(a, w)), (min(b, w), max(b, w))})
            node = len(bags)
            bags.append(sorted([a, b, w]))
            host.append((owner[(min(a, b), max(a, b))], node))
            owner[(min(a, w), max(a, w))] = node
            owner[(min(b, w), max(b, w))] = node
            new_cycle += [a, w]
        cycle = new_cycle
    g = Graph(nxt, edges)
    rep = from_bags(host, bags, g)
    return GeneratedInstance(g, tuple(cycle), rep, {"construction": "outerplanar", "generation": i,
                                                    "outer_cycle": list(cycle)})


# -- simple families ----------------------------------------------------------------
def gen_path_power(n: int, k: int) -> GeneratedInstance:
    """k-th power of P_n with its sliding-window path representation."""
    if n < 1 or k < 1:
        raise ParameterError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, min(n, i + k + 1))]
    g = Graph(n, edges)
    if n <= k + 1:
        bags = [list(range(n))]
    else:
        bags = [list(range(i, i + k + 1)) for i in range(n - k)]
    rep = from_bags([(t, t + 1) for t in range(len(bags) - 1)], bags, g, kind="path")
    return GeneratedInstance(g, tuple(range(n)), rep, {"construction": "path-power", "n": n, "k": k})


def gen_chained_cliques(q: int, s: int) -> GeneratedInstance:
    """q copies of K_s, consecutive copies sharing one cut vertex."""
    if q < 1 or s < 2:
        raise ParameterError(f"need q >= 1 and s >= 2, got q={q}, s={s}")
    bags = [list(range(i * (s - 1), i * (s - 1) + s)) for i in range(q)]
    edges = [(a, b) for bag in bags for x, a in enumerate(bag) for b in bag[x + 1:]]
    n = q * (s - 1) + 1
    g = Graph(n, edges)
    rep = from_bags([(t, t + 1) for t in range(q - 1)], bags, g, kind="path")
    return GeneratedInstance(g, tuple(range(n)), rep, {"construction": "chained-cliques", "q": q, "s": s})


# -- random instances ---------------------------------------------------------------
PROFILES = ("interval", "ktree-path-built", "bounded-degree")


def gen_random_validated(seed: int, profile: str, n: int | None = None, k: int | None = None,
                         delta: int | None = None) -> GeneratedInstance:
    """Deterministic random instance with a planted Hamiltonian path.

    ``interval``: random intervals of span < k along a line (width < k).
    ``ktree-path-built``: a (k-1)-tree grown so that a Hamiltonian path is
    maintained (treewidth < k).  ``bounded-degree``: a planted path plus
    random chords keeping maximum degree <= delta (no representation).
    """
    if profile not in PROFILES:
        raise ParameterError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    rng = random.Random(seed)
    n = 12 if n is None else n
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    meta = {"construction": "random", "profile": profile, "seed": seed, "n": n}
    if profile == "interval":
        k = 3 if k is None else k
        if k < 2:
            raise ParameterError(f"interval profile needs k >= 2, got {k}")
        meta["k"] = k
        return _random_interval(rng, n, k, meta)
    if profile == "ktree-path-built":
        k = 3 if k is None else k
        if k < 2 or n < k:
            raise ParameterError(f"ktree profile needs 2 <= k <= n, got n={n}, k={k}")
        meta["k"] = k
        return _random_ktree(rng, n, k, meta)
    delta = 3 if delta is None else delta
    if delta < 2 and n > 2:
        raise ParameterError(f"bounded-degree profile needs delta >= 2, got {delta}")
    meta["delta"] = delta
    return _random_bounded_degree(rng, n, delta, meta)


def _random_interval(rng: random.Random, n: int, k: int, meta: dict) -> GeneratedInstance:
    right = [min(n - 1, rng.randint(i + 1, i + k - 1)) if i < n - 1 else i for i in range(n)]
    edges = [(i, j) for i in range(n) for j in range(i + 1, right[i] + 1)]
    bags = [[v for v in range(max(0, t - k + 1), t + 1) if right[v] >= t] for t in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    g, ham, bags = _relabel(Graph(n, edges), range(n), bags, perm)
    rep = from_bags([(t, t + 1) for t in range(n - 1)], bags, g, kind="path")
    return GeneratedInstance(g, ham, rep, meta)


def _random_ktree(rng: random.Random, n: int, k: int, meta: dict) -> GeneratedInstance:
    """Grow a (k-1)-tree on n vertices while keeping a Hamiltonian path."""
    base = list(range(k))
    edges = [(a, b) for a in base for b in base if a < b]
    nxt = {v: v + 1 for v in range(k - 1)}
    prv = {v + 1: v for v in range(k - 1)}
    head, tail = 0, k - 1
    bags = [set(base)]
    host: list[tuple[int, int]] = []
    for v in range(k, n):
        while True:
            t = rng.randrange(len(bags))
            bag = bags[t]
            options = []
            if k >= 3:
                options += [("pair", a) for a in sorted(bag) if a in nxt and nxt[a] in bag]
            options += [("end", e) for e in (head, tail) if e in bag]
            if options:
                break
        how, a = rng.choice(options)
        keep = {a, nxt[a]} if how == "pair" else {a}
        others = sorted(bag - keep)
        drop = rng.choice(others)
        clique = bag - {drop}
        edges += [(min(v, w), max(v, w)) for w in clique]
        if how == "pair":
            b = nxt[a]
            nxt[a], prv[v], nxt[v], prv[b] = v, a, b, v
        elif a == tail:
            nxt[a], prv[v], tail = v, a, v
        else:
            prv[a], nxt[v], head = v, a, v
        host.append((t, len(bags)))
        bags.append(clique | {v})
    ham = [head]
    while ham[-1] in nxt:
        ham.append(nxt[ham[-1]])
    perm = list(range(n))
    rng.shuffle(perm)
    g, ham, bag_lists = _relabel(Graph(n, edges), ham, [sorted(b) for b in bags], perm)
    rep = from_bags(host, bag_lists, g)
    return GeneratedInstance(g, ham, rep, meta)


def _random_bounded_degree(rng: random.Random, n: int, delta: int, meta: dict) -> GeneratedInstance:
    order = list(range(n))
    rng.shuffle(order)
    edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    for _ in range(n * delta):
        a, b = rng.randrange(n), rng.randrange(n)
        e = (min(a, b), max(a, b))
        if a != b and e not in edges and deg[a] < delta and deg[b] < delta:
            edges.add(e)
            deg[a] += 1
            deg[b] += 1
    return GeneratedInstance(Graph(n, edges), tuple(order), None, meta)
