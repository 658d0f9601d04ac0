"""Induced-path extractors.

Every extractor takes a graph, a Hamiltonian path of it and (usually) a
width-bounded representation, and returns an :class:`ExtractionCertificate`
whose path lives in the *input* graph.  The claimed bound is evaluated with
the exact checks of :mod:`inducedpaths.bounds`; ``verified`` records the
outcome and is never set by fiat.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import bounds
from .errors import (ClassError, InputError, InternalInvariantError, ParameterError, UnsupportedError,
                     ValidationError)
from .graph import (Graph, VertexPath, absorb_outside, canonical_json, check_hamiltonian, induced_subgraph,
                    is_induced_path, lift_induced_path, shortest_path, split_by_removal)
from .representations import (CycleRepresentation, PathRepresentation, TreeRepresentation, host_diameter_path,
                              make_varied, max_weight_path, path_weight, single_bag, torso)

ECC_ALL_SOURCES_LIMIT = 1000
ECC_SAMPLE_SIZE = 64


def _param(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass(frozen=True)
class ExtractionCertificate:
    """An induced path of the input graph together with the bound it claims."""

    path: VertexPath
    bound_kind: str
    params: Mapping = field(default_factory=dict)
    verified: bool = False
    input_sha256: str = ""

    @property
    def order(self) -> int:
        return len(self.path)

    def to_dict(self) -> dict:
        return {
            "bound_kind": self.bound_kind,
            "params": {k: _param(v) for k, v in self.params.items()},
            "path": list(self.path),
            "order": self.order,
            "verified": self.verified,
            "input_sha256": self.input_sha256,
        }

    def dumps(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "ExtractionCertificate":
        try:
            path = tuple(data["path"])
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in path):
                raise InputError("certificate path must be a list of integers")
            if data["order"] != len(path):
                raise InputError("certificate order disagrees with its path")
            if not isinstance(data["verified"], bool):
                raise InputError("certificate 'verified' must be a boolean")
            return cls(path, str(data["bound_kind"]), dict(data["params"]), data["verified"],
                       str(data["input_sha256"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed certificate JSON: {exc}") from exc


def certify(g: Graph, path: Sequence[int], kind: str, params: Mapping) -> ExtractionCertificate:
    """Re-check ``path`` in ``g`` and evaluate the named bound on its order."""
    path = tuple(path)
    if not is_induced_path(g, path):
        raise InternalInvariantError(f"extractor produced a non-induced path for bound {kind!r}")
    params = {k: _param(v) for k, v in params.items()}
    ok = bounds.check_bound(kind, params, len(path))
    return ExtractionCertificate(path, kind, params, ok, g.sha256())


def _need_path_rep(rep) -> PathRepresentation:
    if not isinstance(rep, PathRepresentation):
        raise ValidationError("a path representation is required", witness=type(rep).__name__)
    return rep


def _width_parameter(rep, k: int | None) -> int:
    if k is None:
        return rep.width + 1
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    if rep.width >= k:
        raise ValidationError(f"representation has width {rep.width}, not less than k={k}", witness=rep.width)
    return k


# -- pathwidth ------------------------------------------------------------------
def _segment_width(seg: Sequence[int], iv: Mapping[int, tuple[int, int]]) -> int:
    events: dict[int, int] = {}
    for v in seg:
        lo, hi = iv[v]
        events[lo] = events.get(lo, 0) + 1
        events[hi + 1] = events.get(hi + 1, 0) - 1
    cur = best = 0
    for t in sorted(events):
        cur += events[t]
        best = max(best, cur)
    return best - 1


def _pathwidth_core(g: Graph, seg: Sequence[int], iv: Mapping[int, tuple[int, int]], k: int) -> list[int]:
    """Induced path of ``g[seg]`` with (3L)^k >= |seg|.

    ``seg`` is a Hamiltonian path of ``g[seg]`` and ``iv`` gives each vertex's
    interval in a path representation of width < k.
    """
    best: list[int] = []
    seg = list(seg)
    while seg:
        sset = set(seg)
        left = min(iv[v][0] for v in seg)
        right = max(iv[v][1] for v in seg)
        u = min(v for v in seg if iv[v][0] == left)
        v = min(w for w in seg if iv[w][1] == right)
        q = list(shortest_path(g, u, v, allowed=sset))
        if len(q) == 1 and len(seg) >= 2:
            q.append(min(w for w in g.neighbors(u) if w in sset))
        q = _extend_induced(g, q, sset)
        if len(q) > len(best):
            best = q
        if bounds.pathwidth_ok(len(q), len(seg), k):
            break
        rest = split_by_removal_segment(seg, set(q))
        if not rest:
            break
        if k <= 1:
            raise InternalInvariantError("width-0 segment with more than one vertex")
        w_before = _segment_width(seg, iv)
        if _segment_width(rest, iv) >= w_before:
            raise InternalInvariantError("removing the boundary path did not reduce the width")
        seg, k = rest, k - 1
    return best


def _extend_induced(g: Graph, q: list[int], allowed: set[int]) -> list[int]:
    """Greedily grow an induced path at both ends (least-id neighbor first)."""
    on = set(q)
    for at_end in (True, False):
        while True:
            e = q[-1] if at_end else q[0]
            grown = False
            for w in g.neighbors(e):
                if w in allowed and w not in on and all(y == e or y not in on for y in g.neighbors(w)):
                    if at_end:
                        q.append(w)
                    else:
                        q.insert(0, w)
                    on.add(w)
                    grown = True
                    break
            if not grown:
                break
    return q


def split_by_removal_segment(seg: Sequence[int], x: set[int]) -> list[int]:
    """Longest run of ``seg`` avoiding ``x`` (first one on ties)."""
    best: list[int] = []
    cur: list[int] = []
    for v in seg:
        if v in x:
            if len(cur) > len(best):
                best = cur
            cur = []
        else:
            cur.append(v)
    return cur if len(cur) > len(best) else best


def extract_pathwidth(g: Graph, ham: Sequence[int], rep: PathRepresentation, k: int | None = None) -> ExtractionCertificate:
    """Induced path of order L with (3L)^k >= n, given a path representation of width < k."""
    ham = check_hamiltonian(g, ham)
    rep = _need_path_rep(rep).validate(g)
    k = _width_parameter(rep, k)
    if g.n == 0:
        raise InputError("graph has no vertices")
    iv = {v: rep.interval(v) for v in range(g.n)}
    path = _pathwidth_core(g, ham, iv, k)
    return certify(g, path, "pathwidth", {"n": g.n, "k": k})


# -- treewidth -----------------------------------------------------------------
def contract_to_path_rep(g: Graph, ham: Sequence[int], rep: TreeRepresentation, p: Sequence[int]):
    """Contract Hamiltonian-path edges until every model meets the host path ``p``.

    Returns ``(H, m, rep_H, ham_H)``: the contracted graph, the contraction
    map, the path representation of ``H`` on ``p`` and the image of ``ham``.
    The order of ``H`` equals the weight of ``p``.
    """
    ham = check_hamiltonian(g, ham)
    if not rep.is_host_path(p):
        raise InputError(f"{list(p)} is not a path of the host")
    pset = set(p)
    pos = {t: i for i, t in enumerate(p)}
    anchored = [v for v in range(g.n) if not rep.models[v].isdisjoint(pset)]
    if not anchored:
        raise InternalInvariantError("no vertex meets the host path")
    H, m, ham_h = absorb_outside(g, ham, anchored)
    models = [{pos[t] for t in rep.models[s] if t in pos} for s in m.survivors]
    rep_h = PathRepresentation(len(p), models).validate(H)
    if H.n != path_weight(rep, p):
        raise InternalInvariantError("contracted order differs from the host path weight")
    if rep_h.width > rep.width:
        raise InternalInvariantError("contraction increased the width")
    return H, m, rep_h, ham_h


def extract_treewidth(g: Graph, ham: Sequence[int], rep: TreeRepresentation, k: int | None = None) -> ExtractionCertificate:
    """Induced path of order L with 2^((4L)^k) >= n, given a tree representation of width < k."""
    ham = check_hamiltonian(g, ham)
    rep.validate(g)
    k = _width_parameter(rep, k)
    if g.n == 0:
        raise InputError("graph has no vertices")
    if g.n <= k:
        inner = extract_pathwidth(g, ham, single_bag(g.n), k)
        return certify(g, inner.path, "treewidth", {"n": g.n, "k": k})
    rv, _ = make_varied(rep)
    p, _w = max_weight_path(rv)
    H, m, rep_h, ham_h = contract_to_path_rep(g, ham, rv, p)
    iv = {v: rep_h.interval(v) for v in range(H.n)}
    inner = _pathwidth_core(H, ham_h, iv, k)
    path = lift_induced_path(g, m, inner)
    return certify(g, path, "treewidth", {"n": g.n, "k": k})


# -- bounded degree ------------------------------------------------------------
def _bfs_far(adj: Sequence[Sequence[int]], s: int) -> tuple[list[int], bool]:
    """Shortest path from ``s`` to the least-id farthest vertex; flag if not all reached."""
    n = len(adj)
    parent = [-2] * n
    parent[s] = -1
    frontier = [s]
    last = frontier
    reached = 1
    while frontier:
        last = frontier
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if parent[y] == -2:
                    parent[y] = x
                    nxt.append(y)
        reached += len(nxt)
        frontier = nxt
    t = min(last)
    out = [t]
    while parent[out[-1]] != -1:
        out.append(parent[out[-1]])
    return out[::-1], reached == n


def _eccentric_longest(g: Graph, sources: Iterable[int]) -> list[int]:
    adj = g.adjacency
    best: list[int] = []
    for s in sources:
        p, ok = _bfs_far(adj, s)
        if not ok:
            raise InputError(f"graph is disconnected: vertex {s} does not reach every vertex")
        if len(p) > len(best):
            best = p
    return best


def _ecc_sources(g: Graph, ham: Sequence[int] | None, seed: int) -> list[int]:
    if g.n <= ECC_ALL_SOURCES_LIMIT:
        return list(range(g.n))
    ends = {ham[0], ham[-1]} if ham else {0}
    sample = random.Random(seed).sample(range(g.n), ECC_SAMPLE_SIZE)
    return sorted(ends | set(sample))


def extract_bounded_degree(g: Graph, ham: Sequence[int] | None = None, *, c=None, d=None,
                           seed: int = 0) -> ExtractionCertificate:
    """Longest eccentric shortest path; certifies delta^L >= n.

    With ``c`` and ``d`` (degree at most 2^(c (log n)^d)) the certificate
    instead claims c L >= (log2 n)^(1-d), plus the plain degree bound.
    """
    if g.n == 0:
        raise InputError("graph has no vertices")
    if ham is not None:
        ham = check_hamiltonian(g, ham)
    delta = g.max_degree()
    if delta <= 1 and g.n > 2:
        raise InputError(f"maximum degree {delta} with {g.n} vertices: graph is disconnected")
    path = _eccentric_longest(g, _ecc_sources(g, ham, seed))
    if c is None and d is None:
        return certify(g, path, "bounded-degree", {"n": g.n, "delta": delta})
    c, d = bounds.as_fraction(c), bounds.as_fraction(d)
    _check_cd(c, d)
    # hypothesis: log2(delta) <= c (log2 n)^d
    if delta >= 2 and not _log_le(delta, c, g.n, d):
        raise ClassError(f"maximum degree {delta} exceeds 2^(c (log n)^d) for c={c}, d={d}")
    return certify(g, path, "subpolynomial-degree", {"n": g.n, "delta": delta, "c": c, "d": d})


def _log_le(delta: int, c: Fraction, n: int, d: Fraction) -> bool:
    """log2(delta) <= c (log2 n)^d, decided conservatively (undecided -> False)."""
    from mpmath import iv

    return bounds._decide(lambda: iv.mpf(c.numerator) / c.denominator * bounds._iv_log2(n) ** bounds._iv_frac(d)
                          - bounds._iv_log2(delta))


def _check_cd(c: Fraction, d: Fraction) -> None:
    if not (0 < c <= Fraction(1, 3)):
        raise ParameterError(f"c must lie in (0, 1/3], got {c}")
    if not (0 < d <= 1):
        raise ParameterError(f"d must lie in (0, 1], got {d}")


# -- base extractors -----------------------------------------------------------
class BaseExtractor:
    """Extractor for a graph class with a guarantee ``L >= c (log2 n)^d``.

    Subclasses override :meth:`accepts` and :meth:`find_path`; alternatively
    pass plain callables.  The declared constants are re-checked on every
    call and a shortfall is an error, never a silently weaker certificate.
    """

    name = "base"

    def __init__(self, c, d, find_path: Callable | None = None, accepts: Callable | None = None,
                 name: str | None = None):
        self.c = bounds.as_fraction(c)
        self.d = bounds.as_fraction(d)
        _check_cd(self.c, self.d)
        self._find = find_path
        self._accepts = accepts
        if name is not None:
            self.name = name

    def accepts(self, g: Graph) -> bool:
        return True if self._accepts is None else bool(self._accepts(g))

    def find_path(self, g: Graph, ham: VertexPath) -> Sequence[int]:
        if self._find is None:
            raise NotImplementedError
        return self._find(g, ham)

    def extract(self, g: Graph, ham: Sequence[int]) -> ExtractionCertificate:
        ham = check_hamiltonian(g, ham)
        if not self.accepts(g):
            raise ClassError(f"graph rejected by base extractor {self.name!r}")
        path = tuple(self.find_path(g, ham))
        cert = certify(g, path, "log-power", {"n": g.n, "c": self.c, "d": self.d})
        if not cert.verified:
            raise InternalInvariantError(
                f"base extractor {self.name!r} returned order {len(path)} below its declared bound")
        return cert

    def __repr__(self) -> str:
        return f"{type(self).__name__}(c={self.c}, d={self.d})"


def _longest_eccentric_or_edge(g: Graph, ham: VertexPath) -> list[int]:
    if g.n == 0:
        return []
    path = _eccentric_longest(g, _ecc_sources(g, ham, 0))
    if len(path) < 2 <= g.n:
        path = [ham[0], ham[1]]
    return path


class BoundedDegreeBase(BaseExtractor):
    """Graphs of maximum degree at most ``delta``: c = min(1/3, 1/ceil(log2 delta)), d = 1."""

    name = "bounded-degree"

    def __init__(self, delta: int):
        if delta < 1:
            raise ParameterError(f"delta must be positive, got {delta}")
        self.delta = delta
        D = max(1, bounds.ceil_log2(delta))
        super().__init__(min(Fraction(1, 3), Fraction(1, D)), 1)

    def accepts(self, g: Graph) -> bool:
        return g.max_degree() <= self.delta

    def find_path(self, g: Graph, ham: VertexPath) -> Sequence[int]:
        return _longest_eccentric_or_edge(g, ham)


def find_modulator(g: Graph, k: int, delta: int) -> frozenset[int] | None:
    """A smallest set X with |X| <= k and max degree of g - X at most delta, or None.

    Bounded search tree: a vertex of too-high degree is either in X or has one
    of any delta+1 of its remaining neighbors in X.
    """
    adj = g.adjacency

    def search(x: set[int], budget: int) -> frozenset[int] | None:
        bad = next((v for v in range(g.n) if v not in x and sum(1 for w in adj[v] if w not in x) > delta), None)
        if bad is None:
            return frozenset(x)
        if budget == 0:
            return None
        choices = [bad] + [w for w in adj[bad] if w not in x][:delta + 1]
        for v in choices:
            x.add(v)
            found = search(x, budget - 1)
            x.discard(v)
            if found is not None:
                return found
        return None

    for budget in range(k + 1):
        found = search(set(), budget)
        if found is not None:
            return found
    return None


class AlmostBoundedDegreeBase(BaseExtractor):
    """Graphs that become degree-``delta`` after deleting at most ``k`` vertices.

    Constants: c = 1/(3 D K) with D = max(1, ceil log2 delta) and
    K = ceil log2(k + 2); d = 1.
    """

    name = "almost-bounded-degree"

    def __init__(self, k: int, delta: int):
        if k < 0 or delta < 1:
            raise ParameterError(f"need k >= 0 and delta >= 1, got k={k}, delta={delta}")
        self.k, self.delta = k, delta
        D = max(1, bounds.ceil_log2(delta))
        K = max(1, bounds.ceil_log2(k + 2))
        super().__init__(Fraction(1, 3 * D * K), 1)

    def accepts(self, g: Graph) -> bool:
        return find_modulator(g, self.k, self.delta) is not None

    def find_path(self, g: Graph, ham: VertexPath) -> Sequence[int]:
        x = find_modulator(g, self.k, self.delta)
        if x is None:
            raise ClassError("no modulator found")
        if not x:
            return _longest_eccentric_or_edge(g, ham)
        segs = split_by_removal(g, ham, x)
        path: list[int] = []
        if segs:
            seg = segs[0]
            h, idx = induced_subgraph(g, seg)
            inv = {i: v for v, i in idx.items()}
            inner = _longest_eccentric_or_edge(h, tuple(idx[v] for v in seg))
            path = [inv[i] for i in inner]
        if len(path) < 2 <= g.n:
            path = [ham[0], ham[1]]
        return path


def extract_with_modulator(g: Graph, ham: Sequence[int], x: Iterable[int], base: BaseExtractor) -> ExtractionCertificate:
    """Run ``base`` on the longest Hamiltonian segment of ``g - x``."""
    ham = check_hamiltonian(g, ham)
    x = set(x)
    segs = split_by_removal(g, ham, x)
    if not segs:
        raise InputError("the modulator contains every vertex")
    seg = segs[0]
    h, idx = induced_subgraph(g, seg)
    if not base.accepts(h):
        raise ClassError(f"segment of order {len(seg)} rejected by base extractor {base.name!r}")
    inner = base.extract(h, tuple(idx[v] for v in seg))
    inv = {i: v for v, i in idx.items()}
    path = [inv[i] for i in inner.path]
    return certify(g, path, "modulator", {
        "n": g.n, "x_size": len(x), "n_seg": len(seg),
        "base": {"bound_kind": inner.bound_kind, "params": dict(inner.params)},
    })


# -- adhesion and tree composition -----------------------------------------------
def _at_least_edge(path: Sequence[int], ham: VertexPath) -> Sequence[int]:
    """Any edge is an induced path, so never settle for a single vertex."""
    return ham[:2] if len(path) < 2 <= len(ham) else path


def _z_sets(rep: PathRepresentation) -> list[frozenset[int]]:
    out = []
    for r in range(rep.num_nodes):
        nbrs = rep.host_adj[r]
        adh: set[int] = set()
        for s in nbrs:
            adh |= rep.adhesion_set(r, s)
        private = [v for v in rep.bag(r) if all(v not in rep.bag_set(s) for s in nbrs)]
        out.append(frozenset(adh | {private[0]}) if private else rep.bag_set(r))
    return out


def extract_adhesion_pathrep(g: Graph, ham: Sequence[int], rep: PathRepresentation, a: int | None = None) -> ExtractionCertificate:
    """Induced path of order L with (3L)^(2a) >= number of host nodes.

    Requires a varied path representation of adhesion < a.
    """
    ham = check_hamiltonian(g, ham)
    rep = _need_path_rep(rep).validate(g)
    if not rep.varied:
        raise ValidationError("representation is not varied; apply make_varied first")
    if a is None:
        a = max(2, rep.adhesion + 1)
    if a < 2:
        raise ParameterError(f"a must be at least 2 for a connected graph, got {a}")
    if rep.adhesion >= a:
        raise ValidationError(f"adhesion {rep.adhesion} is not less than a={a}", witness=rep.adhesion)
    ell = rep.num_nodes
    z = _z_sets(rep)
    s = set().union(*z)
    H, m, ham_h = absorb_outside(g, ham, s)
    models = []
    for sv in m.survivors:
        mdl: set[int] = set()
        for v in m.branch_sets[sv]:
            mdl |= rep.models[v]
        models.append(mdl)
    rep_h = PathRepresentation(ell, models).validate(H)
    idx = m.compact()
    for r in range(ell):
        if rep_h.bag_set(r) != frozenset(idx[v] for v in z[r]):
            raise InternalInvariantError(f"bag at node {r} differs from its Z set after contraction")
    if rep_h.width > 2 * a - 1 or not rep_h.varied:
        raise InternalInvariantError(f"contracted representation has width {rep_h.width} or is not varied")
    iv = {v: rep_h.interval(v) for v in range(H.n)}
    inner = _pathwidth_core(H, ham_h, iv, 2 * a)
    path = _at_least_edge(lift_induced_path(g, m, inner), ham)
    return certify(g, path, "adhesion", {"n": g.n, "ell": ell, "a": a, "width_h": rep_h.width})


def _bases_for(rep: TreeRepresentation, base) -> dict[int, BaseExtractor]:
    if isinstance(base, BaseExtractor):
        return {t: base for t in range(rep.num_nodes)}
    out = {}
    for t in range(rep.num_nodes):
        if t not in base:
            raise InputError(f"no base extractor for host node {t}")
        out[t] = base[t]
    return out


def extract_tree_composition(g: Graph, ham: Sequence[int], rep: TreeRepresentation, base, a: int | None = None,
                             *, strategy: str = "auto", shortcut: bool = True,
                             check_torsos: bool = True) -> ExtractionCertificate:
    """Induced path of order L >= c (log2 n)^(d/(4ad+1)) for tree compositions of a base class.

    ``base`` is a :class:`BaseExtractor` or a map host node -> extractor; the
    certificate uses the smallest ``c`` and ``d`` among them.  ``strategy``
    may force the ``"big-bag"`` or ``"long-path"`` branch for testing.
    """
    ham = check_hamiltonian(g, ham)
    rep.validate(g)
    if not rep.varied:
        raise ValidationError("representation is not varied; apply make_varied first")
    if a is None:
        a = rep.adhesion + 1
    if a < 1 or rep.adhesion >= a:
        raise ValidationError(f"adhesion {rep.adhesion} is not less than a={a}", witness=rep.adhesion)
    if strategy not in ("auto", "big-bag", "long-path"):
        raise ParameterError(f"unknown strategy {strategy!r}")
    bases = _bases_for(rep, base)
    c = min(b.c for b in bases.values())
    d = min(b.d for b in bases.values())
    n = g.n
    params = {"n": n, "a": a, "c": c, "d": d}
    if check_torsos:
        for t in range(rep.num_nodes):
            if not bases[t].accepts(torso(rep, g, t)):
                raise ClassError(f"torso at node {t} rejected by base extractor {bases[t].name!r}")

    e = bounds.tree_composition_exponent(a, d)
    if shortcut and strategy == "auto" and bounds.log_power_ge(2, c, n, e):
        path = ham[:2]
        return certify(g, path, "tree-composition", dict(params, branch="trivial"))

    eps = bounds.tree_composition_epsilon(a, d)
    t_big = min(range(rep.num_nodes), key=lambda t: (-len(rep.bag(t)), t))
    use_big = strategy == "big-bag" or (strategy == "auto" and (
        rep.num_nodes == 1 or bounds.big_bag(len(rep.bag(t_big)), n, eps)))

    if use_big:
        t = t_big
        H, m, ham_h = absorb_outside(g, ham, rep.bag(t))
        tor = torso(rep, g, t)
        # survivors are the sorted bag, which is also the torso's vertex order
        for u, v in H.edges():
            if not tor.has_edge(u, v):
                raise InternalInvariantError(f"contracted graph is not a subgraph of the torso at node {t}")
        if not bases[t].accepts(H):
            raise ClassError(f"contracted bag at node {t} rejected by base extractor {bases[t].name!r}")
        inner = bases[t].extract(H, ham_h)
        path = lift_induced_path(g, m, inner.path)
        return certify(g, path, "tree-composition", dict(params, branch="big-bag", node=t))

    r = host_diameter_path(rep)
    H, m, rep_h, ham_h = contract_to_path_rep(g, ham, rep, r)
    if not rep_h.varied:
        raise InternalInvariantError("path representation along the host diameter is not varied")
    inner = extract_adhesion_pathrep(H, ham_h, rep_h, max(a, 2))
    path = _at_least_edge(lift_induced_path(g, m, inner.path), ham)
    return certify(g, path, "tree-composition", dict(params, branch="long-path", host_path=len(r)))


# -- vortex ---------------------------------------------------------------------
def extract_from_vortex(g: Graph, ham: Sequence[int], vortex: CycleRepresentation, k: int | None = None) -> ExtractionCertificate:
    """Induced path of order L with (3L)^k >= ceil(log2 n) from a long vortex cycle.

    For each cycle node u, the facial cycle minus the vertices of the bag at u
    splits into arcs; the longest arc over all u (least u on ties) induces a
    graph with a path representation of width < k on the cycle cut at u.
    """
    ham = check_hamiltonian(g, ham)
    if not isinstance(vortex, CycleRepresentation) or vortex.cycle_vertices is None:
        raise ValidationError("a cycle representation with its facial cycle vertices is required")
    vortex.validate(g)
    k = _width_parameter(vortex, k)
    m = vortex.num_nodes
    need = (k + 1) * (bounds.ceil_log2(g.n) + 1)
    if m < need:
        raise InputError(f"vortex cycle has {m} nodes, fewer than the required {need}")
    cv = vortex.cycle_vertices
    best_u, best_arc = -1, []
    for u in range(m):
        blocked = set(vortex.bag(u))
        cur: list[int] = []
        # walk once around starting just after u; node u itself is blocked
        for step in range(1, m + 1):
            x = cv[(u + step) % m]
            if x in blocked:
                if len(cur) > len(best_arc):
                    best_u, best_arc = u, cur
                cur = []
            else:
                cur.append(x)
        if len(cur) > len(best_arc):
            best_u, best_arc = u, cur
    u = best_u
    h, idx = induced_subgraph(g, best_arc)
    models = [set() for _ in range(h.n)]
    for v, i in idx.items():
        for t in vortex.models[v]:
            if t == u:
                raise InternalInvariantError(f"model of arc vertex {v} contains the cut node")
            models[i].add((t - u - 1) % m)
    rep_h = PathRepresentation(m - 1, models).validate(h)
    inv = {i: v for v, i in idx.items()}
    ham_h = [idx[v] for v in best_arc]
    iv = {i: rep_h.interval(i) for i in range(h.n)}
    inner = _pathwidth_core(h, ham_h, iv, k)
    path = [inv[i] for i in inner]
    return certify(g, path, "vortex", {"n": g.n, "k": k, "arc": len(best_arc), "cut_node": u})


# -- master --------------------------------------------------------------------
def _base_for_kind(node: int, entry: Mapping, plugins: Mapping, cache: dict) -> BaseExtractor:
    kind = entry.get("kind")
    if kind == "almost-bounded-degree":
        key = (int(entry.get("k", 0)), int(entry["delta"]))
        if key not in cache:
            cache[key] = AlmostBoundedDegreeBase(*key)
        return cache[key]
    if kind in plugins:
        return plugins[kind]
    raise UnsupportedError(f"no extractor for torso kind {kind!r} at node {node}")


def extract_master(g: Graph, ham: Sequence[int], rep: TreeRepresentation, torso_kinds: Mapping,
                   plugins: Mapping[str, BaseExtractor] | None = None, **kwargs) -> ExtractionCertificate:
    """Dispatch a torso-annotated tree representation to the tree-composition extractor.

    ``torso_kinds`` maps host node -> ``{"kind": "almost-bounded-degree", "k":
    .., "delta": ..}`` or ``{"kind": "almost-embeddable", ...}``; the latter
    needs a plug-in registered under the same kind name in ``plugins``.
    """
    plugins = dict(plugins or {})
    rep.validate(g)
    kinds = {}
    for t in range(rep.num_nodes):
        key = t if t in torso_kinds else str(t)
        if key not in torso_kinds:
            raise InputError(f"no torso kind given for node {t}")
        kinds[t] = torso_kinds[key]
    cache: dict = {}
    node_base = {t: _base_for_kind(t, kinds[t], plugins, cache) for t in range(rep.num_nodes)}
    rv, node_map = make_varied(rep)
    bases = {}
    for t in sorted(node_map):
        nt = node_map[t]
        if nt not in bases and rep.bag_set(t) == rv.bag_set(nt):
            bases[nt] = node_base[t]
    return extract_tree_composition(g, ham, rv, bases, rv.adhesion + 1, **kwargs)
