"""Exact exponential-time oracles for small graphs, plus the certificate verifier.

Vertex sets are Python ints used as bitmasks.  Searches visit candidates in
ascending id and use no randomness, so node counts are reproducible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from . import bounds
from .errors import InputError, InternalInvariantError, OracleCapError
from .graph import Graph, is_hamiltonian_path, is_induced_path

LIP_CAP = 32
CLIQUE_CAP = 64
HAM_CAP = 20


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: tuple | None
    nodes_explored: int
    time_limit_hit: bool = False

    @property
    def certifying(self) -> bool:
        return not self.time_limit_hit

    def to_dict(self) -> dict:
        return {"value": self.value, "witness": None if self.witness is None else list(self.witness),
                "nodes_explored": self.nodes_explored, "time_limit_hit": self.time_limit_hit}


class _Clock:
    def __init__(self, limit: float | None):
        self.deadline = None if limit is None else time.monotonic() + limit
        self.hit = False
        self.nodes = 0

    def tick(self) -> bool:
        self.nodes += 1
        if self.deadline is not None and self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            self.hit = True
        return self.hit


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _masks(g: Graph) -> list[int]:
    out = []
    for v in range(g.n):
        m = 0
        for w in g.neighbors(v):
            m |= 1 << w
        out.append(m)
    return out


def _check_cap(g: Graph, cap: int, what: str) -> None:
    if g.n > cap:
        raise OracleCapError(f"{what} oracle refuses a graph of order {g.n} (cap {cap})")


def _reach(adj: list[int], start: int, region: int) -> int:
    seen = start & region
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        nxt &= region & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _seed_path(g: Graph, adj: list[int]) -> list[int]:
    """Longest BFS shortest path: a cheap induced lower bound."""
    best: list[int] = []
    for s in range(g.n):
        parent = {s: -1}
        frontier = [s]
        last = frontier
        while frontier:
            last = frontier
            nxt = []
            for x in frontier:
                for y in g.neighbors(x):
                    if y not in parent:
                        parent[y] = x
                        nxt.append(y)
            frontier = nxt
        p = [min(last)]
        while parent[p[-1]] != -1:
            p.append(parent[p[-1]])
        if len(p) > len(best):
            best = p[::-1]
    return best


def longest_induced_path(g: Graph, cap: int = LIP_CAP, time_limit: float | None = None) -> OracleResult:
    """Maximum order of an induced path, by depth-first extension with pruning.

    A path grows from its start vertex ``s``; interior vertices close their
    neighborhoods.  Branches are cut when the vertices still reachable cannot
    beat the incumbent, and (path reversal) when the path could only end at
    an id below ``s``, since it was already found from the other end.
    """
    _check_cap(g, cap, "longest induced path")
    n = g.n
    if n == 0:
        return OracleResult(0, (), 0)
    adj = _masks(g)
    full = (1 << n) - 1
    best = _seed_path(g, adj)
    clock = _Clock(time_limit)
    path: list[int] = []

    def dfs(x: int, closed: int, s: int, above: int) -> None:
        nonlocal best
        if clock.tick():
            return
        if len(path) > len(best) and (len(path) == 1 or path[-1] > s):
            best = path[:]
        cands = adj[x] & ~closed
        if not cands:
            return
        closed2 = closed | adj[x] | (1 << x)
        region = full & ~closed | cands
        reach = _reach(adj, cands, region & ~(closed2 & ~cands))
        if len(path) + bin(reach).count("1") <= len(best):
            return
        if not reach & above:
            return
        for y in _bits(cands):
            path.append(y)
            dfs(y, closed2, s, above)
            path.pop()
            if clock.hit:
                return

    for s in range(n):
        above = full & ~((1 << (s + 1)) - 1)
        path.append(s)
        dfs(s, 1 << s, s, above)
        path.pop()
        if clock.hit:
            break
    witness = tuple(best)
    if not is_induced_path(g, witness):
        raise InternalInvariantError("oracle witness is not an induced path")
    return OracleResult(len(witness), witness, clock.nodes, clock.hit)


def max_clique(g: Graph, cap: int = CLIQUE_CAP, time_limit: float | None = None) -> OracleResult:
    """Maximum clique by branch and bound with a greedy-coloring bound."""
    _check_cap(g, cap, "max clique")
    n = g.n
    if n == 0:
        return OracleResult(0, (), 0)
    adj = _masks(g)
    clock = _Clock(time_limit)
    best: list[int] = [0]
    cur: list[int] = []

    def color_order(p: int) -> list[tuple[int, int]]:
        order = []
        color = 0
        rest = p
        while rest:
            color += 1
            q = rest
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
                order.append((v, color))
        return order

    def expand(p: int) -> None:
        nonlocal best
        if clock.tick():
            return
        for v, col in reversed(color_order(p)):
            if len(cur) + col <= len(best):
                return
            cur.append(v)
            np_ = p & adj[v]
            if np_:
                expand(np_)
            elif len(cur) > len(best):
                best = cur[:]
            cur.pop()
            p &= ~(1 << v)
            if clock.hit:
                return

    expand((1 << n) - 1)
    witness = tuple(sorted(best))
    if any(not g.has_edge(a, b) for i, a in enumerate(witness) for b in witness[i + 1:]):
        raise InternalInvariantError("oracle witness is not a clique")
    return OracleResult(len(witness), witness, clock.nodes, clock.hit)


def hamiltonian_path(g: Graph, cap: int = HAM_CAP, time_limit: float | None = None) -> OracleResult:
    """A Hamiltonian path, or value 0 and witness None after an exhaustive search.

    Prunes when the unvisited vertices plus the current end are disconnected
    or when more than one unvisited vertex could only be the final endpoint.
    """
    _check_cap(g, cap, "Hamiltonian path")
    n = g.n
    if n == 0:
        return OracleResult(0, (), 0)
    adj = _masks(g)
    full = (1 << n) - 1
    clock = _Clock(time_limit)
    path: list[int] = []

    def feasible(x: int, rest: int) -> bool:
        if not rest:
            return True
        region = rest | (1 << x)
        if _reach(adj, 1 << x, region) != region:
            return False
        dead = 0
        for v in _bits(rest):
            d = bin(adj[v] & region).count("1")
            if d <= 1:
                dead += 1
                if dead > 1:
                    return False
        return True

    def dfs(x: int, rest: int) -> bool:
        if clock.tick():
            return False
        if not rest:
            return True
        if not feasible(x, rest):
            return False
        for y in _bits(adj[x] & rest):
            path.append(y)
            if dfs(y, rest & ~(1 << y)):
                return True
            path.pop()
            if clock.hit:
                return False
        return False

    for s in range(n):
        path.append(s)
        if dfs(s, full & ~(1 << s)):
            witness = tuple(path)
            if not is_hamiltonian_path(g, witness):
                raise InternalInvariantError("oracle witness is not a Hamiltonian path")
            return OracleResult(n, witness, clock.nodes, clock.hit)
        path.pop()
        if clock.hit:
            break
    return OracleResult(0, None, clock.nodes, clock.hit)


class Verdict(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(g: Graph, cert) -> Verdict:
    """Independent re-check of a certificate against ``g``.

    Reasons: ``"ok"``, ``"malformed"``, ``"input hash"``, ``"not induced"``,
    ``"bound"``.
    """
    from .extractors import ExtractionCertificate

    try:
        if isinstance(cert, Mapping):
            cert = ExtractionCertificate.from_dict(cert)
        if not isinstance(cert, ExtractionCertificate):
            return Verdict(False, "malformed")
        params = dict(cert.params)
        if int(params.get("n", -1)) != g.n:
            return Verdict(False, "malformed")
    except (InputError, TypeError, ValueError):
        return Verdict(False, "malformed")
    if cert.input_sha256 != g.sha256():
        return Verdict(False, "input hash")
    path = cert.path
    if not path or any(not 0 <= v < g.n for v in path) or not is_induced_path(g, path):
        return Verdict(False, "not induced")
    try:
        ok = bounds.check_bound(cert.bound_kind, params, len(path))
    except InputError:
        return Verdict(False, "malformed")
    return Verdict(True, "ok") if ok else Verdict(False, "bound")
