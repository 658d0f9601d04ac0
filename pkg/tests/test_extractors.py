import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from inducedpaths import bounds
from inducedpaths.errors import (ClassError, InputError, ParameterError, UnsupportedError, ValidationError,
                                 WitnessError)
from inducedpaths.extractors import (AlmostBoundedDegreeBase, BaseExtractor, BoundedDegreeBase,
                                     ExtractionCertificate, contract_to_path_rep, extract_adhesion_pathrep,
                                     extract_bounded_degree, extract_from_vortex, extract_master,
                                     extract_pathwidth, extract_tree_composition, extract_treewidth,
                                     extract_with_modulator, find_modulator)
from inducedpaths.generators import (gen_chained_cliques, gen_outerplanar_family, gen_path_power,
                                     gen_random_validated, gen_worstcase_interval)
from inducedpaths.graph import Graph, complete_graph, cycle_graph, hypercube_graph, is_induced_path, path_graph
from inducedpaths.oracle import longest_induced_path, verify_certificate
from inducedpaths.representations import (CycleRepresentation, from_bags, make_varied, max_weight_path,
                                          path_weight, single_bag)


def check(g, cert, oracle=True):
    """Common post-conditions: induced, verified, independently re-verified, dominated by the optimum."""
    assert is_induced_path(g, cert.path)
    assert cert.verified, cert.to_dict()
    assert verify_certificate(g, cert)
    if oracle and g.n <= 22:
        assert cert.order <= longest_induced_path(g).value
    return cert


def natural_path_rep(n):
    return from_bags([(i, i + 1) for i in range(n - 2)], [[i, i + 1] for i in range(n - 1)], path_graph(n), kind="path")


def wheel(k):
    g = Graph(k + 1, [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)])
    return g, [k] + list(range(k))


def cycle_tail_instance():
    """A 20-cycle with a two-vertex tail; one large bag and two small ones."""
    g = Graph(22, [(i, i + 1) for i in range(21)] + [(0, 19)])
    rep = from_bags([(0, 1), (1, 2)], [list(range(20)), [19, 20], [20, 21]], g)
    return g, list(range(21, -1, -1)), rep


# -- certificates ----------------------------------------------------------------------------
def test_certificate_json_round_trip():
    inst = gen_worstcase_interval(15, 3)
    cert = extract_pathwidth(inst.graph, inst.ham, inst.rep)
    data = json.loads(cert.dumps())
    assert ExtractionCertificate.from_dict(data) == cert
    assert data["input_sha256"] == inst.graph.sha256()


def test_certificate_params_with_fractions_round_trip():
    g, ham = wheel(12)
    cert = AlmostBoundedDegreeBase(1, 2).extract(g, ham)
    back = ExtractionCertificate.from_dict(json.loads(cert.dumps()))
    assert back.dumps() == cert.dumps()
    assert verify_certificate(g, back)


# -- pathwidth -----------------------------------------------------------------------------------
def test_pathwidth_on_path_returns_whole_path():
    for n in (2, 5, 9, 30):
        cert = check(path_graph(n), extract_pathwidth(path_graph(n), list(range(n)), natural_path_rep(n)))
        assert cert.order == n


def test_pathwidth_on_clique_returns_edge():
    for n in (2, 4, 7):
        g = complete_graph(n)
        cert = check(g, extract_pathwidth(g, list(range(n)), single_bag(n), k=n))
        assert cert.order == 2


def test_pathwidth_worstcase_15_3():
    inst = gen_worstcase_interval(15, 3)
    assert inst.n == 28
    cert = check(inst.graph, extract_pathwidth(inst.graph, inst.ham, inst.rep, k=3), oracle=False)
    assert cert.order >= 2 and (3 * cert.order) ** 3 >= 28
    assert cert.order <= longest_induced_path(inst.graph).value == 7


def test_pathwidth_rejects_wide_rep():
    inst = gen_path_power(10, 3)
    with pytest.raises(ValidationError):
        extract_pathwidth(inst.graph, inst.ham, inst.rep, k=2)


def test_pathwidth_rejects_bad_ham():
    with pytest.raises(WitnessError):
        extract_pathwidth(path_graph(4), [0, 2, 1, 3], natural_path_rep(4))


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_pathwidth_bound_on_random_intervals(seed):
    rng = random.Random(seed)
    inst = gen_random_validated(seed, "interval", n=rng.randint(1, 60), k=rng.randint(2, 6))
    k = inst.rep.width + 1
    cert = check(inst.graph, extract_pathwidth(inst.graph, inst.ham, inst.rep))
    assert (3 * cert.order) ** k >= inst.n


# -- contraction to a path representation ---------------------------------------------------------------
def test_contract_whole_host_is_identity():
    n = 7
    g, rep = path_graph(n), natural_path_rep(n)
    h, m, rep_h, ham_h = contract_to_path_rep(g, list(range(n)), rep, list(range(n - 1)))
    assert h == g and not m.steps and list(ham_h) == list(range(n))


def test_contract_star_one_edge():
    g = path_graph(4)
    rep = from_bags([(0, 1), (0, 2), (0, 3)], [[1, 2], [0, 1], [2, 3], [1]], g)
    h, m, rep_h, _ = contract_to_path_rep(g, [0, 1, 2, 3], rep, [1, 0])
    assert len(m.steps) == 1 and h.n == 3 == path_weight(rep, [1, 0])
    assert rep_h.num_nodes == 2


@given(st.integers(0, 10**6))
def test_contract_order_equals_weight(seed):
    inst = gen_random_validated(seed, "ktree-path-built", n=8 + seed % 30, k=3)
    rv, _ = make_varied(inst.rep)
    p, w = max_weight_path(rv)
    h, m, rep_h, ham_h = contract_to_path_rep(inst.graph, inst.ham, rv, p)
    assert h.n == w
    assert rep_h.width <= rv.width
    rep_h.validate(h)


# -- treewidth ---------------------------------------------------------------------------------------------
def test_treewidth_on_path():
    n = 12
    cert = check(path_graph(n), extract_treewidth(path_graph(n), list(range(n)), natural_path_rep(n)))
    assert cert.order == n


def test_treewidth_n_equals_k():
    g = complete_graph(4)
    cert = check(g, extract_treewidth(g, [0, 1, 2, 3], single_bag(4), k=4))
    assert cert.order == 2


@pytest.mark.parametrize("seed", range(5))
def test_treewidth_random_2tree_50(seed):
    inst = gen_random_validated(seed, "ktree-path-built", n=50, k=3)
    assert inst.rep.width == 2
    cert = check(inst.graph, extract_treewidth(inst.graph, inst.ham, inst.rep, k=3))
    assert 2 ** ((4 * cert.order) ** 3) >= 50
    assert cert.order <= longest_induced_path(inst.graph, cap=64).value


@given(st.integers(0, 10**6))
def test_treewidth_bound_on_random_ktrees(seed):
    rng = random.Random(seed)
    k = rng.randint(2, 4)
    inst = gen_random_validated(seed, "ktree-path-built", n=rng.randint(k, 60), k=k)
    cert = check(inst.graph, extract_treewidth(inst.graph, inst.ham, inst.rep, k=k))
    assert bounds.treewidth_ok(cert.order, inst.n, k)


def test_treewidth_outerplanar():
    for i in range(1, 5):
        inst = gen_outerplanar_family(i)
        check(inst.graph, extract_treewidth(inst.graph, inst.ham, inst.rep))


# -- bounded degree --------------------------------------------------------------------------------------------
@pytest.mark.parametrize("n", [4, 5, 10, 33])
def test_bounded_degree_cycle(n):
    g = cycle_graph(n)
    cert = check(g, extract_bounded_degree(g, list(range(n))))
    assert cert.order == n // 2 + 1


def test_bounded_degree_cube():
    g = hypercube_graph(3)
    cert = check(g, extract_bounded_degree(g))
    assert cert.order == 4


def test_bounded_degree_binary_tree_without_ham():
    n = 31
    g = Graph(n, [(i, (i - 1) // 2) for i in range(1, n)])
    cert = extract_bounded_degree(g)
    assert cert.order == 9 and cert.verified


def test_bounded_degree_rejects_degree_one():
    with pytest.raises(InputError):
        extract_bounded_degree(Graph(4, [(0, 1), (2, 3)]))


def test_subpolynomial_degree_form():
    g = cycle_graph(64)
    cert = extract_bounded_degree(g, list(range(64)), c=Fraction(1, 3), d=Fraction(3, 4))
    assert cert.bound_kind == "subpolynomial-degree" and cert.verified
    with pytest.raises(ParameterError):
        extract_bounded_degree(g, c=1, d=1)
    with pytest.raises(ClassError):
        extract_bounded_degree(complete_graph(8), c=Fraction(1, 3), d=Fraction(1, 10))


@given(st.integers(0, 10**6))
def test_bounded_degree_bound_on_random(seed):
    rng = random.Random(seed)
    inst = gen_random_validated(seed, "bounded-degree", n=rng.randint(3, 300), delta=rng.randint(2, 5))
    cert = check(inst.graph, extract_bounded_degree(inst.graph, inst.ham))
    assert inst.graph.max_degree() ** cert.order >= inst.n


# -- base extractors and modulators ------------------------------------------------------------------------------
def test_modulator_endpoint():
    g = cycle_graph(10)
    cert = check(g, extract_with_modulator(g, list(range(10)), {0}, BoundedDegreeBase(2)))
    assert cert.params["n_seg"] == 9 and cert.order == 9


def test_modulator_fan_recovers_path():
    n = 12
    g = Graph(n, [(i, i + 1) for i in range(n - 2)] + [(i, n - 1) for i in range(n - 1)])
    ham = [n - 1] + list(range(n - 1))
    cert = check(g, extract_with_modulator(g, ham, {n - 1}, BoundedDegreeBase(2)))
    assert cert.order == n - 1


@pytest.mark.parametrize("k", [6, 12, 21])
def test_modulator_wheel(k):
    g, ham = wheel(k)
    cert = check(g, extract_with_modulator(g, ham, {k}, BoundedDegreeBase(2)))
    assert cert.order >= k // 2


def test_modulator_class_error():
    g, ham = wheel(8)
    with pytest.raises(ClassError):
        # the longest segment keeps the hub with three rim neighbors
        extract_with_modulator(g, ham, {3}, BoundedDegreeBase(2))


def test_find_modulator():
    g, _ = wheel(8)
    assert find_modulator(g, 1, 2) == frozenset({8})
    assert find_modulator(g, 0, 2) is None
    assert find_modulator(cycle_graph(5), 0, 2) == frozenset()


def test_almost_bounded_degree_base_on_wheel():
    g, ham = wheel(30)
    base = AlmostBoundedDegreeBase(1, 2)
    assert base.c == Fraction(1, 6) and base.accepts(g)
    check(g, base.extract(g, ham), oracle=False)


def test_base_extractor_refuses_short_paths():
    g = path_graph(2 ** 12)
    base = BaseExtractor(Fraction(1, 3), 1, find_path=lambda g, ham: ham[:2])
    with pytest.raises(Exception, match="below its declared bound"):
        base.extract(g, list(range(g.n)))
    with pytest.raises(ParameterError):
        BaseExtractor(Fraction(1, 2), 1)


# -- adhesion -------------------------------------------------------------------------------------------------
def test_adhesion_single_bag():
    g = complete_graph(3)
    cert = check(g, extract_adhesion_pathrep(g, [0, 1, 2], single_bag(3), a=2))
    assert cert.order == 2


def test_adhesion_domain_checks():
    inst = gen_chained_cliques(4, 3)
    with pytest.raises(ParameterError):
        extract_adhesion_pathrep(inst.graph, inst.ham, inst.rep, a=1)
    g = path_graph(3)
    not_varied = from_bags([(0, 1), (1, 2)], [[0, 1], [1], [1, 2]], g, kind="path")
    with pytest.raises(ValidationError):
        extract_adhesion_pathrep(g, [0, 1, 2], not_varied)
    wide = gen_path_power(10, 3)
    with pytest.raises(ValidationError):
        extract_adhesion_pathrep(wide.graph, wide.ham, wide.rep, a=2)


@pytest.mark.parametrize("q", [1, 2, 5, 10, 30])
def test_adhesion_triangle_chain(q):
    inst = gen_chained_cliques(q, 3)
    cert = check(inst.graph, extract_adhesion_pathrep(inst.graph, inst.ham, inst.rep, a=2))
    assert (3 * cert.order) ** 4 >= q
    assert cert.params["width_h"] <= 3


# -- tree composition ------------------------------------------------------------------------------------------
def test_tree_composition_single_node_is_base_call():
    g = cycle_graph(40)
    base = BoundedDegreeBase(2)
    cert = check(g, extract_tree_composition(g, list(range(40)), single_bag(40), base, shortcut=False), oracle=False)
    assert cert.params["branch"] == "big-bag"
    assert cert.path == base.extract(g, list(range(40))).path


def test_tree_composition_trivial_branch():
    inst = gen_outerplanar_family(2)
    cert = extract_tree_composition(inst.graph, inst.ham, inst.rep, BoundedDegreeBase(4))
    assert cert.params["branch"] == "trivial" and cert.order == 2 and cert.verified


@pytest.mark.parametrize("strategy", ["big-bag", "long-path"])
def test_tree_composition_forced_branches(strategy):
    for i in range(1, 5):
        inst = gen_outerplanar_family(i)
        base = BoundedDegreeBase(max(2, inst.graph.max_degree()))
        cert = extract_tree_composition(inst.graph, inst.ham, inst.rep, base, strategy=strategy, shortcut=False)
        assert cert.params["branch"] == strategy
        check(inst.graph, cert)


def test_tree_composition_long_path_on_gadget_chain():
    # bags of size 2 stay below the big-bag threshold for every n
    inst = gen_chained_cliques(40, 2)
    cert = extract_tree_composition(inst.graph, inst.ham, inst.rep, BoundedDegreeBase(2), 2, shortcut=False)
    assert cert.params["branch"] == "long-path"
    check(inst.graph, cert)


def test_tree_composition_big_bag_planted():
    g, ham, rep = cycle_tail_instance()
    cert = extract_tree_composition(g, ham, rep, BoundedDegreeBase(3), shortcut=False)
    assert cert.params["branch"] == "big-bag" and cert.params["node"] == 0
    check(g, cert, oracle=False)
    assert cert.order >= 11


def test_tree_composition_torso_class_error():
    inst = gen_chained_cliques(3, 5)
    with pytest.raises(ClassError, match="node 0"):
        extract_tree_composition(inst.graph, inst.ham, inst.rep, BoundedDegreeBase(2))


# -- vortex ---------------------------------------------------------------------------------------------------
def test_vortex_simple_cycle():
    m = 24
    g = cycle_graph(m)
    vx = CycleRepresentation(m, {i: {i, (i + 1) % m} for i in range(m)}, list(range(m)))
    cert = check(g, extract_from_vortex(g, list(range(m)), vx, k=2), oracle=False)
    assert cert.order >= m - 3


def planted_vortex():
    m, n = 40, 64
    edges = [(i, (i + 1) % m) for i in range(m)] + [(i, i + 2) for i in range(0, m - 2, 2)]
    edges += [(i, i + 1) for i in range(m - 1, n - 1)]
    g = Graph(n, edges)
    models = {i: {i, (i + 1) % m} | ({(i + 2) % m} if i % 2 == 0 and i < m - 2 else set()) for i in range(m)}
    return g, CycleRepresentation(m, models, list(range(m)))


def test_vortex_planted_instance():
    g, vx = planted_vortex()
    assert vx.width == 2
    cert = check(g, extract_from_vortex(g, list(range(g.n)), vx), oracle=False)
    assert (3 * cert.order) ** 3 >= 6
    assert cert.order <= longest_induced_path(g, cap=64, time_limit=30).value


def test_vortex_too_short():
    m = 10
    g = cycle_graph(m)
    vx = CycleRepresentation(m, {i: {i, (i + 1) % m} for i in range(m)}, list(range(m)))
    with pytest.raises(InputError, match="fewer than"):
        extract_from_vortex(g, list(range(m)), vx)


# -- master ---------------------------------------------------------------------------------------------------
def _abd(k=1, delta=3):
    return {"kind": "almost-bounded-degree", "k": k, "delta": delta}


def test_master_dispatch_identity():
    inst = gen_chained_cliques(6, 4)
    kinds = {t: _abd() for t in range(6)}
    cert = extract_master(inst.graph, inst.ham, inst.rep, kinds, shortcut=False)
    direct = extract_tree_composition(inst.graph, inst.ham, inst.rep, AlmostBoundedDegreeBase(1, 3), shortcut=False)
    assert cert == direct
    check(inst.graph, cert, oracle=False)


def test_master_unsupported_names_node():
    inst = gen_chained_cliques(4, 3)
    kinds = {0: _abd(), 1: _abd(), 2: {"kind": "almost-embeddable"}, 3: _abd()}
    with pytest.raises(UnsupportedError, match="node 2"):
        extract_master(inst.graph, inst.ham, inst.rep, kinds)


def test_master_with_plugin_stub():
    inst = gen_chained_cliques(5, 3)
    stub = BaseExtractor(Fraction(1, 3), Fraction(1, 10), find_path=lambda g, ham: ham[:2], name="stub")
    kinds = {str(t): ({"kind": "almost-embeddable"} if t % 2 else _abd()) for t in range(5)}
    for shortcut in (True, False):
        cert = extract_master(inst.graph, inst.ham, inst.rep, kinds, plugins={"almost-embeddable": stub},
                              shortcut=shortcut)
        check(inst.graph, cert)


# -- global properties ---------------------------------------------------------------------------------------------
def _small_corpus():
    for s in range(15):
        yield "pathwidth", gen_random_validated(s, "interval", n=6 + s, k=3)
        yield "treewidth", gen_random_validated(s, "ktree-path-built", n=6 + s, k=3)
    yield "pathwidth", gen_worstcase_interval(15, 3)
    yield "treewidth", gen_outerplanar_family(3)
    for q in (3, 7):
        yield "adhesion", gen_chained_cliques(q, 3)


def _run(kind, inst):
    if kind == "pathwidth":
        return extract_pathwidth(inst.graph, inst.ham, inst.rep)
    if kind == "treewidth":
        return extract_treewidth(inst.graph, inst.ham, inst.rep)
    return extract_adhesion_pathrep(inst.graph, inst.ham, inst.rep)


def test_oracle_dominance_small_instances():
    for kind, inst in _small_corpus():
        if inst.n <= 22:
            check(inst.graph, _run(kind, inst))
            check(inst.graph, extract_bounded_degree(inst.graph, inst.ham))


def test_determinism():
    for kind, inst in _small_corpus():
        assert _run(kind, inst).dumps() == _run(kind, inst).dumps()
    g, vx = planted_vortex()
    ham = list(range(g.n))
    assert extract_from_vortex(g, ham, vx).dumps() == extract_from_vortex(g, ham, vx).dumps()
