import json

import pytest
from hypothesis import given, strategies as st

from inducedpaths.errors import ParameterError
from inducedpaths.extractors import extract_treewidth
from inducedpaths.generators import (PROFILES, GeneratedInstance, gen_chained_cliques, gen_outerplanar_family,
                                     gen_path_power, gen_random_validated, gen_worstcase_interval, worstcase_q)
from inducedpaths.graph import complete_graph, is_hamiltonian_path, is_induced_path, path_graph
from inducedpaths.oracle import longest_induced_path, max_clique

from conftest import brute_clique, brute_lip


# -- worst-case interval family ---------------------------------------------------------------
def test_worstcase_q_examples():
    assert worstcase_q(15, 3) == 7
    assert worstcase_q(20, 4) == 5
    assert worstcase_q(16, 4) == 5
    assert worstcase_q(8, 3) == 5


@given(st.integers(2, 500), st.integers(2, 8))
def test_worstcase_q_is_largest(n, k):
    q = worstcase_q(n, k)
    assert (q - 1) ** k <= n * n < q ** k


def test_worstcase_15_3():
    inst = gen_worstcase_interval(15, 3)
    assert inst.n == 28 == 7 * 8 // 2
    assert inst.meta["q"] == 7
    assert inst.rep.width <= 2
    assert longest_induced_path(inst.graph).value == 7
    # the Hamiltonian path starts in u_q, the first vertex of P_q
    assert inst.ham[0] == 21


def test_worstcase_clique_case():
    inst = gen_worstcase_interval(6, 6)
    assert inst.graph == complete_graph(6)


def test_worstcase_20_4():
    inst = gen_worstcase_interval(20, 4)
    assert inst.meta["q"] == 5 and inst.meta["n_prime"] == 4
    assert inst.n == 21
    assert max_clique(inst.graph).value == 4 == brute_clique(inst.graph)


def test_worstcase_padding_case():
    # rounding leaves n' = 1 < k - 2, so the sub-instance is padded up
    inst = gen_worstcase_interval(5, 4)
    assert inst.n == 7
    assert inst.rep.width <= 3


def test_worstcase_parameter_errors():
    for n, k in [(5, 1), (3, 4)]:
        with pytest.raises(ParameterError):
            gen_worstcase_interval(n, k)


def _small_worstcase():
    for k in (3, 4, 5):
        for n in range(k, 61):
            inst = gen_worstcase_interval(n, k)
            yield n, k, inst


# (n, k) where floor rounding makes q - 1 < n^(2/k), so a copy of the sub-instance
# carries a path longer than n^(2/k) + 1
ROUNDING_EXCEPTIONS = {(14, 5), (15, 5)}


def test_worstcase_invariants_for_all_small_orders():
    over = set()
    for n, k, inst in _small_worstcase():
        assert inst.n >= n
        assert inst.rep.width < k
        if inst.n <= 64:
            assert max_clique(inst.graph).value <= k
        if inst.n <= 32:
            opt = longest_induced_path(inst.graph).value
            if (opt - 1) ** k > n * n:
                over.add((n, k))
            if inst.meta["case"] == "k3":
                assert opt == inst.meta["q"]
    assert over == ROUNDING_EXCEPTIONS


@pytest.mark.parametrize("n", [14, 15])
def test_worstcase_rounding_exception_witness(n):
    inst = gen_worstcase_interval(n, 5)
    assert inst.meta["q"] == 3 and inst.meta["n_prime"] == 6
    # spine ids 0..2, then the first copy of G_{6,3}: u_1, u_2, u_3, u_4 sit at 3, 4, 6, 9
    path = [3 + x for x in (0, 1, 3, 6)]
    assert is_induced_path(inst.graph, path)
    assert (len(path) - 1) ** 5 > n * n


def test_worstcase_bags_contain_every_clique_at_larger_orders():
    # clique number <= max bag size by the Helly property of subtrees
    for n, k in [(200, 3), (300, 4), (400, 5), (500, 6)]:
        inst = gen_worstcase_interval(n, k)
        assert max(len(b) for b in inst.rep.bags) <= k


# -- outerplanar family ---------------------------------------------------------------------
def test_outerplanar_sizes():
    for i in range(1, 8):
        inst = gen_outerplanar_family(i)
        assert inst.n == 3 * 2 ** (i - 1)
        assert len(inst.meta["outer_cycle"]) == inst.n
        assert inst.graph.num_edges == 2 * inst.n - 3


def test_outerplanar_first_generations():
    assert gen_outerplanar_family(1).graph == complete_graph(3)
    o2 = gen_outerplanar_family(2)
    cyc = o2.meta["outer_cycle"]
    assert all(o2.graph.has_edge(cyc[j], cyc[(j + 1) % 6]) for j in range(6))


def test_outerplanar_two_degenerate():
    g = gen_outerplanar_family(5).graph
    alive = set(range(g.n))
    while alive:
        v = min(alive, key=lambda x: (sum(1 for w in g.neighbors(x) if w in alive), x))
        assert sum(1 for w in g.neighbors(v) if w in alive) <= 2
        alive.remove(v)


def test_outerplanar_optima_monotone():
    opts = []
    for i in range(1, 5):
        g = gen_outerplanar_family(i).graph
        opt = longest_induced_path(g).value
        if g.n <= 12:
            assert opt == brute_lip(g)
        opts.append(opt)
    assert opts == sorted(opts)
    assert opts == [2, 4, 6, 8]


def test_outerplanar_parameter_error():
    with pytest.raises(ParameterError):
        gen_outerplanar_family(0)


# -- simple families -------------------------------------------------------------------------
def test_path_power_examples():
    assert gen_path_power(7, 1).graph == path_graph(7)
    assert gen_path_power(6, 5).graph == complete_graph(6)
    inst = gen_path_power(10, 2)
    assert inst.rep.width == 2
    assert brute_lip(inst.graph) == longest_induced_path(inst.graph).value == 7


def test_chained_cliques_examples():
    assert gen_chained_cliques(1, 5).graph == complete_graph(5)
    assert gen_chained_cliques(6, 2).graph == path_graph(7)
    inst = gen_chained_cliques(8, 3)
    assert inst.rep.num_nodes == 8 and inst.rep.adhesion == 1 and inst.rep.varied


# -- random instances ------------------------------------------------------------------------
@pytest.mark.parametrize("profile", PROFILES)
def test_random_profiles_validate(profile):
    for seed in range(20):
        inst = gen_random_validated(seed, profile, n=12)
        assert is_hamiltonian_path(inst.graph, inst.ham)
        if inst.rep is not None:
            inst.rep.validate(inst.graph)
        assert gen_random_validated(seed, profile, n=12).dumps() == inst.dumps()


def test_random_ktree_width_and_certification():
    for seed in range(100):
        inst = gen_random_validated(seed, "ktree-path-built", n=10 + seed, k=3)
        assert inst.rep.width == 2
        assert extract_treewidth(inst.graph, inst.ham, inst.rep).verified


def test_random_interval_width():
    for seed in range(30):
        inst = gen_random_validated(seed, "interval", n=40, k=4)
        assert inst.rep.width <= 3


def test_random_bounded_degree_respects_delta():
    for seed in range(30):
        inst = gen_random_validated(seed, "bounded-degree", n=50, delta=3)
        assert inst.graph.max_degree() <= 3


def test_random_parameter_errors():
    with pytest.raises(ParameterError):
        gen_random_validated(0, "planar")
    with pytest.raises(ParameterError):
        gen_random_validated(0, "ktree-path-built", n=2, k=3)
    with pytest.raises(ParameterError):
        gen_random_validated(0, "interval", k=1)


def test_instance_json_round_trip():
    for inst in (gen_worstcase_interval(20, 4), gen_outerplanar_family(3),
                 gen_random_validated(3, "bounded-degree", n=20)):
        text = inst.dumps()
        assert GeneratedInstance.from_dict(json.loads(text)).dumps() == text
