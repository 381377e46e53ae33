import numpy as np
import pytest
from conftest import clique, graph_from_dense
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import (
    betweenness_by_enumeration,
    closeness_by_enumeration,
    constraint_dense,
    laplacian_by_deletion,
    principal_eigenvector,
    random_dense,
)

from socialcentrality import build_from_edge_list
from socialcentrality.baselines import (
    ConvergenceError,
    DistanceConvention,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
    laplacian_centrality,
    laplacian_energy,
    network_constraint,
)
from socialcentrality.social import sociability


@pytest.fixture
def star5():
    return build_from_edge_list([("c", leaf) for leaf in "vwxyz"])


@pytest.fixture
def c4():
    return build_from_edge_list([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])


# -- degree ---------------------------------------------------------------------


def test_degree(star5):
    assert degree_centrality(star5).values[0] == 5
    g = build_from_edge_list([("a", "b", 2.5), ("c", "c")])
    assert degree_centrality(g).values.tolist() == [2.5, 2.5, 0]
    assert degree_centrality(g, weighted=False).values.tolist() == [1, 1, 0]


def test_weighted_degree_is_sociability(rng):
    g = graph_from_dense(random_dense(20, 0.3, rng))
    assert np.array_equal(degree_centrality(g).values, sociability(g))


# -- eigenvector ----------------------------------------------------------------


def test_ec_complete_graph():
    ec = eigenvector_centrality(build_from_edge_list(clique("abcdefg")))
    np.testing.assert_allclose(ec.values, 1.0, atol=1e-12)


def test_ec_star_center_strictly_max(star5):
    v = eigenvector_centrality(star5).values
    assert v[0] == 1.0 and np.all(v[1:] < 1.0)
    np.testing.assert_allclose(v[1:], 1 / np.sqrt(5), rtol=1e-8)


def test_ec_oracle(rng):
    done = 0
    while done < 50:
        a = random_dense(10, 0.5, rng)
        g = graph_from_dense(a)
        vec, vals = principal_eigenvector(a)
        # skip disconnected draws or ones whose leading eigenvalue is not simple
        if g.n != 10 or vals[-1] - vals[-2] < 1e-3 or np.any(vec < 1e-9):
            continue
        np.testing.assert_allclose(eigenvector_centrality(g).values, vec, atol=1e-8)
        done += 1


def test_ec_non_convergence(rng):
    g = graph_from_dense(random_dense(10, 0.5, rng))
    with pytest.raises(ConvergenceError) as info:
        eigenvector_centrality(g, max_iters=2)
    assert info.value.iterations == 2


def test_ec_empty_graph():
    g = build_from_edge_list([("a", "a")])
    assert eigenvector_centrality(g).values.tolist() == [0.0]


@given(st.integers(0, 2**32 - 1), st.floats(0.01, 100))
@settings(max_examples=40, deadline=None)
def test_ec_scale_invariant(seed, c):
    rng = np.random.default_rng(seed)
    g = graph_from_dense(random_dense(12, 0.5, rng))
    np.testing.assert_allclose(
        eigenvector_centrality(g.scaled(c)).values, eigenvector_centrality(g).values, atol=1e-8
    )


# -- betweenness / closeness ----------------------------------------------------


def test_bc_path(path3):
    assert betweenness_centrality(path3).values.tolist() == [0, 1, 0]


def test_bc_cycle(c4):
    assert betweenness_centrality(c4).values.tolist() == [0.5] * 4


def test_cc_path(path3):
    cc = closeness_centrality(path3).values
    assert cc[1] == 1.0
    assert cc[0] == pytest.approx(2 / 3, abs=1e-15)


def test_cc_components():
    g = build_from_edge_list([("a", "b"), ("c", "d"), ("e", "e")])
    assert closeness_centrality(g).values.tolist() == [1, 1, 1, 1, 0]


def test_cc_complete_graph_equal():
    g = build_from_edge_list(clique("abcdef", 2.0))
    v = closeness_centrality(g).values
    assert np.all(v == v[0])


@pytest.mark.parametrize("conv", ["reciprocal", "direct"])
def test_bc_cc_oracle(conv, rng):
    for trial in range(50):
        weighted = trial % 5 != 0  # every fifth draw has unit weights and many tied paths
        a = random_dense(10, 0.4, rng, weighted=weighted)
        g = graph_from_dense(a)
        np.testing.assert_allclose(
            betweenness_centrality(g, conv).values, betweenness_by_enumeration(a, conv), atol=1e-9
        )
        np.testing.assert_allclose(
            closeness_centrality(g, conv).values, closeness_by_enumeration(a, conv), atol=1e-9
        )


def test_reciprocal_on_unit_weights_is_unweighted(rng):
    a = random_dense(14, 0.3, rng, weighted=False)
    g = graph_from_dense(a)
    for fn in (betweenness_centrality, closeness_centrality):
        np.testing.assert_array_equal(
            fn(g, DistanceConvention.RECIPROCAL).values, fn(g, DistanceConvention.DIRECT).values
        )


def test_bad_convention(k3):
    with pytest.raises(ValueError):
        betweenness_centrality(k3, "inverse")


def test_thread_count_does_not_change_results(rng):
    g = graph_from_dense(random_dense(150, 0.05, rng))
    for fn in (betweenness_centrality, closeness_centrality):
        one = fn(g, threads=1).values
        assert np.array_equal(one, fn(g, threads=4).values)


# -- Laplacian ------------------------------------------------------------------


def test_lc_k2():
    g = build_from_edge_list([("a", "b"), ("c", "c")])
    assert laplacian_energy(g) == 4.0
    assert laplacian_centrality(g).values.tolist() == [4.0, 4.0, 0.0]


def test_lc_oracle(rng):
    for _ in range(50):
        a = random_dense(12, 0.4, rng)
        g = graph_from_dense(a)
        np.testing.assert_allclose(laplacian_centrality(g).values, laplacian_by_deletion(a), atol=1e-9, rtol=0)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_lc_positive_for_tied_nodes(seed):
    rng = np.random.default_rng(seed)
    g = graph_from_dense(random_dense(10, 0.3, rng, low=1e-3))
    lc = laplacian_centrality(g).values
    deg = g.degree()
    assert np.all(lc[deg > 0] > 0)
    assert np.all(lc[deg == 0] == 0)


# -- network constraint ---------------------------------------------------------


def test_nc_examples(star5, k3):
    k2 = build_from_edge_list([("a", "b", 3.0)])
    assert network_constraint(k2).values.tolist() == [1.0, 1.0]
    assert network_constraint(star5).values[0] == pytest.approx(1 / 5, abs=1e-15)
    assert network_constraint(k3).values.tolist() == [1.125] * 3
    assert network_constraint(k3).higher_is_better is False


def test_nc_isolated_is_inf():
    g = build_from_edge_list([("a", "b"), ("c", "c")])
    assert network_constraint(g).values[2] == np.inf


def test_nc_oracle(rng):
    for _ in range(50):
        a = random_dense(10, 0.4, rng)
        g = graph_from_dense(a)
        np.testing.assert_allclose(network_constraint(g).values, constraint_dense(a), rtol=1e-12)


def test_nc_open_neighbourhood_is_inverse_degree():
    g = build_from_edge_list([("h", x, 2.0) for x in "abcdefg"] + [("a", "z"), ("b", "z")])
    assert network_constraint(g).values[g.index("h")] == pytest.approx(1 / 7, rel=1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_nc_range(seed):
    rng = np.random.default_rng(seed)
    g = graph_from_dense(random_dense(10, 0.4, rng))
    v = network_constraint(g).values
    tied = g.degree() > 0
    assert np.all((v[tied] > 0) & np.isfinite(v[tied]))
