import numpy as np
import pytest

from attrcd import build_network
from attrcd.encoding import locus_neighbors, random_selection
from attrcd.graph import EdgeSelection, decode_labels
from attrcd.landscape import (
    IlsCounters,
    LandscapeConfig,
    _DiscreteScan,
    analyze,
    calibrate_epsilon,
    discrete_distance,
    er,
    fdc,
    ils,
    lod,
    pearson,
)
from attrcd.objectives import attr_similarity, modularity

from conftest import random_graph


class TestDiscreteDistance:
    def test_identity(self):
        g = EdgeSelection(np.array([1, 0, 3, 2]))
        assert discrete_distance(g, g) == 0

    def test_one_position(self):
        a = np.array([1, 0, 3, 2])
        b = np.array([1, 2, 3, 2])
        assert discrete_distance(a, b) == 1

    def test_hand_case(self):
        assert discrete_distance(np.array([1, 0, 3, 2]), np.array([1, 2, 1, 2])) == 2

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            discrete_distance(np.array([1, 2]), np.array([1, 2, 3]))


class TestCounterMetrics:
    def test_lod_values(self):
        assert lod(IlsCounters(optima=5, moves=100)) == 5.0
        assert lod(IlsCounters(optima=0, moves=10)) == 0.0
        assert lod(IlsCounters(optima=12, moves=300)) == 4.0

    def test_lod_zero_moves(self):
        with pytest.raises(ValueError):
            lod(IlsCounters(optima=1, moves=0))

    def test_er_values(self):
        assert er(IlsCounters(perturbations=10, escapes=10)) == 1.0
        assert er(IlsCounters(perturbations=10, escapes=0)) == 0.0
        assert er(IlsCounters(perturbations=10, escapes=7)) == 0.7

    def test_er_zero_perturbations(self):
        with pytest.raises(ValueError):
            er(IlsCounters(escapes=1))


class TestFdc:
    def test_hand_case(self):
        # pairs (f, d) = (1,1), (2,2), (3,4): Pearson = 3 / (sqrt(2) * sqrt(14/3))
        f = np.array([1.0, 2.0, 3.0])
        genotypes = [np.array([1.0]), np.array([2.0]), np.array([4.0])]
        best = [np.array([0.0])]
        got = fdc(f, genotypes, best, "continuous", sample=3)
        assert got == pytest.approx(0.9819805060619657, abs=1e-12)

    def test_monotone_pair(self):
        f = np.linspace(0, 1, 20)
        genotypes = [np.array([v]) for v in np.linspace(0, 2, 20)]
        got = fdc(f, genotypes, [np.array([0.0])], "continuous", sample=20)
        assert got == pytest.approx(1.0, abs=1e-12)

    def test_constant_f_missing(self):
        f = np.ones(10)
        genotypes = [np.array([float(i)]) for i in range(10)]
        assert fdc(f, genotypes, [np.array([0.0])], "continuous", sample=10) is None

    def test_affine_invariance(self):
        rng = np.random.default_rng(40)
        f = rng.random(30)
        genotypes = [rng.random(4) for _ in range(30)]
        best = [np.zeros(4)]
        a = fdc(f, genotypes, best, "continuous", sample=30, seed=1)
        b = fdc(3.5 * f + 2.0, genotypes, best, "continuous", sample=30, seed=1)
        assert a == pytest.approx(b, abs=1e-12)

    def test_discrete_distance_metric(self):
        f = np.array([0.0, 1.0, 2.0])
        genotypes = [np.array([1, 0, 3, 2]), np.array([1, 2, 3, 2]), np.array([1, 2, 1, 2])]
        best = [genotypes[0]]
        got = fdc(f, genotypes, best, "discrete", sample=3)
        assert got == pytest.approx(1.0, abs=1e-12)  # d = (0, 1, 2) rises with f

    def test_pearson_none_on_constant(self):
        assert pearson(np.ones(5), np.arange(5.0)) is None


class TestCalibrateEpsilon:
    def test_bounds_and_determinism(self, g4_single):
        cfg = LandscapeConfig(space="continuous", epsilon_sample=40, epsilon_pairs=300, seed=9)
        e1 = calibrate_epsilon(g4_single, cfg)
        e2 = calibrate_epsilon(g4_single, cfg)
        assert e1 == e2
        assert 0.0 < e1 < np.sqrt(g4_single.genotype_length)

    def test_seed_changes_value(self, g4_single):
        a = calibrate_epsilon(
            g4_single, LandscapeConfig(space="continuous", epsilon_sample=40, epsilon_pairs=300, seed=1)
        )
        b = calibrate_epsilon(
            g4_single, LandscapeConfig(space="continuous", epsilon_sample=40, epsilon_pairs=300, seed=2)
        )
        assert a != b


@pytest.fixture(scope="module")
def two_cluster_net():
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3), (1, 6), (6, 0), (4, 7), (7, 5)]
    return build_network(edges, np.array([1.0, 1, 1, 2, 2, 2, 1, 2]), "single")


class TestBatchedScan:
    @pytest.mark.parametrize("objective", ["q", "attr"])
    def test_matches_naive_scan_single(self, two_cluster_net, objective):
        self._check(two_cluster_net, objective)

    @pytest.mark.parametrize("objective", ["q", "attr"])
    def test_matches_naive_scan_multi(self, objective):
        rng = np.random.default_rng(41)
        attrs = (rng.random((9, 6)) < 0.5).astype(float)
        attrs[attrs.sum(axis=1) == 0, 0] = 1.0
        net = build_network(random_graph(rng, 9), attrs, "multi")
        self._check(net, objective)

    def test_matches_naive_with_isolated_nodes(self):
        net = build_network([(0, 2), (2, 3), (3, 0)], np.array([1.0, 2, 1, 2]), "single")
        self._check(net, "q")

    def _check(self, net, objective):
        rng = np.random.default_rng(42)
        cfg = LandscapeConfig(objective=objective, space="discrete")
        scan = _DiscreteScan(net, cfg)
        for _ in range(5):
            sel = random_selection(net, rng)
            nodes, choices = scan.neighbor_list(sel.selected_neighbor)
            got = scan.values(sel.selected_neighbor, nodes, choices)
            expect = []
            for nb in locus_neighbors(sel, net):
                p = decode_labels(nb.selected_neighbor, net.node_count)
                if objective == "q":
                    expect.append(-modularity(p, net))
                else:
                    expect.append(attr_similarity(p, net))
            assert got == pytest.approx(np.array(expect), abs=1e-9)


class TestIls:
    def test_discrete_counters_and_budget(self, two_cluster_net):
        cfg = LandscapeConfig(space="discrete", objective="q", local_optima_budget=8, seed=1)
        res = ils(two_cluster_net, cfg)
        assert res.counters.optima == 8
        assert len(res.genotypes) == 8
        assert res.values.shape == (8,)
        assert res.counters.escapes <= res.counters.perturbations
        assert res.counters.perturbations == 7

    def test_discrete_optima_verified(self, two_cluster_net):
        # re-scanning a reported optimum's neighbourhood finds nothing strictly better
        cfg = LandscapeConfig(space="discrete", objective="q", local_optima_budget=5, seed=2)
        res = ils(two_cluster_net, cfg)
        for sel_arr, value in zip(res.genotypes, res.values.tolist()):
            for nb in locus_neighbors(EdgeSelection(sel_arr), two_cluster_net):
                p = decode_labels(nb.selected_neighbor, two_cluster_net.node_count)
                assert -modularity(p, two_cluster_net) >= value - 1e-12

    def test_discrete_determinism(self, two_cluster_net):
        cfg = LandscapeConfig(space="discrete", objective="attr", local_optima_budget=6, seed=3)
        r1 = ils(two_cluster_net, cfg)
        r2 = ils(two_cluster_net, cfg)
        assert np.array_equal(r1.values, r2.values)
        for a, b in zip(r1.genotypes, r2.genotypes):
            assert np.array_equal(a, b)

    def test_continuous_reaches_budget(self, two_cluster_net):
        cfg = LandscapeConfig(
            space="continuous", objective="q", local_optima_budget=5,
            ls_trials=15, epsilon=1.5, seed=4,
        )
        res = ils(two_cluster_net, cfg)
        assert res.counters.optima == 5
        assert res.epsilon == 1.5
        assert res.counters.moves > 0

    def test_continuous_determinism(self, two_cluster_net):
        cfg = LandscapeConfig(
            space="continuous", objective="attr", local_optima_budget=4,
            ls_trials=10, epsilon=1.5, seed=5,
        )
        r1 = ils(two_cluster_net, cfg)
        r2 = ils(two_cluster_net, cfg)
        assert np.array_equal(r1.values, r2.values)

    def test_single_node_network(self):
        net = build_network([], np.array([3.0]), "single")
        cfg = LandscapeConfig(space="discrete", objective="attr", local_optima_budget=5, seed=6)
        res = ils(net, cfg)
        assert res.counters.optima == 5
        # all optima are the same degenerate genotype; nothing new after the first
        assert res.counters.escapes == 0
        assert lod(res.counters) == pytest.approx(100.0 * 5 / res.counters.moves)

    def test_strictly_improving_neighbour_never_recorded(self, two_cluster_net):
        # every recorded discrete optimum satisfies the local optimality check
        # (complement of test_discrete_optima_verified for the attr objective)
        cfg = LandscapeConfig(space="discrete", objective="attr", local_optima_budget=4, seed=7)
        res = ils(two_cluster_net, cfg)
        for sel_arr, value in zip(res.genotypes, res.values.tolist()):
            best_nb = min(
                attr_similarity(decode_labels(nb.selected_neighbor, two_cluster_net.node_count), two_cluster_net)
                for nb in locus_neighbors(EdgeSelection(sel_arr), two_cluster_net)
            )
            assert best_nb >= value - 1e-12


class TestAnalyze:
    def test_report_fields(self, two_cluster_net):
        cfg = LandscapeConfig(space="discrete", objective="q", local_optima_budget=6, seed=8)
        report, result = analyze(two_cluster_net, cfg)
        assert report.space == "discrete" and report.objective == "q"
        assert report.lod > 0
        assert 0.0 <= report.er <= 1.0
        assert report.fdc is None or -1.0 - 1e-9 <= report.fdc <= 1.0 + 1e-9

    def test_extra_best_extends_reference_set(self, two_cluster_net):
        cfg = LandscapeConfig(space="discrete", objective="q", local_optima_budget=6, seed=9)
        _, base = analyze(two_cluster_net, cfg)
        better = base.best_value - 1.0
        report, _ = analyze(
            two_cluster_net, cfg,
            extra_best_genotypes=[base.genotypes[0]],
            extra_best_values=[better],
        )
        assert report.space == "discrete"

    def test_config_validation(self):
        with pytest.raises(ValueError):
            LandscapeConfig(space="warped")
        with pytest.raises(ValueError):
            LandscapeConfig(objective="conductance")
        with pytest.raises(ValueError):
            LandscapeConfig(local_optima_budget=0)
        with pytest.raises(ValueError):
            LandscapeConfig(novelty="vibes")
