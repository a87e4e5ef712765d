import math

import numpy as np
import pytest

from morphclust import (
    ClusterConfig,
    InsufficientComponents,
    InvalidData,
    NoComponents,
    assign_labels,
    auto_noise_threshold,
    cluster,
    grow_until_k,
    init_grid,
    label_components,
    min_distance_to_component,
    nearest_label_transform,
)
from morphclust.components import LabeledGrid
from morphclust.datasets import PAPER_CENTERS, BlobSpec, generate_blobs
from morphclust.metrics import accuracy_tp

from .oracles import component_distances, nearest_cell_bruteforce


def random_labeled_grid(rng, R, ncomp, dim=2):
    """Random blobs of cells with ids 1..ncomp (not necessarily connected)."""
    labels = np.zeros((R,) * dim, dtype=np.int32)
    for j in range(1, ncomp + 1):
        center = rng.integers(0, R, dim)
        for _ in range(rng.integers(1, 12)):
            c = np.clip(center + rng.integers(-3, 4, dim), 0, R - 1)
            labels[tuple(c)] = j
    present = np.unique(labels[labels > 0])
    lut = np.zeros(ncomp + 1, dtype=np.int32)
    lut[present] = np.arange(1, present.size + 1)
    return LabeledGrid.from_labels(lut[labels])


class TestConfig:
    def test_defaults(self):
        cfg = ClusterConfig(k=3)
        assert cfg.R == 100 and cfg.max_iter == 50
        assert cfg.connectivity == "full" and cfg.noise_policy == "none"
        assert len(cfg.structuring_element(2)) == 5
        assert len(cfg.structuring_element(3)) == 7

    @pytest.mark.parametrize("kw", [
        dict(k=0), dict(k=2, max_iter=0), dict(k=2, noise_policy=-1.0),
        dict(k=2, noise_policy="auto"), dict(k=2, connectivity="edge"), dict(k=2, R=1),
    ])
    def test_invalid(self, kw):
        with pytest.raises(InvalidData):
            ClusterConfig(**kw)


class TestGrow:
    def test_already_at_target(self, backend):
        g = init_grid([[10, 10], [11, 10], [40, 40]], 100, 2)
        lg, trace = grow_until_k(g, ClusterConfig(k=2))
        assert trace == [2] and lg.num_components == 2

    def test_two_dilations_to_merge(self, backend):
        # radius-1 diamonds around x=10 and x=14 first share x=12 on dilation 2
        g = init_grid([[10, 10], [14, 10]], 100, 2)
        lg, trace = grow_until_k(g, ClusterConfig(k=1, se_kind="disk", connectivity="full"))
        assert trace == [2, 2, 1]
        assert lg.num_components == 1

    def test_insufficient_components(self, backend):
        g = init_grid([[10, 10], [40, 40], [70, 70]], 100, 2)
        with pytest.raises(InsufficientComponents):
            grow_until_k(g, ClusterConfig(k=5))

    def test_overshoot_falls_back_to_largest(self, backend):
        # a 3-cell bar, a 2-cell bar and a single cell; one dilation joins all
        g = init_grid([[10, 10], [10, 11], [10, 12], [12, 10], [12, 11], [14, 10]], 30, 2)
        lg, trace = grow_until_k(g, ClusterConfig(k=2, R=30))
        assert trace == [3, 1]
        assert lg.num_components == 2
        assert sorted(lg.sizes.tolist()) == [2, 3]

    def test_max_iter_keeps_k_largest(self, backend):
        # equal sizes, so the filter never removes anything
        g = init_grid([[5, 5], [20, 20], [35, 35]], 40, 2)
        lg, trace = grow_until_k(g, ClusterConfig(k=2, R=40, max_iter=1))
        assert trace == [3, 3]
        assert lg.num_components == 2
        assert [tuple(c[0]) for c in lg.components] == [(4, 5), (19, 20)]

    def test_trace_non_increasing(self, backend, rng):
        for _ in range(10):
            pts = rng.integers(1, 60, (40, 2))
            g = init_grid(np.unique(pts, axis=0), 60, 2)
            _, trace = grow_until_k(g, ClusterConfig(k=1, R=60))
            assert all(a >= b for a, b in zip(trace, trace[1:]))


class TestMinDistance:
    def test_examples(self):
        assert min_distance_to_component([0, 0], [[3, 4]]).distance == 5
        hit = min_distance_to_component([2, 2], [[5, 5], [2, 2]])
        assert hit.distance == 0 and hit.cell == (2, 2)
        assert min_distance_to_component([1, 1, 1], [[2, 2, 2]]).distance == pytest.approx(math.sqrt(3))

    def test_raster_tie_break(self):
        hit = min_distance_to_component([2, 2], [[3, 2], [1, 2], [2, 3]], component=4)
        assert hit.cell == (1, 2) and hit.component == 4

    def test_empty(self):
        with pytest.raises(NoComponents):
            min_distance_to_component([0, 0], np.zeros((0, 2)))


class TestAssign:
    def _two_components(self):
        return label_components(init_grid([[10, 10], [20, 10]], 30, 2))

    @pytest.mark.parametrize("mode", ["bruteforce", "grid_transform"])
    def test_examples(self, backend, mode):
        lg = self._two_components()
        res = assign_labels(np.array([[12.0, 10.0], [15.0, 10.0], [19.0, 11.0]]), lg, mode=mode)
        assert res.labels.tolist() == [1, 1, 2]
        np.testing.assert_allclose(res.min_distances, [2, 5, math.sqrt(2)])

    @pytest.mark.parametrize("mode", ["bruteforce", "grid_transform"])
    def test_noise(self, backend, mode):
        lg = label_components(init_grid([[10, 10]], 30, 2))
        res = assign_labels(np.array([[13.0, 10.0], [11.0, 10.0]]), lg, noise_policy=2.0, mode=mode)
        assert res.labels.tolist() == [0, 1]
        assert res.T_d_used == 2.0
        # keep-iff distance <= threshold
        res = assign_labels(np.array([[12.0, 10.0]]), lg, noise_policy=2.0, mode=mode)
        assert res.labels.tolist() == [1]

    @pytest.mark.parametrize("mode", ["bruteforce", "grid_transform"])
    def test_permuting_component_ids_permutes_labels(self, backend, rng, mode):
        lg = random_labeled_grid(rng, 25, 4)
        perm = np.concatenate([[0], rng.permutation(lg.num_components) + 1]).astype(np.int32)
        lg2 = LabeledGrid.from_labels(perm[lg.labels])
        pts = rng.uniform(0, 26, (100, 2))
        d = np.array([np.sort(component_distances(p, lg)) for p in pts])
        clear = d[:, 1] - d[:, 0] > 1e-9
        a = assign_labels(pts, lg, mode=mode).labels
        b = assign_labels(pts, lg2, mode=mode).labels
        np.testing.assert_array_equal(perm[a][clear], b[clear])

    def test_point_on_component_cell(self, backend):
        lg = self._two_components()
        res = assign_labels(np.array([[20.0, 10.0], [10.0, 10.0]]), lg)
        assert res.labels.tolist() == [2, 1]
        assert res.min_distances.tolist() == [0, 0]

    @pytest.mark.parametrize("dim,R", [(2, 30), (3, 12)])
    def test_modes_agree_with_oracle(self, backend, rng, dim, R):
        for _ in range(10):
            lg = random_labeled_grid(rng, R, int(rng.integers(2, 6)), dim)
            pts = rng.uniform(0, R + 1, (60, dim))
            d = np.array([component_distances(p, lg) for p in pts])
            srt = np.sort(d, axis=1)
            clear = srt[:, 1] - srt[:, 0] > 1e-9
            expect = d.argmin(axis=1) + 1
            brute = assign_labels(pts, lg, mode="bruteforce")
            fast = assign_labels(pts, lg, mode="grid_transform")
            np.testing.assert_array_equal(brute.labels[clear], expect[clear])
            np.testing.assert_array_equal(fast.labels[clear], expect[clear])
            np.testing.assert_allclose(fast.min_distances, srt[:, 0], rtol=0, atol=1e-12)
            # both modes share the tie rule, so they agree everywhere
            np.testing.assert_array_equal(brute.labels, fast.labels)


class TestNoiseThreshold:
    def test_paper_variance(self):
        assert auto_noise_threshold([0, 0, 4], "auto_paper") == pytest.approx(32 / 9)
        assert auto_noise_threshold([1, 1, 1], "auto_paper") == 0.0

    def test_robust(self):
        assert auto_noise_threshold([1, 1, 1], "auto_robust") == 1.0
        assert auto_noise_threshold([0, 0, 4], "auto_robust") == pytest.approx(4 / 3 + 3 * math.sqrt(32 / 9))

    def test_equal_distances_are_kept_under_robust(self, backend):
        lg = label_components(init_grid([[10, 10], [20, 20]], 30, 2))
        pts = np.array([[11.0, 10.0], [10.0, 9.0], [21.0, 20.0]])
        res = assign_labels(pts, lg, noise_policy="auto_robust")
        assert res.T_d_used == 1.0 and res.labels.tolist() == [1, 1, 2]

    def test_unknown_mode(self):
        with pytest.raises(InvalidData):
            auto_noise_threshold([1.0], "median")


class TestNearestLabelTransform:
    def test_single_cell(self, backend):
        nm = nearest_label_transform(label_components(init_grid([[4, 7]], 10, 2)))
        assert np.all(nm.labels == 1)
        assert nm.nearest_cell((1, 1)) == (4, 7)
        assert nm.distance[0, 0] == pytest.approx(math.hypot(3, 6))

    def test_midway_goes_to_lower_id(self, backend):
        lg = label_components(init_grid([[3, 5], [9, 5]], 12, 2))
        nm = nearest_label_transform(lg)
        assert nm.labels[5, 4] == 1  # cell (6, 5)
        lg_swapped = LabeledGrid.from_labels(np.where(lg.labels > 0, 3 - lg.labels, 0))
        assert nearest_label_transform(lg_swapped).labels[5, 4] == 1

    @pytest.mark.parametrize("dim,R", [(2, 20), (3, 8)])
    def test_matches_bruteforce(self, backend, rng, dim, R):
        for _ in range(8):
            lg = random_labeled_grid(rng, R, int(rng.integers(1, 5)), dim)
            nm = nearest_label_transform(lg)
            d2, best = nearest_cell_bruteforce(lg.labels)
            np.testing.assert_array_equal(nm.distance, np.sqrt(d2))
            for c in np.ndindex(lg.labels.shape):
                assert nm.labels[c] in best[c]
                if len(best[c]) == 1:
                    assert nm.labels[c] == next(iter(best[c]))

    def test_empty(self):
        with pytest.raises(NoComponents):
            nearest_label_transform(LabeledGrid.from_labels(np.zeros((4, 4))))


class TestCluster:
    def test_separated_blobs(self, backend):
        # with 20 points per blob the outcome is seed dependent: a sparse blob
        # can fragment below the mean domain size and be filtered away whole
        pts, truth = generate_blobs(BlobSpec(centers=PAPER_CENTERS, spread=0.15, points_per_blob=20, seed=1))
        res, raw = cluster(pts, ClusterConfig(k=3, R=100))
        assert accuracy_tp(res.labels, truth, 3).accuracy == 1.0
        np.testing.assert_allclose(raw, pts, rtol=1e-12, atol=1e-12)
        assert res.iterations_used == len(res.component_count_trace) - 1

    def test_k1_labels_everything(self, backend, rng):
        pts = rng.normal(size=(200, 3))
        res, _ = cluster(pts, ClusterConfig(k=1, R=40))
        assert np.all(res.labels == 1)

    def test_3d_blobs(self, backend):
        centers = ((0, 0, 0), (3, 0, 0), (0, 3, 3))
        pts, truth = generate_blobs(BlobSpec(centers=centers, spread=0.2, points_per_blob=60, seed=2))
        res, _ = cluster(pts, ClusterConfig(k=3, R=50))
        assert accuracy_tp(res.labels, truth, 3).accuracy == 1.0

    def test_noise_policy_marks_outlier(self, backend):
        pts, _ = generate_blobs(BlobSpec(centers=((0, 0), (4, 0)), spread=0.2, points_per_blob=50, seed=1))
        pts = np.vstack([pts, [[2.0, 6.0]]])
        res, _ = cluster(pts, ClusterConfig(k=2, R=100, noise_policy="auto_robust"))
        assert res.labels[-1] == 0
        assert res.T_d_used is not None

    def test_insufficient_components_propagates(self):
        with pytest.raises(InsufficientComponents):
            cluster([[0.0, 0.0], [1.0, 1.0]], ClusterConfig(k=3))
