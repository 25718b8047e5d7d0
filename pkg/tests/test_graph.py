import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import gaq
from gaq.errors import (
    DisconnectedGraph,
    InvalidDimension,
    NegativeWeight,
    NodeIdOutOfRange,
    SelfLoop,
    ZeroSignal,
)
from gaq.seeding import substream

from conftest import random_connected_graph


class TestBuildGraph:
    def test_smallest_connected_graph(self):
        g = gaq.build_graph(2, [(0, 1, 1.0)])
        assert np.allclose(g.degrees, [1.0, 1.0])

    def test_path_degrees(self, p3):
        assert np.allclose(p3.degrees, [1.0, 2.0, 1.0])

    def test_isolated_node_rejected(self):
        with pytest.raises(DisconnectedGraph):
            gaq.build_graph(3, [(0, 1, 1.0)])

    def test_two_components_rejected(self):
        with pytest.raises(DisconnectedGraph):
            gaq.build_graph(4, [(0, 1, 1.0), (2, 3, 1.0)])

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoop):
            gaq.build_graph(2, [(0, 0, 1.0), (0, 1, 1.0)])

    def test_negative_weight_rejected(self):
        with pytest.raises(NegativeWeight):
            gaq.build_graph(2, [(0, 1, -0.5)])

    def test_node_id_out_of_range(self):
        with pytest.raises(NodeIdOutOfRange):
            gaq.build_graph(2, [(0, 2, 1.0)])

    def test_duplicate_edges_accumulate(self):
        g = gaq.build_graph(2, [(0, 1, 1.0), (1, 0, 0.5)])
        assert g.adjacency[0, 1] == pytest.approx(1.5)

    def test_default_weight(self):
        g = gaq.build_graph(2, [(0, 1)])
        assert g.adjacency[0, 1] == 1.0


class TestNormalizedLaplacian:
    def test_p2_by_hand(self, p2):
        lap = gaq.normalized_laplacian(p2)
        assert np.array_equal(lap, np.array([[1.0, -1.0], [-1.0, 1.0]]))

    def test_p3_by_hand(self, p3):
        lap = gaq.normalized_laplacian(p3)
        expected = np.array(
            [
                [1.0, -1.0 / np.sqrt(2.0), 0.0],
                [-1.0 / np.sqrt(2.0), 1.0, -1.0 / np.sqrt(2.0)],
                [0.0, -1.0 / np.sqrt(2.0), 1.0],
            ]
        )
        assert np.allclose(lap, expected, atol=1e-15)

    @given(seed=st.integers(0, 300))
    @settings(max_examples=40, deadline=None)
    def test_exact_symmetry_and_spectrum(self, seed):
        g = random_connected_graph(substream(seed, 123))
        lap = gaq.normalized_laplacian(g)
        assert np.max(np.abs(lap - lap.T)) == 0.0
        evals = np.linalg.eigvalsh(lap)
        assert evals[0] >= -1e-10
        assert evals[-1] <= 2 + 1e-10

    @given(seed=st.integers(0, 300))
    @settings(max_examples=40, deadline=None)
    def test_null_space_is_sqrt_degrees(self, seed):
        g = random_connected_graph(substream(seed, 123))
        lap = gaq.normalized_laplacian(g)
        null = np.sqrt(g.degrees)
        assert np.linalg.norm(lap @ null) / np.linalg.norm(null) <= 1e-10


class TestSpectralBasis:
    def test_p2_full_spectrum(self, p2):
        sb = gaq.spectral_basis(p2, 2)
        assert np.allclose(sb.eigenvalues, [0.0, 2.0], atol=1e-12)

    def test_p3_spectrum_and_middle_eigenvector(self, p3):
        sb = gaq.spectral_basis(p3, 3)
        assert np.allclose(sb.eigenvalues, [0.0, 1.0, 2.0], atol=1e-12)
        middle = sb.eigenvectors[:, 1]
        expected = np.array([1.0, 0.0, -1.0]) / np.sqrt(2.0)
        assert np.allclose(np.abs(middle), np.abs(expected), atol=1e-12)

    def test_p3_lowhigh_takes_extremes(self, p3):
        sb = gaq.spectral_basis(p3, 2, gaq.LOWHIGH)
        assert np.allclose(sb.eigenvalues, [0.0, 2.0], atol=1e-12)

    def test_lowhigh_odd_dim_rounds_low_band_up(self, ws_instance):
        sb = gaq.spectral_basis(ws_instance.graph, 5, gaq.LOWHIGH)
        assert np.sum(sb.eigenvalues < 1.0) == 3

    @given(seed=st.integers(0, 200))
    @settings(max_examples=30, deadline=None)
    def test_orthonormal_columns_and_residuals(self, seed):
        g = random_connected_graph(substream(seed, 123), n_min=3)
        d = g.n - 1
        sb = gaq.spectral_basis(g, d)
        gram = sb.eigenvectors.T @ sb.eigenvectors
        assert np.max(np.abs(gram - np.eye(d))) <= 1e-8
        lap = gaq.normalized_laplacian(g)
        for j in range(d):
            resid = lap @ sb.eigenvectors[:, j] - sb.eigenvalues[j] * sb.eigenvectors[:, j]
            assert np.linalg.norm(resid) <= 1e-6

    def test_sign_convention_deterministic(self, ws_instance):
        a = gaq.spectral_basis(ws_instance.graph, 10)
        b = gaq.spectral_basis(ws_instance.graph, 10)
        assert np.array_equal(a.eigenvectors, b.eigenvectors)
        for j in range(10):
            col = a.eigenvectors[:, j]
            assert col[np.nonzero(np.abs(col) > 1e-12)[0][0]] > 0

    def test_invalid_dimensions(self, p3):
        with pytest.raises(InvalidDimension):
            gaq.spectral_basis(p3, 0)
        with pytest.raises(InvalidDimension):
            gaq.spectral_basis(p3, 4)
        with pytest.raises(InvalidDimension):
            gaq.spectral_basis(p3, 1, gaq.LOWHIGH)


class TestBandwidthEstimate:
    def test_null_signal_reports_zero(self, p3):
        lap = gaq.normalized_laplacian(p3)
        for k in (1, 4, 16, 64):
            assert gaq.bandwidth_estimate(np.sqrt(p3.degrees), lap, k) == 0.0

    def test_single_frequency_is_exact(self, p2):
        lap = gaq.normalized_laplacian(p2)
        top = gaq.spectral_basis(p2, 2).eigenvectors[:, 1]
        assert gaq.bandwidth_estimate(top, lap, 8) == pytest.approx(2.0, abs=1e-12)

    def test_mixed_signal_converges_to_top_frequency(self, p3):
        lap = gaq.normalized_laplacian(p3)
        sb = gaq.spectral_basis(p3, 3)
        mixed = (sb.eigenvectors[:, 1] + sb.eigenvectors[:, 2]) / np.sqrt(2.0)
        estimate = gaq.bandwidth_estimate(mixed, lap, 64)
        closed_form = ((1.0 + 2.0**64) / 2.0) ** (1.0 / 64.0)
        assert estimate == pytest.approx(closed_form, abs=1e-10)
        assert abs(estimate - 2.0) < 0.05

    def test_zero_signal_rejected(self, p3):
        with pytest.raises(ZeroSignal):
            gaq.bandwidth_estimate(np.zeros(3), gaq.normalized_laplacian(p3), 4)

    @given(seed=st.integers(0, 200), k=st.sampled_from([1, 2, 4, 8, 16]))
    @settings(max_examples=60, deadline=None)
    def test_bandwidth_sandwich(self, seed, k):
        g = random_connected_graph(substream(seed, 123), n_min=3)
        lap = gaq.normalized_laplacian(g)
        signal = substream(seed, 7).standard_normal(g.n)
        low = gaq.bandwidth_estimate(signal, lap, k)
        high = gaq.bandwidth_estimate(signal, lap, 2 * k)
        assert low <= high + 1e-9
        evals, evecs = np.linalg.eigh(lap)
        support = np.abs(evecs.T @ signal) > 1e-8 * np.linalg.norm(signal)
        assert high <= np.max(evals[support]) + 1e-9

    @given(seed=st.integers(0, 100))
    @settings(max_examples=30, deadline=None)
    def test_single_eigenvector_exactness(self, seed):
        g = random_connected_graph(substream(seed, 123), n_min=3)
        lap = gaq.normalized_laplacian(g)
        sb = gaq.spectral_basis(g, g.n)
        for j in range(g.n):
            if sb.eigenvalues[j] > 1e-8:
                estimate = gaq.bandwidth_estimate(sb.eigenvectors[:, j], lap, 16)
                assert estimate == pytest.approx(sb.eigenvalues[j], abs=1e-8)
