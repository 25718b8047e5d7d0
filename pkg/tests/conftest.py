import pytest

import gaq
from gaq.seeding import substream


@pytest.fixture
def p2():
    return gaq.build_graph(2, [(0, 1, 1.0)])


@pytest.fixture
def p3():
    return gaq.build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture(scope="session")
def ws_instance():
    """One fixed small-world instance with clean band-limited covariates."""
    from dataclasses import replace

    spec = gaq.benchmark_spec("ws", n=100, seed=0)
    spec = replace(spec, perturb_range=None, perturb_mean=0.0, perturb_sd=0.0, noise_sigma2=0.0)
    return gaq.generate_instance(spec)


@pytest.fixture(scope="session")
def ws_noisy_instance():
    """The standard perturbed-covariate instance (noiseless responses)."""
    return gaq.generate_instance(gaq.benchmark_spec("ws", n=100, seed=0))


def random_connected_graph(rng, n_min=2, n_max=8):
    """Random connected graph with unit weights (retries until connected)."""
    n = int(rng.integers(n_min, n_max + 1))
    for _ in range(200):
        p = rng.uniform(0.3, 0.9)
        edges = [(i, j, 1.0) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        try:
            return gaq.build_graph(n, edges)
        except gaq.errors.GaqError:
            continue
    raise RuntimeError("could not generate a connected graph")


@pytest.fixture
def graph_factory():
    def factory(seed, n_min=2, n_max=8):
        return random_connected_graph(substream(seed, 123), n_min, n_max)

    return factory
