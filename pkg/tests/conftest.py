import pytest

from phzero.core import PointCloud, SplitMix64, generate_uniform_cloud

COLLINEAR = [(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]
SQUARE = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
TWO_CLUSTERS = [(0.0, 0.0), (0.1, 0.0), (10.0, 0.0), (10.1, 0.0)]


def cloud_of(points, dim=2):
    return PointCloud(points, dim)


def random_suite(count, n_max=64, dims=(1, 2, 3), suite_seed=2024):
    """Deterministic (seed, n, dim, cloud) tuples with n in [2, n_max]."""
    rng = SplitMix64(suite_seed)
    out = []
    for i in range(count):
        n = 2 + rng.next_u64() % (n_max - 1)
        dim = dims[rng.next_u64() % len(dims)]
        seed = rng.next_u64()
        out.append((seed, n, dim, generate_uniform_cloud(n, dim, seed)))
    return out


@pytest.fixture
def collinear():
    return cloud_of(COLLINEAR)


@pytest.fixture
def square():
    return cloud_of(SQUARE)


@pytest.fixture
def two_clusters():
    return cloud_of(TWO_CLUSTERS)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
