import pathlib
import sys

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent / "data"))

import reference_values as ref  # noqa: E402

from pcmri import new_incomplete_pcm  # noqa: E402


@pytest.fixture(scope="session")
def motivating_pcm():
    return new_incomplete_pcm(4, ref.MOTIVATING_ENTRIES)


@pytest.fixture(scope="session")
def example1_pcm():
    return new_incomplete_pcm(4, ref.EXAMPLE1_ENTRIES)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_reciprocal_matrix(rng, n):
    """Complete positive reciprocal matrix with scale-valued entries."""
    from pcmri import SAATY_SCALE

    a = np.ones((n, n))
    values = rng.choice(SAATY_SCALE, size=n * (n - 1) // 2)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = values[k]
            a[j, i] = 1.0 / values[k]
            k += 1
    return a


def random_connected_pcm(rng, n, m):
    """Random incomplete matrix whose missing pattern keeps the graph connected."""
    from pcmri import SAATY_SCALE, is_connected, representing_graph

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    while True:
        drop = rng.choice(len(pairs), size=m, replace=False)
        dropped = {pairs[k] for k in drop}
        entries = [
            (i, j, float(rng.choice(SAATY_SCALE)))
            for (i, j) in pairs
            if (i, j) not in dropped
        ]
        pcm = new_incomplete_pcm(n, entries)
        if is_connected(representing_graph(pcm)):
            return pcm
