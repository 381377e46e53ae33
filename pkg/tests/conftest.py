import itertools
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from socialcentrality import build_from_edge_list  # noqa: E402
from socialcentrality._backend import available_backends  # noqa: E402

DATA = Path(__file__).parent / "data"
BACKENDS = sorted(available_backends())


def clique(nodes, w=1.0):
    return [(a, b, w) for a, b in itertools.combinations(nodes, 2)]


@pytest.fixture
def k3():
    return build_from_edge_list(clique("abc"))


@pytest.fixture
def k4_pendant():
    # K4 on u,a,b,c plus pendant p hanging off u
    return build_from_edge_list(clique(["u", "a", "b", "c"]) + [("u", "p", 1.0)])


@pytest.fixture
def path3():
    return build_from_edge_list([("a", "b", 1.0), ("b", "c", 1.0)])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def graph_from_dense(a):
    from socialcentrality import build_from_arrays

    n = len(a)
    iu, ju = np.triu_indices(n, 1)
    mask = a[iu, ju] > 0
    return build_from_arrays(n, iu[mask], ju[mask], a[iu, ju][mask])
