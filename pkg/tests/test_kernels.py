"""Both kernel backends must agree with each other and with brute force."""

import numpy as np
import pytest

from binet._kernels import _pykern
from binet.generate import erdos_renyi
from binet.metrics import _forward_csr
from tests.conftest import brute_force_k_cliques, brute_force_triangle_counts

try:
    from binet._kernels import _ckern
    BACKENDS = [_pykern, _ckern]
except ImportError:
    BACKENDS = [_pykern]


@pytest.fixture(params=BACKENDS, ids=lambda mod: mod.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


def test_triangle_counts_against_oracle(backend):
    for seed in range(8):
        g = erdos_renyi(20, 0.3, seed=seed)
        indptr, indices = g.undirected_csr()
        got = backend.triangle_counts(indptr, indices)
        assert np.array_equal(got, brute_force_triangle_counts(g))


def test_clique_counts_against_oracle(backend):
    for seed in range(8):
        g = erdos_renyi(18, 0.35, seed=100 + seed)
        fwd_indptr, fwd_indices = _forward_csr(g)
        for k in (3, 4, 5, 6):
            got = backend.count_cliques(fwd_indptr, fwd_indices, k)
            assert got == brute_force_k_cliques(g, k)


def test_edgeless_graph(backend):
    indptr = np.zeros(6, dtype=np.int64)
    indices = np.empty(0, dtype=np.int32)
    assert backend.count_cliques(indptr, indices, 3) == 0
    assert backend.triangle_counts(indptr, indices).tolist() == [0] * 5


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
def test_backends_agree_on_larger_graph():
    g = erdos_renyi(300, 0.05, seed=12)
    indptr, indices = g.undirected_csr()
    fwd_indptr, fwd_indices = _forward_csr(g)
    assert np.array_equal(_pykern.triangle_counts(indptr, indices),
                          _ckern.triangle_counts(indptr, indices))
    for k in (3, 4, 5):
        assert (_pykern.count_cliques(fwd_indptr, fwd_indices, k)
                == _ckern.count_cliques(fwd_indptr, fwd_indices, k))
