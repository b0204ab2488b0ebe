"""Hot graph kernels: triangle counting and k-clique enumeration.

The compiled extension is used when it built; otherwise the pure-Python
implementation takes over transparently. ``BACKEND`` names the one in
use. ``benchmarks/bench_kernels.py`` compares the two.
"""

try:
    from binet._kernels import _ckern as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built on this install
    from binet._kernels import _pykern as _impl

    BACKEND = "python"

triangle_counts = _impl.triangle_counts
count_cliques = _impl.count_cliques

__all__ = ["BACKEND", "triangle_counts", "count_cliques"]
