import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from powersym import kernels
from powersym._accel import HAVE_NUMBA
from powersym.graph import Graph
from powersym.influence import degree_ordering

from .strategies import multigraphs, orderings

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not available")


def _rows(indptr, indices):
    return [sorted(indices[indptr[v] : indptr[v + 1]].tolist()) for v in range(indptr.size - 1)]


@needs_numba
@given(multigraphs(max_n=20, max_m=60))
def test_csr_routes_agree(g):
    a = kernels.build_csr(g.n, g.src, g.dst, backend="numba")
    b = kernels.build_csr(g.n, g.src, g.dst, backend="numpy")
    assert np.array_equal(a[0], b[0])
    assert _rows(*a) == _rows(*b)


@needs_numba
@given(multigraphs(max_n=20, max_m=60), st.data())
def test_sweep_routes_agree(g, data):
    order = np.array(data.draw(orderings(g.n)), dtype=np.int64)
    a = kernels.shift_sweep(g, order, backend="numba")
    b = kernels.shift_sweep(g, order, backend="numpy")
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


@needs_numba
@given(multigraphs(max_n=20, max_m=60))
def test_core_routes_agree(g):
    assert np.array_equal(kernels.core_peel(g, backend="numba"), kernels.core_peel(g, backend="numpy"))


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.shift_sweep(Graph(2, [0], [1]), np.arange(2), backend="cuda")


def test_empty_graph_sweep():
    g = Graph(3)
    ee, ep, pp = kernels.shift_sweep(g, degree_ordering(g), backend="numpy")
    assert ee.tolist() == [0, 1, 2, 3] and ep.tolist() == [0] * 4 and pp.tolist() == [3, 2, 1, 0]


FALLBACK_SCRIPT = """
import json
import numpy as np
from powersym import kernels
from powersym._accel import HAVE_NUMBA
from powersym.generators import DegreeSequence, generate_configuration
from powersym.influence import shift_diagram
from powersym.elites import core_decomposition
g = generate_configuration(DegreeSequence(np.full(200, 6)), seed=3)
d = shift_diagram(g)
print(json.dumps({"have": HAVE_NUMBA, "backend": kernels.BACKEND, "ep": d.i_ep.tolist(),
                  "core": core_decomposition(g).coreness.tolist()}))
"""


def _run(env_value):
    env = dict(os.environ)
    env.pop("POWERSYM_DISABLE_NUMBA", None)
    if env_value is not None:
        env["POWERSYM_DISABLE_NUMBA"] = env_value
    out = subprocess.run([sys.executable, "-c", FALLBACK_SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_env_flag_forces_numpy_route():
    off = _run("1")
    assert off["have"] is False and off["backend"] == "numpy"
    on = _run(None)
    assert on["ep"] == off["ep"]
    assert on["core"] == off["core"]
