import os
import subprocess
import sys

import numpy as np
from conftest import instances
from hypothesis import given
from hypothesis import strategies as st

from sparsebnsl import _backend, _pykernels
from sparsebnsl.arcbounded import _Flat


def test_backend_is_named():
    assert _backend.BACKEND in ("cython", "python")


def test_pure_python_switch():
    env = dict(os.environ, SPARSEBNSL_PURE_PYTHON="1")
    code = "import sparsebnsl, sparsebnsl._backend as b; print(b.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


@given(instances(max_n=6, max_entries=4, empty=True), st.integers(0, 4), st.data())
def test_colored_dp_kernels_agree(inst, k, data):
    c = data.draw(st.integers(1, 6))
    colors = np.array(data.draw(st.lists(st.integers(0, c - 1), min_size=inst.n, max_size=inst.n)),
                      dtype=np.int64)
    flat = _Flat(inst, k)
    args = (c, k, colors, flat.vertex, flat.score, flat.size, flat.start, flat.members, flat.empty)
    fast = _backend.colored_dp(*args, score_bound=flat.bound)
    slow = _pykernels.colored_dp(*args)
    assert fast[0] == slow[0] and list(fast[1]) == list(slow[1])
