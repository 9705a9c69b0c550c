import os
import subprocess
import sys

import numpy as np
import pytest

from symdist import kernels
from symdist.distance import prepare_two_gammas, random_stabilizer
from symdist.engine import AdmissibilityFilter, new_state, run_bz
from symdist.prep import diagonalize_f2, information_sets, isometry_transform

needs_ext = pytest.mark.skipif(not kernels.HAVE_EXTENSION, reason="compiled extension not built")


def test_backend_selection():
    assert kernels.kernel_class("python").__module__.endswith("_pykernel")
    assert kernels.DEFAULT_BACKEND in kernels.available_backends()
    with pytest.raises(ValueError):
        kernels.kernel_class("fortran")


def test_env_var_forces_fallback():
    env = dict(os.environ, SYMDIST_PURE_PYTHON="1")
    code = "from symdist import kernels; print(kernels.HAVE_EXTENSION, kernels.DEFAULT_BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "python"]


@needs_ext
def test_extension_is_default():
    assert kernels.DEFAULT_BACKEND == "cython"


def _run_all(inst, backend, workers=1):
    a = inst.a
    out = []
    for gammas, even in (
        ([diagonalize_f2(a)], False),
        (prepare_two_gammas(a), False),
        (information_sets(isometry_transform(a)), True),
    ):
        st = run_bz(a, gammas, workers=workers, backend=backend, even_weights=even)
        out.append((st.upper, st.generation, st.trace, st.candidates if workers == 1 else None))
    return out


@needs_ext
@pytest.mark.parametrize("n,k,seed", [(6, 0, 0), (9, 3, 1), (12, 5, 2), (20, 2, 3), (70, 60, 4)])
def test_backends_agree(n, k, seed):
    inst = random_stabilizer(n, k, seed=seed)
    assert _run_all(inst, "cython") == _run_all(inst, "python")


@needs_ext
def test_backends_agree_with_threads():
    inst = random_stabilizer(18, 4, seed=8)
    c = [(u, g) for u, g, _, _ in _run_all(inst, "cython", workers=4)]
    p = [(u, g) for u, g, _, _ in _run_all(inst, "python", workers=4)]
    assert c == p


@pytest.mark.parametrize("backend_name", kernels.available_backends())
def test_kernel_direct_call(backend_name):
    inst = random_stabilizer(5, 2, seed=0)
    gamma = diagonalize_f2(inst.a)
    from symdist.engine import _GammaRunner

    runner = _GammaRunner(gamma, AdmissibilityFilter(inst.a, inst.k), backend_name)
    shared = np.array([new_state([gamma]).upper], dtype=np.int64)
    count, weight, words = runner.kernel.run(1, (), shared)
    assert count == sum(p.size for p in gamma.packages)
    assert words is not None and weight == shared[0]
    assert runner.decode(words).length == 10
