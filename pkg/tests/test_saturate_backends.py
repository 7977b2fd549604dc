import os
import subprocess
import sys

import pytest

from codo_kg import saturate
from codo_kg.reasoner import _kernel_tables


def _run(code, **env):
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True,
                          env={**os.environ, **env}).stdout.strip()


def test_env_forces_python_fallback():
    assert _run("from codo_kg import saturate; print(saturate.BACKEND)", CODO_KG_PURE_PYTHON="1") == "python"


def test_compiled_kernel_is_default_when_built():
    if "cython" not in saturate.BACKENDS:
        pytest.skip("compiled extension not built")
    assert saturate.BACKEND == "cython"


def test_kernels_emit_identical_derivations(fixture_graph):
    if "cython" not in saturate.BACKENDS:
        pytest.skip("compiled extension not built")
    graph, axioms = fixture_graph
    tables = _kernel_tables(graph, axioms)
    seeds = list(graph.match_ids())
    outputs = []
    for cls in (saturate.PySaturator, saturate.BACKENDS["cython"]):
        kernel = cls(literal_ids=graph.literal_ids, **tables)
        outputs.append(kernel.push(seeds))
        # a second push of the same seeds derives nothing new
        assert kernel.push(seeds) == []
    assert sorted(outputs[0]) == sorted(outputs[1])


def test_compiled_kernel_rejects_oversized_ids(fixture_graph):
    if "cython" not in saturate.BACKENDS:
        pytest.skip("compiled extension not built")
    graph, axioms = fixture_graph
    kernel = saturate.BACKENDS["cython"](literal_ids=set(), **_kernel_tables(graph, axioms))
    with pytest.raises(OverflowError):
        kernel.push([(saturate.MAX_TERM_ID + 1, 1, 2)])
