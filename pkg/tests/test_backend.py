import os
import subprocess
import sys
from pathlib import Path

import pytest

from cgs import _backend

ROOT = Path(__file__).resolve().parents[1]


def backend_in_subprocess(**env):
    code = "import cgs; print(cgs.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={**os.environ, **env}, check=True)
    return out.stdout.strip()


def test_pure_python_override():
    assert backend_in_subprocess(CGS_PURE_PYTHON="1") == "python"


def test_default_prefers_compiled():
    try:
        import cgs._ckernels  # noqa: F401
    except ImportError:
        pytest.skip("compiled kernel not built")
    assert backend_in_subprocess(CGS_PURE_PYTHON="") == "cython"


def test_unknown_backend():
    with pytest.raises(ValueError):
        _backend.kernels("fortran")


def test_benchmark_smoke():
    proc = subprocess.run([sys.executable, str(ROOT / "benchmarks" / "bench_kernels.py"),
                           "--markets", "200", "--repeat", "1"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert "batch clear" in proc.stdout
