import subprocess
import sys
from pathlib import Path

SCRIPT = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def test_benchmark_runs():
    out = subprocess.run([sys.executable, str(SCRIPT), "--repeat", "1"], capture_output=True, text=True, check=True, timeout=600)
    assert out.stdout.startswith("backends:")
    assert "python rref" in out.stdout and out.stdout.count("end to end") == 2
