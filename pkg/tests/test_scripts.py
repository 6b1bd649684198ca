import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


@pytest.mark.parametrize("argv", [["run_battery.py", "A2"], ["six_term.py", "A3r"],
                                  ["quiver_extension.py", "A2"], ["gvector_report.py", "A3r"]])
def test_script_runs(argv, tmp_path):
    r = subprocess.run([sys.executable, str(SCRIPTS / argv[0]), *argv[1:]], capture_output=True, text=True,
                       cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    assert r.stdout
