"""The narrative scripts in notebooks/ run to completion."""
import runpy
import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = sorted((Path(__file__).resolve().parents[1] / "notebooks").glob("*.py"))


@pytest.mark.parametrize("path", SCRIPTS, ids=lambda p: p.name)
def test_script_runs(path, capsys):
    runpy.run_path(str(path), run_name="__main__")
    assert capsys.readouterr().out


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "wqed", "figure", "crw-band"], capture_output=True, text=True, check=True
    ).stdout
    assert out.startswith("# wqed ")
    assert "k,omega" in out
