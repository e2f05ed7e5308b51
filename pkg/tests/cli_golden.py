"""Run the golden CLI corpus; ``python tests/cli_golden.py --regen`` rewrites the goldens."""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
DATA = HERE / "data"


def corpus():
    entries = json.loads((GOLDEN / "commands.json").read_text())
    # paths are written relative to the tests directory so goldens stay portable
    return [(name, [a.replace("{data}", "data") for a in args]) for name, args in entries]


def run(args):
    proc = subprocess.run(
        [sys.executable, "-m", "goodvar", *args], capture_output=True, text=True, cwd=HERE
    )
    return f"exit: {proc.returncode}\n--- stdout\n{proc.stdout}--- stderr\n{proc.stderr}"


if __name__ == "__main__" and "--regen" in sys.argv:
    for name, args in corpus():
        (GOLDEN / f"{name}.txt").write_text(run(args))
        print("wrote", name)
