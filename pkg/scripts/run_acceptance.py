"""Run the acceptance suite and show the per-criterion PASS/FAIL lines.

Thin wrapper over pytest so the gate can be run as a single command:

    python3 scripts/run_acceptance.py            # all eleven criteria
    python3 scripts/run_acceptance.py -k 06      # just criterion 6

Extra arguments are passed through to pytest.
"""

import subprocess
import sys
from pathlib import Path


def main() -> int:
    root = Path(__file__).resolve().parent.parent
    cmd = [
        sys.executable,
        "-m",
        "pytest",
        str(root / "tests" / "test_acceptance.py"),
        "-v",
        *sys.argv[1:],
    ]
    return subprocess.call(cmd, cwd=root)


if __name__ == "__main__":
    raise SystemExit(main())
