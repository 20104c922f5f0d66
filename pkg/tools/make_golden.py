"""Regenerate the CLI determinism golden files in tests/golden/.

Run from the repository root:  python3 tools/make_golden.py
"""

import subprocess
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from cli_cases import CASES, GOLDEN


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES:
        t0 = time.monotonic()
        proc = subprocess.run([sys.executable, "-m", "specweyl.cli"] + argv,
                              capture_output=True)
        if proc.returncode != 0:
            sys.stderr.write(f"{name}: exit {proc.returncode}\n")
            sys.stderr.buffer.write(proc.stderr)
            sys.exit(1)
        (GOLDEN / f"{name}.txt").write_bytes(proc.stdout)
        print(f"{name}: {len(proc.stdout)} bytes, "
              f"{time.monotonic() - t0:.1f}s")


if __name__ == "__main__":
    main()
