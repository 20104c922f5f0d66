"""Shared CLI invocations for the determinism golden files.

Each case names a golden file in tests/golden/ and gives the argv that must
reproduce it byte-for-byte.  tools/make_golden.py regenerates the files from
the same table.
"""

import math
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"
GOLDEN = Path(__file__).resolve().parent / "golden"

_Q0 = str(CONFIGS / "regular_q0.json")
_HARM = str(CONFIGS / "harmonic.json")
_BUMP_AFTER = str(CONFIGS / "harmonic_bump_after.json")
_HALF_PI = repr(math.pi / 2.0)

CASES = [
    ("eig", ["eig", "--model", _Q0, "--count", "3", "--csv"]),
    ("measure", ["measure", "--model", _Q0, "--count", "3"]),
    ("norming", ["norming", "--model", _Q0, "--count", "3"]),
    ("mfun", ["mfun", "--model", _Q0, "--c", "0.5", "--z", "0,1"]),
    ("weber", ["weber", "--nu", "0.5,0", "--x", "1.0"]),
    ("krein_check", ["krein-check", "--model", _Q0, "--c", "0.5",
                     "--n-terms", "16", "--z", "0,1"]),
    ("construct_phi", ["construct-phi", "--model", _Q0, "--c", "0.5",
                       "--n-terms", "16", "--z", "2,1", "--x", "0.3"]),
    ("bm_check", ["bm-check", "--model0", _HARM, "--model1", _BUMP_AFTER,
                  "--c", "1", "--angle", _HALF_PI, "--radii", "100,1000"]),
    ("hl_check", ["hl-check", "--model", _HARM, "--c", "0",
                  "--angle", _HALF_PI, "--radii", "100,1000"]),
    ("invert", ["invert", "--model", _Q0, "--c", "0.5",
                "--interval", "5,15"]),
    ("parseval", ["parseval", "--model", _Q0, "--count", "5", "--c", "0.5"]),
    ("exponent", ["exponent", "--model", _Q0, "--count", "30"]),
]
