"""Rebuild tests/data and tests/golden by running the CLI.

Usage: python3 tests/make_golden.py
"""

import io
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from cli_cases import CASES, DATA, GOLDEN, data_files  # noqa: E402
from omegalg.cli import main  # noqa: E402


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    if code:
        raise SystemExit(f"{' '.join(argv)} failed with {code}: {err.getvalue()}")
    return out.getvalue()


def build():
    DATA.mkdir(exist_ok=True)
    GOLDEN.mkdir(exist_ok=True)
    for name, text in data_files().items():
        (DATA / name).write_text(text)
    for name, argv in CASES.items():
        (GOLDEN / f"{name}.out").write_text(run(argv))
    print(f"wrote {len(data_files())} inputs and {len(CASES)} goldens")


if __name__ == "__main__":
    build()
