"""Regenerate the checked-in CLI golden files under docs/golden/."""
from __future__ import annotations

import contextlib
import io
import os
import shlex
from pathlib import Path

from quotsing.cli import run

ROOT = Path(__file__).resolve().parents[1]

# one invocation per command; file name -> argv
GOLDEN = {
    "hj.txt": "hj 8 5",
    "critical.txt": "critical 8 3",
    "is-r.txt": "is-r 4 3",
    "group.txt": "group --file docs/inputs/mu8A4.json",
    "family.txt": "family --name muS4 --q 3",
    "sweep.jsonl": "sweep --max-q 1 --max-m 1 --format json",
    "abelian.txt": "abelian 6 4",
}


def capture(argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(shlex.split(argv))
    return code, buf.getvalue()


def render(argv: str) -> str:
    code, text = capture(argv)
    return f"$ quotsing {argv}\n# exit {code}\n{text}"


def main() -> None:
    os.chdir(ROOT)
    out_dir = ROOT / "docs" / "golden"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, argv in GOLDEN.items():
        (out_dir / name).write_text(render(argv))
        print(f"wrote docs/golden/{name}")


if __name__ == "__main__":
    main()
