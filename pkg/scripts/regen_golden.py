"""Rewrite the golden JSON outputs stored beside the bundled corpus.

Run after an intentional change to output formats, then review the diff.
"""

import contextlib
import io
import sys
from importlib.resources import files

from fuzzyaso.cli import run

CORPUS = files("fuzzyaso") / "corpus"
NAMES = ("intro", "intro_neutral", "constraints", "scheduling")
COMMANDS = {
    "solve": [],
    "rank": ["--strategy", "maximal"],
    "rank_pareto": ["--strategy", "pareto"],
    "verify": [],
}


def golden(name: str, command: str) -> str:
    argv = [command.split("_")[0], str(CORPUS / f"{name}.faso"), "--format", "json", *COMMANDS[command]]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    if code != 0:
        raise SystemExit(f"{' '.join(argv)} exited with {code}")
    return buf.getvalue()


def main() -> None:
    for name in NAMES:
        for command in COMMANDS:
            path = CORPUS / f"{name}.{command}.json"
            text = golden(name, command)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            print(f"wrote {path}", file=sys.stderr)


if __name__ == "__main__":
    main()
