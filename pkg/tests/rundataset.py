"""Drive the full sample dataset through the command-line interface.

Usage: python rundataset.py <session-file> <csv-out>

Runs every entry command through the real argv surface (exit codes checked),
then exports the ranking. Exits nonzero on the first failing command.
"""

import sys

from conftest import (
    LATENT_JUDGMENTS,
    SAMPLE_ATTRIBUTES,
    SAMPLE_ORDER,
    URGENCY_SCORES,
    VALUE_SCORES,
)
from salientrank.cli import main


def commands(session_file: str, csv_out: str):
    yield ["init", session_file, "--name", "Sample"]
    for sid in SAMPLE_ORDER:
        power, legitimacy, urgency = SAMPLE_ATTRIBUTES[sid]
        argv = ["stakeholder", "add", session_file, "--id", sid, "--name", sid.upper()]
        argv += ["--power"] if power else []
        argv += ["--legitimacy"] if legitimacy else []
        argv += ["--urgency"] if urgency else []
        yield argv
    for a, b, judgment in LATENT_JUDGMENTS:
        yield ["compare", session_file, "--group", "latent",
               "--pair", a, b, "--judgment", str(judgment)]
    yield ["priorities", session_file,
           "--override", "latent=0.33",
           "--override", "expectant=0.57",
           "--override", "definitive=0.75"]
    for i in range(1, 9):
        yield ["requirement", "add", session_file,
               "--id", f"Req{i}", "--title", f"Requirement {i}"]
    for factor, table in (("value", VALUE_SCORES), ("urgency", URGENCY_SCORES)):
        for rid, row in table.items():
            for group, score in zip(("latent", "expectant", "definitive"), row):
                yield ["score", session_file, "--factor", factor, "--group", group,
                       "--requirement", rid, "--score", str(score)]
    yield ["validate", session_file]
    yield ["rank", session_file, "--export", csv_out]


def run(session_file: str, csv_out: str) -> int:
    for argv in commands(session_file, csv_out):
        code = main(argv)
        if code != 0:
            print(f"command failed ({code}): {' '.join(argv)}", file=sys.stderr)
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run(sys.argv[1], sys.argv[2]))
