"""Run every applicable toricctl command on the bundled corpus and tabulate exit codes."""

import argparse
from pathlib import Path

import toric_contact
from toric_contact.cli import COMMANDS, emit_report, run

CORPUS = Path(toric_contact.__file__).parent / "corpus"
PENCIL = {"pencil", "fat"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, help="directory for the JSON reports")
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    for path in sorted(CORPUS.glob("*.json")):
        is_pencil = '"pencil"' in path.read_text()
        codes = []
        for command in COMMANDS:
            if (command in PENCIL) != is_pencil:
                continue
            code, report = run(command, str(path))
            codes.append(f"{command}={code}")
            if args.out:
                (args.out / f"{path.stem}.{command}.json").write_bytes(emit_report(report))
        print(f"{path.stem:12s} " + " ".join(codes))


if __name__ == "__main__":
    main()
