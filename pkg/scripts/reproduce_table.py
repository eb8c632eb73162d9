"""Print the classification table of structurable gradings and diff it against the golden file.

Usage: python3 scripts/reproduce_table.py [--types A3,E7] [--json out.json]
"""

import argparse
import json
import sys
from dataclasses import dataclass

from gradus.nilpotent import generate_table, load_golden, table_diff


@dataclass
class TableConfig:
    types: tuple | None = None
    json_out: str | None = None


def fmt_J(J) -> str:
    return "{" + ",".join(f"a{i}" for i in J) + "}"


def run(cfg: TableConfig) -> int:
    golden = load_golden()
    cells = sorted({(e.type_label, e.rank) for e in golden})
    if cfg.types:
        cells = [c for c in cells if f"{c[0]}{c[1]}" in cfg.types]
    generated = []
    for t, r in cells:
        rows = generate_table(t, r)
        generated += rows
        hits = [fmt_J(e.J) for e in rows if e.verdict == "Structurable"]
        print(f"{t}{r:<2} {len(rows):3d} admissible J   structurable: {'; '.join(hits) or '-'}")
    diff = table_diff(generated, golden, types=set(cells))
    print(f"\n{len(generated)} entries, {sum(e.verdict == 'Structurable' for e in generated)} structurable")
    print("golden diff: " + ("none" if not diff else f"{len(diff)} lines"))
    for line in diff:
        print("  " + line)
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump({"entries": [e.to_json() for e in generated], "diff": diff}, fh, indent=1)
    return 1 if diff else 0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--types", default=None, help="comma list such as A3,G2")
    ap.add_argument("--json", dest="json_out", default=None)
    a = ap.parse_args(argv)
    return run(TableConfig(tuple(a.types.split(",")) if a.types else None, a.json_out))


if __name__ == "__main__":
    sys.exit(main())
