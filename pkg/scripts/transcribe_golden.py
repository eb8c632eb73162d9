"""Transcribe the classification table into the bundled golden file.

The table rows are encoded literally below as rules on (type, rank, J).  The
admissible J (3- and 5-gradings) are enumerated from hand-written highest
roots so that this file does not depend on the package's root machinery.
Also writes the list of even exceptional diagrams read off the same rows.
"""

import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "gradus" / "data"

RANKS = {"A": range(1, 9), "B": range(2, 9), "C": range(3, 9), "D": range(4, 9),
         "G": [2], "F": [4], "E": [6, 7, 8]}

EXCEPTIONAL_TOP = {
    ("E", 6): (1, 2, 2, 3, 2, 1),
    ("E", 7): (2, 2, 3, 4, 3, 2, 1),
    ("E", 8): (2, 3, 4, 6, 5, 4, 3, 2),
    ("F", 4): (2, 3, 4, 2),
    ("G", 2): (3, 2),
}

EXCEPTIONAL_ROWS = {
    ("E", 6): [(1, 6), (2,)],
    ("E", 7): [(1,), (2,), (6,), (7,)],
    ("E", 8): [(1,), (8,)],
    ("F", 4): [(1,), (4,)],
    ("G", 2): [(2,)],
}


def highest_root(t, l):
    if t == "A":
        return (1,) * l
    if t == "B":
        return (1,) + (2,) * (l - 1)
    if t == "C":
        return (2,) * (l - 1) + (1,)
    if t == "D":
        return (1,) + (2,) * (l - 3) + (1, 1)
    return EXCEPTIONAL_TOP[(t, l)]


def admissible(t, l):
    top = highest_root(t, l)
    out = [(i,) for i in range(1, l + 1) if top[i - 1] <= 2]
    out += [(i, j) for i in range(1, l + 1) for j in range(i + 1, l + 1) if top[i - 1] + top[j - 1] <= 2]
    return sorted(out, key=lambda J: (len(J), J))


def table_rows(t, l):
    """The J listed in the table for this type and rank."""
    rows = set()
    if t == "A":
        for i in range(1, l + 1):
            if 3 * i <= l + 1:
                rows.add(tuple(sorted({i, l + 1 - i})))
        if l % 2 == 1:
            rows.add(((l + 1) // 2,))
    elif t == "B":
        rows |= {(i,) for i in range(1, l + 1) if 3 * i <= 2 * l + 1}
    elif t == "C":
        rows |= {(i,) for i in range(1, l + 1) if 3 * i <= 2 * l and i % 2 == 0}
        rows.add((l,))
    elif t == "D":
        rows |= {(i,) for i in range(1, l + 1) if 3 * i <= 2 * l}
        if l % 2 == 0:
            rows |= {(l - 1,), (l,)}
    else:
        rows |= set(EXCEPTIONAL_ROWS[(t, l)])
    return rows


def main():
    entries = []
    for t, ranks in RANKS.items():
        for l in ranks:
            rows = table_rows(t, l)
            adm = admissible(t, l)
            missing = rows - set(adm)
            assert not missing, f"table row outside the 5-gradings: {t}{l} {missing}"
            for J in adm:
                entries.append({"type": t, "rank": l, "J": list(J),
                                "verdict": "Structurable" if J in rows else "NotStructurable",
                                "provenance": "paper-table"})
    (DATA / "golden_table.json").write_text(json.dumps(
        {"description": "classification of structurable 5-gradings, transcribed table",
         "entries": entries}, indent=1) + "\n")
    diagrams = {}
    for (t, l), rows in EXCEPTIONAL_ROWS.items():
        diagrams[f"{t}{l}"] = [[2 if i + 1 in J else 0 for i in range(l)] for J in rows]
    (DATA / "exceptional_diagrams.json").write_text(json.dumps(
        {"description": "even weighted diagrams of exceptional nilpotent orbits whose support gives a 3- or 5-grading",
         "diagrams": diagrams}, indent=1) + "\n")
    n_s = sum(e["verdict"] == "Structurable" for e in entries)
    print(f"{len(entries)} entries, {n_s} structurable")


if __name__ == "__main__":
    main()
