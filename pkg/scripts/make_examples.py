"""Write the bundled structurable-algebra examples as JSON tables.

The tables are small enough to write by hand; this script only fixes the
basis conventions and serializes them.  Sidecars are written separately by
``freeze_example_sidecars.py`` after checking against an independent oracle.
"""

import itertools
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "gradus" / "data" / "examples"


def table(name, dim, mult, inv, unit):
    return {
        "name": name,
        "field": {"kind": "Q"},
        "dim": dim,
        "unit": [str(c) for c in unit],
        "mult": [[[str(c) for c in mult[i][j]] for j in range(dim)] for i in range(dim)],
        "involution": [[str(c) for c in inv[i]] for i in range(dim)],
    }


def unit_vec(n, i):
    return [int(k == i) for k in range(n)]


def k_trivial():
    return table("k-trivial", 1, [[[1]]], [[1]], [1])


def kxk_swap():
    # e1, e2 orthogonal idempotents, involution exchanges them
    mult = [[unit_vec(2, 0), [0, 0]], [[0, 0], unit_vec(2, 1)]]
    inv = [[0, 1], [1, 0]]
    return table("kxk-swap", 2, mult, inv, [1, 1])


def m2_transpose():
    # basis E11, E12, E21, E22 (index 2*r + c), E_ab E_cd = delta_bc E_ad
    idx = lambda r, c: 2 * r + c
    mult = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for a, b, c, d in itertools.product(range(2), repeat=4):
        if b == c:
            mult[idx(a, b)][idx(c, d)][idx(a, d)] = 1
    inv = [unit_vec(4, idx(c, r)) for r in range(2) for c in range(2)]
    return table("M2-transpose", 4, mult, inv, [1, 0, 0, 1])


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for data in (k_trivial(), kxk_swap(), m2_transpose()):
        path = OUT / f"{data['name']}.json"
        path.write_text(json.dumps(data, indent=1) + "\n")
        print("wrote", path)
