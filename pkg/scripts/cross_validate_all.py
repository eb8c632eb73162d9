"""Run the two-route check (partition oracle vs. unit-pair search) over the whole table.

Usage: python3 scripts/cross_validate_all.py [--fields Q,GF5,GF7] [--types A1,G2,...] [--out report.json]
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass

from gradus.exact import FieldSpec
from gradus.nilpotent import cross_validate, load_golden


@dataclass
class SweepConfig:
    fields: tuple = ("Q", "GF5", "GF7")
    types: tuple | None = None
    seed: int = 0
    attempts: int = 20


def run(cfg: SweepConfig) -> dict:
    fields = [FieldSpec.parse(f) for f in cfg.fields]
    cells = sorted({(e.type_label, e.rank) for e in load_golden()})
    if cfg.types:
        cells = [c for c in cells if f"{c[0]}{c[1]}" in cfg.types]
    out = {"seed": cfg.seed, "fields": list(cfg.fields), "results": [], "timing": {}}
    for t, r in cells:
        t0 = time.perf_counter()
        rep = cross_validate(t, r, fields, attempts=cfg.attempts, seed=cfg.seed)
        dt = time.perf_counter() - t0
        out["results"].append(rep.to_json())
        out["timing"][f"{t}{r}"] = round(dt, 2)
        n_s = sum(e["verdict"] == "Structurable" for e in rep.entries)
        print(f"{t}{r}: {len(rep.entries)} entries, {n_s} structurable, "
              f"{'consistent' if rep.consistent else 'DISCREPANCY'} ({dt:.1f}s)", flush=True)
        for d in rep.discrepancies:
            print("   ", d, flush=True)
    out["consistent"] = all(r["consistent"] for r in out["results"])
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fields", default="Q,GF5,GF7")
    ap.add_argument("--types", default=None, help="comma list such as A3,G2")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--attempts", type=int, default=20)
    ap.add_argument("--out", default=None)
    a = ap.parse_args(argv)
    cfg = SweepConfig(tuple(a.fields.split(",")), tuple(a.types.split(",")) if a.types else None, a.seed, a.attempts)
    out = run(cfg)
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(out, fh, indent=1)
    return 0 if out["consistent"] else 1


if __name__ == "__main__":
    sys.exit(main())
