"""Even weighted Dynkin diagrams and the classification table of structurable gradings.

Classical types are decided with partitions: each admissible partition gives
an h-sequence whose consecutive differences are the diagram labels.  For
exceptional types the bundled list of even diagrams is consulted, and the
verdicts are confirmed structurally by ``cross_validate``.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path

from .exact import FieldSpec
from .lie import chevalley_algebra, grading_derivation, grading_from_J
from .roots import JSubset, RootSystem, admissible_subsets, build_root_system

__all__ = [
    "BadMultiplicity",
    "HSequence",
    "OutOfScope",
    "Partition",
    "TableEntry",
    "UnsupportedWeights",
    "WeightedDiagram",
    "classical_even_diagrams",
    "cross_validate",
    "diagram_from_J",
    "exceptional_diagrams",
    "generate_table",
    "h_sequence_from_partition",
    "is_nilpotent_diagram",
    "load_golden",
    "partitions",
    "table_diff",
]

DATA = Path(__file__).parent / "data"
STRUCTURABLE = "Structurable"
NOT_STRUCTURABLE = "NotStructurable"


class BadMultiplicity(ValueError):
    pass


class UnsupportedWeights(ValueError):
    pass


class OutOfScope(ValueError):
    pass


@dataclass(frozen=True)
class WeightedDiagram:
    root_system: RootSystem
    weights: tuple

    def __post_init__(self):
        if len(self.weights) != self.root_system.rank:
            raise ValueError("one weight per simple root required")
        if any(w not in (0, 1, 2) for w in self.weights):
            raise ValueError(f"weights must lie in {{0,1,2}}, got {self.weights}")

    @property
    def support(self) -> tuple:
        return tuple(i + 1 for i, w in enumerate(self.weights) if w)

    def __str__(self) -> str:
        return "(" + ",".join(str(w) for w in self.weights) + ")"


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)


def partitions(n: int, largest: int | None = None):
    """Partitions of n as weakly decreasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def diagram_from_J(J: JSubset) -> WeightedDiagram:
    return WeightedDiagram(J.root_system, tuple(2 if i + 1 in J.members else 0 for i in range(J.root_system.rank)))


# ------------------------------------------------------------ classical


@dataclass
class HSequence:
    type_label: str
    rank: int
    h: tuple            # full multiset for A, nonnegative half for B, C, D
    weights: tuple
    alternate: tuple | None = None   # second diagram of a very even D partition


def _check_multiplicity(t: str, parts: tuple) -> bool:
    """True for a very even D partition."""
    mult = Counter(parts)
    if t in ("B", "D"):
        bad = [d for d, m in mult.items() if d % 2 == 0 and m % 2]
        if bad:
            raise BadMultiplicity(f"even part {bad[0]} has odd multiplicity")
        return t == "D" and all(d % 2 == 0 for d in parts)
    if t == "C":
        bad = [d for d, m in mult.items() if d % 2 == 1 and m % 2]
        if bad:
            raise BadMultiplicity(f"odd part {bad[0]} has odd multiplicity")
    return False


def h_sequence_from_partition(type_label: str, n: int, partition) -> HSequence:
    """h-values and diagram of a classical nilpotent orbit.

    ``n`` is the size of the natural matrix for type A (so rank n - 1) and the
    rank for types B, C, D.
    """
    t = type_label.upper()
    parts = Partition(tuple(partition)).parts
    total = {"A": n, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[t]
    if sum(parts) != total:
        raise ValueError(f"partition of {sum(parts)} given, {total} expected")
    very_even = _check_multiplicity(t, parts)
    h = sorted((d - 1 - 2 * k for d in parts for k in range(d)), reverse=True)
    if t == "A":
        rank = n - 1
        weights = tuple(h[i] - h[i + 1] for i in range(rank))
        return HSequence(t, rank, tuple(h), weights)
    half = h[:n]
    diffs = [half[i] - half[i + 1] for i in range(n - 1)]
    alt = None
    if t == "B":
        weights = tuple(diffs + [half[-1]])
    elif t == "C":
        weights = tuple(diffs + [2 * half[-1]])
    else:
        weights = tuple(diffs[:-1] + [half[-2] - half[-1], half[-2] + half[-1]])
        if very_even:
            alt = weights[:-2] + (weights[-1], weights[-2])
    return HSequence(t, n, tuple(half), weights, alt)


@lru_cache(maxsize=None)
def classical_even_diagrams(type_label: str, rank: int) -> frozenset:
    """All nilpotent diagrams with weights in {0, 2} for a classical type."""
    t = type_label.upper()
    n = rank + 1 if t == "A" else rank
    total = {"A": n, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[t]
    out = set()
    for parts in partitions(total):
        try:
            hs = h_sequence_from_partition(t, n, parts)
        except BadMultiplicity:
            continue
        for w in (hs.weights, hs.alternate):
            if w is not None and all(x in (0, 2) for x in w):
                out.add(w)
    return frozenset(out)


# ----------------------------------------------------------- exceptional


@lru_cache(maxsize=None)
def exceptional_diagrams() -> dict:
    data = json.loads((DATA / "exceptional_diagrams.json").read_text())
    return {k: frozenset(tuple(w) for w in v) for k, v in data["diagrams"].items()}


def is_nilpotent_diagram(d: WeightedDiagram) -> bool:
    if any(w == 1 for w in d.weights):
        raise UnsupportedWeights("diagrams with weight 1 are not handled")
    rs = d.root_system
    t = rs.type_label
    if t in "ABCD":
        return d.weights in classical_even_diagrams(t, rs.rank)
    support = d.support
    top = rs.highest_root
    if not support or sum(top[i - 1] for i in support) > 2:
        raise OutOfScope(f"{rs.name}: only diagrams of 3- and 5-gradings are bundled")
    return d.weights in exceptional_diagrams()[rs.name]


# ------------------------------------------------------------------ table


@dataclass(frozen=True)
class TableEntry:
    type_label: str
    rank: int
    J: tuple
    verdict: str
    provenance: str

    @property
    def key(self) -> tuple:
        return (self.type_label, self.rank, self.J)

    def to_json(self) -> dict:
        return {"type": self.type_label, "rank": self.rank, "J": list(self.J),
                "verdict": self.verdict, "provenance": self.provenance}

    @classmethod
    def from_json(cls, d: dict) -> "TableEntry":
        return cls(d["type"], int(d["rank"]), tuple(d["J"]), d["verdict"], d.get("provenance", "paper-table"))


def generate_table(type_label: str, rank: int) -> list[TableEntry]:
    rs = build_root_system(type_label, rank)
    prov = "partition-oracle" if rs.type_label in "ABCD" else "paper-table"
    out = []
    for J in admissible_subsets(rs):
        ok = is_nilpotent_diagram(diagram_from_J(J))
        out.append(TableEntry(rs.type_label, rank, J.key, STRUCTURABLE if ok else NOT_STRUCTURABLE, prov))
    return out


def load_golden(path: Path | None = None) -> list[TableEntry]:
    data = json.loads((path or DATA / "golden_table.json").read_text())
    return [TableEntry.from_json(d) for d in data["entries"]]


def table_diff(generated: list[TableEntry], golden: list[TableEntry], types: set | None = None) -> list[str]:
    """Human-readable differences; empty when the verdicts agree entry by entry."""
    if types is not None:
        golden = [e for e in golden if (e.type_label, e.rank) in types]
    gen = {e.key: e.verdict for e in generated}
    gold = {e.key: e.verdict for e in golden}
    lines = []
    for k in sorted(set(gen) | set(gold)):
        a, b = gen.get(k), gold.get(k)
        if a != b:
            t, r, J = k
            lines.append(f"{t}{r} J={list(J)}: generated {a or '-'}, golden {b or '-'}")
    return lines


# --------------------------------------------------------- cross-check


@dataclass
class CrossReport:
    type_label: str
    rank: int
    fields: list
    seed: int
    attempts: int
    entries: list = dc_field(default_factory=list)
    discrepancies: list = dc_field(default_factory=list)
    timing: dict = dc_field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        return {"type": self.type_label, "rank": self.rank, "fields": self.fields, "seed": self.seed,
                "attempts": self.attempts, "consistent": self.consistent,
                "entries": self.entries, "discrepancies": self.discrepancies}


def _informational(rs: RootSystem, field: FieldSpec) -> bool:
    # E8 over GF(5) is reported but not asserted
    return rs.name == "E8" and field.is_finite and field.p == 5


def cross_validate(type_label: str, rank: int, fields: list[FieldSpec], attempts: int = 20, seed: int = 0,
                   exhaustive: bool | None = None, table: list[TableEntry] | None = None) -> CrossReport:
    """Check every table verdict against the unit-pair search over each field."""
    from .structurable import find_unit_pair

    rs = build_root_system(type_label, rank)
    table = table if table is not None else generate_table(type_label, rank)
    rep = CrossReport(rs.type_label, rank, [str(f) for f in fields], seed, attempts)
    for F in fields:
        t0 = time.perf_counter()
        L = chevalley_algebra(rs, F)
        rep.timing[f"build {F}"] = time.perf_counter() - t0
    rows = {e.key: {"J": list(e.J), "verdict": e.verdict, "provenance": e.provenance, "cells": {}} for e in table}
    for F in fields:
        L = chevalley_algebra(rs, F)
        t0 = time.perf_counter()
        for e in table:
            J = JSubset(rs, e.J)
            g = grading_from_J(L, J)
            zeta = grading_derivation(g)
            cell = {"zeta": zeta.kind, "dims": g.dims(2)}
            if not zeta.inner:
                cell["status"] = "skipped-outer-zeta"
                rows[e.key]["cells"][str(F)] = cell
                continue
            res = find_unit_pair(L, g, zeta, attempts=attempts, seed=seed, exhaustive=exhaustive)
            cell.update(res.to_json(F))
            info = _informational(rs, F)
            if info:
                cell["informational"] = True
            if e.verdict == STRUCTURABLE:
                ok = res.found and res.checks.get("bracket_in_zeta_plus_center", False)
            else:
                ok = not res.found
                if ok:
                    cell["status"] = "NotFound-exhaustive" if res.mode == "exhaustive" else "NotFound-sampled"
            cell["consistent"] = bool(ok)
            if not ok and not info:
                rep.discrepancies.append({"J": list(e.J), "field": str(F), "verdict": e.verdict,
                                          "search": res.status})
            rows[e.key]["cells"][str(F)] = cell
        rep.timing[f"search {F}"] = time.perf_counter() - t0
    rep.entries = [rows[k] for k in sorted(rows)]
    return rep
