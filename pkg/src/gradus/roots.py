"""Reduced irreducible root systems in Bourbaki numbering.

Roots are integer coefficient vectors over the simple roots.  Positive roots
are sorted by height and then by descending coefficient vector; the negative
roots follow in the same order.  Chevalley structure constants are produced
by the extraspecial-pair recursion with ``N = +(p+1)`` on every extraspecial
pair, so the sign table is a deterministic function of this ordering.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

__all__ = [
    "CONVENTION_VERSION",
    "ChevalleyConstants",
    "GradeWidth",
    "InvalidType",
    "JSubset",
    "RootSystem",
    "admissible_subsets",
    "build_root_system",
    "cache_dir",
    "chevalley_constants",
]

CONVENTION_VERSION = "extraspecial-v1"

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class InvalidType(ValueError):
    pass


def cache_dir() -> Path:
    """Directory for cached structure-constant tables (``GRADUS_CACHE_DIR``)."""
    env = os.environ.get("GRADUS_CACHE_DIR")
    return Path(env) if env else Path.home() / ".cache" / "gradus"


def _check_type(type_label: str, rank: int) -> None:
    t = type_label.upper()
    if t in _MIN_RANK:
        if rank < _MIN_RANK[t]:
            raise InvalidType(f"{t}{rank}: rank must be at least {_MIN_RANK[t]}")
    elif t in _FIXED_RANKS:
        if rank not in _FIXED_RANKS[t]:
            raise InvalidType(f"{t}{rank}: rank must be one of {_FIXED_RANKS[t]}")
    else:
        raise InvalidType(f"unknown type {type_label!r}")


def _gram(t: str, l: int) -> np.ndarray:
    """Gram matrix of the simple roots, scaled so short roots have norm 2."""
    g = np.zeros((l, l), dtype=np.int64)
    if t in "ADE":
        np.fill_diagonal(g, 2)
        if t == "A":
            edges = [(i, i + 1) for i in range(l - 1)]
        elif t == "D":
            edges = [(i, i + 1) for i in range(l - 2)] + [(l - 3, l - 1)]
        else:
            edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, l - 1)]
        for i, j in edges:
            g[i, j] = g[j, i] = -1
        return g
    if t == "B":
        for i in range(l - 1):
            g[i, i] = 4
        g[l - 1, l - 1] = 2
        for i in range(l - 1):
            g[i, i + 1] = g[i + 1, i] = -2
        return g
    if t == "C":
        for i in range(l - 1):
            g[i, i] = 2
        g[l - 1, l - 1] = 4
        for i in range(l - 2):
            g[i, i + 1] = g[i + 1, i] = -1
        g[l - 2, l - 1] = g[l - 1, l - 2] = -2
        return g
    if t == "F":
        return np.array([[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]], dtype=np.int64)
    if t == "G":
        return np.array([[2, -3], [-3, 6]], dtype=np.int64)
    raise InvalidType(t)


class RootSystem:
    """All roots of one irreducible reduced type.

    ``cartan[i, j]`` is the pairing of simple root i with the coroot of simple
    root j.  ``roots`` holds the positive roots first and then their negatives.
    """

    def __init__(self, type_label: str, rank: int):
        type_label = type_label.upper()
        _check_type(type_label, rank)
        self.type_label = type_label
        self.rank = rank
        self.gram = _gram(type_label, rank)
        norms = np.diag(self.gram)
        self.cartan = (2 * self.gram) // norms[np.newaxis, :]
        pos = self._positive_roots()
        self.positive = [tuple(int(c) for c in r) for r in pos]
        self.roots = self.positive + [tuple(-c for c in r) for r in self.positive]
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.coeffs = np.array(self.roots, dtype=np.int64)

    def _positive_roots(self) -> list:
        l = self.rank
        simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for r in frontier:
                pair = np.array(r) @ self.cartan  # <r, alpha_i^vee> for each i
                for i in range(l):
                    s = list(r)
                    s[i] -= int(pair[i])
                    s = tuple(s)
                    if s not in found and all(c >= 0 for c in s):
                        found.add(s)
                        nxt.append(s)
            frontier = nxt
        return sorted(found, key=lambda r: (sum(r), tuple(-c for c in r)))

    # ------------------------------------------------------------ basic data
    def __repr__(self) -> str:
        return f"RootSystem({self.type_label}{self.rank})"

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def n_positive(self) -> int:
        return len(self.positive)

    def __len__(self) -> int:
        return len(self.roots)

    def is_root(self, r) -> bool:
        return tuple(r) in self.index

    def coefficient(self, alpha, beta: int) -> int:
        """The coefficient of simple root ``beta`` (1-based) in ``alpha``."""
        alpha = tuple(alpha)
        if alpha not in self.index:
            raise ValueError(f"{alpha} is not a root of {self.name}")
        return alpha[beta - 1]

    @staticmethod
    def height(alpha) -> int:
        return int(sum(alpha))

    def inner(self, a, b) -> int:
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def norm(self, a) -> int:
        return self.inner(a, a)

    def pairing(self, beta, i: int) -> int:
        """<beta, alpha_i^vee> for a 0-based simple index ``i``."""
        return int(np.asarray(beta) @ self.cartan[:, i])

    def coroot_coeffs(self, alpha) -> list[Fraction]:
        """Coefficients of the coroot of ``alpha`` over the simple coroots."""
        n = self.norm(alpha)
        return [Fraction(int(alpha[i]) * int(self.gram[i, i]), n) for i in range(self.rank)]

    @cached_property
    def highest_root(self) -> tuple:
        return max(self.positive, key=lambda r: (sum(r), r))

    def string_p(self, alpha, beta) -> int:
        """Largest p with beta - p*alpha a root."""
        a, b = np.array(alpha), np.array(beta)
        p = 0
        while tuple(b - (p + 1) * a) in self.index:
            p += 1
        return p

    def to_json(self) -> dict:
        return {"type": self.type_label, "rank": self.rank, "roots": [list(r) for r in self.roots]}


def build_root_system(type_label: str, rank: int) -> RootSystem:
    return RootSystem(type_label, rank)


# ------------------------------------------------------------------ constants


@dataclass
class ChevalleyConstants:
    """Signed structure constants ``N[(a, b)]`` for roots with a+b a root."""

    root_system: RootSystem
    table: dict = field(default_factory=dict)
    version: str = CONVENTION_VERSION

    def __getitem__(self, key):
        a, b = key
        return self.table[(tuple(a), tuple(b))]

    def __len__(self) -> int:
        return len(self.table)

    def items(self):
        return self.table.items()

    def check(self) -> list:
        """Pairs violating antisymmetry or ``|N| = p+1``; empty when consistent."""
        rs = self.root_system
        bad = []
        for (a, b), n in self.table.items():
            if abs(n) != rs.string_p(a, b) + 1 or self.table.get((b, a)) != -n:
                bad.append((a, b, n))
        return bad

    def to_json(self) -> dict:
        rs = self.root_system
        return {
            "version": self.version,
            "type": rs.type_label,
            "rank": rs.rank,
            "constants": {
                ",".join(map(str, a)) + "|" + ",".join(map(str, b)): n for (a, b), n in sorted(self.table.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict, rs: RootSystem) -> "ChevalleyConstants":
        if data.get("version") != CONVENTION_VERSION:
            raise ValueError(f"cache version {data.get('version')!r} != {CONVENTION_VERSION!r}")
        if data["type"] != rs.type_label or data["rank"] != rs.rank:
            raise ValueError("cache belongs to a different root system")
        table = {}
        for key, n in data["constants"].items():
            a, b = key.split("|")
            table[(tuple(int(c) for c in a.split(",")), tuple(int(c) for c in b.split(",")))] = int(n)
        return cls(rs, table)


def _compute_constants(rs: RootSystem) -> dict:
    pos_rank = {r: i for i, r in enumerate(rs.positive)}
    add = lambda a, b: tuple(x + y for x, y in zip(a, b))
    neg = lambda a: tuple(-x for x in a)
    ispos = lambda a: pos_rank.get(a) is not None

    # extraspecial pair of every non-simple positive root
    extra = {}
    for i, a in enumerate(rs.positive):
        for b in rs.positive[i + 1:]:
            s = add(a, b)
            if s in pos_rank and s not in extra:
                extra[s] = (a, b)

    special: dict = {}

    def N(a, b):
        # reduce an arbitrary pair to a positive special pair
        if ispos(a) and ispos(b):
            if pos_rank[a] < pos_rank[b]:
                return special_value(a, b)
            return -special_value(b, a)
        if not ispos(a) and not ispos(b):
            return -N(neg(a), neg(b))
        c = neg(add(a, b))
        # a + b + c = 0; N_ab/(c,c) = N_bc/(a,a) = N_ca/(b,b)
        if ispos(a) == ispos(c):
            val = Fraction(rs.norm(c), rs.norm(b)) * N(c, a)
        else:
            val = Fraction(rs.norm(c), rs.norm(a)) * N(b, c)
        assert val.denominator == 1
        return int(val)

    def special_value(a, b):
        key = (a, b)
        if key in special:
            return special[key]
        xi = add(a, b)
        g, d = extra[xi]
        if (g, d) == key:
            val = rs.string_p(a, b) + 1
        else:
            total = Fraction(0)
            bg = tuple(x - y for x, y in zip(b, g))
            ag = tuple(x - y for x, y in zip(a, g))
            if bg in rs.index:
                total += Fraction(N(b, neg(g)) * N(a, neg(d)), rs.norm(bg))
            if ag in rs.index:
                total += Fraction(N(neg(g), a) * N(b, neg(d)), rs.norm(ag))
            val = Fraction(rs.norm(xi)) * total / N(g, d)
            assert val.denominator == 1
            val = int(val)
        special[key] = val
        return val

    table = {}
    for a in rs.roots:
        for b in rs.roots:
            if add(a, b) in rs.index:
                table[(a, b)] = N(a, b)
    return table


_MEMO: dict = {}


def chevalley_constants(rs: RootSystem, use_cache: bool = True) -> ChevalleyConstants:
    """Structure constants for ``rs``; cached on disk under :func:`cache_dir`."""
    key = (rs.type_label, rs.rank)
    if key in _MEMO:
        return _MEMO[key]
    path = cache_dir() / f"constants_{rs.name}_{CONVENTION_VERSION}.json"
    consts = None
    if use_cache and path.exists():
        try:
            consts = ChevalleyConstants.from_json(json.loads(path.read_text()), rs)
            if consts.check():
                consts = None
        except (ValueError, KeyError, json.JSONDecodeError):
            consts = None
    if consts is None:
        consts = ChevalleyConstants(rs, _compute_constants(rs))
        if use_cache:
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                tmp = path.with_suffix(".tmp")
                tmp.write_text(json.dumps(consts.to_json()))
                tmp.replace(path)
            except OSError:
                pass
    _MEMO[key] = consts
    return consts


# ------------------------------------------------------------------ subsets J


class GradeWidth(enum.Enum):
    THREE = "ThreeGraded"
    FIVE = "FiveGraded"
    TOO_WIDE = "TooWide"


@dataclass(frozen=True)
class JSubset:
    """A nonempty set of 1-based simple-root indices."""

    root_system: RootSystem
    members: frozenset

    def __init__(self, root_system: RootSystem, members):
        members = frozenset(int(m) for m in members)
        if not members:
            raise ValueError("J must be nonempty")
        if not members <= set(range(1, root_system.rank + 1)):
            raise ValueError(f"J={sorted(members)} out of range for {root_system.name}")
        object.__setattr__(self, "root_system", root_system)
        object.__setattr__(self, "members", members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return "{" + ",".join(f"a{i}" for i in self) + "}"

    @property
    def key(self) -> tuple:
        return tuple(sorted(self.members))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.root_system.rank, dtype=np.int64)
        m[[i - 1 for i in self.members]] = 1
        return m

    def level(self, alpha) -> int:
        return int(np.asarray(alpha) @ self.mask)

    def levels(self) -> dict:
        return {r: self.level(r) for r in self.root_system.roots}

    def level_array(self) -> np.ndarray:
        return self.root_system.coeffs @ self.mask

    def width(self) -> GradeWidth:
        top = self.level(self.root_system.highest_root)
        if top == 1:
            return GradeWidth.THREE
        if top == 2:
            return GradeWidth.FIVE
        return GradeWidth.TOO_WIDE

    def is_five_grading(self) -> GradeWidth:
        return self.width()

    def component_counts(self) -> dict:
        """Number of roots per level."""
        vals, counts = np.unique(self.level_array(), return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def is_distinguished(self) -> bool:
        counts = self.component_counts()
        return counts.get(0, 0) + self.root_system.rank == counts.get(1, 0)


def admissible_subsets(rs: RootSystem) -> list[JSubset]:
    """All J whose grading is at most 5-wide.

    Only singletons and pairs can qualify, since every simple root appears in
    the highest root with coefficient at least 1.
    """
    top = rs.highest_root
    out = []
    for i in range(1, rs.rank + 1):
        if top[i - 1] <= 2:
            out.append(JSubset(rs, [i]))
    for i in range(1, rs.rank + 1):
        for j in range(i + 1, rs.rank + 1):
            if top[i - 1] + top[j - 1] <= 2:
                out.append(JSubset(rs, [i, j]))
    return sorted(out, key=lambda J: (len(J), J.key))
