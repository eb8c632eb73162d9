"""Exact scalars and dense linear algebra over Q and GF(p).

Vectors and matrices are plain numpy arrays whose dtype depends on the field:

* GF(p): ``int64`` with entries reduced into ``[0, p)``.
* Q: ``object`` arrays holding ``int`` or ``fractions.Fraction`` entries.
  Integer-dtype arrays are also accepted wherever a rational array is expected.

Every function takes the :class:`FieldSpec` explicitly.  No tolerances are
used anywhere; equality is exact.
"""

from __future__ import annotations

import random
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint
import numpy as np

__all__ = [
    "BadCharacteristic",
    "FieldMismatch",
    "FieldSpec",
    "Q",
    "GF",
    "Span",
    "invert",
    "kernel",
    "primitive_rows",
    "matmul",
    "nullspace",
    "rank",
    "rref",
    "solve_linear",
]

# Rational products above this many scalar multiplications go through flint.
_FLINT_MATMUL_THRESHOLD = 20_000
_MAX_MODULUS = 1 << 24


class BadCharacteristic(ValueError):
    """Raised for GF(2), GF(3) and non-prime moduli."""


class FieldMismatch(TypeError):
    """Raised when arrays over different fields are combined."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The base field: ``FieldSpec("Q")`` or ``FieldSpec("GF", p)``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("Q takes no modulus")
        elif self.kind == "GF":
            if self.p is None or not _is_prime(int(self.p)):
                raise BadCharacteristic(f"modulus {self.p!r} is not prime")
            if self.p in (2, 3):
                raise BadCharacteristic(f"characteristic {self.p} is excluded (need char != 2, 3)")
            if self.p >= _MAX_MODULUS:
                raise ValueError(f"modulus must be below 2**24, got {self.p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # ------------------------------------------------------------------ naming
    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``Q``, ``GF5``, ``GF(5)`` or ``GF_5``."""
        t = text.strip().upper().replace("(", "").replace(")", "").replace("_", "")
        if t in ("Q", "QQ"):
            return cls("Q")
        if t.startswith("GF") and t[2:].isdigit():
            return cls("GF", int(t[2:]))
        raise ValueError(f"cannot parse field {text!r}")

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"GF{self.p}"

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "GF", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return cls("Q") if data["kind"] == "Q" else cls("GF", int(data["p"]))

    @property
    def is_finite(self) -> bool:
        return self.kind == "GF"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def dtype(self):
        return object if self.kind == "Q" else np.int64

    # ----------------------------------------------------------------- scalars
    def __call__(self, x) -> int | Fraction:
        """Coerce ``x`` (int, Fraction, numpy integer or string) into the field."""
        if isinstance(x, str):
            return self.parse_scalar(x)
        if self.kind == "Q":
            if isinstance(x, (int, np.integer)):
                return int(x)
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, flint.fmpq):
                return _from_fmpq(x)
            raise TypeError(f"cannot coerce {x!r} into Q")
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def inv(self, x):
        return invert(x, self)

    def format_scalar(self, x) -> str:
        x = self(x)
        return str(x) if self.kind == "Q" else f"{x} mod {self.p}"

    def parse_scalar(self, text: str):
        t = text.strip().replace("−", "-")
        if " mod " in t:
            value, mod = t.split(" mod ")
            if self.kind != "GF" or int(mod) != self.p:
                raise FieldMismatch(f"{text!r} is not an element of {self}")
            return int(value) % self.p
        return self(Fraction(t))

    # ------------------------------------------------------------------ arrays
    def array(self, data) -> np.ndarray:
        """Build a field array from nested sequences of coercible scalars."""
        if isinstance(data, np.ndarray) and data.dtype != object:
            if self.kind == "GF":
                return np.mod(data.astype(np.int64), self.p)
            return np.vectorize(int, otypes=[object])(data) if data.size else data.astype(object)
        arr = np.array(data, dtype=object)
        if arr.size == 0:
            return np.zeros(arr.shape, dtype=self.dtype)
        out = np.vectorize(self, otypes=[object])(arr)
        return out.astype(np.int64) if self.kind == "GF" else out

    def zeros(self, shape) -> np.ndarray:
        if self.kind == "GF":
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        """Bring the result of ring operations back into canonical form."""
        if self.kind == "GF":
            return np.mod(a, self.p)
        return a

    def is_zero(self, a) -> bool:
        a = np.asarray(a)
        if self.kind == "GF":
            return not np.any(np.mod(a, self.p))
        return all(x == 0 for x in a.flat)

    def scale(self, a: np.ndarray, c) -> np.ndarray:
        c = self(c)
        if self.kind == "GF":
            return np.mod(a * c, self.p)
        return a * c

    def random_array(self, rng: random.Random, shape, bound: int = 5) -> np.ndarray:
        """Uniform over GF(p); integers in ``[-bound, bound]`` over Q."""
        n = int(np.prod(shape)) if shape else 1
        if self.kind == "GF":
            vals = [rng.randrange(self.p) for _ in range(n)]
            return np.array(vals, dtype=np.int64).reshape(shape)
        vals = [rng.randint(-bound, bound) for _ in range(n)]
        return np.array(vals, dtype=object).reshape(shape)

    def check(self, a: np.ndarray, what: str = "array") -> np.ndarray:
        """Raise :class:`FieldMismatch` if ``a`` cannot live over this field."""
        a = np.asarray(a)
        if self.kind == "GF":
            if a.dtype == object or not np.issubdtype(a.dtype, np.integer):
                raise FieldMismatch(f"{what} has dtype {a.dtype}, expected integers mod {self.p}")
            if a.size and (a.min() < 0 or a.max() >= self.p):
                raise FieldMismatch(f"{what} is not reduced mod {self.p}")
        elif a.dtype != object and not np.issubdtype(a.dtype, np.integer):
            raise FieldMismatch(f"{what} has dtype {a.dtype}, expected exact rationals")
        return a


Q = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("GF", p)


def invert(s, field: FieldSpec):
    """Multiplicative inverse; raises ``ZeroDivisionError`` on zero."""
    s = field(s)
    if s == 0:
        raise ZeroDivisionError("zero has no inverse")
    if field.kind == "GF":
        return pow(s, -1, field.p)
    return field(Fraction(1) / s)


# ---------------------------------------------------------------- flint glue


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(int(x))


def _from_fmpq(q: flint.fmpq):
    num, den = int(q.p), int(q.q)
    return num if den == 1 else Fraction(num, den)


def _to_flint(a: np.ndarray) -> flint.fmpq_mat:
    m, n = a.shape
    if a.dtype != object:
        return flint.fmpq_mat(m, n, [int(x) for x in a.ravel()])
    return flint.fmpq_mat(m, n, [_to_fmpq(x) for x in a.ravel()])


def _from_flint(mat: flint.fmpq_mat) -> np.ndarray:
    m, n = mat.nrows(), mat.ncols()
    out = np.empty((m, n), dtype=object)
    flat = [_from_fmpq(q) for q in mat.entries()]
    out.ravel()[:] = flat
    return out


# ------------------------------------------------------------- linear algebra


def matmul(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Exact matrix product over ``field``."""
    if field.kind == "GF":
        p = field.p
        inner = a.shape[-1]
        if inner * (p - 1) ** 2 < 2**52:
            # float64 BLAS is exact while every partial sum stays below 2**53
            prod = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
            return np.mod(np.rint(prod).astype(np.int64), p)
        return np.mod(np.asarray(a, dtype=object) @ np.asarray(b, dtype=object), p).astype(np.int64)
    if a.dtype != object and b.dtype != object:
        ai, bi = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        bound = int(np.abs(ai).max(initial=0)) * int(np.abs(bi).max(initial=0))
        if bound * max(a.shape[-1], 1) < 2**52:
            return np.rint(ai.astype(np.float64) @ bi.astype(np.float64)).astype(np.int64)
        return ai.astype(object) @ bi.astype(object)
    if a.ndim == 2 and b.ndim == 2 and a.shape[0] * a.shape[1] * b.shape[1] > _FLINT_MATMUL_THRESHOLD:
        return _from_flint(_to_flint(a) * _to_flint(b))
    return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.mod(np.array(a, dtype=np.int64), p)
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_q(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m, n = a.shape
    if m == 0 or n == 0:
        return np.zeros((0, n), dtype=object), []
    red, r = _to_flint(a).rref()
    out = _from_flint(red)[:r]
    pivots = []
    for row in out:
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
    return out, pivots


def rref(a, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the RREF and the list of pivot columns.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError("rref expects a matrix")
    field.check(a, "matrix")
    if field.kind == "GF":
        return _rref_mod(a, field.p)
    return _rref_q(a)


def rank(a, field: FieldSpec) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if field.kind == "Q":
        field.check(a, "matrix")
        return _to_flint(a).rank()
    return len(rref(a, field)[1])


def _kernel_from_rref(red: np.ndarray, pivots: Sequence[int], n: int, field: FieldSpec) -> np.ndarray:
    free = [j for j in range(n) if j not in set(pivots)]
    basis = field.zeros((len(free), n))
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, c in enumerate(pivots):
            basis[t, c] = -red[i, f]
    return field.reduce(basis)


def nullspace(a, field: FieldSpec) -> np.ndarray:
    """Basis of ``{v : a @ v = 0}`` as the rows of a ``(k, cols)`` array."""
    a = np.asarray(a)
    n = a.shape[1]
    if a.shape[0] == 0:
        return field.eye(n)
    red, pivots = rref(a, field)
    return _kernel_from_rref(red, pivots, n, field)


def kernel(a, field: FieldSpec, rng: random.Random | None = None, margin: int = 8) -> np.ndarray:
    """Same result space as :func:`nullspace`, faster for tall matrices.

    The rows are first compressed by a random matrix; the kernel of the
    compressed system always contains the true kernel, and the candidate is
    accepted only after checking ``a @ k = 0`` exactly, so the answer is
    certified.  Falls back to :func:`nullspace` when the check fails.
    """
    a = np.asarray(a)
    m, n = a.shape
    if m <= n + margin:
        return nullspace(a, field)
    seed = rng.randrange(2**32) if rng is not None else m * 1_000_003 + n
    gen = np.random.default_rng(seed)
    r = n + margin
    if field.is_finite:
        R = gen.integers(0, field.p, size=(r, m), dtype=np.int64)
    else:
        R = gen.integers(-2, 3, size=(r, m), dtype=np.int64)
    cand = nullspace(matmul(R, a, field), field)
    if not len(cand) or field.is_zero(field.reduce(matmul(a, cand.T, field))):
        return cand
    return nullspace(a, field)


def primitive_rows(a: np.ndarray) -> np.ndarray:
    """Scale each rational row to a primitive integer vector (same row space)."""
    out = []
    for row in a:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        out.append([v // g for v in ints] if g else ints)
    big = max((abs(v) for r in out for v in r), default=0)
    dtype = np.int64 if big < 2**62 else object
    return np.array(out, dtype=dtype).reshape(a.shape)


def solve_linear(a, b, field: FieldSpec) -> np.ndarray | None:
    """One solution of ``a @ x = b``, or ``None`` when the system is inconsistent."""
    a = field.check(np.asarray(a), "matrix")
    b = field.check(np.asarray(b), "right-hand side")
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug = np.concatenate([a.astype(object) if field.kind == "Q" else a, b.reshape(-1, 1)], axis=1)
    if field.kind == "Q":
        aug = aug.astype(object)
    red, pivots = rref(aug, field)
    if pivots and pivots[-1] == n:
        return None
    x = field.zeros(n)
    for i, c in enumerate(pivots):
        x[c] = red[i, n]
    return x


class Span:
    """A subspace of ``field^n`` kept as an RREF basis.

    Supports membership, coordinates with respect to the RREF basis, and
    incremental growth.
    """

    def __init__(self, field: FieldSpec, n: int, vectors: Iterable | None = None):
        self.field = field
        self.n = n
        self.basis = field.zeros((0, n))
        self.pivots: list[int] = []
        if vectors is not None:
            rows = [np.asarray(v) for v in vectors]
            if rows:
                self._reset(np.stack(rows))

    def _reset(self, rows: np.ndarray) -> None:
        stacked = np.concatenate([self.basis, rows]) if len(self.basis) else rows
        if self.field.kind == "Q":
            stacked = stacked.astype(object)
        self.basis, self.pivots = rref(stacked, self.field)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def residual(self, v) -> np.ndarray:
        v = np.asarray(v)
        if not self.pivots:
            return v
        coeffs = v[self.pivots]
        return self.field.reduce(v - matmul(coeffs.reshape(1, -1), self.basis, self.field)[0])

    def __contains__(self, v) -> bool:
        return self.field.is_zero(self.residual(v))

    def coords(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the RREF basis; raises ``ValueError`` if ``v`` is outside."""
        v = np.asarray(v)
        if v not in self:
            raise ValueError("vector is not in the span")
        return v[self.pivots].copy() if self.pivots else self.field.zeros(0)

    def coords_many(self, vectors) -> np.ndarray:
        """Coordinates of each row of ``vectors``; raises ``ValueError`` if any is outside."""
        V = np.asarray(vectors)
        if V.ndim != 2:
            raise ValueError("expected a matrix of row vectors")
        if not self.pivots:
            if not self.field.is_zero(V):
                raise ValueError("vector is not in the span")
            return self.field.zeros((len(V), 0))
        C = V[:, self.pivots]
        back = matmul(C, self.basis, self.field)
        if not self.field.is_zero(self.field.reduce(V - back)):
            raise ValueError("vector is not in the span")
        return C.copy()

    def add(self, v) -> bool:
        """Extend by ``v``; returns True if the dimension grew."""
        if v in self:
            return False
        self._reset(np.asarray(v).reshape(1, -1))
        return True

    def extend(self, vectors) -> None:
        rows = [np.asarray(v) for v in vectors]
        if rows:
            self._reset(np.stack(rows))
