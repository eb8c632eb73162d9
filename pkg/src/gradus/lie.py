"""Finite-dimensional Lie algebras given by a sparse structure-constant table."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial

import numpy as np

from .exact import FieldSpec, Span, matmul, nullspace, solve_linear
from .roots import GradeWidth, JSubset, RootSystem, chevalley_constants

__all__ = [
    "Grading",
    "GradingDerivation",
    "JacobiReport",
    "LieAlgebra",
    "NotHomogeneous",
    "TooWideGrading",
    "AlgebraicReport",
    "center",
    "central_quotient",
    "chevalley_algebra",
    "derived_subalgebra",
    "grading_derivation",
    "grading_from_J",
    "graded_ideal_closure",
    "is_algebraic",
    "subalgebra",
    "truncated_exp",
]

# dense exhaustive Jacobi is used up to this dimension
JACOBI_EXHAUSTIVE_MAX = 60


class TooWideGrading(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


class JacobiFails(AssertionError):
    pass


def _float_exact(field: FieldSpec, n_terms: int, bound: int) -> bool:
    return n_terms * bound * bound < 2**52


def _integral(field: FieldSpec, a: np.ndarray):
    """Return ``(int_array, scale)`` with ``a * scale`` integral, for Q arrays."""
    if a.dtype != object:
        return a.astype(np.int64), 1
    den = 1
    for x in a.flat:
        if isinstance(x, Fraction):
            den = den * x.denominator // np.gcd(den, x.denominator)
    scaled = [int(x * den) for x in a.flat]
    big = max((abs(v) for v in scaled), default=0)
    if big >= 2**62:
        return None, den
    return np.array(scaled, dtype=np.int64).reshape(a.shape), den


@dataclass
class JacobiReport:
    ok: bool
    mode: str
    checked: int
    counterexample: tuple | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "mode": self.mode, "checked": self.checked,
                "counterexample": list(self.counterexample) if self.counterexample else None}


class LieAlgebra:
    """A Lie algebra with basis ``e_0..e_{n-1}``.

    The bracket is stored as parallel arrays ``I, J, K, C`` meaning
    ``[e_I, e_J]`` has coefficient ``C`` on ``e_K``.  Both orders of each pair
    are stored.
    """

    def __init__(self, field: FieldSpec, dim: int, I, J, K, C, labels=None,
                 root_system: RootSystem | None = None, generators=None):
        self.field = field
        self.dim = dim
        order = np.lexsort((np.asarray(K), np.asarray(J), np.asarray(I)))
        self.I = np.asarray(I, dtype=np.int64)[order]
        self.J = np.asarray(J, dtype=np.int64)[order]
        self.K = np.asarray(K, dtype=np.int64)[order]
        C = np.asarray(C, dtype=field.dtype)[order] if len(order) else field.zeros(0)
        self.C = field.reduce(C)
        keep = np.array([c != 0 for c in self.C], dtype=bool) if len(self.C) else np.zeros(0, bool)
        self.I, self.J, self.K, self.C = self.I[keep], self.J[keep], self.K[keep], self.C[keep]
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(dim)]
        self.root_system = root_system
        self.generators = None if generators is None else list(generators)
        self._row_start = np.searchsorted(self.I, np.arange(dim + 1))
        self._ad_cache: dict = {}

    # -------------------------------------------------------------- builders
    @classmethod
    def from_brackets(cls, field: FieldSpec, dim: int, table: dict, **kw) -> "LieAlgebra":
        """Build from ``{(i, j): vector}`` for i < j; the opposite order is filled in."""
        I, J, K, C = [], [], [], []
        for (i, j), vec in table.items():
            if i == j:
                continue
            for k in range(dim):
                c = vec[k]
                if c != 0:
                    I += [i, j]
                    J += [j, i]
                    K += [k, k]
                    C += [field(c), field(-c)]
        return cls(field, dim, I, J, K, C, **kw)

    @classmethod
    def from_tensor(cls, field: FieldSpec, T: np.ndarray, **kw) -> "LieAlgebra":
        idx = np.nonzero(np.vectorize(lambda c: c != 0, otypes=[bool])(T)) if T.dtype == object else np.nonzero(T)
        return cls(field, T.shape[0], idx[0], idx[1], idx[2], T[idx], **kw)

    # ------------------------------------------------------------ operations
    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    def bracket(self, x, y) -> np.ndarray:
        f = self.field
        out = f.zeros(self.dim)
        if not len(self.C):
            return out
        x, y = np.asarray(x), np.asarray(y)
        if f.is_finite:
            terms = (x[self.I] * y[self.J] % f.p) * self.C % f.p
        else:
            terms = x[self.I] * y[self.J] * self.C
        np.add.at(out, self.K, terms)
        return f.reduce(out)

    def ad_basis(self, i: int) -> np.ndarray:
        m = self._ad_cache.get(i)
        if m is None:
            m = self.field.zeros((self.dim, self.dim))
            lo, hi = self._row_start[i], self._row_start[i + 1]
            m[self.K[lo:hi], self.J[lo:hi]] = self.C[lo:hi]
            self._ad_cache[i] = m
        return m

    def ad(self, x) -> np.ndarray:
        """Matrix of ``ad(x)``; column j is ``[x, e_j]``."""
        f = self.field
        x = np.asarray(x)
        m = f.zeros((self.dim, self.dim))
        if len(self.C):
            if f.is_finite:
                vals = x[self.I] * self.C % f.p
            else:
                vals = x[self.I] * self.C
            np.add.at(m, (self.K, self.J), vals)
        return f.reduce(m)

    def structure_tensor(self) -> np.ndarray:
        T = self.field.zeros((self.dim,) * 3)
        T[self.I, self.J, self.K] = self.C
        return T

    def is_integral(self) -> bool:
        return self.field.is_finite or all(not isinstance(c, Fraction) for c in self.C)

    # ------------------------------------------------------------- checks
    def check_antisymmetry(self) -> bool:
        T = self.structure_tensor()
        s = T + T.transpose(1, 0, 2)
        return self.field.is_zero(self.field.reduce(s))

    def jacobi(self, exhaustive: bool | None = None, samples: int = 2000, seed: int = 0) -> JacobiReport:
        """Check the Jacobi identity on basis triples.

        Exhaustive (all triples, dense tensor arithmetic) by default when
        ``dim <= 60``.  Otherwise at least ``samples`` basis triples are
        checked: whole slices (e_i, all j, all k) for random i, plus a few
        random vector triples.
        """
        if exhaustive is None:
            exhaustive = self.dim <= JACOBI_EXHAUSTIVE_MAX
        if exhaustive:
            return self._jacobi_dense()
        return self._jacobi_sampled(samples, seed)

    def _numeric_tensor(self):
        """Float copy of the (scaled) structure tensor and the modulus, or None if not exact."""
        n, f = self.dim, self.field
        if f.is_finite:
            vals, bound, mod = np.asarray(self.C, dtype=np.int64), f.p - 1, f.p
        else:
            Ci, _ = _integral(f, np.asarray(self.C, dtype=object))
            if Ci is None:
                return None
            vals, mod = Ci, None
            bound = int(np.abs(Ci).max()) if Ci.size else 0
        if not _float_exact(f, n, bound):
            return None
        Tn = np.zeros((n, n, n))
        Tn[self.I, self.J, self.K] = vals
        return Tn, mod

    def _jacobi_dense(self, rows=None) -> JacobiReport | None:
        n = self.dim
        num = self._numeric_tensor()
        if num is None:
            return self._jacobi_object() if rows is None else None
        Tn, mod = num
        flat_left = Tn.reshape(n, n * n)  # [l, (k, m)]
        mode = "exhaustive" if rows is None else "sampled"
        rows = range(n) if rows is None else rows
        for i in rows:
            # [[e_i, e_j], e_k]
            t1 = (Tn[i] @ flat_left).reshape(n, n, n)
            # [[e_j, e_k], e_i]
            t2 = (Tn.reshape(n * n, n) @ Tn[:, i, :]).reshape(n, n, n)
            # [[e_k, e_i], e_j], indexed (k, j, m) then swapped
            t3 = (Tn[:, i, :] @ flat_left).reshape(n, n, n).transpose(1, 0, 2)
            tot = t1 + t2 + t3
            tot = np.rint(tot).astype(np.int64)
            if mod:
                tot %= mod
            bad = np.argwhere(tot != 0)
            if len(bad):
                j, k, m = bad[0]
                return JacobiReport(False, mode, len(rows) * n * n, (i, int(j), int(k)))
        return JacobiReport(True, mode, len(rows) * n * n)

    def _jacobi_object(self) -> JacobiReport:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            if not self._jacobi_triple(self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)):
                return JacobiReport(False, "exhaustive", 0, (i, j, k))
        return JacobiReport(True, "exhaustive", self.dim**3)

    def _jacobi_triple(self, x, y, z) -> bool:
        b = self.bracket
        s = b(b(x, y), z) + b(b(y, z), x) + b(b(z, x), y)
        return self.field.is_zero(self.field.reduce(s))

    def _jacobi_sampled(self, samples: int, seed: int) -> JacobiReport:
        rng = random.Random(seed)
        n = self.dim
        n_rows = min(n, -(-samples // (n * n)))
        rows = sorted(rng.sample(range(n), n_rows))
        rep = self._jacobi_dense(rows)
        if rep is not None:
            if not rep.ok:
                return rep
            for _ in range(20):
                x, y, z = (self.field.random_array(rng, (n,)) for _ in range(3))
                if not self._jacobi_triple(x, y, z):
                    return JacobiReport(False, "sampled", rep.checked, ("random",))
            return rep
        for _ in range(samples):
            i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if not self._jacobi_triple(self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)):
                return JacobiReport(False, "sampled", samples, (i, j, k))
        for _ in range(samples):
            x, y, z = (self.field.random_array(rng, (n,)) for _ in range(3))
            if not self._jacobi_triple(x, y, z):
                return JacobiReport(False, "sampled", 2 * samples, ("random",))
        return JacobiReport(True, "sampled", 2 * samples)

    # ----------------------------------------------------------- serialize
    def to_json(self) -> dict:
        f = self.field
        brackets = []
        T = {}
        for i, j, k, c in zip(self.I, self.J, self.K, self.C):
            if i < j:
                T.setdefault((int(i), int(j)), []).append([str(int(k)), f.format_scalar(c)])
        for (i, j), out in sorted(T.items()):
            brackets.append({"i": i, "j": j, "out": out})
        return {"field": f.to_json(), "dim": self.dim, "labels": self.labels, "brackets": brackets}

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        f = FieldSpec.from_json(data["field"])
        dim = int(data["dim"])
        table = {}
        for entry in data["brackets"]:
            vec = f.zeros(dim)
            for k, c in entry["out"]:
                vec[int(k)] = f.parse_scalar(c)
            table[(int(entry["i"]), int(entry["j"]))] = vec
        return cls.from_brackets(f, dim, table, labels=data.get("labels"))


# ----------------------------------------------------------------- Chevalley


def chevalley_algebra(rs: RootSystem, field: FieldSpec) -> LieAlgebra:
    """The Chevalley Lie algebra of ``rs`` over ``field``.

    Basis: root vectors ``e_a`` in root order, then ``h_1..h_l``.
    """
    consts = chevalley_constants(rs)
    nr, l = len(rs.roots), rs.rank
    I, J, K, C = [], [], [], []
    for (a, b), n in consts.items():
        I.append(rs.index[a])
        J.append(rs.index[b])
        K.append(rs.index[tuple(x + y for x, y in zip(a, b))])
        C.append(n)
    npos = rs.n_positive
    for idx in range(npos):
        a = rs.roots[idx]
        cor = rs.coroot_coeffs(a)
        for i, c in enumerate(cor):
            assert c.denominator == 1
            if c:
                # [e_a, e_-a] = h_a, [e_-a, e_a] = -h_a
                I += [idx, idx + npos]
                J += [idx + npos, idx]
                K += [nr + i, nr + i]
                C += [int(c), -int(c)]
    for idx, a in enumerate(rs.roots):
        for i in range(l):
            pr = rs.pairing(a, i)
            if pr:
                I += [nr + i, idx]
                J += [idx, nr + i]
                K += [idx, idx]
                C += [pr, -pr]
    C = [field(c) for c in C]
    labels = [_root_label(a) for a in rs.roots] + [f"h{i + 1}" for i in range(l)]
    gens = [rs.index[tuple(int(i == j) for j in range(l))] for i in range(l)]
    gens += [g + npos for g in gens]
    return LieAlgebra(field, nr + l, I, J, K, C, labels=labels, root_system=rs, generators=gens)


def _root_label(a) -> str:
    sign = "-" if any(c < 0 for c in a) else ""
    return f"e{sign}[" + "".join(str(abs(c)) for c in a) + "]"


# ------------------------------------------------------------------ gradings


@dataclass
class Grading:
    """Integer degree per basis vector of ``algebra``."""

    algebra: LieAlgebra
    degrees: np.ndarray
    J: JSubset | None = None

    def __post_init__(self):
        self.degrees = np.asarray(self.degrees, dtype=np.int64)
        if len(self.degrees) != self.algebra.dim:
            raise ValueError("one degree per basis vector required")

    @property
    def bound(self) -> int:
        return int(np.abs(self.degrees).max()) if len(self.degrees) else 0

    def indices(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.degrees == i)

    def dim_of(self, i: int) -> int:
        return int(np.count_nonzero(self.degrees == i))

    def dims(self, n: int | None = None) -> list[int]:
        n = self.bound if n is None else n
        return [self.dim_of(i) for i in range(-n, n + 1)]

    def is_consistent(self) -> bool:
        L = self.algebra
        d = self.degrees
        return bool(np.all(d[L.K] == d[L.I] + d[L.J]))

    def degree_of(self, x) -> int | None:
        """Degree of a homogeneous nonzero vector; None for 0, raises if mixed."""
        support = np.flatnonzero(np.asarray([c != 0 for c in x], dtype=bool))
        if not len(support):
            return None
        degs = set(self.degrees[support].tolist())
        if len(degs) != 1:
            raise NotHomogeneous(f"vector spans degrees {sorted(degs)}")
        return degs.pop()

    def random_element(self, i: int, rng: random.Random) -> np.ndarray:
        f = self.algebra.field
        v = f.zeros(self.algebra.dim)
        idx = self.indices(i)
        if len(idx):
            v[idx] = f.random_array(rng, (len(idx),))
        return v


def grading_from_J(L: LieAlgebra, J: JSubset) -> Grading:
    rs = L.root_system
    if rs is None:
        raise ValueError("grading_from_J needs a Chevalley algebra")
    width = J.width()
    if width is GradeWidth.TOO_WIDE:
        raise TooWideGrading(f"grading too wide (level {J.level(rs.highest_root)})")
    levels = list(J.level_array()) + [0] * rs.rank
    return Grading(L, np.array(levels, dtype=np.int64), J=J)


@dataclass
class GradingDerivation:
    """``element`` is set when the degree map is ``ad`` of an element of L0."""

    grading: Grading
    element: np.ndarray | None

    @property
    def inner(self) -> bool:
        return self.element is not None

    @property
    def kind(self) -> str:
        return "in-algebra" if self.inner else "outer"

    def apply(self, x) -> np.ndarray:
        g = self.grading
        if self.inner:
            return g.algebra.bracket(self.element, x)
        f = g.algebra.field
        return f.reduce(np.asarray(x) * np.array([f(d) for d in g.degrees], dtype=f.dtype))


def grading_derivation(g: Grading) -> GradingDerivation:
    L, f = g.algebra, g.algebra.field
    rs = L.root_system
    if rs is not None and g.J is not None:
        A = f.array(rs.cartan)
        c = solve_linear(A, f.array(g.J.mask), f)
        elem = None
        if c is not None:
            elem = f.zeros(L.dim)
            elem[len(rs.roots):] = c
    else:
        zero = g.indices(0)
        # ad(z) e_k = deg_k e_k for every k, unknown z over L0
        rows, rhs = [], []
        for k in range(L.dim):
            ek = L.basis_vector(k)
            cols = [L.bracket(L.basis_vector(m), ek) for m in zero]
            block = np.stack(cols, axis=1) if cols else f.zeros((L.dim, 0))
            rows.append(block)
            rhs.append(f.reduce(ek * f(int(g.degrees[k]))))
        c = solve_linear(np.concatenate(rows), np.concatenate(rhs), f) if len(zero) else None
        elem = None
        if c is not None:
            elem = f.zeros(L.dim)
            elem[zero] = c
        elif not len(zero) and not np.any(g.degrees):
            elem = f.zeros(L.dim)
    zeta = GradingDerivation(g, elem)
    if elem is not None:
        expected = f.reduce(np.diag(f.array(g.degrees)))
        if not f.is_zero(f.reduce(L.ad(elem) - expected)):
            zeta = GradingDerivation(g, None)
    return zeta


# ------------------------------------------------------------- exponentials


def truncated_exp(L: LieAlgebra, g: Grading, x, s, sigma: int | None = None) -> np.ndarray:
    """The matrix of ``sum_{i<=4} ad(x+s)^i / i!`` for x of degree sigma, s of degree 2 sigma."""
    f = L.field
    dx, ds = g.degree_of(x), g.degree_of(s)
    if sigma is None:
        sigma = dx if dx is not None else (ds // 2 if ds is not None else 1)
    if sigma not in (1, -1):
        raise NotHomogeneous("sigma must be +1 or -1")
    if dx not in (None, sigma) or ds not in (None, 2 * sigma):
        raise NotHomogeneous(f"x has degree {dx}, s has degree {ds}, sigma={sigma}")
    A = L.ad(f.reduce(np.asarray(x) + np.asarray(s)))
    out = f.eye(L.dim)
    power = f.eye(L.dim)
    for i in range(1, 5):
        power = matmul(power, A, f)
        out = f.reduce(out + f.scale(power, f.inv(factorial(i))))
    return out


@dataclass
class AlgebraicReport:
    ok: bool
    mode: str
    tested: int
    counterexample: dict | None = None
    warnings: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "mode": self.mode, "tested": self.tested,
                "counterexample": self.counterexample, "warnings": self.warnings}


def _is_unipotent_for(g: Grading, E: np.ndarray, sigma: int, field: FieldSpec) -> bool:
    # E - 1 must push degree i strictly in direction sigma, so E is invertible
    N = field.reduce(E - field.eye(E.shape[0]))
    rows, cols = np.nonzero(N) if N.dtype != object else np.nonzero(np.vectorize(bool, otypes=[bool])(N))
    if not len(rows):
        return True
    shift = (g.degrees[rows] - g.degrees[cols]) * sigma
    return bool(np.all(shift > 0))


def is_automorphism(L: LieAlgebra, phi: np.ndarray, gens=None) -> tuple[bool, int | None]:
    """Check ``phi [g, y] = [phi g, phi y]`` for generators g and all y.

    That suffices for every x, since the set of x satisfying it for all y is a
    subalgebra.  Returns (ok, first failing generator).
    """
    f = L.field
    gens = L.generators if gens is None else gens
    if gens is None:
        gens = range(L.dim)
    for gi in gens:
        left = matmul(phi, L.ad_basis(gi), f)
        right = matmul(L.ad(phi[:, gi]), phi, f)
        if not f.is_zero(f.reduce(left - right)):
            return False, int(gi)
    return True, None


def is_algebraic(L: LieAlgebra, g: Grading, samples: int = 200, seed: int = 0,
                 exhaustive: bool = False, limit: int = 10**5) -> AlgebraicReport:
    """Test whether every sampled e_sigma(x, s) is an automorphism of L."""
    f = L.field
    if g.bound > 2:
        raise TooWideGrading("is_algebraic needs a grading of width at most 5")
    warnings = []
    cases = []
    if exhaustive:
        if not f.is_finite:
            raise ValueError("exhaustive mode needs a finite field")
        for sigma in (1, -1):
            ix, isx = g.indices(sigma), g.indices(2 * sigma)
            count = f.p ** (len(ix) + len(isx))
            if count > limit:
                raise ValueError(f"exhaustive space has {count} elements, above {limit}")
            for vals in itertools.product(range(f.p), repeat=len(ix) + len(isx)):
                x, s = f.zeros(L.dim), f.zeros(L.dim)
                x[ix] = vals[:len(ix)]
                s[isx] = vals[len(ix):]
                cases.append((sigma, x, s))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        if samples == 0:
            warnings.append("zero samples requested; nothing was tested")
        for t in range(samples):
            sigma = 1 if t % 2 == 0 else -1
            cases.append((sigma, g.random_element(sigma, rng), g.random_element(2 * sigma, rng)))
        mode = "sampled"
    for sigma, x, s in cases:
        E = truncated_exp(L, g, x, s, sigma)
        ok, gen = is_automorphism(L, E)
        if ok and not _is_unipotent_for(g, E, sigma, f):
            ok = False
        if not ok:
            ce = {"sigma": sigma, "x": [f.format_scalar(c) for c in x],
                  "s": [f.format_scalar(c) for c in s], "generator": gen}
            return AlgebraicReport(False, mode, len(cases), ce, warnings)
    return AlgebraicReport(True, mode, len(cases), None, warnings)


# ------------------------------------------------------------- structure


def _test_elements(L: LieAlgebra):
    return L.generators if L.generators is not None else range(L.dim)


def center(L: LieAlgebra) -> np.ndarray:
    """Basis (rows) of ``{x : [x, L] = 0}``."""
    f = L.field
    blocks = []
    for gi in _test_elements(L):
        # x -> [x, e_g] = -ad(e_g) x
        blocks.append(L.ad_basis(gi))
    if not blocks:
        return f.eye(L.dim)
    return nullspace(np.concatenate(blocks), f)


def _all_brackets(L: LieAlgebra) -> np.ndarray:
    f = L.field
    pairs = sorted({(int(i), int(j)) for i, j in zip(L.I, L.J) if i < j})
    out = f.zeros((len(pairs), L.dim))
    index = {p: r for r, p in enumerate(pairs)}
    for i, j, k, c in zip(L.I, L.J, L.K, L.C):
        if i < j:
            out[index[(int(i), int(j))], k] = c
    return out


def derived_subalgebra(L: LieAlgebra) -> np.ndarray:
    """Basis (rows, RREF) of ``[L, L]``."""
    return Span(L.field, L.dim, list(_all_brackets(L))).basis


def subalgebra(L: LieAlgebra, basis) -> LieAlgebra:
    """The Lie algebra structure on the span of ``basis`` rows (must be closed)."""
    f = L.field
    sp = Span(f, L.dim, list(basis))
    B = sp.basis
    d = len(B)
    table = {}
    for a in range(d):
        for b in range(a + 1, d):
            table[(a, b)] = sp.coords(L.bracket(B[a], B[b]))
    return LieAlgebra.from_brackets(f, d, table)


def central_quotient(L: LieAlgebra, Z: np.ndarray | None = None):
    """``L / Z(L)``; returns ``(quotient, kept_indices)``.

    The quotient basis is the images of ``e_i`` for the non-pivot columns of the
    RREF center basis.
    """
    f = L.field
    if Z is None:
        Z = center(L)
    zspan = Span(f, L.dim, list(Z))
    for z in zspan.basis:
        for gi in range(L.dim):
            if not f.is_zero(L.bracket(z, L.basis_vector(gi))):
                raise ValueError("center basis is not central")
    kept = [j for j in range(L.dim) if j not in set(zspan.pivots)]

    def project(v):
        return zspan.residual(v)[kept]

    I, J, K, C = [], [], [], []
    pos = {k: n for n, k in enumerate(kept)}
    for a_i, a in enumerate(kept):
        lo, hi = L._row_start[a], L._row_start[a + 1]
        partners = sorted(set(int(j) for j in L.J[lo:hi]))
        for b in partners:
            if b not in pos:
                continue
            vec = project(L.bracket(L.basis_vector(a), L.basis_vector(b)))
            for k in np.flatnonzero([c != 0 for c in vec]):
                I.append(a_i)
                J.append(pos[b])
                K.append(int(k))
                C.append(vec[k])
    gens = None
    if L.generators is not None and all(gi in pos for gi in L.generators):
        gens = [pos[gi] for gi in L.generators]
    Q = LieAlgebra(f, len(kept), I, J, K, C, labels=[L.labels[k] for k in kept], generators=gens)
    return Q, kept


def graded_ideal_closure(L: LieAlgebra, g: Grading | None, seeds) -> Span:
    """Smallest ideal containing the (homogeneous) seeds, as a :class:`Span`."""
    f = L.field
    sp = Span(f, L.dim)
    queue = []
    for s in seeds:
        s = np.asarray(s)
        if g is not None:
            g.degree_of(s)
        if sp.add(s):
            queue.append(s)
    gens = _test_elements(L)
    while queue:
        v = queue.pop()
        for gi in gens:
            w = L.bracket(L.basis_vector(gi), v)
            if sp.add(w):
                queue.append(w)
        if sp.dim == L.dim:
            break
    return sp


def generated_subalgebra_dim(L: LieAlgebra, gens) -> int:
    """Dimension of the subalgebra generated by the given basis indices."""
    f = L.field
    sp = Span(f, L.dim)
    elems = []
    for gi in gens:
        v = L.basis_vector(gi)
        if sp.add(v):
            elems.append(v)
    frontier = list(elems)
    while frontier:
        new = []
        for v in frontier:
            for gi in gens:
                w = L.bracket(L.basis_vector(gi), v)
                if sp.add(w):
                    new.append(w)
        frontier = new
    return sp.dim
