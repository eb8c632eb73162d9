"""Structurable algebras, the Lie algebra K(A), Kantor pairs and unit pairs.

Operators on A are matrices acting on coordinate columns.  A structurable
algebra is given by its multiplication tensor ``mult[i, j, k]`` (coefficient
of e_k in e_i e_j), the involution matrix (column j is the image of e_j) and
the coordinates of the unit.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .exact import FieldSpec, Span, kernel, matmul, nullspace, solve_linear
from .lie import Grading, GradingDerivation, LieAlgebra, center, grading_derivation

__all__ = [
    "EmptyPair",
    "EqDefFails",
    "JacobiFails",
    "KantorPair",
    "KappaAlgebra",
    "NotInvolution",
    "NotUnital",
    "OuterZeta",
    "StructIdFails",
    "StructurableAlgebra",
    "UnitPairResult",
    "absolute_zero_divisors",
    "check_eps_identity",
    "eps_delta",
    "graded_isomorphism",
    "find_unit_pair",
    "instrl_basis",
    "is_kappa_grading",
    "kappa",
    "load_example",
    "pair_from_grading",
    "psi",
    "skew_split",
    "t_op",
    "u_op",
    "v_op",
    "validate_structurable",
]

EXAMPLES_DIR = Path(__file__).parent / "data" / "examples"
EXAMPLE_NAMES = ("k-trivial", "kxk-swap", "M2-transpose")

# exhaustive search is used when the number of candidates is at most this
EXHAUSTIVE_LIMIT = 10**6
KP_EXHAUSTIVE_DIM = 6


class NotInvolution(ValueError):
    pass


class NotUnital(ValueError):
    pass


class StructIdFails(ValueError):
    def __init__(self, tup):
        super().__init__(f"structurable identity fails on basis tuple {tup}")
        self.tuple = tup


class EqDefFails(ValueError):
    def __init__(self, tup):
        super().__init__(f"[T_z, V_xy] identity fails on basis tuple {tup}")
        self.tuple = tup


class JacobiFails(AssertionError):
    pass


class EmptyPair(ValueError):
    pass


class OuterZeta(ValueError):
    pass


def _ein(spec, *ops, field: FieldSpec):
    if field.is_finite:
        out = np.einsum(spec, *[np.asarray(o, dtype=object) for o in ops])
        return np.mod(out, field.p).astype(np.int64)
    return np.einsum(spec, *[np.asarray(o, dtype=object) for o in ops])


def _first_nonzero(field: FieldSpec, arr: np.ndarray):
    if field.is_finite:
        bad = np.argwhere(np.mod(arr, field.p) != 0)
    else:
        bad = np.argwhere(np.vectorize(lambda c: c != 0, otypes=[bool])(arr)) if arr.size else []
    return tuple(int(i) for i in bad[0]) if len(bad) else None


# ------------------------------------------------------------------ algebra


class StructurableAlgebra:
    def __init__(self, field: FieldSpec, mult, involution, unit, name: str | None = None):
        self.field = field
        self.mult = field.array(mult)
        self.inv = field.array(involution)
        self.unit = field.array(unit)
        self.dim = self.mult.shape[0]
        self.name = name
        if self.mult.shape != (self.dim,) * 3 or self.inv.shape != (self.dim, self.dim):
            raise ValueError("inconsistent table shapes")
        self._V = None

    # ------------------------------------------------------------ io
    @classmethod
    def from_json(cls, data: dict, field: FieldSpec | None = None) -> "StructurableAlgebra":
        src = FieldSpec.from_json(data["field"])
        f = field or src
        n = int(data["dim"])
        conv = lambda t: f(src.parse_scalar(t)) if isinstance(t, str) else f(t)
        mult = np.empty((n, n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                mult[i, j] = [conv(c) for c in data["mult"][i][j]]
        inv = np.empty((n, n), dtype=object)
        for i in range(n):
            inv[:, i] = [conv(c) for c in data["involution"][i]]
        unit = [conv(c) for c in data["unit"]]
        return cls(f, mult, inv, unit, name=data.get("name"))

    def to_json(self) -> dict:
        f = self.field
        fmt = lambda v: [f.format_scalar(c) for c in v]
        return {
            "name": self.name,
            "field": f.to_json(),
            "dim": self.dim,
            "unit": fmt(self.unit),
            "mult": [[fmt(self.mult[i, j]) for j in range(self.dim)] for i in range(self.dim)],
            "involution": [fmt(self.inv[:, i]) for i in range(self.dim)],
        }

    # ------------------------------------------------------------ basics
    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    def product(self, x, y) -> np.ndarray:
        return _ein("i,j,ijk->k", x, y, self.mult, field=self.field)

    def bar(self, x) -> np.ndarray:
        return matmul(self.inv, np.asarray(x).reshape(-1, 1), self.field)[:, 0]

    def L(self, x) -> np.ndarray:
        return _ein("i,ijk->kj", x, self.mult, field=self.field)

    def R(self, x) -> np.ndarray:
        return _ein("j,ijk->ki", x, self.mult, field=self.field)

    @property
    def V_tensor(self) -> np.ndarray:
        """``Vt[a, b, c, k]``: coefficient of e_k in V_{e_a, e_b} e_c."""
        if self._V is None:
            f = self.field
            P = _ein("ajk,jb->abk", self.mult, self.inv, field=f)   # e_a * bar(e_b)
            t1 = _ein("abi,ick->abck", P, self.mult, field=f)
            t2 = _ein("cbi,iak->abck", P, self.mult, field=f)
            t3 = _ein("cai,ibk->abck", P, self.mult, field=f)
            self._V = f.reduce(t1 + t2 - t3)
        return self._V

    def V_matrices(self) -> np.ndarray:
        """``Vm[a, b]`` is the matrix of V_{e_a, e_b}."""
        return self.V_tensor.transpose(0, 1, 3, 2)

    def with_field(self, field: FieldSpec) -> "StructurableAlgebra":
        return StructurableAlgebra.from_json(self.to_json(), field)


def load_example(name: str, field: FieldSpec | None = None) -> tuple[StructurableAlgebra, dict]:
    """A bundled example and its expected-results sidecar."""
    data = json.loads((EXAMPLES_DIR / f"{name}.json").read_text())
    side = json.loads((EXAMPLES_DIR / f"{name}.expected.json").read_text())
    return StructurableAlgebra.from_json(data, field), side


# ---------------------------------------------------------------- operators


def v_op(A: StructurableAlgebra, x, y) -> np.ndarray:
    f = A.field
    xb, yb = A.bar(x), A.bar(y)
    out = A.L(A.product(x, yb))
    out = out + matmul(A.R(x), A.R(yb), f)
    out = out - matmul(A.R(y), A.R(xb), f)
    return f.reduce(out)


def u_op(A: StructurableAlgebra, x, y=None) -> np.ndarray:
    """Matrix of z -> U_{x,y} z = V_{x,z} y (``y`` defaults to ``x``)."""
    y = x if y is None else y
    return _ein("a,b,acbk->kc", x, y, A.V_tensor, field=A.field)


def t_op(A: StructurableAlgebra, z) -> np.ndarray:
    return v_op(A, z, A.unit)


def psi(A: StructurableAlgebra, x, y) -> np.ndarray:
    f = A.field
    out = f.reduce(A.product(x, A.bar(y)) - A.product(y, A.bar(x)))
    if not f.is_zero(f.reduce(A.bar(out) + out)):
        raise AssertionError("psi(x, y) is not skew")
    return out


def skew_split(A: StructurableAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Bases (rows) of the hermitian and skew parts."""
    f = A.field
    I = f.eye(A.dim)
    return nullspace(f.reduce(A.inv - I), f), nullspace(f.reduce(A.inv + I), f)


def eps_delta(A: StructurableAlgebra, op) -> tuple[np.ndarray, np.ndarray]:
    f = A.field
    op = np.asarray(op)
    a1 = matmul(op, A.unit.reshape(-1, 1), f)[:, 0]
    eps = f.reduce(op - A.L(f.reduce(a1 + A.bar(a1))))
    delta = f.reduce(op + A.R(A.bar(a1)))
    return eps, delta


def check_eps_identity(A: StructurableAlgebra) -> tuple | None:
    """First basis pair (a, b) where V_{a,b}^eps != -V_{b,a}, or None."""
    f = A.field
    for a in range(A.dim):
        for b in range(A.dim):
            x, y = A.basis_vector(a), A.basis_vector(b)
            eps, _ = eps_delta(A, v_op(A, x, y))
            if not f.is_zero(f.reduce(eps + v_op(A, y, x))):
                return (a, b)
    return None


def instrl_basis(A: StructurableAlgebra) -> Span:
    """Span of all V_{e_a, e_b}, as flattened n x n matrices."""
    n = A.dim
    Vm = A.V_matrices().reshape(n * n, n * n)
    return Span(A.field, n * n, list(Vm))


# ---------------------------------------------------------------- validate


@dataclass
class StructurableReport:
    dim: int
    skew_dimension: int
    instrl_dimension: int
    checks: dict

    def to_json(self) -> dict:
        return {"dim": self.dim, "skew_dimension": self.skew_dimension,
                "instrl_dimension": self.instrl_dimension, "checks": self.checks}


def validate_structurable(A: StructurableAlgebra) -> StructurableReport:
    f, n = A.field, A.dim
    E = f.eye(n)
    if not f.is_zero(f.reduce(matmul(A.inv, A.inv, f) - E)):
        raise NotInvolution("the involution does not square to the identity")
    if not f.is_zero(f.reduce(A.bar(A.unit) - A.unit)):
        raise NotInvolution("the involution does not fix 1")
    # bar(e_i e_j) = bar(e_j) bar(e_i)
    left = _ein("ijk,lk->ijl", A.mult, A.inv, field=f)
    right = _ein("aj,bi,abl->ijl", A.inv, A.inv, A.mult, field=f)
    bad = _first_nonzero(f, f.reduce(left - right))
    if bad is not None:
        raise NotInvolution(f"the involution is not an anti-automorphism at {bad[:2]}")
    if not f.is_zero(f.reduce(A.L(A.unit) - E)) or not f.is_zero(f.reduce(A.R(A.unit) - E)):
        raise NotUnital("the given unit is not a two-sided identity")

    Vt = A.V_tensor
    Vm = A.V_matrices()
    # [V_ab, V_cd] = V_{{a,b,c}, d} - V_{c, {b,a,d}}
    lhs = f.reduce(_ein("abkm,cdmn->abcdkn", Vm, Vm, field=f) - _ein("cdkm,abmn->abcdkn", Vm, Vm, field=f))
    r1 = _ein("abcm,mdkn->abcdkn", Vt, Vm, field=f)
    r2 = _ein("badm,cmkn->abcdkn", Vt, Vm, field=f)
    bad = _first_nonzero(f, f.reduce(lhs - r1 + r2))
    struct_ok = bad is None
    # [T_z, V_xy] = V_{T_z x, y} - V_{x, T_zbar y}
    Tm = _ein("u,zukn->zkn", A.unit, Vm, field=f)
    lhs2 = f.reduce(_ein("zkm,xymn->zxykn", Tm, Vm, field=f) - _ein("xykm,zmn->zxykn", Vm, Tm, field=f))
    s1 = _ein("zmx,mykn->zxykn", Tm, Vm, field=f)
    Tbar = _ein("wz,wkn->zkn", A.inv, Tm, field=f)
    s2 = _ein("zmy,xmkn->zxykn", Tbar, Vm, field=f)
    bad2 = _first_nonzero(f, f.reduce(lhs2 - s1 + s2))
    if not struct_ok:
        raise StructIdFails(bad[:4])
    if bad2 is not None:
        raise EqDefFails(bad2[:3])
    H, S = skew_split(A)
    return StructurableReport(n, len(S), instrl_basis(A).dim,
                              {"involution": True, "unit": True, "struct_id": n**4, "eqdef": n**3})


# ------------------------------------------------------------------- K(A)

BLOCKS = ("S-", "A-", "Instrl", "A+", "S+")
BLOCK_DEGREE = {"S-": -2, "A-": -1, "Instrl": 0, "A+": 1, "S+": 2}


@dataclass
class KappaAlgebra:
    source: StructurableAlgebra
    algebra: LieAlgebra
    grading: Grading
    block_slices: dict
    skew: Span
    instrl: Span
    jacobi: object = None

    @property
    def block_dims(self) -> tuple:
        return tuple(self.block_slices[b].stop - self.block_slices[b].start for b in BLOCKS)

    def embed(self, block: str, coords) -> np.ndarray:
        v = self.algebra.field.zeros(self.algebra.dim)
        v[self.block_slices[block]] = coords
        return v

    def one(self, sign: str) -> np.ndarray:
        return self.embed("A+" if sign == "+" else "A-", self.source.unit)

    def zeta(self) -> np.ndarray:
        return self.algebra.bracket(self.one("+"), self.one("-"))

    def zeta_acts_as_grading(self) -> bool:
        f = self.algebra.field
        A = self.algebra.ad(self.zeta())
        return f.is_zero(f.reduce(A - np.diag(f.array(self.grading.degrees))))

    def to_json(self) -> dict:
        data = self.algebra.to_json()
        data["blocks"] = {b: [self.block_slices[b].start, self.block_slices[b].stop] for b in BLOCKS}
        data["degrees"] = [int(d) for d in self.grading.degrees]
        return data


def kappa(A: StructurableAlgebra, check: bool = True) -> KappaAlgebra:
    f, n = A.field, A.dim
    _, S = skew_split(A)
    skew = Span(f, n, list(S))
    Sb = skew.basis
    s = len(Sb)
    instrl = instrl_basis(A)
    D = [instrl.basis[m].reshape(n, n) for m in range(instrl.dim)]
    d0 = len(D)
    sizes = {"S-": s, "A-": n, "Instrl": d0, "A+": n, "S+": s}
    slices, pos = {}, 0
    for b in BLOCKS:
        slices[b] = slice(pos, pos + sizes[b])
        pos += sizes[b]
    dim = pos

    elems = []  # (block, payload): vectors in A, or operator matrices
    for b in BLOCKS:
        for t in range(sizes[b]):
            if b in ("S-", "S+"):
                elems.append((b, Sb[t]))
            elif b in ("A-", "A+"):
                elems.append((b, A.basis_vector(t)))
            else:
                elems.append((b, D[t]))

    def vec(block, x):
        out = f.zeros(dim)
        if block in ("S-", "S+"):
            out[slices[block]] = skew.coords(x)
        elif block == "Instrl":
            out[slices[block]] = instrl.coords(np.asarray(x).reshape(-1))
        else:
            out[slices[block]] = x
        return out

    eps = lambda op: eps_delta(A, op)[0]
    delta = lambda op: eps_delta(A, op)[1]
    app = lambda op, x: matmul(op, np.asarray(x).reshape(-1, 1), f)[:, 0]
    zero = f.zeros(dim)

    def rule(bx, x, by, y):
        """Bracket for the canonical ordered block pairs; None if not canonical."""
        key = (bx, by)
        if key == ("Instrl", "Instrl"):
            return vec("Instrl", f.reduce(matmul(x, y, f) - matmul(y, x, f)))
        if key == ("Instrl", "A+"):
            return vec("A+", app(x, y))
        if key == ("Instrl", "A-"):
            return vec("A-", app(eps(x), y))
        if key == ("Instrl", "S+"):
            return vec("S+", app(delta(x), y))
        if key == ("Instrl", "S-"):
            return vec("S-", app(delta(eps(x)), y))
        if key in (("S+", "A+"), ("S-", "A-"), ("S+", "S+"), ("S-", "S-")):
            return zero
        if key == ("S+", "A-"):
            return vec("A+", A.product(x, y))
        if key == ("S-", "A+"):
            return vec("A-", A.product(x, y))
        if key == ("A+", "A-"):
            return vec("Instrl", v_op(A, x, y))
        if key == ("A+", "A+"):
            return vec("S+", psi(A, x, y))
        if key == ("A-", "A-"):
            return vec("S-", psi(A, x, y))
        if key == ("S+", "S-"):
            return vec("Instrl", matmul(A.L(x), A.L(y), f))
        return None

    table = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            bi, xi = elems[i]
            bj, xj = elems[j]
            r = rule(bi, xi, bj, xj)
            if r is None:
                r = f.reduce(-rule(bj, xj, bi, xi))
            table[(i, j)] = r
    labels = [f"{b}[{t}]" for b in BLOCKS for t in range(sizes[b])]
    L = LieAlgebra.from_brackets(f, dim, table, labels=labels)
    degrees = np.array([BLOCK_DEGREE[b] for b in BLOCKS for _ in range(sizes[b])], dtype=np.int64)
    K = KappaAlgebra(A, L, Grading(L, degrees), slices, skew, instrl)
    if check:
        rep = L.jacobi(exhaustive=True)
        K.jacobi = rep
        if not rep.ok:
            raise JacobiFails(f"Jacobi fails on K(A) at basis triple {rep.counterexample}")
        if not K.grading.is_consistent():
            raise JacobiFails("K(A) bracket does not respect the block degrees")
    return K


def graded_isomorphism(K: KappaAlgebra, L: LieAlgebra, g: Grading) -> dict:
    """Compare K(A) with a graded Lie algebra.

    Block dimensions are always compared.  When both sides have dims
    (0, 1, 1, 1, 0) an explicit degree-preserving isomorphism is built and
    checked on all basis pairs.  Otherwise only the dimensions are compared,
    which is a partial check.
    """
    f = L.field
    kd = list(K.block_dims)
    ld = g.dims(2) if g.bound <= 2 else None
    out = {"kappa_dims": kd, "target_dims": ld, "dims_match": kd == ld}
    if not out["dims_match"]:
        out["mode"] = "dims-differ"
        out["isomorphic"] = False
        return out
    if kd != [0, 1, 1, 1, 0]:
        out["mode"] = "dims-match-only"
        out["isomorphic"] = None
        return out
    # K = <1+, 1-, z> with z = [1+, 1-]; send 1+ -> e, 1- -> c f
    e = L.basis_vector(int(g.indices(1)[0]))
    fv = L.basis_vector(int(g.indices(-1)[0]))
    h = L.bracket(e, fv)
    he = L.bracket(h, e)
    k = int(np.flatnonzero([x != 0 for x in e])[0])
    c = f(e[k]) * f.inv(he[k]) if he[k] != 0 else None
    if c is None:
        out.update(mode="explicit-map", isomorphic=False)
        return out
    Kl = K.algebra
    src = [K.one("+"), K.one("-"), K.zeta()]
    img = [e, f.scale(fv, c), f.scale(h, c)]
    S = np.stack(src, axis=1)
    T = np.stack(img, axis=1)
    # phi = T S^-1 on the 3-dim algebra
    from .exact import rank
    if rank(S, f) < 3 or rank(T, f) < 3:
        out.update(mode="explicit-map", isomorphic=False)
        return out
    Sinv = np.stack([solve_linear(S, f.array([int(i == j) for i in range(3)]), f) for j in range(3)], axis=1)
    phi = matmul(T, Sinv, f)
    ok = True
    for i in range(3):
        for j in range(3):
            a, b = Kl.basis_vector(i), Kl.basis_vector(j)
            left = matmul(phi, Kl.bracket(a, b).reshape(-1, 1), f)[:, 0]
            right = L.bracket(matmul(phi, a.reshape(-1, 1), f)[:, 0], matmul(phi, b.reshape(-1, 1), f)[:, 0])
            ok = ok and f.is_zero(f.reduce(left - right))
    out.update(mode="explicit-map", isomorphic=bool(ok))
    return out


def absolute_zero_divisors(A: StructurableAlgebra, samples: int = 200, seed: int = 0) -> dict:
    """Nonzero x with U_x = 0.

    Exhaustive over GF(p) when p^dim is at most the search limit; otherwise a
    scan over basis vectors and random elements (reported as heuristic).
    """
    f, n = A.field, A.dim
    Vt = A.V_tensor
    if f.is_finite and f.p**n <= EXHAUSTIVE_LIMIT:
        X = np.array(list(itertools.product(range(f.p), repeat=n))[1:], dtype=np.int64)
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        rows = [A.basis_vector(i) for i in range(n)]
        rows += [f.random_array(rng, (n,)) for _ in range(samples)]
        X = np.array([r for r in rows if not f.is_zero(r)], dtype=f.dtype)
        mode = "heuristic"
    found = []
    chunk = 4096
    for lo in range(0, len(X), chunk):
        Xc = X[lo:lo + chunk]
        U = _ein("na,nc,abck->nkb", Xc, Xc, Vt, field=f)
        flat = U.reshape(len(Xc), -1)
        if f.is_finite:
            zero = ~np.any(flat % f.p, axis=1)
        else:
            zero = np.array([all(c == 0 for c in row) for row in flat], dtype=bool)
        found.extend(Xc[zero].tolist())
    return {"mode": mode, "tested": int(len(X)), "divisors": found}


# ------------------------------------------------------------ Kantor pairs


class KantorPair:
    """Spaces K+ and K- with products ``<x, y, z>`` in K_sigma for x, z in K_sigma, y in K_-sigma.

    Either built from explicit tensors ``P[sigma][x, y, z, k]`` or from a
    grading, in which case ``<x, y, z> = -[[x, y], z]`` is evaluated through the
    Lie algebra without forming the 4-index tensors unless asked.
    """

    def __init__(self, field: FieldSpec, dims: tuple, tensors: dict | None = None,
                 grading: Grading | None = None):
        self.field = field
        self.dims = {1: dims[0], -1: dims[1]}
        self._tensors = dict(tensors or {})
        self.grading = grading
        self.report = None

    def dim(self, sigma: int) -> int:
        return self.dims[sigma]

    def _embed(self, sigma, x):
        g = self.grading
        v = self.field.zeros(g.algebra.dim)
        v[g.indices(sigma)] = x
        return v

    def triple(self, sigma: int, x, y, z) -> np.ndarray:
        f = self.field
        if sigma in self._tensors:
            return _ein("a,b,c,abck->k", x, y, z, self._tensors[sigma], field=f)
        L = self.grading.algebra
        xy = L.bracket(self._embed(sigma, x), self._embed(-sigma, y))
        out = L.bracket(xy, self._embed(sigma, z))
        return f.reduce(-out[self.grading.indices(sigma)])

    def tensor(self, sigma: int) -> np.ndarray:
        if sigma not in self._tensors:
            g, f = self.grading, self.field
            L = g.algebra
            from .hat import _block_tensor
            P, M, Z = g.indices(sigma), g.indices(-sigma), g.indices(0)
            dt = object if not f.is_finite else np.int64
            B1 = _block_tensor(L, P, M, Z, dt)
            B2 = _block_tensor(L, Z, P, P, dt)
            self._tensors[sigma] = f.reduce(-_ein("xyz,zwk->xywk", B1, B2, field=f))
        return self._tensors[sigma]

    # ---------------------------------------------------------- axioms
    def check(self, exhaustive: bool | None = None, samples: int = 100, seed: int = 0) -> dict:
        if exhaustive is None:
            exhaustive = max(self.dims.values()) <= KP_EXHAUSTIVE_DIM
        if exhaustive:
            rep = self._check_exhaustive()
        else:
            rep = self._check_sampled(samples, seed)
        self.report = rep
        return rep

    def _check_exhaustive(self) -> dict:
        f = self.field
        out = {"mode": "exhaustive", "KP1": True, "KP2": True, "failures": []}
        for sigma in (1, -1):
            P, Pm = self.tensor(sigma), self.tensor(-sigma)
            if P.size == 0:
                continue
            Vop = P.transpose(0, 1, 3, 2)           # Vop[x, y][k, u]
            Vmop = Pm.transpose(0, 1, 3, 2)
            lhs = f.reduce(_ein("xykm,zwmn->xyzwkn", Vop, Vop, field=f) - _ein("zwkm,xymn->xyzwkn", Vop, Vop, field=f))
            r1 = _ein("xyzm,mwkn->xyzwkn", P, Vop, field=f)
            r2 = _ein("yxwm,zmkn->xyzwkn", Pm, Vop, field=f)
            bad = _first_nonzero(f, f.reduce(lhs - r1 + r2))
            if bad is not None:
                out["KP1"] = False
                out["failures"].append({"axiom": "KP1", "sigma": sigma, "tuple": bad[:4]})
            # K_{a,b} z = <a z b> - <b z a>, as an operator K_-sigma -> K_sigma
            Kop = f.reduce(P.transpose(0, 2, 3, 1) - P.transpose(2, 0, 3, 1))   # Kop[a, b][k, z]
            left = f.reduce(_ein("abkm,xymn->abxykn", Kop, Vmop, field=f) + _ein("yxkm,abmn->abxykn", Vop, Kop, field=f))
            c = Kop.transpose(0, 1, 3, 2)          # c[a, b, x, m] = (K_ab x)_m
            right = _ein("abxm,mykn->abxykn", c, Kop, field=f)
            bad = _first_nonzero(f, f.reduce(left - right))
            if bad is not None:
                out["KP2"] = False
                out["failures"].append({"axiom": "KP2", "sigma": sigma, "tuple": bad[:4]})
        out["ok"] = out["KP1"] and out["KP2"]
        return out

    def _check_sampled(self, samples: int, seed: int) -> dict:
        f = self.field
        rng = random.Random(seed)
        out = {"mode": "sampled", "samples": samples, "seed": seed, "KP1": True, "KP2": True, "failures": []}
        T = self.triple

        def rnd(sigma):
            return f.random_array(rng, (self.dims[sigma],))

        for sigma in (1, -1):
            if self.dims[sigma] == 0:
                continue
            V = lambda x, y, u, s=sigma: T(s, x, y, u)
            Kab = lambda a, b, z, s=sigma: f.reduce(T(s, a, z, b) - T(s, b, z, a))
            for _ in range(samples):
                x, z, u = rnd(sigma), rnd(sigma), rnd(sigma)
                y, w = rnd(-sigma), rnd(-sigma)
                lhs = f.reduce(V(x, y, V(z, w, u)) - V(z, w, V(x, y, u)))
                rhs = f.reduce(V(T(sigma, x, y, z), w, u) - V(z, T(-sigma, y, x, w), u))
                if not f.is_zero(f.reduce(lhs - rhs)):
                    out["KP1"] = False
                    out["failures"].append({"axiom": "KP1", "sigma": sigma})
                    break
            for _ in range(samples):
                a, b, y = rnd(sigma), rnd(sigma), rnd(sigma)
                x, z = rnd(-sigma), rnd(-sigma)
                left = f.reduce(Kab(a, b, T(-sigma, x, y, z)) + T(sigma, y, x, Kab(a, b, z)))
                right = Kab(Kab(a, b, x), y, z)
                if not f.is_zero(f.reduce(left - right)):
                    out["KP2"] = False
                    out["failures"].append({"axiom": "KP2", "sigma": sigma})
                    break
        out["ok"] = out["KP1"] and out["KP2"]
        return out


def pair_from_grading(L: LieAlgebra, g: Grading, verify: bool = True, samples: int = 100,
                      seed: int = 0, exhaustive: bool | None = None) -> KantorPair:
    if g.bound > 2:
        raise ValueError("pair_from_grading needs a grading of width at most 5")
    dp, dm = g.dim_of(1), g.dim_of(-1)
    if dp + dm == 0:
        raise EmptyPair("L_1 + L_-1 is zero")
    pair = KantorPair(L.field, (dp, dm), grading=g)
    if verify:
        rep = pair.check(exhaustive=exhaustive, samples=samples, seed=seed)
        if not rep["ok"]:
            raise AssertionError(f"Kantor pair axioms fail: {rep['failures']}")
    return pair


# --------------------------------------------------------------- unit pairs


@dataclass
class UnitPairResult:
    found: bool
    u: np.ndarray | None = None
    v: np.ndarray | None = None
    mode: str = ""
    trials: int = 0
    pairs_scanned: int = 0
    central_correction: bool = False
    note: str = ""
    checks: dict = dc_field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.found:
            return "Found"
        return "NotFound-exhaustive" if self.mode == "exhaustive" else "NotFound"

    def to_json(self, field: FieldSpec) -> dict:
        fmt = lambda v: None if v is None else [field.format_scalar(c) for c in v]
        return {"status": self.status, "mode": self.mode, "trials": self.trials,
                "pairs_scanned": self.pairs_scanned, "u": fmt(self.u), "v": fmt(self.v),
                "central_correction": self.central_correction, "note": self.note, "checks": self.checks}


class _UnitSolver:
    """Solve [u, v] in zeta + Z(L) for one side given the other."""

    def __init__(self, L: LieAlgebra, g: Grading, zeta: np.ndarray):
        self.L, self.g, self.f = L, g, L.field
        self.zeta = zeta
        self.P, self.M = g.indices(1), g.indices(-1)
        self.Z = center(L)
        self.zspan = Span(self.f, L.dim, list(self.Z))
        f = self.f
        self.B = f.zeros((len(self.P), len(self.M), L.dim))  # [e_a, e_b] for a in L1, b in L-1
        pa = {int(a): n for n, a in enumerate(self.P)}
        pb = {int(b): n for n, b in enumerate(self.M)}
        for i, j, k, c in zip(L.I, L.J, L.K, L.C):
            if int(i) in pa and int(j) in pb:
                self.B[pa[int(i)], pb[int(j)], k] = c

    def solve_v(self, u_coords):
        """v with [u, v] in zeta + Z, or None."""
        f = self.f
        Mu = _ein("a,abk->kb", u_coords, self.B, field=f)   # columns: [u, e_b]
        return self._solve(Mu)

    def solve_u(self, v_coords):
        f = self.f
        Mv = _ein("b,abk->ka", v_coords, self.B, field=f)   # columns: [e_a, v]
        return self._solve(Mv)

    def _solve(self, cols):
        f = self.f
        A = cols
        if len(self.Z):
            A = np.concatenate([cols, f.reduce(-self.Z.T)], axis=1)
        sol = solve_linear(A, self.zeta, f)
        if sol is None:
            return None
        return sol[:cols.shape[1]]

    def embed(self, sigma, coords):
        v = self.f.zeros(self.L.dim)
        v[self.P if sigma == 1 else self.M] = coords
        return v

    def verify(self, u, v) -> dict:
        f, L = self.f, self.L
        uu, vv = self.embed(1, u), self.embed(-1, v)
        b = L.bracket(uu, vv)
        diff = f.reduce(b - self.zeta)
        exact = f.is_zero(diff)
        in_coset = exact or diff in self.zspan
        # V_{u,v} = -id on L_1 and V_{v,u} = -id on L_-1 for <x,y,z> = -[[x,y],z]
        A = L.ad(b)
        ok_plus = f.is_zero(f.reduce(A[np.ix_(self.P, self.P)] - f.eye(len(self.P))))
        ok_minus = f.is_zero(f.reduce(A[np.ix_(self.M, self.M)] + f.eye(len(self.M))))
        return {"bracket_is_zeta": bool(exact), "bracket_in_zeta_plus_center": bool(in_coset),
                "V_uv_is_minus_id": bool(ok_plus), "V_vu_is_minus_id": bool(ok_minus)}


def find_unit_pair(L: LieAlgebra, g: Grading, zeta: GradingDerivation | None = None, attempts: int = 20,
                   seed: int = 0, exhaustive: bool | None = None) -> UnitPairResult:
    """Search u in L_1, v in L_-1 with [u, v] = zeta (up to a central element).

    Deterministic trials come first: the sum of the L_1 basis, the sum of the
    L_-1 basis, then the same with alternating signs and with weights
    1, 2, 3, ...  Random trials
    alternating sides follow.  Over GF(p) with
    p^(d1+d-1) at most 10^6 every pair is enumerated instead.  A negative
    answer from trials does not prove that no pair exists.
    """
    f = L.field
    if g.bound > 2:
        raise ValueError("find_unit_pair needs a grading of width at most 5")
    zeta = zeta or grading_derivation(g)
    if not zeta.inner:
        raise OuterZeta("the grading derivation is not inner")
    solver = _UnitSolver(L, g, zeta.element)
    dp, dm = len(solver.P), len(solver.M)
    if exhaustive is None:
        exhaustive = f.is_finite and f.p ** (dp + dm) <= EXHAUSTIVE_LIMIT
    if exhaustive:
        return _exhaustive_unit_pair(solver)

    def finish(u, v, mode, trials):
        checks = solver.verify(u, v)
        if not (checks["bracket_in_zeta_plus_center"] and checks["V_uv_is_minus_id"] and checks["V_vu_is_minus_id"]):
            raise AssertionError(f"unit-pair witness failed re-verification: {checks}")
        return UnitPairResult(True, u, v, mode, trials, central_correction=not checks["bracket_is_zeta"],
                              checks=checks)

    trials = 0
    if dp and dm:
        # deterministic candidates: plain sum of basis vectors, alternating signs, distinct weights
        coef = {"deterministic": lambda k: 1, "deterministic-alternating": lambda k: (-1) ** k,
                "deterministic-weighted": lambda k: k + 1}
        for mode, c in coef.items():
            cp = f.array([c(k) for k in range(dp)])
            cm = f.array([c(k) for k in range(dm)])
            trials += 1
            v = solver.solve_v(cp)
            if v is not None:
                return finish(cp, v, mode, trials)
            trials += 1
            u = solver.solve_u(cm)
            if u is not None:
                return finish(u, cm, mode, trials)
        rng = random.Random(seed)
        for t in range(attempts):
            trials += 1
            if t % 2 == 0:
                u = f.random_array(rng, (dp,))
                v = solver.solve_v(u)
            else:
                v = f.random_array(rng, (dm,))
                u = solver.solve_u(v)
            if u is not None and v is not None:
                return finish(u, v, "random", trials)
    return UnitPairResult(False, mode="sampled", trials=trials,
                          note="no unit pair among the trials; this does not prove that none exists")


def _exhaustive_unit_pair(solver: _UnitSolver) -> UnitPairResult:
    f = solver.f
    p = f.p
    dp, dm = len(solver.P), len(solver.M)
    allv = np.array(list(itertools.product(range(p), repeat=dm)), dtype=np.int64)
    zs = solver.zspan
    scanned = 0
    for u in itertools.product(range(p), repeat=dp):
        u = np.array(u, dtype=np.int64)
        Mu = _ein("a,abk->bk", u, solver.B, field=f)          # row b: [u, e_b]
        prods = matmul(allv, Mu, f)                             # row: [u, v]
        diff = np.mod(prods - solver.zeta[np.newaxis, :], p)
        if zs.dim:
            diff = np.mod(diff - matmul(diff[:, zs.pivots], zs.basis, f), p)
        hit = np.flatnonzero(~np.any(diff, axis=1))
        if len(hit):
            scanned += int(hit[0]) + 1
            v = allv[hit[0]]
            checks = solver.verify(u, v)
            return UnitPairResult(True, u, v, "exhaustive", 0, scanned,
                                  central_correction=not checks["bracket_is_zeta"], checks=checks)
        scanned += len(allv)
    return UnitPairResult(False, mode="exhaustive", pairs_scanned=scanned,
                          note=f"all {scanned} pairs scanned; no unit pair exists")


@dataclass
class KappaVerdict:
    kind: str                  # "Yes" | "No" | "Undecided"
    reason: str
    unit_pair: UnitPairResult | None = None

    def to_json(self, field: FieldSpec) -> dict:
        return {"verdict": self.kind, "reason": self.reason,
                "unit_pair": self.unit_pair.to_json(field) if self.unit_pair else None}


def is_kappa_grading(L: LieAlgebra, g: Grading, attempts: int = 20, seed: int = 0) -> KappaVerdict:
    """Decide whether the grading comes from a structurable algebra."""
    zeta = grading_derivation(g)
    combinatorial = None
    if L.root_system is not None and g.J is not None:
        from .nilpotent import diagram_from_J, is_nilpotent_diagram
        combinatorial = is_nilpotent_diagram(diagram_from_J(g.J))
    if not zeta.inner:
        if combinatorial is False:
            return KappaVerdict("No", "grading derivation is outer; the diagram is not nilpotent")
        return KappaVerdict("Undecided", "grading derivation is outer; search not possible")
    res = find_unit_pair(L, g, zeta, attempts=attempts, seed=seed)
    if res.found:
        return KappaVerdict("Yes", f"unit pair found ({res.mode})", res)
    if combinatorial is False:
        if res.mode == "exhaustive":
            return KappaVerdict("No", "diagram is not nilpotent; exhaustive search confirms", res)
        return KappaVerdict("No", "diagram is not nilpotent; sampled search found nothing", res)
    if combinatorial is True:
        return KappaVerdict("Undecided", "diagram is nilpotent but the search found no unit pair", res)
    return KappaVerdict("Undecided", "no combinatorial verdict and no unit pair found", res)
