"""The extension L^ of a (2n+1)-graded Lie algebra.

L^_i = L_i for i != 0, and L^_0 is the space of tuples (phi_i), phi_i in
End(L_i), that behave like grading-preserving derivations away from L_0.
Elements of L^_0 are stored as flattened tuples of matrices; ``phi_i[r, c]``
is the coefficient of the r-th basis vector of L_i in ``phi_i`` applied to
the c-th one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import FieldSpec, Span, kernel, matmul, primitive_rows, rref
from .lie import Grading, LieAlgebra

__all__ = ["HatAlgebra", "build_hat", "contains_grading_derivation", "natural_map"]

_CHUNK = 4000


@dataclass
class HatAlgebra:
    parent: LieAlgebra
    grading: Grading
    degrees_nonzero: list          # nonzero degrees i with L_i != 0, ascending
    blocks: dict                   # degree -> basis indices of L_i in the parent
    offsets: dict                  # degree -> offset of phi_i in a flattened tuple
    n_vars: int
    zero_span: Span                # L^_0 inside the flattened tuple space
    algebra: LieAlgebra            # the full bracket table on L^
    hat_degrees: np.ndarray

    @property
    def hat_zero_basis(self) -> np.ndarray:
        return self.zero_span.basis

    @property
    def dim_zero(self) -> int:
        return self.zero_span.dim

    def unflatten(self, vec) -> dict:
        out = {}
        for i in self.degrees_nonzero:
            d = len(self.blocks[i])
            o = self.offsets[i]
            out[i] = np.asarray(vec[o:o + d * d]).reshape(d, d)
        return out

    def flatten(self, phis: dict) -> np.ndarray:
        f = self.parent.field
        v = f.zeros(self.n_vars)
        for i in self.degrees_nonzero:
            d = len(self.blocks[i])
            v[self.offsets[i]:self.offsets[i] + d * d] = np.asarray(phis[i]).reshape(-1)
        return v

    def zeta_tuple(self) -> np.ndarray:
        f = self.parent.field
        return self.flatten({i: f.scale(f.eye(len(self.blocks[i])), i) for i in self.degrees_nonzero})

    def provenance(self) -> dict:
        g = self.grading
        info = {"parent_dim": self.parent.dim, "degrees": [int(d) for d in g.degrees]}
        rs = self.parent.root_system
        if rs is not None:
            info["parent"] = rs.name
        if g.J is not None:
            info["J"] = list(g.J.key)
        return info

    def to_json(self) -> dict:
        data = self.algebra.to_json()
        data["provenance"] = self.provenance()
        data["hat_degrees"] = [int(d) for d in self.hat_degrees]
        return data


def _work_dtype(field: FieldSpec, L: LieAlgebra):
    """int64 when the table can be handled with machine integers, else object."""
    if field.is_finite or L.is_integral():
        return np.int64
    return object


def _block_tensor(L: LieAlgebra, A, B, C, dtype) -> np.ndarray:
    """``T[p, q, r]`` = coefficient of e_{C[r]} in [e_{A[p]}, e_{B[q]}]."""
    T = np.zeros((len(A), len(B), len(C)), dtype=dtype)
    if dtype == object:
        T.fill(0)
    pa = {int(a): n for n, a in enumerate(A)}
    pb = {int(b): n for n, b in enumerate(B)}
    pc = {int(c): n for n, c in enumerate(C)}
    for i, j, k, c in zip(L.I, L.J, L.K, L.C):
        if int(i) in pa and int(j) in pb and int(k) in pc:
            T[pa[int(i)], pb[int(j)], pc[int(k)]] = c
    return T


def _einsum(spec: str, a, b, field: FieldSpec):
    if a.dtype != object and b.dtype != object:
        out = np.einsum(spec, a, b)
        return np.mod(out, field.p) if field.is_finite else out
    out = np.einsum(spec, a.astype(object), b.astype(object))
    return np.mod(out, field.p).astype(np.int64) if field.is_finite else out


def _eye(n: int, dtype) -> np.ndarray:
    e = np.zeros((n, n), dtype=dtype)
    if dtype == object:
        e.fill(0)
    for i in range(n):
        e[i, i] = 1
    return e


class _Constraints:
    """Accumulate constraint rows and stream them into a shrinking kernel basis."""

    def __init__(self, field: FieldSpec, n_vars: int):
        self.field = field
        self.n_vars = n_vars
        self.N = _eye(n_vars, np.int64)  # columns span the current solution space
        self.rows = []
        self.count = 0
        self.total_rows = 0

    def add(self, block: np.ndarray) -> None:
        if block.size:
            self.rows.append(block.reshape(-1, self.n_vars))
            self.count += self.rows[-1].shape[0]
            self.total_rows += self.rows[-1].shape[0]
            if self.count >= _CHUNK:
                self.flush()

    def flush(self) -> None:
        if not self.rows:
            return
        f = self.field
        E = np.concatenate(self.rows)
        self.rows, self.count = [], 0
        if self.N.shape[1] == 0:
            return
        M = f.reduce(matmul(E, self.N, f))
        K = kernel(M, f)  # rows: coefficient vectors over current columns
        if not len(K):
            self.N = np.zeros((self.n_vars, 0), dtype=np.int64)
            return
        N = f.reduce(matmul(self.N, K.T, f))
        red, _ = rref(N.T.copy(), f)
        if not f.is_finite:
            red = primitive_rows(red)
        self.N = red.T.copy()

    def basis(self) -> np.ndarray:
        self.flush()
        return self.N.T


def build_hat(L: LieAlgebra, g: Grading, jacobi: bool = True) -> HatAlgebra:
    f = L.field
    n = g.bound
    degs = [i for i in range(-n, n + 1) if i != 0 and g.dim_of(i)]
    blocks = {i: g.indices(i) for i in range(-n, n + 1)}
    offsets, total = {}, 0
    for i in degs:
        offsets[i] = total
        total += len(blocks[i]) ** 2

    wd = _work_dtype(f, L)
    cons = _Constraints(f, total)

    def var_block(i, coeff):
        """Place a coefficient tensor ``coeff[..., r, c]`` over phi_i into full variable rows."""
        d = len(blocks[i])
        lead = coeff.shape[:-2]
        out = np.zeros(lead + (total,), dtype=wd)
        if wd == object:
            out.fill(0)
        out[..., offsets[i]:offsets[i] + d * d] = coeff.reshape(lead + (d * d,))
        return out

    # derivation conditions, i + j != 0, both i, j nonzero; (j, i) is the same condition
    for i in degs:
        for j in degs:
            k = i + j
            if j < i or k == 0 or k not in degs:
                continue
            A, B, Cb = blocks[i], blocks[j], blocks[k]
            T = _block_tensor(L, A, B, Cb, wd)             # [p, q, m]
            di, dj, dk = len(A), len(B), len(Cb)
            eye_k = _eye(dk, wd)
            # phi_k([a, b]) component r: sum_m T[p,q,m] phi_k[r,m]
            c_k = _einsum("pqm,rs->pqrsm", T, eye_k, f)  # coefficient of phi_k[s, m] in eq (p,q,r)
            # [phi_i a, b] comp r: sum_s phi_i[s,p] T_{i,j}[s,q,r]
            c_i = _einsum("sqr,pt->pqrst", T, _eye(di, wd), f)  # coefficient of phi_i[s, t], t = p
            c_j = _einsum("psr,qt->pqrst", T, _eye(dj, wd), f)  # coefficient of phi_j[s, t], t = q
            row = var_block(k, c_k)
            row = f.reduce(row - var_block(i, c_i))
            row = f.reduce(row - var_block(j, c_j))
            cons.add(row)
    cons.flush()

    # triple-bracket conditions; i and -i give the same condition, so take i > 0
    for i in degs:
        if i < 0 or -i not in degs:
            continue
        A, B = blocks[i], blocks[-i]
        Z = blocks[0]
        T1 = _block_tensor(L, A, B, Z, wd)                 # [p, q, z]
        for j in degs:
            Cb = blocks[j]
            T2 = _block_tensor(L, Z, Cb, Cb, wd)           # [z, t, r]
            W = _einsum("pqz,ztr->pqtr", T1, T2, f)      # [[a_p, b_q], c_t]_r
            di, dmi, dj = len(A), len(B), len(Cb)
            # split by p so that rows stay moderate in size
            for p in range(di):
                Wp = W[p]                                 # [q, t, r]
                # phi_j([[a,b],c]) comp r: sum_m W[p,q,t,m] phi_j[r,m]
                c1 = _einsum("qtm,rs->qtrsm", Wp, _eye(dj, wd), f)
                # [[phi_i a, b], c]: sum_s phi_i[s,p] W[s,q,t,r]
                e_p = np.zeros(di, dtype=wd)
                e_p[p] = 1
                c2 = _einsum("sqtr,u->qtrsu", W, e_p, f)
                # [[a, phi_-i b], c]: sum_s phi_-i[s,q] W[p,s,t,r]
                c3 = _einsum("str,qu->qtrsu", Wp, _eye(dmi, wd), f)
                # [[a, b], phi_j c]: sum_s phi_j[s,t] W[p,q,s,r]
                c4 = _einsum("qsr,tu->qtrsu", Wp, _eye(dj, wd), f)
                row = var_block(j, c1)
                row = f.reduce(row - var_block(i, c2))
                row = f.reduce(row - var_block(-i, c3))
                row = f.reduce(row - var_block(j, c4))
                cons.add(row)
    zero_basis = cons.basis()
    span = Span(f, total, list(zero_basis)) if len(zero_basis) else Span(f, total)

    hat = HatAlgebra(L, g, degs, blocks, offsets, total, span, None, None)
    hat.algebra, hat.hat_degrees = _assemble(hat)
    if jacobi:
        rep = hat.algebra.jacobi()
        if not rep.ok:
            raise AssertionError(f"Jacobi fails on L^ at {rep.counterexample}")
    return hat


def _apply(hat: HatAlgebra, phi: dict, i: int, x_block) -> np.ndarray:
    return matmul(phi[i], np.asarray(x_block).reshape(-1, 1), hat.parent.field)[:, 0]


def _ad_tuple(hat: HatAlgebra, x) -> np.ndarray:
    """(ad(x) restricted to L_i)_i for x in L0, flattened."""
    L, f = hat.parent, hat.parent.field
    A = L.ad(x)
    phis = {i: A[np.ix_(hat.blocks[i], hat.blocks[i])] for i in hat.degrees_nonzero}
    return hat.flatten(phis)


def _assemble(hat: HatAlgebra):
    L, f = hat.parent, hat.parent.field
    g = hat.grading
    # L^ basis: nonzero-degree parent vectors (in order), then the L^_0 basis
    outer = [int(k) for k in range(L.dim) if g.degrees[k] != 0]
    pos = {k: n for n, k in enumerate(outer)}
    n_out, n_zero = len(outer), hat.zero_span.dim
    dim = n_out + n_zero
    zb = hat.zero_span.basis
    phis = [hat.unflatten(zb[t]) for t in range(n_zero)]
    local = {}  # parent index -> (degree, position within the block)
    for i in hat.degrees_nonzero:
        for r, k in enumerate(hat.blocks[i]):
            local[int(k)] = (i, r)

    def embed_outer(v_parent):
        out = f.zeros(dim)
        out[:n_out] = np.asarray(v_parent)[outer]
        return out

    table = {}
    pending = []
    for a in range(n_out):
        for b in range(a + 1, n_out):
            ka, kb = outer[a], outer[b]
            br = L.bracket(L.basis_vector(ka), L.basis_vector(kb))
            if g.degrees[ka] + g.degrees[kb] != 0:
                table[(a, b)] = embed_outer(br)
            else:
                pending.append(((a, b), _ad_tuple(hat, br)))
    for t in range(n_zero):
        for b in range(n_out):
            kb = outer[b]
            i, r = local[kb]
            col = phis[t][i][:, r]
            v = f.zeros(L.dim)
            v[hat.blocks[i]] = col
            table[(n_out + t, b)] = embed_outer(v)
    for t in range(n_zero):
        for u in range(t + 1, n_zero):
            comm = {i: f.reduce(matmul(phis[t][i], phis[u][i], f) - matmul(phis[u][i], phis[t][i], f))
                    for i in hat.degrees_nonzero}
            pending.append(((n_out + t, n_out + u), hat.flatten(comm)))
    if pending:
        coords = hat.zero_span.coords_many(np.stack([v for _, v in pending]))
        for (key, _), c in zip(pending, coords):
            out = f.zeros(dim)
            out[n_out:] = c
            table[key] = out
    labels = [L.labels[k] for k in outer] + [f"phi{t}" for t in range(n_zero)]
    algebra = LieAlgebra.from_brackets(f, dim, table, labels=labels)
    degrees = np.array([g.degrees[k] for k in outer] + [0] * n_zero, dtype=np.int64)
    return algebra, degrees


def natural_map(hat: HatAlgebra) -> np.ndarray:
    """Matrix (dim L0 x dim L^_0): row m holds the coordinates of the image of e_m, m in L0."""
    L, f = hat.parent, hat.parent.field
    rows = [_ad_tuple(hat, L.basis_vector(int(m))) for m in hat.blocks[0]]
    return hat.zero_span.coords_many(np.stack(rows)) if rows else f.zeros((0, hat.dim_zero))


def contains_grading_derivation(hat: HatAlgebra) -> bool:
    z = hat.zeta_tuple()
    if z not in hat.zero_span:
        return False
    f = hat.parent.field
    coords = hat.zero_span.coords(z)
    zeta = f.zeros(hat.algebra.dim)
    n_out = hat.algebra.dim - hat.dim_zero
    zeta[n_out:] = coords
    A = hat.algebra.ad(zeta)
    expected = np.diag(f.array(hat.hat_degrees))
    return f.is_zero(f.reduce(A - expected))
