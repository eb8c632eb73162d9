"""Compute the expected-results sidecars of the bundled structurable examples.

This oracle works straight from the JSON tables with sympy and does not import
gradus, so the frozen numbers are an independent check on the package.
"""

from __future__ import annotations

import argparse
import itertools
import json
from pathlib import Path

import sympy as sp

EXAMPLES = Path(__file__).resolve().parents[1] / "src" / "gradus" / "data" / "examples"
NAMES = ["k-trivial", "kxk-swap", "M2-transpose"]
# the Chevalley gradings the K(A) of each example should match
CHEVALLEY = {"k-trivial": ("A", 1, [1]), "kxk-swap": ("A", 2, [1, 2]), "M2-transpose": ("A", 3, [1, 3])}


class Alg:
    def __init__(self, data):
        n = self.n = data["dim"]
        self.mult = [[sp.Matrix([sp.Rational(c) for c in data["mult"][i][j]]) for j in range(n)] for i in range(n)]
        # row i of the JSON is the image of e_i; store images as columns
        self.inv = sp.Matrix([[sp.Rational(c) for c in row] for row in data["involution"]]).T
        self.one = sp.Matrix([sp.Rational(c) for c in data["unit"]])

    def mul(self, x, y):
        out = sp.zeros(self.n, 1)
        for i in range(self.n):
            for j in range(self.n):
                if x[i] != 0 and y[j] != 0:
                    out += x[i] * y[j] * self.mult[i][j]
        return out

    def bar(self, x):
        return self.inv * x

    def e(self, i):
        v = sp.zeros(self.n, 1)
        v[i] = 1
        return v

    def V(self, x, y):
        """Matrix of z -> (x ybar) z + (z ybar) x - (z xbar) y."""
        cols = []
        for c in range(self.n):
            z = self.e(c)
            cols.append(self.mul(self.mul(x, self.bar(y)), z) + self.mul(self.mul(z, self.bar(y)), x)
                        - self.mul(self.mul(z, self.bar(x)), y))
        return sp.Matrix.hstack(*cols)


def struct_id_holds(A: Alg) -> bool:
    n = A.n
    basis = [A.e(i) for i in range(n)]
    for x, y, z, w in itertools.product(basis, repeat=4):
        lhs = A.V(x, y) * A.V(z, w) - A.V(z, w) * A.V(x, y)
        rhs = A.V(A.V(x, y) * z, w) - A.V(z, A.V(y, x) * w)
        if lhs != rhs:
            return False
    return True


def zero_divisors_over_closure(A: Alg) -> int:
    """Number of nonzero solutions of U_x = 0 over the algebraic closure (-1 if infinite)."""
    xs = sp.symbols(f"x0:{A.n}")
    x = sp.Matrix(xs)
    eqs = set()
    for c in range(A.n):
        # U_x e_c = V_{x, e_c} x
        col = A.V(x, A.e(c)) * x
        eqs.update(sp.expand(t) for t in col if sp.expand(t) != 0)
    if not eqs:
        return -1
    sols = sp.solve(list(eqs), xs, dict=True)
    nonzero = [s for s in sols if any(s.get(v, v) != 0 for v in xs)]
    if any(any(s.get(v, v).free_symbols for v in xs) for s in nonzero):
        return -1
    return len(nonzero)


def sidecar(name: str) -> dict:
    data = json.loads((EXAMPLES / f"{name}.json").read_text())
    A = Alg(data)
    n = A.n
    skew = len((A.inv + sp.eye(n)).nullspace())
    Vs = [A.V(A.e(i), A.e(j)).reshape(n * n, 1) for i in range(n) for j in range(n)]
    instrl = sp.Matrix.hstack(*Vs).rank()
    t, r, J = CHEVALLEY[name]
    return {
        "name": name,
        "dim": n,
        "structurable": struct_id_holds(A),
        "skew_dimension": skew,
        "instrl_dimension": instrl,
        "kappa_block_dims": [skew, n, instrl, n, skew],
        "kappa_dim": 2 * skew + 2 * n + instrl,
        "absolute_zero_divisors": zero_divisors_over_closure(A),
        "V_11_is_identity": A.V(A.one, A.one) == sp.eye(n),
        "chevalley_match": {"type": t, "rank": r, "J": J},
        "oracle": "sympy, exact over Q",
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="compare with the frozen files instead of writing")
    args = ap.parse_args()
    bad = 0
    for name in NAMES:
        side = sidecar(name)
        path = EXAMPLES / f"{name}.expected.json"
        if args.check:
            old = json.loads(path.read_text())
            if old != side:
                print(f"{name}: differs from frozen sidecar")
                bad += 1
            else:
                print(f"{name}: ok")
        else:
            path.write_text(json.dumps(side, indent=1) + "\n")
            print(f"{name}: {side}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
