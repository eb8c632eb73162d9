import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gradus.exact import GF, Q, matmul
from gradus.lie import (Grading, LieAlgebra, NotHomogeneous, TooWideGrading, center, central_quotient,
                        chevalley_algebra, derived_subalgebra, grading_derivation, grading_from_J,
                        graded_ideal_closure, is_algebraic, is_automorphism, truncated_exp)
from gradus.roots import JSubset, build_root_system


def chev(t, l, f):
    return chevalley_algebra(build_root_system(t, l), f)


def graded(t, l, J, f):
    L = chev(t, l, f)
    return L, grading_from_J(L, JSubset(L.root_system, J))


def test_sl2_relations():
    L = chev("A", 1, Q)
    e, f_, h = (L.basis_vector(i) for i in range(3))
    assert list(L.bracket(h, e)) == [2, 0, 0]
    assert list(L.bracket(h, f_)) == [0, -2, 0]
    assert list(L.bracket(e, f_)) == [0, 0, 1]
    assert L.labels[2] == "h1"


@pytest.mark.parametrize("l", [2, 3, 4])
def test_type_a_derived_and_center(l):
    L = chev("A", l, Q)
    assert L.dim == (l + 1) ** 2 - 1
    assert len(derived_subalgebra(L)) == L.dim
    assert len(center(L)) == 0


@pytest.mark.parametrize("t,l", [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4),
                                 ("C", 3), ("C", 4), ("D", 4), ("G", 2), ("F", 4)])
@pytest.mark.parametrize("f", [Q, GF(5)], ids=str)
def test_chevalley_jacobi_exhaustive(t, l, f):
    L = chev(t, l, f)
    assert L.check_antisymmetry()
    rep = L.jacobi()
    assert rep.ok and rep.mode == "exhaustive"


@pytest.mark.parametrize("t,l", [("E", 6), ("E", 7), ("E", 8)])
def test_chevalley_jacobi_large(t, l):
    L = chev(t, l, GF(7))
    rep = L.jacobi(exhaustive=False, samples=100_000, seed=1)
    assert rep.ok and rep.checked >= 100_000


def test_g2_gf5():
    L = chev("G", 2, GF(5))
    assert L.dim == 14
    rep = L.jacobi(exhaustive=True)
    assert rep.ok and rep.checked == 14**3


def test_centers():
    assert len(center(chev("A", 1, Q))) == 0
    assert len(center(chev("A", 4, GF(5)))) == 1
    assert len(center(chev("A", 4, GF(7)))) == 0
    assert len(center(chev("A", 6, GF(7)))) == 1


def test_derived_subalgebra_sl2():
    assert len(derived_subalgebra(chev("A", 1, Q))) == 3


def test_jacobi_detects_broken_table():
    L = chev("A", 2, Q)
    C = list(L.C)
    C[0] = C[0] * 2
    bad = LieAlgebra(Q, L.dim, L.I, L.J, L.K, C)
    assert not bad.jacobi(exhaustive=True).ok


def test_grading_from_J_examples():
    L, g = graded("A", 1, [1], Q)
    assert list(g.degrees) == [1, -1, 0]
    _, g = graded("G", 2, [2], Q)
    assert g.dims(2) == [1, 4, 4, 4, 1]
    rs = build_root_system("E", 8)
    L, g = graded("E", 8, [1], GF(7))
    assert g.dim_of(2) == sum(1 for r in rs.roots if r[0] == 2)
    assert g.is_consistent()
    with pytest.raises(TooWideGrading, match="level 3"):
        graded("G", 2, [1], Q)


@pytest.mark.parametrize("t,l,J", [("A", 3, [1, 3]), ("B", 3, [2]), ("C", 3, [1]), ("F", 4, [4]), ("E", 6, [2])])
def test_grading_closure(t, l, J):
    _, g = graded(t, l, J, GF(7))
    assert g.is_consistent()


def test_grading_derivation_examples():
    L, g = graded("A", 1, [1], Q)
    z = grading_derivation(g)
    assert z.inner and list(z.element) == [0, 0, Fraction(1, 2)]
    L, g = graded("A", 2, [1], GF(5))
    z = grading_derivation(g)
    assert list(z.element[-2:]) == [4, 2]
    # 4 h1 + 2 h2 = diag(4, -2, -2) = diag(4, 3, 3) mod 5
    diag = [4, (-4 + 2) % 5, (-2) % 5]
    assert diag == [4, 3, 3]


@pytest.mark.parametrize("t,l,J,f", [("A", 2, [1], GF(5)), ("G", 2, [2], Q), ("C", 3, [3], GF(7)),
                                     ("A", 4, [1, 4], GF(5))])
def test_grading_derivation_action(t, l, J, f):
    L, g = graded(t, l, J, f)
    z = grading_derivation(g)
    for k in range(L.dim):
        b = L.basis_vector(k)
        assert list(z.apply(b)) == list(f.scale(b, int(g.degrees[k])))


def test_outer_grading_derivation():
    L, g = graded("A", 4, [1], GF(5))
    z = grading_derivation(g)
    assert not z.inner and z.kind == "outer"
    b = L.basis_vector(0)
    assert list(z.apply(b)) == list(f_scale(L, b, g.degrees[0]))


def f_scale(L, b, d):
    return L.field.scale(b, int(d))


def test_truncated_exp_identity_and_sl2():
    L, g = graded("A", 1, [1], Q)
    zero = L.field.zeros(3)
    assert np.array_equal(truncated_exp(L, g, zero, zero), Q.eye(3))
    e = L.basis_vector(0)
    E = truncated_exp(L, g, e, zero)
    # columns hold images, so the (f, h, e) triangularity shows up as
    # upper unitriangular in the order (e, h, f)
    order = [0, 2, 1]
    M = E[np.ix_(order, order)]
    for r in range(3):
        assert M[r, r] == 1
        for c in range(r):
            assert M[r, c] == 0
    assert M[0, 2] == -1 and M[0, 1] == -2 and M[1, 2] == 1
    ok, _ = is_automorphism(L, E)
    assert ok


def test_truncated_exp_not_homogeneous():
    L, g = graded("G", 2, [2], Q)
    x = L.field.zeros(L.dim)
    x[g.indices(1)[0]] = 1
    x[g.indices(0)[0]] = 1
    with pytest.raises(NotHomogeneous):
        truncated_exp(L, g, x, L.field.zeros(L.dim))


@settings(max_examples=15)
@given(st.sampled_from([("G", 2, [2]), ("A", 3, [1, 3]), ("B", 3, [1])]), st.integers(0, 10**6), st.sampled_from([1, -1]))
def test_nilpotency_of_homogeneous(case, seed, sigma):
    t, l, J = case
    L, g = graded(t, l, J, GF(7))
    rng = random.Random(seed)
    x, s = g.random_element(sigma, rng), g.random_element(2 * sigma, rng)
    f = L.field
    Ax, As = L.ad(x), L.ad(s)
    p5 = Ax
    for _ in range(4):
        p5 = matmul(p5, Ax, f)
    assert f.is_zero(p5)
    assert f.is_zero(matmul(matmul(As, As, f), As, f))


def test_is_algebraic_examples():
    L, g = graded("A", 1, [1], GF(5))
    rep = is_algebraic(L, g, exhaustive=True)
    assert rep.ok and rep.mode == "exhaustive" and rep.tested == 10
    L, g = graded("G", 2, [2], GF(5))
    rep = is_algebraic(L, g, samples=200, seed=0)
    assert rep.ok and rep.tested == 200
    rep = is_algebraic(L, g, samples=0)
    assert rep.ok and rep.warnings


def test_three_graded_exhaustive_small():
    # every e_sigma(x, 0) is an automorphism of a 3-graded algebra (dim <= 8)
    L, g = graded("A", 2, [1], GF(5))
    assert L.dim == 8
    assert is_algebraic(L, g, exhaustive=True).ok


def test_is_automorphism_rejects_scaling():
    L = chev("A", 2, Q)
    phi = Q.eye(L.dim)
    phi[0, 0] = 2
    ok, gen = is_automorphism(L, phi)
    assert not ok


def test_central_quotient_sl5_gf5():
    L = chev("A", 4, GF(5))
    Qt, kept = central_quotient(L)
    assert Qt.dim == 23
    assert Qt.jacobi().ok
    rng = random.Random(0)
    for idx in rng.sample(range(Qt.dim), 5):
        sp = graded_ideal_closure(Qt, None, [Qt.basis_vector(idx)])
        assert sp.dim == 23


def test_ideal_closure_examples():
    L = chev("G", 2, Q)
    assert graded_ideal_closure(L, None, [L.basis_vector(0)]).dim == 14
    S = chev("A", 4, GF(5))
    z = center(S)[0]
    assert graded_ideal_closure(S, None, [z]).dim == 1
    assert graded_ideal_closure(S, None, [S.field.zeros(S.dim)]).dim == 0


def test_json_roundtrip(field):
    L = chev("B", 2, field)
    back = LieAlgebra.from_json(L.to_json())
    assert back.dim == L.dim and back.field == L.field
    for i in range(L.dim):
        for j in range(L.dim):
            a, b = L.basis_vector(i), L.basis_vector(j)
            assert list(back.bracket(a, b)) == list(L.bracket(a, b))


def test_degenerate_grading_accepted():
    L = chev("A", 1, Q)
    g = Grading(L, [0, 0, 0])
    assert g.bound == 0 and g.dims() == [3]
