import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gradus.exact import GF, Q, matmul
from gradus.lie import chevalley_algebra, grading_derivation, grading_from_J
from gradus.roots import JSubset, build_root_system
from gradus.structurable import (EXAMPLE_NAMES, EXAMPLES_DIR, EmptyPair, KantorPair, NotInvolution, NotUnital,
                                 OuterZeta, StructIdFails, StructurableAlgebra, absolute_zero_divisors,
                                 check_eps_identity, eps_delta, find_unit_pair, graded_isomorphism,
                                 instrl_basis, is_kappa_grading, kappa, load_example, pair_from_grading, psi,
                                 skew_split, t_op, u_op, v_op, validate_structurable)


def graded(t, l, J, f):
    L = chevalley_algebra(build_root_system(t, l), f)
    return L, grading_from_J(L, JSubset(L.root_system, J))


def m2_with(inv):
    A, _ = load_example("M2-transpose", Q)
    return StructurableAlgebra(Q, A.mult, inv, A.unit)


FIELDS = [Q, GF(5), GF(7)]


# ------------------------------------------------------------- examples


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
@pytest.mark.parametrize("f", FIELDS)
def test_examples_match_sidecar(name, f):
    A, side = load_example(name, f)
    rep = validate_structurable(A)
    assert side["structurable"]
    assert rep.dim == side["dim"]
    assert rep.skew_dimension == side["skew_dimension"]
    assert rep.instrl_dimension == side["instrl_dimension"]
    assert rep.checks["struct_id"] == side["dim"] ** 4


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_kappa_matches_sidecar(name):
    A, side = load_example(name, Q)
    K = kappa(A)
    assert list(K.block_dims) == side["kappa_block_dims"]
    assert K.algebra.dim == side["kappa_dim"]
    assert K.jacobi.ok and K.jacobi.mode == "exhaustive"
    assert K.zeta_acts_as_grading()


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_kappa_dims_match_chevalley(name):
    A, side = load_example(name, Q)
    c = side["chevalley_match"]
    L, g = graded(c["type"], c["rank"], c["J"], Q)
    res = graded_isomorphism(kappa(A), L, g)
    assert res["dims_match"]


def test_k_trivial_isomorphic_to_sl2():
    A, _ = load_example("k-trivial", Q)
    L, g = graded("A", 1, [1], Q)
    res = graded_isomorphism(kappa(A), L, g)
    assert res["mode"] == "explicit-map" and res["isomorphic"] is True


def test_partial_isomorphism_is_reported_as_such():
    A, _ = load_example("M2-transpose", Q)
    L, g = graded("A", 3, [1, 3], Q)
    res = graded_isomorphism(kappa(A), L, g)
    assert res["mode"] == "dims-match-only" and res["isomorphic"] is None
    L2, g2 = graded("A", 3, [2], Q)
    assert graded_isomorphism(kappa(A), L2, g2)["isomorphic"] is False


def test_json_roundtrip():
    A, _ = load_example("kxk-swap", Q)
    data = json.loads(json.dumps(A.to_json()))
    B = StructurableAlgebra.from_json(data)
    assert np.array_equal(A.mult, B.mult) and np.array_equal(A.inv, B.inv)


def test_json_involution_rows_are_images():
    data = json.loads((EXAMPLES_DIR / "M2-transpose.json").read_text())
    A = StructurableAlgebra.from_json(data)
    # basis index 2r + c, so E12 (index 1) goes to E21 (index 2)
    assert list(A.bar(A.basis_vector(1))) == [0, 0, 1, 0]


# ----------------------------------------------------------- validation


def test_not_involution():
    inv = np.diag([1, 2, 1, 1]).tolist()
    with pytest.raises(NotInvolution):
        validate_structurable(m2_with(inv))


def test_identity_on_m2_is_not_anti_automorphism():
    # M2 is not commutative, so the identity map is not an involution
    with pytest.raises(NotInvolution):
        validate_structurable(m2_with(np.eye(4, dtype=int).tolist()))


def test_not_unital():
    A, _ = load_example("M2-transpose", Q)
    B = StructurableAlgebra(Q, A.mult, A.inv, [1, 0, 0, 0])
    with pytest.raises(NotUnital):
        validate_structurable(B)


def test_struct_id_failure_reports_tuple():
    # commutative with a*a = b, a*b = a, b*b = 0: not Jordan
    m = np.zeros((3, 3, 3), dtype=int)
    for i in range(3):
        m[0, i, i] = m[i, 0, i] = 1
    m[1, 1] = [0, 0, 1]
    m[1, 2] = m[2, 1] = [0, 1, 0]
    A = StructurableAlgebra(Q, m.tolist(), np.eye(3, dtype=int).tolist(), [1, 0, 0])
    with pytest.raises(StructIdFails) as ei:
        validate_structurable(A)
    assert len(ei.value.tuple) == 4


# ------------------------------------------------------------ operators


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_v11_is_identity(name, field):
    A, side = load_example(name, field)
    assert side["V_11_is_identity"]
    assert field.is_zero(field.reduce(v_op(A, A.unit, A.unit) - field.eye(A.dim)))


def test_over_k_v_is_multiplication():
    A, _ = load_example("k-trivial", Q)
    x, y = Q.array([Fraction(3, 2)]), Q.array([-4])
    assert v_op(A, x, y)[0, 0] == Fraction(-6)


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_u_one_is_t_x(name):
    A, _ = load_example(name, GF(7))
    f = A.field
    x = f.array([k + 2 for k in range(A.dim)])
    u1 = matmul(u_op(A, x), A.unit.reshape(-1, 1), f)[:, 0]
    tx = matmul(t_op(A, x), x.reshape(-1, 1), f)[:, 0]
    assert np.array_equal(u1, tx)


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_psi_properties(name):
    A, _ = load_example(name, Q)
    f = A.field
    _, S = skew_split(A)
    for a in range(A.dim):
        x = A.basis_vector(a)
        assert f.is_zero(psi(A, x, x))
        for b in range(A.dim):
            y = A.basis_vector(b)
            assert f.is_zero(f.reduce(psi(A, x, y) + psi(A, y, x)))
    for s in S:
        assert f.is_zero(f.reduce(psi(A, A.unit, s) + f.scale(s, 2)))


def test_k_has_no_skew_part():
    A, _ = load_example("k-trivial", Q)
    H, S = skew_split(A)
    assert len(H) == 1 and len(S) == 0
    assert instrl_basis(A).dim == 1


def test_skew_split_spans():
    A, _ = load_example("M2-transpose", GF(5))
    H, S = skew_split(A)
    assert len(H) + len(S) == 4 and len(S) == 1


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_eps_identity(name, field):
    A, _ = load_example(name, field)
    assert check_eps_identity(A) is None


def test_eps_of_identity_on_k():
    A, _ = load_example("k-trivial", Q)
    eps, delta = eps_delta(A, Q.eye(1))
    assert eps[0, 0] == -1
    assert eps_delta(A, Q.zeros((1, 1)))[0][0, 0] == 0
    assert eps_delta(A, Q.zeros((1, 1)))[1][0, 0] == 0


@pytest.mark.parametrize("name", ["kxk-swap", "M2-transpose"])
def test_delta_on_skew(name):
    A, _ = load_example(name, Q)
    f = A.field
    _, S = skew_split(A)
    for a in range(A.dim):
        for b in range(A.dim):
            x, y = A.basis_vector(a), A.basis_vector(b)
            _, d = eps_delta(A, v_op(A, x, y))
            for s in S:
                lhs = matmul(d, s.reshape(-1, 1), f)[:, 0]
                assert f.is_zero(f.reduce(lhs + psi(A, x, A.product(s, y))))


def test_instrl_closed_under_commutator():
    A, _ = load_example("M2-transpose", Q)
    f, n = A.field, A.dim
    sp = instrl_basis(A)
    assert sp.dim <= n * n
    D = [sp.basis[m].reshape(n, n) for m in range(sp.dim)]
    for X in D:
        for Y in D:
            c = f.reduce(matmul(X, Y, f) - matmul(Y, X, f))
            assert c.reshape(-1) in sp


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_v_eps_identity_random(xs, ys):
    A, _ = load_example("M2-transpose", Q)
    x, y = Q.array(xs), Q.array(ys)
    eps, _ = eps_delta(A, v_op(A, x, y))
    assert Q.is_zero(Q.reduce(eps + v_op(A, y, x)))


# ---------------------------------------------------------------- K(A)


def test_one_plus_one_minus_is_grading_derivation(field):
    A, _ = load_example("M2-transpose", field)
    K = kappa(A)
    assert K.zeta_acts_as_grading()
    assert K.algebra.jacobi(exhaustive=True).ok


def test_kappa_then_pair():
    A, _ = load_example("M2-transpose", Q)
    K = kappa(A)
    pair = pair_from_grading(K.algebra, K.grading)
    f = A.field
    for a in range(4):
        for b in range(4):
            V = v_op(A, A.basis_vector(a), A.basis_vector(b))
            for c in range(4):
                t = pair.triple(1, A.basis_vector(a), A.basis_vector(b), A.basis_vector(c))
                assert f.is_zero(f.reduce(t + V[:, c]))


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_no_absolute_zero_divisors(name):
    A, side = load_example(name, GF(5))
    res = absolute_zero_divisors(A)
    assert res["mode"] == "exhaustive" and res["tested"] == 5 ** A.dim - 1
    assert len(res["divisors"]) == side["absolute_zero_divisors"] == 0


def test_zero_divisor_heuristic_over_q():
    A, _ = load_example("M2-transpose", Q)
    res = absolute_zero_divisors(A, samples=50)
    assert res["mode"] == "heuristic" and res["divisors"] == []


def test_degenerate_algebra_has_zero_divisors():
    # k[t]/(t^2) with trivial involution: U_t = 0
    m = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    A = StructurableAlgebra(GF(5), m, [[1, 0], [0, 1]], [1, 0])
    validate_structurable(A)
    res = absolute_zero_divisors(A)
    assert [0, 0] not in res["divisors"]
    assert [0, 1] in res["divisors"] and len(res["divisors"]) == 4


# --------------------------------------------------------- Kantor pairs


def test_sl2_pair_triple():
    L, g = graded("A", 1, [1], Q)
    pair = pair_from_grading(L, g)
    assert pair.dims == {1: 1, -1: 1}
    # -[[e, f], e] = -[h, e] = -2e ; -[[f, e], f] = -[-h, f] = -2f
    assert pair.triple(1, Q.array([1]), Q.array([1]), Q.array([1]))[0] == -2
    assert pair.triple(-1, Q.array([1]), Q.array([1]), Q.array([1]))[0] == -2
    assert pair.report["mode"] == "exhaustive" and pair.report["ok"]


def test_g2_pair_exhaustive():
    L, g = graded("G", 2, [2], Q)
    pair = pair_from_grading(L, g)
    assert pair.dims == {1: 4, -1: 4}
    assert pair.report == {"mode": "exhaustive", "KP1": True, "KP2": True, "failures": [], "ok": True}


def test_a3_gf5_pair_sampled():
    L, g = graded("A", 3, [1, 3], GF(5))
    pair = pair_from_grading(L, g, exhaustive=False, samples=100, seed=11)
    assert pair.report["mode"] == "sampled" and pair.report["seed"] == 11 and pair.report["ok"]


def test_tensor_and_triple_agree():
    L, g = graded("B", 3, [3], GF(7))
    pair = pair_from_grading(L, g, verify=False)
    P = pair.tensor(1)
    x = GF(7).array([1, 2, 3])
    y = GF(7).array([4, 0, 6])
    z = GF(7).array([2, 2, 5])
    direct = pair.triple(1, x, y, z)
    via = KantorPair(GF(7), (3, 3), tensors={1: P}).triple(1, x, y, z)
    assert np.array_equal(direct, via)


def test_broken_pair_detected():
    L, g = graded("A", 2, [1, 2], GF(7))
    pair = pair_from_grading(L, g, verify=False)
    P = pair.tensor(1).copy()
    P[0, 0, 0, 0] = (P[0, 0, 0, 0] + 1) % 7
    bad = KantorPair(GF(7), (2, 2), tensors={1: P, -1: pair.tensor(-1)})
    rep = bad.check(exhaustive=True)
    assert not rep["ok"] and rep["failures"]


def test_empty_pair():
    L, g = graded("A", 2, [1], Q)
    from gradus.lie import Grading
    with pytest.raises(EmptyPair):
        pair_from_grading(L, Grading(L, [0] * L.dim))


# ----------------------------------------------------------- unit pairs


def test_sl2_unit_pair():
    L, g = graded("A", 1, [1], Q)
    res = find_unit_pair(L, g)
    assert res.found and res.mode == "deterministic"
    assert list(res.u) == [1] and list(res.v) == [Fraction(1, 2)]
    assert res.checks["bracket_is_zeta"]


def test_a2_gf5_exhaustive_not_found():
    L, g = graded("A", 2, [1], GF(5))
    res = find_unit_pair(L, g)
    assert not res.found and res.status == "NotFound-exhaustive"
    assert res.pairs_scanned == 625


def test_g2_unit_pair_found():
    L, g = graded("G", 2, [2], Q)
    res = find_unit_pair(L, g, seed=0)
    assert res.found
    assert res.checks["bracket_is_zeta"] and res.checks["V_uv_is_minus_id"]
    u = L.field.zeros(L.dim)
    v = L.field.zeros(L.dim)
    u[g.indices(1)] = res.u
    v[g.indices(-1)] = res.v
    assert np.array_equal(L.bracket(u, v), grading_derivation(g).element)


def test_sampled_not_found_is_not_a_proof():
    L, g = graded("A", 2, [1], Q)
    res = find_unit_pair(L, g, attempts=4)
    assert not res.found and res.status == "NotFound"
    assert "does not prove" in res.note


def test_outer_zeta_refused():
    L, g = graded("A", 4, [1], GF(5))
    with pytest.raises(OuterZeta):
        find_unit_pair(L, g)


def test_center_corrected_unit_pair():
    L, g = graded("A", 4, [1, 4], GF(5))
    res = find_unit_pair(L, g)
    assert res.found and res.central_correction
    assert res.checks["bracket_in_zeta_plus_center"] and not res.checks["bracket_is_zeta"]


def test_is_kappa_grading_verdicts():
    L, g = graded("G", 2, [2], Q)
    assert is_kappa_grading(L, g).kind == "Yes"
    L, g = graded("A", 2, [1], GF(5))
    v = is_kappa_grading(L, g)
    assert v.kind == "No" and "exhaustive" in v.reason
    L, g = graded("A", 4, [1], GF(5))
    assert is_kappa_grading(L, g).kind == "No"


@pytest.mark.slow
def test_e8_alpha1_is_kappa():
    L, g = graded("E", 8, [1], Q)
    v = is_kappa_grading(L, g)
    assert v.kind == "Yes"
