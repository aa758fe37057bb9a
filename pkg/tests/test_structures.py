import pytest

from pk4lie.liealg import LieAlgebra4, NotSymmetric, form_apply
from pk4lie.linalg import Mat4, vbasis, vis_zero
from pk4lie.notation import parse_endo, parse_sym_form, parse_two_form
from pk4lie.scalars import ParamDomain, Scalar, parse_scalar
from pk4lie.structures import (
    levi_civita, metric_from, nabla_K, validate_para_kahler,
)

D4HALF = LieAlgebra4.parse(
    "[e1,e2]=e3; [e4,e3]=e3; [e4,e1]=1/2*e1; [e4,e2]=1/2*e2", "d4_half")
OMEGA = parse_two_form("e12-e34")
K1 = parse_endo("E11-E22-E33+x*E43+E44")
K2 = parse_endo("E11-E22+E33-E44")
XNZ = ParamDomain.parse("x != 0")
ABELIAN = LieAlgebra4({}, "abelian")


def M(text):
    return parse_sym_form(text)


def test_metric_from_golden_h1():
    h1 = metric_from(OMEGA, K1)
    assert h1 == M("eps12 + x*eps33 + eps34")


def test_metric_from_golden_h2():
    h2 = metric_from(OMEGA, K2)
    assert h2 == M("eps12 - eps34")


def test_metric_from_incompatible_pair():
    with pytest.raises(NotSymmetric):
        metric_from(parse_two_form("e12+e34"), Mat4.identity())


H1 = metric_from(OMEGA, K1)
H2 = metric_from(OMEGA, K2)


def test_levi_civita_golden_nabla_e1():
    conn = levi_civita(D4HALF, H1, XNZ)
    expected = Mat4([["0", "0", "-1/2*x", "-1"],
                     ["0", "0", "0", "0"],
                     ["0", "1", "0", "0"],
                     ["0", "-1/2*x", "0", "0"]])
    assert conn.nabla[0].equals(expected)


def test_levi_civita_golden_nabla_e4():
    conn = levi_civita(D4HALF, H1, XNZ)
    expected = Mat4([["-1/2", "0", "0", "0"],
                     ["0", "1/2", "0", "0"],
                     ["0", "0", "1", "0"],
                     ["0", "0", "-x", "-1"]])
    assert conn.nabla[3].equals(expected)


def test_levi_civita_abelian_is_flat_zero():
    conn = levi_civita(ABELIAN, M("eps13+eps24"))
    assert all(m.is_zero() for m in conn.nabla)


def test_levi_civita_axioms_and_uniqueness():
    conn = levi_civita(D4HALF, H1, XNZ)
    assert all(vis_zero(v) for v in conn.torsion_defect(D4HALF).values())
    assert all(s.is_zero for s in conn.metric_defect(H1).values())
    # perturb one Christoffel entry: some axiom must break
    perturbed = [m.copy() for m in conn.nabla]
    perturbed[0].rows[2][1] = perturbed[0].rows[2][1] + Scalar.const(1)
    from pk4lie.structures import Connection4
    bad = Connection4(perturbed)
    torsion_ok = all(vis_zero(v) for v in bad.torsion_defect(D4HALF).values())
    metric_ok = all(s.is_zero for s in bad.metric_defect(H1).values())
    assert not (torsion_ok and metric_ok)


def test_nabla_omega_parallel():
    conn = levi_civita(D4HALF, H1, XNZ)
    for i in range(4):
        for j in range(4):
            for k in range(4):
                val = (form_apply(OMEGA, conn.of(i, j), vbasis(k))
                       + form_apply(OMEGA, vbasis(j), conn.of(i, k)))
                assert val.is_zero


def test_nabla_K_zero_for_matching_pair():
    conn = levi_civita(D4HALF, H1, XNZ)
    assert all(m.is_zero() for m in nabla_K(D4HALF, conn, K1))


def test_nabla_K_abelian_zero_any_K():
    conn = levi_civita(ABELIAN, M("eps13+eps24"))
    assert all(m.is_zero() for m in nabla_K(ABELIAN, conn, parse_endo("E12+E21")))


def test_nabla_K_mismatched_pair_hand_oracle():
    # With nabla from h1 but K := K2 = diag(1,-1,1,-1):
    # (nabla_{e1}K)e2 = nabla_1(-e2) - K(nabla_1 e2)
    #                 = -(e3 - (x/2)e4) - (e3 + (x/2)e4) = -2e3.
    conn = levi_civita(D4HALF, H1, XNZ)
    nk = nabla_K(D4HALF, conn, K2)
    col = [nk[0].rows[r][1] for r in range(4)]
    assert col == [parse_scalar(t) for t in ("0", "0", "-2", "0")]
    assert not all(m.is_zero() for m in nk)


def test_validate_classified_structures_d4_half():
    rep = validate_para_kahler(D4HALF, OMEGA, K1, XNZ, "d4_half/K1")
    assert rep.valid, rep.failing()
    rep2 = validate_para_kahler(D4HALF, OMEGA, K2, ParamDomain.parse(""), "d4_half/K2")
    assert rep2.valid, rep2.failing()


def test_validate_normal_form_on_b2_row():
    B2 = LieAlgebra4.parse("[e1,e2]=-e1; [e2,e3]=x*e1-e3-e4; [e2,e4]=-e4")
    rep = validate_para_kahler(B2, parse_two_form("e13+e24"),
                               parse_endo("E11+E22-E33-E44"), entry_id="B2/nf")
    assert rep.valid, rep.failing()


def test_validate_failure_is_verdict_not_error():
    RH3 = LieAlgebra4.parse("[e1,e2]=e3")
    rep = validate_para_kahler(RH3, parse_two_form("e14+e23"), Mat4.identity())
    assert not rep.valid
    assert "eigenranks_2_2" in rep.failing()


def test_anti_isometry_of_valid_structure():
    # h(Ku, Kv) = -h(u,v) entrywise: K^T H K + H = 0.
    assert (K1.transpose() @ H1 @ K1 + H1).is_zero()
    assert (K2.transpose() @ H2 @ K2 + H2).is_zero()
