"""Curvature, Ricci data and the exact Ricci-soliton linear solver.

Sign convention (pinned by the worked d4,1/2 matrices used as golden
tests): R(X,Y) = nabla_{[X,Y]} - [nabla_X, nabla_Y], ric(X,Y) =
tr(Z -> R(X,Z)Y), Ric = h^{-1} ric, s = tr(Ric).  A soliton is a solution
of  L_X h + ric = lambda h  with X left-invariant and lambda constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .liealg import LieAlgebra4, NotSymmetric, form_apply
from .linalg import (
    Mat4, Vec4, _eliminate, commutator, solve_affine, vbasis,
)
from .scalars import EMPTY_DOMAIN, Param, ParamDomain, Scalar, ZERO
from .structures import Connection4, levi_civita

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class CurvatureTensor:
    """One matrix per basis pair i<j; R(e_j,e_i) = -R(e_i,e_j) structurally."""

    def __init__(self, matrices: Dict[tuple, Mat4]):
        self.matrices = matrices

    def __getitem__(self, pair) -> Mat4:
        i, j = pair
        if i == j:
            return Mat4.zeros()
        if i < j:
            return self.matrices[(i, j)]
        return -self.matrices[(j, i)]

    def is_zero(self, domain: ParamDomain = EMPTY_DOMAIN) -> bool:
        return all(m.is_zero(domain) for m in self.matrices.values())


def curvature(L: LieAlgebra4, conn: Connection4) -> CurvatureTensor:
    out = {}
    for (i, j) in PAIRS:
        r = conn.directional(L.bracket_basis(i, j)) - commutator(conn.nabla[i], conn.nabla[j])
        out[(i, j)] = r
    return CurvatureTensor(out)


def ricci(L: LieAlgebra4, conn: Connection4,
          domain: ParamDomain = EMPTY_DOMAIN) -> Mat4:
    """ric(e_i, e_j) = tr(Z -> R(e_i, Z) e_j); symmetry is asserted."""
    r = curvature(L, conn)
    ric = Mat4.zeros("bilinear-form")
    for i in range(4):
        for j in range(4):
            s = ZERO
            for k in range(4):
                if k == i:
                    continue
                s = s + r[(i, k)].rows[k][j]
            ric.rows[i][j] = s
    if not ric.is_symmetric(domain):
        raise NotSymmetric("computed Ricci tensor is not symmetric")
    return ric


def ricci_operator(h: Mat4, ric: Mat4) -> Mat4:
    """Ric with h(Ric(X), Y) = ric(X, Y), i.e. Ric = h^{-1} ric."""
    return h.inverse() @ ric


def scalar_curvature(ric_op: Mat4) -> Scalar:
    return ric_op.trace()


def lie_derivative_metric(L: LieAlgebra4, h: Mat4, x: Vec4) -> Mat4:
    """(L_X h)(u, v) = -h([X,u], v) - h(u, [X,v]) for left-invariant data."""
    out = Mat4.zeros("bilinear-form")
    bx = [L.bracket(x, vbasis(j)) for j in range(4)]
    for i in range(4):
        for j in range(4):
            out.rows[i][j] = -form_apply(h, bx[i], vbasis(j)) - form_apply(h, vbasis(i), bx[j])
    return out


@dataclass
class SolitonSolutionSet:
    """Affine solutions (X, lambda) of L_X h + ric = lambda h.

    Components are affine Scalar expressions in free parameters t1..tm;
    every specialization satisfies the equation exactly.
    """

    x: List[Scalar]
    lam: Scalar
    free_count: int
    free_params: List[Param]

    def type_tag(self, domain: ParamDomain = EMPTY_DOMAIN) -> str:
        """shrinking/steady/expanding when decidable on the whole domain."""
        if self.lam.is_zero:
            return "steady"
        if self.lam.is_const:
            return "shrinking" if self.lam.const_value() > 0 else "expanding"
        return "sign depends on parameters"


def _soliton_system(L: LieAlgebra4, h: Mat4):
    """Rows of the 10-equation linear system in (x1..x4, lambda)."""
    d = [lie_derivative_metric(L, h, vbasis(i)) for i in range(4)]
    rows, cells = [], []
    for i in range(4):
        for j in range(i, 4):
            rows.append([d[0].rows[i][j], d[1].rows[i][j], d[2].rows[i][j],
                         d[3].rows[i][j], -h.rows[i][j]])
            cells.append((i, j))
    return rows, cells


def solve_soliton(L: LieAlgebra4, h: Mat4,
                  domain: ParamDomain = EMPTY_DOMAIN,
                  ric_mat: Optional[Mat4] = None) -> Optional[SolitonSolutionSet]:
    """Exact affine solution set, or None when provably inconsistent.

    Raises RankAmbiguous when the system's rank depends on parameters not
    pinned down by the domain.
    """
    if ric_mat is None:
        ric_mat = ricci(L, levi_civita(L, h, domain), domain)
    rows, cells = _soliton_system(L, h)
    rhs = [-ric_mat.rows[i][j] for (i, j) in cells]
    sol = solve_affine(rows, rhs, domain)
    if sol is None:
        return None
    names = [f"t{k+1}" for k in range(sol.free_count)]
    full = sol.with_params(names)
    return SolitonSolutionSet(full[:4], full[4], sol.free_count,
                              [Param(n) for n in names])


def soliton_residual(L: LieAlgebra4, h: Mat4, x: Vec4, lam: Scalar,
                     ric_mat: Mat4) -> Mat4:
    return lie_derivative_metric(L, h, x) + ric_mat - h.scale(lam)


def family_dimension(x: List[Scalar], lam: Scalar,
                     domain: ParamDomain = EMPTY_DOMAIN) -> int:
    """Dimension of an affine family: rank of its linear part in the free
    symbols x1..x4 appearing in the expressions."""
    comps = list(x) + [lam]
    free = sorted({p for c in comps for p in c.params()
                   if p.name in ("x1", "x2", "x3", "x4")},
                  key=lambda p: p.index)
    if not free:
        return 0
    zero_map = {p: Scalar.const(0) for p in free}
    base = [c.substitute(zero_map) for c in comps]
    cols = []
    for p in free:
        m = dict(zero_map)
        m[p] = Scalar.const(1)
        cols.append([c.substitute(m) - b for c, b in zip(comps, base)])
    return _eliminate([list(c) for c in cols], 5, domain)[0]


def family_solves(L: LieAlgebra4, h: Mat4, ric_mat: Mat4, x: List[Scalar],
                  lam: Scalar, domain: ParamDomain = EMPTY_DOMAIN) -> bool:
    return soliton_residual(L, h, x, lam, ric_mat).is_zero(domain)


def soliton_family_equal(L: LieAlgebra4, h: Mat4, ric_mat: Mat4,
                         computed: Optional[SolitonSolutionSet],
                         expected_x: Optional[List[Scalar]],
                         expected_lam: Optional[Scalar],
                         domain: ParamDomain = EMPTY_DOMAIN) -> Tuple[bool, str]:
    """Affine-set equality between the solver's set and a printed family.

    The printed family is checked to solve the system (inclusion one way);
    equality then reduces to matching dimensions, both sets being affine.
    """
    if expected_x is None:
        if computed is None:
            return True, ""
        return False, f"solver found a solution set of dimension {computed.free_count}"
    if computed is None:
        return False, "solver found no solution"
    if not family_solves(L, h, ric_mat, expected_x, expected_lam, domain):
        return False, "printed family does not satisfy the soliton equation"
    dim = family_dimension(expected_x, expected_lam, domain)
    if dim != computed.free_count:
        return False, (f"family dimension {dim} != solver dimension "
                       f"{computed.free_count}")
    return True, ""


@dataclass
class CurvatureRow:
    flat: bool
    ricci_flat: bool
    soliton: Optional[SolitonSolutionSet]
    soliton_type: str
    scalar_curv: Scalar


def classify_row(L: LieAlgebra4, h: Mat4,
                 domain: ParamDomain = EMPTY_DOMAIN) -> CurvatureRow:
    conn = levi_civita(L, h, domain)
    r = curvature(L, conn)
    ric_mat = ricci(L, conn, domain)
    flat = r.is_zero(domain)
    ricflat = ric_mat.is_zero(domain)
    ric_op = ricci_operator(h, ric_mat)
    sol = solve_soliton(L, h, domain, ric_mat)
    stype = sol.type_tag(domain) if sol is not None else "none"
    return CurvatureRow(flat, ricflat, sol, stype, scalar_curvature(ric_op))
