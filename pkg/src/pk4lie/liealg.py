"""Four-dimensional Lie algebras over Scalar and para-complex checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from .linalg import (
    Mat4, RankAmbiguous, Vec4, rank_on_domain, vadd, vbasis, vis_zero, vscale,
    vsub, vzero,
)
from .notation import emit_brackets, parse_brackets
from .scalars import (
    EMPTY_DOMAIN, ParamDomain, Scalar, ScalarError, Verdict, ZERO,
    identity_test,
)


class NotSymmetric(ScalarError):
    pass


def form_apply(form: Mat4, u: Vec4, v: Vec4) -> Scalar:
    out = ZERO
    for i in range(4):
        if u[i].is_zero:
            continue
        for j in range(4):
            out = out + u[i] * form.rows[i][j] * v[j]
    return out


def check_antisymmetric(m: Mat4, domain: ParamDomain = EMPTY_DOMAIN) -> Mat4:
    if not m.is_antisymmetric(domain):
        raise NotSymmetric("form is not antisymmetric")
    m.role = "bilinear-form"
    return m


def check_symmetric(m: Mat4, domain: ParamDomain = EMPTY_DOMAIN) -> Mat4:
    if not m.is_symmetric(domain):
        raise NotSymmetric("form is not symmetric")
    m.role = "bilinear-form"
    return m


class LieAlgebra4:
    """Structure constants on a fixed 4-dimensional basis.

    Only the nonzero brackets [e_i, e_j] with i < j are stored; antisymmetry
    is structural.  The Jacobi identity is a checked property, not an
    assumption.
    """

    def __init__(self, brackets: Dict[tuple, Vec4], name: str = "",
                 domain: ParamDomain = EMPTY_DOMAIN):
        self.brackets = {k: list(v) for k, v in brackets.items()
                         if not all(c.is_zero for c in v)}
        self.name = name
        self.domain = domain

    @staticmethod
    def parse(text: str, name: str = "", domain: ParamDomain = EMPTY_DOMAIN):
        return LieAlgebra4(parse_brackets(text), name, domain)

    def serialize(self) -> str:
        return emit_brackets(self.brackets)

    def bracket_basis(self, i: int, j: int) -> Vec4:
        if i == j:
            return vzero()
        if i < j:
            v = self.brackets.get((i, j))
            return list(v) if v else vzero()
        v = self.brackets.get((j, i))
        return [-c for c in v] if v else vzero()

    def bracket(self, u: Vec4, v: Vec4) -> Vec4:
        out = vzero()
        for i in range(4):
            if u[i].is_zero:
                continue
            for j in range(4):
                if v[j].is_zero or i == j:
                    continue
                out = vadd(out, vscale(u[i] * v[j], self.bracket_basis(i, j)))
        return out

    def ad(self, i: int) -> Mat4:
        cols = [self.bracket_basis(i, j) for j in range(4)]
        return Mat4([[cols[j][r] for j in range(4)] for r in range(4)])

    def jacobi_defect(self) -> Dict[tuple, Vec4]:
        """Cyclic sums [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]."""
        out = {}
        for (i, j, k) in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
            s = self.bracket(self.bracket_basis(i, j), vbasis(k))
            s = vadd(s, self.bracket(self.bracket_basis(j, k), vbasis(i)))
            s = vadd(s, self.bracket(self.bracket_basis(k, i), vbasis(j)))
            out[(i, j, k)] = s
        return out

    def is_lie_algebra(self, domain: Optional[ParamDomain] = None) -> bool:
        dom = self.domain if domain is None else domain
        return all(vis_zero(v, dom) for v in self.jacobi_defect().values())

    def substitute(self, mapping: Mapping) -> "LieAlgebra4":
        mapping = {k: Scalar.of(v) for k, v in mapping.items()}
        br = {k: [c.substitute(mapping) for c in v] for k, v in self.brackets.items()}
        return LieAlgebra4(br, self.name, self.domain)

    def derived_rank(self, domain: Optional[ParamDomain] = None) -> int:
        """Rank of the span of all basis brackets (the derived subalgebra)."""
        from .linalg import _eliminate
        dom = self.domain if domain is None else domain
        rows = [list(v) for v in self.brackets.values()]
        if not rows:
            return 0
        return _eliminate(rows, 4, dom)[0]

    def __repr__(self):
        return f"LieAlgebra4({self.name or self.serialize()})"


def ce_d(L: LieAlgebra4, omega: Mat4):
    """Chevalley-Eilenberg differential of an antisymmetric two-form.

    d(omega)(X,Y,Z) = -omega([X,Y],Z) + omega([X,Z],Y) - omega([Y,Z],X).
    """
    from .linalg import ThreeForm4
    comps = {}
    for (i, j, k) in ThreeForm4.TRIPLES:
        val = (-form_apply(omega, L.bracket_basis(i, j), vbasis(k))
               + form_apply(omega, L.bracket_basis(i, k), vbasis(j))
               - form_apply(omega, L.bracket_basis(j, k), vbasis(i)))
        comps[(i, j, k)] = val
    return ThreeForm4(comps)


def pfaffian_nondegenerate(omega: Mat4, domain: ParamDomain = EMPTY_DOMAIN,
                           trials: int = 32, seed: int = 0) -> Verdict:
    """Nondegeneracy verdict for an antisymmetric form: NonZero det on domain."""
    det = omega.det()
    if domain.is_zero(det):
        return Verdict("ZeroExact")
    if det.is_const or domain.known_nonzero(domain.reduce(det.num)):
        return Verdict("NonZero", witness=None, trials=0)
    return identity_test(det, domain, trials=trials, seed=seed)


def nijenhuis(L: LieAlgebra4, K: Mat4) -> Dict[tuple, Vec4]:
    """N_K(e_i,e_j) = [e_i,e_j] + [Ke_i,Ke_j] - K[Ke_i,e_j] - K[e_i,Ke_j]."""
    kcols = [K.apply(vbasis(i)) for i in range(4)]
    out = {}
    for i in range(4):
        for j in range(i + 1, 4):
            n = L.bracket_basis(i, j)
            n = vadd(n, L.bracket(kcols[i], kcols[j]))
            n = vsub(n, K.apply(L.bracket(kcols[i], vbasis(j))))
            n = vsub(n, K.apply(L.bracket(vbasis(i), kcols[j])))
            out[(i, j)] = n
    return out


@dataclass
class ParacomplexReport:
    squares_to_id: bool
    eigenrank_plus: Optional[int]
    eigenrank_minus: Optional[int]
    nijenhuis_zero: bool
    rank_constraint: Optional[str] = None

    @property
    def is_paracomplex(self) -> bool:
        return (self.squares_to_id and self.eigenrank_plus == 2
                and self.eigenrank_minus == 2 and self.nijenhuis_zero)


def eigenplanes_involutive_at(L: LieAlgebra4, K: Mat4, assignment) -> Optional[bool]:
    """At a rational parameter point: are both eigenplanes of K closed
    under the bracket?  None when K is not a para-complex candidate there
    (wrong eigenspace dimensions)."""
    from fractions import Fraction
    from .linalg import nullspace_fractions, rank_fractions
    kv = K.eval(assignment)
    consts = {}
    for (i, j), v in L.brackets.items():
        consts[(i, j)] = [c.eval(assignment) for c in v]

    def bracket_num(u, w):
        out = [Fraction(0)] * 4
        for i in range(4):
            for j in range(4):
                if i == j or not u[i] or not w[j]:
                    continue
                if (i, j) in consts:
                    vec, sgn = consts[(i, j)], 1
                elif (j, i) in consts:
                    vec, sgn = consts[(j, i)], -1
                else:
                    continue
                for r in range(4):
                    out[r] += sgn * u[i] * w[j] * vec[r]
        return out

    result = True
    for sign in (1, -1):
        shifted = [[kv[i][j] - (sign if i == j else 0) for j in range(4)]
                   for i in range(4)]
        basis = nullspace_fractions(shifted)
        if len(basis) != 2:
            return None
        u, w = basis
        b = bracket_num(u, w)
        if rank_fractions([u, w, b]) > 2:
            result = False
    return result


def paracomplex_check(L: LieAlgebra4, K: Mat4,
                      domain: Optional[ParamDomain] = None) -> ParacomplexReport:
    from .linalg import generic_rank
    dom = L.domain if domain is None else domain
    ident = Mat4.identity()
    squares = (K @ K - ident).is_zero(dom)
    rp = rm = None
    constraint = None
    if squares:
        # With K*K = Id the two eigenspaces span pointwise, so the ranks of
        # K -+ Id cannot drop below their generic values anywhere: the
        # generic rank is the rank on the whole domain.
        rp = 4 - generic_rank(K - ident, dom)
        rm = 4 - generic_rank(K + ident, dom)
    else:
        try:
            rp = 4 - rank_on_domain(K - ident, dom)
            rm = 4 - rank_on_domain(K + ident, dom)
        except RankAmbiguous as e:
            constraint = repr(e.poly)
    nz = all(vis_zero(v, dom) for v in nijenhuis(L, K).values())
    return ParacomplexReport(squares, rp, rm, nz, constraint)
