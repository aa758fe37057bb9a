"""Linear maps between fixed-basis Lie algebras and structure transport."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .liealg import LieAlgebra4
from .linalg import Mat4, Vec4, vis_zero, vsub
from .scalars import (
    EMPTY_DOMAIN, ParamDomain, ScalarError, Verdict, identity_test,
)


class NotAutomorphism(ScalarError):
    pass


@dataclass
class LinMap:
    """matrix columns are the images of the source basis in target coordinates."""

    matrix: Mat4
    source: LieAlgebra4
    target: LieAlgebra4
    domain: ParamDomain = EMPTY_DOMAIN

    def invertible(self, trials: int = 32, seed: int = 0) -> Verdict:
        det = self.matrix.det()
        if self.domain.is_zero(det):
            return Verdict("ZeroExact")
        if det.is_const or self.domain.known_nonzero(self.domain.reduce(det.num)):
            return Verdict("NonZero", witness=None, trials=0)
        return identity_test(det, self.domain, trials=trials, seed=seed)

    def inverse(self) -> "LinMap":
        return LinMap(self.matrix.inverse(), self.target, self.source, self.domain)

    def compose(self, first: "LinMap") -> "LinMap":
        """self after first: first.source -> self.target."""
        return LinMap(self.matrix @ first.matrix, first.source, self.target,
                      self.domain.merged(first.domain))


def iso_residuals(m: LinMap) -> Dict[tuple, Vec4]:
    """P[e_i,e_j]_source - [P e_i, P e_j]_target for all basis pairs."""
    p = m.matrix
    cols = [p.apply([int(r == c) for r in range(4)]) for c in range(4)]
    out = {}
    for i in range(4):
        for j in range(i + 1, 4):
            lhs = p.apply(m.source.bracket_basis(i, j))
            rhs = m.target.bracket(cols[i], cols[j])
            out[(i, j)] = vsub(lhs, rhs)
    return out


def check_lie_isomorphism(m: LinMap) -> Tuple[bool, Dict[tuple, Vec4]]:
    res = iso_residuals(m)
    ok = all(vis_zero(v, m.domain) for v in res.values())
    return ok, res


def transport(m: LinMap, omega: Mat4, K: Mat4) -> Tuple[Mat4, Mat4]:
    """Pull a structure on the map's target back to its source basis:

        (P^t omega P,  P^{-1} K P).
    """
    p = m.matrix
    w = p.transpose() @ omega @ p
    w.role = "bilinear-form"
    k = p.inverse() @ K @ p
    k.role = "endomorphism"
    return w, k


def check_equivalence(T: LinMap, s1: Tuple[Mat4, Mat4],
                      s2: Tuple[Mat4, Mat4]) -> Tuple[bool, Dict[str, Mat4]]:
    """Equivalence of structures through an automorphism T:

        T^t omega2 T = omega1   and   T^{-1} K1 T = K2.

    Raises NotAutomorphism unless T is a Lie isomorphism of its (single)
    algebra.
    """
    if T.source is not T.target and T.source.serialize() != T.target.serialize():
        raise NotAutomorphism("map endpoints differ")
    ok, _ = check_lie_isomorphism(T)
    if not ok:
        raise NotAutomorphism("map is not a Lie algebra automorphism")
    omega1, k1 = s1
    omega2, k2 = s2
    t = T.matrix
    d_omega = t.transpose() @ omega2 @ t - omega1
    d_k = t.inverse() @ k1 @ t - k2
    good = d_omega.is_zero(T.domain) and d_k.is_zero(T.domain)
    return good, {"omega": d_omega, "K": d_k}
