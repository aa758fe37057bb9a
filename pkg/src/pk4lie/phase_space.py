"""Two-dimensional left-symmetric algebras and the phase-space extension.

U = span(e1, e2) and its dual U* = span(e3, e4) with e3 = e1*, e4 = e2*.
Both sides carry a left-symmetric product; the combined product on U + U*
is

    (X + a).(Y + b) = X.Y - Lt_a Y - Lt_X b + a.b

with Lt the transpose of left multiplication through the dual pairing.
The pair is Lie-extendible when the commutator of this product satisfies
the Jacobi identity; the resulting bracket tables are what the catalog's
phase-space rows list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .liealg import LieAlgebra4
from .linalg import Vec4, vzero
from .scalars import (
    EMPTY_DOMAIN, ParamDomain, ParseError, Poly, Scalar, ZERO, ONE,
)

Vec2 = List[Scalar]


class LSA2:
    """Left-symmetric product on a 2-dimensional space.

    products[(a, b)] is the coefficient vector of basis_a . basis_b; only
    nonzero products are stored.  Left-symmetry ass(u,v,w) = ass(v,u,w) is
    a checked property.
    """

    def __init__(self, products: Dict[tuple, Vec2], name: str = "",
                 domain: ParamDomain = EMPTY_DOMAIN):
        self.products = {k: list(v) for k, v in products.items()
                         if not all(c.is_zero for c in v)}
        self.name = name
        self.domain = domain

    def product_basis(self, a: int, b: int) -> Vec2:
        v = self.products.get((a, b))
        return list(v) if v else [ZERO, ZERO]

    def product(self, u: Vec2, v: Vec2) -> Vec2:
        out = [ZERO, ZERO]
        for a in range(2):
            for b in range(2):
                c = u[a] * v[b]
                if c.is_zero:
                    continue
                p = self.product_basis(a, b)
                out = [o + c * pc for o, pc in zip(out, p)]
        return out

    def associator_symmetry_defects(self) -> List[Vec2]:
        """ass(u,v,w) - ass(v,u,w) on all basis triples with u != v."""
        def ass(u, v, w):
            uv = self.product(u, v)
            vw = self.product(v, w)
            return [a - b for a, b in zip(self.product(uv, w), self.product(u, vw))]

        e = ([ONE, ZERO], [ZERO, ONE])
        out = []
        for w in e:
            d1 = ass(e[0], e[1], w)
            d2 = ass(e[1], e[0], w)
            out.append([a - b for a, b in zip(d1, d2)])
        return out

    def is_left_symmetric(self, domain: Optional[ParamDomain] = None) -> bool:
        dom = self.domain if domain is None else domain
        return all(all(dom.is_zero(c) for c in d)
                   for d in self.associator_symmetry_defects())

    def commutator_brackets(self) -> Vec2:
        """[e1, e2] = e1.e2 - e2.e1 (Jacobi is automatic in dimension 2)."""
        p12 = self.product_basis(0, 1)
        p21 = self.product_basis(1, 0)
        return [a - b for a, b in zip(p12, p21)]

    @staticmethod
    def parse(text: str, name: str = "", domain: ParamDomain = EMPTY_DOMAIN,
              offset: int = 0) -> "LSA2":
        return LSA2(parse_products(text, offset), name, domain)

    def serialize(self, offset: int = 0) -> str:
        return emit_products(self.products, offset)

    def __repr__(self):
        return f"LSA2({self.name or self.serialize()})"


_PROD_RE = re.compile(r"^e([1-4])\s*\.\s*e([1-4])\s*=\s*(.+)$")


def parse_products(text: str, offset: int = 0) -> Dict[tuple, Vec2]:
    """Product table "e2.e1=e1; e2.e2=alpha*e2" over a 2D basis.

    `offset` 0 reads the e1,e2 basis; 2 reads the dual basis e3,e4.
    """
    out: Dict[tuple, Vec2] = {}
    text = text.strip()
    if not text or text == "trivial":
        return out
    names = (f"e{offset+1}", f"e{offset+2}")
    for piece in text.split(";"):
        piece = piece.strip()
        if not piece:
            continue
        m = _PROD_RE.match(piece)
        if not m:
            raise ParseError(f"bad product equation {piece!r}")
        a, b = int(m.group(1)) - 1 - offset, int(m.group(2)) - 1 - offset
        if not (0 <= a < 2 and 0 <= b < 2):
            raise ParseError(f"product {piece!r} outside basis {names}")
        vec = _parse_vec2(m.group(3), offset)
        if (a, b) in out:
            raise ParseError(f"duplicate product in {text!r}")
        out[(a, b)] = vec
    return out


def _parse_vec2(text: str, offset: int) -> Vec2:
    from .notation import parse_vector
    v4 = parse_vector(text)
    lo = [v4[i] for i in range(offset, offset + 2)]
    rest = [v4[i] for i in range(4) if not (offset <= i < offset + 2)]
    if any(not c.is_zero for c in rest):
        raise ParseError(f"vector {text!r} leaves the 2D basis")
    return lo


def emit_products(products: Dict[tuple, Vec2], offset: int = 0) -> str:
    from .notation import emit_vector
    parts = []
    for (a, b) in sorted(products):
        vec = products[(a, b)]
        if all(c.is_zero for c in vec):
            continue
        v4 = vzero()
        v4[offset], v4[offset + 1] = vec[0], vec[1]
        parts.append(f"e{offset+a+1}.e{offset+b+1}={emit_vector(v4)}")
    return "; ".join(parts) if parts else "trivial"


@dataclass
class LSAPair:
    on_U: LSA2
    on_Ustar: LSA2
    domain: ParamDomain = EMPTY_DOMAIN


def phase_product(pair: LSAPair, p: Vec4, q: Vec4) -> Vec4:
    """The extension product on U + U* evaluated on coordinate vectors."""
    X, alpha = p[:2], p[2:]
    Y, beta = q[:2], q[2:]
    U, Us = pair.on_U, pair.on_Ustar

    out_u = U.product(X, Y)
    out_s = Us.product(alpha, beta)

    # - Lt_X beta, a U* element: (Lt_X b)(v) = b(X.v)
    for j in range(2):  # component on e_{3+j} = dual of e_{1+j}
        val = ZERO
        for b in range(2):
            if beta[b].is_zero:
                continue
            # b-th dual basis vector applied to X.e_{1+j}
            val = val + beta[b] * U.product(X, _basis2(j))[b]
        out_s[j] = out_s[j] - val

    # - Lt_alpha Y, a U element: its e_{1+j} component is (alpha . e_{3+j})(Y)
    for j in range(2):
        val = ZERO
        for a in range(2):
            if alpha[a].is_zero:
                continue
            prod = Us.product(_basis2(a), _basis2(j))
            val = val + alpha[a] * sum((prod[b] * Y[b] for b in range(2)), ZERO)
        out_u[j] = out_u[j] - val

    return [out_u[0], out_u[1], out_s[0], out_s[1]]


def _basis2(i: int) -> Vec2:
    return [ONE, ZERO] if i == 0 else [ZERO, ONE]


def assembled_brackets(pair: LSAPair) -> LieAlgebra4:
    """Lie algebra candidate from commutators of the extension product."""
    basis = [
        [ONE, ZERO, ZERO, ZERO], [ZERO, ONE, ZERO, ZERO],
        [ZERO, ZERO, ONE, ZERO], [ZERO, ZERO, ZERO, ONE],
    ]
    br = {}
    for i in range(4):
        for j in range(i + 1, 4):
            pq = phase_product(pair, basis[i], basis[j])
            qp = phase_product(pair, basis[j], basis[i])
            br[(i, j)] = [a - b for a, b in zip(pq, qp)]
    return LieAlgebra4(br, domain=pair.domain)


def is_lie_extendible(pair: LSAPair) -> Tuple[bool, Dict[tuple, Vec4]]:
    """Jacobi verdict for the assembled bracket, with residuals."""
    L = assembled_brackets(pair)
    defects = L.jacobi_defect()
    ok = all(all(pair.domain.is_zero(c) for c in v) for v in defects.values())
    return ok, defects


USTAR_COEFFS = ("a33", "b33", "a34", "b34", "a43", "b43", "a44", "b44")


def generic_ustar() -> LSA2:
    """Arbitrary product on U*: e3.e3 = a33 e3 + b33 e4, etc."""
    s = {n: Scalar.var(n) for n in USTAR_COEFFS}
    return LSA2({
        (0, 0): [s["a33"], s["b33"]],
        (0, 1): [s["a34"], s["b34"]],
        (1, 0): [s["a43"], s["b43"]],
        (1, 1): [s["a44"], s["b44"]],
    }, "generic_ustar")


@dataclass
class ConstraintSystem:
    """Jacobi defect of the assembled bracket as labelled polynomials."""

    equations: List[Tuple[str, Poly]]

    def polys(self) -> List[Poly]:
        return [p for _, p in self.equations]

    def contains(self, poly: Poly) -> bool:
        """Membership up to a rational unit."""
        from .scalars import _make_primitive
        target = _make_primitive(poly)
        return any(_make_primitive(p) == target for _, p in self.equations
                   if not p.is_zero)

    def residuals_at(self, coeffs: Dict[str, Scalar]) -> List[Scalar]:
        mapping = {Scalar.var(n).params().pop(): Scalar.of(v)
                   for n, v in coeffs.items()}
        return [Scalar(p).substitute(mapping) for _, p in self.equations]

    def is_solution(self, coeffs: Dict[str, Scalar],
                    domain: ParamDomain = EMPTY_DOMAIN) -> bool:
        return all(domain.is_zero(r) for r in self.residuals_at(coeffs))


def extendibility_constraints(on_U: LSA2) -> ConstraintSystem:
    """Polynomial system on the free U* coefficients equivalent to Jacobi."""
    pair = LSAPair(on_U, generic_ustar(), on_U.domain)
    defects = assembled_brackets(pair).jacobi_defect()
    eqs = []
    for (i, j, k), vec in sorted(defects.items()):
        for comp in range(4):
            s = vec[comp]
            if s.is_zero:
                continue
            if not s.den.is_const:
                raise ParseError("constraint system is not polynomial")
            eqs.append((f"jacobi(e{i+1},e{j+1},e{k+1}).e{comp+1}", s.num))
    return ConstraintSystem(eqs)


def ustar_coeffs_from_products(products: Dict[tuple, Vec2]) -> Dict[str, Scalar]:
    """Coefficient assignment {a33: ..., b33: ...} from a product table."""
    out = {n: ZERO for n in USTAR_COEFFS}
    for (a, b), vec in products.items():
        out[f"a{a+3}{b+3}"] = vec[0]
        out[f"b{a+3}{b+3}"] = vec[1]
    return out


# ---------------------------------------------------------------------------
# The ten cataloged families of 2-dimensional left-symmetric algebras.
#
# Transcription notes: the printed list garbles three products; the values
# below are the ones that are actually left-symmetric and reproduce the
# phase-space bracket tables (b4: e2.e2 = e1+e2; b5+/-: e2.e2 = -2 e2 with
# e1.e1 = +-e2; c5-: e1.e1 = -e2).

LSA_CATALOG_TEXT = {
    "b1_alpha": ("e2.e1=e1; e2.e2=alpha*e2", ""),
    "b2": ("e2.e1=e1; e2.e2=e1+e2", ""),
    "b3_alpha": ("e1.e2=e1; e2.e1=(1-1/alpha)*e1; e2.e2=e2", "alpha != 0"),
    "b4": ("e1.e2=e1; e2.e2=e1+e2", ""),
    "b5_plus": ("e1.e1=e2; e2.e1=-e1; e2.e2=-2*e2", ""),
    "b5_minus": ("e1.e1=-e2; e2.e1=-e1; e2.e2=-2*e2", ""),
    "c1": ("trivial", ""),
    "c2": ("e2.e2=e2", ""),
    "c3": ("e2.e2=e1", ""),
    "c4": ("e2.e2=e2; e2.e1=e1; e1.e2=e1", ""),
    "c5_plus": ("e2.e2=e2; e2.e1=e1; e1.e2=e1; e1.e1=e2", ""),
    "c5_minus": ("e2.e2=e2; e2.e1=e1; e1.e2=e1; e1.e1=-e2", ""),
}


def lsa_catalog() -> Dict[str, LSA2]:
    out = {}
    for name, (text, dom) in LSA_CATALOG_TEXT.items():
        out[name] = LSA2.parse(text, name, ParamDomain.parse(dom))
    return out


class RowFailed(ParseError):
    def __init__(self, row_id: str, check: str, witness: str = ""):
        self.row_id = row_id
        self.check = check
        self.witness = witness
        super().__init__(f"{row_id}: {check}" + (f" ({witness})" if witness else ""))


def build_table_rows(cat=None) -> List[LieAlgebra4]:
    """Every cataloged phase-space bracket family, with Jacobi and the
    normal-form structure (omega = e13+e24, K = E11+E22-E33-E44) asserted
    on each row's domain.  Raises RowFailed naming the first bad row."""
    from .catalog import load_catalog
    from .notation import parse_endo, parse_two_form
    from .structures import validate_para_kahler
    if cat is None:
        cat = load_catalog(check=False)
    omega = parse_two_form("e13+e24")
    K = parse_endo("E11+E22-E33-E44")
    out = []
    for entry_id, row in cat.phase_rows.items():
        L = row.algebra()
        if not L.is_lie_algebra():
            raise RowFailed(entry_id, "jacobi")
        rep = validate_para_kahler(L, omega, K, L.domain, entry_id,
                                   signature_samples=4)
        if not rep.valid:
            raise RowFailed(entry_id, ",".join(rep.failing()))
        out.append(L)
    return out
