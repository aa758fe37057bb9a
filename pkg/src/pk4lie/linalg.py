"""Exact 4x4 linear algebra over Scalar: matrices, ranks, signatures.

Indices are 0-based internally; the text formats and reports use the
1-based labels e1..e4.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .scalars import (
    EMPTY_DOMAIN, ParamDomain, Scalar, ScalarError, ZERO, ONE, emit_scalar,
)


class DegenerateError(ScalarError):
    pass


class RankAmbiguous(ScalarError):
    """A pivot is neither identically zero nor provably nonvanishing."""

    def __init__(self, poly):
        self.poly = poly
        super().__init__(f"rank depends on parameters through: {poly!r}")


Vec4 = List[Scalar]


def vzero() -> Vec4:
    return [ZERO, ZERO, ZERO, ZERO]


def vbasis(i: int) -> Vec4:
    v = vzero()
    v[i] = ONE
    return v


def vadd(a: Vec4, b: Vec4) -> Vec4:
    return [x + y for x, y in zip(a, b)]


def vsub(a: Vec4, b: Vec4) -> Vec4:
    return [x - y for x, y in zip(a, b)]


def vscale(c, a: Vec4) -> Vec4:
    c = Scalar.of(c)
    return [c * x for x in a]


def vis_zero(a: Vec4, domain: ParamDomain = EMPTY_DOMAIN) -> bool:
    return all(domain.is_zero(x) for x in a)


class Mat4:
    """4x4 matrix of Scalars with an optional role tag."""

    __slots__ = ("rows", "role")

    def __init__(self, rows: Sequence[Sequence], role: str = "generic"):
        self.rows = [[Scalar.of(v) for v in row] for row in rows]
        if len(self.rows) != 4 or any(len(r) != 4 for r in self.rows):
            raise ScalarError("Mat4 needs 4x4 entries")
        self.role = role

    @staticmethod
    def zeros(role: str = "generic") -> "Mat4":
        return Mat4([[ZERO] * 4 for _ in range(4)], role)

    @staticmethod
    def identity() -> "Mat4":
        m = Mat4.zeros("endomorphism")
        for i in range(4):
            m.rows[i][i] = ONE
        return m

    @staticmethod
    def E(i: int, j: int) -> "Mat4":
        """Elementary endomorphism sending e_j to e_i (0-based)."""
        m = Mat4.zeros("endomorphism")
        m.rows[i][j] = ONE
        return m

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def copy(self) -> "Mat4":
        return Mat4([row[:] for row in self.rows], self.role)

    def __add__(self, other: "Mat4") -> "Mat4":
        return Mat4([[a + b for a, b in zip(r1, r2)]
                     for r1, r2 in zip(self.rows, other.rows)], self.role)

    def __sub__(self, other: "Mat4") -> "Mat4":
        return Mat4([[a - b for a, b in zip(r1, r2)]
                     for r1, r2 in zip(self.rows, other.rows)], self.role)

    def __neg__(self) -> "Mat4":
        return Mat4([[-a for a in r] for r in self.rows], self.role)

    def scale(self, c) -> "Mat4":
        c = Scalar.of(c)
        return Mat4([[c * a for a in r] for r in self.rows], self.role)

    def __matmul__(self, other: "Mat4") -> "Mat4":
        out = Mat4.zeros(self.role)
        for i in range(4):
            for j in range(4):
                s = ZERO
                for k in range(4):
                    s = s + self.rows[i][k] * other.rows[k][j]
                out.rows[i][j] = s
        return out

    def apply(self, v: Vec4) -> Vec4:
        return [sum((self.rows[i][k] * v[k] for k in range(4)), ZERO) for i in range(4)]

    def transpose(self) -> "Mat4":
        return Mat4([[self.rows[j][i] for j in range(4)] for i in range(4)], self.role)

    def trace(self) -> Scalar:
        return sum((self.rows[i][i] for i in range(4)), ZERO)

    def det(self) -> Scalar:
        r = self.rows

        def m2(i, j, k, l):
            return r[i][k] * r[j][l] - r[i][l] * r[j][k]

        # Laplace expansion along the first two rows.
        return (m2(0, 1, 0, 1) * m2(2, 3, 2, 3)
                - m2(0, 1, 0, 2) * m2(2, 3, 1, 3)
                + m2(0, 1, 0, 3) * m2(2, 3, 1, 2)
                + m2(0, 1, 1, 2) * m2(2, 3, 0, 3)
                - m2(0, 1, 1, 3) * m2(2, 3, 0, 2)
                + m2(0, 1, 2, 3) * m2(2, 3, 0, 1))

    def _cofactor(self, i: int, j: int) -> Scalar:
        idx = [k for k in range(4) if k != i]
        jdx = [k for k in range(4) if k != j]
        r = self.rows
        a, b, c = ([r[p][q] for q in jdx] for p in idx)
        det3 = (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
        return det3 if (i + j) % 2 == 0 else -det3

    def inverse(self) -> "Mat4":
        d = self.det()
        if d.is_zero:
            raise DegenerateError("matrix determinant is identically zero")
        out = Mat4.zeros(self.role)
        for i in range(4):
            for j in range(4):
                out.rows[i][j] = self._cofactor(j, i) / d
        return out

    def is_zero(self, domain: ParamDomain = EMPTY_DOMAIN) -> bool:
        return all(domain.is_zero(v) for r in self.rows for v in r)

    def __eq__(self, other):
        return isinstance(other, Mat4) and all(
            self.rows[i][j] == other.rows[i][j] for i in range(4) for j in range(4))

    def equals(self, other: "Mat4", domain: ParamDomain = EMPTY_DOMAIN) -> bool:
        return (self - other).is_zero(domain)

    def is_symmetric(self, domain: ParamDomain = EMPTY_DOMAIN) -> bool:
        return (self - self.transpose()).is_zero(domain)

    def is_antisymmetric(self, domain: ParamDomain = EMPTY_DOMAIN) -> bool:
        return (self + self.transpose()).is_zero(domain)

    def substitute(self, mapping) -> "Mat4":
        return Mat4([[v.substitute(mapping) for v in r] for r in self.rows], self.role)

    def params(self) -> set:
        out = set()
        for r in self.rows:
            for v in r:
                out |= v.params()
        return out

    def eval(self, assignment) -> List[List[Fraction]]:
        return [[v.eval(assignment) for v in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(",".join(emit_scalar(v) for v in r) for r in self.rows)
        return f"Mat4[{body}]"


def mat_from_cols(cols: Sequence[Vec4], role: str = "generic") -> Mat4:
    return Mat4([[cols[j][i] for j in range(4)] for i in range(4)], role)


def mat_cols(m: Mat4) -> List[Vec4]:
    return [[m.rows[i][j] for i in range(4)] for j in range(4)]


def commutator(a: Mat4, b: Mat4) -> Mat4:
    return a @ b - b @ a


class ThreeForm4:
    """Alternating 3-form: one Scalar per index triple i<j<k."""

    TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))

    def __init__(self, components: Optional[dict] = None):
        self.components = {t: ZERO for t in self.TRIPLES}
        if components:
            for t, v in components.items():
                self.components[t] = Scalar.of(v)

    def __getitem__(self, triple):
        return self.components[triple]

    def is_zero(self, domain: ParamDomain = EMPTY_DOMAIN) -> bool:
        return all(domain.is_zero(v) for v in self.components.values())

    def __add__(self, other):
        return ThreeForm4({t: self.components[t] + other.components[t]
                           for t in self.TRIPLES})

    def __sub__(self, other):
        return ThreeForm4({t: self.components[t] - other.components[t]
                           for t in self.TRIPLES})

    def scale(self, c):
        c = Scalar.of(c)
        return ThreeForm4({t: c * v for t, v in self.components.items()})

    def __repr__(self):
        parts = [f"e{i+1}{j+1}{k+1}: {emit_scalar(v)}"
                 for (i, j, k), v in self.components.items() if not v.is_zero]
        return "ThreeForm4(" + ", ".join(parts or ["0"]) + ")"


# ---------------------------------------------------------------------------
# Domain-aware elimination: ranks and affine linear solving


def _pick_pivot(rows, row_used, col, domain):
    """Return row index with a provably nonvanishing entry in `col`."""
    best = None
    fallback = None
    for i in range(len(rows)):
        if i in row_used:
            continue
        v = rows[i][col]
        if domain.is_zero(v):
            continue
        if v.is_const:
            return i
        if domain.known_nonzero(domain.reduce(v.num)):
            if best is None:
                best = i
        else:
            fallback = rows[i][col]
    if best is not None:
        return best
    if fallback is not None:
        raise RankAmbiguous(fallback)
    return None


def rank_on_domain(m: Mat4, domain: ParamDomain = EMPTY_DOMAIN,
                   _depth: int = 0) -> int:
    """Rank over the domain; case-splits on single-variable pivots whose
    vanishing the domain leaves open, and raises RankAmbiguous only when
    the branches genuinely disagree."""
    rows = [[v for v in r] for r in m.rows]
    try:
        return _eliminate(rows, 4, domain)[0]
    except RankAmbiguous as e:
        if _depth >= 4:
            raise
        num = domain.reduce(e.poly.num if isinstance(e.poly, Scalar) else e.poly)
        root = _linear_root(num)
        if root is None:
            raise
        var, value = root
        try:
            at_root = m.substitute({var: value})
        except ZeroDivisionError:
            raise e
        r_at = rank_on_domain(at_root, domain, _depth + 1)
        from .scalars import Constraint
        branch = ParamDomain(domain.constraints + [Constraint(num, "!=")],
                             domain.radicals)
        r_off = rank_on_domain(m, branch, _depth + 1)
        if r_at == r_off:
            return r_at
        raise RankAmbiguous(e.poly)


def _linear_root(num) -> Optional[tuple]:
    """(param, root) when the polynomial is univariate of degree 1, or a
    single-variable monomial (root 0); None otherwise."""
    from .scalars import Param
    if len(num.terms) == 1:
        mono = next(iter(num.terms))
        if len(mono) == 1:
            return Param._order[mono[0][0]], Scalar.const(0)
        return None
    params = num.params()
    if len(params) != 1:
        return None
    var = params.pop()
    if num.degree_in(var) != 1:
        return None
    c1 = c0 = None
    for mono, c in num.terms.items():
        if mono == ():
            c0 = c
        elif mono == ((var.index, 1),):
            c1 = c
        else:
            return None
    if c1 is None:
        return None
    return var, Scalar.const(-(c0 or 0) / c1)


def generic_rank(m: Mat4, domain: ParamDomain = EMPTY_DOMAIN) -> int:
    """Rank at generic parameter values: pivots only need to be nonzero as
    polynomials modulo the domain's radical relations."""
    rows = [[v for v in r] for r in m.rows]
    row_used: set = set()
    rank = 0
    for col in range(4):
        piv_row = next((i for i in range(4) if i not in row_used
                        and not domain.is_zero(rows[i][col])), None)
        if piv_row is None:
            continue
        row_used.add(piv_row)
        rank += 1
        piv = rows[piv_row][col]
        for j in range(4):
            if j in row_used:
                continue
            f = rows[j][col] / piv
            if not f.is_zero:
                rows[j] = [a - f * b for a, b in zip(rows[j], rows[piv_row])]
    return rank


def _eliminate(rows, ncols, domain):
    """In-place forward elimination; returns (rank, pivot (row,col) list)."""
    row_used: set = set()
    pivots = []
    for col in range(ncols):
        i = _pick_pivot(rows, row_used, col, domain)
        if i is None:
            continue
        row_used.add(i)
        pivots.append((i, col))
        piv = rows[i][col]
        for j in range(len(rows)):
            if j in row_used:
                continue
            f = rows[j][col] / piv
            if f.is_zero:
                continue
            rows[j] = [a - f * b for a, b in zip(rows[j], rows[i])]
    return len(pivots), pivots


class AffineSolution:
    """Affine solution set: point + span(basis), with fresh free parameters."""

    def __init__(self, point: List[Scalar], basis: List[List[Scalar]]):
        self.point = point
        self.basis = basis

    @property
    def free_count(self) -> int:
        return len(self.basis)

    def with_params(self, names: Sequence[str]) -> List[Scalar]:
        """point + sum t_k * basis_k as Scalar expressions."""
        out = list(self.point)
        for k, b in enumerate(self.basis):
            t = Scalar.var(names[k])
            out = [o + t * v for o, v in zip(out, b)]
        return out


def solve_affine(a_rows: List[List[Scalar]], b: List[Scalar],
                 domain: ParamDomain = EMPTY_DOMAIN) -> Optional[AffineSolution]:
    """Solve A x = b exactly over Scalar; None when provably inconsistent.

    Raises RankAmbiguous when a pivot or a consistency decision depends on
    parameters in a way the domain cannot certify.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [list(row) + [b[i]] for i, row in enumerate(a_rows)]
    row_used: set = set()
    pivots = {}
    for col in range(n):
        i = _pick_pivot(aug, row_used, col, domain)
        if i is None:
            continue
        row_used.add(i)
        pivots[col] = i
        piv = aug[i][col]
        for j in range(m):
            if j == i:
                continue
            f = aug[j][col] / piv
            if f.is_zero:
                continue
            aug[j] = [x - f * y for x, y in zip(aug[j], aug[i])]
    # consistency
    for j in range(m):
        if j in row_used:
            continue
        if all(domain.is_zero(aug[j][c]) for c in range(n)):
            rhs = aug[j][n]
            if domain.is_zero(rhs):
                continue
            if domain.known_nonzero(domain.reduce(rhs.num)) or rhs.is_const:
                return None
            raise RankAmbiguous(rhs)
    free_cols = [c for c in range(n) if c not in pivots]
    point = [ZERO] * n
    for col, i in pivots.items():
        point[col] = aug[i][n] / aug[i][col]
    basis = []
    for fc in free_cols:
        vec = [ZERO] * n
        vec[fc] = ONE
        for col, i in pivots.items():
            vec[col] = -aug[i][fc] / aug[i][col]
        basis.append(vec)
    return AffineSolution(point, basis)


def nullspace_fractions(matrix: List[List[Fraction]]) -> List[List[Fraction]]:
    """Basis of the kernel of a rational matrix (rows x 4 columns)."""
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m[0]) if m else 0
    pivots = {}
    row_used: set = set()
    for col in range(n):
        i = next((r for r in range(len(m)) if r not in row_used and m[r][col] != 0),
                 None)
        if i is None:
            continue
        row_used.add(i)
        pivots[col] = i
        piv = m[i][col]
        for j in range(len(m)):
            if j == i:
                continue
            f = m[j][col] / piv
            if f:
                m[j] = [a - f * b for a, b in zip(m[j], m[i])]
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for col, i in pivots.items():
            vec[col] = -m[i][free] / m[i][col]
        basis.append(vec)
    return basis


def rank_fractions(matrix: List[List[Fraction]]) -> int:
    ncols = len(matrix[0]) if matrix else 0
    return ncols - len(nullspace_fractions(matrix))


def signature_of(matrix: List[List[Fraction]]) -> tuple:
    """Exact signature (n_pos, n_neg, n_zero) of a rational symmetric matrix."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] for row in matrix]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ScalarError("signature of a non-symmetric matrix")
    alive = list(range(n))
    pos = neg = 0
    while alive:
        k = next((i for i in alive if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in alive for j in alive
                         if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence: e_i <- e_i + e_j makes the (i,i) entry nonzero
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            k = i
        if a[k][k] > 0:
            pos += 1
        else:
            neg += 1
        alive.remove(k)
        for j in alive:
            f = a[k][j] / a[k][k]
            if f == 0:
                continue
            for c in range(n):
                a[j][c] -= f * a[k][c]
            for r in range(n):
                a[r][j] -= f * a[r][k]
    zero = n - pos - neg
    return pos, neg, zero
