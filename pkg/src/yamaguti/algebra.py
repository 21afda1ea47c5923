"""Lie-Yamaguti algebras as exact structure-constant tensors.

An algebra of dimension d stores the full binary table
``binary[i][j]`` = coordinates of the bracket of e_i with e_j and the
full ternary table ``ternary[i][j][k]``.  Both tables are stored
redundantly (no i<j compression), so the six defining identities are
direct reads; skew-symmetry is an invariant verified by
``check_axioms``, not an encoding.

Witness tuples in reports are 1-based, matching the file format.
"""

from __future__ import annotations

from itertools import product

from .linalg import Matrix, ZERO, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vector
from .reports import CheckReport


class ConstructionError(ValueError):
    """A constructor rejected its input; carries a witness dict."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


def _as_table2(binary, dim):
    tab = tuple(
        tuple(tuple(map(_q, binary[i][j])) for j in range(dim)) for i in range(dim)
    )
    for row in tab:
        for v in row:
            if len(v) != dim:
                raise ValueError("binary table entries must have length dim")
    return tab


def _as_table3(ternary, dim):
    tab = tuple(
        tuple(
            tuple(tuple(map(_q, ternary[i][j][k])) for k in range(dim))
            for j in range(dim)
        )
        for i in range(dim)
    )
    for plane in tab:
        for row in plane:
            for v in row:
                if len(v) != dim:
                    raise ValueError("ternary table entries must have length dim")
    return tab


def _q(x):
    from fractions import Fraction

    return Fraction(x)


class LieYamagutiAlgebra:
    __slots__ = ("dim", "binary", "ternary")

    def __init__(self, dim: int, binary, ternary):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "binary", _as_table2(binary, dim))
        object.__setattr__(self, "ternary", _as_table3(ternary, dim))

    def __setattr__(self, name, value):
        raise AttributeError("LieYamagutiAlgebra is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, LieYamagutiAlgebra)
            and self.dim == other.dim
            and self.binary == other.binary
            and self.ternary == other.ternary
        )

    def __hash__(self):
        return hash((self.dim, self.binary, self.ternary))

    @classmethod
    def abelian(cls, dim: int) -> "LieYamagutiAlgebra":
        z = zero_vector(dim)
        b = [[z] * dim for _ in range(dim)]
        t = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        return cls(dim, b, t)

    # -- bracket evaluation ---------------------------------------------------

    def bracket(self, i: int, j: int) -> tuple:
        return self.binary[i][j]

    def triple(self, i: int, j: int, k: int) -> tuple:
        return self.ternary[i][j][k]

    def bracket_vec(self, u, v) -> tuple:
        """Bilinear extension of the bracket to coordinate vectors."""
        out = list(zero_vector(self.dim))
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                for k, t in enumerate(self.binary[i][j]):
                    if t:
                        out[k] += c * t
        return tuple(out)

    def triple_vec(self, u, v, w) -> tuple:
        """Trilinear extension of the ternary bracket."""
        out = list(zero_vector(self.dim))
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(w):
                    if not c:
                        continue
                    abc = ab * c
                    for l, t in enumerate(self.ternary[i][j][k]):
                        if t:
                            out[l] += abc * t
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return tuple(ZERO if j != i else _q(1) for j in range(self.dim))


def check_axioms(L: LieYamagutiAlgebra) -> CheckReport:
    """Verify the six defining identities on every basis tuple.

    Multilinearity makes basis checks sufficient.  The first failure
    (smallest axiom number, then lexicographic tuple) is reported.
    """
    d = L.dim
    rng = range(d)
    # (1) skew-symmetry of the bracket
    for i, j in product(rng, repeat=2):
        if not vec_is_zero(vec_add(L.binary[i][j], L.binary[j][i])):
            return CheckReport.failed(axiom=1, tuple=[i + 1, j + 1])
    # (2) skew-symmetry of the ternary bracket in its first two slots
    for i, j, k in product(rng, repeat=3):
        if not vec_is_zero(vec_add(L.ternary[i][j][k], L.ternary[j][i][k])):
            return CheckReport.failed(axiom=2, tuple=[i + 1, j + 1, k + 1])
    # (3) cyclic sum of [[x,y],z] + {x,y,z}
    for x, y, z in product(rng, repeat=3):
        total = zero_vector(d)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            total = vec_add(total, L.bracket_vec(L.binary[a][b], L.basis_vector(c)))
            total = vec_add(total, L.ternary[a][b][c])
        if not vec_is_zero(total):
            return CheckReport.failed(axiom=3, tuple=[x + 1, y + 1, z + 1])
    # (4) cyclic sum of {[x,y],z,u}
    for x, y, z, u in product(rng, repeat=4):
        total = zero_vector(d)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for l, t in enumerate(L.binary[a][b]):
                if t:
                    total = vec_add(total, vec_scale(t, L.ternary[l][c][u]))
        if not vec_is_zero(total):
            return CheckReport.failed(axiom=4, tuple=[x + 1, y + 1, z + 1, u + 1])
    # (5) {x,y,[u,v]} = [{x,y,u},v] + [u,{x,y,v}]
    for x, y, u, v in product(rng, repeat=4):
        lhs = zero_vector(d)
        for l, t in enumerate(L.binary[u][v]):
            if t:
                lhs = vec_add(lhs, vec_scale(t, L.ternary[x][y][l]))
        rhs = vec_add(
            L.bracket_vec(L.ternary[x][y][u], L.basis_vector(v)),
            L.bracket_vec(L.basis_vector(u), L.ternary[x][y][v]),
        )
        if not vec_is_zero(vec_sub(lhs, rhs)):
            return CheckReport.failed(axiom=5, tuple=[x + 1, y + 1, u + 1, v + 1])
    # (6) {x,y,-} is a derivation of the ternary bracket
    for x, y, u, v, w in product(rng, repeat=5):
        lhs = zero_vector(d)
        for l, t in enumerate(L.ternary[u][v][w]):
            if t:
                lhs = vec_add(lhs, vec_scale(t, L.ternary[x][y][l]))
        rhs = L.triple_vec(L.ternary[x][y][u], L.basis_vector(v), L.basis_vector(w))
        rhs = vec_add(
            rhs,
            L.triple_vec(L.basis_vector(u), L.ternary[x][y][v], L.basis_vector(w)),
        )
        rhs = vec_add(
            rhs,
            L.triple_vec(L.basis_vector(u), L.basis_vector(v), L.ternary[x][y][w]),
        )
        if not vec_is_zero(vec_sub(lhs, rhs)):
            return CheckReport.failed(
                axiom=6, tuple=[x + 1, y + 1, u + 1, v + 1, w + 1]
            )
    return CheckReport.passed()


def from_lie(dim: int, lie_constants) -> LieYamagutiAlgebra:
    """Lie algebra -> Lie-Yamaguti algebra with {a,b,c} = [[a,b],c].

    ``lie_constants[i][j]`` is the coordinate vector of the Lie bracket
    of e_i with e_j.  Skew-symmetry and the Jacobi identity are
    verified first; failures are rejected with a witness triple.
    """
    table = _as_table2(lie_constants, dim)
    for i in range(dim):
        for j in range(dim):
            if not vec_is_zero(vec_add(table[i][j], table[j][i])):
                raise ConstructionError(
                    "bracket is not skew-symmetric",
                    {"identity": "antisymmetry", "tuple": [i + 1, j + 1]},
                )
    helper = LieYamagutiAlgebra(
        dim, table, [[[zero_vector(dim)] * dim] * dim] * dim if dim else []
    )
    for x, y, z in product(range(dim), repeat=3):
        total = zero_vector(dim)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            total = vec_add(total, helper.bracket_vec(table[a][b], helper.basis_vector(c)))
        if not vec_is_zero(total):
            raise ConstructionError(
                "Jacobi identity fails",
                {"identity": "jacobi", "tuple": [x + 1, y + 1, z + 1]},
            )
    ternary = [
        [
            [helper.bracket_vec(table[i][j], helper.basis_vector(k)) for k in range(dim)]
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    return LieYamagutiAlgebra(dim, table, ternary)


def from_leibniz(dim: int, product_constants, convention: str = "left") -> LieYamagutiAlgebra:
    """Leibniz algebra -> LYA with [a,b] = a.b - b.a and {a,b,c} = -(a.b).c.

    ``convention`` picks which Leibniz identity the product must
    satisfy ("left": left multiplications are derivations, "right":
    right multiplications are).  The identity is verified on basis
    triples, and the constructed algebra must pass ``check_axioms``;
    under the right convention that gate can reject.
    """
    if convention not in ("left", "right"):
        raise ValueError("convention must be 'left' or 'right'")
    table = _as_table2(product_constants, dim)
    helper = LieYamagutiAlgebra(
        dim, table, [[[zero_vector(dim)] * dim] * dim] * dim if dim else []
    )

    def prod_vec(u, v):
        return helper.bracket_vec(u, v)  # bilinear extension of the raw product

    for a, b, c in product(range(dim), repeat=3):
        ea, eb, ec = (helper.basis_vector(i) for i in (a, b, c))
        if convention == "left":
            lhs = prod_vec(ea, table[b][c])
            rhs = vec_add(prod_vec(table[a][b], ec), prod_vec(eb, table[a][c]))
        else:
            lhs = prod_vec(table[a][b], ec)
            rhs = vec_add(prod_vec(table[a][c], eb), prod_vec(ea, table[b][c]))
        if not vec_is_zero(vec_sub(lhs, rhs)):
            raise ConstructionError(
                f"{convention} Leibniz identity fails",
                {"identity": f"{convention}_leibniz", "tuple": [a + 1, b + 1, c + 1]},
            )
    binary = [
        [vec_sub(table[i][j], table[j][i]) for j in range(dim)] for i in range(dim)
    ]
    ternary = [
        [
            [
                tuple(-x for x in prod_vec(table[i][j], helper.basis_vector(k)))
                for k in range(dim)
            ]
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    out = LieYamagutiAlgebra(dim, binary, ternary)
    report = check_axioms(out)
    if not report.ok:
        raise ConstructionError(
            "constructed algebra fails a Lie-Yamaguti identity", report.witness
        )
    return out


class MorphismLYA:
    """A linear map between two algebras, stored as a target x source matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: LieYamagutiAlgebra, target: LieYamagutiAlgebra, matrix: Matrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ValueError("morphism matrix shape must be target.dim x source.dim")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("MorphismLYA is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MorphismLYA)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def apply(self, u) -> tuple:
        return self.matrix.mat_vec(u)

    def column(self, j: int) -> tuple:
        return self.matrix.column(j)

    @classmethod
    def identity(cls, L: LieYamagutiAlgebra) -> "MorphismLYA":
        return cls(L, L, Matrix.identity(L.dim))

    @classmethod
    def zero(cls, source, target) -> "MorphismLYA":
        return cls(source, target, Matrix.zero(target.dim, source.dim))


def check_morphism(phi: MorphismLYA) -> CheckReport:
    """Both brackets must be preserved on all basis pairs/triples."""
    src, tgt = phi.source, phi.target
    cols = [phi.column(j) for j in range(src.dim)]
    for x, y in product(range(src.dim), repeat=2):
        lhs = phi.apply(src.binary[x][y])
        rhs = tgt.bracket_vec(cols[x], cols[y])
        if not vec_is_zero(vec_sub(lhs, rhs)):
            return CheckReport.failed(identity="binary", tuple=[x + 1, y + 1])
    for x, y, z in product(range(src.dim), repeat=3):
        lhs = phi.apply(src.ternary[x][y][z])
        rhs = tgt.triple_vec(cols[x], cols[y], cols[z])
        if not vec_is_zero(vec_sub(lhs, rhs)):
            return CheckReport.failed(identity="ternary", tuple=[x + 1, y + 1, z + 1])
    return CheckReport.passed()


def compose_morphisms(second: MorphismLYA, first: MorphismLYA) -> MorphismLYA:
    if first.target is not second.source and first.target != second.source:
        raise ValueError("composition shape mismatch")
    return MorphismLYA(first.source, second.target, second.matrix * first.matrix)


def check_homomorphism_pair(
    alpha: MorphismLYA,
    beta: MorphismLYA,
    phi: MorphismLYA,
    phi_prime: MorphismLYA,
) -> CheckReport:
    """alpha, beta must be morphisms and the square phi' a = b phi must commute."""
    for name, m in (("alpha", alpha), ("beta", beta)):
        rep = check_morphism(m)
        if not rep.ok:
            return CheckReport.failed(component=name, **rep.witness)
    if (
        phi.source != alpha.source
        or phi_prime.source != alpha.target
        or phi.target != beta.source
        or phi_prime.target != beta.target
    ):
        raise ValueError("homomorphism pair shapes do not match")
    lhs = phi_prime.matrix * alpha.matrix
    rhs = beta.matrix * phi.matrix
    if lhs != rhs:
        diff = lhs - rhs
        for j in range(diff.cols):
            col = diff.column(j)
            if not vec_is_zero(col):
                return CheckReport.failed(identity="square", tuple=[j + 1])
    return CheckReport.passed()
