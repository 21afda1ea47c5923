"""Representations (rho, D, theta) of an algebra and of a morphism.

A representation on a module of dimension m stores rho as d matrices
and the bilinear maps D, theta as full d x d grids of m x m matrices
(no symmetry is imposed on D or theta as inputs; the axioms pin down
whatever symmetry they actually have).
"""

from __future__ import annotations

from itertools import product

from .algebra import LieYamagutiAlgebra, MorphismLYA, check_homomorphism_pair
from .linalg import Matrix
from .reports import CheckReport


class Representation:
    __slots__ = ("algebra", "module_dim", "rho", "dmap", "theta")

    def __init__(self, algebra: LieYamagutiAlgebra, module_dim: int, rho, dmap, theta):
        d, m = algebra.dim, module_dim
        rho = tuple(rho)
        dmap = tuple(tuple(row) for row in dmap)
        theta = tuple(tuple(row) for row in theta)
        if len(rho) != d or len(dmap) != d or len(theta) != d:
            raise ValueError("action tables must be indexed by the algebra basis")
        for mat in rho:
            if mat.rows != m or mat.cols != m:
                raise ValueError("rho entries must be module_dim x module_dim")
        for grid in (dmap, theta):
            for row in grid:
                if len(row) != d:
                    raise ValueError("bilinear action grids must be d x d")
                for mat in row:
                    if mat.rows != m or mat.cols != m:
                        raise ValueError("bilinear action entries must be m x m")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "module_dim", module_dim)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "dmap", dmap)
        object.__setattr__(self, "theta", theta)

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.algebra == other.algebra
            and self.module_dim == other.module_dim
            and self.rho == other.rho
            and self.dmap == other.dmap
            and self.theta == other.theta
        )

    @classmethod
    def zero(cls, algebra: LieYamagutiAlgebra, module_dim: int) -> "Representation":
        d, m = algebra.dim, module_dim
        z = Matrix.zero(m, m)
        return cls(algebra, m, [z] * d, [[z] * d for _ in range(d)], [[z] * d for _ in range(d)])

    # linear combinations of the actions, for arguments given in coordinates

    def rho_vec(self, u) -> Matrix:
        m = Matrix.zero(self.module_dim, self.module_dim)
        for i, c in enumerate(u):
            if c:
                m = m + self.rho[i].scale(c)
        return m

    def dmap_vec(self, u, v) -> Matrix:
        m = Matrix.zero(self.module_dim, self.module_dim)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    m = m + self.dmap[i][j].scale(a * b)
        return m

    def theta_vec(self, u, v) -> Matrix:
        m = Matrix.zero(self.module_dim, self.module_dim)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    m = m + self.theta[i][j].scale(a * b)
        return m


def adjoint_representation(L: LieYamagutiAlgebra) -> Representation:
    """The algebra acting on itself: rho(x)y=[x,y], D(x,y)z={x,y,z}, theta(x,y)z={z,x,y}."""
    d = L.dim
    rho = [
        Matrix.from_columns([L.binary[x][y] for y in range(d)], d) for x in range(d)
    ]
    dmap = [
        [Matrix.from_columns([L.ternary[x][y][z] for z in range(d)], d) for y in range(d)]
        for x in range(d)
    ]
    theta = [
        [Matrix.from_columns([L.ternary[z][x][y] for z in range(d)], d) for y in range(d)]
        for x in range(d)
    ]
    return Representation(L, d, rho, dmap, theta)


def check_representation(r: Representation) -> CheckReport:
    """The seven compatibility identities, as matrix identities per basis tuple."""
    L = r.algebra
    d = L.dim
    rng = range(d)

    def rho_of(vec):
        return r.rho_vec(vec)

    def dmap_left(vec, z):
        m = Matrix.zero(r.module_dim, r.module_dim)
        for l, c in enumerate(vec):
            if c:
                m = m + r.dmap[l][z].scale(c)
        return m

    def theta_left(vec, z):
        m = Matrix.zero(r.module_dim, r.module_dim)
        for l, c in enumerate(vec):
            if c:
                m = m + r.theta[l][z].scale(c)
        return m

    def theta_right(x, vec):
        m = Matrix.zero(r.module_dim, r.module_dim)
        for l, c in enumerate(vec):
            if c:
                m = m + r.theta[x][l].scale(c)
        return m

    for x, y in product(rng, repeat=2):
        lhs = (
            r.dmap[x][y]
            - r.theta[y][x]
            + r.theta[x][y]
            + rho_of(L.binary[x][y])
            - r.rho[x] * r.rho[y]
            + r.rho[y] * r.rho[x]
        )
        if not lhs.is_zero():
            return CheckReport.failed(axiom=1, tuple=[x + 1, y + 1])
    for x, y, z in product(rng, repeat=3):
        lhs = dmap_left(L.binary[x][y], z) + dmap_left(L.binary[y][z], x) + dmap_left(
            L.binary[z][x], y
        )
        if not lhs.is_zero():
            return CheckReport.failed(axiom=2, tuple=[x + 1, y + 1, z + 1])
    for x, y, z in product(rng, repeat=3):
        lhs = theta_left(L.binary[x][y], z) - (
            r.theta[x][z] * r.rho[y] - r.theta[y][z] * r.rho[x]
        )
        if not lhs.is_zero():
            return CheckReport.failed(axiom=3, tuple=[x + 1, y + 1, z + 1])
    for x, y, z in product(rng, repeat=3):
        lhs = r.dmap[x][y] * r.rho[z] - r.rho[z] * r.dmap[x][y] - rho_of(
            L.ternary[x][y][z]
        )
        if not lhs.is_zero():
            return CheckReport.failed(axiom=4, tuple=[x + 1, y + 1, z + 1])
    for x, y, z in product(rng, repeat=3):
        lhs = theta_right(x, L.binary[y][z]) - (
            r.rho[y] * r.theta[x][z] - r.rho[z] * r.theta[x][y]
        )
        if not lhs.is_zero():
            return CheckReport.failed(axiom=5, tuple=[x + 1, y + 1, z + 1])
    for x, y, u, v in product(rng, repeat=4):
        lhs = (
            r.dmap[x][y] * r.theta[u][v]
            - r.theta[u][v] * r.dmap[x][y]
            - theta_left(L.ternary[x][y][u], v)
            - theta_right(u, L.ternary[x][y][v])
        )
        if not lhs.is_zero():
            return CheckReport.failed(axiom=6, tuple=[x + 1, y + 1, u + 1, v + 1])
    for x, y, z, u in product(rng, repeat=4):
        lhs = theta_right(x, L.ternary[y][z][u]) - (
            r.theta[z][u] * r.theta[x][y]
            - r.theta[y][u] * r.theta[x][z]
            + r.dmap[y][z] * r.theta[x][u]
        )
        if not lhs.is_zero():
            return CheckReport.failed(axiom=7, tuple=[x + 1, y + 1, z + 1, u + 1])
    return CheckReport.passed()


def pullback_representation(phi: MorphismLYA, rep_target: Representation) -> Representation:
    """Precompose all three actions with phi, giving a source-algebra action."""
    if rep_target.algebra != phi.target:
        raise ValueError("representation is not over the morphism target")
    d = phi.source.dim
    cols = [phi.column(j) for j in range(d)]
    rho = [rep_target.rho_vec(cols[x]) for x in range(d)]
    dmap = [[rep_target.dmap_vec(cols[x], cols[y]) for y in range(d)] for x in range(d)]
    theta = [[rep_target.theta_vec(cols[x], cols[y]) for y in range(d)] for x in range(d)]
    return Representation(phi.source, rep_target.module_dim, rho, dmap, theta)


class MorphismRepresentation:
    """Coefficients (V, W, psi) for the cohomology of a morphism."""

    __slots__ = ("phi", "rep_source", "rep_target", "psi")

    def __init__(
        self,
        phi: MorphismLYA,
        rep_source: Representation,
        rep_target: Representation,
        psi: Matrix,
    ):
        if rep_source.algebra != phi.source or rep_target.algebra != phi.target:
            raise ValueError("representations must live over the morphism's algebras")
        if psi.rows != rep_target.module_dim or psi.cols != rep_source.module_dim:
            raise ValueError("psi must be target-module x source-module")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "rep_source", rep_source)
        object.__setattr__(self, "rep_target", rep_target)
        object.__setattr__(self, "psi", psi)

    def __setattr__(self, name, value):
        raise AttributeError("MorphismRepresentation is immutable")


def check_morphism_representation(mr: MorphismRepresentation) -> CheckReport:
    """psi must intertwine all three actions (through phi on the target side)."""
    for name, rep in (("source", mr.rep_source), ("target", mr.rep_target)):
        r = check_representation(rep)
        if not r.ok:
            return CheckReport.failed(component=name, **r.witness)
    phi, V, W, psi = mr.phi, mr.rep_source, mr.rep_target, mr.psi
    d1 = phi.source.dim
    cols = [phi.column(j) for j in range(d1)]
    for x in range(d1):
        if psi * V.rho[x] != W.rho_vec(cols[x]) * psi:
            return CheckReport.failed(identity="rho", tuple=[x + 1])
    for x, y in product(range(d1), repeat=2):
        if psi * V.dmap[x][y] != W.dmap_vec(cols[x], cols[y]) * psi:
            return CheckReport.failed(identity="dmap", tuple=[x + 1, y + 1])
        if psi * V.theta[x][y] != W.theta_vec(cols[x], cols[y]) * psi:
            return CheckReport.failed(identity="theta", tuple=[x + 1, y + 1])
    return CheckReport.passed()


def self_morphism_representation(phi: MorphismLYA) -> MorphismRepresentation:
    """Adjoint coefficients (L1, L2, phi); home of deformation infinitesimals."""
    return MorphismRepresentation(
        phi,
        adjoint_representation(phi.source),
        adjoint_representation(phi.target),
        phi.matrix,
    )


def hom_induced_representation(
    alpha: MorphismLYA,
    beta: MorphismLYA,
    phi: MorphismLYA,
    phi_prime: MorphismLYA,
) -> MorphismRepresentation:
    """Representation of phi on (L1', L2', phi') induced by a homomorphism pair.

    The actions pull the adjoint actions of the primed algebras back
    through alpha and beta.
    """
    pair = check_homomorphism_pair(alpha, beta, phi, phi_prime)
    if not pair.ok:
        raise ValueError(f"not a homomorphism pair: {pair.witness}")
    rep_source = pullback_representation(alpha, adjoint_representation(alpha.target))
    rep_target = pullback_representation(beta, adjoint_representation(beta.target))
    return MorphismRepresentation(phi, rep_source, rep_target, phi_prime.matrix)
