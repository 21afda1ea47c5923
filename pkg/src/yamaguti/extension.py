"""Abelian extensions of a morphism: validation, sections, cocycles.

An extension is a pair of short exact rows linked by a lifted
morphism.  Rows are stored with explicit injection/projection
matrices, so externally supplied extensions in arbitrary bases are
checkable; extensions built from cocycles use block form
(algebra coordinates first, fiber coordinates last).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import LieYamagutiAlgebra, MorphismLYA, check_axioms, check_morphism
from .cochain import CochainPair, DiagonalCochain, EvenCochain, MorphismCochain23, OddCochain
from .cohomology import MorphismComplex
from .linalg import Matrix, ZERO, rank, solve, vec_is_zero, vec_sub, zero_vector
from .reports import CheckReport
from .representation import MorphismRepresentation, Representation


class ExtensionError(ValueError):
    """A malformed extension (a value escaped the fiber, say)."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {"reason": message}


class NotCohomologousError(ValueError):
    """The supplied pair of maps does not connect the two cocycles."""


@dataclass(frozen=True)
class AbelianExtension:
    phi_hat: MorphismLYA  # lifted morphism between the two total algebras
    phi: MorphismLYA      # base morphism
    inj: Matrix           # fiber V into the source total algebra
    proj: Matrix          # source total algebra onto L1
    inj_bar: Matrix
    proj_bar: Matrix
    psi: Matrix           # fiber map V -> W

    @property
    def hat_source(self) -> LieYamagutiAlgebra:
        return self.phi_hat.source

    @property
    def hat_target(self) -> LieYamagutiAlgebra:
        return self.phi_hat.target

    @property
    def fiber_dim_source(self) -> int:
        return self.inj.cols

    @property
    def fiber_dim_target(self) -> int:
        return self.inj_bar.cols


@dataclass(frozen=True)
class Section:
    s: Matrix
    s_bar: Matrix


def _abelian_fiber_witness(hat: LieYamagutiAlgebra, inj: Matrix, row: str):
    """Brackets of two fiber elements and triples with >= 2 fiber slots must die."""
    fdim = inj.cols
    fib = [inj.column(v) for v in range(fdim)]
    basis = [hat.basis_vector(i) for i in range(hat.dim)]
    for u, v in product(range(fdim), repeat=2):
        if not vec_is_zero(hat.bracket_vec(fib[u], fib[v])):
            return {"check": f"{row}_abelian_fiber", "identity": "binary", "tuple": [u + 1, v + 1]}
    for u, v in product(range(fdim), repeat=2):
        for x in range(hat.dim):
            slots = (
                (fib[u], fib[v], basis[x]),
                (fib[u], basis[x], fib[v]),
                (basis[x], fib[u], fib[v]),
            )
            for pos, args in enumerate(slots):
                if not vec_is_zero(hat.triple_vec(*args)):
                    return {
                        "check": f"{row}_abelian_fiber",
                        "identity": "ternary",
                        "slots": pos + 1,
                        "tuple": [u + 1, v + 1, x + 1],
                    }
    return None


def check_extension(e: AbelianExtension) -> CheckReport:
    """All structural invariants, exactly; first failure wins."""
    hat1, hat2 = e.hat_source, e.hat_target
    L1, L2 = e.phi.source, e.phi.target
    for name, alg in (("hat_source", hat1), ("hat_target", hat2)):
        rep = check_axioms(alg)
        if not rep.ok:
            return CheckReport.failed(check=f"{name}_axioms", **rep.witness)
    for name, mor in (("lifted_morphism", e.phi_hat), ("base_morphism", e.phi)):
        rep = check_morphism(mor)
        if not rep.ok:
            return CheckReport.failed(check=name, **rep.witness)
    for name, mat, src, tgt in (
        ("source_projection", e.proj, hat1, L1),
        ("target_projection", e.proj_bar, hat2, L2),
    ):
        rep = check_morphism(MorphismLYA(src, tgt, mat))
        if not rep.ok:
            return CheckReport.failed(check=f"{name}_morphism", **rep.witness)
    for name, inj, proj, hat, base in (
        ("source", e.inj, e.proj, hat1, L1),
        ("target", e.inj_bar, e.proj_bar, hat2, L2),
    ):
        if rank(inj) != inj.cols:
            return CheckReport.failed(check=f"{name}_row", identity="injective")
        if rank(proj) != base.dim:
            return CheckReport.failed(check=f"{name}_row", identity="surjective")
        if not (proj * inj).is_zero():
            return CheckReport.failed(check=f"{name}_row", identity="composite_zero")
        if inj.cols + base.dim != hat.dim:
            return CheckReport.failed(check=f"{name}_row", identity="exactness_rank")
    if e.proj_bar * e.phi_hat.matrix != e.phi.matrix * e.proj:
        return CheckReport.failed(check="square", identity="projection")
    if e.phi_hat.matrix * e.inj != e.inj_bar * e.psi:
        return CheckReport.failed(check="square", identity="injection")
    for hat, inj, row in ((hat1, e.inj, "source"), (hat2, e.inj_bar, "target")):
        w = _abelian_fiber_witness(hat, inj, row)
        if w:
            return CheckReport(False, w)
    return CheckReport.passed()


def check_section(e: AbelianExtension, sec: Section) -> CheckReport:
    if e.proj * sec.s != Matrix.identity(e.phi.source.dim):
        return CheckReport.failed(check="section", identity="source")
    if e.proj_bar * sec.s_bar != Matrix.identity(e.phi.target.dim):
        return CheckReport.failed(check="section", identity="target")
    return CheckReport.passed()


def canonical_section(e: AbelianExtension) -> Section:
    """The section picking, for each base vector, the preimage supported on
    the pivot columns of the projection's reduced row echelon form."""
    return Section(_pivot_section(e.proj), _pivot_section(e.proj_bar))


def _pivot_section(proj: Matrix) -> Matrix:
    from .linalg import rref

    base_dim, hat_dim = proj.rows, proj.cols
    aug = proj.hstack(Matrix.identity(base_dim))
    reduced, pivots, rk = rref(aug)
    piv = [c for c in pivots if c < hat_dim]
    if len(piv) != base_dim:
        raise ExtensionError("projection is not surjective")
    transform = Matrix(
        [row[hat_dim:] for row in reduced.entries[:base_dim]], base_dim, base_dim
    )
    s0 = [[ZERO] * base_dim for _ in range(hat_dim)]
    for r, pc in enumerate(piv):
        s0[pc][r] = 1
    return Matrix(s0, hat_dim, base_dim) * transform


def _fiber_pull(inj: Matrix, vec, context: str) -> tuple:
    x = solve(inj, vec)
    if x is None:
        raise ExtensionError(f"value escaped the fiber during {context}")
    return x


def induced_representation(e: AbelianExtension, sec: Section) -> MorphismRepresentation:
    """Actions on the fibers read off through a section.

    rho(x)v is the bracket of the section lift of x with the injected
    v, pulled back through the injection; D and theta use the ternary
    bracket with two section arguments.  The result is independent of
    the chosen section (tested, not assumed).
    """
    out = []
    for hat, inj, base, s in (
        (e.hat_source, e.inj, e.phi.source, sec.s),
        (e.hat_target, e.inj_bar, e.phi.target, sec.s_bar),
    ):
        d, fdim = base.dim, inj.cols
        lifts = [s.column(x) for x in range(d)]
        fib = [inj.column(v) for v in range(fdim)]
        rho = []
        for x in range(d):
            cols = [
                _fiber_pull(inj, hat.bracket_vec(lifts[x], fib[v]), "rho")
                for v in range(fdim)
            ]
            rho.append(Matrix.from_columns(cols, fdim))
        dmap = [
            [
                Matrix.from_columns(
                    [
                        _fiber_pull(inj, hat.triple_vec(lifts[x], lifts[y], fib[v]), "dmap")
                        for v in range(fdim)
                    ],
                    fdim,
                )
                for y in range(d)
            ]
            for x in range(d)
        ]
        theta = [
            [
                Matrix.from_columns(
                    [
                        _fiber_pull(inj, hat.triple_vec(fib[v], lifts[x], lifts[y]), "theta")
                        for v in range(fdim)
                    ],
                    fdim,
                )
                for y in range(d)
            ]
            for x in range(d)
        ]
        out.append(Representation(base, fdim, rho, dmap, theta))
    return MorphismRepresentation(e.phi, out[0], out[1], e.psi)


def cocycle_from_extension(e: AbelianExtension, sec: Section) -> MorphismCochain23:
    """The (2,3)-cocycle measuring the failure of the section to be a morphism."""
    mr = induced_representation(e, sec)
    L1, L2 = e.phi.source, e.phi.target
    d1, d2 = L1.dim, L2.dim
    mv, mw = e.fiber_dim_source, e.fiber_dim_target

    def row_cocycle(hat, inj, base, s, d, fdim, context):
        lifts = [s.column(x) for x in range(d)]
        even = {}
        ev0 = EvenCochain.zero(1, d, fdim)
        for key in ev0.keys_in_order():
            x, y = ev0.key_args(key)
            raw = vec_sub(hat.bracket_vec(lifts[x], lifts[y]), s.mat_vec(base.binary[x][y]))
            val = _fiber_pull(inj, raw, context)
            if not vec_is_zero(val):
                even[key] = val
        odd = {}
        od0 = OddCochain.zero(1, d, fdim)
        for key in od0.keys_in_order():
            x, y, z = od0.key_args(key)
            raw = vec_sub(
                hat.triple_vec(lifts[x], lifts[y], lifts[z]),
                s.mat_vec(base.ternary[x][y][z]),
            )
            val = _fiber_pull(inj, raw, context)
            if not vec_is_zero(val):
                odd[key] = val
        return CochainPair(EvenCochain(1, d, fdim, even), OddCochain(1, d, fdim, odd))

    alpha = row_cocycle(e.hat_source, e.inj, L1, sec.s, d1, mv, "source cocycle")
    beta = row_cocycle(e.hat_target, e.inj_bar, L2, sec.s_bar, d2, mw, "target cocycle")
    gcols = []
    for x in range(d1):
        raw = vec_sub(
            e.phi_hat.apply(sec.s.column(x)), sec.s_bar.mat_vec(e.phi.column(x))
        )
        gcols.append(_fiber_pull(e.inj_bar, raw, "morphism defect"))
    gamma = DiagonalCochain(Matrix.from_columns(gcols, mw))
    cocycle = MorphismCochain23(alpha, beta, gamma)
    cx = MorphismComplex(mr)
    out_a, out_b, out_g = cx.coboundary_23(cocycle)
    if not (out_a.is_zero() and out_b.is_zero() and out_g.is_zero()):
        raise ExtensionError("extracted cochain is not a cocycle")
    return cocycle


def extension_from_cocycle(
    phi: MorphismLYA, mr: MorphismRepresentation, c: MorphismCochain23
) -> AbelianExtension:
    """Semidirect-style total algebras on (base + fiber) twisted by a cocycle."""
    if mr.phi != phi:
        raise ValueError("representation must be over the given morphism")
    cx = MorphismComplex(mr)
    out_a, out_b, out_g = cx.coboundary_23(c)
    if not (out_a.is_zero() and out_b.is_zero() and out_g.is_zero()):
        raise ExtensionError("input cochain is not a cocycle", {"reason": "not_cocycle"})

    def build_total(base: LieYamagutiAlgebra, rep: Representation, pair: CochainPair):
        d, fdim = base.dim, rep.module_dim
        dim = d + fdim
        zero = zero_vector(dim)

        def emb(alg_vec, fib_vec):
            return tuple(alg_vec) + tuple(fib_vec)

        zf = zero_vector(fdim)
        za = zero_vector(d)
        binary = [[zero] * dim for _ in range(dim)]
        for x in range(d):
            for y in range(d):
                binary[x][y] = emb(base.binary[x][y], pair.f.evaluate((x, y)))
        for x in range(d):
            for v in range(fdim):
                col = rep.rho[x].column(v)
                binary[x][d + v] = emb(za, col)
                binary[d + v][x] = emb(za, tuple(-a for a in col))
        ternary = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
        for x in range(d):
            for y in range(d):
                for z in range(d):
                    ternary[x][y][z] = emb(
                        base.ternary[x][y][z], pair.g.evaluate((x, y, z))
                    )
        for y in range(d):
            for z in range(d):
                for u in range(fdim):
                    ternary[d + u][y][z] = emb(za, rep.theta[y][z].column(u))
        for x in range(d):
            for z in range(d):
                for v in range(fdim):
                    col = rep.theta[x][z].column(v)
                    ternary[x][d + v][z] = emb(za, tuple(-a for a in col))
        for x in range(d):
            for y in range(d):
                for w in range(fdim):
                    ternary[x][y][d + w] = emb(za, rep.dmap[x][y].column(w))
        total = LieYamagutiAlgebra(dim, binary, ternary)
        inj = Matrix.from_columns(
            [emb(za, _unit(fdim, v)) for v in range(fdim)], dim
        )
        proj = Matrix.from_columns(
            [_unit(d, x) for x in range(d)] + [za] * fdim, d
        )
        return total, inj, proj

    hat1, inj, proj = build_total(phi.source, mr.rep_source, c.alpha)
    hat2, inj_bar, proj_bar = build_total(phi.target, mr.rep_target, c.beta)
    d1, mv = phi.source.dim, mr.rep_source.module_dim
    d2, mw = phi.target.dim, mr.rep_target.module_dim
    block = [[ZERO] * (d1 + mv) for _ in range(d2 + mw)]
    for r in range(d2):
        for cix in range(d1):
            block[r][cix] = phi.matrix.entries[r][cix]
    for r in range(mw):
        for cix in range(d1):
            block[d2 + r][cix] = c.gamma.matrix.entries[r][cix]
        for cix in range(mv):
            block[d2 + r][d1 + cix] = mr.psi.entries[r][cix]
    phi_hat = MorphismLYA(hat1, hat2, Matrix(block, d2 + mw, d1 + mv))
    return AbelianExtension(phi_hat, phi, inj, proj, inj_bar, proj_bar, mr.psi)


def _unit(n, i):
    v = [ZERO] * n
    v[i] = 1
    return tuple(v)


@dataclass(frozen=True)
class IsomorphismResult:
    ext_source: AbelianExtension
    ext_target: AbelianExtension
    alpha: MorphismLYA
    beta: MorphismLYA


def isomorphism_from_cohomologous(
    phi: MorphismLYA,
    mr: MorphismRepresentation,
    c1: MorphismCochain23,
    c2: MorphismCochain23,
    xi: DiagonalCochain,
    xi_prime: DiagonalCochain,
) -> IsomorphismResult:
    """Shear isomorphism between the extensions of two cohomologous cocycles.

    Requires c1 - c2 to equal the predecessor differential of
    (xi, xi_prime) exactly; then (x, v) |-> (x, v + xi(x)) and its
    barred analogue intertwine everything in sight (verified by the
    caller-facing tests via the pair and diagram checks).
    """
    cx = MorphismComplex(mr)
    expected = cx.predecessor(xi, xi_prime)
    diff = c1 - c2
    if not (
        (diff.alpha - expected.alpha).is_zero()
        and (diff.beta - expected.beta).is_zero()
        and (diff.gamma - expected.gamma).is_zero()
    ):
        raise NotCohomologousError(
            "difference of cocycles is not the differential of the given maps"
        )
    e1 = extension_from_cocycle(phi, mr, c1)
    e2 = extension_from_cocycle(phi, mr, c2)
    d1, mv = phi.source.dim, mr.rep_source.module_dim
    d2, mw = phi.target.dim, mr.rep_target.module_dim

    def shear(d, fdim, lin: Matrix) -> Matrix:
        block = [[ZERO] * (d + fdim) for _ in range(d + fdim)]
        for r in range(d):
            block[r][r] = 1
        for r in range(fdim):
            block[d + r][d + r] = 1
            for cix in range(d):
                block[d + r][cix] = lin.entries[r][cix]
        return Matrix(block, d + fdim, d + fdim)

    alpha = MorphismLYA(e1.hat_source, e2.hat_source, shear(d1, mv, xi.matrix))
    beta = MorphismLYA(e1.hat_target, e2.hat_target, shear(d2, mw, xi_prime.matrix))
    return IsomorphismResult(e1, e2, alpha, beta)
