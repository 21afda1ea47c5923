"""Truncated one-parameter formal deformations of a morphism.

A deformation of phi : L1 -> L2 to order N carries, for each order
1 <= i <= N, a skew bilinear and a pair-skew trilinear perturbation on
each algebra plus a matrix perturbation of phi.  All series arithmetic
is modulo t^(N+1); the verifier checks the coefficient-of-t^n identity
of every structure equation with distinct convolution indices
(i + j = n for the bracket equations, i + j + k = n and
i + j + p + q = n for the two morphism equations).

The skew conditions themselves are structural here: perturbation terms
are stored as cochains, which cannot represent a non-skew table.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import LieYamagutiAlgebra, MorphismLYA
from .cochain import CochainPair, DiagonalCochain, EvenCochain, MorphismCochain23, OddCochain
from .cohomology import MorphismComplex, morphism_cohomology_23, MorphismCohomologyReport
from .linalg import Matrix, ZERO, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vector
from .reports import CheckReport
from .representation import self_morphism_representation

EQUATIONS = (
    "cyclic_sum",
    "cyclic_ternary",
    "bracket_derivation",
    "triple_derivation",
)


class FormalDeformation:
    """Perturbation series for both brackets of both algebras and for phi."""

    __slots__ = ("phi", "order", "f", "g", "fp", "gp", "phi_terms")

    def __init__(self, phi: MorphismLYA, order: int, f, g, fp, gp, phi_terms):
        d1, d2 = phi.source.dim, phi.target.dim
        f, g, fp, gp, phi_terms = tuple(f), tuple(g), tuple(fp), tuple(gp), tuple(phi_terms)
        if not (len(f) == len(g) == len(fp) == len(gp) == len(phi_terms) == order):
            raise ValueError("every term family must have exactly `order` entries")
        for c in f:
            if (c.n, c.d, c.m) != (1, d1, d1):
                raise ValueError("binary source terms must be (2)-cochains on L1")
        for c in g:
            if (c.n, c.d, c.m) != (1, d1, d1):
                raise ValueError("ternary source terms must be (3)-cochains on L1")
        for c in fp:
            if (c.n, c.d, c.m) != (1, d2, d2):
                raise ValueError("binary target terms must be (2)-cochains on L2")
        for c in gp:
            if (c.n, c.d, c.m) != (1, d2, d2):
                raise ValueError("ternary target terms must be (3)-cochains on L2")
        for mat in phi_terms:
            if mat.rows != d2 or mat.cols != d1:
                raise ValueError("morphism terms must be target.dim x source.dim")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "fp", fp)
        object.__setattr__(self, "gp", gp)
        object.__setattr__(self, "phi_terms", phi_terms)

    def __setattr__(self, name, value):
        raise AttributeError("FormalDeformation is immutable")

    @classmethod
    def trivial(cls, phi: MorphismLYA, order: int) -> "FormalDeformation":
        d1, d2 = phi.source.dim, phi.target.dim
        return cls(
            phi,
            order,
            [EvenCochain.zero(1, d1, d1)] * order,
            [OddCochain.zero(1, d1, d1)] * order,
            [EvenCochain.zero(1, d2, d2)] * order,
            [OddCochain.zero(1, d2, d2)] * order,
            [Matrix.zero(d2, d1)] * order,
        )

    def is_trivial(self) -> bool:
        return all(c.is_zero() for c in self.f + self.g + self.fp + self.gp) and all(
            m.is_zero() for m in self.phi_terms
        )


@dataclass(frozen=True)
class EquivalenceData:
    """Unit-constant-term formal isomorphism pairs (one series per algebra)."""

    psi_terms: tuple  # order-i term of the L1 series, i = 1..N
    psip_terms: tuple

    @classmethod
    def identity(cls, order: int, d1: int, d2: int) -> "EquivalenceData":
        return cls(
            tuple(Matrix.zero(d1, d1) for _ in range(order)),
            tuple(Matrix.zero(d2, d2) for _ in range(order)),
        )

    @property
    def order(self) -> int:
        return len(self.psi_terms)


# ---------------------------------------------------------------------------
# full-table views of the series (index 0 = the undeformed structure)
# ---------------------------------------------------------------------------

def _binary_tables(L: LieYamagutiAlgebra, terms):
    d = L.dim
    tabs = [L.binary]
    for c in terms:
        tabs.append(
            tuple(tuple(c.evaluate((i, j)) for j in range(d)) for i in range(d))
        )
    return tabs


def _ternary_tables(L: LieYamagutiAlgebra, terms):
    d = L.dim
    tabs = [L.ternary]
    for c in terms:
        tabs.append(
            tuple(
                tuple(
                    tuple(c.evaluate((i, j, k)) for k in range(d)) for j in range(d)
                )
                for i in range(d)
            )
        )
    return tabs


def _bilinear(tab, u, v, d):
    out = list(zero_vector(d))
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            c = a * b
            for k, t in enumerate(tab[i][j]):
                if t:
                    out[k] += c * t
    return tuple(out)


def _trilinear(tab, u, v, w, d):
    out = list(zero_vector(d))
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
                for l, t in enumerate(tab[i][j][k]):
                    if t:
                        out[l] += abc * t
    return tuple(out)


def _series_inverse(mats):
    """Inverse of a matrix series with invertible... here identity order-0 term."""
    n = len(mats) - 1
    dim = mats[0].rows
    inv = [Matrix.identity(dim)]
    for k in range(1, n + 1):
        acc = Matrix.zero(dim, dim)
        for i in range(1, k + 1):
            acc = acc + mats[i] * inv[k - i]
        inv.append(-acc)
    return inv


def _series_product(a, b):
    """Order-wise product (composition) of two matrix series of equal length."""
    n = len(a) - 1
    out = []
    for k in range(n + 1):
        acc = Matrix.zero(a[0].rows, b[0].cols)
        for i in range(k + 1):
            acc = acc + a[i] * b[k - i]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _check_algebra_equations(d, tab2, tab3, order_n, witness_prefix):
    """Coefficient-of-t^n identities of the four bracket axioms; first failure."""
    rng = range(d)
    splits = [(i, order_n - i) for i in range(order_n + 1)]
    # cyclic sum of [[x,y],z] + {x,y,z}
    for x, y, z in product(rng, repeat=3):
        total = zero_vector(d)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for i, j in splits:
                inner = tab2[j][a][b]
                if not vec_is_zero(inner):
                    total = vec_add(
                        total, _bilinear(tab2[i], inner, _unit_vec(d, c), d)
                    )
            total = vec_add(total, tab3[order_n][a][b][c])
        if not vec_is_zero(total):
            return {"order": order_n, "equation": f"{witness_prefix}.cyclic_sum", "tuple": [x + 1, y + 1, z + 1]}
    # cyclic sum of {[x,y],z,w}
    for x, y, z, w in product(rng, repeat=4):
        total = zero_vector(d)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for i, j in splits:
                inner = tab2[j][a][b]
                for l, t in enumerate(inner):
                    if t:
                        total = vec_add(total, vec_scale(t, tab3[i][l][c][w]))
        if not vec_is_zero(total):
            return {"order": order_n, "equation": f"{witness_prefix}.cyclic_ternary", "tuple": [x + 1, y + 1, z + 1, w + 1]}
    # {x,y,[z,w]} = [{x,y,z},w] + [z,{x,y,w}]
    for x, y, z, w in product(rng, repeat=4):
        total = zero_vector(d)
        for i, j in splits:
            for l, t in enumerate(tab2[j][z][w]):
                if t:
                    total = vec_add(total, vec_scale(t, tab3[i][x][y][l]))
            for l, t in enumerate(tab3[j][x][y][z]):
                if t:
                    total = vec_sub(total, vec_scale(t, tab2[i][l][w]))
            for l, t in enumerate(tab3[j][x][y][w]):
                if t:
                    total = vec_sub(total, vec_scale(t, tab2[i][z][l]))
        if not vec_is_zero(total):
            return {"order": order_n, "equation": f"{witness_prefix}.bracket_derivation", "tuple": [x + 1, y + 1, z + 1, w + 1]}
    # {x,y,-} as a derivation of the ternary bracket
    for x, y, z, w, u in product(rng, repeat=5):
        total = zero_vector(d)
        for i, j in splits:
            for l, t in enumerate(tab3[j][z][w][u]):
                if t:
                    total = vec_add(total, vec_scale(t, tab3[i][x][y][l]))
            for l, t in enumerate(tab3[j][x][y][z]):
                if t:
                    total = vec_sub(total, vec_scale(t, tab3[i][l][w][u]))
            for l, t in enumerate(tab3[j][x][y][w]):
                if t:
                    total = vec_sub(total, vec_scale(t, tab3[i][z][l][u]))
            for l, t in enumerate(tab3[j][x][y][u]):
                if t:
                    total = vec_sub(total, vec_scale(t, tab3[i][z][w][l]))
        if not vec_is_zero(total):
            return {"order": order_n, "equation": f"{witness_prefix}.triple_derivation", "tuple": [x + 1, y + 1, z + 1, w + 1, u + 1]}
    return None


def _unit_vec(d, i):
    v = [ZERO] * d
    v[i] = 1
    return tuple(v)


def verify_deformation(D: FormalDeformation) -> CheckReport:
    """Check every order-n identity, 1 <= n <= order, on all basis tuples.

    The base structures (order 0) are a precondition, not re-checked.
    The first failure is reported as (order, equation, tuple), smallest
    order first, equations in a fixed scan order, tuples lexicographic.
    """
    phi = D.phi
    L1, L2 = phi.source, phi.target
    d1, d2 = L1.dim, L2.dim
    tab2s = _binary_tables(L1, D.f)
    tab3s = _ternary_tables(L1, D.g)
    tab2t = _binary_tables(L2, D.fp)
    tab3t = _ternary_tables(L2, D.gp)
    phis = [phi.matrix] + list(D.phi_terms)
    cols = [[mat.column(j) for j in range(d1)] for mat in phis]

    for n in range(1, D.order + 1):
        w = _check_algebra_equations(d1, tab2s, tab3s, n, "source")
        if w:
            return CheckReport(False, w)
        w = _check_algebra_equations(d2, tab2t, tab3t, n, "target")
        if w:
            return CheckReport(False, w)
        # morphism equation, binary part
        for x, y in product(range(d1), repeat=2):
            total = zero_vector(d2)
            for i in range(n + 1):
                val = tab2s[n - i][x][y]
                if not vec_is_zero(val):
                    total = vec_add(total, phis[i].mat_vec(val))
            for i in range(n + 1):
                for j in range(n - i + 1):
                    k = n - i - j
                    total = vec_sub(
                        total, _bilinear(tab2t[i], cols[j][x], cols[k][y], d2)
                    )
            if not vec_is_zero(total):
                return CheckReport(
                    False,
                    {"order": n, "equation": "morphism.binary", "tuple": [x + 1, y + 1]},
                )
        # morphism equation, ternary part
        for x, y, z in product(range(d1), repeat=3):
            total = zero_vector(d2)
            for i in range(n + 1):
                val = tab3s[n - i][x][y][z]
                if not vec_is_zero(val):
                    total = vec_add(total, phis[i].mat_vec(val))
            for i in range(n + 1):
                for j in range(n - i + 1):
                    for p in range(n - i - j + 1):
                        q = n - i - j - p
                        total = vec_sub(
                            total,
                            _trilinear(tab3t[i], cols[j][x], cols[p][y], cols[q][z], d2),
                        )
            if not vec_is_zero(total):
                return CheckReport(
                    False,
                    {"order": n, "equation": "morphism.ternary", "tuple": [x + 1, y + 1, z + 1]},
                )
    return CheckReport.passed()


# ---------------------------------------------------------------------------
# infinitesimals
# ---------------------------------------------------------------------------

def n_infinitesimal(D: FormalDeformation):
    """Smallest n whose term quintuple is nonzero, with that quintuple
    packaged as a degree-(2,3) morphism cochain; None for the trivial
    series.  All five families must vanish below n."""
    for idx in range(D.order):
        if (
            not D.f[idx].is_zero()
            or not D.g[idx].is_zero()
            or not D.fp[idx].is_zero()
            or not D.gp[idx].is_zero()
            or not D.phi_terms[idx].is_zero()
        ):
            triple = MorphismCochain23(
                CochainPair(D.f[idx], D.g[idx]),
                CochainPair(D.fp[idx], D.gp[idx]),
                DiagonalCochain(D.phi_terms[idx]),
            )
            return idx + 1, triple
    return None


def infinitesimal_cocycle_check(D: FormalDeformation) -> CheckReport:
    """The leading term of a verified deformation must be a (2,3)-cocycle."""
    inf = n_infinitesimal(D)
    if inf is None:
        return CheckReport.passed()
    _, triple = inf
    cx = MorphismComplex(self_morphism_representation(D.phi))
    out_a, out_b, out_g = cx.coboundary_23(triple)
    if out_a.is_zero() and out_b.is_zero() and out_g.is_zero():
        return CheckReport.passed()
    return CheckReport.failed(reason="infinitesimal is not a cocycle", order=inf[0])


# ---------------------------------------------------------------------------
# equivalences
# ---------------------------------------------------------------------------

def apply_equivalence(D: FormalDeformation, E: EquivalenceData) -> FormalDeformation:
    """Transport D along the formal isomorphism pair E, exactly mod t^(N+1).

    The source series psi_t pulls both brackets back through its
    arguments and corrects with its inverse:

        new_binary_t(x, y) = psi_t^{-1}( binary_t(psi_t x, psi_t y) )

    and the morphism series transforms as psi'_t^{-1} o phi_t o psi_t,
    the unique choice under which the transformed triple is again a
    deformation.
    """
    if E.order != D.order:
        raise ValueError("equivalence order must match deformation order")
    phi = D.phi
    L1, L2 = phi.source, phi.target
    d1, d2 = L1.dim, L2.dim
    N = D.order
    psi = [Matrix.identity(d1)] + list(E.psi_terms)
    psip = [Matrix.identity(d2)] + list(E.psip_terms)
    inv = _series_inverse(psi)
    invp = _series_inverse(psip)
    psi_cols = [[mat.column(j) for j in range(d1)] for mat in psi]
    psip_cols = [[mat.column(j) for j in range(d2)] for mat in psip]

    tab2 = _binary_tables(L1, D.f)
    tab3 = _ternary_tables(L1, D.g)
    tab2p = _binary_tables(L2, D.fp)
    tab3p = _ternary_tables(L2, D.gp)

    def transform_binary(tabs, pcols, pinv, d):
        # arg-transformed series, then the inverse correction
        mid = []
        for b in range(N + 1):
            mid.append(
                [[_sum_bilinear(tabs, pcols, b, x, y, d) for y in range(d)] for x in range(d)]
            )
        out = []
        for b in range(N + 1):
            tab = []
            for x in range(d):
                row = []
                for y in range(d):
                    acc = zero_vector(d)
                    for a in range(b + 1):
                        val = mid[b - a][x][y]
                        if not vec_is_zero(val):
                            acc = vec_add(acc, pinv[a].mat_vec(val))
                    row.append(acc)
                tab.append(row)
            out.append(tab)
        return out

    def _sum_bilinear(tabs, pcols, b, x, y, d):
        acc = zero_vector(d)
        for k in range(b + 1):
            for c in range(b - k + 1):
                e = b - k - c
                acc = vec_add(acc, _bilinear(tabs[k], pcols[c][x], pcols[e][y], d))
        return acc

    def transform_ternary(tabs, pcols, pinv, d):
        mid = []
        for b in range(N + 1):
            cube = []
            for x in range(d):
                plane = []
                for y in range(d):
                    row = []
                    for z in range(d):
                        acc = zero_vector(d)
                        for k in range(b + 1):
                            for c in range(b - k + 1):
                                for e in range(b - k - c + 1):
                                    h = b - k - c - e
                                    acc = vec_add(
                                        acc,
                                        _trilinear(
                                            tabs[k],
                                            pcols[c][x],
                                            pcols[e][y],
                                            pcols[h][z],
                                            d,
                                        ),
                                    )
                        row.append(acc)
                    plane.append(row)
                cube.append(plane)
            mid.append(cube)
        out = []
        for b in range(N + 1):
            cube = []
            for x in range(d):
                plane = []
                for y in range(d):
                    row = []
                    for z in range(d):
                        acc = zero_vector(d)
                        for a in range(b + 1):
                            val = mid[b - a][x][y][z]
                            if not vec_is_zero(val):
                                acc = vec_add(acc, pinv[a].mat_vec(val))
                        row.append(acc)
                    plane.append(row)
                cube.append(plane)
            out.append(cube)
        return out

    new2 = transform_binary(tab2, psi_cols, inv, d1)
    new3 = transform_ternary(tab3, psi_cols, inv, d1)
    new2p = transform_binary(tab2p, psip_cols, invp, d2)
    new3p = transform_ternary(tab3p, psip_cols, invp, d2)
    new_phi = _series_product(invp, _series_product([phi.matrix] + list(D.phi_terms), psi))

    return FormalDeformation(
        phi,
        N,
        [_table_to_even(new2[i], d1) for i in range(1, N + 1)],
        [_table_to_odd(new3[i], d1) for i in range(1, N + 1)],
        [_table_to_even(new2p[i], d2) for i in range(1, N + 1)],
        [_table_to_odd(new3p[i], d2) for i in range(1, N + 1)],
        new_phi[1:],
    )


def _table_to_even(tab, d) -> EvenCochain:
    data = {}
    c = EvenCochain.zero(1, d, d)
    for x in range(d):
        if not vec_is_zero(tab[x][x]):
            raise AssertionError("transformed binary table is not alternating")
    for key in c.keys_in_order():
        i, j = c.key_args(key)
        if not vec_is_zero(vec_add(tab[i][j], tab[j][i])):
            raise AssertionError("transformed binary table is not skew")
        if not vec_is_zero(tab[i][j]):
            data[key] = tab[i][j]
    return EvenCochain(1, d, d, data)


def _table_to_odd(tab, d) -> OddCochain:
    data = {}
    c = OddCochain.zero(1, d, d)
    for x in range(d):
        for z in range(d):
            if not vec_is_zero(tab[x][x][z]):
                raise AssertionError("transformed ternary table is not alternating")
    for key in c.keys_in_order():
        i, j, k = c.key_args(key)
        if not vec_is_zero(vec_add(tab[i][j][k], tab[j][i][k])):
            raise AssertionError("transformed ternary table is not pair-skew")
        if not vec_is_zero(tab[i][j][k]):
            data[key] = tab[i][j][k]
    return OddCochain(1, d, d, data)


def compose_equivalences(first: EquivalenceData, second: EquivalenceData, d1, d2) -> EquivalenceData:
    """The single equivalence whose application equals `first` then `second`."""
    if first.order != second.order:
        raise ValueError("order mismatch")
    a = [Matrix.identity(d1)] + list(first.psi_terms)
    b = [Matrix.identity(d1)] + list(second.psi_terms)
    ap = [Matrix.identity(d2)] + list(first.psip_terms)
    bp = [Matrix.identity(d2)] + list(second.psip_terms)
    return EquivalenceData(
        tuple(_series_product(a, b)[1:]), tuple(_series_product(ap, bp)[1:])
    )


def inverse_equivalence(E: EquivalenceData, d1, d2) -> EquivalenceData:
    a = [Matrix.identity(d1)] + list(E.psi_terms)
    ap = [Matrix.identity(d2)] + list(E.psip_terms)
    return EquivalenceData(
        tuple(_series_inverse(a)[1:]), tuple(_series_inverse(ap)[1:])
    )


# ---------------------------------------------------------------------------
# reduction and rigidity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReduceResult:
    deformation: FormalDeformation
    equivalence: EquivalenceData | None  # total equivalence applied; None if unchanged
    obstruction: tuple | None  # (order, cocycle) when the infinitesimal is no coboundary

    @property
    def changed(self) -> bool:
        return self.equivalence is not None


def try_reduce(D: FormalDeformation) -> ReduceResult:
    """Strip coboundary infinitesimals order by order.

    While the current leading term is a coboundary with preimage
    (lam1, lam2), apply the order-n equivalence with terms
    (-lam1, -lam2); that zeroes everything through order n.  Stops when
    the series is trivial through N or the leading term represents a
    nonzero cohomology class (returned as the obstruction).
    """
    phi = D.phi
    d1, d2 = phi.source.dim, phi.target.dim
    cx = MorphismComplex(self_morphism_representation(phi))
    current = D
    total = None
    while True:
        inf = n_infinitesimal(current)
        if inf is None:
            return ReduceResult(current, total, None)
        n, z = inf
        pre = cx.coboundary_preimage(z)
        if pre is None:
            return ReduceResult(current, total, (n, z))
        lam1, lam2 = pre
        psi_terms = [Matrix.zero(d1, d1)] * D.order
        psip_terms = [Matrix.zero(d2, d2)] * D.order
        psi_terms[n - 1] = -lam1.matrix
        psip_terms[n - 1] = -lam2.matrix
        step = EquivalenceData(tuple(psi_terms), tuple(psip_terms))
        current = apply_equivalence(current, step)
        total = step if total is None else compose_equivalences(total, step, d1, d2)


@dataclass(frozen=True)
class RigidityReport:
    verdict: str  # "rigid" | "inconclusive"
    cohomology: MorphismCohomologyReport


def rigidity_check(phi: MorphismLYA) -> RigidityReport:
    """Vanishing (2,3)-cohomology with adjoint coefficients forces rigidity.

    The criterion is one-directional, so a nonzero dimension only
    yields "inconclusive".
    """
    report = morphism_cohomology_23(self_morphism_representation(phi))
    verdict = "rigid" if report.dim_H == 0 else "inconclusive"
    return RigidityReport(verdict, report)
