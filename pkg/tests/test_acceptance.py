"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every tolerance is exact rational equality; the only numeric bounds
are the per-criterion runtime budgets, asserted here.  Run with

    pytest tests/test_acceptance.py -v -s
"""

import io
import json
import os
import random
import time
from fractions import Fraction

import pytest

from yamaguti import (
    EquivalenceData,
    FormalDeformation,
    LieYamagutiAlgebra,
    MorphismLYA,
    MorphismRepresentation,
    Representation,
    adjoint_representation,
    apply_equivalence,
    canonical_section,
    check_axioms,
    check_extension,
    check_homomorphism_pair,
    cocycle_from_extension,
    cohomology_23,
    extension_from_cocycle,
    induced_representation,
    infinitesimal_cocycle_check,
    isomorphism_from_cohomologous,
    n_infinitesimal,
    rigidity_check,
    self_morphism_representation,
    try_reduce,
    verify_deformation,
)
from yamaguti.cochain import DiagonalCochain, EvenCochain, OddCochain
from yamaguti.cohomology import (
    MorphismComplex,
    diagonal_coboundary_matrix,
    pair_coboundary_matrix,
    postcompose_matrix,
    pullback_matrix,
)
from yamaguti.extension import Section, check_section
from yamaguti.linalg import Matrix
from yamaguti.models import _encode_mrep_block, canonical_json
from tests.conftest import corpus_algebras, corpus_morphisms, lie_table

HERE = os.path.dirname(os.path.abspath(__file__))


class Budget:
    def __init__(self, criterion, seconds):
        self.criterion = criterion
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.monotonic() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"{status} criterion {self.criterion} ({elapsed:.2f}s / budget {self.seconds}s)")
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"criterion {self.criterion} exceeded its {self.seconds}s budget: {elapsed:.2f}s"
            )
        return False


def four_dim_algebra():
    # two independent bracket planes; exercises the d = 4 envelope
    return lie_table(4, {(0, 1): (1, 0, 0, 0), (2, 3): (0, 0, 1, 0)})


def test_criterion_1_axiom_oracles():
    with Budget(1, 1.0):
        from yamaguti import from_lie

        algs = corpus_algebras()
        for name in ("abelian1", "abelian2", "abelian3", "nonabelian2", "sl2", "heisenberg3"):
            assert check_axioms(algs[name]).ok, name
        e1, z = (1, 0), (0, 0)
        nonskew = LieYamagutiAlgebra(
            2, [[z, e1], [e1, z]], [[[z, z], [z, z]], [[z, z], [z, z]]]
        )
        report = check_axioms(nonskew)
        assert not report.ok and report.witness == {"axiom": 1, "tuple": [1, 2]}
        assert check_axioms(from_lie(4, four_dim_algebra())).ok


def test_criterion_2_square_zero_single_complex():
    from yamaguti import from_lie

    algs = dict(corpus_algebras())
    algs["plane_pair4"] = from_lie(4, four_dim_algebra())
    pairs = []
    for name, L in algs.items():
        pairs.append((name + "(trivial)", L, Representation.zero(L, 1)))
        pairs.append((name + "(adjoint)", L, adjoint_representation(L)))
    worst = 0.0
    for name, L, rep in pairs:
        t0 = time.monotonic()
        m1 = diagonal_coboundary_matrix(L, rep)
        m2 = pair_coboundary_matrix(L, rep, 1)
        assert (m2 * m1).is_zero(), name
        worst = max(worst, time.monotonic() - t0)
    print(f"PASS criterion 2 (worst pair {worst:.2f}s / budget 5s per pair)")
    assert worst < 5.0


def test_criterion_3_square_zero_morphism_complex():
    with Budget(3, 30.0):
        for name, phi in corpus_morphisms().items():
            mr = self_morphism_representation(phi)
            cx = MorphismComplex(mr)
            assert (cx.matrix_23() * cx.matrix_predecessor()).is_zero(), name
            assert (cx.matrix_45() * cx.matrix_23()).is_zero(), name
            d1 = cx.d1
            mv, mw = cx.m_v, cx.m_w
            post23 = postcompose_matrix(1, d1, mv, mr.psi)
            post45 = postcompose_matrix(2, d1, mv, mr.psi)
            pull23 = pullback_matrix(1, mr.phi, mw)
            pull45 = pullback_matrix(2, mr.phi, mw)
            d3 = pair_coboundary_matrix(cx.alg_source, cx.rep_pulled, 1)
            dprime = pair_coboundary_matrix(cx.alg_source, mr.rep_source, 1)
            ddouble = pair_coboundary_matrix(cx.alg_target, mr.rep_target, 1)
            assert d3 * post23 == post45 * dprime, name
            assert d3 * pull23 == pull45 * ddouble, name


def test_criterion_4_closed_form_dimensions():
    with Budget(4, 5.0):
        algs = corpus_algebras()
        rep = cohomology_23(algs["abelian2"], Representation.zero(algs["abelian2"], 1))
        assert (rep.dim_Z, rep.dim_B, rep.dim_H) == (3, 0, 3)
        mors = corpus_morphisms()
        line = rigidity_check(mors["id_abelian1"])
        assert line.cohomology.dim_H == 0 and line.verdict == "rigid"
        from yamaguti import morphism_cohomology_23

        zero = morphism_cohomology_23(self_morphism_representation(mors["zero_abelian2"]))
        assert zero.dim_H == 16


def test_criterion_5_oracle_pinned_dimensions():
    with Budget(5, 5.0):
        with open(os.path.join(HERE, "golden", "oracle_dims.json"), encoding="utf-8") as fh:
            golden = json.load(fh)
        algs = corpus_algebras()
        L = algs["nonabelian2"]
        single = cohomology_23(L, adjoint_representation(L))
        want = golden["nonabelian2_adjoint"]
        assert (single.dim_Z, single.dim_B, single.dim_H) == (want["Z"], want["B"], want["H"])
        from yamaguti import morphism_cohomology_23

        morph = morphism_cohomology_23(
            self_morphism_representation(MorphismLYA.identity(L))
        )
        want = golden["nonabelian2_morphism_id"]
        assert (morph.dim_Z, morph.dim_B, morph.dim_H) == (want["Z"], want["B"], want["H"])


def _random_order1_equivalence(phi, order, rng):
    d1, d2 = phi.source.dim, phi.target.dim
    while True:
        p1 = Matrix([[rng.randint(-2, 2) for _ in range(d1)] for _ in range(d1)])
        p2 = Matrix([[rng.randint(-2, 2) for _ in range(d2)] for _ in range(d2)])
        if not (p1.is_zero() and p2.is_zero()):
            break
    psi = [Matrix.zero(d1, d1) for _ in range(order)]
    psip = [Matrix.zero(d2, d2) for _ in range(order)]
    psi[0], psip[0] = p1, p2
    return EquivalenceData(tuple(psi), tuple(psip))


def test_criterion_6_deformation_suite():
    with Budget(6, 60.0):
        mors = corpus_morphisms()
        # (a) trivial deformations verify to order 3 everywhere
        for name, phi in mors.items():
            assert verify_deformation(FormalDeformation.trivial(phi, 3)).ok, name
        # (b) equivalence-orbit deformations, 26 samples
        rng = random.Random(2024)
        plan = [
            ("id_nonabelian2", 14),
            ("zero_abelian2", 4),
            ("incl_line_nonabelian2", 4),
            ("id_sl2", 4),
        ]
        for name, count in plan:
            phi = mors[name]
            cx = MorphismComplex(self_morphism_representation(phi))
            trivial = FormalDeformation.trivial(phi, 3)
            for _ in range(count):
                E = _random_order1_equivalence(phi, 3, rng)
                D = apply_equivalence(trivial, E)
                assert verify_deformation(D).ok, name
                assert infinitesimal_cocycle_check(D).ok, name
                inf = n_infinitesimal(D)
                if inf is not None:
                    assert cx.coboundary_preimage(inf[1]) is not None, name
                result = try_reduce(D)
                assert result.obstruction is None, name
                assert result.deformation.is_trivial(), name
        # (c) a non-cocycle order-1 perturbation fails with a located witness
        phi = mors["id_nonabelian2"]
        g1 = OddCochain(1, 2, 2, {(0, 0): (Fraction(1), Fraction(0))})
        bad = FormalDeformation(
            phi,
            1,
            [EvenCochain.zero(1, 2, 2)],
            [g1],
            [EvenCochain.zero(1, 2, 2)],
            [OddCochain.zero(1, 2, 2)],
            [Matrix.zero(2, 2)],
        )
        report = verify_deformation(bad)
        assert not report.ok
        assert report.witness["order"] == 1
        assert report.witness["equation"] == "source.triple_derivation"
        assert report.witness["tuple"] == [1, 2, 1, 2, 2]


def _mrep_bytes(mr):
    return canonical_json(_encode_mrep_block(mr)).encode()


def _setups():
    mors = corpus_morphisms()
    phi = mors["id_nonabelian2"]
    mr = self_morphism_representation(phi)
    ab2 = LieYamagutiAlgebra.abelian(2)
    phi_ab = MorphismLYA.identity(ab2)
    triv = Representation.zero(ab2, 1)
    mr_ab = MorphismRepresentation(phi_ab, triv, triv, Matrix.identity(1))
    return [(phi, mr, 15), (phi_ab, mr_ab, 10)]


def _random_cocycle(cx, rng):
    basis = cx.cohomology().cocycle_basis
    vec = [Fraction(0)] * basis.ambient_dim
    for b in basis.basis:
        c = Fraction(rng.randint(-2, 2))
        if c:
            vec = [v + c * x for v, x in zip(vec, b)]
    return cx.unvec_23(tuple(vec))


def test_criterion_7_extension_round_trips():
    with Budget(7, 30.0):
        rng = random.Random(77)
        for phi, mr, count in _setups():
            cx = MorphismComplex(mr)
            for _ in range(count):
                c = _random_cocycle(cx, rng)
                ext = extension_from_cocycle(phi, mr, c)
                assert check_extension(ext).ok
                base = canonical_section(ext)
                back = cocycle_from_extension(ext, base)
                assert (back.alpha - c.alpha).is_zero()
                assert (back.beta - c.beta).is_zero()
                assert (back.gamma - c.gamma).is_zero()
            # section perturbation stays within the simple coboundaries, and
            # the induced representation is bytewise section-independent
            c = _random_cocycle(cx, rng)
            ext = extension_from_cocycle(phi, mr, c)
            base = canonical_section(ext)
            c0 = cocycle_from_extension(ext, base)
            reps = [_mrep_bytes(induced_representation(ext, base))]
            d1, d2 = phi.source.dim, phi.target.dim
            mv, mw = ext.fiber_dim_source, ext.fiber_dim_target
            seen = {(base.s, base.s_bar)}
            while len(seen) < 4:
                eta = Matrix([[rng.randint(-2, 2) for _ in range(d1)] for _ in range(mv)])
                etap = Matrix([[rng.randint(-2, 2) for _ in range(d2)] for _ in range(mw)])
                sec = Section(base.s + ext.inj * eta, base.s_bar + ext.inj_bar * etap)
                if (sec.s, sec.s_bar) in seen:
                    continue
                seen.add((sec.s, sec.s_bar))
                assert check_section(ext, sec).ok
                moved = cocycle_from_extension(ext, sec)
                assert cx.coboundary_preimage(moved - c0) is not None
                reps.append(_mrep_bytes(induced_representation(ext, sec)))
            assert len(reps) == 4 and len(set(reps)) == 1


def test_criterion_8_isomorphism_correspondence():
    with Budget(8, 10.0):
        rng = random.Random(88)
        phi, mr, _ = _setups()[0]
        cx = MorphismComplex(mr)
        for _ in range(4):
            c1 = _random_cocycle(cx, rng)
            xi = DiagonalCochain(
                Matrix([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
            )
            xip = DiagonalCochain(
                Matrix([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
            )
            c2 = c1 + cx.predecessor(xi, xip)
            res = isomorphism_from_cohomologous(phi, mr, c2, c1, xi, xip)
            pair = check_homomorphism_pair(
                res.alpha, res.beta, res.ext_source.phi_hat, res.ext_target.phi_hat
            )
            assert pair.ok
            e1, e2 = res.ext_source, res.ext_target
            assert res.alpha.matrix * e1.inj == e2.inj
            assert e2.proj * res.alpha.matrix == e1.proj
            assert res.beta.matrix * e1.inj_bar == e2.inj_bar
            assert e2.proj_bar * res.beta.matrix == e1.proj_bar
        # a non-cohomologous pair is rejected
        from yamaguti import NotCohomologousError

        nonzero = None
        for b in cx.cohomology().cocycle_basis.basis:
            cand = cx.unvec_23(b)
            if cx.coboundary_preimage(cand) is None:
                nonzero = cand
                break
        assert nonzero is not None
        c1 = _random_cocycle(cx, rng)
        xi = DiagonalCochain(Matrix.identity(2))
        xip = DiagonalCochain(Matrix.zero(2, 2))
        c2 = c1 + cx.predecessor(xi, xip) + nonzero
        with pytest.raises(NotCohomologousError):
            isomorphism_from_cohomologous(phi, mr, c2, c1, xi, xip)


def test_criterion_9_cli_determinism():
    with Budget(9, 60.0):
        from yamaguti.cli import run_command

        data = os.path.join(HERE, "data")
        gold = os.path.join(HERE, "golden", "cli")
        with open(os.path.join(HERE, "golden", "cli_manifest.json"), encoding="utf-8") as fh:
            manifest = json.load(fh)
        assert manifest, "empty CLI manifest"
        for entry in manifest:
            argv = [
                os.path.join(data, a) if a.endswith(".json") else a
                for a in entry["argv"]
            ]
            for _ in range(2):
                out, err = io.StringIO(), io.StringIO()
                code = run_command(argv, out, err)
                assert code == entry["exit"], (entry["id"], err.getvalue())
                with open(os.path.join(gold, entry["id"] + ".out"), encoding="utf-8") as fh:
                    assert out.getvalue() == fh.read(), entry["id"]
