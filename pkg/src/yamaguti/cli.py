"""Command-line surface: every command is a thin adapter over the library.

Exit codes: 0 = computed and all mathematical checks passed,
1 = computed but a mathematical check failed (the JSON report carries
a witness), 2 = input or usage error (diagnostics on stderr, nothing
on stdout).  Reports are byte-deterministic for a given input.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import check_axioms, check_homomorphism_pair, check_morphism
from .cohomology import cohomology_23, morphism_cohomology_23
from .deformation import (
    infinitesimal_cocycle_check,
    n_infinitesimal,
    rigidity_check,
    try_reduce,
    verify_deformation,
)
from .extension import (
    ExtensionError,
    NotCohomologousError,
    canonical_section,
    check_extension,
    check_section,
    cocycle_from_extension,
    extension_from_cocycle,
    isomorphism_from_cohomologous,
)
from .models import (
    ExtensionBundle,
    ModelError,
    ModelFile,
    canonical_json,
    encode_equivalence,
    encode_matrix,
    parse_model,
    parse_section_file,
    _encode_deformation,
    _encode_extension,
    _encode_triple_block,
)
from .representation import (
    adjoint_representation,
    check_morphism_representation,
    check_representation,
    self_morphism_representation,
)


class _InputError(Exception):
    pass


class _MathFailure(Exception):
    def __init__(self, data, witness):
        super().__init__("mathematical check failed")
        self.data = data
        self.witness = witness


def _load(path: str, kind: str) -> ModelFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}")
    try:
        model = parse_model(text)
    except ModelError as exc:
        raise _InputError(f"{path}: {exc}")
    if model.kind != kind:
        raise _InputError(f"{path}: expected kind '{kind}', found '{model.kind}'")
    return model


def _require(report, data):
    """Turn a failed CheckReport into a math-failure exit."""
    if not report.ok:
        raise _MathFailure(data, report.witness)


def _validated_morphism(phi):
    _require(check_axioms(phi.source), {"stage": "source_algebra"})
    _require(check_axioms(phi.target), {"stage": "target_algebra"})
    _require(check_morphism(phi), {"stage": "morphism"})


def _validated_mrep(mr):
    _validated_morphism(mr.phi)
    _require(check_morphism_representation(mr), {"stage": "morphism_representation"})


def _basis_lists(subspace):
    from .models import rational_str

    return [[rational_str(x) for x in v] for v in subspace.basis]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_check(args):
    what = args.what
    if what == "algebra":
        L = _load(args.file, "algebra").payload
        data = {"dim": L.dim}
        _require(check_axioms(L), data)
        return data
    if what == "morphism":
        phi = _load(args.file, "morphism").payload
        data = {"source_dim": phi.source.dim, "target_dim": phi.target.dim}
        _validated_morphism(phi)
        return data
    if what == "rep":
        rep = _load(args.file, "representation").payload
        data = {"dim": rep.algebra.dim, "module_dim": rep.module_dim}
        _require(check_axioms(rep.algebra), data)
        _require(check_representation(rep), data)
        return data
    if what == "mrep":
        mr = _load(args.file, "morphism_representation").payload
        data = {
            "source_module_dim": mr.rep_source.module_dim,
            "target_module_dim": mr.rep_target.module_dim,
        }
        _validated_morphism(mr.phi)
        _require(check_morphism_representation(mr), data)
        return data
    if what == "extension":
        bundle = _load(args.file, "extension").payload
        data = {
            "fiber_dim_source": bundle.extension.fiber_dim_source,
            "fiber_dim_target": bundle.extension.fiber_dim_target,
        }
        _require(check_extension(bundle.extension), data)
        if bundle.section is not None:
            _require(check_section(bundle.extension, bundle.section), data)
            data["section_checked"] = True
        return data
    raise _InputError(f"unknown check target {what!r}")


def _cmd_cohomology_algebra(args):
    L = _load(args.file, "algebra").payload
    _require(check_axioms(L), {"stage": "algebra"})
    if args.rep == "adjoint":
        rep = adjoint_representation(L)
    else:
        rep = _load(args.rep, "representation").payload
        if rep.algebra != L:
            raise _InputError("representation file is over a different algebra")
        _require(check_representation(rep), {"stage": "representation"})
    report = cohomology_23(L, rep)
    data = {"Z": report.dim_Z, "B": report.dim_B, "H": report.dim_H}
    if args.certificates:
        data["cocycle_basis"] = _basis_lists(report.cocycle_basis)
        data["coboundary_basis"] = _basis_lists(report.coboundary_basis)
    return data


def _cmd_cohomology_morphism(args):
    phi = _load(args.file, "morphism").payload
    _validated_morphism(phi)
    report = morphism_cohomology_23(self_morphism_representation(phi))
    data = {
        "Z": report.dim_Z,
        "B": report.dim_B,
        "H": report.dim_H,
        "rigid": report.dim_H == 0,
    }
    if args.simple:
        data["B_simple"] = report.dim_B_simple
        data["H_simple"] = report.dim_H_simple
    if args.certificates:
        data["cocycle_basis"] = _basis_lists(report.cocycle_basis)
        data["coboundary_basis"] = _basis_lists(report.coboundary_basis)
    return data


def _cmd_deform(args):
    D = _load(args.file, "deformation").payload
    _validated_morphism(D.phi)
    data = {"order": D.order}
    if args.action == "verify":
        _require(verify_deformation(D), data)
        return data
    _require(verify_deformation(D), data)
    if args.action == "infinitesimal":
        inf = n_infinitesimal(D)
        if inf is None:
            data["infinitesimal_order"] = None
            data["cocycle"] = None
            return data
        _require(infinitesimal_cocycle_check(D), data)
        data["infinitesimal_order"] = inf[0]
        data["cocycle"] = _encode_triple_block(inf[1])
        return data
    if args.action == "reduce":
        result = try_reduce(D)
        data["changed"] = result.changed
        data["obstruction_order"] = result.obstruction[0] if result.obstruction else None
        data["deformation"] = _encode_deformation(result.deformation)
        data["equivalence"] = (
            encode_equivalence(result.equivalence) if result.equivalence else None
        )
        return data
    raise _InputError(f"unknown deform action {args.action!r}")


def _cmd_rigidity(args):
    phi = _load(args.file, "morphism").payload
    _validated_morphism(phi)
    result = rigidity_check(phi)
    return {"H": result.cohomology.dim_H, "verdict": result.verdict}


def _cmd_ext_build(args):
    bundle = _load(args.file, "cochain").payload
    _validated_mrep(bundle.mrep)
    try:
        ext = extension_from_cocycle(bundle.mrep.phi, bundle.mrep, bundle.cocycle)
    except ExtensionError as exc:
        raise _MathFailure({"stage": "cocycle"}, exc.witness)
    _require(check_extension(ext), {"stage": "built_extension"})
    return {"extension": _encode_extension(ExtensionBundle(ext))}


def _cmd_ext_cocycle(args):
    bundle = _load(args.file, "extension").payload
    ext = bundle.extension
    _require(check_extension(ext), {"stage": "extension"})
    if args.section:
        try:
            with open(args.section, "r", encoding="utf-8") as fh:
                sec_text = fh.read()
        except OSError as exc:
            raise _InputError(f"cannot read {args.section}: {exc.strerror}")
        try:
            section = parse_section_file(
                sec_text,
                ext.hat_source.dim,
                ext.phi.source.dim,
                ext.hat_target.dim,
                ext.phi.target.dim,
            )
        except ModelError as exc:
            raise _InputError(f"{args.section}: {exc}")
    elif bundle.section is not None:
        section = bundle.section
    else:
        section = canonical_section(ext)
    _require(check_section(ext, section), {"stage": "section"})
    try:
        cocycle = cocycle_from_extension(ext, section)
    except ExtensionError as exc:
        raise _MathFailure({"stage": "cocycle_extraction"}, exc.witness)
    return {"cocycle": _encode_triple_block(cocycle)}


def _cmd_ext_iso(args):
    bundle = _load(args.file, "cochain").payload
    if bundle.second is None or bundle.xi is None or bundle.xi_prime is None:
        raise _InputError(
            "isomorphism problems need 'second', 'xi' and 'xi_prime' fields"
        )
    _validated_mrep(bundle.mrep)
    try:
        result = isomorphism_from_cohomologous(
            bundle.mrep.phi,
            bundle.mrep,
            bundle.cocycle,
            bundle.second,
            bundle.xi,
            bundle.xi_prime,
        )
    except NotCohomologousError:
        raise _MathFailure({"stage": "cohomologous"}, {"reason": "not_cohomologous"})
    except ExtensionError as exc:
        raise _MathFailure({"stage": "build"}, exc.witness)
    pair = check_homomorphism_pair(
        result.alpha, result.beta, result.ext_source.phi_hat, result.ext_target.phi_hat
    )
    _require(pair, {"stage": "homomorphism_pair"})
    e1, e2 = result.ext_source, result.ext_target
    diagram_ok = (
        result.alpha.matrix * e1.inj == e2.inj
        and e2.proj * result.alpha.matrix == e1.proj
        and result.beta.matrix * e1.inj_bar == e2.inj_bar
        and e2.proj_bar * result.beta.matrix == e1.proj_bar
    )
    if not diagram_ok:
        raise _MathFailure({"stage": "diagram"}, {"reason": "diagram_commutation"})
    return {
        "alpha": encode_matrix(result.alpha.matrix),
        "beta": encode_matrix(result.beta.matrix),
    }


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yamaguti",
        description="Exact cohomology and deformation calculations for morphisms of Lie-Yamaguti algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a model file")
    p.add_argument("what", choices=["algebra", "morphism", "rep", "mrep", "extension"])
    p.add_argument("file")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("cohomology", help="degree-(2,3) cohomology dimensions")
    csub = p.add_subparsers(dest="target", required=True)
    pa = csub.add_parser("algebra")
    pa.add_argument("file")
    pa.add_argument("--rep", required=True, help="'adjoint' or a representation file")
    pa.add_argument("--certificates", action="store_true")
    pa.set_defaults(fn=_cmd_cohomology_algebra)
    pm = csub.add_parser("morphism")
    pm.add_argument("file")
    pm.add_argument("--simple", action="store_true")
    pm.add_argument("--certificates", action="store_true")
    pm.set_defaults(fn=_cmd_cohomology_morphism)

    p = sub.add_parser("deform", help="formal deformation tools")
    p.add_argument("action", choices=["verify", "infinitesimal", "reduce"])
    p.add_argument("file")
    p.set_defaults(fn=_cmd_deform)

    p = sub.add_parser("rigidity", help="rigidity verdict for a morphism")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_rigidity)

    p = sub.add_parser("ext", help="abelian extension tools")
    esub = p.add_subparsers(dest="action", required=True)
    pb = esub.add_parser("build")
    pb.add_argument("file")
    pb.set_defaults(fn=_cmd_ext_build)
    pc = esub.add_parser("cocycle")
    pc.add_argument("file")
    pc.add_argument("--section", default=None)
    pc.set_defaults(fn=_cmd_ext_cocycle)
    pi = esub.add_parser("iso")
    pi.add_argument("file")
    pi.set_defaults(fn=_cmd_ext_iso)

    return parser


def run_command(argv, out=None, err=None) -> int:
    """Run one CLI invocation; returns the exit code.

    Writes the JSON report to ``out`` and diagnostics to ``err``
    (default: the real stdout/stderr).
    """
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its diagnostic to stderr
        return 2 if exc.code else 0
    try:
        data = args.fn(args)
    except _InputError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except _MathFailure as exc:
        report = {"ok": False, "data": exc.data, "witness": exc.witness}
        out.write(canonical_json(report))
        return 1
    report = {"ok": True, "data": data}
    out.write(canonical_json(report))
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
