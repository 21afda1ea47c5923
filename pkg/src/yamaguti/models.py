"""JSON model files: parsing, validation and canonical serialisation.

Conventions shared by every kind: rationals travel as strings "p/q"
or "n" (never floats), basis indices are 1-based, bracket entries are
listed only for i < j (and ternary entries only with i < j in the
leading pair), and unlisted entries are zero.  Serialisation is
canonical -- sorted keys, entries sorted by argument tuple, rationals
normalised -- so parse followed by serialise is the identity on
canonical files, byte for byte.

Indices are converted to 0-based exactly once, here.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import LieYamagutiAlgebra, MorphismLYA
from .cochain import CochainPair, DiagonalCochain, EvenCochain, MorphismCochain23, OddCochain
from .deformation import EquivalenceData, FormalDeformation
from .extension import AbelianExtension, Section
from .linalg import Matrix, vec_is_zero, zero_vector
from .representation import MorphismRepresentation, Representation

KINDS = (
    "algebra",
    "morphism",
    "representation",
    "morphism_representation",
    "cochain",
    "deformation",
    "extension",
)


class ModelError(ValueError):
    """Malformed model file (bad JSON, bad rational, non-canonical entry...)."""


_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text, where: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ModelError(f"{where}: bad rational literal {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ModelError(f"{where}: zero denominator in {text!r}")
    return Fraction(text)


def rational_str(q: Fraction) -> str:
    return str(q)


def _expect(cond, msg):
    if not cond:
        raise ModelError(msg)


def _parse_index(x, dim, where) -> int:
    _expect(isinstance(x, int) and not isinstance(x, bool), f"{where}: index must be an integer")
    _expect(1 <= x <= dim, f"{where}: index {x} out of range 1..{dim}")
    return x - 1


def _parse_value_map(obj, m, where) -> tuple:
    _expect(isinstance(obj, dict), f"{where}: value must be an object")
    out = list(zero_vector(m))
    for key, raw in obj.items():
        _expect(isinstance(key, str) and key.isdigit(), f"{where}: bad output index {key!r}")
        idx = int(key)
        _expect(1 <= idx <= m, f"{where}: output index {idx} out of range 1..{m}")
        out[idx - 1] = parse_rational(raw, f"{where}[{key}]")
    return tuple(out)


def _encode_value_map(vec) -> dict:
    return {str(i + 1): rational_str(v) for i, v in enumerate(vec) if v}


def parse_matrix(obj, rows, cols, where) -> Matrix:
    _expect(isinstance(obj, list) and len(obj) == rows, f"{where}: expected {rows} rows")
    out = []
    for r, row in enumerate(obj):
        _expect(
            isinstance(row, list) and len(row) == cols,
            f"{where}: row {r + 1} must have {cols} entries",
        )
        out.append([parse_rational(x, f"{where}[{r + 1}]") for x in row])
    return Matrix(out, rows, cols)


def encode_matrix(m: Matrix) -> list:
    return [[rational_str(x) for x in row] for row in m.entries]


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

def _parse_algebra_block(obj, where) -> LieYamagutiAlgebra:
    _expect(isinstance(obj, dict), f"{where}: algebra block must be an object")
    dim = obj.get("dim")
    _expect(isinstance(dim, int) and dim >= 0, f"{where}.dim: nonnegative integer required")
    bracket = obj.get("bracket", [])
    triple = obj.get("triple", [])
    _expect(isinstance(bracket, list), f"{where}.bracket: list required")
    _expect(isinstance(triple, list), f"{where}.triple: list required")
    z = zero_vector(dim)
    binary = [[z] * dim for _ in range(dim)]
    seen = set()
    for k, entry in enumerate(bracket):
        w = f"{where}.bracket[{k}]"
        _expect(isinstance(entry, dict), f"{w}: entry must be an object")
        args = entry.get("args")
        _expect(isinstance(args, list) and len(args) == 2, f"{w}.args: two indices required")
        i = _parse_index(args[0], dim, f"{w}.args")
        j = _parse_index(args[1], dim, f"{w}.args")
        _expect(i < j, f"{w}: non-canonical index pair {args}")
        _expect((i, j) not in seen, f"{w}: duplicate entry for {args}")
        seen.add((i, j))
        val = _parse_value_map(entry.get("value", {}), dim, f"{w}.value")
        binary[i][j] = val
        binary[j][i] = tuple(-x for x in val)
    ternary = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    seen3 = set()
    for k, entry in enumerate(triple):
        w = f"{where}.triple[{k}]"
        _expect(isinstance(entry, dict), f"{w}: entry must be an object")
        args = entry.get("args")
        _expect(isinstance(args, list) and len(args) == 3, f"{w}.args: three indices required")
        i = _parse_index(args[0], dim, f"{w}.args")
        j = _parse_index(args[1], dim, f"{w}.args")
        kk = _parse_index(args[2], dim, f"{w}.args")
        _expect(i < j, f"{w}: non-canonical index pair {args}")
        _expect((i, j, kk) not in seen3, f"{w}: duplicate entry for {args}")
        seen3.add((i, j, kk))
        val = _parse_value_map(entry.get("value", {}), dim, f"{w}.value")
        ternary[i][j][kk] = val
        ternary[j][i][kk] = tuple(-x for x in val)
    return LieYamagutiAlgebra(dim, binary, ternary)


def _encode_algebra_block(L: LieYamagutiAlgebra) -> dict:
    bracket = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            if not vec_is_zero(L.binary[i][j]):
                bracket.append(
                    {"args": [i + 1, j + 1], "value": _encode_value_map(L.binary[i][j])}
                )
    triple = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            for k in range(L.dim):
                if not vec_is_zero(L.ternary[i][j][k]):
                    triple.append(
                        {
                            "args": [i + 1, j + 1, k + 1],
                            "value": _encode_value_map(L.ternary[i][j][k]),
                        }
                    )
    return {"dim": L.dim, "bracket": bracket, "triple": triple}


# ---------------------------------------------------------------------------
# morphism, representations
# ---------------------------------------------------------------------------

def _parse_morphism_block(obj, where) -> MorphismLYA:
    _expect(isinstance(obj, dict), f"{where}: morphism block must be an object")
    source = _parse_algebra_block(obj.get("source"), f"{where}.source")
    target = _parse_algebra_block(obj.get("target"), f"{where}.target")
    matrix = parse_matrix(obj.get("matrix"), target.dim, source.dim, f"{where}.matrix")
    return MorphismLYA(source, target, matrix)


def _encode_morphism_block(phi: MorphismLYA) -> dict:
    return {
        "source": _encode_algebra_block(phi.source),
        "target": _encode_algebra_block(phi.target),
        "matrix": encode_matrix(phi.matrix),
    }


def _parse_rep_block(obj, algebra: LieYamagutiAlgebra, where) -> Representation:
    _expect(isinstance(obj, dict), f"{where}: representation block must be an object")
    m = obj.get("module_dim")
    _expect(isinstance(m, int) and m >= 0, f"{where}.module_dim: nonnegative integer required")
    d = algebra.dim
    rho_obj = obj.get("rho")
    _expect(isinstance(rho_obj, list) and len(rho_obj) == d, f"{where}.rho: {d} matrices required")
    rho = [parse_matrix(rho_obj[x], m, m, f"{where}.rho[{x + 1}]") for x in range(d)]

    def grid(name):
        g = obj.get(name)
        _expect(isinstance(g, list) and len(g) == d, f"{where}.{name}: {d} rows required")
        out = []
        for x in range(d):
            row = g[x]
            _expect(isinstance(row, list) and len(row) == d, f"{where}.{name}[{x + 1}]: {d} matrices required")
            out.append(
                [parse_matrix(row[y], m, m, f"{where}.{name}[{x + 1}][{y + 1}]") for y in range(d)]
            )
        return out

    return Representation(algebra, m, rho, grid("dmap"), grid("theta"))


def _encode_rep_block(r: Representation) -> dict:
    d = r.algebra.dim
    return {
        "module_dim": r.module_dim,
        "rho": [encode_matrix(r.rho[x]) for x in range(d)],
        "dmap": [[encode_matrix(r.dmap[x][y]) for y in range(d)] for x in range(d)],
        "theta": [[encode_matrix(r.theta[x][y]) for y in range(d)] for x in range(d)],
    }


def _parse_mrep_block(obj, where) -> MorphismRepresentation:
    _expect(isinstance(obj, dict), f"{where}: block must be an object")
    phi = _parse_morphism_block(obj.get("morphism"), f"{where}.morphism")
    rep_source = _parse_rep_block(obj.get("rep_source"), phi.source, f"{where}.rep_source")
    rep_target = _parse_rep_block(obj.get("rep_target"), phi.target, f"{where}.rep_target")
    psi = parse_matrix(
        obj.get("psi"), rep_target.module_dim, rep_source.module_dim, f"{where}.psi"
    )
    return MorphismRepresentation(phi, rep_source, rep_target, psi)


def _encode_mrep_block(mr: MorphismRepresentation) -> dict:
    return {
        "morphism": _encode_morphism_block(mr.phi),
        "rep_source": _encode_rep_block(mr.rep_source),
        "rep_target": _encode_rep_block(mr.rep_target),
        "psi": encode_matrix(mr.psi),
    }


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------

def _parse_pair_entries(obj, d, m, where) -> CochainPair:
    _expect(isinstance(obj, dict), f"{where}: cochain pair must be an object")
    even_data = {}
    seen = set()
    for k, entry in enumerate(obj.get("even", [])):
        w = f"{where}.even[{k}]"
        args = entry.get("args")
        _expect(isinstance(args, list) and len(args) == 2, f"{w}.args: two indices required")
        i = _parse_index(args[0], d, f"{w}.args")
        j = _parse_index(args[1], d, f"{w}.args")
        _expect(i < j, f"{w}: non-canonical index pair {args}")
        _expect((i, j) not in seen, f"{w}: duplicate entry")
        seen.add((i, j))
        even_data[_pair_key(d, i, j)] = _parse_value_map(entry.get("value", {}), m, f"{w}.value")
    odd_data = {}
    seen3 = set()
    for k, entry in enumerate(obj.get("odd", [])):
        w = f"{where}.odd[{k}]"
        args = entry.get("args")
        _expect(isinstance(args, list) and len(args) == 3, f"{w}.args: three indices required")
        i = _parse_index(args[0], d, f"{w}.args")
        j = _parse_index(args[1], d, f"{w}.args")
        kk = _parse_index(args[2], d, f"{w}.args")
        _expect(i < j, f"{w}: non-canonical index pair {args}")
        _expect((i, j, kk) not in seen3, f"{w}: duplicate entry")
        seen3.add((i, j, kk))
        odd_data[_pair_key(d, i, j) + (kk,)] = _parse_value_map(
            entry.get("value", {}), m, f"{w}.value"
        )
    return CochainPair(EvenCochain(1, d, m, even_data), OddCochain(1, d, m, odd_data))


def _pair_key(d, i, j) -> tuple:
    pos = 0
    for a in range(d):
        for b in range(a + 1, d):
            if (a, b) == (i, j):
                return (pos,)
            pos += 1
    raise ModelError(f"no canonical pair ({i + 1},{j + 1}) in dimension {d}")


def _encode_pair_entries(cp: CochainPair) -> dict:
    even = []
    for key in cp.f.keys_in_order():
        val = cp.f.data.get(key)
        if val is not None:
            i, j = cp.f.key_args(key)
            even.append({"args": [i + 1, j + 1], "value": _encode_value_map(val)})
    odd = []
    for key in cp.g.keys_in_order():
        val = cp.g.data.get(key)
        if val is not None:
            i, j, k = cp.g.key_args(key)
            odd.append({"args": [i + 1, j + 1, k + 1], "value": _encode_value_map(val)})
    return {"even": even, "odd": odd}


def _parse_triple_block(obj, mr: MorphismRepresentation, where) -> MorphismCochain23:
    d1, d2 = mr.phi.source.dim, mr.phi.target.dim
    mv, mw = mr.rep_source.module_dim, mr.rep_target.module_dim
    alpha = _parse_pair_entries(obj.get("alpha", {}), d1, mv, f"{where}.alpha")
    beta = _parse_pair_entries(obj.get("beta", {}), d2, mw, f"{where}.beta")
    gamma = DiagonalCochain(parse_matrix(obj.get("gamma"), mw, d1, f"{where}.gamma"))
    return MorphismCochain23(alpha, beta, gamma)


def _encode_triple_block(mc: MorphismCochain23) -> dict:
    return {
        "alpha": _encode_pair_entries(mc.alpha),
        "beta": _encode_pair_entries(mc.beta),
        "gamma": encode_matrix(mc.gamma.matrix),
    }


@dataclass(frozen=True)
class CochainBundle:
    """A cochain file: coefficients plus one or two (2,3)-cochains.

    ``second``, ``xi`` and ``xi_prime`` only appear in isomorphism
    problems (two cocycles claimed cohomologous via (xi, xi')).
    """

    mrep: MorphismRepresentation
    cocycle: MorphismCochain23
    second: MorphismCochain23 | None = None
    xi: DiagonalCochain | None = None
    xi_prime: DiagonalCochain | None = None


def _parse_cochain(obj) -> CochainBundle:
    mr = _parse_mrep_block(obj.get("mrep"), "cochain.mrep")
    cocycle = _parse_triple_block(obj.get("cocycle"), mr, "cochain.cocycle")
    second = xi = xi_prime = None
    if "second" in obj:
        second = _parse_triple_block(obj.get("second"), mr, "cochain.second")
    d1, d2 = mr.phi.source.dim, mr.phi.target.dim
    mv, mw = mr.rep_source.module_dim, mr.rep_target.module_dim
    if "xi" in obj:
        xi = DiagonalCochain(parse_matrix(obj.get("xi"), mv, d1, "cochain.xi"))
    if "xi_prime" in obj:
        xi_prime = DiagonalCochain(parse_matrix(obj.get("xi_prime"), mw, d2, "cochain.xi_prime"))
    return CochainBundle(mr, cocycle, second, xi, xi_prime)


def _encode_cochain(b: CochainBundle) -> dict:
    out = {
        "mrep": _encode_mrep_block(b.mrep),
        "cocycle": _encode_triple_block(b.cocycle),
    }
    if b.second is not None:
        out["second"] = _encode_triple_block(b.second)
    if b.xi is not None:
        out["xi"] = encode_matrix(b.xi.matrix)
    if b.xi_prime is not None:
        out["xi_prime"] = encode_matrix(b.xi_prime.matrix)
    return out


# ---------------------------------------------------------------------------
# deformations
# ---------------------------------------------------------------------------

def _parse_deformation(obj) -> FormalDeformation:
    phi = _parse_morphism_block(obj.get("morphism"), "deformation.morphism")
    order = obj.get("order")
    _expect(isinstance(order, int) and order >= 0, "deformation.order: nonnegative integer required")
    terms = obj.get("terms", [])
    _expect(isinstance(terms, list) and len(terms) == order, f"deformation.terms: exactly {order} entries required")
    d1, d2 = phi.source.dim, phi.target.dim
    f, g, fp, gp, mats = [], [], [], [], []
    for idx, term in enumerate(terms):
        w = f"deformation.terms[{idx}]"
        _expect(isinstance(term, dict), f"{w}: object required")
        _expect(term.get("order") == idx + 1, f"{w}.order: terms must be listed in order 1..{order}")
        pair_s = _parse_pair_entries(
            {"even": term.get("f", []), "odd": term.get("g", [])}, d1, d1, w
        )
        pair_t = _parse_pair_entries(
            {"even": term.get("f_target", []), "odd": term.get("g_target", [])}, d2, d2, w
        )
        f.append(pair_s.f)
        g.append(pair_s.g)
        fp.append(pair_t.f)
        gp.append(pair_t.g)
        mats.append(parse_matrix(term.get("phi"), d2, d1, f"{w}.phi"))
    return FormalDeformation(phi, order, f, g, fp, gp, mats)


def _encode_deformation(D: FormalDeformation) -> dict:
    terms = []
    for i in range(D.order):
        pair_s = _encode_pair_entries(CochainPair(D.f[i], D.g[i]))
        pair_t = _encode_pair_entries(CochainPair(D.fp[i], D.gp[i]))
        terms.append(
            {
                "order": i + 1,
                "f": pair_s["even"],
                "g": pair_s["odd"],
                "f_target": pair_t["even"],
                "g_target": pair_t["odd"],
                "phi": encode_matrix(D.phi_terms[i]),
            }
        )
    return {
        "morphism": _encode_morphism_block(D.phi),
        "order": D.order,
        "terms": terms,
    }


def encode_equivalence(E: EquivalenceData) -> dict:
    return {
        "source_terms": [encode_matrix(m) for m in E.psi_terms],
        "target_terms": [encode_matrix(m) for m in E.psip_terms],
    }


# ---------------------------------------------------------------------------
# extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionBundle:
    extension: AbelianExtension
    section: Section | None = None


def _parse_extension(obj) -> ExtensionBundle:
    phi = _parse_morphism_block(obj.get("base_morphism"), "extension.base_morphism")
    phi_hat = _parse_morphism_block(obj.get("lifted_morphism"), "extension.lifted_morphism")
    hat1, hat2 = phi_hat.source, phi_hat.target
    fdim_v = hat1.dim - phi.source.dim
    fdim_w = hat2.dim - phi.target.dim
    _expect(fdim_v >= 0 and fdim_w >= 0, "extension: total algebras smaller than the base")
    inj = parse_matrix(obj.get("inj"), hat1.dim, fdim_v, "extension.inj")
    proj = parse_matrix(obj.get("proj"), phi.source.dim, hat1.dim, "extension.proj")
    inj_bar = parse_matrix(obj.get("inj_bar"), hat2.dim, fdim_w, "extension.inj_bar")
    proj_bar = parse_matrix(obj.get("proj_bar"), phi.target.dim, hat2.dim, "extension.proj_bar")
    psi = parse_matrix(obj.get("psi"), fdim_w, fdim_v, "extension.psi")
    ext = AbelianExtension(phi_hat, phi, inj, proj, inj_bar, proj_bar, psi)
    section = None
    if "section" in obj:
        sec = obj["section"]
        _expect(isinstance(sec, dict), "extension.section: object required")
        section = Section(
            parse_matrix(sec.get("s"), hat1.dim, phi.source.dim, "extension.section.s"),
            parse_matrix(sec.get("s_bar"), hat2.dim, phi.target.dim, "extension.section.s_bar"),
        )
    return ExtensionBundle(ext, section)


def _encode_extension(b: ExtensionBundle) -> dict:
    e = b.extension
    out = {
        "base_morphism": _encode_morphism_block(e.phi),
        "lifted_morphism": _encode_morphism_block(e.phi_hat),
        "inj": encode_matrix(e.inj),
        "proj": encode_matrix(e.proj),
        "inj_bar": encode_matrix(e.inj_bar),
        "proj_bar": encode_matrix(e.proj_bar),
        "psi": encode_matrix(e.psi),
    }
    if b.section is not None:
        out["section"] = {
            "s": encode_matrix(b.section.s),
            "s_bar": encode_matrix(b.section.s_bar),
        }
    return out


# ---------------------------------------------------------------------------
# the model surface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelFile:
    kind: str
    payload: object


_PARSERS = {
    "algebra": lambda obj: _parse_algebra_block(obj, "algebra"),
    "morphism": lambda obj: _parse_morphism_block(obj, "morphism"),
    "representation": lambda obj: _parse_rep_block(
        obj, _parse_algebra_block(obj.get("algebra"), "representation.algebra"), "representation"
    ),
    "morphism_representation": lambda obj: _parse_mrep_block(obj, "morphism_representation"),
    "cochain": _parse_cochain,
    "deformation": _parse_deformation,
    "extension": _parse_extension,
}


def parse_model(text: str) -> ModelFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON: {exc.msg} (line {exc.lineno} column {exc.colno})")
    _expect(isinstance(obj, dict), "top level must be an object")
    kind = obj.get("kind")
    _expect(kind in KINDS, f"kind must be one of {', '.join(KINDS)}")
    return ModelFile(kind, _PARSERS[kind](obj))


def serialize_model(model: ModelFile) -> str:
    kind = model.kind
    p = model.payload
    if kind == "algebra":
        body = _encode_algebra_block(p)
    elif kind == "morphism":
        body = _encode_morphism_block(p)
    elif kind == "representation":
        body = {"algebra": _encode_algebra_block(p.algebra), **_encode_rep_block(p)}
    elif kind == "morphism_representation":
        body = _encode_mrep_block(p)
    elif kind == "cochain":
        body = _encode_cochain(p)
    elif kind == "deformation":
        body = _encode_deformation(p)
    elif kind == "extension":
        body = _encode_extension(p)
    else:
        raise ModelError(f"unknown kind {kind!r}")
    return canonical_json({"kind": kind, **body})


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def parse_section_file(text: str, hat1_dim, d1, hat2_dim, d2) -> Section:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON: {exc.msg} (line {exc.lineno} column {exc.colno})")
    _expect(isinstance(obj, dict), "section file must be an object")
    return Section(
        parse_matrix(obj.get("s"), hat1_dim, d1, "section.s"),
        parse_matrix(obj.get("s_bar"), hat2_dim, d2, "section.s_bar"),
    )
