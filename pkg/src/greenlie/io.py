"""
JSON documents for Lie algebras, functors, bimodules, cochains, cohomology
and extensions.  Every number is an exact ``"a/b"`` string and every
document is written with sorted keys, so equal objects serialize to equal
bytes.
"""
from __future__ import annotations

import json

from .cohomology import Cochain, CohomologyResult, Complex, EquivCochain
from .errors import ParseError
from .exactq import ZERO, Matrix, format_scalar, parse_scalar
from .extensions import Extension
from .liecore import LieAlgebra, alt_index, alt_tuples
from .mackey import CpMackey, GreenLieFunctor, GreenLieMorphism, LieBimodule


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _need(doc, key, where):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    return doc[key]


def _int(x, where):
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise ParseError(f"{where}: expected a non-negative integer, got {x!r}")
    return x


# matrices ---------------------------------------------------------------

def matrix_to_doc(m: Matrix):
    return [[format_scalar(x) for x in row] for row in m.tolist()]


def matrix_from_doc(doc, rows, cols, where="matrix") -> Matrix:
    if not isinstance(doc, list) or len(doc) != rows:
        raise ParseError(f"{where}: expected {rows} rows")
    out = []
    for i, row in enumerate(doc):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{where}: row {i} must have {cols} entries")
        out.append([parse_scalar(x) for x in row])
    return Matrix.from_rows(out, cols)


def vector_to_doc(v):
    return [format_scalar(x) for x in v]


# Lie algebras -------------------------------------------------------------

def lie_to_doc(L: LieAlgebra):
    return {
        "dim": L.dim,
        "basis": list(L.basis_names),
        "brackets": [{"i": i, "j": j, "coeffs": {str(k): format_scalar(x) for k, x in sorted(row.items())}}
                     for i, j, row in L.brackets()],
    }


def lie_from_doc(doc, where="lie algebra", check=True) -> LieAlgebra:
    d = _int(_need(doc, "dim", where), f"{where}.dim")
    names = doc.get("basis")
    if names is not None and (not isinstance(names, list) or len(names) != d):
        raise ParseError(f"{where}.basis: expected {d} names")
    brackets = {}
    for n, entry in enumerate(_need(doc, "brackets", where)):
        w = f"{where}.brackets[{n}]"
        i, j = _int(_need(entry, "i", w), w), _int(_need(entry, "j", w), w)
        if i >= d or j >= d:
            raise ParseError(f"{w}: index out of range")
        coeffs = _need(entry, "coeffs", w)
        row = {}
        for k, x in coeffs.items():
            try:
                kk = int(k)
            except ValueError:
                raise ParseError(f"{w}: bad basis index {k!r}") from None
            if not 0 <= kk < d:
                raise ParseError(f"{w}: index out of range")
            row[kk] = parse_scalar(x)
        if (i, j) in brackets:
            raise ParseError(f"{w}: duplicate bracket ({i}, {j})")
        brackets[i, j] = row
    return LieAlgebra.from_brackets(d, brackets, names, check=check)


# functors and modules -------------------------------------------------------

def functor_to_doc(F: GreenLieFunctor):
    doc = {"p": F.p, "top": lie_to_doc(F.top), "bottom": lie_to_doc(F.bottom),
           "r": matrix_to_doc(F.r), "t": matrix_to_doc(F.t), "c": matrix_to_doc(F.c)}
    if F.name:
        doc["name"] = F.name
    return doc


def functor_from_doc(doc, where="functor", check=True) -> GreenLieFunctor:
    p = _int(_need(doc, "p", where), f"{where}.p")
    top = lie_from_doc(_need(doc, "top", where), f"{where}.top", check=False)
    bottom = lie_from_doc(_need(doc, "bottom", where), f"{where}.bottom", check=False)
    a, b = top.dim, bottom.dim
    r = matrix_from_doc(_need(doc, "r", where), b, a, f"{where}.r")
    t = matrix_from_doc(_need(doc, "t", where), a, b, f"{where}.t")
    c = matrix_from_doc(_need(doc, "c", where), b, b, f"{where}.c")
    return GreenLieFunctor(p, top, bottom, r, t, c, name=doc.get("name", ""), check=check)


def bimodule_to_doc(M: LieBimodule):
    mk = M.mackey
    doc = {
        "module_top_dim": mk.top_dim,
        "module_bottom_dim": mk.bottom_dim,
        "r": matrix_to_doc(mk.r), "t": matrix_to_doc(mk.t), "c": matrix_to_doc(mk.c),
        "action_top": [matrix_to_doc(a) for a in M.left_top.action],
        "action_bottom": [matrix_to_doc(a) for a in M.left_bottom.action],
    }
    if M.lie is not None:
        doc["lie"] = {"top": lie_to_doc(M.lie.top), "bottom": lie_to_doc(M.lie.bottom)}
    if M.name:
        doc["name"] = M.name
    return doc


def bimodule_from_doc(doc, L: GreenLieFunctor, where="bimodule", check=True) -> LieBimodule:
    a = _int(_need(doc, "module_top_dim", where), where)
    b = _int(_need(doc, "module_bottom_dim", where), where)
    mk = CpMackey(L.p, matrix_from_doc(_need(doc, "r", where), b, a, f"{where}.r"),
                  matrix_from_doc(_need(doc, "t", where), a, b, f"{where}.t"),
                  matrix_from_doc(_need(doc, "c", where), b, b, f"{where}.c"))
    at = _need(doc, "action_top", where)
    ab = _need(doc, "action_bottom", where)
    if len(at) != L.top.dim or len(ab) != L.bottom.dim:
        raise ParseError(f"{where}: need one action matrix per basis vector of L at each level")
    act_top = [matrix_from_doc(m, a, a, f"{where}.action_top[{k}]") for k, m in enumerate(at)]
    act_bot = [matrix_from_doc(m, b, b, f"{where}.action_bottom[{k}]") for k, m in enumerate(ab)]
    lie = None
    if "lie" in doc:
        lt = lie_from_doc(_need(doc["lie"], "top", f"{where}.lie"), f"{where}.lie.top")
        lb = lie_from_doc(_need(doc["lie"], "bottom", f"{where}.lie"), f"{where}.lie.bottom")
        lie = GreenLieFunctor(L.p, lt, lb, mk.r, mk.t, mk.c, name="module bracket", check=check)
    return LieBimodule(L, mk, act_top, act_bot, lie=lie, name=doc.get("name", ""), check=check)


# cochains -----------------------------------------------------------------

def _level_to_doc(coeffs, dim_l, n, dim_m):
    out = {}
    for i, t in enumerate(alt_tuples(dim_l, n)):
        v = coeffs[i * dim_m:(i + 1) * dim_m]
        if any(v):
            out[",".join(map(str, t))] = vector_to_doc(v)
    return out


def _level_from_doc(doc, dim_l, n, dim_m, where):
    idx = alt_index(dim_l, n)
    out = [ZERO] * (len(idx) * dim_m)
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object keyed by index tuples")
    for key, v in doc.items():
        try:
            t = tuple(int(s) for s in key.split(",")) if key else ()
        except ValueError:
            raise ParseError(f"{where}: bad index tuple {key!r}") from None
        if t not in idx:
            raise ParseError(f"{where}: {key!r} is not an increasing {n}-tuple of basis indices")
        if not isinstance(v, list) or len(v) != dim_m:
            raise ParseError(f"{where}[{key}]: expected {dim_m} values")
        base = idx[t] * dim_m
        for k, x in enumerate(v):
            out[base + k] = parse_scalar(x)
    return tuple(out)


def cochain_to_doc(f, cx: Complex):
    if isinstance(f, EquivCochain):
        return {"degree": f.degree,
                "top": _level_to_doc(f.top, cx.dl_top, f.degree, cx.dm_top),
                "bottom": _level_to_doc(f.bottom, cx.dl_bottom, f.degree, cx.dm_bottom)}
    return {"degree": f.degree, "bottom": _level_to_doc(f.coeffs, cx.dl_bottom, f.degree, cx.dm_bottom)}


def cochain_from_doc(doc, cx: Complex, where="cochain") -> EquivCochain:
    n = _int(_need(doc, "degree", where), f"{where}.degree")
    top = _level_from_doc(doc.get("top", {}), cx.dl_top, n, cx.dm_top, f"{where}.top")
    bottom = _level_from_doc(doc.get("bottom", {}), cx.dl_bottom, n, cx.dm_bottom, f"{where}.bottom")
    return EquivCochain(n, top, bottom)


def bottom_cochain_from_doc(doc, cx: Complex, where="cochain") -> Cochain:
    n = _int(_need(doc, "degree", where), f"{where}.degree")
    return Cochain(n, _level_from_doc(doc.get("bottom", {}), cx.dl_bottom, n, cx.dm_bottom, f"{where}.bottom"))


def cohomology_to_doc(res: CohomologyResult, cx: Complex):
    doc = {
        "degree": res.degree,
        "dim_top": res.dim_top,
        "dim_bottom": res.dim_bottom,
        "representatives": {
            "top": [cochain_to_doc(f, cx) for f in res.representatives_top],
            "bottom": [cochain_to_doc(g, cx) for g in res.representatives_bottom],
        },
    }
    for name in ("induced_r", "induced_t", "induced_c"):
        m = getattr(res, name)
        if m is not None:
            doc[name] = matrix_to_doc(m)
    return doc


# extensions -----------------------------------------------------------------

def morphism_to_doc(f: GreenLieMorphism):
    return {"top": matrix_to_doc(f.f_top), "bottom": matrix_to_doc(f.f_bottom)}


def morphism_from_doc(doc, shape_top, shape_bottom, where) -> GreenLieMorphism:
    return GreenLieMorphism(matrix_from_doc(_need(doc, "top", where), *shape_top, f"{where}.top"),
                            matrix_from_doc(_need(doc, "bottom", where), *shape_bottom, f"{where}.bottom"))


def extension_to_doc(E: Extension, cx: Complex):
    doc = functor_to_doc(E.B)
    doc.update({
        "L": functor_to_doc(E.L),
        "M": bimodule_to_doc(E.M),
        "i": morphism_to_doc(E.i),
        "j": morphism_to_doc(E.j),
        "provenance": E.provenance,
    })
    if E.s is not None:
        doc["s"] = morphism_to_doc(E.s)
    if E.cocycle is not None:
        doc["cocycle"] = cochain_to_doc(E.cocycle, cx)
    return doc


def extension_from_doc(doc, where="extension") -> Extension:
    from .extensions import validate_extension
    L = functor_from_doc(_need(doc, "L", where), f"{where}.L")
    M = bimodule_from_doc(_need(doc, "M", where), L, f"{where}.M")
    B = functor_from_doc(doc, where)
    mt, mb, lt, lb = M.top_dim, M.bottom_dim, L.top.dim, L.bottom.dim
    bt, bb = B.top.dim, B.bottom.dim
    i = morphism_from_doc(_need(doc, "i", where), (bt, mt), (bb, mb), f"{where}.i")
    j = morphism_from_doc(_need(doc, "j", where), (lt, bt), (lb, bb), f"{where}.j")
    s = morphism_from_doc(doc["s"], (bt, lt), (bb, lb), f"{where}.s") if "s" in doc else None
    E = Extension(L, M, B, i, j, s, provenance=doc.get("provenance", ""))
    E.report = validate_extension(E)
    return E


def report_findings(report):
    return [f.as_dict() for f in report.findings]

