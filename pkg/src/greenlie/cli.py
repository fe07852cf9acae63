"""Command-line front end.

Exit status: 0 success, 1 validation failure, 2 unparsable input,
3 violated precondition.  Reports go to stdout (or ``--out``) as one JSON
document with sorted keys, so identical inputs give identical bytes.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import io
from .cohomology import complex_for
from .constructions import build_example, list_examples
from .cup import graded_cohomology_table
from .errors import DimensionMismatch, GreenLieError, NotACocycle, ParseError, PrecondViolation
from .extensions import (build_extension, classify_extensions, equivalence_map, extract_cocycle,
                         find_equivalence, search_equivalence, validate_extension, verify_equivalence)
from .mackey import LieBimodule, validate_bimodule, validate_green_lie

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_PRECOND = 0, 1, 2, 3
COMMANDS = ("validate", "cohomology", "cup", "extend", "extract", "equiv", "classify", "examples")


@dataclass
class JobSpec:
    command: str
    inputs: list = field(default_factory=list)
    module: str | None = None  # None means adjoint, except for validate
    max_degree: int = 2
    cocycles: list = field(default_factory=list)
    emit: list | None = None
    out: str | None = None
    format: str = "json"


class ValidationFailure(GreenLieError):
    def __init__(self, doc):
        super().__init__("validation failed")
        self.doc = doc


def _functor(path, check=True):
    return io.functor_from_doc(io.load_json(path), where=path, check=check)


def _module(spec, L, check=True):
    spec = spec or "adjoint"
    if spec == "adjoint":
        return LieBimodule.adjoint(L)
    if spec.startswith("trivial:"):
        try:
            dim = int(spec.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad module spec {spec!r}; expected trivial:<dim>") from None
        if dim < 0:
            raise ParseError("module dimension must be non-negative")
        return LieBimodule.trivial(L, dim)
    return io.bimodule_from_doc(io.load_json(spec), L, where=spec, check=check)


def _findings_doc(report):
    return {"ok": report.ok, "message": str(report) if report.ok else f"{len(report)} violation(s)",
            "findings": io.report_findings(report)}


def _one_input(job, what="functor document"):
    if len(job.inputs) != 1:
        raise ParseError(f"{job.command} needs exactly one {what}")
    return job.inputs[0]


def _unwrap(doc):
    # an ``extend`` report carries the extension under "extension"
    if isinstance(doc, dict) and isinstance(doc.get("extension"), dict):
        return doc["extension"]
    return doc


def cmd_validate(job):
    path = _one_input(job, "input document")
    doc = _unwrap(io.load_json(path))
    if isinstance(doc, dict) and "L" in doc and "i" in doc:
        E = io.extension_from_doc(doc, where=path)
        report = validate_extension(E)
        kind = "extension"
    else:
        L = io.functor_from_doc(doc, where=path, check=False)
        report = validate_green_lie(L)
        kind = "functor"
        if job.module is not None and report.ok:
            M = _module(job.module, L, check=False)
            report.extend(validate_bimodule(L, M), prefix="module: ")
            kind = "functor+module"
    out = {"command": "validate", "input": path, "kind": kind, **_findings_doc(report)}
    if not report.ok:
        raise ValidationFailure(out)
    return out


def cmd_cohomology(job):
    path = _one_input(job)
    L = _functor(path)
    M = _module(job.module, L)
    cx = complex_for(L, M)
    degrees = [io.cohomology_to_doc(cx.cohomology(n), cx) for n in range(job.max_degree + 1)]
    return {"command": "cohomology", "input": path, "module": job.module or "adjoint", "max_degree": job.max_degree,
            "table": [{"degree": d["degree"], "dim_top": d["dim_top"], "dim_bottom": d["dim_bottom"]}
                      for d in degrees],
            "degrees": degrees}


def cmd_cup(job):
    path = _one_input(job)
    L = _functor(path)
    M = _module(job.module, L)
    table = graded_cohomology_table(L, M, job.max_degree)
    products = {}
    for (m, n), entry in table["products"].items():
        products[f"{m},{n}"] = {lvl: {"matrix": io.matrix_to_doc(e["matrix"]),
                                      "antisymmetry_defect": e["antisymmetry_defect"]}
                                for lvl, e in entry.items()}
    return {"command": "cup", "input": path, "module": job.module or "adjoint", "max_degree": job.max_degree,
            "dims": {str(k): v for k, v in table["dims"].items()}, "products": products}


def _cocycle(path, cx):
    return io.cochain_from_doc(io.load_json(path), cx, where=path)


def cmd_extend(job):
    path = _one_input(job)
    if len(job.cocycles) != 1:
        raise ParseError("extend needs exactly one --cocycle document")
    L = _functor(path)
    M = _module(job.module, L)
    cx = complex_for(L, M)
    f = _cocycle(job.cocycles[0], cx)
    try:
        E = build_extension(L, M, f, provenance=f"cocycle {job.cocycles[0]}")
    except NotACocycle as exc:
        raise ValidationFailure({"command": "extend", "input": path, "ok": False,
                                 "message": str(exc), "conditions": list(exc.conditions),
                                 "findings": io.report_findings(exc.report) if exc.report is not None else []})
    return {"command": "extend", "input": path, "ok": E.report.ok, "extension": io.extension_to_doc(E, cx)}


def cmd_extract(job):
    path = _one_input(job, "extension document")
    E = io.extension_from_doc(_unwrap(io.load_json(path)), where=path)
    f = extract_cocycle(E)
    cx = complex_for(E.L, E.M)
    return {"command": "extract", "input": path, "cocycle": io.cochain_to_doc(f, cx),
            "is_cocycle": cx.is_top_cocycle(f), "is_coboundary": cx.is_top_coboundary(f)}


def cmd_equiv(job):
    path = _one_input(job)
    if len(job.cocycles) != 2:
        raise ParseError("equiv needs two --cocycle documents")
    L = _functor(path)
    M = _module(job.module, L)
    cx = complex_for(L, M)
    f, g = (_cocycle(p, cx) for p in job.cocycles)
    Ef, Eg = build_extension(L, M, f), build_extension(L, M, g)
    h = find_equivalence(f, g, L, M)
    beta_search = search_equivalence(Ef, Eg)
    out = {"command": "equiv", "input": path, "equivalent": h is not None,
           "independent_search_agrees": (beta_search is not None) == (h is not None)}
    if h is not None:
        beta = equivalence_map(Ef, h)
        report = verify_equivalence(Ef, Eg, beta)
        out.update({"h": io.cochain_to_doc(h, cx), "beta": io.morphism_to_doc(beta), "beta_verified": report.ok})
    return out


def cmd_classify(job):
    path = _one_input(job)
    L = _functor(path)
    M = _module(job.module, L)
    cx = complex_for(L, M)
    cl = classify_extensions(L, M)
    return {"command": "classify", "input": path, "module": job.module or "adjoint",
            "dim_top": cl["dim_top"], "dim_bottom": cl["dim_bottom"], "summary": cl["summary"],
            "representatives": [io.cochain_to_doc(f, cx) for f in cl["representatives"]],
            "extensions": [io.functor_to_doc(E.B) for E in cl["extensions"]]}


def cmd_examples(job):
    if job.emit:
        name, *args = job.emit
        F = build_example(name, *args)
        return io.functor_to_doc(F)
    return {"command": "examples", "catalog": list_examples()}


HANDLERS = {
    "validate": cmd_validate, "cohomology": cmd_cohomology, "cup": cmd_cup, "extend": cmd_extend,
    "extract": cmd_extract, "equiv": cmd_equiv, "classify": cmd_classify, "examples": cmd_examples,
}


def _render_text(doc, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        if all(not isinstance(x, (dict, list)) for x in doc):
            lines.append(pad + " ".join(str(x) for x in doc))
        else:
            for x in doc:
                lines.append(f"{pad}-")
                lines.extend(_render_text(x, indent + 1))
    else:
        lines.append(f"{pad}{doc}")
    return lines


def render(doc, fmt):
    if fmt == "text":
        return "\n".join(_render_text(doc)) + "\n"
    return io.dumps(doc)


def run(job: JobSpec):
    """Execute a job; returns ``(status, document)``."""
    if job.command not in HANDLERS:
        return EXIT_PARSE, {"ok": False, "error": {"type": "ParseError", "message": f"unknown command {job.command}"}}
    if job.max_degree < 0:
        return EXIT_PARSE, {"ok": False, "error": {"type": "ParseError", "message": "--max-degree must be >= 0"}}
    try:
        return EXIT_OK, HANDLERS[job.command](job)
    except ValidationFailure as exc:
        return EXIT_INVALID, exc.doc
    except (ParseError, DimensionMismatch) as exc:
        return EXIT_PARSE, _error_doc(exc)
    except PrecondViolation as exc:
        return EXIT_PRECOND, _error_doc(exc)
    except GreenLieError as exc:
        return EXIT_INVALID, _error_doc(exc)


def _error_doc(exc):
    err = {"type": type(exc).__name__, "message": str(exc)}
    report = getattr(exc, "report", None)
    if report is not None:
        err["findings"] = io.report_findings(report)
    if getattr(exc, "conditions", None):
        err["conditions"] = list(exc.conditions)
    return {"ok": False, "error": err}


def build_parser():
    parser = argparse.ArgumentParser(prog="greenlie", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--module", default=None, help="adjoint | trivial:<dim> | path to a bimodule document")
    common.add_argument("--max-degree", type=int, default=2)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "examples":
            p.add_argument("--emit", nargs="+", metavar=("NAME", "ARG"), help="emit one example document")
        else:
            p.add_argument("inputs", nargs=1)
        if name in ("extend", "equiv"):
            p.add_argument("--cocycle", action="append", default=[], dest="cocycles")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    job = JobSpec(ns.command, getattr(ns, "inputs", []), ns.module, ns.max_degree,
                  getattr(ns, "cocycles", []), getattr(ns, "emit", None), ns.out, ns.format)
    status, doc = run(job)
    text = render(doc, job.format)
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status != EXIT_OK:
        err = doc.get("error", {}) if isinstance(doc, dict) else {}
        sys.stderr.write(f"greenlie: {err.get('type', 'ValidationFailure')}: "
                         f"{err.get('message', doc.get('message', 'failed'))}\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
