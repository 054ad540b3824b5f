"""Command-line front end.

Input is one JSON document::

    {"field": "GF(2)",
     "objects": {"A": [["1", "1"]], "B": [["1", "1"]]},
     "relations": {"R": {"kind": "cospan", "refs": ["A", "B"]}}}

Scalars are strings so rationals survive exactly.  A matrix with no rows is
written ``{"rows": 0, "cols": 3, "entries": []}``.  A bare matrix name used
where a relation is expected means its graph.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import relation as rel
from .decompose import (CospanDecomposition, WireShape, canonical_wire_relation, classify_shape,
                        cospan_decompose)
from .errors import FieldError, InconsistencyError, ShapeError
from .field import FieldSpec
from .matrix import Matrix, inverse, left_inverse, right_inverse
from .pair import PairDecomposition, pair_decompose, same_span, subspace_report, zassenhaus
from .relation import LinearRelation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

KINDS = {"cospan": 2, "span": 2, "graph": 1, "subspace": 1}


class InputError(Exception):
    """Malformed document or unknown name; maps to exit code 2."""


class VerificationError(Exception):
    """A computed result failed its own check; maps to exit code 1."""


# ---------------------------------------------------------------------------
# documents


def matrix_to_doc(m: Matrix):
    if m.nrows == 0:
        return {"rows": 0, "cols": m.ncols, "entries": []}
    return m.to_strings()


def _parse_matrix(field: FieldSpec, raw, where: str) -> Matrix:
    ncols = None
    if isinstance(raw, dict):
        try:
            nrows, ncols, raw = raw["rows"], raw["cols"], raw["entries"]
        except KeyError as exc:
            raise InputError(f"{where}: matrix object needs 'rows', 'cols', 'entries'") from exc
        if not isinstance(nrows, int) or not isinstance(ncols, int) or nrows < 0 or ncols < 0:
            raise InputError(f"{where}: 'rows' and 'cols' must be nonnegative integers")
        if not isinstance(raw, list) or len(raw) != nrows:
            raise InputError(f"{where}: expected {nrows} rows in 'entries'")
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise InputError(f"{where}: a matrix is an array of arrays of scalar strings")
    if not raw and ncols is None:
        raise InputError(f"{where}: empty matrix needs the object form with 'cols'")
    width = len(raw[0]) if ncols is None else ncols
    rows = []
    for i, row in enumerate(raw):
        if len(row) != width:
            raise InputError(f"{where}[{i}]: row has {len(row)} entries, expected {width}")
        vals = []
        for j, x in enumerate(row):
            if not isinstance(x, str):
                raise InputError(f"{where}[{i}][{j}]: scalars must be strings, got {x!r}")
            try:
                vals.append(field.parse_value(x.strip()))
            except FieldError as exc:
                raise InputError(f"{where}[{i}][{j}]: {exc}") from exc
        rows.append(vals)
    return Matrix(field, rows, width, _trusted=True)


class Document:
    """A parsed input document: a field, named matrices and named relation specs."""

    def __init__(self, field: FieldSpec, objects: Dict[str, Matrix],
                 relations: Dict[str, dict], raw: dict):
        self.field = field
        self.objects = objects
        self.relations = relations
        self.raw = raw

    @classmethod
    def from_json(cls, data, source: str = "<input>") -> "Document":
        if not isinstance(data, dict):
            raise InputError(f"{source}: top level must be an object")
        if "field" not in data:
            raise InputError(f"{source}: missing 'field'")
        try:
            field = FieldSpec.parse(str(data["field"]))
        except FieldError as exc:
            raise InputError(f"{source}: field 'field': {exc}") from exc
        raw_objects = data.get("objects", {})
        if not isinstance(raw_objects, dict):
            raise InputError(f"{source}: 'objects' must be an object")
        objects = {name: _parse_matrix(field, m, f"objects.{name}")
                   for name, m in raw_objects.items()}
        relations = data.get("relations", {})
        if not isinstance(relations, dict):
            raise InputError(f"{source}: 'relations' must be an object")
        for name, spec in relations.items():
            where = f"relations.{name}"
            if not isinstance(spec, dict) or spec.get("kind") not in KINDS:
                raise InputError(f"{where}: kind must be one of {sorted(KINDS)}")
            refs = spec.get("refs")
            if not isinstance(refs, list) or len(refs) != KINDS[spec["kind"]]:
                raise InputError(f"{where}: kind {spec['kind']!r} takes "
                                 f"{KINDS[spec['kind']]} matrix name(s) in 'refs'")
            for ref in refs:
                if ref not in objects:
                    raise InputError(f"{where}: unknown matrix {ref!r}")
        return cls(field, objects, relations, data)

    @classmethod
    def load(cls, path) -> "Document":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        return cls.from_json(data, str(path))

    def matrix(self, name: str) -> Matrix:
        if name not in self.objects:
            raise InputError(f"unknown matrix {name!r}")
        return self.objects[name]

    def spec(self, name: str) -> dict:
        if name in self.relations:
            return self.relations[name]
        if name in self.objects:
            return {"kind": "graph", "refs": [name]}
        raise InputError(f"unknown relation or matrix {name!r}")

    def relation(self, name: str) -> LinearRelation:
        spec = self.spec(name)
        mats = [self.objects[r] for r in spec["refs"]]
        try:
            if spec["kind"] == "cospan":
                return rel.from_cospan(*mats)
            if spec["kind"] == "span":
                return rel.from_span(*mats)
            if spec["kind"] == "graph":
                return rel.graph_of_map(mats[0])
            return rel.subspace(mats[0])
        except ShapeError as exc:
            raise InputError(f"relations.{name}: {exc}") from exc


# ---------------------------------------------------------------------------
# reports


def shape_summary(shape: WireShape) -> str:
    """``r`` always, the other counts only when nonzero."""
    parts = [f"r={shape.r}"]
    for label, v in (("kI", shape.k_I), ("kS", shape.k_S), ("kT", shape.k_T), ("kD", shape.k_D)):
        if v:
            parts.append(f"{label}={v}")
    return " ".join(parts)


def _labels(report) -> str:
    return " ".join(report.labels()) or "(none)"


def classify_report(doc: Document, name: str) -> Tuple[dict, List[str]]:
    r = doc.relation(name)
    direct = rel.properties(r)
    shape = cospan_decompose(r).shape
    by_shape = classify_shape(shape)
    agree = direct == by_shape
    data = {
        "relation": name,
        "field": str(doc.field),
        "arity": [r.m, r.n],
        "dim": r.dim,
        "properties": {k: direct.as_dict()[k] for k in ("TOT", "DET", "INJ", "SUR")},
        "shape_properties": {k: by_shape.as_dict()[k] for k in ("TOT", "DET", "INJ", "SUR")},
        "shape": shape.as_dict(),
        "status": "AGREE" if agree else "DISAGREE",
    }
    lines = [
        f"{_labels(direct)}; shape {shape_summary(shape)}",
        f"relation {name}: K^{r.m} -> K^{r.n} over {doc.field}, dim {r.dim}",
        f"direct predicates: {_labels(direct)}",
        f"from wire shape:   {_labels(by_shape)}",
        f"wire shape: {shape}",
        f"status: {data['status']}",
    ]
    if not agree:
        raise VerificationError("\n".join(lines))
    return data, lines


def _block(label: str, m: Matrix) -> List[str]:
    return [f"{label} ({m.nrows}x{m.ncols}):"] + ["  " + s for s in str(m).splitlines()]


def _input_objects(doc: Document, name: str) -> Tuple[dict, dict]:
    """The matrices and spec needed to rebuild relation ``name`` on its own."""
    spec = doc.spec(name)
    objects = {ref: matrix_to_doc(doc.objects[ref]) for ref in spec["refs"]}
    return objects, {"input": {"kind": spec["kind"], "refs": list(spec["refs"])}}


def decompose_report(doc: Document, name: str, mode: str = "cospan") -> Tuple[dict, List[str]]:
    objects, relations = _input_objects(doc, name)
    r = doc.relation(name)
    lines = [f"relation {name}: K^{r.m} -> K^{r.n} over {doc.field}, mode {mode}"]
    if mode == "cospan":
        dec = cospan_decompose(r)
        ok = dec.verify(r)
        mats = {"P": dec.p, "P_inv": dec.p_inv, "Q": dec.q, "Q_inv": dec.q_inv}
        check = "(x, y) in R  <=>  (P x, Q y) in W"
    elif mode == "pair":
        spec = doc.spec(name)
        if spec["kind"] != "cospan":
            raise InputError(f"pair mode needs a cospan-presented relation; {name!r} is "
                             f"a {spec['kind']}")
        a, b = (doc.objects[x] for x in spec["refs"])
        dec = pair_decompose(a, b)
        ok = dec.verify(a, b)
        mats = {"P": dec.p, "Q": dec.q, "D1": dec.d1, "D2": dec.d2, "H": dec.h}
        check = "A = H D1 P  and  B = H D2 Q, H injective"
    else:
        raise InputError(f"unknown mode {mode!r}")
    status = "VERIFIED" if ok else "FAILED"
    objects.update({k: matrix_to_doc(v) for k, v in mats.items()})
    data = {
        "field": str(doc.field),
        "objects": objects,
        "relations": relations,
        "decomposition": {"mode": mode, "relation": name, "shape": dec.shape.as_dict(),
                          "status": status},
    }
    lines.append(f"shape: {dec.shape}")
    for k, v in mats.items():
        lines += _block(k, v)
    lines.append(f"{check}: {status}")
    if not ok:
        raise VerificationError("\n".join(lines))
    return data, lines


def verify_decomposition_document(data: dict) -> bool:
    """Re-parse an emitted decomposition document and re-check it from scratch."""
    doc = Document.from_json(data)
    meta = data.get("decomposition")
    if not isinstance(meta, dict):
        raise InputError("not a decomposition document: missing 'decomposition'")
    try:
        shape = WireShape(**meta["shape"])
        mode = meta["mode"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"decomposition.shape: {exc}") from exc
    r = doc.relation("input")
    if mode == "cospan":
        dec = CospanDecomposition(p=doc.matrix("P"), p_inv=doc.matrix("P_inv"),
                                  q=doc.matrix("Q"), q_inv=doc.matrix("Q_inv"), shape=shape)
        return dec.verify(r)
    if mode == "pair":
        a, b = (doc.objects[x] for x in doc.relations["input"]["refs"])
        dec = PairDecomposition(p=doc.matrix("P"), q=doc.matrix("Q"), d1=doc.matrix("D1"),
                                d2=doc.matrix("D2"), h=doc.matrix("H"), shape=shape)
        return (dec.verify(a, b)
                and rel.from_cospan(dec.d1, dec.d2) == canonical_wire_relation(shape, doc.field))
    raise InputError(f"unknown mode {mode!r}")


def subspaces_report(doc: Document, a_name: str, b_name: str) -> Tuple[dict, List[str]]:
    a, b = doc.matrix(a_name), doc.matrix(b_name)
    if a.nrows != b.nrows:
        raise InputError(f"{a_name} has {a.nrows} rows but {b_name} has {b.nrows}; "
                         "the images must live in the same space")
    rep = subspace_report(a, b)
    z_sum, z_meet = zassenhaus(a, b)
    agree = same_span(rep.sum, z_sum) and same_span(rep.intersection, z_meet)
    status = "AGREE" if agree else "DISAGREE"
    bases = {k: matrix_to_doc(v) for k, v in rep.items()}
    bases["zero"] = matrix_to_doc(rep.zero)
    data = {
        "field": str(doc.field),
        "a": a_name,
        "b": b_name,
        "ambient": a.nrows,
        "bases": bases,
        "dims": {k: v.ncols for k, v in rep.items()},
        "zassenhaus": {"sum": matrix_to_doc(z_sum), "intersection": matrix_to_doc(z_meet),
                       "status": status},
    }
    lines = [f"subspaces of K^{a.nrows} over {doc.field} from im {a_name} and im {b_name}",
             "bases are matrix columns; complements are inside the sum"]
    for k, v in rep.items():
        lines += _block(k, v)
    lines.append("zero: dim 0")
    lines.append(f"zassenhaus cross-check: {status}")
    if not agree:
        raise VerificationError("\n".join(lines))
    return data, lines


def inverse_report(doc: Document, name: str) -> Tuple[dict, List[str]]:
    a = doc.matrix(name)
    f = a.field
    left, right = left_inverse(a), right_inverse(a)
    two = inverse(a) if a.is_square() else None
    checks = {
        "left": left is None or left @ a == Matrix.identity(f, a.ncols),
        "right": right is None or a @ right == Matrix.identity(f, a.nrows),
        "two_sided": two is None or (two @ a == Matrix.identity(f, a.ncols)
                                     and a @ two == Matrix.identity(f, a.nrows)),
    }
    ok = all(checks.values())
    status = "VERIFIED" if ok else "FAILED"
    data = {
        "field": str(doc.field),
        "matrix": name,
        "shape": [a.nrows, a.ncols],
        "injective": left is not None,
        "surjective": right is not None,
        "left_inverse": None if left is None else matrix_to_doc(left),
        "right_inverse": None if right is None else matrix_to_doc(right),
        "inverse": None if two is None else matrix_to_doc(two),
        "status": status,
    }
    lines = [f"matrix {name} ({a.nrows}x{a.ncols}) over {f}"]
    for label, m, eq in (("left inverse", left, "L A = I"), ("right inverse", right, "A R = I"),
                         ("inverse", two, "both products = I")):
        if m is None:
            lines.append(f"{label}: none")
        else:
            lines += _block(f"{label} [{eq}]", m)
    lines.append(f"status: {status}")
    if not ok:
        raise VerificationError("\n".join(lines))
    return data, lines


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linrel", description="Exact linear relations toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="JSON input document")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = with_input("classify", "fundamental properties and wire shape of a relation")
    p.add_argument("name")
    p = with_input("decompose", "cospan or pair decomposition, verified")
    p.add_argument("name")
    p.add_argument("--mode", choices=("cospan", "pair"), default="cospan")
    p = with_input("subspaces", "bases for the subspaces generated by two images")
    p.add_argument("a")
    p.add_argument("b")
    p = with_input("inverse", "left, right and two-sided inverses of a matrix")
    p.add_argument("name")
    p = with_input("verify", "re-check a decomposition document emitted with --json")

    p = sub.add_parser("selftest", help="check every theorem on generated instances")
    p.add_argument("--quick", action="store_true", help="small exhaustive GF(2) suites only")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--repro-dir", default=".", help="where counterexamples are written")
    p.add_argument("--json", action="store_true")
    return ap


def _emit(data, lines, as_json: bool, out):
    if as_json:
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _selftest(args, out) -> int:
    from .theorems import run_selftest

    report = run_selftest(quick=args.quick, seed=args.seed, trials=args.trials,
                          repro_dir=Path(args.repro_dir))
    if args.json:
        data = {
            "ok": report.ok,
            "seconds": round(report.seconds, 3),
            "suites": {s.name: {"passed": s.passed, "total": s.total}
                       for s in report.harness.suites.values()},
            "repro": None if report.repro_path is None else str(report.repro_path),
        }
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write("\n".join(report.lines()) + "\n")
        if report.repro_path is not None:
            out.write(f"counterexamples written to {report.repro_path}\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            return _selftest(args, out)
        if args.command == "verify":
            try:
                data = json.loads(Path(args.input).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(f"{args.input}: {exc}") from exc
            ok = verify_decomposition_document(data)
            _emit({"status": "VERIFIED" if ok else "FAILED"},
                  ["VERIFIED" if ok else "FAILED"], args.json, out)
            return EXIT_OK if ok else EXIT_FAIL
        doc = Document.load(args.input)
        if args.command == "classify":
            data, lines = classify_report(doc, args.name)
        elif args.command == "decompose":
            data, lines = decompose_report(doc, args.name, args.mode)
        elif args.command == "subspaces":
            data, lines = subspaces_report(doc, args.a, args.b)
        else:
            data, lines = inverse_report(doc, args.name)
        _emit(data, lines, args.json, out)
        return EXIT_OK
    except (InputError, ShapeError, FieldError) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (VerificationError, InconsistencyError) as exc:
        err.write(f"verification failed:\n{exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
