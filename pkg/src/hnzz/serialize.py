"""JSON wire formats for instances, reports, and ground-truth sidecars.

Rational entries travel as strings ("a/b" or "a") to avoid float loss;
prime-field entries are plain ints with the modulus stated once in the
field descriptor.  All writers emit canonically ordered, newline
terminated documents so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .affine import AffineQuiver, NClass, TClass, to_quiver
from .errors import ParseError, ValidationError
from .hn import HNReport
from .linalg import Field, GF, Matrix, PrimeField, QQ
from .quiver import Quiver, Representation, StabilityCondition, validate
from .zigzag import Barcode, Interval


@dataclass(frozen=True)
class Instance:
    rep: Representation
    affine: AffineQuiver | None


def _need(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"{where}: key {key!r} has the wrong type")
    return value


def field_to_json(fld: Field) -> dict:
    if isinstance(fld, PrimeField):
        return {"kind": "prime", "p": fld.p}
    return {"kind": "rational"}


def field_from_json(obj) -> Field:
    kind = _need(obj, "kind", str, "field")
    if kind == "rational":
        return QQ
    if kind == "prime":
        p = _need(obj, "p", int, "field")
        try:
            return GF(p)
        except ValidationError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"field: unknown kind {kind!r}")


def _entry_to_json(fld: Field, value):
    if isinstance(fld, PrimeField):
        return value
    return str(value)


def _entry_from_json(fld: Field, raw, where: str):
    if isinstance(fld, PrimeField):
        if not isinstance(raw, int) or isinstance(raw, bool):
            raise ParseError(f"{where}: prime-field entries must be ints")
        return raw
    if isinstance(raw, str) or (isinstance(raw, int) and not isinstance(raw, bool)):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: bad rational {raw!r}") from exc
    raise ParseError(f"{where}: rational entries must be strings")


def instance_to_json(rep: Representation, affine: AffineQuiver | None = None) -> dict:
    if affine is not None:
        quiver_doc = {"affine": {"n": affine.n, "orientation": list(affine.orientation)}}
    else:
        quiver_doc = {
            "vertices": rep.quiver.vertex_count,
            "edges": [{"src": s, "dst": d} for s, d in rep.quiver.edges],
        }
    return {
        "field": field_to_json(rep.field),
        "quiver": quiver_doc,
        "dims": list(rep.dims),
        "matrices": [
            {
                "edge": i,
                "rows": [[_entry_to_json(rep.field, x) for x in row] for row in m.data],
            }
            for i, m in enumerate(rep.mats)
        ],
    }


def instance_from_json(doc) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("instance: top level must be an object")
    fld = field_from_json(_need(doc, "field", dict, "instance"))
    qobj = _need(doc, "quiver", dict, "instance")
    affine = None
    if "affine" in qobj:
        aobj = _need(qobj, "affine", dict, "quiver")
        n = _need(aobj, "n", int, "quiver.affine")
        orientation = _need(aobj, "orientation", list, "quiver.affine")
        if not all(isinstance(o, int) and o in (0, 1) for o in orientation):
            raise ParseError("quiver.affine: orientation must be a 0/1 array")
        affine = AffineQuiver(n, tuple(orientation))
        quiver = to_quiver(affine)
    else:
        vertices = _need(qobj, "vertices", int, "quiver")
        edges = []
        for i, eobj in enumerate(_need(qobj, "edges", list, "quiver")):
            edges.append(
                (_need(eobj, "src", int, f"edge {i}"), _need(eobj, "dst", int, f"edge {i}"))
            )
        quiver = Quiver(vertices, tuple(edges))
    dims = _need(doc, "dims", list, "instance")
    if not all(isinstance(d, int) and d >= 0 for d in dims):
        raise ParseError("dims must be non-negative ints")
    if len(dims) != quiver.vertex_count:
        raise ValidationError(
            f"dims has {len(dims)} entries for {quiver.vertex_count} vertices"
        )
    mat_docs = _need(doc, "matrices", list, "instance")
    slots: dict[int, Matrix] = {}
    for mobj in mat_docs:
        e = _need(mobj, "edge", int, "matrix")
        if e < 0 or e >= len(quiver.edges):
            raise ParseError(f"matrix for unknown edge {e}")
        if e in slots:
            raise ParseError(f"duplicate matrix for edge {e}")
        rows = _need(mobj, "rows", list, f"matrix {e}")
        src, dst = quiver.edges[e]
        parsed = [
            [_entry_from_json(fld, x, f"matrix {e}") for x in row] for row in rows
        ]
        slots[e] = Matrix(fld, parsed, cols=dims[src] if not parsed else None)
    if len(slots) != len(quiver.edges):
        missing = sorted(set(range(len(quiver.edges))) - set(slots))
        raise ParseError(f"missing matrices for edges {missing}")
    rep = Representation(quiver, fld, tuple(dims), tuple(slots[e] for e in range(len(quiver.edges))))
    problems = validate(rep)
    if problems:
        raise ValidationError("; ".join(problems))
    return Instance(rep, affine)


def barcode_to_json(bar: Barcode) -> list[dict]:
    return [{"lo": iv.lo, "hi": iv.hi, "mult": m} for iv, m in bar.entries]


def barcode_from_json(items) -> Barcode:
    if not isinstance(items, list):
        raise ParseError("barcode must be a list")
    out: dict[Interval, int] = {}
    for bobj in items:
        iv = Interval(_need(bobj, "lo", int, "bar"), _need(bobj, "hi", int, "bar"))
        mult = _need(bobj, "mult", int, "bar")
        if iv in out:
            raise ParseError(f"duplicate bar [{iv.lo},{iv.hi}]")
        out[iv] = mult
    return Barcode.from_dict(out)


def hn_to_json(report: HNReport) -> list[dict]:
    return [
        {"slope": str(sl), "quotient_dims": list(dims)} for sl, dims in report.steps
    ]


def hn_from_json(items, quiver: Quiver) -> HNReport:
    if not isinstance(items, list):
        raise ParseError("hn report must be a list")
    steps = []
    for sobj in items:
        raw = _need(sobj, "slope", str, "hn step")
        dims = _need(sobj, "quotient_dims", list, "hn step")
        steps.append((Fraction(raw), tuple(dims)))
    return HNReport(quiver, tuple(steps))


def classes_to_json(classes: dict[tuple[int, int], int]) -> list[dict]:
    return [
        {"u": u, "len": length, "mult": classes[(u, length)]}
        for u, length in sorted(classes)
    ]


def weights_from_json(items) -> StabilityCondition:
    if not isinstance(items, list):
        raise ParseError("weights file must hold a JSON array")
    return StabilityCondition(tuple(Fraction(w) for w in items))


def truth_to_json(
    fld: Field,
    intervals: dict[Interval, int] | None = None,
    n_classes: dict[NClass, int] | None = None,
    t_classes: dict[TClass, int] | None = None,
) -> dict:
    doc: dict = {}
    if intervals is not None:
        doc["intervals"] = [
            {"lo": iv.lo, "hi": iv.hi, "mult": m} for iv, m in sorted(intervals.items())
        ]
    if n_classes is not None or t_classes is not None:
        summands = []
        for cls in sorted(n_classes or {}, key=lambda c: (c.u, c.v)):
            summands.append({"type": "N", "u": cls.u, "v": cls.v, "mult": n_classes[cls]})
        for cls in sorted(t_classes or {}, key=lambda c: (str(c.lam), c.w)):
            summands.append(
                {
                    "type": "T",
                    "lam": _entry_to_json(fld, cls.lam),
                    "w": cls.w,
                    "mult": t_classes[cls],
                }
            )
        doc["summands"] = summands
    return doc


def write_json(path: str, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
