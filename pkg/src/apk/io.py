"""JSON documents for extended multi-segments and A-parameters.

Half-integers travel as strings ``"k"`` or ``"k/2"``; plain JSON integers are
accepted on input.  Errors name the offending field by its path, e.g.
``blocks[0].rows[2].B``.
"""

from __future__ import annotations

import json
from typing import Any, Union

from .ems import (AParameter, Block, ExtendedMultiSegment, ExtendedSegment, GroupSpec, RhoLabel,
                  Segment, SegmentError, Summand, normalize_row)
from .halfint import HalfInt


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def _expect(obj, typ, path, what):
    if not isinstance(obj, typ) or isinstance(obj, bool):
        raise SchemaError(path, f"expected {what}, got {type(obj).__name__}")
    return obj


def _int(obj, path) -> int:
    return _expect(obj, int, path, "an integer")


def _halfint(obj, path) -> HalfInt:
    if isinstance(obj, bool):
        raise SchemaError(path, "expected a half-integer")
    try:
        if isinstance(obj, int):
            return HalfInt(obj)
        if isinstance(obj, str):
            return HalfInt.parse(obj)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None
    raise SchemaError(path, f"expected a half-integer string like \"3/2\", got {obj!r}")


def _keys(obj, path, required, optional=()):
    _expect(obj, dict, path, "an object")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SchemaError(path, f"missing field {missing[0]!r}")
    extra = sorted(set(obj) - set(required) - set(optional))
    if extra:
        raise SchemaError(path, f"unknown field {extra[0]!r}")
    return obj


def _group(obj, path):
    if obj is None:
        return None
    _keys(obj, path, ("family", "rank"))
    try:
        return GroupSpec(_expect(obj["family"], str, f"{path}.family", "a string"),
                         _int(obj["rank"], f"{path}.rank"))
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _rhos(doc) -> dict:
    out = {}
    for k, r in enumerate(doc.get("rhos", [])):
        path = f"rhos[{k}]"
        _keys(r, path, ("id",), ("dim", "selfdual"))
        rid = _expect(r["id"], str, f"{path}.id", "a string")
        if rid in out:
            raise SchemaError(f"{path}.id", f"duplicate rho id {rid!r}")
        try:
            out[rid] = RhoLabel(rid, _int(r.get("dim", 1), f"{path}.dim"),
                                _expect(r.get("selfdual", "orthogonal"), str, f"{path}.selfdual", "a string"))
        except SchemaError:
            raise
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from None
    return out


def _rho_ref(rhos: dict, rid, path) -> RhoLabel:
    _expect(rid, str, path, "a rho id")
    if rhos and rid not in rhos:
        raise SchemaError(path, f"unknown rho {rid!r}")
    return rhos.get(rid) or RhoLabel(rid)


def _row(obj, path) -> ExtendedSegment:
    _keys(obj, path, ("A", "B", "l", "eta"))
    A = _halfint(obj["A"], f"{path}.A")
    B = _halfint(obj["B"], f"{path}.B")
    l = _int(obj["l"], f"{path}.l")
    eta = _int(obj["eta"], f"{path}.eta")
    if eta not in (1, -1):
        raise SchemaError(f"{path}.eta", "eta must be 1 or -1")
    try:
        seg = Segment(A, B)
    except SegmentError as exc:
        raise SchemaError(path, str(exc)) from None
    return ExtendedSegment(seg, l, eta)


def ems_from_obj(doc: Any) -> ExtendedMultiSegment:
    _keys(doc, "", ("blocks",), ("group", "rhos"))
    group = _group(doc.get("group"), "group")
    rhos = _rhos(doc)
    blocks = []
    seen = set()
    for k, blk in enumerate(_expect(doc["blocks"], list, "blocks", "a list")):
        path = f"blocks[{k}]"
        _keys(blk, path, ("rho", "rows"))
        rho = _rho_ref(rhos, blk["rho"], f"{path}.rho")
        if rho.id in seen:
            raise SchemaError(f"{path}.rho", f"second block for rho {rho.id!r}")
        seen.add(rho.id)
        rows = [_row(r, f"{path}.rows[{i}]")
                for i, r in enumerate(_expect(blk["rows"], list, f"{path}.rows", "a list"))]
        blocks.append(Block(rho, tuple(rows)))
    return ExtendedMultiSegment(tuple(blocks), group)


def parameter_from_obj(doc: Any) -> AParameter:
    _keys(doc, "", ("summands",), ("group", "rhos"))
    group = _group(doc.get("group"), "group")
    rhos = _rhos(doc)
    summands = []
    for k, s in enumerate(_expect(doc["summands"], list, "summands", "a list")):
        path = f"summands[{k}]"
        _keys(s, path, ("rho", "a", "b"))
        a, b = _int(s["a"], f"{path}.a"), _int(s["b"], f"{path}.b")
        if a < 1 or b < 1:
            raise SchemaError(path, "a and b must be positive")
        summands.append(Summand(_rho_ref(rhos, s["rho"], f"{path}.rho"), a, b))
    return AParameter(tuple(summands), group)


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def parse_ems(text: str) -> ExtendedMultiSegment:
    return ems_from_obj(_load(text))


def parse_parameter(text: str) -> AParameter:
    return parameter_from_obj(_load(text))


def parse_document(text: str) -> Union[ExtendedMultiSegment, AParameter]:
    doc = _load(text)
    if isinstance(doc, dict) and "summands" in doc:
        return parameter_from_obj(doc)
    return ems_from_obj(doc)


def _group_obj(group):
    return None if group is None else {"family": group.family, "rank": group.rank}


def _rho_obj(rho: RhoLabel):
    return {"id": rho.id, "dim": rho.dim, "selfdual": rho.selfdual}


def ems_to_obj(E: ExtendedMultiSegment) -> dict:
    doc = {}
    if E.group is not None:
        doc["group"] = _group_obj(E.group)
    doc["rhos"] = [_rho_obj(r) for r in E.rhos]
    doc["blocks"] = []
    for blk in E.blocks:
        rows = []
        for r in blk.rows:
            n = normalize_row(r) if r.b > 0 else r
            rows.append({"A": str(n.A), "B": str(n.B), "l": n.l, "eta": n.eta})
        doc["blocks"].append({"rho": blk.rho.id, "rows": rows})
    return doc


def parameter_to_obj(psi: AParameter) -> dict:
    doc = {}
    if psi.group is not None:
        doc["group"] = _group_obj(psi.group)
    doc["rhos"] = [_rho_obj(r) for r in psi.rhos()]
    doc["summands"] = [{"rho": s.rho.id, "a": s.a, "b": s.b} for s in psi.summands]
    return doc


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def emit_ems(E: ExtendedMultiSegment) -> str:
    return dumps(ems_to_obj(E))


def emit_parameter(psi: AParameter) -> str:
    return dumps(parameter_to_obj(psi))
