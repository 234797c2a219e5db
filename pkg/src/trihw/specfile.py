"""Algebra spec files: a JSON document describing an algebra with optional triangular data."""
from __future__ import annotations

import hashlib
import json

from .algebra import GradedAlgebra
from .kernel import FieldError, field_from_descriptor
from .triangular import NotTriangular, TRep, TriangularDecomposition
from .zoo import Bundle

SCHEMA = 1


class SpecError(ValueError):
    """Malformed spec file; `where` names the offending field (or line:column for JSON syntax)."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


# ------------------------------------------------------------ writing


def _sparse(F, vec):
    return {str(k): F.format(c) for k, c in enumerate(vec) if not F.is_zero(c)}


def _basis_entry(F, vec):
    nz = [k for k, c in enumerate(vec) if not F.is_zero(c)]
    if len(nz) == 1 and F.is_one(vec[nz[0]]):
        return nz[0]
    return _sparse(F, vec)


def bundle_to_spec(b: Bundle) -> dict:
    A = b.algebra
    F = A.field
    doc = {
        "schema": SCHEMA,
        "name": b.name,
        "field": F.descriptor,
        "dim": A.dim,
        "degrees": list(A.degrees),
        "basis_names": list(A.names),
        "unit": _sparse(F, A.unit),
        "structure": [[i, j, {str(k): F.format(c) for k, c in A.table[i][j]}]
                      for i in range(A.dim) for j in range(A.dim) if A.table[i][j]],
    }
    td = b.td
    if td is not None:
        doc["triangular"] = {
            "minus": [_basis_entry(F, v) for v in td.minus_basis],
            "T": [_basis_entry(F, v) for v in td.t_basis],
            "plus": [_basis_entry(F, v) for v in td.plus_basis],
        }
        doc["irr_T"] = [{"label": lam.label, "dim": lam.dim,
                         "action": [[[F.format(x) for x in row] for row in m] for m in lam.action]}
                        for lam in td.irr_t]
    if b.tau is not None:
        doc["anti_involution"] = [_sparse(F, [row[i] for row in b.tau]) for i in range(A.dim)]
    if b.frobenius_hints:
        doc["frobenius_hint"] = [{"degree": d, "phi": _sparse(F, phi)}
                                 for d, phi in b.frobenius_hints]
    if b.complete_intersection is not None:
        x, f = b.complete_intersection
        doc["complete_intersection"] = {"x": list(x), "f": list(f)}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=False, ensure_ascii=False) + "\n"


# ------------------------------------------------------------ reading


def _need(doc, key, kind, where=""):
    path = f"{where}.{key}" if where else key
    if key not in doc:
        raise SpecError(path, "missing required field")
    val = doc[key]
    if not isinstance(val, kind) or (kind is int and isinstance(val, bool)):
        raise SpecError(path, f"expected {getattr(kind, '__name__', kind)}")
    return val


def _coeff(F, s, where):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SpecError(where, "coefficients must be exact strings or integers")
    try:
        return F.parse(str(s))
    except (FieldError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(where, f"cannot parse coefficient {s!r}: {exc}") from None


def _index(k, n, where):
    try:
        i = int(k)
    except (TypeError, ValueError):
        raise SpecError(where, f"index {k!r} is not an integer") from None
    if not 0 <= i < n:
        raise SpecError(where, f"index {i} out of range 0..{n - 1}")
    return i


def _sparse_vec(F, data, n, where):
    if not isinstance(data, dict):
        raise SpecError(where, "expected a sparse vector {index: coeff}")
    v = [F.zero] * n
    for k, c in data.items():
        v[_index(k, n, f"{where}[{k}]")] = _coeff(F, c, f"{where}[{k}]")
    return tuple(v)


def _matrix(F, data, d, where):
    if not isinstance(data, list) or len(data) != d:
        raise SpecError(where, f"expected a {d}x{d} matrix")
    rows = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != d:
            raise SpecError(f"{where}[{r}]", f"expected a row of length {d}")
        rows.append(tuple(_coeff(F, x, f"{where}[{r}][{c}]") for c, x in enumerate(row)))
    return tuple(rows)


def spec_to_bundle(doc) -> Bundle:
    if not isinstance(doc, dict):
        raise SpecError("$", "top level must be an object")
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise SpecError("schema", f"unsupported schema {schema!r}")
    desc = _need(doc, "field", str)
    try:
        F = field_from_descriptor(desc)
    except (FieldError, ValueError) as exc:
        raise SpecError("field", str(exc)) from None
    n = _need(doc, "dim", int)
    if n <= 0:
        raise SpecError("dim", "must be positive")
    degrees = _need(doc, "degrees", list)
    if len(degrees) != n or not all(isinstance(d, int) and not isinstance(d, bool) for d in degrees):
        raise SpecError("degrees", f"expected {n} integers")
    names = doc.get("basis_names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise SpecError("basis_names", f"expected {n} names")
    unit = _sparse_vec(F, _need(doc, "unit", dict), n, "unit")
    prods = {}
    for t, triple in enumerate(_need(doc, "structure", list)):
        where = f"structure[{t}]"
        if not isinstance(triple, list) or len(triple) != 3:
            raise SpecError(where, "expected [i, j, {k: coeff}]")
        i = _index(triple[0], n, f"{where}[0]")
        j = _index(triple[1], n, f"{where}[1]")
        if (i, j) in prods:
            raise SpecError(where, f"duplicate product ({i}, {j})")
        vec = _sparse_vec(F, triple[2], n, f"{where}[2]")
        for k, c in enumerate(vec):
            if not F.is_zero(c) and degrees[k] != degrees[i] + degrees[j]:
                raise SpecError(where, f"b{i}*b{j} has a term b{k} of the wrong degree")
        prods[(i, j)] = {k: c for k, c in enumerate(vec) if not F.is_zero(c)}
    A = GradedAlgebra(F, degrees, prods, unit, names=names, name=str(doc.get("name", "")))

    td = None
    if "triangular" in doc:
        tri = _need(doc, "triangular", dict)
        parts = {}
        for key in ("minus", "T", "plus"):
            entries = _need(tri, key, list, "triangular")
            vecs = []
            for e, ent in enumerate(entries):
                where = f"triangular.{key}[{e}]"
                if isinstance(ent, int) and not isinstance(ent, bool):
                    _index(ent, n, where)
                    vecs.append(A.basis_vector(ent))
                else:
                    vecs.append(_sparse_vec(F, ent, n, where))
            parts[key] = vecs
        irr = []
        tdim = len(parts["T"])
        for r, rep in enumerate(_need(doc, "irr_T", list)):
            where = f"irr_T[{r}]"
            if not isinstance(rep, dict):
                raise SpecError(where, "expected an object")
            d = _need(rep, "dim", int, where)
            action = _need(rep, "action", list, where)
            if len(action) != tdim:
                raise SpecError(f"{where}.action", f"expected one matrix per T-basis vector ({tdim})")
            mats = [_matrix(F, m, d, f"{where}.action[{q}]") for q, m in enumerate(action)]
            irr.append(TRep(str(rep.get("label", r)), d, tuple(mats)))
        try:
            td = TriangularDecomposition(A, parts["minus"], parts["T"], parts["plus"], irr)
        except (NotTriangular, ValueError) as exc:
            raise SpecError("triangular", str(exc)) from None
    elif "irr_T" in doc:
        raise SpecError("irr_T", "given without a triangular section")

    tau = None
    if "anti_involution" in doc:
        cols = _need(doc, "anti_involution", list)
        if len(cols) != n:
            raise SpecError("anti_involution", f"expected {n} sparse columns")
        vecs = [_sparse_vec(F, c, n, f"anti_involution[{i}]") for i, c in enumerate(cols)]
        tau = tuple(tuple(vecs[c][r] for c in range(n)) for r in range(n))

    hints = []
    for h, ent in enumerate(doc.get("frobenius_hint", []) or []):
        where = f"frobenius_hint[{h}]"
        if not isinstance(ent, dict):
            raise SpecError(where, "expected an object")
        hints.append((_need(ent, "degree", int, where),
                      _sparse_vec(F, _need(ent, "phi", dict, where), n, f"{where}.phi")))
    ci = None
    if "complete_intersection" in doc:
        cid = _need(doc, "complete_intersection", dict)
        x = _need(cid, "x", list, "complete_intersection")
        f = _need(cid, "f", list, "complete_intersection")
        if (len(x) != len(f) or not all(isinstance(d, int) and d > 0 for d in x + f)):
            raise SpecError("complete_intersection", "need equally many positive x and f degrees")
        ci = (tuple(x), tuple(f))
    return Bundle(A.name, A, td, tau, tuple(hints), {}, complete_intersection=ci)


def loads(text: str) -> Bundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}:{exc.colno}", exc.msg) from None
    return spec_to_bundle(doc)


def load(path) -> Bundle:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(str(path), exc.strerror or str(exc)) from None
    return loads(text)


def content_hash(text: str, *extra) -> str:
    h = hashlib.sha256(text.encode("utf-8"))
    for e in extra:
        h.update(b"\0" + str(e).encode("utf-8"))
    return h.hexdigest()


__all__ = ["SCHEMA", "SpecError", "bundle_to_spec", "spec_to_bundle", "dumps", "loads", "load",
           "content_hash"]
