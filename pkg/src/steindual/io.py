"""Reading and writing structure files.

Every file is one JSON document with a ``kind`` key.  Tables are row-major
index matrices with ``null`` for undefined entries; subsets and maps are
index lists.  ``emit`` produces a canonical layout (two-space indentation,
innermost integer lists on one line, keys in a fixed order) so that
``emit(parse(text)) == text`` for canonical files.
"""

import hashlib
import json
from pathlib import Path

from .core import (
    UNDEFINED, FiniteBundle, FiniteCategory, FiniteGroupoid, FiniteRing,
    FiniteRingoidBundle, FiniteSemigroup,
)
from .errors import ParseError, SteindualError
from .structured import Scalars, StructuredData

FORMAT = "steindual/1"
KINDS = ("semigroup", "ring", "structured", "bundle", "ringoid-bundle",
         "morphism", "pierce-morphism")


# ----------------------------------------------------------------- emitting


def _scalar_list(value):
    return isinstance(value, list) and all(
        v is None or isinstance(v, (int, str, bool)) for v in value
    )


def _emit(value, indent):
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_emit(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if _scalar_list(value):
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in value) + "]"
        items = [f"{inner}{_emit(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False)


def emit_document(doc):
    return _emit(doc, 0) + "\n"


def content_hash(doc):
    return hashlib.sha256(emit_document(doc).encode("utf-8")).hexdigest()


def _nullable(rows):
    return [[None if v == UNDEFINED else int(v) for v in row] for row in rows]


def _list(values):
    return [None if v == UNDEFINED else int(v) for v in values]


def semigroup_tables(carrier):
    tables = {"mult": _nullable(carrier.rows)}
    if isinstance(carrier, FiniteRing):
        tables["add"] = _nullable(carrier.add_rows)
        tables["neg"] = _list(carrier.negs)
    return tables


def _carrier_doc(carrier):
    kind = "ring" if isinstance(carrier, FiniteRing) else "semigroup"
    doc = {"format": FORMAT, "kind": kind, "elements": list(carrier.elements),
           "tables": semigroup_tables(carrier)}
    if carrier.zero is not None:
        doc["zero"] = int(carrier.zero)
    return doc


def structured_doc(data):
    carrier = data.carrier
    doc = {
        "format": FORMAT,
        "kind": "structured",
        "name": data.name,
        "elements": list(carrier.elements),
        "tables": semigroup_tables(carrier),
    }
    if carrier.zero is not None:
        doc["zero"] = int(carrier.zero)
    doc["subsets"] = {"S": list(data.S), "Z": list(data.Z)}
    doc["maps"] = {"Phi": list(data.phi)}
    if data.scalars is not None:
        doc["scalars"] = {
            "ring": _carrier_doc(data.scalars.ring),
            "action": [list(row) for row in data.scalars.action],
        }
    return doc


def _category_doc(cat):
    doc = {
        "arrows": list(cat.arrows),
        "src": list(cat.srcs),
        "rng": list(cat.rngs),
        "compose": _nullable(cat.comp_rows),
    }
    if isinstance(cat, FiniteGroupoid):
        doc["inv"] = list(cat.invs)
    return doc


def bundle_doc(bundle, name=""):
    doc = {
        "format": FORMAT,
        "kind": "ringoid-bundle" if bundle.is_ringoid else "bundle",
        "name": name,
        "base": _category_doc(bundle.base),
        "total": _category_doc(bundle.total),
        "rho": list(bundle.rhos),
        "zero": list(bundle.zeros),
    }
    if bundle.is_ringoid:
        doc["fiber-add"] = _nullable(bundle.fadd_rows)
    return doc


def _endpoint(doc):
    return {"sha256": content_hash(doc), "document": doc}


def morphism_doc(m):
    return {
        "format": FORMAT,
        "kind": "morphism",
        "source": _endpoint(to_document(m.source)),
        "target": _endpoint(to_document(m.target)),
        "map": _list(m.values),
    }


def pierce_doc(p):
    return {
        "format": FORMAT,
        "kind": "pierce-morphism",
        "source": _endpoint(bundle_doc(p.source)),
        "target": _endpoint(bundle_doc(p.target)),
        "phi": [[int(g), int(h)] for g, h in sorted(p.phi.values.items())],
        "beta": [[int(g), int(c), int(d)] for (g, c), d in sorted(p.beta.items())],
    }


def to_document(obj):
    from .duality import PierceMorphism, SteinbergMorphism

    if isinstance(obj, StructuredData):
        return structured_doc(obj)
    if isinstance(obj, FiniteBundle):
        return bundle_doc(obj)
    if isinstance(obj, FiniteSemigroup):
        return _carrier_doc(obj)
    if isinstance(obj, SteinbergMorphism):
        return morphism_doc(obj)
    if isinstance(obj, PierceMorphism):
        return pierce_doc(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit(obj):
    return emit_document(to_document(obj))


def write(obj, path):
    Path(path).write_text(emit(obj), encoding="utf-8")


# ------------------------------------------------------------------ parsing


def _need(doc, key, where):
    if key not in doc:
        raise ParseError(f"{where}: missing key {key!r}")
    return doc[key]


def _table(doc, key, where):
    rows = _need(doc, key, where)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{where}: {key!r} must be a list of rows")
    return [[UNDEFINED if v is None else _int(v, f"{where}.{key}") for v in r] for r in rows]


def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: expected an integer index, got {v!r}")
    return v


def _ints(values, where):
    if not isinstance(values, list):
        raise ParseError(f"{where}: expected a list")
    return [UNDEFINED if v is None else _int(v, where) for v in values]


def _wrap(build, where):
    """Turn construction failures (bad shapes, failed laws) into ParseError."""
    try:
        return build()
    except ParseError:
        raise
    except (SteindualError, ValueError, IndexError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _parse_carrier(doc, where):
    elements = _need(doc, "elements", where)
    tables = _need(doc, "tables", where)
    mult = _table(tables, "mult", f"{where}.tables")
    zero = doc.get("zero")
    if "add" in tables:
        add = _table(tables, "add", f"{where}.tables")
        neg = _ints(_need(tables, "neg", f"{where}.tables"), f"{where}.tables.neg")
        if zero is None:
            raise ParseError(f"{where}: a ring needs 'zero'")
        return _wrap(lambda: FiniteRing(elements, add, neg, zero, mult), where)
    return _wrap(lambda: FiniteSemigroup(elements, mult, zero), where)


def _parse_structured(doc, where):
    carrier = _parse_carrier(doc, where)
    subsets = _need(doc, "subsets", where)
    maps = _need(doc, "maps", where)
    S = _ints(_need(subsets, "S", f"{where}.subsets"), f"{where}.subsets.S")
    Z = _ints(_need(subsets, "Z", f"{where}.subsets"), f"{where}.subsets.Z")
    phi = _ints(_need(maps, "Phi", f"{where}.maps"), f"{where}.maps.Phi")
    scalars = None
    if "scalars" in doc:
        ring = _parse_carrier(_need(doc["scalars"], "ring", f"{where}.scalars"),
                              f"{where}.scalars.ring")
        action = _table(doc["scalars"], "action", f"{where}.scalars")
        scalars = Scalars(ring, tuple(tuple(r) for r in action))
    return _wrap(
        lambda: StructuredData(carrier, S, Z, phi, name=doc.get("name", ""), scalars=scalars),
        where,
    )


def _parse_category(doc, where, groupoid):
    arrows = _need(doc, "arrows", where)
    src = _ints(_need(doc, "src", where), f"{where}.src")
    rng = _ints(_need(doc, "rng", where), f"{where}.rng")
    compose = _table(doc, "compose", where)
    if groupoid:
        inv = _ints(_need(doc, "inv", where), f"{where}.inv")
        return _wrap(lambda: FiniteGroupoid(arrows, src, rng, compose, inv), where)
    return _wrap(lambda: FiniteCategory(arrows, src, rng, compose), where)


def _parse_bundle(doc, where):
    base = _parse_category(_need(doc, "base", where), f"{where}.base", True)
    total = _parse_category(_need(doc, "total", where), f"{where}.total", False)
    rho = _ints(_need(doc, "rho", where), f"{where}.rho")
    zero = _ints(_need(doc, "zero", where), f"{where}.zero")
    if doc["kind"] == "ringoid-bundle":
        fadd = _table(doc, "fiber-add", where)
        return _wrap(lambda: FiniteRingoidBundle(total, base, rho, zero, fadd), where)
    return _wrap(lambda: FiniteBundle(total, base, rho, zero), where)


def _parse_endpoint(ref, where, base_dir):
    if "document" in ref:
        doc = ref["document"]
    elif "path" in ref:
        path = Path(base_dir or ".") / ref["path"]
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"{where}: cannot read {path}: {exc}") from exc
    else:
        raise ParseError(f"{where}: needs 'document' or 'path'")
    if "sha256" in ref and ref["sha256"] != content_hash(doc):
        raise ParseError(f"{where}: content hash does not match the endpoint")
    return from_document(doc, where, base_dir)


def _parse_morphism(doc, where, base_dir):
    from .duality import SteinbergMorphism

    source = _parse_endpoint(_need(doc, "source", where), f"{where}.source", base_dir)
    target = _parse_endpoint(_need(doc, "target", where), f"{where}.target", base_dir)
    values = _ints(_need(doc, "map", where), f"{where}.map")
    if len(values) != source.n:
        raise ParseError(f"{where}.map: expected {source.n} entries, got {len(values)}")
    return SteinbergMorphism(source, target, tuple(values))


def _parse_pierce(doc, where, base_dir):
    from .duality import EtaleMorphism, PierceMorphism

    source = _parse_endpoint(_need(doc, "source", where), f"{where}.source", base_dir)
    target = _parse_endpoint(_need(doc, "target", where), f"{where}.target", base_dir)
    pairs = _table(doc, "phi", where)
    triples = _table(doc, "beta", where)
    if any(len(p) != 2 for p in pairs) or any(len(t) != 3 for t in triples):
        raise ParseError(f"{where}: phi entries are [g, h] and beta entries are [g, c, d]")
    phi = EtaleMorphism(target.base, source.base, {g: h for g, h in pairs})
    beta = {(g, c): d for g, c, d in triples}
    return PierceMorphism(source, target, phi, beta)


def from_document(doc, where="document", base_dir=None):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    kind = _need(doc, "kind", where)
    if kind not in KINDS:
        raise ParseError(f"{where}: unknown kind {kind!r}")
    if kind in ("semigroup", "ring"):
        return _parse_carrier(doc, where)
    if kind == "structured":
        return _parse_structured(doc, where)
    if kind in ("bundle", "ringoid-bundle"):
        return _parse_bundle(doc, where)
    if kind == "morphism":
        return _parse_morphism(doc, where, base_dir)
    return _parse_pierce(doc, where, base_dir)


def parse(text, base_dir=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_document(doc, base_dir=base_dir)


def load(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse(text, base_dir=path.parent)
