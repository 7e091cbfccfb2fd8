"""JSON wire formats for every structure the command line consumes.

Documents carry a ``kind`` tag; frames may be referenced inline, by file
path, or by the shorthand ``chain:N`` / ``bool:K``.  Frame element values
are written as labels (``"m"``) or as raw indices.  Parse failures carry
the line/column of the offending JSON.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .frame import DEFAULT_CARRIER_CAP, Frame, boolean_frame, chain_frame, frame_from_json, product_frame
from .fuzzy_order import FuzzySubset, LOrderedSet
from .groups import FiniteGroup, FiniteHom, FreeAbelian, LinearHom, RegionMap, TableMap, Window
from .ogroup import LOrderedGroup


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None, path=None):
        self.line, self.col, self.path = line, col, path
        where = f" at line {line}, column {col}" if line is not None else ""
        src = f" in {path}" if path else ""
        super().__init__(f"{message}{where}{src}")


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, path)


def parse_frame_ref(ref, cap: int = DEFAULT_CARRIER_CAP) -> Frame:
    """``chain:N``, ``bool:K``, ``product:A,B``, a file path, or an inline
    frame document."""
    if isinstance(ref, Frame):
        return ref
    if isinstance(ref, dict):
        return frame_from_json(ref, cap)
    if not isinstance(ref, str):
        raise ParseError(f"bad frame reference {ref!r}")
    if ref.startswith("chain:"):
        return chain_frame(int(ref.split(":", 1)[1]), cap)
    if ref.startswith("bool:"):
        return boolean_frame(int(ref.split(":", 1)[1]), cap)
    if ref.startswith("product:"):
        a, b = ref.split(":", 1)[1].split(",", 1)
        return product_frame(parse_frame_ref(a, cap), parse_frame_ref(b, cap), cap)
    if os.path.exists(ref):
        return frame_from_json(load_json(ref), cap)
    raise ParseError(f"cannot resolve frame reference {ref!r}")


def parse_window(spec, rank: int) -> Window:
    if isinstance(spec, Window):
        return spec
    if isinstance(spec, int):
        return Window.symmetric(spec, rank)
    if isinstance(spec, dict):
        return Window(tuple(spec["lo"]), tuple(spec["hi"]))
    raise ParseError(f"bad window {spec!r}")


def parse_value(frame: Frame, v) -> int:
    return frame.element_index(v)


def parse_element(spec, backend):
    """Group element: an index for finite groups, a comma string or list of
    ints for free abelian ones."""
    if isinstance(backend, FiniteGroup):
        return int(spec)
    if isinstance(spec, (list, tuple)):
        vec = tuple(int(c) for c in spec)
    else:
        vec = tuple(int(c) for c in str(spec).split(","))
    if len(vec) != backend.rank:
        raise ParseError(f"element {spec!r} has rank {len(vec)}, "
                         f"expected {backend.rank}")
    return vec


def _parse_point_key(key, backend):
    if isinstance(backend, FiniteGroup) or backend is None:
        return int(key)
    return parse_element(key, backend)


def parse_region_rules(doc: dict, frame: Frame, rank: int) -> RegionMap:
    rules = []
    for rule in doc.get("rules", []):
        atoms = []
        for coeffs, rhs, op in rule["ineqs"]:
            atoms.append((tuple(coeffs), tuple(rhs) if op == "mod" else rhs, op))
        rules.append((atoms, parse_value(frame, rule["value"])))
    return RegionMap(rank, rules, parse_value(frame, doc.get("default", frame.bottom)))


def parse_cone(doc: dict, frame: Frame, backend):
    if doc.get("kind") not in ("cone", "lsubgroup"):
        raise ParseError(f"expected a cone/lsubgroup document, got {doc.get('kind')!r}")
    if "rules" in doc:
        if not isinstance(backend, FreeAbelian):
            raise ParseError("region rules need a free abelian backend")
        return parse_region_rules(doc, frame, backend.rank)
    values = doc["values"]
    if isinstance(values, list):
        return TableMap([parse_value(frame, v) for v in values])
    table = {_parse_point_key(k, backend): parse_value(frame, v)
             for k, v in values.items()}
    default = doc.get("default")
    return TableMap(table, None if default is None else parse_value(frame, default))


def parse_backend(doc: dict):
    be = doc.get("backend", {})
    if "finite" in be:
        return FiniteGroup(be["finite"]["cayley"])
    if "free_abelian" in be:
        return FreeAbelian(int(be["free_abelian"]["rank"]))
    raise ParseError("group document needs backend.finite or backend.free_abelian")


def parse_group(doc: dict, default_frame: Frame | None = None) -> LOrderedGroup:
    if doc.get("kind") != "group":
        raise ParseError(f"expected kind 'group', got {doc.get('kind')!r}")
    backend = parse_backend(doc)
    frame = parse_frame_ref(doc["frame"]) if "frame" in doc else default_frame
    if frame is None:
        raise ParseError("group document needs a frame (inline or --frame)")
    if "e" in doc:
        if not isinstance(backend, FiniteGroup):
            raise ParseError("explicit e tables need a finite backend")
        table = [[parse_value(frame, v) for v in row] for row in doc["e"]]
        return LOrderedGroup(backend, frame, e_table=table)
    if "cone" in doc:
        return LOrderedGroup(backend, frame,
                             cone=parse_cone(doc["cone"], frame, backend))
    raise ParseError("group document needs an 'e' table or a 'cone'")


def parse_order(doc: dict, default_frame: Frame | None = None) -> LOrderedSet:
    if doc.get("kind") != "lorder":
        raise ParseError(f"expected kind 'lorder', got {doc.get('kind')!r}")
    frame = parse_frame_ref(doc["frame"]) if "frame" in doc else default_frame
    if frame is None:
        raise ParseError("order document needs a frame (inline or --frame)")
    e = [[parse_value(frame, v) for v in row] for row in doc["e"]]
    return LOrderedSet(frame, e)


def parse_subset(doc: dict, frame: Frame, backend=None) -> FuzzySubset:
    if doc.get("kind") != "fsubset":
        raise ParseError(f"expected kind 'fsubset', got {doc.get('kind')!r}")
    return FuzzySubset(frame, {_parse_point_key(k, backend): parse_value(frame, v)
                               for k, v in doc.get("entries", {}).items()})


def parse_hom(doc: dict):
    if doc.get("kind") != "hom":
        raise ParseError(f"expected kind 'hom', got {doc.get('kind')!r}")
    if "matrix" in doc:
        return LinearHom(doc["matrix"])
    if "map" in doc:
        return FiniteHom(doc["map"])
    raise ParseError("hom document needs 'matrix' or 'map'")


def parse_structure(path: str, default_frame: Frame | None = None):
    """Dispatch a file by its kind tag."""
    doc = load_json(path)
    kind = doc.get("kind")
    if kind == "frame":
        return frame_from_json(doc)
    if kind == "group":
        return parse_group(doc, default_frame)
    if kind == "lorder":
        return parse_order(doc, default_frame)
    if kind == "hom":
        return parse_hom(doc)
    raise ParseError(f"unknown document kind {kind!r}", path=path)
