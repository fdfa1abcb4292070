"""JSON instance files: a quiver, a generating set of blocks, and run options.

Example::

    {
      "vertices": ["v"],
      "arrow_spaces": [{"source": "v", "target": "v", "dim": 1}],
      "generators": [
        {"name": "g1", "blocks": [{"source": "v", "target": "v", "matrix": [["-1"]]}]}
      ],
      "max_degree": 4,
      "options": {"field": "rational", "closure_cap": 1024, "stabilization_window": 2}
    }

Matrix entries are rational strings ``"p/q"`` (plain JSON integers are also
accepted), row-major, with the row index running over target coordinates.
"""

from __future__ import annotations

import json
import json.scanner
from dataclasses import dataclass
from fractions import Fraction
from json.decoder import scanstring
from pathlib import Path

from .action import Generator, HomogeneousAction
from .exactlin import QQ, Field, Matrix, format_scalar
from .quiver import Quiver, QuiverError


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 where: str | None = None):
        self.message, self.line, self.column, self.where = message, line, column, where
        loc = f"line {line}, column {column}: " if line is not None else ""
        at = f" (at {where})" if where else ""
        super().__init__(f"{loc}{message}{at}")


class _Located(str):
    """A decoded JSON string remembering the offset of its opening quote."""

    pos: int = -1


def _located_string(s, end, strict=True):
    value, new_end = scanstring(s, end, strict)
    out = _Located(value)
    out.pos = end - 1
    return out, new_end


class _LocatingDecoder(json.JSONDecoder):
    def __init__(self, **kw):
        super().__init__(**kw)
        self.parse_string = _located_string
        # the C scanner ignores parse_string overrides
        self.scan_once = json.scanner.py_make_scanner(self)


@dataclass(frozen=True)
class Options:
    field: Field = QQ
    closure_cap: int = 1024
    stabilization_window: int = 2


@dataclass(frozen=True)
class Instance:
    action: HomogeneousAction
    max_degree: int
    options: Options

    @property
    def quiver(self) -> Quiver:
        return self.action.quiver


def parse_field(spec) -> Field:
    """``"rational"``, ``"prime 5"``, ``"5"`` or an int ``5``."""
    text = str(spec).strip().lower()
    if text in ("rational", "q", "0"):
        return QQ
    if text.startswith("prime"):
        text = text[len("prime"):].strip()
    try:
        return Field(int(text))
    except ValueError:
        raise ValueError(f"field must be 'rational' or 'prime <p>' with p prime, got {spec!r}") from None


class _Parser:
    def __init__(self, text: str):
        self.text = text

    def fail(self, message: str, node=None, where: str | None = None):
        pos = getattr(node, "pos", -1)
        if pos >= 0:
            line = self.text.count("\n", 0, pos) + 1
            col = pos - self.text.rfind("\n", 0, pos)
            raise ParseError(message, line, col, where)
        raise ParseError(message, where=where)

    def get(self, obj, key, kind, where, default=...):
        if not isinstance(obj, dict):
            self.fail("expected an object", where=where)
        if key not in obj:
            if default is not ...:
                return default
            self.fail(f"missing key '{key}'", where=where)
        val = obj[key]
        if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
            self.fail(f"'{key}' must be an integer", val, f"{where}.{key}")
        if kind is not int and not isinstance(val, kind):
            self.fail(f"'{key}' has the wrong type", val, f"{where}.{key}")
        return val

    def vertex(self, raw, verts, where):
        if not isinstance(raw, (str, int)) or isinstance(raw, bool):
            self.fail("vertex ids must be strings", raw, where)
        v = str(raw)
        if v not in verts:
            self.fail(f"unknown vertex '{v}'", raw, where)
        return v

    def scalar(self, raw, field: Field, where):
        if isinstance(raw, bool) or not isinstance(raw, (str, int)):
            self.fail("matrix entries must be rational strings 'p/q' or integers", raw, where)
        try:
            value = Fraction(raw) if isinstance(raw, int) else Fraction(str(raw).strip())
        except (ValueError, ZeroDivisionError):
            self.fail(f"malformed rational {str(raw)!r}", raw, where)
        try:
            return field(value)
        except ZeroDivisionError:
            self.fail(f"{raw!s} is not defined in {field}", raw, where)

    def matrix(self, raw, field: Field, where) -> Matrix:
        if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
            self.fail("matrix must be a list of rows", where=where)
        if not raw or len({len(r) for r in raw}) != 1:
            self.fail("matrix rows must be non-empty and of equal length", where=where)
        rows = [[self.scalar(x, field, f"{where}[{i}][{j}]") for j, x in enumerate(r)]
                for i, r in enumerate(raw)]
        return Matrix(len(rows), len(rows[0]), tuple(tuple(r) for r in rows), field)

    def instance(self, doc, field_override: Field | None = None) -> Instance:
        if not isinstance(doc, dict):
            self.fail("instance must be a JSON object")
        raw_opts = self.get(doc, "options", dict, "$", default={})
        try:
            fld = field_override or parse_field(raw_opts.get("field", "rational"))
        except ValueError as exc:
            self.fail(str(exc), raw_opts.get("field"), "$.options.field")
        options = Options(
            fld,
            self.get(raw_opts, "closure_cap", int, "$.options", default=1024),
            self.get(raw_opts, "stabilization_window", int, "$.options", default=2),
        )
        raw_verts = self.get(doc, "vertices", list, "$")
        verts = []
        for k, v in enumerate(raw_verts):
            if not isinstance(v, (str, int)) or isinstance(v, bool):
                self.fail("vertex ids must be strings", v, f"$.vertices[{k}]")
            if str(v) in verts:
                self.fail(f"duplicate vertex '{v}'", v, f"$.vertices[{k}]")
            verts.append(str(v))
        dims: dict = {}
        for k, sp in enumerate(self.get(doc, "arrow_spaces", list, "$")):
            where = f"$.arrow_spaces[{k}]"
            s = self.vertex(self.get(sp, "source", object, where), verts, f"{where}.source")
            t = self.vertex(self.get(sp, "target", object, where), verts, f"{where}.target")
            d = self.get(sp, "dim", int, where)
            if d < 1:
                self.fail("arrow space dimension must be at least 1", where=f"{where}.dim")
            if (s, t) in dims:
                self.fail(f"arrow space ({s},{t}) listed twice", where=where)
            dims[(s, t)] = d
        try:
            q = Quiver(verts, dims)
        except QuiverError as exc:
            self.fail(str(exc))
        gens = []
        for k, g in enumerate(self.get(doc, "generators", list, "$")):
            where = f"$.generators[{k}]"
            name = str(self.get(g, "name", str, where, default=f"g{k + 1}"))
            blocks = {}
            for b, blk in enumerate(self.get(g, "blocks", list, where)):
                bw = f"{where}.blocks[{b}]"
                s = self.vertex(self.get(blk, "source", object, bw), verts, f"{bw}.source")
                t = self.vertex(self.get(blk, "target", object, bw), verts, f"{bw}.target")
                if (s, t) in blocks:
                    self.fail(f"generator {name} has two blocks for ({s},{t})", where=bw)
                blocks[(s, t)] = self.matrix(self.get(blk, "matrix", list, bw), fld, f"{bw}.matrix")
            vmap = self.get(g, "vertex_map", dict, where, default=None)
            gens.append(Generator(name, blocks, {str(k): str(v) for k, v in vmap.items()} if vmap else None))
        max_degree = self.get(doc, "max_degree", int, "$", default=4)
        if max_degree < 1:
            self.fail("max_degree must be at least 1", where="$.max_degree")
        return Instance(HomogeneousAction(q, tuple(gens), fld), max_degree, options)


def parse_instance(text: str, field_override: Field | None = None) -> Instance:
    try:
        doc = json.loads(text, cls=_LocatingDecoder)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return _Parser(text).instance(doc, field_override)


def load_instance(path: str | Path, field_override: Field | None = None) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"), field_override)


def instance_to_dict(inst: Instance) -> dict:
    """Inverse of :func:`parse_instance` (up to whitespace and key order)."""
    a = inst.action
    return {
        "vertices": list(a.quiver.vertices),
        "arrow_spaces": [{"source": s, "target": t, "dim": d} for (s, t), d in a.quiver.arrow_dim.items()],
        "generators": [
            {"name": g.name,
             "blocks": [{"source": s, "target": t,
                         "matrix": [[format_scalar(x) for x in row] for row in m.data]}
                        for (s, t), m in g.blocks.items()]}
            for g in a.generators
        ],
        "max_degree": inst.max_degree,
        "options": {"field": str(inst.options.field), "closure_cap": inst.options.closure_cap,
                    "stabilization_window": inst.options.stabilization_window},
    }
