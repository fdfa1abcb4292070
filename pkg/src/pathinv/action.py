"""Vertex-fixing homogeneous automorphisms given by their degree-one blocks.

A generator assigns an invertible matrix to every nonzero arrow space
``VQ_{i,j}``; it extends multiplicatively to every path space, so the
induced map on a word ``a_1 ... a_m`` is ``block(a_m) ⊗ ... ⊗ block(a_1)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactlin import QQ, Field, Matrix, kron, to_fraction
from .quiver import Arrow, PathWord, Quiver, QuiverError


class IncompleteClosure(RuntimeError):
    """The group closure overflowed its cap; group-averaged quantities are unavailable."""


class ModularField(RuntimeError):
    """The character formula divides by |G| and needs characteristic 0."""


@dataclass(frozen=True)
class ActionError:
    kind: str  # MissingBlock | ShapeMismatch | SingularBlock | UnknownArrow | VertexPermutation
    generator: str
    arrow: Arrow | None
    detail: str = ""

    def __str__(self):
        where = f" ({self.arrow[0]},{self.arrow[1]})" if self.arrow is not None else ""
        tail = f": {self.detail}" if self.detail else ""
        return f"{self.kind} {self.generator}{where}{tail}"


class InvalidAction(ValueError):
    def __init__(self, errors: list[ActionError]):
        self.errors = errors
        super().__init__("; ".join(str(e) for e in errors))


@dataclass(frozen=True)
class Generator:
    name: str
    blocks: Mapping[Arrow, Matrix]
    # Only the identity is supported; anything else is rejected by validate().
    vertex_map: Mapping | None = None

    def block(self, arrow: Arrow) -> Matrix:
        return self.blocks[tuple(arrow)]


@dataclass(frozen=True)
class HomogeneousAction:
    quiver: Quiver
    generators: tuple[Generator, ...]
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))


def identity_generator(q: Quiver, name: str = "id", field: Field = QQ) -> Generator:
    return Generator(name, {a: Matrix.identity(d, field) for a, d in q.arrow_dim.items()})


def validate(a: HomogeneousAction) -> list[ActionError]:
    """Every problem with the action; an empty list means it is valid."""
    errors: list[ActionError] = []
    q = a.quiver
    for g in a.generators:
        if g.vertex_map and any(k != v for k, v in g.vertex_map.items()):
            errors.append(ActionError(
                "VertexPermutation", g.name, None,
                "generators must fix every vertex; vertex-permuting actions are not supported"))
        for arrow in g.blocks:
            if q.dim(*arrow) == 0:
                errors.append(ActionError("UnknownArrow", g.name, tuple(arrow),
                                          "no arrow space between these vertices"))
        for arrow, d in q.arrow_dim.items():
            if arrow not in g.blocks:
                errors.append(ActionError("MissingBlock", g.name, arrow))
                continue
            m = g.blocks[arrow]
            if m.shape != (d, d):
                errors.append(ActionError("ShapeMismatch", g.name, arrow,
                                          f"expected {d}x{d}, got {m.nrows}x{m.ncols}"))
            elif not m.is_invertible():
                errors.append(ActionError("SingularBlock", g.name, arrow))
    return errors


def require_valid(a: HomogeneousAction) -> None:
    errors = validate(a)
    if errors:
        raise InvalidAction(errors)


def act_on_path(g: Generator, w: PathWord, q: Quiver | None = None) -> Matrix:
    """Matrix of ``g`` on ``V_w`` in the coordinates where ``a_m`` is most significant."""
    if q is not None:
        w.check(q)
    try:
        blocks = [g.block(a) for a in w.arrows]
    except KeyError as exc:
        raise QuiverError(f"generator {g.name} has no block for {exc.args[0]!r}") from None
    out = blocks[-1]
    for b in reversed(blocks[:-1]):
        out = kron(out, b)
    return out


def compose(g: Generator, h: Generator, name: str | None = None) -> Generator:
    """Block-wise product: ``(g∘h)(x) = g(h(x))``."""
    return Generator(name or f"{g.name}*{h.name}", {a: g.blocks[a] @ h.blocks[a] for a in g.blocks})


def _key(g: Generator) -> tuple:
    return tuple((a, m.data) for a, m in sorted(g.blocks.items(), key=lambda kv: repr(kv[0])))


@dataclass(frozen=True)
class GroupClosure:
    elements: tuple[Generator, ...]
    complete: bool
    field: Field = QQ
    cap: int = 1024

    @property
    def order(self) -> int:
        return len(self.elements)


def close_group(a: HomogeneousAction, cap: int = 1024) -> GroupClosure:
    """Breadth-first closure of the generators under block-wise composition.

    Stops with ``complete=False`` as soon as more than ``cap`` elements are
    found.  Element equality is syntactic equality of all blocks.
    """
    require_valid(a)
    ident = identity_generator(a.quiver, "e", a.field)
    seen = {_key(ident): ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in a.generators:
            y = compose(g, x, name=f"g{len(seen)}")
            k = _key(y)
            if k in seen:
                continue
            if len(seen) >= cap:
                return GroupClosure(tuple(seen.values()), False, a.field, cap)
            seen[k] = y
            queue.append(y)
    return GroupClosure(tuple(seen.values()), True, a.field, cap)


def element_order(g: Generator, limit: int = 1024) -> int | None:
    """Smallest ``r >= 1`` with ``g^r = id``, or None if not found within ``limit``."""
    ident = _key(Generator("e", {a: Matrix.identity(m.nrows, m.field) for a, m in g.blocks.items()}))
    x = g
    for r in range(1, limit + 1):
        if _key(x) == ident:
            return r
        x = compose(g, x)
    return None


def char_dim_invariants(c: GroupClosure, w: PathWord) -> Fraction:
    """``(1/|G|) Σ_g Π_n trace(block_g(a_n))``: the dimension of ``V_w^G`` in characteristic 0."""
    if not c.complete:
        raise IncompleteClosure("closure exceeded its cap; |G| is unknown")
    if c.field.characteristic != 0:
        raise ModularField(f"averaging over G is not available in characteristic {c.field.characteristic}")
    total = Fraction(0)
    for g in c.elements:
        term = Fraction(1)
        for arrow in w.arrows:
            term *= to_fraction(g.block(arrow).trace())
        total += term
    return total / c.order
