"""Quivers given by arrow-space dimensions, path words, and graph-type recognition."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod
from typing import Hashable, Mapping

import networkx as nx

Vertex = Hashable
Arrow = tuple  # (source, target)

FINITE, TAME, WILD = "finite", "tame", "wild"
_SEVERITY = {FINITE: 0, TAME: 1, WILD: 2}


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    """Vertex list plus ``dim VQ_{i,j}`` for each ordered pair with arrows.

    A basis of each arrow space is implicit (standard coordinates), so a
    quiver with ``arrow_dim[(i, j)] == 3`` has three parallel arrows i -> j.
    """

    vertices: tuple
    arrow_dim: Mapping[Arrow, int]

    def __init__(self, vertices, arrow_dim=None):
        verts = tuple(vertices)
        if len(set(verts)) != len(verts):
            raise QuiverError(f"duplicate vertices in {verts!r}")
        dims = {}
        for (s, t), d in dict(arrow_dim or {}).items():
            if s not in verts or t not in verts:
                raise QuiverError(f"arrow ({s!r}, {t!r}) uses an undeclared vertex")
            if not isinstance(d, int) or d < 0:
                raise QuiverError(f"arrow space ({s!r}, {t!r}) has invalid dimension {d!r}")
            if d:
                dims[(s, t)] = d
        order = {v: k for k, v in enumerate(verts)}
        dims = dict(sorted(dims.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrow_dim", dims)

    def __hash__(self):
        return hash((self.vertices, tuple(self.arrow_dim.items())))

    def index(self, v: Vertex) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise QuiverError(f"unknown vertex {v!r}") from None

    def dim(self, s: Vertex, t: Vertex) -> int:
        return self.arrow_dim.get((s, t), 0)

    @property
    def arrows(self) -> list[Arrow]:
        return list(self.arrow_dim)

    def out_arrows(self, v: Vertex) -> list[Arrow]:
        return [a for a in self.arrow_dim if a[0] == v]

    def in_arrows(self, v: Vertex) -> list[Arrow]:
        return [a for a in self.arrow_dim if a[1] == v]

    def dim_matrix(self) -> list[list[int]]:
        """``D[j][i] = dim VQ_{i,j}`` (column = source, row = target)."""
        n = len(self.vertices)
        D = [[0] * n for _ in range(n)]
        for (s, t), d in self.arrow_dim.items():
            D[self.index(t)][self.index(s)] = d
        return D


@dataclass(frozen=True)
class PathWord:
    """Composable word ``a_1, ..., a_m`` denoting ``V_{a_m} ⊗ ... ⊗ V_{a_1}``."""

    arrows: tuple

    def __post_init__(self):
        arrows = tuple(tuple(a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if not arrows:
            raise QuiverError("a path word needs at least one arrow")
        for a, b in zip(arrows, arrows[1:]):
            if a[1] != b[0]:
                raise QuiverError(f"arrows {a!r} and {b!r} do not compose")

    @property
    def source(self) -> Vertex:
        return self.arrows[0][0]

    @property
    def target(self) -> Vertex:
        return self.arrows[-1][1]

    def __len__(self) -> int:
        return len(self.arrows)

    def vertex_sequence(self) -> tuple:
        return (self.source,) + tuple(a[1] for a in self.arrows)

    def space_dim(self, q: Quiver) -> int:
        return prod(q.dim(*a) for a in self.arrows)

    def check(self, q: Quiver) -> None:
        for a in self.arrows:
            if q.dim(*a) < 1:
                raise QuiverError(f"word uses ({a[0]!r}, {a[1]!r}) which carries no arrows")

    def sub(self, start: int, stop: int) -> PathWord:
        """Consecutive subword ``a_{start+1} ... a_{stop}`` (0-based slice)."""
        return PathWord(self.arrows[start:stop])

    def __str__(self):
        return "-".join(str(v) for v in self.vertex_sequence())


def enumerate_paths(q: Quiver, i: Vertex, j: Vertex, n: int) -> list[PathWord]:
    """All composable words of length ``n`` from ``i`` to ``j``.

    Ordered lexicographically by vertex sequence, vertices compared by their
    position in ``q.vertices``.
    """
    q.index(i)
    q.index(j)
    if n < 1:
        raise ValueError("path length must be at least 1")
    succ = {v: [t for t in q.vertices if q.dim(v, t)] for v in q.vertices}
    out: list[PathWord] = []

    def walk(v, seq, remaining):
        if remaining == 0:
            if v == j:
                out.append(PathWord(tuple(zip(seq, seq[1:]))))
            return
        for t in succ[v]:
            walk(t, seq + [t], remaining - 1)

    walk(i, [i], n)
    return out


def words_of_length(q: Quiver, n: int) -> list[PathWord]:
    """Every word of length ``n``, grouped by (source, target) in vertex order."""
    return [w for i in q.vertices for j in q.vertices for w in enumerate_paths(q, i, j, n)]


def underlying_graph(q: Quiver) -> nx.MultiGraph:
    """Undirected multigraph: ``dim VQ_{i,j}`` parallel edges per pair, loops kept."""
    g = nx.MultiGraph()
    g.add_nodes_from(q.vertices)
    for (s, t), d in q.arrow_dim.items():
        for _ in range(d):
            g.add_edge(s, t)
    return g


@dataclass(frozen=True)
class ComponentVerdict:
    kind: str  # FINITE | TAME | WILD
    family: str | None  # "A", "D", "E", "~A", "~D", "~E"
    rank: int | None
    vertices: tuple = ()
    oriented_cycle: bool = False

    @property
    def label(self) -> str:
        if self.family is None:
            return "Wild"
        if self.family.startswith("~"):
            name = f"{_TILDE[self.family[1]]}{self.rank}"
        else:
            name = f"{self.family}{self.rank}"
        return f"oriented cycle / {name}" if self.oriented_cycle else name


_TILDE = {"A": "\u00c3", "D": "D\u0303", "E": "\u1ebc"}


@dataclass(frozen=True)
class GraphVerdict:
    """Whole-graph verdict: the worst of the per-component verdicts."""

    components: tuple[ComponentVerdict, ...] = field(default_factory=tuple)

    @property
    def kind(self) -> str:
        if not self.components:
            return FINITE
        return max((c.kind for c in self.components), key=_SEVERITY.__getitem__)

    @property
    def finite_or_tame(self) -> bool:
        return self.kind in (FINITE, TAME)

    def summary(self) -> str:
        kind = self.kind
        if kind == WILD:
            return "Wild"
        labels = [c.label for c in self.components]
        return f"{kind.capitalize()} ({', '.join(labels)})"


def severity(kind: str) -> int:
    return _SEVERITY[kind]


def _tree_arms(simple: nx.Graph, center) -> list[int]:
    """Lengths (in vertices) of the branches leaving ``center`` in a tree with max degree 3."""
    arms = []
    for nb in simple.neighbors(center):
        length, prev, cur = 1, center, nb
        while True:
            nxt = [x for x in simple.neighbors(cur) if x != prev]
            if len(nxt) != 1:
                if nxt:
                    return []  # another branch point
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def _classify_component(g: nx.MultiGraph) -> ComponentVerdict:
    verts = tuple(g.nodes)
    n = len(verts)
    loops = nx.number_of_selfloops(g)
    edge_mult = Counter(frozenset(e) for e in g.edges() if e[0] != e[1])
    if loops:
        if n == 1 and loops == 1:
            return ComponentVerdict(TAME, "~A", 0, verts)
        return ComponentVerdict(WILD, None, None, verts)
    if edge_mult and max(edge_mult.values()) >= 2:
        if n == 2 and g.number_of_edges() == 2:
            return ComponentVerdict(TAME, "~A", 1, verts)
        return ComponentVerdict(WILD, None, None, verts)

    simple = nx.Graph(g)
    m = simple.number_of_edges()
    degrees = Counter(d for _, d in simple.degree())
    if m == n - 1:
        if n == 1 or max(degrees) <= 2:
            return ComponentVerdict(FINITE, "A", n, verts)
        if degrees.get(3, 0) == 1 and max(degrees) == 3:
            center = next(v for v, d in simple.degree() if d == 3)
            arms = _tree_arms(simple, center)
            if arms[:2] == [1, 1]:
                return ComponentVerdict(FINITE, "D", n, verts)
            if arms == [1, 2, 2]:
                return ComponentVerdict(FINITE, "E", 6, verts)
            if arms == [1, 2, 3]:
                return ComponentVerdict(FINITE, "E", 7, verts)
            if arms == [1, 2, 4]:
                return ComponentVerdict(FINITE, "E", 8, verts)
            if arms == [2, 2, 2]:
                return ComponentVerdict(TAME, "~E", 6, verts)
            if arms == [1, 3, 3]:
                return ComponentVerdict(TAME, "~E", 7, verts)
            if arms == [1, 2, 5]:
                return ComponentVerdict(TAME, "~E", 8, verts)
            return ComponentVerdict(WILD, None, None, verts)
        if max(degrees) == 4 and n == 5:
            return ComponentVerdict(TAME, "~D", 4, verts)
        if max(degrees) == 3 and degrees[3] == 2:
            # ~D_{n-1}: two branch points, each carrying two leaves.
            branch = [v for v, d in simple.degree() if d == 3]
            if all(sum(1 for x in simple.neighbors(b) if simple.degree(x) == 1) == 2 for b in branch):
                return ComponentVerdict(TAME, "~D", n - 1, verts)
        return ComponentVerdict(WILD, None, None, verts)
    if m == n and set(degrees) == {2}:
        return ComponentVerdict(TAME, "~A", n - 1, verts)
    return ComponentVerdict(WILD, None, None, verts)


def classify_graph(g: nx.MultiGraph) -> GraphVerdict:
    """Dynkin (finite) / Euclidean (tame) / wild verdict per connected component."""
    comps = [g.subgraph(c).copy() for c in nx.connected_components(g)]
    order = {v: k for k, v in enumerate(g.nodes)}
    comps.sort(key=lambda c: min(order[v] for v in c.nodes))
    return GraphVerdict(tuple(_classify_component(c) for c in comps))


def is_oriented_cycle(q: Quiver) -> bool:
    """Connected, and each vertex has exactly one outgoing and one incoming dim-1 arrow space."""
    if not q.vertices:
        return False
    for v in q.vertices:
        out, inc = q.out_arrows(v), q.in_arrows(v)
        if len(out) != 1 or len(inc) != 1 or q.arrow_dim[out[0]] != 1 or q.arrow_dim[inc[0]] != 1:
            return False
    return nx.is_connected(underlying_graph(q))


def induced_subquiver(q: Quiver, vertices) -> Quiver:
    keep = [v for v in q.vertices if v in set(vertices)]
    return Quiver(keep, {a: d for a, d in q.arrow_dim.items() if a[0] in keep and a[1] in keep})


def classify_quiver(q: Quiver) -> GraphVerdict:
    """``classify_graph`` on the underlying graph, flagging oriented-cycle components."""
    verdict = classify_graph(underlying_graph(q))
    comps = []
    for c in verdict.components:
        if c.kind == TAME and c.family == "~A" and is_oriented_cycle(induced_subquiver(q, c.vertices)):
            c = ComponentVerdict(c.kind, c.family, c.rank, c.vertices, oriented_cycle=True)
        comps.append(c)
    return GraphVerdict(tuple(comps))
