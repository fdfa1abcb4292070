"""Small named instances and random instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .action import Generator, HomogeneousAction
from .exactlin import QQ, Field, Matrix
from .quiver import Quiver


def scalar_action(q: Quiver, scalars: dict, field: Field = QQ, name: str = "g") -> HomogeneousAction:
    """One generator acting on each dim-1 arrow space by the given scalar (default 1)."""
    blocks = {}
    for a, d in q.arrow_dim.items():
        if d != 1:
            raise ValueError(f"arrow space {a} has dimension {d}; scalar_action needs dim 1")
        blocks[a] = Matrix.from_rows([[scalars.get(a, 1)]], field=field)
    return HomogeneousAction(q, (Generator(name, blocks),), field)


def trivial_action(q: Quiver, field: Field = QQ) -> HomogeneousAction:
    return HomogeneousAction(
        q, (Generator("id", {a: Matrix.identity(d, field) for a, d in q.arrow_dim.items()}),), field)


def sign_loop() -> HomogeneousAction:
    """One vertex, one loop, generator ``loop -> -loop``."""
    q = Quiver(["v"], {("v", "v"): 1})
    return scalar_action(q, {("v", "v"): -1})


def swap_loops() -> HomogeneousAction:
    """One vertex, a 2-dimensional loop space, generator swapping the two loops."""
    q = Quiver(["v"], {("v", "v"): 2})
    return HomogeneousAction(q, (Generator("swap", {("v", "v"): Matrix.from_rows([[0, 1], [1, 0]])}),))


def two_cycle() -> HomogeneousAction:
    """``a: 1 -> 2`` and ``b: 2 -> 1`` with ``a -> -a``, ``b -> b``."""
    q = Quiver(["1", "2"], {("1", "2"): 1, ("2", "1"): 1})
    return scalar_action(q, {("1", "2"): -1, ("2", "1"): 1})


def oriented_cycle(n: int) -> Quiver:
    verts = [str(k) for k in range(1, n + 1)]
    return Quiver(verts, {(verts[k], verts[(k + 1) % n]): 1 for k in range(n)})


def linear_a(n: int) -> Quiver:
    verts = [str(k) for k in range(1, n + 1)]
    return Quiver(verts, {(verts[k], verts[k + 1]): 1 for k in range(n - 1)})


def signed_permutation(d: int, rng: random.Random, field: Field = QQ) -> Matrix:
    perm = list(range(d))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(d)]
    return Matrix.from_rows(
        [[signs[i] if perm[i] == j else 0 for j in range(d)] for i in range(d)], field=field)


def random_quiver(rng: random.Random, max_vertices: int = 3, max_dim: int = 2,
                  density: float = 0.5) -> Quiver:
    n = rng.randint(1, max_vertices)
    verts = [str(k) for k in range(1, n + 1)]
    dims = {}
    for s in verts:
        for t in verts:
            if rng.random() < density:
                dims[(s, t)] = rng.randint(1, max_dim)
    if not dims:
        s, t = rng.choice(verts), rng.choice(verts)
        dims[(s, t)] = rng.randint(1, max_dim)
    return Quiver(verts, dims)


def random_signed_instance(rng: random.Random, max_vertices: int = 3, max_dim: int = 2,
                           max_generators: int = 2, density: float = 0.5) -> HomogeneousAction:
    """Random quiver with 1..max_generators generators built from signed permutation blocks."""
    q = random_quiver(rng, max_vertices, max_dim, density)
    gens = tuple(
        Generator(f"g{k + 1}", {a: signed_permutation(d, rng) for a, d in q.arrow_dim.items()})
        for k in range(rng.randint(1, max_generators))
    )
    return HomogeneousAction(q, gens)


@dataclass(frozen=True)
class NamedCase:
    name: str
    action: HomogeneousAction
    order: int


# F_13 contains 3 (order 3) and 5, 8 = 5^-1 (order 4).
_F13 = Field(13)


def cycle_cases() -> list[NamedCase]:
    """Cyclic actions on oriented cycles of length 1..3 with group orders 1..4.

    Over Q a dim-1 block of finite order is +-1, so orders 3 and 4 use F_13.
    """
    cases = []
    for n in (1, 2, 3):
        q = oriented_cycle(n)
        first = q.arrows[0]
        cases.append(NamedCase(f"C{n}-trivial", trivial_action(q), 1))
        cases.append(NamedCase(f"C{n}-sign-one", scalar_action(q, {first: -1}), 2))
        cases.append(NamedCase(f"C{n}-sign-all", scalar_action(q, {a: -1 for a in q.arrows}), 2))
        cases.append(NamedCase(f"C{n}-order3-F13", scalar_action(q, {first: 3}, _F13), 3))
        cases.append(NamedCase(f"C{n}-order4-F13", scalar_action(q, {first: 5}, _F13), 4))
        if n >= 2:
            second = q.arrows[1]
            cases.append(NamedCase(f"C{n}-order4-balanced-F13",
                                   scalar_action(q, {first: 5, second: 8}, _F13), 4))
    return cases
