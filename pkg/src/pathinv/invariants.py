"""Degree-truncated invariants of a complete path algebra.

For every path word ``w`` up to a degree bound the engine records

* ``V_w^G``  -- the fixed vectors of all generators,
* the composite invariants, the span of ``V_{w2}^G ⊗ V_{w1}^G`` over all
  splittings ``w = w2 w1``,
* a fixed complement of the composites (the irreducible invariants).

The irreducible invariants, grouped by endpoints and degree, are the arrows
of the quiver of the invariant algebra.  Words are processed in increasing
length so every proper subword is already decomposed when it is needed.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .action import HomogeneousAction, act_on_path, require_valid
from .exactlin import (QQ, Matrix, Subspace, complement_within, kernel,
                       kron, kron_vec)
from .quiver import PathWord, Quiver, words_of_length

log = logging.getLogger(__name__)


class TableError(KeyError):
    """A decomposition needed for a subword is missing from the table."""


class PsiIdentityError(ArithmeticError):
    """``dim V_w^G`` disagrees with the count of products of irreducibles.

    This cannot happen for a correct engine; it signals an implementation fault.
    """

    def __init__(self, word: PathWord, lhs: int, rhs: int):
        self.word, self.lhs, self.rhs = word, lhs, rhs
        super().__init__(f"psi identity fails on word {word}: dim invariants {lhs} != {rhs}")


@dataclass(frozen=True)
class InvariantDecomposition:
    word: PathWord
    invariant: Subspace
    composite: Subspace
    irreducible: Subspace


Table = Mapping[PathWord, InvariantDecomposition]


def compositions(m: int, parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``m`` (optionally with exactly ``parts`` parts).

    Parts are listed in word order: the first part covers ``a_1 ...``.
    """
    for cuts in itertools.product((False, True), repeat=m - 1):
        if parts is not None and sum(cuts) != parts - 1:
            continue
        out, run = [], 1
        for c in cuts:
            if c:
                out.append(run)
                run = 1
            else:
                run += 1
        out.append(run)
        yield tuple(out)


def split_word(w: PathWord, parts: tuple[int, ...]) -> list[PathWord]:
    """Consecutive subwords of ``w`` with the given lengths, in word order."""
    out, start = [], 0
    for p in parts:
        out.append(w.sub(start, start + p))
        start += p
    if start != len(w):
        raise ValueError(f"parts {parts} do not sum to {len(w)}")
    return out


def _entry(table: Table, w: PathWord) -> InvariantDecomposition:
    try:
        return table[w]
    except KeyError:
        raise TableError(f"no decomposition recorded for subword {w}") from None


def _product_vectors(table: Table, pieces: list[PathWord]) -> list[tuple]:
    """Kronecker products of invariant bases, last piece most significant."""
    bases = [_entry(table, p).invariant.basis for p in reversed(pieces)]
    if any(not b for b in bases):
        return []
    vectors = []
    for combo in itertools.product(*bases):
        v = combo[0]
        for u in combo[1:]:
            v = kron_vec(v, u)
        vectors.append(v)
    return vectors


def fixed_subspace(a: HomogeneousAction, w: PathWord, _matrices: list[Matrix] | None = None) -> Subspace:
    """Common fixed vectors of all generators on ``V_w``."""
    q, F = a.quiver, a.field
    w.check(q)
    n = w.space_dim(q)
    mats = _matrices if _matrices is not None else [act_on_path(g, w) for g in a.generators]
    if not mats:
        return Subspace.full(n, F)
    eye = Matrix.identity(n, F)
    stacked = mats[0] - eye
    for m in mats[1:]:
        stacked = stacked.vstack(m - eye)
    return kernel(stacked)


def composite_image(table: Table, w: PathWord) -> Subspace:
    """Span of ``V_{w2}^G ⊗ V_{w1}^G`` over all splittings ``w = w2 w1``."""
    first = _entry(table, w.sub(0, 1)).invariant
    ambient = first.ambient_dim * _dim_of_rest(table, w)
    vectors = []
    for k in range(1, len(w)):
        vectors.extend(_product_vectors(table, [w.sub(0, k), w.sub(k, len(w))]))
    return Subspace.span(vectors, ambient, first.field)


def _dim_of_rest(table: Table, w: PathWord) -> int:
    if len(w) == 1:
        return 1
    return _entry(table, w.sub(1, len(w))).invariant.ambient_dim


def irreducible_complement(invariant: Subspace, composite: Subspace) -> Subspace:
    """Fixed complement of the composite invariants inside the invariants."""
    return complement_within(composite, invariant)


def l_composite_filtration(table: Table, w: PathWord, l: int) -> Subspace:
    """``[V_w^G]^l``: span of products of invariants over all ``l``-part splittings."""
    m = len(w)
    if not 1 <= l <= m:
        raise ValueError(f"l must lie in 1..{m}, got {l}")
    if l == 1:
        return _entry(table, w).invariant
    first = _entry(table, w.sub(0, 1)).invariant
    ambient = first.ambient_dim * _dim_of_rest(table, w)
    vectors = []
    for parts in compositions(m, l):
        vectors.extend(_product_vectors(table, split_word(w, parts)))
    return Subspace.span(vectors, ambient, first.field)


@dataclass(frozen=True)
class PsiCheck:
    word: PathWord
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def psi_dimension_check(table: Table, w: PathWord) -> PsiCheck:
    """Compare ``dim V_w^G`` with ``Σ_p Π dim V_{w_k,irr}^G`` over ordered splittings ``p``."""
    m = len(w)
    irr = {}
    for i in range(m):
        for j in range(i + 1, m + 1):
            irr[i, j] = _entry(table, w.sub(i, j)).irreducible.dim
    # counts[k]: sum over splittings of the first k arrows
    counts = [1] + [0] * m
    for k in range(1, m + 1):
        counts[k] = sum(counts[j] * irr[j, k] for j in range(k))
    return PsiCheck(w, _entry(table, w).invariant.dim, counts[m])


def decompose(a: HomogeneousAction, w: PathWord, table: Table,
              _matrices: list[Matrix] | None = None) -> InvariantDecomposition:
    inv = fixed_subspace(a, w, _matrices)
    comp = composite_image(table, w) if len(w) > 1 else Subspace.zero(inv.ambient_dim, inv.field)
    return InvariantDecomposition(w, inv, comp, irreducible_complement(inv, comp))


@dataclass(frozen=True)
class InvariantQuiver:
    """Graded arrow multiplicities ``c(i, j, d)`` of the invariant algebra's quiver."""

    vertices: tuple
    graded_arrows: Mapping[tuple, int]  # (source, target, degree) -> multiplicity
    truncation_degree: int
    stabilized: bool
    window: int = 2

    def multiplicity(self, s, t, d) -> int:
        return self.graded_arrows.get((s, t, d), 0)

    def arrow_quiver(self) -> Quiver:
        """Quiver with one arrow per unit of multiplicity, degrees forgotten."""
        dims: dict = {}
        for (s, t, _), c in self.graded_arrows.items():
            dims[(s, t)] = dims.get((s, t), 0) + c
        return Quiver(self.vertices, dims)

    def out_degree(self, v) -> int:
        return sum(c for (s, _, _), c in self.graded_arrows.items() if s == v)

    def in_degree(self, v) -> int:
        return sum(c for (_, t, _), c in self.graded_arrows.items() if t == v)

    def max_arrow_degree(self) -> int:
        return max((d for (_, _, d) in self.graded_arrows), default=0)


@dataclass
class InvariantResult:
    quiver: InvariantQuiver
    table: dict[PathWord, InvariantDecomposition]
    checks: list[PsiCheck] = field(default_factory=list)
    words_by_degree: dict[int, list[PathWord]] = field(default_factory=dict)


def invariant_quiver(a: HomogeneousAction, max_degree: int, window: int = 2) -> InvariantResult:
    """Decompose every word of length ``<= max_degree`` and assemble the invariant quiver.

    Raises :class:`PsiIdentityError` on the first word whose invariant
    dimension is not reproduced by products of irreducibles.
    """
    require_valid(a)
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    q = a.quiver
    table: dict[PathWord, InvariantDecomposition] = {}
    checks: list[PsiCheck] = []
    by_degree: dict[int, list[PathWord]] = {}
    # generator matrices on the previous degree's words, reused via kron
    prev: dict[PathWord, list[Matrix]] = {}
    for n in range(1, max_degree + 1):
        words = words_of_length(q, n)
        by_degree[n] = words
        cur: dict[PathWord, list[Matrix]] = {}
        for w in words:
            if n == 1:
                mats = [g.block(w.arrows[0]) for g in a.generators]
            else:
                head = w.sub(0, n - 1)
                mats = [kron(g.block(w.arrows[-1]), m) for g, m in zip(a.generators, prev[head])]
            if n < max_degree:
                cur[w] = mats
            table[w] = decompose(a, w, table, mats)
        for w in words:
            chk = psi_dimension_check(table, w)
            checks.append(chk)
            if not chk.ok:
                raise PsiIdentityError(w, chk.lhs, chk.rhs)
        prev = cur
        log.debug("degree %d: %d words", n, len(words))

    graded: dict[tuple, int] = {}
    for w, dec in table.items():
        if dec.irreducible.dim:
            key = (w.source, w.target, len(w))
            graded[key] = graded.get(key, 0) + dec.irreducible.dim
    order = {v: k for k, v in enumerate(q.vertices)}
    graded = dict(sorted(graded.items(), key=lambda kv: (kv[0][2], order[kv[0][0]], order[kv[0][1]])))
    lo = max_degree - window + 1
    stabilized = not any(lo <= d for (_, _, d) in graded)
    iq = InvariantQuiver(q.vertices, graded, max_degree, stabilized, window)
    return InvariantResult(iq, table, checks, by_degree)


def graded_dimensions(vertices, table: Table, max_degree: int) -> dict[tuple, int]:
    """``D[n, i, j] = Σ dim V_w^G`` over words of length ``n`` from ``i`` to ``j``; ``D[0]`` is the identity."""
    D = {(n, i, j): 0 for n in range(max_degree + 1) for i in vertices for j in vertices}
    for i in vertices:
        D[0, i, i] = 1
    for w, dec in table.items():
        if len(w) <= max_degree:
            D[len(w), w.source, w.target] += dec.invariant.dim
    return D


def freeness_convolution_check(iq: InvariantQuiver, table: Table, max_degree: int) -> bool:
    """Check that the invariant dimensions are those of the tensor algebra on the irreducibles.

    ``D_n(i,j) = [n=0][i=j] + Σ_{d=1..n} Σ_k c(k,j,d) D_{n-d}(i,k)`` for all ``n <= max_degree``.
    """
    V = iq.vertices
    D = graded_dimensions(V, table, max_degree)
    for n in range(max_degree + 1):
        for i in V:
            for j in V:
                rhs = 1 if (n == 0 and i == j) else 0
                for d in range(1, n + 1):
                    for k in V:
                        c = iq.multiplicity(k, j, d)
                        if c:
                            rhs += c * D[n - d, i, k]
                if rhs != D[n, i, j]:
                    return False
    return True


@dataclass(frozen=True)
class AtLeast:
    """Order bound reported when every stored component vanishes."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


def degree_layout(q: Quiver, n: int) -> list[tuple[object, int, int]]:
    """Coordinate blocks ``(word_or_vertex, offset, size)`` of the degree-``n`` component."""
    if n == 0:
        return [(v, k, 1) for k, v in enumerate(q.vertices)]
    out, off = [], 0
    for w in words_of_length(q, n):
        d = w.space_dim(q)
        out.append((w, off, d))
        off += d
    return out


@dataclass(frozen=True)
class TruncatedElement:
    """Element of the complete path algebra known up to degree ``len(components) - 1``."""

    components: tuple[tuple, ...]

    @property
    def truncation_degree(self) -> int:
        return len(self.components) - 1

    @classmethod
    def zero(cls, q: Quiver, max_degree: int, field=None) -> TruncatedElement:
        z = (field or QQ).zero
        return cls(tuple(
            (z,) * sum(size for _, _, size in degree_layout(q, n)) for n in range(max_degree + 1)))

    @classmethod
    def from_word(cls, q: Quiver, max_degree: int, w: PathWord, vector, field=None) -> TruncatedElement:
        """Homogeneous element supported on the single path space ``V_w``."""
        base = cls.zero(q, max_degree, field)
        n = len(w)
        comps = list(base.components)
        row = list(comps[n])
        for word, off, size in degree_layout(q, n):
            if word == w:
                if len(vector) != size:
                    raise ValueError(f"vector of length {len(vector)} for a space of dimension {size}")
                row[off:off + size] = vector
                break
        else:
            raise ValueError(f"word {w} does not occur in degree {n}")
        comps[n] = tuple(row)
        return cls(tuple(comps))


def order_of(x: TruncatedElement) -> int | AtLeast:
    """Lowest degree with a nonzero component; ``AtLeast(N+1)`` if none is stored."""
    for n, comp in enumerate(x.components):
        if any(comp):
            return n
    return AtLeast(x.truncation_degree + 1)
