"""Representation-type verdicts for a quiver and for its invariant quiver."""

from __future__ import annotations

from dataclasses import dataclass, field

from .action import GroupClosure, HomogeneousAction
from .invariants import InvariantQuiver, Table, fixed_subspace
from .quiver import (FINITE, TAME, GraphVerdict, Quiver, classify_quiver,
                     is_oriented_cycle, words_of_length)


def classify_invariant(iq: InvariantQuiver) -> GraphVerdict:
    return classify_quiver(iq.arrow_quiver())


def cycle_structure_check(iq: InvariantQuiver, original: Quiver) -> bool | None:
    """Each vertex sources and targets at most one invariant arrow; None unless ``original`` is an oriented cycle."""
    if not is_oriented_cycle(original):
        return None
    return all(iq.out_degree(v) <= 1 and iq.in_degree(v) <= 1 for v in original.vertices)


def cycle_degree_witness(a: HomogeneousAction, closure: GroupClosure,
                         table: Table | None = None) -> bool | None:
    """Every word of length ``|G| * #vertices`` on an oriented cycle is fully invariant.

    Returns None when the hypotheses do not hold (original not an oriented
    cycle, or closure incomplete).
    """
    q = a.quiver
    if not is_oriented_cycle(q) or not closure.complete:
        return None
    length = closure.order * len(q.vertices)
    for w in words_of_length(q, length):
        dec = table.get(w) if table is not None else None
        dim = dec.invariant.dim if dec is not None else fixed_subspace(a, w).dim
        if dim != w.space_dim(q):
            return False
    return True


@dataclass(frozen=True)
class PreservationReport:
    original_verdict: GraphVerdict
    invariant_verdict: GraphVerdict
    preserved: bool | None  # None when the original is wild
    cycle_structure_ok: bool | None  # None = not applicable
    caveats: tuple[str, ...] = field(default_factory=tuple)


def preservation_check(a: HomogeneousAction, iq: InvariantQuiver,
                       closure: GroupClosure | None = None,
                       original_verdict: GraphVerdict | None = None,
                       invariant_verdict: GraphVerdict | None = None) -> PreservationReport:
    """Finite stays finite, tame stays finite-or-tame.

    Verdicts on a truncation that has not stabilized are provisional for
    finite/tame (more arrows may appear) and final for wild.
    """
    orig = original_verdict or classify_quiver(a.quiver)
    inv = invariant_verdict or classify_invariant(iq)
    if orig.kind == FINITE:
        preserved = inv.kind == FINITE
    elif orig.kind == TAME:
        preserved = inv.finite_or_tame
    else:
        preserved = None

    caveats = [f"invariant quiver computed up to degree {iq.truncation_degree}"]
    if not iq.stabilized:
        caveats.append(
            f"not stabilized: irreducible invariants found within the last {iq.window} degrees; "
            "finite/tame verdicts are provisional")
    if closure is None:
        caveats.append("group order unknown: closure not computed")
    elif not closure.complete:
        caveats.append(f"finiteness unverified: group closure exceeded cap {closure.cap}")
    return PreservationReport(orig, inv, preserved, cycle_structure_check(iq, a.quiver), tuple(caveats))
