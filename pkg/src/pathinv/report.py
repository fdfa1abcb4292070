"""Run the full pipeline on an instance and serialize the results."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

from .action import GroupClosure, char_dim_invariants, close_group
from .exactlin import format_scalar
from .instance import Instance, instance_to_dict
from .invariants import (InvariantQuiver, InvariantResult, freeness_convolution_check,
                         graded_dimensions, invariant_quiver)
from .quiver import GraphVerdict, classify_quiver
from .reptype import PreservationReport, classify_invariant, cycle_degree_witness, preservation_check

NOT_APPLICABLE = "not-applicable"


@dataclass
class Computation:
    instance: Instance
    result: InvariantResult
    closure: GroupClosure
    original_verdict: GraphVerdict
    invariant_verdict: GraphVerdict
    preservation: PreservationReport
    freeness_ok: bool
    cycle_witness: bool | None
    char_dims: dict  # word -> Fraction, empty when the oracle is skipped
    oracle_note: str | None
    timings: dict


def run(inst: Instance, max_degree: int | None = None) -> Computation:
    """Validation, closure, invariants, classification and cross-checks."""
    N = max_degree or inst.max_degree
    a = inst.action
    t = {}
    t0 = time.perf_counter()
    closure = close_group(a, inst.options.closure_cap)
    t["closure"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    result = invariant_quiver(a, N, inst.options.stabilization_window)
    t["invariants"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    orig = classify_quiver(a.quiver)
    inv = classify_invariant(result.quiver)
    pres = preservation_check(a, result.quiver, closure, orig, inv)
    freeness = freeness_convolution_check(result.quiver, result.table, N)
    witness = None
    if closure.complete and closure.order * len(a.quiver.vertices) <= N:
        witness = cycle_degree_witness(a, closure, result.table)
    t["checks"] = time.perf_counter() - t0

    char_dims, note = {}, None
    if not closure.complete:
        note = f"skipped: group closure exceeded cap {inst.options.closure_cap}"
    elif a.field.characteristic != 0:
        note = f"skipped: character formula needs characteristic 0, field is {a.field}"
    else:
        t0 = time.perf_counter()
        char_dims = {w: char_dim_invariants(closure, w) for w in result.table}
        t["oracle"] = time.perf_counter() - t0
    return Computation(inst, result, closure, orig, inv, pres, freeness, witness, char_dims, note, t)


def verdict_to_dict(v: GraphVerdict) -> dict:
    return {
        "kind": v.kind,
        "summary": v.summary(),
        "components": [
            {"kind": c.kind, "family": c.family, "rank": c.rank, "label": c.label,
             "vertices": list(c.vertices), "oriented_cycle": c.oriented_cycle}
            for c in v.components
        ],
    }


def invariant_quiver_to_dict(iq: InvariantQuiver) -> dict:
    return {
        "vertices": list(iq.vertices),
        "arrows": [{"source": s, "target": t, "degree": d, "multiplicity": c}
                   for (s, t, d), c in iq.graded_arrows.items()],
        "truncation_degree": iq.truncation_degree,
        "stabilized": iq.stabilized,
        "stabilization_window": iq.window,
    }


def _na(x):
    return NOT_APPLICABLE if x is None else x


def build_report(comp: Computation, timings: bool = False) -> dict:
    res, N = comp.result, comp.result.quiver.truncation_degree
    checks = {c.word: c for c in res.checks}
    rows = []
    mismatches = 0
    for n in range(1, N + 1):
        for w in res.words_by_degree[n]:
            dec = res.table[w]
            row = {
                "word": str(w),
                "length": n,
                "space_dim": dec.invariant.ambient_dim,
                "dim_invariant": dec.invariant.dim,
                "dim_composite": dec.composite.dim,
                "dim_irreducible": dec.irreducible.dim,
                "psi_lhs": checks[w].lhs,
                "psi_rhs": checks[w].rhs,
            }
            if comp.char_dims:
                cd = comp.char_dims[w]
                row["char_dim"] = format_scalar(cd)
                mismatches += cd != dec.invariant.dim
            rows.append(row)
    D = graded_dimensions(res.quiver.vertices, res.table, N)
    by_degree = [sum(D[n, i, j] for i in res.quiver.vertices for j in res.quiver.vertices)
                 for n in range(N + 1)]
    pres = comp.preservation
    report = {
        "instance": instance_to_dict(comp.instance) | {"max_degree": N},
        "words": rows,
        "invariant_dims_by_degree": by_degree,
        "invariant_quiver": invariant_quiver_to_dict(res.quiver),
        "verdicts": {"original": verdict_to_dict(comp.original_verdict),
                     "invariant": verdict_to_dict(comp.invariant_verdict)},
        "preservation": {
            "preserved": _na(pres.preserved),
            "cycle_structure_ok": _na(pres.cycle_structure_ok),
            "caveats": list(pres.caveats),
        },
        "closure": {"order": comp.closure.order if comp.closure.complete else None,
                    "elements_found": comp.closure.order,
                    "complete": comp.closure.complete,
                    "cap": comp.closure.cap},
        "checks": {
            "psi_identity": {"words": len(res.checks), "failures": sum(not c.ok for c in res.checks)},
            "freeness_convolution": comp.freeness_ok,
            "cycle_degree_witness": _na(comp.cycle_witness),
        },
        "oracle": ({"status": "checked", "compared": len(comp.char_dims), "mismatches": mismatches}
                   if comp.char_dims else {"status": "skipped", "note": comp.oracle_note}),
    }
    if timings:
        report["timings"] = {k: round(v, 6) for k, v in comp.timings.items()}
    return report


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def to_dot(iq: InvariantQuiver) -> str:
    """Graphviz source, one edge per (source, target, degree) labelled with the multiplicity."""
    def q(v):
        return json.dumps(str(v), ensure_ascii=False)

    lines = ["digraph invariant_quiver {"]
    lines += [f"  {q(v)};" for v in iq.vertices]
    for (s, t, d), c in iq.graded_arrows.items():
        lines.append(f"  {q(s)} -> {q(t)} [label=\"d={d} ×{c}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _count(n: int, one: str, many: str | None = None) -> str:
    return f"{n} {one if n == 1 else (many or one + 's')}"


def text_summary(comp: Computation) -> str:
    iq = comp.result.quiver
    out = [
        f"field: {comp.instance.action.field}   max degree: {iq.truncation_degree}",
        f"group: order {comp.closure.order}" if comp.closure.complete
        else f"group: closure incomplete (> {comp.closure.cap} elements)",
        "invariant quiver arrows:",
    ]
    if not iq.graded_arrows:
        out.append("  (none)")
    for (s, t, d), c in iq.graded_arrows.items():
        out.append(f"  {s} -> {t}  d={d} ×{c}")
    out.append(f"stabilized: {'yes' if iq.stabilized else 'no'}")
    out.append(f"original:  {comp.original_verdict.summary()}")
    out.append(f"invariant: {comp.invariant_verdict.summary()}")
    pres = comp.preservation.preserved
    out.append(f"preserved: {NOT_APPLICABLE if pres is None else pres}")
    out.append(f"psi identity: {_count(len(comp.result.checks), 'word')} ok; freeness check: {comp.freeness_ok}")
    if comp.char_dims:
        bad = sum(comp.char_dims[w] != d.invariant.dim for w, d in comp.result.table.items())
        out.append(f"character oracle: {_count(len(comp.char_dims), 'word')}, {_count(bad, 'mismatch', 'mismatches')}")
    else:
        out.append(f"character oracle: {comp.oracle_note}")
    for c in comp.preservation.caveats:
        out.append(f"caveat: {c}")
    return "\n".join(out)
