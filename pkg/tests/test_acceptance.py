"""Acceptance gate: one test per criterion, each timed against its budget.

Every check is an exact equality. A PASS/FAIL line per criterion is printed
immediately (visible with ``-s``) and again in the terminal summary.
"""

import random
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE
from pathinv.action import char_dim_invariants, close_group
from pathinv.catalog import (cycle_cases, random_quiver, random_signed_instance, sign_loop,
                             swap_loops, trivial_action, two_cycle)
from pathinv.invariants import freeness_convolution_check, invariant_quiver
from pathinv.quiver import FINITE, TAME
from pathinv.reptype import (classify_invariant, cycle_degree_witness, cycle_structure_check,
                             preservation_check)

FUZZ_SEED = 20240611
FUZZ_COUNT = 120
FUZZ_DEGREE = 5


@contextmanager
def criterion(name, budget):
    t0 = time.perf_counter()
    try:
        yield
    except AssertionError as exc:
        elapsed = time.perf_counter() - t0
        ACCEPTANCE.append((name, False, f"{elapsed:.2f}s  {exc}"))
        print(f"FAIL  {name}  {elapsed:.2f}s  {exc}")
        raise
    elapsed = time.perf_counter() - t0
    ok = elapsed < budget
    detail = f"{elapsed:.2f}s (budget {budget:g}s)"
    ACCEPTANCE.append((name, ok, detail))
    print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
    assert ok, f"{name} took {elapsed:.2f}s, budget {budget}s"


def dims_by_degree(res, max_degree):
    out = [len(res.quiver.vertices)]  # degree 0: one idempotent per vertex
    for n in range(1, max_degree + 1):
        out.append(sum(res.table[w].invariant.dim for w in res.words_by_degree[n]))
    return out


def irreducible_by_degree(res, max_degree):
    return [sum(res.table[w].irreducible.dim for w in res.words_by_degree[n])
            for n in range(1, max_degree + 1)]


def oracle_mismatches(a, res):
    c = close_group(a)
    assert c.complete
    return [w for w, dec in res.table.items() if char_dim_invariants(c, w) != dec.invariant.dim]


def fuzz_instances():
    rng = random.Random(FUZZ_SEED)
    return [random_signed_instance(rng, max_vertices=3, max_dim=2, max_generators=2)
            for _ in range(FUZZ_COUNT)]


def test_c1_sign_loop():
    with criterion("C1 sign loop N=4", 1.0):
        a = sign_loop()
        res = invariant_quiver(a, 4)
        assert dims_by_degree(res, 4) == [1, 0, 1, 0, 1]
        assert res.quiver.graded_arrows == {("v", "v", 2): 1}
        r = preservation_check(a, res.quiver, close_group(a))
        assert r.original_verdict.kind == TAME and r.invariant_verdict.kind == TAME
        assert r.preserved is True


def test_c2_swap():
    with criterion("C2 swap N=6", 5.0):
        res = invariant_quiver(swap_loops(), 6)
        assert dims_by_degree(res, 6)[1:] == [2 ** (n - 1) for n in range(1, 7)]
        assert irreducible_by_degree(res, 6) == [1] * 6
        assert freeness_convolution_check(res.quiver, res.table, 6)


def test_c3_two_cycle():
    with criterion("C3 two-cycle N=5", 5.0):
        a = two_cycle()
        res = invariant_quiver(a, 5)
        assert res.quiver.graded_arrows == {("2", "1", 1): 1, ("1", "2", 3): 1}
        assert cycle_structure_check(res.quiver, a.quiver) is True
        c = close_group(a)
        assert c.order * len(a.quiver.vertices) == 4
        assert cycle_degree_witness(a, c, res.table) is True
        r = preservation_check(a, res.quiver, c)
        assert (r.original_verdict.kind, r.invariant_verdict.kind, r.preserved) == (TAME, TAME, True)


def test_c4_psi_fuzz():
    with criterion(f"C4 psi fuzz x{FUZZ_COUNT} N={FUZZ_DEGREE}", 60.0):
        words = failures = mismatches = 0
        for a in fuzz_instances():
            res = invariant_quiver(a, FUZZ_DEGREE)
            words += len(res.checks)
            failures += sum(not chk.ok for chk in res.checks)
            mismatches += len(oracle_mismatches(a, res))
        assert words > 0 and failures == 0, f"{failures} psi failures over {words} words"
        assert mismatches == 0, f"{mismatches} character mismatches"


def test_c5_trivial_group():
    with criterion("C5 trivial group x10", 5.0):
        rng = random.Random(FUZZ_SEED + 1)
        for _ in range(10):
            q = random_quiver(rng, max_vertices=4, max_dim=2)
            iq = invariant_quiver(trivial_action(q), 4).quiver
            assert iq.graded_arrows == {(s, t, 1): d for (s, t), d in q.arrow_dim.items()}


def test_c6_cycle_branch():
    with criterion("C6 cycle branch", 60.0):
        cases = cycle_cases()
        assert {c.order for c in cases} == {1, 2, 3, 4}
        assert {len(c.action.quiver.vertices) for c in cases} == {1, 2, 3}
        for case in cases:
            a = case.action
            c = close_group(a)
            assert c.complete and c.order == case.order, case.name
            res = invariant_quiver(a, c.order * len(a.quiver.vertices))
            iq = res.quiver
            assert classify_invariant(iq).kind in (FINITE, TAME), case.name
            for v in iq.vertices:
                assert iq.out_degree(v) <= 1 and iq.in_degree(v) <= 1, case.name
            assert cycle_degree_witness(a, c, res.table) is True, case.name


def test_c7_oracle_equivalence():
    with criterion("C7 oracle equivalence", 60.0):
        instances = [(sign_loop(), 4), (swap_loops(), 6), (two_cycle(), 5)]
        instances += [(a, FUZZ_DEGREE) for a in fuzz_instances()]
        compared = 0
        for a, n in instances:
            res = invariant_quiver(a, n)
            assert oracle_mismatches(a, res) == []
            compared += len(res.table)
        assert compared > 0


@pytest.mark.parametrize("degree", range(1, 7))
def test_swap_character_values(degree):
    # closed form (2^n + 0)/2 from the two group elements
    res = invariant_quiver(swap_loops(), degree)
    c = close_group(swap_loops())
    w = res.words_by_degree[degree][0]
    assert char_dim_invariants(c, w) == 2 ** (degree - 1)
