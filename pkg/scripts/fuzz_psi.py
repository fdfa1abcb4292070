"""Fuzz the psi identity and the character oracle on random signed-permutation actions.

    python scripts/fuzz_psi.py --count 500 --max-degree 5 --seed 1
"""

import argparse
import random
import time
from dataclasses import dataclass

from pathinv.action import char_dim_invariants, close_group
from pathinv.catalog import random_signed_instance
from pathinv.invariants import PsiIdentityError, freeness_convolution_check, invariant_quiver


@dataclass
class FuzzConfig:
    count: int = 200
    seed: int = 0
    max_degree: int = 5
    max_vertices: int = 3
    max_dim: int = 2
    max_generators: int = 2
    density: float = 0.5


def run(cfg: FuzzConfig) -> int:
    rng = random.Random(cfg.seed)
    words = psi_failures = oracle_mismatches = not_free = 0
    t0 = time.perf_counter()
    for k in range(cfg.count):
        a = random_signed_instance(rng, cfg.max_vertices, cfg.max_dim, cfg.max_generators, cfg.density)
        try:
            res = invariant_quiver(a, cfg.max_degree)
        except PsiIdentityError as exc:
            psi_failures += 1
            print(f"instance {k}: {exc}")
            continue
        words += len(res.checks)
        c = close_group(a)
        if c.complete:
            bad = [w for w, d in res.table.items() if char_dim_invariants(c, w) != d.invariant.dim]
            oracle_mismatches += len(bad)
            for w in bad[:3]:
                print(f"instance {k}: oracle mismatch on {w}")
        if not freeness_convolution_check(res.quiver, res.table, cfg.max_degree):
            not_free += 1
            print(f"instance {k}: freeness convolution failed")
    elapsed = time.perf_counter() - t0
    print(f"{cfg.count} instances, {words} words, {elapsed:.2f}s")
    print(f"psi failures {psi_failures}, oracle mismatches {oracle_mismatches}, freeness failures {not_free}")
    return int(bool(psi_failures or oracle_mismatches or not_free))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(FuzzConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    args = p.parse_args()
    raise SystemExit(run(FuzzConfig(**vars(args))))


if __name__ == "__main__":
    main()
