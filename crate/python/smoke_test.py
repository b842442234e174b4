#!/usr/bin/env python3
"""End-to-end smoke test for the divlab_py extension module.

Builds the cdylib if needed, loads it straight from the cargo target
directory, and checks one known value from every corner of the API.
Run from anywhere: `python3 python/smoke_test.py`.
"""

import importlib.util
import pathlib
import subprocess
import sys
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parents[1]


def load_module():
    def find_so():
        for profile in ("release", "debug"):
            for name in ("libdivlab_py.so", "divlab_py.so", "libdivlab_py.dylib"):
                p = ROOT / "target" / profile / name
                if p.exists():
                    return p
        return None

    so = find_so()
    if so is None:
        subprocess.run(["cargo", "build", "-p", "divlab-py"], cwd=ROOT, check=True)
        so = find_so()
    assert so is not None, "cdylib not found after cargo build"
    spec = importlib.util.spec_from_file_location("divlab_py", so)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    dl = load_module()
    checks = 0

    def ok(cond, what):
        nonlocal checks
        assert cond, what
        checks += 1

    # Ground sets: exact rationals in, Fractions out, round-trip via str.
    g = dl.GroundSet([1, "1/2", Fraction(1, 4)])
    ok(g.n == 3 and len(g) == 3, "construction from mixed values")
    ok(g.total == Fraction(7, 4), "total is exact")
    ok(g.elements == [Fraction(1, 4), Fraction(1, 2), Fraction(1)], "ascending")
    ok(str(dl.GroundSet.parse(str(g))) == str(g), "parse/str round trip")
    ok(g.normalize().total == 1 and not g.is_normalized(), "normalization")
    ok(g.scale("2/7").total == Fraction(1, 2), "scaling")
    ok(g.subset_sum([0, 2]) == Fraction(5, 4), "subset sum by indices")

    # The reference counterexample: 4 pair divisors against a target of 3.
    h = dl.huynh_counterexample()
    ok(str(h) == "1/24,5/24,7/24,11/24", "reference set, normalized")
    ok(h.is_normalized() and h.as_integers() is None, "total 1, not integral")
    ok(h.scale(24).as_integers() == [1, 5, 7, 11], "integer image")
    r = dl.count_divisors(h, 2, witnesses=True)
    ok(r.count == 4 and r.binom_target == 3 and not r.is_anti_pencil, "count 4 > 3")
    ok(len(r.witnesses) == 4 and [0, 1] in r.witnesses, "witness lists")
    ok(dl.is_s_divisor(h, [0, 1], 1), "1/24 + 5/24 divides 1")
    scaled = h.scale(Fraction(3, 5))
    ok(dl.count_divisors(scaled, 2).count == 4, "counts are scaling-invariant")

    # Anti-pencil completion and the generated exception families.
    b = dl.build_anti_pencil(dl.GroundSet.parse("1,2,3"), 2)
    ok(str(b.set) == "1,2,3,54" and b.strict, "completion of 1,2,3")
    ok(dl.is_anti_pencil(b.set, 2), "completed set is an anti-pencil")
    k1 = dl.gen_k1_exception(5)
    ok(k1.total == 1 and dl.count_divisors(k1, 1).count == 5, "k=1 family")
    ok(dl.s_exception_min_n(2) == 3, "least feasible n at s=2")
    se = dl.gen_s_exception(2, 4)
    ok(se.total == 1 and dl.count_divisors(se, 3, s=2).count >= 2, "s=2 family")

    # Chains: on 1,2,3,6 the singleton divisors form a full chain.
    six = dl.GroundSet.parse("1,2,3,6")
    chain = dl.divisor_chain(six, 1)
    ok(chain == [[0], [1], [2], [3]], "singleton chain")
    cb = dl.check_chain_bound(six, chain)
    ok(cb.multipliers == [12, 6, 4, 2] and cb.q == 2, "multiplier sequence")
    ok(cb.holds and cb.bottom_sum == Fraction(1, 12), "chain bound")

    # Rank profiles and exact widths.
    cube = dl.cube_rank_profile(3, 2)
    ok(cube.sizes == [1, 2, 3, 2, 1] and cube.width() == 3, "cube profile")
    ok(cube.is_symmetric() and cube.is_unimodal(), "cube shape")
    dom = dl.dominance_rank_profile(4, 2)
    ok(dom.sizes == [1, 1, 2, 1, 1] and dom.total == 6, "Gaussian [4,2]")
    ok(dl.dilworth_width(dl.index_subsets(4, 2)) == dom.width(), "matching width")
    ok(dl.antichain_verify([[0, 3], [1, 2]]), "incomparable pair")
    c1 = dl.lemma1_check(5, 2)
    ok(c1.holds and c1.bound_squared_lhs == c1.bound_squared_rhs, "equality at d=2")
    ok(dl.lemma2_check(10, 3).holds, "dominance bound point")
    threshold, failures = dl.lemma2_threshold(2, 20)
    ok(threshold == 3 and failures == [2], "dominance bound threshold")

    # Number theory: exact and arbitrary precision.
    ok(dl.binomial(10, 5) == 252, "small binomial")
    ok(dl.binomial_big(120, 60) % (10**9 + 7) == 333009989, "big binomial")
    ok(dl.factorize(360) == [(2, 3), (3, 2), (5, 1)], "factorization")
    ok(dl.divisor_count(360) == 24 and len(dl.divisors(360)) == 24, "d(360)")
    best_n, best_d, ratio = dl.lemma3_scan(2, 100)
    ok(ratio == Fraction(best_d, 1) ** 2 / best_n, "growth ratio is exact")
    sols = dl.frac_pair_solutions(1, 2, 1, 1)
    ok(sols == [(3, 6), (4, 4), (6, 3)], "1/2 = 1/x + 1/y")
    ok(dl.frac_pair_oracle(1, 2, 1, 1) == sols, "oracle agrees")
    grid = dl.frac_pair_grid_check(6)
    ok(grid.all_match and grid.bound_violations == 0, "solver/oracle grid")

    # Subset-sum counting beyond divisibility.
    m = dl.mms_count([1, 0, 0, -1], 2)
    ok(m.count == 4 and m.target == 3 and m.meets_target, "share counting")

    # Search: rediscovers the counterexample; workers don't change output.
    records, summary = dl.exhaustive_search(4, 2, 24)
    ok(summary.max_count == 4 and summary.max_attainers == [[1, 5, 7, 11]], "search max")
    ok(any(rec.exceeds for rec in records), "exceeder recorded")
    _, par = dl.exhaustive_search(4, 2, 24, jobs=4)
    ok(repr(par) == repr(summary), "jobs=4 matches jobs=1")
    cells = dl.verify_theorem_grid(4, 4, 1, 1, 20)
    ok(len(cells) == 1 and cells[0].target == 3, "grid cell shape")

    # Error taxonomy: bad input vs resource ceilings.
    try:
        dl.GroundSet.parse("0,1")
        ok(False, "accepted a nonpositive element")
    except ValueError:
        checks += 1
    try:
        dl.exhaustive_search(4, 2, 24, budget=1)
        ok(False, "budget of 1 did not trip")
    except RuntimeError as e:
        ok("resume" in str(e), "budget error is resumable")

    print(f"smoke test passed: {checks} checks, divlab_py {dl.__version__}")


if __name__ == "__main__":
    sys.exit(main())
