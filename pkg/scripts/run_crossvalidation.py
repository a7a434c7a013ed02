#!/usr/bin/env python3
"""Perversity versus measuring concentration, over shifts and random perversities.

    python3 scripts/run_crossvalidation.py [--trials N] [--seed S]

For each bundled scenario and each bundled complex, prints whether the
complex is perverse, whether its local cohomology along every member of the
declared family sits in degree 0, and whether the two agree.  Then, for
random admissible perversities, constructs a measuring subvariety and repeats
the comparison against that single-member family.
"""

from __future__ import annotations

import argparse
import dataclasses
import random
import time

from pervcoh.bundled import data_path
from pervcoh.measuring import construct_measuring
from pervcoh.perversity import is_perverse, measuring_concentration
from pervcoh.scenario_io import load_scenario
from pervcoh.stratspace import Perversity


def compare(S, family):
    rows = []
    for name, C in S.complexes.items():
        perverse = is_perverse(C, S).result
        conc = [measuring_concentration(C, Z, S) for Z in family]
        concentrated = all(c.concentrated for c in conc) and not any(c.coverage_violation for c in conc)
        rows.append((name, perverse, concentrated))
    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    disagreements = 0
    t0 = time.perf_counter()
    scenarios = {n: load_scenario(data_path(f"{n}.json")) for n in ("cone", "line", "plane")}
    for sname, S in scenarios.items():
        print(f"== {sname}  p = {[S.perversity(d) for d in range(S.dim + 1)]}")
        for name, perverse, concentrated in compare(S, list(S.measuring.values())):
            flag = "" if perverse == concentrated else "  <-- disagree"
            disagreements += perverse != concentrated
            print(f"   {name:14s} perverse={perverse!s:5s} concentrated={concentrated!s:5s}{flag}")

    rng = random.Random(args.seed)
    print("== random admissible perversities")
    for trial in range(args.trials):
        base = scenarios[rng.choice(sorted(scenarios))]
        values = [0]
        for _ in range(base.dim):
            values.append(values[-1] - rng.randint(0, 1))
        S = dataclasses.replace(base, perversity=Perversity(dict(enumerate(values))))
        Z = construct_measuring(S, seed=trial)
        rows = compare(S, [Z])
        bad = [r for r in rows if r[1] != r[2]]
        disagreements += len(bad)
        perverse = [r[0] for r in rows if r[1]]
        print(f"   trial {trial:2d}  p = {values}  cuts = {len(Z.cutting)}  "
              f"perverse: {', '.join(perverse) or '-'}" + (f"  disagree: {bad}" if bad else ""))
    print(f"disagreements: {disagreements}   ({time.perf_counter() - t0:.1f}s)")
    return 1 if disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
