#!/usr/bin/env python3
"""Regenerate the bundled scenario files and the test fixtures.

    python3 scripts/make_fixtures.py

Bundled scenarios go to src/pervcoh/data/, the seeded failure and malformed
inputs to tests/fixtures/, golden CLI reports to tests/golden/.  Review the
golden diff by hand before committing it.
"""

from __future__ import annotations

import json
from pathlib import Path

from pervcoh.bundled import BUILDERS, DATA, resolved
from pervcoh.scenario_io import complex_to_record, dump_scenario, scenario_to_dict

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "tests" / "fixtures"


def write(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def main() -> None:
    DATA.mkdir(exist_ok=True)
    FIX.mkdir(parents=True, exist_ok=True)
    base = {}
    for name, build in BUILDERS.items():
        S = build()
        dump_scenario(S, DATA / f"{name}.json")
        base[name] = scenario_to_dict(S)
        print(f"wrote {DATA / (name + '.json')}")

    cone = base["cone"]

    # exit 2: a stratum whose declared dimension is wrong
    bad = json.loads(json.dumps(cone))
    bad["strata"][0]["dim"] = 1
    write(FIX / "fail_stratum_dim.json", bad)

    # exit 2: p = (0, -2) on A^1 is not comonotone
    bad = json.loads(json.dumps(base["line"]))
    bad["perversity"] = {"0": 0, "1": -2}
    write(FIX / "fail_comonotone.json", bad)

    # exit 2: the origin is not measuring for p = (0, -1, -1) on the cone
    bad = json.loads(json.dumps(cone))
    bad["measuring"] = {"point": {"ideal": ["x", "y", "z"],
                                  "cutting": [{"function": "x", "step": 0}, {"function": "y", "step": 1}]}}
    write(FIX / "fail_measuring.json", bad)

    # exit 2 on validate: d^1 d^0 != 0
    bad = json.loads(json.dumps(cone))
    bad["complexes"] = {"broken": {"degrees": [0, 2], "ranks": [1, 1, 1],
                                   "differentials": {"0": [["x"]], "1": [["y"]]}}}
    write(FIX / "fail_not_complex.json", bad)

    # exit 1 on check: a line in the cone is not a union of stratum closures
    bad = json.loads(json.dumps(cone))
    names = tuple(cone["variables"])
    bad["complexes"] = {"O_line": complex_to_record(resolved(["x", "y"], names), names)}
    write(FIX / "nonstratified.json", bad)

    # exit 1: schema and parse errors
    bad = json.loads(json.dumps(cone))
    bad["colour"] = "blue"
    write(FIX / "malformed_unknown_field.json", bad)
    bad = json.loads(json.dumps(cone))
    bad["strata"][1]["ideal"] = ["x^2+y*w"]
    write(FIX / "malformed_undeclared_variable.json", bad)
    (FIX / "malformed_json.json").write_text('{"variables": ["x", "y"],\n "strata": [\n')
    bad = json.loads(json.dumps(cone))
    del bad["strata"][0]["dim"]
    write(FIX / "malformed_missing_field.json", bad)
    print(f"wrote fixtures under {FIX}")

    # golden reports; the table lives next to the test that reads them
    import sys

    sys.path.insert(0, str(ROOT))
    from pervcoh.cli import execute, render_report
    from tests.test_cli import GOLDEN, GOLDENS

    GOLDEN.mkdir(exist_ok=True)
    for name, argv in GOLDENS.items():
        (GOLDEN / name).write_text(render_report(execute(argv)[1]))
    print(f"wrote golden reports under {GOLDEN}")


if __name__ == "__main__":
    main()
