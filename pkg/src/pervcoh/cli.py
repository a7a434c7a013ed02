"""Command line entry point: pervcoh {validate,check,construct,crossvalidate,oracle}.

Exit codes: 0 every check passed, 2 a mathematical check failed, 1 bad
input, bad usage or a violated precondition.  The canonical JSON report goes
to stdout; a one-line-per-check summary goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .homcx import dualize, ext_colimit_oracle, local_cohomology_min_degree, validate_complex
from .measuring import (
    ConstructionError,
    MeasuringCandidate,
    construct_measuring,
    family_coverage,
    is_measuring,
)
from .perversity import check_ge0, check_le0, measuring_concentration, require_stratified
from .polycore import ParseError, parse_poly
from .scenario_io import digest, dump_scenario, load_scenario, with_measuring
from .stratspace import Scenario, validate_scenario
from .verdicts import CheckRecord, InternalConsistencyError, PervcohError, Verdict, jsonable

EXIT_PASS, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    digest: str
    checks: List[CheckRecord] = field(default_factory=list)
    info: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.result for c in self.checks)

    def as_dict(self) -> Dict[str, Any]:
        d = {
            "command": self.command,
            "scenario_digest": self.digest,
            "status": "pass" if self.passed else "fail",
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.info:
            d["info"] = jsonable(self.info)
        return d


def render_report(r: Report, mode: str = "canonical") -> str:
    if mode == "canonical":
        return json.dumps(r.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if mode != "summary":
        raise ValueError(f"unknown render mode {mode!r}")
    lines = []
    for c in r.checks:
        head = f"{'PASS' if c.result else 'FAIL'} {c.name} ({c.timing:.3f}s)"
        if not c.result and c.witnesses:
            head += "  first witness: " + json.dumps(jsonable(c.witnesses[0]), sort_keys=True)
        lines.append(head)
    return "\n".join(lines) + ("\n" if lines else "")


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False


def _record(name: str, v: Verdict, detail: Optional[dict] = None, timing: float = 0.0) -> CheckRecord:
    return CheckRecord(name, v.result, [w.as_dict() for w in v.witnesses], detail or {}, timing)


def _complex(S: Scenario, name: str):
    try:
        return S.complexes[name]
    except KeyError:
        raise UsageError(f"unknown complex {name!r}; declared: {sorted(S.complexes)}") from None


def _family(S: Scenario, names: Optional[str]) -> List[MeasuringCandidate]:
    if names is None:
        return list(S.measuring.values())
    out = []
    for n in (s for s in names.split(",") if s):
        if n not in S.measuring:
            raise UsageError(f"unknown measuring candidate {n!r}; declared: {sorted(S.measuring)}")
        out.append(S.measuring[n])
    return out


def _family_records(S: Scenario, fam: Sequence[MeasuringCandidate]) -> List[CheckRecord]:
    recs = []
    for Z in fam:
        with _Timer() as t:
            v = is_measuring(Z, S)
        recs.append(_record(f"measuring:{Z.name}", v, timing=t.elapsed))
    with _Timer() as t:
        missing = family_coverage(fam, S)
    recs.append(CheckRecord("family_coverage", not missing,
                            [{"stratum": m, "note": "met by no member"} for m in missing],
                            {"members": [Z.name for Z in fam]}, t.elapsed))
    return recs


def _concentration_detail(F, fam, S, sheaves):
    per = {}
    coverage = False
    for Z in fam:
        c = measuring_concentration(F, Z, S, sheaves)
        per[Z.name] = c
        coverage = coverage or c.coverage_violation
    return per, coverage


# -- subcommands --------------------------------------------------------------------


def cmd_validate(S: Scenario, args) -> Report:
    rep = Report("validate", digest(S))
    with _Timer() as t:
        vr = validate_scenario(S)
    for c in vr.checks:
        c.timing = t.elapsed / max(len(vr.checks), 1)
    rep.checks.extend(vr.checks)
    for name, C in S.complexes.items():
        with _Timer() as t:
            bad = validate_complex(C)
        rep.checks.append(CheckRecord(f"complex:{name}", bad is None,
                                      [] if bad is None else [{"degree": bad.degree, "message": bad.message}],
                                      timing=t.elapsed))
    rep.info = {"flags": vr.flags, "assumptions": vr.assumptions}
    return rep


def cmd_check(S: Scenario, args) -> Report:
    F = _complex(S, args.complex)
    rep = Report("check", digest(S))
    with _Timer() as t:
        sheaves = require_stratified(F, S, args.complex)
        dual_sheaves = require_stratified(dualize(F, S.dualizing), S, f"D({args.complex})")
        le = check_le0(F, S, sheaves)
        ge = check_ge0(F, S, dual_sheaves)
    rep.checks.append(_record("le0", le, timing=t.elapsed / 2))
    rep.checks.append(_record("ge0", ge, timing=t.elapsed / 2))
    if args.family is not None:
        fam = _family(S, args.family)
        rep.checks.extend(_family_records(S, fam))
        with _Timer() as t:
            per, coverage = _concentration_detail(F, fam, S, sheaves)
        for name, c in per.items():
            rep.checks.append(CheckRecord(f"concentration:{name}", c.concentrated,
                                          [w.as_dict() for w in c.ge0.witnesses + c.le0.witnesses],
                                          c.as_dict(), t.elapsed / max(len(per), 1)))
        perverse = le.result and ge.result
        concentrated = all(c.concentrated for c in per.values())
        rep.checks.append(CheckRecord(
            "agreement", perverse == concentrated and not coverage,
            [] if perverse == concentrated and not coverage else
            [{"perverse": perverse, "concentrated": concentrated, "coverage_violation": coverage}],
            {"perverse": perverse, "concentrated": concentrated}))
    rep.info = {"complex": args.complex}
    return rep


def cmd_construct(S: Scenario, args) -> Report:
    rep = Report("construct", digest(S))
    try:
        pool = [parse_poly(t, S.variables) for t in (args.pool or [])]
    except ParseError as e:
        raise UsageError(f"--pool: {e}") from None
    with _Timer() as t:
        try:
            Z = construct_measuring(S, seed=args.seed, pool=pool, max_degree=args.max_degree,
                                    max_attempts=args.max_attempts, name=args.name)
        except ConstructionError as e:
            rep.checks.append(CheckRecord("construct", False,
                                          [{"step": e.step, "condition": e.condition, "attempts": e.attempts}],
                                          timing=time.perf_counter() - t.t0))
            return rep
    rep.checks.append(CheckRecord(
        "construct", True, [],
        {"name": Z.name,
         "cutting": [{"function": S.fmt(f), "step": s} for f, s in Z.cutting],
         "ideal": [S.fmt(g) for g in Z.ideal.generators]},
        t.elapsed))
    rep.checks.extend(_family_records(S, [Z]))
    if args.out:
        S2 = with_measuring(S, Z)
        dump_scenario(S2, args.out)
        rep.info = {"written_digest": digest(S2)}
    return rep


def cmd_crossvalidate(S: Scenario, args) -> Report:
    rep = Report("crossvalidate", digest(S))
    fam = _family(S, args.family)
    rep.checks.extend(_family_records(S, fam))
    for name, F in S.complexes.items():
        with _Timer() as t:
            try:
                sheaves = require_stratified(F, S, name)
                dual_sheaves = require_stratified(dualize(F, S.dualizing), S, f"D({name})")
            except PervcohError as e:
                rep.checks.append(CheckRecord(f"agreement:{name}", True, [],
                                              {"skipped": str(e)}, time.perf_counter() - t.t0))
                continue
            perverse = check_le0(F, S, sheaves).result and check_ge0(F, S, dual_sheaves).result
            per, coverage = _concentration_detail(F, fam, S, sheaves)
        concentrated = all(c.concentrated for c in per.values())
        ok = perverse == concentrated and not coverage
        detail = {"perverse": perverse, "concentrated": concentrated,
                  "members": {n: {"ge0": c.ge0.result, "le0": c.le0.result,
                                  "coverage_violation": c.coverage_violation} for n, c in per.items()}}
        rep.checks.append(CheckRecord(f"agreement:{name}", ok,
                                      [] if ok else [{"perverse": perverse, "concentrated": concentrated,
                                                      "coverage_violation": coverage}],
                                      detail, t.elapsed))
    return rep


def _named_ideal(S: Scenario, name: str):
    for x in S.strata:
        if x.name == name:
            return x.ideal
    if name in S.measuring:
        return S.measuring[name].ideal
    raise UsageError(f"--ideal {name!r} names neither a stratum nor a measuring candidate")


def cmd_oracle(S: Scenario, args) -> Report:
    F = _complex(S, args.complex)
    if args.tmax < 1:
        raise UsageError("--tmax must be at least 1")
    bad = validate_complex(F)
    if bad is not None:
        raise PervcohError(f"{args.complex} is not a complex: {bad.message}")
    J = _named_ideal(S, args.ideal)
    rep = Report("oracle", digest(S))
    with _Timer() as t:
        v = ext_colimit_oracle(J.generators, F, args.i, args.tmax)
        n0 = local_cohomology_min_degree(J, F, S.dualizing)
    # a detected class below the support bound would contradict it
    ok = not (v.status == "nonvanishing_detected" and args.i < n0)
    rep.checks.append(CheckRecord(
        "oracle", ok,
        [] if ok else [{"degree": args.i, "computed": "nonvanishing", "required": jsonable(n0), "relation": ">="}],
        {"verdict": v.as_dict(), "min_degree": n0, "ideal": args.ideal, "complex": args.complex},
        t.elapsed))
    return rep


COMMANDS = {
    "validate": cmd_validate,
    "check": cmd_check,
    "construct": cmd_construct,
    "crossvalidate": cmd_crossvalidate,
    "oracle": cmd_oracle,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pervcoh", description="Perversity checks on stratified affine scenarios.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("validate", help="check the scenario hypotheses")
    p.add_argument("file")

    p = sub.add_parser("check", help="test one complex for perversity")
    p.add_argument("file")
    p.add_argument("--complex", required=True)
    p.add_argument("--family", help="comma-separated measuring candidates")

    p = sub.add_parser("construct", help="build a measuring subvariety")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pool", nargs="*", default=[], help="polynomials tried before random search")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--max-attempts", type=int, default=200)
    p.add_argument("--name", default="constructed")
    p.add_argument("--out")

    p = sub.add_parser("crossvalidate", help="perversity vs concentration on every complex")
    p.add_argument("file")
    p.add_argument("--family", help="comma-separated measuring candidates (default: all)")

    p = sub.add_parser("oracle", help="Ext colimit oracle for local cohomology")
    p.add_argument("file")
    p.add_argument("--complex", required=True)
    p.add_argument("--ideal", required=True, help="a stratum or measuring candidate name")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--tmax", type=int, default=4)
    return ap


def execute(argv: Sequence[str]):
    """Run one command; returns (exit code, report or None, error message or None)."""
    try:
        args = build_parser().parse_args(list(argv))
        S = load_scenario(args.file)
        rep = COMMANDS[args.command](S, args)
    except (UsageError, PervcohError, ParseError) as e:
        return EXIT_INPUT, None, str(e)
    except InternalConsistencyError as e:
        return EXIT_INPUT, None, f"internal consistency error: {e}"
    return (EXIT_PASS if rep.passed else EXIT_FAIL), rep, None


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, rep, err = execute(sys.argv[1:] if argv is None else argv)
    if rep is not None:
        sys.stdout.write(render_report(rep, "canonical"))
        sys.stderr.write(render_report(rep, "summary"))
    if err is not None:
        sys.stderr.write(f"error: {err}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
