"""Scenario files: JSON load with schema checks, canonical dump, content digest."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Sequence, Union

from .measuring import MeasuringCandidate
from .polycore import FreeComplex, Ideal, Matrix, ParseError, format_poly, parse_poly
from .stratspace import Perversity, Scenario, Stratum
from .verdicts import PervcohError

TOP_FIELDS = {"variables", "variety_ideal", "strata", "perversity", "complexes", "measuring"}
REQUIRED = {"variables", "variety_ideal", "strata", "perversity"}


class ScenarioError(PervcohError):
    """Schema violation; the message starts with the offending location."""


def _fail(loc: str, msg: str):
    raise ScenarioError(f"{loc}: {msg}")


def _expect(obj, kind, loc: str, what: str):
    if not isinstance(obj, kind) or (kind is int and isinstance(obj, bool)):
        _fail(loc, f"expected {what}")
    return obj


def _fields(obj: dict, loc: str, allowed: set, required: set):
    _expect(obj, dict, loc, "an object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        _fail(loc, f"unknown field {unknown[0]!r}")
    missing = sorted(required - set(obj))
    if missing:
        _fail(loc, f"missing field {missing[0]!r}")


def _poly(text, names, loc):
    try:
        return parse_poly(text, names)
    except ParseError as e:
        _fail(loc, str(e))


def _ideal(texts, names, loc) -> Ideal:
    _expect(texts, list, loc, "an array of polynomial texts")
    return Ideal(len(names), tuple(_poly(t, names, f"{loc}[{i}]") for i, t in enumerate(texts)))


def complex_from_record(rec: dict, names: Sequence[str], loc: str = "complex") -> FreeComplex:
    _fields(rec, loc, {"degrees", "ranks", "differentials"}, {"degrees", "ranks"})
    degs = _expect(rec["degrees"], list, f"{loc}.degrees", "[lo, hi]")
    if len(degs) != 2 or not all(isinstance(d, int) and not isinstance(d, bool) for d in degs) or degs[0] > degs[1]:
        _fail(f"{loc}.degrees", "expected [lo, hi] with integers lo <= hi")
    lo, hi = degs
    ranks = _expect(rec["ranks"], list, f"{loc}.ranks", "an array of ranks")
    if len(ranks) != hi - lo + 1:
        _fail(f"{loc}.ranks", f"expected {hi - lo + 1} entries")
    for i, r in enumerate(ranks):
        if not isinstance(r, int) or isinstance(r, bool) or r < 0:
            _fail(f"{loc}.ranks[{i}]", "expected a non-negative integer")
    rk = {lo + i: r for i, r in enumerate(ranks)}
    n = len(names)
    diffs = {}
    for key, rows in _expect(rec.get("differentials", {}), dict, f"{loc}.differentials", "an object").items():
        dloc = f"{loc}.differentials.{key}"
        try:
            k = int(key)
        except ValueError:
            _fail(dloc, "degree keys must be integers")
        if not lo <= k < hi:
            _fail(dloc, f"degree outside [{lo}, {hi - 1}]")
        _expect(rows, list, dloc, "an array of rows")
        if len(rows) != rk[k + 1]:
            _fail(dloc, f"expected {rk[k + 1]} rows")
        parsed = []
        for i, row in enumerate(rows):
            _expect(row, list, f"{dloc}[{i}]", "an array of entries")
            if len(row) != rk[k]:
                _fail(f"{dloc}[{i}]", f"expected {rk[k]} entries")
            parsed.append([_poly(t, names, f"{dloc}[{i}][{j}]") for j, t in enumerate(row)])
        diffs[k] = Matrix(n, rk[k + 1], rk[k], tuple(tuple(r) for r in parsed))
    return FreeComplex(n, lo, hi, rk, diffs)


def complex_to_record(C: FreeComplex, names: Sequence[str]) -> dict:
    diffs = {}
    for k in range(C.lo, C.hi):
        d = C.differentials[k]
        if d.nrows and d.ncols:
            diffs[str(k)] = [[format_poly(a, names) for a in row] for row in d.rows]
    return {"degrees": [C.lo, C.hi], "ranks": [C.rank(k) for k in C.degrees()], "differentials": diffs}


def candidate_from_record(name: str, rec: dict, names: Sequence[str], loc: str) -> MeasuringCandidate:
    _fields(rec, loc, {"ideal", "cutting"}, {"ideal"})
    ideal = _ideal(rec["ideal"], names, f"{loc}.ideal")
    cutting = []
    for i, c in enumerate(_expect(rec.get("cutting", []), list, f"{loc}.cutting", "an array")):
        cloc = f"{loc}.cutting[{i}]"
        _fields(c, cloc, {"function", "step"}, {"function", "step"})
        step = _expect(c["step"], int, f"{cloc}.step", "an integer")
        cutting.append((_poly(c["function"], names, f"{cloc}.function"), step))
    return MeasuringCandidate(name, ideal, tuple(cutting))


def candidate_to_record(Z: MeasuringCandidate, names: Sequence[str]) -> dict:
    return {"ideal": [format_poly(g, names) for g in Z.ideal.generators],
            "cutting": [{"function": format_poly(f, names), "step": s} for f, s in Z.cutting]}


def scenario_from_dict(data: dict) -> Scenario:
    _fields(data, "$", TOP_FIELDS, REQUIRED)
    names = _expect(data["variables"], list, "$.variables", "an array of names")
    if not names or not all(isinstance(v, str) and v.isidentifier() for v in names):
        _fail("$.variables", "expected a non-empty array of identifiers")
    if len(set(names)) != len(names):
        _fail("$.variables", "duplicate variable name")
    names = tuple(names)
    IX = _ideal(data["variety_ideal"], names, "$.variety_ideal")

    strata = []
    for i, rec in enumerate(_expect(data["strata"], list, "$.strata", "an array")):
        loc = f"$.strata[{i}]"
        _fields(rec, loc, {"name", "ideal", "dim"}, {"name", "ideal", "dim"})
        name = _expect(rec["name"], str, f"{loc}.name", "a string")
        dim = _expect(rec["dim"], int, f"{loc}.dim", "an integer")
        if dim < 0:
            _fail(f"{loc}.dim", "expected a non-negative integer")
        strata.append(Stratum(name, _ideal(rec["ideal"], names, f"{loc}.ideal"), dim))

    table = {}
    for key, v in _expect(data["perversity"], dict, "$.perversity", "an object").items():
        try:
            d = int(key)
        except ValueError:
            _fail(f"$.perversity.{key}", "keys must be integer dimensions")
        table[d] = _expect(v, int, f"$.perversity.{key}", "an integer")

    complexes = {}
    for name, rec in _expect(data.get("complexes", {}), dict, "$.complexes", "an object").items():
        complexes[name] = complex_from_record(rec, names, f"$.complexes.{name}")
    measuring = {}
    for name, rec in _expect(data.get("measuring", {}), dict, "$.measuring", "an object").items():
        measuring[name] = candidate_from_record(name, rec, names, f"$.measuring.{name}")
    return Scenario(names, IX, tuple(strata), Perversity(table), complexes, measuring)


def scenario_to_dict(S: Scenario) -> dict:
    names = S.variables
    return {
        "variables": list(names),
        "variety_ideal": [format_poly(g, names) for g in S.variety_ideal.generators],
        "strata": [{"name": s.name, "ideal": [format_poly(g, names) for g in s.ideal.generators],
                    "dim": s.declared_dim} for s in S.strata],
        "perversity": {str(d): v for d, v in sorted(S.perversity.table.items())},
        "complexes": {k: complex_to_record(C, names) for k, C in S.complexes.items()},
        "measuring": {k: candidate_to_record(Z, names) for k, Z in S.measuring.items()},
    }


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(S: Scenario) -> str:
    return hashlib.sha256(canonical_json(scenario_to_dict(S)).encode()).hexdigest()


def load_scenario(path: Union[str, Path]) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ScenarioError(f"{path}: cannot read file ({e.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}:{e.lineno}:{e.colno}: invalid JSON ({e.msg})") from None
    try:
        return scenario_from_dict(data)
    except ScenarioError as e:
        raise ScenarioError(f"{path}: {e}") from None


def dump_scenario(S: Scenario, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(S), sort_keys=True, indent=2) + "\n")


def with_measuring(S: Scenario, Z: MeasuringCandidate) -> Scenario:
    measuring = dict(S.measuring)
    measuring[Z.name] = Z
    return Scenario(S.variables, S.variety_ideal, S.strata, S.perversity, S.complexes, measuring)
