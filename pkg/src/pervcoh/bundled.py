"""The bundled scenarios, built from their defining data.

The JSON files under ``data/`` are generated from these builders by
``scripts/make_fixtures.py``; tests load the JSON copies.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, Sequence

from .measuring import MeasuringCandidate
from .polycore import FreeComplex, Ideal, PresentedModule, free_resolution, parse_poly
from .stratspace import Perversity, Scenario, Stratum

DATA = Path(__file__).parent / "data"
SHIFTS = (-1, 0, 1, 2, 3)


def data_path(name: str) -> Path:
    return DATA / name


def _ideal(texts: Sequence[str], names) -> Ideal:
    return Ideal(len(names), tuple(parse_poly(t, names) for t in texts))


def resolved(texts: Sequence[str], names) -> FreeComplex:
    """A free resolution of S/I, cohomology in degree 0."""
    return free_resolution(PresentedModule.cyclic(_ideal(texts, names)))


def shifted_family(label: str, texts: Sequence[str], names,
                   shifts: Sequence[int] = SHIFTS) -> Dict[str, FreeComplex]:
    base = resolved(texts, names)
    out = {}
    for s in shifts:
        out[label if s == 0 else f"{label}[{s}]"] = base.shift(s)
    return out


def _scenario(names, variety, strata, p, complexes, measuring) -> Scenario:
    names = tuple(names)
    st = tuple(Stratum(n, _ideal(g, names), d) for n, g, d in strata)
    meas = {}
    for mname, (gens, cuts) in measuring.items():
        meas[mname] = MeasuringCandidate(
            mname, _ideal(gens, names), tuple((parse_poly(f, names), s) for f, s in cuts))
    return Scenario(names, _ideal(variety, names), st, Perversity(dict(enumerate(p))), complexes, meas)


def cone() -> Scenario:
    names = ("x", "y", "z")
    q = "x^2+y*z"
    cx = {}
    cx.update(shifted_family("O_X", [q], names))
    cx.update(shifted_family("k_0", ["x", "y", "z"], names))
    return _scenario(names, [q],
                     [("origin", ["x", "y", "z"], 0), ("open", [q], 2)],
                     (0, -1, -1), cx,
                     {"line": ([q, "x", "y"], [("y", 0)])})


def line() -> Scenario:
    names = ("x",)
    cx = {}
    cx.update(shifted_family("O", [], names))
    cx.update(shifted_family("k_0", ["x"], names))
    return _scenario(names, [],
                     [("origin", ["x"], 0), ("open", [], 1)],
                     (0, -1), cx,
                     {"point": (["x"], [("x", 0)])})


def plane() -> Scenario:
    names = ("x", "y")
    cx = {}
    cx.update(shifted_family("O", [], names))
    cx.update(shifted_family("O_xaxis", ["y"], names))
    cx.update(shifted_family("O_yaxis", ["x"], names))
    cx.update(shifted_family("k_0", ["x", "y"], names))
    return _scenario(names, [],
                     [("origin", ["x", "y"], 0), ("xaxis", ["y"], 1), ("yaxis", ["x"], 1), ("open", [], 2)],
                     (0, -1, -2), cx,
                     {"origin": (["x+y", "x*y"], [("x+y", 0), ("x*y", 1)])})


BUILDERS = {"cone": cone, "line": line, "plane": plane}
