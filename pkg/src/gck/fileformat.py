"""JSON structure files: charts, named tensors with polynomial-string components, named structures.

Example::

    {
      "charts": {"M": ["x", "y"]},
      "tensors": {
        "omega": {"kind": "2form", "chart": "M", "components": {"x,y": "1"}},
        "a": {"kind": "endo", "chart": "M", "components": [["0", "-1"], ["1", "0"]]}
      },
      "structures": {"H": {"kind": "hitchin", "omega": "omega", "a": "a"}}
    }

Form and bivector components are keyed by comma-joined increasing coordinate
names; vectors, 1-forms, endomorphisms and maps use positional lists.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from .courant import GeneralizedStructure
from .errors import ParseError, ResolutionError
from .hitchin import HitchinPair
from .morphism import GHolMapCandidate
from .tensorfield import Bivector, Chart, EndoField, KForm, PolyMap, VectorField, increasing

Tensor = Union[VectorField, KForm, Bivector, EndoField, PolyMap]

FORM_DEGREES = {"1form": 1, "2form": 2, "3form": 3}
STRUCTURE_FIELDS = {
    "gcs": ("a", "pi", "sigma"),
    "hitchin": ("omega", "a"),
    "morphism": ("map", "source", "target"),
}


@dataclass
class StructureFile:
    charts: dict[str, Chart] = field(default_factory=dict)
    tensors: dict[str, Tensor] = field(default_factory=dict)
    structures: dict[str, dict[str, str]] = field(default_factory=dict)

    # resolution ---------------------------------------------------------

    def chart_name(self, chart: Chart) -> str:
        for name, c in self.charts.items():
            if c == chart:
                return name
        raise ResolutionError(f"no chart named for {chart.coordinates}")

    def tensor(self, name: str, kind=None) -> Tensor:
        if name not in self.tensors:
            raise ResolutionError(f"unknown tensor {name!r}")
        t = self.tensors[name]
        if kind is not None and not isinstance(t, kind):
            raise ResolutionError(f"tensor {name!r} is not a {kind.__name__}")
        return t

    def form(self, name: str, degree: int) -> KForm:
        t = self.tensor(name, KForm)
        if t.degree != degree:
            raise ResolutionError(f"tensor {name!r} is a {t.degree}-form, expected degree {degree}")
        return t

    def structure(self, name: str, kind: str | None = None) -> dict[str, str]:
        if name not in self.structures:
            raise ResolutionError(f"unknown structure {name!r}")
        entry = self.structures[name]
        if kind is not None and entry["kind"] != kind:
            raise ResolutionError(f"structure {name!r} is a {entry['kind']}, expected {kind}")
        return entry

    def gcs(self, name: str) -> GeneralizedStructure:
        entry = self.structure(name, "gcs")
        return GeneralizedStructure(self.tensor(entry["a"], EndoField), self.tensor(entry["pi"], Bivector),
                                    self.form(entry["sigma"], 2))

    def hitchin(self, name: str) -> HitchinPair:
        entry = self.structure(name, "hitchin")
        return HitchinPair(self.form(entry["omega"], 2), self.tensor(entry["a"], EndoField))

    def morphism(self, name: str) -> GHolMapCandidate:
        entry = self.structure(name, "morphism")
        return GHolMapCandidate(self.tensor(entry["map"], PolyMap), self.gcs(entry["source"]), self.gcs(entry["target"]))

    # building -----------------------------------------------------------

    def add_chart(self, name: str, chart: Chart) -> str:
        self.charts[name] = chart
        return name

    def add_gcs(self, name: str, s: GeneralizedStructure, prefix: str = "") -> None:
        self.tensors[prefix + "a"] = s.a
        self.tensors[prefix + "pi"] = s.pi
        self.tensors[prefix + "sigma"] = s.sigma
        self.structures[name] = {"kind": "gcs", "a": prefix + "a", "pi": prefix + "pi", "sigma": prefix + "sigma"}

    def add_hitchin(self, name: str, p: HitchinPair, prefix: str = "") -> None:
        self.tensors[prefix + "omega"] = p.omega
        self.tensors[prefix + "a"] = p.a
        self.structures[name] = {"kind": "hitchin", "omega": prefix + "omega", "a": prefix + "a"}


# parsing ------------------------------------------------------------------


def _expect(cond: bool, msg: str):
    if not cond:
        raise ParseError(msg)


def _index_key(chart: Chart, key: str, degree: int, where: str) -> tuple[int, ...]:
    names = [k.strip() for k in key.split(",")]
    _expect(len(names) == degree, f"{where}: key {key!r} needs {degree} coordinates")
    try:
        return tuple(chart.index(n) for n in names)
    except ValueError:
        raise ParseError(f"{where}: key {key!r} names an unknown coordinate") from None


def _poly_list(chart: Chart, raw, length: int, where: str):
    _expect(isinstance(raw, list) and len(raw) == length, f"{where}: expected a list of {length} polynomials")
    out = []
    for x in raw:
        _expect(isinstance(x, (str, int)), f"{where}: components must be polynomial strings")
        out.append(chart.poly(str(x)))
    return out


def _parse_tensor(name: str, raw: dict, charts: dict[str, Chart]) -> Tensor:
    where = f"tensor {name!r}"
    _expect(isinstance(raw, dict), f"{where}: expected an object")
    kind = raw.get("kind")
    cname = raw.get("chart")
    _expect(cname in charts, f"{where}: unknown chart {cname!r}")
    chart = charts[cname]
    n = chart.dimension
    comps = raw.get("components")
    if kind == "vector":
        return VectorField(chart, tuple(_poly_list(chart, comps, n, where)))
    if kind == "1form":
        return KForm.one_form(chart, _poly_list(chart, comps, n, where))
    if kind in ("2form", "3form", "bivector"):
        deg = 2 if kind == "bivector" else FORM_DEGREES[kind]
        _expect(isinstance(comps, dict), f"{where}: components must be an object keyed by coordinates")
        data = {}
        for key, val in comps.items():
            idx = _index_key(chart, key, deg, where)
            _expect(len(set(idx)) == deg, f"{where}: repeated coordinate in {key!r}")
            data[idx] = chart.poly(str(val))
        if kind == "bivector":
            return Bivector(chart, data)
        return KForm(chart, deg, data)
    if kind == "endo":
        _expect(isinstance(comps, list) and len(comps) == n, f"{where}: expected {n} rows")
        return EndoField(chart, [_poly_list(chart, row, n, where) for row in comps])
    if kind == "map":
        tname = raw.get("target")
        _expect(tname in charts, f"{where}: unknown target chart {tname!r}")
        target = charts[tname]
        return PolyMap(chart, target, tuple(_poly_list(chart, comps, target.dimension, where)))
    raise ParseError(f"{where}: unknown kind {kind!r}")


def parse_structure_file(text: str) -> StructureFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    _expect(isinstance(doc, dict), "top level must be an object")
    unknown = set(doc) - {"charts", "tensors", "structures"}
    _expect(not unknown, f"unknown top-level keys: {sorted(unknown)}")
    charts = {}
    for name, coords in doc.get("charts", {}).items():
        _expect(isinstance(coords, list) and coords and all(isinstance(c, str) for c in coords),
                f"chart {name!r}: expected a list of coordinate names")
        try:
            charts[name] = Chart(tuple(coords))
        except ValueError as exc:
            raise ParseError(f"chart {name!r}: {exc}") from None
    tensors = {name: _parse_tensor(name, raw, charts) for name, raw in doc.get("tensors", {}).items()}
    structures = {}
    for name, raw in doc.get("structures", {}).items():
        _expect(isinstance(raw, dict) and raw.get("kind") in STRUCTURE_FIELDS,
                f"structure {name!r}: kind must be one of {sorted(STRUCTURE_FIELDS)}")
        fields = STRUCTURE_FIELDS[raw["kind"]]
        missing = [f for f in fields if f not in raw]
        _expect(not missing, f"structure {name!r}: missing fields {missing}")
        structures[name] = {"kind": raw["kind"], **{f: str(raw[f]) for f in fields}}
    return StructureFile(charts, tensors, structures)


def load(path: str | Path) -> StructureFile:
    return parse_structure_file(Path(path).read_text())


def load_fixture(name: str) -> StructureFile:
    return parse_structure_file(fixture_path(name).read_text())


def fixture_path(name: str) -> Path:
    base = resources.files("gck") / "fixtures"
    return Path(str(base / (name if name.endswith(".json") else name + ".json")))


# printing -----------------------------------------------------------------


def _tensor_doc(sf: StructureFile, t: Tensor) -> dict:
    if isinstance(t, PolyMap):
        return {"kind": "map", "chart": sf.chart_name(t.source), "target": sf.chart_name(t.target),
                "components": [str(c) for c in t.components]}
    chart = t.chart
    doc = {"chart": sf.chart_name(chart)}
    names = chart.coordinates
    if isinstance(t, VectorField):
        doc.update(kind="vector", components=[str(c) for c in t.components])
    elif isinstance(t, EndoField):
        doc.update(kind="endo", components=[[str(x) for x in row] for row in t.matrix])
    elif isinstance(t, Bivector):
        doc.update(kind="bivector", components={
            f"{names[i]},{names[j]}": str(t.component(i, j))
            for i, j in increasing(chart.dimension, 2) if t.component(i, j)})
    elif t.degree == 1:
        doc.update(kind="1form", components=[str(c) for c in t.as_list()])
    else:
        doc.update(kind=f"{t.degree}form", components={
            ",".join(names[i] for i in idx): str(t.component(idx))
            for idx in increasing(chart.dimension, t.degree) if t.component(idx)})
    return doc


def print_structure_file(sf: StructureFile) -> str:
    """Canonical text: sorted keys, canonical polynomial strings, two-space indent."""
    doc = {
        "charts": {name: list(c.coordinates) for name, c in sf.charts.items()},
        "tensors": {name: _tensor_doc(sf, t) for name, t in sf.tensors.items()},
        "structures": {name: dict(entry) for name, entry in sf.structures.items()},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
