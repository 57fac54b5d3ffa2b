"""Scenario files: named rings, one ring ``R = k + I``, declared depictions
and a list of queries.

Format (JSON)::

    {
      "name": "...",
      "field": "rational",
      "coords": {"vars": [...], "relations": [...]}  or  "<ring name>",
      "rings": {
        "S": {"vars": ["x", "y"], "relations": [], "embedding": ["x", "y"]},
        "S2": {"semigroup": [[1, 0, 0], [0, 1, 0]], "vars": ["a", "b"]}
      },
      "subring": {"ambient": "S", "ideal": ["x^2 - x", "x*y"]},
      "depictions": [{"ring": "S"}, {"ring": "Sx", "fact": "B3-3.19"}],
      "notes": ["free-text warnings copied into the report"],
      "queries": [{"command": "codim1", "ring": "S"}]
    }

Without ``coords``, semigroup rings share a coordinate ring ``k[x,y,z,...]``
(with inverse variables when exponents are negative) and every other ring
embeds into it by variable name; with neither, the ambient ring is the
coordinate ring.  Every error names its location in the file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .affine import AffineDomain
from .depiction import DepictionError, SubringKplusI
from .groebner import UnitIdealError
from .poly import CoefficientField, ParseError, Polynomial, VarContext, parse_poly
from .semigroup import AffineSemigroup, RankBoundError, coordinate_ring, toric_presentation

COMMANDS = (
    "depict-check", "codim1", "u-locus", "maxdep", "normalize", "ght", "gdim",
    "height", "in-z", "fiber", "contraction-equal", "saturated",
)

_TOP_KEYS = {"name", "field", "coords", "rings", "subring", "depictions", "notes", "queries"}
_RING_KEYS = {"vars", "relations", "embedding", "semigroup"}


class ScenarioError(ValueError):
    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


@dataclass
class Depiction:
    ring: AffineDomain
    name: str
    fact: str | None = None


@dataclass
class Scenario:
    name: str
    field: CoefficientField
    rings: dict[str, AffineDomain]
    R: SubringKplusI | None
    depictions: list[Depiction]
    queries: list[dict]
    notes: list[str] = field(default_factory=list)

    def ring(self, name: str, location: str) -> AffineDomain:
        try:
            return self.rings[name]
        except KeyError:
            raise ScenarioError(location, f"unknown ring {name!r}") from None

    def depiction(self, S: AffineDomain) -> Depiction | None:
        return next((d for d in self.depictions if d.ring is S), None)


def _expect(obj, kind, location: str):
    if not isinstance(obj, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ScenarioError(location, f"expected {names}, got {type(obj).__name__}")
    return obj


def _str_list(obj, location: str) -> list[str]:
    _expect(obj, list, location)
    for i, s in enumerate(obj):
        _expect(s, str, f"{location}[{i}]")
    return obj


def _parse(text: str, ctx: VarContext, location: str) -> Polynomial:
    try:
        return parse_poly(text, ctx)
    except ParseError as e:
        raise ScenarioError(location, str(e)) from None
    except ZeroDivisionError as e:
        raise ScenarioError(location, str(e)) from None


def _make_ctx(names: list[str], field: CoefficientField, location: str) -> VarContext:
    try:
        return VarContext(tuple(names), field)
    except ValueError as e:
        raise ScenarioError(location, str(e)) from None


def _plain_ring(spec: dict, name: str, field: CoefficientField, coords: AffineDomain | None,
                location: str) -> AffineDomain:
    ctx = _make_ctx(_str_list(spec.get("vars"), f"{location}.vars"), field, f"{location}.vars")
    rels = [_parse(r, ctx, f"{location}.relations[{i}]")
            for i, r in enumerate(_str_list(spec.get("relations", []), f"{location}.relations"))]
    embedding = None
    if "embedding" in spec:
        if coords is None:
            raise ScenarioError(f"{location}.embedding", "embedding given but no coordinate ring")
        emb = _str_list(spec["embedding"], f"{location}.embedding")
        if len(emb) != ctx.nvars:
            raise ScenarioError(f"{location}.embedding", "need one image per variable")
        embedding = [_parse(e, coords.ctx, f"{location}.embedding[{i}]") for i, e in enumerate(emb)]
    elif coords is not None:
        missing = [n for n in ctx.names if n not in coords.ctx.names]
        if missing:
            raise ScenarioError(location, f"variables {missing} are not coordinates; give an embedding")
        embedding = [coords.ctx.var(n) for n in ctx.names]
    try:
        return AffineDomain(ctx, rels, coords=coords, embedding=embedding, name=name)
    except UnitIdealError as e:
        raise ScenarioError(f"{location}.relations", str(e)) from None


def _semigroup(spec: dict, location: str) -> AffineSemigroup:
    gens = _expect(spec["semigroup"], list, f"{location}.semigroup")
    for i, g in enumerate(gens):
        _expect(g, list, f"{location}.semigroup[{i}]")
        for j, x in enumerate(g):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ScenarioError(f"{location}.semigroup[{i}][{j}]", "exponents must be integers")
    try:
        return AffineSemigroup(gens)
    except (ValueError, RankBoundError) as e:
        raise ScenarioError(f"{location}.semigroup", str(e)) from None


def load_scenario_dict(data: Any, field: CoefficientField | None = None, source: str = "<scenario>") -> Scenario:
    _expect(data, dict, source)
    extra = set(data) - _TOP_KEYS
    if extra:
        raise ScenarioError(source, f"unknown keys {sorted(extra)}")
    if field is None:
        tag = _expect(data.get("field", "rational"), str, "field")
        try:
            field = CoefficientField.parse(tag)
        except ValueError as e:
            raise ScenarioError("field", str(e)) from None
    rings_spec = _expect(data.get("rings", {}), dict, "rings")
    for rname, rspec in rings_spec.items():
        loc = f"rings.{rname}"
        _expect(rspec, dict, loc)
        bad = set(rspec) - _RING_KEYS
        if bad:
            raise ScenarioError(loc, f"unknown keys {sorted(bad)}")
        if "semigroup" not in rspec and "vars" not in rspec:
            raise ScenarioError(loc, "ring needs 'vars' or 'semigroup'")

    rings: dict[str, AffineDomain] = {}
    semis = {n: _semigroup(s, f"rings.{n}") for n, s in rings_spec.items() if "semigroup" in s}

    # coordinate ring
    coords: AffineDomain | None = None
    coords_spec = data.get("coords")
    if isinstance(coords_spec, str):
        if coords_spec not in rings_spec:
            raise ScenarioError("coords", f"unknown ring {coords_spec!r}")
        if "semigroup" in rings_spec[coords_spec]:
            raise ScenarioError("coords", "the coordinate ring must be given by vars and relations")
        coords = _plain_ring(rings_spec[coords_spec], coords_spec, field, None, f"rings.{coords_spec}")
        rings[coords_spec] = coords
    elif coords_spec is not None:
        _expect(coords_spec, dict, "coords")
        coords = _plain_ring(coords_spec, "coords", field, None, "coords")
    elif semis:
        ranks = {A.rank for A in semis.values()}
        if len(ranks) != 1:
            raise ScenarioError("rings", "semigroup rings of different ranks need an explicit coordinate ring")
        laurent = any(x < 0 for A in semis.values() for g in A.gens for x in g)
        coords = coordinate_ring(ranks.pop(), laurent=laurent, field=field)

    sub = data.get("subring")
    ambient_name = None
    if sub is not None:
        _expect(sub, dict, "subring")
        ambient_name = _expect(sub.get("ambient"), str, "subring.ambient")
        if ambient_name not in rings_spec:
            raise ScenarioError("subring.ambient", f"unknown ring {ambient_name!r}")
    if coords is None and ambient_name is not None and "semigroup" not in rings_spec[ambient_name]:
        coords = _plain_ring(rings_spec[ambient_name], ambient_name, field, None, f"rings.{ambient_name}")
        rings[ambient_name] = coords

    for rname, rspec in rings_spec.items():
        if rname in rings:
            continue
        loc = f"rings.{rname}"
        if "semigroup" in rspec:
            if coords is None:
                raise ScenarioError(loc, "semigroup ring without a coordinate ring")
            names = None
            if "vars" in rspec:
                names = _str_list(rspec["vars"], f"{loc}.vars")
                if len(names) != len(semis[rname].gens):
                    raise ScenarioError(f"{loc}.vars", "need one variable per semigroup generator")
            try:
                rings[rname] = toric_presentation(semis[rname], names=names, coords=coords, name=rname)
            except (ValueError, RankBoundError) as e:
                raise ScenarioError(loc, str(e)) from None
        else:
            rings[rname] = _plain_ring(rspec, rname, field, coords, loc)

    R = None
    if sub is not None:
        S = rings[ambient_name]
        gens = [_parse(g, S.ctx, f"subring.ideal[{i}]")
                for i, g in enumerate(_str_list(sub.get("ideal"), "subring.ideal"))]
        try:
            R = SubringKplusI(S, S.ideal(gens))
        except DepictionError as e:
            raise ScenarioError("subring.ideal", str(e)) from None

    depictions = []
    for i, d in enumerate(_expect(data.get("depictions", []), list, "depictions")):
        loc = f"depictions[{i}]"
        _expect(d, dict, loc)
        rname = _expect(d.get("ring"), str, f"{loc}.ring")
        if rname not in rings:
            raise ScenarioError(f"{loc}.ring", f"unknown ring {rname!r}")
        fact = d.get("fact")
        if fact is not None:
            _expect(fact, str, f"{loc}.fact")
        depictions.append(Depiction(rings[rname], rname, fact))

    queries = _expect(data.get("queries", []), list, "queries")
    for i, q in enumerate(queries):
        loc = f"queries[{i}]"
        _expect(q, dict, loc)
        cmd = q.get("command")
        if cmd not in COMMANDS:
            raise ScenarioError(f"{loc}.command", f"unknown command {cmd!r}")
        if "ring" in q and q["ring"] not in rings:
            raise ScenarioError(f"{loc}.ring", f"unknown ring {q['ring']!r}")
        if cmd != "normalize" and R is None:
            raise ScenarioError(loc, f"{cmd} needs a 'subring' entry")

    notes = _str_list(data.get("notes", []), "notes")
    name = _expect(data.get("name", source), str, "name")
    return Scenario(name, field, rings, R, depictions, queries, list(notes))


def load_scenario(path: str | Path, field: CoefficientField | None = None) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ScenarioError(str(path), f"cannot read file: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}:{e.lineno}:{e.colno}", f"invalid JSON: {e.msg}") from None
    return load_scenario_dict(data, field, source=path.stem)


__all__ = ["COMMANDS", "Depiction", "Scenario", "ScenarioError", "load_scenario", "load_scenario_dict"]
