"""Command-line front end.

Every subcommand reads a scenario file (or a bundled example) and evaluates
queries against it; the analysis subcommands replace the file's query list
with a single query built from their arguments.

Exit status: 0 on success, 1 on parse or validation errors, 2 when some
query is outside what can be decided here (the report explains which).
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Any, Sequence

from .affine import AffineDomain, RingIdeal, is_subring
from .depiction import (
    ContractedPrime,
    CriterionNotApplicable,
    DepictionError,
    check_depiction,
    contraction_equal,
    fiber_over,
    gdim_point,
    geometric_height,
    in_Z,
    maximal_depiction,
    minimal_primes,
    noetherian_codim1,
    u_locus,
)
from .poly import CoefficientField
from .scenario import Scenario, ScenarioError, _parse, _str_list, load_scenario, load_scenario_dict
from .semigroup import normalization

EXAMPLES = ("paper-sn", "paper-not1", "paper-final", "paper-intro")


class Unsupported(Exception):
    pass


def example_data(name: str) -> dict:
    if name not in EXAMPLES:
        raise ScenarioError("run-example", f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    text = resources.files("depict").joinpath("scenarios").joinpath(f"{name}.json").read_text()
    return json.loads(text)


# ---------------------------------------------------------------------------
# query evaluation


class _Runner:
    def __init__(self, sc: Scenario):
        self.sc = sc
        self.citations: list[str] = []
        self.warnings: list[str] = list(sc.notes)

    def cite(self, *tags: str):
        for t in tags:
            if t not in self.citations:
                self.citations.append(t)

    def warn(self, msg: str):
        if msg not in self.warnings:
            self.warnings.append(msg)

    def ring(self, q: dict, loc: str, key: str = "ring") -> AffineDomain:
        name = q.get(key)
        if name is None:
            if self.sc.R is None:
                raise ScenarioError(f"{loc}.{key}", "missing ring name")
            return self.sc.R.ambient
        if not isinstance(name, str):
            raise ScenarioError(f"{loc}.{key}", "expected a ring name")
        return self.sc.ring(name, f"{loc}.{key}")

    def ideal(self, S: AffineDomain, gens, loc: str) -> RingIdeal:
        gens = _str_list(gens, loc)
        return S.ideal([_parse(g, S.ctx, f"{loc}[{i}]") for i, g in enumerate(gens)])

    def prime(self, S: AffineDomain, gens, loc: str) -> ContractedPrime:
        q = self.ideal(S, gens, loc)
        cp = ContractedPrime(self.sc.R, q)
        if cp.primality == "asserted":
            self.warn(f"{loc}: primality of ({', '.join(q.generators())}) is asserted, not verified")
        return cp

    def depiction_rings(self) -> list[AffineDomain]:
        return [d.ring for d in self.sc.depictions]

    def declared_note(self, S: AffineDomain):
        d = self.sc.depiction(S)
        if d is not None and d.fact is None and not self.sc.R.transfer(S).is_ideal:
            self.warn(f"{d.name}: declared depiction; I is not an ideal of it, so its locus uses I·{d.name}")

    # each handler returns the result payload
    def q_depict_check(self, q, loc):
        S = self.ring(q, loc)
        d = self.sc.depiction(S)
        if d is not None and d.fact is not None:
            self.cite(d.fact)
            return {"is_depiction": True, "provenance": "literature-fact", "fact": d.fact}
        ok = check_depiction(S, self.sc.R)
        self.cite("k+I-depiction-criterion")
        return {"is_depiction": ok, "quotient_dim": self.sc.R.ideal_in(S).quotient_dim(), "provenance": "computed"}

    def q_codim1(self, q, loc):
        S = self.ring(q, loc)
        J = self.sc.R.ideal_in(S)
        ok = noetherian_codim1(S, self.sc.R)
        self.cite("codim1-height-criterion")
        return {"codim1": ok, "height_of_I": S.dim - J.quotient_dim()}

    def q_u_locus(self, q, loc):
        S = self.ring(q, loc)
        self.declared_note(S)
        self.cite("U-complement-of-Z(I)")
        return {"u_locus": u_locus(S, self.sc.R).to_dict()}

    def q_maxdep(self, q, loc):
        S = self.ring(q, loc)
        rep = maximal_depiction(S, self.sc.R)
        self.cite({
            "codim1-fails": "codim1-fails",
            "normal-depiction": "normal-depiction-is-maximal",
            "normalization-is-depiction": "maximal-depiction-contains-all-depictions",
            "interval": "maximal-depiction-between-S-and-normalization",
            "normalization-unavailable": "maximal-depiction-between-S-and-normalization",
        }[rep.branch])
        for w in rep.warnings:
            self.warn(w)
        out = rep.to_dict()
        if rep.T is not None:
            out["contains_declared"] = {
                d.name: is_subring(d.ring, rep.T) for d in self.sc.depictions if d.ring.shares_coords(rep.T)}
        if rep.branch == "normalization-unavailable":
            raise Unsupported(out)
        return out

    def q_normalize(self, q, loc):
        S = self.ring(q, loc)
        N = normalization(S)
        if N is None:
            raise Unsupported({"normalization": "unavailable",
                               "reason": "only polynomial and semigroup rings are normalized"})
        self.cite("semigroup-saturation")
        return {"normal": N is S, "normalization": N.describe()}

    def q_ght(self, q, loc, measure="ght"):
        S = self.ring(q, loc)
        p = self.prime(S, q.get("prime"), f"{loc}.prime")
        fn = geometric_height if measure == "ght" else gdim_point
        g = fn(p, self.depiction_rings())
        self.cite(g.justification)
        return {"smeared": p.smeared, measure: g.to_dict()}

    def q_gdim(self, q, loc):
        return self.q_ght(q, loc, measure="gdim")

    def q_height(self, q, loc):
        S = self.ring(q, loc)
        J = self.ideal(S, q.get("prime"), f"{loc}.prime")
        return {"height": J.height(), "quotient_dim": J.quotient_dim()}

    def q_in_z(self, q, loc):
        S = self.ring(q, loc)
        p = self.prime(S, q.get("prime"), f"{loc}.prime")
        self.cite("Z-locus-membership")
        return {"in_Z": in_Z(p)}

    def q_fiber(self, q, loc):
        S = self.ring(q, loc)
        target = self.ring(q, loc, "target")
        p = self.prime(S, q.get("prime"), f"{loc}.prime")
        self.declared_note(target)
        f = fiber_over(p, target)
        self.cite("unique-lift-on-Z" if f.kind == "singleton" else "smeared-fiber-closed-set")
        return {"smeared": p.smeared, "fiber": f.to_dict()}

    def q_contraction_equal(self, q, loc):
        primes = q.get("primes")
        if not isinstance(primes, list) or len(primes) != 2:
            raise ScenarioError(f"{loc}.primes", "expected two generator lists")
        names = q.get("rings", [q.get("ring")] * 2)
        ps = []
        for i, (gens, rname) in enumerate(zip(primes, names)):
            S = self.ring({"ring": rname}, f"{loc}.rings[{i}]")
            ps.append(self.prime(S, gens, f"{loc}.primes[{i}]"))
        self.cite("smeared-collapse" if ps[0].smeared or ps[1].smeared else "unique-lift-on-Z")
        return {"equal": contraction_equal(*ps), "smeared": [ps[0].smeared, ps[1].smeared]}

    def q_saturated(self, q, loc):
        T = self.ring(q, loc)
        tests = q.get("tests")
        if not isinstance(tests, list) or not tests:
            raise ScenarioError(f"{loc}.tests", "expected a nonempty list of generator lists")
        R = self.sc.R
        self.declared_note(T)
        mins = minimal_primes(R.ideal_in(T))
        others = [D for D in self.depiction_rings() if D is not T]
        details = []
        verdict = True
        for i, gens in enumerate(tests):
            p = self.prime(T, gens, f"{loc}.tests[{i}]")
            row: dict[str, Any] = {"prime": p.q.generators(), "smeared": p.smeared, "height": p.q.height()}
            if p.smeared:
                if mins is not None and not any(p.q.equals(m) for m in mins):
                    raise ScenarioError(f"{loc}.tests[{i}]", "test prime is not minimal over I·T")
                g = geometric_height(p, [T, *others])
                self.cite(g.justification)
                row["ght"] = g.to_dict()
                row["ok"] = g.exact and g.lower == row["height"]
            else:
                row["ok"] = True
            verdict = verdict and row["ok"]
            details.append(row)
        self.cite("saturation-test")
        return {"saturated": verdict, "tests": details}

    def run_query(self, i: int, q: dict) -> dict:
        loc = f"queries[{i}]"
        cmd = q["command"]
        handler = getattr(self, "q_" + cmd.replace("-", "_"))
        entry: dict[str, Any] = {"index": i, "command": cmd}
        for k in ("ring", "target", "prime", "primes", "rings", "tests"):
            if k in q:
                entry[k] = q[k]
        try:
            entry["status"] = "ok"
            entry["result"] = handler(q, loc)
        except Unsupported as e:
            entry["status"] = "unsupported"
            entry["result"] = e.args[0]
        except CriterionNotApplicable as e:
            entry["status"] = "unsupported"
            entry["result"] = {"reason": str(e)}
        return entry


def run_scenario(sc: Scenario, queries: Sequence[dict] | None = None) -> tuple[dict, int]:
    """Evaluate the queries; returns ``(report, exit status)``."""
    runner = _Runner(sc)
    results = []
    status = 0
    for i, q in enumerate(sc.queries if queries is None else queries):
        try:
            entry = runner.run_query(i, q)
        except DepictionError as e:
            raise ScenarioError(f"queries[{i}]", str(e)) from None
        if entry["status"] == "unsupported":
            status = 2
        results.append(entry)
    scen: dict[str, Any] = {"name": sc.name, "field": sc.field.tag}
    if sc.R is not None:
        scen["ambient"] = sc.R.ambient.name
        scen["ideal"] = sc.R.I.generators()
    scen["rings"] = {n: S.describe() for n, S in sc.rings.items()}
    scen["depictions"] = [
        {"ring": d.name, "provenance": "literature-fact" if d.fact else "declared", **({"fact": d.fact} if d.fact else {})}
        for d in sc.depictions]
    report = {"scenario": scen, "results": results, "warnings": runner.warnings, "citations": runner.citations}
    return report, status


# ---------------------------------------------------------------------------
# human-readable rendering


def _brief(value: Any) -> str:
    return json.dumps(value, separators=(", ", ": "))


def render_text(report: dict) -> str:
    sc = report["scenario"]
    lines = [f"scenario {sc['name']} over {sc['field']}"]
    if "ideal" in sc:
        lines.append(f"R = k + ({', '.join(sc['ideal'])}) in {sc['ambient']}")
    for r in report["results"]:
        where = r.get("ring", "")
        head = f"[{r['index']}] {r['command']}" + (f" {where}" if where else "")
        if "prime" in r:
            head += f" ({', '.join(r['prime'])})"
        tag = "" if r["status"] == "ok" else f" [{r['status']}]"
        lines.append(f"{head}{tag}:")
        for k, v in r["result"].items():
            lines.append(f"    {k}: {_brief(v)}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    if report["citations"]:
        lines.append("citations: " + ", ".join(report["citations"]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


def _gens(text: str) -> list[str]:
    return [g.strip() for g in text.split(",") if g.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")
    common.add_argument("--out", metavar="PATH", help="also write the report to PATH")
    common.add_argument("--field", metavar="FIELD", help="coefficient field: rational or fp:<p>")

    parser = argparse.ArgumentParser(prog="depict", description="Depictions of rings k + I.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="run every query of a scenario file")
    p.add_argument("scenario")
    p = sub.add_parser("run-example", parents=[common], help="run a bundled example scenario")
    p.add_argument("name", choices=EXAMPLES)

    def with_ring(name: str, help: str, **extra):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("scenario")
        sp.add_argument("--ring", help="ring name (default: the ambient ring)")
        for flag, kw in extra.items():
            sp.add_argument(flag, **kw)
        return sp

    with_ring("depict-check", "test whether a ring is a depiction")
    with_ring("codim1", "noetherian-in-codimension-1 criterion")
    with_ring("maxdep", "maximal depiction report")
    with_ring("normalize", "normalization of a polynomial or semigroup ring")
    with_ring("gdim", "geometric height and dimension of a point",
              **{"--prime": dict(required=True, help="comma-separated generators of the witness prime")})
    with_ring("fiber", "fiber of a point in another depiction",
              **{"--prime": dict(required=True, help="comma-separated generators of the witness prime"),
                 "--target": dict(required=True, help="ring in which to compute the fiber")})
    with_ring("saturated", "saturation test on a ring",
              **{"--test": dict(action="append", required=True,
                                help="comma-separated generators of a test prime (repeatable)")})
    return parser


def _single_query(args) -> dict:
    q: dict[str, Any] = {"command": args.command}
    if args.ring:
        q["ring"] = args.ring
    if args.command == "gdim":
        q["prime"] = _gens(args.prime)
    elif args.command == "fiber":
        q["prime"] = _gens(args.prime)
        q["target"] = args.target
    elif args.command == "saturated":
        q["tests"] = [_gens(t) for t in args.test]
    return q


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = CoefficientField.parse(args.field) if args.field else None
    except ValueError as e:
        print(f"error: --field: {e}", file=sys.stderr)
        return 1
    try:
        if args.command == "run-example":
            sc = load_scenario_dict(example_data(args.name), field, source=args.name)
        else:
            sc = load_scenario(args.scenario, field)
        queries = None
        if args.command not in ("run", "run-example"):
            queries = [_single_query(args)]
            if args.command != "normalize" and sc.R is None:
                raise ScenarioError("subring", f"{args.command} needs a 'subring' entry")
        report, status = run_scenario(sc, queries)
    except (ScenarioError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    text = json.dumps(report, indent=2) + "\n" if args.json else render_text(report)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(report, indent=2) + "\n" if args.json else text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
