"""Command line interface: ``nonres <command> <arrangement> [options]``.

Exit codes: 0 success, 1 input or validation error, 2 resource guard or
genericity failure.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from .arrangement import (
    BUILTIN_NAMES,
    Arrangement,
    builtin_arrangement,
    format_arrangement,
    generic_slice,
    is_builtin_name,
    load_arrangement,
)
from .errors import GenericityError, ResourceLimitError
from .exactnum import QMatrix, format_rational, parse_rational
from .lattice import betti_numbers, build_lattice
from .milnor import spectrum_bounds, thm51_bound
from .nonres import AH, CONDITIONS, check_condition, describe_weights, prop4_shift, shift_parameter, translate_exists
from .oscomplex import COHOMOLOGY_LABEL, EndoSystem, WeightSystem, aomoto_cohomology, aomoto_complex
from .pi1oracle import _presentation, character_conductor, milnor_spectrum_exact, twisted_b1

COMMANDS = (
    "lattice", "dense", "betti", "aomoto", "check", "shift",
    "translate-exists", "milnor-bound", "milnor-exact", "examples",
)


class UsageError(ValueError):
    pass


@dataclass
class CommandRequest:
    command: str
    source: str | None = None
    weights: str | None = None
    endos: str | None = None
    condition: str | None = None
    hyperplane: int | None = None
    k: int | None = None
    decone: int | None = None
    format: str = "text"
    seed: int = 0
    slice: int | None = None
    presentation: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command != "examples" and not self.source:
            raise UsageError(f"{self.command}: an arrangement file or builtin name is required")
        needs_system = self.command in ("aomoto", "check", "shift", "translate-exists")
        if needs_system and not (self.weights or self.endos):
            raise UsageError(f"{self.command}: --weights or --endos is required")
        if self.weights and self.endos:
            raise UsageError("give only one of --weights and --endos")
        if self.command == "check":
            if self.condition is None:
                raise UsageError("check: --condition is required")
            if self.condition == AH and self.hyperplane is None:
                raise UsageError("check: --condition ah needs --hyperplane <i>")
        if self.command == "shift" and self.hyperplane is None:
            raise UsageError("shift: --hyperplane is required")


def resolve_arrangement(source: str) -> Arrangement:
    if os.path.exists(source):
        return load_arrangement(source)
    if is_builtin_name(source):
        return builtin_arrangement(source)
    raise UsageError(f"{source!r} is neither a readable file nor a builtin arrangement")


def read_weights(spec: str) -> WeightSystem:
    text = spec
    if os.path.exists(spec):
        with open(spec, encoding="ascii") as fh:
            text = fh.read()
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    return WeightSystem(parse_rational(t) for t in tokens)


def read_endos(path: str) -> EndoSystem:
    with open(path, encoding="ascii") as fh:
        data = json.load(fh)
    r = int(data["rank"])
    mats = [QMatrix([[parse_rational(str(x)) for x in row] for row in M]) for M in data["matrices"]]
    if any(M.shape != (r, r) for M in mats):
        raise ValueError(f"every endomorphism must be {r}x{r}")
    return EndoSystem(mats)


def _system(req: CommandRequest):
    return read_endos(req.endos) if req.endos else read_weights(req.weights)


def execute(req: CommandRequest) -> tuple[int, dict]:
    try:
        req.validate()
        return 0, _dispatch(req)
    except (ResourceLimitError, GenericityError) as exc:
        return 2, {"error": str(exc)}
    except (ValueError, KeyError, OSError) as exc:
        return 1, {"error": str(exc)}


def _dispatch(req: CommandRequest) -> dict:
    if req.command == "examples":
        return {"examples": [
            {"name": name, "arr": format_arrangement(builtin_arrangement(name.replace("(m)", "(4)").replace("(n)", "(2)")))}
            for name in BUILTIN_NAMES
        ]}
    A = resolve_arrangement(req.source)
    if req.slice is not None:
        A = generic_slice(A, req.slice, seed=req.seed)
    L = build_lattice(A)
    cmd = req.command
    if cmd == "lattice":
        return L.to_json()
    if cmd == "dense":
        return {"dense": [f.to_json() for f in L.dense_edges()]}
    if cmd == "betti":
        h = req.decone if req.decone is not None else (A.m if A.kind == "projective" else None)
        return {"betti": betti_numbers(L, h), "decone": h}
    S = _system(req) if req.weights or req.endos else None
    if cmd == "aomoto":
        C = aomoto_complex(A, S, req.decone, lattice=L)
        return {
            "label": COHOMOLOGY_LABEL,
            "cohomology": aomoto_cohomology(C),
            "basis_dims": list(C.basis.dims),
            "rank": C.coefficient_rank,
            "decone": C.decone_choice,
        }
    if cmd == "check":
        return check_condition(S, req.condition, L, req.hyperplane).to_json()
    if cmd == "shift":
        q = shift_parameter(S, req.hyperplane, L)
        out = prop4_shift(S, req.hyperplane, L)
        return {"hyperplane": req.hyperplane, "q": q, "shifted": describe_weights(out), "stv": True}
    if cmd == "translate-exists":
        return {"hyperplane": translate_exists(S, L)}
    if cmd == "milnor-bound":
        if req.k is not None and req.hyperplane is not None:
            return {"k": req.k, "hyperplane": req.hyperplane, "bound": thm51_bound(A, req.hyperplane, req.k, lattice=L)}
        report = spectrum_bounds(A, lattice=L).to_json()
        if req.k is not None:
            report["bounds"] = [row for row in report["bounds"] if row["k"] == req.k]
        return report
    if cmd == "milnor-exact":
        ks = range(A.m) if req.k is None else [req.k]
        rows = [{"k": k, "d": character_conductor(A.m, k), "b1": twisted_b1(A, k, req.decone)} for k in ks]
        out = {"m": A.m, "spectrum": rows}
        if req.k is None:
            milnor_spectrum_exact(A, req.decone)
        if req.presentation:
            out["presentation"] = _presentation(A, req.decone, None).to_text()
        return out
    raise UsageError(f"unknown command {cmd!r}")


# --------------------------------------------------------------------------
# text rendering


def render_text(command: str, report: dict) -> str:
    if "error" in report:
        return report["error"]
    if command == "examples":
        return "\n".join(f"# {e['name']}\n{e['arr']}" for e in report["examples"])
    if command in ("lattice", "dense"):
        flats = report["flats"] if command == "lattice" else report["dense"]
        lines = ["codim  mult  mobius  dense  indices"]
        for f in flats:
            lines.append(f"{f['codim']:>5}  {f['multiplicity']:>4}  {f['mobius']:>6}  {str(f['dense']):>5}  {f['indices']}")
        return "\n".join(lines)
    if command == "betti":
        return "betti = " + " ".join(map(str, report["betti"])) + (f"  (decone {report['decone']})" if report["decone"] else "")
    if command == "aomoto":
        return f"{report['label']}: h = {tuple(report['cohomology'])}  (NBC dims {tuple(report['basis_dims'])}, decone {report['decone']})"
    if command == "check":
        head = f"{report['condition']}" + (f"(H{report['hyperplane']})" if report["hyperplane"] else "")
        lines = [f"{head}: holds = {str(report['holds']).lower()}"]
        lines += [f"  violation at X{v['flat']}: integer eigenvalue {v['integer_root']}" for v in report["violations"]]
        lines += [f"  P{i} and P{j} do not commute" for i, j in report.get("noncommuting", [])]
        return "\n".join(lines)
    if command == "shift":
        return f"q = {report['q']}\nshifted = {report['shifted']}\nstv holds"
    if command == "translate-exists":
        h = report["hyperplane"]
        return "translate exists: none" if h is None else f"translate exists: H{h}"
    if command == "milnor-bound":
        if "bound" in report:
            return f"bound = {report['bound']}"
        lines = ["k  best  per-line"]
        for row in report["bounds"]:
            lines.append(f"{row['k']}  {row['best']}  " + " ".join(f"H{h}:{b}" for h, b in row["per_line"].items()))
        return "\n".join(lines)
    if command == "milnor-exact":
        rows = report["spectrum"]
        if len(rows) == 1:
            r = rows[0]
            text = f"k = {r['k']}, d = {r['d']}, b1 = {r['b1']}"
        else:
            text = "\n".join(["k  d  b1"] + [f"{r['k']}  {r['d']}  {r['b1']}" for r in rows])
        if "presentation" in report:
            text += "\n" + report["presentation"].rstrip()
        return text
    return json.dumps(report, indent=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonres", description="Nonresonance and Milnor fiber computations for hyperplane arrangements.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("arrangement", nargs="?", help="path to an .arr file or a builtin name")
    parser.add_argument("--weights", help="weight file or inline comma-separated rationals")
    parser.add_argument("--endos", help="JSON endomorphism file")
    parser.add_argument("--condition", choices=CONDITIONS)
    parser.add_argument("--hyperplane", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--decone", type=int)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--slice", type=int, help="replace the arrangement by a generic slice of this dimension")
    parser.add_argument("--presentation", action="store_true", help="milnor-exact: also list the group presentation")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    req = CommandRequest(
        command=args.command, source=args.arrangement, weights=args.weights, endos=args.endos,
        condition=args.condition, hyperplane=args.hyperplane, k=args.k, decone=args.decone,
        format=args.format, seed=args.seed, slice=args.slice, presentation=args.presentation,
    )
    code, report = execute(req)
    if code:
        print(f"nonres: {report['error']}", file=sys.stderr)
        if code == 1 and isinstance(_last_error(req), UsageError):
            parser.print_usage(sys.stderr)
        return code
    if req.format == "json":
        print(json.dumps(report, indent=2, default=format_rational))
    else:
        print(render_text(req.command, report))
    return 0


def _last_error(req: CommandRequest):
    try:
        req.validate()
    except UsageError as exc:
        return exc
    return None


if __name__ == "__main__":
    sys.exit(main())
