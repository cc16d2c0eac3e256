"""Command-line interface: ``gaingm VERB [flags]``.

Exit codes: 0 affirmative, 1 negative verdict (or a failed demo check),
2 usage or input error, 3 unsupported feature.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .demos import DEMOS, run_demo
from .errors import GainGraphError, InfiniteGroupError, UnsupportedFeatureError
from .gain_graph import GainGraph, Partition, switching_isomorphic
from .groups import QUATERNION
from .quaternions import right_spectrum
from .representations import Representation, builtin, irreducible_system, pi_h_representation
from .spectra import char_poly, g_cospectral, hermitian_eigs, pi_cospectral, represented_adjacency
from .switching import apply_switch, check_g_gm, check_pi_gm, check_quat_gm

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_graph(path: str | None, flag: str = "--graph") -> GainGraph:
    if not path:
        raise UsageError(f"{flag} is required")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return GainGraph.loads(text)
    except GainGraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _read_partition(path: str | None, graph: GainGraph) -> Partition:
    if not path:
        raise UsageError("--partition is required")
    try:
        alpha = Partition.loads(Path(path).read_text())
        alpha.validate(graph)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from exc
    except GainGraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    return alpha


def _rep(graph: GainGraph, name: str | None, required: bool) -> Representation | None:
    if graph.group.kind == QUATERNION:
        if name not in (None, "pi_h"):
            raise UsageError(f"quaternion graphs only support --rep pi_h, not {name!r}")
        return pi_h_representation(graph.group)
    if name is None:
        if required:
            raise UsageError("--rep is required for this mode")
        return None
    try:
        return builtin(graph.group, name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _mode(args, graph: GainGraph) -> str:
    if args.mode:
        if args.mode == "quat" and graph.group.kind != QUATERNION:
            raise UsageError("--mode quat needs a unit-quaternion graph")
        if args.mode == "G" and graph.group.kind == QUATERNION:
            raise UnsupportedFeatureError("G-GM partitions need a finite group; use --mode quat")
        return args.mode
    return "quat" if graph.group.kind == QUATERNION else "G"


def _run_check(args, graph: GainGraph, alpha: Partition):
    mode = _mode(args, graph)
    if mode == "G":
        return check_g_gm(graph, alpha)
    if mode == "quat":
        return check_quat_gm(graph, alpha)
    return check_pi_gm(graph, alpha, _rep(graph, args.rep, required=True), allow_central=args.central)


def _emit(args, payload: dict[str, Any], human: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(human))


def _spectrum_lines(label: str, values) -> str:
    return f"{label}: " + " ".join(f"{(x if abs(x) > 1e-12 else 0.0):.10g}" for x in values)


# -- verbs ----------------------------------------------------------------------

def cmd_check(args) -> int:
    graph = _read_graph(args.graph)
    alpha = _read_partition(args.partition, graph)
    result = _run_check(args, graph, alpha)
    where = f"{args.graph} with {args.partition}"
    payload = {"verb": "check", "ok": result.ok,
               "plan": result.plan.to_dict() if result.plan else None,
               "diagnostic": result.diagnostic, "failure": result.failure}
    if result.ok:
        human = [f"GM partition: {where}", str(result.plan)]
    else:
        human = [f"NOT a GM partition: {where}", result.diagnostic]
    _emit(args, payload, human)
    return EXIT_OK if result.ok else EXIT_NEGATIVE


def cmd_switch(args) -> int:
    graph = _read_graph(args.graph)
    alpha = _read_partition(args.partition, graph)
    result = _run_check(args, graph, alpha)
    if not result.ok:
        _emit(args, {"verb": "switch", "ok": False, "diagnostic": result.diagnostic},
              [f"NOT a GM partition: {args.graph} with {args.partition}", result.diagnostic])
        return EXIT_NEGATIVE
    switched = apply_switch(graph, alpha, result.plan)
    text = switched.dumps()
    if args.out:
        Path(args.out).write_text(text)
        _emit(args, {"verb": "switch", "ok": True, "out": args.out, "plan": result.plan.to_dict()},
              [f"switched graph written to {args.out}", str(result.plan)])
    elif args.json:
        print(json.dumps({"verb": "switch", "ok": True, "plan": result.plan.to_dict(),
                          "graph": switched.to_dict()}, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    graph = _read_graph(args.graph)
    rep = _rep(graph, args.rep, required=True)
    spec = hermitian_eigs(represented_adjacency(graph, rep))
    payload = {"verb": "spectrum", "representation": rep.name, "eigenvalues": list(spec)}
    human = [_spectrum_lines(f"{rep.name}-spectrum", spec)]
    if graph.group.kind == QUATERNION:
        right = right_spectrum(graph.quaternion_adjacency())
        payload["right_spectrum"] = list(right)
        human.append(_spectrum_lines("right spectrum", right))
    _emit(args, payload, human)
    return EXIT_OK


def cmd_charpoly(args) -> int:
    graph = _read_graph(args.graph)
    rep = _rep(graph, args.rep, required=True)
    cp = char_poly(represented_adjacency(graph, rep))
    rounded = cp.integer_coefficients()
    _emit(args, {"verb": "charpoly", "representation": rep.name, "polynomial": cp.render(),
                 "coefficients": list(rounded) if rounded is not None else list(cp.coefficients)},
          [cp.render()])
    return EXIT_OK


def cmd_cospectral(args) -> int:
    g1 = _read_graph(args.graph)
    g2 = _read_graph(args.graph2, "--graph2")
    if g1.group != g2.group:
        raise UsageError(f"{args.graph} and {args.graph2} use different gain groups")
    mode = _mode(args, g1)
    payload: dict[str, Any] = {"verb": "cospectral", "mode": mode}
    human = []
    if mode == "G":
        if args.hmax is not None:
            verdict = g_cospectral(g1, g2, "traces", args.hmax)
            human.append(f"mu(Tr A^h) agree for h = 1..{args.hmax}: {'yes' if verdict else 'no'}"
                         + (" (consistent up to this bound, not a proof)" if verdict else ""))
            payload["hmax"] = args.hmax
        else:
            verdict = g_cospectral(g1, g2, "irreducible")
            try:
                checked = [pi.name for pi in irreducible_system(g1.group)]
            except UnsupportedFeatureError:
                checked = []
            if checked:
                human.append("pi-spectra compared for every irreducible: " + ", ".join(checked))
                payload["irreducibles"] = checked
            else:
                human.append(f"mu(Tr A^h) compared for h = 1..{len(g1) * g1.group.order}")
        rep = builtin(g1.group, "regular")
    elif mode == "pi":
        rep = _rep(g1, args.rep, required=True)
        verdict = pi_cospectral(g1, g2, rep)
    else:
        rep = pi_h_representation(g1.group)
        verdict = pi_cospectral(g1, g2, rep)
    s1 = hermitian_eigs(represented_adjacency(g1, rep))
    s2 = hermitian_eigs(represented_adjacency(g2, rep))
    payload.update({"cospectral": verdict, "representation": rep.name,
                    "spectrum1": list(s1), "spectrum2": list(s2)})
    if mode == "G":
        how = f"traces up to h = {args.hmax}" if args.hmax is not None else "all irreducibles"
    else:
        how = rep.name
    human = [("COSPECTRAL" if verdict else "NOT cospectral") + f" ({mode}, {how})"] + human
    human += [_spectrum_lines(args.graph, s1), _spectrum_lines(args.graph2, s2)]
    _emit(args, payload, human)
    return EXIT_OK if verdict else EXIT_NEGATIVE


def cmd_swiso(args) -> int:
    g1 = _read_graph(args.graph)
    g2 = _read_graph(args.graph2, "--graph2")
    w = switching_isomorphic(g1, g2)
    if w is None:
        _emit(args, {"verb": "swiso", "witness": None}, ["NONE"])
        return EXIT_NEGATIVE
    human = ["switching isomorphic: phi, f"]
    human += [f"  {v} -> {w.mapping[v]}   f({v}) = {w.switching[v]}" for v in g1.vertices]
    _emit(args, {"verb": "swiso", "witness": w.to_dict()}, human)
    return EXIT_OK


def cmd_demo(args) -> int:
    if not args.id:
        print("available demos: " + ", ".join(DEMOS))
        return EXIT_OK
    try:
        report = run_demo(args.id, args.out)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    _emit(args, report.to_dict(), report.lines())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


VERBS = {
    "check": cmd_check,
    "switch": cmd_switch,
    "spectrum": cmd_spectrum,
    "charpoly": cmd_charpoly,
    "cospectral": cmd_cospectral,
    "swiso": cmd_swiso,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaingm", description="GM switchings for gain graphs.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("id", nargs="?", help="demo id (demo verb only)")
    p.add_argument("--graph", help="graph file (JSON)")
    p.add_argument("--graph2", help="second graph file")
    p.add_argument("--partition", help="partition file (JSON), first cell is C0")
    p.add_argument("--mode", choices=["G", "pi", "quat"])
    p.add_argument("--rep", help="representation name, e.g. sign, permutation, dihedral2, regular")
    p.add_argument("--central", action="store_true", help="allow rows killed by s with pi(s) = -I")
    p.add_argument("--out", help="output file for switched graphs")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--hmax", type=int, help="trace bound for --mode G cospectrality")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.id and args.verb != "demo":
        print(f"error: unexpected argument {args.id!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return VERBS[args.verb](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedFeatureError, InfiniteGroupError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except GainGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
