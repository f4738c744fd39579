"""Command-line interface with JSON input and deterministic JSON output.

Subcommands: green, resistance, phi, pairing, decompose, jump, lear-class,
theta, slope-check.  Graph-based subcommands read a JSON document (file path
or '-' for stdin); validation failures exit with status 2 and a JSON error
object carrying a machine-readable code.

The environment variable GREENJUMP_THETA_EPS overrides the default theta
truncation tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import greenjump.green as green  # the package re-exports green()/theta() as
import greenjump.theta as theta  # functions, so bind the modules explicitly

from . import blocks, jumping, moduli
from .errors import BadJsonError, InputError
from .graphs import canonical_divisor, genus
from .serialize import (
    divisor_from_json,
    divisor_to_json,
    fraction_to_str,
    marked_graph_from_json,
    parse_fraction,
)


def _theta_eps(args) -> float:
    if getattr(args, "eps", None) is not None:
        return float(args.eps)
    env = os.environ.get("GREENJUMP_THETA_EPS")
    return float(env) if env else theta.DEFAULT_EPS


def _load_document(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise BadJsonError(f"malformed JSON: {exc}") from exc
    except OSError as exc:
        raise BadJsonError(f"cannot read {path}: {exc}") from exc


def _graph_and_divisors(doc, *names):
    marked = marked_graph_from_json(doc.get("graph", doc))
    divs = []
    for name in names:
        if name not in doc:
            raise BadJsonError(f"missing divisor field {name!r}")
        div = divisor_from_json(doc[name])
        div.check_support(marked.graph)
        divs.append(div)
    return marked, divs


def _complex_from_json(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise BadJsonError(f"complex values are [re, im] pairs, got {value!r}")


def _complex_to_json(value: complex) -> list[float]:
    return [value.real, value.imag]


def _cmd_green(args) -> dict:
    doc = _load_document(args.input)
    marked, (d, e) = _graph_and_divisors(doc, "d", "e")
    return {"green": fraction_to_str(green.green(marked.graph, d, e))}


def _cmd_resistance(args) -> dict:
    doc = _load_document(args.input)
    if "u" in doc and "v" in doc:
        marked, _ = _graph_and_divisors(doc)
        value = green.resistance(marked.graph, str(doc["u"]), str(doc["v"]))
    else:
        marked, (d, e) = _graph_and_divisors(doc, "d", "e")
        value = green.resistance_pairing(marked.graph, d, e)
    return {"resistance": fraction_to_str(value)}


def _cmd_phi(args) -> dict:
    doc = _load_document(args.input)
    marked, (d,) = _graph_and_divisors(doc, "d")
    result = green.phi(marked.graph, d)
    return {"phi": divisor_to_json(result, marked.graph)}


def _cmd_pairing(args) -> dict:
    doc = _load_document(args.input)
    marked, (d, e) = _graph_and_divisors(doc, "d", "e")
    finite = parse_fraction(doc.get("finite_part", 0))
    inp = green.AdmissibleInput(marked.graph, d, e, finite)
    return {"pairing": fraction_to_str(green.admissible_pairing(inp))}


def _block_json(marked, dec, i) -> dict:
    block = dec.blocks[i]
    out = {
        "kind": "bridge" if block.is_bridge else "two_connected",
        "vertices": list(block.subgraph.vertices),
        "edges": [[a, b] for a, b in block.subgraph.edges],
        "edge_indices": list(block.edge_indices),
    }
    if block.is_bridge:
        bt = blocks.bridge_type(marked, block.edge_indices[0])
        out["bridge_type"] = {"h": bt.h, "P": list(bt.marks)}
    return out


def _cmd_decompose(args) -> dict:
    doc = _load_document(args.input)
    marked = marked_graph_from_json(doc.get("graph", doc))
    dec = blocks.decompose(marked.graph)
    out = {"blocks": [_block_json(marked, dec, i) for i in range(len(dec.blocks))]}
    if "d" in doc and "e" in doc:
        _, (d, e) = _graph_and_divisors(doc, "d", "e")
        out["additivity_sum"] = fraction_to_str(
            blocks.additivity_sum(marked.graph, d, e)
        )
    return out


def _cmd_jump(args) -> dict:
    doc = _load_document(args.input)
    marked = marked_graph_from_json(doc.get("graph", doc))
    value = jumping.jump(marked)
    counts = jumping.bridge_counts(marked)
    per_block = jumping.jump_decomposed(marked)
    dec = blocks.decompose(marked.graph)
    n_bridges = sum(counts.values())
    return {
        "jump": fraction_to_str(value),
        "genus": genus(marked),
        "reduction": divisor_to_json(jumping.reduction_divisor(marked), marked.graph),
        "canonical_divisor": divisor_to_json(canonical_divisor(marked), marked.graph),
        "bridge_counts": [
            {"h": bt.h, "P": list(bt.marks), "count": counts[bt]}
            for bt in sorted(counts, key=lambda b: (b.h, b.marks))
        ],
        "non_bridge_edges": marked.graph.n_edges - n_bridges,
        "blocks": [
            dict(_block_json(marked, dec, i), green=fraction_to_str(v))
            for i, (_, v) in enumerate(per_block)
        ],
    }


def _cmd_lear_class(args) -> dict:
    d = tuple(int(x) for x in args.d.split(","))
    if args.basis == "deligne":
        cls = moduli.lear_class_deligne_basis(args.g, args.n, d, args.m)
    else:
        cls = moduli.lear_class_kappa_psi(args.g, args.n, d, args.m)
    return cls.to_json()


def _cmd_theta(args) -> dict:
    doc = _load_document(args.input)
    if "z" not in doc or "tau" not in doc:
        raise BadJsonError("theta input needs fields 'z' and 'tau'")
    z = [_complex_from_json(v) for v in doc["z"]]
    tau = [[_complex_from_json(v) for v in row] for row in doc["tau"]]
    eps = float(doc.get("eps", _theta_eps(args)))
    out = {
        "theta": _complex_to_json(theta.theta(z, tau, eps)),
        "theta_norm": theta.theta_norm(z, tau, eps),
    }
    if "w" in doc:
        w = [_complex_from_json(v) for v in doc["w"]]
        out["eta_norm"] = theta.eta_norm(z, w, tau, eps)
    return out


def _cmd_slope_check(args) -> dict:
    fam = theta.cycle_family(args.N, args.a, args.b, im_b=args.im_b)
    prediction = theta.predicted_cycle_slope(args.N, args.a, args.b)
    ts = theta.geometric_sequence(args.tmax, args.tmin, args.steps)
    report = theta.slope_check(fam, prediction, ts, eps=_theta_eps(args))
    out = {"N": args.N, "a": args.a, "b": args.b}
    out.update(report.to_json())
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greenjump",
        description="Exact Green's pairings on reduction graphs, height "
        "jumping, boundary classes, and the theta slope harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="JSON document path, or - for stdin")

    add_input(sub.add_parser("green", help="Green's pairing of two divisors"))
    add_input(sub.add_parser("resistance", help="effective resistance"))
    add_input(sub.add_parser("phi", help="compensating divisor"))
    add_input(sub.add_parser("pairing", help="admissible local pairing"))
    add_input(sub.add_parser("decompose", help="bridges and two-connected blocks"))
    add_input(sub.add_parser("jump", help="height-jumping coefficient"))

    lear = sub.add_parser("lear-class", help="boundary extension class")
    lear.add_argument("--g", type=int, required=True)
    lear.add_argument("--n", type=int, required=True)
    lear.add_argument("--d", type=str, required=True,
                      help="comma-separated mark weights")
    lear.add_argument("--m", type=int, required=True)
    lear.add_argument("--basis", choices=("deligne", "kappa-psi"),
                      default="kappa-psi")

    th = sub.add_parser("theta", help="theta value and canonical norms")
    add_input(th)
    th.add_argument("--eps", type=float, default=None)

    sc = sub.add_parser("slope-check", help="degeneration slope harness")
    sc.add_argument("--N", type=int, required=True)
    sc.add_argument("--a", type=int, required=True)
    sc.add_argument("--b", type=int, required=True)
    sc.add_argument("--tmin", type=float, default=1e-6)
    sc.add_argument("--tmax", type=float, default=0.1)
    sc.add_argument("--steps", type=int, default=40)
    sc.add_argument("--im-b", dest="im_b", type=float, default=1.0)
    sc.add_argument("--eps", type=float, default=None)
    return parser


_HANDLERS = {
    "green": _cmd_green,
    "resistance": _cmd_resistance,
    "phi": _cmd_phi,
    "pairing": _cmd_pairing,
    "decompose": _cmd_decompose,
    "jump": _cmd_jump,
    "lear-class": _cmd_lear_class,
    "theta": _cmd_theta,
    "slope-check": _cmd_slope_check,
}


def run(argv=None) -> int:
    """Dispatch one subcommand; returns the exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result = _HANDLERS[args.command](args)
    except InputError as exc:
        sys.stdout.write(
            json.dumps({"error": exc.code, "message": str(exc)}) + "\n"
        )
        return 2
    sys.stdout.write(json.dumps(result) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
